//! Derives the recursion for `h_n(t)` from the five-term residue relations.
//!
//! `cargo run --release --example recursion -- 5`

use birkhoff_hn::reconstruct::format_factored;
use birkhoff_hn::recursion::{dn_relation, eliminate, hn_recursion, largest_integer_root};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);

    for ell in 0..=i64::from(n) - 2 {
        println!("E_{ell}: {}", dn_relation(n, ell, n - 2, 1, 2)?);
    }
    let e = eliminate(n)?;
    e.system.check_triangular()?;
    println!("{} multipliers, {} conditions", e.system.unknowns.len(), e.system.rows.len());
    for (u, a) in &e.multipliers {
        println!("a_{{{},{}}} = {a}", u.ell, u.i);
    }

    let rec = hn_recursion(n)?;
    for (i, c) in rec.c.iter().enumerate() {
        println!("c_{i}(t) = {}", format_factored(c));
    }
    if let Some(r) = largest_integer_root(&rec.c[0]) {
        println!("largest integer root of c_0: {r}");
    }
    Ok(())
}
