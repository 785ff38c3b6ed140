//! Direct constant-term extraction: `h_n(t)`, the residues `d_n(ell, t)` and
//! single composition terms.
//!
//! `cargo run --release --example constant_term`

use birkhoff_hn::oracle::{ct_weak_composition, dn_point, hn_point, CtProblem, DEFAULT_MAX_NODES};
use birkhoff_hn::oracle::constant_term;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cap = DEFAULT_MAX_NODES;

    // CT 1/((1 - x1/x2)(1 - x2)) in two variables, x1 outranking x2
    let mut p = CtProblem::new(2);
    p.div_one_minus_ratio(0, 1, 1);
    p.div_one_minus(1, 1);
    println!("toy constant term: {}", constant_term(&p, cap)?);

    for n in 3..=5 {
        let vals: Vec<String> = (0..=6).map(|t| hn_point(n, t, cap).map(|v| v.to_string())).collect::<Result<_, _>>()?;
        println!("h_{n}(0..=6) = [{}]", vals.join(", "));
    }
    for ell in 0..=3 {
        println!("d_4({ell}, 6) = {}", dn_point(4, ell, 6, 2, 1, 2, cap)?);
    }
    println!("CT H^(2,1,0) at t = 2: {}", ct_weak_composition(&[2, 1, 0], 2, cap)?);
    Ok(())
}
