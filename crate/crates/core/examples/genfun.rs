//! The numerator `h*_n(y)` of the generating function of `h_n(t)` and its
//! shape properties.
//!
//! `cargo run --release --example genfun -- 7`

use birkhoff_hn::genfun::hstar;
use birkhoff_hn::reconstruct::{format_factored, reconstruct};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    let report = hstar(&reconstruct(n)?)?;
    println!("h*_{n}(y) = {}", format_factored(&report.hstar_poly()));
    let a: Vec<String> = report.a.iter().map(|x| x.to_string()).collect();
    println!("a = [{}]", a.join(", "));
    println!("{:?}", report.flags);
    println!("real-rooted: {} ({} distinct real roots)", report.real_rooted, report.real_root_count);
    for f in &report.findings {
        println!("finding: {f:?}");
    }
    Ok(())
}
