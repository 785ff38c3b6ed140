//! Reconstructs `h_n(t)` and prints it in factored form.
//!
//! `cargo run --release --example reconstruct -- 6`

use std::time::Instant;

use birkhoff_hn::reconstruct::{format_factored, reconstruct, verify};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    let start = Instant::now();
    let res = reconstruct(n)?;
    let h = res.polynomial();
    println!("h_{n}(t) = {}", format_factored(&h));
    println!("N = {}, deg P = {:?}", res.big_n, res.p.degree());
    let report = verify(&res)?;
    println!("{report:?}");
    println!("elapsed: {:.2?}", start.elapsed());
    Ok(())
}
