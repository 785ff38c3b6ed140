//! The tridiagonal determinant behind the leading recursion coefficient,
//! compared with its conjectured factorization.
//!
//! `cargo run --release --example det_c -- 3 30`

use birkhoff_hn::reconstruct::format_factored;
use birkhoff_hn::recursion::{check_detc, det_c};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u32>());
    let lo = args.next().transpose()?.unwrap_or(3);
    let hi = args.next().transpose()?.unwrap_or(15);
    for n in lo..=hi {
        let ok = if check_detc(n) { "ok" } else { "MISMATCH" };
        println!("n={n:>2} {ok:>8}  det C = {}", format_factored(&det_c(n)));
    }
    Ok(())
}
