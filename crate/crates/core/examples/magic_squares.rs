//! Counts magic squares directly and through the composition-sum form of
//! the Ehrhart polynomial.
//!
//! `cargo run --release --example magic_squares`

use birkhoff_hn::arith::binomial;
use birkhoff_hn::oracle::{assemble_hn, count_magic_squares, DEFAULT_MAX_NODES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=3u32 {
        for t in 0..=5u32 {
            let direct = count_magic_squares(n as usize, t);
            let assembled = assemble_hn(n, i64::from(t), DEFAULT_MAX_NODES)?;
            assert_eq!(direct, assembled);
            print!("{direct} ");
        }
        println!("  (n = {n})");
    }
    // 3 C(t+3, 4) + C(t+2, 2)
    let t = 5;
    println!("H_3({t}) = {}", binomial(t + 3, 4) * 3 + binomial(t + 2, 2));
    println!("4x4, t = 3: {}", count_magic_squares(4, 3));
    Ok(())
}
