//! Evaluates the Morris constant term and checks its shift and swap
//! identities on a small grid.
//!
//! `cargo run --example morris -- 3 2 1 2`

use birkhoff_hn::morris::{ct_morris, MorrisParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u32> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let p = match args.as_slice() {
        [n, k1, k2, k3] => MorrisParams::new(*n, *k1, *k2, *k3),
        _ => MorrisParams::new(3, 1, 1, 2),
    };
    println!("M({}; {}, {}, {}) = {}", p.n, p.k1, p.k2, p.k3, ct_morris(p)?);

    let m = |n, k1, k2, k3| ct_morris(MorrisParams::new(n, k1, k2, k3));
    let mut checked = 0;
    for n in 1..=6 {
        for k1 in 1..=4 {
            for k3 in 1..=4 {
                assert_eq!(m(n + 1, k1, 1, k3)?, m(n, k1, k3 + 1, k3)?);
                for k2 in 1..=4 {
                    assert_eq!(m(n, k1, k2, k3)?, m(n, k2, k1, k3)?);
                    checked += 2;
                }
            }
        }
    }
    println!("{checked} identity instances hold");
    Ok(())
}
