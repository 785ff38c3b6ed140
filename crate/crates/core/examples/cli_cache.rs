//! Computes the full record for one `n` and writes it to a cache directory
//! as `hn_<n>.json`, the same file the command-line tool reads.
//!
//! `cargo run --release --example cli_cache -- 16 ./cache`

use std::path::PathBuf;
use std::time::Instant;

use birkhoff_hn::cli::cache;
use birkhoff_hn::oracle::DEFAULT_MAX_NODES;
use birkhoff_hn::reconstruct::format_factored;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(16);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "cache".into()));

    let start = Instant::now();
    let payload = cache::compute(n, DEFAULT_MAX_NODES)?;
    let path = cache::store(&dir, &payload)?;
    println!("h_{n}(t) = {}", format_factored(&payload.hn.polynomial()));
    println!("report: passed = {}", payload.report.passed());
    println!("h*: all properties hold = {}", payload.genfun.all_hold());
    println!("wrote {} in {:.2?}", path.display(), start.elapsed());
    assert_eq!(cache::load(&dir, n).as_ref(), Some(&payload));
    Ok(())
}
