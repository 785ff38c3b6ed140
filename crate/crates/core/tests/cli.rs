use std::process::{Command, Output};

use birkhoff_hn::cli::{DetcPayload, Envelope, HnPayload, MorrisPayload, OraclePayload, RecursionPayload, VerifyPayload};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn bin(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_birkhoff-hn"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn round_trips<T: DeserializeOwned + Serialize>(line: &str) -> T {
    let doc: T = serde_json::from_str(line).unwrap();
    assert_eq!(serde_json::to_string(&doc).unwrap(), line);
    doc
}

#[test]
fn documented_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&["hn", "--n", "4", "--format", "text", "--quiet"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "h_4(t) = (t-1)*t^2*(t+1)*(t+2)*(t+3)*(t+4)^2*(t+5) / 60480\n");

    let o = bin(&["morris", "--n", "0", "--k1", "5", "--k2", "7", "--k3", "3", "--quiet"], dir.path());
    assert_eq!(stdout(&o), "1\n");

    let o = bin(&["detc", "--n", "14", "--check", "--quiet"], dir.path());
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("(t-55)^2*(t-53)^2*(t-49)^2*(t-43)^2*(t-35)^2*(t-25)^2*(t-13)"));
    assert!(out.ends_with("conjecture: PASS\n"));
}

#[test]
fn header_is_the_only_version_text() {
    let dir = tempfile::tempdir().unwrap();
    let loud = stdout(&bin(&["genfun", "--n", "5"], dir.path()));
    let quiet = stdout(&bin(&["genfun", "--n", "5", "--quiet"], dir.path()));
    let (header, rest) = loud.split_once('\n').unwrap();
    assert!(header.starts_with("# birkhoff-hn "));
    assert_eq!(rest, quiet);
    assert!(quiet.starts_with("h*_5(y) = 3*y^4*(3*y^4 + 24*y^3 + 46*y^2 + 24*y + 3)\n"));
}

#[test]
fn deterministic_and_cache_coherent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["hn", "--n", "6", "--format", "json"];
    let first = stdout(&bin(&args, dir.path()));
    assert!(dir.path().join("hn_6.json").exists());
    let cached = stdout(&bin(&args, dir.path()));
    let mut fresh_args = args.to_vec();
    fresh_args.push("--no-cache");
    let fresh = stdout(&bin(&fresh_args, dir.path()));
    assert_eq!(first, cached);
    assert_eq!(first, fresh);
}

#[test]
fn json_documents_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = |a: &[&str]| {
        let mut v = a.to_vec();
        v.extend(["--format", "json"]);
        stdout(&bin(&v, dir.path()))
    };
    let hn: Envelope<HnPayload> = round_trips(run(&["hn", "--n", "5"]).trim());
    assert_eq!((hn.n, hn.result_kind.as_str(), hn.payload.big_n), (5, "hn", 4));
    let rec: Envelope<RecursionPayload> = round_trips(run(&["recursion", "--n", "5"]).trim());
    assert_eq!(rec.payload.c.len(), 5);
    let m: Envelope<MorrisPayload> = round_trips(run(&["morris", "--n", "3", "--k1", "1", "--k2", "1", "--k3", "2"]).trim());
    assert_eq!(m.payload.value, "6");
    let out = run(&["detc", "--range", "3..5", "--check"]);
    let docs: Vec<Envelope<DetcPayload>> = out.lines().map(round_trips).collect();
    assert_eq!(docs.iter().map(|d| d.n).collect::<Vec<_>>(), vec![3, 4, 5]);
    let v: Envelope<VerifyPayload> = round_trips(run(&["verify", "--n", "4"]).trim());
    assert!(v.payload.passed);
    let o: Envelope<OraclePayload> = round_trips(run(&["oracle", "dn", "--n", "4", "--ell", "1", "--t", "6"]).trim());
    assert_eq!(o.payload.value.to_string(), "24");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |a: &[&str]| bin(a, dir.path()).status.code().unwrap();
    assert_eq!(code(&["verify", "--range", "2..6", "--jobs", "3"]), 0);
    assert_eq!(code(&["hn", "--n", "x"]), 2);
    assert_eq!(code(&["oracle", "hn", "--t", "3"]), 2);
    assert_eq!(code(&["morris", "--n", "1", "--k1", "1", "--k2", "0", "--k3", "1"]), 2);
    assert_eq!(code(&["oracle", "hn", "--n", "5", "--t", "6", "--max-nodes", "5"]), 3);

    let err = bin(&["oracle", "dn", "--n", "4", "--t", "3"], dir.path());
    assert!(String::from_utf8_lossy(&err.stderr).contains("ell"));
}

#[test]
fn oracle_commands() {
    let dir = tempfile::tempdir().unwrap();
    let val = |a: &[&str]| {
        let mut v = a.to_vec();
        v.push("--quiet");
        stdout(&bin(&v, dir.path())).trim().to_string()
    };
    assert_eq!(val(&["oracle", "hn", "--n", "5", "--t", "5"]), "225");
    assert_eq!(val(&["oracle", "composition", "--m", "2,0", "--t", "3"]), "4");
    assert_eq!(val(&["oracle", "ehrhart", "--n", "3", "--t", "2"]), "21");
    assert_eq!(val(&["oracle", "magic", "--n", "4", "--t", "2"]), "282");
}
