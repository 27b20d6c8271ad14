use std::path::Path;
use std::process::{Command, Output};

fn trajhash(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trajhash"))
        .args(args)
        .env("TRAJHASH_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = trajhash(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn err(args: &[&str]) -> String {
    let out = trajhash(args);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    String::from_utf8(out.stderr).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn synth(dir: &Path, name: &str, seed: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    ok(&["synth", "--out", p(&path), "--categories", "3", "--per-class", "20", "--template-len", "15", "--seed", seed]);
    path
}

#[test]
fn build_hash_query_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let data = synth(dir.path(), "data.csv", "1");
    let cb = dir.path().join("cb.bin");
    let idx = dir.path().join("db.idx");
    let dump = dir.path().join("codes.txt");
    ok(&["build", "--data", p(&data), "--codebooks", p(&cb), "--l", "32", "--omega", "4", "--seed", "9"]);
    ok(&["hash", "--data", p(&data), "--codebooks", p(&cb), "--index", p(&idx), "--out", p(&dump)]);
    let codes = std::fs::read_to_string(&dump).unwrap();
    assert_eq!(codes.lines().count(), 60);
    assert!(codes.lines().all(|l| l.split(',').nth(1) == Some("32")));

    let text = ok(&["query", "--index", p(&idx), "--codebooks", p(&cb), "--queries", p(&data), "--n", "60"]);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 60 * 60);
    for q in rows.chunks(60) {
        let mut ids: Vec<&str> = q.iter().map(|r| r[2]).collect();
        assert_eq!(q[0][0], q[0][2], "self match first");
        assert_eq!(q[0][3], "0");
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 60);
    }

    let other = dir.path().join("other.bin");
    ok(&["build", "--data", p(&data), "--codebooks", p(&other), "--l", "32", "--omega", "4", "--seed", "10"]);
    let msg = err(&["query", "--index", p(&idx), "--codebooks", p(&other), "--queries", p(&data)]);
    assert!(msg.contains("other.bin"), "{msg}");
}

#[test]
fn eval_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let data = synth(dir.path(), "data.csv", "2");
    let run = |name: &str, workers: &str| {
        let out = dir.path().join(name);
        ok(&[
            "eval", "--data", p(&data), "--out", p(&out), "--repetitions", "2", "--l", "32",
            "--baselines", "hausdorff,dtw", "--seed", "5", "--workers", workers, "--ablation",
        ]);
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
        strip(&mut v);
        v
    };
    let a = run("a.json", "1");
    let b = run("b.json", "3");
    assert!(a["report"]["methods"][0]["map"].as_f64().unwrap() > 0.5);
    assert_eq!(a["report"]["methods"].as_array().unwrap().len(), 3);
    assert_eq!(a["ablation"].as_array().unwrap().len(), 3);
    assert_eq!(a, b);
}

fn strip(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            m.remove("timing");
            m.remove("workers");
            m.remove("out");
            m.values_mut().for_each(strip);
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(strip),
        _ => {}
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let data = synth(dir.path(), "data.csv", "3");
    let cfg = dir.path().join("run.conf");
    let cb = dir.path().join("cb.bin");
    std::fs::write(
        &cfg,
        format!("# small run\ndata = {}\nomega = 2\nl = 16\nk = 3\nseed = 4\n", p(&data)),
    )
    .unwrap();
    ok(&["build", "--config", p(&cfg), "--codebooks", p(&cb), "--omega", "4"]);
    let cbs = trajhash::CodebookSet::load(&cb).unwrap();
    assert_eq!(cbs.omega(), 4);
    assert_eq!(cbs.codebooks.len(), 4);
    assert_eq!(cbs.params.k, 3);
}

#[test]
fn sweep_and_bench_smoke() {
    let dir = tempfile::tempdir().unwrap();
    let data = synth(dir.path(), "data.csv", "4");
    let csv = ok(&["sweep", "--data", p(&data), "--omegas", "2,3", "--ks", "1,4", "--repetitions", "1", "--l", "12"]);
    assert_eq!(csv.lines().next(), Some("psi,k,map,se,seconds"));
    assert_eq!(csv.lines().count(), 5);
    let json = ok(&["bench", "--data", p(&data), "--l", "16"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["methods"].as_array().unwrap().len(), 4);
    assert!(v["hamming_comparisons_per_second"].as_f64().unwrap() > 0.0);
}

#[test]
fn failures_name_their_cause() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.csv");
    assert!(err(&["build", "--data", p(&missing), "--codebooks", "x"]).contains("nope.csv"));
    assert!(err(&["hash", "--data", p(&missing)]).contains("codebooks"));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "a,c,0,1.0,2.0\na,c,1,1.0,oops\n").unwrap();
    let msg = err(&["eval", "--data", p(&bad)]);
    assert!(msg.contains("bad.csv") && msg.contains('2'), "{msg}");

    let data = synth(dir.path(), "data.csv", "5");
    let msg = err(&["build", "--data", p(&data), "--codebooks", "x", "--l", "30", "--omega", "4"]);
    assert!(msg.contains("omega") || msg.contains("30"), "{msg}");
    let msg = err(&["build", "--data", p(&data), "--codebooks", "x", "--omega", "0"]);
    assert!(msg.contains("omega"), "{msg}");

    let corrupt = dir.path().join("corrupt.bin");
    std::fs::write(&corrupt, b"TJCB\x01garbage").unwrap();
    let msg = err(&["hash", "--data", p(&data), "--codebooks", p(&corrupt), "--index", "y"]);
    assert!(msg.contains("corrupt.bin"), "{msg}");
}
