use std::fs;
use std::process::{Command, Output};

fn whitlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whitlab")).args(args).env_remove("WHITLAB_CACHE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn whitney_line() {
    let o = whitlab(&["whitney", "--q", "2", "--n", "5", "--d", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 -25 220 -820 1264 -640\n");
    for m in ["alpha", "beta", "brute"] {
        let o = whitlab(&["whitney", "--q", "2", "--n", "5", "--d", "3", "--method", m]);
        assert_eq!(stdout(&o), "1 -25 220 -820 1264 -640\n", "{m}");
    }
    let o = whitlab(&["whitney", "--q", "2", "--n", "6", "--d", "3", "--i", "2", "--method", "reduction"]);
    assert_eq!(stdout(&o), "635\n");
}

#[test]
fn json_record() {
    let o = whitlab(&["--json", "gamma", "--a", "3", "--b", "2", "--c", "1", "--nu", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "gamma");
    assert_eq!(v["values"][0], "4");
    assert_eq!(v["schema_version"], 1);
    assert!(v.get("runtime_ms").is_none());
}

#[test]
fn gamma_methods() {
    for m in ["recursion", "enum", "poly"] {
        let o = whitlab(&["gamma", "--a", "3", "--b", "2", "--c", "1", "--nu", "1", "--method", m]);
        assert_eq!(stdout(&o), "4\n", "{m}");
    }
}

#[test]
fn charpoly_and_deflation() {
    let o = whitlab(&["charpoly", "--q", "3", "--n", "6", "--d", "3", "--deflate-powers"]);
    assert_eq!(stdout(&o), "λ^2 - 76λ + 1515\n");
    let o = whitlab(&["charpoly", "--q", "2", "--n", "3", "--d", "3"]);
    assert_eq!(stdout(&o), "λ^3 - 7λ^2 + 14λ - 8\n");
}

#[test]
fn alpha_beta_crit() {
    assert_eq!(stdout(&whitlab(&["alpha", "--q", "2", "--n", "5", "--d", "3", "--k", "1"])), "6\n");
    assert_eq!(stdout(&whitlab(&["alpha", "--q", "2", "--n", "5", "--d", "3", "--k", "1", "--method", "enum"])), "6\n");
    for m in ["complement", "enum", "closed"] {
        let o = whitlab(&["beta", "--q", "2", "--n", "5", "--d", "3", "--k", "2", "--method", m]);
        assert_eq!(stdout(&o), "155\n", "{m}");
    }
    assert_eq!(stdout(&whitlab(&["crit", "--q", "2", "--n", "5", "--d", "3"])), "4\n");
}

#[test]
fn geometry_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("o3.txt");
    fs::write(&p, "# odd-weight vectors of F_2^3\n2 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n").unwrap();
    let o = whitlab(&["geometry", "--atoms", p.to_str().unwrap(), "--charpoly", "--crit"]);
    assert_eq!(stdout(&o), "λ^3 - 4λ^2 + 6λ - 3\n1\n");
    fs::write(&p, "2 3\n1 0\n").unwrap();
    assert_eq!(whitlab(&["geometry", "--atoms", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(whitlab(&["whitney", "--q", "6", "--n", "2", "--d", "1"]).status.code(), Some(2));
    assert_eq!(whitlab(&["whitney", "--q", "2", "--n", "2", "--d", "1", "--i", "5"]).status.code(), Some(2));
    assert_eq!(whitlab(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(whitlab(&["frobnicate"]).status.code(), Some(2));
    let o = whitlab(&["verify", "--suite", "duality", "--budget-sec", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_suite_deterministic() {
    let a = whitlab(&["verify", "--suite", "identities", "--seed", "7"]);
    let b = whitlab(&["verify", "--suite", "identities", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn charpoly_table_csv() {
    let o = whitlab(&[
        "table",
        "--kind",
        "charpoly",
        "--q-list",
        "2,3,4",
        "--n-range",
        "5",
        "--d-range",
        "3",
        "--out",
        "-",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "kind,q,n,d,index,method,value");
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1], "charpoly,2,5,3,5,exact,1 -25 220 -820 1264 -640");
}

#[test]
fn table_grid_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let run = |out: &std::path::Path, jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_whitlab"))
            .args(["table", "--q-list", "2,3", "--n-range", "1..5", "--d-range", "1..5", "--jobs", jobs])
            .arg("--out")
            .arg(out)
            .env("WHITLAB_CACHE", &cache)
            .output()
            .unwrap()
    };
    assert!(run(&a, "4").status.success());
    let entries = fs::read_dir(&cache).unwrap().count();
    assert_eq!(entries, 30);
    assert!(run(&b, "1").status.success());
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    // rows: sum over n of n cells of n+1 entries, for each q
    let rows: usize = (1..=5).map(|n| n * (n + 1)).sum::<usize>() * 2;
    assert_eq!(String::from_utf8(ta).unwrap().lines().count(), rows + 1);

    for e in fs::read_dir(&cache).unwrap() {
        fs::write(e.unwrap().path(), "garbage").unwrap();
    }
    let o = run(&b, "2");
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("corrupted cache entry"));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn table_json_records() {
    let o = whitlab(&["table", "--q-list", "2", "--n-range", "3", "--d-range", "2", "--format", "json", "--out", "-"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["values"], serde_json::json!(["1", "-6", "11", "-6"]));
}

#[test]
fn table_unwritable_output() {
    let o = whitlab(&["table", "--q-list", "2", "--n-range", "2", "--d-range", "1", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fit_subcommand() {
    let o = whitlab(&["fit", "--n", "5", "--d", "3", "--i", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "30q^4 - 55q^3 + 60q^2 - 35q + 10  (validated)\n");
}
