use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use liftcong::halfint::shimura_match;
use liftcong::lift::maass_table;
use serde_json::Value;

fn liftcong(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_liftcong"));
    c.env_remove("LIFTCONG_CACHE_DIR").args(args);
    if let Some(d) = cache {
        c.arg("--cache-dir").arg(d);
    }
    c.output().expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn lift_coeffs_match_maass_table() {
    let doc = json_of(&liftcong(&["lift-coeffs", "--n", "2", "--k", "10", "--det-bound", "40"], None));
    assert_eq!(doc["schema"], "liftcong.siegel_table/1");
    assert_eq!(doc["config"]["command"], "lift-coeffs");
    assert_eq!(doc["config"]["det_bound"], 40);
    let g = shimura_match(9, 41).unwrap().remove(0);
    let oracle = maass_table(&g, 10, 40).unwrap().to_json();
    assert_eq!(doc["result"]["entries"], oracle["entries"]);
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["lvalues", "--weight", "32", "--l", "18..18", "--d", "1", "--prime", "211"];
    let cold = liftcong(&args, Some(dir.path()));
    let warm = liftcong(&args, Some(dir.path()));
    let none = liftcong(&args, None);
    assert!(cold.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, none.stdout);
    let doc = json_of(&cold);
    assert_eq!(doc["result"]["entries"][0]["norm_factorization"], "2^4 * 3 * 5^2 * 7^2 * 11 * 13 * 211");
    let files: Vec<_> = walk(dir.path());
    assert_eq!(files.len(), 1);
    let entry: Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(entry["operation"], "critical_value_table");
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["eigenforms", "--weight", "24", "--prec", "5"];
    let first = liftcong(&args, Some(dir.path()));
    for f in walk(dir.path()) {
        fs::write(f, "{ not json").unwrap();
    }
    let second = liftcong(&args, Some(dir.path()));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn formats_share_one_result() {
    let args = ["plus-space", "--lambda", "9", "--prec", "12"];
    let doc = json_of(&liftcong(&args, None));
    let tsv = String::from_utf8(liftcong(&[&args[..], &["--out", "tsv"]].concat(), None).stdout).unwrap();
    let rows = tsv.lines().count() - 1;
    assert_eq!(rows, doc["result"]["forms"][0]["coefficients"].as_array().unwrap().len());
    let text = String::from_utf8(liftcong(&[&args[..], &["--out", "text"]].concat(), None).stdout).unwrap();
    assert!(text.starts_with("S+_19/2: dimension 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(liftcong(&["lift-coeffs", "--n", "4", "--k", "18", "--det-bound", "10"], None).status.code(), Some(3));
    assert_eq!(liftcong(&["lvalues", "--weight", "32", "--l", "x", "--prime", "211"], None).status.code(), Some(3));
    assert_eq!(liftcong(&["eigenforms"], None).status.code(), Some(2));
    assert_eq!(liftcong(&["congruence", "--n", "4", "--k", "10", "--prime", "211"], None).status.code(), Some(3));
}

#[test]
fn example_matches_pinned_values() {
    let o = liftcong(&["example", "--out", "text"], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("[Q(f):Q] = 2, 211 splits into 2 primes"));
    assert!(text.contains("dim lift space = 2"));
    assert!(text.contains("verdict: congruence-prime-vs-lift-complement"));
    assert!(text.contains("conclusion reproduced: true"));
}

fn walk(d: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in fs::read_dir(d).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out.sort();
    out
}
