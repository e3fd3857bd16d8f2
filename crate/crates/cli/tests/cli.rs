use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperforman"))
        .args(args)
        .env_remove("HYPERFORMAN_CHAIN_CAP")
        .output()
        .unwrap()
}

fn run_on(sub: &str, file: &str, extra: &[&str]) -> Output {
    let path = corpus(file);
    let mut args = vec![sub, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn temp_input(suffix: &str, body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn validate_exit_codes() {
    let ok = run_on("validate", "example.json", &[]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), "3 nodes, 2 hypervertices, 1 hyperedge");
    assert_eq!(run_on("validate", "example.hnet", &[]).status.code(), Some(0));
    assert_eq!(run_on("validate", "hyperloop.hnet", &[]).status.code(), Some(2));
    assert_eq!(run_on("validate", "no-such-file.json", &[]).status.code(), Some(3));
}

#[test]
fn malformed_inputs_exit_2() {
    let bad = [
        (".json", "{\"hypervertices\": ["),
        (".json", r#"{"hypervertices": [{"id": "V", "nodes": []}]}"#),
        (".json", r#"{"hypervertices": [{"id": "V", "nodes": ["a"]}], "hyperedges": [{"id": "E", "tail": "V", "head": "W"}]}"#),
        (".hnet", "V1: a b\nV1: c\n"),
        (".hnet", "V1: a\nV2: b\nV3: c\nE: V1 V2 V3\n"),
    ];
    for (suffix, body) in bad {
        let f = temp_input(suffix, body);
        let o = run(&["validate", f.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{body}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn format_override_and_sniffing() {
    let f = temp_input(".txt", r#"{"hypervertices": [{"id": "V", "nodes": ["a", "b"]}]}"#);
    let path = f.path().to_str().unwrap();
    assert_eq!(run(&["validate", path]).status.code(), Some(0));
    assert_eq!(run(&["validate", path, "--format", "text"]).status.code(), Some(2));
}

#[test]
fn chi_on_example() {
    let v = json(&run_on("chi", "example.json", &["--output", "json"]));
    let values: Vec<i64> = v.as_array().unwrap().iter().map(|e| e["value"].as_i64().unwrap()).collect();
    assert_eq!(values, [1, 2, 1]);
    let text = json(&run_on("chi", "example.hnet", &["--output", "json"]));
    assert_eq!(v, text);
    let one = json(&run_on("chi", "example.json", &["--chi-method", "rank", "--output", "json"]));
    assert_eq!(one.as_array().unwrap().len(), 1);
}

#[test]
fn chi_reports_not_ranked() {
    let v = json(&run_on("chi", "rank-conflict.json", &["--output", "json"]));
    let rank = &v.as_array().unwrap()[1];
    assert_eq!(rank["status"], "not_ranked");
    assert!(rank["detail"].as_str().unwrap().contains("{a,b,x}"));
    assert!(rank["value"].is_null());
}

#[test]
fn boolean_lattice_and_empty_network() {
    let v = json(&run_on("chi", "boolean-lattice.json", &["--output", "json"]));
    assert_eq!(v[0]["value"], 1);
    assert_eq!(v[1]["value"], 0);
    let empty = json(&run_on("chi", "empty.json", &["--output", "json"]));
    for entry in empty.as_array().unwrap() {
        assert_eq!(entry["value"], 0);
    }
}

#[test]
fn gauss_bonnet_human_output() {
    let o = run_on("gauss-bonnet", "tetrahedron.json", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("-14 - 24 + 40 = 2 = χ"));
    assert!(stdout(&o).contains("residual: 0"));
    let edge = run_on("gauss-bonnet", "single-edge.json", &[]);
    assert!(stdout(&edge).starts_with("3 - 2 + 0 = 1 = χ"));
}

#[test]
fn gauss_bonnet_holds_on_every_valid_corpus_file() {
    for entry in std::fs::read_dir(corpus("")).unwrap() {
        let path = entry.unwrap().path();
        if path.ends_with("hyperloop.hnet") {
            continue;
        }
        let o = run(&["gauss-bonnet", path.to_str().unwrap(), "--output", "json"]);
        let v = json(&o);
        assert_eq!(v["residual"], 0, "{}", path.display());
    }
}

#[test]
fn curvature_csv_rows_agree() {
    let o = run_on("curvature", "example.json", &["--output", "csv"]);
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["edge", "triangles", "parallels", "ricci", "ricci_closed", "agree"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| &r[5] == "true" && r[3] == r[4]));
    let total: i64 = rows.iter().map(|r| r[3].parse::<i64>().unwrap()).sum();
    assert_eq!(total, 12);
}

#[test]
fn directed_curvature() {
    let v = json(&run_on("curvature", "directed-chain.hnet", &["--directed", "--output", "json"]));
    let d = &v["directed"];
    assert_eq!(d["chi_directed_paper"], "31/2");
    assert_eq!(d["chi_directed_count"], 1);
    let cycle = json(&run_on("curvature", "directed-cycle.hnet", &["--directed", "--triangles", "cyclic", "--output", "json"]));
    assert_eq!(cycle["directed"]["chi_directed_count"], 1);
    let transitive = json(&run_on("curvature", "directed-cycle.hnet", &["--directed", "--output", "json"]));
    assert_eq!(transitive["directed"]["chi_directed_count"], 0);
}

#[test]
fn directed_options_need_directed_input() {
    assert_eq!(run_on("curvature", "example.json", &["--degree", "in"]).status.code(), Some(2));
    assert_eq!(run_on("curvature", "example.json", &["--directed"]).status.code(), Some(2));
}

#[test]
fn filtrate_outputs() {
    let o = run_on("filtrate", "tetrahedron.json", &["--output", "csv"]);
    assert_eq!(stdout(&o), "threshold,f0,f1,f2,chi\n4,4,6,4,2\n");
    let star = run_on("filtrate", "star-3.json", &["--output", "csv"]);
    assert_eq!(stdout(&star), "threshold,f0,f1,f2,chi\n0,4,3,0,1\n");
    let two = json(&run_on("filtrate", "two-component.json", &["--output", "json"]));
    let steps = two.as_array().unwrap();
    assert_eq!(steps.last().unwrap()["chi"], 2);
}

#[test]
fn chain_cap_exits_4() {
    let flag = run_on("chi", "torus-7.json", &["--chain-cap", "5"]);
    assert_eq!(flag.status.code(), Some(4));
    let env = Command::new(env!("CARGO_BIN_EXE_hyperforman"))
        .args(["chi", corpus("torus-7.json").to_str().unwrap()])
        .env("HYPERFORMAN_CHAIN_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(4));
}

#[test]
fn skeleton_and_model_flags() {
    let full = json(&run_on("chi", "example.json", &["--chi-method", "delta", "--output", "json"]));
    let cut = json(&run_on("chi", "example.json", &["--chi-method", "delta", "--skeleton", "0", "--output", "json"]));
    assert_eq!(full[0]["value"], 1);
    assert_eq!(cut[0]["value"], 6);
    let geo = json(&run_on("gauss-bonnet", "shared-face.hnet", &["--model", "geometric", "--output", "json"]));
    assert_eq!(geo["chi"], 1);
}

#[test]
fn report_is_complete_json() {
    let v = json(&run_on("report", "example.json", &[]));
    for key in ["input", "settings", "poset", "chi", "curvature", "filtration"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}
