use kbgraph::atlas::are_isomorphic;
use kbgraph::cli::run;
use kbgraph::graph::{circulant, cycle, parse_graph6, path, to_graph6};

fn call(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("kbgraph")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn kb_of_c7() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(
        &dir,
        "C7.g6",
        &format!("{}\n", to_graph6(&cycle(7).unwrap())),
    );
    let (code, out, _) = call(&["kb", "--in", &f]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    let kb = parse_graph6(lines.next().unwrap()).unwrap();
    assert!(are_isomorphic(&kb, &circulant(7, &[1, 2]).unwrap()).unwrap());
    let map: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(map.as_array().unwrap().len(), 7);
    assert_eq!(map[0]["biclique"]["left"].as_array().unwrap().len(), 1);

    let (code, out, _) = call(&["kb", &f, "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph KB {"));
}

#[test]
fn check_p3_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "p3.g6", &to_graph6(&path(3).unwrap()));
    let (code, out, _) = call(&["check-p3", "--in", &f]);
    assert_eq!(code, 1);
    assert_eq!(out.trim(), "fail 0-1-2");
    let (code, out, _) = call(&["check-p3", "--g6", "Dh{", "--format", "json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn verify_lemma1_n7() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("lemma1.json");
    let (code, out, _) = call(&[
        "verify",
        "lemma1",
        "--n",
        "7",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["counts"]["graphs_scanned"], 507);
    assert_eq!(v["counts"]["below_three"], 0);
    assert_eq!(v["schema_version"], 1);
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(file["claim"], "lemma1-base");
}

#[test]
fn verify_observation_and_conjecture() {
    let (code, out, _) = call(&["verify", "observation1", "--k", "7..8", "--jobs", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["counts"]["failing"], 15);
    let (code, _, err) = call(&["verify", "observation1", "--k", "6"]);
    assert_eq!(code, 2);
    assert!(err.contains("k must be in"));

    let (code, a, _) = call(&["conjecture", "2", "--max-n", "6", "--k-max", "8"]);
    assert_eq!(code, 0);
    let (_, b, _) = call(&["conjecture", "2", "--max-n", "6", "--k-max", "8"]);
    let strip = |s: &str| {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        v["wall_time_ms"] = 0.into();
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn analyze_and_preimage() {
    let (code, out, _) = call(&["analyze", "--g6", "Bg", "--format", "json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "not-biclique");

    // The crown: two universal vertices and three of degree two.
    let crown = to_graph6(&kbgraph::graph::crown());
    let (code, out, _) = call(&[
        "analyze", "--g6", &crown, "--max-n", "8", "--format", "json",
    ]);
    assert_eq!(code, 3);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "inconclusive");
    assert_eq!(v["chain"].as_array().unwrap().len(), 2);

    let (code, out, _) = call(&["preimage", "--g6", &crown]);
    assert_eq!((code, out.trim()), (3, "unknown"));
    let diamond = to_graph6(&kbgraph::graph::diamond());
    let (code, out, _) = call(&["preimage", "--g6", &diamond]);
    assert_eq!(code, 0);
    assert_eq!(parse_graph6(out.trim()).unwrap().n(), 5);
}

#[test]
fn remove_deg2_from_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    // Triangle {2, 3, 4} plus the path 0 - 1 - 2.
    let f = write_temp(&dir, "h.txt", "5\n0 1\n1 2\n2 3\n2 4\n3 4\n");
    let (code, out, _) = call(&["bicliques", &f]);
    assert_eq!(code, 0);
    let idx = out.lines().position(|l| l == "0 2 | 1").unwrap();
    let (code, out, err) = call(&["remove-deg2", &f, "--kb-vertex", &idx.to_string()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("verified: true"));
    let (code, out, _) = call(&[
        "remove-deg2",
        &f,
        "--kb-vertex",
        &idx.to_string(),
        "--format",
        "graph6",
    ]);
    assert_eq!(code, 0);
    assert!(are_isomorphic(&parse_graph6(out.trim()).unwrap(), &kbgraph::graph::paw()).unwrap());
    let (code, _, err) = call(&["remove-deg2", &f, "--kb-vertex", "99"]);
    assert_eq!(code, 2);
    assert!(err.contains("out of range"));
}

#[test]
fn gen_and_twins() {
    let (code, out, _) = call(&["gen", "--n", "5", "--twin-free"]);
    assert_eq!(code, 0);
    let graphs: Vec<_> = out.lines().map(|l| parse_graph6(l).unwrap()).collect();
    assert_eq!(graphs.len(), 11);
    let (code, out, _) = call(&["gen", "--n", "6", "--count", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (v["connected"].as_u64(), v["twin_free"].as_u64()),
        (Some(112), Some(61))
    );
    let (code, _, _) = call(&["gen", "--n", "9"]);
    assert_eq!(code, 2);

    let c4 = to_graph6(&cycle(4).unwrap());
    let (code, out, _) = call(&["twins", "--g6", &c4]);
    assert_eq!(code, 0);
    assert_eq!(out, "0 2\n1 3\nreduced: A_\n");
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["kb", "--g6", "!!"]).0, 2);
    assert_eq!(call(&["kb", "--bogus"]).0, 2);
    assert_eq!(call(&["kb"]).0, 2);
    assert_eq!(call(&["nonsense"]).0, 2);
    assert_eq!(call(&["kb", "/no/such/file"]).0, 2);
    assert_eq!(call(&["kb", "--g6", "Bg", "--in", "x"]).0, 2);
    assert_eq!(call(&["bicliques", "--g6", "@"]).0, 2);
    assert_eq!(call(&["bicliques", "--g6", "Bg", "--format", "dot"]).0, 2);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("64 vertices"));
}
