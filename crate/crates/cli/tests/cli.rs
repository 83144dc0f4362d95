use richardson_cli::{run, Outcome, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn cli(args: &str) -> Outcome {
    run(std::iter::once("richardson").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let out = cli(args);
    assert_eq!(out.code, EXIT_OK, "{args}: {}{}", out.stdout, out.stderr);
    serde_json::from_str(&out.stdout).expect("valid json")
}

#[test]
fn envelope_fields() {
    let v = json("poset meet --grassmannian 2,4 --a 1,4 --b 2,3");
    assert_eq!(v["context"], "2,4");
    assert_eq!(v["result"], "1,3");
    assert_eq!(v["query"]["a"], "1,4");
    assert!(v["method"].is_string());
}

#[test]
fn poset_queries() {
    let v = json("poset join --grassmannian 2,4 --a 1,4 --b 2,3");
    assert_eq!(v["result"], "2,4");
    let v = json("poset leq --grassmannian 2,4 --a 1,4 --b 2,3");
    assert_eq!(v["result"], false);
    let v = json("poset enumerate --grassmannian 2,4");
    assert_eq!(v["result"].as_array().unwrap().len(), 6);
    let v = json("poset interval --grassmannian 2,4 --w 2,4 --v 1,2");
    assert_eq!(v["result"]["dim"], 3);
    assert_eq!(v["result"]["elements"].as_array().unwrap().len(), 5);
    assert_eq!(v["result"]["covers"].as_array().unwrap().len(), 5);
    let v = json("poset boundary --grassmannian 2,4 --w 3,4 --v 1,2 --tau 1,3 --side plus");
    assert_eq!(v["result"], serde_json::json!(["2,4"]));
    let v = json("poset length --grassmannian 3,6 --a 4,5,6");
    assert_eq!(v["result"], 9);
}

#[test]
fn mult_all_example() {
    let v = json("mult --grassmannian 2,4 --w 2,4 --v 1,2 --tau 1,2 --method all");
    let r = &v["result"];
    for key in ["recursive", "product", "determinantal", "oracle"] {
        assert_eq!(r[key], 2, "{key}");
    }
    assert_eq!(r["agree"], true);
    assert_eq!(v["method"], "all");
    for method in ["recursive", "product", "determinant", "oracle"] {
        let v = json(&format!("mult --grassmannian 2,4 --w 2,4 --v 1,2 --tau 1,2 --method {method}"));
        assert_eq!(v["result"], 2, "{method}");
    }
}

#[test]
fn smt_examples() {
    let v = json("smt count --grassmannian 2,4 --w 3,4 --v 1,2 --m 2");
    assert_eq!(v["result"]["count"], 20);
    let out = cli("smt count --grassmannian 2,4 --w 3,4 --v 1,2 --m 2 --format text");
    assert_eq!(out.stdout, "20\n");
    // 13, 14, 23, 24
    let v = json("smt enum --grassmannian 2,4 --w 2,4 --v 1,3 --m 1");
    assert_eq!(v["result"]["count"], 4);
    let v = json("smt union --grassmannian 2,4 --part 2,4:1,2 --part 1,4:1,2 --m 2");
    assert_eq!(v["result"]["components"], serde_json::json!(["2,4:1,2"]));
    let v = json("smt union --grassmannian 2,4 --part 2,4:1,2 --part 3,4:2,3 --m 1");
    // {12,13,14,23,24} ∪ {23,24,34}
    assert_eq!(v["result"]["count"], 6);
}

#[test]
fn hilbert_of_the_quadric() {
    let v = json("hilbert --grassmannian 2,4");
    assert_eq!(v["result"]["degree"], 4);
    assert_eq!(v["result"]["variety_degree"], 2);
    assert_eq!(v["result"]["coefficients"], serde_json::json!(["1", "7/3", "23/12", "2/3", "1/12"]));
}

#[test]
fn straighten_output() {
    let v = json("straighten 1,4;2,3 --grassmannian 2,4");
    let terms = v["result"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    let mut seen: Vec<(i64, Vec<String>)> = terms
        .iter()
        .map(|t| {
            let f = t["factors"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
            (t["coefficient"].as_i64().unwrap(), f)
        })
        .collect();
    seen.sort();
    assert_eq!(
        seen,
        vec![
            (-1, vec!["3,4".to_string(), "1,2".to_string()]),
            (1, vec!["2,4".to_string(), "1,3".to_string()]),
        ]
    );
}

#[test]
fn tangent_and_smooth() {
    let v = json("tangent --grassmannian 2,4 --w 2,4 --tau 1,2");
    assert_eq!(v["result"].as_array().unwrap().len(), 4);
    assert_eq!(v["result"][0]["removed"], 1);
    let v = json("smooth --grassmannian 2,4 --w 2,4 --tau 1,2");
    assert_eq!(v["result"]["richardson"], false);
    assert_eq!(v["result"]["opposite"], true);
    assert_eq!(v["result"]["conjunction_holds"], true);
}

#[test]
fn tangent_cone_series() {
    let v = json("cone --grassmannian 2,4 --w 2,4 --v 1,2 --tau 1,2 --r-max 6");
    assert_eq!(v["result"]["series"], serde_json::json!([1, 4, 9, 16, 25, 36, 49]));
}

#[test]
fn eval_reads_matrix_files() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("eval_matrix.txt");
    std::fs::write(&path, "# 4 x 2\n1 0\n0 1\n1/2 3\n-2 5\n").unwrap();
    let v = json(&format!("eval --grassmannian 2,4 --matrix {} --theta 3,4", path.display()));
    // 1/2 * 5 - 3 * (-2)
    assert_eq!(v["result"][0]["value"], "17/2");
    let v = json(&format!("eval --grassmannian 2,4 --matrix {}", path.display()));
    assert_eq!(v["result"].as_array().unwrap().len(), 6);
    assert_eq!(v["result"][0]["value"], "1");

    std::fs::write(&path, "1 0\n0 1\n").unwrap();
    assert_eq!(cli(&format!("eval --grassmannian 2,4 --matrix {}", path.display())).code, EXIT_USAGE);
    assert_eq!(cli("eval --grassmannian 2,4 --matrix /nonexistent/file").code, EXIT_USAGE);
}

#[test]
fn seeded_random_eval_is_deterministic() {
    let a = cli("eval --grassmannian 2,5 --seed 9");
    let b = cli("eval --grassmannian 2,5 --seed 9");
    let c = cli("eval --grassmannian 2,5 --seed 10");
    assert_eq!(a, b);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn exit_codes() {
    let out = cli("smt count --grassmannian 2,4 --w 1,2 --v 3,4 --m 1");
    assert_eq!(out.code, EXIT_DOMAIN);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["code"], 1);
    assert!(v["error"].as_str().unwrap().contains("empty"));

    assert_eq!(cli("mult --grassmannian 2,4 --w 2,4 --tau 3,4").code, EXIT_DOMAIN);
    assert_eq!(cli("poset meet --grassmannian 2,4 --a 1,5 --b 2,3").code, EXIT_USAGE);
    assert_eq!(cli("poset meet --grassmannian 2,4 --a 1,x --b 2,3").code, EXIT_USAGE);
    assert_eq!(cli("poset meet --grassmannian 2,4 --a 1,4").code, EXIT_USAGE);
    assert_eq!(cli("poset meet --a 1,4 --b 2,3").code, EXIT_USAGE);
    assert_eq!(cli("nonsense").code, EXIT_USAGE);
    let out = cli("nonsense");
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["code"], 2);

    let out = cli("poset meet --grassmannian 2,4 --a 1,x --b 2,3 --format text");
    assert!(out.stdout.is_empty());
    assert!(out.stderr.starts_with("error:"));
    assert_eq!(cli("--help").code, EXIT_OK);
}

#[test]
fn selftest_single_context() {
    let v = json("selftest --grassmannian 2,4");
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["checks"].as_array().unwrap().len(), 15);
    let out = cli("selftest --grassmannian 2,4 --format text --seed 5");
    assert!(out.stdout.starts_with("selftest seed=5\n"));
    assert!(out.stdout.ends_with("15 checks, 0 failed\n"));
}
