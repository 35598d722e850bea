use lieverify::cli::{run, EXIT_PASS, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["lieverify"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn dimensions() {
    assert_eq!(call(&["dim", "E7", "sc", "w7"]).1, "56\n");
    assert_eq!(call(&["dim", "E7", "sc", "ω7"]).1, "56\n");
    assert_eq!(call(&["dim", "A1", "sc", "w"]).1, "2\n");
    assert_eq!(call(&["dim", "B3", "sc", "0 0 1"]).1, "8\n");
    assert_eq!(call(&["dim", "E7", "sc", "w9"]).0, EXIT_USAGE);
}

#[test]
fn torsion_table_for_e7() {
    let (code, out, _) = call(&["torsion", "E7", "sc", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("D6+A1"));
    assert!(!out.contains("A7"));
    let (_, out, _) = call(&["torsion", "E7", "sc", "2", "--modulo-center"]);
    assert!(out.contains("D6+A1") && out.contains("A7"));
}

#[test]
fn verify_all_json() {
    let (code, out, _) = call(&["verify-all", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["total"].as_u64().unwrap() > 400);
}

#[test]
fn model_filter() {
    let (code, out, _) = call(&["verify-all", "--model", "E7"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("## model E7"));
    assert!(!out.contains("## model GSp10"));
    assert!(!out.contains("endoscopic"));
}

#[test]
fn list_and_errors() {
    let (code, out, _) = call(&["verify-all", "--list-models"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.lines().any(|l| l == "GU4xGU2"));
    assert_eq!(call(&["verify-all", "--model", "nope"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify-all", "--config", "/nonexistent/models.toml"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify-all", "--out", "/nonexistent/dir/report.md", "--model", "GL6"]).0, EXIT_USAGE);
}

#[test]
fn report_to_file() {
    let path = std::env::temp_dir().join(format!("lieverify-report-{}.md", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["verify-all", "--model", "GL6", "--out", p]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("## model GL6"));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn failing_config_exits_one() {
    let path = std::env::temp_dir().join(format!("lieverify-bad-{}.toml", std::process::id()));
    std::fs::write(
        &path,
        "[[model]]\nname = \"bad\"\ngroup = \"g\"\ndual = \"A1:sc\"\nrho = [\"1\"]\ndim = 3\n",
    )
    .unwrap();
    let (code, _, _) = call(&["verify-all", "--config", path.to_str().unwrap(), "--model", "bad"]);
    assert_eq!(code, lieverify::cli::EXIT_FAIL);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn cancel_and_branch() {
    let (code, out, _) = call(&["cancel", "--eta", "-1"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.lines().skip(1).all(|l| l.ends_with("\t0")));
    let (code, out, _) = call(&["cancel", "E:a1 E:a2 | E:b1 E:b2"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.lines().count(), 13);
    let (code, out, _) = call(&["branch", "E7:sc", "0 0 0 0 0 0 1", "--levi", "1 2 3 4 5 6"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("D6+T1"));
    assert!(out.contains("D6:hs") && out.contains("D6:std"));
}

#[test]
fn output_is_stable() {
    let a = call(&["torsion", "G2", "sc", "6"]).1;
    let b = call(&["torsion", "G2", "sc", "6"]).1;
    assert_eq!(a, b);
}
