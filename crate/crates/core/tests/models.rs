use lieverify::models::{builtin_models, parse_models, verify_model};
use lieverify::report::Status;

fn model(name: &str) -> lieverify::models::ModelSpec {
    builtin_models().into_iter().find(|m| m.name == name).unwrap()
}

#[test]
fn every_builtin_model_passes() {
    for m in builtin_models() {
        let r = verify_model(&m);
        let fails: Vec<_> = r.failures().map(|i| (i.id.clone(), i.computed.clone(), i.expected.clone())).collect();
        assert!(fails.is_empty(), "{}: {fails:?}", m.name);
    }
}

#[test]
fn wrong_eigenvalue_class_is_caught() {
    let mut m = model("E7");
    let case = m.cases.iter_mut().find(|c| c.id == "D6+A1-a").unwrap();
    for p in &mut case.pieces {
        p.class = if p.class == "0" { "1/2".into() } else { "0".into() };
    }
    assert!(!verify_model(&m).passed());
}

#[test]
fn wrong_symplectic_flag_is_caught() {
    let mut m = model("GSp10");
    let case = m.cases.iter_mut().find(|c| c.id == "W-minus-4").unwrap();
    case.pieces[0].symplectic = false;
    let r = verify_model(&m);
    assert!(r.failures().any(|i| i.id.ends_with("pieces@0")));
}

#[test]
fn wrong_centralizer_and_omega_are_caught() {
    let mut m = model("GSp6xGL2");
    let case = m.cases.iter_mut().find(|c| c.id == "order-4").unwrap();
    case.centralizer = "A3+A1".into();
    case.omega = Some("eps(-)".into());
    let r = verify_model(&m);
    let ids: Vec<&str> = r.failures().map(|i| i.id.as_str()).collect();
    assert!(ids.iter().any(|i| i.ends_with("centralizer")));
    assert!(ids.iter().any(|i| i.ends_with("omega")));
}

#[test]
fn empty_minus_space_cases() {
    let n = builtin_models()
        .iter()
        .filter(|m| m.row.is_some())
        .flat_map(|m| m.cases.iter())
        .filter(|c| c.minus_empty == Some(true) && !c.pieces.is_empty() && c.pieces.iter().all(|p| p.class != "0"))
        .count();
    assert!(n >= 3, "{n}");
}

#[test]
fn registry_rejects_bad_input() {
    assert!(parse_models("[[model]]\nname = \"x\"").is_err());
    let dup = r#"
[[model]]
name = "a"
group = "g"
dual = "A1:sc"
rho = ["1"]
dim = 2
[[model]]
name = "a"
group = "g"
dual = "A1:sc"
rho = ["1"]
dim = 2
"#;
    assert!(parse_models(dup).is_err());
}

#[test]
fn user_model_round_trip() {
    let text = r#"
[[model]]
name = "SL2"
group = "PGL2"
dual = "A1:sc"
rho = ["1"]
dim = 2

[[model.case]]
id = "minus"
x = "1/2"
centralizer = "A1"
omega = "eps(-)"

[[model.case.piece]]
class = "1/2"
reps = ["A1:std"]
dim = 2
self_dual = true
symplectic = true
"#;
    let ms = parse_models(text).unwrap();
    let r = verify_model(&ms[0]);
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    assert!(r.items.iter().all(|i| i.status != Status::Skipped));
}
