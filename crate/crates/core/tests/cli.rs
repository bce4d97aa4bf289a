use std::process::{Command, Output};

fn bgd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgd")).args(args).output().expect("bgd runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = bgd(&all);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&o.stderr)))
}

fn statuses(v: &serde_json::Value) -> Vec<(String, String)> {
    v["items"].as_array().unwrap().iter().map(|i| (i["check_id"].as_str().unwrap().to_string(), i["status"].as_str().unwrap().to_string())).collect()
}

fn docs(name: &str) -> String {
    format!("{}/../../docs/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn maschke_reports_the_reason() {
    let o = bgd(&["maschke", "--preset", "dual-numbers"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not separable: ε vanishes on the left integrals"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(bgd(&["check", "--preset", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(bgd(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bgd(&["check", "/nonexistent.json"]).status.code(), Some(2));
    let o = bgd(&["check", "--preset", "dual-numbers", "x.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_output_is_reproducible() {
    let a = bgd(&["check", "--preset", "group-z2", "--prime", "3", "--format", "json"]);
    let b = bgd(&["check", "--preset", "group-z2", "--prime", "3", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.get("timings").is_none());
    let t = json(&["check", "--preset", "group-z2", "--timings"]);
    assert!(t["timings"]["total"].is_number());
}

#[test]
fn check_on_the_shipped_example() {
    let v = json(&["check", &docs("rank1-dual-numbers.json")]);
    let items = statuses(&v);
    assert!(items.iter().all(|(_, s)| s == "pass"), "{items:?}");
    assert!(items.iter().any(|(id, _)| id.starts_with("comodules.U_regular.")));
    assert!(items.iter().any(|(id, _)| id.starts_with("hopf_modules.U_regular.")));
    assert_eq!(v["data"]["dim"], 4);
}

#[test]
fn export_reproduces_the_canonical_file() {
    let path = docs("rank1-dual-numbers.json");
    let o = bgd(&["export", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(&path).unwrap());
}

#[test]
fn example_output_loads_back() {
    let dir = std::env::temp_dir().join(format!("bgd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let list = stdout(&bgd(&["example", "--list"]));
    for name in ["dual-numbers", "idempotent-monoid", "jet"] {
        assert!(list.contains(name), "{list}");
        let o = bgd(&["example", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let file = dir.join(format!("{name}.json"));
        std::fs::write(&file, &o.stdout).unwrap();
        assert_eq!(bgd(&["check", file.to_str().unwrap()]).status.code(), Some(0), "{name}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn monoid_skips_what_needs_an_antipode() {
    let v = json(&["frobenius", "--preset", "idempotent-monoid"]);
    let items = statuses(&v);
    assert!(items.contains(&("frobenius.consistent".into(), "skipped".into())), "{items:?}");
    assert_eq!(v["data"]["system"]["tensor"], "1 ⊗ 1 + 1 ⊗ x + x ⊗ 1");
    let v = json(&["translate", "--preset", "idempotent-monoid", "--element", "0,1"]);
    assert!(statuses(&v).iter().all(|(_, s)| s == "skipped"));
}

#[test]
fn translation_of_a_primitive() {
    let v = json(&["translate", "--preset", "dual-numbers", "--element", "0,1"]);
    assert!(statuses(&v).iter().all(|(_, s)| s == "pass"));
    assert_eq!(v["data"]["translation"], "1 ⊗ X + X ⊗ 1");
}

#[test]
fn every_command_runs_on_an_enveloping_preset() {
    for cmd in ["check", "integrals", "maschke", "frobenius", "quasi-frobenius", "translate", "dual", "fundamental"] {
        let o = bgd(&[cmd, "--preset", "rank1-dual-numbers", "--prime", "3"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}\n{}", stdout(&o));
    }
    let v = json(&["integrals", "--preset", "jet", "--prime", "3"]);
    assert!(statuses(&v).iter().any(|(id, s)| id == "integrals.omega_generates" && s == "pass"));
}
