use bialgebroid::fixtures::{dual_numbers, group_z2};
use bialgebroid::io::{load_crossed, load_spec, SpecDocument};
use bialgebroid::{Error, Field};

const MINIMAL: &str = r#"{
  "field": {"prime": 3},
  "algebras": {"A": {"labels": ["1"], "unit": ["1"], "products": [[0, 0, 0, "1"]]}},
  "bialgebroid": {
    "base": "A", "total": "A",
    "source": [["1"]], "target": [["1"]],
    "delta": [[0, 0, 0, "1"]],
    "counit": [["1"]]
  }
}"#;

fn docs(name: &str) -> String {
    format!("{}/../../docs/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn the_ground_field_over_itself() {
    let p = SpecDocument::from_json(MINIMAL).unwrap().build().unwrap();
    let b = &p.bialgebroid;
    assert_eq!((b.dim(), b.base_dim()), (1, 1));
    assert_eq!(b.field(), Field::prime(3).unwrap());
    assert!(b.check().passed());
    assert_eq!(p.names, ("A".to_string(), "A".to_string()));
}

#[test]
fn wrong_unit_length_names_its_path() {
    let text = MINIMAL.replace(r#""unit": ["1"]"#, r#""unit": ["1", "0", "0"]"#);
    let err = SpecDocument::from_json(&text).unwrap().build().unwrap_err();
    assert!(matches!(err, Error::Dimension(_)));
    assert!(err.to_string().contains("algebras.A.unit: 3 entries where 1 are expected"), "{err}");
}

#[test]
fn composite_characteristic_is_rejected() {
    let text = MINIMAL.replace(r#"{"prime": 3}"#, r#"{"prime": 4}"#);
    assert!(SpecDocument::from_json(&text).is_err());
}

#[test]
fn unknown_keys_and_missing_algebras_are_rejected() {
    let extra = MINIMAL.replacen(r#""field""#, r#""colour": 1, "field""#, 1);
    assert!(SpecDocument::from_json(&extra).is_err());
    let missing = MINIMAL.replace(r#""total": "A""#, r#""total": "U""#);
    let err = SpecDocument::from_json(&missing).unwrap().build().unwrap_err();
    assert!(err.to_string().contains("no algebra named \"U\""), "{err}");
}

#[test]
fn scalars_reduce_and_fractions_invert() {
    // 1/2 = 2 and 4 = 1 in F_3.
    let text = MINIMAL.replace(r#""counit": [["1"]]"#, r#""counit": [["4"]]"#).replace(r#"[[0, 0, 0, "1"]],"#, r#"[[0, 0, 0, "1/2"], [0, 0, 0, "1/2"]],"#);
    let doc = SpecDocument::from_json(&text).unwrap();
    let canon = doc.canonical().unwrap();
    assert_eq!(canon.bialgebroid.counit, vec![vec!["1".to_string()]]);
    assert_eq!(canon.algebras["A"].products, vec![(0, 0, 0, "1".to_string())]);
}

#[test]
fn shipped_example_is_canonical() {
    let path = docs("rank1-dual-numbers.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let doc = load_spec(&path).unwrap();
    assert_eq!(doc.to_canonical_json().unwrap(), text);
    let p = doc.build().unwrap();
    assert_eq!(p.bialgebroid.dim(), 4);
    assert!(p.modules.contains_key("A_on_U") && p.comodules.contains_key("U_regular") && p.hopf_modules.contains_key("U_regular"));
}

#[test]
fn fixtures_survive_a_round_trip() {
    for b in [dual_numbers(), group_z2(3).unwrap()] {
        let doc = SpecDocument::from_bialgebroid(&b);
        let text = doc.to_canonical_json().unwrap();
        let again = SpecDocument::from_json(&text).unwrap();
        assert_eq!(again.to_canonical_json().unwrap(), text);
        assert!(again.build().unwrap().bialgebroid.same_presentation(&b));
    }
}

#[test]
fn crossed_product_document() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/crossed-sl.json");
    let l = load_crossed(path).unwrap().build().unwrap();
    assert_eq!(l.rank, 1);
    assert!(l.check().passed());
}

#[test]
fn unreadable_files_are_errors() {
    assert!(matches!(load_spec("/nonexistent/spec.json"), Err(Error::Io(_))));
}
