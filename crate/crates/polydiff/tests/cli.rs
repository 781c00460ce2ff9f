// SPDX-License-Identifier: MIT OR Apache-2.0
use std::path::PathBuf;
use std::process::{Command, Output};

use polydiff::checks::{example_corolla, example_double_attachment, gra_example, tetrahedron};
use polydiff::formats::{from_versioned, GcJson, GraJson, OJson};
use polydiff::tables::Table;
use polydiff_core::def::GcElement;
use polydiff_core::linalg::int;
use polydiff_core::poly::OLie;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polydiff")).args(args).output().unwrap()
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compose_gra_example() {
    let o = run(&["compose", "gra", &data("gra_path_edge.json"), "-i", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j: GraJson = from_versioned(&stdout(&o)).unwrap();
    assert_eq!(j.terms.len(), 4);
    assert_eq!(j.to_element().unwrap(), gra_example(1).1);
}

#[test]
fn compose_olie_examples() {
    let o = run(&["compose", "olie", &data("olie_corolla_corolla.json"), "-i", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j: OJson = from_versioned(&stdout(&o)).unwrap();
    // The 3-slot picture is written in the two-word basis of Lie(3).
    assert_eq!(j.terms.len(), 4);
    let x = j.to_element(&OLie::lie(1)).unwrap();
    assert_eq!(x.n_pictures(), 3);
    assert_eq!(x, example_corolla(1).1);

    let o = run(&["compose", "olie", &data("olie_double_attachment.json"), "-i", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j: OJson = from_versioned(&stdout(&o)).unwrap();
    let x = j.to_element(&OLie::lie(2)).unwrap();
    assert_eq!(x.n_pictures(), 3);
    assert_eq!(x, example_double_attachment().1);
}

#[test]
fn composing_with_the_unit_echoes_the_operand() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(data("olie_corolla_corolla.json")).unwrap()).unwrap();
    v["right"] = serde_json::json!({ "arity": 1, "d": 1, "terms": [{ "coeff": "1", "components": [] }] });
    let input = dir.path().join("unit.json");
    std::fs::write(&input, v.to_string()).unwrap();
    let out = dir.path().join("out.json");
    for i in ["1", "2"] {
        let o = run(&["compose", "olie", input.to_str().unwrap(), "-i", i, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let j: OJson = from_versioned(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(j.to_element(&OLie::lie(1)).unwrap(), OLie::lie(1).corolla());
    }

    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(data("gra_path_edge.json")).unwrap()).unwrap();
    v["right"] = serde_json::json!({ "arity": 1, "d": 1, "terms": [{ "coeff": "1", "graph": { "d": 1, "vertices": 1, "edges": [] } }] });
    std::fs::write(&input, v.to_string()).unwrap();
    let o = run(&["compose", "gra", input.to_str().unwrap(), "-i", "3"]);
    let left: GraJson = serde_json::from_value(v["left"].clone()).unwrap();
    let j: GraJson = from_versioned(&stdout(&o)).unwrap();
    assert_eq!(j.to_element().unwrap(), left.to_element().unwrap());
}

#[test]
fn parse_errors_carry_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("olie_corolla_corolla.json")).unwrap().replacen("[1,2]", "[1,\\n 2", 1);
    let input = dir.path().join("bad.json");
    std::fs::write(&input, text).unwrap();
    let o = run(&["compose", "olie", input.to_str().unwrap(), "-i", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column 3"), "{}", stderr(&o));

    std::fs::write(&input, "{\n  \"format_version\": \"1.0\",\n  \"left\": [\n").unwrap();
    let o = run(&["compose", "gra", input.to_str().unwrap(), "-i", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn unknown_major_version_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("gra_path_edge.json")).unwrap().replace("\"1.0\"", "\"2.0\"");
    let input = dir.path().join("v2.json");
    std::fs::write(&input, text).unwrap();
    let o = run(&["compose", "gra", input.to_str().unwrap(), "-i", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("format_version"));
}

#[test]
fn out_of_range_index_is_an_error() {
    let o = run(&["compose", "gra", &data("gra_path_edge.json"), "-i", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

fn table(args: &[&str]) -> Table {
    let mut all = vec!["cohomology"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--format", "json"]);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    from_versioned(&stdout(&o)).unwrap()
}

#[test]
fn tetrahedron_row_in_gc2() {
    let t = table(&["--complex", "gc", "--d", "2", "--slice", "4,6"]);
    assert_eq!(t.rows.len(), 1);
    let r = &t.rows[0];
    assert_eq!((r.bidegree.as_str(), r.degree), ("(4,6)", 0));
    assert!(r.cohomology_dim >= 1);
    let w: GcJson = serde_json::from_value(r.witnesses[0].clone()).unwrap();
    let w = w.to_element().unwrap();
    let t = GcElement::from_graph(&tetrahedron());
    let c = w.coeff(t.terms().keys().next().unwrap());
    assert!(c != int(0));
    assert_eq!(w, t.scale(&(c / t.terms().values().next().unwrap())));
}

#[test]
fn lie_deformation_table_has_total_one() {
    let t = table(&["--complex", "def-lie-lie", "--d", "2", "--arity", "5"]);
    assert_eq!(t.rows.len(), 4);
    assert_eq!(t.total_cohomology(), 1);
    assert_eq!(t.rows[0].bidegree, "(2,1)");
    assert_eq!(t.rows[0].witnesses.len(), 1);
}

#[test]
fn theta_row_in_gc1() {
    let t = table(&["--complex", "fcgc", "--d", "1", "--slice", "2,3"]);
    let r = &t.rows[0];
    assert_eq!((r.basis_dim, r.kernel_dim, r.image_dim, r.cohomology_dim, r.degree), (1, 1, 0, 1, 1));
}

#[test]
fn csv_output_is_deterministic_and_mirrored() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| -> PathBuf { dir.path().join(n) };
    let args = |p: &PathBuf| {
        run(&["cohomology", "--complex", "gc", "--d", "1", "--max-vertices", "4", "--max-edges", "6", "--out", p.to_str().unwrap()])
    };
    assert_eq!(args(&path("a.csv")).status.code(), Some(0));
    assert_eq!(args(&path("b.csv")).status.code(), Some(0));
    let a = std::fs::read(path("a.csv")).unwrap();
    assert_eq!(a, std::fs::read(path("b.csv")).unwrap());
    assert_eq!(std::fs::read(path("a.json")).unwrap(), std::fs::read(path("b.json")).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().next().unwrap(), "complex,d,bidegree,basis_dim,kernel_dim,image_dim,cohomology_dim");
    // GC_1 at (3,3) is empty; the triangle is bookkept as a loop class.
    assert!(text.contains("gc,1,\"(3,3)\",0,0,0,0"), "{text}");
    assert!(text.contains("gc2,1,\"(3,3)\",1,1,0,1"), "{text}");
    let t: Table = from_versioned(&std::fs::read_to_string(path("a.json")).unwrap()).unwrap();
    assert_eq!(t.loop_classes.len(), 1);
    assert_eq!(t.loop_classes[0].degree, 2);
}

#[test]
fn bounds_are_named() {
    let o = run(&["cohomology", "--complex", "gc", "--d", "2", "--max-vertices", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("limit 6"), "{}", stderr(&o));
    let o = run(&["cohomology", "--complex", "def-lie-oc", "--d", "1", "--internal", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("internal vertices"), "{}", stderr(&o));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = run(&["verify", "everything"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_writes_ordered_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "gutt", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("x∗y = x⊙y + (ħ/2)z on Heisenberg"));
    let r: polydiff::report::VerificationReport =
        from_versioned(&std::fs::read_to_string(dir.path().join("verify-gutt.json")).unwrap()).unwrap();
    assert_eq!(r.entries.len(), 6);
    let ids: Vec<&str> = r.entries.iter().map(|e| e.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(r.passed());
    assert!(dir.path().join("verify-gutt.txt").exists());
}

#[test]
fn verify_operads_names_the_worked_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "operads", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("corolla ∘₂ corolla reproduces 3 terms"));
    assert!(s.contains("Gra composition example reproduces 4 terms"));
}
