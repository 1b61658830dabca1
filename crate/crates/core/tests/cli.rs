mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use aaut::cli::{run, CommandResult};
use aaut::format::write_element;
use aaut::Element;
use common::*;
use serde_json::Value;

fn schema() -> Value {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/aaut.schema.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Validates against the whole schema and against the named definition.
fn validate(doc: &Value, def: &str) {
    let root = schema();
    let v = jsonschema::validator_for(&root).unwrap();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc:#}");
    let mut only = root.clone();
    only.as_object_mut().unwrap().remove("oneOf");
    only["$ref"] = Value::String(format!("#/$defs/{def}"));
    let v = jsonschema::validator_for(&only).unwrap();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{def}: {errors:?}\n{doc:#}");
}

struct Dir(PathBuf);

impl Dir {
    fn new(name: &str) -> Self {
        let p = std::env::temp_dir().join(format!("aaut-cli-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&p).unwrap();
        Dir(p)
    }

    fn put(&self, name: &str, g: &Element) -> String {
        self.put_text(name, &write_element(g))
    }

    fn put_text(&self, name: &str, text: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for Dir {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.0).ok();
    }
}

fn aaut(args: &[&str]) -> (CommandResult, Value) {
    let r = run(std::iter::once("aaut").chain(args.iter().copied()));
    let v: Value = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", r.stdout));
    (r, v)
}

fn check_dot(dot: &str) {
    graphviz_rust::parse(dot).unwrap_or_else(|e| panic!("DOT does not parse: {e}\n{dot}"));
}

#[test]
fn conj_examples() {
    let dir = Dir::new("conj");
    let (gx, gav) = (dir.put("x.aaut", &x()), dir.put("av.aaut", &av()));
    let (r, v) = aaut(&["conj", &gx, &gav, "--arena", "V"]);
    assert_eq!(r.exit_code, 1);
    assert_eq!(v["evidence"]["kind"], "rotation-mismatch");
    validate(&v, "verdict");
    let (r, v) = aaut(&["conj", &gx, &gav, "--arena", "AAut"]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(v["conjugate"], true);
    validate(&v, "verdict");
    let (r, v) = aaut(&["conj", &gx, &gav]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(v["arena"], "AAut");
}

#[test]
fn conj_with_witness() {
    let dir = Dir::new("witness");
    let (a, b) = (dir.put("s.aaut", &swap()), dir.put("ds.aaut", &double_swap()));
    let (r, v) = aaut(&["conj", &a, &b, "--arena", "V", "--witness-bound", "3"]);
    assert_eq!(r.exit_code, 0);
    validate(&v, "verdict");
    let w = aaut::format::parse_element(v["witness"].as_str().unwrap()).unwrap();
    assert_eq!(swap().conjugate_by(&w).unwrap(), double_swap());
    let (f, g) = (
        dir.put("f.aaut", &el(p(2, 2), "00->000, 010->001, 011->01, 10->11, 11->10")),
        dir.put("g.aaut", &el(p(2, 2), "000->0000, 0010->0001, 0011->001, 01->01, 10->11, 11->10")),
    );
    let (r, v) = aaut(&["conj", &f, &g, "--witness-bound", "2"]);
    assert_eq!(r.exit_code, 1);
    assert_eq!(v["evidence"]["kind"], "support-parity");
    assert!(v.get("witness").is_none());
    validate(&v, "verdict");
}

#[test]
fn random_is_deterministic() {
    let args = ["random", "--d", "2", "--k", "2", "--carets", "5", "--seed", "7"];
    let (a, v) = aaut(&args);
    let (b, _) = aaut(&args);
    assert_eq!(a, b);
    assert_eq!(a.exit_code, 0);
    validate(&v, "random");
    let g = aaut::format::parse_element(v["element"]["text"].as_str().unwrap()).unwrap();
    assert_eq!(g, aaut::random::seeded_element(p(2, 2), 5, 7));
    let (r, _) = aaut(&["random", "--d", "1", "--k", "2", "--carets", "5", "--seed", "7"]);
    assert_eq!(r.exit_code, 2);
}

#[test]
fn random_writes_a_file() {
    let dir = Dir::new("random");
    let out = dir.path("r.aaut");
    let (r, _) = aaut(&["random", "--d", "3", "--k", "2", "--carets", "4", "--seed", "1", "--out", &out]);
    assert_eq!(r.exit_code, 0);
    let (r, v) = aaut(&["show", &out]);
    assert_eq!(r.exit_code, 0);
    validate(&v, "show");
}

#[test]
fn show_and_revealing() {
    let dir = Dir::new("show");
    let gx = dir.put("x.aaut", &x());
    let (r, v) = aaut(&["show", &gx]);
    assert_eq!(r.exit_code, 0);
    validate(&v, "show");
    assert_eq!(v["hyperbolic"], true);
    assert_eq!(v["open_conjugacy_class"], true);
    assert_eq!(v["dynamics"]["attractors"][0]["point"], "0/(0)");
    let g0 = dir.put_text("g0.aaut", "aaut v1\nd 2 k 2\npair\n1 -> 0\n00 -> 10\n01 -> 11\n");
    let (r, v) = aaut(&["revealing", &g0]);
    assert_eq!(r.exit_code, 0);
    validate(&v, "revealing");
    let pair = aaut::format::parse_pair(v["text"].as_str().unwrap()).unwrap();
    assert!(pair.is_revealing());
}

#[test]
fn diagram_outputs() {
    let dir = Dir::new("diagram");
    for (name, g) in [("x", x()), ("g1", g1()), ("id", id22()), ("av", av())] {
        let file = dir.put(&format!("{name}.aaut"), &g);
        for flag in [None, Some("--reduced"), Some("--star-reduced")] {
            let dot = dir.path(&format!("{name}.dot"));
            let json = dir.path(&format!("{name}.json"));
            let mut args = vec!["diagram", file.as_str(), "--dot", dot.as_str(), "--json", json.as_str()];
            args.extend(flag);
            let (r, v) = aaut(&args);
            assert_eq!(r.exit_code, 0);
            validate(&v, "diagramOutput");
            check_dot(&std::fs::read_to_string(&dot).unwrap());
            let written: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
            assert_eq!(written, v["diagram"]);
            let back = aaut::strand::StrandDiagram::from_json(&serde_json::from_value(written).unwrap()).unwrap();
            back.validate().unwrap();
        }
    }
    let (r, _) = aaut(&["diagram", "nowhere.aaut", "--reduced", "--star-reduced"]);
    assert_eq!(r.exit_code, 2);
}

#[test]
fn dot_parses_for_random_diagrams() {
    use aaut::strand::{basic_diagram, star_reduce};
    for seed in 0..30 {
        let g = aaut::random::seeded_element(p(3, 2), 1 + seed as usize % 6, seed);
        let dgm = star_reduce(&basic_diagram(&aaut::make_revealing(&g).unwrap()));
        check_dot(&dgm.to_dot());
        check_dot(&basic_diagram(g.pair()).to_dot());
        check_dot(&aaut::elliptic::orbital_type(&Element::identity(p(3, 2))).unwrap().to_dot());
    }
}

#[test]
fn eh_writes_both_factors() {
    let dir = Dir::new("eh");
    let file = dir.put("g1.aaut", &g1());
    let (e, h) = (dir.path("e.aaut"), dir.path("h.aaut"));
    let (r, v) = aaut(&["eh", &file, "--out-elliptic", &e, "--out-hyperbolic", &h]);
    assert_eq!(r.exit_code, 0);
    validate(&v, "eh");
    let e = aaut::format::parse_element(&std::fs::read_to_string(e).unwrap()).unwrap();
    let h = aaut::format::parse_element(&std::fs::read_to_string(h).unwrap()).unwrap();
    assert_eq!(e.compose(&h).unwrap(), g1());
    let (r, _) = aaut(&["eh", &file]);
    assert_eq!(r.exit_code, 2);
}

#[test]
fn oracle_command() {
    let dir = Dir::new("oracle");
    let (a, b, i) = (dir.put("s.aaut", &swap()), dir.put("ds.aaut", &double_swap()), dir.put("id.aaut", &id22()));
    let (r, v) = aaut(&["oracle", &a, &b, "--max-carets", "3"]);
    assert_eq!(r.exit_code, 0);
    validate(&v, "oracle");
    let (r, v) = aaut(&["oracle", &a, &i, "--max-carets", "2"]);
    assert_eq!(r.exit_code, 1);
    assert_eq!(v["witness"], Value::Null);
    validate(&v, "oracle");
    let (r, _) = aaut(&["oracle", &a, &i, "--max-carets", "0"]);
    assert_eq!(r.exit_code, 2);
}

#[test]
fn roundtrip_command() {
    let dir = Dir::new("roundtrip");
    for (name, g) in [("x", x()), ("g1", g1()), ("id", id22()), ("sw", swap())] {
        let file = dir.put(&format!("{name}.aaut"), &g);
        let (r, v) = aaut(&["roundtrip", &file]);
        assert_eq!(r.exit_code, 0, "{name}: {}", r.stdout);
        validate(&v, "roundtrip");
    }
}

#[test]
fn format_errors_exit_two() {
    let dir = Dir::new("errors");
    let cases = [
        ("dup", "aaut v1\nd 2 k 2\npair\n0 -> 00\n0 -> 01\n1 -> 1\n", "domain not an antichain", 5),
        ("digit", "aaut v1\nd 2 k 2\npair\n0 -> 00\n12 -> 01\n11 -> 1\n", "digit out of range", 5),
        ("bij", "aaut v1\nd 2 k 2\npair\n0 -> 1\n1 -> 1\n", "not a bijection", 5),
        ("header", "aaut v2\nd 2 k 2\npair\n0 -> 0\n1 -> 1\n", "expected 'aaut v1'", 1),
        ("incomplete", "aaut v1\nd 2 k 2\npair\n0 -> 0\n10 -> 1\n", "not a complete tree", 5),
    ];
    for (name, text, msg, line) in cases {
        let file = dir.put_text(&format!("{name}.aaut"), text);
        let (r, v) = aaut(&["show", &file]);
        assert_eq!(r.exit_code, 2, "{name}");
        validate(&v, "error");
        assert!(v["error"]["message"].as_str().unwrap().contains(msg), "{name}: {}", v["error"]["message"]);
        assert_eq!(v["error"]["line"], line, "{name}");
        assert!(!r.stderr.is_empty());
    }
    let (r, v) = aaut(&["show", "/nonexistent/file.aaut"]);
    assert_eq!(r.exit_code, 2);
    validate(&v, "error");
    let (r, v) = aaut(&["frobnicate"]);
    assert_eq!(r.exit_code, 2);
    validate(&v, "error");
    let (r, v) = aaut(&["--help"]);
    assert_eq!(r.exit_code, 0);
    validate(&v, "help");
}

#[test]
fn parameter_mismatch_is_an_input_error() {
    let dir = Dir::new("mismatch");
    let (a, b) = (dir.put("a.aaut", &x()), dir.put("b.aaut", &Element::identity(p(3, 3))));
    let (r, v) = aaut(&["conj", &a, &b]);
    assert_eq!(r.exit_code, 2);
    validate(&v, "error");
}

#[test]
fn binary_matches_the_library() {
    let dir = Dir::new("binary");
    let (gx, gav) = (dir.put("x.aaut", &x()), dir.put("av.aaut", &av()));
    let out = Command::new(env!("CARGO_BIN_EXE_aaut"))
        .args(["conj", &gx, &gav, "--arena", "V"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let (r, _) = aaut(&["conj", &gx, &gav, "--arena", "V"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), r.stdout);
    let out = Command::new(env!("CARGO_BIN_EXE_aaut")).arg("show").arg(dir.0.join("missing")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    serde_json::from_slice::<Value>(&out.stdout).unwrap();
}
