use std::process::Command;

use proptest::prelude::*;
use reldep::invariants::TheoremId;
use reldep_cli::ast::{Arg, CommandKind, Item, ModuleDecl, Name, Param, PolyText, Pos, PrimeDecl, RingDecl};
use reldep_cli::{parse_script, render, run_source, CliError, Options, Script};
use serde_json::Value;

const NODE: &str = "ring R = char 5, vars [x,y], quotient (x*y);\nmodule k = coker R [[x, y]];\n";

fn run(src: &str) -> (Value, i32) {
    let out = run_source(src, &Options::default());
    (serde_json::from_str(&out.json()).unwrap(), out.exit_code)
}

#[test]
fn undefined_name_reports_its_line() {
    let err = run_source(&format!("{NODE}\nreport(k, M);"), &Options::default());
    assert_eq!(err.exit_code, 1);
    let e = err.report.error.unwrap();
    assert_eq!(e.kind, "undefined-name");
    assert!(e.message.starts_with("undefined name M at line 4"), "{}", e.message);
}

#[test]
fn duplicate_and_inhomogeneous_declarations() {
    let out = run_source(&format!("{NODE}module k = coker R [[x]];"), &Options::default());
    assert_eq!(out.report.error.unwrap().kind, "duplicate-name");
    let out = run_source(&format!("{NODE}module B = coker R [[x + y^2]];"), &Options::default());
    let e = out.report.error.unwrap();
    assert_eq!((e.kind.as_str(), e.line), ("inhomogeneous-entry", Some(3)));
    let out = run_source(&format!("{NODE}module B = coker R [[x, y], [x^2, y]];"), &Options::default());
    assert_eq!(out.report.error.unwrap().kind, "inhomogeneous-entry");
}

#[test]
fn degree_inference_matches_explicit_degrees() {
    let inferred = run_source(&format!("{NODE}module F = coker R [[y, 0], [x^2, x]];"), &Options::default());
    let explicit =
        run_source(&format!("{NODE}module F = coker R [[y, 0], [x^2, x]] degrees [1, 0];"), &Options::default());
    assert!(inferred.report.error.is_none());
    let f = |o: &reldep_cli::SessionOutcome| serde_json::to_value(&o.report.modules["F"]).unwrap();
    assert_eq!(f(&inferred), f(&explicit));
}

#[test]
fn node_fixture_values() {
    let (json, code) = run(&format!("{NODE}report(k, k);"));
    assert_eq!(code, 0);
    let pair = &json["pairs"][0];
    assert_eq!(pair["s"], 0);
    assert_eq!(pair["t"]["value"], 1);
    assert_eq!(pair["t"]["exactness"], "exact");
    assert_eq!(pair["gdim"], 1);
    assert_eq!(pair["mu"]["m*"], 2);
    assert_eq!(pair["q"]["value"], "inf");
    assert_eq!(json["ring"]["hypersurface"], true);
    assert_eq!(json["oracleCheck"]["status"], "pass");
}

#[test]
fn relative_vanishing_holds_for_transverse_lines() {
    let src = format!("{NODE}module A = coker R [[x]];\nmodule B = coker R [[y]];\nverify T1.3 (A, B);");
    let (json, code) = run(&src);
    assert_eq!(code, 0);
    assert_eq!(json["pairs"][0]["verdicts"][0]["conclusionStatus"], "holds");
    assert_eq!(json["pairs"][0]["verdicts"][0]["theoremId"], "T1.3");
}

#[test]
fn failing_verdict_gives_exit_code_two() {
    let src = format!("{NODE}module A = coker R [[x]];\nmodule B = coker R [[y]];\nverify P1.1 (A, B);");
    let (json, code) = run(&src);
    assert_eq!(code, 2);
    assert_eq!(json["pairs"][0]["verdicts"][0]["conclusionStatus"], "fails");
}

#[test]
fn fuzz_is_deterministic() {
    let a = run_source("fuzz(count 30, seed 7);", &Options::default());
    let b = run_source("fuzz(count 30, seed 7);", &Options::default());
    assert_eq!(a.json(), b.json());
    let f = &a.report.fuzz[0];
    assert_eq!(f.verdicts.len(), 30);
    assert!(f.verdicts.iter().all(|v| v.theorem_id == TheoremId::T1_2Upper));
    let seeded = run_source("fuzz(count 30);", &Options { seed: 7, ..Options::default() });
    assert_eq!(seeded.json(), a.json());
}

#[test]
fn tate_table_command() {
    let src = format!("{NODE}module A = coker R [[x]];\nmodule B = coker R [[y]];\ntate(A, B) lo = -4;");
    let (json, _) = run(&src);
    let t = &json["tables"][0];
    assert_eq!(t["theory"], "TateTor");
    assert_eq!(t["tateCertificate"]["extrapolation"]["kind"], "periodic");
    assert_eq!(t["entries"].as_array().unwrap().len(), 5);
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reldep"))
}

#[test]
fn binary_writes_identical_json() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("node.rdp");
    std::fs::write(&script, format!("{NODE}report(k, k);\ngtor(k, k);")).unwrap();
    let mut outputs = Vec::new();
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let status = bin()
            .args(["--input", script.to_str().unwrap(), "--json", path.to_str().unwrap(), "--max-degree", "12"])
            .output()
            .unwrap();
        assert_eq!(status.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&status.stdout).contains("oracle check: pass"));
        outputs.push(std::fs::read(path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let json: Value = serde_json::from_slice(&outputs[0]).unwrap();
    assert_eq!(json["bounds"]["maxDegree"], 12);
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.rdp");
    std::fs::write(&bad, "ring R = char 5 vars [x];").unwrap();
    let out = bin().args(["--input", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("syntax error at line 1"));
    let missing = bin().args(["--input", dir.path().join("none.rdp").to_str().unwrap()]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn parse_errors_are_positioned() {
    let e = parse_script("ring R = char 5, vars [x];\nreport(k k);").unwrap_err();
    assert!(matches!(e, CliError::Syntax { pos: Pos { line: 2, .. }, .. }), "{e}");
}

fn name(s: &str) -> Name {
    Name { text: s.into(), pos: Pos::default() }
}

fn poly_strategy() -> impl Strategy<Value = String> {
    let mono = (1u32..5, prop::sample::select(vec!["x", "y", "x^2", "x*y", "y^3"])).prop_map(|(c, m)| {
        if c == 1 {
            m.to_string()
        } else {
            format!("{c}*{m}")
        }
    });
    prop::collection::vec(mono, 1..3).prop_map(|ms| ms.join("+"))
}

fn item_strategy() -> impl Strategy<Value = Item> {
    let ident = "[a-zA-Z][a-zA-Z0-9_]{0,4}";
    let ring = (ident, prop::collection::vec(poly_strategy(), 0..3), any::<bool>()).prop_map(|(n, q, golod)| {
        Item::Ring(RingDecl {
            name: name(&n),
            characteristic: 5,
            vars: vec![name("x"), name("y")],
            quotient: q.into_iter().map(|t| PolyText { text: t, pos: Pos::default() }).collect(),
            golod,
        })
    });
    let module = (ident, 1usize..3, 0usize..3, prop::option::of(prop::collection::vec(-2i32..3, 2)), poly_strategy())
        .prop_map(|(n, rows, cols, degs, p)| {
            Item::Module(ModuleDecl {
                name: name(&n),
                ring: name("R"),
                rows: vec![vec![PolyText { text: p, pos: Pos::default() }; cols]; rows],
                degrees: degs.map(|d| d[..rows].to_vec()),
                matrix_pos: Pos::default(),
            })
        });
    let prime = (ident, prop::collection::vec(poly_strategy(), 1..3)).prop_map(|(n, g)| {
        Item::Prime(PrimeDecl {
            name: name(&n),
            gens: g.into_iter().map(|t| PolyText { text: t, pos: Pos::default() }).collect(),
        })
    });
    let kind = prop_oneof![
        Just(CommandKind::Report),
        Just(CommandKind::Tor),
        Just(CommandKind::GTor),
        Just(CommandKind::Tate),
        Just(CommandKind::Fuzz),
        prop::sample::select(TheoremId::ALL.to_vec()).prop_map(CommandKind::Verify),
    ];
    let command = (
        kind,
        prop::collection::vec((ident, prop::option::of(-5i64..40)), 0..4),
        prop::collection::vec((ident, -9i64..9), 0..3),
    )
        .prop_map(|(kind, args, params)| {
            Item::Command(reldep_cli::ast::Command {
                kind,
                pos: Pos::default(),
                args: args.into_iter().map(|(n, value)| Arg { name: name(&n), value }).collect(),
                params: params.into_iter().map(|(n, value)| Param { name: name(&n), value }).collect(),
            })
        });
    prop_oneof![ring, module, prime, command]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn render_then_parse_is_identity(items in prop::collection::vec(item_strategy(), 0..8)) {
        let script = Script { items };
        let text = render(&script);
        let parsed = parse_script(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(parsed, script);
    }
}
