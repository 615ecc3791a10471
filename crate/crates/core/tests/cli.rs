//! Golden-file tests for `g2calc`. Each fixture holds the exit code, then
//! stdout, then stderr, in canonical text. Set `G2CALC_BLESS=1` to rewrite
//! the fixtures from the current output.

use std::path::PathBuf;

use g2calc::cli::run_command;

const ROTATION: &str = "[0, x3, -x2, x5, -x4, -2*x7, 2*x6]";
/// Primitives of `e1 ⌟ φ₀`, `e2 ⌟ φ₀` and `X_rot ⌟ φ₀`, as printed.
const ALPHA_E1: &str = "+ (-1/2*x3) dx[2] + (1/2*x2) dx[3] + (-1/2*x5) dx[4] + (1/2*x4) dx[5] + (-1/2*x7) dx[6] + (1/2*x6) dx[7]";
const ALPHA_E2: &str = "+ (1/2*x3) dx[1] + (-1/2*x1) dx[3] + (-1/2*x6) dx[4] + (1/2*x7) dx[5] + (1/2*x4) dx[6] + (-1/2*x5) dx[7]";
const ALPHA_ROT: &str = "+ (1/3*x2*x2 + 1/3*x3*x3 + 1/3*x4*x4 + 1/3*x5*x5 - 2/3*x6*x6 - 2/3*x7*x7) dx[1] + (-1/3*x1*x2 + x4*x7 + x5*x6) dx[2] + (-1/3*x1*x3 + x4*x6 - x5*x7) dx[3] + (-1/3*x1*x4 - x2*x7 - x3*x6) dx[4] + (-1/3*x1*x5 - x2*x6 + x3*x7) dx[5] + (2/3*x1*x6) dx[6] + (2/3*x1*x7) dx[7]";

fn cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("check_closed_phi0", vec!["check-closed", "@phi0"]),
        ("check_closed_fails", vec!["check-closed", "x1*dx[2]"]),
        (
            "check_closed_top_degree",
            vec!["--dim", "2", "check-closed", "x1*dx[1,2]"],
        ),
        ("is_g2_field_rotation", vec!["is-g2-field", ROTATION]),
        (
            "is_g2_field_radial",
            vec!["is-g2-field", "[x1, x2, x3, x4, x5, x6, x7]"],
        ),
        ("rochesterian_e1", vec!["rochesterian", ALPHA_E1]),
        ("rochesterian_rejected", vec!["rochesterian", "x2*dx[3]"]),
        (
            "rochesterian_cst",
            vec![
                "--preset",
                "cst",
                "rochesterian",
                "x4*dx[1] + x5*dx[2] + x6*dx[3]",
            ],
        ),
        ("bracket_e1_rotation", vec!["bracket", ALPHA_E1, ALPHA_ROT]),
        (
            "bracket_not_rochesterian",
            vec!["bracket", "x2*dx[3]", "dx[1]"],
        ),
        ("split_dx23", vec!["split2", "dx[2,3]"]),
        ("metric_phi0", vec!["metric"]),
        (
            "metric_at_point",
            vec!["metric", "--point", "[0.5,0,0,0,0,0,-1]"],
        ),
        (
            "cross_e2_e5",
            vec!["cross", "[0,1,0,0,0,0,0]", "[0,0,0,0,1,0,0]"],
        ),
        ("star_phi0", vec!["star", "@phi0"]),
        (
            "morphism_rotation",
            vec!["morphism", "[x1, -x3, x2, -x5, x4, -x6, -x7]"],
        ),
        (
            "morphism_doubling",
            vec!["morphism", "[2*x1, 2*x2, 2*x3, 2*x4, 2*x5, 2*x6, 2*x7]"],
        ),
        (
            "graph_translation",
            vec!["graph-test", "[x1 + 1, x2, x3 - 2, x4, x5, x6, x7]"],
        ),
        (
            "poisson_conjugate",
            vec!["--preset", "symplectic_std:1", "poisson", "x1", "x2"],
        ),
        (
            "poisson_jacobi",
            vec![
                "--preset",
                "symplectic_std:2",
                "poisson-jacobi",
                "x1*x3",
                "x2^2",
                "x4*x1 - x3",
            ],
        ),
        ("flow_rotation", vec!["flow", ROTATION, "--steps", "200"]),
        (
            "json_check_closed",
            vec!["--json", "check-closed", "x1*dx[2]"],
        ),
        (
            "parse_error_column",
            vec!["check-closed", "dx[1] + dx[1,2]"],
        ),
        ("unknown_preset", vec!["--preset", "phi1", "metric"]),
        (
            "jacobi_rotation",
            vec!["jacobi-defect", ALPHA_E2, ALPHA_E1, ALPHA_ROT],
        ),
    ]
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.txt"))
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("G2CALC_BLESS").is_some();
    let mut mismatches = Vec::new();
    for (name, args) in cases() {
        let out = run_command(std::iter::once("g2calc").chain(args));
        let actual = format!(
            "exit: {}\n--- stdout\n{}--- stderr\n{}",
            out.code, out.stdout, out.stderr
        );
        let path = fixture(name);
        if bless {
            std::fs::write(&path, &actual).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing fixture {}", path.display()));
        if expected != actual {
            mismatches.push(format!("{name}:\n{actual}"));
        }
    }
    assert!(
        mismatches.is_empty(),
        "golden mismatches:\n{}",
        mismatches.join("\n")
    );
}

#[test]
fn exit_code_contract() {
    let code =
        |args: &[&str]| run_command(std::iter::once("g2calc").chain(args.iter().copied())).code;
    assert_eq!(code(&["check-closed", "@phi0"]), 0);
    assert_eq!(code(&["check-closed", "x1*dx[2]"]), 1);
    assert_eq!(code(&["check-closed", "dx[1] +"]), 2);
    assert_eq!(code(&["--preset", "symplectic_std:1", "metric"]), 2);
    assert_eq!(code(&["bracket", "x2*dx[3]", "dx[1]"]), 3);
    assert_eq!(code(&["poisson", "x1", "dx[1]"]), 2);
}

#[test]
fn selftest_reports_every_case() {
    let out = run_command(["g2calc", "--json", "selftest"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let lines: Vec<serde_json::Value> = out
        .stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let passes = lines.iter().filter(|l| l["key"] == "PASS").count();
    assert_eq!(passes, g2calc::cli::selftest_cases().len());
    assert!(lines.iter().any(|l| l["key"] == "not_tested"));
}
