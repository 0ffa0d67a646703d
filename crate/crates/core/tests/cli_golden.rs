use std::path::{Path, PathBuf};
use std::process::Command;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nodalcoh"))
        .current_dir(data_dir())
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn render((code, stdout, stderr): &(i32, String, String)) -> String {
    format!("exit: {code}\n--- stdout\n{stdout}--- stderr\n{stderr}")
}

const CASES: &[(&str, &[&str])] = &[
    ("analyze_smooth_g2", &["analyze", "curves/smooth_g2.json"]),
    ("analyze_chain23", &["analyze", "curves/chain23.json"]),
    ("analyze_loop", &["analyze", "curves/loop.json"]),
    ("analyze_cycle3", &["analyze", "curves/cycle3.json"]),
    (
        "analyze_disconnected",
        &["analyze", "curves/disconnected.json"],
    ),
    (
        "betti_smooth_g2",
        &["betti", "curves/smooth_g2.json", "--max-degree", "4"],
    ),
    (
        "betti_chain23_verify",
        &[
            "betti",
            "curves/chain23.json",
            "--max-degree",
            "6",
            "--verify",
        ],
    ),
    (
        "betti_chain23_kunneth_data",
        &[
            "betti",
            "curves/chain23.json",
            "--max-degree",
            "4",
            "--mode",
            "kunneth",
            "--format",
            "data",
        ],
    ),
    (
        "betti_star122_kunneth",
        &[
            "betti",
            "curves/star122.json",
            "--max-degree",
            "4",
            "--mode",
            "kunneth",
        ],
    ),
    (
        "betti_smooth_g2_latex",
        &[
            "betti",
            "curves/smooth_g2.json",
            "--max-degree",
            "3",
            "--format",
            "latex",
        ],
    ),
    ("betti_cycle3", &["betti", "curves/cycle3.json"]),
    ("betti_loop", &["betti", "curves/loop.json"]),
    (
        "basis_smooth_g2_deg2",
        &["basis", "curves/smooth_g2.json", "--degree", "2"],
    ),
    (
        "basis_chain23_deg1",
        &["basis", "curves/chain23.json", "--degree", "1"],
    ),
    (
        "multiply_anticommute",
        &["multiply", "curves/smooth_g2.json", "α_2^(1)", "α_1^(1)"],
    ),
    (
        "multiply_square",
        &["multiply", "curves/smooth_g2.json", "α_1^(1)", "α_1^(1)"],
    ),
    (
        "multiply_unknown",
        &["multiply", "curves/smooth_g2.json", "β", "c1"],
    ),
    ("missing_file", &["analyze", "curves/nope.json"]),
];

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let golden = data_dir().join("golden");
    let mut mismatches = Vec::new();
    for (name, args) in CASES {
        let first = run(args);
        assert_eq!(first, run(args), "{name}: output differs between runs");
        let text = render(&first);
        let path = golden.join(format!("{name}.txt"));
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| {
            panic!(
                "missing golden {}; rerun with UPDATE_GOLDEN=1",
                path.display()
            )
        });
        if expected != text {
            mismatches.push(format!("{name}:\n{expected}\n!=\n{text}"));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n\n"));
}

#[test]
fn non_compact_inputs_exit_two() {
    for file in [
        "curves/loop.json",
        "curves/cycle3.json",
        "curves/disconnected.json",
    ] {
        assert_eq!(run(&["betti", file]).0, 2, "{file}");
        assert_eq!(run(&["basis", file, "--degree", "1"]).0, 2, "{file}");
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["betti"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
}
