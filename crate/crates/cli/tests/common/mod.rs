#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const SIGMA_5_2: &str = r#"{"rank":2,"rays":[[0,1],[5,-2]]}"#;

/// One invocation per subcommand, all on X_{5,2} and its relatives.
pub fn golden_cases() -> Vec<(&'static str, Vec<String>)> {
    let fp = r#"{"entries":[[1,3,5],[4,11,18],[7,19,31]],"k_max":2,"l_max":2}"#;
    let roots = r#"[[0,-1],[1,-1],[2,-1],[3,-1],[4,-1],[5,-1],[6,-1],[7,-1],[8,-1],[1,3],[3,8]]"#;
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("roots", vec!["roots", "--cone", SIGMA_5_2, "--bound", "8"]),
        (
            "reconstruct",
            vec!["reconstruct", "--roots", roots, "--rank", "2"],
        ),
        (
            "fingerprint",
            vec![
                "fingerprint",
                "--d",
                "5",
                "--e",
                "2",
                "--lmax",
                "2",
                "--kmax",
                "2",
            ],
        ),
        ("identify", vec!["identify", "--fingerprint", fp]),
        ("iso", vec!["iso", "--a", "5,2", "--b", "5,3"]),
        ("canon", vec!["canon", "--a", "5,3"]),
        (
            "exp",
            vec![
                "exp",
                "--cone",
                SIGMA_5_2,
                "--root",
                "[0,-1]",
                "--ray",
                "0",
                "--s",
                "1/2",
                "--poly",
                r#"{"terms":[{"c":"1","m":[1,2]},{"c":"-3/4","m":[2,5]}]}"#,
            ],
        ),
        (
            "commute",
            vec![
                "commute",
                "--cone",
                SIGMA_5_2,
                "--r1",
                r#"{"alpha":[0,-1],"ray":0}"#,
                "--r2",
                r#"{"alpha":[3,-1],"ray":0}"#,
            ],
        ),
        ("hilbert", vec!["hilbert", "--cone", SIGMA_5_2]),
        ("order", vec!["order", "--matrix", "[[0,-1],[1,-1]]"]),
    ];
    cases
        .into_iter()
        .map(|(name, args)| (name, args.into_iter().map(String::from).collect()))
        .collect()
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

/// Runs the built binary; returns exit status and stdout.
pub fn toric(args: &[String]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_toric"))
        .args(args)
        .output()
        .expect("toric binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
    )
}
