use std::path::PathBuf;
use std::process::{Command, Output};

use hyperset::commands::validate_machine;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn invocations() -> Vec<Vec<String>> {
    let graph = fixture(
        "graph.txt",
        "# cycle plus tail\n0 -> 1\n1 -> 2\n2 -> 0\n3 -> 0\n4 -> 3\n",
    );
    let coloring = fixture("coloring.txt", "1 1 1 1 1 1 1\n");
    let window = fixture("window.txt", "origin 1000\n0110101101 1101011010\n");
    let sets = fixture("sets.txt", "0%2\n[1,40)\n");
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        v(&["density", "0%2"]),
        v(&["shift", "0%3 | {5}", "point", "6:1"]),
        v(&["embed", "1%3", "0%3"]),
        v(&["psum", "1%3", "point", "6:1", "point", "6:5"]),
        v(&["star", "1%3", "point 6:1", "point 6:5"]),
        v(&["idem", "point 12:0"]),
        v(&["tensor", "delta+", "point", "6:1", "point", "6:2"]),
        v(&["color3", &graph]),
        v(&["rado", "1,-1,-1"]),
        v(&["schur", "5", "2"]),
        v(&["schur", "8", "2", "--eq", "1,1,-3"]),
        v(&["hindman", &coloring, "3"]),
        v(&["banach-start", &window, "3"]),
        v(&["demo-noncomm", "10", "21"]),
        v(&["gamma-fip", &sets, "--window", "50"]),
    ]
}

#[test]
fn outputs_are_byte_deterministic_and_match_schema() {
    for args in invocations() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        for format in ["human", "json"] {
            let mut full = vec!["--format", format];
            full.extend(&args);
            let a = run(&full);
            let b = run(&full);
            assert!(
                a.status.success(),
                "{args:?}: {}",
                String::from_utf8_lossy(&a.stderr)
            );
            assert_eq!(a.stdout, b.stdout, "{args:?}");
            if format == "json" {
                let value: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
                assert!(validate_machine(&value), "{args:?}: {value}");
                let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
                assert_eq!(again.as_bytes(), a.stdout.as_slice());
            }
        }
    }
}

#[test]
fn documented_examples() {
    let out = String::from_utf8(run(&["density", "0%2"]).stdout).unwrap();
    assert!(out.contains("schnirelmann sigma = 0\n"));
    assert!(out.contains("asymptotic d = 1/2\n"));
    assert!(out.contains("banach BD = 1/2\n"));
    let out = String::from_utf8(run(&["idem", "point 12:0"]).stdout).unwrap();
    assert!(out.contains("idempotent at depth 12: yes"));
    let out =
        String::from_utf8(run(&["--format", "json", "demo-noncomm", "10", "21"]).stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["full_at"], "100");
    assert_eq!(v["empty_at"], "121");
    assert_eq!(v["dichotomy"], true);
}

#[test]
fn exit_codes() {
    let domain = run(&["shift", "0%4", "point", "6:1"]);
    assert_eq!(domain.status.code(), Some(2));
    let msg = String::from_utf8(domain.stderr).unwrap();
    assert_eq!(msg.lines().count(), 1);
    assert!(msg.contains("insufficient depth"));
    assert_eq!(run(&["density", "0%"]).status.code(), Some(1));
    assert_eq!(run(&["density", "(0%2"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["color3", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(run(&["demo-noncomm", "3", "5"]).status.code(), Some(2));
    assert_eq!(
        run(&["psum", "0%2", "point", "6:1", "point", "4:1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn help_states_shift_direction() {
    let out = String::from_utf8(run(&["--help"]).stdout).unwrap();
    assert!(out.contains("`E << k` is the leftward shift A-k"));
    let out = String::from_utf8(run(&["psum", "--help"]).stdout).unwrap();
    assert!(out.contains("A_delta in U_gamma"));
}
