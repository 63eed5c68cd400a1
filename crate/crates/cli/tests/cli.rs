use std::io::Cursor;
use std::process::Command;

use ludigroup::cli::run;

fn cli(args: &[&str], input: &str) -> (i32, String, String) {
    let mut argv = vec!["ludigroup"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut Cursor::new(input.as_bytes()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn list_names_every_game() {
    let (code, out, _) = cli(&["list"], "");
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 32);
    assert!(out.lines().any(|l| l.starts_with("rubik ")));
}

#[test]
fn analyze_the_triangle() {
    let (code, out, _) = cli(&["analyze", "triangle"], "");
    assert_eq!(code, 0);
    assert!(out.contains("group order: 40320"), "{out}");
    let (code, json, _) = cli(&["analyze", "triangle", "--json"], "");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["group_order"], "40320");
}

#[test]
fn solving_nothing_prints_the_empty_word() {
    let (code, out, _) = cli(&["solve", "linear5", "--from", "JRBVO", "--to", "JRBVO"], "");
    assert_eq!((code, out.trim()), (0, ""));
    let (code, out, _) = cli(&["solve", "primes", "--from", "1", "--to", "84"], "");
    assert_eq!((code, out.trim()), (0, "2 2 3 7"));
}

#[test]
fn odd_targets_of_the_even_game_are_impossible() {
    let (code, out, _) = cli(&["solve", "even", "--from", "JRBVOMN", "--to", "RJBVOMN"], "");
    assert_eq!((code, out.trim()), (1, "MISSION IMPOSSIBLE"));
    let (code, out, _) = cli(&["solve", "even", "--from", "JRBVOMN", "--to", "RBJVOMN"], "");
    assert_eq!(code, 0);
    assert!(!out.trim().is_empty());
}

#[test]
fn budget_and_usage_errors() {
    let (code, _, err) = cli(&["solve", "taquin3", "--from", "12345678_", "--to", "_87654321", "--max-nodes", "100"], "");
    assert_eq!(code, 1, "{err}");
    assert_eq!(cli(&["solve", "even", "--from", "XYZ", "--to", "JRBVOMN"], "").0, 2);
    assert_eq!(cli(&["frobnicate"], "").0, 2);
    assert_eq!(cli(&["analyze", "nope"], "").0, 2);
    assert_eq!(cli(&["--help"], "").0, 0);
}

#[test]
fn game_definition_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("three.json");
    std::fs::write(
        &path,
        r#"{"id": "three", "family": "permutation", "alphabet": "ABC", "n": 3,
            "generators": [{"label": "swap", "cycles": [[1, 2]]}, {"label": "turn", "cycles": [[1, 2, 3]]}]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = cli(&["analyze", p], "");
    assert_eq!(code, 0);
    assert!(out.contains("group order: 6"), "{out}");
    let (code, out, _) = cli(&["solve", p, "--from", "ABC", "--to", "CAB"], "");
    assert_eq!((code, out.trim()), (0, "turn"));
}

#[test]
fn play_a_terminal_session() {
    let (code, out, _) = cli(&["play", "linear5", "--archetype", "impossible_factorization", "--seed", "1"], "s1\nundo\nimpossible\n");
    assert_eq!(code, 0);
    assert!(out.contains("verdict:"), "{out}");
    assert!(out.trim_end().ends_with("lost"));
    let (code, out, _) = cli(&["play", "linear5", "--variant", "blind"], "s1\nsubmit s1 s2\n");
    assert_eq!(code, 0);
    assert!(out.contains("error:"));
    // Nothing of the board shows until the word is adjudicated.
    let (before, after) = out.split_once("> [linear5").unwrap();
    assert!(!before.contains("configuration:"), "{out}");
    assert!(after.contains("configuration:") && after.contains("trace:"));
    let (code, _, _) = cli(&["play", "linear5", "--variant", "memory"], "");
    assert_eq!(code, 2);
}

#[test]
fn the_binary_exits_with_the_documented_codes() {
    let bin = env!("CARGO_BIN_EXE_ludigroup");
    let out = Command::new(bin).args(["solve", "even", "--from", "JRBVOMN", "--to", "RJBVOMN"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "MISSION IMPOSSIBLE");
    let out = Command::new(bin).args(["solve", "linear5", "--from", "JRBVO"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn the_port_variable_overrides_the_flag() {
    let port = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let mut child = Command::new(env!("CARGO_BIN_EXE_ludigroup"))
        .args(["serve", "--port", "1"])
        .env("LUDIGROUP_PORT", port.to_string())
        .stderr(std::process::Stdio::null())
        .spawn()
        .unwrap();
    let mut reply = String::new();
    for _ in 0..100 {
        if let Ok(mut s) = std::net::TcpStream::connect(("127.0.0.1", port)) {
            use std::io::{Read, Write};
            s.write_all(b"GET /sessions/none HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n").unwrap();
            s.read_to_string(&mut reply).unwrap();
            break;
        }
        std::thread::sleep(std::time::Duration::from_millis(50));
    }
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(reply.starts_with("HTTP/1.1 404"), "{reply}");
    assert!(reply.contains("unknown_session"));
}
