//! Runs every example binary that `cargo test` builds alongside this test.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: &[&str] = &[
    "build_groups",
    "hom_search",
    "weak_solvability",
    "split_domination",
    "lifting",
    "wreath_obstruction",
    "cocycles",
    "sampler",
    "splitting",
    "formations",
    "file_formats",
];

fn example_dir() -> PathBuf {
    let exe = std::env::current_exe().expect("test binary path");
    exe.parent()
        .and_then(|deps| deps.parent())
        .expect("target dir")
        .join("examples")
}

#[test]
fn examples_run() {
    let dir = example_dir();
    for name in EXAMPLES {
        let bin = dir.join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
        let out = if bin.exists() {
            Command::new(&bin).output()
        } else {
            Command::new(env!("CARGO"))
                .args(["run", "-q", "--example", name])
                .current_dir(env!("CARGO_MANIFEST_DIR"))
                .output()
        }
        .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(
            out.status.success(),
            "{name} failed:\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}

#[test]
fn every_example_is_listed() {
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut found: Vec<String> = std::fs::read_dir(src)
        .unwrap()
        .filter_map(|e| e.ok()?.path().file_stem()?.to_str().map(String::from))
        .collect();
    found.sort();
    let mut listed: Vec<String> = EXAMPLES.iter().map(|s| s.to_string()).collect();
    listed.sort();
    assert_eq!(found, listed);
}
