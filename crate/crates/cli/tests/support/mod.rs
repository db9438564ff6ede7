#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cases() -> Vec<(String, Vec<String>)> {
    let mut out: Vec<_> = fs::read_dir(golden_dir())
        .unwrap()
        .filter_map(|e| {
            let path = e.unwrap().path();
            (path.extension()? == "args").then(|| {
                let name = path.file_stem().unwrap().to_string_lossy().into_owned();
                let args = fs::read_to_string(&path)
                    .unwrap()
                    .lines()
                    .map(String::from)
                    .collect();
                (name, args)
            })
        })
        .collect();
    out.sort();
    out
}

/// `exit: N` followed by stdout without the timing line.
pub fn invoke(args: &[String], cache: Option<&Path>) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tauideal"));
    cmd.args(args).env_remove("TAUIDEAL_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.arg("--cache-dir").arg(dir);
    }
    let out = cmd.output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let body: String = stdout
        .lines()
        .filter(|l| !l.contains("\"elapsed_ms\""))
        .map(|l| format!("{l}\n"))
        .collect();
    format!("exit: {}\n{body}", out.status.code().unwrap_or(-1))
}

pub const GOLDEN_CASES: usize = 20;
