#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// One request: arguments, one per line, plus `#exit N`.
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub exit: Option<i32>,
}

pub fn cases() -> Vec<Case> {
    let mut names: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "args"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|path| {
            let text = fs::read_to_string(&path).unwrap();
            let mut args = Vec::new();
            let mut exit = None;
            for line in text.lines() {
                if let Some(code) = line.strip_prefix("#exit ") {
                    exit = Some(code.trim().parse().unwrap());
                } else if !line.is_empty() {
                    args.push(line.to_string());
                }
            }
            Case {
                name: path.file_stem().unwrap().to_string_lossy().into_owned(),
                args,
                exit,
            }
        })
        .collect()
}

/// Runs the binary from the golden directory; stdout followed by stderr.
pub fn invoke(case: &Case) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_commring"))
        .args(&case.args)
        .current_dir(golden_dir())
        .output()
        .unwrap();
    let mut text = String::from_utf8(out.stdout).unwrap();
    text.push_str(&String::from_utf8(out.stderr).unwrap());
    (text, out.status.code().unwrap_or(-1))
}

pub fn expected(case: &Case) -> Option<String> {
    fs::read_to_string(golden_dir().join(format!("{}.report", case.name))).ok()
}

/// Regenerates the `.report` file and the `#exit` line.
pub fn bless(case: &Case, text: &str, code: i32) {
    let dir = golden_dir();
    fs::write(dir.join(format!("{}.report", case.name)), text).unwrap();
    let mut args = case.args.join("\n");
    args.push_str(&format!("\n#exit {code}\n"));
    fs::write(dir.join(format!("{}.args", case.name)), args).unwrap();
}

/// Mismatches against the stored files, as readable lines.
pub fn check_all() -> Vec<String> {
    let bless_mode = std::env::var_os("BLESS").is_some();
    let mut problems = Vec::new();
    for case in cases() {
        let (text, code) = invoke(&case);
        if bless_mode {
            bless(&case, &text, code);
            continue;
        }
        match expected(&case) {
            None => problems.push(format!("{}: no .report file", case.name)),
            Some(want) if want != text => problems.push(format!("{}: report differs\n{text}", case.name)),
            Some(_) => {}
        }
        if case.exit != Some(code) {
            problems.push(format!("{}: exit {code}, expected {:?}", case.name, case.exit));
        }
    }
    problems
}
