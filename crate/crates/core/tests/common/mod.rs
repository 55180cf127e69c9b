#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

/// CLI invocations with checked-in golden outputs, in table and JSON form.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("length_a2", &["length", "A2", "s0*s1*s0"]),
    ("length_nr_2a2", &["length-nr", "2A2", "s_fix*s_orb"]),
    ("reduce_a2", &["reduce", "A2", "t[2/3,1/3]"]),
    ("inversions_a2", &["inversions", "A2", "s0*s1"]),
    ("inversions_2a2", &["inversions", "2A2", "s_orb*s_fix"]),
    ("bruhat_a1", &["bruhat", "A1", "s0", "s1*s0"]),
    ("kottwitz_a2", &["kottwitz", "A2", "t[2/3,1/3]"]),
    ("omega_a2", &["omega", "A2"]),
    ("info_2a2", &["info", "2A2"]),
    ("d_values_2a2", &["d-values", "2A2"]),
    ("d_values_2a3", &["d-values", "2A3"]),
    ("double_cosets_a2", &["double-cosets", "A2--lattice=sc", "s1", "s1", "3"]),
    ("double_cosets_2a2", &["double-cosets", "2A2", "{}", "{}", "3"]),
    ("cell_size_2a2", &["cell-size", "2A2", "s_orb", "--q=2"]),
    ("poincare_a1", &["poincare", "A1", "2"]),
    ("poincare_2a2", &["poincare", "2A2", "1"]),
    ("check_a1", &["check", "A1", "--depth", "3"]),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the built binary, returning exit code and stdout.
pub fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_iwahori"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(text).collect::<Vec<_>>().join(",")),
        other => other.to_string(),
    }
}

fn split_row(line: &str) -> Vec<String> {
    line.split("  ")
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(String::from)
        .collect()
}

/// Checks that a table rendering carries exactly the values of the JSON
/// rendering of the same command.
pub fn parity(json: &str, table: &str) -> Result<(), String> {
    let v: Value = serde_json::from_str(json).map_err(|e| e.to_string())?;
    let mut lines = table.lines();
    let mut next = |what: &str| lines.next().map(str::to_string).ok_or(format!("table ends before {what}"));
    let same = |a: String, b: String| if a == b { Ok(()) } else { Err(format!("`{a}` != `{b}`")) };
    match v["kind"].as_str() {
        Some("scalar") => same(next("value")?, text(&v["value"]))?,
        Some("polynomial") => {
            same(next("polynomial")?, text(&v["text"]))?;
            if let Some(q) = v.get("q") {
                same(next("value")?, format!("at q={q}: {}", text(&v["value"])))?;
            }
        }
        Some("element") => {
            same(next("text")?, text(&v["text"]))?;
            for key in ["kottwitz_class", "word", "length", "length_nr"] {
                same(next(key)?, format!("{key}: {}", text(&v[key])))?;
            }
        }
        Some("table") => {
            for pair in v["meta"].as_array().ok_or("meta")? {
                same(next("meta")?, format!("{}: {}", text(&pair[0]), text(&pair[1])))?;
            }
            let columns: Vec<String> = v["columns"].as_array().ok_or("columns")?.iter().map(text).collect();
            if split_row(&next("header")?) != columns {
                return Err("header differs".into());
            }
            for row in v["rows"].as_array().ok_or("rows")? {
                let cells: Vec<String> = row.as_array().ok_or("row")?.iter().map(text).collect();
                let got = split_row(&next("row")?);
                if got != cells {
                    return Err(format!("row {got:?} != {cells:?}"));
                }
            }
        }
        Some("report") => {
            for r in v["reports"].as_array().ok_or("reports")? {
                let head = next("report header")?;
                if !head.starts_with(&format!("group {} (depth {})", text(&r["group"]), r["depth"])) {
                    return Err(format!("report header `{head}`"));
                }
                next("report columns")?;
                for c in r["results"].as_array().ok_or("results")? {
                    let got = split_row(&next("check")?);
                    let want = [text(&c["name"]), text(&c["cases"]), text(&c["violations"])];
                    if got[..3] != want {
                        return Err(format!("check {got:?} != {want:?}"));
                    }
                }
            }
        }
        other => return Err(format!("unknown kind {other:?}")),
    }
    match lines.next() {
        None => Ok(()),
        Some(extra) => Err(format!("table has extra line `{extra}`")),
    }
}

/// Compares every golden pair against fresh CLI output (rewriting the
/// files when `UPDATE_GOLDEN` is set) and checks table/JSON parity.
pub fn verify_goldens() -> Result<usize, String> {
    let dir = golden_dir();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in GOLDEN {
        let (code, table) = cli(args);
        let mut json_args = args.to_vec();
        json_args.push("--json");
        let (code_json, json) = cli(&json_args);
        if code != 0 || code_json != 0 {
            return Err(format!("{name}: exit codes {code}/{code_json}"));
        }
        for (ext, body) in [("txt", &table), ("json", &json)] {
            let path = dir.join(format!("{name}.{ext}"));
            if update {
                std::fs::write(&path, body).map_err(|e| e.to_string())?;
            }
            let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            if &want != body {
                return Err(format!("{name}.{ext} differs from golden:\n{body}"));
            }
        }
        parity(&json, &table).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(GOLDEN.len())
}
