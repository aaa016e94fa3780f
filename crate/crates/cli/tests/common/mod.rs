#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["bott-null".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = bott_null_cli::run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Named invocations whose JSON output is pinned byte for byte.
pub fn golden_cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("report_A2", vec!["report", "--family", "A", "--rank", "2"]),
        ("report_A3", vec!["report", "--family", "A", "--rank", "3"]),
        ("report_A5", vec!["report", "--family", "A", "--rank", "5"]),
        ("report_A6", vec!["report", "--family", "A", "--rank", "6"]),
        ("report_B2", vec!["report", "--family", "B", "--rank", "2"]),
        ("bwb_A2_minus_3_alpha1", vec!["bwb", "--family", "A", "--rank", "2", "--weight", "r:-3,0"]),
        ("psupp_A2_b3", vec!["psupp", "--family", "A", "--rank", "2", "--expr", "b^3"]),
        ("decompose_A2_gg", vec!["decompose", "--family", "A", "--rank", "2", "--expr", "g*g"]),
        ("verdict_A5_r4", vec!["verdict", "--family", "A", "--rank", "5", "-r", "4"]),
        ("verdict_B2_r2", vec!["verdict", "--family", "B", "--rank", "2", "-r", "2"]),
        ("roots_B2", vec!["roots", "--family", "B", "--rank", "2"]),
        ("weyl_A3", vec!["weyl", "--family", "A", "--rank", "3"]),
        ("nullcone_samples", vec!["nullcone", "--samples", "50", "--size", "3", "-r", "2", "--seed", "7"]),
    ]
}

/// Compares the output at one and four threads with the stored file.
/// Setting `BLESS=1` rewrites the file from the single-threaded run.
pub fn check_golden(name: &str, args: &[&str]) -> Result<(), String> {
    let path = golden_dir().join(format!("{name}.json"));
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let mut a: Vec<&str> = args.to_vec();
        a.extend(["--threads", threads]);
        let (code, out, err) = run_cli(&a);
        if code != 0 {
            return Err(format!("{name}: exit {code} at {threads} threads: {err}"));
        }
        outputs.push(out);
    }
    if outputs[0] != outputs[1] {
        return Err(format!("{name}: output differs between 1 and 4 threads"));
    }
    if std::env::var_os("BLESS").is_some() {
        fs::create_dir_all(golden_dir()).unwrap();
        fs::write(&path, &outputs[0]).unwrap();
        return Ok(());
    }
    let stored = fs::read_to_string(&path).map_err(|e| format!("{name}: cannot read {}: {e}", path.display()))?;
    if stored != outputs[0] {
        return Err(format!("{name}: output does not match {}", path.display()));
    }
    Ok(())
}
