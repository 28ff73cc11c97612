//! Fixture corpus shared by the golden-file test and the acceptance suite.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

pub const CASES: &[(&str, &[&str])] = &[
    ("validate_linv_semistable", &["validate", "linv_semistable.json"]),
    ("validate_phin_singular", &["validate", "phin_singular.json"]),
    ("validate_aut_unknown", &["validate", "aut_unknown.json"]),
    ("validate_group_gl2_f5", &["validate", "group_gl2_f5.json"]),
    ("validate_malformed", &["validate", "malformed.json"]),
    ("wd_phin_f2_tau1", &["wd", "phin_f2.json", "--tau", "1"]),
    ("wd_tau_out_of_range", &["wd", "phin_f2.json", "--tau", "2"]),
    ("tauindep_phin_f2", &["tauindep", "phin_f2.json"]),
    ("tauindep_nonsplit", &["tauindep", "phin_f2_nonsplit.json"]),
    ("fss_jordan_block", &["fss", "wd_jordan_block.json"]),
    ("ss_steinberg", &["ss", "wd_steinberg.json"]),
    ("segments_steinberg", &["segments", "wd_steinberg.json"]),
    ("segments_jordan_block", &["segments", "wd_jordan_block.json"]),
    ("segments_sqrt2", &["segments", "wd_sqrt2.json"]),
    ("iso_jordan_scalar", &["iso", "wd_jordan_block.json", "wd_scalar.json"]),
    ("iso_strict_jordan_scalar", &["iso", "--strict", "wd_jordan_block.json", "wd_scalar.json"]),
    ("generic_steinberg", &["generic", "wd_steinberg.json"]),
    ("generic_crystalline", &["generic", "wd_crystalline.json"]),
    ("generic_sqrt2", &["generic", "wd_sqrt2.json"]),
    ("linv_semistable", &["linv", "linv_semistable.json"]),
    ("linv_no_filtration", &["linv", "phin_f2.json"]),
    ("wa_semistable", &["wa", "linv_semistable.json"]),
    ("wa_failing", &["wa", "wa_failing.json"]),
    ("htweights_semistable", &["htweights", "linv_semistable.json"]),
    ("monodromy_crystalline_steinberg", &["monodromy", "wd_crystalline.json", "wd_steinberg.json"]),
    ("monodromy_steinberg_crystalline", &["monodromy", "wd_steinberg.json", "wd_crystalline.json"]),
    ("compat_contradiction_ss", &["compat", "wd_crystalline.json", "aut_steinberg.json", "--level", "ss"]),
    ("compat_contradiction_fss", &["compat", "wd_crystalline.json", "aut_steinberg.json", "--level", "fss"]),
    ("compat_contradiction_monodromy", &["compat", "wd_crystalline.json", "aut_steinberg.json", "--level", "monodromy"]),
    ("compat_steinberg_fss", &["compat", "wd_steinberg.json", "aut_steinberg.json", "--level", "fss"]),
    ("compat_module_fss", &["compat", "linv_semistable.json", "aut_steinberg_c5.json", "--level", "fss"]),
    ("compat_steinberg_vs_ps_ss", &["compat", "wd_steinberg.json", "aut_unramified.json", "--level", "ss"]),
    ("compat_mixed_q", &["compat", "wd_sqrt2.json", "aut_steinberg.json", "--level", "ss"]),
    ("compat_unknown_type", &["compat", "wd_steinberg.json", "aut_unknown.json", "--level", "ss"]),
    ("enormous_gl2_f5", &["enormous", "group_gl2_f5.json"]),
    ("enormous_sl2_f5", &["enormous", "group_sl2_f5.json"]),
    ("enormous_split_torus_f7", &["enormous", "group_split_torus_f7.json"]),
    ("decgen_pass", &["decgen", "decgen_pass.json"]),
    ("decgen_ratio_p", &["decgen", "decgen_ratio_p.json"]),
    ("decgen_ratio_p_inv", &["decgen", "decgen_ratio_p_inv.json"]),
    ("decgen_accept", &["decgen", "decgen_accept.json"]),
    ("decgen_not_split", &["decgen", "decgen_not_split.json"]),
    ("scalarcert_found", &["scalarcert", "scalarcert_found.json"]),
    ("scalarcert_none", &["scalarcert", "scalarcert_none.json"]),
    ("missing_file", &["fss", "does_not_exist.json"]),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn run_case(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wdforge"))
        .args(args)
        .current_dir(crate_dir().join("tests/fixtures"))
        .output()
        .expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8 output"))
}

/// Keys every successful document of a command must carry.
fn required_keys(command: &str) -> &'static [&'static str] {
    match command {
        "validate" => &["kind", "valid"],
        "wd" => &["tau", "wd"],
        "tauindep" => &["pairs", "independent"],
        "fss" => &["input_frobenius_semisimple", "wd"],
        "ss" => &["wd"],
        "segments" => &["input_frobenius_semisimple", "segments"],
        "iso" => &["isomorphic", "strict"],
        "generic" => &["generic"],
        "linv" => &["l_invariant", "alpha", "j0"],
        "wa" => &["t_n", "t_h", "sub_objects", "weakly_admissible"],
        "htweights" => &["weights"],
        "monodromy" => &["dominates"],
        "compat" => &["level", "ss_match", "fss_match", "monodromy_ok", "galois_segments", "automorphic_segments", "reason", "verdict"],
        "enormous" => &["order", "absolutely_irreducible", "no_l_power_quotient", "h0_zero", "h1_zero", "simple_submodule_condition", "enormous"],
        "decgen" => &["failures", "decomposed_generic"],
        "scalarcert" => &["exists", "witness"],
        other => panic!("unknown command {other}"),
    }
}

/// Predicate key whose truth value must match the exit code, if any.
fn predicate_key(command: &str) -> Option<&'static str> {
    match command {
        "validate" => Some("valid"),
        "tauindep" => Some("independent"),
        "iso" => Some("isomorphic"),
        "generic" => Some("generic"),
        "wa" => Some("weakly_admissible"),
        "monodromy" => Some("dominates"),
        "compat" => Some("verdict"),
        "enormous" => Some("enormous"),
        "decgen" => Some("decomposed_generic"),
        "scalarcert" => Some("exists"),
        _ => None,
    }
}

/// Checks the output shape and the exit-code contract; returns a problem description on failure.
pub fn check_schema(args: &[&str], code: i32, stdout: &str) -> Result<(), String> {
    let doc: Value = serde_json::from_str(stdout).map_err(|e| format!("output is not JSON: {e}"))?;
    if doc["wdforge_schema"] != json!(1) {
        return Err("missing wdforge_schema = 1".into());
    }
    if doc["command"] != json!(args[0]) {
        return Err(format!("command field {} for {}", doc["command"], args[0]));
    }
    if let Some(err) = doc.get("error") {
        if code != 2 {
            return Err(format!("error document with exit {code}"));
        }
        if !err["kind"].is_string() || !err["message"].is_string() {
            return Err("error needs kind and message".into());
        }
        return Ok(());
    }
    for key in required_keys(args[0]) {
        if doc.get(*key).is_none() {
            return Err(format!("missing key {key}"));
        }
    }
    let expected = match predicate_key(args[0]) {
        Some(k) => match doc[k].as_bool() {
            Some(true) => 0,
            Some(false) => 1,
            None => return Err(format!("{k} is not a boolean")),
        },
        None => 0,
    };
    if code != expected {
        return Err(format!("exit {code}, expected {expected}"));
    }
    Ok(())
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.json"))
}

pub fn golden_text(code: i32, stdout: &str) -> String {
    let output: Value = serde_json::from_str(stdout).expect("JSON output");
    let mut text = serde_json::to_string_pretty(&json!({"exit": code, "output": output})).unwrap();
    text.push('\n');
    text
}

/// Runs one case and compares it with its golden file.
pub fn check_case(name: &str, args: &[&str]) -> Result<(), String> {
    let (code, stdout) = run_case(args);
    check_schema(args, code, &stdout)?;
    let expected = std::fs::read_to_string(golden_path(name)).map_err(|_| "no golden file".to_string())?;
    if expected != golden_text(code, &stdout) {
        return Err("output differs from golden file".into());
    }
    Ok(())
}
