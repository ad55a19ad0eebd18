use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn invoke(cmd: &str, input: &str, extra: &[&str]) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_padic-spectral"))
        .arg(cmd)
        .args(extra)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn ok(cmd: &str, input: Value) -> Value {
    let (code, text) = invoke(cmd, &input.to_string(), &[]);
    assert_eq!(code, 0, "{text}");
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["schema"], "padic-spectral/v1");
    assert_eq!(doc["command"], cmd);
    doc["result"].clone()
}

#[test]
fn classify_unipotent_example() {
    let r = ok(
        "classify",
        json!({"p": 3, "K": 3, "matrix": [[1, 1], [0, 1]]}),
    );
    assert_eq!(r["class"], "CONTINUOUS");
}

#[test]
fn jordan_of_identity() {
    let r = ok(
        "jordan",
        json!({"p": 5, "K": 3, "matrix": [[1, 0], [0, 1]]}),
    );
    assert_eq!(r["semisimple"], r["unipotent"]);
    assert_eq!(r["semisimple"]["entries"], json!([["1", "0"], ["0", "1"]]));
}

#[test]
fn output_is_deterministic() {
    let input = json!({"p": 5, "K": 3, "matrix": [[0, 1], [1, 0]]}).to_string();
    for cmd in ["spectral", "teich-factor", "decompose-zp"] {
        let input = if cmd == "teich-factor" {
            json!({"p": 5, "K": 3, "f": [1, 0, 0, 1]}).to_string()
        } else {
            input.clone()
        };
        let a = invoke(cmd, &input, &[]);
        let b = invoke(cmd, &input, &[]);
        assert_eq!(a, b, "{cmd}");
        assert_eq!(a.0, 0, "{}", a.1);
    }
}

#[test]
fn matrices_round_trip() {
    let u = json!([["4", "3"], ["3", "7"]]);
    let r = ok("decompose-zp", json!({"p": 3, "K": 2, "matrix": u}));
    let t = ok("classify", json!({"p": 3, "K": 2, "matrix": r["t"]}));
    assert_eq!(t["is_teichmuller"], true);
    let n = ok("classify", json!({"p": 3, "K": 2, "matrix": r["n"]}));
    assert_eq!(n["class"], "CONTINUOUS");

    let j = ok("jordan", json!({"p": 3, "K": 2, "matrix": u}));
    let again = ok("jordan", json!({"p": 3, "K": 2, "matrix": j["semisimple"]}));
    assert_eq!(again["semisimple"], j["semisimple"]);
    assert_eq!(
        again["unipotent"]["entries"],
        json!([["1", "0"], ["0", "1"]])
    );
}

#[test]
fn header_mismatch_is_rejected() {
    let m = json!({"p": 5, "K": 2, "n": 2, "m": 1, "entries": [["1", "0"], ["0", "1"]]});
    let (code, text) = invoke(
        "jordan",
        &json!({"p": 3, "K": 2, "matrix": m}).to_string(),
        &[],
    );
    assert_eq!(code, 2, "{text}");
}

#[test]
fn exit_codes() {
    let (code, text) = invoke("classify", r#"{"p": 2, "K": 3, "matrix": [[1]]}"#, &[]);
    assert_eq!(code, 2);
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["error"]["kind"], "invalid_prime");

    let (code, _) = invoke(
        "classify",
        r#"{"p": 3, "K": 2, "matrix": [[3, 0], [0, 1]]}"#,
        &[],
    );
    assert_eq!(code, 2);
    let (code, _) = invoke("classify", "not json", &[]);
    assert_eq!(code, 2);

    let (code, text) = invoke(
        "spectral",
        r#"{"p": 3, "K": 2, "matrix": [[1, 1], [0, 1]]}"#,
        &[],
    );
    assert_eq!(code, 3, "{text}");
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["error"]["kind"], "not_teichmuller");
}

#[test]
fn input_file_and_compact_output() {
    let dir = std::env::temp_dir().join(format!("padic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.json");
    std::fs::write(&path, r#"{"c": 1, "d": 3}"#).unwrap();
    let (code, text) = invoke(
        "volume",
        "",
        &["--input", path.to_str().unwrap(), "--compact"],
    );
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), 1);
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["result"]["volume"], "1/3");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn seed_flag_and_field_agree() {
    let input = json!({"p": 7, "K": 2, "f": [1, 0, 0, 1]});
    let (_, a) = invoke("teich-factor", &input.to_string(), &["--seed", "11"]);
    let mut with_field = input.clone();
    with_field["seed"] = json!(11);
    let (_, b) = invoke("teich-factor", &with_field.to_string(), &[]);
    assert_eq!(a, b);
}

#[test]
fn light_audit_suites() {
    let r = ok(
        "audit",
        json!({"suites": ["glnp.decomposition", "padic.teichmuller", "linalg.seminorm", "gm.shift_sums"]}),
    );
    assert_eq!(r["passed"], true);
    let decomp = &r["suites"][0];
    assert_eq!(decomp["name"], "glnp.decomposition");
    assert_eq!(decomp["failures"], 0);
}

#[test]
fn every_command_answers() {
    let jobs = [
        (
            "galois-act",
            json!({"p": 3, "K": 2, "matrix": [[0, 1], [1, 0]], "k": 1}),
        ),
        (
            "power-zp",
            json!({"p": 3, "K": 3, "matrix": [[1, 3], [0, 1]], "t": "5"}),
        ),
        (
            "projection",
            json!({"p": 5, "K": 2, "j": "ONE_MINUS", "matrix": [[1, 0], [0, -1]], "f": [-1, 1]}),
        ),
        (
            "spectrum-table",
            json!({"p": 5, "K": 2, "matrix": [[1, 0], [0, -1]]}),
        ),
        (
            "orthogonal",
            json!({"p": 3, "K": 2, "f": [-1, 1], "g": [1, 1]}),
        ),
        (
            "idempotents",
            json!({"p": 3, "K": 2, "f": [-1, 1], "g": [1, 1]}),
        ),
        (
            "principal-exponent",
            json!({"p": 3, "K": 2, "matrix": [[1, 1], [0, 1]]}),
        ),
        (
            "shift-sum",
            json!({"p": 3, "K": 2, "f": {"terms": [[0, 1], [3, 2]]}, "c": 0, "d": 3}),
        ),
        (
            "project-mod",
            json!({"p": 3, "K": 2, "f": [1, 2, 3], "d": 2}),
        ),
        ("decompose-fp", json!({"p": 3, "matrix": [[0, 1], [1, 0]]})),
        (
            "probability",
            json!({"p": 3, "K": 2, "projectors": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], "psi": [1, 3]}),
        ),
        (
            "measure",
            json!({"p": 3, "K": 2, "projector": [[1, 0], [0, 0]], "psi": [1, 3]}),
        ),
        (
            "evolve",
            json!({"p": 3, "K": 3, "h": [[1, 0], [0, 2]], "u": [[1, 0], [0, 1]], "psi": [1, 1], "k": 0, "t": "3"}),
        ),
        ("shift-model", json!({"p": 3, "K": 2, "size": 4})),
        (
            "torus",
            json!({"p": 5, "K": 2, "u": [[1, 0], [0, -1]], "v": [[0, 1], [1, 0]]}),
        ),
        (
            "seminorm",
            json!({"p": 3, "K": 3, "matrix": [[0, 1], [0, 0]]}),
        ),
    ];
    for (cmd, input) in jobs {
        ok(cmd, input);
    }
    let r = ok(
        "evolve",
        json!({"p": 3, "K": 3, "h": [[1, 0], [0, 2]], "u": [[1, 0], [0, 1]], "psi": [1, 1], "k": 0, "t": "3"}),
    );
    assert_eq!(r["norm_preserved"], true);
    let r = ok(
        "seminorm",
        json!({"p": 3, "K": 3, "matrix": [[0, 1], [0, 0]]}),
    );
    assert_eq!(r["value"], "0");
    assert_eq!(r["nilpotent_power"], 2);
}
