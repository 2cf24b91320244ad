//! Machine-readable reports. Serialization is deterministic: object keys
//! are sorted and no timing data enters the report (wall time goes to
//! stderr only).

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tgwa_core::arith::Lattice;
use tgwa_core::tgw::{Algebra, Element};
use tgwa_core::verdict::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitClass {
    Decided,
    Unknown,
    Usage,
    Internal,
}

impl ExitClass {
    pub fn code(&self) -> i32 {
        match self {
            ExitClass::Decided => 0,
            ExitClass::Unknown => 2,
            ExitClass::Usage => 1,
            ExitClass::Internal => 3,
        }
    }
}

pub struct CommandOutput {
    pub human: String,
    pub report: Value,
    pub exit: ExitClass,
}

pub fn digest(contents: &str) -> String {
    let mut h = Sha256::new();
    h.update(contents.as_bytes());
    format!("{:x}", h.finalize())
}

pub fn report(
    command: &str,
    input: Option<(&str, &str)>,
    caps: &[(&str, u64)],
    result: Value,
) -> Value {
    let caps_obj: serde_json::Map<String, Value> = caps
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let input_obj = input.map(|(path, dg)| json!({ "path": path, "sha256": dg }));
    json!({
        "command": command,
        "input": input_obj,
        "caps": caps_obj,
        "result": result,
    })
}

pub fn lattice_json(l: &Lattice) -> Value {
    json!({
        "ambient_rank": l.ambient_rank(),
        "rank": l.rank(),
        "basis": l.basis_i64(),
    })
}

pub fn lattice_human(l: &Lattice) -> String {
    if l.is_zero() {
        return "0 (zero lattice)".to_string();
    }
    let rows: Vec<String> = l
        .basis_i64()
        .iter()
        .map(|v| {
            let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({})", inner.join(", "))
        })
        .collect();
    format!("{{{}}}", rows.join(", "))
}

pub fn outcome_str(o: Outcome) -> &'static str {
    o.as_str()
}

pub fn element_json(alg: &Algebra, e: &Element) -> Value {
    json!(alg.format_element(e))
}
