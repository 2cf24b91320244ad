//! One function per CLI verb. Each returns the human text, the
//! deterministic JSON report, and the exit class.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use tgwa_core::analysis::{
    center_contained_in_r, centralizer_commutative, finitistic_profile, kernel_of_sigma,
    lie_type_is_a1n, zn_simplicity, KernelDescription,
};
use tgwa_core::arith::{parse_rat, Rat};
use tgwa_core::cartan::{
    build_tq, chain_var_name, coxeter_components, kernel_basis_components, quantum_int, Gcm,
};
use tgwa_core::error::Error;
use tgwa_core::simplicity::{
    jordan_rank1, orchestrate_simplicity, weyl_pair_certificate, SimpleOutcome, SimplicityCaps,
    SimplicityReport,
};
use tgwa_core::tgw::Algebra;
use tgwa_core::verdict::{Outcome, Verdict};

use crate::report::{
    digest, element_json, lattice_human, lattice_json, report, CommandOutput, ExitClass,
};
use crate::schema::{datum_from_json, datum_to_json, DatumFile, DatumJson, LoadError};

pub struct Common {
    pub json_path: Option<String>,
    pub zero_cap: Option<usize>,
}

pub fn fail(msg: String, exit: ExitClass) -> CommandOutput {
    CommandOutput {
        human: format!("error: {}", msg),
        report: json!({ "error": msg }),
        exit,
    }
}

fn engine_error(e: Error) -> CommandOutput {
    let exit = if e.is_internal() {
        ExitClass::Internal
    } else {
        ExitClass::Usage
    };
    fail(e.to_string(), exit)
}

fn load(path: &str, common: &Common) -> Result<(DatumFile, String), CommandOutput> {
    let contents = std::fs::read_to_string(path)
        .map_err(|e| fail(format!("{}: {}", path, e), ExitClass::Usage))?;
    let mut file = crate::schema::load_datum_str(&contents)
        .map_err(|e| fail(e.to_string(), ExitClass::Usage))?;
    if let Some(cap) = common.zero_cap {
        file.datum.zero_cap = cap;
    }
    Ok((file, digest(&contents)))
}

fn algebra(file: &DatumFile) -> Result<Algebra, CommandOutput> {
    Algebra::new(file.datum.clone()).map_err(|e| {
        let exit = match &e {
            Error::Internal(_) => ExitClass::Internal,
            _ => ExitClass::Usage,
        };
        fail(e.to_string(), exit)
    })
}

// ---------------------------------------------------------------------------
// validate / consistency
// ---------------------------------------------------------------------------

/// `validate` loads leniently so violations are reported, not rejected.
pub fn cmd_validate(path: &str, common: &Common) -> CommandOutput {
    let contents = match std::fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) => return fail(format!("{}: {}", path, e), ExitClass::Usage),
    };
    let dg = digest(&contents);
    let json_struct: DatumJson = match serde_json::from_str(&contents) {
        Ok(j) => j,
        Err(e) => return fail(format!("schema error: {}", e), ExitClass::Usage),
    };
    let mut datum = match datum_from_json(&json_struct) {
        Ok(d) => d,
        Err(LoadError::Validation(v)) => {
            // loader-level validation failures (zero mu entries)
            let human = format!("invalid: {}", v.join("; "));
            return CommandOutput {
                human,
                report: report(
                    "validate",
                    Some((path, &dg)),
                    &[],
                    json!({ "valid": false, "violations": v }),
                ),
                exit: ExitClass::Usage,
            };
        }
        Err(e) => return fail(e.to_string(), ExitClass::Usage),
    };
    if let Some(cap) = common.zero_cap {
        datum.zero_cap = cap;
    }
    let reportv = datum.validate();
    let mut human = String::new();
    if reportv.is_valid() {
        let _ = writeln!(human, "valid: rank {}, {} variable(s)", datum.rank(), datum.nvars());
        let _ = write!(
            human,
            "regularly graded: {} (every t_i is nonzero in an integral base ring)",
            reportv.regularly_graded
        );
    } else {
        let _ = writeln!(human, "invalid:");
        for v in &reportv.violations {
            let _ = writeln!(human, "  - {}", v);
        }
    }
    let exit = if reportv.is_valid() {
        ExitClass::Decided
    } else {
        ExitClass::Usage
    };
    CommandOutput {
        human,
        report: report(
            "validate",
            Some((path, &dg)),
            &[],
            json!({
                "valid": reportv.is_valid(),
                "regularly_graded": reportv.regularly_graded,
                "violations": reportv.violations,
            }),
        ),
        exit,
    }
}

pub fn cmd_consistency(path: &str, common: &Common) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let verdict = file.datum.check_consistency();
    let (human, result) = match &verdict {
        Verdict::Yes(()) => (
            "consistent: the base ring embeds into the construction".to_string(),
            json!({ "consistent": true }),
        ),
        Verdict::No(w) => {
            let idx = match w.indices.2 {
                Some(k) => format!("({}, {}, {})", w.indices.0, w.indices.1, k),
                None => format!("({}, {})", w.indices.0, w.indices.1),
            };
            (
                format!(
                    "inconsistent at indices {}: left side {}, right side {}",
                    idx,
                    file.datum.format_poly(&w.lhs),
                    file.datum.format_poly(&w.rhs)
                ),
                json!({
                    "consistent": false,
                    "indices": [w.indices.0, w.indices.1, w.indices.2],
                    "lhs": file.datum.format_poly(&w.lhs),
                    "rhs": file.datum.format_poly(&w.rhs),
                }),
            )
        }
        Verdict::Unknown(_) => unreachable!("consistency check is total"),
    };
    CommandOutput {
        human,
        report: report("consistency", Some((path, &dg)), &[], result),
        exit: ExitClass::Decided,
    }
}

// ---------------------------------------------------------------------------
// element arithmetic
// ---------------------------------------------------------------------------

fn parse_element_arg(alg: &Algebra, text: &str) -> Result<tgwa_core::tgw::Element, CommandOutput> {
    alg.parse_element(text).map_err(|e| engine_error(e))
}

pub fn cmd_reduce(path: &str, element: &str, common: &Common) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let alg = match algebra(&file) {
        Ok(a) => a,
        Err(e) => return e,
    };
    let e = match parse_element_arg(&alg, element) {
        Ok(e) => e,
        Err(out) => return out,
    };
    let printed = alg.format_element(&e);
    CommandOutput {
        human: printed.clone(),
        report: report(
            "reduce",
            Some((path, &dg)),
            &[("zero-cap", file.datum.zero_cap as u64)],
            json!({ "element": element, "reduced": printed }),
        ),
        exit: ExitClass::Decided,
    }
}

fn binary_element_command(
    name: &str,
    path: &str,
    lhs: &str,
    rhs: &str,
    common: &Common,
    op: impl Fn(&Algebra, &tgwa_core::tgw::Element, &tgwa_core::tgw::Element) -> Result<Value, Error>,
    human: impl Fn(&Value) -> String,
) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let alg = match algebra(&file) {
        Ok(a) => a,
        Err(e) => return e,
    };
    let l = match parse_element_arg(&alg, lhs) {
        Ok(e) => e,
        Err(out) => return out,
    };
    let r = match parse_element_arg(&alg, rhs) {
        Ok(e) => e,
        Err(out) => return out,
    };
    let result = match op(&alg, &l, &r) {
        Ok(v) => v,
        Err(e) => return engine_error(e),
    };
    CommandOutput {
        human: human(&result),
        report: report(
            name,
            Some((path, &dg)),
            &[("zero-cap", file.datum.zero_cap as u64)],
            json!({ "lhs": lhs, "rhs": rhs, "value": result }),
        ),
        exit: ExitClass::Decided,
    }
}

pub fn cmd_mul(path: &str, lhs: &str, rhs: &str, common: &Common) -> CommandOutput {
    binary_element_command(
        "mul",
        path,
        lhs,
        rhs,
        common,
        |alg, l, r| Ok(element_json(alg, &alg.multiply(l, r)?)),
        |v| v.as_str().unwrap_or_default().to_string(),
    )
}

pub fn cmd_commutator(path: &str, lhs: &str, rhs: &str, common: &Common) -> CommandOutput {
    binary_element_command(
        "commutator",
        path,
        lhs,
        rhs,
        common,
        |alg, l, r| Ok(element_json(alg, &alg.commutator(l, r)?)),
        |v| v.as_str().unwrap_or_default().to_string(),
    )
}

pub fn cmd_gamma(path: &str, lhs: &str, rhs: &str, common: &Common) -> CommandOutput {
    binary_element_command(
        "gamma",
        path,
        lhs,
        rhs,
        common,
        |alg, l, r| {
            let p = alg.gamma(l, r)?;
            Ok(json!(alg.datum().format_poly(&p)))
        },
        |v| format!("gamma = {}", v.as_str().unwrap_or_default()),
    )
}

pub fn cmd_verify_relation(path: &str, lhs: &str, rhs: &str, common: &Common) -> CommandOutput {
    binary_element_command(
        "verify-relation",
        path,
        lhs,
        rhs,
        common,
        |alg, l, r| Ok(json!(tgwa_core::cartan::verify_relation(alg, l, r)?)),
        |v| format!("relation holds in A: {}", v),
    )
}

pub fn cmd_zero_test(path: &str, element: &str, common: &Common) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let alg = match algebra(&file) {
        Ok(a) => a,
        Err(e) => return e,
    };
    let e = match parse_element_arg(&alg, element) {
        Ok(e) => e,
        Err(out) => return out,
    };
    let is_zero = match alg.is_zero(&e) {
        Ok(b) => b,
        Err(err) => return engine_error(err),
    };
    CommandOutput {
        human: format!("zero in A: {}", is_zero),
        report: report(
            "zero-test",
            Some((path, &dg)),
            &[("zero-cap", file.datum.zero_cap as u64)],
            json!({ "element": element, "zero_in_A": is_zero }),
        ),
        exit: ExitClass::Decided,
    }
}

// ---------------------------------------------------------------------------
// structural analysis
// ---------------------------------------------------------------------------

fn kernel_result(k: &KernelDescription) -> Value {
    json!({
        "lattice": lattice_json(&k.lattice),
        "certified": k.certified,
        "method": k.method.as_str(),
    })
}

pub fn cmd_kernel(path: &str, box_radius: u32, common: &Common) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let k = match kernel_of_sigma(&file.datum, box_radius) {
        Ok(k) => k,
        Err(e) => return engine_error(e),
    };
    let human = format!(
        "kernel basis {}; {} ({})",
        lattice_human(&k.lattice),
        if k.certified { "certified" } else { "not certified" },
        k.method.as_str()
    );
    CommandOutput {
        human,
        report: report(
            "kernel",
            Some((path, &dg)),
            &[("box", u64::from(box_radius))],
            kernel_result(&k),
        ),
        exit: ExitClass::Decided,
    }
}

pub fn cmd_finitistic(path: &str, bound: u32, common: &Common) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let p = finitistic_profile(&file.datum, bound);
    let m_json: Vec<Vec<Value>> = p
        .m
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match e {
                    Some(v) => json!(v),
                    None => Value::Null,
                })
                .collect()
        })
        .collect();
    let cartan = p.cartan_matrix();
    let mut human = String::new();
    let _ = writeln!(human, "m table (diagonal unused): {:?}", p.m);
    match &cartan {
        Some(c) => {
            let _ = write!(human, "generalized Cartan matrix: {:?}", c);
        }
        None => {
            let _ = write!(human, "profile incomplete up to bound {}", bound);
        }
    }
    let exit = if p.all_known() {
        ExitClass::Decided
    } else {
        ExitClass::Unknown
    };
    CommandOutput {
        human,
        report: report(
            "finitistic",
            Some((path, &dg)),
            &[("bound", u64::from(bound))],
            json!({ "m": m_json, "cartan": cartan }),
        ),
        exit,
    }
}

pub fn cmd_lie_type(path: &str, bound: u32, common: &Common) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let p = finitistic_profile(&file.datum, bound);
    match lie_type_is_a1n(&p) {
        Ok(b) => CommandOutput {
            human: format!("pairwise-commuting type (all off-diagonal Cartan entries zero): {}", b),
            report: report(
                "lie-type",
                Some((path, &dg)),
                &[("bound", u64::from(bound))],
                json!({ "a1n": b, "cartan": p.cartan_matrix() }),
            ),
            exit: ExitClass::Decided,
        },
        Err(_) => CommandOutput {
            human: format!("unknown: profile incomplete up to bound {}", bound),
            report: report(
                "lie-type",
                Some((path, &dg)),
                &[("bound", u64::from(bound))],
                json!({ "a1n": Value::Null }),
            ),
            exit: ExitClass::Unknown,
        },
    }
}

pub fn cmd_zn_simple(path: &str, common: &Common) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let v = zn_simplicity(&file.datum);
    let (human, result, exit) = match &v {
        Verdict::Yes(c) => (
            format!("yes: base ring has no proper invariant ideals ({})", c),
            json!({ "outcome": "yes", "certificate": c.to_string() }),
            ExitClass::Decided,
        ),
        Verdict::No(w) => (
            format!(
                "no: proper invariant ideal generated by {} (eigenvalues {:?})",
                file.datum.format_poly(&w.form),
                w.eigenvalues.iter().map(|r| r.to_string()).collect::<Vec<_>>()
            ),
            json!({
                "outcome": "no",
                "witness_form": file.datum.format_poly(&w.form),
                "eigenvalues": w.eigenvalues.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            }),
            ExitClass::Decided,
        ),
        Verdict::Unknown(b) => (
            format!("unknown: {}", b.join("; ")),
            json!({ "outcome": "unknown", "blockers": b }),
            ExitClass::Unknown,
        ),
    };
    CommandOutput {
        human,
        report: report("zn-simple", Some((path, &dg)), &[], result),
        exit,
    }
}

pub fn cmd_center(
    path: &str,
    deg_cap: u32,
    coeff_cap: u32,
    box_radius: u32,
    common: &Common,
) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let alg = match algebra(&file) {
        Ok(a) => a,
        Err(e) => return e,
    };
    let kernel = match kernel_of_sigma(alg.datum(), box_radius) {
        Ok(k) => k,
        Err(e) => return engine_error(e),
    };
    let v = match center_contained_in_r(&alg, &kernel, deg_cap, coeff_cap) {
        Ok(v) => v,
        Err(e) => return engine_error(e),
    };
    let (human, result, exit) = match &v {
        Verdict::Yes(c) => (
            format!("yes: center contained in the base ring ({})", c),
            json!({ "outcome": "yes", "certificate": c.to_string() }),
            ExitClass::Decided,
        ),
        Verdict::No(w) => (
            format!(
                "no: central element of degree {:?} outside the base ring: {} (rule: {})",
                w.degree,
                alg.format_element(&w.element),
                w.rule
            ),
            json!({
                "outcome": "no",
                "degree": w.degree,
                "witness": alg.format_element(&w.element),
                "rule": w.rule,
            }),
            ExitClass::Decided,
        ),
        Verdict::Unknown(b) => (
            format!("unknown: {}", b.join("; ")),
            json!({ "outcome": "unknown", "blockers": b }),
            ExitClass::Unknown,
        ),
    };
    CommandOutput {
        human,
        report: report(
            "center",
            Some((path, &dg)),
            &[
                ("deg-cap", u64::from(deg_cap)),
                ("coeff-cap", u64::from(coeff_cap)),
                ("box", u64::from(box_radius)),
                ("zero-cap", file.datum.zero_cap as u64),
            ],
            json!({ "kernel": kernel_result(&kernel), "center": result }),
        ),
        exit,
    }
}

pub fn cmd_centralizer(
    path: &str,
    m_cap: u32,
    box_radius: u32,
    common: &Common,
) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let alg = match algebra(&file) {
        Ok(a) => a,
        Err(e) => return e,
    };
    let kernel = match kernel_of_sigma(alg.datum(), box_radius) {
        Ok(k) => k,
        Err(e) => return engine_error(e),
    };
    let v = match centralizer_commutative(&alg, &kernel, m_cap) {
        Ok(v) => v,
        Err(e) => return engine_error(e),
    };
    let (human, result, exit) = match &v {
        Verdict::Yes(c) => (
            format!("yes: centralizer of the base ring is commutative ({})", c),
            json!({ "outcome": "yes", "certificate": c.to_string() }),
            ExitClass::Decided,
        ),
        Verdict::No(w) => (
            format!(
                "no: bracket [{}, {}] is nonzero (multiples {:?})",
                w.left, w.right, w.multiples
            ),
            json!({
                "outcome": "no",
                "left": w.left.to_string(),
                "right": w.right.to_string(),
                "multiples": [w.multiples.0, w.multiples.1],
            }),
            ExitClass::Decided,
        ),
        Verdict::Unknown(b) => (
            format!("unknown: {}", b.join("; ")),
            json!({ "outcome": "unknown", "blockers": b }),
            ExitClass::Unknown,
        ),
    };
    CommandOutput {
        human,
        report: report(
            "centralizer",
            Some((path, &dg)),
            &[
                ("m-cap", u64::from(m_cap)),
                ("box", u64::from(box_radius)),
                ("zero-cap", file.datum.zero_cap as u64),
            ],
            json!({ "kernel": kernel_result(&kernel), "centralizer": result }),
        ),
        exit,
    }
}

// ---------------------------------------------------------------------------
// simplicity
// ---------------------------------------------------------------------------

fn simplicity_json(alg: &Algebra, r: &SimplicityReport) -> Value {
    let ore: Vec<Value> = r
        .ore_results
        .iter()
        .map(|o| {
            json!({
                "index": o.index + 1,
                "all_d_certificate": o.all_d_certificate,
                "witness_d": o.witness_d,
                "witness_factor": o.witness_factor.as_ref().map(|p| alg.datum().format_poly(p)),
                "checked_up_to": o.per_d.len(),
            })
        })
        .collect();
    json!({
        "verdict": r.verdict.as_str(),
        "theorem": r.theorem_used,
        "conditions": {
            "preconditions": { "outcome": r.preconditions.outcome.as_str(), "detail": r.preconditions.detail },
            "ore_condition": { "outcome": r.ore_condition.outcome.as_str(), "detail": r.ore_condition.detail },
            "zn_simple": { "outcome": r.zn_simple.outcome.as_str(), "detail": r.zn_simple.detail },
            "center_in_r": { "outcome": r.center_in_r.outcome.as_str(), "detail": r.center_in_r.detail },
        },
        "ore_results": ore,
        "blockers": r.blockers,
    })
}

fn simplicity_human(r: &SimplicityReport) -> String {
    let mut s = String::new();
    let verdict = match r.verdict {
        SimpleOutcome::Simple => "Simple",
        SimpleOutcome::NotSimple => "NotSimple",
        SimpleOutcome::Unknown => "Unknown",
    };
    let _ = writeln!(s, "{} ({})", verdict, r.theorem_used);
    for (name, c) in [
        ("preconditions", &r.preconditions),
        ("monoid condition", &r.ore_condition),
        ("invariant-simple base", &r.zn_simple),
        ("center in base ring", &r.center_in_r),
    ] {
        let _ = writeln!(s, "  {}: {} — {}", name, c.outcome.as_str(), c.detail);
    }
    for o in &r.ore_results {
        if let Some(d) = o.witness_d {
            let _ = writeln!(
                s,
                "  witness d = {} for generator {}{}",
                d,
                o.index + 1,
                match &o.witness_factor {
                    Some(_) => " (common factor recorded)",
                    None => "",
                }
            );
        }
    }
    if !r.blockers.is_empty() {
        let _ = writeln!(s, "  blockers: {}", r.blockers.join(" | "));
    }
    s.trim_end().to_string()
}

pub fn cmd_simplicity(path: &str, caps: SimplicityCaps, common: &Common) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let alg = match algebra(&file) {
        Ok(a) => a,
        Err(e) => return e,
    };
    let r = match orchestrate_simplicity(&alg, &caps) {
        Ok(r) => r,
        Err(e) => return engine_error(e),
    };
    // the rank-one criterion must agree whenever it applies
    if let Ok(jr) = jordan_rank1(alg.datum(), &caps) {
        let conflict = matches!(
            (jr.verdict, r.verdict),
            (SimpleOutcome::Simple, SimpleOutcome::NotSimple)
                | (SimpleOutcome::NotSimple, SimpleOutcome::Simple)
        );
        if conflict {
            return fail(
                "rank-one criterion conflicts with the general criterion".to_string(),
                ExitClass::Internal,
            );
        }
    }
    let exit = match r.verdict {
        SimpleOutcome::Unknown => ExitClass::Unknown,
        _ => ExitClass::Decided,
    };
    CommandOutput {
        human: simplicity_human(&r),
        report: report(
            "simplicity",
            Some((path, &dg)),
            &[
                ("d-bound", u64::from(caps.d_bound)),
                ("deg-cap", u64::from(caps.deg_cap)),
                ("coeff-cap", u64::from(caps.coeff_cap)),
                ("box", u64::from(caps.box_radius)),
                ("finitistic-bound", u64::from(caps.finitistic_bound)),
                ("weyl-pair-degree", u64::from(caps.weyl_pair_degree)),
                ("zero-cap", file.datum.zero_cap as u64),
            ],
            simplicity_json(&alg, &r),
        ),
        exit,
    }
}

pub fn cmd_weyl_pair(path: &str, max_degree: u32, common: &Common) -> CommandOutput {
    let (file, dg) = match load(path, common) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let alg = match algebra(&file) {
        Ok(a) => a,
        Err(e) => return e,
    };
    match weyl_pair_certificate(&alg, max_degree) {
        Ok(Verdict::Yes(c)) => CommandOutput {
            human: format!(
                "yes: bracket steps {:?}, nested brackets verified for every monic X-word of total degree <= {}",
                c.steps.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                c.verified_degree
            ),
            report: report(
                "weyl-pair",
                Some((path, &dg)),
                &[("max-degree", u64::from(max_degree))],
                json!({
                    "outcome": "yes",
                    "steps": c.steps.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "verified_degree": c.verified_degree,
                }),
            ),
            exit: ExitClass::Decided,
        },
        Ok(Verdict::No(o)) => CommandOutput {
            human: format!("no: {}", o.reason),
            report: report(
                "weyl-pair",
                Some((path, &dg)),
                &[("max-degree", u64::from(max_degree))],
                json!({ "outcome": "no", "reason": o.reason }),
            ),
            exit: ExitClass::Decided,
        },
        Ok(Verdict::Unknown(b)) => CommandOutput {
            human: format!("unknown: {}", b.join("; ")),
            report: report(
                "weyl-pair",
                Some((path, &dg)),
                &[("max-degree", u64::from(max_degree))],
                json!({ "outcome": "unknown", "blockers": b }),
            ),
            exit: ExitClass::Unknown,
        },
        Err(e) => engine_error(e),
    }
}

// ---------------------------------------------------------------------------
// Cartan-matrix commands
// ---------------------------------------------------------------------------

fn load_gcm(path: &str) -> Result<(Gcm, String), CommandOutput> {
    let contents = std::fs::read_to_string(path)
        .map_err(|e| fail(format!("{}: {}", path, e), ExitClass::Usage))?;
    let rows: Vec<Vec<i64>> = serde_json::from_str(&contents)
        .map_err(|e| fail(format!("schema error: {}", e), ExitClass::Usage))?;
    let gcm = Gcm::new(rows).map_err(|e| fail(e.to_string(), ExitClass::Usage))?;
    Ok((gcm, digest(&contents)))
}

pub fn cmd_cartan_build(path: &str, q_text: &str, out: Option<&str>) -> CommandOutput {
    let (gcm, dg) = match load_gcm(path) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let q: Rat = match parse_rat(q_text) {
        Some(q) => q,
        None => return fail(format!("`{}` is not a rational", q_text), ExitClass::Usage),
    };
    let datum = match build_tq(&gcm, &q) {
        Ok(d) => d,
        Err(e) => return engine_error(e),
    };
    debug_assert!(datum.validate().is_valid());
    debug_assert!(datum.check_consistency().is_yes());
    let name = format!("tq_q{}", q_text.replace('/', "_"));
    let json_datum = datum_to_json(
        &name,
        "Cartan-matrix datum generated by cartan-build",
        &format!("cartan-build {} --q {}", path, q_text),
        &datum,
    );
    let serialized = serde_json::to_string_pretty(&json_datum).expect("serializable datum");
    let mut human = String::new();
    let _ = writeln!(
        human,
        "built rank-{} datum with {} chain variable(s); quantum integers stay nonzero for q = {} ([2]_q = {})",
        datum.rank(),
        datum.nvars(),
        q_text,
        quantum_int(2, &q).map(|r| r.to_string()).unwrap_or_default()
    );
    let _ = writeln!(human, "variable legend (identifier = chain generator):");
    for i in 0..gcm.n() {
        for j in i + 1..gcm.n() {
            let a = gcm.at(i, j);
            let mut k = a;
            while k <= -a {
                let _ = writeln!(
                    human,
                    "  {} = H_{{{},{}}}^({})",
                    chain_var_name(i, j, k),
                    i + 1,
                    j + 1,
                    k
                );
                k += 2;
            }
        }
    }
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, serialized.as_bytes()) {
                return fail(format!("{}: {}", p, e), ExitClass::Usage);
            }
            let _ = write!(human, "datum written to {}", p);
        }
        None => {
            let _ = write!(human, "{}", serialized);
        }
    }
    CommandOutput {
        human,
        report: report(
            "cartan-build",
            Some((path, &dg)),
            &[],
            json!({ "datum": json_datum, "out": out }),
        ),
        exit: ExitClass::Decided,
    }
}

pub fn cmd_cartan_kernel(path: &str) -> CommandOutput {
    let (gcm, dg) = match load_gcm(path) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let comps = coxeter_components(&gcm);
    let basis = kernel_basis_components(&gcm);
    let comps_1based: Vec<Vec<usize>> = comps
        .iter()
        .map(|c| c.iter().map(|v| v + 1).collect())
        .collect();
    CommandOutput {
        human: format!(
            "graph components (1-based): {:?}; kernel basis {}",
            comps_1based,
            lattice_human(&basis)
        ),
        report: report(
            "cartan-kernel",
            Some((path, &dg)),
            &[],
            json!({ "components": comps_1based, "kernel": lattice_json(&basis) }),
        ),
        exit: ExitClass::Decided,
    }
}

pub fn cmd_examples(dir: Option<&str>) -> CommandOutput {
    match dir {
        Some(d) => match crate::fixtures::write_all(Path::new(d)) {
            Ok(names) => CommandOutput {
                human: format!("wrote {} example files to {}: {}", names.len(), d, names.join(", ")),
                report: report("examples", None, &[], json!({ "dir": d, "files": names })),
                exit: ExitClass::Decided,
            },
            Err(e) => fail(format!("{}: {}", d, e), ExitClass::Usage),
        },
        None => {
            let mut human = String::from("bundled examples (use --dir to write them out):\n");
            for (name, contents) in crate::fixtures::FIXTURES {
                let parsed: DatumJson = serde_json::from_str(contents).expect("bundled fixture");
                let _ = writeln!(human, "  {:<22} {}", name, parsed.description);
            }
            let names: Vec<&str> = crate::fixtures::FIXTURES.iter().map(|(n, _)| *n).collect();
            CommandOutput {
                human: human.trim_end().to_string(),
                report: report("examples", None, &[], json!({ "files": names })),
                exit: ExitClass::Decided,
            }
        }
    }
}

/// The finitistic profile exit used by `lie-type`; decided verdicts come
/// from a completely known profile.
pub fn simple_outcome_exit(o: Outcome) -> ExitClass {
    match o {
        Outcome::Unknown => ExitClass::Unknown,
        _ => ExitClass::Decided,
    }
}
