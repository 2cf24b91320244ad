//! Datum files: the JSON schema, loading with full validation, and
//! serialization back to disk.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use tgwa_core::arith::{parse_rat, rat_int};
use tgwa_core::endo::{Endo, Family};
use tgwa_core::parse::parse_poly;
use tgwa_core::poly::Poly;
use tgwa_core::tgw::{TgwDatum, ValidationReport, DEFAULT_ZERO_CAP};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SigmaJson {
    #[serde(default)]
    pub map: BTreeMap<String, String>,
    #[serde(default)]
    pub inverse: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatumJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub provenance: String,
    pub rank: usize,
    pub variables: Vec<String>,
    pub sigma: Vec<SigmaJson>,
    pub t: Vec<String>,
    pub mu: Vec<Vec<String>>,
    pub family: String,
}

/// A loaded, validated datum plus its file metadata.
pub struct DatumFile {
    pub name: String,
    pub description: String,
    pub provenance: String,
    pub datum: TgwDatum,
    pub validation: ValidationReport,
}

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Schema(String),
    Syntax(String),
    Validation(Vec<String>),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(m) => write!(f, "io error: {}", m),
            LoadError::Schema(m) => write!(f, "schema error: {}", m),
            LoadError::Syntax(m) => write!(f, "syntax error: {}", m),
            LoadError::Validation(v) => write!(f, "validation error: {}", v.join("; ")),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn looks_like_generator(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('X') | Some('Y'))
        && s.len() > 1
        && s[1..].chars().all(|c| c.is_ascii_digit())
}

pub fn datum_from_json(json: &DatumJson) -> Result<TgwDatum, LoadError> {
    let n = json.rank;
    if json.sigma.len() != n {
        return Err(LoadError::Schema(format!(
            "expected {} sigma entries, found {}",
            n,
            json.sigma.len()
        )));
    }
    if json.t.len() != n {
        return Err(LoadError::Schema(format!(
            "expected {} entries in t, found {}",
            n,
            json.t.len()
        )));
    }
    if json.mu.len() != n || json.mu.iter().any(|row| row.len() != n) {
        return Err(LoadError::Schema(format!("mu must be a {0}x{0} matrix", n)));
    }
    let mut seen = std::collections::BTreeSet::new();
    for v in &json.variables {
        if !is_identifier(v) {
            return Err(LoadError::Schema(format!(
                "variable name `{}` is not an identifier",
                v
            )));
        }
        if looks_like_generator(v) {
            return Err(LoadError::Schema(format!(
                "variable name `{}` collides with the generator tokens X1.., Y1..",
                v
            )));
        }
        if !seen.insert(v.clone()) {
            return Err(LoadError::Schema(format!("duplicate variable `{}`", v)));
        }
    }
    let vars = json.variables.clone();
    let nv = vars.len();
    let parse = |text: &str, what: &str| -> Result<Poly, LoadError> {
        parse_poly(text, &vars).map_err(|e| LoadError::Syntax(format!("{}: {}", what, e)))
    };
    let mut sigma = Vec::with_capacity(n);
    for (i, s) in json.sigma.iter().enumerate() {
        for key in s.map.keys().chain(s.inverse.keys()) {
            if !vars.contains(key) {
                return Err(LoadError::Schema(format!(
                    "sigma[{}] names unknown variable `{}`",
                    i + 1,
                    key
                )));
            }
        }
        let mut images = Vec::with_capacity(nv);
        let mut inverse = Vec::with_capacity(nv);
        for (j, v) in vars.iter().enumerate() {
            images.push(match s.map.get(v) {
                Some(text) => parse(text, &format!("sigma[{}].map.{}", i + 1, v))?,
                None => Poly::var(nv, j),
            });
            inverse.push(match s.inverse.get(v) {
                Some(text) => parse(text, &format!("sigma[{}].inverse.{}", i + 1, v))?,
                None => Poly::var(nv, j),
            });
        }
        sigma.push(Endo::new(images, inverse));
    }
    let mut t = Vec::with_capacity(n);
    for (i, text) in json.t.iter().enumerate() {
        t.push(parse(text, &format!("t[{}]", i + 1))?);
    }
    let mut mu = Vec::with_capacity(n);
    for (i, row) in json.mu.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (j, text) in row.iter().enumerate() {
            let r = parse_rat(text).ok_or_else(|| {
                LoadError::Schema(format!("mu[{}][{}] is not a rational", i + 1, j + 1))
            })?;
            if r == rat_int(0) {
                return Err(LoadError::Validation(vec![format!(
                    "mu[{}][{}] not invertible",
                    i + 1,
                    j + 1
                )]));
            }
            out.push(r);
        }
        mu.push(out);
    }
    let family = Family::parse(&json.family).ok_or_else(|| {
        LoadError::Schema(format!(
            "unknown family `{}` (expected translation, triangular-q, or generic)",
            json.family
        ))
    })?;
    Ok(TgwDatum {
        vars,
        sigma,
        t,
        mu,
        family,
        zero_cap: DEFAULT_ZERO_CAP,
    })
}

pub fn load_datum_str(contents: &str) -> Result<DatumFile, LoadError> {
    let json: DatumJson =
        serde_json::from_str(contents).map_err(|e| LoadError::Schema(e.to_string()))?;
    let datum = datum_from_json(&json)?;
    let validation = datum.validate();
    if !validation.is_valid() {
        return Err(LoadError::Validation(validation.violations));
    }
    Ok(DatumFile {
        name: json.name,
        description: json.description,
        provenance: json.provenance,
        datum,
        validation,
    })
}

pub fn load_datum(path: &Path) -> Result<DatumFile, LoadError> {
    let contents =
        std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {}", path.display(), e)))?;
    load_datum_str(&contents)
}

/// Serializes a datum back to the file schema. Identity images are omitted
/// from the sigma maps; key order is the variable order filtered to the
/// non-identity entries.
pub fn datum_to_json(name: &str, description: &str, provenance: &str, d: &TgwDatum) -> DatumJson {
    let nv = d.nvars();
    let sigma = d
        .sigma
        .iter()
        .map(|s| {
            let mut map = BTreeMap::new();
            let mut inverse = BTreeMap::new();
            for (j, v) in d.vars.iter().enumerate() {
                let idp = Poly::var(nv, j);
                if *s.image_of(j) != idp {
                    map.insert(v.clone(), s.image_of(j).format(&d.vars));
                }
                if s.inverse_images()[j] != idp {
                    inverse.insert(v.clone(), s.inverse_images()[j].format(&d.vars));
                }
            }
            SigmaJson { map, inverse }
        })
        .collect();
    DatumJson {
        name: name.to_string(),
        description: description.to_string(),
        provenance: provenance.to_string(),
        rank: d.rank(),
        variables: d.vars.clone(),
        sigma,
        t: d.t.iter().map(|p| p.format(&d.vars)).collect(),
        mu: d
            .mu
            .iter()
            .map(|row| row.iter().map(|r| r.to_string()).collect())
            .collect(),
        family: d.family.as_str().to_string(),
    }
}
