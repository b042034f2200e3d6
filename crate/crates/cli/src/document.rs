//! Algebra documents: a Salamon string, or JSON with either a `salamon`
//! entry or explicit `dim` and `d` form literals, plus optional parameter
//! substitutions.

use std::fs;

use serde_json::Value;
use sha2::{Digest, Sha256};

use shearlab::notation::{parse_form, Bindings};
use shearlab::rational::parse_q;
use shearlab::{KForm, LieAlgebra, Q};

use crate::report::{CliError, Exit};

#[derive(Clone, Debug)]
pub struct Loaded {
    pub algebra: LieAlgebra,
    pub params: Bindings,
    /// Lowercase hex SHA-256 of the document text.
    pub digest: String,
}

/// `l=1`, `m=-1/2`.
pub fn parse_assignment(text: &str) -> Result<(String, Q), CliError> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| CliError::usage(format!("expected NAME=VALUE, got `{text}`")))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(CliError::usage(format!("bad parameter name `{name}`")));
    }
    Ok((name.to_string(), parse_q(value.trim())?))
}

/// Inline text when `source` starts with `(` or `{`, otherwise a path.
pub fn read_source(source: &str) -> Result<String, CliError> {
    let trimmed = source.trim_start();
    if trimmed.starts_with('(') || trimmed.starts_with('{') {
        return Ok(source.to_string());
    }
    fs::read_to_string(source).map_err(|e| CliError::usage(format!("cannot read {source}: {e}")))
}

pub fn load(source: &str, sets: &[(String, Q)]) -> Result<Loaded, CliError> {
    let text = read_source(source)?;
    let digest = format!("{:x}", Sha256::digest(text.as_bytes()));
    let (algebra, params) = parse_document(&text, sets)?;
    Ok(Loaded {
        algebra,
        params,
        digest,
    })
}

pub fn parse_document(text: &str, sets: &[(String, Q)]) -> Result<(LieAlgebra, Bindings), CliError> {
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    let body = body.trim();
    if !body.starts_with('{') {
        let params = with_sets(Bindings::new(), sets);
        let g = LieAlgebra::parse_salamon_with(body, &params)?;
        return Ok((g, params));
    }
    let doc: Value =
        serde_json::from_str(body).map_err(|e| CliError::usage(format!("invalid JSON document: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| CliError::usage("JSON document must be an object"))?;
    for key in obj.keys() {
        if !["salamon", "dim", "d", "substitutions"].contains(&key.as_str()) {
            return Err(CliError::usage(format!("unknown key `{key}` in document")));
        }
    }
    let mut params = Bindings::new();
    if let Some(subs) = obj.get("substitutions") {
        let subs = subs
            .as_object()
            .ok_or_else(|| CliError::usage("`substitutions` must be an object"))?;
        for (name, v) in subs {
            let value = match v {
                Value::String(s) => parse_q(s)?,
                Value::Number(n) if n.is_i64() => Q::from_integer(n.as_i64().unwrap().into()),
                _ => {
                    return Err(CliError::usage(format!(
                        "substitution `{name}` must be an integer or a \"p/q\" string"
                    )));
                }
            };
            params.insert(name.clone(), value);
        }
    }
    let params = with_sets(params, sets);
    match (obj.get("salamon"), obj.get("dim"), obj.get("d")) {
        (Some(Value::String(s)), None, None) => Ok((LieAlgebra::parse_salamon_with(s, &params)?, params)),
        (None, Some(dim), Some(d)) => {
            let dim = dim
                .as_u64()
                .ok_or_else(|| CliError::usage("`dim` must be a positive integer"))? as usize;
            let entries = d
                .as_object()
                .ok_or_else(|| CliError::usage("`d` must map indices to form literals"))?;
            let mut diffs = vec![KForm::zero(dim, 2); dim];
            for (k, lit) in entries {
                let idx: usize = k
                    .parse()
                    .ok()
                    .filter(|i| (1..=dim).contains(i))
                    .ok_or_else(|| CliError::usage(format!("bad index `{k}` in `d`")))?;
                let lit = lit
                    .as_str()
                    .ok_or_else(|| CliError::usage(format!("d[{k}] must be a form literal string")))?;
                diffs[idx - 1] = parse_form(lit, dim, Some(2), &params)?;
            }
            Ok((LieAlgebra::new(diffs)?, params))
        }
        _ => Err(CliError::usage(
            "document needs exactly one of `salamon` or `dim` with `d`",
        )),
    }
}

fn with_sets(mut params: Bindings, sets: &[(String, Q)]) -> Bindings {
    for (k, v) in sets {
        params.insert(k.clone(), v.clone());
    }
    params
}

impl From<shearlab::Error> for CliError {
    fn from(e: shearlab::Error) -> Self {
        use shearlab::Error as E;
        let exit = match &e {
            E::JacobiFailure(_) => Exit::Jacobi,
            E::NotNilpotent
            | E::NotSolvable
            | E::Abelian
            | E::AlphaNormalization(_)
            | E::ZeroTransferConstant
            | E::NotAnIdeal(_)
            | E::InvalidShear(_)
            | E::InvalidTwist(_) => Exit::InvalidData,
            E::SearchSpaceTooLarge { .. } => Exit::SearchCap,
            _ => Exit::Usage,
        };
        CliError {
            exit,
            message: e.to_string(),
        }
    }
}
