//! Identity file ingestion and persistence.
//!
//! Schema (one object or an array of them):
//!
//! ```json
//! {
//!   "name": "schoenhage",
//!   "relation": "degeneration",
//!   "lhs": [[1, 5, 20, 1], [10, 2, 5, 1], [10, 10, 1, 1]],
//!   "rhs": [[1, 1, 1, 132], [1, 1, 2, 5]],
//!   "assert_3tau_below": "2.516094"
//! }
//! ```
//!
//! Diagonal right-hand sides are written as `⟨1,1,1⟩` terms with
//! multiplicity. Entries with multiplicity 0 are dropped with a warning;
//! nonpositive dimensions are rejected with the offending entry named.

use std::path::Path;

use arank_core::spectrum::{Identity, MmSum, MmTerm};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Serialize, Deserialize)]
struct IdentityRepr {
    name: String,
    relation: String,
    lhs: Vec<[u64; 4]>,
    rhs: Vec<[u64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    assert_3tau_below: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FileRepr {
    One(IdentityRepr),
    Many(Vec<IdentityRepr>),
}

/// A loaded identity together with its optional asserted diagonal bound.
#[derive(Clone, Debug)]
pub struct LoadedIdentity {
    pub identity: Identity,
    pub assert_3tau_below: Option<String>,
}

#[derive(Debug)]
pub struct LoadOutcome {
    pub identities: Vec<LoadedIdentity>,
    pub warnings: Vec<String>,
}

fn convert_side(
    name: &str,
    side: &str,
    raw: &[[u64; 4]],
    warnings: &mut Vec<String>,
) -> Result<MmSum, CliError> {
    let mut terms = Vec::new();
    for (i, &[n, m, p, mult]) in raw.iter().enumerate() {
        if n == 0 || m == 0 || p == 0 {
            return Err(CliError::Input(format!(
                "identity {name:?}, {side} entry {i}: dimensions must be positive, got [{n}, {m}, {p}, {mult}]"
            )));
        }
        if mult == 0 {
            warnings.push(format!(
                "identity {name:?}, {side} entry {i}: multiplicity 0 dropped"
            ));
            continue;
        }
        terms.push(MmTerm { n, m, p, mult });
    }
    MmSum::new(terms).map_err(|e| CliError::Input(e.to_string()))
}

fn convert(repr: IdentityRepr, warnings: &mut Vec<String>) -> Result<LoadedIdentity, CliError> {
    if repr.relation != "degeneration" {
        return Err(CliError::Input(format!(
            "identity {:?}: unsupported relation {:?} (expected \"degeneration\")",
            repr.name, repr.relation
        )));
    }
    let lhs = convert_side(&repr.name, "lhs", &repr.lhs, warnings)?;
    let rhs = convert_side(&repr.name, "rhs", &repr.rhs, warnings)?;
    let identity =
        Identity::new(repr.name, lhs, rhs).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(LoadedIdentity {
        identity,
        assert_3tau_below: repr.assert_3tau_below,
    })
}

pub fn load_identities(path: &Path) -> Result<LoadOutcome, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let parsed: FileRepr = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let reprs = match parsed {
        FileRepr::One(r) => vec![r],
        FileRepr::Many(v) => v,
    };
    let mut warnings = Vec::new();
    let identities = reprs
        .into_iter()
        .map(|r| convert(r, &mut warnings))
        .collect::<Result<_, _>>()?;
    Ok(LoadOutcome {
        identities,
        warnings,
    })
}

fn to_repr(id: &LoadedIdentity) -> IdentityRepr {
    let side = |s: &MmSum| -> Vec<[u64; 4]> {
        s.terms()
            .iter()
            .map(|t| [t.n, t.m, t.p, t.mult])
            .collect()
    };
    IdentityRepr {
        name: id.identity.name.clone(),
        relation: "degeneration".into(),
        lhs: side(&id.identity.lhs),
        rhs: side(&id.identity.rhs),
        assert_3tau_below: id.assert_3tau_below.clone(),
    }
}

pub fn save_identities(path: &Path, ids: &[LoadedIdentity]) -> Result<(), CliError> {
    let reprs: Vec<IdentityRepr> = ids.iter().map(to_repr).collect();
    let json = if reprs.len() == 1 {
        serde_json::to_string_pretty(&reprs[0])
    } else {
        serde_json::to_string_pretty(&reprs)
    }
    .expect("serializable");
    std::fs::write(path, json + "\n")
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}
