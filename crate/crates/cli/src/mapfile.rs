//! Vertex-assignment tables for `structure-defect`.
//!
//! One line per vertex of `N`: `v -> a b c`, sending `v` to the barycenter of
//! the base simplex `[a b c]`. Blank lines and `#` comments are skipped.

use std::collections::BTreeMap;

use surgery_core::{BarycentricSubdivision, Simplex};

use crate::CliError;

pub fn parse(text: &str, sd: &BarycentricSubdivision) -> Result<BTreeMap<u64, u64>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let bad = |message: String| CliError::MapFile { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = trimmed.split_once("->").ok_or_else(|| bad("expected `v -> a b ...`".into()))?;
        let v: u64 = lhs.trim().parse().map_err(|_| bad(format!("bad vertex `{}`", lhs.trim())))?;
        let vertices = rhs
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| bad(format!("bad vertex `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let s = Simplex::new(vertices).map_err(bad)?;
        let bary = sd.barycenter(&s).ok_or_else(|| bad(format!("{s} is not a simplex of the base")))?;
        if map.insert(v, bary).is_some() {
            return Err(bad(format!("vertex {v} assigned twice")));
        }
    }
    Ok(map)
}
