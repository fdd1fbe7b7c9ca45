//! Reading polynomials back from files.
//!
//! Accepted inputs are the JSON written by `cmforge minpoly` (its
//! `coefficients` array) or a plain list of integers, highest degree first,
//! separated by whitespace or commas.

use std::path::Path;

use anyhow::{bail, Context, Result};
use cmforge_core::PolyZ;
use num_bigint::BigInt;

pub fn parse_polynomial(text: &str) -> Result<PolyZ> {
    let trimmed = text.trim_start();
    let coeffs: Vec<BigInt> = if trimmed.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let arr = v
            .get("coefficients")
            .and_then(|c| c.as_array())
            .context("JSON has no \"coefficients\" array")?;
        arr.iter()
            .map(|c| match c {
                serde_json::Value::String(s) => Ok(s.parse()?),
                serde_json::Value::Number(n) => Ok(n.to_string().parse()?),
                _ => bail!("coefficient {c} is not an integer"),
            })
            .collect::<Result<_>>()?
    } else {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<BigInt>().with_context(|| format!("bad coefficient {s:?}")))
            .collect::<Result<_>>()?
    };
    Ok(PolyZ::from_descending(&coeffs)?)
}

pub fn read_polynomial(path: &Path) -> Result<PolyZ> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_polynomial(&text).with_context(|| format!("parsing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_formats() {
        let a = parse_polynomial("1 16 -12, 16 38 -16 -12 -16 1\n").unwrap();
        let b = parse_polynomial(r#"{"schema": 1, "coefficients": ["1", "16", "-12", "16", "38", "-16", "-12", "-16", "1"]}"#)
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 8);
        assert!(parse_polynomial("2 1").is_err());
        assert!(parse_polynomial("1 x").is_err());
        assert!(parse_polynomial(r#"{"degree": 2}"#).is_err());
    }
}
