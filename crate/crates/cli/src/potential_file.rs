//! On-disk potential format:
//!
//! ```json
//! { "terms": [ { "u": 4, "w": 0, "coeff": "1" },
//!              { "u": 2, "w": 2, "coeff": { "poly": ["0", "1"] } } ] }
//! ```
//!
//! A file with any λ-polynomial coefficient is parametric; its plain
//! rational coefficients become constant polynomials.

use bicolored_core::expansion::PotentialSpec;
use bicolored_core::numkernel::{Coeff, ParamPoly, Rational};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialFile {
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub u: u32,
    pub w: u32,
    pub coeff: CoeffEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffEntry {
    Rational(String),
    Poly { poly: Vec<String> },
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.parse().map_err(|_| CliError::Parse(format!("not a rational number: {s:?}")))
}

impl PotentialFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("potential file: {e}")))
    }

    #[cfg(test)]
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_spec(&self) -> Result<PotentialSpec, CliError> {
        let param = self.terms.iter().any(|t| matches!(t.coeff, CoeffEntry::Poly { .. }));
        let mut items = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = match &t.coeff {
                CoeffEntry::Rational(s) if param => Coeff::Param(ParamPoly::constant(parse_rational(s)?)),
                CoeffEntry::Rational(s) => Coeff::Rational(parse_rational(s)?),
                CoeffEntry::Poly { poly } => {
                    Coeff::Param(ParamPoly::new(poly.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?))
                }
            };
            items.push(((t.u, t.w), c));
        }
        let spec = PotentialSpec::new(items).map_err(|e| CliError::Validation(e.to_string()))?;
        if param && !spec.is_param() {
            // Every coefficient was zero; keep the parametric flag.
            return Ok(PotentialSpec::parametric(std::iter::empty()).expect("empty potential is valid"));
        }
        Ok(spec)
    }

    pub fn from_spec(spec: &PotentialSpec) -> Self {
        let terms = spec
            .terms()
            .iter()
            .map(|(&(u, w), c)| TermEntry {
                u,
                w,
                coeff: match c {
                    Coeff::Rational(r) => CoeffEntry::Rational(r.to_string()),
                    Coeff::Param(p) => CoeffEntry::Poly { poly: p.coeffs().iter().map(Rational::to_string).collect() },
                },
            })
            .collect();
        PotentialFile { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bicolored_core::expansion::models;

    #[test]
    fn ising_round_trip() {
        let file = PotentialFile::from_spec(&models::ising());
        let again = PotentialFile::from_json(&file.to_json()).unwrap();
        assert_eq!(again, file);
        assert_eq!(again.to_spec().unwrap(), models::ising());
    }

    #[test]
    fn rational_terms_join_a_parametric_file() {
        let text = r#"{"terms":[{"u":4,"w":0,"coeff":"1"},{"u":2,"w":2,"coeff":{"poly":["0","1"]}}]}"#;
        let spec = PotentialFile::from_json(text).unwrap().to_spec().unwrap();
        assert!(spec.is_param());
        assert_eq!(spec.terms().len(), 2);
    }

    #[test]
    fn errors_are_classified() {
        assert!(matches!(PotentialFile::from_json("{"), Err(CliError::Parse(_))));
        assert!(matches!(PotentialFile::from_json(r#"{"terms":[{"u":-1,"w":3,"coeff":"1"}]}"#), Err(CliError::Parse(_))));
        let bad_number = PotentialFile::from_json(r#"{"terms":[{"u":3,"w":0,"coeff":"x"}]}"#).unwrap();
        assert!(matches!(bad_number.to_spec(), Err(CliError::Parse(_))));
        let low = PotentialFile::from_json(r#"{"terms":[{"u":2,"w":0,"coeff":"1"}]}"#).unwrap();
        assert!(matches!(low.to_spec(), Err(CliError::Validation(_))));
        let dup = PotentialFile::from_json(r#"{"terms":[{"u":3,"w":0,"coeff":"1"},{"u":3,"w":0,"coeff":"2"}]}"#).unwrap();
        assert!(matches!(dup.to_spec(), Err(CliError::Validation(_))));
    }

    #[test]
    fn empty_file_is_valid() {
        let spec = PotentialFile::from_json(r#"{"terms":[]}"#).unwrap().to_spec().unwrap();
        assert!(spec.is_empty());
    }
}
