//! Structured-text documents for symbolic objects.
//!
//! A ring element is written as
//!
//! ```json
//! {"format_version":1,"dim":2,"layers":[{"rho_power":1,"terms":[{"coeff":"1/1","exponents":[0,1]}]}]}
//! ```
//!
//! Polynomials use the same schema with a single `rho_power: 0` layer. Coefficients
//! are always `num/den` strings. Layers are ascending in ρ, terms descending in
//! graded-lex order, so a written document re-reads and re-writes byte-identically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::rational::{parse_fraction, to_fraction_string};
use crate::ring::{normalize, RhoExpr};
use crate::solution::SolutionBundle;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: String,
    pub exponents: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerDoc {
    pub rho_power: u32,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExprDoc {
    pub format_version: u32,
    pub dim: usize,
    pub layers: Vec<LayerDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    pub format_version: u32,
    pub dim: usize,
    pub seed: ExprDoc,
    /// P_{n/2}, …, P₀
    pub coefficients: Vec<ExprDoc>,
    pub phi: ExprDoc,
}

fn layer_doc(s: u32, p: &Polynomial) -> LayerDoc {
    LayerDoc {
        rho_power: s,
        terms: p
            .terms()
            .rev()
            .map(|(m, c)| TermDoc { coeff: to_fraction_string(c), exponents: m.exponents().to_vec() })
            .collect(),
    }
}

impl ExprDoc {
    pub fn from_expr(e: &RhoExpr) -> Self {
        ExprDoc {
            format_version: FORMAT_VERSION,
            dim: e.dim(),
            layers: e.layers().map(|(s, p)| layer_doc(s, p)).collect(),
        }
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        let layers = if p.is_zero() { Vec::new() } else { vec![layer_doc(0, p)] };
        ExprDoc { format_version: FORMAT_VERSION, dim: p.dim(), layers }
    }

    pub fn to_expr(&self) -> Result<RhoExpr> {
        check_version(self.format_version)?;
        let mut raw = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            let mut p = Polynomial::zero(self.dim);
            for term in &layer.terms {
                if term.exponents.len() != self.dim {
                    return Err(Error::Parse(format!(
                        "term has {} exponents, expected {}",
                        term.exponents.len(),
                        self.dim
                    )));
                }
                p.add_term(Monomial::new(term.exponents.as_slice()), parse_fraction(&term.coeff)?);
            }
            raw.push((layer.rho_power, p));
        }
        normalize(self.dim, raw)
    }

    pub fn to_polynomial(&self) -> Result<Polynomial> {
        self.to_expr()?
            .as_polynomial()
            .ok_or_else(|| Error::Parse("expected a polynomial (ρ-power 0 only)".into()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl BundleDoc {
    pub fn from_bundle(b: &SolutionBundle) -> Self {
        BundleDoc {
            format_version: FORMAT_VERSION,
            dim: b.dim(),
            seed: ExprDoc::from_polynomial(b.seed()),
            coefficients: b.coefficients().iter().map(ExprDoc::from_polynomial).collect(),
            phi: ExprDoc::from_expr(b.phi()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let doc: BundleDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        check_version(doc.format_version)?;
        Ok(doc)
    }
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format_version {v}")));
    }
    Ok(())
}

/// Reads either a bare expression document or the `phi` field of a bundle.
pub fn parse_phi(s: &str) -> Result<RhoExpr> {
    let value: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("phi").is_some() {
        BundleDoc::parse(s)?.phi.to_expr()
    } else {
        ExprDoc::parse(s)?.to_expr()
    }
}
