use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::CMatrix;

/// Truncation settings shared by every series evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    /// A term counts as negligible when `||term|| <= tol (1 + ||partial sum||)`.
    pub tol: f64,
    pub max_terms: usize,
    /// Number of consecutive negligible terms that ends the summation.
    pub stall_window: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { tol: 1e-12, max_terms: 500, stall_window: 5 }
    }
}

impl SeriesControl {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }
}

/// A truncated series value with its bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalResult {
    pub value: CMatrix,
    pub terms_used: usize,
    /// Largest term norm inside the final stall window.
    pub est_error: f64,
}

/// Matrix parameters of a generalized series. `a` and `b` are the step and offset
/// of the weight argument `mA + B`; `e` and `f` are numerator and denominator parameters.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<CMatrix>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<CMatrix>,
    #[serde(rename = "E", default)]
    pub e: Vec<CMatrix>,
    #[serde(rename = "F", default)]
    pub f: Vec<CMatrix>,
}

impl ParamSet {
    pub fn new(a: Option<CMatrix>, b: Option<CMatrix>, e: Vec<CMatrix>, f: Vec<CMatrix>) -> Result<Self> {
        let p = ParamSet { a, b, e, f };
        p.dim()?;
        Ok(p)
    }

    /// Common dimension of every matrix present.
    pub fn dim(&self) -> Result<usize> {
        let mut dims = self.a.iter().chain(self.b.iter()).chain(&self.e).chain(&self.f).map(CMatrix::dim);
        let Some(r) = dims.next() else {
            return Err(Error::ShapeError("parameter set holds no matrices".into()));
        };
        if dims.any(|d| d != r) {
            return Err(Error::ShapeError("parameter matrices differ in dimension".into()));
        }
        Ok(r)
    }

    pub fn require_a(&self) -> Result<&CMatrix> {
        self.a.as_ref().ok_or_else(|| Error::ShapeError("parameter A is required".into()))
    }

    pub fn require_b(&self) -> Result<&CMatrix> {
        self.b.as_ref().ok_or_else(|| Error::ShapeError("parameter B is required".into()))
    }

    /// All matrices, for commutativity checks and digests.
    pub fn matrices(&self) -> impl Iterator<Item = &CMatrix> {
        self.a.iter().chain(self.b.iter()).chain(&self.e).chain(&self.f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_document_shape() {
        let doc = r#"{"A": {"r": 1, "entries": [[[0.5, 0.0]]]}, "E": [{"r": 1, "entries": [[[1.0, 0.0]]]}]}"#;
        let p: ParamSet = serde_json::from_str(doc).unwrap();
        assert_eq!(p.dim().unwrap(), 1);
        assert!(p.b.is_none() && p.f.is_empty());
        let bad = r#"{"A": {"r": 1, "entries": [[[0.5, 0.0]]]}, "B": {"r": 2, "entries": [[[1,0],[0,0]],[[0,0],[1,0]]]}}"#;
        let p: ParamSet = serde_json::from_str(bad).unwrap();
        assert!(matches!(p.dim(), Err(Error::ShapeError(_))));
    }
}
