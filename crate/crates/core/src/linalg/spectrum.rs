use serde::{Deserialize, Serialize};

/// Eigenvalues of a reduced density matrix, sorted descending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts the values descending. NaNs sort last.
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Copy with values below `floor` set to zero and trailing zeros appended up to `len`.
    pub fn cleaned(&self, floor: f64, len: usize) -> Spectrum {
        let mut values: Vec<f64> = self
            .values
            .iter()
            .map(|&v| if v.abs() < floor { 0.0 } else { v })
            .collect();
        if values.len() < len {
            values.resize(len, 0.0);
        }
        Spectrum::new(values)
    }
}

/// `−Σ λ log_base λ`, with `0 log 0 = 0`.
pub fn von_neumann_entropy(s: &Spectrum, base: f64) -> f64 {
    let ln_base = base.ln();
    let h: f64 = s
        .values
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| -v * v.ln())
        .sum();
    (h / ln_base).max(0.0)
}

/// `Σ λ²`.
pub fn purity(s: &Spectrum) -> f64 {
    s.values.iter().map(|v| v * v).sum()
}
