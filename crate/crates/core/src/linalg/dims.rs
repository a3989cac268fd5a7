use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-site local dimensions of a register.
///
/// Site 0 is the leftmost ket symbol and the most significant mixed-radix
/// digit, so `|d0 d1 ... d(n-1)⟩` has index `((d0 * D1 + d1) * D2 + d2) ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SiteDims(Vec<usize>);

impl SiteDims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if let Some(bad) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::input(format!("site dimension {bad} is below 2")));
        }
        let mut total: usize = 1;
        for &d in &dims {
            total = total
                .checked_mul(d)
                .ok_or_else(|| Error::input("register dimension overflows usize"))?;
        }
        Ok(SiteDims(dims))
    }

    /// `n` sites of identical dimension `d`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn qubits(n: usize) -> Self {
        SiteDims(vec![2; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self, site: usize) -> usize {
        self.0[site]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Total Hilbert-space dimension; 1 for the empty register.
    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    /// Place value of each site's digit.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for i in (0..self.0.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.0[i + 1];
        }
        strides
    }

    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.0.len() {
            return Err(Error::input(format!(
                "expected {} digits, got {}",
                self.0.len(),
                digits.len()
            )));
        }
        let mut index = 0;
        for (site, (&digit, &d)) in digits.iter().zip(&self.0).enumerate() {
            if digit >= d {
                return Err(Error::input(format!(
                    "digit {digit} out of range for site {site} of dimension {d}"
                )));
            }
            index = index * d + digit;
        }
        Ok(index)
    }

    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.0.len()];
        for (slot, &d) in digits.iter_mut().zip(&self.0).rev() {
            *slot = index % d;
            index /= d;
        }
        digits
    }

    /// Dimensions of a sub-register, in the order the sites are listed.
    pub fn select(&self, sites: &[usize]) -> Result<SiteDims> {
        check_sites(self, sites)?;
        Ok(SiteDims(sites.iter().map(|&s| self.0[s]).collect()))
    }

    /// Ket label such as `01101`; digits are comma separated when any site
    /// has more than ten levels.
    pub fn ket_label(&self, index: usize) -> String {
        let digits = self.digits_of(index);
        if self.0.iter().all(|&d| d <= 10) {
            digits.iter().map(|d| char::from_digit(*d as u32, 10).unwrap()).collect()
        } else {
            digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    pub fn parse_ket(&self, label: &str) -> Result<usize> {
        let digits: Vec<usize> = if label.contains(',') {
            label
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::input(format!("bad ket '{label}'"))))
                .collect::<Result<_>>()?
        } else {
            label
                .chars()
                .map(|c| c.to_digit(10).map(|v| v as usize).ok_or_else(|| Error::input(format!("bad ket '{label}'"))))
                .collect::<Result<_>>()?
        };
        self.index_of(&digits)
    }
}

impl TryFrom<Vec<usize>> for SiteDims {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        SiteDims::new(v)
    }
}

impl From<SiteDims> for Vec<usize> {
    fn from(d: SiteDims) -> Self {
        d.0
    }
}

/// Sites must be in range and pairwise distinct.
pub(crate) fn check_sites(dims: &SiteDims, sites: &[usize]) -> Result<()> {
    for (k, &s) in sites.iter().enumerate() {
        if s >= dims.len() {
            return Err(Error::input(format!("site {s} out of range for {} sites", dims.len())));
        }
        if sites[..k].contains(&s) {
            return Err(Error::input(format!("site {s} listed more than once")));
        }
    }
    Ok(())
}
