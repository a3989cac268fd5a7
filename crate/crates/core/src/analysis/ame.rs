use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::parties::Parties;
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, StateVector};

/// Entries of every balanced reduction must lie this close to `I/D`.
pub const AME_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AmeVerdict {
    #[serde(rename = "ame")]
    pub is_ame: bool,
    #[serde(rename = "max_dev")]
    pub max_deviation: f64,
}

fn resolve_parties(state: &StateVector, parties: Option<&Parties>) -> Result<Parties> {
    let p = match parties {
        Some(p) => p.clone(),
        None => Parties::singletons(state.dims())?,
    };
    if p.groups().iter().flatten().count() != state.dims().len() {
        return Err(Error::input("party grouping does not match the register"));
    }
    Ok(p)
}

/// Checks that every reduction to `⌊n/2⌋` parties is maximally mixed.
pub fn verify_ame(state: &StateVector, parties: Option<&Parties>) -> Result<AmeVerdict> {
    let parties = resolve_parties(state, parties)?;
    let n = parties.len();
    if n < 2 {
        return Err(Error::input(format!("AME check needs at least 2 parties, got {n}")));
    }
    let subsets: Vec<Vec<usize>> = (0..n).combinations(n / 2).collect();
    let devs = subsets
        .par_iter()
        .map(|sub| Ok(partial_trace(state, &parties.sites_of(sub))?.max_dev_from_maximally_mixed()))
        .collect::<Result<Vec<f64>>>()?;
    let max_deviation = devs.into_iter().fold(0.0, f64::max);
    Ok(AmeVerdict { is_ame: max_deviation <= AME_TOL, max_deviation })
}

/// Exactly `d^⌊n/2⌋` nonzero amplitudes, each of modulus `d^{−⌊n/2⌋/2}`.
pub fn minimal_support(state: &StateVector, parties: Option<&Parties>) -> Result<bool> {
    let parties = resolve_parties(state, parties)?;
    let half = (parties.len() / 2) as i32;
    let d = parties.party_dim() as f64;
    let terms = d.powi(half);
    let modulus = d.powf(-f64::from(half) / 2.0);
    let support: Vec<f64> = state.amplitudes().iter().map(|a| a.norm()).filter(|&m| m > 1e-12).collect();
    Ok(support.len() as f64 == terms && support.iter().all(|m| (m - modulus).abs() <= 1e-9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::reference_state;

    #[test]
    fn ghz3_is_ame() {
        for d in 2..=4 {
            let v = verify_ame(&reference_state(&format!("omega3_{d}")).unwrap(), None).unwrap();
            assert!(v.is_ame && v.max_deviation < 1e-12);
        }
    }

    #[test]
    fn ghz4_is_not() {
        let v = verify_ame(&reference_state("ghz_4").unwrap(), None).unwrap();
        assert!(!v.is_ame);
        assert!((v.max_deviation - 0.25).abs() < 1e-12);
    }

    #[test]
    fn too_few_parties() {
        let s = StateVector::zero(crate::linalg::SiteDims::qubits(1));
        assert!(matches!(verify_ame(&s, None), Err(Error::Input(_))));
    }

    #[test]
    fn minimal_support_cases() {
        assert!(minimal_support(&reference_state("omega43").unwrap(), None).unwrap());
        assert!(minimal_support(&reference_state("omega2_5").unwrap(), None).unwrap());
        assert!(!minimal_support(&reference_state("upsilon52").unwrap(), None).unwrap());
    }
}
