use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::parties::{canonical_bipartitions, raw_bipartition_count, Bipartition, Parties};
use crate::circuit::{simulate_with_snapshots, Circuit};
use crate::error::Result;
use crate::linalg::{purity, reduced_spectrum, von_neumann_entropy, Spectrum, StateVector};

/// Prefix-sum tolerance of [`majorizes`].
pub const MAJORIZATION_TOL: f64 = 1e-9;
/// Eigenvalues below this are zeroed before comparison.
pub const EIGEN_FLOOR: f64 = 1e-12;

/// `a ≻ b`: every descending prefix sum of `a` is at least that of `b`, up to `tol`.
/// The shorter spectrum is padded with zeros.
pub fn majorizes(a: &Spectrum, b: &Spectrum, tol: f64) -> bool {
    let len = a.len().max(b.len());
    let (a, b) = (a.cleaned(0.0, len), b.cleaned(0.0, len));
    let (mut sa, mut sb) = (0.0, 0.0);
    for (x, y) in a.values().iter().zip(b.values()) {
        sa += x;
        sb += y;
        if sa < sb - tol {
            return false;
        }
    }
    true
}

/// Reduced-state figures for one bipartition at one snapshot.
#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub spectrum: Spectrum,
    pub entropy_bits: f64,
    pub entropy_dits: f64,
    pub purity: f64,
    /// Spectrum majorizes this one's at the previous snapshot (the input state for the first).
    pub majorizes_prev: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BipartitionReport {
    pub bipartition: Bipartition,
    pub steps: Vec<StepRecord>,
    pub eigen_majorizes: bool,
    pub entropy_monotone: bool,
    pub purity_monotone: bool,
}

impl BipartitionReport {
    pub fn entropies_bits(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.entropy_bits).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MajorizationReport {
    pub circuit_id: String,
    pub party_dim: usize,
    pub parties: usize,
    pub steps: Vec<usize>,
    pub bipartitions: Vec<BipartitionReport>,
    /// Bipartitions failing eigenvalue majorization at some step.
    pub failing: Vec<Bipartition>,
    /// `C(n, ⌊n/2⌋)`, before complements are merged.
    pub raw_bipartition_count: usize,
}

impl MajorizationReport {
    pub fn all_majorize(&self) -> bool {
        self.failing.is_empty()
    }

    pub fn bipartition(&self, part_a: &[usize]) -> Option<&BipartitionReport> {
        self.bipartitions.iter().find(|b| b.bipartition.part_a == part_a)
    }

    /// One row per (snapshot, bipartition).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,bipartition,eigenvalues,entropy_bits,entropy_dits,purity,majorizes_prev\n");
        for (k, &step) in self.steps.iter().enumerate() {
            for b in &self.bipartitions {
                let r = &b.steps[k];
                let eig = r.spectrum.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";");
                let _ = writeln!(
                    out,
                    "{step},{},{eig},{},{},{},{}",
                    b.bipartition, r.entropy_bits, r.entropy_dits, r.purity, r.majorizes_prev
                );
            }
        }
        out
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let last = |b: &BipartitionReport| b.steps.last().map(|s| s.entropy_bits);
        json!({
            "circuit": self.circuit_id,
            "parties": self.parties,
            "party_dim": self.party_dim,
            "snapshots": self.steps.len(),
            "bipartitions_checked": self.bipartitions.len(),
            "bipartitions_raw": self.raw_bipartition_count,
            "all_majorize": self.all_majorize(),
            "entropy_monotone": self.bipartitions.iter().all(|b| b.entropy_monotone),
            "purity_monotone": self.bipartitions.iter().all(|b| b.purity_monotone),
            "failing": self.failing.iter().map(|b| b.part_a.clone()).collect::<Vec<_>>(),
            "final_entropy_bits": self.bipartitions.iter().map(last).collect::<Vec<_>>(),
        })
    }
}

/// Spectra of side `A` of every canonical bipartition.
pub(crate) fn bipartition_spectra(state: &StateVector, parties: &Parties, bips: &[Bipartition]) -> Result<Vec<Spectrum>> {
    bips.par_iter()
        .map(|b| {
            let sites = parties.sites_of(&b.part_a);
            let dim = parties.party_dim().pow(b.part_a.len() as u32);
            Ok(reduced_spectrum(state, &sites)?.cleaned(EIGEN_FLOOR, dim))
        })
        .collect()
}

/// Simulates `c` from `|0…0⟩` and tracks every canonical bipartition across snapshots.
pub fn majorization_analysis(c: &Circuit, parties: Option<&Parties>, circuit_id: &str) -> Result<MajorizationReport> {
    let parties = match parties {
        Some(p) => p.clone(),
        None => Parties::singletons(c.dims())?,
    };
    if parties.groups().iter().flatten().count() != c.dims().len() {
        return Err(crate::Error::input("party grouping does not match the circuit register"));
    }
    let snapshots = simulate_with_snapshots(c, None)?;
    let bips = canonical_bipartitions(parties.len());
    let initial = bipartition_spectra(&StateVector::zero(c.dims().clone()), &parties, &bips)?;
    let per_step: Vec<Vec<Spectrum>> = snapshots
        .iter()
        .map(|s| bipartition_spectra(&s.state, &parties, &bips))
        .collect::<Result<_>>()?;

    let d = parties.party_dim() as f64;
    let mut reports = Vec::with_capacity(bips.len());
    for (j, b) in bips.iter().enumerate() {
        let mut prev = &initial[j];
        let mut steps = Vec::with_capacity(snapshots.len());
        for (k, snap) in snapshots.iter().enumerate() {
            let spec = &per_step[k][j];
            steps.push(StepRecord {
                step: snap.step,
                spectrum: spec.clone(),
                entropy_bits: von_neumann_entropy(spec, 2.0),
                entropy_dits: von_neumann_entropy(spec, d),
                purity: purity(spec),
                majorizes_prev: majorizes(prev, spec, MAJORIZATION_TOL),
            });
            prev = spec;
        }
        let (h0, g0) = (von_neumann_entropy(&initial[j], 2.0), purity(&initial[j]));
        let ent: Vec<f64> = std::iter::once(h0).chain(steps.iter().map(|s| s.entropy_bits)).collect();
        let pur: Vec<f64> = std::iter::once(g0).chain(steps.iter().map(|s| s.purity)).collect();
        reports.push(BipartitionReport {
            bipartition: b.clone(),
            eigen_majorizes: steps.iter().all(|s| s.majorizes_prev),
            entropy_monotone: ent.windows(2).all(|w| w[1] >= w[0] - MAJORIZATION_TOL),
            purity_monotone: pur.windows(2).all(|w| w[1] <= w[0] + MAJORIZATION_TOL),
            steps,
        });
    }
    Ok(MajorizationReport {
        circuit_id: circuit_id.to_string(),
        party_dim: parties.party_dim(),
        parties: parties.len(),
        steps: snapshots.iter().map(|s| s.step).collect(),
        failing: reports.iter().filter(|r| !r.eigen_majorizes).map(|r| r.bipartition.clone()).collect(),
        bipartitions: reports,
        raw_bipartition_count: raw_bipartition_count(parties.len()),
    })
}
