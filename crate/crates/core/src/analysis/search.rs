use rayon::prelude::*;

use super::ame::verify_ame;
use super::majorization::{bipartition_spectra, majorization_analysis, majorizes, MajorizationReport, MAJORIZATION_TOL};
use super::parties::{canonical_bipartitions, Parties};
use crate::circuit::{gate_matrix, simulate, Circuit, GateKind};
use crate::error::{Error, Result};
use crate::graphstates::{graph_to_circuit, Graph};
use crate::linalg::{von_neumann_entropy, Spectrum, StateVector};

/// Circuit found by [`greedy_majorizing_search`] and its majorization report.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub circuit: Circuit,
    pub report: MajorizationReport,
    pub is_ame: bool,
}

struct Candidate {
    edge: (usize, usize),
    state: StateVector,
    spectra: Vec<Spectrum>,
    min_gain: f64,
    total_gain: f64,
}

const TIE_TOL: f64 = 1e-12;

/// Greedily appends generalized CZ gates on edges of `connectivity`.
///
/// Only steps that keep every canonical bipartition majorizing are admissible.
/// Among those, the gate maximizing the smallest entropy gain wins, then the
/// largest total gain, then the lexicographically first edge. The search stops
/// at `max_gates`, on reaching an AME state, or when nothing gains entropy.
pub fn greedy_majorizing_search(connectivity: &Graph, d: usize, max_gates: usize) -> Result<SearchOutcome> {
    if connectivity.n() < 2 || !connectivity.is_connected() {
        return Err(Error::input("connectivity graph must be connected with at least 2 vertices"));
    }
    let n = connectivity.n();
    let mut circuit = graph_to_circuit(&Graph::empty(n), d)?;
    let parties = Parties::singletons(circuit.dims())?;
    let bips = canonical_bipartitions(n);
    let cz_kind = if d == 2 { GateKind::Cz } else { GateKind::CzD(d) };
    let cz = gate_matrix(cz_kind, &[d, d])?;
    let edges = connectivity.lexicographic().edges().to_vec();

    let mut state = simulate(&circuit, None)?;
    let mut spectra = bipartition_spectra(&state, &parties, &bips)?;
    let mut is_ame = verify_ame(&state, Some(&parties))?.is_ame;

    while circuit.entangling_count() < max_gates && !is_ame {
        let entropies: Vec<f64> = spectra.iter().map(|s| von_neumann_entropy(s, 2.0)).collect();
        let candidates = edges
            .par_iter()
            .map(|&(a, b)| -> Result<Option<Candidate>> {
                let next = state.apply_unitary(&cz, &[a, b])?;
                let next_spectra = bipartition_spectra(&next, &parties, &bips)?;
                if !spectra.iter().zip(&next_spectra).all(|(p, q)| majorizes(p, q, MAJORIZATION_TOL)) {
                    return Ok(None);
                }
                let gains: Vec<f64> = next_spectra
                    .iter()
                    .zip(&entropies)
                    .map(|(s, h)| von_neumann_entropy(s, 2.0) - h)
                    .collect();
                Ok(Some(Candidate {
                    edge: (a, b),
                    state: next,
                    spectra: next_spectra,
                    min_gain: gains.iter().copied().fold(f64::INFINITY, f64::min),
                    total_gain: gains.iter().sum(),
                }))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut best: Option<Candidate> = None;
        for cand in candidates.into_iter().flatten() {
            let better = match &best {
                None => true,
                Some(b) => {
                    cand.min_gain > b.min_gain + TIE_TOL
                        || ((cand.min_gain - b.min_gain).abs() <= TIE_TOL && cand.total_gain > b.total_gain + TIE_TOL)
                }
            };
            if better {
                best = Some(cand);
            }
        }
        let Some(best) = best.filter(|b| b.total_gain > MAJORIZATION_TOL) else { break };
        circuit.push(cz_kind, &[best.edge.0, best.edge.1])?;
        state = best.state;
        spectra = best.spectra;
        is_ame = verify_ame(&state, Some(&parties))?.is_ame;
    }

    let report = majorization_analysis(&circuit, Some(&parties), "greedy")?;
    Ok(SearchOutcome { circuit, report, is_ame })
}
