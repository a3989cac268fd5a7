//! Explicit reference states and hardware-shaped circuits.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateKind};
use crate::error::{Error, Result};
use crate::linalg::{SiteDims, StateVector};
use crate::quditcompile::{ame43_circuit, Ame43Construction};

/// Names accepted by [`reference_state`]; `<d>` and `<n>` are integers ≥ 2.
pub const STATE_NAMES: &[&str] = &[
    "omega2_<d>", "omega3_<d>", "ghz_<n>", "ghz5", "upsilon52", "zero_l1", "one_l1", "omega62",
    "omega62_expanded", "zero_l2", "one_l2", "omega52", "omega43", "omega64", "ame52_eq24",
];

/// Names accepted by [`named_circuit`].
pub const CIRCUIT_NAMES: &[&str] = &["ame52_ibmqx4", "ghz5_ibmqx4", "ame43_original", "ame43_optimized"];

const UPSILON_COEFFS: [i8; 32] = [
    1, 1, 1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1,
];

const ZERO_L1: [(&str, i8); 16] = [
    ("00000", 1), ("10010", 1), ("01001", 1), ("10100", 1),
    ("01010", 1), ("11011", -1), ("00110", -1), ("11000", -1),
    ("11101", -1), ("00011", -1), ("11110", -1), ("01111", -1),
    ("10001", -1), ("01100", -1), ("10111", -1), ("00101", 1),
];

const ONE_L1: [(&str, i8); 16] = [
    ("11111", 1), ("01101", 1), ("10110", 1), ("01011", 1),
    ("10101", 1), ("00100", -1), ("11001", -1), ("00111", -1),
    ("00010", -1), ("11100", -1), ("00001", -1), ("10000", -1),
    ("01110", -1), ("10011", -1), ("01000", -1), ("11010", 1),
];

const ZERO_L2: [(&str, i8); 4] = [("00000", 1), ("00011", 1), ("01100", 1), ("01111", -1)];
const ONE_L2: [(&str, i8); 4] = [("11010", 1), ("11001", 1), ("10110", 1), ("10101", -1)];

// Outer sign, first three qubits, then signed terms over the |±⟩ basis.
const OMEGA62_PM: [(i8, &str, [(i8, &str); 2]); 8] = [
    (1, "000", [(1, "+-+"), (1, "-+-")]),
    (-1, "001", [(1, "+--"), (-1, "-++")]),
    (1, "010", [(1, "++-"), (-1, "--+")]),
    (-1, "011", [(1, "+++"), (1, "---")]),
    (-1, "100", [(1, "+++"), (-1, "---")]),
    (-1, "101", [(1, "++-"), (1, "--+")]),
    (-1, "110", [(1, "+--"), (1, "-++")]),
    (-1, "111", [(1, "+-+"), (-1, "-+-")]),
];

const OMEGA43: [&str; 9] = ["0000", "0111", "0222", "1012", "1120", "1201", "2021", "2102", "2210"];

const OMEGA64: [&str; 64] = [
    "000000", "111100", "222200", "333300", "321010", "230110", "103210", "012310",
    "132020", "023120", "310220", "201320", "213030", "302130", "031230", "120330",
    "231001", "320101", "013201", "102301", "110011", "001111", "332211", "223311",
    "303021", "212121", "121221", "030321", "022031", "133131", "200231", "311331",
    "312002", "203102", "130202", "021302", "033012", "122112", "211212", "300312",
    "220022", "331122", "002222", "113322", "101032", "010132", "323232", "232332",
    "123003", "032103", "301203", "210303", "202013", "313113", "020213", "131313",
    "011023", "100123", "233223", "322323", "330033", "221133", "112233", "003333",
];

const AME52_EQ24: [&str; 8] = ["00000", "00011", "01101", "01110", "10101", "10110", "11000", "11011"];

/// State `scale · Σ coeff |ket⟩`; the result is checked to be normalized.
fn from_terms<'a>(dims: SiteDims, terms: impl IntoIterator<Item = (&'a str, f64)>, scale: f64) -> Result<StateVector> {
    let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
    for (ket, coeff) in terms {
        amps[dims.parse_ket(ket)?] += Complex64::new(coeff * scale, 0.0);
    }
    let state = StateVector::from_amplitudes(dims, amps)?;
    debug_assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
    Ok(state)
}

fn signed<'a>(terms: &'a [(&'static str, i8)]) -> impl Iterator<Item = (&'static str, f64)> + 'a {
    terms.iter().map(|&(k, s)| (k, f64::from(s)))
}

fn parse_suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok().filter(|&v| v >= 2)
}

fn unknown_state(name: &str) -> Error {
    Error::input(format!("unknown state '{name}' (known: {})", STATE_NAMES.join(", ")))
}

/// Catalog state by name.
pub fn reference_state(name: &str) -> Result<StateVector> {
    let q5 = SiteDims::qubits(5);
    match name {
        "upsilon52" => {
            let labels: Vec<String> = (0..32).map(|i| q5.ket_label(i)).collect();
            let terms = labels.iter().zip(UPSILON_COEFFS).map(|(k, c)| (k.as_str(), f64::from(c)));
            from_terms(q5, terms, 1.0 / (4.0 * 2f64.sqrt()))
        }
        "zero_l1" => from_terms(q5, signed(&ZERO_L1), 0.25),
        "one_l1" => from_terms(q5, signed(&ONE_L1), 0.25),
        "zero_l2" => from_terms(q5, signed(&ZERO_L2), 0.5),
        "one_l2" => from_terms(q5, signed(&ONE_L2), 0.5),
        "omega52" => from_terms(q5, signed(&ZERO_L2).chain(signed(&ONE_L2)), 0.5 / 2f64.sqrt()),
        "omega62" => {
            let zero = ZERO_L1.iter().map(|&(k, s)| (format!("0{k}"), f64::from(s)));
            let one = ONE_L1.iter().map(|&(k, s)| (format!("1{k}"), f64::from(s)));
            let terms: Vec<(String, f64)> = zero.chain(one).collect();
            from_terms(SiteDims::qubits(6), terms.iter().map(|(k, c)| (k.as_str(), *c)), 0.25 / 2f64.sqrt())
        }
        "omega62_expanded" => omega62_expanded(),
        "omega43" => from_terms(SiteDims::uniform(4, 3)?, OMEGA43.iter().map(|&k| (k, 1.0)), 1.0 / 3.0),
        "omega64" => from_terms(SiteDims::uniform(6, 4)?, OMEGA64.iter().map(|&k| (k, 1.0)), 0.125),
        "ame52_eq24" => from_terms(q5, AME52_EQ24.iter().map(|&k| (k, 1.0)), 0.5 / 2f64.sqrt()),
        "ghz5" => from_terms(q5, [("00000", 1.0), ("11111", -1.0)], 1.0 / 2f64.sqrt()),
        _ => {
            if let Some(d) = parse_suffix(name, "omega2_") {
                uniform_repeated(2, d)
            } else if let Some(d) = parse_suffix(name, "omega3_") {
                uniform_repeated(3, d)
            } else if let Some(n) = parse_suffix(name, "ghz_") {
                uniform_repeated(n, 2)
            } else {
                Err(unknown_state(name))
            }
        }
    }
}

// (1/√d) Σ_i |i i … i⟩
fn uniform_repeated(n: usize, d: usize) -> Result<StateVector> {
    let dims = SiteDims::uniform(n, d)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
    for i in 0..d {
        amps[dims.index_of(&vec![i; n])?] = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    }
    StateVector::from_amplitudes(dims, amps)
}

fn omega62_expanded() -> Result<StateVector> {
    let dims = SiteDims::qubits(6);
    let mut amps = vec![Complex64::new(0.0, 0.0); 64];
    // each |±±±⟩ spreads over 8 kets with weight 1/(2√2)
    let spread = 1.0 / (2.0 * 2f64.sqrt());
    for (outer, head, terms) in OMEGA62_PM {
        for (inner, pattern) in terms {
            for tail in 0..8usize {
                let mut sign = f64::from(outer) * f64::from(inner);
                for (pos, ch) in pattern.chars().enumerate() {
                    let bit = (tail >> (2 - pos)) & 1;
                    if ch == '-' && bit == 1 {
                        sign = -sign;
                    }
                }
                let index = SiteDims::qubits(3).parse_ket(head)? * 8 + tail;
                amps[index] += Complex64::new(0.25 * spread * sign, 0.0);
            }
        }
    }
    StateVector::from_amplitudes(dims, amps)
}

/// Named circuit by name.
pub fn named_circuit(name: &str) -> Result<Circuit> {
    match name {
        "ame52_ibmqx4" => Circuit::new(SiteDims::qubits(5))
            .with(GateKind::H, &[2])?
            .with(GateKind::H, &[3])?
            .with(GateKind::Cnot, &[2, 1])?
            .with(GateKind::Cnot, &[1, 0])?
            .with(GateKind::H, &[2])?
            .with(GateKind::Cnot, &[2, 4])?
            .with(GateKind::Cnot, &[3, 2])?
            .with(GateKind::Cnot, &[2, 0]),
        "ghz5_ibmqx4" => Circuit::new(SiteDims::qubits(5))
            .with(GateKind::H, &[3])?
            .with(GateKind::Cnot, &[3, 4])?
            .with(GateKind::Z, &[4])?
            .with(GateKind::Cnot, &[3, 2])?
            .with(GateKind::Cnot, &[2, 1])?
            .with(GateKind::Cnot, &[2, 0]),
        "ame43_original" => ame43_circuit(Ame43Construction::Original),
        "ame43_optimized" => ame43_circuit(Ame43Construction::Optimized),
        _ => Err(Error::input(format!("unknown circuit '{name}' (known: {})", CIRCUIT_NAMES.join(", ")))),
    }
}

/// Outcome probabilities keyed by ket label; entries below 1e-15 are dropped.
pub fn measurement_probabilities(state: &StateVector) -> BTreeMap<String, f64> {
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| (i, a.norm_sqr()))
        .filter(|&(_, p)| p >= 1e-15)
        .map(|(i, p)| (state.dims().ket_label(i), p))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct AmplitudeRecord {
    ket: String,
    re: f64,
    im: f64,
}

/// JSON list of `{ket, re, im}`; exactly-zero amplitudes are omitted.
pub fn state_to_json(state: &StateVector) -> Result<String> {
    let records: Vec<AmplitudeRecord> = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
        .map(|(i, a)| AmplitudeRecord { ket: state.dims().ket_label(i), re: a.re, im: a.im })
        .collect();
    Ok(serde_json::to_string_pretty(&records)?)
}

/// Inverse of [`state_to_json`]. Without explicit `dims`, a uniform register
/// is inferred from the ket length and the largest digit (at least qubits).
pub fn state_from_json(text: &str, dims: Option<SiteDims>) -> Result<StateVector> {
    let records: Vec<AmplitudeRecord> =
        serde_json::from_str(text).map_err(|e| Error::input(format!("state JSON: {e}")))?;
    let dims = match dims {
        Some(d) => d,
        None => {
            let first = records.first().ok_or_else(|| Error::input("state JSON is empty"))?;
            if first.ket.contains(',') {
                return Err(Error::input("comma-separated kets need explicit dimensions"));
            }
            let n = first.ket.chars().count();
            let max_digit = records
                .iter()
                .flat_map(|r| r.ket.chars())
                .filter_map(|c| c.to_digit(10))
                .max()
                .unwrap_or(0) as usize;
            SiteDims::uniform(n, (max_digit + 1).max(2))?
        }
    };
    let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
    for r in &records {
        amps[dims.parse_ket(&r.ket)?] = Complex64::new(r.re, r.im);
    }
    StateVector::from_amplitudes(dims, amps)
}

/// Catalog name or path to a state JSON file.
pub fn resolve_state(spec: &str) -> Result<StateVector> {
    match reference_state(spec) {
        Ok(s) => Ok(s),
        Err(_) if Path::new(spec).exists() => state_from_json(&std::fs::read_to_string(spec)?, None),
        Err(e) => Err(e),
    }
}

/// Named circuit or path to a circuit JSON file.
pub fn resolve_circuit(spec: &str) -> Result<Circuit> {
    match named_circuit(spec) {
        Ok(c) => Ok(c),
        Err(_) if Path::new(spec).exists() => Circuit::load(Path::new(spec)),
        Err(e) => Err(e),
    }
}
