//! Lowering of qutrit and ququart circuits onto qubits.

mod encoding;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

pub use encoding::{Encoding, QubitLayout};

use crate::circuit::{Circuit, GateApplication, GateKind};
use crate::error::{Error, Result};
use crate::linalg::SiteDims;

/// Which Toffoli the qutrit adder is built from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AdderVariant {
    /// `CCNOT_A` plus two CZ phase fixups.
    A,
    /// `CCNOT_B`; its signs cancel inside the adder.
    #[default]
    B,
    /// Exact Toffolis.
    Exact,
}

impl FromStr for AdderVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(AdderVariant::A),
            "b" => Ok(AdderVariant::B),
            "exact" => Ok(AdderVariant::Exact),
            _ => Err(Error::input(format!("unknown adder variant '{s}' (a, b, exact)"))),
        }
    }
}

impl fmt::Display for AdderVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdderVariant::A => "a",
            AdderVariant::B => "b",
            AdderVariant::Exact => "exact",
        })
    }
}

/// Qubit circuit standing in for one qudit gate.
#[derive(Clone, Debug)]
pub struct CompiledFragment {
    pub circuit: Circuit,
    /// Phase corrections already contained in `circuit`.
    pub fixups: Vec<GateApplication>,
    pub variant: AdderVariant,
}

impl CompiledFragment {
    fn exact(circuit: Circuit) -> Self {
        CompiledFragment { circuit, fixups: Vec::new(), variant: AdderVariant::Exact }
    }
}

/// Prepares the encoded uniform superposition `F_d|0⟩` from `|0…0⟩`.
pub fn u_in_circuit(d: usize) -> Result<CompiledFragment> {
    let c = match d {
        2 => Circuit::new(SiteDims::qubits(1)).with(GateKind::H, &[0])?,
        3 => Circuit::new(SiteDims::qubits(2))
            .with(GateKind::Ry(2.0 * (1.0 / 3f64.sqrt()).acos()), &[0])?
            .with(GateKind::CtrlH, &[0, 1])?
            .with(GateKind::Cnot, &[1, 0])?,
        4 => Circuit::new(SiteDims::qubits(2)).with(GateKind::H, &[0])?.with(GateKind::H, &[1])?,
        _ => return Err(Error::input(format!("no initializer for d = {d} (supported: 2, 3, 4)"))),
    };
    Ok(CompiledFragment::exact(c))
}

/// Generalized CZ on two encoded qudits; qubits are `(k_hi, k_lo, l_hi, l_lo)`.
pub fn cz_qudit_circuit(d: usize) -> Result<CompiledFragment> {
    let base = Circuit::new(SiteDims::qubits(4));
    let third = 2.0 * PI / 3.0;
    let c = match d {
        3 => base
            .with(GateKind::Cph(third), &[1, 3])?
            .with(GateKind::Cph(third), &[0, 2])?
            .with(GateKind::Cph(-third), &[0, 3])?
            .with(GateKind::Cph(-third), &[1, 2])?,
        4 => base
            .with(GateKind::Cph(FRAC_PI_2), &[1, 3])?
            .with(GateKind::Cz, &[1, 2])?
            .with(GateKind::Cz, &[0, 3])?,
        _ => return Err(Error::input(format!("no CZ lowering for d = {d} (supported: 3, 4)"))),
    };
    Ok(CompiledFragment::exact(c))
}

/// Qutrit adder on qubits `(c_hi, c_lo, t_hi, t_lo)`.
pub fn c3_adder_circuit(variant: AdderVariant) -> Result<CompiledFragment> {
    let toffoli = match variant {
        AdderVariant::A => GateKind::CcnotA,
        AdderVariant::B => GateKind::CcnotB,
        AdderVariant::Exact => GateKind::Ccnot,
    };
    let mut c = Circuit::new(SiteDims::qubits(4))
        .with(GateKind::Cnot, &[1, 2])?
        .with(toffoli, &[1, 2, 3])?
        .with(toffoli, &[1, 3, 2])?
        .with(GateKind::Cnot, &[0, 3])?
        .with(toffoli, &[0, 3, 2])?
        .with(toffoli, &[0, 2, 3])?;
    let mut fixups = Vec::new();
    if variant == AdderVariant::A {
        for sites in [[1, 2], [0, 3]] {
            c.push(GateKind::Cz, &sites)?;
            fixups.push(GateApplication { kind: GateKind::Cz, sites: sites.to_vec() });
        }
    }
    Ok(CompiledFragment { circuit: c, fixups, variant })
}

/// Seven-gate expansion of an approximate Toffoli on `(c1, c2, t)`.
fn approximate_toffoli(kind: GateKind, c1: usize, c2: usize, t: usize) -> Vec<(GateKind, Vec<usize>)> {
    let ry = |a: f64| (GateKind::Ry(a), vec![t]);
    match kind {
        GateKind::CcnotA => vec![
            ry(-FRAC_PI_4),
            (GateKind::Cz, vec![c2, t]),
            ry(FRAC_PI_4),
            (GateKind::Cz, vec![c1, t]),
            ry(-FRAC_PI_4),
            (GateKind::Cz, vec![c2, t]),
            ry(FRAC_PI_4),
        ],
        GateKind::CcnotB => vec![
            ry(-FRAC_PI_4),
            (GateKind::Cnot, vec![c2, t]),
            ry(-FRAC_PI_4),
            (GateKind::Cnot, vec![c1, t]),
            ry(FRAC_PI_4),
            (GateKind::Cnot, vec![c2, t]),
            ry(FRAC_PI_4),
        ],
        _ => vec![(kind, vec![c1, c2, t])],
    }
}

/// Replaces every `CCNOT_A`/`CCNOT_B` by its rotation-and-two-qubit-gate expansion.
pub fn lower_toffolis(c: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(c.dims().clone());
    for g in c.gates() {
        match g.kind {
            GateKind::CcnotA | GateKind::CcnotB => {
                for (kind, sites) in approximate_toffoli(g.kind, g.sites[0], g.sites[1], g.sites[2]) {
                    out.push(kind, &sites)?;
                }
            }
            _ => out.push(g.kind, &g.sites)?,
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompileOptions {
    pub adder: AdderVariant,
    /// An adder whose target qutrit is still `|0⟩` becomes two CNOTs.
    pub fresh_target_copy: bool,
    /// Expand approximate Toffolis into one- and two-qubit gates.
    pub expand_toffolis: bool,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions { adder: AdderVariant::B, fresh_target_copy: true, expand_toffolis: false }
    }
}

/// Lowers a qudit circuit (sites of dimension 2, 3 or 4) onto qubits laid out by
/// [`QubitLayout`]. The input is assumed to start from `|0…0⟩`.
pub fn compile(c: &Circuit, opts: &CompileOptions) -> Result<Circuit> {
    let layout = QubitLayout::new(c.dims())?;
    let mut out = Circuit::new(layout.qubit_dims());
    let mut touched = vec![false; c.dims().len()];
    for g in c.gates() {
        let dims: Vec<usize> = g.sites.iter().map(|&s| c.dims().dim(s)).collect();
        let qubits: Vec<usize> = g.sites.iter().flat_map(|&s| layout.qubits_of(s)).collect();
        match g.kind {
            GateKind::Fd(d) => {
                let site = g.sites[0];
                if touched[site] {
                    return Err(Error::Unsupported(format!(
                        "F_D({d}) on site {site} after other gates; only initializers on |0⟩ can be lowered"
                    )));
                }
                embed(&mut out, &u_in_circuit(d).map_err(unsupported)?.circuit, &qubits)?;
            }
            GateKind::CzD(2) => out.push(GateKind::Cz, &qubits)?,
            GateKind::CzD(d) => embed(&mut out, &cz_qudit_circuit(d).map_err(unsupported)?.circuit, &qubits)?,
            GateKind::C3Add if opts.fresh_target_copy && !touched[g.sites[1]] => {
                out.push(GateKind::Cnot, &[qubits[1], qubits[3]])?;
                out.push(GateKind::Cnot, &[qubits[0], qubits[2]])?;
            }
            GateKind::C3Add => {
                let mut frag = c3_adder_circuit(opts.adder)?.circuit;
                if opts.expand_toffolis {
                    frag = lower_toffolis(&frag)?;
                }
                embed(&mut out, &frag, &qubits)?;
            }
            kind if dims.iter().all(|&d| d == 2) => out.push(kind, &qubits)?,
            kind => return Err(Error::Unsupported(format!("cannot lower {kind} on sites of dimension {dims:?}"))),
        }
        for &s in &g.sites {
            touched[s] = true;
        }
    }
    Ok(out)
}

fn unsupported(e: Error) -> Error {
    Error::Unsupported(e.to_string())
}

fn embed(out: &mut Circuit, fragment: &Circuit, qubits: &[usize]) -> Result<()> {
    for g in fragment.gates() {
        let mapped: Vec<usize> = g.sites.iter().map(|&s| qubits[s]).collect();
        out.push(g.kind, &mapped)?;
    }
    Ok(())
}

/// The two qutrit circuits for the four-party AME state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ame43Construction {
    /// Fourier gates on sites 2, 3 and five adders.
    Original,
    /// Fourier gates on sites 0, 1 and four adders, two of them parallel.
    Optimized,
}

pub fn ame43_circuit(which: Ame43Construction) -> Result<Circuit> {
    let (fourier, adders): (&[usize], &[[usize; 2]]) = match which {
        Ame43Construction::Original => (&[2, 3], &[[3, 1], [3, 0], [2, 1], [2, 0], [2, 0]]),
        Ame43Construction::Optimized => (&[0, 1], &[[1, 2], [0, 1], [2, 3], [1, 2]]),
    };
    let mut c = Circuit::new(SiteDims::uniform(4, 3)?);
    for &s in fourier {
        c.push(GateKind::Fd(3), &[s])?;
    }
    for a in adders {
        c.push(GateKind::C3Add, a)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{gate_matrix, simulate};
    use crate::graphstates::{graph_to_circuit, known_graph};
    use crate::linalg::{basis_state, max_diff_up_to_phase, CMatrix, StateVector};
    use num_complex::Complex64;

    fn unitary_of(c: &Circuit) -> CMatrix {
        let n = c.dims().total();
        let mut u = CMatrix::zeros(n, n);
        for col in 0..n {
            let input = basis_state(c.dims(), &c.dims().digits_of(col)).unwrap();
            let out = simulate(c, Some(&input)).unwrap();
            for (row, a) in out.amplitudes().iter().enumerate() {
                u[(row, col)] = *a;
            }
        }
        u
    }

    fn assert_fragment_matches(frag: &Circuit, native: GateKind, d: usize) {
        let layout = QubitLayout::new(&SiteDims::uniform(2, d).unwrap()).unwrap();
        let gate = gate_matrix(native, &[d, d]).unwrap();
        for k in 0..d {
            for l in 0..d {
                let input = basis_state(layout.qudit_dims(), &[k, l]).unwrap();
                let out = simulate(frag, Some(&layout.encode_state(&input).unwrap())).unwrap();
                let (decoded, leak) = layout.decode_state(&out).unwrap();
                assert!(leak < 1e-24);
                let want = input.apply_unitary(&gate, &[0, 1]).unwrap();
                for (a, b) in decoded.amplitudes().iter().zip(want.amplitudes()) {
                    assert!((a - b).norm() < 1e-12, "{native} on |{k}{l}⟩");
                }
            }
        }
    }

    #[test]
    fn initializers() {
        for d in 2..=4 {
            let c = u_in_circuit(d).unwrap().circuit;
            let out = simulate(&c, None).unwrap();
            let layout = QubitLayout::new(&SiteDims::uniform(1, d).unwrap()).unwrap();
            let (decoded, leak) = layout.decode_state(&out).unwrap();
            assert!(leak < 1e-24);
            let amp = 1.0 / (d as f64).sqrt();
            for a in decoded.amplitudes() {
                assert!((a - Complex64::new(amp, 0.0)).norm() < 1e-12);
            }
        }
        assert!(u_in_circuit(5).is_err());
    }

    #[test]
    fn cz_fragments_match_native() {
        for d in [3, 4] {
            assert_fragment_matches(&cz_qudit_circuit(d).unwrap().circuit, GateKind::CzD(d), d);
        }
        assert_eq!(cz_qudit_circuit(4).unwrap().circuit.entangling_depth(), 2);
        assert!(cz_qudit_circuit(5).is_err());
    }

    #[test]
    fn adder_variants_match_native() {
        for v in [AdderVariant::A, AdderVariant::B, AdderVariant::Exact] {
            let frag = c3_adder_circuit(v).unwrap();
            assert_fragment_matches(&frag.circuit, GateKind::C3Add, 3);
            assert_fragment_matches(&lower_toffolis(&frag.circuit).unwrap(), GateKind::C3Add, 3);
        }
        assert_eq!(c3_adder_circuit(AdderVariant::A).unwrap().fixups.len(), 2);
        assert!(c3_adder_circuit(AdderVariant::B).unwrap().fixups.is_empty());
    }

    #[test]
    fn variant_a_needs_its_fixups() {
        let frag = c3_adder_circuit(AdderVariant::A).unwrap().circuit;
        let mut stripped = Circuit::new(frag.dims().clone());
        for g in &frag.gates()[..frag.len() - 2] {
            stripped.push(g.kind, &g.sites).unwrap();
        }
        let native = gate_matrix(GateKind::C3Add, &[3, 3]).unwrap();
        let layout = QubitLayout::new(&SiteDims::uniform(2, 3).unwrap()).unwrap();
        let mut broken = Vec::new();
        for k in 0..3 {
            for l in 0..3 {
                let input = basis_state(layout.qudit_dims(), &[k, l]).unwrap();
                let out = simulate(&stripped, Some(&layout.encode_state(&input).unwrap())).unwrap();
                let want = layout.encode_state(&input.apply_unitary(&native, &[0, 1]).unwrap()).unwrap();
                if (crate::linalg::overlap(&want, &out).unwrap() - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
                    broken.push((k, l));
                }
            }
        }
        assert_eq!(broken, vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn toffoli_expansions_reproduce_signed_tables() {
        for kind in [GateKind::CcnotA, GateKind::CcnotB] {
            let c = Circuit::new(SiteDims::qubits(3)).with(kind, &[0, 1, 2]).unwrap();
            let want = gate_matrix(kind, &[2, 2, 2]).unwrap();
            let got = unitary_of(&lower_toffolis(&c).unwrap());
            assert!((got - want).iter().all(|z| z.norm() < 1e-12), "{kind}");
        }
    }

    #[test]
    fn adder_examples() {
        let frag = c3_adder_circuit(AdderVariant::B).unwrap().circuit;
        let q = SiteDims::qubits(4);
        let run = |bits: [usize; 4]| simulate(&frag, Some(&basis_state(&q, &bits).unwrap())).unwrap();
        assert_eq!(run([0, 1, 0, 1]).amplitude(&[0, 1, 1, 0]).unwrap(), Complex64::new(1.0, 0.0));
        assert!((run([1, 0, 1, 0]).amplitude(&[1, 0, 0, 1]).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        for l in [[0, 0], [0, 1], [1, 0]] {
            let out = run([0, 0, l[0], l[1]]);
            assert!((out.amplitude(&[0, 0, l[0], l[1]]).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    fn native_and_compiled(c: &Circuit, opts: &CompileOptions) -> (StateVector, StateVector, f64) {
        let native = simulate(c, None).unwrap();
        let compiled = compile(c, opts).unwrap();
        let layout = QubitLayout::new(c.dims()).unwrap();
        let (decoded, leak) = layout.decode_state(&simulate(&compiled, None).unwrap()).unwrap();
        (native, decoded, leak)
    }

    #[test]
    fn compiled_graph_states_decode_to_native() {
        for name in ["ame5_cycle", "ame4_prime", "bell"] {
            for d in [3, 4] {
                let c = graph_to_circuit(&known_graph(name).unwrap(), d).unwrap();
                let (native, decoded, leak) = native_and_compiled(&c, &CompileOptions::default());
                assert!(leak < 1e-20);
                assert!(max_diff_up_to_phase(&native, &decoded).unwrap() < 1e-9, "{name} d={d}");
            }
        }
    }

    #[test]
    fn compiled_ame43_matches_native() {
        for which in [Ame43Construction::Original, Ame43Construction::Optimized] {
            let c = ame43_circuit(which).unwrap();
            for opts in [
                CompileOptions::default(),
                CompileOptions { adder: AdderVariant::A, fresh_target_copy: false, expand_toffolis: true },
            ] {
                let (native, decoded, leak) = native_and_compiled(&c, &opts);
                assert!(leak < 1e-20);
                assert!(max_diff_up_to_phase(&native, &decoded).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn first_two_adders_become_cnot_pairs() {
        let c = compile(&ame43_circuit(Ame43Construction::Original).unwrap(), &CompileOptions::default()).unwrap();
        let cnots: Vec<&[usize]> = c.gates()[6..10].iter().map(|g| g.sites.as_slice()).collect();
        assert!(c.gates()[6..10].iter().all(|g| g.kind == GateKind::Cnot));
        assert_eq!(cnots, vec![&[7, 3][..], &[6, 2], &[7, 1], &[6, 0]]);
    }

    #[test]
    fn late_fourier_gate_is_unsupported() {
        let c = Circuit::new(SiteDims::uniform(2, 3).unwrap())
            .with(GateKind::C3Add, &[0, 1]).unwrap()
            .with(GateKind::Fd(3), &[1]).unwrap();
        assert!(matches!(compile(&c, &CompileOptions::default()), Err(Error::Unsupported(_))));
        let c5 = Circuit::new(SiteDims::uniform(1, 5).unwrap()).with(GateKind::Fd(5), &[0]).unwrap();
        assert!(matches!(compile(&c5, &CompileOptions::default()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn single_ququart_initializer_is_two_hadamards() {
        let c = Circuit::new(SiteDims::uniform(1, 4).unwrap()).with(GateKind::Fd(4), &[0]).unwrap();
        let q = compile(&c, &CompileOptions::default()).unwrap();
        assert_eq!(q.dims().len(), 2);
        assert!(q.gates().iter().all(|g| g.kind == GateKind::H));
    }
}
