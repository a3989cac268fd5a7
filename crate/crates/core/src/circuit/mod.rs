//! Gate vocabulary, circuits and statevector simulation.

mod gates;

use std::path::Path;

use serde::{Deserialize, Serialize};

pub use gates::{gate_matrix, GateKind};

use crate::error::{Error, Result};
use crate::linalg::{check_sites, SiteDims, StateVector};

/// A gate placed on an ordered list of sites, controls first.
#[derive(Clone, Debug, PartialEq)]
pub struct GateApplication {
    pub kind: GateKind,
    pub sites: Vec<usize>,
}

/// Ordered gate list over a register. Every gate is validated on insertion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircuitRecord", into = "CircuitRecord")]
pub struct Circuit {
    dims: SiteDims,
    gates: Vec<GateApplication>,
}

/// State after a prefix of the circuit; `step` counts the gates applied.
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub step: usize,
    pub state: StateVector,
}

impl Circuit {
    pub fn new(dims: SiteDims) -> Self {
        Circuit { dims, gates: Vec::new() }
    }

    pub fn dims(&self) -> &SiteDims {
        &self.dims
    }

    pub fn gates(&self) -> &[GateApplication] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, kind: GateKind, sites: &[usize]) -> Result<()> {
        check_sites(&self.dims, sites)?;
        let site_dims: Vec<usize> = sites.iter().map(|&s| self.dims.dim(s)).collect();
        kind.check_dims(&site_dims)
            .map_err(|e| Error::input(format!("gate {kind} on sites {sites:?}: {e}")))?;
        self.gates.push(GateApplication { kind, sites: sites.to_vec() });
        Ok(())
    }

    /// Builder form of [`push`](Self::push).
    pub fn with(mut self, kind: GateKind, sites: &[usize]) -> Result<Self> {
        self.push(kind, sites)?;
        Ok(self)
    }

    /// Appends every gate of `other`, which must share the register.
    pub fn extend_from(&mut self, other: &Circuit) -> Result<()> {
        if other.dims != self.dims {
            return Err(Error::input("cannot concatenate circuits over different registers"));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    pub fn entangling_count(&self) -> usize {
        self.gates.iter().filter(|g| g.kind.is_entangling()).count()
    }

    /// Greedy layering; gates on disjoint sites share a layer.
    pub fn depth(&self) -> usize {
        layered_depth(self.dims.len(), self.gates.iter())
    }

    /// Depth counting entangling gates only.
    pub fn entangling_depth(&self) -> usize {
        layered_depth(self.dims.len(), self.gates.iter().filter(|g| g.kind.is_entangling()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Circuit> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("circuit JSON: {e}")))
    }

    pub fn load(path: &Path) -> Result<Circuit> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

fn layered_depth<'a>(n: usize, gates: impl Iterator<Item = &'a GateApplication>) -> usize {
    let mut level = vec![0usize; n];
    let mut depth = 0;
    for g in gates {
        let layer = 1 + g.sites.iter().map(|&s| level[s]).max().unwrap_or(0);
        for &s in &g.sites {
            level[s] = layer;
        }
        depth = depth.max(layer);
    }
    depth
}

/// Runs the circuit on `initial`, or on `|0…0⟩` when none is given.
pub fn simulate(c: &Circuit, initial: Option<&StateVector>) -> Result<StateVector> {
    let mut state = initial_state(c, initial)?;
    for g in &c.gates {
        apply_gate(&mut state, g)?;
    }
    Ok(state)
}

/// States after each entangling gate; trailing local gates add a final snapshot,
/// as does a circuit with no entangling gate at all.
pub fn simulate_with_snapshots(c: &Circuit, initial: Option<&StateVector>) -> Result<Vec<Snapshot>> {
    let mut state = initial_state(c, initial)?;
    let mut out = Vec::new();
    for (i, g) in c.gates.iter().enumerate() {
        apply_gate(&mut state, g)?;
        if g.kind.is_entangling() {
            out.push(Snapshot { step: i + 1, state: state.clone() });
        }
    }
    if out.last().map_or(true, |s| s.step != c.gates.len()) {
        out.push(Snapshot { step: c.gates.len(), state });
    }
    Ok(out)
}

fn initial_state(c: &Circuit, initial: Option<&StateVector>) -> Result<StateVector> {
    match initial {
        Some(s) if s.dims() != &c.dims => Err(Error::input(format!(
            "initial state dims {:?} differ from circuit dims {:?}",
            s.dims().as_slice(),
            c.dims.as_slice()
        ))),
        Some(s) => Ok(s.clone()),
        None => Ok(StateVector::zero(c.dims.clone())),
    }
}

fn apply_gate(state: &mut StateVector, g: &GateApplication) -> Result<()> {
    let site_dims: Vec<usize> = g.sites.iter().map(|&s| state.dims().dim(s)).collect();
    let u = gate_matrix(g.kind, &site_dims)?;
    state.apply_unitary_in_place(&u, &g.sites)
}

#[derive(Serialize, Deserialize)]
struct GateRecord {
    kind: String,
    #[serde(default)]
    params: Vec<f64>,
    sites: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CircuitRecord {
    dims: Vec<usize>,
    gates: Vec<GateRecord>,
}

impl TryFrom<CircuitRecord> for Circuit {
    type Error = Error;

    fn try_from(r: CircuitRecord) -> Result<Circuit> {
        let mut c = Circuit::new(SiteDims::new(r.dims)?);
        for g in r.gates {
            c.push(GateKind::from_tag(&g.kind, &g.params)?, &g.sites)?;
        }
        Ok(c)
    }
}

impl From<Circuit> for CircuitRecord {
    fn from(c: Circuit) -> Self {
        CircuitRecord {
            dims: c.dims.into(),
            gates: c
                .gates
                .into_iter()
                .map(|g| GateRecord { kind: g.kind.tag().to_string(), params: g.kind.params(), sites: g.sites })
                .collect(),
        }
    }
}
