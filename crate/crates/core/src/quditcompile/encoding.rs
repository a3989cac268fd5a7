use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{SiteDims, StateVector};

/// Binary encoding of one `d`-level qudit on `⌈log₂ d⌉` qubits, most significant bit first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub d: usize,
    pub m: usize,
}

impl Encoding {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::input(format!("qudit dimension {d} is below 2")));
        }
        let m = (usize::BITS - (d - 1).leading_zeros()) as usize;
        Ok(Encoding { d, m })
    }

    /// Qubit bits of level `k`, most significant first.
    pub fn encode(&self, k: usize) -> Vec<usize> {
        (0..self.m).rev().map(|b| (k >> b) & 1).collect()
    }

    /// Level of a bit pattern, `None` when the pattern lies outside the code.
    pub fn decode(&self, bits: &[usize]) -> Option<usize> {
        let k = bits.iter().fold(0, |acc, &b| (acc << 1) | b);
        (k < self.d).then_some(k)
    }
}

/// Placement of a qudit register on consecutive qubits; qudit `k` owns a
/// contiguous block, in site order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitLayout {
    qudits: SiteDims,
    encodings: Vec<Encoding>,
    offsets: Vec<usize>,
    qubits: usize,
}

impl QubitLayout {
    pub fn new(qudits: &SiteDims) -> Result<Self> {
        let encodings: Vec<Encoding> = qudits.as_slice().iter().map(|&d| Encoding::new(d)).collect::<Result<_>>()?;
        let mut offsets = Vec::with_capacity(encodings.len());
        let mut qubits = 0;
        for e in &encodings {
            offsets.push(qubits);
            qubits += e.m;
        }
        Ok(QubitLayout { qudits: qudits.clone(), encodings, offsets, qubits })
    }

    pub fn qudit_dims(&self) -> &SiteDims {
        &self.qudits
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn qubit_dims(&self) -> SiteDims {
        SiteDims::qubits(self.qubits)
    }

    /// Qubits of qudit `site`, most significant first.
    pub fn qubits_of(&self, site: usize) -> Vec<usize> {
        (self.offsets[site]..self.offsets[site] + self.encodings[site].m).collect()
    }

    /// Qubit groups, one per qudit, usable as a party grouping.
    pub fn parties(&self) -> Vec<Vec<usize>> {
        (0..self.encodings.len()).map(|s| self.qubits_of(s)).collect()
    }

    pub fn encode_index(&self, digits: &[usize]) -> Result<usize> {
        self.qudits.index_of(digits)?;
        let bits: Vec<usize> = digits
            .iter()
            .zip(&self.encodings)
            .flat_map(|(&k, e)| e.encode(k))
            .collect();
        self.qubit_dims().index_of(&bits)
    }

    pub fn encode_state(&self, state: &StateVector) -> Result<StateVector> {
        if state.dims() != &self.qudits {
            return Err(Error::input("state does not match the layout's qudit register"));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << self.qubits];
        for (i, &a) in state.amplitudes().iter().enumerate() {
            amps[self.encode_index(&self.qudits.digits_of(i))?] = a;
        }
        StateVector::from_amplitudes(self.qubit_dims(), amps)
    }

    /// Qudit state plus the probability weight found outside the code space.
    pub fn decode_state(&self, state: &StateVector) -> Result<(StateVector, f64)> {
        let qdims = self.qubit_dims();
        if state.dims() != &qdims {
            return Err(Error::input("state does not match the layout's qubit register"));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.qudits.total()];
        let mut leakage = 0.0;
        for (i, &a) in state.amplitudes().iter().enumerate() {
            let bits = qdims.digits_of(i);
            let digits: Option<Vec<usize>> = (0..self.encodings.len())
                .map(|s| {
                    let o = self.offsets[s];
                    self.encodings[s].decode(&bits[o..o + self.encodings[s].m])
                })
                .collect();
            match digits {
                Some(d) => amps[self.qudits.index_of(&d)?] = a,
                None => leakage += a.norm_sqr(),
            }
        }
        Ok((StateVector::from_amplitudes(self.qudits.clone(), amps)?, leakage))
    }
}
