use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, overlap, CMatrix, StateVector};

const PARTIES: usize = 5;

/// Sign of a term with `primes` primed observers: `−` for 0 and 4, `+` for 2.
fn term_sign(primes: u32) -> Option<f64> {
    match primes {
        0 | 4 => Some(-1.0),
        2 => Some(1.0),
        _ => None,
    }
}

/// The 16 signed terms, as bitmasks of primed observers (bit `j` = observer `j`).
pub fn mermin_terms() -> Vec<(u32, f64)> {
    (0u32..1 << PARTIES)
        .filter_map(|mask| term_sign(mask.count_ones()).map(|s| (mask, s)))
        .collect()
}

/// Per-observer dichotomic observables `(a_j, a'_j)`.
#[derive(Clone, Debug)]
pub struct MerminSettings {
    pairs: Vec<(CMatrix, CMatrix)>,
}

impl MerminSettings {
    /// Validates that every observable is a Hermitian 2×2 matrix with eigenvalues ±1.
    pub fn new(pairs: Vec<(CMatrix, CMatrix)>) -> Result<Self> {
        if pairs.len() != PARTIES {
            return Err(Error::input(format!("need {PARTIES} observer pairs, got {}", pairs.len())));
        }
        for m in pairs.iter().flat_map(|(a, b)| [a, b]) {
            if m.nrows() != 2 || m.ncols() != 2 {
                return Err(Error::input("observables must be 2x2"));
            }
            let eig = hermitian_eigenvalues(m)?;
            if (eig[0] - 1.0).abs() > 1e-10 || (eig[1] + 1.0).abs() > 1e-10 {
                return Err(Error::validation(format!("observable spectrum {eig:?} is not {{+1, -1}}")));
            }
        }
        Ok(MerminSettings { pairs })
    }

    /// `a_j = σx`, `a'_j = σy` for every observer.
    pub fn xy() -> Self {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        let sx = CMatrix::from_row_slice(2, 2, &[o, one, one, o]);
        let sy = CMatrix::from_row_slice(2, 2, &[o, -i, i, o]);
        MerminSettings { pairs: vec![(sx, sy); PARTIES] }
    }

    /// Settings with observers reordered: observer `j` gets the pair of `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        MerminSettings { pairs: perm.iter().map(|&p| self.pairs[p].clone()).collect() }
    }
}

/// `⟨ψ|M5|ψ⟩` on a five-qubit state.
pub fn mermin_m5(state: &StateVector, settings: &MerminSettings) -> Result<f64> {
    if state.dims().as_slice() != [2; PARTIES] {
        return Err(Error::input(format!(
            "Mermin operator needs {PARTIES} qubits, got dims {:?}",
            state.dims().as_slice()
        )));
    }
    let mut total = 0.0;
    for (mask, sign) in mermin_terms() {
        let mut phi = state.clone();
        for (j, (a, a_prime)) in settings.pairs.iter().enumerate() {
            let op = if mask >> j & 1 == 1 { a_prime } else { a };
            phi.apply_unitary_in_place(op, &[j])?;
        }
        total += sign * overlap(state, &phi)?.re;
    }
    Ok(total)
}

/// `M5` for a deterministic local strategy with outcomes `a[j], a_prime[j] ∈ {±1}`.
pub fn mermin_deterministic(a: [i8; PARTIES], a_prime: [i8; PARTIES]) -> f64 {
    mermin_terms()
        .into_iter()
        .map(|(mask, sign)| {
            let product: i32 = (0..PARTIES)
                .map(|j| i32::from(if mask >> j & 1 == 1 { a_prime[j] } else { a[j] }))
                .product();
            sign * f64::from(product)
        })
        .sum()
}

/// Largest `|M5|` over all 1024 deterministic strategies.
pub fn mermin_classical_max() -> f64 {
    (0u32..1 << (2 * PARTIES))
        .map(|bits| {
            let pick = |k: usize| if bits >> k & 1 == 1 { -1 } else { 1 };
            let a = std::array::from_fn(pick);
            let a_prime = std::array::from_fn(|j| pick(j + PARTIES));
            mermin_deterministic(a, a_prime).abs()
        })
        .fold(0.0, f64::max)
}
