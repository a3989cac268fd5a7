use num_complex::Complex64;

use super::dims::{check_sites, SiteDims};
use super::{CMatrix, UNITARY_TOL};
use crate::error::{Error, Result};

/// Pure state of a mixed-radix register.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    dims: SiteDims,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn from_amplitudes(dims: SiteDims, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(Error::input(format!(
                "{} amplitudes for a register of dimension {}",
                amps.len(),
                dims.total()
            )));
        }
        Ok(StateVector { dims, amps })
    }

    /// Like [`from_amplitudes`](Self::from_amplitudes) but rescales to unit norm.
    pub fn normalized(dims: SiteDims, mut amps: Vec<Complex64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::input("cannot normalize the zero vector"));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(dims, amps)
    }

    pub fn zero(dims: SiteDims) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { dims, amps }
    }

    pub fn dims(&self) -> &SiteDims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, digits: &[usize]) -> Result<Complex64> {
        Ok(self.amps[self.dims.index_of(digits)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Returns `u` applied to `sites`, identity elsewhere.
    pub fn apply_unitary(&self, u: &CMatrix, sites: &[usize]) -> Result<StateVector> {
        let mut out = self.clone();
        out.apply_unitary_in_place(u, sites)?;
        Ok(out)
    }

    pub fn apply_unitary_in_place(&mut self, u: &CMatrix, sites: &[usize]) -> Result<()> {
        check_operator_shape(&self.dims, u, sites)?;
        let dev = unitarity_deviation(u);
        if dev > UNITARY_TOL {
            return Err(Error::validation(format!("matrix is not unitary (deviation {dev:.3e})")));
        }
        apply_operator(&self.dims, &mut self.amps, u, sites);
        Ok(())
    }

    /// Reorders sites: site `k` of the result is site `perm[k]` of `self`.
    pub fn permute_sites(&self, perm: &[usize]) -> Result<StateVector> {
        if perm.len() != self.dims.len() {
            return Err(Error::input("permutation length differs from site count"));
        }
        check_sites(&self.dims, perm)?;
        let new_dims = self.dims.select(perm)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (old_index, &a) in self.amps.iter().enumerate() {
            let digits = self.dims.digits_of(old_index);
            let new_digits: Vec<usize> = perm.iter().map(|&p| digits[p]).collect();
            amps[new_dims.index_of(&new_digits)?] = a;
        }
        StateVector::from_amplitudes(new_dims, amps)
    }
}

/// `⟨a|b⟩`.
pub fn overlap(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.dims != b.dims {
        return Err(Error::input(format!(
            "dimension mismatch: {:?} vs {:?}",
            a.dims.as_slice(),
            b.dims.as_slice()
        )));
    }
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

/// Largest amplitude difference after removing the best global phase.
pub fn max_diff_up_to_phase(a: &StateVector, b: &StateVector) -> Result<f64> {
    let ov = overlap(a, b)?;
    let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { Complex64::new(1.0, 0.0) };
    // b ≈ phase * a
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| (x * phase - y).norm())
        .fold(0.0, f64::max))
}

/// Computational basis state `|digits⟩`.
pub fn basis_state(dims: &SiteDims, digits: &[usize]) -> Result<StateVector> {
    let index = dims.index_of(digits)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
    amps[index] = Complex64::new(1.0, 0.0);
    StateVector::from_amplitudes(dims.clone(), amps)
}

/// `‖u†u − I‖_max`.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    let n = u.nrows();
    if u.ncols() != n {
        return f64::INFINITY;
    }
    let prod = u.adjoint() * u;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

fn check_operator_shape(dims: &SiteDims, op: &CMatrix, sites: &[usize]) -> Result<()> {
    check_sites(dims, sites)?;
    let k: usize = sites.iter().map(|&s| dims.dim(s)).product();
    if op.nrows() != k || op.ncols() != k {
        return Err(Error::input(format!(
            "operator is {}x{} but sites {:?} span dimension {k}",
            op.nrows(),
            op.ncols(),
            sites
        )));
    }
    Ok(())
}

// Strided kernel: for every assignment of the untouched sites, gather the
// k amplitudes addressed by the listed sites, multiply, scatter back.
fn apply_operator(dims: &SiteDims, amps: &mut [Complex64], op: &CMatrix, sites: &[usize]) {
    let strides = dims.strides();
    let sub_dims: Vec<usize> = sites.iter().map(|&s| dims.dim(s)).collect();
    let k: usize = sub_dims.iter().product();

    let mut offsets = vec![0usize; k];
    for (local, offset) in offsets.iter_mut().enumerate() {
        let mut rem = local;
        for (pos, &s) in sites.iter().enumerate().rev() {
            let d = sub_dims[pos];
            *offset += (rem % d) * strides[s];
            rem /= d;
        }
    }

    let mut gathered = vec![Complex64::new(0.0, 0.0); k];
    for base in 0..amps.len() {
        if sites.iter().any(|&s| (base / strides[s]) % dims.dim(s) != 0) {
            continue;
        }
        for (g, &off) in gathered.iter_mut().zip(&offsets) {
            *g = amps[base + off];
        }
        for (row, &off) in offsets.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (col, g) in gathered.iter().enumerate() {
                acc += op[(row, col)] * g;
            }
            amps[base + off] = acc;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn hadamard() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)])
    }

    #[test]
    fn basis_state_indexing() {
        let s = basis_state(&SiteDims::qubits(2), &[0, 0]).unwrap();
        assert_eq!(s.amplitudes()[0], c(1.0));
        let s = basis_state(&SiteDims::uniform(2, 3).unwrap(), &[1, 2]).unwrap();
        assert_eq!(s.amplitudes()[5], c(1.0));
        let s = basis_state(&SiteDims::new(vec![2, 3]).unwrap(), &[1, 0]).unwrap();
        assert_eq!(s.amplitudes()[3], c(1.0));
        assert!(basis_state(&SiteDims::qubits(2), &[0, 2]).is_err());
    }

    #[test]
    fn hadamard_and_cz() {
        let zero = StateVector::zero(SiteDims::qubits(1));
        let plus = zero.apply_unitary(&hadamard(), &[0]).unwrap();
        assert!((plus.amplitudes()[0] - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((plus.amplitudes()[1] - c(FRAC_1_SQRT_2)).norm() < 1e-15);

        let cz = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(1.0), c(1.0), c(-1.0)]));
        let s = basis_state(&SiteDims::qubits(2), &[1, 1]).unwrap();
        let out = s.apply_unitary(&cz, &[0, 1]).unwrap();
        assert_eq!(out.amplitudes()[3], c(-1.0));
    }

    #[test]
    fn site_order_is_respected() {
        // X on site 2 of |000⟩ gives |001⟩; CNOT listed (2,0) uses site 2 as control
        let x = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let s = StateVector::zero(SiteDims::qubits(3)).apply_unitary(&x, &[2]).unwrap();
        assert_eq!(s.amplitude(&[0, 0, 1]).unwrap(), c(1.0));
        let mut cnot = CMatrix::zeros(4, 4);
        for (r, col) in [(0, 0), (1, 1), (3, 2), (2, 3)] {
            cnot[(r, col)] = c(1.0);
        }
        let t = s.apply_unitary(&cnot, &[2, 0]).unwrap();
        assert_eq!(t.amplitude(&[1, 0, 1]).unwrap(), c(1.0));
    }

    #[test]
    fn rejects_non_unitary_and_repeated_sites() {
        let s = StateVector::zero(SiteDims::qubits(2));
        let bad = CMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(0.0), c(1.0)]);
        assert!(matches!(s.apply_unitary(&bad, &[0]), Err(Error::Validation(_))));
        let id4 = CMatrix::identity(4, 4);
        assert!(matches!(s.apply_unitary(&id4, &[1, 1]), Err(Error::Input(_))));
        assert!(matches!(s.apply_unitary(&id4, &[0]), Err(Error::Input(_))));
    }

    #[test]
    fn overlap_cases() {
        let dims = SiteDims::qubits(2);
        let a = basis_state(&dims, &[0, 1]).unwrap();
        let b = basis_state(&dims, &[1, 0]).unwrap();
        assert_eq!(overlap(&a, &a).unwrap(), c(1.0));
        assert_eq!(overlap(&a, &b).unwrap(), c(0.0));
        let phase = Complex64::from_polar(1.0, 0.7);
        let rotated = StateVector::from_amplitudes(dims.clone(), a.amplitudes().iter().map(|x| x * phase).collect()).unwrap();
        let ov = overlap(&rotated, &a).unwrap();
        assert!((ov.norm() - 1.0).abs() < 1e-15);
        assert!((ov - phase.conj()).norm() < 1e-15);
        assert!(max_diff_up_to_phase(&a, &rotated).unwrap() < 1e-15);
        let other = basis_state(&SiteDims::qubits(3), &[0, 0, 0]).unwrap();
        assert!(overlap(&a, &other).is_err());
    }

    #[test]
    fn permute_sites_moves_digits() {
        let dims = SiteDims::new(vec![2, 3]).unwrap();
        let s = basis_state(&dims, &[1, 2]).unwrap();
        let p = s.permute_sites(&[1, 0]).unwrap();
        assert_eq!(p.dims().as_slice(), &[3, 2]);
        assert_eq!(p.amplitude(&[2, 1]).unwrap(), c(1.0));
    }
}
