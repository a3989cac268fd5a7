use num_complex::Complex64;

use super::dims::{check_sites, SiteDims};
use super::eigen::{clamp_spectrum, hermitian_eigenvalues};
use super::spectrum::Spectrum;
use super::state::StateVector;
use super::CMatrix;
use crate::error::{Error, Result};

/// Reduced state of a subset of sites.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dims: SiteDims,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Dimensions of the kept sites, in the order they were listed.
    pub fn dims(&self) -> &SiteDims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `‖ρ − I/D‖_max`.
    pub fn max_dev_from_maximally_mixed(&self) -> f64 {
        let n = self.dim();
        let level = 1.0 / n as f64;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { level } else { 0.0 };
                worst = worst.max((self.matrix[(i, j)] - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// `Tr_complement |ψ⟩⟨ψ|` on the listed sites.
pub fn partial_trace(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let m = reshape(state, keep)?;
    let matrix = &m * m.adjoint();
    Ok(DensityMatrix { dims: state.dims().select(keep)?, matrix })
}

/// Spectrum of the reduction to `keep`, padded with zeros to its full dimension.
///
/// The smaller of the two Gram matrices is diagonalized; for a pure state
/// both sides share their nonzero eigenvalues.
pub fn reduced_spectrum(state: &StateVector, keep: &[usize]) -> Result<Spectrum> {
    let m = reshape(state, keep)?;
    let gram = if m.nrows() <= m.ncols() { &m * m.adjoint() } else { m.adjoint() * &m };
    let mut eig = hermitian_eigenvalues(&gram)?;
    eig.resize(m.nrows(), 0.0);
    clamp_spectrum(eig)
}

// Amplitudes arranged as a (kept × traced) matrix.
fn reshape(state: &StateVector, keep: &[usize]) -> Result<CMatrix> {
    let dims = state.dims();
    check_sites(dims, keep)?;
    if keep.is_empty() || keep.len() == dims.len() {
        return Err(Error::input(format!(
            "kept sites must be a non-empty strict subset of {} sites",
            dims.len()
        )));
    }
    let rest: Vec<usize> = (0..dims.len()).filter(|s| !keep.contains(s)).collect();
    let keep_dims = dims.select(keep)?;
    let rest_dims = dims.select(&rest)?;
    let keep_strides = keep_dims.strides();
    let rest_strides = rest_dims.strides();

    let mut m = CMatrix::zeros(keep_dims.total(), rest_dims.total());
    for (index, &amp) in state.amplitudes().iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let digits = dims.digits_of(index);
        let row: usize = keep.iter().zip(&keep_strides).map(|(&s, &st)| digits[s] * st).sum();
        let col: usize = rest.iter().zip(&rest_strides).map(|(&s, &st)| digits[s] * st).sum();
        m[(row, col)] = amp;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigvals_hermitian;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell() -> StateVector {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        StateVector::from_amplitudes(SiteDims::qubits(2), vec![h, z, z, h]).unwrap()
    }

    #[test]
    fn bell_reduction_is_maximally_mixed() {
        let rho = partial_trace(&bell(), &[0]).unwrap();
        assert!(rho.max_dev_from_maximally_mixed() < 1e-15);
        assert!((rho.trace() - 1.0).abs() < 1e-15);
        let s = eigvals_hermitian(&rho).unwrap();
        assert!((s.values()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn product_state_gives_pure_projector() {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        // |0⟩ ⊗ |+⟩
        let s = StateVector::from_amplitudes(SiteDims::qubits(2), vec![h, h, z, z]).unwrap();
        let rho = partial_trace(&s, &[1]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((rho.matrix()[(i, j)].re - 0.5).abs() < 1e-15);
            }
        }
        let spec = reduced_spectrum(&s, &[1]).unwrap();
        assert!((spec.values()[0] - 1.0).abs() < 1e-12);
        assert!(spec.values()[1].abs() < 1e-12);
    }

    #[test]
    fn keep_order_permutes_the_reduced_basis() {
        let dims = SiteDims::new(vec![2, 3, 2]).unwrap();
        let s = crate::linalg::basis_state(&dims, &[1, 2, 0]).unwrap();
        let rho = partial_trace(&s, &[1, 0]).unwrap();
        assert_eq!(rho.dims().as_slice(), &[3, 2]);
        assert_eq!(rho.matrix()[(5, 5)].re, 1.0);
    }

    #[test]
    fn rejects_empty_and_full_keep() {
        assert!(matches!(partial_trace(&bell(), &[]), Err(Error::Input(_))));
        assert!(matches!(partial_trace(&bell(), &[0, 1]), Err(Error::Input(_))));
        assert!(matches!(partial_trace(&bell(), &[2]), Err(Error::Input(_))));
    }

    #[test]
    fn reduced_spectrum_pads_larger_side() {
        let dims = SiteDims::qubits(3);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0] = h;
        amps[7] = h;
        let ghz = StateVector::from_amplitudes(dims, amps).unwrap();
        let spec = reduced_spectrum(&ghz, &[0, 1]).unwrap();
        assert_eq!(spec.len(), 4);
        let direct = eigvals_hermitian(&partial_trace(&ghz, &[0, 1]).unwrap()).unwrap();
        for (a, b) in spec.values().iter().zip(direct.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
