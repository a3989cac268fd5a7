//! Dense complex linear algebra for small mixed-radix registers.

mod density;
mod dims;
mod eigen;
mod spectrum;
mod state;

pub use density::{partial_trace, reduced_spectrum, DensityMatrix};
pub use dims::SiteDims;
pub(crate) use dims::check_sites;
pub use eigen::{eigvals_hermitian, hermitian_eigenvalues};
pub use spectrum::{purity, von_neumann_entropy, Spectrum};
pub use state::{basis_state, max_diff_up_to_phase, overlap, unitarity_deviation, StateVector};

/// Dense complex matrix used for gates and density matrices.
pub type CMatrix = nalgebra::DMatrix<num_complex::Complex64>;

/// Maximum entry of `u†u − I` accepted as unitary.
pub const UNITARY_TOL: f64 = 1e-10;
/// Maximum entry of `m − m†` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues outside `[0, 1]` by at most this much are clamped.
pub const CLAMP_TOL: f64 = 1e-9;
