use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Gate vocabulary. Qudit gates carry their local dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    H,
    X,
    Z,
    S,
    /// `exp(−iθY/2)`.
    Ry(f64),
    Cnot,
    Cz,
    /// `diag(1, 1, 1, e^{iθ})`.
    Cph(f64),
    Swap,
    /// Controlled Hadamard, control first.
    CtrlH,
    Ccnot,
    /// Toffoli with an extra sign on `|101⟩`.
    CcnotA,
    /// Toffoli with an extra sign on `|100⟩`.
    CcnotB,
    /// Fourier gate on a `d`-level site.
    Fd(usize),
    /// Generalized controlled-Z between two `d`-level sites.
    CzD(usize),
    /// Qutrit adder `|i⟩|j⟩ → |i⟩|i+j mod 3⟩`.
    C3Add,
}

impl GateKind {
    /// Interchange tag.
    pub fn tag(&self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::S => "S",
            GateKind::Ry(_) => "RY",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::Cph(_) => "CPH",
            GateKind::Swap => "SWAP",
            GateKind::CtrlH => "CTRL_H",
            GateKind::Ccnot => "CCNOT",
            GateKind::CcnotA => "CCNOT_A",
            GateKind::CcnotB => "CCNOT_B",
            GateKind::Fd(_) => "F_D",
            GateKind::CzD(_) => "CZ_D",
            GateKind::C3Add => "C3ADD",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            GateKind::Ry(t) | GateKind::Cph(t) => vec![t],
            GateKind::Fd(d) | GateKind::CzD(d) => vec![d as f64],
            _ => Vec::new(),
        }
    }

    pub fn from_tag(tag: &str, params: &[f64]) -> Result<GateKind> {
        let angle = || -> Result<f64> {
            match params {
                [t] if t.is_finite() => Ok(*t),
                _ => Err(Error::input(format!("{tag} takes one finite angle, got {params:?}"))),
            }
        };
        let level = || -> Result<usize> {
            match params {
                [d] if d.fract() == 0.0 && *d >= 2.0 && *d <= 1e6 => Ok(*d as usize),
                _ => Err(Error::input(format!("{tag} takes one integer dimension >= 2, got {params:?}"))),
            }
        };
        let plain = |kind: GateKind| -> Result<GateKind> {
            if params.is_empty() {
                Ok(kind)
            } else {
                Err(Error::input(format!("{tag} takes no parameters")))
            }
        };
        match tag {
            "H" => plain(GateKind::H),
            "X" => plain(GateKind::X),
            "Z" => plain(GateKind::Z),
            "S" => plain(GateKind::S),
            "RY" => Ok(GateKind::Ry(angle()?)),
            "CNOT" => plain(GateKind::Cnot),
            "CZ" => plain(GateKind::Cz),
            "CPH" => Ok(GateKind::Cph(angle()?)),
            "SWAP" => plain(GateKind::Swap),
            "CTRL_H" => plain(GateKind::CtrlH),
            "CCNOT" => plain(GateKind::Ccnot),
            "CCNOT_A" => plain(GateKind::CcnotA),
            "CCNOT_B" => plain(GateKind::CcnotB),
            "F_D" => Ok(GateKind::Fd(level()?)),
            "CZ_D" => Ok(GateKind::CzD(level()?)),
            "C3ADD" => plain(GateKind::C3Add),
            other => Err(Error::input(format!("unknown gate kind '{other}'"))),
        }
    }

    /// Number of sites acted on.
    pub fn arity(&self) -> usize {
        match self {
            GateKind::H | GateKind::X | GateKind::Z | GateKind::S | GateKind::Ry(_) | GateKind::Fd(_) => 1,
            GateKind::Ccnot | GateKind::CcnotA | GateKind::CcnotB => 3,
            _ => 2,
        }
    }

    /// Local dimension each site must have.
    pub fn site_dim(&self) -> usize {
        match *self {
            GateKind::Fd(d) | GateKind::CzD(d) => d,
            GateKind::C3Add => 3,
            _ => 2,
        }
    }

    pub fn is_entangling(&self) -> bool {
        self.arity() >= 2
    }

    pub(crate) fn check_dims(&self, dims: &[usize]) -> Result<()> {
        if dims.len() != self.arity() {
            return Err(Error::input(format!(
                "{} acts on {} sites, got {}",
                self.tag(),
                self.arity(),
                dims.len()
            )));
        }
        if let Some(&bad) = dims.iter().find(|&&d| d != self.site_dim()) {
            return Err(Error::input(format!(
                "{} needs sites of dimension {}, got {bad}",
                self.tag(),
                self.site_dim()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.params().as_slice() {
            [] => write!(f, "{}", self.tag()),
            [p] => write!(f, "{}({p})", self.tag()),
            _ => unreachable!(),
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn diagonal(entries: &[Complex64]) -> CMatrix {
    let mut m = CMatrix::zeros(entries.len(), entries.len());
    for (i, &e) in entries.iter().enumerate() {
        m[(i, i)] = e;
    }
    m
}

fn permutation(image: impl Fn(usize) -> usize, n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for col in 0..n {
        m[(image(col), col)] = c(1.0);
    }
    m
}

fn hadamard() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)])
}

fn omega(d: usize, power: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (power % d) as f64 / d as f64)
}

/// Unitary of `kind` on sites of the given dimensions, first site most significant.
pub fn gate_matrix(kind: GateKind, dims: &[usize]) -> Result<CMatrix> {
    kind.check_dims(dims)?;
    let m = match kind {
        GateKind::H => hadamard(),
        GateKind::X => permutation(|i| 1 - i, 2),
        GateKind::Z => diagonal(&[c(1.0), c(-1.0)]),
        GateKind::S => diagonal(&[c(1.0), Complex64::i()]),
        GateKind::Ry(t) => {
            let (s, co) = (t / 2.0).sin_cos();
            CMatrix::from_row_slice(2, 2, &[c(co), c(-s), c(s), c(co)])
        }
        GateKind::Cnot => permutation(|i| if i >= 2 { i ^ 1 } else { i }, 4),
        GateKind::Cz => diagonal(&[c(1.0), c(1.0), c(1.0), c(-1.0)]),
        GateKind::Cph(t) => diagonal(&[c(1.0), c(1.0), c(1.0), Complex64::from_polar(1.0, t)]),
        GateKind::Swap => permutation(|i| ((i & 1) << 1) | (i >> 1), 4),
        GateKind::CtrlH => {
            let mut m = CMatrix::identity(4, 4);
            m.view_mut((2, 2), (2, 2)).copy_from(&hadamard());
            m
        }
        GateKind::Ccnot | GateKind::CcnotA | GateKind::CcnotB => {
            let mut m = permutation(|i| if i >= 6 { i ^ 1 } else { i }, 8);
            match kind {
                GateKind::CcnotA => m[(5, 5)] = c(-1.0),
                GateKind::CcnotB => m[(4, 4)] = c(-1.0),
                _ => {}
            }
            m
        }
        GateKind::Fd(d) => {
            let norm = 1.0 / (d as f64).sqrt();
            CMatrix::from_fn(d, d, |k, l| omega(d, k * l) * norm)
        }
        GateKind::CzD(d) => {
            let entries: Vec<Complex64> = (0..d * d).map(|i| omega(d, (i / d) * (i % d))).collect();
            diagonal(&entries)
        }
        GateKind::C3Add => permutation(|idx| {
            let (i, j) = (idx / 3, idx % 3);
            i * 3 + (i + j) % 3
        }, 9),
    };
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitarity_deviation;

    fn all_kinds() -> Vec<(GateKind, Vec<usize>)> {
        let mut v: Vec<(GateKind, Vec<usize>)> = vec![
            (GateKind::H, vec![2]),
            (GateKind::X, vec![2]),
            (GateKind::Z, vec![2]),
            (GateKind::S, vec![2]),
            (GateKind::Ry(0.37), vec![2]),
            (GateKind::Cnot, vec![2, 2]),
            (GateKind::Cz, vec![2, 2]),
            (GateKind::Cph(1.1), vec![2, 2]),
            (GateKind::Swap, vec![2, 2]),
            (GateKind::CtrlH, vec![2, 2]),
            (GateKind::Ccnot, vec![2, 2, 2]),
            (GateKind::CcnotA, vec![2, 2, 2]),
            (GateKind::CcnotB, vec![2, 2, 2]),
            (GateKind::C3Add, vec![3, 3]),
        ];
        for d in 2..=6 {
            v.push((GateKind::Fd(d), vec![d]));
            v.push((GateKind::CzD(d), vec![d, d]));
        }
        v
    }

    #[test]
    fn every_gate_is_unitary() {
        for (kind, dims) in all_kinds() {
            let m = gate_matrix(kind, &dims).unwrap();
            assert!(unitarity_deviation(&m) < 1e-12, "{kind}");
        }
    }

    #[test]
    fn tags_round_trip() {
        for (kind, _) in all_kinds() {
            assert_eq!(GateKind::from_tag(kind.tag(), &kind.params()).unwrap(), kind);
        }
        assert!(GateKind::from_tag("FOO", &[]).is_err());
        assert!(GateKind::from_tag("RY", &[]).is_err());
        assert!(GateKind::from_tag("F_D", &[2.5]).is_err());
    }

    #[test]
    fn cz_entries() {
        let cz = gate_matrix(GateKind::CzD(2), &[2, 2]).unwrap();
        let expect = [1.0, 1.0, 1.0, -1.0];
        for (i, e) in expect.iter().enumerate() {
            assert!((cz[(i, i)] - c(*e)).norm() < 1e-15);
        }
        let cz3 = gate_matrix(GateKind::CzD(3), &[3, 3]).unwrap();
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!((cz3[(8, 8)] - w).norm() < 1e-15);
    }

    #[test]
    fn c3add_truth_map() {
        let m = gate_matrix(GateKind::C3Add, &[3, 3]).unwrap();
        // |1⟩|1⟩ → |1⟩|2⟩
        assert_eq!(m[(5, 4)], c(1.0));
        // |2⟩|2⟩ → |2⟩|1⟩
        assert_eq!(m[(7, 8)], c(1.0));
    }

    #[test]
    fn approximate_toffoli_signs() {
        let exact = gate_matrix(GateKind::Ccnot, &[2, 2, 2]).unwrap();
        let a = gate_matrix(GateKind::CcnotA, &[2, 2, 2]).unwrap();
        let b = gate_matrix(GateKind::CcnotB, &[2, 2, 2]).unwrap();
        for col in 0..8 {
            for row in 0..8 {
                let sa = if col == 5 { -1.0 } else { 1.0 };
                let sb = if col == 4 { -1.0 } else { 1.0 };
                assert_eq!(a[(row, col)], exact[(row, col)] * sa);
                assert_eq!(b[(row, col)], exact[(row, col)] * sb);
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert!(gate_matrix(GateKind::H, &[3]).is_err());
        assert!(gate_matrix(GateKind::CzD(3), &[3, 2]).is_err());
        assert!(gate_matrix(GateKind::Cnot, &[2]).is_err());
    }
}
