//! Dense complex-matrix foundation for small spin-1/2 chains.
//!
//! Pauli operators, tensor products, Hermitian eigendecomposition and
//! matrix exponentials, all on dense `2^N x 2^N` matrices. The basis is
//! the computational basis `|s1 s2 .. sN>` with spin 1 as the most
//! significant bit, `|up> = |0>` first, and `sigma_z |up> = +|up>`.
//!
//! Sites are numbered `1..=N` throughout the crate.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = DVector<C64>;

/// Hard cap on chain length; dense matrices above 2^12 are out of budget.
pub const MAX_SPINS: usize = 12;

/// Tolerance for Hermiticity checks, relative to the largest entry.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Single-spin Pauli operators (plus the identity).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// The 2x2 matrix of this operator.
    pub fn matrix(self) -> CMatrix {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match self {
            Pauli::I => CMatrix::from_row_slice(2, 2, &[l, o, o, l]),
            Pauli::X => CMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            Pauli::Y => CMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            Pauli::Z => CMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }
}

fn check_spin_budget(n_spins: usize) -> Result<()> {
    if n_spins == 0 {
        return Err(Error::InvalidParams {
            reason: "need at least one spin".into(),
        });
    }
    if n_spins > MAX_SPINS {
        return Err(Error::TooManySpins {
            n_spins,
            max: MAX_SPINS,
        });
    }
    Ok(())
}

/// Identity on `n_spins` spins.
pub fn identity(n_spins: usize) -> CMatrix {
    let dim = 1usize << n_spins;
    CMatrix::identity(dim, dim)
}

/// Embed a single-spin Pauli at `site` (1-based) into the `n_spins` chain:
/// `I (x) .. (x) sigma (x) .. (x) I`.
pub fn pauli_on_site(which: Pauli, site: usize, n_spins: usize) -> Result<CMatrix> {
    check_spin_budget(n_spins)?;
    if site == 0 || site > n_spins {
        return Err(Error::SiteOutOfRange { site, n_spins });
    }
    let mut result = CMatrix::identity(1, 1);
    for s in 1..=n_spins {
        let factor = if s == site { which } else { Pauli::I };
        result = result.kronecker(&factor.matrix());
    }
    Ok(result)
}

/// Product of single-site Paulis, e.g. `sigma_z^1 sigma_z^2` for a coupling
/// term. Sites must be distinct.
pub fn pauli_string(ops: &[(Pauli, usize)], n_spins: usize) -> Result<CMatrix> {
    check_spin_budget(n_spins)?;
    let mut per_site = vec![Pauli::I; n_spins + 1];
    for &(p, site) in ops {
        if site == 0 || site > n_spins {
            return Err(Error::SiteOutOfRange { site, n_spins });
        }
        per_site[site] = p;
    }
    let mut result = CMatrix::identity(1, 1);
    for p in &per_site[1..] {
        result = result.kronecker(&p.matrix());
    }
    Ok(result)
}

/// Max-norm of `A - A^dag`.
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    let mut defect = 0.0f64;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            defect = defect.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    defect
}

/// Max-norm of `U^dag U - I`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let dim = u.nrows();
    let prod = u.adjoint() * u;
    max_abs_diff(&prod, &CMatrix::identity(dim, dim))
}

/// Largest entry-wise absolute difference between two matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    let mut d = 0.0f64;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            d = d.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    d
}

/// Frobenius norm of `A - B`.
pub fn frobenius_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

/// Process fidelity between two unitaries, insensitive to global phase:
/// `|tr(U^dag V)| / dim`.
pub fn process_fidelity(u: &CMatrix, v: &CMatrix) -> f64 {
    let dim = u.nrows() as f64;
    (u.adjoint() * v).trace().norm() / dim
}

fn require_hermitian(a: &CMatrix) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: a.ncols(),
        });
    }
    let scale = a.iter().fold(1.0f64, |acc, z| acc.max(z.norm()));
    let defect = hermiticity_defect(a);
    if defect > HERMITICITY_TOL * scale {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix: ascending eigenvalues with
/// orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors, column `k` belonging to `eigenvalues[k]`.
    pub eigenvectors: CMatrix,
}

impl EigenSystem {
    /// Eigenvector `k` as an owned column.
    pub fn eigenvector(&self, k: usize) -> CVector {
        self.eigenvectors.column(k).into_owned()
    }

    /// Reassemble `V diag(lambda) V^dag`.
    pub fn reconstruct(&self) -> CMatrix {
        let dim = self.eigenvalues.len();
        let diag = CMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                C64::new(self.eigenvalues[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        &self.eigenvectors * diag * self.eigenvectors.adjoint()
    }
}

/// Diagonalize a Hermitian matrix.
///
/// Exactly diagonal inputs short-circuit to a sort of the diagonal, so
/// eigenvectors of e.g. pure-z Hamiltonians come out as exact basis
/// vectors even in degenerate subspaces.
pub fn hermitian_eigensystem(a: &CMatrix) -> Result<EigenSystem> {
    require_hermitian(a)?;
    let dim = a.nrows();

    let off_diag_max = {
        let mut m = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    m = m.max(a[(i, j)].norm());
                }
            }
        }
        m
    };
    if off_diag_max == 0.0 {
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
        let mut eigenvectors = CMatrix::zeros(dim, dim);
        for (col, &basis) in order.iter().enumerate() {
            eigenvectors[(basis, col)] = C64::new(1.0, 0.0);
        }
        return Ok(EigenSystem {
            eigenvalues,
            eigenvectors,
        });
    }

    let eig = a.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut eigenvectors = CMatrix::zeros(dim, dim);
    for (col, &src) in order.iter().enumerate() {
        eigenvectors.column_mut(col).copy_from(&eig.eigenvectors.column(src));
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Unitary `exp(-i A t)` of a Hermitian matrix `A`, via eigendecomposition.
pub fn unitary_exp(a: &CMatrix, t: f64) -> Result<CMatrix> {
    let eig = hermitian_eigensystem(a)?;
    let dim = eig.eigenvalues.len();
    let phases = CMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            let phi = -eig.eigenvalues[i] * t;
            C64::new(phi.cos(), phi.sin())
        } else {
            C64::new(0.0, 0.0)
        }
    });
    Ok(&eig.eigenvectors * phases * eig.eigenvectors.adjoint())
}
