//! Pure and mixed quantum states of N spins.
//!
//! `StateVector` enforces unit norm; `DensityMatrix` enforces Hermiticity,
//! unit trace and positive semidefiniteness at construction. States built
//! internally by unitary evolution or valid channels skip re-validation.


use crate::algebra::{hermitian_eigensystem, C64, CMatrix, CVector};
use crate::error::{Error, Result};

/// Spin orientation along z; `Up` is the first basis state (`|0>`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

fn n_spins_of_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { dim });
    }
    Ok(dim.trailing_zeros() as usize)
}

/// A normalized pure state of N spins.
#[derive(Debug, Clone)]
pub struct StateVector {
    amps: CVector,
    n_spins: usize,
}

impl StateVector {
    /// Wrap an amplitude vector; the norm must already equal 1 within 1e-10.
    pub fn new(amps: CVector) -> Result<Self> {
        let n_spins = n_spins_of_dim(amps.len())?;
        let norm = amps.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amps, n_spins })
    }

    /// Normalize an arbitrary nonzero amplitude vector.
    pub fn normalized(amps: CVector) -> Result<Self> {
        let n_spins = n_spins_of_dim(amps.len())?;
        let norm = amps.norm();
        if norm <= 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            amps: amps / C64::new(norm, 0.0),
            n_spins,
        })
    }

    /// Computational basis state with the given index.
    pub fn basis(n_spins: usize, index: usize) -> Self {
        let dim = 1usize << n_spins;
        assert!(index < dim, "basis index {index} out of range");
        let mut amps = CVector::zeros(dim);
        amps[index] = C64::new(1.0, 0.0);
        Self { amps, n_spins }
    }

    /// Product basis state from per-site spins, site 1 first.
    pub fn product_basis(spins: &[Spin]) -> Self {
        let n = spins.len();
        let mut index = 0usize;
        for &s in spins {
            index = (index << 1) | usize::from(s == Spin::Down);
        }
        Self::basis(n, index)
    }

    /// `(|up..up> + sign |down..down>)/sqrt(2)`.
    pub fn ghz(n_spins: usize, sign: f64) -> Self {
        let dim = 1usize << n_spins;
        let mut amps = CVector::zeros(dim);
        let r = C64::new(1.0 / 2f64.sqrt(), 0.0);
        amps[0] = r;
        amps[dim - 1] = r * C64::new(sign.signum(), 0.0);
        Self { amps, n_spins }
    }

    /// Equal superposition of all single-`flipped` configurations, the rest
    /// of the spins pointing the other way. `w_single_flip(3, Down)` is
    /// `(|duu> + |udu> + |uud>)/sqrt(3)`.
    pub fn w_single_flip(n_spins: usize, flipped: Spin) -> Self {
        let dim = 1usize << n_spins;
        let mut amps = CVector::zeros(dim);
        let r = C64::new(1.0 / (n_spins as f64).sqrt(), 0.0);
        for site in 0..n_spins {
            let bit = 1usize << (n_spins - 1 - site);
            let index = match flipped {
                Spin::Down => bit,
                Spin::Up => (dim - 1) ^ bit,
            };
            amps[index] = r;
        }
        Self { amps, n_spins }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps.dotc(&other.amps)
    }

    /// Overlap probability `|<self|other>|^2`.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Apply a unitary; the caller guarantees unitarity.
    pub fn evolved(&self, u: &CMatrix) -> StateVector {
        StateVector {
            amps: u * &self.amps,
            n_spins: self.n_spins,
        }
    }

    /// Rotate every spin by the Hadamard gate (z basis <-> x basis).
    pub fn hadamard_all(&self) -> StateVector {
        let r = 1.0 / 2f64.sqrt();
        let h = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(r, 0.0),
                C64::new(r, 0.0),
                C64::new(r, 0.0),
                C64::new(-r, 0.0),
            ],
        );
        let mut full = CMatrix::identity(1, 1);
        for _ in 0..self.n_spins {
            full = full.kronecker(&h);
        }
        self.evolved(&full)
    }
}

/// A valid density operator of N spins.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: CMatrix,
    n_spins: usize,
}

impl DensityMatrix {
    /// Validate and wrap a matrix: Hermitian within 1e-12, unit trace
    /// within 1e-10, eigenvalues >= -1e-10.
    pub fn new(mat: CMatrix) -> Result<Self> {
        let n_spins = n_spins_of_dim(mat.nrows())?;
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch {
                expected: mat.nrows(),
                got: mat.ncols(),
            });
        }
        let rho = Self { mat, n_spins };
        rho.validate()?;
        Ok(rho)
    }

    /// Re-check the density-matrix invariants.
    pub fn validate(&self) -> Result<()> {
        let defect = crate::algebra::hermiticity_defect(&self.mat);
        if defect > 1e-12 * self.scale() {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("Hermiticity defect {defect:.3e}"),
            });
        }
        let tr = self.mat.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("trace {tr} deviates from 1"),
            });
        }
        let eig = hermitian_eigensystem(&self.mat)?;
        if eig.eigenvalues[0] < -1e-10 {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("negative eigenvalue {:.3e}", eig.eigenvalues[0]),
            });
        }
        Ok(())
    }

    fn scale(&self) -> f64 {
        self.mat.iter().fold(1.0f64, |acc, z| acc.max(z.norm()))
    }

    /// Pure-state density matrix `|psi><psi|`.
    pub fn from_pure(psi: &StateVector) -> Self {
        let dim = psi.dim();
        let amps = psi.amplitudes();
        let mat = CMatrix::from_fn(dim, dim, |i, j| amps[i] * amps[j].conj());
        Self {
            mat,
            n_spins: psi.n_spins(),
        }
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n_spins: usize) -> Self {
        let dim = 1usize << n_spins;
        let mat = CMatrix::identity(dim, dim) * C64::new(1.0 / dim as f64, 0.0);
        Self { mat, n_spins }
    }

    /// Wrap without validation; for internal constructions that preserve
    /// validity (unitary evolution, trace-preserving channels).
    pub(crate) fn from_matrix_unchecked(mat: CMatrix) -> Self {
        let n_spins = mat.nrows().trailing_zeros() as usize;
        Self { mat, n_spins }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    /// `tr(rho^2)`, real part.
    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }

    /// `tr(rho A)`.
    pub fn expectation(&self, op: &CMatrix) -> C64 {
        (&self.mat * op).trace()
    }

    /// `<psi| rho |psi>`, real part.
    pub fn matrix_element(&self, psi: &StateVector) -> f64 {
        let v = psi.amplitudes();
        (v.dotc(&(&self.mat * v))).re
    }

    /// Conjugate by a unitary: `U rho U^dag`.
    pub fn evolved(&self, u: &CMatrix) -> DensityMatrix {
        DensityMatrix {
            mat: u * &self.mat * u.adjoint(),
            n_spins: self.n_spins,
        }
    }

    /// Trace out every site not listed in `keep` (1-based, strictly
    /// ascending). The returned matrix orders the kept sites as given.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.n_spins;
        for window in keep.windows(2) {
            if window[1] <= window[0] {
                return Err(Error::InvalidDensityMatrix {
                    reason: "partial_trace sites must be strictly ascending".into(),
                });
            }
        }
        for &site in keep {
            if site == 0 || site > n {
                return Err(Error::SiteOutOfRange { site, n_spins: n });
            }
        }
        let k = keep.len();
        let traced: Vec<usize> = (1..=n).filter(|s| !keep.contains(s)).collect();
        let dim_keep = 1usize << k;
        let dim_traced = 1usize << traced.len();

        // bit position of site s in the full index (site 1 = MSB)
        let bit = |site: usize| n - site;

        let embed = |kept_bits: usize, traced_bits: usize| -> usize {
            let mut index = 0usize;
            for (pos, &site) in keep.iter().enumerate() {
                if kept_bits >> (k - 1 - pos) & 1 == 1 {
                    index |= 1 << bit(site);
                }
            }
            for (pos, &site) in traced.iter().enumerate() {
                if traced_bits >> (traced.len() - 1 - pos) & 1 == 1 {
                    index |= 1 << bit(site);
                }
            }
            index
        };

        let mut reduced = CMatrix::zeros(dim_keep, dim_keep);
        for a in 0..dim_keep {
            for b in 0..dim_keep {
                let mut sum = C64::new(0.0, 0.0);
                for e in 0..dim_traced {
                    sum += self.mat[(embed(a, e), embed(b, e))];
                }
                reduced[(a, b)] = sum;
            }
        }
        Ok(DensityMatrix {
            mat: reduced,
            n_spins: k,
        })
    }
}
