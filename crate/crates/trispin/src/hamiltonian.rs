//! The model Hamiltonian: competing one-, two- and three-body Ising terms.
//!
//!   H = wz sum_i sz^i + wx sum_i sx^i
//!       + J2 sum_i sz^i sz^{i+1} + J3 sum_i sz^i sz^{i+1} sz^{i+2}
//!
//! With periodic boundary conditions the sums run over i = 1..N and wrap
//! (site N+1 = site 1); open chains drop the wrapped terms. The wrapped
//! sums are kept literal, so for a periodic 3-ring the three-body sum is
//! three identical copies of sz sz sz.
//!
//! All z-type terms are diagonal in the computational basis; the x field
//! is the only off-diagonal contribution.

use crate::algebra::{C64, CMatrix, MAX_SPINS};
use crate::error::{Error, Result};

/// Which coupling an adiabatic scan or critical-point sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControlKnob {
    J2,
    J3,
}

/// Coefficients of the model Hamiltonian plus chain geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianParams {
    /// Longitudinal field strength (model units).
    pub omega_z: f64,
    /// Transverse field strength.
    pub omega_x: f64,
    /// Two-body nearest-neighbor coupling.
    pub j2: f64,
    /// Three-body nearest-neighbor-triple coupling.
    pub j3: f64,
    pub n_spins: usize,
    pub periodic: bool,
}

impl HamiltonianParams {
    pub fn new(omega_z: f64, omega_x: f64, j2: f64, j3: f64, n_spins: usize, periodic: bool) -> Result<Self> {
        let p = Self {
            omega_z,
            omega_x,
            j2,
            j3,
            n_spins,
            periodic,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_spins == 0 {
            return Err(Error::InvalidParams {
                reason: "need at least one spin".into(),
            });
        }
        if self.n_spins > MAX_SPINS {
            return Err(Error::TooManySpins {
                n_spins: self.n_spins,
                max: MAX_SPINS,
            });
        }
        for (name, v) in [
            ("omega_z", self.omega_z),
            ("omega_x", self.omega_x),
            ("j2", self.j2),
            ("j3", self.j3),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParams {
                    reason: format!("{name} = {v} is not finite"),
                });
            }
        }
        if self.j2 != 0.0 && self.n_spins < 2 {
            return Err(Error::InvalidParams {
                reason: "two-body coupling needs at least 2 spins".into(),
            });
        }
        if self.j3 != 0.0 && self.n_spins < 3 {
            return Err(Error::InvalidParams {
                reason: "three-body coupling needs at least 3 spins".into(),
            });
        }
        Ok(())
    }

    /// Copy with the scanned coupling replaced.
    pub fn with_knob(&self, knob: ControlKnob, value: f64) -> Self {
        let mut p = *self;
        match knob {
            ControlKnob::J2 => p.j2 = value,
            ControlKnob::J3 => p.j3 = value,
        }
        p
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_spins
    }
}

/// Nearest-neighbor pairs (i, i+1), wrapping when periodic. Kept literal:
/// a periodic 2-chain yields both (1,2) and (2,1).
pub(crate) fn neighbor_pairs(n: usize, periodic: bool) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let last = if periodic { n } else { n - 1 };
    (1..=last).map(|i| (i, i % n + 1)).collect()
}

/// Nearest-neighbor triples (i, i+1, i+2), wrapping when periodic.
pub(crate) fn neighbor_triples(n: usize, periodic: bool) -> Vec<(usize, usize, usize)> {
    if n < 3 {
        return Vec::new();
    }
    let last = if periodic { n } else { n - 2 };
    (1..=last)
        .map(|i| (i, i % n + 1, (i + 1) % n + 1))
        .collect()
}

/// Spin value (+1 for up) of `site` in basis index `b`.
#[inline]
fn spin_value(b: usize, site: usize, n: usize) -> f64 {
    if b >> (n - site) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The transverse part `Hx = wx sum_i sx^i`.
pub fn build_hx(p: &HamiltonianParams) -> Result<CMatrix> {
    p.validate()?;
    let n = p.n_spins;
    let dim = p.dim();
    let mut hx = CMatrix::zeros(dim, dim);
    if p.omega_x != 0.0 {
        let wx = C64::new(p.omega_x, 0.0);
        for site in 1..=n {
            let mask = 1usize << (n - site);
            for b in 0..dim {
                hx[(b, b ^ mask)] += wx;
            }
        }
    }
    Ok(hx)
}

/// The diagonal part `Hz = H - Hx`: longitudinal field plus both coupling
/// sums.
pub fn build_hz(p: &HamiltonianParams) -> Result<CMatrix> {
    p.validate()?;
    let n = p.n_spins;
    let dim = p.dim();
    let pairs = neighbor_pairs(n, p.periodic);
    let triples = neighbor_triples(n, p.periodic);
    let mut hz = CMatrix::zeros(dim, dim);
    for b in 0..dim {
        let mut e = 0.0;
        for site in 1..=n {
            e += p.omega_z * spin_value(b, site, n);
        }
        for &(i, j) in &pairs {
            e += p.j2 * spin_value(b, i, n) * spin_value(b, j, n);
        }
        for &(i, j, k) in &triples {
            e += p.j3 * spin_value(b, i, n) * spin_value(b, j, n) * spin_value(b, k, n);
        }
        hz[(b, b)] = C64::new(e, 0.0);
    }
    Ok(hz)
}

/// Build the full Hamiltonian. Exactly equals `Hx + Hz` from [`split_xz`]
/// by construction.
pub fn build_hamiltonian(p: &HamiltonianParams) -> Result<CMatrix> {
    Ok(build_hx(p)? + build_hz(p)?)
}

/// The (Hx, Hz) split used by the symmetric Trotter step. All terms in Hz
/// mutually commute (they are diagonal).
pub fn split_xz(p: &HamiltonianParams) -> Result<(CMatrix, CMatrix)> {
    Ok((build_hx(p)?, build_hz(p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{hermitian_eigensystem, max_abs_diff, pauli_string, Pauli};

    fn params(omega_z: f64, omega_x: f64, j2: f64, j3: f64) -> HamiltonianParams {
        HamiltonianParams::new(omega_z, omega_x, j2, j3, 3, true).unwrap()
    }

    /// Independent construction: literal sums of Kronecker-built Pauli
    /// strings.
    fn brute_force(p: &HamiltonianParams) -> CMatrix {
        let n = p.n_spins;
        let dim = p.dim();
        let mut h = CMatrix::zeros(dim, dim);
        for site in 1..=n {
            h += pauli_string(&[(Pauli::Z, site)], n).unwrap() * C64::new(p.omega_z, 0.0);
            h += pauli_string(&[(Pauli::X, site)], n).unwrap() * C64::new(p.omega_x, 0.0);
        }
        for (i, j) in neighbor_pairs(n, p.periodic) {
            h += pauli_string(&[(Pauli::Z, i), (Pauli::Z, j)], n).unwrap() * C64::new(p.j2, 0.0);
        }
        for (i, j, k) in neighbor_triples(n, p.periodic) {
            h += pauli_string(&[(Pauli::Z, i), (Pauli::Z, j), (Pauli::Z, k)], n).unwrap()
                * C64::new(p.j3, 0.0);
        }
        h
    }

    #[test]
    fn matches_brute_force_construction() {
        for p in [
            params(1.0, 0.0, 0.0, 0.0),
            params(-2.0, 0.09, 1.0, 0.0),
            params(0.0, 0.12, 0.0, 2.0),
            params(0.3, -0.7, 1.3, -0.4),
            HamiltonianParams::new(0.5, 0.2, 0.9, 1.1, 4, false).unwrap(),
            HamiltonianParams::new(0.5, 0.2, 0.9, 1.1, 5, true).unwrap(),
        ] {
            let h = build_hamiltonian(&p).unwrap();
            assert!(max_abs_diff(&h, &brute_force(&p)) <= 1e-12);
        }
    }

    #[test]
    fn field_only_spectrum() {
        // wz = 1, N = 3: eigenvalues {3, 1, 1, 1, -1, -1, -1, -3}
        let h = build_hamiltonian(&params(1.0, 0.0, 0.0, 0.0)).unwrap();
        let eig = hermitian_eigensystem(&h).unwrap();
        let want = [-3.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 3.0];
        for (got, want) in eig.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_three_body_is_three_zzz() {
        // Periodic N=3: the three wrapped triples coincide, so H = 3 Z Z Z.
        let h = build_hamiltonian(&params(0.0, 0.0, 0.0, 1.0)).unwrap();
        let zzz = pauli_string(&[(Pauli::Z, 1), (Pauli::Z, 2), (Pauli::Z, 3)], 3).unwrap();
        assert!(max_abs_diff(&h, &(zzz * C64::new(3.0, 0.0))) <= 1e-12);
        // ground space: odd number of down spins, at energy -3
        let eig = hermitian_eigensystem(&h).unwrap();
        for k in 0..4 {
            assert!((eig.eigenvalues[k] + 3.0).abs() < 1e-12);
        }
        for k in 4..8 {
            assert!((eig.eigenvalues[k] - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn independent_spin_ground_energy() {
        // J2 = J3 = 0: three independent spins, each with ground energy
        // -sqrt(wz^2 + wx^2).
        let p = params(-2.0, 0.09, 0.0, 0.0);
        let h = build_hamiltonian(&p).unwrap();
        let eig = hermitian_eigensystem(&h).unwrap();
        let want = -3.0 * (p.omega_z * p.omega_z + p.omega_x * p.omega_x).sqrt();
        assert!((eig.eigenvalues[0] - want).abs() < 1e-10);
        assert!((want - (-6.00607)).abs() < 1e-5);
    }

    #[test]
    fn split_sums_exactly_and_hz_is_diagonal() {
        for p in [
            params(-2.0, 0.09, 1.0, 0.0),
            params(0.0, 0.12, 0.0, 1.7),
            params(0.4, 0.0, 0.8, 0.2),
        ] {
            let (hx, hz) = split_xz(&p).unwrap();
            let h = build_hamiltonian(&p).unwrap();
            assert_eq!(max_abs_diff(&(&hx + &hz), &h), 0.0);
            for i in 0..8 {
                for j in 0..8 {
                    if i != j {
                        assert_eq!(hz[(i, j)], C64::new(0.0, 0.0));
                    }
                }
            }
            if p.omega_x == 0.0 {
                assert!(hx.iter().all(|z| z.norm() == 0.0));
            }
        }
    }

    #[test]
    fn periodic_three_ring_commutes_with_cyclic_shift() {
        // permutation |s1 s2 s3> -> |s3 s1 s2>
        let mut perm = CMatrix::zeros(8, 8);
        for b in 0..8usize {
            let s1 = b >> 2 & 1;
            let s2 = b >> 1 & 1;
            let s3 = b & 1;
            let shifted = s3 << 2 | s1 << 1 | s2;
            perm[(shifted, b)] = C64::new(1.0, 0.0);
        }
        let h = build_hamiltonian(&params(0.7, 0.3, 1.1, 0.9)).unwrap();
        let comm = &h * &perm - &perm * &h;
        assert!(comm.iter().all(|z| z.norm() <= 1e-12));
    }

    #[test]
    fn linear_in_each_coefficient() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..4 {
            let base: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() * 2.0 - 1.0);
            let other: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() * 2.0 - 1.0);
            let lambda = rng.random::<f64>();
            let mix: [f64; 4] =
                std::array::from_fn(|i| lambda * base[i] + (1.0 - lambda) * other[i]);
            let h_base = build_hamiltonian(&params(base[0], base[1], base[2], base[3])).unwrap();
            let h_other =
                build_hamiltonian(&params(other[0], other[1], other[2], other[3])).unwrap();
            let h_mix = build_hamiltonian(&params(mix[0], mix[1], mix[2], mix[3])).unwrap();
            let interpolated = h_base * C64::new(lambda, 0.0) + h_other * C64::new(1.0 - lambda, 0.0);
            assert!(max_abs_diff(&h_mix, &interpolated) <= 1e-12);
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(HamiltonianParams::new(0.0, 0.0, 0.0, 1.0, 2, true).is_err());
        assert!(HamiltonianParams::new(0.0, 0.0, 1.0, 0.0, 1, false).is_err());
        assert!(HamiltonianParams::new(f64::NAN, 0.0, 0.0, 0.0, 3, true).is_err());
        assert!(HamiltonianParams::new(0.0, 0.0, 0.0, 0.0, 13, true).is_err());
    }

    #[test]
    fn open_chain_drops_wrapped_terms() {
        let open = HamiltonianParams::new(0.0, 0.0, 1.0, 0.0, 3, false).unwrap();
        // open 3-chain: pairs (1,2), (2,3) only -> spectrum of Z1Z2 + Z2Z3
        assert_eq!(neighbor_pairs(3, false), vec![(1, 2), (2, 3)]);
        assert_eq!(neighbor_triples(3, false), vec![(1, 2, 3)]);
        let h = build_hamiltonian(&open).unwrap();
        // |uud| -> s = (+,+,-): energy 1*1 + 1*(-1) = 0
        assert_eq!(h[(1, 1)], C64::new(0.0, 0.0));
        // |uuu| -> 2
        assert_eq!(h[(0, 0)], C64::new(2.0, 0.0));
    }
}
