//! Detection layer: two-spin correlations, entanglement witnesses,
//! projective witness measurement, fidelity measures and signal-decay
//! rescaling.
//!
//! A witness is `a 1 - |psi_ref><psi_ref|`; a negative expectation value
//! certifies entanglement of the class the reference state belongs to.
//! The W witness uses offset 2/3 (the maximum squared overlap of any
//! biseparable state with the W state), the GHZ witness 3/4.

use crate::algebra::{C64, CMatrix, CVector};
use crate::error::{Error, Result};
use crate::state::{DensityMatrix, Spin, StateVector};

/// Offset of the W witness.
pub const W_WITNESS_OFFSET: f64 = 2.0 / 3.0;
/// Offset of the GHZ witness.
pub const GHZ_WITNESS_OFFSET: f64 = 3.0 / 4.0;

/// Reference-state convention for the GHZ witness. The x-basis variants
/// are the Hadamard rotation of the z-basis states; a transverse-field
/// scan ends in an x-basis GHZ state, so its witness must use that frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhzReference {
    ZMinus,
    ZPlus,
    XMinus,
    XPlus,
}

impl GhzReference {
    pub fn state(self) -> StateVector {
        match self {
            GhzReference::ZMinus => StateVector::ghz(3, -1.0),
            GhzReference::ZPlus => StateVector::ghz(3, 1.0),
            GhzReference::XMinus => StateVector::ghz(3, -1.0).hadamard_all(),
            GhzReference::XPlus => StateVector::ghz(3, 1.0).hadamard_all(),
        }
    }
}

/// Entanglement witness `a 1 - |psi_ref><psi_ref|`.
#[derive(Debug, Clone)]
pub struct WitnessOperator {
    offset: f64,
    reference: StateVector,
}

impl WitnessOperator {
    pub fn new(offset: f64, reference: StateVector) -> Result<Self> {
        if !offset.is_finite() || offset <= 0.0 || offset >= 1.0 {
            return Err(Error::InvalidWitnessOffset { offset });
        }
        Ok(Self { offset, reference })
    }

    /// Witness for the single-flip W state with the given excitation
    /// direction.
    pub fn w_witness(flipped: Spin) -> Self {
        Self {
            offset: W_WITNESS_OFFSET,
            reference: StateVector::w_single_flip(3, flipped),
        }
    }

    /// Witness for a GHZ state in the chosen frame.
    pub fn ghz_witness(reference: GhzReference) -> Self {
        Self {
            offset: GHZ_WITNESS_OFFSET,
            reference: reference.state(),
        }
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn reference(&self) -> &StateVector {
        &self.reference
    }

    /// Dense matrix `a 1 - |psi><psi|`.
    pub fn matrix(&self) -> CMatrix {
        let dim = self.reference.dim();
        let proj = DensityMatrix::from_pure(&self.reference);
        CMatrix::identity(dim, dim) * C64::new(self.offset, 0.0) - proj.matrix()
    }

    /// `tr(rho W) = a - <psi_ref| rho |psi_ref>`.
    pub fn expectation(&self, rho: &DensityMatrix) -> Result<f64> {
        if rho.dim() != self.reference.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.reference.dim(),
                got: rho.dim(),
            });
        }
        Ok(self.offset - rho.matrix_element(&self.reference))
    }

    /// Measure the witness the way an ensemble experiment does: rotate
    /// the reference state onto basis state 0, destroy all off-diagonal
    /// elements (pulsed-gradient dephasing), and read the population of
    /// basis state 0. Agrees with [`Self::expectation`] identically,
    /// since dephasing keeps diagonal entries.
    pub fn measure_projectively(&self, rho: &DensityMatrix) -> Result<f64> {
        if rho.dim() != self.reference.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.reference.dim(),
                got: rho.dim(),
            });
        }
        let u = householder_to_basis_zero(self.reference.amplitudes());
        let rotated = rho.evolved(&u);
        // projective dephasing: keep populations only
        let dim = rotated.dim();
        let mut populations = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            populations[(i, i)] = rotated.matrix()[(i, i)];
        }
        let p = populations[(0, 0)].re;
        Ok(self.offset - p)
    }

    /// Plain-text definition (offset and reference amplitudes), for
    /// reproducibility records.
    pub fn serialize_definition(&self) -> String {
        let mut out = format!("offset = {:.17}\n", self.offset);
        for (idx, amp) in self.reference.amplitudes().iter().enumerate() {
            out.push_str(&format!("amp[{idx}] = {:.17} {:+.17}i\n", amp.re, amp.im));
        }
        out
    }
}

/// Householder reflection taking `psi` to (a phase times) basis state 0.
fn householder_to_basis_zero(psi: &CVector) -> CMatrix {
    let dim = psi.len();
    let phase = if psi[0].norm() > 0.0 {
        psi[0] / C64::new(psi[0].norm(), 0.0)
    } else {
        C64::new(1.0, 0.0)
    };
    let mut u = psi.clone();
    u[0] += phase;
    let norm = u.norm();
    if norm < 1e-14 {
        // psi is already -phase * e0
        return CMatrix::identity(dim, dim);
    }
    let u = u / C64::new(norm, 0.0);
    let mut h = CMatrix::identity(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            h[(i, j)] -= C64::new(2.0, 0.0) * u[i] * u[j].conj();
        }
    }
    h
}

/// Two-spin x correlations of a three-spin state.
#[derive(Debug, Clone)]
pub struct CorrelationReport {
    /// `<sx^i sx^j>` for the unordered pairs (1,2), (1,3), (2,3).
    pub pairwise: [((usize, usize), f64); 3],
    /// Mean pairwise correlation: `(1/3) sum over unordered pairs`.
    pub c_xx: f64,
    /// The same sum read over ordered pairs (twice the unordered value);
    /// kept for comparison with the ordered-sum convention.
    pub c_xx_ordered: f64,
}

/// Compute `C_xx = (1/3) sum_{i<j} <sx^i sx^j>` for a three-spin state.
pub fn correlation_xx(rho: &DensityMatrix) -> Result<CorrelationReport> {
    if rho.n_spins() != 3 {
        return Err(Error::WrongSpinCount {
            expected: 3,
            got: rho.n_spins(),
        });
    }
    let pairs = [(1usize, 2usize), (1, 3), (2, 3)];
    let mut pairwise = [((0, 0), 0.0); 3];
    let mut sum = 0.0;
    for (slot, &(i, j)) in pairs.iter().enumerate() {
        let op = crate::algebra::pauli_string(
            &[(crate::algebra::Pauli::X, i), (crate::algebra::Pauli::X, j)],
            3,
        )?;
        let value = rho.expectation(&op).re;
        pairwise[slot] = ((i, j), value);
        sum += value;
    }
    Ok(CorrelationReport {
        pairwise,
        c_xx: sum / 3.0,
        c_xx_ordered: 2.0 * sum / 3.0,
    })
}

/// Overlap fidelity `|<psi| rho |psi>|`.
pub fn fidelity(rho: &DensityMatrix, psi: &StateVector) -> Result<f64> {
    if rho.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim(),
            got: rho.dim(),
        });
    }
    Ok(rho.matrix_element(psi).abs())
}

/// Trace-normalized fidelity `|<psi| rho |psi>| / tr(rho^2)`, which
/// removes a uniform signal-decay factor; insensitive to admixture of the
/// maximally mixed state, and can exceed 1 for strongly mixed states.
pub fn experimental_fidelity(rho: &DensityMatrix, psi: &StateVector) -> Result<f64> {
    let purity = rho.purity();
    if purity <= 0.0 {
        return Err(Error::InvalidDensityMatrix {
            reason: format!("purity {purity} must be positive"),
        });
    }
    Ok(fidelity(rho, psi)? / purity)
}

/// Output of [`rescale_decay`].
#[derive(Debug, Clone)]
pub struct RescaledSeries {
    /// Input series divided by the fitted envelope.
    pub values: Vec<(f64, f64)>,
    /// Fitted decay exponent per unit step (negative for decay).
    pub rate: f64,
    /// True when the fit found no decay and the series was returned
    /// unchanged.
    pub identity: bool,
}

/// Remove an overall exponential signal decay from a measured series.
///
/// Fits `norm(step) ~ exp(rate * step)` by least squares on the log of
/// `norm_series`, normalizes the envelope to 1 at the first step, and
/// divides `series` pointwise. A non-decaying fit (rate >= 0) returns the
/// series unchanged with `identity = true`.
pub fn rescale_decay(
    series: &[(f64, f64)],
    norm_series: &[(f64, f64)],
) -> Result<RescaledSeries> {
    if series.len() != norm_series.len() {
        return Err(Error::SeriesLengthMismatch {
            values: series.len(),
            norms: norm_series.len(),
        });
    }
    if series.is_empty() {
        return Ok(RescaledSeries {
            values: Vec::new(),
            rate: 0.0,
            identity: true,
        });
    }
    for &(step, value) in norm_series {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::NonPositiveNorm { step, value });
        }
    }

    // least-squares line through (step, ln norm)
    let n = norm_series.len() as f64;
    let sx: f64 = norm_series.iter().map(|&(s, _)| s).sum();
    let sy: f64 = norm_series.iter().map(|&(_, v)| v.ln()).sum();
    let sxx: f64 = norm_series.iter().map(|&(s, _)| s * s).sum();
    let sxy: f64 = norm_series.iter().map(|&(s, v)| s * v.ln()).sum();
    let denom = n * sxx - sx * sx;
    let rate = if denom.abs() < 1e-30 {
        0.0
    } else {
        (n * sxy - sx * sy) / denom
    };

    if rate >= 0.0 {
        return Ok(RescaledSeries {
            values: series.to_vec(),
            rate,
            identity: true,
        });
    }

    let step0 = series[0].0;
    let values = series
        .iter()
        .map(|&(s, v)| (s, v / (rate * (s - step0)).exp()))
        .collect();
    Ok(RescaledSeries {
        values,
        rate,
        identity: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{max_abs_diff, pauli_string, Pauli};
    use crate::state::Spin;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_density_matrix(rng: &mut ChaCha8Rng, n_spins: usize) -> DensityMatrix {
        let dim = 1usize << n_spins;
        let g = CMatrix::from_fn(dim, dim, |_, _| {
            C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let m = &g * g.adjoint();
        let tr = m.trace().re;
        DensityMatrix::new(m * C64::new(1.0 / tr, 0.0)).unwrap()
    }

    fn random_product_state(rng: &mut ChaCha8Rng) -> StateVector {
        let mut amps = CVector::from_element(1, C64::new(1.0, 0.0));
        for _ in 0..3 {
            let mut q = CVector::from_fn(2, |_, _| {
                C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            q /= C64::new(q.norm(), 0.0);
            amps = amps.kronecker(&q);
        }
        StateVector::new(amps).unwrap()
    }

    #[test]
    fn witness_values_on_their_reference_states() {
        let ghz = DensityMatrix::from_pure(&StateVector::ghz(3, -1.0));
        let w = DensityMatrix::from_pure(&StateVector::w_single_flip(3, Spin::Down));
        let w_ghz = WitnessOperator::ghz_witness(GhzReference::ZMinus);
        let w_w = WitnessOperator::w_witness(Spin::Down);
        assert!((w_ghz.expectation(&ghz).unwrap() + 0.25).abs() < 1e-12);
        assert!((w_w.expectation(&w).unwrap() + 1.0 / 3.0).abs() < 1e-12);
        // orthogonal supports: GHZ witness on the W state
        assert!((w_ghz.expectation(&w).unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn witness_on_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(3);
        let w_ghz = WitnessOperator::ghz_witness(GhzReference::ZMinus);
        assert!((w_ghz.expectation(&rho).unwrap() - 0.625).abs() < 1e-12);
    }

    #[test]
    fn witness_matrix_matches_expectation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let w = WitnessOperator::w_witness(Spin::Down);
        let matrix = w.matrix();
        for _ in 0..10 {
            let rho = random_density_matrix(&mut rng, 3);
            let via_matrix = rho.expectation(&matrix).re;
            let direct = w.expectation(&rho).unwrap();
            assert!((via_matrix - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn projective_measurement_agrees_with_expectation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let witnesses = [
            WitnessOperator::w_witness(Spin::Down),
            WitnessOperator::w_witness(Spin::Up),
            WitnessOperator::ghz_witness(GhzReference::ZMinus),
            WitnessOperator::ghz_witness(GhzReference::XMinus),
        ];
        for _ in 0..100 {
            let rho = random_density_matrix(&mut rng, 3);
            for w in &witnesses {
                let direct = w.expectation(&rho).unwrap();
                let projective = w.measure_projectively(&rho).unwrap();
                assert!(
                    (direct - projective).abs() < 1e-10,
                    "direct {direct} vs projective {projective}"
                );
            }
        }
    }

    #[test]
    fn projective_on_all_up_against_ghz_witness() {
        // |<GHZ-|uuu>|^2 = 1/2, so the witness reads 3/4 - 1/2 = 1/4
        let rho = DensityMatrix::from_pure(&StateVector::basis(3, 0));
        let w = WitnessOperator::ghz_witness(GhzReference::ZMinus);
        assert!((w.measure_projectively(&rho).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn witnesses_nonnegative_on_product_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let w_w = WitnessOperator::w_witness(Spin::Down);
        let w_ghz = WitnessOperator::ghz_witness(GhzReference::ZMinus);
        let w_ghz_x = WitnessOperator::ghz_witness(GhzReference::XMinus);
        for _ in 0..1000 {
            let rho = DensityMatrix::from_pure(&random_product_state(&mut rng));
            for w in [&w_w, &w_ghz, &w_ghz_x] {
                assert!(w.expectation(&rho).unwrap() >= -1e-9);
            }
        }
    }

    #[test]
    fn witness_affine_in_the_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let w = WitnessOperator::ghz_witness(GhzReference::ZMinus);
        for _ in 0..10 {
            let rho1 = random_density_matrix(&mut rng, 3);
            let rho2 = random_density_matrix(&mut rng, 3);
            let lambda = rng.random::<f64>();
            let mixed = DensityMatrix::new(
                rho1.matrix() * C64::new(lambda, 0.0)
                    + rho2.matrix() * C64::new(1.0 - lambda, 0.0),
            )
            .unwrap();
            let lhs = w.expectation(&mixed).unwrap();
            let rhs = lambda * w.expectation(&rho1).unwrap()
                + (1.0 - lambda) * w.expectation(&rho2).unwrap();
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn householder_maps_reference_to_basis_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let psi = random_product_state(&mut rng);
            let u = householder_to_basis_zero(psi.amplitudes());
            assert!(crate::algebra::unitarity_defect(&u) < 1e-12);
            let mapped = u * psi.amplitudes();
            assert!((mapped[0].norm() - 1.0).abs() < 1e-12);
            for i in 1..8 {
                assert!(mapped[i].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn correlations_of_reference_states() {
        // z-basis product state: no x correlations
        let down = DensityMatrix::from_pure(&StateVector::basis(3, 7));
        let report = correlation_xx(&down).unwrap();
        assert!(report.c_xx.abs() < 1e-12);

        // GHZ: double flips map between orthogonal branches
        let ghz = DensityMatrix::from_pure(&StateVector::ghz(3, -1.0));
        let report = correlation_xx(&ghz).unwrap();
        assert!(report.c_xx.abs() < 1e-12);
        for (_, v) in report.pairwise {
            assert!(v.abs() < 1e-12);
        }

        // W state: each pair gives 2/3
        let w = DensityMatrix::from_pure(&StateVector::w_single_flip(3, Spin::Down));
        let report = correlation_xx(&w).unwrap();
        for (_, v) in report.pairwise {
            assert!((v - 2.0 / 3.0).abs() < 1e-12);
        }
        assert!((report.c_xx - 2.0 / 3.0).abs() < 1e-12);
        assert!((report.c_xx_ordered - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn correlation_via_oracle_trace() {
        // independent 8x8 trace oracle on a random mixed state
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let rho = random_density_matrix(&mut rng, 3);
        let report = correlation_xx(&rho).unwrap();
        let mut sum = 0.0;
        for (i, j) in [(1usize, 2usize), (1, 3), (2, 3)] {
            let op = pauli_string(&[(Pauli::X, i), (Pauli::X, j)], 3).unwrap();
            sum += (rho.matrix() * op).trace().re;
        }
        assert!((report.c_xx - sum / 3.0).abs() < 1e-12);
    }

    #[test]
    fn cxx_invariant_under_cyclic_relabeling() {
        // cyclic permutation |s1 s2 s3> -> |s3 s1 s2>
        let mut perm = CMatrix::zeros(8, 8);
        for b in 0..8usize {
            let shifted = (b & 1) << 2 | (b >> 2 & 1) << 1 | (b >> 1 & 1);
            perm[(shifted, b)] = C64::new(1.0, 0.0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..5 {
            let rho = random_density_matrix(&mut rng, 3);
            let permuted = rho.evolved(&perm);
            let a = correlation_xx(&rho).unwrap().c_xx;
            let b = correlation_xx(&permuted).unwrap().c_xx;
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn fidelity_measures() {
        let psi = StateVector::ghz(3, -1.0);
        let pure = DensityMatrix::from_pure(&psi);
        assert!((fidelity(&pure, &psi).unwrap() - 1.0).abs() < 1e-12);
        assert!((experimental_fidelity(&pure, &psi).unwrap() - 1.0).abs() < 1e-12);

        let mixed = DensityMatrix::maximally_mixed(3);
        assert!((fidelity(&mixed, &psi).unwrap() - 0.125).abs() < 1e-12);
        // the trace-normalized measure is blind to uniform mixing
        assert!((experimental_fidelity(&mixed, &psi).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fidelity_measures_coincide_on_pure_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let psi = random_product_state(&mut rng);
            let target = random_product_state(&mut rng);
            let rho = DensityMatrix::from_pure(&psi);
            let f = fidelity(&rho, &target).unwrap();
            let fe = experimental_fidelity(&rho, &target).unwrap();
            assert!((f - fe).abs() < 1e-10);
        }
    }

    #[test]
    fn rescale_constant_norms_is_identity() {
        let series: Vec<(f64, f64)> = (0..10).map(|m| (m as f64, (m as f64).sin())).collect();
        let norms: Vec<(f64, f64)> = (0..10).map(|m| (m as f64, 0.8)).collect();
        let out = rescale_decay(&series, &norms).unwrap();
        assert!(out.identity);
        for (a, b) in out.values.iter().zip(&series) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rescale_recovers_exponentially_damped_series() {
        let kappa = 7.0;
        let xs: Vec<f64> = (0..20).map(|m| 0.3 + 0.1 * m as f64).collect();
        let series: Vec<(f64, f64)> = xs
            .iter()
            .enumerate()
            .map(|(m, &x)| (m as f64, x * (-(m as f64) / kappa).exp()))
            .collect();
        let norms: Vec<(f64, f64)> = (0..20)
            .map(|m| (m as f64, (-(m as f64) / kappa).exp()))
            .collect();
        let out = rescale_decay(&series, &norms).unwrap();
        assert!(!out.identity);
        assert!((out.rate + 1.0 / kappa).abs() < 1e-9);
        for ((_, got), &want) in out.values.iter().zip(&xs) {
            assert!((got - want).abs() < 1e-6);
        }
    }

    #[test]
    fn rescale_rejects_non_positive_norms() {
        let series = vec![(0.0, 1.0), (1.0, 0.5)];
        let norms = vec![(0.0, 1.0), (1.0, 0.0)];
        assert!(matches!(
            rescale_decay(&series, &norms),
            Err(Error::NonPositiveNorm { .. })
        ));
    }

    #[test]
    fn witness_offset_validation() {
        assert!(WitnessOperator::new(0.0, StateVector::ghz(3, 1.0)).is_err());
        assert!(WitnessOperator::new(1.0, StateVector::ghz(3, 1.0)).is_err());
        assert!(WitnessOperator::new(0.5, StateVector::ghz(3, 1.0)).is_ok());
    }

    #[test]
    fn witness_definition_serialization_is_deterministic() {
        let w = WitnessOperator::ghz_witness(GhzReference::XMinus);
        let a = w.serialize_definition();
        let b = w.serialize_definition();
        assert_eq!(a, b);
        assert!(a.starts_with("offset = 0.75"));
    }

    #[test]
    fn householder_identity_when_reference_is_basis_zero() {
        let e0 = StateVector::basis(3, 0);
        let u = householder_to_basis_zero(e0.amplitudes());
        let mapped = &u * e0.amplitudes();
        assert!((mapped[0].norm() - 1.0).abs() < 1e-12);
        assert!(max_abs_diff(&(&u * u.adjoint()), &CMatrix::identity(8, 8)) < 1e-12);
    }
}
