//! Exact finite-dimensional angular-momentum algebra.
//!
//! Operators live in the Jz eigenbasis with basis states ordered by
//! descending magnetic quantum number, m = J, J-1, ..., -J. Matrices are
//! dimensionless (factors of hbar belong to the formulas that consume them);
//! ladder elements are sqrt(J(J+1) - m(m+1)), evaluated from exact integer
//! arithmetic on 2J and 2m.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted 2J for operator construction (dim = 2J + 1).
pub const DEFAULT_TWO_J_CAP: u32 = 2000;

/// Max elementwise deviation tolerated when validating a generator as
/// Hermitian, relative to the largest element magnitude.
pub const HERMITIAN_TOL: f64 = 1e-10;

const AXIS_NORM_TOL: f64 = 1e-9;
const EXPECTATION_IMAG_TOL: f64 = 1e-10;
const VARIANCE_CLAMP: f64 = 1e-12;

/// Spin quantum number stored as 2J so half-integers stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Spin {
    two_j: u32,
}

impl Spin {
    /// Spin from a doubled quantum number (2J).
    pub fn from_doubled(two_j: u32) -> Self {
        Spin { two_j }
    }

    /// Spin from J itself; 2J must be integral to within 1e-9.
    pub fn from_j(j: f64) -> Result<Self> {
        if !j.is_finite() || j < 0.0 {
            return Err(Error::InvalidInput(format!("spin J must be finite and >= 0, got {j}")));
        }
        let two_j = 2.0 * j;
        if (two_j - two_j.round()).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!("spin J must be half-integer, got {j}")));
        }
        Ok(Spin { two_j: two_j.round() as u32 })
    }

    pub fn doubled(&self) -> u32 {
        self.two_j
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Hilbert-space dimension, 2J + 1.
    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    pub fn is_half_integer(&self) -> bool {
        self.two_j % 2 == 1
    }

    /// m value of basis index `i` (m = J - i).
    pub fn m_value(&self, i: usize) -> f64 {
        self.j() - i as f64
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_j % 2 == 0 {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

impl Serialize for Spin {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.j())
    }
}

impl<'de> Deserialize<'de> for Spin {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = f64::deserialize(deserializer)?;
        Spin::from_j(j).map_err(serde::de::Error::custom)
    }
}

/// Dense complex operator matrix, dimensionless (hbar factored out).
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    mat: DMatrix<Complex64>,
}

impl Operator {
    pub fn from_matrix(mat: DMatrix<Complex64>) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidInput(format!(
                "operator matrix must be square, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(Operator { mat })
    }

    pub fn identity(dim: usize) -> Self {
        Operator { mat: DMatrix::identity(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.mat
    }

    pub fn adjoint(&self) -> Operator {
        Operator { mat: self.mat.adjoint() }
    }

    /// Max elementwise |A - A^dagger|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for k in i..n {
                dev = dev.max((self.mat[(i, k)] - self.mat[(k, i)].conj()).norm());
            }
        }
        dev
    }

    fn max_abs(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// [self, other] = self*other - other*self.
    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(Operator { mat: &self.mat * &other.mat - &other.mat * &self.mat })
    }

    /// Debug dump: row-major entries as [re, im] pairs.
    pub fn to_debug_json(&self) -> serde_json::Value {
        let entries: Vec<[f64; 2]> = (0..self.dim())
            .flat_map(|i| (0..self.dim()).map(move |k| (i, k)))
            .map(|(i, k)| [self.mat[(i, k)].re, self.mat[(i, k)].im])
            .collect();
        serde_json::json!({ "dim": self.dim(), "entries": entries })
    }
}

impl std::ops::Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        Operator { mat: &self.mat + &rhs.mat }
    }
}

impl std::ops::Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        Operator { mat: &self.mat - &rhs.mat }
    }
}

impl std::ops::Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        Operator { mat: &self.mat * &rhs.mat }
    }
}

impl std::ops::Mul<Complex64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: Complex64) -> Operator {
        Operator { mat: &self.mat * rhs }
    }
}

/// Normalized complex state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: DVector<Complex64>,
}

impl StateVector {
    /// Builds a state from amplitudes, normalizing to unit norm.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let v = DVector::from_vec(amps);
        let norm = v.norm();
        if !norm.is_finite() || norm < 1e-300 {
            return Err(Error::InvalidInput("state amplitudes have zero or non-finite norm".into()));
        }
        Ok(StateVector { amps: v / Complex64::new(norm, 0.0) })
    }

    /// Basis state |index> in the Jz eigenbasis.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidInput(format!("basis index {index} out of range for dim {dim}")));
        }
        let mut v = DVector::from_element(dim, Complex64::new(0.0, 0.0));
        v[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amps: v })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amps.as_slice()
    }

    pub fn vector(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// <self|other>.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(self.amps.dotc(&other.amps))
    }
}

/// Jx, Jy, Jz and the ladder pair for one spin, built once and shared.
#[derive(Clone, Debug)]
pub struct SpinSystem {
    spin: Spin,
    jx: Operator,
    jy: Operator,
    jz: Operator,
    jplus: Operator,
    jminus: Operator,
}

impl SpinSystem {
    pub fn build(spin: Spin) -> Result<Self> {
        Self::build_with_cap(spin, DEFAULT_TWO_J_CAP)
    }

    pub fn build_with_cap(spin: Spin, cap: u32) -> Result<Self> {
        if spin.doubled() > cap {
            return Err(Error::DimensionTooLarge { two_j: spin.doubled(), cap });
        }
        let dim = spin.dim();
        let tj = spin.doubled() as i64;

        let mut jz = DMatrix::<Complex64>::zeros(dim, dim);
        let mut jp = DMatrix::<Complex64>::zeros(dim, dim);
        for i in 0..dim {
            jz[(i, i)] = Complex64::new(spin.m_value(i), 0.0);
            if i >= 1 {
                // J+ |J, m_i> = sqrt(J(J+1) - m_i(m_i+1)) |J, m_i + 1>,
                // exact under the square root: [2J(2J+2) - 2m(2m+2)] / 4.
                let tm = tj - 2 * i as i64;
                let num = tj * (tj + 2) - tm * (tm + 2);
                jp[(i - 1, i)] = Complex64::new((num as f64 / 4.0).sqrt(), 0.0);
            }
        }
        let jm = jp.adjoint();
        let jx = (&jp + &jm) * Complex64::new(0.5, 0.0);
        // Jy = -i/2 (J+ - J-)
        let jy = (&jp - &jm) * Complex64::new(0.0, -0.5);

        Ok(SpinSystem {
            spin,
            jx: Operator { mat: jx },
            jy: Operator { mat: jy },
            jz: Operator { mat: jz },
            jplus: Operator { mat: jp },
            jminus: Operator { mat: jm },
        })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    pub fn jx(&self) -> &Operator {
        &self.jx
    }

    pub fn jy(&self) -> &Operator {
        &self.jy
    }

    pub fn jz(&self) -> &Operator {
        &self.jz
    }

    pub fn jplus(&self) -> &Operator {
        &self.jplus
    }

    pub fn jminus(&self) -> &Operator {
        &self.jminus
    }

    /// axis . J for a unit 3-vector (x, y, z).
    pub fn axis_operator(&self, axis: [f64; 3]) -> Result<Operator> {
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if (norm - 1.0).abs() > AXIS_NORM_TOL {
            return Err(Error::InvalidInput(format!("axis must have unit norm, got |axis| = {norm}")));
        }
        let mat = &self.jx.mat * Complex64::new(axis[0], 0.0)
            + &self.jy.mat * Complex64::new(axis[1], 0.0)
            + &self.jz.mat * Complex64::new(axis[2], 0.0);
        Ok(Operator { mat })
    }
}

/// Builds the operator bundle for spin `j`.
pub fn build_spin_system(j: Spin) -> Result<SpinSystem> {
    SpinSystem::build(j)
}

/// Eigendecomposition of a Hermitian operator, eigenvalues descending.
pub struct HermitianEigen {
    values: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

impl HermitianEigen {
    /// Eigenvalues in descending order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvector column matching `values()[k]`.
    pub fn vector(&self, k: usize) -> StateVector {
        StateVector { amps: self.vectors.column(k).into_owned() }
    }

    pub fn vectors(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }
}

fn check_hermitian(op: &Operator) -> Result<()> {
    let dev = op.hermiticity_deviation();
    if dev > HERMITIAN_TOL * (1.0 + op.max_abs()) {
        return Err(Error::NonHermitian { max_dev: dev });
    }
    Ok(())
}

/// Diagonalizes a Hermitian operator; eigenpairs sorted by descending
/// eigenvalue so index k corresponds to m = J - k for angular-momentum
/// components.
pub fn hermitian_eigen(op: &Operator) -> Result<HermitianEigen> {
    check_hermitian(op)?;
    let se = op.mat.clone().symmetric_eigen();
    let n = op.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = DMatrix::<Complex64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    Ok(HermitianEigen { values, vectors })
}

// Fixes the global phase so the largest-magnitude amplitude is real positive.
fn fix_global_phase(mut v: DVector<Complex64>) -> DVector<Complex64> {
    let mut best = 0usize;
    let mut best_norm = 0.0f64;
    for (i, z) in v.iter().enumerate() {
        let n = z.norm();
        if n > best_norm {
            best_norm = n;
            best = i;
        }
    }
    if best_norm > 0.0 {
        let phase = v[best] / Complex64::new(best_norm, 0.0);
        v *= phase.conj();
    }
    v
}

/// Eigenstate of axis.J with maximal eigenvalue +J; global phase fixed by
/// making the largest-magnitude amplitude real positive.
pub fn max_projection_state(system: &SpinSystem, axis: [f64; 3]) -> Result<StateVector> {
    let op = system.axis_operator(axis)?;
    let eig = hermitian_eigen(&op)?;
    let v = fix_global_phase(eig.vectors.column(0).into_owned());
    Ok(StateVector { amps: v })
}

/// exp(-i * angle * generator) applied to `state`.
///
/// A rotation about z by +phi (generator Jz, angle phi) carries a maximal
/// x-projection state toward +y: <Jy> = J sin(phi), <Jx> = J cos(phi).
pub fn evolve(state: &StateVector, generator: &Operator, angle: f64) -> Result<StateVector> {
    if generator.dim() != state.dim() {
        return Err(Error::DimensionMismatch { expected: generator.dim(), got: state.dim() });
    }
    if !angle.is_finite() {
        return Err(Error::InvalidInput(format!("rotation angle must be finite, got {angle}")));
    }
    check_hermitian(generator)?;

    // Diagonal generators (e.g. Jz in its own basis) evolve by exact phases.
    let n = generator.dim();
    let mut diagonal = true;
    'outer: for i in 0..n {
        for k in 0..n {
            if i != k && generator.mat[(i, k)] != Complex64::new(0.0, 0.0) {
                diagonal = false;
                break 'outer;
            }
        }
    }
    if diagonal {
        let mut amps = state.amps.clone();
        for i in 0..n {
            let lam = generator.mat[(i, i)].re;
            amps[i] *= Complex64::from_polar(1.0, -angle * lam);
        }
        return Ok(StateVector { amps });
    }

    let eig = hermitian_eigen(generator)?;
    // exp(-i angle H) psi = V diag(exp(-i angle lambda)) V^dagger psi
    let mut coeffs = eig.vectors.adjoint() * &state.amps;
    for (i, c) in coeffs.iter_mut().enumerate() {
        *c *= Complex64::from_polar(1.0, -angle * eig.values[i]);
    }
    Ok(StateVector { amps: &eig.vectors * coeffs })
}

/// <psi| op |psi>. The imaginary residual of the raw value must be below
/// 1e-10 (true for Hermitian operators) and is discarded.
pub fn expectation(state: &StateVector, op: &Operator) -> Result<f64> {
    if op.dim() != state.dim() {
        return Err(Error::DimensionMismatch { expected: op.dim(), got: state.dim() });
    }
    let z = state.amps.dotc(&(&op.mat * &state.amps));
    if z.im.abs() >= EXPECTATION_IMAG_TOL {
        return Err(Error::Numeric(format!(
            "expectation value has imaginary residual {:.3e}; operator is not Hermitian enough",
            z.im
        )));
    }
    Ok(z.re)
}

/// <op^2> - <op>^2, clamped to zero when within -1e-12 of it.
pub fn variance(state: &StateVector, op: &Operator) -> Result<f64> {
    let mean = expectation(state, op)?;
    // For Hermitian op, <op^2> = |op psi|^2.
    let w = &op.mat * &state.amps;
    let second = w.dotc(&w).re;
    let var = second - mean * mean;
    if var < -VARIANCE_CLAMP {
        return Err(Error::Numeric(format!("variance {var:.3e} is significantly negative")));
    }
    Ok(var.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const X_AXIS: [f64; 3] = [1.0, 0.0, 0.0];
    const Z_AXIS: [f64; 3] = [0.0, 0.0, 1.0];

    #[test]
    fn spin_display_and_dim() {
        assert_eq!(Spin::from_doubled(1).to_string(), "1/2");
        assert_eq!(Spin::from_doubled(2).to_string(), "1");
        assert_eq!(Spin::from_doubled(7).to_string(), "7/2");
        assert_eq!(Spin::from_j(1.5).unwrap().dim(), 4);
        assert!(Spin::from_j(0.4).is_err());
        assert!(Spin::from_j(-0.5).is_err());
    }

    #[test]
    fn spin_serde_roundtrip() {
        let s = Spin::from_doubled(3);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "1.5");
        let back: Spin = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn pauli_half_matrices() {
        let sys = build_spin_system(Spin::from_doubled(1)).unwrap();
        // Jz = diag(1/2, -1/2)
        assert_eq!(sys.jz().matrix()[(0, 0)], c(0.5, 0.0));
        assert_eq!(sys.jz().matrix()[(1, 1)], c(-0.5, 0.0));
        // Jx = sigma_x / 2, Jy = sigma_y / 2
        assert_eq!(sys.jx().matrix()[(0, 1)], c(0.5, 0.0));
        assert_eq!(sys.jy().matrix()[(0, 1)], c(0.0, -0.5));
        assert_eq!(sys.jy().matrix()[(1, 0)], c(0.0, 0.5));
    }

    #[test]
    fn jy_spectrum_half() {
        let sys = build_spin_system(Spin::from_doubled(1)).unwrap();
        let eig = hermitian_eigen(sys.jy()).unwrap();
        assert_abs_diff_eq!(eig.values()[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(eig.values()[1], -0.5, epsilon = 1e-12);
    }

    #[test]
    fn dimension_cap_rejected() {
        let err = SpinSystem::build_with_cap(Spin::from_doubled(11), 10).unwrap_err();
        assert!(matches!(err, Error::DimensionTooLarge { two_j: 11, cap: 10 }));
    }

    #[test]
    fn max_projection_along_z_and_x() {
        let sys = build_spin_system(Spin::from_doubled(1)).unwrap();
        let up = max_projection_state(&sys, Z_AXIS).unwrap();
        assert_abs_diff_eq!(up.amplitudes()[0].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(up.amplitudes()[1].norm(), 0.0, epsilon = 1e-12);

        let plus = max_projection_state(&sys, X_AXIS).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(plus.amplitudes()[0].re, r, epsilon = 1e-12);
        assert_abs_diff_eq!(plus.amplitudes()[1].re, r, epsilon = 1e-12);
        assert_abs_diff_eq!(plus.amplitudes()[0].im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(plus.amplitudes()[1].im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn max_projection_residual_spin_two() {
        let sys = build_spin_system(Spin::from_doubled(4)).unwrap();
        let psi = max_projection_state(&sys, X_AXIS).unwrap();
        let jx = sys.jx().matrix();
        let residual = jx * psi.vector() - psi.vector() * c(2.0, 0.0);
        assert!(residual.norm() < 1e-10);
    }

    #[test]
    fn non_unit_axis_rejected() {
        let sys = build_spin_system(Spin::from_doubled(1)).unwrap();
        assert!(max_projection_state(&sys, [1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn evolve_identity_at_zero_angle() {
        let sys = build_spin_system(Spin::from_doubled(3)).unwrap();
        let psi = max_projection_state(&sys, X_AXIS).unwrap();
        let out = evolve(&psi, sys.jz(), 0.0).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(out.amplitudes()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn evolve_half_spin_closed_form() {
        // Independent 2x2 closed form: rotation about z by phi sends
        // |+x> to (e^{-i phi/2}, e^{+i phi/2})/sqrt(2), so <Jy> = sin(phi)/2.
        let sys = build_spin_system(Spin::from_doubled(1)).unwrap();
        let psi0 = max_projection_state(&sys, X_AXIS).unwrap();
        for phi in [0.05, 0.3, 1.2] {
            let psi = evolve(&psi0, sys.jz(), phi).unwrap();
            let jy = expectation(&psi, sys.jy()).unwrap();
            assert_abs_diff_eq!(jy, 0.5 * phi.sin(), epsilon = 1e-12);
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let expect0 = Complex64::from_polar(r, -phi / 2.0);
            assert_abs_diff_eq!((psi.amplitudes()[0] - expect0).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn spinor_periodicity() {
        let two_pi = 2.0 * std::f64::consts::PI;
        // Integer J returns to itself after a full turn.
        let sys = build_spin_system(Spin::from_doubled(2)).unwrap();
        let psi0 = max_projection_state(&sys, X_AXIS).unwrap();
        let psi = evolve(&psi0, sys.jz(), two_pi).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(psi0.amplitudes()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-12);
        }
        // Half-integer J picks up an overall sign.
        let sys = build_spin_system(Spin::from_doubled(3)).unwrap();
        let psi0 = max_projection_state(&sys, X_AXIS).unwrap();
        let psi = evolve(&psi0, sys.jz(), two_pi).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(psi0.amplitudes()) {
            assert_abs_diff_eq!((a + b).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn evolve_rejects_non_hermitian() {
        let sys = build_spin_system(Spin::from_doubled(1)).unwrap();
        let psi = max_projection_state(&sys, X_AXIS).unwrap();
        let bad = Operator::from_matrix(sys.jplus().matrix().clone()).unwrap();
        assert!(matches!(evolve(&psi, &bad, 0.1), Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn expectation_examples() {
        for two_j in [1u32, 2, 6] {
            let spin = Spin::from_doubled(two_j);
            let sys = build_spin_system(spin).unwrap();
            let psi = max_projection_state(&sys, X_AXIS).unwrap();
            let j = spin.j();
            assert_abs_diff_eq!(expectation(&psi, sys.jx()).unwrap(), j, epsilon = 1e-10);
            assert_abs_diff_eq!(expectation(&psi, sys.jy()).unwrap(), 0.0, epsilon = 1e-10);
            // <Jy^2> = J/2 on the maximal x-projection state.
            let jy2 = sys.jy() * sys.jy();
            assert_abs_diff_eq!(expectation(&psi, &jy2).unwrap(), j / 2.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn variance_examples() {
        // J = 1/2 -> Var(Jy) = 1/4; J = 3 -> Var(Jy) = 3/2; Var(Jx) = 0.
        let sys = build_spin_system(Spin::from_doubled(1)).unwrap();
        let psi = max_projection_state(&sys, X_AXIS).unwrap();
        assert_abs_diff_eq!(variance(&psi, sys.jy()).unwrap(), 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(variance(&psi, sys.jx()).unwrap(), 0.0, epsilon = 1e-12);

        let sys = build_spin_system(Spin::from_doubled(6)).unwrap();
        let psi = max_projection_state(&sys, X_AXIS).unwrap();
        assert_abs_diff_eq!(variance(&psi, sys.jy()).unwrap(), 1.5, epsilon = 1e-10);
    }

    #[test]
    fn expectation_dimension_mismatch() {
        let sys2 = build_spin_system(Spin::from_doubled(1)).unwrap();
        let sys3 = build_spin_system(Spin::from_doubled(2)).unwrap();
        let psi = max_projection_state(&sys2, X_AXIS).unwrap();
        assert!(matches!(
            expectation(&psi, sys3.jy()),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn debug_json_shape() {
        let sys = build_spin_system(Spin::from_doubled(1)).unwrap();
        let v = sys.jz().to_debug_json();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["entries"].as_array().unwrap().len(), 4);
        assert_eq!(v["entries"][0][0], 0.5);
    }

    #[test]
    fn zero_spin_algebra_allowed() {
        let sys = build_spin_system(Spin::from_doubled(0)).unwrap();
        assert_eq!(sys.dim(), 1);
        let psi = max_projection_state(&sys, Z_AXIS).unwrap();
        assert_abs_diff_eq!(expectation(&psi, sys.jz()).unwrap(), 0.0, epsilon = 1e-15);
    }
}
