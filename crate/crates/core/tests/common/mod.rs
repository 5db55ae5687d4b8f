//! Independent oracles shared by the integration suites.
//!
//! Everything here is built from closed-form textbook expressions (exact
//! integer factorials, the Wigner small-d rotation formula, Bernoulli
//! statistics) and never calls the library's eigensolver or sampler, so it
//! can serve as a second route for cross-checking them.
#![allow(dead_code)]

use num_complex::Complex64;

/// n! as f64 from an exact u128 product (n <= 34 stays exact in u128).
pub fn factorial(n: u32) -> f64 {
    assert!(n <= 34, "factorial table limited to 34!");
    let mut acc: u128 = 1;
    for k in 2..=n as u128 {
        acc *= k;
    }
    acc as f64
}

/// Wigner small-d matrix element d^J_{m'm}(beta) = <J m'| e^{-i beta Jy} |J m>,
/// with doubled arguments so half-integers stay exact.
pub fn wigner_d(two_j: u32, two_mp: i32, two_m: i32, beta: f64) -> f64 {
    let tj = two_j as i32;
    assert!(two_mp.abs() <= tj && two_m.abs() <= tj);
    assert_eq!((tj + two_mp) % 2, 0);
    assert_eq!((tj + two_m) % 2, 0);

    let jpm = (tj + two_m) / 2; // j + m
    let jmm = (tj - two_m) / 2; // j - m
    let jpmp = (tj + two_mp) / 2; // j + m'
    let jmmp = (tj - two_mp) / 2; // j - m'
    let mp_minus_m = (two_mp - two_m) / 2;

    let prefactor = (factorial(jpmp as u32)
        * factorial(jmmp as u32)
        * factorial(jpm as u32)
        * factorial(jmm as u32))
    .sqrt();

    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let s_min = 0.max(-mp_minus_m);
    let s_max = jpm.min(jmmp);
    let mut sum = 0.0;
    for k in s_min..=s_max {
        let sign = if (mp_minus_m + k) % 2 == 0 { 1.0 } else { -1.0 };
        let denom = factorial((jpm - k) as u32)
            * factorial(k as u32)
            * factorial((mp_minus_m + k) as u32)
            * factorial((jmmp - k) as u32);
        // Exponents 2j + m - m' - 2k and m' - m + 2k, evaluated in doubled units.
        let cos_exp = (2 * tj as i64 + two_m as i64 - two_mp as i64) / 2 - 2 * k as i64;
        let sin_exp = mp_minus_m as i64 + 2 * k as i64;
        sum += sign / denom * c.powi(cos_exp as i32) * s.powi(sin_exp as i32);
    }
    prefactor * sum
}

/// Amplitudes (in the Jz basis, m' = J, J-1, ..., -J) of the eigenstate of
/// axis.J with eigenvalue m, where the axis has polar angle theta and
/// azimuth phi_az: <m'| R(phi_az, theta, 0) |J m>.
pub fn axis_eigenstate(two_j: u32, two_m: i32, theta: f64, phi_az: f64) -> Vec<Complex64> {
    let tj = two_j as i32;
    let dim = two_j as usize + 1;
    let mut amps = Vec::with_capacity(dim);
    for i in 0..dim {
        let two_mp = tj - 2 * i as i32;
        let d = wigner_d(two_j, two_mp, two_m, theta);
        let phase = Complex64::from_polar(1.0, -(two_mp as f64 / 2.0) * phi_az);
        amps.push(phase * d);
    }
    amps
}

/// |J, J>_x in the Jz basis.
pub fn x_polarized_state(two_j: u32) -> Vec<Complex64> {
    axis_eigenstate(two_j, two_j as i32, std::f64::consts::FRAC_PI_2, 0.0)
}

/// Jy eigenstate with eigenvalue m in the Jz basis.
pub fn y_basis_state(two_j: u32, two_m: i32) -> Vec<Complex64> {
    axis_eigenstate(two_j, two_m, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
}

/// Closed-form Born probabilities of measuring Jy = m (ordered m = J..-J)
/// after preparing |J,J>_x and precessing about z by phi.
pub fn born_probabilities(two_j: u32, phi: f64) -> Vec<f64> {
    let tj = two_j as i32;
    let dim = two_j as usize + 1;
    let x_state = x_polarized_state(two_j);
    let mut probs = Vec::with_capacity(dim);
    for k in 0..dim {
        let two_m = tj - 2 * k as i32;
        let y_state = y_basis_state(two_j, two_m);
        let mut amp = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            let two_mp = tj - 2 * i as i32;
            // e^{-i m' phi} from the exact diagonal precession.
            let rot = Complex64::from_polar(1.0, -(two_mp as f64 / 2.0) * phi);
            amp += y_state[i].conj() * rot * x_state[i];
        }
        probs.push(amp.norm_sqr());
    }
    probs
}

/// Delta-method sensitivity of one campaign: sigma(omega_hat) =
/// 1 / (sqrt(2J) * t1 * sqrt(shots)), exact for the rotated coherent state
/// (the ang 1/cos(phi) factors cancel between slope and spread).
pub fn delta_omega_oracle(two_j: u32, t1: f64, shots: u64) -> f64 {
    1.0 / ((two_j as f64).sqrt() * t1 * (shots as f64).sqrt())
}

/// Frequency-vs-probability acceptance bound: 4 sigma of the multinomial
/// cell, floored at 4/n so near-impossible cells tolerate stray counts.
pub fn multinomial_bound(p: f64, n: u64) -> f64 {
    let nf = n as f64;
    (4.0 * (p * (1.0 - p) / nf).sqrt()).max(4.0 / nf)
}

#[test]
fn wigner_d_matches_half_spin_closed_form() {
    // d^{1/2}(beta) = [[cos b/2, -sin b/2], [sin b/2, cos b/2]].
    for beta in [0.3f64, 1.0, 2.2] {
        let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
        assert!((wigner_d(1, 1, 1, beta) - c).abs() < 1e-14);
        assert!((wigner_d(1, 1, -1, beta) + s).abs() < 1e-14);
        assert!((wigner_d(1, -1, 1, beta) - s).abs() < 1e-14);
        assert!((wigner_d(1, -1, -1, beta) - c).abs() < 1e-14);
    }
}

#[test]
fn x_polarized_half_spin_is_plus_state() {
    let amps = x_polarized_state(1);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((amps[0].re - r).abs() < 1e-14 && amps[0].im.abs() < 1e-14);
    assert!((amps[1].re - r).abs() < 1e-14 && amps[1].im.abs() < 1e-14);
}

#[test]
fn born_oracle_reproduces_half_spin_formula() {
    for phi in [0.0, 0.1, 0.5, -0.3] {
        let p = born_probabilities(1, phi);
        assert!((p[0] - (1.0 + phi.sin()) / 2.0).abs() < 1e-12);
        assert!((p[0] + p[1] - 1.0).abs() < 1e-12);
    }
}
