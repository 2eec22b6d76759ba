//! Generative signal model: a half-wavelength uniform linear array observing
//! one desired far-field narrowband source, M interfering sources, and white
//! noise. Produces steering vectors, seeded training snapshots, and the exact
//! interference-plus-noise covariance used by the oracle metrics.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, ComplexVector};

/// Uniform linear array with half-wavelength element spacing (the only
/// supported geometry).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ula {
    n_elements: usize,
}

impl Ula {
    pub fn new(n_elements: usize) -> Result<Self> {
        if n_elements < 2 {
            return Err(Error::invalid("Ula::new", "need at least 2 elements"));
        }
        Ok(Ula { n_elements })
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn spacing_wavelengths(&self) -> f64 {
        0.5
    }
}

/// A far-field narrowband point source: direction of arrival in degrees from
/// broadside, and power on a linear scale relative to unit noise power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Source {
    doa_deg: f64,
    power: f64,
}

impl Source {
    pub fn new(doa_deg: f64, power: f64) -> Result<Self> {
        if !doa_deg.is_finite() || doa_deg.abs() >= 90.0 {
            return Err(Error::invalid(
                "Source::new",
                format!("doa_deg must lie in (-90, 90), got {doa_deg}"),
            ));
        }
        if !power.is_finite() || power < 0.0 {
            return Err(Error::invalid(
                "Source::new",
                format!("power must be finite and >= 0, got {power}"),
            ));
        }
        Ok(Source { doa_deg, power })
    }

    pub fn doa_deg(&self) -> f64 {
        self.doa_deg
    }

    pub fn power(&self) -> f64 {
        self.power
    }
}

/// Complete description of one simulated environment.
///
/// `signal_in_training` controls whether the desired source contaminates the
/// training snapshots (it always does in the replicated experiments; turning
/// it off gives the classical signal-free training regime).
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    array: Ula,
    desired: Source,
    interferers: Vec<Source>,
    noise_power: f64,
    signal_in_training: bool,
}

impl Scenario {
    pub fn new(
        array: Ula,
        desired: Source,
        interferers: Vec<Source>,
        noise_power: f64,
        signal_in_training: bool,
    ) -> Result<Self> {
        if !noise_power.is_finite() || noise_power <= 0.0 {
            return Err(Error::invalid(
                "Scenario::new",
                format!("noise_power must be finite and > 0, got {noise_power}"),
            ));
        }
        Self::build(array, desired, interferers, noise_power, signal_in_training)
    }

    /// Same as [`Scenario::new`] but permits zero noise power. Noise-free
    /// environments make the interference covariance exactly rank-M, which
    /// the rank and null-steering studies rely on; they are not meaningful
    /// for SINR metrics (the covariance becomes singular).
    pub fn noiseless(
        array: Ula,
        desired: Source,
        interferers: Vec<Source>,
        signal_in_training: bool,
    ) -> Result<Self> {
        Self::build(array, desired, interferers, 0.0, signal_in_training)
    }

    fn build(
        array: Ula,
        desired: Source,
        interferers: Vec<Source>,
        noise_power: f64,
        signal_in_training: bool,
    ) -> Result<Self> {
        for (m, itf) in interferers.iter().enumerate() {
            if itf.doa_deg == desired.doa_deg {
                return Err(Error::invalid(
                    "Scenario",
                    format!("interferer {m} shares the desired DOA {} deg", desired.doa_deg),
                ));
            }
            for (m2, other) in interferers.iter().enumerate().skip(m + 1) {
                if itf.doa_deg == other.doa_deg {
                    return Err(Error::invalid(
                        "Scenario",
                        format!("interferers {m} and {m2} share DOA {} deg", itf.doa_deg),
                    ));
                }
            }
        }
        Ok(Scenario {
            array,
            desired,
            interferers,
            noise_power,
            signal_in_training,
        })
    }

    pub fn array(&self) -> &Ula {
        &self.array
    }

    pub fn desired(&self) -> &Source {
        &self.desired
    }

    pub fn interferers(&self) -> &[Source] {
        &self.interferers
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    pub fn signal_in_training(&self) -> bool {
        self.signal_in_training
    }

    /// Steering vector of the desired direction.
    pub fn desired_steering(&self) -> Result<ComplexVector> {
        steering(&self.array, self.desired.doa_deg)
    }

    /// Draws `l` training snapshots with the crate's fixed sampling
    /// convention (see [`generate_snapshots`][Self::generate_snapshots]
    /// internals): per column, one desired-signal amplitude (if enabled),
    /// then one amplitude per interferer in listed order, then N noise
    /// samples. A given `(scenario, l, seed)` triple is bit-reproducible.
    pub fn generate_snapshots(&self, l: usize, seed: u64) -> Result<DataMatrix> {
        if l == 0 {
            return Err(Error::invalid("generate_snapshots", "l must be >= 1"));
        }
        let n = self.array.n_elements();
        let s_des = self.desired_steering()?;
        let s_int: Vec<ComplexVector> = self
            .interferers
            .iter()
            .map(|src| steering(&self.array, src.doa_deg))
            .collect::<Result<_>>()?;

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma_s = self.desired.power.sqrt();
        let sigma_noise = self.noise_power.sqrt();

        let mut x = ComplexMatrix::zeros(n, l)?;
        for t in 0..l {
            let col = x.col_mut(t);
            if self.signal_in_training {
                let a = crandn(&mut rng) * sigma_s;
                for (xi, si) in col.iter_mut().zip(s_des.iter()) {
                    *xi += a * si;
                }
            }
            for (src, sv) in self.interferers.iter().zip(&s_int) {
                let a = crandn(&mut rng) * src.power.sqrt();
                for (xi, si) in col.iter_mut().zip(sv.iter()) {
                    *xi += a * si;
                }
            }
            for xi in col.iter_mut() {
                *xi += crandn(&mut rng) * sigma_noise;
            }
        }
        DataMatrix::new(x)
    }

    /// Exact interference-plus-noise covariance `σ²I + Σ_m p_m s_m s_m^H`.
    /// Never includes the desired source, regardless of `signal_in_training`.
    pub fn true_covariance(&self) -> Result<ComplexMatrix> {
        let n = self.array.n_elements();
        let mut r = ComplexMatrix::zeros(n, n)?;
        for i in 0..n {
            r.set(i, i, Complex64::new(self.noise_power, 0.0));
        }
        for src in &self.interferers {
            let sv = steering(&self.array, src.doa_deg)?;
            for j in 0..n {
                let sj = sv.get(j).conj() * src.power;
                for i in 0..=j {
                    let upd = r.get(i, j) + sv.get(i) * sj;
                    r.set(i, j, upd);
                }
            }
        }
        // Only the upper triangle was accumulated; mirror it.
        for j in 0..n {
            for i in 0..j {
                r.set(j, i, r.get(i, j).conj());
            }
        }
        Ok(r)
    }
}

/// Training data: `l` array snapshots as the columns of an N×L matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    x: ComplexMatrix,
}

impl DataMatrix {
    /// Wraps an N×L snapshot matrix (N ≥ 2 sensors, L ≥ 1 snapshots).
    pub fn new(x: ComplexMatrix) -> Result<Self> {
        if x.rows() < 2 {
            return Err(Error::invalid(
                "DataMatrix::new",
                format!("need at least 2 rows (sensors), got {}", x.rows()),
            ));
        }
        Ok(DataMatrix { x })
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn l(&self) -> usize {
        self.x.cols()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.x
    }
}

/// Steering vector of a half-wavelength ULA toward `doa_deg` (broadside =
/// 0°): entry k is `(1/√N)·exp(+jπ·k·sin θ)`, renormalized to unit Euclidean
/// norm. Phase reference is element 0.
pub fn steering(array: &Ula, doa_deg: f64) -> Result<ComplexVector> {
    if !doa_deg.is_finite() || doa_deg.abs() >= 90.0 {
        return Err(Error::invalid(
            "steering",
            format!("doa_deg must lie in (-90, 90), got {doa_deg}"),
        ));
    }
    let n = array.n_elements();
    let u = std::f64::consts::PI * doa_deg.to_radians().sin();
    let scale = 1.0 / (n as f64).sqrt();
    let mut v: Vec<Complex64> = (0..n)
        .map(|k| {
            let phase = u * k as f64;
            Complex64::new(phase.cos(), phase.sin()) * scale
        })
        .collect();
    // The entries have magnitude 1/√N by construction; renormalize anyway so
    // the unit-norm contract holds to the last bit.
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    ComplexVector::from_vec(v)
}

/// One draw of a circular complex Gaussian with unit total variance
/// (`E|z|² = 1`): polar Box-Muller, `z = sqrt(-ln u₁)·e^{j2πu₂}`.
///
/// The generator is ChaCha8 and the uniforms take the top 53 bits of each
/// 64-bit word, so the stream — and every CSV downstream of it — is
/// reproducible across platforms for a fixed seed.
fn crandn(rng: &mut ChaCha8Rng) -> Complex64 {
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64); // (0, 1]
    let u2 = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64); // [0, 1)
    let r = (-u1.ln()).sqrt();
    let ang = std::f64::consts::TAU * u2;
    Complex64::new(r * ang.cos(), r * ang.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scm(x: &DataMatrix) -> ComplexMatrix {
        let m = x.matrix();
        let g = m.matmul(&m.hermitian_transpose()).unwrap();
        g.scale(Complex64::new(1.0 / x.l() as f64, 0.0)).hermitize()
    }

    #[test]
    fn broadside_steering_is_flat() {
        let s = steering(&Ula::new(4).unwrap(), 0.0).unwrap();
        for i in 0..4 {
            assert!((s.get(i) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn near_endfire_phase_step_approaches_pi() {
        let s = steering(&Ula::new(2).unwrap(), 89.9).unwrap();
        let step = (s.get(1) / s.get(0)).arg();
        assert!((step - std::f64::consts::PI).abs() < 0.01);
    }

    #[test]
    fn steering_inner_product_matches_geometric_series_oracle() {
        let array = Ula::new(8).unwrap();
        let s30 = steering(&array, 30.0).unwrap();
        let s10 = steering(&array, 10.0).unwrap();
        assert!((s30.norm2() - 1.0).abs() < 1e-14);

        // Closed form of (1/N)·Σ_k exp(jπk(sin10° - sin30°)).
        let d = std::f64::consts::PI * (10f64.to_radians().sin() - 30f64.to_radians().sin());
        let num = Complex64::new(0.0, 8.0 * d).exp() - 1.0;
        let den = Complex64::new(0.0, d).exp() - 1.0;
        let oracle = num / den / 8.0;
        let got = s30.inner(&s10).unwrap();
        assert!((got - oracle).norm() < 1e-12);
    }

    #[test]
    fn steering_rejects_out_of_range_angles() {
        let array = Ula::new(4).unwrap();
        assert!(steering(&array, 90.0).is_err());
        assert!(steering(&array, -90.0).is_err());
        assert!(steering(&array, f64::NAN).is_err());
    }

    #[test]
    fn noise_only_scm_approaches_identity() {
        let scenario = Scenario::new(
            Ula::new(8).unwrap(),
            Source::new(0.0, 1.0).unwrap(),
            vec![],
            1.0,
            false, // signal-free: columns are pure noise
        )
        .unwrap();
        let x = scenario.generate_snapshots(10000, 7).unwrap();
        let r = scm(&x);
        let eye = ComplexMatrix::identity(8).unwrap();
        let rel = r.sub(&eye).unwrap().frobenius_norm() / eye.frobenius_norm();
        assert!(rel < 0.05, "relative deviation {rel}");
    }

    #[test]
    fn snapshots_are_bitwise_deterministic() {
        let scenario = Scenario::new(
            Ula::new(6).unwrap(),
            Source::new(3.0, 0.5).unwrap(),
            vec![Source::new(-10.0, 4.0).unwrap()],
            1.0,
            true,
        )
        .unwrap();
        let a = scenario.generate_snapshots(17, 99).unwrap();
        let b = scenario.generate_snapshots(17, 99).unwrap();
        assert_eq!(a, b);
        let c = scenario.generate_snapshots(17, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn noiseless_single_interferer_gives_rank_one_columns() {
        let scenario = Scenario::noiseless(
            Ula::new(5).unwrap(),
            Source::new(0.0, 1.0).unwrap(),
            vec![Source::new(20.0, 2.0).unwrap()],
            false,
        )
        .unwrap();
        let x = scenario.generate_snapshots(3, 1).unwrap();
        let s1 = steering(scenario.array(), 20.0).unwrap();
        for t in 0..3 {
            let col = x.matrix().col_vector(t);
            // component of the column orthogonal to s(θ₁) must vanish
            let coef = s1.inner(&col).unwrap();
            let resid = col.sub(&s1.scale(coef)).unwrap();
            assert!(resid.norm2() <= 1e-12 * col.norm2().max(1e-300));
        }
    }

    #[test]
    fn true_covariance_without_interferers_is_scaled_identity() {
        let scenario = Scenario::new(
            Ula::new(4).unwrap(),
            Source::new(0.0, 1.0).unwrap(),
            vec![],
            1.0,
            true,
        )
        .unwrap();
        let r = scenario.true_covariance().unwrap();
        assert!(r.sub(&ComplexMatrix::identity(4).unwrap()).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn single_interferer_covariance_spectrum() {
        let p = 50.0;
        let scenario = Scenario::new(
            Ula::new(6).unwrap(),
            Source::new(0.0, 1.0).unwrap(),
            vec![Source::new(25.0, p).unwrap()],
            1.0,
            true,
        )
        .unwrap();
        let r = scenario.true_covariance().unwrap();
        let evd = crate::numerics::herm_evd(&r).unwrap();
        // unit-norm steering makes the spectrum {1 + p, 1, ..., 1}
        assert!((evd.values[0] - (1.0 + p)).abs() < 1e-10);
        for &v in &evd.values[1..] {
            assert!((v - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn interference_covariance_has_rank_m() {
        let scenario = Scenario::new(
            Ula::new(12).unwrap(),
            Source::new(3.0, 1.0).unwrap(),
            vec![
                Source::new(-2.0, 10.0).unwrap(),
                Source::new(-4.0, 10.0).unwrap(),
                Source::new(-6.0, 10.0).unwrap(),
            ],
            1.0,
            true,
        )
        .unwrap();
        let r = scenario.true_covariance().unwrap();
        let r_i = r
            .sub(&ComplexMatrix::identity(12).unwrap())
            .unwrap()
            .hermitize();
        let evd = crate::numerics::herm_evd(&r_i).unwrap();
        let cut = crate::numerics::default_rank_rtol(12) * evd.values[0];
        let rank = evd.values.iter().filter(|&&v| v > cut).count();
        assert_eq!(rank, 3);
    }

    #[test]
    fn scm_converges_to_covariance_plus_signal_term() {
        // With the signal present in training, the expected SCM is
        // R_{i+n} + σ_s²·s s^H. Check the error decays with L.
        let scenario = Scenario::new(
            Ula::new(4).unwrap(),
            Source::new(10.0, 2.0).unwrap(),
            vec![Source::new(-30.0, 5.0).unwrap()],
            1.0,
            true,
        )
        .unwrap();
        let s = scenario.desired_steering().unwrap();
        let mut expected = scenario.true_covariance().unwrap();
        for j in 0..4 {
            for i in 0..4 {
                let upd = expected.get(i, j) + s.get(i) * s.get(j).conj() * 2.0;
                expected.set(i, j, upd);
            }
        }
        let mut prev = f64::INFINITY;
        for (l, seed) in [(100usize, 11u64), (1000, 12), (10000, 13)] {
            let x = scenario.generate_snapshots(l, seed).unwrap();
            let rel = scm(&x).sub(&expected).unwrap().frobenius_norm()
                / expected.frobenius_norm();
            assert!(rel < 15.0 / (l as f64).sqrt(), "L={l}: rel err {rel}");
            assert!(rel < prev, "error did not decay at L={l}");
            prev = rel;
        }
    }

    #[test]
    fn scenario_rejects_duplicate_doas_and_bad_noise() {
        let array = Ula::new(4).unwrap();
        let desired = Source::new(3.0, 1.0).unwrap();
        let dup_desired = vec![Source::new(3.0, 1.0).unwrap()];
        assert!(Scenario::new(array, desired, dup_desired, 1.0, true).is_err());
        let dup_pair = vec![
            Source::new(-5.0, 1.0).unwrap(),
            Source::new(-5.0, 2.0).unwrap(),
        ];
        assert!(Scenario::new(array, desired, dup_pair, 1.0, true).is_err());
        assert!(Scenario::new(array, desired, vec![], 0.0, true).is_err());
        assert!(Scenario::noiseless(array, desired, vec![], true).is_ok());
    }
}
