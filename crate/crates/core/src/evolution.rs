//! Spectral propagation of the switched-on state and its observables.
//!
//! With the field applied at `t = 0`, the state is expanded in the
//! eigenstates of the field-on Hamiltonian,
//! `Ψ(t) = Σ_k A_k Ψ_k e^{-i E_k t}`, and read back in the basis as
//! `f_n(t) = Σ_k A_k B_kn e^{-i E_k t}`. A fixed-step RK4 integrator of the
//! Schrödinger equation is kept alongside as an independent check.

use num_complex::Complex64;

use crate::eigen::EigenSystem;
use crate::error::{Error, Result};
use crate::model::{HamiltonianMatrix, BASIS, DIM};

/// Tolerance on `|Σ|f_n|² − 1|` for a valid state.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Largest accepted `dt·‖H‖∞` for the RK4 oracle.
pub const MAX_STEP_NORM: f64 = 0.1;

/// Amplitudes `f_n` over the basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub amps: [Complex64; DIM],
}

impl StateVector {
    /// Checked constructor; rejects states off the unit sphere.
    pub fn new(amps: [Complex64; DIM]) -> Result<Self> {
        let sv = Self { amps };
        sv.check_norm()?;
        Ok(sv)
    }

    pub fn from_real(amps: [f64; DIM]) -> Result<Self> {
        Self::new(amps.map(|x| Complex64::new(x, 0.0)))
    }

    /// Unchecked constructor for states whose norm drift is itself the
    /// quantity under study.
    pub fn from_raw(amps: [Complex64; DIM]) -> Self {
        Self { amps }
    }

    pub fn basis(n: usize) -> Self {
        let mut amps = [Complex64::new(0.0, 0.0); DIM];
        amps[n] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn check_norm(&self) -> Result<()> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE || !norm_sqr.is_finite() {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(())
    }

    /// `⟨Ψ|H|Ψ⟩`
    pub fn energy(&self, h: &HamiltonianMatrix) -> f64 {
        let hpsi = apply(h, &self.amps);
        self.amps.iter().zip(&hpsi).map(|(a, b)| (a.conj() * b).re).sum()
    }

    /// `max_n |f_n − g_n|`
    pub fn max_distance(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Occupation probabilities `p_n = |f_n|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probabilities {
    pub p: [f64; DIM],
}

impl Probabilities {
    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }
}

/// Spin projections `S_zA`, `S_zB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinObservables {
    pub s_za: f64,
    pub s_zb: f64,
}

/// Initial state expanded in the eigenbasis: `A_k = ⟨Ψ_k|Ψ(0)⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralState {
    pub coeffs: [Complex64; DIM],
    pub eigen: EigenSystem,
}

impl SpectralState {
    pub fn weight(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Expands `initial` over the eigenvectors of `es`.
pub fn project(initial: &StateVector, es: &EigenSystem) -> Result<SpectralState> {
    initial.check_norm()?;
    let coeffs = std::array::from_fn(|k| {
        es.vectors[k]
            .iter()
            .zip(&initial.amps)
            .map(|(b, f)| f * *b)
            .sum::<Complex64>()
    });
    Ok(SpectralState { coeffs, eigen: *es })
}

/// `f_n(t) = Σ_k A_k B_kn e^{-i E_k t}` with `ħ = 1`.
pub fn evolve(ss: &SpectralState, t: f64) -> Result<StateVector> {
    if !t.is_finite() {
        return Err(Error::InvalidTime(format!("t = {t}")));
    }
    let mut amps = [Complex64::new(0.0, 0.0); DIM];
    for (k, (a, e)) in ss.coeffs.iter().zip(&ss.eigen.energies).enumerate() {
        let phase = Complex64::from_polar(1.0, -e * t);
        let ak = a * phase;
        for (f, b) in amps.iter_mut().zip(&ss.eigen.vectors[k]) {
            *f += ak * *b;
        }
    }
    Ok(StateVector { amps })
}

pub fn probabilities(sv: &StateVector) -> Probabilities {
    Probabilities { p: sv.amps.map(|a| a.norm_sqr()) }
}

/// `S_zi = ⟨n_i↑ − n_i↓⟩ / 2`, summed over basis occupations.
pub fn spin_projections(sv: &StateVector) -> SpinObservables {
    let p = probabilities(sv).p;
    let mut s_za = 0.0;
    let mut s_zb = 0.0;
    for (pn, b) in p.iter().zip(BASIS) {
        s_za += pn * b.spin_a();
        s_zb += pn * b.spin_b();
    }
    SpinObservables { s_za, s_zb }
}

fn apply(h: &HamiltonianMatrix, x: &[Complex64; DIM]) -> [Complex64; DIM] {
    std::array::from_fn(|i| h.h[i].iter().zip(x).map(|(a, b)| b * *a).sum())
}

/// `dΨ/dt = −i H Ψ`
fn rhs(h: &HamiltonianMatrix, x: &[Complex64; DIM]) -> [Complex64; DIM] {
    let minus_i = Complex64::new(0.0, -1.0);
    apply(h, x).map(|y| minus_i * y)
}

fn axpy(x: &[Complex64; DIM], a: f64, y: &[Complex64; DIM]) -> [Complex64; DIM] {
    std::array::from_fn(|i| x[i] + y[i] * a)
}

/// Integrates `i dΨ/dt = H Ψ` with classic fixed-step RK4.
///
/// The interval is split into `ceil(t/dt)` equal steps. The result is not
/// renormalized.
pub fn evolve_direct(
    h: &HamiltonianMatrix,
    initial: &StateVector,
    t: f64,
    dt: f64,
) -> Result<StateVector> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidTime(format!("t = {t}")));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidTime(format!("dt = {dt}")));
    }
    let product = dt * h.inf_norm();
    if product > MAX_STEP_NORM {
        return Err(Error::StepTooLarge { dt, product });
    }
    if t == 0.0 {
        return Ok(*initial);
    }
    let steps = (t / dt).ceil() as usize;
    let step = t / steps as f64;
    let mut x = initial.amps;
    for _ in 0..steps {
        let k1 = rhs(h, &x);
        let k2 = rhs(h, &axpy(&x, 0.5 * step, &k1));
        let k3 = rhs(h, &axpy(&x, 0.5 * step, &k2));
        let k4 = rhs(h, &axpy(&x, step, &k3));
        for i in 0..DIM {
            x[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (step / 6.0);
        }
    }
    Ok(StateVector::from_raw(x))
}
