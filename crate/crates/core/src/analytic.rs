//! Closed-form references: zero-field ground state, the `u = 0` dynamics,
//! the singlet-block reduction and the strong-coupling (exchange) limit.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use crate::eigen::jacobi;
use crate::error::{Error, Result};
use crate::evolution::{Probabilities, StateVector};
use crate::model::{HamiltonianMatrix, ModelParams};

/// `√(u² + 16 v²)`
fn singlet_root(v: f64, u: f64) -> f64 {
    u.hypot(4.0 * v)
}

/// Zero-field ground-state energy `(u − √(u²+16v²))/2`, evaluated in the
/// cancellation-free form `−8v² / (u + √(u²+16v²))`.
pub fn ground_energy(v: f64, u: f64) -> f64 {
    -8.0 * v * v / (u + singlet_root(v, u))
}

/// Doublon amplitude ratio `(√(u²+16v²) − u) / 4v` of the ground state.
pub fn doublon_ratio(v: f64, u: f64) -> f64 {
    4.0 * v / (singlet_root(v, u) + u)
}

/// The zero-field ground state
/// `½√(1 + u/√(u²+16v²)) (|1⟩ + |2⟩ + c|3⟩ + c|4⟩)`.
pub fn ground_state_closed_form(params: &ModelParams) -> Result<StateVector> {
    params.validate()?;
    if params.h_a != 0.0 {
        return Err(Error::InvalidParams(format!(
            "closed-form ground state needs h_a = 0, got {}",
            params.h_a
        )));
    }
    let (v, u) = (params.v, params.u);
    let prefactor = 0.5 * (1.0 + u / singlet_root(v, u)).sqrt();
    let c = prefactor * doublon_ratio(v, u);
    StateVector::from_real([prefactor, prefactor, c, c, 0.0, 0.0])
}

/// Dynamics at `u = 0`: frequency and spin amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticU0 {
    pub v: f64,
    pub h_a: f64,
    /// `√(h_a² + 4v²)`
    pub omega: f64,
    /// `2 h_a v / (h_a² + 4v²)`
    pub amplitude: f64,
}

impl AnalyticU0 {
    pub fn new(v: f64, h_a: f64) -> Self {
        let omega_sqr = h_a * h_a + 4.0 * v * v;
        Self { v, h_a, omega: omega_sqr.sqrt(), amplitude: 2.0 * h_a * v / omega_sqr }
    }

    /// First maximum of `S_zA(t)`.
    pub fn t0(&self) -> f64 {
        PI / self.omega
    }

    fn sin_sqr(&self, t: f64) -> f64 {
        let s = (0.5 * self.omega * t).sin();
        s * s
    }

    pub fn probabilities(&self, t: f64) -> Probabilities {
        let x = 2.0 * self.amplitude * self.sin_sqr(t);
        let p1 = 0.25 * (1.0 + x) * (1.0 + x);
        let p2 = 0.25 * (1.0 - x) * (1.0 - x);
        let p3 = 0.25 * (1.0 - x * x);
        Probabilities { p: [p1, p2, p3, p3, 0.0, 0.0] }
    }

    pub fn spin(&self, t: f64) -> f64 {
        self.amplitude * self.sin_sqr(t)
    }
}

pub fn u0_probabilities(v: f64, h_a: f64, t: f64) -> Probabilities {
    AnalyticU0::new(v, h_a).probabilities(t)
}

pub fn u0_spin(v: f64, h_a: f64, t: f64) -> f64 {
    AnalyticU0::new(v, h_a).spin(t)
}

/// Hamiltonian restricted to `{|1⟩, |2⟩, (|3⟩+|4⟩)/√2}`, plus the levels
/// that decouple from it: the antisymmetric doublon `(|3⟩−|4⟩)/√2` and the
/// two triplets `|5⟩`, `|6⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingletBlock {
    pub block: [[f64; 3]; 3],
    pub decoupled: [f64; 3],
    /// Largest matrix element between the block and the decoupled states.
    pub leakage: f64,
}

pub fn singlet_block_reduce(h: &HamiltonianMatrix) -> SingletBlock {
    let m = &h.h;
    let sym = |i: usize| (m[i][2] + m[i][3]) * FRAC_1_SQRT_2;
    let anti = |i: usize| (m[i][2] - m[i][3]) * FRAC_1_SQRT_2;
    let d_sym = 0.5 * (m[2][2] + m[3][3]) + m[2][3];
    let d_anti = 0.5 * (m[2][2] + m[3][3]) - m[2][3];
    let block = [
        [m[0][0], m[0][1], sym(0)],
        [m[1][0], m[1][1], sym(1)],
        [sym(0), sym(1), d_sym],
    ];
    let mut leakage = [anti(0), anti(1), 0.5 * (m[2][2] - m[3][3])]
        .iter()
        .fold(0.0_f64, |a, x| a.max(x.abs()));
    for k in [4, 5] {
        for j in 0..6 {
            if j != k {
                leakage = leakage.max(m[k][j].abs());
            }
        }
    }
    SingletBlock { block, decoupled: [d_anti, m[4][4], m[5][5]], leakage }
}

impl SingletBlock {
    /// Coefficients `[c0, c1, c2]` of `det(λ − B) = λ³ − c2 λ² + c1 λ − c0`.
    pub fn characteristic_cubic(&self) -> [f64; 3] {
        let b = &self.block;
        let c2 = b[0][0] + b[1][1] + b[2][2];
        let c1 = b[0][0] * b[1][1] + b[0][0] * b[2][2] + b[1][1] * b[2][2]
            - b[0][1] * b[0][1]
            - b[0][2] * b[0][2]
            - b[1][2] * b[1][2];
        let c0 = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[1][2])
            - b[0][1] * (b[0][1] * b[2][2] - b[1][2] * b[0][2])
            + b[0][2] * (b[0][1] * b[1][2] - b[1][1] * b[0][2]);
        [c0, c1, c2]
    }

    /// Roots of the characteristic cubic, ascending.
    ///
    /// Trigonometric solution for a real-symmetric 3×3 matrix, then two
    /// Newton steps on the cubic to recover full precision.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let b = &self.block;
        let off = b[0][1] * b[0][1] + b[0][2] * b[0][2] + b[1][2] * b[1][2];
        let mut roots = if off == 0.0 {
            [b[0][0], b[1][1], b[2][2]]
        } else {
            let q = (b[0][0] + b[1][1] + b[2][2]) / 3.0;
            let d = [b[0][0] - q, b[1][1] - q, b[2][2] - q];
            let p = ((d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + 2.0 * off) / 6.0).sqrt();
            // det((B − qI)/p) / 2
            let r = (d[0] * (d[1] * d[2] - b[1][2] * b[1][2])
                - b[0][1] * (b[0][1] * d[2] - b[1][2] * b[0][2])
                + b[0][2] * (b[0][1] * b[1][2] - d[1] * b[0][2]))
                / (2.0 * p * p * p);
            let phi = r.clamp(-1.0, 1.0).acos() / 3.0;
            let hi = q + 2.0 * p * phi.cos();
            let lo = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
            [lo, 3.0 * q - hi - lo, hi]
        };
        let [c0, c1, c2] = self.characteristic_cubic();
        for x in roots.iter_mut() {
            for _ in 0..2 {
                let f = ((*x - c2) * *x + c1) * *x - c0;
                let df = (3.0 * *x - 2.0 * c2) * *x + c1;
                if df != 0.0 && f.is_finite() {
                    let next = *x - f / df;
                    if next.is_finite() {
                        *x = next;
                    }
                }
            }
        }
        roots.sort_by(f64::total_cmp);
        roots
    }

    /// Block eigenvalues by Jacobi rotation, for comparison with the cubic.
    pub fn eigenvalues_jacobi(&self) -> Result<[f64; 3]> {
        let (mut vals, _) = jacobi(self.block)?;
        vals.sort_by(f64::total_cmp);
        Ok(vals)
    }

    /// Cubic roots together with the decoupled levels, ascending.
    pub fn spectrum(&self) -> [f64; 6] {
        let r = self.eigenvalues();
        let mut all = [r[0], r[1], r[2], self.decoupled[0], self.decoupled[1], self.decoupled[2]];
        all.sort_by(f64::total_cmp);
        all
    }

    /// Embeds a block vector over `{|1⟩, |2⟩, (|3⟩+|4⟩)/√2}` in the full basis.
    pub fn lift(x: &[f64; 3]) -> [f64; 6] {
        let d = x[2] * FRAC_1_SQRT_2;
        [x[0], x[1], d, d, 0.0, 0.0]
    }
}

/// Reference values in the exchange limit `u ≫ v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergAsymptotics {
    /// `J = v²/u`
    pub j: f64,
    /// `2v²/u`
    pub h_opt: f64,
    /// `π u / (4√2 v²)`
    pub t0_limit: f64,
}

impl HeisenbergAsymptotics {
    /// Switching time of the two-spin exchange model, `π / 2ω` with
    /// `ω = √(h_a² + 4J²)`.
    pub fn exchange_model_t0(&self, h_a: f64) -> f64 {
        PI / (2.0 * h_a.hypot(2.0 * self.j))
    }
}

pub fn heisenberg_limits(params: &ModelParams) -> Result<HeisenbergAsymptotics> {
    params.validate()?;
    if params.u <= 0.0 {
        return Err(Error::InvalidParams("exchange limit needs u > 0".into()));
    }
    let (v, u) = (params.v, params.u);
    let j = v * v / u;
    Ok(HeisenbergAsymptotics { j, h_opt: 2.0 * j, t0_limit: PI * u / (4.0 * SQRT_2 * v * v) })
}
