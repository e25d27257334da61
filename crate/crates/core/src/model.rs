//! Two-electron basis and the Hubbard Hamiltonian of the inverter.

use crate::error::{Error, Result};

/// Dimension of the two-electron Hilbert space of the double dot.
pub const DIM: usize = 6;

/// On-site level energy. All energies are measured from it.
pub const ON_SITE_ENERGY: f64 = 0.0;

/// Physical knobs of one inverter instance.
///
/// `h_a` is the Zeeman energy of the local field on dot A with `g μ_B`
/// absorbed, so a spin-up electron on A gains `-h_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub v: f64,
    pub u: f64,
    pub h_a: f64,
}

impl ModelParams {
    pub fn new(v: f64, u: f64, h_a: f64) -> Result<Self> {
        let p = Self { v, u, h_a };
        p.validate()?;
        Ok(p)
    }

    /// Dimensionless parameters with `v = 1`.
    pub fn dimensionless(u_over_v: f64, h_over_v: f64) -> Result<Self> {
        Self::new(1.0, u_over_v, h_over_v)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.v.is_finite() && self.u.is_finite() && self.h_a.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "non-finite input (v={}, u={}, h_a={})",
                self.v, self.u, self.h_a
            )));
        }
        if self.v <= 0.0 {
            return Err(Error::InvalidParams(format!("v must be > 0, got {}", self.v)));
        }
        if self.u < 0.0 {
            return Err(Error::InvalidParams(format!("u must be >= 0, got {}", self.u)));
        }
        Ok(())
    }

    /// Same dot parameters with a different field.
    pub fn with_field(&self, h_a: f64) -> Self {
        Self { h_a, ..*self }
    }

    /// Energy scale used for relative tolerances.
    pub fn scale(&self) -> f64 {
        self.v.abs().max(self.u.abs()).max(self.h_a.abs()).max(1.0)
    }
}

/// One of the six two-electron configurations, in the fixed basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisState {
    /// `|↑,↓⟩`
    UpDown,
    /// `|↓,↑⟩`
    DownUp,
    /// `|↑↓,0⟩`, both electrons on dot A
    DoubleA,
    /// `|0,↑↓⟩`, both electrons on dot B
    DoubleB,
    /// `|↑,↑⟩`
    UpUp,
    /// `|↓,↓⟩`
    DownDown,
}

/// Basis order shared by every vector and matrix in the crate.
pub const BASIS: [BasisState; DIM] = [
    BasisState::UpDown,
    BasisState::DownUp,
    BasisState::DoubleA,
    BasisState::DoubleB,
    BasisState::UpUp,
    BasisState::DownDown,
];

/// Occupation numbers `[n_A↑, n_A↓, n_B↑, n_B↓]`.
type Occupation = [u8; 4];

impl BasisState {
    /// Zero-based position in [`BASIS`].
    pub fn index(self) -> usize {
        BASIS.iter().position(|&b| b == self).unwrap()
    }

    /// One-based label `|1⟩ .. |6⟩`.
    pub fn label(self) -> usize {
        self.index() + 1
    }

    pub fn occupation(self) -> Occupation {
        match self {
            BasisState::UpDown => [1, 0, 0, 1],
            BasisState::DownUp => [0, 1, 1, 0],
            BasisState::DoubleA => [1, 1, 0, 0],
            BasisState::DoubleB => [0, 0, 1, 1],
            BasisState::UpUp => [1, 0, 1, 0],
            BasisState::DownDown => [0, 1, 0, 1],
        }
    }

    /// `⟨S_zA⟩` of the configuration.
    pub fn spin_a(self) -> f64 {
        let n = self.occupation();
        0.5 * (f64::from(n[0]) - f64::from(n[1]))
    }

    /// `⟨S_zB⟩` of the configuration.
    pub fn spin_b(self) -> f64 {
        let n = self.occupation();
        0.5 * (f64::from(n[2]) - f64::from(n[3]))
    }

    pub fn ket(self) -> &'static str {
        match self {
            BasisState::UpDown => "|↑,↓⟩",
            BasisState::DownUp => "|↓,↑⟩",
            BasisState::DoubleA => "|↑↓,0⟩",
            BasisState::DoubleB => "|0,↑↓⟩",
            BasisState::UpUp => "|↑,↑⟩",
            BasisState::DownDown => "|↓,↓⟩",
        }
    }
}

/// True when `a` and `b` differ by a single electron hopping between the
/// dots without flipping its spin.
fn connected_by_hop(a: Occupation, b: Occupation) -> bool {
    // orbital order is A↑, A↓, B↑, B↓; a hop moves one spin channel across
    (0..2).any(|spin| {
        let (a_on_a, a_on_b) = (a[spin], a[spin + 2]);
        let (b_on_a, b_on_b) = (b[spin], b[spin + 2]);
        let other = 1 - spin;
        a[other] == b[other]
            && a[other + 2] == b[other + 2]
            && a_on_a + a_on_b == b_on_a + b_on_b
            && a_on_a != b_on_a
    })
}

/// Real-symmetric Hamiltonian over [`BASIS`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianMatrix {
    pub h: [[f64; DIM]; DIM],
}

impl HamiltonianMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.h[i][j]
    }

    pub fn trace(&self) -> f64 {
        (0..DIM).map(|i| self.h[i][i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.h.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Maximum absolute row sum, an upper bound on the spectral radius.
    pub fn inf_norm(&self) -> f64 {
        self.h
            .iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..DIM).all(|i| (0..i).all(|j| self.h[i][j] == self.h[j][i]))
    }

    pub fn mul_vec(&self, x: &[f64; DIM]) -> [f64; DIM] {
        let mut y = [0.0; DIM];
        for (yi, row) in y.iter_mut().zip(&self.h) {
            *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        y
    }
}

/// Builds the inverter Hamiltonian
/// `-v Σ_σ (a⁺_Aσ a_Bσ + h.c.) + u Σ_i n_i↑ n_i↓ - h_a (n_A↑ - n_A↓)`.
///
/// Fermionic ordering is chosen so that every hopping element equals `-v`,
/// which makes the zero-field ground state all-positive.
pub fn build_hamiltonian(params: &ModelParams) -> Result<HamiltonianMatrix> {
    params.validate()?;
    let mut h = [[0.0; DIM]; DIM];
    for (i, bi) in BASIS.iter().enumerate() {
        let n = bi.occupation();
        let double = f64::from(n[0] * n[1] + n[2] * n[3]);
        let zeeman = -params.h_a * (f64::from(n[0]) - f64::from(n[1]));
        let levels = ON_SITE_ENERGY * f64::from(n.iter().sum::<u8>());
        h[i][i] = levels + params.u * double + zeeman;
        for (j, bj) in BASIS.iter().enumerate().skip(i + 1) {
            if connected_by_hop(n, bj.occupation()) {
                h[i][j] = -params.v;
                h[j][i] = -params.v;
            }
        }
    }
    Ok(HamiltonianMatrix { h })
}
