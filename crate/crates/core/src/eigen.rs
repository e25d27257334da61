//! Exact diagonalization by cyclic Jacobi rotations.

use crate::error::{Error, Result};
use crate::evolution::StateVector;
use crate::model::{HamiltonianMatrix, DIM};

/// Maximum number of full Jacobi sweeps.
pub const MAX_SWEEPS: usize = 100;

/// Converged once every off-diagonal element is below this fraction of the
/// Frobenius norm.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;

/// Eigenvalues `E_k` (ascending) and eigenvectors `B_kn`, one per row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem {
    pub energies: [f64; DIM],
    pub vectors: [[f64; DIM]; DIM],
}

impl EigenSystem {
    pub fn vector(&self, k: usize) -> &[f64; DIM] {
        &self.vectors[k]
    }

    /// `max_k ‖H Ψ_k − E_k Ψ_k‖∞`
    pub fn max_residual(&self, h: &HamiltonianMatrix) -> f64 {
        let mut worst = 0.0_f64;
        for (e, psi) in self.energies.iter().zip(&self.vectors) {
            let hpsi = h.mul_vec(psi);
            for (a, b) in hpsi.iter().zip(psi) {
                worst = worst.max((a - e * b).abs());
            }
        }
        worst
    }

    /// `max_jk |⟨Ψ_j|Ψ_k⟩ − δ_jk|`
    pub fn max_orthonormality_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for j in 0..DIM {
            for k in 0..DIM {
                let dot: f64 = self.vectors[j].iter().zip(&self.vectors[k]).map(|(a, b)| a * b).sum();
                let delta = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((dot - delta).abs());
            }
        }
        worst
    }
}

/// Diagonalizes a real-symmetric `N×N` matrix with cyclic Jacobi sweeps.
///
/// Returns unsorted eigenvalues and the accumulated rotation matrix whose
/// columns are the eigenvectors. The sweep order is fixed, so results are
/// bit-reproducible.
pub fn jacobi<const N: usize>(mut a: [[f64; N]; N]) -> Result<([f64; N], [[f64; N]; N])> {
    let mut q = [[0.0; N]; N];
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let frob = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = OFF_DIAGONAL_TOLERANCE * frob;

    let max_off = |a: &[[f64; N]; N]| {
        let mut m = 0.0_f64;
        for p in 0..N {
            for r in (p + 1)..N {
                m = m.max(a[p][r].abs());
            }
        }
        m
    };

    // one extra sweep after the threshold is met; convergence is quadratic,
    // so it takes the residual couplings from ~1e-14·‖H‖ to rounding level
    let mut polished = false;
    let mut sweeps = 0;
    loop {
        let off = max_off(&a);
        if off <= threshold {
            if polished || off == 0.0 {
                break;
            }
            polished = true;
        } else if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..N {
            for r in (p + 1)..N {
                let apr = a[p][r];
                if apr == 0.0 {
                    continue;
                }
                // tan of the rotation angle, smaller root for stability
                let theta = (a[r][r] - a[p][p]) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + theta.mul_add(theta, 1.0).sqrt());
                let c = 1.0 / t.mul_add(t, 1.0).sqrt();
                let s = t * c;

                let app = a[p][p];
                let arr = a[r][r];
                a[p][p] = app - t * apr;
                a[r][r] = arr + t * apr;
                a[p][r] = 0.0;
                a[r][p] = 0.0;
                for k in 0..N {
                    if k == p || k == r {
                        continue;
                    }
                    let akp = a[k][p];
                    let akr = a[k][r];
                    let new_kp = c * akp - s * akr;
                    let new_kr = s * akp + c * akr;
                    a[k][p] = new_kp;
                    a[p][k] = new_kp;
                    a[k][r] = new_kr;
                    a[r][k] = new_kr;
                }
                for row in q.iter_mut() {
                    let qp = row[p];
                    let qr = row[r];
                    row[p] = c * qp - s * qr;
                    row[r] = s * qp + c * qr;
                }
            }
        }
    }

    let mut values = [0.0; N];
    for (i, v) in values.iter_mut().enumerate() {
        *v = a[i][i];
    }
    Ok((values, q))
}

/// Flips the sign of `v` so that its largest-magnitude component is
/// positive. Ties go to the lowest index.
pub fn fix_sign<const N: usize>(v: &mut [f64; N]) {
    let mut lead = 0;
    for i in 1..N {
        if v[i].abs() > v[lead].abs() {
            lead = i;
        }
    }
    if v[lead] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Solves `H Ψ_k = E_k Ψ_k`, with energies ascending and sign-fixed
/// eigenvectors.
pub fn diagonalize(h: &HamiltonianMatrix) -> Result<EigenSystem> {
    let (values, q) = jacobi(h.h)?;
    let mut order: [usize; DIM] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    let mut energies = [0.0; DIM];
    let mut vectors = [[0.0; DIM]; DIM];
    for (k, &col) in order.iter().enumerate() {
        energies[k] = values[col];
        for n in 0..DIM {
            vectors[k][n] = q[n][col];
        }
        fix_sign(&mut vectors[k]);
    }
    Ok(EigenSystem { energies, vectors })
}

/// Lowest eigenvector as a real-amplitude state with a positive `|1⟩`
/// component.
pub fn ground_state(es: &EigenSystem) -> Result<StateVector> {
    let scale = es.energies.iter().fold(1.0_f64, |m, e| m.max(e.abs()));
    let gap = es.energies[1] - es.energies[0];
    if gap <= 1e-12 * scale {
        return Err(Error::DegenerateGround { gap });
    }
    let mut v = es.vectors[0];
    if v[0] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    StateVector::from_real(v)
}
