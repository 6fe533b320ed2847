//! Full symmetric eigendecomposition by the cyclic Jacobi method.

use thiserror::Error;

use crate::graph::DistanceProfile;
use crate::matrix::SymMatrix;

/// Convergence threshold relative to the Frobenius norm.
pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigenError {
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (max off-diagonal {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("matrix has a non-finite entry")]
    NonFinite,
    #[error("largest eigenvalue is not simple (gap {gap:e})")]
    DegenerateTop { gap: f64 },
    #[error("top eigenvector is not strictly positive (entry {index} = {value:e})")]
    NotPositive { index: usize, value: f64 },
}

/// Eigenvalues in descending order, optionally with orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    vectors: Option<Vec<Vec<f64>>>,
}

impl Spectrum {
    /// Sorts `values` descending. Exact ties keep their input order.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values, vectors: None }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvector `i` pairs with `values()[i]`.
    pub fn vectors(&self) -> Option<&[Vec<f64>]> {
        self.vectors.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn smallest(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Largest minus smallest eigenvalue; zero for a 1×1 matrix.
    pub fn spread(&self) -> f64 {
        if self.values.is_empty() {
            0.0
        } else {
            self.largest() - self.smallest()
        }
    }

    pub fn without_vectors(mut self) -> Self {
        self.vectors = None;
        self
    }
}

pub fn spectral_spread(s: &Spectrum) -> f64 {
    s.spread()
}

/// Cyclic Jacobi rotations until every off-diagonal entry is at most
/// `tol · ‖m‖_F`.
pub fn sym_eigen(m: &SymMatrix, tol: f64) -> Result<Spectrum, EigenError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(EigenError::BadTolerance(tol));
    }
    if m.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(EigenError::NonFinite);
    }
    let n = m.order();
    let mut a = m.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = tol * m.frobenius_sq().sqrt();
    let max_off = |a: &[f64]| {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(a[p * n + q].abs());
            }
        }
        off
    };

    let mut sweeps = 0;
    loop {
        let off = max_off(&a);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(EigenError::NoConvergence { sweeps, residual: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let arp = a[r * n + p];
                        let arq = a[r * n + q];
                        let new_rp = arp - s * (arq + tau * arp);
                        let new_rq = arq + s * (arp - tau * arq);
                        a[r * n + p] = new_rp;
                        a[p * n + r] = new_rp;
                        a[r * n + q] = new_rq;
                        a[q * n + r] = new_rq;
                    }
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = vrp - s * (vrq + tau * vrp);
                    v[r * n + q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: exact ties stay in column order
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|r| v[r * n + k]).collect())
        .collect();
    Ok(Spectrum {
        values,
        vectors: Some(vectors),
    })
}

/// Eigenvalues only, at [`DEFAULT_TOL`].
pub fn eigenvalues(m: &SymMatrix) -> Result<Spectrum, EigenError> {
    sym_eigen(m, DEFAULT_TOL).map(Spectrum::without_vectors)
}

/// Positive unit eigenvector of the largest eigenvalue.
///
/// Fails when the top eigenvalue is not simple or the eigenvector has an
/// entry `<= tol` after sign normalisation, which is what a reducible input
/// (for example `D_1`, a diagonal matrix) produces.
pub fn perron_vector(m: &SymMatrix, tol: f64) -> Result<Vec<f64>, EigenError> {
    let spec = sym_eigen(m, DEFAULT_TOL)?;
    if m.order() == 1 {
        return Ok(vec![1.0]);
    }
    let vals = spec.values();
    let gap = vals[0] - vals[1];
    if gap <= tol * vals[0].abs().max(1.0) {
        return Err(EigenError::DegenerateTop { gap });
    }
    let mut x = spec.vectors().unwrap()[0].clone();
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|e| *e = -*e);
    }
    if let Some((index, &value)) = x.iter().enumerate().find(|(_, &e)| e <= tol) {
        return Err(EigenError::NotPositive { index, value });
    }
    Ok(x)
}

/// `2W/n`, the Rayleigh quotient of `D_α` at the all-ones vector. It is a
/// lower bound on the spectral radius for every `α`, attained exactly by
/// transmission regular graphs.
pub fn rayleigh_lower_bound(p: &DistanceProfile) -> f64 {
    2.0 * p.wiener as f64 / p.order() as f64
}
