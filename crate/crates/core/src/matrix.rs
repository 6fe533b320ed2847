//! Dense symmetric matrices built from distance profiles, and quotient
//! matrices over vertex partitions.

use std::fmt::Write as _;
use std::ops::Index;

use thiserror::Error;

use crate::graph::DistanceProfile;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("alpha = {0} is outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("dimension mismatch: expected order {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
}

/// Returns `alpha` if it lies in `[0, 1]`.
pub fn check_alpha(alpha: f64) -> Result<f64, MatrixError> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(alpha)
    } else {
        Err(MatrixError::AlphaOutOfRange(alpha))
    }
}

/// Dense real symmetric matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds the matrix from the upper triangle supplied by `f(i, j)`, `i <= j`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; order * order];
        for i in 0..order {
            for j in i..order {
                let x = f(i, j);
                data[i * order + j] = x;
                data[j * order + i] = x;
            }
        }
        SymMatrix { order, data }
    }

    /// Accepts row-major data after checking exact symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let order = rows.len();
        for r in rows {
            if r.len() != order {
                return Err(MatrixError::Dimension { expected: order, found: r.len() });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if let Some(j) = (0..i).find(|&j| row[j] != rows[j][i]) {
                return Err(MatrixError::NotSymmetric(i, j));
            }
        }
        Ok(SymMatrix {
            order,
            data: rows.concat(),
        })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        SymMatrix::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self[(i, i)]).sum()
    }

    /// Sum of squared entries.
    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    pub fn scaled(&self, factor: f64) -> SymMatrix {
        SymMatrix {
            order: self.order,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    /// Principal submatrix on `rows` (in the given order).
    pub fn principal(&self, rows: &[usize]) -> SymMatrix {
        SymMatrix::from_fn(rows.len(), |i, j| self[(rows[i], rows[j])])
    }

    /// Tab-separated rendering, one row per line.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(out, "{}", row.join("\t")).unwrap();
        }
        out
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.order + j]
    }
}

/// `D_α = α·Tr + (1 − α)·D`.
pub fn generalized_distance_matrix(p: &DistanceProfile, alpha: f64) -> Result<SymMatrix, MatrixError> {
    let alpha = check_alpha(alpha)?;
    Ok(SymMatrix::from_fn(p.order(), |i, j| {
        if i == j {
            alpha * p.transmissions[i] as f64
        } else {
            (1.0 - alpha) * p.dist(i, j) as f64
        }
    }))
}

/// The plain distance matrix `D = D_0`.
pub fn distance_matrix(p: &DistanceProfile) -> SymMatrix {
    SymMatrix::from_fn(p.order(), |i, j| p.dist(i, j) as f64)
}

/// `D^L = Tr − D`.
pub fn distance_laplacian(p: &DistanceProfile) -> SymMatrix {
    SymMatrix::from_fn(p.order(), |i, j| {
        if i == j {
            p.transmissions[i] as f64
        } else {
            -(p.dist(i, j) as f64)
        }
    })
}

/// `D^Q = Tr + D`.
pub fn distance_signless_laplacian(p: &DistanceProfile) -> SymMatrix {
    SymMatrix::from_fn(p.order(), |i, j| {
        if i == j {
            p.transmissions[i] as f64
        } else {
            p.dist(i, j) as f64
        }
    })
}

/// `‖D_α‖_F² = (1−α)² Σ_{i≠j} d_ij² + α² Σ Tr_i²`, evaluated from the
/// integer profile rather than from a built matrix.
pub fn generalized_frobenius_sq(p: &DistanceProfile, alpha: f64) -> f64 {
    (1.0 - alpha).powi(2) * p.sum_sq_distances() as f64 + alpha * alpha * p.sum_sq_transmissions() as f64
}

/// Ordered list of disjoint nonempty blocks covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
    order: usize,
}

impl VertexPartition {
    pub fn new(order: usize, blocks: Vec<Vec<usize>>) -> Result<Self, MatrixError> {
        let mut seen = vec![false; order];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(MatrixError::InvalidPartition(format!("block {b} is empty")));
            }
            for &v in block {
                if v >= order {
                    return Err(MatrixError::InvalidPartition(format!("vertex {v} out of range")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(MatrixError::InvalidPartition(format!("vertex {v} repeated")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(MatrixError::InvalidPartition(format!("vertex {v} not covered")));
        }
        Ok(VertexPartition { blocks, order })
    }

    /// Two blocks: `first` and everything else (ascending).
    pub fn split(order: usize, first: &[usize]) -> Result<Self, MatrixError> {
        let mut rest: Vec<usize> = (0..order).filter(|v| !first.contains(v)).collect();
        rest.sort_unstable();
        VertexPartition::new(order, vec![first.to_vec(), rest])
    }

    pub fn singletons(order: usize) -> Self {
        VertexPartition {
            blocks: (0..order).map(|v| vec![v]).collect(),
            order,
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// Block-averaged matrix `b_ij = (sum of block M_ij) / |block i|`.
///
/// Not symmetric in general. Because `B = S⁻¹ Pᵀ M P` with `S` the diagonal
/// of block sizes, its eigenvalues coincide with those of the symmetric
/// matrix `S^{-1/2} Pᵀ M P S^{-1/2}`, which [`QuotientMatrix::symmetrized`]
/// returns.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    sizes: Vec<usize>,
    block_sums: Vec<f64>,
}

impl QuotientMatrix {
    pub fn order(&self) -> usize {
        self.sizes.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.block_sums[i * self.order() + j] / self.sizes[i] as f64
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.order())
            .map(|i| (0..self.order()).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn symmetrized(&self) -> SymMatrix {
        let r = self.order();
        SymMatrix::from_fn(r, |i, j| {
            self.block_sums[i * r + j] / ((self.sizes[i] * self.sizes[j]) as f64).sqrt()
        })
    }
}

fn check_order(m: &SymMatrix, part: &VertexPartition) -> Result<(), MatrixError> {
    if m.order() != part.order() {
        return Err(MatrixError::Dimension {
            expected: m.order(),
            found: part.order(),
        });
    }
    Ok(())
}

pub fn quotient_matrix(m: &SymMatrix, part: &VertexPartition) -> Result<QuotientMatrix, MatrixError> {
    check_order(m, part)?;
    let blocks = part.blocks();
    let r = blocks.len();
    let mut block_sums = vec![0.0; r * r];
    for (bi, rows) in blocks.iter().enumerate() {
        for (bj, cols) in blocks.iter().enumerate() {
            block_sums[bi * r + bj] = rows.iter().flat_map(|&i| cols.iter().map(move |&j| m[(i, j)])).sum();
        }
    }
    Ok(QuotientMatrix {
        sizes: blocks.iter().map(Vec::len).collect(),
        block_sums,
    })
}

/// True iff every block `M_ij` has constant row sums, within `tol`.
pub fn is_equitable(m: &SymMatrix, part: &VertexPartition, tol: f64) -> Result<bool, MatrixError> {
    check_order(m, part)?;
    for rows in part.blocks() {
        for cols in part.blocks() {
            let sums: Vec<f64> = rows.iter().map(|&i| cols.iter().map(|&j| m[(i, j)]).sum()).collect();
            let (lo, hi) = sums
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| (lo.min(s), hi.max(s)));
            if hi - lo > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
