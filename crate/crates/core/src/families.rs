//! Structured graph families and their closed-form `D_α` spectra.
//!
//! Every closed form here is an oracle to be cross-checked against the
//! numeric solver, never a replacement for it.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::eigen::{self, Spectrum};
use crate::graph::{DistanceProfile, Graph, GraphError};
use crate::matrix::generalized_distance_matrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("invalid family spec {0:?}: {1}")]
    Invalid(String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A named family member, written on the command line as `complete:4`,
/// `kbip:2,3`, `split:2,5` (clique of 2 in 5 vertices), `path:5`,
/// `cycle:5` or `star:5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// Clique on `clique` vertices joined to an independent set, `order` vertices in total.
    CompleteSplit { clique: usize, order: usize },
    Path(usize),
    Cycle(usize),
    /// `K_{1,n-1}`.
    Star(usize),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        let bad = |why: &str| Err(FamilyError::Invalid(self.to_string(), why.to_string()));
        match *self {
            FamilySpec::Complete(n) | FamilySpec::Path(n) if n < 1 => bad("order must be at least 1"),
            FamilySpec::CompleteBipartite(r, s) if r < 1 || s < 1 => bad("both parts must be nonempty"),
            FamilySpec::CompleteSplit { clique, order } if clique < 1 || clique >= order => {
                bad("clique size must satisfy 1 <= t <= n-1")
            }
            FamilySpec::Cycle(n) if n < 3 => bad("cycles need at least 3 vertices"),
            FamilySpec::Star(n) if n < 2 => bad("stars need at least 2 vertices"),
            _ => Ok(()),
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Complete(n) | FamilySpec::Path(n) | FamilySpec::Cycle(n) | FamilySpec::Star(n) => n,
            FamilySpec::CompleteBipartite(r, s) => r + s,
            FamilySpec::CompleteSplit { order, .. } => order,
        }
    }

    /// Builds the graph. Clique and first-part vertices come first, so the
    /// natural quotient partitions are positional.
    pub fn generate(&self) -> Result<Graph, FamilyError> {
        self.validate()?;
        let n = self.order();
        let mut edges = Vec::new();
        match *self {
            FamilySpec::Complete(_) => complete_edges(0..n, &mut edges),
            FamilySpec::CompleteBipartite(r, _) => join_edges(0..r, r..n, &mut edges),
            FamilySpec::Star(_) => join_edges(0..1, 1..n, &mut edges),
            FamilySpec::CompleteSplit { clique, .. } => {
                complete_edges(0..clique, &mut edges);
                join_edges(0..clique, clique..n, &mut edges);
            }
            FamilySpec::Path(_) => edges.extend((1..n).map(|v| (v - 1, v))),
            FamilySpec::Cycle(_) => {
                edges.extend((1..n).map(|v| (v - 1, v)));
                edges.push((0, n - 1));
            }
        }
        Ok(Graph::new(n, edges)?)
    }
}

fn complete_edges(vs: std::ops::Range<usize>, out: &mut Vec<(usize, usize)>) {
    for u in vs.clone() {
        for v in u + 1..vs.end {
            out.push((u, v));
        }
    }
}

fn join_edges(a: std::ops::Range<usize>, b: std::ops::Range<usize>, out: &mut Vec<(usize, usize)>) {
    for u in a {
        for v in b.clone() {
            out.push((u, v));
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(r, s) => write!(f, "kbip:{r},{s}"),
            FamilySpec::CompleteSplit { clique, order } => write!(f, "split:{clique},{order}"),
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Star(n) => write!(f, "star:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = |why: &str| FamilyError::Invalid(s.to_string(), why.to_string());
        let (kind, args) = s.split_once(':').ok_or_else(|| invalid("expected kind:args"))?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| invalid("arguments must be non-negative integers"))?;
        let spec = match (kind, nums.as_slice()) {
            ("complete", &[n]) => FamilySpec::Complete(n),
            ("kbip", &[r, s]) => FamilySpec::CompleteBipartite(r, s),
            ("split", &[t, n]) => FamilySpec::CompleteSplit { clique: t, order: n },
            ("path", &[n]) => FamilySpec::Path(n),
            ("cycle", &[n]) => FamilySpec::Cycle(n),
            ("star", &[n]) => FamilySpec::Star(n),
            ("complete" | "kbip" | "split" | "path" | "cycle" | "star", _) => {
                return Err(invalid("wrong number of arguments"))
            }
            _ => return Err(invalid("unknown family")),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Eigenvalue/multiplicity pairs from a closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticSpectrum {
    pub entries: Vec<(f64, usize)>,
}

impl AnalyticSpectrum {
    fn new(entries: impl IntoIterator<Item = (f64, usize)>) -> Self {
        AnalyticSpectrum {
            entries: entries.into_iter().filter(|&(_, m)| m > 0).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// All eigenvalues with multiplicity, descending.
    pub fn expand(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .entries
            .iter()
            .flat_map(|&(x, m)| std::iter::repeat_n(x, m))
            .collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// Largest absolute difference to a numeric spectrum, or `None` when
    /// the orders differ.
    pub fn max_deviation(&self, numeric: &Spectrum) -> Option<f64> {
        let ours = self.expand();
        (ours.len() == numeric.len()).then(|| {
            ours.iter()
                .zip(numeric.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    pub fn matches(&self, numeric: &Spectrum, tol: f64) -> bool {
        self.max_deviation(numeric).is_some_and(|d| d <= tol)
    }
}

/// `D_α(K_n)`: `n − 1` once and `nα − 1` with multiplicity `n − 1`.
pub fn spectrum_complete(n: usize, alpha: f64) -> AnalyticSpectrum {
    let nf = n as f64;
    AnalyticSpectrum::new([(nf - 1.0, 1), (nf * alpha - 1.0, n.saturating_sub(1))])
}

/// The two eigenvalues of the equitable bipartition quotient of `K_{r,s}`.
pub fn complete_bipartite_quotient_roots(r: usize, s: usize, alpha: f64) -> (f64, f64) {
    let (r, s) = (r as f64, s as f64);
    let disc = (r * r + s * s) * (alpha - 2.0).powi(2) + 2.0 * r * s * (alpha * alpha - 2.0);
    let mid = alpha * (s + r) + 2.0 * (s + r) - 4.0;
    let root = disc.max(0.0).sqrt();
    ((mid + root) / 2.0, (mid - root) / 2.0)
}

/// `D_α(K_{r,s})`.
pub fn spectrum_complete_bipartite(r: usize, s: usize, alpha: f64) -> AnalyticSpectrum {
    let (rf, sf) = (r as f64, s as f64);
    let (x1, x2) = complete_bipartite_quotient_roots(r, s, alpha);
    AnalyticSpectrum::new([
        (alpha * (2.0 * rf + sf) - 2.0, r.saturating_sub(1)),
        (alpha * (2.0 * sf + rf) - 2.0, s.saturating_sub(1)),
        (x1, 1),
        (x2, 1),
    ])
}

/// Discriminant of the complete split graph quotient, for a clique of size
/// `t` in `n` vertices.
pub fn complete_split_theta(t: usize, n: usize, alpha: f64) -> f64 {
    let (t, n) = (t as f64, n as f64);
    (5.0 - 4.0 * alpha) * t * t + (6.0 * alpha * n - 8.0 * n - 4.0 * alpha + 6.0) * t + n * n * (alpha - 2.0).powi(2)
        + 2.0 * n * alpha
        - 4.0 * n
        + 1.0
}

/// `D_α` of the complete split graph with a clique of `t` vertices among `n`.
pub fn spectrum_complete_split(t: usize, n: usize, alpha: f64) -> AnalyticSpectrum {
    let (tf, nf) = (t as f64, n as f64);
    let root = complete_split_theta(t, n, alpha).max(0.0).sqrt();
    let mid = 2.0 * nf - tf + alpha * nf - 3.0;
    AnalyticSpectrum::new([
        (alpha * nf - 1.0, t.saturating_sub(1)),
        (alpha * (2.0 * nf - tf) - 2.0, (n - t).saturating_sub(1)),
        ((mid + root) / 2.0, 1),
        ((mid - root) / 2.0, 1),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoNeighborKind {
    /// Independent set of vertices with equal open neighbourhoods.
    Independent,
    /// Clique whose vertices have equal closed neighbourhoods.
    Clique,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoNeighborEigenvalue {
    pub eigenvalue: f64,
    /// A lower bound on the multiplicity.
    pub multiplicity: usize,
    pub kind: CoNeighborKind,
    pub transmission: u64,
}

/// Eigenvalue forced by a set of twin vertices: `α(Tr+2) − 2` for
/// independent twins and `α(Tr+1) − 1` for adjacent twins, each with
/// multiplicity at least `|S| − 1`.
pub fn co_neighbor_eigenvalue(g: &Graph, set: &[usize], alpha: f64) -> Result<CoNeighborEigenvalue, FamilyError> {
    let pre = |why: String| Err(FamilyError::Precondition(why));
    if set.len() < 2 {
        return pre("need at least two vertices".into());
    }
    if let Some(&v) = set.iter().find(|&&v| v >= g.order()) {
        return pre(format!("vertex {v} out of range"));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return pre("repeated vertex".into());
    }
    let x = set[0];
    let pairs = || set.iter().flat_map(|&u| set.iter().map(move |&v| (u, v))).filter(|(u, v)| u < v);
    let kind = if pairs().all(|(u, v)| !g.has_edge(u, v)) && set.iter().all(|&y| g.neighbors(y) == g.neighbors(x)) {
        CoNeighborKind::Independent
    } else if pairs().all(|(u, v)| g.has_edge(u, v)) {
        let closed = |v: usize| {
            let mut c = g.neighbors(v).to_vec();
            c.push(v);
            c.sort_unstable();
            c
        };
        if set.iter().any(|&y| closed(y) != closed(x)) {
            return pre("clique vertices do not share closed neighbourhoods".into());
        }
        CoNeighborKind::Clique
    } else {
        return pre("set is neither independent twins nor a clique of twins".into());
    };
    let p = DistanceProfile::new(g)?;
    let tr = p.transmissions[x];
    if set.iter().any(|&y| p.transmissions[y] != tr) {
        return pre("transmission is not constant on the set".into());
    }
    let trf = tr as f64;
    let eigenvalue = match kind {
        CoNeighborKind::Independent => alpha * (trf + 2.0) - 2.0,
        CoNeighborKind::Clique => alpha * (trf + 1.0) - 1.0,
    };
    Ok(CoNeighborEigenvalue {
        eigenvalue,
        multiplicity: set.len() - 1,
        kind,
        transmission: tr,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaStatus {
    /// Agrees with the numeric spectrum on every tested instance.
    Verified,
    /// Stated form that disagrees with the numeric spectrum somewhere.
    Claimed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BipartiteSpread {
    pub formula: f64,
    pub numeric: f64,
    pub status: FormulaStatus,
}

/// `σ` in the closed-form spread of `K_{a,n−a}`.
pub fn complete_bipartite_sigma(a: usize, n: usize, alpha: f64) -> f64 {
    let (a, n) = (a as f64, n as f64);
    n * n * alpha * alpha - (n * n + 2.0 * a * a - 2.0 * a * n) * 4.0 * alpha + 4.0 * (n * n - 3.0 * a * n + 3.0 * a * a)
}

/// Closed-form spread of `K_{a,n−a}` next to the numeric spread.
///
/// For `a ≥ 2`, or `α = 0`, the formula `(n(2−α) − 2aα + √σ)/2` is exact.
/// For the star with `α ≠ 0` the stated value `√σ` assumes the smallest
/// eigenvalue is the lower quotient root, which fails for small `α`, so it
/// is returned as [`FormulaStatus::Claimed`].
pub fn spread_complete_bipartite(a: usize, n: usize, alpha: f64) -> Result<BipartiteSpread, FamilyError> {
    if a < 1 || 2 * a > n {
        return Err(FamilyError::Precondition(format!("need 1 <= a <= n/2, got a={a}, n={n}")));
    }
    let sigma = complete_bipartite_sigma(a, n, alpha).max(0.0).sqrt();
    let (af, nf) = (a as f64, n as f64);
    let (formula, status) = if a == 1 && alpha != 0.0 {
        (sigma, FormulaStatus::Claimed)
    } else {
        ((nf * (2.0 - alpha) - 2.0 * af * alpha + sigma) / 2.0, FormulaStatus::Verified)
    };
    let numeric = numeric_spread(&FamilySpec::CompleteBipartite(a, n - a), alpha)?;
    Ok(BipartiteSpread {
        formula,
        numeric,
        status,
    })
}

/// The two candidates for the smallest eigenvalue of the star `K_{1,n−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarSmallest {
    pub n: usize,
    pub alpha: f64,
    /// Lower root of the bipartition quotient, the stated identification.
    pub quotient_root: f64,
    /// `α(2n−1) − 2`, the leaf twin eigenvalue (multiplicity `n − 2`).
    pub twin_eigenvalue: f64,
    pub numeric: f64,
}

impl StarSmallest {
    /// The smaller of the two candidates.
    pub fn ranked_minimum(&self) -> f64 {
        self.quotient_root.min(self.twin_eigenvalue)
    }

    /// Whether the stated identification (quotient root) is the minimum.
    pub fn claim_holds(&self, tol: f64) -> bool {
        (self.quotient_root - self.numeric).abs() <= tol
    }
}

pub fn star_smallest_eigenvalue(n: usize, alpha: f64) -> Result<StarSmallest, FamilyError> {
    if n < 3 {
        return Err(FamilyError::Precondition("star needs n >= 3 for the twin eigenvalue".into()));
    }
    let (_, quotient_root) = complete_bipartite_quotient_roots(1, n - 1, alpha);
    let spec = FamilySpec::Star(n);
    let numeric = numeric_spectrum(&spec, alpha)?.smallest();
    Ok(StarSmallest {
        n,
        alpha,
        quotient_root,
        twin_eigenvalue: alpha * (2.0 * n as f64 - 1.0) - 2.0,
        numeric,
    })
}

/// Numeric spectrum of `D_α` for a family member.
pub fn numeric_spectrum(spec: &FamilySpec, alpha: f64) -> Result<Spectrum, FamilyError> {
    let g = spec.generate()?;
    let p = DistanceProfile::new(&g)?;
    let m = generalized_distance_matrix(&p, alpha).map_err(|e| FamilyError::Precondition(e.to_string()))?;
    eigen::eigenvalues(&m).map_err(|e| FamilyError::Precondition(e.to_string()))
}

pub fn numeric_spread(spec: &FamilySpec, alpha: f64) -> Result<f64, FamilyError> {
    numeric_spectrum(spec, alpha).map(|s| s.spread())
}
