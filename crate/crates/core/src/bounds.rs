//! Registry of spectral spread bounds for `D_α(G)` and the structural
//! checks (interlacing, edge-deletion monotonicity) used to derive them.
//!
//! Each bound is evaluated against the numeric spectrum. A bound marked
//! [`Status::Claimed`] is a stated formula that is known to fail on some
//! graphs; its failures are reported as discrepancies, not violations.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cliques::{self, CapExceeded};
use crate::eigen::{self, EigenError, Spectrum};
use crate::families::complete_split_theta;
use crate::graph::{DistanceProfile, Graph, GraphError};
use crate::matrix::{
    self, distance_matrix, generalized_distance_matrix, generalized_frobenius_sq, MatrixError, SymMatrix,
    VertexPartition,
};
use crate::report::{sig12, sig12_opt};

/// Default `holds` tolerance, applied as `max(tol, tol·|bound|)`.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Absolute tolerance for equality flags.
pub const EQ_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("unknown bound id {0:?}")]
    UnknownBound(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// A valid inequality; failing it is a violation.
    Proven,
    /// A stated formula that does not hold in general.
    Claimed,
}

macro_rules! bound_ids {
    ($($variant:ident => $key:literal,)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum BoundId {
            $($variant,)*
        }

        impl BoundId {
            pub const ALL: &'static [BoundId] = &[$(BoundId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(BoundId::$variant => $key,)*
                }
            }
        }

        impl FromStr for BoundId {
            type Err = BoundError;

            fn from_str(s: &str) -> Result<Self, BoundError> {
                match s {
                    $($key => Ok(BoundId::$variant),)*
                    _ => Err(BoundError::UnknownBound(s.to_string())),
                }
            }
        }
    };
}

bound_ids! {
    TransmissionSpreadUpper => "transmission_spread_upper",
    TransmissionSpreadLower => "transmission_spread_lower",
    RadiusWeylLower => "radius_weyl_lower",
    RadiusWeylUpper => "radius_weyl_upper",
    SmallestWeylLower => "smallest_weyl_lower",
    SmallestWeylUpper => "smallest_weyl_upper",
    RadiusWienerLower => "radius_wiener_lower",
    RadiusFrobeniusLower => "radius_frobenius_lower",
    WienerFrobeniusLower => "wiener_frobenius_lower",
    VarianceLower => "variance_lower",
    MirskyUpper => "mirsky_upper",
    FrobeniusUpper => "frobenius_upper",
    RadiusUpperPsd => "radius_upper_psd",
    BipartiteDegreeLower => "bipartite_degree_lower",
    BipartiteOrderLower => "bipartite_order_lower",
    CliqueLower => "clique_lower",
    IndependenceLower => "independence_lower",
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for BoundId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl BoundId {
    pub fn direction(self) -> Direction {
        use BoundId::*;
        match self {
            TransmissionSpreadUpper | RadiusWeylUpper | SmallestWeylUpper | MirskyUpper | FrobeniusUpper
            | RadiusUpperPsd => Direction::Upper,
            _ => Direction::Lower,
        }
    }

    /// What `actual` measures for this bound.
    pub fn quantity(self) -> Quantity {
        match self {
            BoundId::RadiusWeylLower | BoundId::RadiusWeylUpper => Quantity::Largest,
            BoundId::SmallestWeylLower | BoundId::SmallestWeylUpper => Quantity::Smallest,
            _ => Quantity::Spread,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Spread,
    Largest,
    Smallest,
}

/// One bound evaluated on one `(graph, α)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub direction: Direction,
    pub status: Status,
    #[serde(serialize_with = "sig12")]
    pub bound: f64,
    #[serde(serialize_with = "sig12")]
    pub actual: f64,
    pub holds: bool,
    #[serde(serialize_with = "sig12")]
    pub gap: f64,
    pub equality: bool,
    pub applicable: bool,
    pub reason: Option<String>,
    /// The bound claims to equal `actual`, not just bound it.
    pub exact: bool,
    /// Stated form of a formula whose evaluated `bound` is a corrected
    /// version; `null` when the stated form is used as-is.
    #[serde(serialize_with = "sig12_opt")]
    pub printed_bound: Option<f64>,
}

impl BoundReport {
    fn inapplicable(id: BoundId, reason: impl Into<String>) -> Self {
        BoundReport {
            bound_id: id,
            direction: id.direction(),
            status: Status::Proven,
            bound: f64::NAN,
            actual: f64::NAN,
            holds: true,
            gap: f64::NAN,
            equality: false,
            applicable: false,
            reason: Some(reason.into()),
            exact: false,
            printed_bound: None,
        }
    }

    fn evaluated(id: BoundId, status: Status, bound: f64, actual: f64, tol: f64) -> Self {
        let direction = id.direction();
        let gap = actual - bound;
        BoundReport {
            bound_id: id,
            direction,
            status,
            bound,
            actual,
            holds: satisfies(direction, bound, actual, tol),
            gap,
            equality: gap.abs() <= EQ_TOL,
            applicable: true,
            reason: None,
            exact: false,
            printed_bound: None,
        }
    }

    fn exact(mut self) -> Self {
        self.exact = true;
        self
    }

    fn printed(mut self, printed: f64) -> Self {
        self.printed_bound = Some(printed);
        self
    }

    /// Applicable proven bound that failed (including a proven exact value
    /// that is not attained).
    pub fn is_violation(&self) -> bool {
        self.applicable && self.status == Status::Proven && (!self.holds || (self.exact && !self.equality))
    }

    /// Description of any disagreement between a stated formula and the
    /// numeric result. Never set for violations of proven bounds.
    pub fn discrepancy(&self, tol: f64) -> Option<String> {
        if !self.applicable {
            return None;
        }
        let mut notes = Vec::new();
        if self.status == Status::Claimed {
            if !self.holds {
                notes.push(format!("claimed bound fails by {:.6e}", self.gap));
            } else if self.exact && !self.equality {
                notes.push(format!("claimed exact value differs from numeric by {:.6e}", self.gap));
            }
        }
        if let Some(printed) = self.printed_bound {
            if !printed.is_finite() {
                notes.push("stated form is undefined (negative radicand)".to_string());
            } else if !satisfies(self.direction, printed, self.actual, tol) {
                notes.push(format!("stated form fails by {:.6e}", self.actual - printed));
            }
        }
        (!notes.is_empty()).then(|| notes.join("; "))
    }
}

/// `actual` respects `bound` in `direction`, with tolerance
/// `max(tol, tol·|bound|)`.
pub fn satisfies(direction: Direction, bound: f64, actual: f64, tol: f64) -> bool {
    if !bound.is_finite() {
        return false;
    }
    let slack = tol.max(tol * bound.abs());
    match direction {
        Direction::Lower => actual >= bound - slack,
        Direction::Upper => actual <= bound + slack,
    }
}

fn in_half_range(alpha: f64) -> bool {
    (0.5..=1.0).contains(&alpha)
}

fn sqrt0(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

/// Clique number and every maximum clique.
pub type MaxCliques = (usize, Vec<Vec<usize>>);

/// Everything the registry formulas read, computed once per `(graph, α)`.
pub struct BoundContext<'g> {
    pub graph: &'g Graph,
    pub profile: DistanceProfile,
    pub alpha: f64,
    pub matrix: SymMatrix,
    pub spectrum: Spectrum,
    /// Spectrum of the plain distance matrix.
    pub distance_spectrum: Spectrum,
    cliques: OnceCell<Result<MaxCliques, CapExceeded>>,
    independence: OnceCell<Result<usize, CapExceeded>>,
}

impl<'g> BoundContext<'g> {
    pub fn new(graph: &'g Graph, alpha: f64) -> Result<Self, BoundError> {
        let profile = DistanceProfile::new(graph)?;
        let matrix = generalized_distance_matrix(&profile, alpha)?;
        let spectrum = eigen::eigenvalues(&matrix)?;
        let distance_spectrum = eigen::eigenvalues(&distance_matrix(&profile))?;
        Ok(BoundContext {
            graph,
            profile,
            alpha,
            matrix,
            spectrum,
            distance_spectrum,
            cliques: OnceCell::new(),
            independence: OnceCell::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.profile.order()
    }

    pub fn spread(&self) -> f64 {
        self.spectrum.spread()
    }

    pub fn max_cliques(&self) -> Result<&MaxCliques, &CapExceeded> {
        self.cliques.get_or_init(|| cliques::clique_number(self.graph)).as_ref()
    }

    pub fn independence_number(&self) -> Result<usize, CapExceeded> {
        self.independence
            .get_or_init(|| cliques::independence_number(self.graph).map(|(t, _)| t))
            .clone()
    }

    /// `Σ ∂_i²` from the profile.
    fn frobenius_sq(&self) -> f64 {
        generalized_frobenius_sq(&self.profile, self.alpha)
    }

    fn actual(&self, q: Quantity) -> f64 {
        match q {
            Quantity::Spread => self.spread(),
            Quantity::Largest => self.spectrum.largest(),
            Quantity::Smallest => self.spectrum.smallest(),
        }
    }

    pub fn evaluate(&self, id: BoundId, tol: f64) -> BoundReport {
        let n = self.order();
        let nf = n as f64;
        let a = self.alpha;
        let w = self.profile.wiener as f64;
        let tr_min = self.profile.tr_min() as f64;
        let tr_max = self.profile.tr_max() as f64;
        let rho1 = self.distance_spectrum.largest();
        let rhon = self.distance_spectrum.smallest();
        let top = self.spectrum.largest();
        let actual = self.actual(id.quantity());
        let proven = |bound: f64| BoundReport::evaluated(id, Status::Proven, bound, actual, tol);
        let claimed = |bound: f64| BoundReport::evaluated(id, Status::Claimed, bound, actual, tol);
        let need_pair = || (n < 2).then(|| BoundReport::inapplicable(id, "requires n >= 2"));
        let need_three = || (n < 3).then(|| BoundReport::inapplicable(id, "requires n >= 3"));

        use BoundId::*;
        match id {
            TransmissionSpreadUpper => proven(a * (tr_max - tr_min) + (1.0 - a) * (rho1 - rhon)),
            TransmissionSpreadLower => proven((a * (tr_max - tr_min) - (1.0 - a) * (rho1 - rhon)).abs()),
            RadiusWeylLower => proven(a * tr_min + (1.0 - a) * rho1),
            RadiusWeylUpper => proven(a * tr_max + (1.0 - a) * rho1),
            SmallestWeylLower => proven(a * tr_min + (1.0 - a) * rhon),
            SmallestWeylUpper => proven(a * tr_max + (1.0 - a) * rhon),
            RadiusWienerLower => {
                need_pair().unwrap_or_else(|| proven(nf / (nf - 1.0) * top - 2.0 * a * w / (nf - 1.0)))
            }
            RadiusFrobeniusLower => need_pair()
                .unwrap_or_else(|| proven(top - sqrt0((self.frobenius_sq() - top * top) / (nf - 1.0)))),
            WienerFrobeniusLower => need_pair().unwrap_or_else(|| {
                let inner = (nf * nf * self.frobenius_sq() - 4.0 * w * w) / (nf - 1.0);
                proven((2.0 * w - sqrt0(inner)) / nf)
            }),
            VarianceLower => {
                proven(2.0 / nf * sqrt0(nf * self.frobenius_sq() - 4.0 * a * a * w * w))
            }
            MirskyUpper => proven(mirsky_bound(&self.matrix)),
            FrobeniusUpper => {
                let off = (1.0 - a).powi(2) * self.profile.sum_sq_distances() as f64;
                let trsq = self.profile.sum_sq_transmissions() as f64;
                let tail = 8.0 / nf * a * a * w * w;
                let printed = 2.0 * off + a * a * trsq - tail;
                let printed = if printed < 0.0 { f64::NAN } else { printed.sqrt() };
                proven(sqrt0(2.0 * off + 2.0 * a * a * trsq - tail)).printed(printed)
            }
            RadiusUpperPsd => {
                if !in_half_range(a) {
                    return BoundReport::inapplicable(id, "alpha outside [1/2, 1]");
                }
                let mut r = proven(top);
                r.equality = self.spectrum.smallest().abs() <= EQ_TOL;
                r
            }
            BipartiteDegreeLower => {
                if let Some(r) = need_three() {
                    return r;
                }
                if self.graph.bipartition().is_none() {
                    return BoundReport::inapplicable(id, "not bipartite");
                }
                let delta = self.graph.max_degree();
                if delta == n - 1 {
                    if a == 0.0 {
                        proven(nf + sqrt0(nf * nf - 3.0 * nf + 3.0)).exact()
                    } else {
                        let v = sqrt0((a - 2.0).powi(2) * (nf * nf - 2.0 * nf + 2.0) + 2.0 * (nf - 1.0) * (a * a - 2.0));
                        claimed(v).exact()
                    }
                } else {
                    proven(self.bipartite_degree_value(delta))
                }
            }
            BipartiteOrderLower => {
                if let Some(r) = need_three() {
                    return r;
                }
                if self.graph.bipartition().is_none() {
                    return BoundReport::inapplicable(id, "not bipartite");
                }
                let (f, c) = ((n / 2) as f64, n.div_ceil(2) as f64);
                if a == 0.0 {
                    proven(nf + sqrt0(c * c + f * f - f * c))
                } else if in_half_range(a) {
                    let theta = sqrt0(nf * nf * a * a - 4.0 * (a - 1.0) * (f * f + c * c) - 4.0 * f * c)
                        + sqrt0(9.0 * a * a - 20.0 * a + 12.0);
                    claimed((a * (nf - 3.0) + 2.0 * nf - 6.0 + theta) / 2.0)
                } else {
                    BoundReport::inapplicable(id, "alpha outside {0} ∪ [1/2, 1]")
                }
            }
            CliqueLower => {
                if let Some(r) = need_three() {
                    return r;
                }
                let (omega, cliques) = match self.max_cliques() {
                    Ok(c) => c,
                    Err(e) => return BoundReport::inapplicable(id, e.to_string()),
                };
                let omega = *omega;
                if omega < 2 {
                    return BoundReport::inapplicable(id, "clique number < 2");
                }
                if omega == n {
                    return proven((1.0 - a) * nf).exact();
                }
                let (fixed, printed) = cliques
                    .iter()
                    .map(|c| self.clique_values(c))
                    .fold((f64::NEG_INFINITY, f64::NEG_INFINITY), |(x, y), (u, v)| (x.max(u), y.max(v)));
                proven(fixed).printed(printed)
            }
            IndependenceLower => {
                if let Some(r) = need_three() {
                    return r;
                }
                let t = match self.independence_number() {
                    Ok(t) => t,
                    Err(e) => return BoundReport::inapplicable(id, e.to_string()),
                };
                if t < 2 {
                    return BoundReport::inapplicable(id, "independence number < 2");
                }
                let tf = t as f64;
                let base = (nf + tf + 1.0) / 2.0;
                let radical = sqrt0((nf - tf + 1.0).powi(2) + 4.0 * tf * tf - 4.0 * tf);
                if a == 0.0 {
                    proven(base + radical / 2.0).printed(base + radical)
                } else if in_half_range(a) {
                    let v = (2.0 * nf - tf + a * (nf - 3.0) - 5.0
                        + sqrt0(complete_split_theta(t, n, a))
                        + sqrt0(9.0 * a * a - 20.0 * a + 12.0))
                        / 2.0;
                    claimed(v)
                } else {
                    BoundReport::inapplicable(id, "alpha outside {0} ∪ [1/2, 1]")
                }
            }
        }
    }

    /// Closed form of the spread between the two eigenvalues of the quotient
    /// over `{N[v], rest}`, maximised over maximum-degree vertices `v`.
    fn bipartite_degree_value(&self, delta: usize) -> f64 {
        let (n, a, w) = (self.order() as f64, self.alpha, self.profile.wiener as f64);
        let d = delta as f64;
        (0..self.order())
            .filter(|&v| self.graph.degree(v) == delta)
            .map(|v| {
                let x = self.profile.avg_distance_degree[v] * d + self.profile.transmissions[v] as f64;
                let alpha_i = a * n * (x - 2.0 * d * d) + 2.0 * n * d * d + (d + 1.0) * (2.0 * w - 2.0 * x);
                let beta_i = 2.0 * a * w * (x - 2.0 * d * d) + 4.0 * w * d * d - x * x;
                let denom = (d + 1.0) * (n - d - 1.0);
                sqrt0(alpha_i * alpha_i - 4.0 * beta_i * denom) / denom
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Quotient-root spread for the split `{clique, rest}`: the derived
    /// value and the stated one (whose linear coefficient carries a
    /// spurious `(1 − α)` on the `2Wω` term). The stated value is `NaN`
    /// when its radicand is negative.
    fn clique_values(&self, clique: &[usize]) -> (f64, f64) {
        let (n, a, w) = (self.order() as f64, self.alpha, self.profile.wiener as f64);
        let om = clique.len() as f64;
        let s: f64 = clique.iter().map(|&v| self.profile.transmissions[v] as f64).sum();
        let beta = 2.0 * w * om * (om - 1.0) - s * s + 2.0 * w * a * (s - om * (om - 1.0));
        let denom = om * (n - om);
        let derived = s * (a * n - 2.0 * om) + om * (2.0 * w + (1.0 - a) * n * (om - 1.0));
        let stated = s * (a * n - 2.0 * om) + om * (1.0 - a) * (2.0 * w + n * (om - 1.0));
        let root = |alpha_i: f64| {
            let disc = alpha_i * alpha_i - 4.0 * beta * denom;
            if disc < -1e-9 * alpha_i * alpha_i {
                f64::NAN
            } else {
                sqrt0(disc) / denom
            }
        };
        (root(derived), root(stated))
    }
}

/// Spread bound for any real symmetric `m`: `√(2‖m‖_F² − (2/n)(tr m)²)`.
pub fn mirsky_bound(m: &SymMatrix) -> f64 {
    let n = m.order() as f64;
    sqrt0(2.0 * m.frobenius_sq() - 2.0 / n * m.trace().powi(2))
}

pub fn evaluate_bound(bound_id: &str, g: &Graph, alpha: f64, tol: f64) -> Result<BoundReport, BoundError> {
    let id: BoundId = bound_id.parse()?;
    Ok(BoundContext::new(g, alpha)?.evaluate(id, tol))
}

/// One report per registry entry, in registry order.
pub fn evaluate_all(g: &Graph, alpha: f64, tol: f64) -> Result<Vec<BoundReport>, BoundError> {
    let ctx = BoundContext::new(g, alpha)?;
    Ok(BoundId::ALL.iter().map(|&id| ctx.evaluate(id, tol)).collect())
}

/// Outcome of a structural check that may not apply.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail {
        #[serde(serialize_with = "sig12")]
        worst: f64,
    },
    Inapplicable { reason: String },
}

impl CheckOutcome {
    pub fn passed(&self) -> Option<bool> {
        match self {
            CheckOutcome::Pass => Some(true),
            CheckOutcome::Fail { .. } => Some(false),
            CheckOutcome::Inapplicable { .. } => None,
        }
    }
}

/// For `½ ≤ α ≤ 1`, deleting a non-bridge edge never decreases any
/// eigenvalue of `D_α`. `worst` on failure is the most negative
/// `∂_i(G − e) − ∂_i(G)`.
pub fn check_edge_deletion_monotonicity(
    g: &Graph,
    edge: (usize, usize),
    alpha: f64,
    tol: f64,
) -> Result<CheckOutcome, BoundError> {
    if !in_half_range(alpha) {
        return Ok(CheckOutcome::Inapplicable {
            reason: "alpha outside [1/2, 1]".into(),
        });
    }
    let h = g.without_edge(edge.0, edge.1)?;
    if !h.is_connected() {
        return Ok(CheckOutcome::Inapplicable {
            reason: "G - e is disconnected".into(),
        });
    }
    let before = d_alpha_spectrum(g, alpha)?;
    let after = d_alpha_spectrum(&h, alpha)?;
    let worst = after
        .values()
        .iter()
        .zip(before.values())
        .map(|(x, y)| x - y)
        .fold(f64::INFINITY, f64::min);
    Ok(if worst >= -tol {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail { worst }
    })
}

/// Cauchy-type interlacing `a_i ≥ b_i ≥ a_{n−r+i}` for descending
/// `parent` (order n) and `child` (order r ≤ n).
pub fn check_interlacing(parent: &[f64], child: &[f64], tol: f64) -> bool {
    let (n, r) = (parent.len(), child.len());
    r <= n
        && child
            .iter()
            .enumerate()
            .all(|(i, &b)| parent[i] >= b - tol && b >= parent[n - r + i] - tol)
}

pub fn d_alpha_spectrum(g: &Graph, alpha: f64) -> Result<Spectrum, BoundError> {
    let p = DistanceProfile::new(g)?;
    Ok(eigen::eigenvalues(&generalized_distance_matrix(&p, alpha)?)?)
}

/// Eigenvalues (descending) of the quotient of `m` over `part`.
pub fn quotient_eigenvalues(m: &SymMatrix, part: &VertexPartition) -> Result<Vec<f64>, BoundError> {
    let q = matrix::quotient_matrix(m, part)?;
    Ok(eigen::eigenvalues(&q.symmetrized())?.values().to_vec())
}

/// Partitions whose quotients the bound derivations interlace against: the
/// bipartition, `{N[v], rest}` for maximum-degree vertices of a bipartite
/// graph, and `{K, rest}` for each maximum clique `K` (when `ω < n`).
pub fn interlacing_partitions(g: &Graph) -> Vec<(String, VertexPartition)> {
    let n = g.order();
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    if let Some((left, right)) = g.bipartition() {
        if !left.is_empty() && !right.is_empty() {
            out.push(("bipartition".to_string(), VertexPartition::new(n, vec![left, right]).unwrap()));
        }
        let delta = g.max_degree();
        if delta + 1 < n {
            for v in (0..n).filter(|&v| g.degree(v) == delta) {
                let mut closed = vec![v];
                closed.extend_from_slice(g.neighbors(v));
                out.push((format!("closed_nbhd:{v}"), VertexPartition::split(n, &closed).unwrap()));
            }
        }
    }
    if let Ok((omega, cliques)) = cliques::clique_number(g) {
        if omega < n {
            for c in cliques {
                let name = format!("clique:{}", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
                out.push((name, VertexPartition::split(n, &c).unwrap()));
            }
        }
    }
    out
}

/// Every induced path `u − v − w` (with `u < w`, `u` and `w` non-adjacent),
/// listed as `[u, v, w]`.
pub fn induced_paths(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for v in 0..g.order() {
        let nb = g.neighbors(v);
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if !g.has_edge(u, w) {
                    out.push([u, v, w]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use approx::assert_abs_diff_eq;

    const GRID: [f64; 7] = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0];

    fn family(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    fn report(id: &str, g: &Graph, alpha: f64) -> BoundReport {
        evaluate_bound(id, g, alpha, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for &id in BoundId::ALL {
            assert_eq!(id.as_str().parse::<BoundId>().unwrap(), id);
        }
        assert_eq!(
            evaluate_bound("nope", &family("complete:3"), 0.0, DEFAULT_TOL),
            Err(BoundError::UnknownBound("nope".into()))
        );
    }

    #[test]
    fn radius_wiener_equality_on_k4() {
        let r = report("radius_wiener_lower", &family("complete:4"), 0.5);
        assert_abs_diff_eq!(r.bound, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.actual, 2.0, epsilon = 1e-12);
        assert!(r.holds && r.equality && r.applicable);
    }

    #[test]
    fn frobenius_upper_on_k4() {
        let r = report("frobenius_upper", &family("complete:4"), 0.0);
        assert_abs_diff_eq!(r.bound, 24f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(r.actual, 4.0, epsilon = 1e-12);
        assert!(r.holds && !r.equality);
        // the stated form coincides at alpha = 0
        assert_abs_diff_eq!(r.printed_bound.unwrap(), 24f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn frobenius_upper_stated_form_breaks_at_alpha_one() {
        let r = report("frobenius_upper", &family("star:4"), 1.0);
        assert!(r.holds);
        assert!(r.printed_bound.unwrap().is_nan());
        assert!(r.discrepancy(DEFAULT_TOL).is_some());
        assert!(!r.is_violation());
    }

    #[test]
    fn bipartite_order_equality_on_p3() {
        let r = report("bipartite_order_lower", &family("path:3"), 0.0);
        assert_abs_diff_eq!(r.bound, 3.0 + 3f64.sqrt(), epsilon = 1e-12);
        assert!(r.equality);
        let r = report("bipartite_order_lower", &family("path:3"), 0.3);
        assert!(!r.applicable);
        assert_eq!(r.reason.as_deref(), Some("alpha outside {0} ∪ [1/2, 1]"));
    }

    #[test]
    fn inapplicable_entries_on_triangle() {
        let all = evaluate_all(&family("complete:3"), 0.0, DEFAULT_TOL).unwrap();
        assert_eq!(all.len(), BoundId::ALL.len());
        for id in [BoundId::BipartiteDegreeLower, BoundId::BipartiteOrderLower] {
            let r = all.iter().find(|r| r.bound_id == id).unwrap();
            assert!(!r.applicable);
            assert_eq!(r.reason.as_deref(), Some("not bipartite"));
        }
        let r = all.iter().find(|r| r.bound_id == BoundId::IndependenceLower).unwrap();
        assert!(!r.applicable);
    }

    #[test]
    fn alpha_gates() {
        let all = evaluate_all(&family("cycle:6"), 0.3, DEFAULT_TOL).unwrap();
        for id in [BoundId::BipartiteOrderLower, BoundId::IndependenceLower, BoundId::RadiusUpperPsd] {
            let r = all.iter().find(|r| r.bound_id == id).unwrap();
            assert!(!r.applicable, "{id}");
        }
    }

    #[test]
    fn weyl_bounds_collapse_on_c4() {
        let c4 = family("cycle:4");
        let lo = report("radius_weyl_lower", &c4, 0.0);
        let hi = report("radius_weyl_upper", &c4, 0.0);
        assert_eq!(lo.bound, hi.bound);
        assert!(lo.equality && hi.equality);
        for alpha in GRID {
            let lo = report("transmission_spread_lower", &c4, alpha);
            let hi = report("transmission_spread_upper", &c4, alpha);
            assert_abs_diff_eq!(lo.bound, hi.bound, epsilon = 1e-9);
            assert!(lo.equality && hi.equality);
        }
    }

    #[test]
    fn singleton_graph() {
        let g = Graph::new(1, []).unwrap();
        let all = evaluate_all(&g, 0.5, DEFAULT_TOL).unwrap();
        assert!(all.iter().all(|r| !r.is_violation()));
        let r = all.iter().find(|r| r.bound_id == BoundId::RadiusWienerLower).unwrap();
        assert!(!r.applicable);
    }

    #[test]
    fn star_exact_value_branches() {
        // alpha = 0: the exact value n + sqrt(n^2 - 3n + 3) is attained
        let r = report("bipartite_degree_lower", &family("star:4"), 0.0);
        assert_eq!(r.status, Status::Proven);
        assert!(r.exact && r.equality);
        assert_abs_diff_eq!(r.bound, 4.0 + 7f64.sqrt(), epsilon = 1e-12);
        // small alpha: still a lower bound, but not the spread
        let r = report("bipartite_degree_lower", &family("star:4"), 0.1);
        assert_eq!(r.status, Status::Claimed);
        assert!(r.holds && !r.equality);
        assert!(r.discrepancy(DEFAULT_TOL).is_some());
        assert!(!r.is_violation());
    }

    #[test]
    fn claimed_half_range_bipartite_branch_fails_on_c4() {
        let r = report("bipartite_order_lower", &family("cycle:4"), 1.0);
        assert_eq!(r.status, Status::Claimed);
        assert!(!r.holds);
        assert!(!r.is_violation());
        assert!(r.discrepancy(DEFAULT_TOL).unwrap().contains("claimed bound fails"));
    }

    #[test]
    fn independence_stated_form_fails_on_p3() {
        let r = report("independence_lower", &family("path:3"), 0.0);
        // derived bound is attained by the complete split graph K_{1,2}
        assert!(r.holds && r.equality);
        assert_abs_diff_eq!(r.printed_bound.unwrap(), 3.0 + 12f64.sqrt(), epsilon = 1e-12);
        assert!(r.discrepancy(DEFAULT_TOL).is_some());
    }

    #[test]
    fn independence_bound_attained_by_split_graphs() {
        for (c, n) in [(1, 4), (2, 5), (3, 7), (2, 8)] {
            let g = FamilySpec::CompleteSplit { clique: c, order: n }.generate().unwrap();
            let r = report("independence_lower", &g, 0.0);
            assert!(r.equality, "split:{c},{n} gap {}", r.gap);
        }
    }

    fn quotient_root_gap(g: &Graph, alpha: f64, first: &[usize]) -> f64 {
        let p = DistanceProfile::new(g).unwrap();
        let m = generalized_distance_matrix(&p, alpha).unwrap();
        let part = VertexPartition::split(g.order(), first).unwrap();
        let ev = quotient_eigenvalues(&m, &part).unwrap();
        ev[0] - ev[1]
    }

    #[test]
    fn closed_forms_match_direct_quotients() {
        let graphs = ["path:6", "cycle:8", "kbip:2,5", "path:4", "cycle:5", "split:2,6"];
        for s in graphs {
            let g = family(s);
            for alpha in GRID {
                let ctx = BoundContext::new(&g, alpha).unwrap();
                let delta = g.max_degree();
                if g.bipartition().is_some() && delta + 1 < g.order() {
                    let direct = (0..g.order())
                        .filter(|&v| g.degree(v) == delta)
                        .map(|v| {
                            let mut c = vec![v];
                            c.extend_from_slice(g.neighbors(v));
                            quotient_root_gap(&g, alpha, &c)
                        })
                        .fold(f64::NEG_INFINITY, f64::max);
                    assert_abs_diff_eq!(ctx.bipartite_degree_value(delta), direct, epsilon = 1e-9);
                }
                let (omega, cliques) = ctx.max_cliques().unwrap().clone();
                if omega < g.order() {
                    for c in &cliques {
                        let (derived, _) = ctx.clique_values(c);
                        assert_abs_diff_eq!(derived, quotient_root_gap(&g, alpha, c), epsilon = 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn radius_upper_psd_equality_iff_zero_smallest() {
        // C4 at alpha = 1 is 4I: spread 0, smallest eigenvalue 4
        let r = report("radius_upper_psd", &family("cycle:4"), 1.0);
        assert!(r.holds && !r.equality);
        // K_2 at alpha = 1/2 is singular
        let r = report("radius_upper_psd", &family("complete:2"), 0.5);
        assert!(r.holds && r.equality);
    }

    #[test]
    fn mirsky_on_random_symmetric_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(1..10);
            let raw: Vec<f64> = (0..n * n).map(|_| rng.random_range(-5.0..5.0)).collect();
            let m = SymMatrix::from_fn(n, |i, j| raw[i * n + j]);
            let s = eigen::eigenvalues(&m).unwrap();
            assert!(s.spread() <= mirsky_bound(&m) + 1e-9);
        }
    }

    #[test]
    fn frobenius_equality_shape() {
        for s in ["complete:5", "cycle:4", "kbip:3,3", "cycle:6", "path:5", "star:5"] {
            let g = family(s);
            for alpha in GRID {
                let r = report("frobenius_upper", &g, alpha);
                if r.equality {
                    let v = d_alpha_spectrum(&g, alpha).unwrap();
                    let vals = v.values();
                    let mid = (vals[0] + vals[vals.len() - 1]) / 2.0;
                    for x in &vals[1..vals.len() - 1] {
                        assert!((x - mid).abs() <= 1e-6, "{s} alpha={alpha}");
                    }
                }
            }
        }
    }

    #[test]
    fn deletion_monotonicity_examples() {
        let k4 = family("complete:4");
        assert_eq!(check_edge_deletion_monotonicity(&k4, (0, 1), 0.5, 1e-8).unwrap(), CheckOutcome::Pass);
        let c5 = family("cycle:5");
        assert_eq!(check_edge_deletion_monotonicity(&c5, (0, 4), 0.75, 1e-8).unwrap(), CheckOutcome::Pass);
        assert!(matches!(
            check_edge_deletion_monotonicity(&k4, (0, 1), 0.2, 1e-8).unwrap(),
            CheckOutcome::Inapplicable { .. }
        ));
        assert!(matches!(
            check_edge_deletion_monotonicity(&family("path:4"), (1, 2), 0.6, 1e-8).unwrap(),
            CheckOutcome::Inapplicable { .. }
        ));
    }

    #[test]
    fn interlacing_examples() {
        let g = family("kbip:2,3");
        for alpha in GRID {
            let p = DistanceProfile::new(&g).unwrap();
            let m = generalized_distance_matrix(&p, alpha).unwrap();
            let parent = eigen::eigenvalues(&m).unwrap();
            let part = VertexPartition::split(5, &[0, 1]).unwrap();
            let child = quotient_eigenvalues(&m, &part).unwrap();
            assert!(check_interlacing(parent.values(), &child, 1e-8));
            assert!(check_interlacing(parent.values(), parent.values(), 0.0));
            // the induced path 0-2-1 gives a principal block
            let block = eigen::eigenvalues(&m.principal(&[0, 2, 1])).unwrap();
            assert!(parent.smallest() <= block.smallest() + 1e-8);
        }
        assert!(!check_interlacing(&[3.0, 1.0], &[4.0], 0.0));
        assert!(!check_interlacing(&[3.0], &[1.0, 1.0], 0.0));
    }

    #[test]
    fn induced_path_listing() {
        assert_eq!(induced_paths(&family("path:3")), vec![[0, 1, 2]]);
        assert!(induced_paths(&family("complete:4")).is_empty());
        assert_eq!(induced_paths(&family("cycle:4")).len(), 4);
    }

    #[test]
    fn partitions_cover_expected_cases() {
        let names: Vec<String> = interlacing_partitions(&family("path:4")).into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, vec!["bipartition", "closed_nbhd:1", "closed_nbhd:2", "clique:0,1", "clique:1,2", "clique:2,3"]);
        assert!(interlacing_partitions(&family("complete:4")).is_empty());
    }
}
