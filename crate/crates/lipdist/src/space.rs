//! Finite metric spaces, bijections between them, and bi-Lipschitz distortion.
//!
//! A [`FiniteMetricSpace`] is a labeled point set with a validated distance
//! matrix, optionally carrying planar coordinates when the space is embedded
//! in the plane. A [`PointMap`] is a bijection between two such spaces; its
//! [`dilation`](PointMap::dilation) is the largest factor by which any pair
//! distance grows, and its Lipschitz cost is
//! `|log dil(f)| + |log dil(f⁻¹)|` in natural-log units. A bijection is an
//! ε-isometry when that cost is at most ε.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Family;

/// Relative tolerance for the triangle-inequality check.
pub const TRIANGLE_REL_TOL: f64 = 1e-9;
/// Relative tolerance for the coordinate/distance consistency check.
pub const COORD_REL_TOL: f64 = 1e-12;

/// How a constructed space was produced; round-trips through space files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: Family,
    pub sign_vector: String,
    pub depth: usize,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps: Option<f64>,
}

/// A finite metric space: labeled points and a symmetric distance matrix.
///
/// The structural shape (square matrix, label count, coordinate count) is
/// enforced at construction. The metric axioms themselves are checked by
/// [`validate`](FiniteMetricSpace::validate), which reports every violation
/// rather than failing fast.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    name: String,
    labels: Vec<String>,
    /// Row-major n*n distances.
    dist: Vec<f64>,
    coords: Option<Vec<[f64; 2]>>,
    provenance: Option<Provenance>,
}

impl FiniteMetricSpace {
    /// Builds a space from a full square matrix, checking shape only.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        matrix: Vec<Vec<f64>>,
        coords: Option<Vec<[f64; 2]>>,
    ) -> Result<Self> {
        let n = labels.len();
        if matrix.len() != n {
            return Err(Error::LabelCount {
                labels: n,
                dim: matrix.len(),
            });
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(Error::RaggedMatrix {
                    row,
                    found: r.len(),
                    expected: n,
                });
            }
        }
        if let Some(c) = &coords {
            if c.len() != n {
                return Err(Error::CoordCount {
                    found: c.len(),
                    expected: n,
                });
            }
        }
        let mut dist = Vec::with_capacity(n * n);
        for r in &matrix {
            dist.extend_from_slice(r);
        }
        Ok(Self {
            name: name.into(),
            labels,
            dist,
            coords,
            provenance: None,
        })
    }

    /// Builds a space from planar points; distances are Euclidean.
    pub fn from_points(
        name: impl Into<String>,
        labels: Vec<String>,
        coords: Vec<[f64; 2]>,
    ) -> Result<Self> {
        let n = labels.len();
        if coords.len() != n {
            return Err(Error::CoordCount {
                found: coords.len(),
                expected: n,
            });
        }
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let dx = coords[i][0] - coords[j][0];
                let dy = coords[i][1] - coords[j][1];
                let d = (dx * dx + dy * dy).sqrt();
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(Self {
            name: name.into(),
            labels,
            dist,
            coords: Some(coords),
            provenance: None,
        })
    }

    /// Builds a space from points on the real line with metric `|x - y|`.
    ///
    /// The points are stored as planar coordinates `(x, 0)`.
    pub fn from_line_points(
        name: impl Into<String>,
        labels: Vec<String>,
        xs: &[f64],
    ) -> Result<Self> {
        let n = labels.len();
        if xs.len() != n {
            return Err(Error::CoordCount {
                found: xs.len(),
                expected: n,
            });
        }
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = (xs[i] - xs[j]).abs();
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        let coords = xs.iter().map(|&x| [x, 0.0]).collect();
        Ok(Self {
            name: name.into(),
            labels,
            dist,
            coords: Some(coords),
            provenance: None,
        })
    }

    pub(crate) fn set_provenance(&mut self, p: Provenance) {
        self.provenance = Some(p);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    /// Flat row-major distance matrix.
    pub fn dist_matrix(&self) -> &[f64] {
        &self.dist
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of the point with exactly these planar coordinates, if any.
    pub fn find_coord(&self, x: f64, y: f64) -> Option<usize> {
        let coords = self.coords.as_ref()?;
        coords.iter().position(|c| c[0] == x && c[1] == y)
    }

    /// Largest pairwise distance; 0 for spaces with fewer than two points.
    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut d = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                d = d.max(self.dist(i, j));
            }
        }
        d
    }

    /// Copy of this space with every distance multiplied by `c`.
    ///
    /// Coordinates are dropped since they no longer match the metric.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            name: format!("{}*{}", self.name, c),
            labels: self.labels.clone(),
            dist: self.dist.iter().map(|d| c * d).collect(),
            coords: None,
            provenance: None,
        }
    }

    /// Checks every metric axiom and returns the full list of violations.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let mut violations = Vec::new();
        for i in 0..n {
            let dii = self.dist(i, i);
            if dii != 0.0 {
                violations.push(MetricViolation::NonzeroDiagonal { i, value: dii });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let dij = self.dist(i, j);
                let dji = self.dist(j, i);
                if dij != dji {
                    violations.push(MetricViolation::Asymmetric {
                        i,
                        j,
                        forward: dij,
                        backward: dji,
                    });
                }
                if dij <= 0.0 || dij.is_nan() {
                    violations.push(MetricViolation::NotPositive { i, j, value: dij });
                }
            }
        }
        // d is symmetric, so checking i < k covers every ordered variant
        for i in 0..n {
            for k in (i + 1)..n {
                let dik = self.dist(i, k);
                for j in 0..n {
                    if j == i || j == k {
                        continue;
                    }
                    let detour = self.dist(i, j) + self.dist(j, k);
                    if dik - detour > TRIANGLE_REL_TOL * dik.max(detour) {
                        violations.push(MetricViolation::Triangle {
                            i,
                            j,
                            k,
                            direct: dik,
                            detour,
                        });
                    }
                }
            }
        }
        if let Some(coords) = &self.coords {
            for i in 0..n {
                for j in (i + 1)..n {
                    let dx = coords[i][0] - coords[j][0];
                    let dy = coords[i][1] - coords[j][1];
                    let euclid = (dx * dx + dy * dy).sqrt();
                    let stored = self.dist(i, j);
                    if (stored - euclid).abs() > COORD_REL_TOL * stored.abs().max(euclid.abs()) {
                        violations.push(MetricViolation::CoordMismatch {
                            i,
                            j,
                            stored,
                            euclid,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

/// One violated metric axiom, naming the offending indices.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricViolation {
    NonzeroDiagonal {
        i: usize,
        value: f64,
    },
    Asymmetric {
        i: usize,
        j: usize,
        forward: f64,
        backward: f64,
    },
    /// Distinct points must be at strictly positive distance.
    NotPositive {
        i: usize,
        j: usize,
        value: f64,
    },
    /// `d(i,k) > d(i,j) + d(j,k)` beyond the relative tolerance.
    Triangle {
        i: usize,
        j: usize,
        k: usize,
        direct: f64,
        detour: f64,
    },
    /// Stored distance disagrees with the stored planar coordinates.
    CoordMismatch {
        i: usize,
        j: usize,
        stored: f64,
        euclid: f64,
    },
}

impl std::fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricViolation::NonzeroDiagonal { i, value } => {
                write!(f, "diagonal entry ({i},{i}) is {value}, expected 0")
            }
            MetricViolation::Asymmetric {
                i,
                j,
                forward,
                backward,
            } => write!(f, "asymmetry at ({i},{j}): {forward} vs {backward}"),
            MetricViolation::NotPositive { i, j, value } => {
                write!(f, "positivity violation at ({i},{j}): distance {value}")
            }
            MetricViolation::Triangle {
                i,
                j,
                k,
                direct,
                detour,
            } => write!(
                f,
                "triangle-inequality violation at ({i},{j},{k}): {direct} > {detour}"
            ),
            MetricViolation::CoordMismatch {
                i,
                j,
                stored,
                euclid,
            } => write!(
                f,
                "coordinate mismatch at ({i},{j}): stored {stored}, euclidean {euclid}"
            ),
        }
    }
}

/// All axiom violations found in a space; empty means the space is valid.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<MetricViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Dilations of a bijection and its inverse, and the resulting Lipschitz cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistortionReport {
    pub dil_forward: f64,
    pub dil_inverse: f64,
    /// `|ln dil_forward| + |ln dil_inverse|`, natural-log units.
    pub cost: f64,
}

/// A bijection between two finite metric spaces of equal size.
///
/// `perm[i]` is the target index of source point `i`. Spaces are shared
/// immutably, so maps are cheap to clone and safe to use across threads.
#[derive(Debug, Clone)]
pub struct PointMap {
    source: Arc<FiniteMetricSpace>,
    target: Arc<FiniteMetricSpace>,
    perm: Vec<usize>,
}

impl PointMap {
    pub fn new(
        source: Arc<FiniteMetricSpace>,
        target: Arc<FiniteMetricSpace>,
        perm: Vec<usize>,
    ) -> Result<Self> {
        let n = source.len();
        if target.len() != n {
            return Err(Error::MapSizeMismatch {
                source_len: n,
                target_len: target.len(),
            });
        }
        if perm.len() != n {
            return Err(Error::PermLength {
                perm: perm.len(),
                points: n,
            });
        }
        let mut seen = vec![false; n];
        for &t in &perm {
            if t >= n || seen[t] {
                return Err(Error::NotBijection { index: t });
            }
            seen[t] = true;
        }
        Ok(Self {
            source,
            target,
            perm,
        })
    }

    pub fn identity(space: &Arc<FiniteMetricSpace>) -> Self {
        Self {
            source: Arc::clone(space),
            target: Arc::clone(space),
            perm: (0..space.len()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<FiniteMetricSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteMetricSpace> {
        &self.target
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> PointMap {
        let mut inv = vec![0; self.perm.len()];
        for (i, &t) in self.perm.iter().enumerate() {
            inv[t] = i;
        }
        PointMap {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            perm: inv,
        }
    }

    /// `other ∘ self`: first this map, then `other`.
    pub fn compose(&self, other: &PointMap) -> Result<PointMap> {
        if !Arc::ptr_eq(&self.target, &other.source) && *self.target != *other.source {
            return Err(Error::ComposeMismatch);
        }
        let perm = self.perm.iter().map(|&t| other.perm[t]).collect();
        Ok(PointMap {
            source: Arc::clone(&self.source),
            target: Arc::clone(&other.target),
            perm,
        })
    }

    /// Smallest Lipschitz constant: the maximum over point pairs of
    /// target distance over source distance. Defined as 1 when the space
    /// has fewer than two points (empty supremum; the unique map is an
    /// isometry).
    pub fn dilation(&self) -> f64 {
        let n = self.perm.len();
        if n < 2 {
            return 1.0;
        }
        let mut dil = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let num = self.target.dist(self.perm[i], self.perm[j]);
                let den = self.source.dist(i, j);
                dil = dil.max(num / den);
            }
        }
        dil
    }

    /// Dilations of the map and its inverse plus the Lipschitz cost.
    pub fn lipschitz_cost(&self) -> DistortionReport {
        let dil_forward = self.dilation();
        let dil_inverse = self.inverse().dilation();
        DistortionReport {
            dil_forward,
            dil_inverse,
            cost: dil_forward.ln().abs() + dil_inverse.ln().abs(),
        }
    }

    /// Whether the Lipschitz cost is at most `eps` (exact comparison).
    pub fn is_epsilon_isometry(&self, eps: f64) -> Result<bool> {
        if eps < 0.0 {
            return Err(Error::NegativeEpsilon(eps));
        }
        Ok(self.lipschitz_cost().cost <= eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space(name: &str, matrix: Vec<Vec<f64>>) -> FiniteMetricSpace {
        let labels = (0..matrix.len()).map(|i| format!("p{i}")).collect();
        FiniteMetricSpace::new(name, labels, matrix, None).unwrap()
    }

    fn arc(s: FiniteMetricSpace) -> Arc<FiniteMetricSpace> {
        Arc::new(s)
    }

    #[test]
    fn equilateral_triangle_is_valid() {
        let s = space(
            "eq",
            vec![
                vec![0.0, 1.0, 1.0],
                vec![1.0, 0.0, 1.0],
                vec![1.0, 1.0, 0.0],
            ],
        );
        assert!(s.validate().is_valid());
    }

    #[test]
    fn triangle_violation_is_reported_with_indices() {
        let s = space(
            "bad",
            vec![
                vec![0.0, 1.0, 3.0],
                vec![1.0, 0.0, 1.0],
                vec![3.0, 1.0, 0.0],
            ],
        );
        let report = s.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| matches!(
            v,
            MetricViolation::Triangle {
                i: 0,
                j: 1,
                k: 2,
                ..
            }
        )));
    }

    #[test]
    fn coincident_points_are_rejected() {
        let s = space("zero", vec![vec![0.0, 0.0], vec![0.0, 0.0]]);
        let report = s.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, MetricViolation::NotPositive { i: 0, j: 1, .. })));
    }

    #[test]
    fn dimension_mismatch_is_a_structural_error() {
        let err = FiniteMetricSpace::new(
            "shape",
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::LabelCount { labels: 3, dim: 2 }));
    }

    #[test]
    fn coord_consistency_is_checked() {
        let s = FiniteMetricSpace::new(
            "c",
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 2.0], vec![2.0, 0.0]],
            Some(vec![[0.0, 0.0], [1.0, 0.0]]),
        )
        .unwrap();
        assert!(s
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, MetricViolation::CoordMismatch { .. })));
    }

    #[test]
    fn identity_map_has_dilation_one_and_cost_zero() {
        let s = arc(space(
            "eq",
            vec![
                vec![0.0, 1.0, 2.0],
                vec![1.0, 0.0, 1.5],
                vec![2.0, 1.5, 0.0],
            ],
        ));
        let id = PointMap::identity(&s);
        assert_eq!(id.dilation(), 1.0);
        let report = id.lipschitz_cost();
        assert_eq!(report.cost, 0.0);
        assert!(id.is_epsilon_isometry(0.0).unwrap());
    }

    #[test]
    fn two_point_scaling_dilation() {
        let x = arc(space("x", vec![vec![0.0, 1.0], vec![1.0, 0.0]]));
        let y = arc(space("y", vec![vec![0.0, 2.0], vec![2.0, 0.0]]));
        let f = PointMap::new(Arc::clone(&x), Arc::clone(&y), vec![0, 1]).unwrap();
        assert_eq!(f.dilation(), 2.0);
        let report = f.lipschitz_cost();
        assert_eq!(report.dil_forward, 2.0);
        assert_eq!(report.dil_inverse, 0.5);
        assert!((report.cost - 2.0 * std::f64::consts::LN_2).abs() < 1e-15);
        // cost 2 ln 2 exceeds ln 2, so this is not a (ln 2)-isometry
        assert!(!f.is_epsilon_isometry(std::f64::consts::LN_2).unwrap());
    }

    #[test]
    fn one_point_space_has_dilation_one() {
        let x = arc(space("x", vec![vec![0.0]]));
        let y = arc(space("y", vec![vec![0.0]]));
        let f = PointMap::new(x, y, vec![0]).unwrap();
        assert_eq!(f.dilation(), 1.0);
        assert_eq!(f.lipschitz_cost().cost, 0.0);
    }

    #[test]
    fn negative_eps_is_an_argument_error() {
        let s = arc(space("s", vec![vec![0.0, 1.0], vec![1.0, 0.0]]));
        let id = PointMap::identity(&s);
        assert!(matches!(
            id.is_epsilon_isometry(-1e-9),
            Err(Error::NegativeEpsilon(_))
        ));
    }

    #[test]
    fn non_bijection_is_rejected() {
        let s = arc(space("s", vec![vec![0.0, 1.0], vec![1.0, 0.0]]));
        let err = PointMap::new(Arc::clone(&s), Arc::clone(&s), vec![0, 0]).unwrap_err();
        assert!(matches!(err, Error::NotBijection { index: 0 }));
    }

    prop_compose! {
        /// Uniform pair distances in [1, 2]: triangle inequality holds for free.
        fn arb_space(n: usize)(seedv in proptest::collection::vec(1.0f64..2.0, n * (n - 1) / 2)) -> FiniteMetricSpace {
            let mut matrix = vec![vec![0.0; n]; n];
            let mut it = seedv.into_iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = it.next().unwrap();
                    matrix[i][j] = d;
                    matrix[j][i] = d;
                }
            }
            let labels = (0..n).map(|i| format!("p{i}")).collect();
            FiniteMetricSpace::new("rand", labels, matrix, None).unwrap()
        }
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn random_uniform_spaces_are_valid(s in arb_space(5)) {
            prop_assert!(s.validate().is_valid());
        }

        #[test]
        fn cost_is_symmetric_under_inversion(s in arb_space(5), t in arb_space(5), p in arb_perm(5)) {
            let f = PointMap::new(arc(s), arc(t), p).unwrap();
            let fwd = f.lipschitz_cost();
            let bwd = f.inverse().lipschitz_cost();
            prop_assert_eq!(fwd.cost, bwd.cost);
            prop_assert_eq!(fwd.dil_forward, bwd.dil_inverse);
        }

        #[test]
        fn dilations_multiply_to_at_least_one(s in arb_space(5), t in arb_space(5), p in arb_perm(5)) {
            let f = PointMap::new(arc(s), arc(t), p).unwrap();
            let report = f.lipschitz_cost();
            prop_assert!(report.dil_forward * report.dil_inverse >= 1.0 - 1e-12);
        }

        #[test]
        fn dilation_is_submultiplicative(
            s in arb_space(4), t in arb_space(4), u in arb_space(4),
            p in arb_perm(4), q in arb_perm(4),
        ) {
            let t = arc(t);
            let f = PointMap::new(arc(s), Arc::clone(&t), p).unwrap();
            let g = PointMap::new(t, arc(u), q).unwrap();
            let fg = f.compose(&g).unwrap();
            prop_assert!(fg.dilation() <= f.dilation() * g.dilation() * (1.0 + 1e-12));
        }

        #[test]
        fn scaling_target_scales_dilations(s in arb_space(5), t in arb_space(5), p in arb_perm(5)) {
            // power-of-two scale keeps the arithmetic exact
            let c = 2.0;
            let t = arc(t);
            let scaled = arc(t.scaled(c));
            let f = PointMap::new(arc(s.clone()), t, p.clone()).unwrap();
            let g = PointMap::new(arc(s), scaled, p).unwrap();
            let rf = f.lipschitz_cost();
            let rg = g.lipschitz_cost();
            prop_assert_eq!(rg.dil_forward, c * rf.dil_forward);
            prop_assert_eq!(rg.dil_inverse, rf.dil_inverse / c);
        }
    }
}
