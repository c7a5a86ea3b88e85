//! Reproducible desk-scale studies of the two block families.
//!
//! Each experiment builds finite samplings, runs the solver machinery, and
//! returns a plain-data result that serializes to byte-identical CSV and
//! JSON tables for a fixed configuration (no clocks, fixed seeds, fixed row
//! order). The separation tables carry an explicit caption: gaps measured on
//! finite samplings are analogues of the continuum separation statements,
//! not proofs about the infinite families.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construct::{
    block_left, canonical_interval_map, interval_space, projection_map, pulse_peak_height,
    pulse_peak_x, pulse_space, DiscretizationParams, Family, SignVector,
};
use crate::error::{Error, Result};
use crate::solver::{certify_separation, exact_distance, SearchBudget};

/// Upper bound on the cost of the block-affine map between any two interval
/// spaces: `2 ln 2`.
pub const INTERVAL_MAP_COST_BOUND: f64 = 2.0 * std::f64::consts::LN_2;

/// Upper bound on the projection cost of any slope-1 pulse space: `ln 2 / 2`.
pub const PROJECTION_COST_BOUND: f64 = 0.5 * std::f64::consts::LN_2;

/// Separation threshold used for the interval family: `ln 2`.
pub const INTERVAL_SEPARATION_THRESHOLD: f64 = std::f64::consts::LN_2;

/// Largest family size an exhaustive run may enumerate (pairwise work is
/// quadratic in the family size).
pub const EXHAUSTIVE_CAP: usize = 16;

/// Tolerance for the certified bound assertions inside experiments.
pub const BOUND_TOL: f64 = 1e-9;

/// Separation threshold for the pulse family,
/// `(ln(1 + sqrt 2) - ln(sqrt 5)) / 2 ≈ 0.0383273154`.
pub fn pulse_separation_threshold() -> f64 {
    ((1.0 + 2f64.sqrt()).ln() - 5f64.sqrt().ln()) / 2.0
}

/// Projection cost bound for slope `eps`: `ln(1 + eps^2) / 2`.
pub fn projection_cost_bound(eps: f64) -> f64 {
    0.5 * (1.0 + eps * eps).ln()
}

/// How sign vectors are chosen for a family run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// All `2^N` vectors, lexicographic; limited to [`EXHAUSTIVE_CAP`] spaces.
    Exhaustive,
    /// `count` distinct seeded random vectors, listed lexicographically.
    Sample { count: usize, seed: u64 },
}

/// Configuration shared by the separation experiments.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub family: Family,
    pub depth: usize,
    pub samples: usize,
    /// Pulse slope(s); the separation experiments require `[1.0]`, the
    /// shrinking-slope experiment walks the whole list.
    pub eps_list: Vec<f64>,
    pub mode: EnumerationMode,
    pub budget: SearchBudget,
}

impl ExperimentConfig {
    pub fn new(family: Family, depth: usize, samples: usize) -> Self {
        ExperimentConfig {
            family,
            depth,
            samples,
            eps_list: vec![1.0],
            mode: EnumerationMode::Exhaustive,
            budget: SearchBudget::UNLIMITED,
        }
    }

    fn mode_label(&self) -> String {
        match self.mode {
            EnumerationMode::Exhaustive => "exhaustive".to_string(),
            EnumerationMode::Sample { count, seed } => {
                format!("sample(count={count},seed={seed})")
            }
        }
    }

    /// Chosen sign vectors in lexicographic digit order.
    fn select_vectors(&self) -> Result<Vec<SignVector>> {
        match self.mode {
            EnumerationMode::Exhaustive => {
                let count = 1usize << self.depth;
                if count > EXHAUSTIVE_CAP {
                    return Err(Error::TooManyVectors {
                        count,
                        cap: EXHAUSTIVE_CAP,
                    });
                }
                SignVector::enumerate_all(self.family, self.depth)
            }
            EnumerationMode::Sample { count, seed } => {
                let total = 1usize << self.depth.min(usize::BITS as usize - 1);
                let want = count.min(total);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut chosen: BTreeSet<String> = BTreeSet::new();
                let mut out = Vec::new();
                while out.len() < want {
                    let u = SignVector::random(self.family, self.depth, &mut rng)?;
                    if chosen.insert(u.digits()) {
                        out.push(u);
                    }
                }
                out.sort_by_key(|u| u.digits());
                Ok(out)
            }
        }
    }
}

const SEPARATION_CAPTION: &str = "finite-sample separation table; gaps at this resolution are \
analogues of the continuum separation statements, not proofs about the infinite families";

/// One `(u, v)` cell of a separation table, diagonal included.
#[derive(Debug, Clone, Serialize)]
pub struct SeparationRow {
    pub u: String,
    pub v: String,
    pub n_u: usize,
    pub n_v: usize,
    /// `exact`, `bracketed`, `infinite`, or `certified` (lower bound alone
    /// already clears the threshold).
    pub status: String,
    pub spectrum_lower: Option<f64>,
    /// Best certified lower bound; `None` renders as `inf` for mismatched
    /// cardinalities.
    pub lower: Option<f64>,
    /// Best known upper value (cost of a genuine bijection).
    pub upper: Option<f64>,
    pub nodes: u64,
}

/// Full result of a pairwise-separation experiment over one family.
#[derive(Debug, Clone, Serialize)]
pub struct SeparationExperiment {
    pub name: String,
    pub family: Family,
    pub depth: usize,
    pub samples: usize,
    pub eps: Option<f64>,
    pub mode: String,
    pub threshold: f64,
    pub caption: String,
    pub vectors: Vec<String>,
    pub sizes: Vec<usize>,
    pub rows: Vec<SeparationRow>,
    /// Smallest certified lower bound over distinct matched pairs.
    pub min_gap: Option<f64>,
    /// Largest known value over distinct matched pairs.
    pub max_value: Option<f64>,
    pub infinite_pairs: usize,
    pub below_threshold: Vec<(String, String)>,
    /// Per-vector projection costs (pulse family only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection_costs: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection_bound: Option<f64>,
}

/// Pairwise separation of the interval family at finite resolution.
///
/// Builds every selected `X_u`, certifies pairwise separation against the
/// threshold `ln 2`, refines each pair's upper value with the block-affine
/// map, and certifies that no pair value exceeds `2 ln 2`.
pub fn interval_separation_experiment(cfg: &ExperimentConfig) -> Result<SeparationExperiment> {
    if cfg.family != Family::Interval {
        return Err(Error::WrongFamily {
            experiment: "ce",
            expected: "interval",
        });
    }
    let params = DiscretizationParams::new(cfg.depth, cfg.samples)?;
    let vectors = cfg.select_vectors()?;
    let spaces: Vec<Arc<crate::FiniteMetricSpace>> = vectors
        .iter()
        .map(|u| interval_space(u, &params).map(Arc::new))
        .collect::<Result<_>>()?;

    let report = certify_separation(&spaces, INTERVAL_SEPARATION_THRESHOLD, &cfg.budget);

    // the block-affine map caps every pair value at 2 ln 2
    let mut canonical = vec![f64::INFINITY; report.entries.len()];
    for (idx, entry) in report.entries.iter().enumerate() {
        let map = canonical_interval_map(&vectors[entry.left], &vectors[entry.right], &params)?;
        canonical[idx] = map.lipschitz_cost().cost;
    }

    let mut result = assemble_separation(
        "ce",
        cfg,
        None,
        INTERVAL_SEPARATION_THRESHOLD,
        &vectors,
        &spaces,
        &report,
        Some(&canonical),
    );
    result.projection_costs = None;
    result.projection_bound = None;

    if let Some(max) = result.max_value {
        if max > INTERVAL_MAP_COST_BOUND + BOUND_TOL {
            return Err(Error::BoundViolated {
                context: "interval family max pair value".into(),
                value: max,
                limit: INTERVAL_MAP_COST_BOUND + BOUND_TOL,
            });
        }
    }
    Ok(result)
}

/// Pairwise separation of the pulse family at landmark resolution.
///
/// Builds every selected slope-1 pulse curve, certifies pairwise separation
/// against the threshold `(ln(1+sqrt 2) - ln(sqrt 5))/2`, reports mismatched
/// pulse counts as infinite pairs, and certifies every projection cost
/// against `ln 2 / 2`.
pub fn pulse_separation_experiment(cfg: &ExperimentConfig) -> Result<SeparationExperiment> {
    if cfg.family != Family::Pulse {
        return Err(Error::WrongFamily {
            experiment: "ce2",
            expected: "pulse",
        });
    }
    if cfg.eps_list != [1.0] {
        return Err(Error::SlopeOutOfRange(
            cfg.eps_list.first().copied().unwrap_or(f64::NAN),
        ));
    }
    let params = DiscretizationParams::new(cfg.depth, cfg.samples)?;
    let vectors = cfg.select_vectors()?;
    let spaces: Vec<Arc<crate::FiniteMetricSpace>> = vectors
        .iter()
        .map(|u| pulse_space(u, &params).map(Arc::new))
        .collect::<Result<_>>()?;

    let threshold = pulse_separation_threshold();
    let report = certify_separation(&spaces, threshold, &cfg.budget);

    let mut projection_costs = Vec::with_capacity(vectors.len());
    for u in &vectors {
        let cost = projection_map(u, &params)?.lipschitz_cost().cost;
        if cost > PROJECTION_COST_BOUND + BOUND_TOL {
            return Err(Error::BoundViolated {
                context: format!("projection cost of Y_{}", u.digits()),
                value: cost,
                limit: PROJECTION_COST_BOUND + BOUND_TOL,
            });
        }
        projection_costs.push(cost);
    }

    let mut result = assemble_separation(
        "ce2",
        cfg,
        Some(1.0),
        threshold,
        &vectors,
        &spaces,
        &report,
        None,
    );
    result.projection_costs = Some(projection_costs);
    result.projection_bound = Some(PROJECTION_COST_BOUND);
    Ok(result)
}

#[allow(clippy::too_many_arguments)]
fn assemble_separation(
    name: &str,
    cfg: &ExperimentConfig,
    eps: Option<f64>,
    threshold: f64,
    vectors: &[SignVector],
    spaces: &[Arc<crate::FiniteMetricSpace>],
    report: &crate::solver::SeparationReport,
    canonical_upper: Option<&[f64]>,
) -> SeparationExperiment {
    let digits: Vec<String> = vectors.iter().map(|u| u.digits()).collect();
    let sizes: Vec<usize> = spaces.iter().map(|s| s.len()).collect();

    // diagonal rows first assemble the full (i <= j) table in order
    let mut rows = Vec::new();
    let mut entry_iter = report.entries.iter().enumerate().peekable();
    let mut max_value: Option<f64> = None;
    for i in 0..vectors.len() {
        let diag = exact_distance(&spaces[i], &spaces[i], &cfg.budget);
        rows.push(SeparationRow {
            u: digits[i].clone(),
            v: digits[i].clone(),
            n_u: sizes[i],
            n_v: sizes[i],
            status: diag.status.as_str().to_string(),
            spectrum_lower: Some(0.0),
            lower: Some(diag.lower()),
            upper: Some(diag.upper()),
            nodes: diag.nodes_explored,
        });
        while let Some((idx, entry)) = entry_iter.peek().copied() {
            if entry.left != i {
                break;
            }
            entry_iter.next();
            let infinite = entry.is_infinite();
            let mut upper = entry.known_upper();
            if let Some(canonical) = canonical_upper {
                upper = upper.min(canonical[idx]);
            }
            let nodes = entry.result.as_ref().map_or(0, |r| r.nodes_explored);
            if !infinite {
                max_value = Some(max_value.map_or(upper, |m: f64| m.max(upper)));
            }
            rows.push(SeparationRow {
                u: digits[entry.left].clone(),
                v: digits[entry.right].clone(),
                n_u: sizes[entry.left],
                n_v: sizes[entry.right],
                status: entry.status_str().to_string(),
                spectrum_lower: entry.spectrum_lower,
                lower: (!infinite).then(|| entry.certified_lower()),
                upper: (!infinite).then_some(upper),
                nodes,
            });
        }
    }

    SeparationExperiment {
        name: name.to_string(),
        family: cfg.family,
        depth: cfg.depth,
        samples: cfg.samples,
        eps,
        mode: cfg.mode_label(),
        threshold,
        caption: SEPARATION_CAPTION.to_string(),
        vectors: digits.clone(),
        sizes,
        rows,
        min_gap: report.min_gap,
        max_value,
        infinite_pairs: report.infinite_pairs,
        below_threshold: report
            .below_threshold
            .iter()
            .map(|&(i, j)| (digits[i].clone(), digits[j].clone()))
            .collect(),
        projection_costs: None,
        projection_bound: None,
    }
}

/// One row of the shrinking-slope projection table.
#[derive(Debug, Clone, Serialize)]
pub struct SlopeRow {
    pub eps: f64,
    /// Exact projection cost of the sampled slope-`eps` curve.
    pub cost: f64,
    /// Closed-form bound `ln(1 + eps^2)/2`.
    pub bound: f64,
}

/// Projection costs of one pulse curve across a decreasing slope list.
#[derive(Debug, Clone, Serialize)]
pub struct SlopeSweep {
    pub u: String,
    pub depth: usize,
    pub samples: usize,
    pub caption: String,
    pub rows: Vec<SlopeRow>,
}

/// Projection cost of `Y^eps_u` for each slope in a strictly decreasing
/// list.
///
/// Certifies `cost <= ln(1 + eps^2)/2` for every row, and — once `u` has at
/// least one pulse — that the costs strictly decrease with the slope: for
/// any radius `delta > 0`, every slope with bound below `delta` brings the
/// whole family within distance `delta` of the base segment.
pub fn shrinking_slope_experiment(
    u: &SignVector,
    eps_list: &[f64],
    params: &DiscretizationParams,
) -> Result<SlopeSweep> {
    if eps_list.is_empty()
        || eps_list.iter().any(|&e| !(e > 0.0 && e <= 1.0))
        || eps_list.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(Error::BadEpsilonList);
    }
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let p = params.with_slope(eps)?;
        let cost = projection_map(u, &p)?.lipschitz_cost().cost;
        let bound = projection_cost_bound(eps);
        if cost > bound + BOUND_TOL {
            return Err(Error::BoundViolated {
                context: format!("projection cost at eps={eps}"),
                value: cost,
                limit: bound + BOUND_TOL,
            });
        }
        rows.push(SlopeRow { eps, cost, bound });
    }
    if u.count_of(1) > 0 {
        for w in rows.windows(2) {
            if w[1].cost >= w[0].cost {
                return Err(Error::BoundViolated {
                    context: format!("projection cost not decreasing at eps={}", w[1].eps),
                    value: w[1].cost,
                    limit: w[0].cost,
                });
            }
        }
    }
    Ok(SlopeSweep {
        u: u.digits(),
        depth: params.depth,
        samples: params.samples,
        caption: "projection cost shrinks with the pulse slope; the sampled family fits in \
arbitrarily small neighborhoods of the base segment"
            .to_string(),
        rows,
    })
}

/// One closed-form geometric quantity recomputed from a constructed space.
#[derive(Debug, Clone, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub scale: usize,
    pub expected: f64,
    pub actual: f64,
    pub rel_err: f64,
    pub pass: bool,
}

/// Pass/fail report of the geometry fixture suite.
#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub tolerance: f64,
    pub checks: Vec<FixtureCheck>,
}

impl FixtureReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Relative tolerance for the geometry fixtures.
pub const FIXTURE_REL_TOL: f64 = 1e-12;

fn fixture(name: &str, scale: usize, expected: f64, actual: f64) -> FixtureCheck {
    let rel_err = (actual - expected).abs() / expected;
    FixtureCheck {
        name: name.to_string(),
        scale,
        expected,
        actual,
        rel_err,
        pass: rel_err <= FIXTURE_REL_TOL,
    }
}

/// Recomputes three closed-form proof quantities from constructed spaces at
/// scales 1..=3 and compares each to its exact value at relative 1e-12:
///
/// * `straddle`: the distance `sqrt(5)*delta` between the flat point just
///   left of a pulse block and the rising-edge point just right of it;
/// * `peak`: the distance `sqrt(2)/2^(n+2)` from a pulse block's left
///   endpoint to its peak;
/// * `displacement`: the interval-family distance `(5/2)/2^(n+2)` between
///   the left endpoint of block `n` and the right endpoint of block `n+2`,
///   the smallest image displacement a block swap would force.
pub fn geometry_fixture_suite() -> FixtureReport {
    let mut checks = Vec::new();
    for n in 1usize..=3 {
        // straddle: pulse at block n, flat block n+1, delta = 1/2^(n+4)
        let mut entries = vec![0u8; n + 1];
        entries[n - 1] = 1;
        let u = SignVector::pulse(&entries).expect("valid pulse vector");
        let params = DiscretizationParams::new(n + 1, 9).expect("valid params");
        let space = pulse_space(&u, &params).expect("valid pulse space");
        let delta = block_left(n + 4);
        let a = space
            .find_coord(block_left(n) - delta, 0.0)
            .expect("flat straddle point is sampled");
        let b = space
            .find_coord(block_left(n) + delta, delta)
            .expect("rising straddle point is sampled");
        checks.push(fixture(
            "straddle",
            n,
            5f64.sqrt() * delta,
            space.dist(a, b),
        ));

        // peak: distance from the block's left endpoint to its peak
        let mut entries = vec![0u8; n];
        entries[n - 1] = 1;
        let u = SignVector::pulse(&entries).expect("valid pulse vector");
        let params = DiscretizationParams::new(n, 2).expect("valid params");
        let space = pulse_space(&u, &params).expect("valid pulse space");
        let left = space
            .find_coord(block_left(n), 0.0)
            .expect("block left endpoint is sampled");
        let peak = space
            .find_coord(pulse_peak_x(n), pulse_peak_height(n, 1.0))
            .expect("pulse peak is sampled");
        checks.push(fixture(
            "peak",
            n,
            2f64.sqrt() * pulse_peak_height(n, 1.0),
            space.dist(left, peak),
        ));

        // displacement: |1/2^n - (1/2^(n+2) + 1/2^(n+3))| = (5/2)/2^(n+2)
        let v = SignVector::interval(&vec![1u8; n + 2]).expect("valid interval vector");
        let params = DiscretizationParams::new(n + 2, 2).expect("valid params");
        let space = interval_space(&v, &params).expect("valid interval space");
        let from = space
            .index_of_label(&format!("b{n}:s0"))
            .expect("block left endpoint is labeled");
        let to = space
            .index_of_label(&format!("b{}:s1", n + 2))
            .expect("block right endpoint is labeled");
        checks.push(fixture(
            "displacement",
            n,
            2.5 * block_left(n + 2),
            space.dist(from, to),
        ));
    }
    FixtureReport {
        tolerance: FIXTURE_REL_TOL,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naive_distance;

    fn interval_cfg() -> ExperimentConfig {
        ExperimentConfig::new(Family::Interval, 3, 2)
    }

    fn pulse_cfg() -> ExperimentConfig {
        ExperimentConfig::new(Family::Pulse, 3, 2)
    }

    #[test]
    fn interval_separation_has_28_distinct_pairs_all_positive() {
        let result = interval_separation_experiment(&interval_cfg()).unwrap();
        assert_eq!(result.vectors.len(), 8);
        assert!(result.sizes.iter().all(|&n| n == 7));
        assert_eq!(result.rows.len(), 8 + 28);
        let offdiag: Vec<&SeparationRow> = result.rows.iter().filter(|r| r.u != r.v).collect();
        assert_eq!(offdiag.len(), 28);
        for row in &offdiag {
            // escalated pairs are exact; the rest are certified by the
            // spectrum bound alone, which already clears the threshold
            assert!(row.status == "exact" || row.status == "certified");
            if row.status == "certified" {
                assert!(row.spectrum_lower.unwrap() >= result.threshold);
            }
            assert!(row.lower.unwrap() > 0.0, "pair {} {}", row.u, row.v);
            assert!(row.upper.unwrap() <= INTERVAL_MAP_COST_BOUND + BOUND_TOL);
        }
        for row in result.rows.iter().filter(|r| r.u == r.v) {
            assert_eq!(row.lower, Some(0.0));
            assert_eq!(row.upper, Some(0.0));
        }
        assert!(result.min_gap.unwrap() > 0.0);
        assert!(result.max_value.unwrap() <= INTERVAL_MAP_COST_BOUND + BOUND_TOL);
    }

    #[test]
    fn interval_min_gap_matches_the_oracle() {
        let result = interval_separation_experiment(&interval_cfg()).unwrap();
        let params = DiscretizationParams::new(3, 2).unwrap();
        let vectors = SignVector::enumerate_all(Family::Interval, 3).unwrap();
        let spaces: Vec<_> = vectors
            .iter()
            .map(|u| interval_space(u, &params).unwrap())
            .collect();
        let mut oracle_min = f64::INFINITY;
        for i in 0..spaces.len() {
            for j in (i + 1)..spaces.len() {
                oracle_min = oracle_min.min(naive_distance(&spaces[i], &spaces[j]).unwrap());
            }
        }
        assert_eq!(result.min_gap.unwrap(), oracle_min);
    }

    #[test]
    fn interval_experiment_rejects_the_pulse_family() {
        let cfg = pulse_cfg();
        assert!(matches!(
            interval_separation_experiment(&cfg),
            Err(Error::WrongFamily { .. })
        ));
    }

    #[test]
    fn exhaustive_mode_is_capped() {
        let cfg = ExperimentConfig::new(Family::Interval, 5, 2);
        assert!(matches!(
            interval_separation_experiment(&cfg),
            Err(Error::TooManyVectors { count: 32, cap: 16 })
        ));
    }

    #[test]
    fn sampled_vectors_are_distinct_sorted_and_seeded() {
        let mut cfg = ExperimentConfig::new(Family::Interval, 5, 2);
        cfg.mode = EnumerationMode::Sample { count: 6, seed: 9 };
        let a = cfg.select_vectors().unwrap();
        let b = cfg.select_vectors().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        let digits: Vec<String> = a.iter().map(|u| u.digits()).collect();
        let mut sorted = digits.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(digits, sorted);
    }

    #[test]
    fn pulse_separation_matches_pulse_count_classes() {
        let result = pulse_separation_experiment(&pulse_cfg()).unwrap();
        assert_eq!(result.vectors.len(), 8);
        // cardinality is 5 + 2 * (number of pulses)
        for (u, n) in result.vectors.iter().zip(&result.sizes) {
            let pulses = u.chars().filter(|&c| c == '1').count();
            assert_eq!(*n, 5 + 2 * pulses);
        }
        let offdiag: Vec<&SeparationRow> = result.rows.iter().filter(|r| r.u != r.v).collect();
        let finite: Vec<_> = offdiag.iter().filter(|r| r.status != "infinite").collect();
        assert_eq!(finite.len(), 6);
        assert_eq!(result.infinite_pairs, 22);
        for row in finite {
            assert!(row.status == "exact" || row.status == "certified");
            assert!(row.lower.unwrap() > 0.0, "pair {} {}", row.u, row.v);
        }
        for cost in result.projection_costs.as_ref().unwrap() {
            assert!(*cost <= PROJECTION_COST_BOUND + BOUND_TOL);
        }
        assert!((result.threshold - 0.038_327_315_401_246_42).abs() < 1e-15);
    }

    #[test]
    fn sampled_interval_run_keeps_the_bound_under_budget_pressure() {
        // 21-point spaces under a small node budget: exact cells may
        // downgrade to brackets, flagged in the rows, and the block-affine
        // upper still caps max_value at 2 ln 2
        let mut cfg = ExperimentConfig::new(Family::Interval, 5, 4);
        cfg.mode = EnumerationMode::Sample { count: 4, seed: 1 };
        cfg.budget = SearchBudget::nodes(20_000);
        let result = interval_separation_experiment(&cfg).unwrap();
        assert!(result.max_value.unwrap() <= INTERVAL_MAP_COST_BOUND + BOUND_TOL);
        for row in result.rows.iter().filter(|r| r.u != r.v) {
            assert!(row.lower.unwrap() <= row.upper.unwrap() + 1e-12);
            assert!(
                row.status == "exact" || row.status == "certified" || row.status == "bracketed"
            );
        }
    }

    #[test]
    fn budget_exhaustion_downgrades_exact_cells_to_brackets() {
        let mut cfg = interval_cfg();
        cfg.budget = SearchBudget::nodes(50);
        let result = interval_separation_experiment(&cfg).unwrap();
        let bracketed = result
            .rows
            .iter()
            .filter(|r| r.status == "bracketed")
            .count();
        assert!(bracketed > 0, "expected some escalated pair to exhaust");
        for row in result.rows.iter().filter(|r| r.status == "bracketed") {
            assert!(row.lower.unwrap() <= row.upper.unwrap());
            assert!(row.lower.unwrap() > 0.0);
        }
        assert!(result.max_value.unwrap() <= INTERVAL_MAP_COST_BOUND + BOUND_TOL);
    }

    #[test]
    fn remark_costs_decrease_and_obey_the_slope_bound() {
        let u = SignVector::pulse(&[1, 0, 1]).unwrap();
        let params = DiscretizationParams::new(3, 3).unwrap();
        let result = shrinking_slope_experiment(&u, &[1.0, 0.5, 0.25, 0.125], &params).unwrap();
        assert_eq!(result.rows.len(), 4);
        assert!((result.rows[0].cost - PROJECTION_COST_BOUND).abs() < 1e-15);
        for w in result.rows.windows(2) {
            assert!(w[1].cost < w[0].cost);
        }
        for row in &result.rows {
            assert!(row.cost <= row.bound + BOUND_TOL);
        }
        // eps = 1/2 lands exactly on ln(5/4)/2
        assert!((result.rows[1].cost - 0.111_571_775_657_104_88).abs() < 1e-15);
    }

    #[test]
    fn remark_rejects_bad_eps_lists() {
        let u = SignVector::pulse(&[1]).unwrap();
        let params = DiscretizationParams::new(1, 2).unwrap();
        for eps in [vec![], vec![0.5, 0.5], vec![0.25, 0.5], vec![1.5, 0.5]] {
            assert!(matches!(
                shrinking_slope_experiment(&u, &eps, &params),
                Err(Error::BadEpsilonList)
            ));
        }
    }

    #[test]
    fn fixtures_reproduce_the_closed_forms() {
        let report = geometry_fixture_suite();
        assert_eq!(report.checks.len(), 9);
        assert!(report.all_pass());
        let straddle1 = &report.checks[0];
        assert_eq!(straddle1.name, "straddle");
        assert_eq!(straddle1.expected, 5f64.sqrt() / 32.0);
        let displacement1 = report
            .checks
            .iter()
            .find(|c| c.name == "displacement" && c.scale == 1)
            .unwrap();
        assert_eq!(displacement1.expected, 5.0 / 16.0);
    }

    #[test]
    fn threshold_evaluates_the_closed_form() {
        let t = pulse_separation_threshold();
        assert!((t - 0.038_327_315_401_246_42).abs() < 1e-15);
    }
}
