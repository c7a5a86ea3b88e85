//! Exact and bounded computation of the Lipschitz distance between finite
//! metric spaces.
//!
//! On finite spaces of equal cardinality the infimum over bi-Lipschitz
//! homeomorphisms is a minimum over the finitely many bijections, so the
//! distance can be computed exactly. [`exact_distance`] runs a depth-first
//! branch-and-bound over partial assignments: every node carries the running
//! maximum stretch in both directions, an admissible bound combines those
//! maxima with a sorted-spectrum bound on the still-unassigned residual, and
//! the incumbent starts from a local-search upper bound. Spaces of different
//! cardinality are at infinite distance (no bijection exists).
//!
//! Three cheaper companions bracket and cross-check the search:
//! [`naive_distance`] enumerates all bijections (the ground-truth oracle for
//! small instances), [`spectrum_lower_bound`] is a sound lower bound from the
//! sorted multisets of pair distances, and [`local_search_upper_bound`] is a
//! randomized-greedy plus 2-swap heuristic whose value is always the cost of
//! a genuine bijection. [`certify_separation`] applies the machinery to every
//! pair in a list of spaces and reports the smallest certified gap.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::space::{FiniteMetricSpace, PointMap};

/// Largest instance the factorial-enumeration oracle accepts.
pub const NAIVE_CAP: usize = 8;

/// Absolute slack for cost comparisons inside the search; keeps true optima
/// from being pruned by floating-point noise.
const COST_SLACK: f64 = 1e-12;

const DEFAULT_LOCAL_SEARCH_RESTARTS: usize = 8;
const DEFAULT_LOCAL_SEARCH_SEED: u64 = 0x5eed;

/// Node and wall-clock limits for the exact search. `default()` is unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget {
        max_nodes: None,
        max_time: None,
    };

    /// A budget that forbids any tree exploration: results come from the
    /// spectrum lower bound and the local-search upper bound alone.
    pub fn zero() -> Self {
        SearchBudget {
            max_nodes: Some(0),
            max_time: None,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

/// Outcome kind of a distance computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// The reported value is the exact minimum over all bijections.
    Exact,
    /// The budget ran out; the value lies inside the reported bracket.
    Bracketed,
    /// The spaces have different cardinalities, so no bijection exists.
    Infinite,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Exact => "exact",
            SolveStatus::Bracketed => "bracketed",
            SolveStatus::Infinite => "infinite",
        }
    }
}

/// Result of an exact or budget-limited Lipschitz distance computation.
#[derive(Debug, Clone)]
pub struct LipschitzResult {
    pub status: SolveStatus,
    /// Exact value when `status == Exact`.
    pub value: Option<f64>,
    /// Sound `[lower, upper]` bracket when `status == Bracketed`.
    pub bracket: Option<(f64, f64)>,
    /// Best bijection found; achieves `value` (exact) or the bracket upper
    /// bound. Absent for the infinite case.
    pub best_map: Option<PointMap>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl LipschitzResult {
    /// Best certified lower bound: the exact value, the bracket lower bound,
    /// or infinity for mismatched cardinalities.
    pub fn lower(&self) -> f64 {
        match self.status {
            SolveStatus::Exact => self.value.unwrap(),
            SolveStatus::Bracketed => self.bracket.unwrap().0,
            SolveStatus::Infinite => f64::INFINITY,
        }
    }

    /// Best certified upper bound (cost of a genuine bijection), or infinity.
    pub fn upper(&self) -> f64 {
        match self.status {
            SolveStatus::Exact => self.value.unwrap(),
            SolveStatus::Bracketed => self.bracket.unwrap().1,
            SolveStatus::Infinite => f64::INFINITY,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.status == SolveStatus::Exact
    }

    pub fn is_infinite(&self) -> bool {
        self.status == SolveStatus::Infinite
    }
}

/// Cost of the bijection `perm` between flat distance matrices, computed with
/// the same quotients and the same `|ln| + |ln|` arithmetic as
/// `PointMap::lipschitz_cost`, so values agree bit for bit.
fn perm_cost(dx: &[f64], dy: &[f64], n: usize, perm: &[usize]) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut rf = 0.0f64;
    let mut ri = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let sx = dx[i * n + j];
            let sy = dy[perm[i] * n + perm[j]];
            rf = rf.max(sy / sx);
            ri = ri.max(sx / sy);
        }
    }
    rf.ln().abs() + ri.ln().abs()
}

/// Sorted multiset of off-diagonal pair distances.
fn spectrum(d: &[f64], n: usize) -> Vec<f64> {
    let mut s = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            s.push(d[i * n + j]);
        }
    }
    s.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    s
}

/// `ln max(r⁺, 1) + ln max(r⁻, 1)` for the sorted spectra `sx`, `sy`.
fn spectrum_bound_from_sorted(sx: &[f64], sy: &[f64]) -> f64 {
    let mut r_plus = 1.0f64;
    let mut r_minus = 1.0f64;
    for (a, b) in sx.iter().zip(sy.iter()) {
        r_plus = r_plus.max(b / a);
        r_minus = r_minus.max(a / b);
    }
    r_plus.ln() + r_minus.ln()
}

/// Sound lower bound on the Lipschitz distance from sorted distance spectra.
///
/// Any bijection matches the two pair-distance multisets within factors
/// `dil(f)` and `dil(f⁻¹)`, and the sorted matching minimizes both maximum
/// ratios over all matchings, so
/// `ln max(r⁺, 1) + ln max(r⁻, 1) <= |ln dil(f)| + |ln dil(f⁻¹)|`
/// for every bijection `f`. Cardinality mismatch is an argument error; the
/// caller is expected to handle the infinite case itself.
pub fn spectrum_lower_bound(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<f64> {
    let n = x.len();
    if y.len() != n {
        return Err(Error::CardinalityMismatch {
            left: n,
            right: y.len(),
        });
    }
    if n < 2 {
        return Ok(0.0);
    }
    let sx = spectrum(x.dist_matrix(), n);
    let sy = spectrum(y.dist_matrix(), n);
    Ok(spectrum_bound_from_sorted(&sx, &sy))
}

/// Exhaustive minimum of the Lipschitz cost over all bijections.
///
/// The ground-truth oracle for [`exact_distance`]: every permutation is
/// enumerated and costed through the public `PointMap` path. Returns
/// infinity when the cardinalities differ; instances larger than
/// [`NAIVE_CAP`] points are an argument error.
pub fn naive_distance(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<f64> {
    let n = x.len();
    if y.len() != n {
        return Ok(f64::INFINITY);
    }
    if n > NAIVE_CAP {
        return Err(Error::EnumerationCap { n, cap: NAIVE_CAP });
    }
    if n < 2 {
        return Ok(0.0);
    }
    let xa = Arc::new(x.clone());
    let ya = Arc::new(y.clone());
    let mut best = f64::INFINITY;
    let mut perm = vec![0usize; n];
    let mut used = vec![false; n];
    fn rec(
        depth: usize,
        n: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        xa: &Arc<FiniteMetricSpace>,
        ya: &Arc<FiniteMetricSpace>,
        best: &mut f64,
    ) {
        if depth == n {
            let map = PointMap::new(Arc::clone(xa), Arc::clone(ya), perm.clone())
                .expect("enumerated permutations are bijections");
            let cost = map.lipschitz_cost().cost;
            if cost < *best {
                *best = cost;
            }
            return;
        }
        for t in 0..n {
            if !used[t] {
                used[t] = true;
                perm[depth] = t;
                rec(depth + 1, n, perm, used, xa, ya, best);
                used[t] = false;
            }
        }
    }
    rec(0, n, &mut perm, &mut used, &xa, &ya, &mut best);
    Ok(best)
}

/// Source indices ordered by decreasing eccentricity (ties by index):
/// extreme points constrain the stretch ratios earliest.
fn eccentricity_order(d: &[f64], n: usize) -> Vec<usize> {
    let mut ecc = vec![0.0f64; n];
    for i in 0..n {
        for j in 0..n {
            ecc[i] = ecc[i].max(d[i * n + j]);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| ecc[b].partial_cmp(&ecc[a]).unwrap().then(a.cmp(&b)));
    order
}

/// Best bijection found by randomized greedy construction plus 2-swap
/// hill-climbing.
///
/// Restart 0 matches points by eccentricity rank (which recovers the
/// identity whenever the two spaces are equal); later restarts build a
/// greedy assignment from a shuffled source order. The returned value is the
/// cost of a genuine bijection, hence an upper bound on the exact distance,
/// and the whole procedure is deterministic given `seed`.
pub fn local_search_upper_bound(
    x: &Arc<FiniteMetricSpace>,
    y: &Arc<FiniteMetricSpace>,
    restarts: usize,
    seed: u64,
) -> Result<(f64, PointMap)> {
    let n = x.len();
    if y.len() != n {
        return Err(Error::CardinalityMismatch {
            left: n,
            right: y.len(),
        });
    }
    let dx = x.dist_matrix();
    let dy = y.dist_matrix();
    if n < 2 {
        let map = PointMap::new(Arc::clone(x), Arc::clone(y), (0..n).collect())?;
        return Ok((0.0, map));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_perm: Option<Vec<usize>> = None;
    let mut best_cost = f64::INFINITY;
    for restart in 0..restarts.max(1) {
        let mut perm = if restart == 0 {
            let ox = eccentricity_order(dx, n);
            let oy = eccentricity_order(dy, n);
            let mut p = vec![0usize; n];
            for (s, t) in ox.into_iter().zip(oy) {
                p[s] = t;
            }
            p
        } else {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            greedy_assign(dx, dy, n, &order)
        };
        let mut cost = perm_cost(dx, dy, n, &perm);
        // first-improvement 2-swap descent
        loop {
            let mut improved = false;
            'sweep: for a in 0..n {
                for b in (a + 1)..n {
                    perm.swap(a, b);
                    let c = perm_cost(dx, dy, n, &perm);
                    if c < cost {
                        cost = c;
                        improved = true;
                        break 'sweep;
                    }
                    perm.swap(a, b);
                }
            }
            if !improved {
                break;
            }
        }
        if cost < best_cost {
            best_cost = cost;
            best_perm = Some(perm);
        }
    }
    let map = PointMap::new(Arc::clone(x), Arc::clone(y), best_perm.unwrap())?;
    Ok((best_cost, map))
}

/// Greedy completion: assign sources in the given order, each to the unused
/// target that keeps the partial cost bound smallest (ties to the smallest
/// target index).
fn greedy_assign(dx: &[f64], dy: &[f64], n: usize, order: &[usize]) -> Vec<usize> {
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut assigned: Vec<usize> = Vec::with_capacity(n);
    for &s in order {
        let mut best_t = usize::MAX;
        let mut best_bound = f64::INFINITY;
        for t in 0..n {
            if used[t] {
                continue;
            }
            let mut rf = 0.0f64;
            let mut ri = 0.0f64;
            for &e in &assigned {
                let a = dx[s * n + e];
                let b = dy[t * n + perm[e]];
                rf = rf.max(b / a);
                ri = ri.max(a / b);
            }
            let bound = rf.max(1.0).ln() + ri.max(1.0).ln();
            if bound < best_bound {
                best_bound = bound;
                best_t = t;
            }
        }
        perm[s] = best_t;
        used[best_t] = true;
        assigned.push(s);
    }
    perm
}

struct Search<'a> {
    dx: &'a [f64],
    dy: &'a [f64],
    n: usize,
    order: Vec<usize>,
    /// Sorted source-pair spectra of `order[d..]` for every depth `d`.
    suffix_spectra: Vec<Vec<f64>>,
    incumbent: f64,
    best_perm: Vec<usize>,
    assigned_t: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    exhausted: bool,
    /// Smallest entry bound among subtrees abandoned on exhaustion.
    frontier: f64,
}

impl<'a> Search<'a> {
    #[allow(clippy::too_many_arguments)]
    fn new(
        dx: &'a [f64],
        dy: &'a [f64],
        n: usize,
        order: Vec<usize>,
        incumbent: f64,
        best_perm: Vec<usize>,
        budget: &SearchBudget,
        start: Instant,
    ) -> Self {
        let suffix_spectra = suffix_spectra(dx, n, &order);
        Search {
            dx,
            dy,
            n,
            order,
            suffix_spectra,
            incumbent,
            best_perm,
            assigned_t: vec![usize::MAX; n],
            used: vec![false; n],
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline: budget.max_time.map(|t| start + t),
            exhausted: false,
            frontier: f64::INFINITY,
        }
    }

    fn budget_spent(&mut self) -> bool {
        if let Some(cap) = self.max_nodes {
            if self.nodes >= cap {
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if self.nodes.is_multiple_of(256) && Instant::now() >= deadline {
                return true;
            }
        }
        false
    }

    /// Ratios contributed by pairing source `s -> t` against everything
    /// already assigned, merged into the running maxima.
    fn extend_ratios(&self, depth: usize, s: usize, t: usize, rf: f64, ri: f64) -> (f64, f64) {
        let mut rf = rf;
        let mut ri = ri;
        for e in 0..depth {
            let a = self.dx[s * self.n + self.order[e]];
            let b = self.dy[t * self.n + self.assigned_t[e]];
            rf = rf.max(b / a);
            ri = ri.max(a / b);
        }
        (rf, ri)
    }

    /// Admissible bound for a child node: running maxima merged with the
    /// sorted-spectrum bound on the unassigned residual.
    fn child_bound(&self, depth: usize, t: usize, rf: f64, ri: f64) -> f64 {
        let cheap = rf.max(1.0).ln() + ri.max(1.0).ln();
        if cheap >= self.incumbent + COST_SLACK {
            return cheap;
        }
        let res_x = &self.suffix_spectra[depth + 1];
        if res_x.is_empty() {
            return cheap;
        }
        let mut res_y: Vec<f64> = Vec::with_capacity(res_x.len());
        let remaining: Vec<usize> = (0..self.n).filter(|&v| !self.used[v] && v != t).collect();
        for (a, &p) in remaining.iter().enumerate() {
            for &q in remaining.iter().skip(a + 1) {
                res_y.push(self.dy[p * self.n + q]);
            }
        }
        res_y.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let mut r_plus = 1.0f64;
        let mut r_minus = 1.0f64;
        for (a, b) in res_x.iter().zip(res_y.iter()) {
            r_plus = r_plus.max(b / a);
            r_minus = r_minus.max(a / b);
        }
        rf.max(r_plus).max(1.0).ln() + ri.max(r_minus).max(1.0).ln()
    }

    fn dive(&mut self, depth: usize, rf: f64, ri: f64, entry_bound: f64) {
        if depth == self.n {
            let cost = rf.ln().abs() + ri.ln().abs();
            if cost < self.incumbent {
                self.incumbent = cost;
                for e in 0..self.n {
                    self.best_perm[self.order[e]] = self.assigned_t[e];
                }
            }
            return;
        }
        let s = self.order[depth];
        for t in 0..self.n {
            if self.used[t] {
                continue;
            }
            if self.exhausted || self.budget_spent() {
                self.exhausted = true;
                self.frontier = self.frontier.min(entry_bound);
                return;
            }
            self.nodes += 1;
            let (nrf, nri) = self.extend_ratios(depth, s, t, rf, ri);
            let bound = self.child_bound(depth, t, nrf, nri);
            if bound >= self.incumbent + COST_SLACK {
                continue;
            }
            self.used[t] = true;
            self.assigned_t[depth] = t;
            self.dive(depth + 1, nrf, nri, bound);
            self.used[t] = false;
        }
    }
}

/// Sorted pair spectra of the source suffixes `order[d..]`, indexed by `d`.
fn suffix_spectra(dx: &[f64], n: usize, order: &[usize]) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let rest = &order[d..];
        let mut s = Vec::with_capacity(rest.len().saturating_sub(1) * rest.len() / 2);
        for (a, &p) in rest.iter().enumerate() {
            for &q in rest.iter().skip(a + 1) {
                s.push(dx[p * n + q]);
            }
        }
        s.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        out.push(s);
    }
    out
}

/// Second pass: the lexicographically smallest permutation whose cost ties
/// the optimal value within the comparison slack. Sources are assigned in
/// natural index order and targets tried in increasing order, so the first
/// complete assignment found is the lexicographic minimum.
struct LexSearch<'a> {
    dx: &'a [f64],
    dy: &'a [f64],
    n: usize,
    vstar: f64,
    suffix_spectra: Vec<Vec<f64>>,
    perm: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    exhausted: bool,
}

impl<'a> LexSearch<'a> {
    fn dive(&mut self, depth: usize, rf: f64, ri: f64) -> bool {
        if depth == self.n {
            let cost = rf.ln().abs() + ri.ln().abs();
            return cost <= self.vstar + COST_SLACK;
        }
        for t in 0..self.n {
            if self.used[t] {
                continue;
            }
            if self.exhausted
                || self.max_nodes.is_some_and(|cap| self.nodes >= cap)
                || self
                    .deadline
                    .is_some_and(|dl| self.nodes.is_multiple_of(256) && Instant::now() >= dl)
            {
                self.exhausted = true;
                return false;
            }
            self.nodes += 1;
            let mut nrf = rf;
            let mut nri = ri;
            for e in 0..depth {
                let a = self.dx[depth * self.n + e];
                let b = self.dy[t * self.n + self.perm[e]];
                nrf = nrf.max(b / a);
                nri = nri.max(a / b);
            }
            let mut bound = nrf.max(1.0).ln() + nri.max(1.0).ln();
            if bound <= self.vstar + COST_SLACK {
                let res_x = &self.suffix_spectra[depth + 1];
                if !res_x.is_empty() {
                    let remaining: Vec<usize> =
                        (0..self.n).filter(|&v| !self.used[v] && v != t).collect();
                    let mut res_y: Vec<f64> = Vec::with_capacity(res_x.len());
                    for (a, &p) in remaining.iter().enumerate() {
                        for &q in remaining.iter().skip(a + 1) {
                            res_y.push(self.dy[p * self.n + q]);
                        }
                    }
                    res_y.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
                    let mut r_plus = 1.0f64;
                    let mut r_minus = 1.0f64;
                    for (a, b) in res_x.iter().zip(res_y.iter()) {
                        r_plus = r_plus.max(b / a);
                        r_minus = r_minus.max(a / b);
                    }
                    bound = nrf.max(r_plus).max(1.0).ln() + nri.max(r_minus).max(1.0).ln();
                }
            }
            if bound > self.vstar + COST_SLACK {
                continue;
            }
            self.used[t] = true;
            self.perm[depth] = t;
            if self.dive(depth + 1, nrf, nri) {
                return true;
            }
            self.used[t] = false;
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Minimizes the Lipschitz cost over all bijections by branch-and-bound.
///
/// Both spaces are assumed validated. With cardinality mismatch the result
/// is `Infinite`. Within budget the status is `Exact` and among cost-tied
/// optimal bijections the lexicographically smallest permutation is
/// returned; on budget exhaustion the result is a sound `[lower, upper]`
/// bracket whose upper end is achieved by the best bijection found. A zero
/// budget yields the bracket formed by the spectrum lower bound and the
/// local-search upper bound without any tree exploration.
pub fn exact_distance(
    x: &Arc<FiniteMetricSpace>,
    y: &Arc<FiniteMetricSpace>,
    budget: &SearchBudget,
) -> LipschitzResult {
    let start = Instant::now();
    let n = x.len();
    if y.len() != n {
        return LipschitzResult {
            status: SolveStatus::Infinite,
            value: None,
            bracket: None,
            best_map: None,
            nodes_explored: 0,
            elapsed: start.elapsed(),
        };
    }
    if n < 2 {
        let map = PointMap::new(Arc::clone(x), Arc::clone(y), (0..n).collect())
            .expect("trivial permutation");
        return LipschitzResult {
            status: SolveStatus::Exact,
            value: Some(0.0),
            bracket: None,
            best_map: Some(map),
            nodes_explored: 0,
            elapsed: start.elapsed(),
        };
    }

    let dx = x.dist_matrix();
    let dy = y.dist_matrix();
    let root_lower = spectrum_lower_bound(x, y).expect("cardinalities match");
    let (ub, ub_map) = local_search_upper_bound(
        x,
        y,
        DEFAULT_LOCAL_SEARCH_RESTARTS,
        DEFAULT_LOCAL_SEARCH_SEED,
    )
    .expect("cardinalities match");

    if budget.max_nodes == Some(0) {
        return LipschitzResult {
            status: SolveStatus::Bracketed,
            value: None,
            bracket: Some((root_lower.min(ub), ub)),
            best_map: Some(ub_map),
            nodes_explored: 0,
            elapsed: start.elapsed(),
        };
    }

    let order = eccentricity_order(dx, n);
    let mut search = Search::new(dx, dy, n, order, ub, ub_map.perm().to_vec(), budget, start);
    search.dive(0, 0.0, 0.0, root_lower);

    let nodes_pass1 = search.nodes;
    let incumbent = search.incumbent;
    let best_perm = search.best_perm.clone();

    if search.exhausted {
        let lower = search
            .frontier
            .min(incumbent)
            .max(root_lower.min(incumbent));
        let map = PointMap::new(Arc::clone(x), Arc::clone(y), best_perm)
            .expect("search permutations are bijections");
        return LipschitzResult {
            status: SolveStatus::Bracketed,
            value: None,
            bracket: Some((lower, incumbent)),
            best_map: Some(map),
            nodes_explored: nodes_pass1,
            elapsed: start.elapsed(),
        };
    }

    // Deterministic tie-break pass: lexicographically smallest optimal perm.
    let natural: Vec<usize> = (0..n).collect();
    let mut lex = LexSearch {
        dx,
        dy,
        n,
        vstar: incumbent,
        suffix_spectra: suffix_spectra(dx, n, &natural),
        perm: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        max_nodes: budget.max_nodes.map(|cap| cap.saturating_sub(nodes_pass1)),
        deadline: budget.max_time.map(|t| start + t),
        exhausted: false,
    };
    let found = lex.dive(0, 0.0, 0.0);
    let perm = if found { lex.perm.clone() } else { best_perm };
    let map = PointMap::new(Arc::clone(x), Arc::clone(y), perm)
        .expect("search permutations are bijections");
    LipschitzResult {
        status: SolveStatus::Exact,
        value: Some(incumbent),
        bracket: None,
        best_map: Some(map),
        nodes_explored: nodes_pass1 + lex.nodes,
        elapsed: start.elapsed(),
    }
}

/// One row of a separation table: everything known about a single pair.
#[derive(Debug, Clone)]
pub struct PairEntry {
    pub left: usize,
    pub right: usize,
    /// Sorted-spectrum lower bound; absent for cardinality mismatches.
    pub spectrum_lower: Option<f64>,
    /// Local-search upper value (the cost of a genuine bijection); absent
    /// for cardinality mismatches.
    pub heuristic_upper: Option<f64>,
    /// Full solver result for escalated or infinite pairs.
    pub result: Option<LipschitzResult>,
}

impl PairEntry {
    pub fn is_infinite(&self) -> bool {
        matches!(
            &self.result,
            Some(r) if r.status == SolveStatus::Infinite
        )
    }

    /// Best certified lower bound on the pair distance.
    pub fn certified_lower(&self) -> f64 {
        match &self.result {
            Some(r) => r.lower(),
            None => self.spectrum_lower.unwrap_or(0.0),
        }
    }

    /// Best certified upper value (always the cost of a genuine bijection).
    pub fn known_upper(&self) -> f64 {
        match &self.result {
            Some(r) => r.upper(),
            None => self.heuristic_upper.unwrap_or(f64::INFINITY),
        }
    }

    pub fn status_str(&self) -> &'static str {
        match &self.result {
            Some(r) => r.status.as_str(),
            None => "certified",
        }
    }
}

/// Pairwise separation certificates for a list of spaces.
///
/// `min_gap` and `max_value` are taken over matched-cardinality pairs;
/// mismatched pairs are counted in `infinite_pairs`.
#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub threshold: f64,
    pub entries: Vec<PairEntry>,
    /// Smallest certified lower bound (exact value where escalated) among
    /// matched pairs; `None` when there is no matched distinct pair.
    pub min_gap: Option<f64>,
    /// Largest known upper value among matched pairs.
    pub max_value: Option<f64>,
    pub infinite_pairs: usize,
    /// Pairs whose known value is certainly below the threshold.
    pub below_threshold: Vec<(usize, usize)>,
}

/// Certifies pairwise separation of a family of spaces.
///
/// Every unordered distinct pair gets a spectrum lower bound and a
/// local-search upper value; a pair is escalated to the exact solver when
/// its lower bound falls below `threshold` and the cardinalities match.
/// Mismatched pairs are reported as infinite.
pub fn certify_separation(
    spaces: &[Arc<FiniteMetricSpace>],
    threshold: f64,
    budget: &SearchBudget,
) -> SeparationReport {
    let mut entries = Vec::new();
    for i in 0..spaces.len() {
        for j in (i + 1)..spaces.len() {
            let x = &spaces[i];
            let y = &spaces[j];
            if x.len() != y.len() {
                entries.push(PairEntry {
                    left: i,
                    right: j,
                    spectrum_lower: None,
                    heuristic_upper: None,
                    result: Some(exact_distance(x, y, budget)),
                });
                continue;
            }
            let lower = spectrum_lower_bound(x, y).expect("cardinalities match");
            let (upper, _) = local_search_upper_bound(
                x,
                y,
                DEFAULT_LOCAL_SEARCH_RESTARTS,
                DEFAULT_LOCAL_SEARCH_SEED,
            )
            .expect("cardinalities match");
            let result = if lower < threshold {
                Some(exact_distance(x, y, budget))
            } else {
                None
            };
            entries.push(PairEntry {
                left: i,
                right: j,
                spectrum_lower: Some(lower),
                heuristic_upper: Some(upper),
                result,
            });
        }
    }
    let finite: Vec<&PairEntry> = entries.iter().filter(|e| !e.is_infinite()).collect();
    let min_gap = finite
        .iter()
        .map(|e| e.certified_lower())
        .min_by(|a, b| a.partial_cmp(b).unwrap());
    let max_value = finite
        .iter()
        .map(|e| e.known_upper())
        .max_by(|a, b| a.partial_cmp(b).unwrap());
    let infinite_pairs = entries.len() - finite.len();
    let below_threshold = entries
        .iter()
        .filter(|e| !e.is_infinite() && e.known_upper() < threshold)
        .map(|e| (e.left, e.right))
        .collect();
    SeparationReport {
        threshold,
        entries,
        min_gap,
        max_value,
        infinite_pairs,
        below_threshold,
    }
}
