//! Finite samplings of two families of compact spaces built from dyadic blocks.
//!
//! Both families assign one geometric block to every scale `n = 1, 2, ...`
//! and are indexed by a sign vector `u` choosing the block variant at each
//! scale:
//!
//! * the **interval family** `X_u` lives on the real line and consists of the
//!   origin together with the intervals `[1/2^n, 1/2^n + 1/2^(n+u_n)]` for
//!   `u_n ∈ {1, 2}` — shrinking intervals accumulating at 0, where the sign
//!   chooses between a longer and a shorter interval at each scale;
//! * the **pulse family** `Y_u` lives in the plane on the blocks
//!   `[1/2^n, 1/2^(n-1)]`, where `u_n ∈ {0, 1}` chooses between a flat
//!   segment at height 0 and a triangular pulse rising with slope `eps`
//!   from `1/2^n`, peaking above `5/2^(n+2)`, and returning to 0 at
//!   `3/2^(n+1)`. Distances are chordal: plain planar Euclidean, not arc
//!   length along the curve.
//!
//! The infinite families are cut at a finite depth `N` (the accumulation
//! point 0 is always retained) and every linear piece is sampled at `k`
//! uniform positions, endpoints included. Pulse breakpoints are forced into
//! the sample set regardless of `k`, so landmark geometry is present at
//! every resolution. Sample grids are nested whenever `k' - 1` is a multiple
//! of `k - 1`, which makes refinement diagnostics meaningful.
//!
//! Alongside the spaces, this module builds the two explicit bi-Lipschitz
//! maps the families come with: the block-affine map between two interval
//! spaces (cost at most `2 ln 2`) and the vertical projection of a pulse
//! space onto its base segment (cost at most `ln(1 + eps^2) / 2`).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{FiniteMetricSpace, PointMap, Provenance};

/// Deepest supported block scale; keeps every breakpoint comfortably normal.
pub const MAX_DEPTH: usize = 60;

/// Which block family a sign vector indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Interval,
    Pulse,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Interval => "interval",
            Family::Pulse => "pulse",
        }
    }

    pub fn alphabet(self) -> [u8; 2] {
        match self {
            Family::Interval => [1, 2],
            Family::Pulse => [0, 1],
        }
    }

    fn alphabet_str(self) -> &'static str {
        match self {
            Family::Interval => "{1,2}",
            Family::Pulse => "{0,1}",
        }
    }

    fn admits(self, value: u8) -> bool {
        let [a, b] = self.alphabet();
        value == a || value == b
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite word over a family's alphabet; entry `n` (1-based) picks the
/// block variant at scale `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector {
    family: Family,
    entries: Vec<u8>,
}

impl SignVector {
    pub fn new(family: Family, entries: Vec<u8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySignVector);
        }
        for (i, &v) in entries.iter().enumerate() {
            if !family.admits(v) {
                return Err(Error::SignVectorEntry {
                    value: v,
                    position: i + 1,
                    family: family.name(),
                    alphabet: family.alphabet_str(),
                });
            }
        }
        Ok(Self { family, entries })
    }

    pub fn interval(entries: &[u8]) -> Result<Self> {
        Self::new(Family::Interval, entries.to_vec())
    }

    pub fn pulse(entries: &[u8]) -> Result<Self> {
        Self::new(Family::Pulse, entries.to_vec())
    }

    /// Parses a compact digit string such as `"121"` or `"0101"`.
    ///
    /// The reported position of an offending character is 1-based.
    pub fn parse(family: Family, s: &str) -> Result<Self> {
        let mut entries = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            let value = ch.to_digit(10).map(|d| d as u8);
            match value {
                Some(v) if family.admits(v) => entries.push(v),
                _ => {
                    return Err(Error::SignVectorChar {
                        ch,
                        position: i + 1,
                        family: family.name(),
                        alphabet: family.alphabet_str(),
                    })
                }
            }
        }
        if entries.is_empty() {
            return Err(Error::EmptySignVector);
        }
        Ok(Self { family, entries })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Entry for block `n`, 1-based.
    pub fn entry(&self, n: usize) -> u8 {
        self.entries[n - 1]
    }

    /// Number of pulse blocks (pulse family) or long intervals (interval family).
    pub fn count_of(&self, value: u8) -> usize {
        self.entries.iter().filter(|&&v| v == value).count()
    }

    /// Compact digit rendering, e.g. `"121"`.
    pub fn digits(&self) -> String {
        self.entries.iter().map(|v| (b'0' + v) as char).collect()
    }

    /// All words of length `n` in lexicographic digit order.
    pub fn enumerate_all(family: Family, n: usize) -> Result<Vec<SignVector>> {
        if n == 0 {
            return Err(Error::EmptySignVector);
        }
        let [lo, hi] = family.alphabet();
        let mut out = Vec::with_capacity(1usize << n);
        let mut current = vec![lo; n];
        loop {
            out.push(SignVector {
                family,
                entries: current.clone(),
            });
            // binary increment over the two-letter alphabet
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if current[i] == lo {
                    current[i] = hi;
                    break;
                }
                current[i] = lo;
            }
        }
    }

    /// Uniformly random word of length `n`.
    pub fn random(family: Family, n: usize, rng: &mut impl rand::Rng) -> Result<SignVector> {
        if n == 0 {
            return Err(Error::EmptySignVector);
        }
        let [lo, hi] = family.alphabet();
        let entries = (0..n)
            .map(|_| if rng.gen::<bool>() { hi } else { lo })
            .collect();
        Ok(SignVector { family, entries })
    }
}

impl std::fmt::Display for SignVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.digits())
    }
}

/// Truncation depth, per-piece sample count, and pulse slope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscretizationParams {
    /// Number of retained blocks `N >= 1`.
    pub depth: usize,
    /// Uniform samples per linear piece, endpoints included; `k >= 2`.
    /// `k = 2` keeps breakpoints only (landmark sampling).
    pub samples: usize,
    /// Pulse slope `eps` in `(0, 1]`; 1 is the reference family.
    pub slope: f64,
}

impl DiscretizationParams {
    pub fn new(depth: usize, samples: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::ZeroDepth);
        }
        if depth > MAX_DEPTH {
            return Err(Error::TooDeep {
                depth,
                cap: MAX_DEPTH,
            });
        }
        if samples < 2 {
            return Err(Error::TooFewSamples(samples));
        }
        Ok(Self {
            depth,
            samples,
            slope: 1.0,
        })
    }

    pub fn with_slope(mut self, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::SlopeOutOfRange(eps));
        }
        self.slope = eps;
        Ok(self)
    }

    fn check_vector(&self, u: &SignVector) -> Result<()> {
        if u.len() != self.depth {
            return Err(Error::DepthMismatch {
                len: u.len(),
                depth: self.depth,
            });
        }
        Ok(())
    }
}

/// `2^e`, exact in IEEE arithmetic for the exponents used here.
fn pow2(e: i32) -> f64 {
    2.0f64.powi(e)
}

/// Left endpoint `1/2^n` of block `n`.
pub fn block_left(n: usize) -> f64 {
    pow2(-(n as i32))
}

/// Right endpoint `1/2^(n-1)` of block `n`.
pub fn block_right(n: usize) -> f64 {
    pow2(-(n as i32 - 1))
}

/// Horizontal position `5/2^(n+2)` of the pulse peak in block `n`.
pub fn pulse_peak_x(n: usize) -> f64 {
    5.0 * pow2(-(n as i32 + 2))
}

/// Horizontal position `3/2^(n+1)` where the pulse returns to height 0.
pub fn pulse_foot_x(n: usize) -> f64 {
    3.0 * pow2(-(n as i32 + 1))
}

/// Peak height `eps/2^(n+2)` of the pulse in block `n`.
pub fn pulse_peak_height(n: usize, eps: f64) -> f64 {
    eps * pow2(-(n as i32 + 2))
}

/// Height of the pulse curve `Y^eps_u` above `x`.
///
/// Zero on flat blocks and on the trailing flat part of a pulse block;
/// `eps*(x - 1/2^n)` on the rising edge and `eps*(3/2^(n+1) - x)` on the
/// falling edge. `x = 0` is the accumulation point at height 0. Any `x`
/// outside the retained blocks is an argument error.
pub fn pulse_height(u: &SignVector, x: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::SlopeOutOfRange(eps));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let depth = u.len();
    if !(x >= block_left(depth) && x <= 1.0) {
        return Err(Error::OutsideBlocks(x));
    }
    for n in 1..=depth {
        if x >= block_left(n) && x <= block_right(n) {
            if u.entry(n) == 0 {
                return Ok(0.0);
            }
            let peak = pulse_peak_x(n);
            let foot = pulse_foot_x(n);
            return Ok(if x <= peak {
                eps * (x - block_left(n))
            } else if x <= foot {
                eps * (foot - x)
            } else {
                0.0
            });
        }
    }
    Err(Error::OutsideBlocks(x))
}

struct RawPoint {
    x: f64,
    y: f64,
    label: String,
}

/// Uniform positions over `[a, b]`, endpoints exact.
fn piece_samples(a: f64, b: f64, k: usize) -> Vec<f64> {
    (0..k)
        .map(|j| {
            if j == 0 {
                a
            } else if j == k - 1 {
                b
            } else {
                a + (j as f64 / (k - 1) as f64) * (b - a)
            }
        })
        .collect()
}

/// Finite sampling of the interval-family space `X_u`.
///
/// The point set is the origin plus `k` uniform samples of each retained
/// interval, `1 + N*k` points in total; the metric is `|x - y|`. Labels are
/// `"origin"` and `"b{n}:s{j}"` for sample `j` of block `n`, and points are
/// ordered by increasing position.
pub fn interval_space(u: &SignVector, params: &DiscretizationParams) -> Result<FiniteMetricSpace> {
    params.check_vector(u)?;
    let k = params.samples;
    let mut pts: Vec<RawPoint> = vec![RawPoint {
        x: 0.0,
        y: 0.0,
        label: "origin".into(),
    }];
    for n in 1..=params.depth {
        let left = block_left(n);
        let len = pow2(-(n as i32 + i32::from(u.entry(n))));
        let right = left + len;
        for (j, x) in piece_samples(left, right, k).into_iter().enumerate() {
            pts.push(RawPoint {
                x,
                y: 0.0,
                label: format!("b{n}:s{j}"),
            });
        }
    }
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    let labels = pts.iter().map(|p| p.label.clone()).collect();
    let xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
    let mut space = FiniteMetricSpace::from_line_points(format!("X_{}", u.digits()), labels, &xs)?;
    space.set_provenance(Provenance {
        family: Family::Interval,
        sign_vector: u.digits(),
        depth: params.depth,
        samples: k,
        eps: None,
    });
    Ok(space)
}

/// The block-affine bijection between two interval-space samplings.
///
/// Sample `j` of block `n` in `X_u` goes to sample `j` of block `n` in
/// `X_v` and the origin is fixed. On each block this is the affine map with
/// slope `2^(u_n - v_n)`, so every pair ratio lies in `[1/2, 2]` and the
/// Lipschitz cost never exceeds `2 ln 2` regardless of `u`, `v`, or the
/// sampling resolution.
pub fn canonical_interval_map(
    u: &SignVector,
    v: &SignVector,
    params: &DiscretizationParams,
) -> Result<PointMap> {
    if u.len() != v.len() {
        return Err(Error::SignLengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let source = Arc::new(interval_space(u, params)?);
    let target = Arc::new(interval_space(v, params)?);
    let perm = source
        .labels()
        .iter()
        .map(|l| {
            target
                .index_of_label(l)
                .expect("interval samplings share the same label set")
        })
        .collect();
    PointMap::new(source, target, perm)
}

/// Finite sampling of the pulse-family curve `Y^eps_u` with the chordal
/// (ambient planar Euclidean) metric.
///
/// Every block contributes its left endpoint, pulse blocks additionally the
/// peak and the foot of the falling edge, and each linear piece `k - 2`
/// interior samples; the origin `(0,0)` and the right endpoint `(1,0)` are
/// always present. Labels name the landmarks (`"b{n}:left"`, `"b{n}:peak"`,
/// `"b{n}:foot"`, `"b1:right"`) and interior samples
/// (`"b{n}:rise:s{j}"` etc.), and points are ordered by increasing `x`.
pub fn pulse_space(u: &SignVector, params: &DiscretizationParams) -> Result<FiniteMetricSpace> {
    params.check_vector(u)?;
    let k = params.samples;
    let eps = params.slope;
    let mut pts: Vec<RawPoint> = vec![RawPoint {
        x: 0.0,
        y: 0.0,
        label: "origin".into(),
    }];
    let push_interior = |pts: &mut Vec<RawPoint>, a: f64, b: f64, n: usize, piece: &str| {
        let samples = piece_samples(a, b, k);
        for (j, &x) in samples.iter().enumerate().take(k - 1).skip(1) {
            let y = pulse_height(u, x, eps).expect("interior sample lies in its block");
            pts.push(RawPoint {
                x,
                y,
                label: format!("b{n}:{piece}:s{j}"),
            });
        }
    };
    for n in 1..=params.depth {
        let left = block_left(n);
        let right = block_right(n);
        pts.push(RawPoint {
            x: left,
            y: 0.0,
            label: format!("b{n}:left"),
        });
        if u.entry(n) == 1 {
            let peak = pulse_peak_x(n);
            let foot = pulse_foot_x(n);
            push_interior(&mut pts, left, peak, n, "rise");
            pts.push(RawPoint {
                x: peak,
                y: pulse_peak_height(n, eps),
                label: format!("b{n}:peak"),
            });
            push_interior(&mut pts, peak, foot, n, "fall");
            pts.push(RawPoint {
                x: foot,
                y: 0.0,
                label: format!("b{n}:foot"),
            });
            push_interior(&mut pts, foot, right, n, "tail");
        } else {
            push_interior(&mut pts, left, right, n, "flat");
        }
        if n == 1 {
            pts.push(RawPoint {
                x: right,
                y: 0.0,
                label: "b1:right".into(),
            });
        }
    }
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    let labels = pts.iter().map(|p| p.label.clone()).collect();
    let coords: Vec<[f64; 2]> = pts.iter().map(|p| [p.x, p.y]).collect();
    let name = if eps == 1.0 {
        format!("Y_{}", u.digits())
    } else {
        format!("Y_{}_e{}", u.digits(), eps)
    };
    let mut space = FiniteMetricSpace::from_points(name, labels, coords)?;
    space.set_provenance(Provenance {
        family: Family::Pulse,
        sign_vector: u.digits(),
        depth: params.depth,
        samples: k,
        eps: Some(eps),
    });
    Ok(space)
}

/// Vertical projection of a pulse-space sampling onto its base segment.
///
/// The target is the identically-sampled subset of `[0, 1]` with metric
/// `|x - y|`; each curve point `(x, h)` goes to `x`. Projecting never
/// stretches a pair and shrinks a slope-`eps` pair by `sqrt(1 + eps^2)`,
/// so the cost is at most `ln(1 + eps^2) / 2` — exactly that once `u` has a
/// pulse, and exactly 0 when `u` is all zeros.
pub fn projection_map(u: &SignVector, params: &DiscretizationParams) -> Result<PointMap> {
    let curve = pulse_space(u, params)?;
    let coords = curve.coords().expect("pulse spaces carry coordinates");
    let xs: Vec<f64> = coords.iter().map(|c| c[0]).collect();
    let name = format!("S_{}", u.digits());
    let base = FiniteMetricSpace::from_line_points(name, curve.labels().to_vec(), &xs)?;
    let n = curve.len();
    PointMap::new(Arc::new(curve), Arc::new(base), (0..n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn params(depth: usize, samples: usize) -> DiscretizationParams {
        DiscretizationParams::new(depth, samples).unwrap()
    }

    fn xs_of(space: &FiniteMetricSpace) -> Vec<f64> {
        space.coords().unwrap().iter().map(|c| c[0]).collect()
    }

    #[test]
    fn interval_single_long_block() {
        let u = SignVector::interval(&[1]).unwrap();
        let s = interval_space(&u, &params(1, 2)).unwrap();
        assert_eq!(xs_of(&s), vec![0.0, 0.5, 0.75]);
    }

    #[test]
    fn interval_single_short_block() {
        let u = SignVector::interval(&[2]).unwrap();
        let s = interval_space(&u, &params(1, 2)).unwrap();
        assert_eq!(xs_of(&s), vec![0.0, 0.5, 0.625]);
    }

    #[test]
    fn interval_two_blocks() {
        let u = SignVector::interval(&[1, 1]).unwrap();
        let s = interval_space(&u, &params(2, 2)).unwrap();
        assert_eq!(xs_of(&s), vec![0.0, 0.25, 0.375, 0.5, 0.75]);
        assert!(s.validate().is_valid());
        assert_eq!(s.diameter(), 0.75);
    }

    #[test]
    fn interval_point_count_is_one_plus_nk() {
        for depth in 1..=5 {
            for k in [2, 3, 5] {
                let u = SignVector::new(Family::Interval, vec![2; depth]).unwrap();
                let s = interval_space(&u, &params(depth, k)).unwrap();
                assert_eq!(s.len(), 1 + depth * k);
            }
        }
    }

    #[test]
    fn canonical_map_identity_when_u_equals_v() {
        let u = SignVector::parse(Family::Interval, "12121").unwrap();
        let f = canonical_interval_map(&u, &u, &params(5, 3)).unwrap();
        assert_eq!(f.lipschitz_cost().cost, 0.0);
    }

    #[test]
    fn canonical_map_example_dilations() {
        let u = SignVector::interval(&[1, 1]).unwrap();
        let v = SignVector::interval(&[2, 2]).unwrap();
        let f = canonical_interval_map(&u, &v, &params(2, 2)).unwrap();
        let report = f.lipschitz_cost();
        assert_eq!(report.dil_forward, 1.5);
        assert_eq!(report.dil_inverse, 2.0);
        // ln(3/2) + ln 2 = ln 3
        assert!((report.cost - 3f64.ln()).abs() < 1e-15);
        // the maximal stretch is attained on the pair (3/8, 1/2)
        let i = f.source().find_coord(0.375, 0.0).unwrap();
        let j = f.source().find_coord(0.5, 0.0).unwrap();
        let ratio = f.target().dist(f.perm()[i], f.perm()[j]) / f.source().dist(i, j);
        assert_eq!(ratio, 1.5);
        // within the reference bound, hence a (2 ln 2)-isometry
        assert!(f.is_epsilon_isometry(2.0 * std::f64::consts::LN_2).unwrap());
    }

    #[test]
    fn canonical_map_length_mismatch_errors() {
        let u = SignVector::interval(&[1, 1]).unwrap();
        let v = SignVector::interval(&[2]).unwrap();
        assert!(matches!(
            canonical_interval_map(&u, &v, &params(2, 2)),
            Err(Error::SignLengthMismatch { left: 2, right: 1 })
        ));
    }

    #[test]
    fn pulse_height_flat_block_is_zero() {
        let u = SignVector::pulse(&[0, 0]).unwrap();
        assert_eq!(pulse_height(&u, 0.3, 1.0).unwrap(), 0.0);
        assert_eq!(pulse_height(&u, 0.6, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn pulse_height_peak_value() {
        for n in 1..=4 {
            let mut entries = vec![0u8; n];
            entries[n - 1] = 1;
            let u = SignVector::pulse(&entries).unwrap();
            let peak = pulse_peak_x(n);
            assert_eq!(pulse_height(&u, peak, 1.0).unwrap(), pow2(-(n as i32 + 2)));
            assert_eq!(pulse_height(&u, block_left(n), 1.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn pulse_height_outside_blocks_errors() {
        let u = SignVector::pulse(&[1]).unwrap();
        assert!(matches!(
            pulse_height(&u, 0.25, 1.0),
            Err(Error::OutsideBlocks(_))
        ));
        assert!(matches!(
            pulse_height(&u, 1.5, 1.0),
            Err(Error::OutsideBlocks(_))
        ));
    }

    #[test]
    fn pulse_height_is_continuous_at_breakpoints() {
        // evaluate the adjacent closed forms directly at each breakpoint
        for n in 1..=5usize {
            for eps in [1.0, 0.5, 0.125] {
                let left = block_left(n);
                let peak = pulse_peak_x(n);
                let foot = pulse_foot_x(n);
                // rising edge meets the peak value of the falling edge
                assert!((eps * (peak - left) - eps * (foot - peak)).abs() <= 1e-12);
                // falling edge meets the flat tail at 0
                assert!((eps * (foot - foot) - 0.0).abs() <= 1e-12);
                // block boundary: rising edge starts at 0
                assert!((eps * (left - left) - 0.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn all_flat_pulse_space_is_a_segment_sampling() {
        let u = SignVector::pulse(&[0, 0, 0]).unwrap();
        let s = pulse_space(&u, &params(3, 2)).unwrap();
        assert!(s.coords().unwrap().iter().all(|c| c[1] == 0.0));
        assert_eq!(xs_of(&s), vec![0.0, 0.125, 0.25, 0.5, 1.0]);
        assert!(s.validate().is_valid());
    }

    #[test]
    fn pulse_space_contains_all_mandatory_breakpoints() {
        let u = SignVector::pulse(&[1, 0, 1]).unwrap();
        let s = pulse_space(&u, &params(3, 2)).unwrap();
        for n in 1..=3 {
            assert!(s.find_coord(block_left(n), 0.0).is_some(), "left of {n}");
            assert!(s.find_coord(block_right(n), 0.0).is_some(), "right of {n}");
            if u.entry(n) == 1 {
                assert!(
                    s.find_coord(pulse_peak_x(n), pulse_peak_height(n, 1.0))
                        .is_some(),
                    "peak of {n}"
                );
                assert!(s.find_coord(pulse_foot_x(n), 0.0).is_some(), "foot of {n}");
            }
        }
    }

    #[test]
    fn peak_distance_from_block_left() {
        let u = SignVector::pulse(&[1]).unwrap();
        let s = pulse_space(&u, &params(1, 2)).unwrap();
        let left = s.find_coord(0.5, 0.0).unwrap();
        let peak = s.find_coord(0.625, 0.125).unwrap();
        assert_eq!(s.dist(left, peak), 2f64.sqrt() / 8.0);
    }

    #[test]
    fn straddle_distance_is_sqrt5_delta() {
        // pulse at block 1, flat block 2 retained, delta = 1/32
        let u = SignVector::pulse(&[1, 0]).unwrap();
        let s = pulse_space(&u, &params(2, 9)).unwrap();
        let delta = 1.0 / 32.0;
        let a = s.find_coord(0.5 - delta, 0.0).unwrap();
        let b = s.find_coord(0.5 + delta, delta).unwrap();
        assert_eq!(s.dist(a, b), 5f64.sqrt() * delta);
    }

    #[test]
    fn projection_of_all_flat_is_an_isometry() {
        let u = SignVector::pulse(&[0, 0, 0]).unwrap();
        let f = projection_map(&u, &params(3, 3)).unwrap();
        assert_eq!(f.lipschitz_cost().cost, 0.0);
    }

    #[test]
    fn projection_inverse_dilation_is_sqrt2_with_a_pulse() {
        let u = SignVector::pulse(&[0, 1, 0]).unwrap();
        let f = projection_map(&u, &params(3, 2)).unwrap();
        let report = f.lipschitz_cost();
        assert_eq!(report.dil_forward, 1.0);
        assert_eq!(report.dil_inverse, 2f64.sqrt());
        assert!((report.cost - 0.5 * std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn refinement_is_nested_for_compatible_sample_counts() {
        let u = SignVector::parse(Family::Interval, "122").unwrap();
        let coarse = interval_space(&u, &params(3, 3)).unwrap();
        let fine = interval_space(&u, &params(3, 5)).unwrap();
        let fine_xs = xs_of(&fine);
        for x in xs_of(&coarse) {
            assert!(fine_xs.contains(&x));
        }

        let v = SignVector::parse(Family::Pulse, "101").unwrap();
        let coarse = pulse_space(&v, &params(3, 2)).unwrap();
        let fine = pulse_space(&v, &params(3, 9)).unwrap();
        for c in coarse.coords().unwrap() {
            assert!(fine.find_coord(c[0], c[1]).is_some());
        }
    }

    #[test]
    fn parse_rejects_offending_position() {
        let err = SignVector::parse(Family::Interval, "13").unwrap_err();
        match err {
            Error::SignVectorChar { ch, position, .. } => {
                assert_eq!(ch, '3');
                assert_eq!(position, 2);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn enumerate_all_is_lexicographic() {
        let all = SignVector::enumerate_all(Family::Pulse, 2).unwrap();
        let digits: Vec<String> = all.iter().map(|u| u.digits()).collect();
        assert_eq!(digits, vec!["00", "01", "10", "11"]);
        let all = SignVector::enumerate_all(Family::Interval, 3).unwrap();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0].digits(), "111");
        assert_eq!(all[7].digits(), "222");
    }

    proptest! {
        #[test]
        fn canonical_map_cost_is_within_the_reference_bound(
            ubits in proptest::collection::vec(proptest::bool::ANY, 5),
            vbits in proptest::collection::vec(proptest::bool::ANY, 5),
        ) {
            let to_vec = |bits: &[bool]| -> Vec<u8> {
                bits.iter().map(|&b| if b { 2 } else { 1 }).collect()
            };
            let u = SignVector::interval(&to_vec(&ubits)).unwrap();
            let v = SignVector::interval(&to_vec(&vbits)).unwrap();
            let f = canonical_interval_map(&u, &v, &params(5, 3)).unwrap();
            prop_assert!(f.lipschitz_cost().cost <= 2.0 * std::f64::consts::LN_2 + 1e-9);
        }

        #[test]
        fn projection_cost_is_within_the_slope_bound(
            bits in proptest::collection::vec(proptest::bool::ANY, 4),
            eps_ix in 0usize..3,
            k in 2usize..5,
        ) {
            let entries: Vec<u8> = bits.iter().map(|&b| u8::from(b)).collect();
            let u = SignVector::pulse(&entries).unwrap();
            let eps = [1.0, 0.5, 0.25][eps_ix];
            let p = params(4, k).with_slope(eps).unwrap();
            let f = projection_map(&u, &p).unwrap();
            let cost = f.lipschitz_cost().cost;
            prop_assert!(cost <= 0.5 * (1.0 + eps * eps).ln() + 1e-9);
            if entries.iter().all(|&e| e == 0) {
                prop_assert_eq!(cost, 0.0);
            }
        }

        #[test]
        fn every_pulse_distance_matches_its_coords(seed in proptest::num::u64::ANY) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let u = SignVector::random(Family::Pulse, 3, &mut rng).unwrap();
            let s = pulse_space(&u, &params(3, 3)).unwrap();
            prop_assert!(s.validate().is_valid());
        }
    }
}
