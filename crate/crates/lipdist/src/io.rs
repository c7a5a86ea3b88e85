//! Space and map files, result JSON, and experiment table emission.
//!
//! Spaces are stored as JSON with the upper-triangular distance list in
//! row-major order; floating-point values use the shortest decimal form
//! that reparses to the identical bits, so a serialize/parse round trip
//! reproduces every distance matrix bit-exactly. Experiment results emit a
//! fixed-order CSV (human) and JSON (machine) pair with no clocks inside,
//! so re-running a configuration rewrites byte-identical files.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{FixtureReport, SeparationExperiment, SlopeSweep};
use crate::solver::LipschitzResult;
use crate::space::{FiniteMetricSpace, PointMap, Provenance};

/// Current on-disk format version for space and map files.
pub const FORMAT_VERSION: u32 = 1;

/// On-disk form of a finite metric space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub format_version: u32,
    pub name: String,
    pub labels: Vec<String>,
    /// Upper-triangular distances in row-major order:
    /// `(0,1), (0,2), ..., (0,n-1), (1,2), ...`; length `n(n-1)/2`.
    pub distances: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coords: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<Provenance>,
}

impl SpaceFile {
    pub fn from_space(space: &FiniteMetricSpace) -> Self {
        let n = space.len();
        let mut distances = Vec::with_capacity(n.saturating_sub(1) * n / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                distances.push(space.dist(i, j));
            }
        }
        SpaceFile {
            format_version: FORMAT_VERSION,
            name: space.name().to_string(),
            labels: space.labels().to_vec(),
            distances,
            coords: space.coords().map(|c| c.to_vec()),
            provenance: space.provenance().cloned(),
        }
    }

    pub fn into_space(self) -> Result<FiniteMetricSpace> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::FormatVersion(self.format_version));
        }
        let n = self.labels.len();
        let expected = n.saturating_sub(1) * n / 2;
        if self.distances.len() != expected {
            return Err(Error::DistanceListLen {
                found: self.distances.len(),
                expected,
                n,
            });
        }
        let mut matrix = vec![vec![0.0; n]; n];
        let mut it = self.distances.iter();
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in (i + 1)..n {
                let d = *it.next().expect("length checked");
                matrix[i][j] = d;
                matrix[j][i] = d;
            }
        }
        let mut space = FiniteMetricSpace::new(self.name, self.labels, matrix, self.coords)?;
        if let Some(p) = self.provenance {
            space.set_provenance(p);
        }
        Ok(space)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("space files serialize");
        s.push('\n');
        s
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn save_space(path: &Path, space: &FiniteMetricSpace) -> Result<()> {
    std::fs::write(path, SpaceFile::from_space(space).to_json_string())?;
    Ok(())
}

pub fn load_space(path: &Path) -> Result<FiniteMetricSpace> {
    let text = std::fs::read_to_string(path)?;
    SpaceFile::parse_json(&text)?.into_space()
}

/// On-disk form of a bijection between two named spaces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub format_version: u32,
    pub source: String,
    pub target: String,
    pub perm: Vec<usize>,
}

impl MapFile {
    pub fn from_map(map: &PointMap) -> Self {
        MapFile {
            format_version: FORMAT_VERSION,
            source: map.source().name().to_string(),
            target: map.target().name().to_string(),
            perm: map.perm().to_vec(),
        }
    }

    /// Reassembles the bijection against the two loaded spaces, checking
    /// that their names match the ones recorded in the file.
    pub fn into_map(
        self,
        source: Arc<FiniteMetricSpace>,
        target: Arc<FiniteMetricSpace>,
    ) -> Result<PointMap> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::FormatVersion(self.format_version));
        }
        if source.name() != self.source {
            return Err(Error::MapSpaceName {
                expected: self.source,
                found: source.name().to_string(),
            });
        }
        if target.name() != self.target {
            return Err(Error::MapSpaceName {
                expected: self.target,
                found: target.name().to_string(),
            });
        }
        PointMap::new(source, target, self.perm)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("map files serialize");
        s.push('\n');
        s
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn load_map_file(path: &Path) -> Result<MapFile> {
    let text = std::fs::read_to_string(path)?;
    MapFile::parse_json(&text)
}

/// stdout form of a solver result: status, value or bracket, permutation,
/// and search statistics.
#[derive(Debug, Clone, Serialize)]
pub struct ResultJson {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_map: Option<Vec<usize>>,
    pub nodes: u64,
    pub time_ms: f64,
}

impl ResultJson {
    pub fn from_result(r: &LipschitzResult) -> Self {
        ResultJson {
            status: r.status.as_str().to_string(),
            value: r.value,
            bracket: r.bracket.map(|(lo, hi)| [lo, hi]),
            best_map: r.best_map.as_ref().map(|m| m.perm().to_vec()),
            nodes: r.nodes_explored,
            time_ms: r.elapsed.as_secs_f64() * 1e3,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("results serialize");
        s.push('\n');
        s
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

fn fmt_opt(x: Option<f64>, missing: &str) -> String {
    x.map_or_else(|| missing.to_string(), fmt_f64)
}

/// CSV rendering of a separation experiment: caption and configuration as
/// `#` comments, then one row per ordered pair `(u, v)` with `u <= v`.
pub fn separation_csv(result: &SeparationExperiment) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {}\n", result.caption));
    out.push_str(&format!(
        "# experiment={} family={} depth={} samples={} eps={} mode={} threshold={}\n",
        result.name,
        result.family,
        result.depth,
        result.samples,
        result.eps.map_or_else(|| "-".into(), fmt_f64),
        result.mode,
        fmt_f64(result.threshold),
    ));
    out.push_str(&format!(
        "# min_gap={} max_value={} infinite_pairs={}\n",
        fmt_opt(result.min_gap, "-"),
        fmt_opt(result.max_value, "-"),
        result.infinite_pairs,
    ));
    if let (Some(costs), Some(bound)) = (&result.projection_costs, result.projection_bound) {
        out.push_str(&format!("# projection_bound={}\n", fmt_f64(bound)));
        for (u, cost) in result.vectors.iter().zip(costs) {
            out.push_str(&format!("# projection_cost {} {}\n", u, fmt_f64(*cost)));
        }
    }
    out.push_str("u,v,n_u,n_v,status,spectrum_lower,lower,upper,nodes\n");
    for row in &result.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            row.u,
            row.v,
            row.n_u,
            row.n_v,
            row.status,
            fmt_opt(row.spectrum_lower, ""),
            fmt_opt(row.lower, "inf"),
            fmt_opt(row.upper, "inf"),
            row.nodes,
        ));
    }
    out
}

/// CSV rendering of the shrinking-slope projection table.
pub fn slope_sweep_csv(result: &SlopeSweep) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {}\n", result.caption));
    out.push_str(&format!(
        "# u={} depth={} samples={}\n",
        result.u, result.depth, result.samples
    ));
    out.push_str("eps,cost,bound\n");
    for row in &result.rows {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(row.eps),
            fmt_f64(row.cost),
            fmt_f64(row.bound)
        ));
    }
    out
}

/// CSV rendering of the geometry fixture report.
pub fn fixtures_csv(report: &FixtureReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# tolerance={} (relative)\n", report.tolerance));
    out.push_str("name,scale,expected,actual,rel_err,pass\n");
    for c in &report.checks {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            c.name,
            c.scale,
            fmt_f64(c.expected),
            fmt_f64(c.actual),
            fmt_f64(c.rel_err),
            c.pass
        ));
    }
    out
}

fn pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("experiment results serialize");
    s.push('\n');
    s
}

/// Writes `<stem>.csv` and `<stem>.json` under `dir`, creating it if needed.
fn write_pair(dir: &Path, stem: &str, csv: String, json: String) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir)?;
    let csv_path = dir.join(format!("{stem}.csv"));
    let json_path = dir.join(format!("{stem}.json"));
    std::fs::write(&csv_path, csv)?;
    std::fs::write(&json_path, json)?;
    Ok((csv_path, json_path))
}

pub fn write_separation(dir: &Path, result: &SeparationExperiment) -> Result<(PathBuf, PathBuf)> {
    write_pair(
        dir,
        &result.name,
        separation_csv(result),
        pretty_json(result),
    )
}

pub fn write_slope_sweep(dir: &Path, result: &SlopeSweep) -> Result<(PathBuf, PathBuf)> {
    write_pair(dir, "remark", slope_sweep_csv(result), pretty_json(result))
}

pub fn write_fixtures(dir: &Path, report: &FixtureReport) -> Result<(PathBuf, PathBuf)> {
    write_pair(dir, "fixtures", fixtures_csv(report), pretty_json(report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{interval_space, pulse_space, DiscretizationParams, Family, SignVector};
    use proptest::prelude::*;

    #[test]
    fn space_round_trip_is_bit_exact() {
        let u = SignVector::parse(Family::Pulse, "101").unwrap();
        let params = DiscretizationParams::new(3, 3).unwrap();
        let space = pulse_space(&u, &params).unwrap();
        let text = SpaceFile::from_space(&space).to_json_string();
        let reloaded = SpaceFile::parse_json(&text).unwrap().into_space().unwrap();
        assert_eq!(space, reloaded);
        assert_eq!(space.dist_matrix(), reloaded.dist_matrix());
        assert_eq!(reloaded.provenance().unwrap().family, Family::Pulse);
    }

    #[test]
    fn distance_list_length_is_validated() {
        let file = SpaceFile {
            format_version: FORMAT_VERSION,
            name: "bad".into(),
            labels: vec!["a".into(), "b".into(), "c".into()],
            distances: vec![1.0, 2.0],
            coords: None,
            provenance: None,
        };
        assert!(matches!(
            file.into_space(),
            Err(Error::DistanceListLen {
                found: 2,
                expected: 3,
                n: 3
            })
        ));
    }

    #[test]
    fn unknown_format_version_is_rejected() {
        let file = SpaceFile {
            format_version: 9,
            name: "v9".into(),
            labels: vec!["a".into()],
            distances: vec![],
            coords: None,
            provenance: None,
        };
        assert!(matches!(file.into_space(), Err(Error::FormatVersion(9))));
    }

    #[test]
    fn map_file_checks_space_names() {
        let u = SignVector::parse(Family::Interval, "11").unwrap();
        let params = DiscretizationParams::new(2, 2).unwrap();
        let x = Arc::new(interval_space(&u, &params).unwrap());
        let map = PointMap::identity(&x);
        let file = MapFile::from_map(&map);
        let text = file.to_json_string();
        let parsed = MapFile::parse_json(&text).unwrap();
        assert!(parsed
            .clone()
            .into_map(Arc::clone(&x), Arc::clone(&x))
            .is_ok());

        let v = SignVector::parse(Family::Interval, "22").unwrap();
        let y = Arc::new(interval_space(&v, &params).unwrap());
        assert!(matches!(
            parsed.into_map(Arc::clone(&x), y),
            Err(Error::MapSpaceName { .. })
        ));
    }

    #[test]
    fn separation_csv_has_fixed_header() {
        let cfg = crate::ExperimentConfig::new(Family::Interval, 2, 2);
        let result = crate::interval_separation_experiment(&cfg).unwrap();
        let csv = separation_csv(&result);
        assert!(csv.starts_with("# "));
        assert!(csv.contains("u,v,n_u,n_v,status,spectrum_lower,lower,upper,nodes\n"));
        // 4 vectors: 4 diagonal + 6 distinct pairs
        assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 1 + 10);
    }

    proptest! {
        #[test]
        fn constructed_spaces_round_trip_bit_exactly(
            bits in proptest::collection::vec(proptest::bool::ANY, 1..5),
            k in 2usize..4,
            pulse in proptest::bool::ANY,
        ) {
            let params = DiscretizationParams::new(bits.len(), k).unwrap();
            let space = if pulse {
                let entries: Vec<u8> = bits.iter().map(|&b| u8::from(b)).collect();
                pulse_space(&SignVector::pulse(&entries).unwrap(), &params).unwrap()
            } else {
                let entries: Vec<u8> = bits.iter().map(|&b| if b { 2 } else { 1 }).collect();
                interval_space(&SignVector::interval(&entries).unwrap(), &params).unwrap()
            };
            let text = SpaceFile::from_space(&space).to_json_string();
            let reloaded = SpaceFile::parse_json(&text).unwrap().into_space().unwrap();
            prop_assert_eq!(space.dist_matrix(), reloaded.dist_matrix());
            prop_assert_eq!(space.coords().unwrap(), reloaded.coords().unwrap());
        }
    }
}
