//! File formats: form-field CSV with a JSON header sidecar, metric and
//! graph JSON, and gauge-link configuration files.
//!
//! All floating-point values are written with Rust's shortest round-trip
//! `Display` formatting, so write → parse recovers every `f64` bit-exactly.
//! CSV always uses `.` as the decimal separator regardless of locale.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::forms::FormField;
use crate::gauge::GaugeField;
use crate::graph::DirectedGraph;
use crate::lattice::Lattice;
use crate::metric::MetricField;
use crate::{Error, Result};

/// Lattice geometry as stored in JSON headers.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LatticeHeader {
    pub shape: Vec<usize>,
    pub spacing: f64,
}

impl LatticeHeader {
    pub fn of(lat: &Lattice) -> Self {
        Self { shape: lat.shape().to_vec(), spacing: lat.spacing() }
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        if self.shape.is_empty() || self.shape.iter().any(|&s| s < 2) {
            return Err(Error::InvalidInput(format!(
                "lattice shape {:?} must have every extent ≥ 2",
                self.shape
            )));
        }
        if !(self.spacing > 0.0) {
            return Err(Error::InvalidInput(format!(
                "lattice spacing {} must be positive",
                self.spacing
            )));
        }
        Ok(Lattice::new(self.shape.clone(), self.spacing))
    }
}

/// Sidecar header describing a serialized form field.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormHeader {
    pub lattice: LatticeHeader,
    pub grade: usize,
}

fn sidecar_path(csv_path: &Path) -> PathBuf {
    let mut os = csv_path.as_os_str().to_owned();
    os.push(".json");
    PathBuf::from(os)
}

/// Writes a form field as CSV (`multi_index, x₀..x_{D−1}, re, im`) plus a
/// `<path>.json` sidecar holding the lattice configuration and grade.
pub fn write_form_csv(path: &Path, form: &FormField) -> Result<()> {
    let lat = form.lattice();
    let dim = lat.dim();
    let header = FormHeader { lattice: LatticeHeader::of(lat), grade: form.grade() };
    fs::write(sidecar_path(path), serde_json::to_string_pretty(&header)?)?;

    let mut w = csv::Writer::from_path(path)?;
    let mut cols = vec!["multi_index".to_string()];
    cols.extend((0..dim).map(|a| format!("x{a}")));
    cols.push("re".into());
    cols.push("im".into());
    w.write_record(&cols)?;
    for (slot, idx) in form.indices().iter().enumerate() {
        let label = idx.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("|");
        for node in 0..lat.num_nodes() {
            let v = form.comps()[slot][node];
            let mut rec = vec![label.clone()];
            rec.extend(lat.coords_of(node).iter().map(|c| c.to_string()));
            rec.push(v.re.to_string());
            rec.push(v.im.to_string());
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a form field written by [`write_form_csv`].
pub fn read_form_csv(path: &Path) -> Result<FormField> {
    let header: FormHeader = serde_json::from_str(&fs::read_to_string(sidecar_path(path))?)?;
    let lat = header.lattice.to_lattice()?;
    let dim = lat.dim();
    if header.grade > dim {
        return Err(Error::InvalidInput(format!(
            "grade {} exceeds lattice dimension {dim}",
            header.grade
        )));
    }
    let mut form = FormField::zero(&lat, header.grade);
    let mut r = csv::Reader::from_path(path)?;
    for rec in r.records() {
        let rec = rec?;
        if rec.len() != dim + 3 {
            return Err(Error::InvalidInput(format!(
                "expected {} CSV fields, found {}",
                dim + 3,
                rec.len()
            )));
        }
        let idx: Vec<u8> = if rec[0].is_empty() {
            Vec::new()
        } else {
            rec[0]
                .split('|')
                .map(|s| s.parse().map_err(|_| bad_field(s)))
                .collect::<Result<_>>()?
        };
        if idx.len() != header.grade
            || idx.iter().any(|&a| a as usize >= dim)
            || idx.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(bad_field(&rec[0]));
        }
        let coords: Vec<i64> = (0..dim)
            .map(|a| rec[1 + a].parse().map_err(|_| bad_field(&rec[1 + a])))
            .collect::<Result<_>>()?;
        let re: f64 = rec[dim + 1].parse().map_err(|_| bad_field(&rec[dim + 1]))?;
        let im: f64 = rec[dim + 2].parse().map_err(|_| bad_field(&rec[dim + 2]))?;
        let node = lat.index_of(&coords);
        form.comp_mut(&idx)[node] = Complex64::new(re, im);
    }
    Ok(form)
}

fn bad_field(s: &str) -> Error {
    Error::InvalidInput(format!("malformed CSV field {s:?}"))
}

/// JSON description of a metric: `{"kind": "...", "data": ...}`.
///
/// * `flat` — identity metric; no data.
/// * `diamond` — the indefinite constant metric `δ_ab − 2/D`; no data.
/// * `diagonal` — data is a constant diagonal (array of D numbers) or a
///   per-node list of diagonals.
/// * `full` — data is one D×D matrix (row-major nested arrays) or a
///   per-node list of matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

pub fn parse_metric_json(text: &str, lat: &Lattice) -> Result<MetricField> {
    let spec: MetricSpec = serde_json::from_str(text)?;
    metric_from_spec(&spec, lat)
}

pub fn metric_from_spec(spec: &MetricSpec, lat: &Lattice) -> Result<MetricField> {
    let dim = lat.dim();
    match spec.kind.as_str() {
        "flat" => Ok(MetricField::flat(lat)),
        "diamond" => MetricField::diamond(lat),
        "diagonal" => {
            let data = spec
                .data
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("diagonal metric needs data".into()))?;
            let rows: Vec<Vec<f64>> = parse_per_node(data, lat, |v| {
                let diag: Vec<f64> = serde_json::from_value(v.clone())?;
                if diag.len() != dim {
                    return Err(Error::InvalidInput(format!(
                        "diagonal has {} entries, lattice dimension is {dim}",
                        diag.len()
                    )));
                }
                Ok(diag)
            })?;
            let mats = rows
                .into_iter()
                .map(|d| DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d)))
                .collect();
            MetricField::new(lat, mats)
        }
        "full" => {
            let data = spec
                .data
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("full metric needs data".into()))?;
            let mats: Vec<DMatrix<f64>> = parse_per_node(data, lat, |v| {
                let rows: Vec<Vec<f64>> = serde_json::from_value(v.clone())?;
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(Error::InvalidInput(format!(
                        "metric matrix must be {dim}×{dim}"
                    )));
                }
                Ok(DMatrix::from_fn(dim, dim, |i, j| rows[i][j]))
            })?;
            MetricField::new(lat, mats)
        }
        other => Err(Error::InvalidInput(format!("unknown metric kind {other:?}"))),
    }
}

/// Data is either a single element (constant over the lattice) or a list of
/// one element per node in lattice index order.
fn parse_per_node<T: Clone>(
    data: &serde_json::Value,
    lat: &Lattice,
    parse_one: impl Fn(&serde_json::Value) -> Result<T>,
) -> Result<Vec<T>> {
    if let Ok(one) = parse_one(data) {
        return Ok(vec![one; lat.num_nodes()]);
    }
    let list = data
        .as_array()
        .ok_or_else(|| Error::InvalidInput("metric data must be an array".into()))?;
    if list.len() != lat.num_nodes() {
        return Err(Error::InvalidInput(format!(
            "metric data has {} entries, lattice has {} nodes",
            list.len(),
            lat.num_nodes()
        )));
    }
    list.iter().map(&parse_one).collect()
}

/// Parses a graph JSON object `{"nodes": N, "edges": [[i,j],...]}`. Parse
/// failures report the line and column.
pub fn parse_graph_json(text: &str) -> Result<DirectedGraph> {
    #[derive(Deserialize)]
    struct GraphSpec {
        nodes: usize,
        edges: Vec<(usize, usize)>,
    }
    let spec: GraphSpec = serde_json::from_str(text).map_err(|e| {
        Error::InvalidInput(format!("malformed graph JSON at line {}, column {}: {e}", e.line(), e.column()))
    })?;
    DirectedGraph::new(spec.nodes, &spec.edges)
}

/// Graph analysis report emitted by the CLI.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GraphReport {
    pub dims: Vec<usize>,
    pub has_intermediate: bool,
    pub has_opposite: bool,
}

pub fn graph_report(g: &DirectedGraph, max_grade: usize) -> GraphReport {
    let class = g.classify_edges();
    GraphReport {
        dims: crate::graph::chain_dimensions(g, max_grade),
        has_intermediate: class.has_intermediate,
        has_opposite: class.has_opposite,
    }
}

/// Header line of a gauge configuration file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaugeHeader {
    pub group: String,
    pub n: usize,
    pub lattice: LatticeHeader,
}

/// Writes a gauge configuration: one JSON header line, then CSV rows
/// `axis, x₀..x_{D−1}, re/im interleaved row-major matrix entries`.
pub fn write_gauge_config(path: &Path, field: &GaugeField, group: &str) -> Result<()> {
    let lat = &field.lattice;
    let n = field.n;
    let header = GaugeHeader {
        group: group.to_string(),
        n,
        lattice: LatticeHeader::of(lat),
    };
    let mut f = fs::File::create(path)?;
    writeln!(f, "{}", serde_json::to_string(&header)?)?;
    for axis in 0..lat.dim() {
        for node in 0..lat.num_nodes() {
            let m = &field.links[axis][node];
            let mut rec: Vec<String> = vec![axis.to_string()];
            rec.extend(lat.coords_of(node).iter().map(|c| c.to_string()));
            for i in 0..n {
                for j in 0..n {
                    rec.push(m[(i, j)].re.to_string());
                    rec.push(m[(i, j)].im.to_string());
                }
            }
            writeln!(f, "{}", rec.join(","))?;
        }
    }
    Ok(())
}

/// Reads a gauge configuration written by [`write_gauge_config`].
pub fn read_gauge_config(path: &Path) -> Result<(GaugeField, String)> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty gauge configuration file".into()))?;
    let header: GaugeHeader = serde_json::from_str(header_line).map_err(|e| {
        Error::InvalidInput(format!("malformed gauge header at column {}: {e}", e.column()))
    })?;
    let lat = header.lattice.to_lattice()?;
    let dim = lat.dim();
    let n = header.n;
    let mut field = GaugeField::identity(&lat, n);
    let expected = 1 + dim + 2 * n * n;
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != expected {
            return Err(Error::InvalidInput(format!(
                "line {}: expected {expected} fields, found {}",
                lineno + 2,
                fields.len()
            )));
        }
        let axis: usize = fields[0].parse().map_err(|_| bad_field(fields[0]))?;
        if axis >= dim {
            return Err(Error::InvalidInput(format!("line {}: axis {axis} out of range", lineno + 2)));
        }
        let coords: Vec<i64> = (0..dim)
            .map(|a| fields[1 + a].parse().map_err(|_| bad_field(fields[1 + a])))
            .collect::<Result<_>>()?;
        let node = lat.index_of(&coords);
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let base = 1 + dim + 2 * (i * n + j);
                let re: f64 = fields[base].parse().map_err(|_| bad_field(fields[base]))?;
                let im: f64 = fields[base + 1].parse().map_err(|_| bad_field(fields[base + 1]))?;
                m[(i, j)] = Complex64::new(re, im);
            }
        }
        field.links[axis][node] = m;
    }
    Ok((field, header.group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn form_round_trip_is_bit_exact() {
        let lat = Lattice::cubic(2, 3, 0.7);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let form = FormField::random(&lat, 1, &mut rng);
        let dir = std::env::temp_dir().join("dexcal-serial-form");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("form.csv");
        write_form_csv(&path, &form).unwrap();
        let back = read_form_csv(&path).unwrap();
        assert_eq!(form.grade(), back.grade());
        assert_eq!(form.comps(), back.comps());
    }

    #[test]
    fn metric_specs_parse() {
        let lat = Lattice::cubic(2, 4, 1.0);
        let m = parse_metric_json(r#"{"kind":"flat"}"#, &lat).unwrap();
        assert_eq!(m.g(0)[(0, 0)], 1.0);
        let m = parse_metric_json(r#"{"kind":"diamond"}"#, &lat).unwrap();
        assert_eq!(m.g(0)[(0, 1)], -1.0);
        let m = parse_metric_json(r#"{"kind":"diagonal","data":[2.0,3.0]}"#, &lat).unwrap();
        assert_eq!(m.g(5)[(1, 1)], 3.0);
        assert!((m.dv()[5] - 6.0f64.sqrt()).abs() < 1e-15);
        let m = parse_metric_json(r#"{"kind":"full","data":[[2.0,0.5],[0.5,1.0]]}"#, &lat).unwrap();
        assert_eq!(m.g(2)[(0, 1)], 0.5);
        assert!(parse_metric_json(r#"{"kind":"bogus"}"#, &lat).is_err());
        assert!(parse_metric_json(r#"{"kind":"diagonal","data":[1.0]}"#, &lat).is_err());
    }

    #[test]
    fn per_node_metric_data() {
        let lat = Lattice::new(vec![2], 1.0);
        let m = parse_metric_json(r#"{"kind":"diagonal","data":[[2.0],[8.0]]}"#, &lat).unwrap();
        assert_eq!(m.g(0)[(0, 0)], 2.0);
        assert_eq!(m.g(1)[(0, 0)], 8.0);
    }

    #[test]
    fn graph_json_round_trip_and_errors() {
        let g = parse_graph_json(r#"{"nodes":4,"edges":[[0,1],[1,3],[0,2],[2,3]]}"#).unwrap();
        let report = graph_report(&g, 2);
        assert_eq!(
            report,
            GraphReport { dims: vec![4, 4, 1], has_intermediate: false, has_opposite: false }
        );
        let err = parse_graph_json("{\"nodes\":4,\n\"edges\":[[0,1],]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn gauge_config_round_trip_is_bit_exact() {
        let lat = Lattice::cubic(2, 4, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut field = GaugeField::identity(&lat, 2);
        for axis in 0..2 {
            for node in lat.nodes() {
                field.links[axis][node] = crate::gauge::random_special_unitary(2, 1.0, &mut rng);
            }
        }
        let dir = std::env::temp_dir().join("dexcal-serial-gauge");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("config.csv");
        write_gauge_config(&path, &field, "su2").unwrap();
        let (back, group) = read_gauge_config(&path).unwrap();
        assert_eq!(group, "su2");
        for axis in 0..2 {
            for node in lat.nodes() {
                assert_eq!(field.links[axis][node], back.links[axis][node]);
            }
        }
    }
}
