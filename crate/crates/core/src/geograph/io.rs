//! Point CSV and graph JSON formats.
//!
//! Point files hold one `x,y` pair per line. A header row is optional and
//! lines starting with `#` carry the producing config.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{build_graph, GeometricGraph, Graph, GraphError, PointSet};
use crate::geometry::Point2;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unsupported format_version {0}")]
    Version(u32),
}

pub fn read_points_csv(reader: impl Read) -> Result<PointSet, IoError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut points = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = rec.position().map_or(i as u64 + 1, |p| p.line());
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != 2 {
            return Err(IoError::Parse { line, msg: format!("expected 2 fields, got {}", rec.len()) });
        }
        match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
            (Ok(x), Ok(y)) => {
                let p = Point2::new(x, y);
                if !p.is_finite() {
                    return Err(IoError::Parse { line, msg: "non-finite coordinate".into() });
                }
                points.push(p);
            }
            // A non-numeric first row is a header.
            _ if i == 0 && points.is_empty() => continue,
            _ => return Err(IoError::Parse { line, msg: format!("bad coordinates {:?}", rec) }),
        }
    }
    Ok(PointSet::new(points))
}

/// Writes `x,y` rows; each `comments` line is emitted first as `# line`.
pub fn write_points_csv(mut w: impl Write, ps: &PointSet, comments: &[String]) -> Result<(), IoError> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "x,y")?;
    for p in &ps.points {
        writeln!(w, "{},{}", p.x, p.y)?;
    }
    Ok(())
}

/// On-disk graph: edges always, points and radius when geometric.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub format_version: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub config: serde_json::Value,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            n: g.n(),
            r: None,
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            points: None,
            config: serde_json::Value::Null,
        }
    }

    pub fn from_geometric(g: &GeometricGraph) -> Self {
        Self {
            r: Some(g.radius),
            points: Some(g.points().iter().map(|p| [p.x, p.y]).collect()),
            ..Self::from_graph(g.graph())
        }
    }

    pub fn with_config(mut self, config: serde_json::Value) -> Self {
        self.config = config;
        self
    }

    pub fn to_graph(&self) -> Result<Graph, IoError> {
        self.check_version()?;
        let edges: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Ok(Graph::from_edges(self.n, &edges)?)
    }

    /// Rebuilds the geometric graph from points and radius when both are
    /// present. The stored edge list must agree with the radius rule.
    pub fn to_geometric(&self) -> Result<Option<GeometricGraph>, IoError> {
        self.check_version()?;
        let (Some(r), Some(pts)) = (self.r, self.points.as_ref()) else { return Ok(None) };
        let ps = PointSet::new(pts.iter().map(|p| Point2::new(p[0], p[1])).collect());
        let g = build_graph(ps, r)?;
        if g.graph() != &self.to_graph()? {
            return Err(IoError::Parse { line: 0, msg: "edge list disagrees with points and radius".into() });
        }
        Ok(Some(g))
    }

    fn check_version(&self) -> Result<(), IoError> {
        if self.format_version != FORMAT_VERSION {
            return Err(IoError::Version(self.format_version));
        }
        Ok(())
    }
}

pub fn write_graph_json(w: impl Write, file: &GraphFile) -> Result<(), IoError> {
    serde_json::to_writer_pretty(w, file)?;
    Ok(())
}

pub fn read_graph_json(r: impl Read) -> Result<GraphFile, IoError> {
    Ok(serde_json::from_reader(r)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let ps = PointSet::new(vec![Point2::new(0.25, 0.5), Point2::new(1.0 / 3.0, 0.0)]);
        let mut buf = Vec::new();
        write_points_csv(&mut buf, &ps, &["seed = 7".into()]).unwrap();
        let back = read_points_csv(buf.as_slice()).unwrap();
        assert_eq!(back.points, ps.points);
    }

    #[test]
    fn csv_without_header_and_errors() {
        let ps = read_points_csv("0.1,0.2\n0.3, 0.4\n".as_bytes()).unwrap();
        assert_eq!(ps.len(), 2);
        assert!(read_points_csv("x,y\n0.1,abc\n".as_bytes()).is_err());
        assert!(read_points_csv("0.1,0.2,0.3\n".as_bytes()).is_err());
    }

    #[test]
    fn graph_json_round_trip() {
        let ps = PointSet::new(vec![Point2::new(0., 0.), Point2::new(0.5, 0.), Point2::new(1.2, 0.)]);
        let g = build_graph(ps, 0.5).unwrap();
        let file = GraphFile::from_geometric(&g);
        let mut buf = Vec::new();
        write_graph_json(&mut buf, &file).unwrap();
        let back = read_graph_json(buf.as_slice()).unwrap();
        assert_eq!(back.to_graph().unwrap(), *g.graph());
        assert!(back.to_geometric().unwrap().is_some());

        let plain = GraphFile::from_graph(&Graph::petersen());
        let json = serde_json::to_string(&plain).unwrap();
        assert!(!json.contains("points"));
        let back: GraphFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_graph().unwrap(), Graph::petersen());
    }

    #[test]
    fn rejects_unknown_version() {
        let f: GraphFile =
            serde_json::from_str(r#"{"format_version":2,"n":2,"edges":[[0,1]]}"#).unwrap();
        assert!(matches!(f.to_graph(), Err(IoError::Version(2))));
    }
}
