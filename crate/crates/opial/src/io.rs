//! On-disk formats: JSONL for sequences (one header object, then one object
//! per point), plain JSON for set descriptors and reports.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{SequencePrefix, Vector};
use crate::sets::ConvexSet;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SequenceHeader {
    dim: usize,
    tail_start: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SequenceRow {
    n: usize,
    x: Vec<f64>,
}

/// Parse a sequence from JSONL text. The first line declares
/// `{"dim": d, "tail_start": N}`; every following line is
/// `{"n": i, "x": [..]}` with strictly increasing, gap-free `n` from 0.
pub fn sequence_from_jsonl_str(text: &str) -> Result<SequencePrefix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header_line = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty sequence file".into()))?;
    let header: SequenceHeader = serde_json::from_str(header_line)?;
    let mut points = Vec::new();
    for (expected, line) in lines.enumerate() {
        let row: SequenceRow = serde_json::from_str(line)?;
        if row.n != expected {
            return Err(Error::InvalidArgument(format!(
                "indices must be consecutive from 0: expected n = {expected}, got {}",
                row.n
            )));
        }
        if row.x.len() != header.dim {
            return Err(Error::DimensionMismatch {
                expected: header.dim,
                got: row.x.len(),
            });
        }
        points.push(Vector(row.x));
    }
    SequencePrefix::new(points, header.tail_start)
}

pub fn sequence_to_jsonl_string(seq: &SequencePrefix) -> Result<String> {
    let mut out = String::new();
    let header = SequenceHeader {
        dim: seq.dim(),
        tail_start: seq.tail_start(),
    };
    out.push_str(&serde_json::to_string(&header)?);
    out.push('\n');
    for (n, p) in seq.points().iter().enumerate() {
        let row = SequenceRow { n, x: p.0.clone() };
        out.push_str(&serde_json::to_string(&row)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn read_sequence(path: &Path) -> Result<SequencePrefix> {
    sequence_from_jsonl_str(&fs::read_to_string(path)?)
}

pub fn write_sequence(path: &Path, seq: &SequencePrefix) -> Result<()> {
    fs::write(path, sequence_to_jsonl_string(seq)?)?;
    Ok(())
}

/// Parse a set descriptor and run its structural validation.
pub fn set_from_json_str(text: &str) -> Result<ConvexSet> {
    let set: ConvexSet = serde_json::from_str(text)?;
    set.validate()?;
    Ok(set)
}

pub fn read_set(path: &Path) -> Result<ConvexSet> {
    set_from_json_str(&fs::read_to_string(path)?)
}

pub fn write_set(path: &Path, set: &ConvexSet) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(set)?)?;
    Ok(())
}

/// Serialize any report value as pretty JSON.
pub fn report_to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// CSV with one row per step: `n,value`.
pub fn trace_to_csv(trace: &[f64]) -> String {
    let mut out = String::from("n,value\n");
    for (n, v) in trace.iter().enumerate() {
        out.push_str(&format!("{n},{v}\n"));
    }
    out
}

/// CSV with one row per point: `n,x0,x1,...`.
pub fn points_to_csv(points: &[Vector]) -> String {
    let dim = points.first().map_or(0, Vector::dim);
    let mut out = String::from("n");
    for j in 0..dim {
        out.push_str(&format!(",x{j}"));
    }
    out.push('\n');
    for (n, p) in points.iter().enumerate() {
        out.push_str(&n.to_string());
        for v in &p.0 {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_round_trip() {
        let seq = SequencePrefix::new(
            vec![Vector(vec![0.0, 1.0]), Vector(vec![0.5, -2.0])],
            1,
        )
        .unwrap();
        let text = sequence_to_jsonl_string(&seq).unwrap();
        let back = sequence_from_jsonl_str(&text).unwrap();
        assert_eq!(seq, back);
    }

    #[test]
    fn sequence_rejects_non_consecutive_indices() {
        let text = "{\"dim\":1,\"tail_start\":0}\n{\"n\":0,\"x\":[1.0]}\n{\"n\":2,\"x\":[2.0]}\n";
        assert!(sequence_from_jsonl_str(text).is_err());
    }

    #[test]
    fn sequence_rejects_dim_mismatch() {
        let text = "{\"dim\":2,\"tail_start\":0}\n{\"n\":0,\"x\":[1.0]}\n";
        assert!(sequence_from_jsonl_str(text).is_err());
    }

    #[test]
    fn set_round_trip_with_validation() {
        let set = ConvexSet::ball(Vector(vec![0.0, 0.0]), 2.0).unwrap();
        let json = serde_json::to_string(&set).unwrap();
        let back = set_from_json_str(&json).unwrap();
        assert_eq!(set, back);
    }

    #[test]
    fn invalid_set_descriptor_fails_validation() {
        let json = "{\"variant\":\"ball\",\"center\":[0.0],\"radius\":-1.0}";
        assert!(set_from_json_str(json).is_err());
    }

    #[test]
    fn trace_csv_format() {
        let csv = trace_to_csv(&[1.0, 0.5]);
        assert_eq!(csv, "n,value\n0,1\n1,0.5\n");
    }
}
