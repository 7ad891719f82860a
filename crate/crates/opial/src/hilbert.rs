//! Dense vector algebra and tail statistics for finite sequence prefixes.
//!
//! Everything here works on finite-dimensional real coordinate vectors that
//! stand in for truncated `l^2` elements: an example whose support over the
//! horizon fits in coordinates `0..d-1` is represented exactly in dimension
//! `d`, so closed-form values reproduce to machine precision.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite-dimensional real coordinate vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("vector must have dim >= 1".into()));
        }
        for (i, c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFinite { index: i });
            }
        }
        Ok(Vector(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// Standard unit vector `e_k` in the given dimension.
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[k] = 1.0;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: self.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|a| a * s).collect())
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: f64, other: &Vector) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }
}

/// Inner product of two vectors of equal dimension.
pub fn inner(a: &Vector, b: &Vector) -> Result<f64> {
    b.check_dim(a.dim())?;
    Ok(a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum())
}

/// Euclidean norm.
pub fn norm(a: &Vector) -> f64 {
    a.0.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn distance(a: &Vector, b: &Vector) -> f64 {
    norm(&a.sub(b))
}

/// Absolute/relative tolerance pair. Both nonnegative, not both zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Result<Self> {
        if abs < 0.0 || rel < 0.0 || (abs == 0.0 && rel == 0.0) {
            return Err(Error::InvalidArgument(
                "tolerance components must be >= 0 and not both zero".into(),
            ));
        }
        Ok(Tolerance { abs, rel })
    }

    /// Effective threshold at a given magnitude scale.
    pub fn at(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale.abs()
    }
}

impl Default for Tolerance {
    /// Default for algebraic identities evaluated in closed form.
    fn default() -> Self {
        Tolerance {
            abs: 1e-9,
            rel: 1e-9,
        }
    }
}

/// An ordered finite list of points plus the index where "asymptotic"
/// statistics begin. The computational stand-in for an infinite sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequencePrefix {
    points: Vec<Vector>,
    tail_start: usize,
}

impl SequencePrefix {
    pub fn new(points: Vec<Vector>, tail_start: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("sequence must be nonempty".into()));
        }
        let dim = points[0].dim();
        for p in &points {
            p.check_dim(dim)?;
        }
        if tail_start >= points.len() {
            return Err(Error::InvalidArgument(format!(
                "tail_start {} must be < number of points {}",
                tail_start,
                points.len()
            )));
        }
        Ok(SequencePrefix { points, tail_start })
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn tail_start(&self) -> usize {
        self.tail_start
    }

    pub fn tail(&self) -> &[Vector] {
        &self.points[self.tail_start..]
    }

    /// Copy with a different tail window.
    pub fn with_tail_start(&self, tail_start: usize) -> Result<Self> {
        SequencePrefix::new(self.points.clone(), tail_start)
    }

    /// The sub-prefix with indices `n ≡ offset (mod stride)`, keeping the
    /// proportional tail window.
    pub fn arithmetic_subsequence(&self, stride: usize, offset: usize) -> Result<SequencePrefix> {
        if stride == 0 {
            return Err(Error::InvalidArgument("stride must be >= 1".into()));
        }
        let points: Vec<Vector> = self
            .points
            .iter()
            .enumerate()
            .filter(|(n, _)| n % stride == offset % stride)
            .map(|(_, p)| p.clone())
            .collect();
        if points.is_empty() {
            return Err(Error::InvalidArgument(
                "arithmetic subsequence is empty".into(),
            ));
        }
        let tail_start = self.tail_start / stride;
        let tail_start = tail_start.min(points.len() - 1);
        SequencePrefix::new(points, tail_start)
    }
}

/// Distances `‖x_n − c‖` in order.
pub fn distance_trace(seq: &SequencePrefix, c: &Vector) -> Result<Vec<f64>> {
    c.check_dim(seq.dim())?;
    Ok(seq.points().iter().map(|p| distance(p, c)).collect())
}

/// Three-valued verdict for the existence of a tail limit at finite horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailVerdict {
    Converges { limit: f64 },
    Diverges,
    Oscillates { inf: f64, sup: f64 },
}

impl TailVerdict {
    pub fn limit(&self) -> Option<f64> {
        match self {
            TailVerdict::Converges { limit } => Some(*limit),
            _ => None,
        }
    }
}

/// Tail values grow past this bound -> Diverges.
pub const GROWTH_BOUND: f64 = 1e12;

/// Estimate whether a scalar trace has a tail limit.
///
/// Converges when the max-min gap over the tail is within tolerance; the
/// reported limit is the tail mean. Limit existence is semidecidable from a
/// prefix, so "undecided at horizon" surfaces as Oscillates with a small gap.
pub fn tail_limit_estimate(values: &[f64], tail_start: usize, tol: Tolerance) -> Result<TailVerdict> {
    if tail_start >= values.len() {
        return Err(Error::InvalidArgument("tail is empty".into()));
    }
    let tail = &values[tail_start..];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for &v in tail {
        lo = lo.min(v);
        hi = hi.max(v);
        sum += v;
    }
    if hi.abs() > GROWTH_BOUND || lo.abs() > GROWTH_BOUND {
        return Ok(TailVerdict::Diverges);
    }
    let scale = hi.abs().max(lo.abs());
    if hi - lo <= tol.at(scale) {
        Ok(TailVerdict::Converges {
            limit: sum / tail.len() as f64,
        })
    } else {
        Ok(TailVerdict::Oscillates { inf: lo, sup: hi })
    }
}

/// Max-min gap of `values` over `range`, clamped to the slice.
pub fn window_gap(values: &[f64], start: usize, end: usize) -> f64 {
    let end = end.min(values.len());
    if start >= end {
        return 0.0;
    }
    let w = &values[start..end];
    let lo = w.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

/// Trend verdict for a trace whose gap may still be shrinking at horizon.
///
/// Splits the tail in two halves and compares gaps: a shrinking gap is read
/// as "converging", a persistent one as a genuine oscillation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrendVerdict {
    Converging { limit: f64 },
    Persistent { gap: f64 },
}

pub const TREND_SHRINK_FACTOR: f64 = 0.9;

pub fn tail_trend(values: &[f64], tail_start: usize, tol: Tolerance) -> Result<TrendVerdict> {
    if tail_start >= values.len() {
        return Err(Error::InvalidArgument("tail is empty".into()));
    }
    let mid = tail_start + (values.len() - tail_start) / 2;
    let g1 = window_gap(values, tail_start, mid);
    let g2 = window_gap(values, mid, values.len());
    let tail = &values[mid..];
    let scale = tail.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    if g2 <= tol.at(scale) || g2 <= TREND_SHRINK_FACTOR * g1 {
        Ok(TrendVerdict::Converging { limit: mean })
    } else {
        Ok(TrendVerdict::Persistent { gap: g2 })
    }
}

/// True when `values` is nonincreasing up to tolerance.
pub fn is_nonincreasing(values: &[f64], tol: Tolerance) -> bool {
    values.windows(2).all(|w| {
        let scale = w[0].abs().max(w[1].abs());
        w[1] <= w[0] + tol.at(scale)
    })
}
