//! n-dimensional boxes: one interval per variable.

use crate::interval::Interval;

/// A Cartesian product of intervals, the unit of search-space bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxRegion {
    dims: Vec<Interval>,
}

impl BoxRegion {
    pub fn new(dims: Vec<Interval>) -> BoxRegion {
        BoxRegion { dims }
    }

    /// Box with every dimension set to `[lo, hi]`.
    pub fn uniform(n: usize, lo: f64, hi: f64) -> BoxRegion {
        BoxRegion {
            dims: vec![Interval::new(lo, hi); n],
        }
    }

    /// Degenerate box around a point.
    pub fn from_point(x: &[f64]) -> BoxRegion {
        BoxRegion {
            dims: x.iter().map(|&v| Interval::point(v)).collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    #[inline]
    pub fn get(&self, i: usize) -> Interval {
        self.dims[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: Interval) {
        self.dims[i] = v;
    }

    #[inline]
    pub fn intervals(&self) -> &[Interval] {
        &self.dims
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        x.len() == self.dims.len() && self.dims.iter().zip(x).all(|(d, &v)| d.contains(v))
    }

    /// True when every dimension of `other` lies inside this box.
    pub fn encloses(&self, other: &BoxRegion) -> bool {
        self.dims.len() == other.dims.len()
            && self
                .dims
                .iter()
                .zip(&other.dims)
                .all(|(a, b)| a.encloses(b))
    }

    /// Largest per-dimension width.
    pub fn max_width(&self) -> f64 {
        self.dims.iter().map(|d| d.width()).fold(0.0, f64::max)
    }
}
