use crate::error::{Error, Result};

/// Which discrete space a vector lives in. `m` counts cells along x (width),
/// `n` along y (height).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    ExtendedCenters1D {
        m: usize,
    },
    /// `(m + 2)(n + 2)` nodes, index `i + j·(m + 2)`.
    ExtendedCenters2D {
        m: usize,
        n: usize,
    },
    Faces1D {
        m: usize,
    },
    /// x-faces `n(m + 1)` first, then y-faces `m(n + 1)`.
    Faces2D {
        m: usize,
        n: usize,
    },
}

impl Layout {
    pub fn len(&self) -> usize {
        match *self {
            Layout::ExtendedCenters1D { m } => m + 2,
            Layout::ExtendedCenters2D { m, n } => (m + 2) * (n + 2),
            Layout::Faces1D { m } => m + 1,
            Layout::Faces2D { m, n } => n * (m + 1) + m * (n + 1),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldVector {
    values: Vec<f64>,
    layout: Layout,
}

impl FieldVector {
    pub fn new(values: Vec<f64>, layout: Layout) -> Result<Self> {
        if values.len() != layout.len() {
            return Err(Error::DimensionMismatch {
                expected: layout.len(),
                actual: values.len(),
            });
        }
        Ok(FieldVector { values, layout })
    }

    /// Samples `f(x, y)` at the extended 2D node positions.
    pub fn from_fn_2d(m: usize, n: usize, f: impl Fn(f64, f64) -> f64) -> Self {
        let xs = extended_positions(m);
        let ys = extended_positions(n);
        let values = ys
            .iter()
            .flat_map(|&y| xs.iter().map(move |&x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        FieldVector {
            values,
            layout: Layout::ExtendedCenters2D { m, n },
        }
    }

    pub fn from_fn_1d(m: usize, f: impl Fn(f64) -> f64) -> Self {
        FieldVector {
            values: extended_positions(m).into_iter().map(f).collect(),
            layout: Layout::ExtendedCenters1D { m },
        }
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Splits a 2D face field into its x-face and y-face blocks.
    pub fn face_blocks(&self) -> Option<(&[f64], &[f64])> {
        match self.layout {
            Layout::Faces2D { m, n } => Some(self.values.split_at(n * (m + 1))),
            _ => None,
        }
    }
}

fn extended_positions(m: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 2);
    out.push(0.0);
    out.extend((0..m).map(|c| c as f64 + 0.5));
    out.push(m as f64);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_lengths() {
        assert_eq!(Layout::ExtendedCenters1D { m: 5 }.len(), 7);
        assert_eq!(Layout::Faces1D { m: 5 }.len(), 6);
        assert_eq!(Layout::ExtendedCenters2D { m: 4, n: 4 }.len(), 36);
        assert_eq!(Layout::Faces2D { m: 4, n: 4 }.len(), 40);
        assert_eq!(Layout::Faces2D { m: 5, n: 4 }.len(), 4 * 6 + 5 * 5);
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(FieldVector::new(vec![0.0; 6], Layout::ExtendedCenters1D { m: 5 }).is_err());
    }

    #[test]
    fn x_fastest_sampling() {
        let u = FieldVector::from_fn_2d(2, 3, |x, y| x + 10.0 * y);
        assert_eq!(u.len(), 4 * 5);
        assert_eq!(&u.values()[..4], &[0.0, 0.5, 1.5, 2.0]);
        assert_eq!(u.values()[4], 5.0);
        assert_eq!(*u.values().last().unwrap(), 2.0 + 30.0);
    }
}
