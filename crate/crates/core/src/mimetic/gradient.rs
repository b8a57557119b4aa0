use super::field::{FieldVector, Layout};
use super::grid::{Order, StaggeredGrid1D};
use super::sparse::SparseMatrix;
use super::stencil::one_sided_stencil;
use crate::error::{Error, Result};

/// 1D mimetic gradient, `(m + 1) × (m + 2)`, nodes to faces.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient1D {
    order: Order,
    grid: StaggeredGrid1D,
    matrix: SparseMatrix,
}

/// Builds the order-k gradient on `m` unit cells.
///
/// Interior faces use the k nearest cell centers (a shifted copy of one
/// symmetric stencil). The first k/2 faces use the boundary node and the
/// first k centers, exact to degree k; the last k/2 rows mirror them with
/// reversed, negated coefficients.
pub fn build_grad_1d(order: Order, m: usize) -> Result<Gradient1D> {
    let grid = StaggeredGrid1D::new(m, order)?;
    let k = order.get();
    let half = order.half();
    let nodes = grid.nodes();

    let boundary: Vec<Vec<f64>> = (0..half)
        .map(|f| one_sided_stencil(&nodes[..=k], f as f64, k))
        .collect::<Result<_>>()?;

    let offsets: Vec<f64> = (0..k).map(|t| t as f64 - half as f64 + 0.5).collect();
    let interior = one_sided_stencil(&offsets, 0.0, k - 1)?;

    let rows = (0..=m).map(|f| -> Vec<(usize, f64)> {
        if f < half {
            boundary[f].iter().copied().enumerate().collect()
        } else if f > m - half {
            let mirror = &boundary[m - f];
            let first = m + 1 - k;
            mirror
                .iter()
                .rev()
                .enumerate()
                .map(|(t, &c)| (first + t, -c))
                .collect()
        } else {
            let first = f + 1 - half;
            interior
                .iter()
                .enumerate()
                .map(|(t, &c)| (first + t, c))
                .collect()
        }
    });

    Ok(Gradient1D {
        order,
        grid,
        matrix: SparseMatrix::from_rows(m + 2, rows),
    })
}

impl Gradient1D {
    pub fn order(&self) -> Order {
        self.order
    }

    pub fn cells(&self) -> usize {
        self.grid.cells()
    }

    pub fn grid(&self) -> &StaggeredGrid1D {
        &self.grid
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn apply(&self, field: &FieldVector) -> Result<FieldVector> {
        let m = self.cells();
        let expected = Layout::ExtendedCenters1D { m };
        if field.layout() != expected {
            return Err(Error::DimensionMismatch {
                expected: expected.len(),
                actual: field.len(),
            });
        }
        let out = self.matrix.apply(field.values())?;
        FieldVector::new(out, Layout::Faces1D { m })
    }
}

/// 2D mimetic gradient `[Eₙ ⊗ Gₘ; Gₙ ⊗ Eₘ]` on an `m × n` cell grid, where
/// `Eₚ` drops the two boundary nodes of an extended axis. Columns follow the
/// x-fastest extended-node ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient2D {
    order: Order,
    m: usize,
    n: usize,
    matrix: SparseMatrix,
}

pub fn build_grad_2d(order: Order, m: usize, n: usize) -> Result<Gradient2D> {
    let gx = build_grad_1d(order, m)?;
    let gy = build_grad_1d(order, n)?;
    let stride = m + 2;

    let x_rows = (0..n).flat_map(|j| {
        let gx = &gx;
        (0..=m).map(move |f| {
            let base = (j + 1) * stride;
            gx.matrix.row(f).map(move |(c, v)| (base + c, v))
        })
    });
    let y_rows = (0..=n).flat_map(|f| {
        let gy = &gy;
        (0..m).map(move |i| gy.matrix.row(f).map(move |(r, v)| (i + 1 + r * stride, v)))
    });

    let rows: Vec<Vec<(usize, f64)>> = x_rows
        .map(|r| r.collect())
        .chain(y_rows.map(|r| r.collect()))
        .collect();
    Ok(Gradient2D {
        order,
        m,
        n,
        matrix: SparseMatrix::from_rows(stride * (n + 2), rows),
    })
}

impl Gradient2D {
    pub fn order(&self) -> Order {
        self.order
    }

    /// Cells along x (image width).
    pub fn width(&self) -> usize {
        self.m
    }

    /// Cells along y (image height).
    pub fn height(&self) -> usize {
        self.n
    }

    pub fn x_face_count(&self) -> usize {
        self.n * (self.m + 1)
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn apply(&self, field: &FieldVector) -> Result<FieldVector> {
        let expected = Layout::ExtendedCenters2D {
            m: self.m,
            n: self.n,
        };
        if field.layout() != expected {
            return Err(Error::DimensionMismatch {
                expected: expected.len(),
                actual: field.len(),
            });
        }
        let out = self.matrix.apply(field.values())?;
        FieldVector::new(
            out,
            Layout::Faces2D {
                m: self.m,
                n: self.n,
            },
        )
    }
}
