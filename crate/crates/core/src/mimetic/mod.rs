//! Order-k mimetic gradient operators and their face quadrature weights on
//! uniform staggered grids with unit spacing.
//!
//! A 1D grid of `m` cells carries `m + 2` scalar nodes (both boundary points
//! plus the `m` cell centers) and `m + 1` faces. The gradient maps nodes to
//! faces; the 2D operator stacks the x-face block on top of the y-face block.

mod field;
mod gradient;
mod grid;
mod sparse;
mod stencil;
mod weights;

pub use field::{FieldVector, Layout};
pub use gradient::{build_grad_1d, build_grad_2d, Gradient1D, Gradient2D};
pub use grid::{Order, StaggeredGrid1D};
pub use sparse::SparseMatrix;
pub use stencil::one_sided_stencil;
pub use weights::{build_weights_1d, build_weights_2d, DiagonalWeights};
