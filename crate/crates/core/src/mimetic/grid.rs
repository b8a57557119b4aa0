use std::fmt;

use crate::error::{Error, Result};

/// Mimetic order of accuracy. Only the even orders 2, 4, 6 and 8 are
/// supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Order(u8);

impl Order {
    pub const K2: Order = Order(2);
    pub const K4: Order = Order(4);
    pub const K6: Order = Order(6);
    pub const K8: Order = Order(8);
    pub const ALL: [Order; 4] = [Order::K2, Order::K4, Order::K6, Order::K8];

    pub fn new(k: usize) -> Result<Order> {
        match k {
            2 | 4 | 6 | 8 => Ok(Order(k as u8)),
            _ => Err(Error::UnsupportedOrder(k)),
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Number of boundary rows closed one-sidedly at each end.
    #[inline]
    pub fn half(self) -> usize {
        self.get() / 2
    }

    /// Smallest cell count for which the two boundary closures do not meet.
    #[inline]
    pub fn min_cells(self) -> usize {
        2 * self.get()
    }

    pub(crate) fn check_cells(self, cells: usize) -> Result<()> {
        if cells < self.min_cells() {
            return Err(Error::GridTooSmall {
                order: self.get(),
                cells,
            });
        }
        Ok(())
    }
}

impl TryFrom<usize> for Order {
    type Error = Error;

    fn try_from(k: usize) -> Result<Order> {
        Order::new(k)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Uniform 1D staggered grid with `m` unit cells on `[0, m]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StaggeredGrid1D {
    cells: usize,
}

impl StaggeredGrid1D {
    pub fn new(cells: usize, order: Order) -> Result<Self> {
        order.check_cells(cells)?;
        Ok(StaggeredGrid1D { cells })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn node_count(&self) -> usize {
        self.cells + 2
    }

    pub fn face_count(&self) -> usize {
        self.cells + 1
    }

    /// Extended centers `0, 0.5, 1.5, ..., m - 0.5, m`.
    pub fn nodes(&self) -> Vec<f64> {
        let m = self.cells;
        let mut out = Vec::with_capacity(m + 2);
        out.push(0.0);
        out.extend((0..m).map(|c| c as f64 + 0.5));
        out.push(m as f64);
        out
    }

    /// Faces `0, 1, ..., m`.
    pub fn faces(&self) -> Vec<f64> {
        (0..=self.cells).map(|f| f as f64).collect()
    }
}
