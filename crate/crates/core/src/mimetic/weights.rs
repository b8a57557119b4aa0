use super::grid::Order;
use crate::error::Result;

// Left-end face weights; the right end mirrors them and every other face
// weighs 1. Each table sums to k - 1/2, so the full vector sums to m.
//
// k = 2 and k = 4 are the reference library's values. k = 6 and k = 8 are
// the width-k Gregory end corrections (unit interior, exact on polynomials
// of degree ≤ k).
const P2: [(i64, i64); 2] = [(3, 8), (9, 8)];
const P4: [(i64, i64); 4] = [(407, 1152), (473, 384), (343, 384), (1177, 1152)];
const P6: [(i64, i64); 6] = [
    (19087, 60480),
    (84199, 60480),
    (18869, 30240),
    (37621, 30240),
    (55031, 60480),
    (61343, 60480),
];
const P8: [(i64, i64); 8] = [
    (1070017, 3628800),
    (5537111, 3628800),
    (103613, 403200),
    (261115, 145152),
    (298951, 725760),
    (515677, 403200),
    (3349879, 3628800),
    (3662753, 3628800),
];

fn boundary_table(order: Order) -> &'static [(i64, i64)] {
    match order.get() {
        2 => &P2,
        4 => &P4,
        6 => &P6,
        8 => &P8,
        _ => unreachable!("Order only admits 2, 4, 6, 8"),
    }
}

/// Positive diagonal quadrature paired with a gradient operator, stored as
/// its diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalWeights {
    order: Order,
    values: Vec<f64>,
}

impl DiagonalWeights {
    pub fn order(&self) -> Order {
        self.order
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `vᵀ P v`. Panics if the lengths differ.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        assert_eq!(v.len(), self.values.len(), "weight/field length mismatch");
        self.values.iter().zip(v).map(|(w, x)| w * x * x).sum()
    }
}

/// Face weights for `m` cells: `m + 1` entries.
pub fn build_weights_1d(order: Order, m: usize) -> Result<DiagonalWeights> {
    order.check_cells(m)?;
    let table = boundary_table(order);
    let mut values = vec![1.0; m + 1];
    for (i, &(num, den)) in table.iter().enumerate() {
        let w = num as f64 / den as f64;
        values[i] = w;
        values[m - i] = w;
    }
    Ok(DiagonalWeights { order, values })
}

/// Block diagonal `[Iₙ ⊗ Pₘ, Pₙ ⊗ Iₘ]`, aligned with the rows of
/// [`build_grad_2d`](super::build_grad_2d).
pub fn build_weights_2d(order: Order, m: usize, n: usize) -> Result<DiagonalWeights> {
    let pm = build_weights_1d(order, m)?;
    let pn = build_weights_1d(order, n)?;
    let mut values = Vec::with_capacity(n * (m + 1) + m * (n + 1));
    for _ in 0..n {
        values.extend_from_slice(&pm.values);
    }
    for &w in &pn.values {
        values.extend(std::iter::repeat_n(w, m));
    }
    Ok(DiagonalWeights { order, values })
}
