use crate::error::{Error, Result};

/// First-derivative weights at `target` from values at `nodes`.
///
/// Returns `c` with `Σ cᵢ p(nodeᵢ) = p'(target)` for every polynomial of
/// degree `≤ degree`. This is the solution of the Vandermonde-derivative
/// system, evaluated in closed form through the derivatives of the Lagrange
/// basis polynomials, which avoids forming the ill-scaled Vandermonde
/// matrix.
pub fn one_sided_stencil(nodes: &[f64], target: f64, degree: usize) -> Result<Vec<f64>> {
    if nodes.len() != degree + 1 {
        return Err(Error::StencilArity {
            degree,
            expected: degree + 1,
            actual: nodes.len(),
        });
    }
    for (i, a) in nodes.iter().enumerate() {
        if !a.is_finite() {
            return Err(Error::SingularStencil);
        }
        if nodes[i + 1..].iter().any(|b| a == b) {
            return Err(Error::SingularStencil);
        }
    }

    let n = nodes.len();
    let mut coeffs = vec![0.0; n];
    for (i, c) in coeffs.iter_mut().enumerate() {
        let xi = nodes[i];
        // L_i'(t) = Σ_{j≠i} 1/(x_i - x_j) Π_{l≠i,j} (t - x_l)/(x_i - x_l)
        let mut sum = 0.0;
        for j in (0..n).filter(|&j| j != i) {
            let mut term = 1.0 / (xi - nodes[j]);
            for l in (0..n).filter(|&l| l != i && l != j) {
                term *= (target - nodes[l]) / (xi - nodes[l]);
            }
            sum += term;
        }
        *c = sum;
    }
    Ok(coeffs)
}
