use serde::Serialize;

use super::generator::Generator;

/// Commutator `[g₁, g₂]` at a point `(t, x, z, v, ρ, ψ)`:
/// `Σⱼ g₁ʲ ∂ⱼ g₂ᵏ − g₂ʲ ∂ⱼ g₁ᵏ`, using exact coefficient partials.
pub fn lie_bracket(g1: &Generator, g2: &Generator, point: &[f64; 6]) -> [f64; 6] {
    let (c1, d1) = g1.coefficients_with_partials(point);
    let (c2, d2) = g2.coefficients_with_partials(point);
    std::array::from_fn(|k| (0..6).map(|j| c1[j] * d2[k][j] - c2[j] * d1[k][j]).sum())
}

/// Measured bracket of two generators over a set of points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    /// Largest `|component|` over all points.
    pub max_abs: f64,
    pub is_zero: bool,
    /// Constant coefficients of the least-squares fit onto the basis.
    pub fit_coefficients: Vec<f64>,
    /// Largest pointwise residual of that fit.
    pub fit_residual: f64,
}

/// Bracket every ordered pair `i < j` of `basis` at `points` and fit each
/// result onto constant combinations of the basis.
pub fn bracket_table(basis: &[Generator], points: &[[f64; 6]], zero_tol: f64) -> Vec<BracketEntry> {
    let cols: Vec<Vec<f64>> =
        basis.iter().map(|g| points.iter().flat_map(|p| g.eval(p)).collect()).collect();
    let mut out = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let rhs: Vec<f64> = points.iter().flat_map(|p| lie_bracket(&basis[i], &basis[j], p)).collect();
            let max_abs = rhs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            let coeffs = least_squares(&cols, &rhs);
            let fit_residual = rhs
                .iter()
                .enumerate()
                .map(|(r, y)| (y - cols.iter().zip(&coeffs).map(|(c, a)| a * c[r]).sum::<f64>()).abs())
                .fold(0.0, f64::max);
            out.push(BracketEntry {
                left: basis[i].id.clone(),
                right: basis[j].id.clone(),
                max_abs,
                is_zero: max_abs <= zero_tol,
                fit_coefficients: coeffs,
                fit_residual,
            });
        }
    }
    out
}

/// Minimum-norm-ish least squares via regularized normal equations.
fn least_squares(cols: &[Vec<f64>], rhs: &[f64]) -> Vec<f64> {
    let n = cols.len();
    let mut a = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = cols[i].iter().zip(&cols[j]).map(|(x, y)| x * y).sum();
        }
        a[i][i] += 1e-12 * (1.0 + a[i][i]);
        a[i][n] = cols[i].iter().zip(rhs).map(|(x, y)| x * y).sum();
    }
    // Gaussian elimination with partial pivoting.
    for c in 0..n {
        let piv = (c..n).max_by(|&p, &q| a[p][c].abs().total_cmp(&a[q][c].abs())).unwrap();
        a.swap(c, piv);
        let d = a[c][c];
        if d == 0.0 {
            continue;
        }
        for r in 0..n {
            if r != c {
                let factor = a[r][c] / d;
                if factor != 0.0 {
                    for k in c..=n {
                        a[r][k] -= factor * a[c][k];
                    }
                }
            }
        }
    }
    (0..n).map(|i| if a[i][i] == 0.0 { 0.0 } else { a[i][n] / a[i][i] }).collect()
}
