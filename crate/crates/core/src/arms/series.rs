use num_bigint::BigUint;
use num_traits::Zero;

use super::paths::enumerate_partial_paths;
use super::Flavor;
use crate::error::{Error, Result};

/// A polynomial in `y` with natural coefficients, lowest degree first.
type Poly = Vec<BigUint>;

fn poly(coeffs: &[u32]) -> Poly {
    coeffs.iter().map(|&c| BigUint::from(c)).collect()
}

fn add_product(acc: &mut Poly, a: &Poly, b: &Poly) {
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if acc.len() <= i + j {
                acc.resize(i + j + 1, BigUint::zero());
            }
            acc[i + j] += x * y;
        }
    }
}

/// Numerator `N(x, y)` and the tail `P(x, y)` of the denominator
/// `1 - P(x, y)`, each as a list of `x`-coefficients.
fn generating_function(flavor: Flavor) -> (Vec<Poly>, Vec<Poly>) {
    match flavor {
        // (1 + xy) / (1 - 2x - x^2 y)
        Flavor::Quadrant => (vec![poly(&[1]), poly(&[0, 1])], vec![poly(&[]), poly(&[2]), poly(&[0, 1])]),
        // (1 + x + xy + x^2 y) / (1 - x - x^2 - x^3 y)
        Flavor::Strip => (
            vec![poly(&[1]), poly(&[1, 1]), poly(&[0, 1])],
            vec![poly(&[]), poly(&[1]), poly(&[1]), poly(&[0, 1])],
        ),
    }
}

/// Coefficient of `x^n` in the cube generating function, as counts by
/// dimension `0..=n`, by exact long division of the series.
pub fn cube_counts_by_series(flavor: Flavor, n: usize) -> Vec<BigUint> {
    let (num, tail) = generating_function(flavor);
    let mut coeffs: Vec<Poly> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut c = num.get(m).cloned().unwrap_or_default();
        for (k, p) in tail.iter().enumerate().skip(1) {
            if k <= m {
                add_product(&mut c, p, &coeffs[m - k]);
            }
        }
        coeffs.push(c);
    }
    let mut out = coeffs.pop().unwrap_or_default();
    out.resize(n + 1, BigUint::zero());
    out
}

/// Counts by dimension `0..=n` of partial paths of `n` links.
pub fn cube_counts_by_paths(flavor: Flavor, n: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); n + 1];
    for p in enumerate_partial_paths(n, flavor) {
        out[p.dimension()] += 1u32;
    }
    out
}

/// Cube counts by dimension, computed both ways; disagreement is an error.
pub fn cube_counts(flavor: Flavor, n: usize) -> Result<Vec<BigUint>> {
    let series = cube_counts_by_series(flavor, n);
    let paths = cube_counts_by_paths(flavor, n);
    if series != paths {
        return Err(Error::CountMismatch(format!(
            "{flavor} n={n}: series gives {series:?}, partial paths give {paths:?}"
        )));
    }
    Ok(series)
}
