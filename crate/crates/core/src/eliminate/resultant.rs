//! Resultants by evaluation and interpolation.
//!
//! `Res_z(f(z, x), g(z, y))` is evaluated on a grid of integer points with
//! fraction-free (Bareiss) determinants of the specialized Sylvester matrix,
//! then recovered by Newton interpolation in each variable. The Sylvester
//! matrix always uses the formal `z`-degrees, so specializations that drop
//! a leading coefficient still give the value of the generic resultant.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::EliminateError;
use crate::exactalg::rational::{common_denominator, to_integer};
use crate::exactalg::{BiPoly, BigRational, UniPoly};

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Sylvester matrix of coefficient vectors given in ascending order, using
/// the formal degrees `f.len() − 1` and `g.len() − 1`.
pub fn sylvester_matrix<T: Clone + Zero>(f: &[T], g: &[T]) -> Vec<Vec<T>> {
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..m {
        let mut row = vec![T::zero(); size];
        for (i, c) in f.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..n {
        let mut row = vec![T::zero(); size];
        for (i, c) in g.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two univariate polynomials of positive degree.
pub fn resultant_univariate(f: &UniPoly, g: &UniPoly) -> BigRational {
    let (df, dg) = (common_denominator(f.coeffs()), common_denominator(g.coeffs()));
    let fi: Vec<BigInt> = f.coeffs().iter().map(|c| (c * BigRational::from_integer(df.clone())).to_integer()).collect();
    let gi: Vec<BigInt> = g.coeffs().iter().map(|c| (c * BigRational::from_integer(dg.clone())).to_integer()).collect();
    let det = bareiss_determinant(sylvester_matrix(&fi, &gi));
    let n = fi.len() - 1;
    let m = gi.len() - 1;
    let scale = num_traits::pow(df, m) * num_traits::pow(dg, n);
    BigRational::new(det, scale)
}

/// Integer evaluation nodes `0, 1, −1, 2, −2, …`.
pub fn nodes(count: usize) -> Vec<BigInt> {
    (0..count as i64)
        .map(|i| {
            let v = (i + 1) / 2;
            BigInt::from(if i % 2 == 1 { v } else { -v })
        })
        .collect()
}

/// Interpolating polynomial through `(nodes[i], values[i])` via Newton's
/// divided differences.
pub fn interpolate(nodes: &[BigInt], values: &[BigRational], var: char) -> UniPoly {
    let n = nodes.len();
    let xs: Vec<BigRational> = nodes.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let mut coef: Vec<BigRational> = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UniPoly::zero(var);
    for i in (0..n).rev() {
        p = &(&p * &UniPoly::linear_root(&xs[i], var)) + &UniPoly::constant(coef[i].clone(), var);
    }
    p
}

fn eval_int(coeffs: &[BigInt], v: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * v + c)
}

/// `Res_z(f, g)` for `f` in variables `(z, x)` and `g` in `(z, y)`, returned
/// in variables `(x, y)`.
pub fn resultant_z(f: &BiPoly, g: &BiPoly) -> Result<BiPoly, EliminateError> {
    let n = f.degree_first().filter(|&d| d > 0).ok_or(EliminateError::ZeroDegree)?;
    let m = g.degree_first().filter(|&d| d > 0).ok_or(EliminateError::ZeroDegree)?;
    let vars = (f.vars().1, g.vars().1);
    let cf = common_denominator(f.terms().map(|(_, c)| c));
    let cg = common_denominator(g.terms().map(|(_, c)| c));
    let to_ints = |p: &BiPoly, c: &BigInt| -> Vec<Vec<BigInt>> {
        p.coeffs_in_first()
            .iter()
            .map(|u| {
                u.coeffs()
                    .iter()
                    .map(|a| to_integer(&(a * BigRational::from_integer(c.clone()))).expect("cleared"))
                    .collect()
            })
            .collect()
    };
    let fi = to_ints(f, &cf);
    let gi = to_ints(g, &cg);
    let bound_x = m * f.degree_second().unwrap_or(0);
    let bound_y = n * g.degree_second().unwrap_or(0);
    let xs = nodes(bound_x + 1);
    let ys = nodes(bound_y + 1);
    let f_at: Vec<Vec<BigInt>> = xs.iter().map(|x| fi.iter().map(|c| eval_int(c, x)).collect()).collect();
    let g_at: Vec<Vec<BigInt>> = ys.iter().map(|y| gi.iter().map(|c| eval_int(c, y)).collect()).collect();
    let grid: Vec<Vec<BigInt>> = std::thread::scope(|scope| {
        let handles: Vec<_> = f_at
            .iter()
            .map(|fv| {
                let g_at = &g_at;
                scope.spawn(move || {
                    g_at.iter().map(|gv| bareiss_determinant(sylvester_matrix(fv, gv))).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("determinant worker panicked")).collect()
    });
    // Interpolate in x for every y node, then each x-coefficient in y.
    let in_x: Vec<UniPoly> = (0..ys.len())
        .map(|b| {
            let vals: Vec<BigRational> = grid.iter().map(|row| BigRational::from_integer(row[b].clone())).collect();
            interpolate(&xs, &vals, vars.0)
        })
        .collect();
    let scale = BigRational::new(BigInt::one(), num_traits::pow(cf, m) * num_traits::pow(cg, n));
    let mut out = BiPoly::zero(vars);
    for i in 0..=bound_x {
        let vals: Vec<BigRational> = in_x.iter().map(|p| p.coeff(i)).collect();
        let col = interpolate(&ys, &vals, vars.1);
        for (j, c) in col.coeffs().iter().enumerate() {
            out.add_term((i, j), c * &scale);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    #[test]
    fn bareiss_small() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)],
        ];
        assert_eq!(bareiss_determinant(m), BigInt::from(6));
        let m = vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(0)]];
        assert_eq!(bareiss_determinant(m), BigInt::from(-1));
    }

    #[test]
    fn linear_resultant() {
        // Res_z(z - x, z - y) = x - y
        let f = BiPoly::from_int_terms(&[((1, 0), 1), ((0, 1), -1)], ('z', 'x'));
        let g = BiPoly::from_int_terms(&[((1, 0), 1), ((0, 1), -1)], ('z', 'y'));
        let r = resultant_z(&f, &g).unwrap();
        assert_eq!(r, BiPoly::from_int_terms(&[((1, 0), 1), ((0, 1), -1)], ('x', 'y')));
    }

    #[test]
    fn squares_resultant() {
        let f = BiPoly::from_int_terms(&[((2, 0), 1), ((0, 1), -1)], ('z', 'x'));
        let g = BiPoly::from_int_terms(&[((2, 0), 1), ((0, 1), -1)], ('z', 'y'));
        let r = resultant_z(&f, &g).unwrap();
        let d = BiPoly::from_int_terms(&[((1, 0), 1), ((0, 1), -1)], ('x', 'y'));
        assert_eq!(r, d.pow(2));
    }

    #[test]
    fn zero_degree_is_rejected() {
        let f = BiPoly::from_int_terms(&[((0, 1), 1)], ('z', 'x'));
        let g = BiPoly::from_int_terms(&[((1, 0), 1)], ('z', 'y'));
        assert_eq!(resultant_z(&f, &g), Err(EliminateError::ZeroDegree));
    }

    #[test]
    fn rational_inputs() {
        // Res_z(z/2 - 1, z - 3) = (1/2)·(2 - 3)
        let f = UniPoly::new(vec![int(-1), BigRational::new(1.into(), 2.into())], 'z');
        let g = UniPoly::from_ints(&[-3, 1], 'z');
        assert_eq!(resultant_univariate(&f, &g), BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = UniPoly::from_ints(&[5, -1, 0, 2], 'x');
        let xs = nodes(4);
        let vals: Vec<BigRational> = xs.iter().map(|v| p.eval(&BigRational::from_integer(v.clone()))).collect();
        assert_eq!(interpolate(&xs, &vals, 'x'), p);
    }
}
