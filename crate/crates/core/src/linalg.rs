//! Exact linear solves: fraction-free elimination over Laurent polynomials
//! in `t`, and plain Gaussian elimination over the rationals with arbitrary
//! coefficient right-hand sides.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Coefficient, ExactLaurent, RationalFunction, Var, Q};

/// Solves `a x = b` for every column of `b`.
///
/// `a` must be square with Laurent polynomial entries in `t` alone; `b`
/// may involve `nu`. The determinant must be a monomial times a product of
/// cyclotomic factors of index at most `max_m`, which is what makes the
/// answer expressible over bracket denominators.
pub fn bareiss_solve(
    a: &[Vec<RationalFunction>],
    b: &[Vec<RationalFunction>],
    max_m: u32,
) -> Result<Vec<Vec<RationalFunction>>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let cols = b[0].len();
    let mut m: Vec<Vec<ExactLaurent>> = Vec::with_capacity(n);
    for row in a {
        assert_eq!(row.len(), n, "matrix must be square");
        let mut out = Vec::with_capacity(n + cols);
        for x in row {
            let p = x.certify_polynomial().map_err(|_| Error::SingularSystem)?;
            assert!(p.is_free_of(Var::Nu), "matrix entries must be free of nu");
            out.push(p);
        }
        m.push(out);
    }
    let flat: Vec<RationalFunction> = b.iter().flatten().cloned().collect();
    let (nums, den) = RationalFunction::common_denominator(&flat);
    for (i, row) in m.iter_mut().enumerate() {
        row.extend_from_slice(&nums[i * cols..(i + 1) * cols]);
    }

    let mut prev = ExactLaurent::one();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .ok_or(Error::SingularSystem)?;
        m.swap(pivot, k);
        for i in k + 1..n {
            for j in k + 1..n + cols {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact_t(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = ExactLaurent::zero();
        }
        prev = m[k][k].clone();
    }
    // `prev` is now the determinant up to sign; back substitution
    // yields prev * x exactly
    let det = prev;
    let mut out = vec![vec![RationalFunction::zero(); cols]; n];
    for c in 0..cols {
        let mut y = vec![ExactLaurent::zero(); n];
        for i in (0..n).rev() {
            let mut acc = &det * &m[i][n + c];
            for j in i + 1..n {
                acc -= &(&m[i][j] * &y[j]);
            }
            y[i] = acc
                .div_exact_t(&m[i][i])
                .expect("back substitution is exact");
        }
        for i in 0..n {
            let x = RationalFunction::new(std::mem::take(&mut y[i]), den.iter().copied());
            out[i][c] = x.div_laurent_t(&det, max_m)?;
        }
    }
    Ok(out)
}

/// Inverse of a square matrix of Laurent polynomials in `t`.
pub fn bareiss_inverse(
    a: &[Vec<RationalFunction>],
    max_m: u32,
) -> Result<Vec<Vec<RationalFunction>>> {
    let n = a.len();
    let id: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RationalFunction::one()
                    } else {
                        RationalFunction::zero()
                    }
                })
                .collect()
        })
        .collect();
    bareiss_solve(a, &id, max_m)
}

/// Solves `a x = b` with `a` a square rational matrix and `b` a vector of
/// ring elements.
pub fn solve_rational<C: Coefficient>(a: &[Vec<Q>], b: &[C]) -> Result<Vec<C>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a.to_vec();
    let mut rhs: Vec<C> = b.to_vec();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .ok_or(Error::SingularSystem)?;
        m.swap(pivot, k);
        rhs.swap(pivot, k);
        let inv = m[k][k].recip();
        for j in k..n {
            m[k][j] = &m[k][j] * &inv;
        }
        rhs[k] = rhs[k].scaled(&inv);
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in k..n {
                let v = &m[k][j] * &f;
                m[i][j] -= v;
            }
            rhs[i] = rhs[i].minus(&rhs[k].scaled(&f));
        }
    }
    Ok(rhs)
}

/// Matrix product over rational functions.
pub fn mat_mul(
    a: &[Vec<RationalFunction>],
    b: &[Vec<RationalFunction>],
) -> Vec<Vec<RationalFunction>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = RationalFunction::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn is_identity(a: &[Vec<RationalFunction>]) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| {
            if i == j {
                *x == RationalFunction::one()
            } else {
                x.is_zero()
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{exp, int_exp, q, Bracket};

    fn t(e: i64) -> ExactLaurent {
        ExactLaurent::t_pow(int_exp(e))
    }

    #[test]
    fn inverts_bracket_matrix() {
        let a = vec![
            vec![RationalFunction::from(t(1)), RationalFunction::one()],
            vec![
                RationalFunction::one(),
                RationalFunction::from(t(-1) + t(1) + t(1)),
            ],
        ];
        // det = 1 + 2t^2 - 1 = 2 t^2: a monomial
        let inv = bareiss_inverse(&a, 4).unwrap();
        assert!(is_identity(&mat_mul(&a, &inv)));
        assert!(is_identity(&mat_mul(&inv, &a)));
    }

    #[test]
    fn bracket_determinant_and_nu_rhs() {
        let half = ExactLaurent::t_pow(exp(1, 2));
        let a = vec![
            vec![
                RationalFunction::from(half.clone()),
                RationalFunction::one(),
            ],
            vec![RationalFunction::one(), RationalFunction::from(half)],
        ];
        // det = t - 1, a bracket up to a monomial
        let rhs = vec![
            vec![RationalFunction::bracket_ratio(
                Bracket::nu(1),
                Bracket::t(2),
            )],
            vec![RationalFunction::constant(q(3))],
        ];
        let x = bareiss_solve(&a, &rhs, 2).unwrap();
        assert_eq!(mat_mul(&a, &x), rhs);
        let bad = vec![
            vec![RationalFunction::from(t(1)), RationalFunction::one()],
            vec![RationalFunction::one(), RationalFunction::constant(q(3))],
        ];
        assert!(matches!(
            bareiss_inverse(&bad, 4),
            Err(Error::NotBracketClosed(_))
        ));
    }

    #[test]
    fn rational_solve() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let b = vec![t(1), ExactLaurent::one()];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(&x[0].scale(&q(2)) + &x[1], t(1));
        assert_eq!(&x[0] + &x[1].scale(&q(3)), ExactLaurent::one());
        let sing = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert_eq!(solve_rational(&sing, &b), Err(Error::SingularSystem));
    }
}
