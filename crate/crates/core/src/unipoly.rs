//! Univariate arithmetic in `s = t^{1/2}` with integer numerators over
//! products of brackets `[m]_t = s^m - s^{-m}`: the ring of the Hecke matrices.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::poly::{exp, int_exp, Bracket, ExactLaurent, RationalFunction, Q};

/// `sum_i c[i] s^{lo + i}`; zero is the empty vector, otherwise both ends
/// are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Lp {
    lo: i64,
    c: Vec<i128>,
}

fn checked(x: Option<i128>) -> i128 {
    x.expect("coefficient overflow in Hecke matrix arithmetic")
}

impl Lp {
    pub(crate) fn zero() -> Self {
        Lp::default()
    }

    pub(crate) fn monomial(c: i128, e: i64) -> Self {
        Lp { lo: e, c: vec![c] }.normalized()
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn normalized(mut self) -> Self {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|&&x| x == 0).count();
        if lead == self.c.len() {
            return Lp::zero();
        }
        self.c.drain(..lead);
        self.lo += lead as i64;
        self
    }

    fn combine(&self, other: &Self, sign: i128) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return Lp {
                lo: other.lo,
                c: other
                    .c
                    .iter()
                    .map(|&x| checked(x.checked_mul(sign)))
                    .collect(),
            };
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.c.len() as i64).max(other.lo + other.c.len() as i64);
        let mut c = vec![0i128; (hi - lo) as usize];
        for (i, &x) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] = x;
        }
        for (i, &x) in other.c.iter().enumerate() {
            let slot = &mut c[(other.lo - lo) as usize + i];
            *slot = checked(slot.checked_add(checked(x.checked_mul(sign))));
        }
        Lp { lo, c }.normalized()
    }

    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Lp::zero();
        }
        let mut c = vec![0i128; self.c.len() + other.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.c.iter().enumerate() {
                c[i + j] = checked(c[i + j].checked_add(checked(x.checked_mul(y))));
            }
        }
        Lp {
            lo: self.lo + other.lo,
            c,
        }
        .normalized()
    }

    /// Multiplies by `s^m - s^{-m}`.
    fn mul_bracket(&self, m: usize) -> Self {
        let up = Lp {
            lo: self.lo + m as i64,
            c: self.c.clone(),
        };
        let down = Lp {
            lo: self.lo - m as i64,
            c: self.c.clone(),
        };
        up.combine(&down, -1)
    }

    /// Exact division by `s^m - s^{-m} = s^{-m}(s^{2m} - 1)`.
    fn div_bracket(&self, m: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Lp::zero());
        }
        let w = 2 * m;
        if self.c.len() <= w {
            return None;
        }
        let mut r = self.c.clone();
        let mut quot = vec![0i128; r.len() - w];
        for i in (w..r.len()).rev() {
            let lead = r[i];
            if lead != 0 {
                quot[i - w] = lead;
                r[i - w] = checked(r[i - w].checked_add(lead));
                r[i] = 0;
            }
        }
        if r.iter().any(|&x| x != 0) {
            return None;
        }
        Some(
            Lp {
                lo: self.lo + m as i64,
                c: quot,
            }
            .normalized(),
        )
    }

    fn to_laurent(&self) -> ExactLaurent {
        ExactLaurent::from_terms(self.c.iter().enumerate().filter(|(_, &x)| x != 0).map(
            |(i, &x)| {
                (
                    (exp(self.lo + i as i64, 2), int_exp(0)),
                    Q::from_integer(BigInt::from(x)),
                )
            },
        ))
    }
}

pub(crate) const MAX_BRACKET: usize = 12;

/// `num / prod_m [m]_t^{den[m]}`.
#[derive(Clone, Debug, Default)]
pub(crate) struct Frac {
    num: Lp,
    den: [u8; MAX_BRACKET],
}

impl Frac {
    pub(crate) fn zero() -> Self {
        Frac::default()
    }

    pub(crate) fn one() -> Self {
        Frac::monomial(1, 0)
    }

    /// `c s^e = c t^{e/2}`.
    pub(crate) fn monomial(c: i128, e: i64) -> Self {
        Frac {
            num: Lp::monomial(c, e),
            den: [0; MAX_BRACKET],
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub(crate) fn mul_bracket(&self, m: usize) -> Self {
        let mut out = self.clone();
        if out.den[m] > 0 {
            out.den[m] -= 1;
        } else {
            out.num = out.num.mul_bracket(m);
        }
        out
    }

    pub(crate) fn div_bracket(&self, m: usize) -> Self {
        let mut out = self.clone();
        out.den[m] += 1;
        out.reduce();
        out
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = [0; MAX_BRACKET];
            return;
        }
        for m in 1..MAX_BRACKET {
            while self.den[m] > 0 {
                match self.num.div_bracket(m) {
                    Some(quot) => {
                        self.num = quot;
                        self.den[m] -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    fn lift(&self, den: &[u8; MAX_BRACKET]) -> Lp {
        let mut num = self.num.clone();
        for (m, (&have, &want)) in self.den.iter().zip(den).enumerate().skip(1) {
            for _ in have..want {
                num = num.mul_bracket(m);
            }
        }
        num
    }

    fn add_signed(&self, other: &Self, sign: i128) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.scaled(sign);
        }
        let mut den = self.den;
        for (d, o) in den.iter_mut().zip(other.den) {
            *d = (*d).max(o);
        }
        let mut out = Frac {
            num: self.lift(&den).combine(&other.lift(&den), sign),
            den,
        };
        out.reduce();
        out
    }

    fn scaled(&self, c: i128) -> Self {
        if c == 1 {
            return self.clone();
        }
        Frac {
            num: Lp {
                lo: self.num.lo,
                c: self
                    .num
                    .c
                    .iter()
                    .map(|&x| checked(x.checked_mul(c)))
                    .collect(),
            }
            .normalized(),
            den: self.den,
        }
    }

    pub(crate) fn to_rational(&self) -> RationalFunction {
        let den = (1..MAX_BRACKET)
            .flat_map(|m| std::iter::repeat_n(Bracket::t(m as u32), self.den[m] as usize));
        RationalFunction::new(self.num.to_laurent(), den)
    }
}

impl Add for &Frac {
    type Output = Frac;
    fn add(self, rhs: &Frac) -> Frac {
        self.add_signed(rhs, 1)
    }
}

impl Sub for &Frac {
    type Output = Frac;
    fn sub(self, rhs: &Frac) -> Frac {
        self.add_signed(rhs, -1)
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        self.scaled(-1)
    }
}

impl Mul for &Frac {
    type Output = Frac;
    fn mul(self, rhs: &Frac) -> Frac {
        if self.is_zero() || rhs.is_zero() {
            return Frac::zero();
        }
        let mut den = self.den;
        for (d, o) in den.iter_mut().zip(rhs.den) {
            *d += o;
        }
        let mut out = Frac {
            num: self.num.times(&rhs.num),
            den,
        };
        out.reduce();
        out
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

pub(crate) type FMatrix = Vec<Vec<Frac>>;

pub(crate) fn f_identity(d: usize) -> FMatrix {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { Frac::one() } else { Frac::zero() })
                .collect()
        })
        .collect()
}

pub(crate) fn f_mul(a: &FMatrix, b: &FMatrix) -> FMatrix {
    let n = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Frac::zero();
                    for k in 0..n {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub(crate) fn f_to_matrix(a: &FMatrix) -> Vec<Vec<RationalFunction>> {
    a.iter()
        .map(|row| row.iter().map(Frac::to_rational).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_frac() -> impl Strategy<Value = Frac> {
        (
            prop::collection::vec((-3i128..4, -4i64..5), 1..4),
            prop::collection::vec(1usize..6, 0..3),
            prop::collection::vec(1usize..6, 0..2),
        )
            .prop_map(|(terms, dens, nums)| {
                let mut x = Frac::zero();
                for (c, e) in terms {
                    x = &x + &Frac::monomial(c, e);
                }
                for m in dens {
                    x = x.div_bracket(m);
                }
                for m in nums {
                    x = x.mul_bracket(m);
                }
                x
            })
    }

    proptest! {
        #[test]
        fn ring_matches_generic(a in arb_frac(), b in arb_frac(), c in arb_frac()) {
            let (ga, gb, gc) = (a.to_rational(), b.to_rational(), c.to_rational());
            prop_assert_eq!((&(&a * &b) + &c).to_rational(), &(&ga * &gb) + &gc);
            prop_assert_eq!((&a - &(&b * &c)).to_rational(), &ga - &(&gb * &gc));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }
    }

    fn lp(lo: i64, c: &[i128]) -> Lp {
        Lp { lo, c: c.to_vec() }.normalized()
    }

    #[test]
    fn bracket_division() {
        let p = lp(-3, &[-1, 0, 0, 0, 0, 0, 1]);
        // s^3 - s^-3 = [3]
        assert_eq!(p.div_bracket(3), Some(lp(0, &[1])));
        assert_eq!(lp(0, &[1]).mul_bracket(2).div_bracket(2), Some(lp(0, &[1])));
        assert_eq!(lp(0, &[1, 1]).div_bracket(1), None);
    }

    #[test]
    fn agrees_with_generic_rationals() {
        let a = Frac::monomial(3, 1).div_bracket(2).mul_bracket(1);
        let b = Frac::monomial(-2, -3).div_bracket(3);
        let ga = a.to_rational();
        let gb = b.to_rational();
        assert_eq!((&a + &b).to_rational(), &ga + &gb);
        assert_eq!((&a * &b).to_rational(), &ga * &gb);
        assert_eq!((&a - &a).to_rational(), RationalFunction::zero());
        let c = &(&a * &b) + &Frac::one();
        assert_eq!(c.to_rational(), &(&ga * &gb) + &RationalFunction::one());
        // [2]/[1] reduces to s + s^-1
        let r = Frac::one().mul_bracket(2).div_bracket(1);
        assert_eq!(r.den, [0; MAX_BRACKET]);
    }
}
