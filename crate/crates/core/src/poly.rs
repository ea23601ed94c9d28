//! Exact Laurent polynomials in `t^{1/2}, nu^{1/2}` (with arbitrary rational
//! exponents) and rational functions whose denominators are products of
//! brackets `[m]_x = x^{m/2} - x^{-m/2}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponents are exact rationals.
pub type Exp = Ratio<i64>;
/// Coefficients are arbitrary precision rationals.
pub type Q = BigRational;

pub fn exp(n: i64, d: i64) -> Exp {
    Ratio::new(n, d)
}

pub fn int_exp(n: i64) -> Exp {
    Ratio::from_integer(n)
}

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Ring operations shared by every coefficient type that flows through the
/// symmetric function series.
pub trait Coefficient: Clone + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Q) -> Self;
    /// `t -> t^d, nu -> nu^d` (plus whatever else the type carries).
    fn adams(&self, d: u32) -> Self;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    Nu,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Nu => "nu",
        }
    }
}

/// Finite sum of `c * t^et * nu^ev`, no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactLaurent {
    terms: BTreeMap<(Exp, Exp), Q>,
}

impl ExactLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, Exp::zero(), Exp::zero())
    }

    pub fn monomial(c: Q, et: Exp, ev: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((et, ev), c);
        }
        ExactLaurent { terms }
    }

    /// `t^e`.
    pub fn t_pow(e: Exp) -> Self {
        Self::monomial(Q::one(), e, Exp::zero())
    }

    /// `nu^e`.
    pub fn nu_pow(e: Exp) -> Self {
        Self::monomial(Q::one(), Exp::zero(), e)
    }

    pub fn var_pow(var: Var, e: Exp) -> Self {
        match var {
            Var::T => Self::t_pow(e),
            Var::Nu => Self::nu_pow(e),
        }
    }

    /// `x^{m/2} - x^{-m/2}`.
    pub fn bracket(var: Var, m: u32) -> Self {
        let h = exp(m as i64, 2);
        Self::var_pow(var, h) - Self::var_pow(var, -h)
    }

    pub fn from_terms<I: IntoIterator<Item = ((Exp, Exp), Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for ((et, ev), c) in iter {
            out.add_term(et, ev, c);
        }
        out
    }

    pub fn add_term(&mut self, et: Exp, ev: Exp, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((et, ev)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Exp, Exp), &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(Exp::zero(), Exp::zero()))
                .is_some_and(|c| c.is_one())
    }

    /// The constant term if this is a constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&(Exp::zero(), Exp::zero())).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, et: Exp, ev: Exp) -> Q {
        self.terms.get(&(et, ev)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExactLaurent {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `t^et nu^ev`.
    pub fn shift(&self, et: Exp, ev: Exp) -> Self {
        ExactLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + et, b + ev), c.clone()))
                .collect(),
        }
    }

    /// Every exponent multiplied by `d`.
    pub fn adams(&self, d: u32) -> Self {
        let d = int_exp(d as i64);
        ExactLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a * d, b * d), c.clone()))
                .collect(),
        }
    }

    /// Negates the exponents of `var`.
    pub fn invert_variable(&self, var: Var) -> Self {
        ExactLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| {
                    let key = match var {
                        Var::T => (-a, b),
                        Var::Nu => (a, -b),
                    };
                    (key, c.clone())
                })
                .collect(),
        }
    }

    pub fn is_palindromic(&self, var: Var) -> bool {
        *self == self.invert_variable(var)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    fn exps(&self, var: Var) -> impl Iterator<Item = Exp> + '_ {
        self.terms.keys().map(move |&(a, b)| match var {
            Var::T => a,
            Var::Nu => b,
        })
    }

    pub fn min_exp(&self, var: Var) -> Option<Exp> {
        self.exps(var).min()
    }

    pub fn max_exp(&self, var: Var) -> Option<Exp> {
        self.exps(var).max()
    }

    /// True when no term carries a power of `var`.
    pub fn is_free_of(&self, var: Var) -> bool {
        self.exps(var).all(|e| e.is_zero())
    }

    /// Groups by the exponent of `var`; the values are free of `var`.
    pub fn split_by(&self, var: Var) -> BTreeMap<Exp, ExactLaurent> {
        let mut out: BTreeMap<Exp, ExactLaurent> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            let (key, rest) = match var {
                Var::T => (a, (Exp::zero(), b)),
                Var::Nu => (b, (a, Exp::zero())),
            };
            out.entry(key).or_default().terms.insert(rest, c.clone());
        }
        out
    }

    pub fn mul_bracket(&self, b: Bracket) -> Self {
        let h = exp(b.m as i64, 2);
        let (up, down) = match b.var {
            Var::T => (self.shift(h, Exp::zero()), self.shift(-h, Exp::zero())),
            Var::Nu => (self.shift(Exp::zero(), h), self.shift(Exp::zero(), -h)),
        };
        up - down
    }

    /// Exact division by `[m]_x`, or `None` when a remainder is left.
    ///
    /// `[m]_x = x^{-m/2} (x^m - 1)` and `x^m - 1` divides a Laurent
    /// polynomial with rational exponents iff the coefficients sum to zero
    /// on every class of `x`-exponents modulo `m`.
    pub fn div_bracket(&self, b: Bracket) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let m = int_exp(b.m as i64);
        // (residue, other exponent) -> list of (j, coeff) with x-exponent residue + j m
        let mut classes: HashMap<(Exp, Exp), BTreeMap<i64, Q>> = HashMap::new();
        for (&(a, bb), c) in &self.terms {
            let (x, other) = match b.var {
                Var::T => (a, bb),
                Var::Nu => (bb, a),
            };
            let j = (x / m).floor();
            let residue = x - j * m;
            classes
                .entry((residue, other))
                .or_default()
                .insert(j.to_integer(), c.clone());
        }
        let mut out = Self::zero();
        let half = exp(b.m as i64, 2);
        for ((residue, other), chain) in classes {
            let (&lo, _) = chain.iter().next().unwrap();
            let (&hi, _) = chain.iter().next_back().unwrap();
            let mut acc = Q::zero();
            for j in lo..=hi {
                if let Some(c) = chain.get(&j) {
                    acc += c;
                }
                if j == hi {
                    if !acc.is_zero() {
                        return None;
                    }
                    break;
                }
                if !acc.is_zero() {
                    let x = residue + int_exp(j) * m + half;
                    let key = match b.var {
                        Var::T => (x, other),
                        Var::Nu => (other, x),
                    };
                    out.terms.insert(key, -acc.clone());
                }
            }
        }
        Some(out)
    }

    /// Exact division by a divisor that only involves `t`.
    pub fn div_exact_t(&self, divisor: &ExactLaurent) -> Option<Self> {
        assert!(
            divisor.is_free_of(Var::Nu),
            "divisor must be univariate in t"
        );
        assert!(!divisor.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (&(d_hi, _), d_lead) = divisor.terms.iter().next_back().unwrap();
        let d_lo = divisor.min_exp(Var::T).unwrap();
        let mut out = Self::zero();
        for (ev, group) in self.split_by(Var::Nu) {
            let mut rem: BTreeMap<Exp, Q> =
                group.terms.into_iter().map(|((a, _), c)| (a, c)).collect();
            let floor = *rem.keys().next().unwrap() - d_lo;
            while let Some((&top, c)) = rem.iter().next_back() {
                let qe = top - d_hi;
                if qe < floor {
                    return None;
                }
                let qc = c / d_lead;
                for (&(de, _), dc) in &divisor.terms {
                    let key = qe + de;
                    let v = rem.entry(key).or_insert_with(Q::zero);
                    *v -= &qc * dc;
                    if v.is_zero() {
                        rem.remove(&key);
                    }
                }
                out.terms.insert((qe, ev), qc);
            }
        }
        Some(out)
    }

    /// Substitutes `t^{1/2} = t_half`, `nu^{1/2} = nu_half`.
    pub fn evaluate(&self, t_half: &Q, nu_half: &Q) -> Result<Q> {
        let mut acc = Q::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * rational_power(t_half, a)? * rational_power(nu_half, b)?;
        }
        Ok(acc)
    }

    /// Every exponent in `(1/2) Z`.
    pub fn is_half_integral(&self) -> bool {
        self.terms
            .keys()
            .all(|(a, b)| (a * 2).is_integer() && (b * 2).is_integer())
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

fn rational_power(base: &Q, e: Exp) -> Result<Q> {
    let twice = e * 2;
    if !twice.is_integer() {
        return Err(Error::NonHalfIntegralExponent(e.to_string()));
    }
    let n = twice.to_integer();
    if base.is_zero() {
        return if n == 0 {
            Ok(Q::one())
        } else {
            Err(Error::DenominatorZero)
        };
    }
    let mag = num_traits::pow(base.clone(), n.unsigned_abs() as usize);
    Ok(if n < 0 { mag.recip() } else { mag })
}

impl<'a> Add<&'a ExactLaurent> for &'a ExactLaurent {
    type Output = ExactLaurent;
    fn add(self, rhs: &ExactLaurent) -> ExactLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ExactLaurent {
    type Output = ExactLaurent;
    fn add(mut self, rhs: ExactLaurent) -> ExactLaurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&ExactLaurent> for ExactLaurent {
    fn add_assign(&mut self, rhs: &ExactLaurent) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl SubAssign<&ExactLaurent> for ExactLaurent {
    fn sub_assign(&mut self, rhs: &ExactLaurent) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, -c.clone());
        }
    }
}

impl<'a> Sub<&'a ExactLaurent> for &'a ExactLaurent {
    type Output = ExactLaurent;
    fn sub(self, rhs: &ExactLaurent) -> ExactLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ExactLaurent {
    type Output = ExactLaurent;
    fn sub(mut self, rhs: ExactLaurent) -> ExactLaurent {
        self -= &rhs;
        self
    }
}

impl Neg for &ExactLaurent {
    type Output = ExactLaurent;
    fn neg(self) -> ExactLaurent {
        ExactLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for ExactLaurent {
    type Output = ExactLaurent;
    fn neg(self) -> ExactLaurent {
        -&self
    }
}

impl<'a> Mul<&'a ExactLaurent> for &'a ExactLaurent {
    type Output = ExactLaurent;
    fn mul(self, rhs: &ExactLaurent) -> ExactLaurent {
        let mut acc: HashMap<(Exp, Exp), Q> = HashMap::new();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                *acc.entry((a1 + a2, b1 + b2)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        ExactLaurent {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for ExactLaurent {
    type Output = ExactLaurent;
    fn mul(self, rhs: ExactLaurent) -> ExactLaurent {
        &self * &rhs
    }
}

impl fmt::Display for ExactLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !mag.is_one() || (a.is_zero() && b.is_zero()) {
                factors.push(mag.to_string());
            }
            for (name, e) in [("t", a), ("nu", b)] {
                if e.is_zero() {
                    continue;
                }
                if e.is_one() {
                    factors.push(name.to_string());
                } else if e.is_integer() {
                    factors.push(format!("{name}^{e}"));
                } else {
                    factors.push(format!("{name}^({e})"));
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExactLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize)]
struct TermRecord {
    et: String,
    ev: String,
    c: String,
}

impl Serialize for ExactLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(a, b), c) in &self.terms {
            seq.serialize_element(&TermRecord {
                et: a.to_string(),
                ev: b.to_string(),
                c: c.to_string(),
            })?;
        }
        seq.end()
    }
}

impl Coefficient for ExactLaurent {
    fn zero() -> Self {
        ExactLaurent::zero()
    }
    fn one() -> Self {
        ExactLaurent::one()
    }
    fn is_zero(&self) -> bool {
        ExactLaurent::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn adams(&self, d: u32) -> Self {
        ExactLaurent::adams(self, d)
    }
}

/// `[m]_x = x^{m/2} - x^{-m/2}` with `m >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracket {
    pub var: Var,
    pub m: u32,
}

impl Bracket {
    pub fn t(m: u32) -> Self {
        assert!(m >= 1, "bracket index must be positive");
        Bracket { var: Var::T, m }
    }

    pub fn nu(m: u32) -> Self {
        assert!(m >= 1, "bracket index must be positive");
        Bracket { var: Var::Nu, m }
    }

    pub fn expand(self) -> ExactLaurent {
        ExactLaurent::bracket(self.var, self.m)
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.m, self.var.name())
    }
}

/// A Laurent numerator over a multiset of brackets.
#[derive(Clone, Default)]
pub struct RationalFunction {
    num: ExactLaurent,
    den: BTreeMap<Bracket, u32>,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        ExactLaurent::one().into()
    }

    pub fn constant(c: Q) -> Self {
        ExactLaurent::constant(c).into()
    }

    /// `num / prod(den)`, reduced.
    pub fn new<I: IntoIterator<Item = Bracket>>(num: ExactLaurent, den: I) -> Self {
        let mut out = RationalFunction {
            num,
            den: BTreeMap::new(),
        };
        for b in den {
            *out.den.entry(b).or_insert(0) += 1;
        }
        out.reduce();
        out
    }

    pub fn bracket(b: Bracket) -> Self {
        b.expand().into()
    }

    /// `1 / [m]_x`.
    pub fn inv_bracket(b: Bracket) -> Self {
        Self::new(ExactLaurent::one(), [b])
    }

    /// `[a]_x / [b]_x`.
    pub fn bracket_ratio(num: Bracket, den: Bracket) -> Self {
        Self::new(num.expand(), [den])
    }

    pub fn numerator(&self) -> &ExactLaurent {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (Bracket, u32)> + '_ {
        self.den.iter().map(|(b, m)| (*b, *m))
    }

    pub fn den_is_empty(&self) -> bool {
        self.den.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels every bracket that divides the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let brackets: Vec<Bracket> = self.den.keys().copied().collect();
        for b in brackets {
            loop {
                let mult = self.den[&b];
                if mult == 0 {
                    self.den.remove(&b);
                    break;
                }
                match self.num.div_bracket(b) {
                    Some(quot) => {
                        self.num = quot;
                        *self.den.get_mut(&b).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, m| *m > 0);
    }

    /// Numerator rewritten over the denominator `target`, which must contain
    /// `self.den` as a sub-multiset.
    fn lift_to(&self, target: &BTreeMap<Bracket, u32>) -> ExactLaurent {
        let mut num = self.num.clone();
        for (b, &m) in target {
            let have = self.den.get(b).copied().unwrap_or(0);
            for _ in have..m {
                num = num.mul_bracket(*b);
            }
        }
        num
    }

    /// Rewrites every item over one bracket denominator: `items[i] =
    /// nums[i] / prod(den)`.
    pub fn common_denominator(items: &[RationalFunction]) -> (Vec<ExactLaurent>, Vec<Bracket>) {
        let mut den: BTreeMap<Bracket, u32> = BTreeMap::new();
        for it in items {
            for (b, &m) in &it.den {
                let e = den.entry(*b).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let nums = items.iter().map(|it| it.lift_to(&den)).collect();
        let flat = den
            .iter()
            .flat_map(|(b, &m)| std::iter::repeat_n(*b, m as usize))
            .collect();
        (nums, flat)
    }

    fn common_den(&self, other: &Self) -> BTreeMap<Bracket, u32> {
        let mut den = self.den.clone();
        for (b, &m) in &other.den {
            let e = den.entry(*b).or_insert(0);
            *e = (*e).max(m);
        }
        den
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_laurent(&self, p: &ExactLaurent) -> Self {
        let mut out = RationalFunction {
            num: &self.num * p,
            den: self.den.clone(),
        };
        out.reduce();
        out
    }

    pub fn mul_bracket(&self, b: Bracket) -> Self {
        let mut out = self.clone();
        match out.den.get_mut(&b) {
            Some(m) => {
                *m -= 1;
                if *m == 0 {
                    out.den.remove(&b);
                }
            }
            None => out.num = out.num.mul_bracket(b),
        }
        out
    }

    pub fn div_bracket(&self, b: Bracket) -> Self {
        let mut out = self.clone();
        if out.num.is_zero() {
            return out;
        }
        match out.num.div_bracket(b) {
            Some(quot) => out.num = quot,
            None => *out.den.entry(b).or_insert(0) += 1,
        }
        out
    }

    pub fn shift(&self, et: Exp, ev: Exp) -> Self {
        RationalFunction {
            num: self.num.shift(et, ev),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `t -> t^d`, `nu -> nu^d`; `[m]_x -> [dm]_x`.
    pub fn adams(&self, d: u32) -> Self {
        let mut out = RationalFunction {
            num: self.num.adams(d),
            den: self
                .den
                .iter()
                .map(|(b, &m)| {
                    (
                        Bracket {
                            var: b.var,
                            m: b.m * d,
                        },
                        m,
                    )
                })
                .collect(),
        };
        out.reduce();
        out
    }

    /// Negates the exponents of `var`; `[m]_x -> -[m]_x`.
    pub fn invert_variable(&self, var: Var) -> Self {
        let flips: u32 = self
            .den
            .iter()
            .filter(|(b, _)| b.var == var)
            .map(|(_, m)| *m)
            .sum();
        let mut num = self.num.invert_variable(var);
        if flips % 2 == 1 {
            num = -num;
        }
        RationalFunction {
            num,
            den: self.den.clone(),
        }
    }

    /// The Laurent polynomial equal to `self`, if there is one.
    pub fn certify_polynomial(&self) -> Result<ExactLaurent> {
        let mut r = self.clone();
        r.reduce();
        if r.den.is_empty() {
            Ok(r.num)
        } else {
            Err(Error::NotPolynomial(r.to_string()))
        }
    }

    pub fn evaluate(&self, t_half: &Q, nu_half: &Q) -> Result<Q> {
        let mut den = Q::one();
        for (b, &m) in &self.den {
            let v = b.expand().evaluate(t_half, nu_half)?;
            if v.is_zero() {
                return Err(Error::DenominatorZero);
            }
            for _ in 0..m {
                den *= &v;
            }
        }
        Ok(self.num.evaluate(t_half, nu_half)? / den)
    }

    /// Division by a Laurent polynomial in `t` that is, up to a monomial and
    /// a constant, a ratio of products of `t`-brackets of index at most
    /// `max_m`. Anything else is a closure violation.
    pub fn div_laurent_t(&self, p: &ExactLaurent, max_m: u32) -> Result<Self> {
        let (num, den) = bracket_inverse(p, max_m)?;
        let mut out = RationalFunction {
            num: &self.num * &num,
            den: self.den.clone(),
        };
        for (b, m) in den {
            *out.den.entry(b).or_insert(0) += m;
        }
        out.reduce();
        Ok(out)
    }

    pub fn is_half_integral(&self) -> bool {
        self.num.is_half_integral()
    }
}

/// Cyclotomic polynomials `Phi_1 .. Phi_max` in `t`.
fn cyclotomics(max: u32) -> Vec<ExactLaurent> {
    let mut out: Vec<ExactLaurent> = Vec::new();
    for d in 1..=max {
        let mut c = ExactLaurent::t_pow(int_exp(d as i64)) - ExactLaurent::one();
        for e in 1..d {
            if d % e == 0 {
                c = c.div_exact_t(&out[e as usize - 1]).unwrap();
            }
        }
        out.push(c);
    }
    out
}

/// Writes `1/p = num / prod(den)` with `den` a bracket multiset, where `p`
/// must be a monomial times cyclotomic factors `Phi_d(t)`, `d <= max_m`.
fn bracket_inverse(p: &ExactLaurent, max_m: u32) -> Result<(ExactLaurent, BTreeMap<Bracket, u32>)> {
    let closed = || Error::NotBracketClosed(p.to_string());
    if p.is_zero() || !p.is_free_of(Var::Nu) {
        return Err(closed());
    }
    let mut rest = p.clone();
    let mut num = ExactLaurent::one();
    let mut den: BTreeMap<Bracket, u32> = BTreeMap::new();
    for (i, phi) in cyclotomics(max_m).iter().enumerate() {
        let d = i as u32 + 1;
        // [d]_t / Phi_d, a polynomial
        let cofactor = Bracket::t(d).expand().div_exact_t(phi).unwrap();
        while let Some(qt) = rest.div_exact_t(phi) {
            rest = qt;
            num = &num * &cofactor;
            *den.entry(Bracket::t(d)).or_insert(0) += 1;
        }
    }
    if rest.num_terms() != 1 {
        return Err(closed());
    }
    let (&(et, ev), c) = rest.terms().next().unwrap();
    let num = num.shift(-et, -ev).scale(&c.recip());
    Ok((num, den))
}

impl From<ExactLaurent> for RationalFunction {
    fn from(num: ExactLaurent) -> Self {
        RationalFunction {
            num,
            den: BTreeMap::new(),
        }
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let mut out = RationalFunction {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
            out.reduce();
            return out;
        }
        let den = self.common_den(rhs);
        let mut out = RationalFunction {
            num: self.lift_to(&den) + rhs.lift_to(&den),
            den,
        };
        out.reduce();
        out
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl AddAssign<&RationalFunction> for RationalFunction {
    fn add_assign(&mut self, rhs: &RationalFunction) {
        *self = &*self + rhs;
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl SubAssign<&RationalFunction> for RationalFunction {
    fn sub_assign(&mut self, rhs: &RationalFunction) {
        *self = &*self - rhs;
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let mut den = self.den.clone();
        for (b, &m) in &rhs.den {
            *den.entry(*b).or_insert(0) += m;
        }
        let mut out = RationalFunction {
            num: &self.num * &rhs.num,
            den,
        };
        out.reduce();
        out
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

/// Equality by cross multiplication.
impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let den = self.common_den(other);
        self.lift_to(&den) == other.lift_to(&den)
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(b, &m)| {
                if m == 1 {
                    b.to_string()
                } else {
                    format!("{b}^{m}")
                }
            })
            .collect();
        write!(f, "({}) / ({})", self.num, den.join("*"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let den: Vec<(&str, u32)> = self
            .den
            .iter()
            .flat_map(|(b, &m)| std::iter::repeat_n((b.var.name(), b.m), m as usize))
            .collect();
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("num", &self.num)?;
        map.serialize_entry("den", &den)?;
        map.end()
    }
}

impl Coefficient for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn adams(&self, d: u32) -> Self {
        RationalFunction::adams(self, d)
    }
}

/// Coefficients `a_g` with `p = sum_g a_g z^{2g}`, `z^2 = t - 2 + t^{-1}`.
pub fn zsquared_decompose(p: &ExactLaurent) -> Result<Vec<Q>> {
    if !p.is_free_of(Var::Nu) {
        return Err(Error::NotPalindromic(format!("{p} depends on nu")));
    }
    if !p.is_palindromic(Var::T) {
        return Err(Error::NotPalindromic(p.to_string()));
    }
    if p.is_zero() {
        return Ok(Vec::new());
    }
    if p.terms().any(|((a, _), _)| !a.is_integer()) {
        return Err(Error::HalfIntegralTPower(p.to_string()));
    }
    let top = p.max_exp(Var::T).unwrap().to_integer();
    let z2 = ExactLaurent::bracket(Var::T, 1).pow(2);
    let mut rem = p.clone();
    let mut coeffs = vec![Q::zero(); top as usize + 1];
    for g in (0..=top).rev() {
        let c = rem.coefficient(int_exp(g), Exp::zero());
        if !c.is_zero() {
            rem -= &z2.pow(g as u32).scale(&c);
            coeffs[g as usize] = c;
        }
    }
    debug_assert!(rem.is_zero());
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// `gcd` on machine integers, used for coprimality checks.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn th() -> Exp {
        exp(1, 2)
    }

    fn bt(m: u32) -> Bracket {
        Bracket::t(m)
    }

    fn bv(m: u32) -> Bracket {
        Bracket::nu(m)
    }

    #[test]
    fn bracket_cancels_itself() {
        let x = RationalFunction::new(ExactLaurent::bracket(Var::T, 1), [bt(1)]);
        assert_eq!(x, RationalFunction::one());
        assert!(x.den_is_empty());
    }

    #[test]
    fn univariate_bracket_division() {
        let x = RationalFunction::bracket_ratio(bv(2), bv(1));
        let expected = ExactLaurent::nu_pow(th()) + ExactLaurent::nu_pow(-th());
        assert_eq!(x.certify_polynomial().unwrap(), expected);

        let x = RationalFunction::bracket_ratio(bt(3), bt(1));
        let expected = ExactLaurent::t_pow(int_exp(1))
            + ExactLaurent::one()
            + ExactLaurent::t_pow(int_exp(-1));
        assert_eq!(x.certify_polynomial().unwrap(), expected);
    }

    #[test]
    fn certify_rejects_non_polynomials() {
        let x = RationalFunction::bracket_ratio(bv(1), bt(1));
        assert!(matches!(
            x.certify_polynomial(),
            Err(Error::NotPolynomial(_))
        ));
        let x = RationalFunction::new(bv(1).expand() * bt(2).expand(), [bt(2)]);
        assert_eq!(x.certify_polynomial().unwrap(), bv(1).expand());
    }

    #[test]
    fn adams_examples() {
        let x = ExactLaurent::t_pow(th()) + ExactLaurent::nu_pow(int_exp(1));
        assert_eq!(x.adams(1), x);
        assert_eq!(
            x.adams(2),
            ExactLaurent::t_pow(int_exp(1)) + ExactLaurent::nu_pow(int_exp(2))
        );
        assert_eq!(bt(1).expand().adams(3), bt(3).expand());
        let r = RationalFunction::inv_bracket(bt(1));
        assert_eq!(r.adams(3), RationalFunction::inv_bracket(bt(3)));
    }

    #[test]
    fn zsquared_examples() {
        assert_eq!(
            zsquared_decompose(&ExactLaurent::one()).unwrap(),
            vec![q(1)]
        );
        let z2 = ExactLaurent::t_pow(int_exp(1)) - ExactLaurent::constant(q(2))
            + ExactLaurent::t_pow(int_exp(-1));
        assert_eq!(zsquared_decompose(&z2).unwrap(), vec![q(0), q(1)]);
        let p = ExactLaurent::t_pow(int_exp(1)) + ExactLaurent::t_pow(int_exp(-1));
        assert_eq!(zsquared_decompose(&p).unwrap(), vec![q(2), q(1)]);
        let bad = ExactLaurent::t_pow(int_exp(3)) + ExactLaurent::t_pow(int_exp(1)).scale(&q(2));
        assert!(matches!(
            zsquared_decompose(&bad),
            Err(Error::NotPalindromic(_))
        ));
        let half = ExactLaurent::t_pow(th()) + ExactLaurent::t_pow(-th());
        assert!(matches!(
            zsquared_decompose(&half),
            Err(Error::HalfIntegralTPower(_))
        ));
    }

    #[test]
    fn inversion_and_palindromes() {
        assert_eq!(
            ExactLaurent::t_pow(th()).invert_variable(Var::T),
            ExactLaurent::t_pow(-th())
        );
        let p = ExactLaurent::t_pow(int_exp(1))
            + ExactLaurent::one()
            + ExactLaurent::t_pow(int_exp(-1));
        assert!(p.is_palindromic(Var::T));
        let p = ExactLaurent::t_pow(int_exp(3)) + ExactLaurent::t_pow(int_exp(1)).scale(&q(2));
        assert!(!p.is_palindromic(Var::T));
    }

    #[test]
    fn evaluation() {
        let two = q(2);
        let one = q(1);
        assert_eq!(
            ExactLaurent::t_pow(th()).evaluate(&two, &one).unwrap(),
            q(2)
        );
        assert_eq!(
            RationalFunction::bracket(bt(2))
                .evaluate(&two, &one)
                .unwrap(),
            q(4) - q_frac(1, 4)
        );
        assert_eq!(
            RationalFunction::inv_bracket(bt(1)).evaluate(&one, &one),
            Err(Error::DenominatorZero)
        );
        assert!(matches!(
            ExactLaurent::t_pow(exp(1, 3)).evaluate(&two, &one),
            Err(Error::NonHalfIntegralExponent(_))
        ));
    }

    #[test]
    fn long_division_by_general_divisor() {
        let a = ExactLaurent::t_pow(int_exp(2)) + ExactLaurent::nu_pow(th()).scale(&q(3));
        let d = ExactLaurent::t_pow(th()) + ExactLaurent::constant(q(5));
        let prod = &a * &d;
        assert_eq!(prod.div_exact_t(&d).unwrap(), a);
        assert!((&prod + &ExactLaurent::one()).div_exact_t(&d).is_none());
    }

    #[test]
    fn inverse_of_bracket_ratio() {
        // [2]/[1] = t^{1/2} + t^{-1/2}
        let p = bt(2).expand().div_bracket(bt(1)).unwrap();
        let r = RationalFunction::one().div_laurent_t(&p, 2).unwrap();
        assert_eq!(r, RationalFunction::bracket_ratio(bt(1), bt(2)));
        assert!(RationalFunction::one()
            .div_laurent_t(
                &(ExactLaurent::t_pow(int_exp(1)) + ExactLaurent::constant(q(3))),
                4
            )
            .is_err());
    }

    #[test]
    fn serialization_is_canonical() {
        let x = RationalFunction::bracket_ratio(bv(1), bt(1));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"num":[{"et":"0","ev":"-1/2","c":"-1"},{"et":"0","ev":"1/2","c":"1"}],"den":[["t",1]]}"#
        );
    }

    fn arb_laurent() -> impl Strategy<Value = ExactLaurent> {
        prop::collection::vec((-4i64..5, -3i64..4, -5i64..6), 0..5).prop_map(|v| {
            ExactLaurent::from_terms(
                v.into_iter()
                    .map(|(a, b, c)| ((exp(a, 2), exp(b, 2)), q(c))),
            )
        })
    }

    fn arb_brackets() -> impl Strategy<Value = Vec<Bracket>> {
        prop::collection::vec((any::<bool>(), 1u32..4), 0..3).prop_map(|v| {
            v.into_iter()
                .map(|(is_t, m)| if is_t { bt(m) } else { bv(m) })
                .collect()
        })
    }

    fn arb_rf() -> impl Strategy<Value = RationalFunction> {
        (arb_laurent(), arb_brackets()).prop_map(|(n, d)| RationalFunction::new(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a + &(-&a)).is_zero());
        }

        #[test]
        fn certify_undoes_bracket_products(a in arb_laurent(), bs in arb_brackets()) {
            let mut prod = a.clone();
            for b in &bs {
                prod = prod.mul_bracket(*b);
            }
            let r = RationalFunction::new(prod, bs.clone());
            prop_assert_eq!(r.certify_polynomial().unwrap(), a);
        }

        #[test]
        fn zsquared_round_trip(coeffs in prop::collection::vec(-5i64..6, 1..5)) {
            let z2 = ExactLaurent::bracket(Var::T, 1).pow(2);
            let mut p = ExactLaurent::zero();
            for (g, c) in coeffs.iter().enumerate() {
                p += &z2.pow(g as u32).scale(&q(*c));
            }
            let back = zsquared_decompose(&p).unwrap();
            let mut again = ExactLaurent::zero();
            for (g, c) in back.iter().enumerate() {
                again += &z2.pow(g as u32).scale(c);
            }
            prop_assert_eq!(again, p);
        }

        #[test]
        fn adams_commutes_with_evaluation(
            a in arb_rf(), d in 1u32..4, tn in 2i64..5, vn in 2i64..5
        ) {
            let t0 = q_frac(tn, 3);
            let v0 = q_frac(vn, 5);
            let lhs = a.adams(d).evaluate(&t0, &v0);
            let rhs = a.evaluate(&num_traits::pow(t0.clone(), d as usize), &num_traits::pow(v0.clone(), d as usize));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
