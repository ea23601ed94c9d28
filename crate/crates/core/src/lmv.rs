//! The integrality structure of torus link invariants: generating series,
//! plethystic logarithm, the reformulated invariants `f` and `f-hat`, the
//! integers `N_{mu,g,Q}` and the `g^lambda` coefficients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::combinatorics::{add_partitions, stretch, Partition, PartitionTuple};
use crate::error::{Error, Result};
use crate::linalg::solve_rational;
use crate::poly::{
    int_exp, q, zsquared_decompose, Bracket, Coefficient, ExactLaurent, Exp, RationalFunction, Var,
    Q,
};
use crate::symchar::character_table;
use crate::symfunc::{
    m_matrix_inverse, p_principal, s_lambda_mu_kpoint, s_nu_kpoint, schur_to_powersum,
};
use crate::torus::{colored_homfly_torus, sstar_expansion, TorusLinkSpec};

/// `mu(n)`.
pub fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

/// A polynomial in the power sums `p_sigma(z)` of a formal alphabet `z`
/// standing in for the principal specialization, with coefficients in `t`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PowerSumPoly {
    terms: BTreeMap<Partition, RationalFunction>,
}

impl PowerSumPoly {
    pub fn monomial(sigma: Partition, c: RationalFunction) -> Self {
        let mut out = Self::default();
        out.add_term(sigma, c);
        out
    }

    pub fn add_term(&mut self, sigma: Partition, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(sigma) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, sigma: &Partition) -> RationalFunction {
        self.terms
            .get(sigma)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    /// `p_m(z) -> [m]_nu / [m]_t`.
    pub fn specialize(&self) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for (sigma, c) in &self.terms {
            let mut term = c.clone();
            for &m in sigma.parts() {
                term = &term * &p_principal(m);
            }
            acc += &term;
        }
        acc
    }

    fn map_coeffs(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        let mut out = Self::default();
        for (s, c) in &self.terms {
            out.add_term(s.clone(), f(c));
        }
        out
    }
}

impl Coefficient for PowerSumPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::monomial(Partition::empty(), RationalFunction::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), -c);
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                out.add_term(add_partitions(s1, s2), c1 * c2);
            }
        }
        out
    }
    fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        self.map_coeffs(|x| x.scale(c))
    }
    fn adams(&self, d: u32) -> Self {
        let mut out = Self::default();
        for (s, c) in &self.terms {
            out.add_term(stretch(s, d), c.adams(d));
        }
        out
    }
}

/// Truncated series in the power sums of `l` alphabets; the key holds one
/// power-sum index per alphabet.
#[derive(Clone, Debug)]
pub struct SymSeries<C> {
    caps: Vec<u32>,
    total_cap: u32,
    terms: BTreeMap<Vec<Partition>, C>,
}

impl<C: Coefficient> SymSeries<C> {
    pub fn zero(caps: Vec<u32>, total_cap: u32) -> Self {
        SymSeries {
            caps,
            total_cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(caps: Vec<u32>, total_cap: u32) -> Self {
        let mut out = Self::zero(caps, total_cap);
        let key = vec![Partition::empty(); out.caps.len()];
        out.terms.insert(key, C::one());
        out
    }

    pub fn components(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn total_cap(&self) -> u32 {
        self.total_cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Partition>, &C)> {
        self.terms.iter()
    }

    pub fn get(&self, key: &[Partition]) -> Option<&C> {
        self.terms.get(key)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn fits(&self, key: &[Partition]) -> bool {
        let mut total = 0;
        for (p, &cap) in key.iter().zip(&self.caps) {
            if p.size() > cap {
                return false;
            }
            total += p.size();
        }
        total <= self.total_cap
    }

    pub fn add_term(&mut self, key: Vec<Partition>, c: C) {
        if c.is_zero() || !self.fits(&key) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().plus(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.scaled(&q(-1)));
        }
        out
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.caps.clone(), self.total_cap);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x.scaled(c));
        }
        out
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.caps.clone(), self.total_cap);
        for (k1, c1) in &self.terms {
            let d1: u32 = k1.iter().map(Partition::size).sum();
            for (k2, c2) in &other.terms {
                let d2: u32 = k2.iter().map(Partition::size).sum();
                if d1 + d2 > self.total_cap {
                    continue;
                }
                let key: Vec<Partition> = k1
                    .iter()
                    .zip(k2)
                    .map(|(a, b)| add_partitions(a, b))
                    .collect();
                if out.fits(&key) {
                    out.add_term(key, c1.times(c2));
                }
            }
        }
        out
    }

    /// `x_i -> x_i^d` on every alphabet together with the coefficient map.
    pub fn adams(&self, d: u32) -> Self {
        let mut out = Self::zero(self.caps.clone(), self.total_cap);
        for (k, c) in &self.terms {
            let key: Vec<Partition> = k.iter().map(|p| stretch(p, d)).collect();
            if out.fits(&key) {
                out.add_term(key, c.adams(d));
            }
        }
        out
    }

    fn constant_key(&self) -> Vec<Partition> {
        vec![Partition::empty(); self.caps.len()]
    }

    /// `log(1 + y) = sum_j (-1)^{j+1} y^j / j`; the constant term must be 1.
    pub fn log(&self) -> Self {
        let key = self.constant_key();
        let c0 = self.terms.get(&key).cloned().unwrap_or_else(C::zero);
        assert!(c0.minus(&C::one()).is_zero(), "log needs constant term 1");
        let mut y = self.clone();
        y.terms.remove(&key);
        let mut out = Self::zero(self.caps.clone(), self.total_cap);
        let mut power = y.clone();
        for j in 1..=self.total_cap as i64 {
            if power.is_empty() {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            out = out.plus(&power.scaled(&crate::poly::q_frac(sign, j)));
            power = power.times(&y);
        }
        out
    }

    /// `exp(x)`; `x` must have no constant term.
    pub fn exp(&self) -> Self {
        assert!(
            !self.terms.contains_key(&self.constant_key()),
            "exp needs zero constant term"
        );
        let mut out = Self::one(self.caps.clone(), self.total_cap);
        let mut term = out.clone();
        for j in 1..=self.total_cap as i64 {
            term = term.times(self).scaled(&crate::poly::q_frac(1, j));
            if term.is_empty() {
                break;
            }
            out = out.plus(&term);
        }
        out
    }

    /// `F` with `log Z = sum_d (1/d) adams_d(F)`, by Moebius inversion.
    pub fn plethystic_log(&self) -> Self {
        let l = self.log();
        let mut out = Self::zero(self.caps.clone(), self.total_cap);
        for d in 1..=self.total_cap.max(1) {
            let m = mobius(d);
            if m != 0 {
                out = out.plus(&l.adams(d).scaled(&crate::poly::q_frac(m, d as i64)));
            }
        }
        out
    }

    /// `exp(sum_d (1/d) adams_d(F))`.
    pub fn plethystic_exp(&self) -> Self {
        let mut x = Self::zero(self.caps.clone(), self.total_cap);
        for d in 1..=self.total_cap.max(1) {
            x = x.plus(&self.adams(d).scaled(&crate::poly::q_frac(1, d as i64)));
        }
        x.exp()
    }

    /// Coefficients in the product Schur basis, all nonconstant degrees.
    pub fn schur_coefficients(&self) -> BTreeMap<PartitionTuple, C> {
        let mut out: BTreeMap<PartitionTuple, C> = BTreeMap::new();
        for (key, c) in &self.terms {
            let degrees: Vec<u32> = key.iter().map(Partition::size).collect();
            if degrees.iter().all(|&d| d == 0) {
                continue;
            }
            for lam in PartitionTuple::all_with_degrees(&degrees) {
                let w: i64 = lam
                    .entries()
                    .iter()
                    .zip(key)
                    .map(|(l, tau)| character_table(l.size()).value(l, tau))
                    .product();
                if w == 0 {
                    continue;
                }
                let e = out.entry(lam).or_insert_with(C::zero);
                *e = e.plus(&c.scaled(&q(w)));
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

impl<C: Coefficient + PartialEq> PartialEq for SymSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.caps == other.caps && self.total_cap == other.total_cap && self.terms == other.terms
    }
}

/// Every degree vector bounded by `caps` and `total`.
pub fn degree_vectors(caps: &[u32], total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &c in caps {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=c).map(move |d| {
                    let mut v = prefix.clone();
                    v.push(d);
                    v
                })
            })
            .filter(|v| v.iter().sum::<u32>() <= total)
            .collect();
    }
    out
}

/// `Z = sum W_{lambda-vector} prod_i s_{lambda^i}(x_i)` with `invariant`
/// supplying `W` of the sublink on the nonempty colors.
pub fn build_z_with<C, F>(
    link: &TorusLinkSpec,
    caps: &[u32],
    total: u32,
    invariant: F,
) -> Result<SymSeries<C>>
where
    C: Coefficient,
    F: Fn(&TorusLinkSpec, &PartitionTuple) -> Result<C> + Sync,
{
    if caps.len() != link.l as usize {
        return Err(Error::InvalidColors(format!(
            "{} caps for {} components",
            caps.len(),
            link.l
        )));
    }
    let tuples: Vec<PartitionTuple> = degree_vectors(caps, total)
        .iter()
        .flat_map(|d| PartitionTuple::all_with_degrees(d))
        .collect();
    let values: Vec<C> = tuples
        .par_iter()
        .map(|lam| {
            let nonempty: Vec<Partition> = lam
                .entries()
                .iter()
                .filter(|p| !p.is_empty())
                .cloned()
                .collect();
            if nonempty.is_empty() {
                return Ok(C::one());
            }
            let sub = link.sublink(nonempty.len() as u32);
            invariant(&sub, &PartitionTuple::new(nonempty))
        })
        .collect::<Result<_>>()?;
    let mut z = SymSeries::zero(caps.to_vec(), total);
    for (lam, w) in tuples.iter().zip(values) {
        let mut keys: Vec<(Vec<Partition>, Q)> = vec![(Vec::new(), Q::one())];
        for l in lam.entries() {
            let ps = schur_to_powersum(l);
            keys = keys
                .into_iter()
                .flat_map(|(prefix, wt)| {
                    ps.iter().map(move |(tau, c)| {
                        let mut k = prefix.clone();
                        k.push(tau.clone());
                        (k, &wt * c)
                    })
                })
                .collect();
        }
        for (key, wt) in keys {
            z.add_term(key, w.scaled(&wt));
        }
    }
    Ok(z)
}

/// `Z` with exact invariants as coefficients.
pub fn build_z(
    link: &TorusLinkSpec,
    caps: &[u32],
    total: u32,
) -> Result<SymSeries<RationalFunction>> {
    build_z_with(link, caps, total, |sub, colors| {
        Ok(colored_homfly_torus(sub, colors)?.value)
    })
}

/// The invariant with the principal specialization kept formal and the
/// `nu` prefactor, which only depends on the degree, dropped.
pub fn lifted_invariant(link: &TorusLinkSpec, colors: &PartitionTuple) -> Result<PowerSumPoly> {
    let (_, terms) = sstar_expansion(link, colors)?;
    let mut out = PowerSumPoly::default();
    for term in terms {
        let mono = ExactLaurent::t_pow(term.t_exp);
        for (sigma, w) in schur_to_powersum(&term.lambda) {
            out.add_term(sigma, RationalFunction::from(mono.scale(&(w * q(term.c)))));
        }
    }
    Ok(out)
}

pub fn build_z_lifted(
    link: &TorusLinkSpec,
    caps: &[u32],
    total: u32,
) -> Result<SymSeries<PowerSumPoly>> {
    build_z_with(link, caps, total, lifted_invariant)
}

/// `f` or `f-hat` indexed by color tuples.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RefinedTable {
    pub entries: BTreeMap<PartitionTuple, RationalFunction>,
}

impl RefinedTable {
    pub fn get(&self, key: &PartitionTuple) -> RationalFunction {
        self.entries
            .get(key)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }
}

/// `f_{lambda-vector}` for every nonconstant degree vector within the caps.
pub fn plethystic_log(z: &SymSeries<RationalFunction>) -> RefinedTable {
    RefinedTable {
        entries: z.plethystic_log().schur_coefficients(),
    }
}

fn m_inverse_cached(cache: &mut HashMap<u32, Vec<Vec<RationalFunction>>>, n: u32) -> Result<()> {
    if let std::collections::hash_map::Entry::Vacant(slot) = cache.entry(n) {
        slot.insert(if n == 0 {
            vec![vec![RationalFunction::one()]]
        } else {
            m_matrix_inverse(n)?
        });
    }
    Ok(())
}

/// Solves `f_lambda = sum_mu f-hat_mu prod_i M_{lambda^i mu^i}` for `f-hat`.
pub fn fhat_from_f(f: &RefinedTable) -> Result<RefinedTable> {
    let mut by_degree: BTreeMap<Vec<u32>, Vec<(&PartitionTuple, &RationalFunction)>> =
        BTreeMap::new();
    for (k, v) in &f.entries {
        by_degree.entry(k.degrees()).or_default().push((k, v));
    }
    let mut inv = HashMap::new();
    for d in by_degree.keys().flatten() {
        m_inverse_cached(&mut inv, *d)?;
    }
    let mut entries = BTreeMap::new();
    for (degrees, rows) in &by_degree {
        let results: Vec<(PartitionTuple, RationalFunction)> =
            PartitionTuple::all_with_degrees(degrees)
                .into_par_iter()
                .map(|mu| {
                    let mut acc = RationalFunction::zero();
                    for (lam, val) in rows {
                        let mut w = RationalFunction::one();
                        for (m, l) in mu.entries().iter().zip(lam.entries()) {
                            let table = character_table(m.size());
                            let x = &inv[&m.size()][table.index_of(m).unwrap()]
                                [table.index_of(l).unwrap()];
                            w = &w * x;
                            if w.is_zero() {
                                break;
                            }
                        }
                        if !w.is_zero() {
                            acc += &(&w * *val);
                        }
                    }
                    (mu, acc)
                })
                .collect();
        for (mu, v) in results {
            if !v.is_zero() {
                entries.insert(mu, v);
            }
        }
    }
    Ok(RefinedTable { entries })
}

/// Applies the `M` matrices: the inverse of `fhat_from_f`.
pub fn f_from_fhat(fhat: &RefinedTable) -> RefinedTable {
    let mut entries: BTreeMap<PartitionTuple, RationalFunction> = BTreeMap::new();
    let mut mats: HashMap<u32, Vec<Vec<RationalFunction>>> = HashMap::new();
    for (mu, val) in &fhat.entries {
        for lam in PartitionTuple::all_with_degrees(&mu.degrees()) {
            let mut w = RationalFunction::one();
            for (l, m) in lam.entries().iter().zip(mu.entries()) {
                let n = m.size();
                let mat = mats.entry(n).or_insert_with(|| {
                    if n == 0 {
                        vec![vec![RationalFunction::one()]]
                    } else {
                        crate::symfunc::m_matrix(n)
                    }
                });
                let table = character_table(n);
                w = &w * &mat[table.index_of(l).unwrap()][table.index_of(m).unwrap()];
            }
            let e = entries.entry(lam).or_insert_with(RationalFunction::zero);
            *e += &(&w * val);
        }
    }
    entries.retain(|_, v| !v.is_zero());
    RefinedTable { entries }
}

fn ser_display<T: fmt::Display, S: Serializer>(
    x: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// A conjecture violation, kept as data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Finding {
    pub link: TorusLinkSpec,
    pub tuple: PartitionTuple,
    pub stage: String,
    pub error: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BpsEntry {
    pub mu: PartitionTuple,
    pub g: u32,
    #[serde(rename = "Q", serialize_with = "ser_display")]
    pub q: Exp,
    #[serde(rename = "N", serialize_with = "ser_display")]
    pub n: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Integer,
    HalfInteger,
    Mixed,
    Empty,
}

fn parity_of(qs: &BTreeSet<Exp>) -> Parity {
    let ints = qs.iter().filter(|e| e.is_integer()).count();
    match (ints, qs.len()) {
        (_, 0) => Parity::Empty,
        (i, n) if i == n => Parity::Integer,
        (0, _) => Parity::HalfInteger,
        _ => Parity::Mixed,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BpsTable {
    pub entries: Vec<BpsEntry>,
    pub all_integer: bool,
    /// Every tuple has only integral or only half-integral `Q`.
    pub q_parity_uniform: bool,
    /// The parity pattern over all tuples together.
    pub global_parity: Parity,
    pub findings: Vec<Finding>,
}

impl BpsTable {
    pub fn passes(&self) -> bool {
        self.all_integer && self.q_parity_uniform && self.findings.is_empty()
    }

    pub fn get(&self, mu: &PartitionTuple, g: u32, qv: Exp) -> Q {
        self.entries
            .iter()
            .find(|e| &e.mu == mu && e.g == g && e.q == qv)
            .map_or_else(Q::zero, |e| e.n.clone())
    }
}

/// Expands `f-hat (t^{1/2} - t^{-1/2})^{2-l}` in `z^{2g} nu^Q`, with `l` the
/// number of nonempty colors.
pub fn extract_n(fhat: &RefinedTable, link: &TorusLinkSpec) -> BpsTable {
    let mut entries = Vec::new();
    let mut findings = Vec::new();
    let mut all_integer = true;
    let mut uniform = true;
    let mut global: BTreeSet<Exp> = BTreeSet::new();
    for (mu, val) in &fhat.entries {
        let l_eff = mu.entries().iter().filter(|p| !p.is_empty()).count() as i64;
        let mut scaled = val.clone();
        for _ in 0..(2 - l_eff).max(0) {
            scaled = scaled.mul_bracket(Bracket::t(1));
        }
        for _ in 0..(l_eff - 2).max(0) {
            scaled = scaled.div_bracket(Bracket::t(1));
        }
        let finding = |stage: &str, e: &Error, w: String| Finding {
            link: *link,
            tuple: mu.clone(),
            stage: stage.to_string(),
            error: e.to_string(),
            witness: w,
        };
        let poly = match scaled.certify_polynomial() {
            Ok(p) => p,
            Err(e) => {
                findings.push(finding("certify", &e, scaled.to_string()));
                continue;
            }
        };
        let mut qs = BTreeSet::new();
        for (qv, tpart) in poly.split_by(Var::Nu) {
            match zsquared_decompose(&tpart) {
                Ok(coeffs) => {
                    for (g, n) in coeffs.into_iter().enumerate() {
                        if n.is_zero() {
                            continue;
                        }
                        all_integer &= n.is_integer();
                        entries.push(BpsEntry {
                            mu: mu.clone(),
                            g: g as u32,
                            q: qv,
                            n,
                        });
                    }
                    qs.insert(qv);
                }
                Err(e) => findings.push(finding("z-expansion", &e, tpart.to_string())),
            }
        }
        if parity_of(&qs) == Parity::Mixed {
            uniform = false;
            let list: Vec<String> = qs.iter().map(|e| e.to_string()).collect();
            findings.push(Finding {
                link: *link,
                tuple: mu.clone(),
                stage: "q-parity".to_string(),
                error: "both integral and half-integral powers of nu".to_string(),
                witness: list.join(", "),
            });
        }
        global.extend(qs);
    }
    BpsTable {
        entries,
        all_integer,
        q_parity_uniform: uniform,
        global_parity: parity_of(&global),
        findings,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LmvReport {
    pub link: TorusLinkSpec,
    pub caps: Vec<u32>,
    pub total_cap: u32,
    pub f: RefinedTable,
    pub fhat: RefinedTable,
    pub bps: BpsTable,
}

/// The whole integrality pipeline up to the given degree caps.
pub fn lmv_report(link: &TorusLinkSpec, caps: &[u32], total: u32) -> Result<LmvReport> {
    let z = build_z(link, caps, total)?;
    let f = plethystic_log(&z);
    let fhat = fhat_from_f(&f)?;
    let bps = extract_n(&fhat, link);
    Ok(LmvReport {
        link: *link,
        caps: caps.to_vec(),
        total_cap: total,
        f,
        fhat,
        bps,
    })
}

/// A Laurent polynomial in `u` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentU {
    coeffs: BTreeMap<i64, Q>,
}

impl LaurentU {
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut out = Self::default();
        for &(e, c) in pairs {
            *out.coeffs.entry(e).or_insert_with(Q::zero) += q(c);
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Q> {
        &self.coeffs
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// `u -> t^{-k}`.
    pub fn to_t(&self, k: i64) -> ExactLaurent {
        ExactLaurent::from_terms(
            self.coeffs
                .iter()
                .map(|(&e, c)| ((int_exp(-k * e), int_exp(0)), c.clone())),
        )
    }
}

impl fmt::Display for LaurentU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = match e {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentU {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The `g^lambda` coefficients of one degree vector, in `u = q^{2k} = t^{-k}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GTable {
    pub link: TorusLinkSpec,
    pub sizes: Vec<u32>,
    pub entries: BTreeMap<PartitionTuple, BTreeMap<Partition, LaurentU>>,
    /// Every entry is a Laurent polynomial in `u` with integer coefficients.
    pub integral: bool,
    pub palindromic: bool,
    pub findings: Vec<Finding>,
}

impl GTable {
    pub fn get(&self, mu: &PartitionTuple, lambda: &Partition) -> LaurentU {
        self.entries
            .get(mu)
            .and_then(|m| m.get(lambda))
            .cloned()
            .unwrap_or_default()
    }

    pub fn passes(&self) -> bool {
        self.integral && self.palindromic && self.findings.is_empty()
    }
}

fn neg_bracket_product(parts: &[u32], k: u32) -> RationalFunction {
    let den: Vec<Bracket> = parts.iter().map(|&m| Bracket::t(k * m)).collect();
    let sign = if parts.len().is_multiple_of(2) { 1 } else { -1 };
    RationalFunction::new(ExactLaurent::constant(q(sign)), den)
}

/// Solves for the `g^lambda` at fixed positive `k`.
///
/// The principal alphabet is kept formal, so the `nu`-side identity becomes
/// an identity in the power sums `p_sigma(z)`, `sigma |- rn`; that system is
/// square and invertible, while its specialization is not.
pub fn extract_g(link: &TorusLinkSpec, sizes: &[u32]) -> Result<GTable> {
    if link.k < 1 {
        return Err(Error::InvalidLink(format!(
            "k = {} must be positive here",
            link.k
        )));
    }
    let k = link.k as u32;
    let n: u32 = sizes.iter().sum();
    if n == 0 {
        return Err(Error::InvalidColors("sizes must not all be zero".into()));
    }
    let z = build_z_lifted(link, sizes, n)?;
    let f = z.plethystic_log();
    let rn = link.r * n;
    let table = character_table(rn);
    let sigmas = table.partitions().to_vec();
    let matrix: Vec<Vec<Q>> = sigmas
        .iter()
        .map(|s| {
            table
                .partitions()
                .iter()
                .map(|lam| s.inv_z() * q(table.value(lam, s)))
                .collect()
        })
        .collect();
    let k_squared = RationalFunction::bracket(Bracket::t(k)).pow(2);
    let keys: Vec<&Vec<Partition>> = f
        .terms()
        .map(|(key, _)| key)
        .filter(|key| key.iter().map(Partition::size).eq(sizes.iter().copied()))
        .collect();

    let tuples = PartitionTuple::all_with_degrees(sizes);
    let solved: Vec<(PartitionTuple, Result<Vec<RationalFunction>>)> = tuples
        .into_par_iter()
        .map(|mu| {
            let mut g_tilde = PowerSumPoly::default();
            for key in &keys {
                let mut w = RationalFunction::one();
                for (m, tau) in mu.entries().iter().zip(key.iter()) {
                    let chi = character_table(m.size()).value(m, tau);
                    w = (&w * &neg_bracket_product(tau.parts(), k)).scale(&q(chi));
                }
                if w.is_zero() {
                    continue;
                }
                let term = f.get(key).unwrap();
                for (s, c) in term.terms() {
                    g_tilde.add_term(s.clone(), c * &w);
                }
            }
            let rhs: Vec<RationalFunction> = sigmas
                .iter()
                .map(|s| &g_tilde.coefficient(s) * &neg_bracket_product(s.parts(), k))
                .collect();
            let sol =
                solve_rational(&matrix, &rhs).map(|ys| ys.iter().map(|y| y * &k_squared).collect());
            (mu, sol)
        })
        .collect();

    let mut entries = BTreeMap::new();
    let mut findings = Vec::new();
    let mut integral = true;
    let mut palindromic = true;
    for (mu, sol) in solved {
        let sol = sol?;
        let mut row = BTreeMap::new();
        for (lam, g) in sigmas.iter().zip(sol) {
            if g.is_zero() {
                continue;
            }
            let finding = |stage: &str, e: Error, w: String| Finding {
                link: *link,
                tuple: mu.clone(),
                stage: format!("{stage} at {lam}"),
                error: e.to_string(),
                witness: w,
            };
            let poly = match g.certify_polynomial() {
                Ok(p) => p,
                Err(_) => {
                    integral = false;
                    findings.push(finding(
                        "g-laurent",
                        Error::NonLaurent(g.to_string()),
                        g.to_string(),
                    ));
                    continue;
                }
            };
            let mut u = LaurentU::default();
            let mut ok = poly.is_free_of(Var::Nu);
            for ((et, _), c) in poly.terms() {
                let e = *et / int_exp(-(k as i64));
                if !e.is_integer() {
                    ok = false;
                    break;
                }
                u.coeffs.insert(e.to_integer(), c.clone());
            }
            if !ok {
                integral = false;
                findings.push(finding(
                    "g-u-power",
                    Error::NonLaurent(poly.to_string()),
                    poly.to_string(),
                ));
                continue;
            }
            if !u.is_integral() {
                integral = false;
                findings.push(finding(
                    "g-integral",
                    Error::NonLaurent(u.to_string()),
                    u.to_string(),
                ));
            }
            if !u.is_palindromic() {
                palindromic = false;
                findings.push(finding(
                    "g-palindrome",
                    Error::NotPalindromic(u.to_string()),
                    u.to_string(),
                ));
            }
            row.insert(lam.clone(), u);
        }
        if !row.is_empty() {
            entries.insert(mu, row);
        }
    }
    Ok(GTable {
        link: *link,
        sizes: sizes.to_vec(),
        entries,
        integral,
        palindromic,
        findings,
    })
}

/// `f-hat_mu` rebuilt from a g-table through the `k`-point alphabet.
pub fn fhat_from_g(table: &GTable, mu: &PartitionTuple) -> RationalFunction {
    let link = table.link;
    let k = link.k as u32;
    let n: u32 = mu.total_size();
    let l_eff = mu.entries().iter().filter(|p| !p.is_empty()).count() as i64;
    let mut acc = RationalFunction::zero();
    for (lam_vec, row) in &table.entries {
        let mut s = RationalFunction::one();
        for (l, m) in lam_vec.entries().iter().zip(mu.entries()) {
            if m.is_empty() {
                continue;
            }
            s = &s * &s_lambda_mu_kpoint(l, m, k);
        }
        if s.is_zero() {
            continue;
        }
        let mut inner = RationalFunction::zero();
        for (lam, g) in row {
            inner += &(&RationalFunction::from(g.to_t(link.k)) * &s_nu_kpoint(lam, k));
        }
        acc += &(&s * &inner);
    }
    // (t^{-1/2} - t^{1/2})^{l-2} ([k]/[1])^{-2} nu^{k(r-1)n/2}
    let mut out = acc.shift(
        int_exp(0),
        crate::poly::exp(link.k * (link.r as i64 - 1) * n as i64, 2),
    );
    for _ in 0..2 {
        out = out.mul_bracket(Bracket::t(1)).div_bracket(Bracket::t(k));
    }
    for _ in 0..(l_eff - 2).max(0) {
        out = -out.mul_bracket(Bracket::t(1));
    }
    for _ in 0..(2 - l_eff).max(0) {
        out = -out.div_bracket(Bracket::t(1));
    }
    out
}

/// Rebuilds `f-hat` from the g-table and compares with the direct route.
pub fn fhat_vs_g_consistency(table: &GTable) -> Result<bool> {
    let sizes = &table.sizes;
    let total = sizes.iter().sum();
    let f = plethystic_log(&build_z(&table.link, sizes, total)?);
    let fhat = fhat_from_f(&f)?;
    Ok(PartitionTuple::all_with_degrees(sizes)
        .iter()
        .all(|mu| fhat_from_g(table, mu) == fhat.get(mu)))
}

/// All `g` tables of a knot for sizes `1..=max` (or of a link for every
/// size vector with total at most `max`).
pub fn g_tables(link: &TorusLinkSpec, max: u32) -> Result<Vec<GTable>> {
    let caps = vec![max; link.l as usize];
    degree_vectors(&caps, max)
        .into_iter()
        .filter(|v| v.iter().sum::<u32>() > 0)
        .map(|v| extract_g(link, &v))
        .collect()
}

/// Canonical `u`-polynomial parse used by golden data: `[(exp, coeff)]`.
pub fn upoly(pairs: &[(i64, i64)]) -> LaurentU {
    LaurentU::from_pairs(pairs)
}
