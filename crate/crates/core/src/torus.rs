//! Colored HOMFLY invariants of torus links `T(rl, kl)` and their HOMFLY
//! specialization.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::combinatorics::{kappa, Partition, PartitionTuple};
use crate::error::{Error, Result};
use crate::poly::{exp, int_exp, Bracket, Exp, RationalFunction};
use crate::symfunc::{s_star_hook, stretched_lr};

/// `T(rl, kl)`: `l` parallel copies of the `(r, k)` torus knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorusLinkSpec {
    pub r: u32,
    pub k: i64,
    pub l: u32,
}

impl TorusLinkSpec {
    /// `k = 0` is accepted only with `r = 1`, where it is the `l`-component
    /// unlink; otherwise `gcd(r, |k|) = 1` is required.
    pub fn new(r: u32, k: i64, l: u32) -> Result<Self> {
        if r == 0 || l == 0 {
            return Err(Error::InvalidLink(format!(
                "r = {r} and l = {l} must be positive"
            )));
        }
        if (r as i64).gcd(&k) != 1 {
            return Err(Error::NotCoprime { r, k });
        }
        Ok(TorusLinkSpec { r, k, l })
    }

    /// Any `m` components span `T(rm, km)`.
    pub fn sublink(&self, m: u32) -> Self {
        assert!((1..=self.l).contains(&m), "sublink size out of range");
        TorusLinkSpec { l: m, ..*self }
    }

    /// Two parallel `(r, k)` curves link `rk` times.
    pub fn pairwise_linking(&self) -> i64 {
        self.r as i64 * self.k
    }

    /// `sum_{i<j} lk(L_i, L_j)`.
    pub fn total_linking(&self) -> i64 {
        let l = self.l as i64;
        l * (l - 1) / 2 * self.pairwise_linking()
    }

    /// Writhe of each component in the closed braid `(s_1 .. s_{rl-1})^{kl}`.
    pub fn component_writhe(&self) -> i64 {
        (self.r as i64 - 1) * self.k
    }
}

impl fmt::Display for TorusLinkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "T({}, {})",
            self.r as i64 * self.l as i64,
            self.k * self.l as i64
        )
    }
}

/// One summand `c t^{t_exp} s*_lambda` of the invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SStarTerm {
    pub lambda: Partition,
    pub c: i64,
    #[serde(serialize_with = "ser_exp")]
    pub t_exp: Exp,
}

fn ser_exp<S: serde::Serializer>(e: &Exp, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColoredInvariant {
    pub link: TorusLinkSpec,
    pub colors: PartitionTuple,
    pub value: RationalFunction,
    /// The invariant is `nu^{nu_exp} sum_terms c t^{t_exp} s*_lambda`.
    #[serde(serialize_with = "ser_exp")]
    pub nu_exp: Exp,
    pub sstar_basis: Vec<SStarTerm>,
}

fn check_colors(link: &TorusLinkSpec, colors: &PartitionTuple) -> Result<()> {
    if colors.len() != link.l as usize {
        return Err(Error::InvalidColors(format!(
            "{} colors for {} components",
            colors.len(),
            link.l
        )));
    }
    if colors.entries().iter().any(Partition::is_empty) {
        return Err(Error::InvalidColors(format!("empty color in {colors}")));
    }
    Ok(())
}

/// The `s*`-basis expansion: `nu` exponent and the terms in canonical order.
pub fn sstar_expansion(
    link: &TorusLinkSpec,
    colors: &PartitionTuple,
) -> Result<(Exp, Vec<SStarTerm>)> {
    check_colors(link, colors)?;
    let (r, k) = (link.r as i64, link.k);
    let n = colors.total_size() as i64;
    let sum_kappa: i64 = colors.entries().iter().map(kappa).sum();
    let base = exp(k * r * sum_kappa, 2);
    let terms = stretched_lr(colors, link.r)
        .coeffs
        .into_iter()
        .map(|(lambda, c)| {
            let t_exp = base - exp(k * kappa(&lambda), 2 * r);
            SStarTerm { lambda, c, t_exp }
        })
        .collect();
    Ok((exp(k * (r - 1) * n, 2), terms))
}

/// `W = t^{kr sum kappa_i / 2} nu^{k(r-1)n/2} sum_lambda c^lambda t^{-k kappa_lambda / 2r} s*_lambda`.
pub fn colored_homfly_torus(
    link: &TorusLinkSpec,
    colors: &PartitionTuple,
) -> Result<ColoredInvariant> {
    let (nu_exp, terms) = sstar_expansion(link, colors)?;
    let mut value = RationalFunction::zero();
    for term in &terms {
        let s = s_star_hook(&term.lambda).shift(term.t_exp, int_exp(0));
        value += &s.scale(&crate::poly::q(term.c));
    }
    let value = value.shift(int_exp(0), nu_exp);
    assert!(
        value.is_half_integral(),
        "exponents outside (1/2)Z for {link} {colors}"
    );
    Ok(ColoredInvariant {
        link: *link,
        colors: colors.clone(),
        value,
        nu_exp,
        sstar_basis: terms,
    })
}

/// `P = nu^{lk} (t^{1/2} - t^{-1/2}) / (nu^{1/2} - nu^{-1/2}) W`.
pub fn homfly_specialize(w: &ColoredInvariant, lk: i64) -> Result<RationalFunction> {
    if w.colors.entries().iter().any(|c| c.parts() != [1]) {
        return Err(Error::WrongColors(w.colors.to_string()));
    }
    let scaled = w
        .value
        .mul_bracket(Bracket::t(1))
        .div_bracket(Bracket::nu(1))
        .shift(int_exp(0), int_exp(lk));
    Ok(scaled)
}

/// The HOMFLY invariant of `link`; a Laurent polynomial unless the link
/// is split.
pub fn homfly_polynomial(link: &TorusLinkSpec) -> Result<RationalFunction> {
    let colors = PartitionTuple::new(vec![Partition::row(1); link.l as usize]);
    let w = colored_homfly_torus(link, &colors)?;
    homfly_specialize(&w, link.total_linking())
}
