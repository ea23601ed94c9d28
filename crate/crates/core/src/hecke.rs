//! Exact matrix models of Hecke algebra irreducibles, used to recompute
//! torus link invariants from braids independently of the closed formula.
//!
//! Matrices are written in `t` with `q = t^{-1/2}`, so the generators satisfy
//! `(g - t^{-1/2})(g + t^{1/2}) = 0`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::combinatorics::{kappa, Partition, PartitionTuple};
use crate::error::{Error, Result};
use crate::poly::{exp, int_exp, q, Bracket, ExactLaurent, RationalFunction};
use crate::symfunc::{s_star_hook, stretched_lr};
use crate::torus::{ColoredInvariant, SStarTerm, TorusLinkSpec};
use crate::unipoly::{f_identity, f_mul, f_to_matrix, FMatrix, Frac};

pub type Matrix = Vec<Vec<RationalFunction>>;

/// `sigma_i^{+1}` is `i`, `sigma_i^{-1}` is `-i`, with `1 <= i < strands`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidWord {
    pub strands: u32,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self> {
        if let Some(&bad) = letters
            .iter()
            .find(|&&x| x == 0 || x.unsigned_abs() >= strands)
        {
            return Err(Error::InvalidLink(format!(
                "generator {bad} on {strands} strands"
            )));
        }
        Ok(BraidWord { strands, letters })
    }

    /// `delta_m^e`, with `delta_m = sigma_1 .. sigma_{m-1}`.
    pub fn delta_power(m: u32, e: i64) -> Self {
        let mut letters = Vec::new();
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                letters.extend(1..m as i32);
            } else {
                letters.extend((1..m as i32).rev().map(|i| -i));
            }
        }
        BraidWord {
            strands: m,
            letters,
        }
    }

    /// `Delta_n^2 = delta_n^n`.
    pub fn full_twist(n: u32) -> Self {
        Self::delta_power(n, n as i64)
    }

    /// Closed braid whose closure is `T(rl, kl)`.
    pub fn torus(link: &TorusLinkSpec) -> Self {
        Self::delta_power(link.r * link.l, link.k * link.l as i64)
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|x| -x).collect(),
        }
    }

    /// Underlying permutation: `perm[p]` is where the strand starting at `p` ends.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands as usize).collect();
        for &x in &self.letters {
            let i = x.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; at.len()];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    /// Component label of each starting strand after closure.
    pub fn components(&self) -> Vec<usize> {
        let perm = self.permutation();
        let mut label = vec![usize::MAX; perm.len()];
        let mut next = 0;
        for s in 0..perm.len() {
            if label[s] != usize::MAX {
                continue;
            }
            let mut p = s;
            while label[p] == usize::MAX {
                label[p] = next;
                p = perm[p];
            }
            next += 1;
        }
        label
    }

    /// Writhe of each closed component: signed self-crossings.
    pub fn component_writhes(&self) -> Vec<i64> {
        let comp = self.components();
        let count = comp.iter().max().map_or(0, |&m| m + 1);
        let mut w = vec![0; count];
        let mut at: Vec<usize> = (0..self.strands as usize).collect();
        for &x in &self.letters {
            let i = x.unsigned_abs() as usize;
            let (a, b) = (comp[at[i - 1]], comp[at[i]]);
            if a == b {
                w[a] += x.signum() as i64;
            }
            at.swap(i - 1, i);
        }
        w
    }

    /// Replaces the strand starting at position `p` by `widths[p]` parallel strands.
    pub fn cable(&self, widths: &[u32]) -> Self {
        assert_eq!(widths.len(), self.strands as usize, "one width per strand");
        let mut at: Vec<usize> = (0..self.strands as usize).collect();
        let mut letters = Vec::new();
        for &x in &self.letters {
            let i = x.unsigned_abs() as usize;
            let offset: u32 = at[..i - 1].iter().map(|&s| widths[s]).sum();
            let (a, b) = (widths[at[i - 1]], widths[at[i]]);
            if x > 0 {
                letters.extend(block_swap(offset, a, b));
            } else {
                let inv: Vec<i32> = block_swap(offset, b, a)
                    .into_iter()
                    .rev()
                    .map(|y| -y)
                    .collect();
                letters.extend(inv);
            }
            at.swap(i - 1, i);
        }
        BraidWord {
            strands: widths.iter().sum(),
            letters,
        }
    }
}

/// Positive crossing of a width-`a` cable over a width-`b` cable starting
/// after `offset` strands.
fn block_swap(offset: u32, a: u32, b: u32) -> Vec<i32> {
    let mut out = Vec::new();
    for j in 1..=b {
        for g in (j..j + a).rev() {
            out.push((offset + g) as i32);
        }
    }
    out
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "B{}[{}]", self.strands, parts.join(" "))
    }
}

/// Standard tableaux as the cell of each entry `1..=n`.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Vec<(usize, usize)>> {
    fn go(
        shape: &mut Vec<u32>,
        filled: usize,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if filled == 0 {
            let mut t = acc.clone();
            t.reverse();
            out.push(t);
            return;
        }
        for i in 0..shape.len() {
            let last = shape[i];
            if last == 0 || shape.get(i + 1).is_some_and(|&next| next == last) {
                continue;
            }
            shape[i] -= 1;
            acc.push((i, last as usize - 1));
            go(shape, filled - 1, acc, out);
            acc.pop();
            shape[i] += 1;
        }
    }
    let mut shape = lambda.parts().to_vec();
    let mut out = Vec::new();
    go(
        &mut shape,
        lambda.size() as usize,
        &mut Vec::new(),
        &mut out,
    );
    out.sort();
    out
}

fn content(cell: (usize, usize)) -> i64 {
    cell.1 as i64 - cell.0 as i64
}

/// `1 / (t^{-a} - t^{-b})` for `a != b`: `t^{(a+b)/2} / [b - a]_t`.
fn inv_t_difference(a: i64, b: i64) -> RationalFunction {
    let sign = if b > a { 1 } else { -1 };
    RationalFunction::new(
        ExactLaurent::monomial(q(sign), exp(a + b, 2), int_exp(0)),
        [Bracket::t((b - a).unsigned_abs() as u32)],
    )
}

/// A seminormal irreducible representation of the Hecke algebra.
#[derive(Clone, Debug)]
pub struct HeckeIrrep {
    pub lambda: Partition,
    pub tableaux: Vec<Vec<(usize, usize)>>,
    pub generators: Vec<Matrix>,
    fast: Vec<FMatrix>,
}

fn zero_matrix(d: usize) -> Matrix {
    vec![vec![RationalFunction::zero(); d]; d]
}

pub fn identity(d: usize) -> Matrix {
    let mut m = zero_matrix(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = RationalFunction::one();
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    crate::linalg::mat_mul(a, b)
}

pub fn mat_scale(a: &Matrix, c: &RationalFunction) -> Matrix {
    a.iter()
        .map(|row| row.iter().map(|x| x * c).collect())
        .collect()
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn trace(a: &Matrix) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for (i, row) in a.iter().enumerate() {
        acc += &row[i];
    }
    acc
}

/// `a(d) = [1]_t t^{-d/2} / [d]_t` for axial distance `d`, signed bracket.
fn diagonal_frac(d: i64) -> Frac {
    Frac::monomial(d.signum() as i128, -d)
        .mul_bracket(1)
        .div_bracket(d.unsigned_abs() as usize)
}

impl HeckeIrrep {
    pub fn new(lambda: &Partition) -> Self {
        let tableaux = standard_tableaux(lambda);
        let index: HashMap<&Vec<(usize, usize)>, usize> =
            tableaux.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let n = lambda.size() as usize;
        let d = tableaux.len();
        let mut fast = Vec::new();
        for i in 1..n {
            let mut g = vec![vec![Frac::zero(); d]; d];
            for (col, tab) in tableaux.iter().enumerate() {
                let axial = content(tab[i]) - content(tab[i - 1]);
                g[col][col] = diagonal_frac(axial);
                if axial.abs() == 1 {
                    continue;
                }
                let mut swapped = tab.clone();
                swapped.swap(i - 1, i);
                let row = index[&swapped];
                g[row][col] = if axial < 0 {
                    Frac::one()
                } else {
                    &Frac::one() + &(&diagonal_frac(axial) * &diagonal_frac(-axial))
                };
            }
            fast.push(g);
        }
        HeckeIrrep {
            lambda: lambda.clone(),
            tableaux,
            generators: fast.iter().map(f_to_matrix).collect(),
            fast,
        }
    }

    pub fn dimension(&self) -> usize {
        self.tableaux.len()
    }

    pub fn strands(&self) -> u32 {
        self.lambda.size()
    }

    /// `g_i^{-1} = g_i + [1]_t`.
    pub fn generator(&self, letter: i32) -> Matrix {
        let g = &self.generators[letter.unsigned_abs() as usize - 1];
        if letter > 0 {
            g.clone()
        } else {
            let shift = RationalFunction::bracket(Bracket::t(1));
            let mut out = g.clone();
            for (i, row) in out.iter_mut().enumerate() {
                row[i] += &shift;
            }
            out
        }
    }

    /// Left-multiplies `m` by one generator, using that each generator row
    /// has at most two entries.
    fn apply(&self, letter: i32, m: &Matrix) -> Matrix {
        let g = self.generator(letter);
        g.iter()
            .map(|grow| {
                let nz: Vec<(usize, &RationalFunction)> = grow
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                (0..m.len())
                    .map(|j| {
                        let mut acc = RationalFunction::zero();
                        for &(k, x) in &nz {
                            if !m[k][j].is_zero() {
                                acc += &(x * &m[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    pub fn braid_matrix(&self, beta: &BraidWord) -> Result<Matrix> {
        Ok(f_to_matrix(&self.braid_fast(beta)?))
    }

    /// Left-multiplies `m` by one generator in the internal ring.
    fn apply_fast(&self, letter: i32, m: &FMatrix) -> FMatrix {
        let g = &self.fast[letter.unsigned_abs() as usize - 1];
        let shift = Frac::one().mul_bracket(1);
        g.iter()
            .enumerate()
            .map(|(i, grow)| {
                let mut nz: Vec<(usize, Frac)> = grow
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k, x.clone()))
                    .collect();
                if letter < 0 {
                    match nz.iter_mut().find(|(k, _)| *k == i) {
                        Some((_, x)) => *x = &*x + &shift,
                        None => nz.push((i, shift.clone())),
                    }
                }
                (0..m.first().map_or(0, Vec::len))
                    .map(|j| {
                        let mut acc = Frac::zero();
                        for (k, x) in &nz {
                            if !m[*k][j].is_zero() {
                                acc = &acc + &(x * &m[*k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    fn braid_fast(&self, beta: &BraidWord) -> Result<FMatrix> {
        if beta.strands != self.strands() {
            return Err(Error::SizeMismatch(beta.strands, self.strands()));
        }
        let mut m = f_identity(self.dimension());
        for &x in beta.letters.iter().rev() {
            m = self.apply_fast(x, &m);
        }
        Ok(m)
    }

    /// Multiplicative Jucys-Murphy element `J_1 = 1`, `J_{j+1} = g J_j g` of
    /// the block subalgebra on strands `offset+1 ..= offset+len`.
    fn jm(&self, offset: u32, j: u32) -> Matrix {
        let mut m = identity(self.dimension());
        for s in 1..j {
            let g = (offset + s) as i32;
            m = mat_mul(&self.apply(g, &m), &self.generator(g));
        }
        m
    }

    /// The idempotent of `block_projector`, built by conjugating the diagonal
    /// projector of each block moved to the first strands by a cable crossing.
    pub fn block_projector_conjugated(&self, blocks: &PartitionTuple) -> Result<Matrix> {
        Ok(f_to_matrix(&self.projector_fast(blocks)?))
    }

    fn projector_fast(&self, blocks: &PartitionTuple) -> Result<FMatrix> {
        let total: u32 = blocks.total_size();
        if total != self.strands() {
            return Err(Error::SizeMismatch(total, self.strands()));
        }
        let dim = self.dimension();
        let mut p: Option<FMatrix> = None;
        let mut offset = 0;
        for mu in blocks.entries() {
            let b = mu.size();
            if b > 1 {
                let cells: Vec<(usize, usize)> = mu.cells().collect();
                let keep: Vec<usize> = (0..dim)
                    .filter(|&i| self.tableaux[i][..b as usize] == cells[..])
                    .collect();
                let block = if offset == 0 {
                    let mut m = vec![vec![Frac::zero(); dim]; dim];
                    for &i in &keep {
                        m[i][i] = Frac::one();
                    }
                    m
                } else {
                    let y = BraidWord {
                        strands: self.strands(),
                        letters: block_swap(0, offset, b),
                    };
                    let left = self.braid_fast(&y)?;
                    let right = self.braid_fast(&y.inverse())?;
                    (0..dim)
                        .map(|i| {
                            (0..dim)
                                .map(|j| {
                                    let mut acc = Frac::zero();
                                    for &s in &keep {
                                        if !left[i][s].is_zero() && !right[s][j].is_zero() {
                                            acc = &acc + &(&left[i][s] * &right[s][j]);
                                        }
                                    }
                                    acc
                                })
                                .collect()
                        })
                        .collect()
                };
                p = Some(match p {
                    None => block,
                    Some(prev) => f_mul(&prev, &block),
                });
            }
            offset += b;
        }
        Ok(p.unwrap_or_else(|| f_identity(dim)))
    }

    /// Image of the minimal idempotents of the blocks, strands filled
    /// left to right, each block projected on the row-reading tableau of its color.
    pub fn block_projector(&self, blocks: &PartitionTuple) -> Result<ProjectorMatrix> {
        let total: u32 = blocks.total_size();
        if total != self.strands() {
            return Err(Error::SizeMismatch(total, self.strands()));
        }
        let dim = self.dimension();
        let mut p = identity(dim);
        let mut offset = 0;
        for mu in blocks.entries() {
            let contents: Vec<i64> = mu.cells().map(content).collect();
            for (j, &c) in contents.iter().enumerate().skip(1) {
                let j = j as u32 + 1;
                let jm = self.jm(offset, j);
                let reach = j as i64 - 1;
                let nodes: Vec<i64> = (-reach..=reach).collect();
                if nodes.iter().filter(|&&x| x == c).count() != 1 {
                    return Err(Error::SpectralCollision(format!(
                        "content {c} at strand {j}"
                    )));
                }
                for &other in nodes.iter().filter(|&&x| x != c) {
                    // (J - t^{-other}) / (t^{-c} - t^{-other})
                    let mut factor = jm.clone();
                    let shift = RationalFunction::from(ExactLaurent::t_pow(int_exp(-other)));
                    for (i, row) in factor.iter_mut().enumerate() {
                        row[i] -= &shift;
                    }
                    let factor = mat_scale(&factor, &inv_t_difference(c, other));
                    p = mat_mul(&p, &factor);
                }
            }
            offset += mu.size();
        }
        Ok(ProjectorMatrix {
            blocks: blocks.clone(),
            lambda: self.lambda.clone(),
            matrix: p,
        })
    }
}

pub fn seminormal_irrep(lambda: &Partition) -> HeckeIrrep {
    HeckeIrrep::new(lambda)
}

#[derive(Clone, Debug)]
pub struct ProjectorMatrix {
    pub blocks: PartitionTuple,
    pub lambda: Partition,
    pub matrix: Matrix,
}

impl ProjectorMatrix {
    pub fn is_idempotent(&self) -> bool {
        mat_mul(&self.matrix, &self.matrix) == self.matrix
    }

    pub fn rank(&self) -> RationalFunction {
        trace(&self.matrix)
    }
}

pub fn jm_projector(blocks: &PartitionTuple, lambda: &Partition) -> Result<ProjectorMatrix> {
    HeckeIrrep::new(lambda).block_projector(blocks)
}

/// `zeta^lambda(beta)`.
pub fn irrep_character(lambda: &Partition, beta: &BraidWord) -> Result<RationalFunction> {
    Ok(trace(&HeckeIrrep::new(lambda).braid_matrix(beta)?))
}

/// Whether `Delta_n^2` acts on the `lambda` irrep as `q^{kappa}`.
pub fn full_twist_acts_as(lambda: &Partition, kappa_value: i64) -> bool {
    let irrep = HeckeIrrep::new(lambda);
    if lambda.size() < 2 {
        return kappa_value == 0;
    }
    let m = irrep
        .braid_matrix(&BraidWord::full_twist(lambda.size()))
        .expect("strand count matches");
    let scalar = RationalFunction::from(ExactLaurent::t_pow(exp(-kappa_value, 2)));
    m == mat_scale(&identity(irrep.dimension()), &scalar)
}

pub fn full_twist_check(lambda: &Partition) -> bool {
    full_twist_acts_as(lambda, kappa(lambda))
}

/// Cables `T(rl, kl)` with `n_j` strands on every strand of component `j`
/// and returns the braid and the block colors in strand order.
pub fn cabled_torus(link: &TorusLinkSpec, colors: &PartitionTuple) -> (BraidWord, PartitionTuple) {
    let base = BraidWord::torus(link);
    let l = link.l as usize;
    let m = (link.r * link.l) as usize;
    let widths: Vec<u32> = (0..m).map(|p| colors.entries()[p % l].size()).collect();
    let blocks = PartitionTuple::new((0..m).map(|p| colors.entries()[p % l].clone()).collect());
    (base.cable(&widths), blocks)
}

fn cabled_character(
    link: &TorusLinkSpec,
    colors: &PartitionTuple,
    lambda: &Partition,
) -> Result<RationalFunction> {
    let (beta, blocks) = cabled_torus(link, colors);
    let irrep = HeckeIrrep::new(lambda);
    let p = irrep.projector_fast(&blocks)?;
    if p.iter().all(|row| row.iter().all(Frac::is_zero)) {
        return Ok(RationalFunction::zero());
    }
    let b = irrep.braid_fast(&beta)?;
    let mut acc = Frac::zero();
    for (i, row) in b.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() && !p[j][i].is_zero() {
                acc = &acc + &(x * &p[j][i]);
            }
        }
    }
    Ok(acc.to_rational())
}

/// `zeta^lambda(h(beta) p^{(r)}) = c^lambda q^{-k sum kappa_i + k kappa_lambda / r}`.
pub fn lemma53_check(r: u32, k: i64, colors: &PartitionTuple, lambda: &Partition) -> Result<bool> {
    let link = TorusLinkSpec::new(r, k, colors.len() as u32)?;
    let lhs = cabled_character(&link, colors, lambda)?;
    let c = stretched_lr(colors, r)
        .coeffs
        .get(lambda)
        .copied()
        .unwrap_or(0);
    let sum_kappa: i64 = colors.entries().iter().map(kappa).sum();
    // q^e = t^{-e/2}
    let q_exp = exp(-k * sum_kappa, 1) + exp(k * kappa(lambda), r as i64);
    let rhs = RationalFunction::from(ExactLaurent::monomial(
        q(c),
        -q_exp / int_exp(2),
        int_exp(0),
    ));
    Ok(lhs == rhs)
}

/// The invariant recomputed from cabled braid characters and per-component writhes.
pub fn cor45_pipeline(link: &TorusLinkSpec, colors: &PartitionTuple) -> Result<ColoredInvariant> {
    if colors.len() != link.l as usize || colors.entries().iter().any(Partition::is_empty) {
        return Err(Error::InvalidColors(colors.to_string()));
    }
    let base = BraidWord::torus(link);
    let writhes = base.component_writhes();
    let comp = base.components();
    // component labels follow strand order; map them to color slots
    let mut slot_of = vec![usize::MAX; writhes.len()];
    for (p, &c) in comp.iter().enumerate() {
        if slot_of[c] == usize::MAX {
            slot_of[c] = p % link.l as usize;
        }
    }
    let mut t_pre = int_exp(0);
    let mut nu_pre = int_exp(0);
    for (c, &w) in writhes.iter().enumerate() {
        let color = &colors.entries()[slot_of[c]];
        t_pre += exp(kappa(color) * w, 2);
        nu_pre += exp(color.size() as i64 * w, 2);
    }
    let n = colors.total_size() * link.r;
    let mut value = RationalFunction::zero();
    let mut terms = Vec::new();
    let mut monomial = true;
    for lambda in crate::combinatorics::partitions_of(n) {
        let zeta = cabled_character(link, colors, &lambda)?;
        if zeta.is_zero() {
            continue;
        }
        let coeff = zeta.shift(t_pre, int_exp(0));
        let term = coeff
            .certify_polynomial()
            .ok()
            .filter(|p| p.num_terms() == 1)
            .and_then(|p| {
                let (&(et, _), c) = p.terms().next()?;
                let c = i64::try_from(c.to_integer())
                    .ok()
                    .filter(|_| c.is_integer())?;
                Some(SStarTerm {
                    lambda: lambda.clone(),
                    c,
                    t_exp: et,
                })
            });
        match term {
            Some(term) => terms.push(term),
            None => monomial = false,
        }
        value += &(&coeff * &s_star_hook(&lambda));
    }
    if !monomial {
        terms.clear();
    }
    Ok(ColoredInvariant {
        link: *link,
        colors: colors.clone(),
        value: value.shift(int_exp(0), nu_pre),
        nu_exp: nu_pre,
        sstar_basis: terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions_of;
    use crate::symfunc::s_star;
    use crate::torus::colored_homfly_torus;

    // `a(d) = [1]_t t^{-d/2} / [d]_t` for axial distance `d`, signed bracket.
    fn diagonal_entry(d: i64) -> RationalFunction {
        let sign = if d > 0 { 1 } else { -1 };
        RationalFunction::new(
            ExactLaurent::bracket(crate::poly::Var::T, 1)
                .shift(exp(-d, 2), int_exp(0))
                .scale(&q(sign)),
            [Bracket::t(d.unsigned_abs() as u32)],
        )
    }

    #[test]
    fn internal_ring_matches_generic_entries() {
        for d in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
            assert_eq!(diagonal_frac(d).to_rational(), diagonal_entry(d));
            let off = &diagonal_frac(d) * &diagonal_frac(-d);
            assert_eq!(off.to_rational(), &diagonal_entry(d) * &diagonal_entry(-d));
        }
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn tuple(s: &str) -> PartitionTuple {
        s.parse().unwrap()
    }

    fn tl(r: u32, k: i64, l: u32) -> TorusLinkSpec {
        TorusLinkSpec::new(r, k, l).unwrap()
    }

    fn qpow(e: i64) -> RationalFunction {
        RationalFunction::from(ExactLaurent::t_pow(exp(-e, 2)))
    }

    #[test]
    fn small_irreps() {
        assert_eq!(
            HeckeIrrep::new(&p("2")).generators,
            vec![vec![vec![qpow(1)]]]
        );
        assert_eq!(
            HeckeIrrep::new(&p("1,1")).generators,
            vec![vec![vec![-qpow(-1)]]]
        );
        let rep = HeckeIrrep::new(&p("2,1"));
        assert_eq!(rep.dimension(), 2);
        let word = |w: Vec<i32>| rep.braid_matrix(&BraidWord::new(3, w).unwrap()).unwrap();
        assert_eq!(word(vec![1, 2, 1]), word(vec![2, 1, 2]));
        assert_eq!(word(vec![1, -1]), identity(2));
    }

    #[test]
    fn relations_and_dimensions() {
        for n in 1..=6u32 {
            let mut dims = 0u64;
            for lambda in partitions_of(n) {
                let rep = HeckeIrrep::new(&lambda);
                let d = rep.dimension();
                assert_eq!(num_bigint::BigInt::from(d), lambda.dimension());
                dims += (d * d) as u64;
                let one = identity(d);
                let c = qpow(1) - qpow(-1);
                for (i, g) in rep.generators.iter().enumerate() {
                    // g^2 = (q - q^{-1}) g + 1
                    assert_eq!(
                        mat_mul(g, g),
                        mat_add(&mat_scale(g, &c), &one),
                        "{lambda} g{i}"
                    );
                    if let Some(h) = rep.generators.get(i + 1) {
                        assert_eq!(mat_mul(&mat_mul(g, h), g), mat_mul(&mat_mul(h, g), h));
                    }
                    for h in rep.generators.iter().skip(i + 2) {
                        assert_eq!(mat_mul(g, h), mat_mul(h, g));
                    }
                }
            }
            assert_eq!(dims, (1..=n as u64).product::<u64>());
        }
    }

    #[test]
    fn characters_and_twists() {
        let s1 = BraidWord::new(2, vec![1]).unwrap();
        assert_eq!(irrep_character(&p("2"), &s1).unwrap(), qpow(1));
        assert_eq!(irrep_character(&p("1,1"), &s1).unwrap(), -qpow(-1));
        assert_eq!(
            irrep_character(&p("2,1"), &BraidWord::full_twist(3)).unwrap(),
            RationalFunction::constant(q(2))
        );
        assert_eq!(
            irrep_character(&p("2,1"), &s1),
            Err(Error::SizeMismatch(2, 3))
        );
        for n in 1..=5 {
            for lambda in partitions_of(n) {
                assert!(full_twist_check(&lambda), "{lambda}");
                if n > 1 {
                    assert!(!full_twist_acts_as(&lambda, kappa(&lambda) + 1));
                }
            }
        }
    }

    #[test]
    fn braid_bookkeeping() {
        let trefoil = BraidWord::torus(&tl(2, 3, 1));
        assert_eq!(trefoil.component_writhes(), vec![3]);
        let link = BraidWord::torus(&tl(1, 2, 2));
        assert_eq!(link.components(), vec![0, 1]);
        assert_eq!(link.component_writhes(), vec![0, 0]);
        assert_eq!(
            BraidWord::torus(&tl(3, -1, 1)).component_writhes(),
            vec![-2]
        );
        let cabled = BraidWord::new(2, vec![1]).unwrap().cable(&[2, 1]);
        assert_eq!(cabled.letters, vec![2, 1]);
        let cabled = BraidWord::new(2, vec![-1]).unwrap().cable(&[2, 1]);
        assert_eq!(cabled.letters, vec![-2, -1]);
        assert_eq!(cabled.permutation(), vec![1, 2, 0]);
        assert!(BraidWord::new(2, vec![2]).is_err());
    }

    #[test]
    fn projectors() {
        let pm = jm_projector(&tuple("2"), &p("2")).unwrap();
        assert_eq!(pm.matrix, identity(1));
        for lambda in partitions_of(2) {
            assert_eq!(
                jm_projector(&tuple("1|1"), &lambda).unwrap().matrix,
                identity(1)
            );
        }
        let pm = jm_projector(&tuple("2|1"), &p("2,1")).unwrap();
        assert!(pm.is_idempotent());
        assert_eq!(pm.rank(), RationalFunction::one());
        for (blocks, n) in [
            ("1,1|2", 4),
            ("2|1|2", 5),
            ("2,1|1", 4),
            ("1|2,1", 4),
            ("1|2|1,1", 5),
        ] {
            let blocks = tuple(blocks);
            let lr = stretched_lr(&blocks, 1);
            for lambda in partitions_of(n) {
                let pm = jm_projector(&blocks, &lambda).unwrap();
                assert!(pm.is_idempotent());
                let mult = lr.coeffs.get(&lambda).copied().unwrap_or(0);
                assert_eq!(
                    pm.rank(),
                    RationalFunction::constant(q(mult)),
                    "{blocks} {lambda}"
                );
                let conj = HeckeIrrep::new(&lambda)
                    .block_projector_conjugated(&blocks)
                    .unwrap();
                assert_eq!(conj, pm.matrix, "{blocks} {lambda}");
            }
        }
    }

    #[test]
    fn cabled_characters() {
        assert!(lemma53_check(2, 1, &tuple("1"), &p("2")).unwrap());
        assert!(lemma53_check(2, 1, &tuple("1"), &p("1,1")).unwrap());
        for (r, k, colors) in [
            (2, 1, "1"),
            (2, 3, "1"),
            (3, 1, "1"),
            (2, 1, "2"),
            (1, 2, "1|1"),
        ] {
            let colors = tuple(colors);
            for lambda in partitions_of(r * colors.total_size()) {
                assert!(
                    lemma53_check(r, k, &colors, &lambda).unwrap(),
                    "{r} {k} {colors} {lambda}"
                );
            }
        }
    }

    #[test]
    fn braid_route_matches_formula() {
        let unknot = cor45_pipeline(&tl(2, 1, 1), &tuple("1")).unwrap();
        assert_eq!(unknot.value, s_star(&p("1")));
        for (link, colors) in [
            (tl(1, 1, 2), "1|1"),
            (tl(2, 3, 1), "2"),
            (tl(2, -3, 1), "1,1"),
            (tl(3, 2, 1), "1"),
            (tl(1, 2, 2), "2|1"),
        ] {
            let colors = tuple(colors);
            let braid = cor45_pipeline(&link, &colors).unwrap();
            let formula = colored_homfly_torus(&link, &colors).unwrap();
            assert_eq!(braid.value, formula.value, "{link} {colors}");
            assert_eq!(braid.sstar_basis, formula.sstar_basis);
        }
    }
}
