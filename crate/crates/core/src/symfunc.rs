//! Frobenius transforms between power sums and Schur functions, stretched
//! Littlewood-Richardson coefficients, principal specializations and the
//! q-deformed Schur bases.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{add_partitions, hooks_contents, stretch, Partition, PartitionTuple};
use crate::error::Result;
use crate::linalg::bareiss_inverse;
use crate::poly::{exp, q, Bracket, ExactLaurent, RationalFunction, Q};
use crate::symchar::{character_table, CharacterTable};

/// Schur coefficients of a homogeneous symmetric function of degree `degree`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchurVector {
    pub degree: u32,
    pub coeffs: BTreeMap<Partition, RationalFunction>,
}

/// `prod_i s_{colors_i}(x^r) = sum_lambda coeffs[lambda] s_lambda(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LRTable {
    pub colors: PartitionTuple,
    pub r: u32,
    pub coeffs: BTreeMap<Partition, i64>,
}

/// `p_mu = sum_lambda chi^lambda(mu) s_lambda`.
pub fn powersum_to_schur(mu: &Partition) -> BTreeMap<Partition, i64> {
    let table = character_table(mu.size());
    table
        .partitions()
        .iter()
        .map(|lambda| (lambda.clone(), table.value(lambda, mu)))
        .filter(|(_, c)| *c != 0)
        .collect()
}

/// `s_lambda = sum_mu z_mu^{-1} chi^lambda(mu) p_mu`.
pub fn schur_to_powersum(lambda: &Partition) -> BTreeMap<Partition, Q> {
    let table = character_table(lambda.size());
    table
        .partitions()
        .iter()
        .filter_map(|mu| {
            let c = table.value(lambda, mu);
            (c != 0).then(|| (mu.clone(), mu.inv_z() * q(c)))
        })
        .collect()
}

/// Every tuple `(mu^1, .., mu^l)` with `mu^i` a partition of `sizes[i]`,
/// paired with `prod_i z_{mu^i}^{-1} chi^{colors_i}(mu^i)`.
fn weighted_classes(colors: &[Partition]) -> Vec<(Vec<Partition>, Q)> {
    let mut acc: Vec<(Vec<Partition>, Q)> = vec![(Vec::new(), Q::one())];
    for lam in colors {
        let table = character_table(lam.size());
        let mut next = Vec::new();
        for (prefix, w) in &acc {
            for mu in table.partitions() {
                let c = table.value(lam, mu);
                if c == 0 {
                    continue;
                }
                let mut p = prefix.clone();
                p.push(mu.clone());
                next.push((p, w * mu.inv_z() * q(c)));
            }
        }
        acc = next;
    }
    acc
}

/// Stretched Littlewood-Richardson coefficients by the character sum
/// `c^lambda = sum prod_i z^{-1} chi^{lambda^i}(mu^i) chi^lambda((mu^1 + .. + mu^l)_(r))`.
pub fn stretched_lr(colors: &PartitionTuple, r: u32) -> LRTable {
    assert!(r >= 1, "stretch must be positive");
    let n: u32 = colors.total_size() * r;
    let table = character_table(n);
    let mut coeffs: BTreeMap<Partition, Q> = BTreeMap::new();
    for (mus, w) in weighted_classes(colors.entries()) {
        let joined = mus
            .iter()
            .fold(Partition::empty(), |acc, m| add_partitions(&acc, m));
        let cls = stretch(&joined, r);
        for lambda in table.partitions() {
            let c = table.value(lambda, &cls);
            if c != 0 {
                *coeffs.entry(lambda.clone()).or_insert_with(Q::zero) += &w * q(c);
            }
        }
    }
    let coeffs = coeffs
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(lambda, c)| {
            assert!(
                c.is_integer(),
                "non-integral LR coefficient {c} at {lambda}"
            );
            let v: i64 = c
                .to_integer()
                .try_into()
                .expect("LR coefficient fits in i64");
            (lambda, v)
        })
        .collect();
    LRTable {
        colors: colors.clone(),
        r,
        coeffs,
    }
}

/// `p_m` on the principal alphabet: `[m]_nu / [m]_t`.
pub fn p_principal(m: u32) -> RationalFunction {
    RationalFunction::bracket_ratio(Bracket::nu(m), Bracket::t(m))
}

/// `p_m(t^{(k-1)/2}, t^{(k-3)/2}, .., t^{-(k-1)/2}) = [km]_t / [m]_t`.
pub fn p_kpoint(m: u32, k: u32) -> RationalFunction {
    RationalFunction::bracket_ratio(Bracket::t(k * m), Bracket::t(m))
}

/// `s*_lambda` through the Frobenius sum over classes.
pub fn s_star(lambda: &Partition) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for (mu, w) in schur_to_powersum(lambda) {
        let mut term = RationalFunction::constant(w);
        for &m in mu.parts() {
            term = &term * &p_principal(m);
        }
        acc += &term;
    }
    acc
}

/// `s*_lambda` as a hook-content product:
/// `prod_cells (nu^{1/2} t^{c/2} - nu^{-1/2} t^{-c/2}) / [h]_t`.
pub fn s_star_hook(lambda: &Partition) -> RationalFunction {
    let mut num = ExactLaurent::one();
    let mut den = Vec::new();
    for (h, c) in hooks_contents(lambda) {
        let factor = ExactLaurent::monomial(q(1), exp(c, 2), exp(1, 2))
            - ExactLaurent::monomial(q(1), exp(-c, 2), exp(-1, 2));
        num = &num * &factor;
        den.push(Bracket::t(h));
    }
    RationalFunction::new(num, den)
}

/// `prod_j (t^{-m_j/2} - t^{m_j/2}) / (t^{-1/2} - t^{1/2})`, a Laurent polynomial.
fn m_weight(tau: &Partition) -> RationalFunction {
    let mut num = ExactLaurent::one();
    for &m in tau.parts() {
        num = &num * &(-Bracket::t(m).expand());
    }
    RationalFunction::new(-num, [Bracket::t(1)])
}

/// The matrix `M_{lambda mu}(t)` in canonical partition order.
pub fn m_matrix(n: u32) -> Vec<Vec<RationalFunction>> {
    let table = character_table(n);
    let parts = table.partitions();
    let weights: Vec<RationalFunction> = parts
        .iter()
        .map(|tau| m_weight(tau).scale(&tau.inv_z()))
        .collect();
    parts
        .iter()
        .map(|lam| {
            parts
                .iter()
                .map(|mu| class_sum(&table, lam, mu, &weights))
                .collect()
        })
        .collect()
}

/// `sum_tau w_tau chi^lam(tau) chi^mu(tau)`.
fn class_sum(
    table: &CharacterTable,
    lam: &Partition,
    mu: &Partition,
    weights: &[RationalFunction],
) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for (tau, w) in table.partitions().iter().zip(weights) {
        let c = table.value(lam, tau) * table.value(mu, tau);
        if c != 0 {
            acc += &w.scale(&q(c));
        }
    }
    acc
}

/// Inverse of `m_matrix(n)` by fraction-free elimination.
pub fn m_matrix_inverse(n: u32) -> Result<Vec<Vec<RationalFunction>>> {
    bareiss_inverse(&m_matrix(n), n.max(1))
}

/// `prod_j (-[k m_j]_t)`, the power-sum weight of the `q^k` deformation.
pub fn q_weight(tau: &Partition, k: u32) -> ExactLaurent {
    let mut num = ExactLaurent::one();
    for &m in tau.parts() {
        num = &num * &(-Bracket::t(k * m).expand());
    }
    num
}

/// `s_{mu;q^k}` in the Schur basis, `q = t^{-1/2}`: the coefficient of
/// `s_lambda` is `-[k]_t M_{lambda mu}(t^k)`.
pub fn s_q_vector(mu: &Partition, k: u32) -> SchurVector {
    let n = mu.size();
    let table = character_table(n);
    let col = table.index_of(mu).expect("partition of n");
    let m = m_matrix(n);
    let scale = -RationalFunction::bracket(Bracket::t(k));
    let coeffs = table
        .partitions()
        .iter()
        .enumerate()
        .map(|(i, lam)| (lam.clone(), &scale * &m[i][col].adams(k)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    SchurVector { degree: n, coeffs }
}

/// `s_{mu;q^k}` in the power-sum basis:
/// `sum_tau z^{-1} chi^mu(tau) prod_j (q^{k tau_j} - q^{-k tau_j}) p_tau`.
pub fn s_q_powersum(mu: &Partition, k: u32) -> BTreeMap<Partition, RationalFunction> {
    schur_to_powersum(mu)
        .into_iter()
        .map(|(tau, w)| {
            let c = RationalFunction::from(q_weight(&tau, k).scale(&w));
            (tau, c)
        })
        .collect()
}

/// `s_{lambda;q^k}(q^{N-1}, .., q^{-(N-1)})` with `nu^{1/2} = q^{-N}`.
pub fn principal_specialize_sq(lambda: &Partition, k: u32) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for (tau, w) in schur_to_powersum(lambda) {
        let mut term = RationalFunction::from(q_weight(&tau, k).scale(&w));
        for &m in tau.parts() {
            term = &term * &p_principal(m);
        }
        acc += &term;
    }
    acc
}

/// `S_{lambda,mu}` on the `k`-point alphabet `t^{(k-1)/2}, .., t^{-(k-1)/2}`.
pub fn s_lambda_mu_kpoint(lambda: &Partition, mu: &Partition, k: u32) -> RationalFunction {
    let table = character_table(lambda.size());
    let mut acc = RationalFunction::zero();
    for tau in table.partitions() {
        let c = table.value(lambda, tau) * table.value(mu, tau);
        if c == 0 {
            continue;
        }
        let mut term = RationalFunction::constant(tau.inv_z() * q(c));
        for &m in tau.parts() {
            term = &term * &p_kpoint(m, k);
        }
        acc += &term;
    }
    acc
}

/// `s_{lambda;nu^{-1/2}}` on the `k`-point alphabet: the deformation
/// parameter is `nu^{-1/2}`, so each part contributes `-[m]_nu [km]_t/[m]_t`.
pub fn s_nu_kpoint(lambda: &Partition, k: u32) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for (tau, w) in schur_to_powersum(lambda) {
        let mut term = RationalFunction::constant(w);
        for &m in tau.parts() {
            term = &term * &(-&(&RationalFunction::bracket(Bracket::nu(m)) * &p_kpoint(m, k)));
        }
        acc += &term;
    }
    acc
}

/// `n! / (a! (n-a)!)`.
pub fn binomial(n: u32, a: u32) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..a {
        out = out * (n - i) / (i + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions_of;
    use crate::linalg::{is_identity, mat_mul};
    use crate::poly::{q_frac, Coefficient};

    fn p<const N: usize>(parts: [u32; N]) -> Partition {
        Partition::from(parts)
    }

    fn tuple(s: &str) -> PartitionTuple {
        s.parse().unwrap()
    }

    #[test]
    fn frobenius_examples_and_round_trip() {
        assert_eq!(powersum_to_schur(&p([1])), BTreeMap::from([(p([1]), 1)]));
        assert_eq!(
            powersum_to_schur(&p([2])),
            BTreeMap::from([(p([2]), 1), (p([1, 1]), -1)])
        );
        assert_eq!(
            powersum_to_schur(&p([1, 1])),
            BTreeMap::from([(p([2]), 1), (p([1, 1]), 1)])
        );
        assert_eq!(
            schur_to_powersum(&p([2])),
            BTreeMap::from([(p([2]), q_frac(1, 2)), (p([1, 1]), q_frac(1, 2))])
        );
        for n in 1..=6 {
            for lambda in partitions_of(n) {
                let mut back: BTreeMap<Partition, Q> = BTreeMap::new();
                for (mu, w) in schur_to_powersum(&lambda) {
                    for (nu, c) in powersum_to_schur(&mu) {
                        *back.entry(nu).or_insert_with(Q::zero) += &w * q(c);
                    }
                }
                back.retain(|_, c| !c.is_zero());
                assert_eq!(back, BTreeMap::from([(lambda.clone(), q(1))]));
            }
        }
    }

    #[test]
    fn lr_examples() {
        let c = |s: &str, r: u32| stretched_lr(&tuple(s), r).coeffs;
        assert_eq!(c("1", 2), BTreeMap::from([(p([2]), 1), (p([1, 1]), -1)]));
        assert_eq!(
            c("1", 3),
            BTreeMap::from([(p([3]), 1), (p([2, 1]), -1), (p([1, 1, 1]), 1)])
        );
        assert_eq!(c("1|1", 1), BTreeMap::from([(p([2]), 1), (p([1, 1]), 1)]));
    }

    /// `s_lambda(x_1..x_v)` by the bialternant formula with exact rationals.
    fn schur_eval(lambda: &Partition, xs: &[Q]) -> Q {
        let v = xs.len();
        if lambda.length() > v {
            return Q::zero();
        }
        let det = |exps: &[u32]| {
            let mut m: Vec<Vec<Q>> = xs
                .iter()
                .map(|x| {
                    exps.iter()
                        .map(|&e| num_traits::pow(x.clone(), e as usize))
                        .collect()
                })
                .collect();
            let mut d = Q::one();
            for k in 0..v {
                let Some(piv) = (k..v).find(|&i| !m[i][k].is_zero()) else {
                    return Q::zero();
                };
                if piv != k {
                    m.swap(piv, k);
                    d = -d;
                }
                d *= &m[k][k];
                for i in k + 1..v {
                    let f = &m[i][k] / &m[k][k];
                    for j in k..v {
                        let s = &m[k][j] * &f;
                        m[i][j] -= s;
                    }
                }
            }
            d
        };
        let num: Vec<u32> = (0..v)
            .map(|j| lambda.parts().get(j).copied().unwrap_or(0) + (v - 1 - j) as u32)
            .collect();
        let den: Vec<u32> = (0..v).map(|j| (v - 1 - j) as u32).collect();
        det(&num) / det(&den)
    }

    #[test]
    fn lr_numeric_identity() {
        let xs: Vec<Q> = [(1, 2), (2, 3), (-3, 5), (5, 7), (7, 4)]
            .iter()
            .map(|&(a, b)| q_frac(a, b))
            .collect();
        for r in 1..=3 {
            let xr: Vec<Q> = xs
                .iter()
                .map(|x| num_traits::pow(x.clone(), r as usize))
                .collect();
            for total in 1..=3u32 {
                for l in 1..=3usize {
                    for degrees in compositions(total, l) {
                        for colors in PartitionTuple::all_with_degrees(&degrees) {
                            let lhs: Q = colors
                                .entries()
                                .iter()
                                .map(|c| schur_eval(c, &xr))
                                .product();
                            let rhs: Q = stretched_lr(&colors, r)
                                .coeffs
                                .iter()
                                .map(|(lam, &c)| schur_eval(lam, &xs) * q(c))
                                .sum();
                            assert_eq!(lhs, rhs, "{colors} r={r}");
                        }
                    }
                }
            }
        }
    }

    fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
        if parts == 1 {
            return if total > 0 { vec![vec![total]] } else { vec![] };
        }
        (1..total)
            .flat_map(|first| {
                compositions(total - first, parts - 1)
                    .into_iter()
                    .map(move |mut rest| {
                        rest.insert(0, first);
                        rest
                    })
            })
            .collect()
    }

    #[test]
    fn lr_positive_and_induction_dimension() {
        for n in 2..=5u32 {
            for a in 1..n {
                for degrees in [vec![a, n - a]] {
                    for colors in PartitionTuple::all_with_degrees(&degrees) {
                        let lr = stretched_lr(&colors, 1);
                        assert!(lr.coeffs.values().all(|&c| c > 0));
                        let lhs: BigInt =
                            lr.coeffs.iter().map(|(lam, &c)| lam.dimension() * c).sum();
                        let e = colors.entries();
                        let rhs = binomial(n, a) * e[0].dimension() * e[1].dimension();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn s_star_examples() {
        let v = Bracket::nu(1).expand();
        assert_eq!(
            s_star(&p([1])),
            RationalFunction::bracket_ratio(Bracket::nu(1), Bracket::t(1))
        );
        let two = &RationalFunction::new(&v * &v, [Bracket::t(1), Bracket::t(1)]) + &p_principal(2);
        assert_eq!(s_star(&p([2])), two.scale(&q_frac(1, 2)));
        let mix = |ce: i64| {
            ExactLaurent::monomial(q(1), exp(ce, 2), exp(1, 2))
                - ExactLaurent::monomial(q(1), exp(-ce, 2), exp(-1, 2))
        };
        assert_eq!(
            s_star_hook(&p([2])),
            RationalFunction::new(&v * &mix(1), [Bracket::t(1), Bracket::t(2)])
        );
        assert_eq!(
            s_star_hook(&p([1, 1])),
            RationalFunction::new(&v * &mix(-1), [Bracket::t(1), Bracket::t(2)])
        );
        for n in 1..=6 {
            for lambda in partitions_of(n) {
                assert_eq!(s_star(&lambda), s_star_hook(&lambda), "{lambda}");
            }
        }
    }

    #[test]
    fn m_matrix_examples() {
        assert_eq!(m_matrix(1), vec![vec![RationalFunction::one()]]);
        let m = m_matrix(2);
        assert_eq!(m[0][0], ExactLaurent::t_pow(exp(-1, 2)).into());
        assert_eq!(m[0][1], (-ExactLaurent::t_pow(exp(1, 2))).into());
    }

    /// `M^{-1}_{lambda mu} = sum_tau z^{-1} chi chi (-[1]) / prod_j (-[tau_j])`.
    fn m_inverse_closed(n: u32) -> Vec<Vec<RationalFunction>> {
        let table = character_table(n);
        let weights: Vec<RationalFunction> = table
            .partitions()
            .iter()
            .map(|tau| {
                let den: Vec<Bracket> = tau.parts().iter().map(|&m| Bracket::t(m)).collect();
                let sign = if tau.length() % 2 == 1 { 1 } else { -1 };
                RationalFunction::new(Bracket::t(1).expand().scale(&q(sign)), den)
                    .scale(&tau.inv_z())
            })
            .collect();
        table
            .partitions()
            .iter()
            .map(|lam| {
                table
                    .partitions()
                    .iter()
                    .map(|mu| class_sum(&table, lam, mu, &weights))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn m_matrix_inverses_agree() {
        for n in 1..=5 {
            let m = m_matrix(n);
            let closed = m_inverse_closed(n);
            assert!(is_identity(&mat_mul(&m, &closed)), "n={n}");
            assert_eq!(m_matrix_inverse(n).unwrap(), closed, "n={n}");
        }
    }

    #[test]
    fn s_q_examples_and_consistency() {
        let v = s_q_vector(&p([1]), 1);
        assert_eq!(v.coeffs[&p([1])], -RationalFunction::bracket(Bracket::t(1)));
        for n in 1..=4 {
            for k in 1..=3 {
                for mu in partitions_of(n) {
                    let schur = s_q_vector(&mu, k).coeffs;
                    let mut from_p: BTreeMap<Partition, RationalFunction> = BTreeMap::new();
                    for (tau, c) in s_q_powersum(&mu, k) {
                        for (lam, x) in powersum_to_schur(&tau) {
                            let e = from_p.entry(lam).or_insert_with(RationalFunction::zero);
                            *e += &c.scale(&q(x));
                        }
                    }
                    from_p.retain(|_, c| !c.is_zero());
                    assert_eq!(schur, from_p, "mu={mu} k={k}");
                }
            }
        }
    }

    #[test]
    fn principal_specialization_examples() {
        let one = principal_specialize_sq(&p([1]), 1);
        assert_eq!(
            one,
            (&-RationalFunction::bracket(Bracket::t(1))).times(&s_star(&p([1])))
        );
        // s_{lambda;q^k}(N-point) = s_{lambda;q^N}(k-point) at q = 3/2
        let qv = q_frac(3, 2);
        let t_half = q_frac(2, 3);
        let (k, n) = (2u32, 4u32);
        for lambda in partitions_of(3) {
            let lhs = principal_specialize_sq(&lambda, k)
                .evaluate(&t_half, &num_traits::pow(qv.clone(), n as usize).recip())
                .unwrap();
            let rhs = principal_specialize_sq(&lambda, n)
                .evaluate(&t_half, &num_traits::pow(qv.clone(), k as usize).recip())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
