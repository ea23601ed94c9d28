//! Published reference values: s*-basis tables of small colored invariants,
//! closed forms, and g-tables. Exponents listed as `(a, b)` mean `a k / b`.

use crate::combinatorics::{Partition, PartitionTuple};
use crate::lmv::LaurentU;
use crate::poly::{exp, int_exp, q, Bracket, ExactLaurent, RationalFunction, Var};

pub struct SStarTable {
    pub family: &'static str,
    pub r: u32,
    pub l: u32,
    pub ks: &'static [i64],
    pub colors: &'static str,
    pub nu: (i64, i64),
    /// `(lambda, c, t exponent)`.
    pub terms: &'static [(&'static str, i64, (i64, i64))],
}

pub const SSTAR_TABLES: &[SStarTable] = &[
    SStarTable {
        family: "T(2,k)",
        r: 2,
        l: 1,
        ks: &[1, 3],
        colors: "1",
        nu: (1, 2),
        terms: &[("2", 1, (-1, 2)), ("1,1", -1, (1, 2))],
    },
    SStarTable {
        family: "T(2,k)",
        r: 2,
        l: 1,
        ks: &[1, 3],
        colors: "2",
        nu: (1, 1),
        terms: &[("4", 1, (-1, 1)), ("3,1", -1, (1, 1)), ("2,2", 1, (2, 1))],
    },
    SStarTable {
        family: "T(2,k)",
        r: 2,
        l: 1,
        ks: &[1, 3],
        colors: "1,1",
        nu: (1, 1),
        terms: &[
            ("2,2", 1, (-2, 1)),
            ("2,1,1", -1, (-1, 1)),
            ("1,1,1,1", 1, (1, 1)),
        ],
    },
    SStarTable {
        family: "T(2,k)",
        r: 2,
        l: 1,
        ks: &[1, 3],
        colors: "3",
        nu: (3, 2),
        terms: &[
            ("6", 1, (-3, 2)),
            ("5,1", -1, (3, 2)),
            ("4,2", 1, (7, 2)),
            ("3,3", -1, (9, 2)),
        ],
    },
    SStarTable {
        family: "T(2,k)",
        r: 2,
        l: 1,
        ks: &[1, 3],
        colors: "2,1",
        nu: (3, 2),
        terms: &[
            ("4,2", 1, (-5, 2)),
            ("4,1,1", -1, (-3, 2)),
            ("3,3", -1, (-3, 2)),
            ("2,2,2", 1, (3, 2)),
            ("3,1,1,1", 1, (3, 2)),
            ("2,2,1,1", -1, (5, 2)),
        ],
    },
    SStarTable {
        family: "T(2,k)",
        r: 2,
        l: 1,
        ks: &[1, 3],
        colors: "1,1,1",
        nu: (3, 2),
        terms: &[
            ("2,2,2", 1, (-9, 2)),
            ("2,2,1,1", -1, (-7, 2)),
            ("2,1,1,1,1", 1, (-3, 2)),
            ("1,1,1,1,1,1", -1, (3, 2)),
        ],
    },
    SStarTable {
        family: "T(3,k)",
        r: 3,
        l: 1,
        ks: &[1, 2],
        colors: "1",
        nu: (1, 1),
        terms: &[("3", 1, (-1, 1)), ("2,1", -1, (0, 1)), ("1,1,1", 1, (1, 1))],
    },
    SStarTable {
        family: "T(3,k)",
        r: 3,
        l: 1,
        ks: &[1, 2],
        colors: "2",
        nu: (2, 1),
        terms: &[
            ("6", 1, (-2, 1)),
            ("5,1", -1, (0, 1)),
            ("4,1,1", 1, (2, 1)),
            ("3,3", 1, (2, 1)),
            ("3,2,1", -1, (3, 1)),
            ("2,2,2", 1, (4, 1)),
        ],
    },
    SStarTable {
        family: "T(3,k)",
        r: 3,
        l: 1,
        ks: &[1, 2],
        colors: "1,1",
        nu: (2, 1),
        terms: &[
            ("3,3", 1, (-4, 1)),
            ("3,2,1", -1, (-3, 1)),
            ("3,1,1,1", 1, (-2, 1)),
            ("2,2,2", 1, (-2, 1)),
            ("2,1,1,1,1", -1, (0, 1)),
            ("1,1,1,1,1,1", 1, (2, 1)),
        ],
    },
    SStarTable {
        family: "T(2,2k)",
        r: 1,
        l: 2,
        ks: &[1, 2],
        colors: "1|1",
        nu: (0, 1),
        terms: &[("2", 1, (-1, 1)), ("1,1", 1, (1, 1))],
    },
    SStarTable {
        family: "T(2,2k)",
        r: 1,
        l: 2,
        ks: &[1, 2],
        colors: "2|1",
        nu: (0, 1),
        terms: &[("3", 1, (-2, 1)), ("2,1", 1, (1, 1))],
    },
    SStarTable {
        family: "T(2,2k)",
        r: 1,
        l: 2,
        ks: &[1, 2],
        colors: "1,1|1",
        nu: (0, 1),
        terms: &[("2,1", 1, (-1, 1)), ("1,1,1", 1, (2, 1))],
    },
    SStarTable {
        family: "T(2,2k)",
        r: 1,
        l: 2,
        ks: &[1, 2],
        colors: "2|2",
        nu: (0, 1),
        terms: &[("4", 1, (-4, 1)), ("3,1", 1, (0, 1)), ("2,2", 1, (2, 1))],
    },
    SStarTable {
        family: "T(2,2k)",
        r: 1,
        l: 2,
        ks: &[1, 2],
        colors: "2|1,1",
        nu: (0, 1),
        terms: &[("3,1", 1, (-2, 1)), ("2,1,1", 1, (2, 1))],
    },
    SStarTable {
        family: "T(2,2k)",
        r: 1,
        l: 2,
        ks: &[1, 2],
        colors: "1,1|1,1",
        nu: (0, 1),
        terms: &[
            ("2,2", 1, (-2, 1)),
            ("2,1,1", 1, (0, 1)),
            ("1,1,1,1", 1, (4, 1)),
        ],
    },
    SStarTable {
        family: "T(3,3k)",
        r: 1,
        l: 3,
        ks: &[1, 2],
        colors: "1|1|1",
        nu: (0, 1),
        terms: &[("3", 1, (-3, 1)), ("2,1", 2, (0, 1)), ("1,1,1", 1, (3, 1))],
    },
    SStarTable {
        family: "T(3,3k)",
        r: 1,
        l: 3,
        ks: &[1, 2],
        colors: "2|1|1",
        nu: (0, 1),
        terms: &[
            ("4", 1, (-5, 1)),
            ("3,1", 2, (-1, 1)),
            ("2,2", 1, (1, 1)),
            ("2,1,1", 1, (3, 1)),
        ],
    },
    SStarTable {
        family: "T(3,3k)",
        r: 1,
        l: 3,
        ks: &[1, 2],
        colors: "1,1|1|1",
        nu: (0, 1),
        terms: &[
            ("3,1", 1, (-3, 1)),
            ("2,2", 1, (-1, 1)),
            ("2,1,1", 2, (1, 1)),
            ("1,1,1,1", 1, (5, 1)),
        ],
    },
];

impl SStarTable {
    pub fn colors(&self) -> PartitionTuple {
        self.colors.parse().expect("reference colors parse")
    }

    /// `(nu exponent, [(lambda, c, t exponent)])` at a given `k`.
    pub fn at(&self, k: i64) -> (crate::poly::Exp, Vec<(Partition, i64, crate::poly::Exp)>) {
        let terms = self
            .terms
            .iter()
            .map(|&(lam, c, (a, b))| {
                (
                    lam.parse().expect("reference partition parses"),
                    c,
                    exp(a * k, b),
                )
            })
            .collect();
        (exp(self.nu.0 * k, self.nu.1), terms)
    }
}

fn bracket_or_zero(var: Var, m: i64) -> ExactLaurent {
    match m {
        0 => ExactLaurent::zero(),
        m if m > 0 => ExactLaurent::bracket(var, m as u32),
        m => -ExactLaurent::bracket(var, (-m) as u32),
    }
}

fn t_pow(e: crate::poly::Exp) -> ExactLaurent {
    ExactLaurent::t_pow(e)
}

fn nu_pow(e: crate::poly::Exp) -> ExactLaurent {
    ExactLaurent::nu_pow(e)
}

/// The knot `T(2,k)` colored by `(1)`:
/// `[1]_nu / [1]_t ([k+1]_t / [2]_t nu^{(k-1)/2} - [k-1]_t / [2]_t nu^{(k+1)/2})`.
pub fn two_strand_knot_fundamental(k: i64) -> RationalFunction {
    let a = &bracket_or_zero(Var::T, k + 1) * &nu_pow(exp(k - 1, 2));
    let b = &bracket_or_zero(Var::T, k - 1) * &nu_pow(exp(k + 1, 2));
    let inner = RationalFunction::new(a - b, [Bracket::t(2)]);
    inner.mul_bracket(Bracket::nu(1)).div_bracket(Bracket::t(1))
}

/// The link `T(2,2k)` colored by `(1),(1)`:
/// `[1]_nu / [1]_t ((t^{(2k-1)/2} + t^{-(2k-1)/2}) / [2]_t nu^{1/2}
///  - (t^{(2k+1)/2} + t^{-(2k+1)/2}) / [2]_t nu^{-1/2})`.
pub fn two_strand_link_fundamental(k: i64) -> RationalFunction {
    let sym = |m: i64| t_pow(exp(m, 2)) + t_pow(exp(-m, 2));
    let a = &sym(2 * k - 1) * &nu_pow(exp(1, 2));
    let b = &sym(2 * k + 1) * &nu_pow(exp(-1, 2));
    let inner = RationalFunction::new(a - b, [Bracket::t(2)]);
    inner.mul_bracket(Bracket::nu(1)).div_bracket(Bracket::t(1))
}

/// `-nu^k [1]_nu^2 (nu + nu^{-1} - t - t^{-1}) N / ([3]_t [2]_t^3 [1]_t)` with
/// `N = [k+1][k][k-1]^2` for the row and `[k+1]^2[k][k-1]` for the column.
pub fn two_strand_fhat_degree_two(k: i64, row: bool) -> RationalFunction {
    let b = |m: i64| bracket_or_zero(Var::T, m);
    let num = if row {
        &(&(&b(k + 1) * &b(k)) * &b(k - 1)) * &b(k - 1)
    } else {
        &(&(&b(k + 1) * &b(k + 1)) * &b(k)) * &b(k - 1)
    };
    let mid =
        &(&nu_pow(int_exp(1)) + &nu_pow(int_exp(-1))) - &(&t_pow(int_exp(1)) + &t_pow(int_exp(-1)));
    let nu_sq = ExactLaurent::bracket(Var::Nu, 1).pow(2);
    let top = &(&(&nu_pow(int_exp(k)) * &nu_sq) * &mid) * &num;
    RationalFunction::new(
        top.scale(&q(-1)),
        [
            Bracket::t(3),
            Bracket::t(2),
            Bracket::t(2),
            Bracket::t(2),
            Bracket::t(1),
        ],
    )
}

pub struct GReference {
    pub family: &'static str,
    pub r: u32,
    pub l: u32,
    /// Largest total color size covered by the listing.
    pub max_size: u32,
    /// Entries related by permuting colors are listed once.
    pub symmetric: bool,
    pub entries: &'static [GEntry],
}

/// `(colors, lambda, [(power of u, coefficient)])`.
pub type GEntry = (&'static str, &'static str, &'static [(i64, i64)]);

const ONE: &[(i64, i64)] = &[(0, 1)];
const U1: &[(i64, i64)] = &[(1, 1), (-1, 1)];
const U101: &[(i64, i64)] = &[(1, 1), (0, 1), (-1, 1)];
const U2_1_2: &[(i64, i64)] = &[(2, 1), (1, 1), (0, 2), (-1, 1), (-2, 1)];

pub const G_TABLES: &[GReference] = &[
    GReference {
        family: "T(2,k)",
        r: 2,
        l: 1,
        max_size: 4,
        symmetric: false,
        entries: &[
            ("1", "2", ONE),
            ("1,1", "2,2", ONE),
            ("1,1,1", "2,2,2", U1),
            ("2,1", "2,2,2", ONE),
            ("1,1,1", "3,2,1", ONE),
            (
                "1,1,1,1",
                "2,2,2,2",
                &[(3, 1), (1, 2), (0, 1), (-1, 2), (-3, 1)],
            ),
            ("2,1,1", "2,2,2,2", U2_1_2),
            ("1,1,1,1", "3,2,2,1", U2_1_2),
            ("2,1,1", "3,2,2,1", U101),
            ("2,2", "2,2,2,2", U1),
            ("1,1,1,1", "4,2,2", U1),
            ("1,1,1,1", "3,3,1,1", U1),
            ("3,1", "2,2,2,2", ONE),
            ("2,2", "3,2,2,1", ONE),
            ("2,1,1", "4,2,2", ONE),
            ("2,1,1", "3,3,1,1", ONE),
            ("1,1,1,1", "4,3,1", ONE),
            ("1,1,1,1", "4,2,1,1", ONE),
            ("1,1,1,1", "3,3,2", ONE),
        ],
    },
    GReference {
        family: "T(3,k)",
        r: 3,
        l: 1,
        max_size: 3,
        symmetric: false,
        entries: &[
            ("1", "3", ONE),
            ("1,1", "3,3", U1),
            ("2", "3,3", ONE),
            ("1,1", "4,2", ONE),
            (
                "1,1,1",
                "3,3,3",
                &[(4, 1), (2, 2), (1, 2), (0, 2), (-1, 2), (-2, 2), (-4, 1)],
            ),
            (
                "2,1",
                "3,3,3",
                &[(3, 1), (2, 1), (1, 2), (0, 3), (-1, 2), (-2, 1), (-3, 1)],
            ),
            (
                "1,1,1",
                "4,3,2",
                &[(3, 1), (2, 1), (1, 2), (0, 3), (-1, 2), (-2, 1), (-3, 1)],
            ),
            ("2,1", "4,3,2", &[(2, 1), (1, 2), (0, 2), (-1, 2), (-2, 1)]),
            ("1,1,1", "5,3,1", U2_1_2),
            ("2,1", "5,3,1", U101),
            ("3", "3,3,3", U1),
            ("1,1,1", "6,3", U1),
            ("1,1,1", "5,2,2", U1),
            ("1,1,1", "4,4,1", U1),
            ("3", "4,3,2", ONE),
            ("2,1", "6,3", ONE),
            ("2,1", "5,2,2", ONE),
            ("2,1", "4,4,1", ONE),
            ("1,1,1", "6,2,1", ONE),
            ("1,1,1", "5,4", ONE),
        ],
    },
    GReference {
        family: "T(2,2k)",
        r: 1,
        l: 2,
        max_size: 5,
        symmetric: true,
        entries: &[
            ("0|1", "1", ONE),
            ("1|1", "2", ONE),
            ("2|1", "3", ONE),
            ("3|1", "4", ONE),
            ("4|1", "5", ONE),
            ("2|2", "4", U101),
            ("2|1,1", "4", ONE),
            ("2|2", "3,1", ONE),
            ("3|2", "5", &[(2, 1), (1, 1), (0, 3), (-1, 1), (-2, 1)]),
            ("3|2", "4,1", U101),
            ("3|1,1", "5", U101),
            ("2,1|2", "5", U101),
            ("3|2", "3,2", ONE),
            ("3|1,1", "4,1", ONE),
            ("2,1|2", "4,1", ONE),
            ("2,1|1,1", "5", ONE),
        ],
    },
];

impl GReference {
    /// Every listed entry, with color permutations added when the listing is
    /// up to symmetry.
    pub fn expanded(&self) -> Vec<(PartitionTuple, Partition, LaurentU)> {
        let mut out = Vec::new();
        for &(colors, lambda, poly) in self.entries {
            let colors: PartitionTuple = colors.parse().expect("reference colors parse");
            let lambda: Partition = lambda.parse().expect("reference partition parses");
            let u = LaurentU::from_pairs(poly);
            if self.symmetric {
                let mut rev = colors.entries().to_vec();
                rev.reverse();
                let rev = PartitionTuple::new(rev);
                if rev != colors {
                    out.push((rev, lambda.clone(), u.clone()));
                }
            }
            out.push((colors, lambda, u));
        }
        out.sort();
        out.dedup();
        out
    }
}
