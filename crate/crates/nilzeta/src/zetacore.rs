//! Assembly of the local normal zeta function of the free class-2
//! nilpotent group on `d` generators as a bivariate rational function
//!
//! `W_d(P, T) = zeta_{Z^d}(T) * 1/(1 - P^{dd'} T^{d+d'}) * A(P, T)`
//!
//! where `A` is a finite sum of rational summands indexed by admissible
//! subset pairs `(I, J)`.  Each summand is parametrised by a merged total
//! order on the index values `phi(I)` and `J`, from which the numerical
//! data `X_j`, `Y_i`, `Y'_r` (monomials in `(P, T)`) are read off.

use rayon::prelude::*;

use num_bigint::BigInt;
use num_traits::One;

use crate::laurent::{den_diff, den_lcm, CycloFactor, FactoredRat, LaurentPoly, Monomial};
use crate::qseries::{gauss_binom_inv, igusa_f};
use crate::{Error, Result};

/// Ambient parameters: `d` generators, `d' = d(d-1)/2` relations, Hirsch
/// length `d + d'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZetaParams {
    pub d: u32,
    pub d_prime: u32,
    pub hirsch: u32,
}

impl ZetaParams {
    pub fn new(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput(format!("need d >= 2, got {d}")));
        }
        let d_prime = d * (d - 1) / 2;
        Ok(ZetaParams {
            d,
            d_prime,
            hirsch: d + d_prime,
        })
    }
}

/// `phi(i) = i d - i(i+1)/2`, the position of the i-th jump in the
/// commutator lattice; strictly increasing with `phi(0) = 0` and
/// `phi(d-1) = d'`.
pub fn phi(i: u32, params: &ZetaParams) -> u32 {
    assert!(i < params.d, "phi argument {i} out of range for d = {}", params.d);
    i * params.d - i * (i + 1) / 2
}

/// Admissible pair: `I` inside `[d-2]`, `J` inside `[d'-1]`, equal sizes,
/// `phi(i_r) <= j_r` componentwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetPair {
    i_set: Vec<u32>,
    j_set: Vec<u32>,
}

impl SubsetPair {
    pub fn new(i_set: Vec<u32>, j_set: Vec<u32>, params: &ZetaParams) -> Result<Self> {
        let incr = |v: &[u32]| v.windows(2).all(|w| w[0] < w[1]);
        let ok = i_set.len() == j_set.len()
            && incr(&i_set)
            && incr(&j_set)
            && i_set.iter().all(|&i| 1 <= i && i + 1 < params.d)
            && j_set.iter().all(|&j| 1 <= j && j < params.d_prime)
            && i_set
                .iter()
                .zip(&j_set)
                .all(|(&i, &j)| phi(i, params) <= j);
        if !ok {
            return Err(Error::InvalidInput(format!(
                "({i_set:?}, {j_set:?}) is not an admissible pair for d = {}",
                params.d
            )));
        }
        Ok(SubsetPair { i_set, j_set })
    }

    pub fn i_set(&self) -> &[u32] {
        &self.i_set
    }

    pub fn j_set(&self) -> &[u32] {
        &self.j_set
    }

    pub fn h(&self) -> usize {
        self.i_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i_set.is_empty()
    }

    /// Stable text key, e.g. `I=1,2|J=3,5` or `I=|J=` for the empty pair.
    pub fn label(&self) -> String {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("I={}|J={}", join(&self.i_set), join(&self.j_set))
    }
}

/// All admissible pairs, ordered by size then lexicographically.
pub fn enumerate_pairs(params: &ZetaParams) -> Vec<SubsetPair> {
    let d = params.d;
    let dp = params.d_prime;
    let i_range: Vec<u32> = (1..=d.saturating_sub(2)).collect();
    let mut out = Vec::new();
    let max_h = (d.saturating_sub(2) as usize).min(dp.saturating_sub(1) as usize);
    for h in 0..=max_h {
        let mut i_choice = Vec::with_capacity(h);
        subsets_of_size(&i_range, h, 0, &mut i_choice, &mut |i_set| {
            let phis: Vec<u32> = i_set.iter().map(|&i| phi(i, params)).collect();
            let mut j_choice = Vec::with_capacity(h);
            admissible_j(&phis, dp, 0, &mut j_choice, &mut |j_set| {
                out.push(SubsetPair {
                    i_set: i_set.to_vec(),
                    j_set: j_set.to_vec(),
                });
            });
        });
    }
    out
}

fn subsets_of_size(range: &[u32], h: usize, from: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if cur.len() == h {
        f(cur);
        return;
    }
    for idx in from..range.len() {
        cur.push(range[idx]);
        subsets_of_size(range, h, idx + 1, cur, f);
        cur.pop();
    }
}

fn admissible_j(phis: &[u32], dp: u32, r: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if r == phis.len() {
        f(cur);
        return;
    }
    let lo = phis[r].max(1).max(cur.last().map_or(0, |&x| x + 1));
    for j in lo..dp {
        cur.push(j);
        admissible_j(phis, dp, r + 1, cur, f);
        cur.pop();
    }
}

/// Tag distinguishing the two copies of the index line: side A carries the
/// values `phi(i)` for `i` in `[d-2]_0`, side B the values `[d'-1]_0`
/// together with the top boundary `d'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tagged {
    pub value: u32,
    pub side: Side,
}

/// Case rules for the total order attached to a pair.  Zero is minimal on
/// either side (the two zeros coincide), `d'` on side B is maximal, each
/// side keeps its natural order, and across sides
///
/// `x_A < y_B  iff  exists r with x <= phi(i_r) and y >= j_r`,
///
/// whose negation is exactly the printed rule for `y_B < x_A`.
pub fn merged_compare(
    x: Tagged,
    y: Tagged,
    pair: &SubsetPair,
    params: &ZetaParams,
) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    if x.side == y.side {
        return x.value.cmp(&y.value);
    }
    if x.value == 0 || y.value == 0 {
        return x.value.cmp(&y.value);
    }
    let dp = params.d_prime;
    let b_top = |e: Tagged| e.side == Side::B && e.value == dp;
    match (b_top(x), b_top(y)) {
        (true, true) => return Equal,
        (true, false) => return Greater,
        (false, true) => return Less,
        _ => {}
    }
    let a_before_b = |a_val: u32, b_val: u32| {
        pair.i_set
            .iter()
            .zip(&pair.j_set)
            .any(|(&i, &j)| a_val <= phi(i, params) && b_val >= j)
    };
    match x.side {
        Side::A => {
            if a_before_b(x.value, y.value) {
                Less
            } else {
                Greater
            }
        }
        Side::B => {
            if a_before_b(y.value, x.value) {
                Greater
            } else {
                Less
            }
        }
    }
}

/// The order of a pair, materialized as rank tables over the finite
/// tagged domain so that the index maps below are table lookups.
#[derive(Clone, Debug)]
pub struct MergedOrder {
    i_set: Vec<u32>,
    j_set: Vec<u32>,
    d_prime: u32,
    rank_a: Vec<u32>,
    rank_b: Vec<u32>,
}

impl MergedOrder {
    pub fn new(pair: &SubsetPair, params: &ZetaParams) -> Self {
        let mut domain: Vec<Tagged> = Vec::new();
        for i in 0..=params.d - 2 {
            domain.push(Tagged {
                value: phi(i, params),
                side: Side::A,
            });
        }
        for j in 0..=params.d_prime {
            domain.push(Tagged {
                value: j,
                side: Side::B,
            });
        }
        let rank = |e: Tagged| {
            domain
                .iter()
                .filter(|&&o| merged_compare(o, e, pair, params) == std::cmp::Ordering::Less)
                .count() as u32
        };
        let rank_a = (0..=params.d - 2)
            .map(|i| {
                rank(Tagged {
                    value: phi(i, params),
                    side: Side::A,
                })
            })
            .collect();
        let rank_b = (0..=params.d_prime)
            .map(|j| {
                rank(Tagged {
                    value: j,
                    side: Side::B,
                })
            })
            .collect();
        MergedOrder {
            i_set: pair.i_set.clone(),
            j_set: pair.j_set.clone(),
            d_prime: params.d_prime,
            rank_a,
            rank_b,
        }
    }

    /// `phi(i) < j` in the merged order, `i` given by its index.
    pub fn phi_precedes(&self, i: u32, j: u32) -> bool {
        self.rank_a[i as usize] < self.rank_b[j as usize]
    }

    /// `j(i)`: least element of `J + {d'}` above `phi(i)`.
    pub fn j_of_i(&self, i: u32) -> u32 {
        self.j_set
            .iter()
            .copied()
            .chain(std::iter::once(self.d_prime))
            .find(|&j| self.phi_precedes(i, j))
            .expect("d' is above every phi value")
    }

    /// `i(j)`: greatest element of `I + {0}` with `phi(i)` below `j`.
    pub fn i_of_j(&self, j: u32) -> u32 {
        self.i_set
            .iter()
            .rev()
            .copied()
            .find(|&i| self.phi_precedes(i, j))
            .unwrap_or(0)
    }
}

/// The monomials attached to a pair.  All share one shape:
/// `datum(i, j) = P^{i(d-i) + (d'-j)(d+j-phi(i))} T^{(d-i) + (d'-j)}`.
#[derive(Clone, Debug)]
pub struct NumericalData {
    /// `X_j = datum(i(j), j)` for `j` in `[d'-1]`.
    pub x: Vec<Monomial>,
    /// `Y_i = datum(i, j(i))` for `i` in `[d-2]`.
    pub y: Vec<Monomial>,
    /// `Y'_r = datum(i_{r-1}, j_r)` for `r` in `[h]`, with `i_0 = 0`.
    pub y_prime: Vec<Monomial>,
}

impl NumericalData {
    pub fn x_at(&self, j: u32) -> Monomial {
        self.x[j as usize - 1]
    }

    pub fn y_at(&self, i: u32) -> Monomial {
        self.y[i as usize - 1]
    }
}

fn datum(i: u32, j: u32, params: &ZetaParams) -> Monomial {
    let (d, dp) = (i64::from(params.d), i64::from(params.d_prime));
    let phi_i = i64::from(phi(i, params));
    let (i, j) = (i64::from(i), i64::from(j));
    Monomial::new(
        i * (d - i) + (dp - j) * (d + j - phi_i),
        (d - i) + (dp - j),
    )
}

pub fn numerical_data(pair: &SubsetPair, params: &ZetaParams) -> NumericalData {
    let order = MergedOrder::new(pair, params);
    let x = (1..params.d_prime)
        .map(|j| datum(order.i_of_j(j), j, params))
        .collect();
    let y = (1..=params.d - 2)
        .map(|i| datum(i, order.j_of_i(i), params))
        .collect();
    let mut prev_i = 0;
    let mut y_prime = Vec::with_capacity(pair.h());
    for &i_r in &pair.i_set {
        y_prime.push(datum(prev_i, order.j_of_i(i_r), params));
        prev_i = i_r;
    }
    NumericalData { x, y, y_prime }
}

fn cyclo(m: Monomial) -> CycloFactor {
    CycloFactor::try_new(m.p, m.t, 1).expect("numerical data stays inside the factor family")
}

/// `F_n` over a window of X or Y data: variables strictly between the
/// bounds, in ascending index order.  Empty windows give `F_1 = 1`.
fn window_f(data: &NumericalData, x_side: bool, lo: u32, hi: u32) -> FactoredRat {
    let vars: Vec<Monomial> = (lo + 1..hi)
        .map(|k| if x_side { data.x_at(k) } else { data.y_at(k) })
        .collect();
    igusa_f(hi - lo, &vars).expect("window data is valid for F")
}

/// The summand `A_{I,J}`: the top X-window `F`, the polynomial
/// `prod_{i<i_h}(1 - P^i T)`, and per jump `r` two inverted binomials,
/// the factor `Y_{i_r} / ((1-Y_{i_r})(1-Y'_r))`, and the two inner
/// window `F`s.
pub fn term_a_ij(pair: &SubsetPair, params: &ZetaParams) -> FactoredRat {
    let data = numerical_data(pair, params);
    let h = pair.h();
    let top_j = pair.j_set.last().copied().unwrap_or(0);
    let mut acc = window_f(&data, true, top_j, params.d_prime);

    let i_top = pair.i_set.last().copied().unwrap_or(0);
    let mut inverse_abelian = LaurentPoly::one();
    for i in 0..i_top {
        inverse_abelian = inverse_abelian.mul_one_minus(Monomial::new(i64::from(i), 1));
    }
    acc = acc.mul_poly(&inverse_abelian);

    for r in 0..h {
        let (i_r, j_r) = (pair.i_set[r], pair.j_set[r]);
        let i_prev = if r == 0 { 0 } else { pair.i_set[r - 1] };
        let j_prev = if r == 0 { 0 } else { pair.j_set[r - 1] };
        let j_next = pair
            .j_set
            .get(r + 1)
            .copied()
            .unwrap_or(params.d_prime);
        let phi_r = phi(i_r, params);
        let b1 = gauss_binom_inv(j_next - phi_r, j_r - phi_r)
            .expect("admissibility orders the binomial arguments");
        let b2 = gauss_binom_inv(params.d - i_prev, params.d - i_r)
            .expect("index sets are increasing");
        let y_r = data.y_at(i_r);
        let y_pr = data.y_prime[r];
        acc = acc
            .mul_poly(&(&b1 * &b2))
            .mul_term(&BigInt::one(), y_r)
            .div_factor(cyclo(y_r))
            .div_factor(cyclo(y_pr));
        acc = &acc * &window_f(&data, true, j_prev, j_r);
        acc = &acc * &window_f(&data, false, i_prev, i_r);
    }
    acc
}

/// `A = sum over admissible pairs of A_{I,J}`, combined over the least
/// common denominator.  Summands expand independently and the final sum
/// is exact, so any reduction order gives the same canonical result.
pub fn sum_a(params: &ZetaParams) -> FactoredRat {
    let pairs = enumerate_pairs(params);
    let summands: Vec<FactoredRat> = pairs
        .par_iter()
        .map(|pair| term_a_ij(pair, params))
        .collect();
    let lcm = summands
        .iter()
        .fold(Vec::new(), |acc, s| den_lcm(&acc, s.den()));
    let num = summands
        .par_iter()
        .map(|s| {
            let missing = den_diff(&lcm, s.den());
            let mut out = s.num().clone();
            for f in &missing {
                for _ in 0..f.mult {
                    out = out.mul_one_minus(f.monomial());
                }
            }
            out
        })
        .reduce(LaurentPoly::zero, |a, b| &a + &b);
    FactoredRat::new(num, lcm)
}

/// `zeta_{Z^n}` as a function of `(P, T)`: `prod_{i<n} 1/(1 - P^i T)`.
pub fn zeta_free_abelian(n: u32) -> FactoredRat {
    let mut out = FactoredRat::one();
    for i in 0..n {
        out = out.div_factor(CycloFactor::new(i64::from(i), 1, 1));
    }
    out
}

/// The Euler-factor denominators shared by every summand of the full
/// zeta function: `(1 - P^i T)` for `i < d` and the homothety factor
/// `(1 - P^{dd'} T^{d+d'})`.
pub fn prefactors(params: &ZetaParams) -> Vec<CycloFactor> {
    let mut out: Vec<CycloFactor> = (0..params.d)
        .map(|i| CycloFactor::new(i64::from(i), 1, 1))
        .collect();
    out.push(CycloFactor::new(
        i64::from(params.d * params.d_prime),
        i64::from(params.hirsch),
        1,
    ));
    out
}

/// The full local zeta function `W_d(P, T)`.
pub fn local_zeta(params: &ZetaParams) -> FactoredRat {
    let mut w = sum_a(params);
    for f in prefactors(params) {
        w = w.div_factor(f);
    }
    w
}
