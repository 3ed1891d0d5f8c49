//! q-combinatorial building blocks: Gaussian binomials, flag counts, the
//! rational functions
//!
//! `F_n(Z_1..Z_{n-1}) = sum over I of b_{n,I}(1/P) prod_{i in I} Z_i/(1-Z_i)`
//!
//! and the polynomials counting subgroups of a given type inside a finite
//! abelian p-group, together with an exhaustive lattice-based oracle for
//! the latter.

use num_bigint::BigInt;
use num_traits::One;

use crate::laurent::{CycloFactor, FactoredRat, LaurentPoly, Monomial};
use crate::lieoracle::lattice::{for_each_containing, LatticeBasis};
use crate::{Error, Result};

/// Number of b-dimensional subspaces of an a-dimensional space over the
/// field with P elements, as a polynomial in P of degree `b(a-b)`.
pub fn gauss_binom(a: u32, b: u32) -> Result<LaurentPoly> {
    if b > a {
        return Err(Error::InvalidInput(format!(
            "gaussian binomial needs a >= b, got ({a}, {b})"
        )));
    }
    // q-Pascal: binom(a,b) = binom(a-1,b-1) + P^b binom(a-1,b)
    let mut row: Vec<LaurentPoly> = vec![LaurentPoly::one()];
    for n in 1..=a {
        let width = n.min(b);
        let mut next: Vec<LaurentPoly> = Vec::with_capacity(width as usize + 1);
        for k in 0..=width {
            if k == 0 {
                next.push(LaurentPoly::one());
            } else {
                let lower = &row[k as usize - 1];
                let upper = if (k as usize) < row.len() {
                    row[k as usize].mul_term(&BigInt::one(), Monomial::new(k as i64, 0))
                } else {
                    LaurentPoly::zero()
                };
                next.push(lower + &upper);
            }
        }
        row = next;
    }
    Ok(row[b as usize].clone())
}

/// `gauss_binom(a, b)` with `P` replaced by `1/P`.
pub fn gauss_binom_inv(a: u32, b: u32) -> Result<LaurentPoly> {
    Ok(gauss_binom(a, b)?.invert_vars())
}

/// Strictly increasing indices inside a declared ambient range `1..=bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSubset {
    elements: Vec<u32>,
}

impl IndexSubset {
    pub fn new(elements: Vec<u32>, bound: u32) -> Result<Self> {
        let increasing = elements.windows(2).all(|w| w[0] < w[1]);
        let in_range = elements.iter().all(|&e| 1 <= e && e <= bound);
        if !increasing || !in_range {
            return Err(Error::InvalidInput(format!(
                "index subset {elements:?} is not strictly increasing within 1..={bound}"
            )));
        }
        Ok(IndexSubset { elements })
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }
}

/// Number of flags of dimension type `I` in an n-dimensional space:
/// `b_{n,I} = binom(n, i_m) binom(i_m, i_{m-1}) ... binom(i_2, i_1)`.
pub fn flag_count(n: u32, i_set: &IndexSubset, inverted: bool) -> Result<LaurentPoly> {
    if i_set.elements.last().is_some_and(|&top| top > n.saturating_sub(1)) {
        return Err(Error::InvalidInput(format!(
            "flag type {:?} exceeds the ambient dimension {n}",
            i_set.elements
        )));
    }
    let mut out = LaurentPoly::one();
    let mut upper = n;
    for &i in i_set.elements.iter().rev() {
        let link = if inverted {
            gauss_binom_inv(upper, i)?
        } else {
            gauss_binom(upper, i)?
        };
        out = &out * &link;
        upper = i;
    }
    Ok(out)
}

/// The rational function `F_n` in the given denominator variables, as a
/// single fraction over `prod_i (1 - Z_i)`.  `F_1 = 1` (empty list).
pub fn igusa_f(n: u32, zs: &[Monomial]) -> Result<FactoredRat> {
    if zs.len() + 1 != n as usize {
        return Err(Error::InvalidInput(format!(
            "F_{n} needs {} denominator variables, got {}",
            n - 1,
            zs.len()
        )));
    }
    for z in zs {
        if z.t < 1 || z.p < 0 {
            return Err(Error::InvalidInput(format!(
                "denominator variable P^{} T^{} is outside the factor family",
                z.p, z.t
            )));
        }
    }
    // One pass over subsets I, descending through candidate indices:
    // including i extends the flag-count chain, excluding i multiplies
    // the numerator contribution by (1 - Z_i).
    fn rec(
        i: usize,
        zs: &[Monomial],
        chain_upper: u32,
        acc: &LaurentPoly,
        total: &mut LaurentPoly,
    ) -> Result<()> {
        if i == 0 {
            *total = &*total + acc;
            return Ok(());
        }
        let excluded = acc.mul_one_minus(zs[i - 1]);
        rec(i - 1, zs, chain_upper, &excluded, total)?;
        let link = gauss_binom_inv(chain_upper, i as u32)?;
        let included = (acc * &link).mul_term(&BigInt::one(), zs[i - 1]);
        rec(i - 1, zs, i as u32, &included, total)
    }
    let mut num = LaurentPoly::zero();
    rec(zs.len(), zs, n, &LaurentPoly::one(), &mut num)?;
    let den = zs
        .iter()
        .map(|z| CycloFactor::try_new(z.p, z.t, 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(FactoredRat::new(num, den))
}

/// Partition stored with weakly decreasing positive parts; accepts any
/// ordering at ingestion (the increasing type convention is normalized
/// here, once).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// 1-based part access, zero beyond the end.
    pub fn part(&self, j: usize) -> u32 {
        if j == 0 || j > self.parts.len() {
            0
        } else {
            self.parts[j - 1]
        }
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1) as usize;
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&x| x as usize >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Young-diagram containment: part-wise after padding.
    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.len()).all(|j| other.part(j) <= self.part(j))
    }

    /// All partitions contained in this one.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::new();
        fn rec(lambda: &Partition, cur: &mut Vec<u32>, j: usize, out: &mut Vec<Partition>) {
            if j > lambda.len() {
                out.push(Partition::new(cur.clone()));
                return;
            }
            let hi = lambda.part(j).min(cur.last().copied().unwrap_or(u32::MAX));
            rec(lambda, cur, lambda.len() + 1, out);
            for v in 1..=hi {
                cur.push(v);
                rec(lambda, cur, j + 1, out);
                cur.pop();
            }
        }
        rec(self, &mut cur, 1, &mut out);
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Number of subgroups of type `mu` in a finite abelian p-group of type
/// `lambda`, as a polynomial in P:
///
/// `alpha = prod_j P^{mu'_j (lambda'_j - mu'_j)} binom(lambda'_j - mu'_{j+1}, lambda'_j - mu'_j)_{1/P}`
pub fn hall_alpha(lambda: &Partition, mu: &Partition) -> Result<LaurentPoly> {
    if !lambda.contains(mu) {
        return Err(Error::InvalidInput(format!(
            "{:?} is not contained in {:?}",
            mu.parts(),
            lambda.parts()
        )));
    }
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    let mut out = LaurentPoly::one();
    for j in 1..=lc.len() {
        let (lj, mj, mj1) = (lc.part(j), mc.part(j), mc.part(j + 1));
        let exp = i64::from(mj) * i64::from(lj - mj);
        let shifted = gauss_binom_inv(lj - mj1, lj - mj)?
            .mul_term(&BigInt::one(), Monomial::new(exp, 0));
        out = &out * &shifted;
    }
    Ok(out)
}

/// Exhaustive count of subgroups of type `mu` in the abelian group of
/// type `lambda`: subgroups correspond to lattices between `diag(p^lambda)`
/// and `Z^n`, and the subgroup type is the quotient type over the diagonal
/// lattice.
pub fn hall_alpha_brute(lambda: &Partition, mu: &Partition, p: u32) -> Result<u64> {
    if lambda.size() > 7 {
        return Err(Error::Guard(format!(
            "brute subgroup census is limited to |lambda| <= 7, got {}",
            lambda.size()
        )));
    }
    if p != 2 && p != 3 {
        return Err(Error::Guard(format!(
            "brute subgroup census is limited to p in {{2, 3}}, got {p}"
        )));
    }
    if mu.size() > lambda.size() || mu.len() > lambda.len() {
        return Ok(0);
    }
    let n = lambda.len();
    let p = i128::from(p);
    let diag = LatticeBasis::from_generators(
        n,
        &(0..n)
            .map(|i| {
                let mut col = vec![0i128; n];
                col[i] = p.pow(lambda.part(i + 1));
                col
            })
            .collect::<Vec<_>>(),
    )?;
    let mut target: Vec<u32> = (1..=n).map(|j| mu.part(j)).collect();
    target.sort_unstable();
    let e = lambda.size() - mu.size();
    let mut count = 0u64;
    for_each_containing(p, e, &diag, &mut |h| {
        let t = h
            .quotient_exponents(&diag, p)
            .expect("enumerated lattice contains the diagonal lattice");
        if t == target {
            count += 1;
        }
    });
    Ok(count)
}
