//! Ground-truth enumeration: the free class-2 nilpotent Lie ring, ideal
//! counting by exhaustive lattice enumeration, pair counting with lift
//! weights, elementary-divisor types, the commutator-image type law, and
//! the type-overlap stratification.
//!
//! Everything here is deliberately direct. The point of this module is to
//! be an independent check on the symbolic machinery, so it shares no
//! formulas with it beyond the basis conventions.

pub mod lattice;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::zetacore::{enumerate_pairs, phi, ZetaParams};
use crate::{Error, Result};
use lattice::{
    compositions, for_each_containing, for_each_with_diagonal, sublattice_count, LatticeBasis,
};

/// Hard ceiling on the number of lattices any one call may enumerate.
const ENUMERATION_BUDGET: u128 = 200_000_000;

/// Free class-2 nilpotent Lie ring on d generators: basis x_0..x_{d-1}
/// followed by y_{ab} for a < b in lexicographic pair order, with
/// [x_a, x_b] = y_{ab} and the y's central.
///
/// The bracket is stored as a full structure-constant table, so the
/// downstream engines work for any table with central derived span.
#[derive(Clone, Debug)]
pub struct LieStructure {
    d: u32,
    d_prime: u32,
    table: Vec<Vec<Vec<i128>>>,
}

impl LieStructure {
    pub fn new(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput(format!("need d >= 2, got {d}")));
        }
        let dp = (d * (d - 1) / 2) as usize;
        let du = d as usize;
        let mut table = vec![vec![vec![0i128; dp]; du]; du];
        for a in 0..du {
            for b in a + 1..du {
                let q = pair_index(a, b, du);
                table[a][b][q] = 1;
                table[b][a][q] = -1;
            }
        }
        Ok(LieStructure {
            d,
            d_prime: dp as u32,
            table,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn d_prime(&self) -> u32 {
        self.d_prime
    }

    pub fn rank(&self) -> u32 {
        self.d + self.d_prime
    }

    /// Central coordinates of [x_a, x_b].
    pub fn bracket_generators(&self, a: usize, b: usize) -> &[i128] {
        &self.table[a][b]
    }

    /// Central coordinates of [v, x_k] for v given in generator coordinates.
    pub fn bracket_vector(&self, v: &[i128], k: usize) -> Vec<i128> {
        let mut w = vec![0i128; self.d_prime as usize];
        for (a, &c) in v.iter().enumerate() {
            if c != 0 {
                for (q, &t) in self.table[a][k].iter().enumerate() {
                    w[q] += c * t;
                }
            }
        }
        w
    }
}

/// Position of the pair (a, b), a < b, in the lexicographic pair basis.
pub fn pair_index(a: usize, b: usize, d: usize) -> usize {
    a * d - a * (a + 1) / 2 + (b - a - 1)
}

/// Elementary-divisor type of a finite-index sublattice: base exponent
/// r0 plus jump positions with their heights.  Ascending divisor
/// exponents e_1 <= ... <= e_n decompose as e_i = r0 + sum of heights of
/// jumps at positions < i.  A jump at position n itself is permitted; it
/// contributes to no divisor (needed for predicted image types).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeType {
    n: usize,
    base: u32,
    jumps: Vec<(u32, u32)>,
}

impl LatticeType {
    pub fn new(n: usize, base: u32, jumps: Vec<(u32, u32)>) -> Result<Self> {
        let positions_ok = jumps.windows(2).all(|w| w[0].0 < w[1].0)
            && jumps.iter().all(|&(s, r)| 1 <= s && s as usize <= n && r >= 1);
        if n == 0 || !positions_ok {
            return Err(Error::InvalidInput(format!(
                "invalid type encoding: rank {n}, jumps {jumps:?}"
            )));
        }
        Ok(LatticeType { n, base, jumps })
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.is_empty() || exps.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput(format!(
                "divisor exponents must be nonempty ascending, got {exps:?}"
            )));
        }
        let jumps = (1..exps.len())
            .filter(|&s| exps[s] > exps[s - 1])
            .map(|s| (s as u32, exps[s] - exps[s - 1]))
            .collect();
        LatticeType::new(exps.len(), exps[0], jumps)
    }

    pub fn of(basis: &LatticeBasis, p: i128) -> Result<Self> {
        LatticeType::from_exponents(&basis.smith_exponents(p)?)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn jumps(&self) -> &[(u32, u32)] {
        &self.jumps
    }

    pub fn is_maximal(&self) -> bool {
        self.base == 0
    }

    /// Ascending divisor exponents reconstructed from the encoding.
    pub fn divisor_exponents(&self) -> Vec<u32> {
        (1..=self.n)
            .map(|i| {
                self.base
                    + self
                        .jumps
                        .iter()
                        .filter(|&&(s, _)| (s as usize) < i)
                        .map(|&(_, r)| r)
                        .sum::<u32>()
            })
            .collect()
    }
}

/// Counts a_0..a_N of objects of index p^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    p: u64,
    counts: Vec<BigInt>,
}

impl CountTable {
    pub fn new(p: u64, counts: Vec<BigInt>) -> Self {
        CountTable { p, counts }
    }

    fn from_tallies(p: u64, tallies: &[u128]) -> Self {
        CountTable {
            p,
            counts: tallies.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }
}

impl Serialize for CountTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CountTable", 2)?;
        st.serialize_field("p", &self.p)?;
        let as_strings: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        st.serialize_field("counts", &as_strings)?;
        st.end()
    }
}

fn require_prime(p: u64) -> Result<()> {
    let is_prime = p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| !p.is_multiple_of(q));
    if is_prime {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

fn stream_budget(n: usize, p: u64, e_max: u32) -> Result<()> {
    let total: u128 = (0..=e_max)
        .map(|e| sublattice_count(n, p as u128, e))
        .fold(0u128, u128::saturating_add);
    if total > ENUMERATION_BUDGET {
        return Err(Error::Guard(format!(
            "about {total} rank-{n} sublattices up to index {p}^{e_max}, budget {ENUMERATION_BUDGET}"
        )));
    }
    Ok(())
}

fn pair_budget(d: usize, d_prime: usize, p: u64, n_max: u32) -> Result<()> {
    let mut total: u128 = 0;
    for a in 0..=n_max {
        for b in 0..=n_max - a {
            total = total.saturating_add(
                sublattice_count(d, p as u128, a)
                    .saturating_mul(sublattice_count(d_prime, p as u128, b)),
            );
        }
    }
    if total > ENUMERATION_BUDGET {
        return Err(Error::Guard(format!(
            "about {total} candidate lattice pairs at p={p}, N={n_max}, budget {ENUMERATION_BUDGET}"
        )));
    }
    Ok(())
}

/// Visit every sublattice of `Z^n` of index exactly `p^e`, once each.
pub fn sublattices<F: FnMut(&LatticeBasis)>(n: usize, p: u64, e: u32, mut f: F) -> Result<()> {
    require_prime(p)?;
    stream_budget(n, p, e)?;
    lattice::for_each_sublattice(n, p as i128, e, &mut f);
    Ok(())
}

/// HNF basis of the span of [v, x_k] over basis vectors v and generators
/// x_k.  Canonical, hence basis-independent.
pub fn commutator_image(lbar: &LatticeBasis, lie: &LieStructure) -> Result<LatticeBasis> {
    let d = lie.d() as usize;
    if lbar.rank() != d {
        return Err(Error::InvalidInput(format!(
            "lattice rank {} does not match generator count {d}",
            lbar.rank()
        )));
    }
    let mut gens = Vec::with_capacity(d * d);
    for col in lbar.cols() {
        for k in 0..d {
            gens.push(lie.bracket_vector(col, k));
        }
    }
    LatticeBasis::from_generators(lie.d_prime() as usize, &gens)
}

fn is_ideal(basis: &LatticeBasis, lie: &LieStructure) -> bool {
    let d = lie.d() as usize;
    let h = lie.rank() as usize;
    let mut probe = vec![0i128; h];
    for col in basis.cols() {
        for k in 0..d {
            let w = lie.bracket_vector(&col[..d], k);
            probe[..d].fill(0);
            probe[d..].copy_from_slice(&w);
            if !basis.contains_vector(&probe) {
                return false;
            }
        }
    }
    true
}

/// Ideal counts by exhaustive enumeration of full-rank sublattices of the
/// whole ring with a bracket-closure test.  The strongest and slowest
/// oracle; feasible only for tiny inputs.
pub fn count_ideals_direct(d: u32, p: u64, n_max: u32) -> Result<CountTable> {
    require_prime(p)?;
    let feasible = (d == 2 && n_max <= 10) || (d == 3 && n_max <= 3);
    if !feasible {
        return Err(Error::Guard(format!(
            "direct enumeration supports d=2 with N<=10 or d=3 with N<=3, got d={d}, N={n_max}"
        )));
    }
    let lie = LieStructure::new(d)?;
    let h = lie.rank() as usize;
    stream_budget(h, p, n_max)?;

    let work: Vec<(u32, Vec<u32>)> = (0..=n_max)
        .flat_map(|e| compositions(h, e).into_iter().map(move |c| (e, c)))
        .collect();
    let tallies = work
        .par_iter()
        .fold(
            || vec![0u128; n_max as usize + 1],
            |mut acc, (e, comp)| {
                let mut count = 0u128;
                for_each_with_diagonal(p as i128, comp, &mut |basis| {
                    if is_ideal(basis, &lie) {
                        count += 1;
                    }
                });
                acc[*e as usize] += count;
                acc
            },
        )
        .reduce(
            || vec![0u128; n_max as usize + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(CountTable::from_tallies(p, &tallies))
}

fn lift_weights(p: u64, d: u32, n_max: u32) -> Result<Vec<u128>> {
    (0..=n_max)
        .map(|b| {
            (p as u128).checked_pow(b * d).ok_or_else(|| {
                Error::Guard(format!("lift weight {p}^{} exceeds 128 bits", b * d))
            })
        })
        .collect()
}

/// Ideal counts via the correspondence with pairs (image in the
/// generator quotient, central part): every pair of a rank-d sublattice
/// lbar and a rank-d' sublattice M containing the commutator image of
/// lbar yields |Z^{d'} : M|^d ideals of index |idx lbar| * |idx M|.  M
/// ranges over all sublattices, not only maximal ones.
pub fn count_ideals_pairs(d: u32, p: u64, n_max: u32) -> Result<CountTable> {
    require_prime(p)?;
    if !(2..=4).contains(&d) {
        return Err(Error::Guard(format!(
            "pair enumeration supports 2 <= d <= 4, got d={d}"
        )));
    }
    let lie = LieStructure::new(d)?;
    let dp = lie.d_prime() as usize;
    pair_budget(d as usize, dp, p, n_max)?;
    let weights = lift_weights(p, d, n_max)?;

    let work: Vec<(u32, Vec<u32>)> = (0..=n_max)
        .flat_map(|a| compositions(d as usize, a).into_iter().map(move |c| (a, c)))
        .collect();
    let tallies = work
        .par_iter()
        .fold(
            || vec![0u128; n_max as usize + 1],
            |mut acc, (a, comp)| {
                for_each_with_diagonal(p as i128, comp, &mut |lbar| {
                    let image = commutator_image(lbar, &lie)
                        .expect("enumerated bases have full rank");
                    for b in 0..=n_max - a {
                        let w = weights[b as usize];
                        let slot = (a + b) as usize;
                        for_each_containing(p as i128, b, &image, &mut |_| {
                            acc[slot] = acc[slot]
                                .checked_add(w)
                                .expect("pair tally exceeds 128 bits");
                        });
                    }
                });
                acc
            },
        )
        .reduce(
            || vec![0u128; n_max as usize + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(CountTable::from_tallies(p, &tallies))
}

/// Overlap invariant of a pair of types: cumulative height sums
/// Q_k = q0 + q_{s_1} + ... + q_{s_k} on the first type and
/// R_l = r_{t_1} + ... + r_{t_l} on the second, with Q_0 = q0 and
/// R_0 = 0; the jump pair (s_k, t_l) is matched iff
/// R_{l-1} <= Q_{k-1} < R_l <= Q_k.  Matching is a partial bijection, so
/// the returned sets have equal size.
pub fn type_overlap(lbar: &LatticeType, m: &LatticeType) -> (Vec<u32>, Vec<u32>) {
    let mut q = vec![u64::from(lbar.base())];
    for &(_, height) in lbar.jumps() {
        q.push(q.last().unwrap() + u64::from(height));
    }
    let mut r = vec![0u64];
    for &(_, height) in m.jumps() {
        r.push(r.last().unwrap() + u64::from(height));
    }
    let mut i_set = Vec::new();
    let mut j_set = Vec::new();
    for k in 1..q.len() {
        for l in 1..r.len() {
            if r[l - 1] <= q[k - 1] && q[k - 1] < r[l] && r[l] <= q[k] {
                i_set.push(lbar.jumps()[k - 1].0);
                j_set.push(m.jumps()[l - 1].0);
            }
        }
    }
    i_set.sort_unstable();
    j_set.sort_unstable();
    (i_set, j_set)
}

/// Pair counts split by the overlap invariant, with the central part
/// restricted to maximal lattices.  Summing the strata and convolving
/// with the scalar-multiplication weight recovers `count_ideals_pairs`.
pub fn stratified_counts(d: u32, p: u64, n_max: u32) -> Result<BTreeMap<String, CountTable>> {
    require_prime(p)?;
    if !(2..=3).contains(&d) || n_max > 6 {
        return Err(Error::Guard(format!(
            "stratified enumeration supports d in {{2,3}} and N<=6, got d={d}, N={n_max}"
        )));
    }
    let params = ZetaParams::new(d)?;
    let lie = LieStructure::new(d)?;
    let dp = lie.d_prime() as usize;
    pair_budget(d as usize, dp, p, n_max)?;
    let weights = lift_weights(p, d, n_max)?;
    let len = n_max as usize + 1;

    let work: Vec<(u32, Vec<u32>)> = (0..=n_max)
        .flat_map(|a| compositions(d as usize, a).into_iter().map(move |c| (a, c)))
        .collect();
    let tallies = work
        .par_iter()
        .try_fold(
            BTreeMap::<(Vec<u32>, Vec<u32>), Vec<u128>>::new,
            |mut acc, (a, comp)| {
                let mut inner_err = None;
                for_each_with_diagonal(p as i128, comp, &mut |lbar| {
                    if inner_err.is_some() {
                        return;
                    }
                    let mut run = || -> Result<()> {
                        let lbar_type = LatticeType::of(lbar, p as i128)?;
                        let image = commutator_image(lbar, &lie)?;
                        for b in 0..=n_max - a {
                            let w = weights[b as usize];
                            let slot = (a + b) as usize;
                            let mut m_err = None;
                            for_each_containing(p as i128, b, &image, &mut |m| {
                                if m_err.is_some() || !m.is_p_maximal(p as i128) {
                                    return;
                                }
                                match LatticeType::of(m, p as i128) {
                                    Ok(m_type) => {
                                        let key = type_overlap(&lbar_type, &m_type);
                                        let row =
                                            acc.entry(key).or_insert_with(|| vec![0u128; len]);
                                        row[slot] += w;
                                    }
                                    Err(e) => m_err = Some(e),
                                }
                            });
                            if let Some(e) = m_err {
                                return Err(e);
                            }
                        }
                        Ok(())
                    };
                    if let Err(e) = run() {
                        inner_err = Some(e);
                    }
                });
                match inner_err {
                    Some(e) => Err(e),
                    None => Ok(acc),
                }
            },
        )
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (key, row) in b {
                let dst = a.entry(key).or_insert_with(|| vec![0u128; len]);
                for (x, y) in dst.iter_mut().zip(row) {
                    *x += y;
                }
            }
            Ok(a)
        })?;

    let mut out = BTreeMap::new();
    for pair in enumerate_pairs(&params) {
        out.insert(pair.label(), CountTable::new(p, vec![BigInt::from(0); len]));
    }
    for ((i_set, j_set), row) in tallies {
        let pair = crate::zetacore::SubsetPair::new(i_set.clone(), j_set.clone(), &params)
            .map_err(|_| {
                Error::InvalidInput(format!(
                    "stratification produced an invalid subset pair I={i_set:?}, J={j_set:?}"
                ))
            })?;
        out.insert(pair.label(), CountTable::from_tallies(p, &row));
    }
    Ok(out)
}

/// Type of the commutator image predicted from the type of the input:
/// the base height is kept and each jump at position s moves to position
/// phi(s) = s*d - s(s+1)/2 with unchanged height.  A jump landing at
/// position d' is vestigial.
pub fn predicted_image_type(lbar_type: &LatticeType, d: u32) -> Result<LatticeType> {
    let params = ZetaParams::new(d)?;
    if lbar_type.rank() != d as usize {
        return Err(Error::InvalidInput(format!(
            "type has rank {}, expected {d}",
            lbar_type.rank()
        )));
    }
    let mut jumps = Vec::new();
    for &(s, height) in lbar_type.jumps() {
        if s as usize == d as usize {
            return Err(Error::InvalidInput(
                "input type has a vestigial jump; only realized lattice types map forward".into(),
            ));
        }
        jumps.push((phi(s, &params), height));
    }
    LatticeType::new(params.d_prime as usize, lbar_type.base(), jumps)
}

/// Randomized check that the commutator image of every sampled lattice
/// has exactly the predicted divisor type.  Exact comparison, no
/// tolerance; returns false on the first disagreement.
pub fn phi_type_law_check(d: u32, trials: u32, seed: u64) -> Result<bool> {
    if !(3..=5).contains(&d) {
        return Err(Error::InvalidInput(format!(
            "type-law sampling supports 3 <= d <= 5, got {d}"
        )));
    }
    let lie = LieStructure::new(d)?;
    let du = d as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let p: i128 = [2, 3, 5][rng.gen_range(0..3)];
        let exps: Vec<u32> = (0..du).map(|_| rng.gen_range(0..=2u32)).collect();
        let mut cols = Vec::with_capacity(du);
        for (j, &e) in exps.iter().enumerate() {
            let mut col = vec![0i128; du];
            col[j] = p.pow(e);
            for (i, &ei) in exps.iter().enumerate().take(j) {
                col[i] = rng.gen_range(0..p.pow(ei));
            }
            cols.push(col);
        }
        let lbar = LatticeBasis::from_generators(du, &cols)?;
        let predicted = predicted_image_type(&LatticeType::of(&lbar, p)?, d)?;
        let actual = LatticeType::of(&commutator_image(&lbar, &lie)?, p)?;
        if predicted.divisor_exponents() != actual.divisor_exponents() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zetacore::{local_zeta, zeta_free_abelian};

    fn big(n: u64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn bracket_table_shape() {
        let lie = LieStructure::new(2).unwrap();
        assert_eq!(lie.rank(), 3);
        assert_eq!(lie.bracket_generators(0, 1), &[1]);
        for d in 2..=6u32 {
            let lie = LieStructure::new(d).unwrap();
            let du = d as usize;
            for a in 0..du {
                for b in 0..du {
                    let ab = lie.bracket_generators(a, b);
                    let ba = lie.bracket_generators(b, a);
                    assert!(ab.iter().zip(ba).all(|(x, y)| *x == -*y));
                }
                assert!(lie.bracket_generators(a, a).iter().all(|&x| x == 0));
            }
        }
        assert!(LieStructure::new(1).is_err());
    }

    #[test]
    fn sublattice_streams_match_free_abelian_series() {
        let mut count = 0u32;
        sublattices(2, 2, 1, |_| count += 1).unwrap();
        assert_eq!(count, 3);
        count = 0;
        sublattices(3, 2, 1, |_| count += 1).unwrap();
        assert_eq!(count, 7);
        count = 0;
        sublattices(1, 7, 5, |_| count += 1).unwrap();
        assert_eq!(count, 1);

        for n in 1..=4usize {
            for p in [2u64, 3] {
                let series = zeta_free_abelian(n as u32)
                    .series_at(&BigInt::from(p), 4)
                    .unwrap();
                for e in 0..=4u32 {
                    let mut c = 0u64;
                    sublattices(n, p, e, |_| c += 1).unwrap();
                    assert_eq!(BigInt::from(c), series[e as usize], "n={n} p={p} e={e}");
                }
            }
        }
        assert!(sublattices(4, 1009, 9, |_| {}).is_err());
        assert!(sublattices(2, 6, 1, |_| {}).is_err());
    }

    #[test]
    fn commutator_image_examples() {
        let lie = LieStructure::new(3).unwrap();
        let full = commutator_image(&LatticeBasis::identity(3), &lie).unwrap();
        assert_eq!(full, LatticeBasis::identity(3));
        let scaled = commutator_image(&LatticeBasis::scaled(3, 2), &lie).unwrap();
        assert_eq!(scaled, LatticeBasis::scaled(3, 2));

        // One generator scaled by p still reaches every central basis
        // vector through brackets with the unscaled generators.
        let lbar = LatticeBasis::from_generators(
            3,
            &[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        assert_eq!(
            commutator_image(&lbar, &lie).unwrap(),
            LatticeBasis::identity(3)
        );

        let deeper = LatticeBasis::from_generators(
            3,
            &[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 2]],
        )
        .unwrap();
        let image = commutator_image(&deeper, &lie).unwrap();
        assert_eq!(image.smith_exponents(2).unwrap(), vec![0, 0, 1]);

        // Scaling commutes with taking the image.
        let double = LatticeBasis::from_generators(
            3,
            &[vec![2, 0, 0], vec![0, 4, 0], vec![0, 0, 4]],
        )
        .unwrap();
        let scaled_image = commutator_image(&double, &lie).unwrap();
        let expected: Vec<Vec<i128>> = image.cols().iter().map(
            |c| c.iter().map(|x| 2 * x).collect(),
        ).collect();
        assert_eq!(
            scaled_image,
            LatticeBasis::from_generators(3, &expected).unwrap()
        );
    }

    #[test]
    fn type_encoding_examples() {
        let t = LatticeType::from_exponents(&[0, 1, 2]).unwrap();
        assert_eq!(t.base(), 0);
        assert_eq!(t.jumps(), &[(1, 1), (2, 1)]);
        assert!(t.is_maximal());
        assert_eq!(t.divisor_exponents(), vec![0, 1, 2]);

        let t = LatticeType::of(&LatticeBasis::scaled(4, 3), 3).unwrap();
        assert_eq!(t.base(), 1);
        assert!(t.jumps().is_empty());
        assert!(!t.is_maximal());

        let t = LatticeType::from_exponents(&[0, 0, 1]).unwrap();
        assert_eq!(t.jumps(), &[(2, 1)]);

        let vestigial = LatticeType::new(3, 0, vec![(3, 1)]).unwrap();
        assert_eq!(vestigial.divisor_exponents(), vec![0, 0, 0]);
        assert!(LatticeType::new(3, 0, vec![(4, 1)]).is_err());
        assert!(LatticeType::from_exponents(&[2, 1]).is_err());
    }

    #[test]
    fn direct_counts_heisenberg() {
        let t = count_ideals_direct(2, 2, 3).unwrap();
        assert_eq!(t.counts(), &[big(1), big(3), big(7), big(19)]);
        let t = count_ideals_direct(2, 3, 1).unwrap();
        assert_eq!(t.counts(), &[big(1), big(4)]);
        assert!(count_ideals_direct(2, 2, 11).is_err());
        assert!(count_ideals_direct(3, 2, 4).is_err());
        assert!(count_ideals_direct(4, 2, 1).is_err());
        assert!(count_ideals_direct(2, 4, 2).is_err());
    }

    #[test]
    fn pair_counts_match_symbolic_series() {
        for (d, p, n) in [(2u32, 2u64, 5u32), (2, 3, 4), (3, 2, 4)] {
            let params = ZetaParams::new(d).unwrap();
            let series = local_zeta(&params)
                .series_at(&BigInt::from(p), n as usize)
                .unwrap();
            let table = count_ideals_pairs(d, p, n).unwrap();
            assert_eq!(table.counts(), &series[..], "d={d} p={p}");
        }
        let t = count_ideals_pairs(3, 2, 4).unwrap();
        assert_eq!(
            t.counts(),
            &[big(1), big(7), big(35), big(211), big(1043)]
        );
        assert!(count_ideals_pairs(5, 2, 1).is_err());
    }

    #[test]
    fn pair_counts_match_direct_counts() {
        let direct = count_ideals_direct(2, 2, 5).unwrap();
        let pairs = count_ideals_pairs(2, 2, 5).unwrap();
        assert_eq!(direct, pairs);
        let direct = count_ideals_direct(3, 2, 2).unwrap();
        let pairs = count_ideals_pairs(3, 2, 2).unwrap();
        assert_eq!(direct, pairs);
    }

    #[test]
    fn type_overlap_examples() {
        let no_jumps = LatticeType::from_exponents(&[0, 0, 0]).unwrap();
        let lbar = LatticeType::from_exponents(&[0, 1, 1]).unwrap();
        let m = LatticeType::from_exponents(&[0, 0, 1]).unwrap();
        assert_eq!(type_overlap(&lbar, &m), (vec![1], vec![2]));
        assert_eq!(type_overlap(&lbar, &no_jumps), (vec![], vec![]));
        assert_eq!(type_overlap(&no_jumps, &m), (vec![], vec![]));

        // Only the first jump of the taller type is caught: the second
        // has Q_{k-1} = 1, which is not below R_1 = 1.
        let tall = LatticeType::from_exponents(&[0, 1, 2]).unwrap();
        assert_eq!(type_overlap(&tall, &m), (vec![1], vec![2]));
    }

    #[test]
    fn stratified_heisenberg_single_stratum() {
        let strata = stratified_counts(2, 2, 5).unwrap();
        assert_eq!(strata.len(), 1);
        let table = &strata["I=|J="];
        assert_eq!(
            table.counts(),
            &[big(1), big(3), big(7), big(15), big(31), big(63)]
        );
        let abelian = zeta_free_abelian(2)
            .series_at(&BigInt::from(2), 5)
            .unwrap();
        assert_eq!(table.counts(), &abelian[..]);
    }

    #[test]
    fn stratified_d3_tables() {
        let strata = stratified_counts(3, 2, 4).unwrap();
        assert_eq!(strata.len(), 2);
        assert_eq!(
            strata["I=|J="].counts(),
            &[big(1), big(7), big(35), big(155), big(707)]
        );
        assert_eq!(
            strata["I=1|J=2"].counts(),
            &[big(0), big(0), big(0), big(56), big(336)]
        );
    }

    #[test]
    fn stratified_convolution_recovers_pair_counts() {
        for (d, p, n) in [(2u32, 2u64, 5u32), (2, 3, 4), (3, 2, 6)] {
            let params = ZetaParams::new(d).unwrap();
            let strata = stratified_counts(d, p, n).unwrap();
            let pairs = count_ideals_pairs(d, p, n).unwrap();
            let period = params.hirsch as usize;
            let weight_exp = params.d * params.d_prime;
            for m in 0..=n as usize {
                let mut total = BigInt::from(0);
                let mut k = 0usize;
                while k * period <= m {
                    let w = BigInt::from(p).pow(weight_exp * k as u32);
                    for table in strata.values() {
                        total += w.clone() * &table.counts()[m - k * period];
                    }
                    k += 1;
                }
                assert_eq!(total, pairs.counts()[m], "d={d} p={p} n={m}");
            }
        }
    }

    #[test]
    fn predicted_image_types() {
        // A jump at the last generator position becomes vestigial.
        let t = LatticeType::from_exponents(&[0, 0, 1]).unwrap();
        let img = predicted_image_type(&t, 3).unwrap();
        assert_eq!(img.divisor_exponents(), vec![0, 0, 0]);
        assert_eq!(img.jumps(), &[(3, 1)]);

        let t = LatticeType::from_exponents(&[1, 2, 2]).unwrap();
        let img = predicted_image_type(&t, 3).unwrap();
        assert_eq!(img.divisor_exponents(), vec![1, 1, 2]);

        assert!(predicted_image_type(&t, 4).is_err());
    }

    #[test]
    fn type_law_randomized() {
        assert!(phi_type_law_check(3, 60, 0xfeed).unwrap());
        assert!(phi_type_law_check(4, 30, 0xbeef).unwrap());
        assert!(phi_type_law_check(2, 5, 0).is_err());
        assert!(phi_type_law_check(6, 5, 0).is_err());
    }
}
