//! Full-rank integer sublattices in column Hermite normal form.
//!
//! The HNF here is column-style: the basis matrix is upper triangular,
//! column `j` has its pivot on row `j`, diagonal entries are positive,
//! and every off-diagonal entry lies in `[0, diag)` of its row.  Each
//! sublattice has exactly one such basis, so HNF equality is lattice
//! equality, and exhaustive enumeration by diagonal and digits visits
//! every sublattice of a given index exactly once.

use crate::{Error, Result};

/// Basis of a full-rank sublattice of `Z^n`, stored column-major in HNF.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeBasis {
    n: usize,
    cols: Vec<Vec<i128>>,
}

impl LatticeBasis {
    pub fn identity(n: usize) -> Self {
        LatticeBasis::scaled(n, 1)
    }

    /// `c * Z^n`.
    pub fn scaled(n: usize, c: i128) -> Self {
        assert!(c > 0);
        let cols = (0..n)
            .map(|j| {
                let mut col = vec![0; n];
                col[j] = c;
                col
            })
            .collect();
        LatticeBasis { n, cols }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> &[Vec<i128>] {
        &self.cols
    }

    pub fn diag(&self, j: usize) -> i128 {
        self.cols[j][j]
    }

    /// Index in the ambient lattice, the product of the diagonal.
    pub fn index(&self) -> i128 {
        (0..self.n).map(|j| self.diag(j)).product()
    }

    pub fn index_exponent(&self, p: i128) -> u32 {
        (0..self.n).map(|j| val_p(self.diag(j), p)).sum()
    }

    /// Canonical basis of the span of arbitrary integer generators.
    pub fn from_generators(n: usize, gens: &[Vec<i128>]) -> Result<Self> {
        assert!(gens.iter().all(|g| g.len() == n));
        let mut work: Vec<Vec<i128>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
        let mut cols = vec![vec![0i128; n]; n];
        for row in (0..n).rev() {
            loop {
                let mut piv: Option<usize> = None;
                for (idx, c) in work.iter().enumerate() {
                    if c[row] != 0 && piv.is_none_or(|q| work[q][row].abs() > c[row].abs()) {
                        piv = Some(idx);
                    }
                }
                let Some(piv) = piv else {
                    return Err(Error::InvalidInput(
                        "generators do not span a full-rank lattice".into(),
                    ));
                };
                let mut clean = true;
                for idx in 0..work.len() {
                    if idx == piv || work[idx][row] == 0 {
                        continue;
                    }
                    let q = work[idx][row].div_euclid(work[piv][row]);
                    if q != 0 {
                        for r in 0..n {
                            let s = q * work[piv][r];
                            work[idx][r] -= s;
                        }
                    }
                    if work[idx][row] != 0 {
                        clean = false;
                    }
                }
                if clean {
                    let mut c = work.swap_remove(piv);
                    if c[row] < 0 {
                        for v in c.iter_mut() {
                            *v = -*v;
                        }
                    }
                    cols[row] = c;
                    break;
                }
            }
        }
        reduce_off_diagonal(&mut cols);
        Ok(LatticeBasis { n, cols })
    }

    /// Coefficients of `v` in this basis, if `v` lies in the lattice.
    pub fn coords_of(&self, v: &[i128]) -> Option<Vec<i128>> {
        let mut rem = v.to_vec();
        let mut coords = vec![0i128; self.n];
        for row in (0..self.n).rev() {
            let d = self.diag(row);
            if rem[row] % d != 0 {
                return None;
            }
            let c = rem[row] / d;
            coords[row] = c;
            if c != 0 {
                for r in 0..=row {
                    rem[r] -= c * self.cols[row][r];
                }
            }
        }
        Some(coords)
    }

    pub fn contains_vector(&self, v: &[i128]) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn contains(&self, other: &LatticeBasis) -> bool {
        other.cols.iter().all(|c| self.contains_vector(c))
    }

    /// Not contained in `p * Z^n`: some basis entry is a unit modulo `p`.
    pub fn is_p_maximal(&self, p: i128) -> bool {
        self.cols
            .iter()
            .any(|c| c.iter().any(|&x| x % p != 0))
    }

    /// Elementary-divisor exponents at `p`, ascending.
    pub fn smith_exponents(&self, p: i128) -> Result<Vec<u32>> {
        smith_exponents_of(self.cols.clone(), p)
    }

    /// Exponent type of the quotient `self / sub` as an abelian `p`-group,
    /// ascending.  Requires `sub` contained in `self`.
    pub fn quotient_exponents(&self, sub: &LatticeBasis, p: i128) -> Result<Vec<u32>> {
        let mut rel = Vec::with_capacity(self.n);
        for c in &sub.cols {
            let coords = self.coords_of(c).ok_or_else(|| {
                Error::InvalidInput("quotient_exponents needs a contained sublattice".into())
            })?;
            rel.push(coords);
        }
        smith_exponents_of(rel, p)
    }
}

fn reduce_off_diagonal(cols: &mut [Vec<i128>]) {
    let n = cols.len();
    for j in 0..n {
        for i in (0..j).rev() {
            let q = cols[j][i].div_euclid(cols[i][i]);
            if q != 0 {
                for r in 0..=i {
                    let s = q * cols[i][r];
                    cols[j][r] -= s;
                }
            }
        }
    }
}

pub fn val_p(mut x: i128, p: i128) -> u32 {
    assert!(x != 0 && p >= 2);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Elementary-divisor exponents of a nonsingular integer matrix whose
/// determinant is a power of `p`, ascending.  Mixed-prime divisors are
/// rejected.
pub fn smith_exponents_of(mut m: Vec<Vec<i128>>, p: i128) -> Result<Vec<u32>> {
    let n = m.len();
    assert!(m.iter().all(|c| c.len() == n));
    let mut exps = Vec::with_capacity(n);
    for k in 0..n {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for c in k..n {
                for r in k..n {
                    if m[c][r] != 0
                        && best.is_none_or(|(bc, br)| m[bc][br].abs() > m[c][r].abs())
                    {
                        best = Some((c, r));
                    }
                }
            }
            let Some((bc, br)) = best else {
                return Err(Error::InvalidInput("singular matrix has no Smith form".into()));
            };
            m.swap(k, bc);
            if br != k {
                for c in k..n {
                    m[c].swap(k, br);
                }
            }
            let mut clean = true;
            for c in k + 1..n {
                let q = m[c][k].div_euclid(m[k][k]);
                if q != 0 {
                    for r in k..n {
                        let s = q * m[k][r];
                        m[c][r] -= s;
                    }
                }
                if m[c][k] != 0 {
                    clean = false;
                }
            }
            for r in k + 1..n {
                let q = m[k][r].div_euclid(m[k][k]);
                if q != 0 {
                    for c in k..n {
                        let s = q * m[c][k];
                        m[c][r] -= s;
                    }
                }
                if m[k][r] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            for c in k + 1..n {
                for r in k + 1..n {
                    if m[c][r] % m[k][k] != 0 {
                        for rr in k..n {
                            let s = m[c][rr];
                            m[k][rr] += s;
                        }
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        let d = m[k][k].abs();
        let v = val_p(d, p);
        if d != p.pow(v) {
            return Err(Error::InvalidInput(format!(
                "elementary divisor {d} is not a power of {p}"
            )));
        }
        exps.push(v);
    }
    exps.sort_unstable();
    Ok(exps)
}

/// All weak compositions of `e` into `n` parts.
pub fn compositions(n: usize, e: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, idx: usize, left: u32) {
        if idx + 1 == cur.len() {
            cur[idx] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[idx] = v;
            rec(out, cur, idx + 1, left - v);
        }
    }
    if n == 0 {
        if e == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, e);
    out
}

/// Visit every HNF sublattice of `Z^n` with diagonal `p^exps`, exactly once.
pub fn for_each_with_diagonal<F: FnMut(&LatticeBasis)>(p: i128, exps: &[u32], f: &mut F) {
    let n = exps.len();
    let mut lb = LatticeBasis {
        n,
        cols: (0..n)
            .map(|j| {
                let mut col = vec![0; n];
                col[j] = p.pow(exps[j]);
                col
            })
            .collect(),
    };
    let positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, _)| exps[i] > 0)
        .collect();
    let radix: Vec<i128> = positions.iter().map(|&(i, _)| p.pow(exps[i])).collect();
    fn rec<F: FnMut(&LatticeBasis)>(
        lb: &mut LatticeBasis,
        positions: &[(usize, usize)],
        radix: &[i128],
        depth: usize,
        f: &mut F,
    ) {
        if depth == positions.len() {
            f(lb);
            return;
        }
        let (i, j) = positions[depth];
        for v in 0..radix[depth] {
            lb.cols[j][i] = v;
            rec(lb, positions, radix, depth + 1, f);
        }
        lb.cols[j][i] = 0;
    }
    rec(&mut lb, &positions, &radix, 0, f);
}

/// Visit every sublattice of `Z^n` of index exactly `p^e`.
pub fn for_each_sublattice<F: FnMut(&LatticeBasis)>(n: usize, p: i128, e: u32, f: &mut F) {
    for comp in compositions(n, e) {
        for_each_with_diagonal(p, &comp, f);
    }
}

/// Visit every sublattice of `Z^n` of index `p^e` that contains `fixed`.
///
/// Columns are fixed left to right; a partial basis already decides
/// membership of the corresponding prefix of `fixed`'s columns, which
/// prunes most of the tree.
pub fn for_each_containing<F: FnMut(&LatticeBasis)>(
    p: i128,
    e: u32,
    fixed: &LatticeBasis,
    f: &mut F,
) {
    let n = fixed.rank();
    let caps: Vec<u32> = (0..n).map(|j| val_p(fixed.diag(j), p)).collect();
    let suffix_cap: Vec<u32> = {
        let mut s = vec![0u32; n + 1];
        for j in (0..n).rev() {
            s[j] = s[j + 1] + caps[j];
        }
        s
    };
    let mut lb = LatticeBasis {
        n,
        cols: vec![vec![0; n]; n],
    };

    fn column_ok(lb: &LatticeBasis, j: usize, fixed: &LatticeBasis) -> bool {
        let mut rem = fixed.cols[j].clone();
        for row in (0..=j).rev() {
            let d = lb.cols[row][row];
            if rem[row] % d != 0 {
                return false;
            }
            let c = rem[row] / d;
            if c != 0 {
                for r in 0..=row {
                    rem[r] -= c * lb.cols[row][r];
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn digits<F: FnMut(&LatticeBasis)>(
        lb: &mut LatticeBasis,
        j: usize,
        i: usize,
        p: i128,
        left: u32,
        caps: &[u32],
        suffix_cap: &[u32],
        fixed: &LatticeBasis,
        f: &mut F,
    ) {
        if i == j {
            if column_ok(lb, j, fixed) {
                columns(lb, j + 1, p, left, caps, suffix_cap, fixed, f);
            }
            return;
        }
        let radix = lb.cols[i][i];
        for v in 0..radix {
            lb.cols[j][i] = v;
            digits(lb, j, i + 1, p, left, caps, suffix_cap, fixed, f);
        }
        lb.cols[j][i] = 0;
    }

    #[allow(clippy::too_many_arguments)]
    fn columns<F: FnMut(&LatticeBasis)>(
        lb: &mut LatticeBasis,
        j: usize,
        p: i128,
        left: u32,
        caps: &[u32],
        suffix_cap: &[u32],
        fixed: &LatticeBasis,
        f: &mut F,
    ) {
        let n = lb.n;
        if j == n {
            if left == 0 {
                f(lb);
            }
            return;
        }
        let hi = caps[j].min(left);
        for ej in 0..=hi {
            if left - ej > suffix_cap[j + 1] {
                continue;
            }
            lb.cols[j][j] = p.pow(ej);
            digits(lb, j, 0, p, left - ej, caps, suffix_cap, fixed, f);
        }
    }

    if e > suffix_cap[0] {
        return;
    }
    columns(&mut lb, 0, p, e, &caps, &suffix_cap, fixed, f);
}

/// Number of sublattices of `Z^n` of index `p^e`, saturating.  Used only
/// for resource guards.
pub fn sublattice_count(n: usize, p: u128, e: u32) -> u128 {
    let mut total: u128 = 0;
    for comp in compositions(n, e) {
        let mut c: u128 = 1;
        for (i, &ei) in comp.iter().enumerate() {
            let digits = (n - 1 - i) as u32 * ei;
            c = c.saturating_mul(p.saturating_pow(digits));
        }
        total = total.saturating_add(c);
    }
    total
}
