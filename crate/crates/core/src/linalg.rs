//! Sparse exact reduced row echelon forms over ℚ.
//!
//! The pivot of a row is its largest column. Rows are kept fully reduced, so
//! a vector is brought to normal form in a single pass.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};

use crate::arith::Rational;

/// A sparse vector with strictly increasing column indices and no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// `x + c·y`.
pub fn axpy(x: &SparseVec, c: &Rational, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i >= x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, c * &y[j].1));
            j += 1;
        } else {
            let v = &x[i].1 + c * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn from_pairs(mut pairs: Vec<(usize, Rational)>) -> SparseVec {
    pairs.sort_by_key(|p| p.0);
    let mut out: SparseVec = Vec::with_capacity(pairs.len());
    for (c, v) in pairs {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: HashMap<usize, SparseVec>,
    /// column -> pivots of rows with a nonzero entry in that (non-pivot) column
    occurs: HashMap<usize, HashSet<usize>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// The normal form: `v` minus its projection onto the row space along the
    /// pivot columns. Zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if !v.iter().any(|(c, _)| self.rows.contains_key(c)) {
            return v.clone();
        }
        let mut acc: HashMap<usize, Rational> = HashMap::with_capacity(2 * v.len());
        for (col, c) in v {
            match self.rows.get(col) {
                Some(row) => {
                    for (j, x) in row {
                        if j != col {
                            *acc.entry(*j).or_insert_with(Rational::zero) -= c * x;
                        }
                    }
                }
                None => *acc.entry(*col).or_insert_with(Rational::zero) += c,
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        out.sort_unstable_by_key(|p| p.0);
        out
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.last().cloned() else { return false };
        let inv = Rational::one() / lead;
        let r: SparseVec = r.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        if let Some(users) = self.occurs.remove(&pivot) {
            for p in users {
                let row = self.rows.get(&p).expect("indexed row");
                let c = row.iter().find(|(col, _)| *col == pivot).map(|(_, x)| x.clone()).unwrap_or_default();
                if c.is_zero() {
                    continue;
                }
                let new = axpy(row, &-c, &r);
                for (col, _) in &new {
                    if *col != p {
                        self.occurs.entry(*col).or_default().insert(p);
                    }
                }
                self.rows.insert(p, new);
            }
        }
        for (col, _) in &r {
            if *col != pivot {
                self.occurs.entry(*col).or_default().insert(pivot);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    /// Rows sorted by pivot.
    pub fn rows_sorted(&self) -> Vec<(usize, &SparseVec)> {
        let mut v: Vec<(usize, &SparseVec)> = self.rows.iter().map(|(p, r)| (*p, r)).collect();
        v.sort_unstable_by_key(|x| x.0);
        v
    }

    /// Replaces the contents with already reduced rows (e.g. read from a cache).
    pub fn from_rows(rows: Vec<SparseVec>) -> Self {
        let mut e = Echelon::new();
        for r in rows {
            let pivot = r.last().expect("nonzero row").0;
            for (col, _) in &r {
                if *col != pivot {
                    e.occurs.entry(*col).or_default().insert(pivot);
                }
            }
            e.rows.insert(pivot, r);
        }
        e
    }

    /// Whether the stored rows are in reduced echelon form with unit pivots.
    pub fn is_reduced(&self) -> bool {
        self.rows.iter().all(|(p, r)| {
            r.last().map(|(c, x)| c == p && x.is_one()).unwrap_or(false)
                && r.iter().all(|(c, _)| c == p || !self.rows.contains_key(c))
        })
    }
}

/// A solution `x` of `sum_i x_i cols[i] = target`, free variables set to 0.
pub fn solve(cols: &[SparseVec], target: &SparseVec) -> Option<Vec<Rational>> {
    let mut rows: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col {
            rows.entry(*i).or_default().push((j, x.clone()));
        }
    }
    let n = cols.len();
    let mut eqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut keys: Vec<usize> = rows.keys().copied().chain(target.iter().map(|x| x.0)).collect();
    keys.sort_unstable();
    keys.dedup();
    for i in keys {
        let mut a = vec![Rational::zero(); n];
        for (j, x) in rows.get(&i).into_iter().flatten() {
            a[*j] = x.clone();
        }
        let b = target.iter().find(|x| x.0 == i).map(|x| x.1.clone()).unwrap_or_else(Rational::zero);
        eqs.push((a, b));
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..eqs.len()).find(|&i| !eqs[i].0[c].is_zero()) else { continue };
        eqs.swap(r, p);
        let inv = Rational::one() / eqs[r].0[c].clone();
        let (a, b) = &mut eqs[r];
        for x in a.iter_mut() {
            *x *= &inv;
        }
        *b *= &inv;
        let (pa, pb) = eqs[r].clone();
        for (i, (a, b)) in eqs.iter_mut().enumerate() {
            if i != r && !a[c].is_zero() {
                let f = a[c].clone();
                for (x, y) in a.iter_mut().zip(&pa) {
                    *x -= &f * y;
                }
                *b -= &f * &pb;
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    if eqs[r..].iter().any(|(_, b)| !b.is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, c) in pivots {
        x[c] = eqs[row].1.clone();
    }
    Some(x)
}

const PRIME: u64 = 2_147_483_629;

fn mod_p(x: &Rational) -> Option<u64> {
    use num_integer::Integer;
    let p = num_bigint::BigInt::from(PRIME);
    let n = x.numer().mod_floor(&p);
    let d = x.denom().mod_floor(&p);
    let n: u64 = n.try_into().ok()?;
    let d: u64 = d.try_into().ok()?;
    (d != 0).then(|| n * inv_mod(d) % PRIME)
}

fn inv_mod(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % PRIME, PRIME - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

/// Indices of rows that are linearly independent modulo a fixed prime, in
/// input order. Such rows are independent over ℚ; the selection is only a
/// heuristic for which rows to eliminate exactly.
pub fn independent_rows_mod_p(rows: &[SparseVec], ncols: usize) -> Vec<usize> {
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; ncols];
    let mut out = Vec::new();
    let mut rank = 0;
    for (i, r) in rows.iter().enumerate() {
        if rank == ncols {
            break;
        }
        let mut dense = vec![0u64; ncols];
        let mut ok = true;
        for (c, x) in r {
            match mod_p(x) {
                Some(v) => dense[*c] = v,
                None => ok = false,
            }
        }
        if !ok {
            out.push(i);
            continue;
        }
        let mut lead = None;
        for c in (0..ncols).rev() {
            if dense[c] == 0 {
                continue;
            }
            match &pivots[c] {
                Some(prow) => {
                    let f = dense[c];
                    for j in 0..=c {
                        if prow[j] != 0 {
                            dense[j] = (dense[j] + (PRIME - f) * prow[j]) % PRIME;
                        }
                    }
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        if let Some(c) = lead {
            let inv = inv_mod(dense[c]);
            for x in dense.iter_mut() {
                *x = *x * inv % PRIME;
            }
            pivots[c] = Some(dense);
            rank += 1;
            out.push(i);
        }
    }
    out
}

impl Echelon {
    /// The reduced echelon form of the span of `rows`, certified exactly:
    /// rows chosen by a modular pass are eliminated over ℚ, and every other
    /// row is then reduced to zero, or inserted if it is not.
    pub fn from_spanning_rows(rows: &[SparseVec], ncols: usize) -> Self {
        use rayon::prelude::*;
        let mut chosen = independent_rows_mod_p(rows, ncols);
        // rows with small leading columns first: fewer back-substitutions
        chosen.sort_by_key(|&i| (rows[i].last().map(|x| x.0), rows[i].len(), i));
        let mut e = Echelon::new();
        let mut mark = vec![false; rows.len()];
        for &i in &chosen {
            mark[i] = true;
            e.insert(&rows[i]);
        }
        loop {
            let missing: Vec<usize> =
                (0..rows.len()).into_par_iter().filter(|&i| !mark[i] && !e.reduce(&rows[i]).is_empty()).collect();
            if missing.is_empty() {
                return e;
            }
            for i in missing {
                mark[i] = true;
                e.insert(&rows[i]);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn v(xs: &[(usize, i64)]) -> SparseVec {
        from_pairs(xs.iter().map(|&(c, x)| (c, int(x))).collect())
    }

    #[test]
    fn solves_consistent_systems() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)])];
        let x = solve(&cols, &v(&[(0, 2), (1, 5), (2, 3)])).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        assert!(solve(&cols, &v(&[(0, 1)])).is_none());
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (2, 1)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (1, -1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.reduce(&v(&[(0, 2), (1, -2)])).is_empty());
        assert!(!e.reduce(&v(&[(0, 1)])).is_empty());
        assert!(e.is_reduced());
    }

    #[test]
    fn normal_forms_avoid_pivots() {
        let mut e = Echelon::new();
        e.insert(&v(&[(0, 1), (3, 2)]));
        e.insert(&v(&[(1, 1), (3, 1)]));
        e.insert(&v(&[(2, 1), (3, 1), (4, 1)]));
        let nf = e.reduce(&v(&[(3, 1), (4, 1)]));
        assert!(nf.iter().all(|(c, _)| !e.is_pivot(*c)));
        assert!(e.is_reduced());
    }

    #[test]
    fn reduced_form_is_order_independent() {
        let rows = [v(&[(0, 1), (3, 2)]), v(&[(1, 3), (3, 1), (2, 1)]), v(&[(2, 1), (3, 1)]), v(&[(0, 1), (1, 1)])];
        let mut a = Echelon::new();
        for r in &rows {
            a.insert(r);
        }
        let mut b = Echelon::new();
        for r in rows.iter().rev() {
            b.insert(r);
        }
        let ra: Vec<SparseVec> = a.rows_sorted().into_iter().map(|(_, r)| r.clone()).collect();
        let rb: Vec<SparseVec> = b.rows_sorted().into_iter().map(|(_, r)| r.clone()).collect();
        assert_eq!(ra, rb);
        let c = Echelon::from_spanning_rows(&rows, 4);
        let rc: Vec<SparseVec> = c.rows_sorted().into_iter().map(|(_, r)| r.clone()).collect();
        assert_eq!(ra, rc);
    }
}
