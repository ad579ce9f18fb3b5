use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Matrix, RingSpec};
use crate::error::{Error, Result};

/// `U * A * V = S` with `U`, `V` invertible and `S` diagonal.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: Matrix,
    pub s: Matrix,
    pub v: Matrix,
    /// Number of nonzero invariant factors of the integer form.
    pub rank: usize,
    /// Over `Z/m`: the integer form of the lift with entries in `[0, m)`, whose reduction gives `u`, `s`, `v`.
    pub lifted: Option<Box<SmithForm>>,
}

impl SmithForm {
    /// Diagonal entries of `S`.
    pub fn diagonal(&self) -> Vec<super::RingElem> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(a: &Matrix) -> Result<SmithForm> {
    match a.ring() {
        RingSpec::Rationals => Err(Error::Ring("Smith normal form needs Z or Z/m".into())),
        RingSpec::Integers => Ok(to_form(&IntSnf::new(&lift(a)), RingSpec::Integers)),
        RingSpec::Modular(m) => {
            let int = to_form(&IntSnf::new(&lift(a)), RingSpec::Integers);
            let reduce = |x: &Matrix| x.map_ring(RingSpec::Modular(m)).expect("integers reduce");
            Ok(SmithForm {
                u: reduce(&int.u),
                s: reduce(&int.s),
                v: reduce(&int.v),
                rank: int.rank,
                lifted: Some(Box::new(int)),
            })
        }
    }
}

pub(crate) fn lift(a: &Matrix) -> Vec<Vec<BigInt>> {
    (0..a.rows()).map(|i| a.row(i).iter().map(|e| e.to_bigint().expect("integral entry")).collect()).collect()
}

fn to_form(snf: &IntSnf, ring: RingSpec) -> SmithForm {
    let conv = |rows: &[Vec<BigInt>]| {
        Matrix::from_rows(ring, rows.iter().map(|r| r.iter().map(|v| ring.from_bigint(v)).collect()).collect())
            .expect("rectangular")
    };
    let mut s = Matrix::zeros(ring, snf.rows, snf.cols);
    for (i, d) in snf.diag.iter().enumerate() {
        s.set(i, i, ring.from_bigint(d));
    }
    SmithForm { u: conv(&snf.u), s, v: conv(&snf.v), rank: snf.rank(), lifted: None }
}

/// Smith normal form over `Z` with both transformations.
pub(crate) struct IntSnf {
    pub rows: usize,
    pub cols: usize,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    /// `min(rows, cols)` diagonal entries, nonnegative, each dividing the next nonzero one.
    pub diag: Vec<BigInt>,
}

impl IntSnf {
    pub fn new(a: &[Vec<BigInt>]) -> IntSnf {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut w = Work { s: a.to_vec(), u: identity(rows), v: identity(cols), rows, cols };
        for t in 0..rows.min(cols) {
            let Some((i, j)) = w.smallest(t, t..rows, t..cols) else { break };
            w.swap_rows(t, i);
            w.swap_cols(t, j);
            loop {
                w.clear_column(t);
                w.clear_row(t);
                let dirty_col = (t + 1..rows).find(|&i| !w.s[i][t].is_zero());
                let dirty_row = (t + 1..cols).find(|&j| !w.s[t][j].is_zero());
                if dirty_col.is_some() || dirty_row.is_some() {
                    // a remainder smaller than the pivot survived: make it the pivot
                    let (i, j) = w.smallest(t, t..rows, t..t + 1).unwrap_or((t, t));
                    let (i2, j2) = w.smallest(t, t..t + 1, t..cols).unwrap_or((t, t));
                    if w.s[i][j].abs() <= w.s[i2][j2].abs() {
                        w.swap_rows(t, i);
                    } else {
                        w.swap_cols(t, j2);
                    }
                    continue;
                }
                let p = w.s[t][t].clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.s[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => w.add_row(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
            if w.s[t][t].is_negative() {
                w.negate_row(t);
            }
        }
        let diag = (0..rows.min(cols)).map(|i| w.s[i][i].clone()).collect();
        IntSnf { rows, cols, u: w.u, v: w.v, diag }
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect()).collect()
}

struct Work {
    s: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
}

impl Work {
    /// Nonzero entry of least absolute value in the block, preferring `(t, t)` on ties.
    fn smallest(&self, t: usize, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in rows {
            for j in cols.clone() {
                let x = &self.s[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.s[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                    if x.abs() == BigInt::from(1) && (i, j) != (t, t) {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            self.s.swap(a, b);
            self.u.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in &mut self.s {
                r.swap(a, b);
            }
            for r in &mut self.v {
                r.swap(a, b);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.s[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
    }

    /// `row_dst += q * row_src`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.s, &mut self.u] {
            let (d, s) = pair_mut(m, dst, src);
            for (x, y) in d.iter_mut().zip(s.iter()) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
    }

    fn clear_column(&mut self, t: usize) {
        for i in t + 1..self.rows {
            if self.s[i][t].is_zero() {
                continue;
            }
            let q = -self.s[i][t].div_floor(&self.s[t][t]);
            self.add_row(i, t, &q);
        }
    }

    fn clear_row(&mut self, t: usize) {
        for j in t + 1..self.cols {
            if self.s[t][j].is_zero() {
                continue;
            }
            let q = -self.s[t][j].div_floor(&self.s[t][t]);
            for m in [&mut self.s, &mut self.v] {
                for r in m.iter_mut() {
                    if !r[t].is_zero() {
                        let delta = &q * &r[t];
                        r[j] += delta;
                    }
                }
            }
        }
    }
}

fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}
