use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::snf::{lift, IntSnf};
use super::{Matrix, RingElem, RingSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// `a * particular = b`; `kernel` spans the solutions of `a * x = 0`
    /// (over `Q` it is a basis).
    Solution {
        particular: Vec<RingElem>,
        kernel: Vec<Vec<RingElem>>,
    },
    NoSolution(Certificate),
}

impl LinearSolution {
    pub fn is_solvable(&self) -> bool {
        matches!(self, LinearSolution::Solution { .. })
    }
}

/// A checkable reason why `a * x = b` has no solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Integer row vector `w` with `w * a = 0` and `w * b != 0` modulo `modulus`
    /// (`modulus = 0` meaning exact equality). Over `Z/m` also `m * w = 0`
    /// modulo `modulus`, so no integer lift of a solution can exist.
    /// `index` is the invariant factor of the Smith form that failed.
    Congruence { w: Vec<BigInt>, modulus: BigInt, index: usize },
    /// Rational row vector `y` with `y * a = 0` and `y * b = 1`.
    Rational { y: Vec<BigRational>, rank: usize },
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        let strings = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        match self {
            Certificate::Congruence { w, modulus, index } => serde_json::json!({
                "kind": "congruence",
                "w": strings(w),
                "modulus": modulus.to_string(),
                "index": index,
            }),
            Certificate::Rational { y, rank } => serde_json::json!({
                "kind": "rational",
                "y": y.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "rank": rank,
            }),
        }
    }

    pub fn verify(&self, a: &Matrix, b: &[RingElem]) -> bool {
        if b.len() != a.rows() {
            return false;
        }
        match self {
            Certificate::Congruence { w, modulus, .. } => {
                if w.len() != a.rows() || a.ring() == RingSpec::Rationals {
                    return false;
                }
                let zero_mod = |x: &BigInt| if modulus.is_zero() { x.is_zero() } else { x.is_multiple_of(modulus) };
                let rows = lift(a);
                let cols_ok = (0..a.cols()).all(|j| zero_mod(&w.iter().zip(&rows).map(|(wi, r)| wi * &r[j]).sum()));
                let lift_ok = match a.ring() {
                    RingSpec::Modular(m) => w.iter().all(|wi| zero_mod(&(wi * BigInt::from(m)))),
                    _ => true,
                };
                let wb: BigInt = w.iter().zip(b).map(|(wi, bi)| wi * bi.to_bigint().expect("integral")).sum();
                cols_ok && lift_ok && !zero_mod(&wb)
            }
            Certificate::Rational { y, .. } => {
                if y.len() != a.rows() {
                    return false;
                }
                let q: Vec<Vec<BigRational>> =
                    (0..a.rows()).map(|i| a.row(i).iter().map(RingElem::to_rational).collect()).collect();
                let cols_ok =
                    (0..a.cols()).all(|j| y.iter().zip(&q).map(|(yi, r)| yi * &r[j]).sum::<BigRational>().is_zero());
                let yb: BigRational = y.iter().zip(b).map(|(yi, bi)| yi * bi.to_rational()).sum();
                cols_ok && yb.is_one()
            }
        }
    }
}

/// Solves `a * x = b` over the matrix's ring.
pub fn solve_linear(a: &Matrix, b: &[RingElem]) -> Result<LinearSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("{} rows but right-hand side of length {}", a.rows(), b.len())));
    }
    if b.iter().any(|x| x.ring() != a.ring()) {
        return Err(Error::Mismatch("right-hand side lives in another ring".into()));
    }
    match a.ring() {
        RingSpec::Rationals => Ok(solve_rational(a, b)),
        ring => Ok(solve_integral(a, b, ring)),
    }
}

/// Distinct nonzero equations, as indices into the original rows.
fn essential_rows(a: &Matrix, b: &[RingElem]) -> Vec<usize> {
    let mut seen: HashMap<(&[RingElem], &RingElem), ()> = HashMap::new();
    (0..a.rows())
        .filter(|&i| {
            let nonzero = !b[i].is_zero() || a.row(i).iter().any(|e| !e.is_zero());
            nonzero && seen.insert((a.row(i), &b[i]), ()).is_none()
        })
        .collect()
}

fn solve_integral(a: &Matrix, b: &[RingElem], ring: RingSpec) -> LinearSolution {
    let keep = essential_rows(a, b);
    let n = a.cols();
    let k = keep.len();
    let full = lift(a);
    let mut m: Vec<Vec<BigInt>> = keep.iter().map(|&i| full[i].clone()).collect();
    if let RingSpec::Modular(modulus) = ring {
        // Ax = b (mod m) iff [A | mI](x, z) = b over Z
        for (r, row) in m.iter_mut().enumerate() {
            row.extend((0..k).map(|c| if c == r { BigInt::from(modulus) } else { BigInt::zero() }));
        }
    }
    let cols = if k == 0 { n } else { m[0].len() };
    let rhs: Vec<BigInt> = keep.iter().map(|&i| b[i].to_bigint().expect("integral")).collect();
    let snf = if k == 0 { None } else { Some(IntSnf::new(&m)) };

    let (v, diag, c) = match &snf {
        None => (identity(cols), Vec::new(), Vec::new()),
        Some(s) => {
            let c: Vec<BigInt> = s.u.iter().map(|row| row.iter().zip(&rhs).map(|(x, y)| x * y).sum()).collect();
            (s.v.clone(), s.diag.clone(), c)
        }
    };
    for (i, ci) in c.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        let ok = if d.is_zero() { ci.is_zero() } else { ci.is_multiple_of(&d) };
        if !ok {
            let u = &snf.as_ref().expect("rows present").u;
            let mut w = vec![BigInt::zero(); a.rows()];
            for (pos, &orig) in keep.iter().enumerate() {
                w[orig] = u[i][pos].clone();
            }
            return LinearSolution::NoSolution(Certificate::Congruence { w, modulus: d, index: i });
        }
    }
    let rank = diag.iter().take_while(|d| !d.is_zero()).count();
    let y: Vec<BigInt> = (0..cols).map(|j| if j < rank { &c[j] / &diag[j] } else { BigInt::zero() }).collect();
    let x: Vec<RingElem> = (0..n).map(|r| ring.from_bigint(&v[r].iter().zip(&y).map(|(p, q)| p * q).sum())).collect();
    let mut kernel: Vec<Vec<RingElem>> = Vec::new();
    for j in rank..cols {
        let vec: Vec<RingElem> = (0..n).map(|r| ring.from_bigint(&v[r][j])).collect();
        if vec.iter().any(|e| !e.is_zero()) && !kernel.contains(&vec) {
            kernel.push(vec);
        }
    }
    LinearSolution::Solution { particular: x, kernel }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect()).collect()
}

fn solve_rational(a: &Matrix, b: &[RingElem]) -> LinearSolution {
    let q = RingSpec::Rationals;
    let rows: Vec<Vec<BigRational>> =
        (0..a.rows()).map(|i| a.row(i).iter().map(RingElem::to_rational).collect()).collect();
    let rhs: Vec<BigRational> = b.iter().map(RingElem::to_rational).collect();
    let (r, rhs, pivots) = rref(rows, rhs, a.cols());
    let rank = pivots.len();
    if rhs[rank..].iter().any(|x| !x.is_zero()) {
        // left null vector with y.b = 1, found by solving the transposed system
        let mut t: Vec<Vec<RingElem>> =
            (0..a.cols()).map(|j| (0..a.rows()).map(|i| a.get(i, j).clone()).collect()).collect();
        t.push(b.to_vec());
        let mut target = vec![q.zero(); a.cols()];
        target.push(q.one());
        let tm = Matrix::from_rows(q, t).expect("rectangular");
        let y = match solve_rational(&tm, &target) {
            LinearSolution::Solution { particular, .. } => particular.iter().map(RingElem::to_rational).collect(),
            LinearSolution::NoSolution(_) => unreachable!("Fredholm alternative"),
        };
        return LinearSolution::NoSolution(Certificate::Rational { y, rank });
    }
    let n = a.cols();
    let mut x = vec![BigRational::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rhs[i].clone();
    }
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[i][f].clone();
            }
            v.into_iter().map(RingElem::Rat).collect()
        })
        .collect();
    LinearSolution::Solution { particular: x.into_iter().map(RingElem::Rat).collect(), kernel }
}

/// Reduced row echelon form; returns rows, transformed right-hand side and pivot columns.
fn rref(
    mut m: Vec<Vec<BigRational>>,
    mut rhs: Vec<BigRational>,
    cols: usize,
) -> (Vec<Vec<BigRational>>, Vec<BigRational>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        rhs.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        rhs[row] *= &inv;
        for i in 0..m.len() {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            let (target, pivot_row) = if i < row {
                let (lo, hi) = m.split_at_mut(row);
                (&mut lo[i], &hi[0])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&mut hi[0], &lo[row])
            };
            for (x, y) in target.iter_mut().zip(pivot_row.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            let delta = &f * &rhs[row];
            rhs[i] -= delta;
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (m, rhs, pivots)
}
