use serde_json::{json, Value};

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::ring::{solve_linear, LinearSolution, Matrix, RingSpec};

/// Derivations of `RB(G)` into itself, as matrices in the `[G/H]` basis
/// (column `j` is the image of `[G/H_j]`). A basis over `Q`, a spanning set otherwise.
#[derive(Debug, Clone)]
pub struct DerivationSpace {
    pub burnside: BurnsideRing,
    pub ring: RingSpec,
    pub basis: Vec<Matrix>,
}

impl DerivationSpace {
    pub fn is_zero(&self) -> bool {
        self.basis.iter().all(Matrix::is_zero)
    }

    /// Applies `d` to an element.
    pub fn apply(&self, d: &Matrix, x: &BurnsideElement) -> Result<BurnsideElement> {
        self.burnside.from_coeffs(self.ring, d.mul_vec(x.coeffs())?)
    }

    /// `d(x_i x_j) = d(x_i) x_j + x_i d(x_j)` on every basis pair.
    pub fn satisfies_leibniz(&self, d: &Matrix) -> bool {
        let n = self.burnside.rank();
        let x = |i| self.burnside.basis(self.ring, i);
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = self.apply(d, &x(i).multiply(&x(j)).expect("same ring")).expect("square");
                let di = self.apply(d, &x(i)).expect("square");
                let dj = self.apply(d, &x(j)).expect("square");
                let rhs = di.multiply(&x(j)).expect("same ring").add(&x(i).multiply(&dj).expect("same ring"));
                rhs.is_ok_and(|r| r == lhs)
            })
        })
    }

    pub fn to_json(&self) -> Value {
        let n = self.burnside.rank();
        let mats: Vec<Vec<Vec<String>>> = self
            .basis
            .iter()
            .map(|d| (0..n).map(|i| d.row(i).iter().map(ToString::to_string).collect()).collect())
            .collect();
        json!({
            "group": self.burnside.group().label(),
            "ring": self.ring.to_string(),
            "labels": self.burnside.labels(),
            "zero": self.is_zero(),
            "basis": mats,
        })
    }
}

/// Solves the Leibniz rule on basis pairs for the matrix of `d`.
///
/// Unknown `d[k][l]` (coefficient of `[G/H_k]` in `d([G/H_l])`) sits at
/// column `k * n + l`; row `(i, j, k)` with `i <= j` reads
/// `sum_l c_ij^l d[k][l] - sum_l c_lj^k d[l][i] - sum_l c_il^k d[l][j] = 0`.
pub fn derivation_space(burnside: &BurnsideRing, ring: RingSpec) -> Result<DerivationSpace> {
    let n = burnside.rank();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut a = Matrix::zeros(ring, pairs.len() * n, n * n);
    let mut bump = |row: usize, col: usize, c: u64, sign: i64| {
        let v = a.get(row, col) + &ring.from_i64(sign * c as i64);
        a.set(row, col, v);
    };
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..n {
            let row = p * n + k;
            for &(l, c) in burnside.structure_constants(i, j) {
                bump(row, k * n + l, c, 1);
            }
            for l in 0..n {
                for &(kk, c) in burnside.structure_constants(l, j) {
                    if kk == k {
                        bump(row, l * n + i, c, -1);
                    }
                }
                for &(kk, c) in burnside.structure_constants(i, l) {
                    if kk == k {
                        bump(row, l * n + j, c, -1);
                    }
                }
            }
        }
    }
    let kernel = match solve_linear(&a, &vec![ring.zero(); a.rows()])? {
        LinearSolution::Solution { kernel, .. } => kernel,
        LinearSolution::NoSolution(_) => {
            return Err(Error::InternalInconsistency("homogeneous system unsolvable".into()))
        }
    };
    let basis = kernel
        .into_iter()
        .map(|v| Matrix::from_rows(ring, v.chunks(n).map(<[_]>::to_vec).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(DerivationSpace { burnside: burnside.clone(), ring, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::Config;

    fn ring_of(s: &str) -> BurnsideRing {
        let cfg = Config::default();
        BurnsideRing::new(&GroupSpec::parse(s).unwrap().build(&cfg).unwrap(), &cfg).unwrap()
    }

    #[test]
    fn vanishing_cases() {
        for (g, r) in [("S3", "Z"), ("C2", "Z"), ("C4", "Z"), ("C3", "Z/5"), ("S3", "Q")] {
            let d = derivation_space(&ring_of(g), RingSpec::parse(r).unwrap()).unwrap();
            assert!(d.is_zero(), "{g} over {r}");
        }
    }

    #[test]
    fn dual_numbers_mod_two() {
        let b = ring_of("C2");
        let z2 = RingSpec::Modular(2);
        let d = derivation_space(&b, z2).unwrap();
        assert!(!d.is_zero());
        // [C2/1] -> [C2/1], [C2/C2] -> 0
        let want = Matrix::from_i64(z2, &[vec![1, 0], vec![0, 0]]).unwrap();
        assert!(d.satisfies_leibniz(&want));
        assert!(d.basis.contains(&want));
        for m in &d.basis {
            assert!(d.satisfies_leibniz(m));
        }
        assert!(!derivation_space(&ring_of("C3"), RingSpec::Modular(3)).unwrap().is_zero());
    }

    #[test]
    fn scaled_idempotents_are_constants() {
        let b = ring_of("S3");
        for r in ["Z", "Z/5", "Q"] {
            let ring = RingSpec::parse(r).unwrap();
            let d = derivation_space(&b, ring).unwrap();
            for e in b.idempotents(RingSpec::Rationals).unwrap() {
                let v: Vec<_> = e
                    .coeffs()
                    .iter()
                    .map(|c| {
                        ring.from_rational(&(c.to_rational() * num_rational::BigRational::from_integer(6.into())))
                            .unwrap()
                    })
                    .collect();
                let v = b.from_coeffs(ring, v).unwrap();
                for m in &d.basis {
                    assert!(d.apply(m, &v).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn rejects_non_derivations() {
        let b = ring_of("C2");
        let d = derivation_space(&b, RingSpec::Integers).unwrap();
        assert!(!d.satisfies_leibniz(&Matrix::identity(RingSpec::Integers, 2)));
    }
}
