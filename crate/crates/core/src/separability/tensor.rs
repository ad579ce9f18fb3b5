use std::fmt;

use serde_json::{json, Value};

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::ring::{Matrix, RingSpec};

/// `sum coeffs[H][K] [G/H] (x) [G/K]` in `RB(G) (x)_R RB(G)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    burnside: BurnsideRing,
    coeffs: Matrix,
}

impl TensorElement {
    pub fn new(burnside: &BurnsideRing, coeffs: Matrix) -> Result<TensorElement> {
        let n = burnside.rank();
        if coeffs.rows() != n || coeffs.cols() != n {
            return Err(Error::DimensionMismatch(format!("{}x{} tensor over rank {n}", coeffs.rows(), coeffs.cols())));
        }
        Ok(TensorElement { burnside: burnside.clone(), coeffs })
    }

    pub fn zero(burnside: &BurnsideRing, ring: RingSpec) -> TensorElement {
        let n = burnside.rank();
        TensorElement { burnside: burnside.clone(), coeffs: Matrix::zeros(ring, n, n) }
    }

    /// `x (x) y`.
    pub fn pure(x: &BurnsideElement, y: &BurnsideElement) -> Result<TensorElement> {
        if x.burnside() != y.burnside() || x.ring() != y.ring() {
            return Err(Error::Mismatch("tensor factors from different rings".into()));
        }
        let rows = x.coeffs().iter().map(|a| y.coeffs().iter().map(|b| a * b).collect()).collect();
        TensorElement::new(x.burnside(), Matrix::from_rows(x.ring(), rows)?)
    }

    pub fn burnside(&self) -> &BurnsideRing {
        &self.burnside
    }

    pub fn ring(&self) -> RingSpec {
        self.coeffs.ring()
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.compatible(other.burnside(), other.ring())?;
        let n = self.coeffs.rows();
        let mut out = self.coeffs.clone();
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.coeffs.get(i, j) + other.coeffs.get(i, j));
            }
        }
        Ok(TensorElement { burnside: self.burnside.clone(), coeffs: out })
    }

    fn compatible(&self, burnside: &BurnsideRing, ring: RingSpec) -> Result<()> {
        if &self.burnside != burnside || self.ring() != ring {
            return Err(Error::Mismatch(format!(
                "{}B({}) against {ring}B({})",
                self.ring(),
                self.burnside.group(),
                burnside.group()
            )));
        }
        Ok(())
    }

    /// `x . u`, multiplying the left factor.
    pub fn act_left(&self, x: &BurnsideElement) -> Result<TensorElement> {
        self.compatible(x.burnside(), x.ring())?;
        let c = x.multiplication_matrix().mul(&self.coeffs)?;
        Ok(TensorElement { burnside: self.burnside.clone(), coeffs: c })
    }

    /// `u . x`, multiplying the right factor.
    pub fn act_right(&self, x: &BurnsideElement) -> Result<TensorElement> {
        self.compatible(x.burnside(), x.ring())?;
        let c = self.coeffs.mul(&x.multiplication_matrix().transpose())?;
        Ok(TensorElement { burnside: self.burnside.clone(), coeffs: c })
    }

    /// Image under the product map.
    pub fn mu(&self) -> BurnsideElement {
        let ring = self.ring();
        let n = self.coeffs.rows();
        let mut out = vec![ring.zero(); n];
        for i in 0..n {
            for j in 0..n {
                let a = self.coeffs.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for &(k, c) in self.burnside.structure_constants(i, j) {
                    out[k] = &out[k] + &(a * &ring.from_i64(c as i64));
                }
            }
        }
        self.burnside.from_coeffs(ring, out).expect("rank and ring match")
    }

    pub fn to_json(&self) -> Value {
        let n = self.coeffs.rows();
        let entries: Vec<Vec<String>> =
            (0..n).map(|i| self.coeffs.row(i).iter().map(ToString::to_string).collect()).collect();
        json!({
            "group": self.burnside.group().label(),
            "ring": self.ring().to_string(),
            "labels": self.burnside.labels(),
            "coeffs": entries,
        })
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.burnside;
        let n = self.coeffs.rows();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = self.coeffs.get(i, j);
                if !c.is_zero() {
                    terms.push(format!("{c}*[{}]x[{}]", b.label(i), b.label(j)));
                }
            }
        }
        write!(
            f,
            "{}B({}) tensor: {}",
            self.ring(),
            b.group().label(),
            if terms.is_empty() { "0".into() } else { terms.join(" + ") }
        )
    }
}

/// `sum_H e_H (x) e_H`.
pub fn casimir_from_idempotents(burnside: &BurnsideRing, ring: RingSpec) -> Result<TensorElement> {
    let mut u = TensorElement::zero(burnside, ring);
    for e in burnside.idempotents(ring)? {
        u = u.add(&TensorElement::pure(&e, &e)?)?;
    }
    Ok(u)
}

/// Central on every basis element and sent to `[G/G]` by the product map.
pub fn verify_casimir(u: &TensorElement) -> bool {
    let b = u.burnside();
    let ring = u.ring();
    let central = (0..b.rank()).all(|i| {
        let x = b.basis(ring, i);
        u.act_left(&x).expect("same ring") == u.act_right(&x).expect("same ring")
    });
    central && u.mu() == b.one(ring)
}
