//! Separability of `RB(G)` and of the shifted functor `RB_G`, the
//! commutant of `RB_G` in `RB_{GG}`, and derivations of `RB(G)`.

mod commutant;
mod derivation;
mod tensor;

pub use commutant::{commutant_basis, commutant_sufficiency, Commutant};
pub use derivation::{derivation_space, DerivationSpace};
pub use tensor::{casimir_from_idempotents, verify_casimir, TensorElement};

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::biset::gamma;
use crate::burnside::{BurnsideElement, BurnsideRing, Inversion, InvertObstruction};
use crate::error::{Error, Result};
use crate::ring::{solve_linear, Certificate, LinearSolution, Matrix, RingSpec};
use crate::{par, Config};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    Ring,
    Functor,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Ring => "ring-separable",
            Claim::Functor => "functor-separable",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Witness {
    Casimir(TensorElement),
    /// The inverse of `Gamma_G`.
    GammaInverse(BurnsideElement),
}

#[derive(Debug, Clone)]
pub enum Obstruction {
    /// No Casimir element: the constraint system has no solution.
    Linear { order: usize, certificate: Certificate },
    /// `Gamma_G` is not a unit.
    Gamma(InvertObstruction),
}

/// Exactly one of `witness` and `obstruction` is set.
#[derive(Debug, Clone)]
pub struct SeparabilityVerdict {
    pub claim: Claim,
    pub group: String,
    pub ring: RingSpec,
    pub separable: bool,
    pub witness: Option<Witness>,
    pub obstruction: Option<Obstruction>,
    /// `Gamma_G`, for the functor claim.
    pub gamma: Option<BurnsideElement>,
}

impl SeparabilityVerdict {
    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("claim".into(), json!(self.claim.as_str()));
        out.insert("group".into(), json!(self.group));
        out.insert("ring".into(), json!(self.ring.to_string()));
        out.insert("separable".into(), json!(self.separable));
        if let Some(g) = &self.gamma {
            out.insert("gamma".into(), g.to_json());
        }
        match &self.witness {
            Some(Witness::Casimir(u)) => {
                out.insert("witness".into(), u.to_json());
            }
            Some(Witness::GammaInverse(a)) => {
                out.insert("witness".into(), a.to_json());
            }
            None => {}
        }
        match &self.obstruction {
            Some(Obstruction::Linear { order, certificate }) => {
                out.insert(
                    "obstruction".into(),
                    json!({ "kind": "no-casimir-element", "order": order, "certificate": certificate.to_json() }),
                );
            }
            Some(Obstruction::Gamma(o)) => {
                out.insert("obstruction".into(), o.to_json());
            }
            None => {}
        }
        Value::Object(out)
    }
}

fn order_is_unit(burnside: &BurnsideRing, ring: RingSpec) -> bool {
    ring.is_unit_integer(&BigInt::from(burnside.group().order()))
}

/// The linear system whose solutions are the Casimir elements.
///
/// Unknown `u[H][K]` sits at column `H * n + K`. Rows `(i, L, K)` ask for
/// `x_i . u = u . x_i` at `[G/L] (x) [G/K]`; the last `n` rows ask for `mu(u) = [G/G]`.
pub fn casimir_system(
    burnside: &BurnsideRing,
    ring: RingSpec,
    config: &Config,
) -> (Matrix, Vec<crate::ring::RingElem>) {
    let n = burnside.rank();
    let mults: Vec<Matrix> = par::map_range(config.execution, n, |i| burnside.basis(ring, i).multiplication_matrix());
    let mut a = Matrix::zeros(ring, n * n * n + n, n * n);
    let mut b = vec![ring.zero(); n * n * n + n];
    for (i, m) in mults.iter().enumerate() {
        for l in 0..n {
            for k in 0..n {
                let row = (i * n + l) * n + k;
                for h in 0..n {
                    let left = m.get(l, h);
                    if !left.is_zero() {
                        let p = h * n + k;
                        a.set(row, p, a.get(row, p) + left);
                    }
                    let right = m.get(k, h);
                    if !right.is_zero() {
                        let p = l * n + h;
                        a.set(row, p, a.get(row, p) - right);
                    }
                }
            }
        }
    }
    for h in 0..n {
        for k in 0..n {
            for &(l, c) in burnside.structure_constants(h, k) {
                let row = n * n * n + l;
                a.set(row, h * n + k, a.get(row, h * n + k) + &ring.from_i64(c as i64));
            }
        }
    }
    b[n * n * n + burnside.top()] = ring.one();
    (a, b)
}

/// Separability of the algebra `RB(G)`.
pub fn ring_separability(burnside: &BurnsideRing, ring: RingSpec, config: &Config) -> Result<SeparabilityVerdict> {
    let mut verdict = SeparabilityVerdict {
        claim: Claim::Ring,
        group: burnside.group().label().to_string(),
        ring,
        separable: false,
        witness: None,
        obstruction: None,
        gamma: None,
    };
    if order_is_unit(burnside, ring) {
        let u = casimir_from_idempotents(burnside, ring)?;
        if !verify_casimir(&u) {
            return Err(Error::InternalInconsistency("idempotent Casimir element fails verification".into()));
        }
        verdict.separable = true;
        verdict.witness = Some(Witness::Casimir(u));
        return Ok(verdict);
    }
    let (a, b) = casimir_system(burnside, ring, config);
    match solve_linear(&a, &b)? {
        LinearSolution::NoSolution(certificate) => {
            verdict.obstruction = Some(Obstruction::Linear { order: burnside.group().order(), certificate });
            Ok(verdict)
        }
        LinearSolution::Solution { .. } => Err(Error::InternalInconsistency(format!(
            "a Casimir element exists over {ring} although |G| = {} is not a unit",
            burnside.group().order()
        ))),
    }
}

/// `sum_H |C_G(H)|^-1 e_H`, the inverse of `Gamma_G` when `|G|` is a unit.
pub fn gamma_inverse_from_idempotents(burnside: &BurnsideRing, ring: RingSpec) -> Result<BurnsideElement> {
    let mut alpha = burnside.zero(ring);
    for (h, e) in burnside.idempotents(ring)?.into_iter().enumerate() {
        let c = burnside.lattice().representative(h).centralizer().order();
        let inv = ring
            .from_i64(c as i64)
            .inv()
            .ok_or_else(|| Error::NotInvertible { value: c.to_string(), ring: ring.to_string() })?;
        alpha = alpha.add(&e.scale(&inv))?;
    }
    Ok(alpha)
}

/// Separability of the shifted functor `RB_G`: whether `Gamma_G` is a unit.
pub fn functor_separability(burnside: &BurnsideRing, ring: RingSpec) -> Result<SeparabilityVerdict> {
    let gm = gamma(burnside, ring);
    let unit = order_is_unit(burnside, ring);
    let mut verdict = SeparabilityVerdict {
        claim: Claim::Functor,
        group: burnside.group().label().to_string(),
        ring,
        separable: false,
        witness: None,
        obstruction: None,
        gamma: Some(gm.clone()),
    };
    match (gm.invert(), unit) {
        (Inversion::Inverse(inv), true) => {
            let alpha = gamma_inverse_from_idempotents(burnside, ring)?;
            if gm.multiply(&alpha)? != burnside.one(ring) || alpha != inv {
                return Err(Error::InternalInconsistency(
                    "inverse of Gamma disagrees with the idempotent formula".into(),
                ));
            }
            verdict.separable = true;
            verdict.witness = Some(Witness::GammaInverse(inv));
            Ok(verdict)
        }
        (Inversion::NotInvertible(o), false) => {
            verdict.obstruction = Some(Obstruction::Gamma(o));
            Ok(verdict)
        }
        (Inversion::Inverse(_), false) => {
            Err(Error::InternalInconsistency("Gamma is a unit although |G| is not".into()))
        }
        (Inversion::NotInvertible(_), true) => {
            Err(Error::InternalInconsistency("Gamma is not a unit although |G| is".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    const Q: RingSpec = RingSpec::Rationals;
    const Z: RingSpec = RingSpec::Integers;

    fn ring_of(s: &str) -> BurnsideRing {
        let cfg = Config::default();
        BurnsideRing::new(&GroupSpec::parse(s).unwrap().build(&cfg).unwrap(), &cfg).unwrap()
    }

    #[test]
    fn ring_verdicts() {
        let cfg = Config::default();
        let c2 = ring_of("C2");
        let v = ring_separability(&c2, Z, &cfg).unwrap();
        assert!(!v.separable && v.witness.is_none());
        let Some(Obstruction::Linear { certificate, order: 2 }) = &v.obstruction else { panic!("{v:?}") };
        let (a, b) = casimir_system(&c2, Z, &cfg);
        assert!(certificate.verify(&a, &b));
        let v = ring_separability(&c2, RingSpec::Modular(3), &cfg).unwrap();
        let Some(Witness::Casimir(u)) = &v.witness else { panic!() };
        assert!(v.separable && verify_casimir(u));
        let c1 = ring_of("C1");
        let v = ring_separability(&c1, Z, &cfg).unwrap();
        let Some(Witness::Casimir(u)) = &v.witness else { panic!() };
        assert_eq!(u, &TensorElement::pure(&c1.one(Z), &c1.one(Z)).unwrap());
    }

    #[test]
    fn casimir_system_matches_verification() {
        let cfg = Config::default();
        let b = ring_of("S3");
        let u = casimir_from_idempotents(&b, Q).unwrap();
        let (a, rhs) = casimir_system(&b, Q, &cfg);
        let flat: Vec<_> = (0..b.rank()).flat_map(|i| u.coeffs().row(i).to_vec()).collect();
        assert_eq!(a.mul_vec(&flat).unwrap(), rhs);
    }

    #[test]
    fn functor_verdicts() {
        let s3 = ring_of("S3");
        let v = functor_separability(&s3, Q).unwrap();
        let Some(Witness::GammaInverse(alpha)) = &v.witness else { panic!() };
        assert_eq!(v.gamma.as_ref().unwrap().multiply(alpha).unwrap(), s3.one(Q));
        let c2 = ring_of("C2");
        let v = functor_separability(&c2, Z).unwrap();
        assert!(!v.separable);
        match &v.obstruction {
            Some(Obstruction::Gamma(InvertObstruction::NonUnitMark { label, mark })) => {
                assert_eq!(label, c2.label(0));
                assert_eq!(mark, &Z.from_i64(2));
            }
            other => panic!("{other:?}"),
        }
        let z3 = RingSpec::Modular(3);
        let v = functor_separability(&c2, z3).unwrap();
        let Some(Witness::GammaInverse(alpha)) = &v.witness else { panic!() };
        assert_eq!(alpha, &c2.one(z3).scale_i64(2));
    }

    #[test]
    fn verdict_json() {
        let cfg = Config::default();
        let c2 = ring_of("C2");
        let j = ring_separability(&c2, Z, &cfg).unwrap().to_json();
        assert_eq!(j["claim"], "ring-separable");
        assert_eq!(j["separable"], false);
        assert!(j.get("witness").is_none());
        assert_eq!(j["obstruction"]["certificate"]["kind"], "congruence");
        let j = functor_separability(&c2, Q).unwrap().to_json();
        assert_eq!(j["separable"], true);
        assert!(j.get("obstruction").is_none());
    }
}
