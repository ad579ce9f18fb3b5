//! The Burnside algebra `RB(G)` on the basis of transitive G-sets `[G/H]`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::group::{Group, SubgroupLattice};
use crate::gset::GSet;
use crate::ring::{solve_linear, Certificate, LinearSolution, Matrix, RingElem, RingSpec};
use crate::{par, Config};

/// Shared, read-only data of `B(G)`: lattice, marks and structure constants.
#[derive(Clone)]
pub struct BurnsideRing(Arc<RingData>);

struct RingData {
    group: Group,
    lattice: SubgroupLattice,
    transitive: Vec<GSet>,
    /// `marks[k][h] = |(G/K)^H|`.
    marks: Vec<Vec<u64>>,
    /// `constants[i][j]` lists `(k, c)` with `[G/H_i][G/H_j] = sum c [G/H_k]`.
    constants: Vec<Vec<Vec<(usize, u64)>>>,
}

impl BurnsideRing {
    pub fn new(group: &Group, config: &Config) -> Result<BurnsideRing> {
        let lattice = SubgroupLattice::new(group, config)?;
        Ok(BurnsideRing::with_lattice(lattice, config))
    }

    pub fn with_lattice(lattice: SubgroupLattice, config: &Config) -> BurnsideRing {
        let group = lattice.group().clone();
        let n = lattice.class_count();
        let transitive: Vec<GSet> = (0..n).map(|c| GSet::transitive(lattice.representative(c))).collect();
        let marks = par::map_range(config.execution, n, |k| {
            (0..n).map(|h| transitive[k].fixed_points(lattice.representative(h)).expect("same group") as u64).collect()
        });
        let flat = par::map_range(config.execution, n * n, |p| {
            let (i, j) = (p / n, p % n);
            if j < i {
                Vec::new()
            } else {
                orbit_classes(&lattice, &transitive[j], i)
            }
        });
        let mut constants = vec![vec![Vec::new(); n]; n];
        for (p, terms) in flat.into_iter().enumerate() {
            let (i, j) = (p / n, p % n);
            if j >= i {
                constants[j][i] = terms.clone();
                constants[i][j] = terms;
            }
        }
        BurnsideRing(Arc::new(RingData { group, lattice, transitive, marks, constants }))
    }

    pub fn group(&self) -> &Group {
        &self.0.group
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.0.lattice
    }

    pub fn rank(&self) -> usize {
        self.0.marks.len()
    }

    pub fn label(&self, class: usize) -> &str {
        self.0.lattice.label(class)
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.rank()).map(|c| self.label(c).to_string()).collect()
    }

    pub fn class_by_label(&self, label: &str) -> Result<usize> {
        self.0.lattice.class_by_label(label)
    }

    /// Class of the whole group; `[G/G]` is the unit.
    pub fn top(&self) -> usize {
        self.rank() - 1
    }

    pub fn transitive(&self, class: usize) -> &GSet {
        &self.0.transitive[class]
    }

    /// `|(G/K)^H|` for classes `k` and `h`.
    pub fn mark_of_basis(&self, k: usize, h: usize) -> u64 {
        self.0.marks[k][h]
    }

    /// Nonzero structure constants of `[G/H_i][G/H_j]`.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.0.constants[i][j]
    }

    pub fn table_of_marks(&self) -> MarksTable {
        MarksTable { group: self.group().label().to_string(), labels: self.labels(), entries: self.0.marks.clone() }
    }

    pub fn zero(&self, ring: RingSpec) -> BurnsideElement {
        BurnsideElement { burnside: self.clone(), ring, coeffs: vec![ring.zero(); self.rank()] }
    }

    pub fn one(&self, ring: RingSpec) -> BurnsideElement {
        self.basis(ring, self.top())
    }

    pub fn basis(&self, ring: RingSpec, class: usize) -> BurnsideElement {
        let mut e = self.zero(ring);
        e.coeffs[class] = ring.one();
        e
    }

    pub fn from_coeffs(&self, ring: RingSpec, coeffs: Vec<RingElem>) -> Result<BurnsideElement> {
        if coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!("{} coefficients for rank {}", coeffs.len(), self.rank())));
        }
        if coeffs.iter().any(|c| c.ring() != ring) {
            return Err(Error::Mismatch(format!("coefficient outside {ring}")));
        }
        Ok(BurnsideElement { burnside: self.clone(), ring, coeffs })
    }

    pub fn from_i64(&self, ring: RingSpec, coeffs: &[i64]) -> Result<BurnsideElement> {
        self.from_coeffs(ring, coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    /// Class of a G-set.
    pub fn from_gset(&self, ring: RingSpec, x: &GSet) -> Result<BurnsideElement> {
        if x.group() != self.group() {
            return Err(Error::GroupMismatch(format!("G-set over {} in B({})", x.group(), self.group())));
        }
        let counts = x.class_counts(self.lattice())?;
        self.from_coeffs(ring, counts.iter().map(|&c| ring.from_i64(c as i64)).collect())
    }

    /// The idempotent `e_H = 1/|N_G(H)| sum_{K <= H} |K| mu(K, H) [G/K]` of the class of `H`.
    pub fn idempotent(&self, class: usize, ring: RingSpec) -> Result<BurnsideElement> {
        let order = BigInt::from(self.group().order());
        if !ring.is_unit_integer(&order) {
            return Err(Error::NotInvertible { value: order.to_string(), ring: ring.to_string() });
        }
        let lat = self.lattice();
        let h = lat.representative(class);
        let n_h = BigInt::from(h.normalizer().order());
        let mut q = vec![BigRational::zero(); self.rank()];
        for &(k, mu) in lat.moebius_column(class) {
            let size = BigInt::from(lat.subgroups()[k].order());
            q[lat.class_of_index(k)] += BigRational::new(size * mu, n_h.clone());
        }
        let coeffs = q
            .iter()
            .map(|c| {
                ring.from_rational(c)
                    .ok_or_else(|| Error::NotInvertible { value: n_h.to_string(), ring: ring.to_string() })
            })
            .collect::<Result<_>>()?;
        self.from_coeffs(ring, coeffs)
    }

    pub fn idempotents(&self, ring: RingSpec) -> Result<Vec<BurnsideElement>> {
        (0..self.rank()).map(|c| self.idempotent(c, ring)).collect()
    }
}

impl PartialEq for BurnsideRing {
    fn eq(&self, other: &BurnsideRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.group == other.0.group
    }
}

impl Eq for BurnsideRing {}

impl fmt::Debug for BurnsideRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({})", self.group().label())
    }
}

/// `H_i`-orbits on `G/H_j`, classified in `G`: the product `[G/H_i][G/H_j]`.
fn orbit_classes(lattice: &SubgroupLattice, x: &GSet, i: usize) -> Vec<(usize, u64)> {
    let h = lattice.representative(i);
    let gens = h.generators();
    let mut seen = vec![false; x.size()];
    let mut counts = vec![0u64; lattice.class_count()];
    for start in 0..x.size() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut t = 0;
        while t < orbit.len() {
            let p = orbit[t];
            t += 1;
            for &s in &gens {
                let q = x.act(s, p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        let mask = (0..x.group().order()).map(|g| h.contains(g) && x.act(g, start) == start).collect();
        let stab = crate::group::Subgroup::from_mask(x.group(), mask);
        counts[lattice.class_of(&stab).expect("subgroup of G")] += 1;
    }
    counts.into_iter().enumerate().filter(|&(_, c)| c > 0).collect()
}

/// An element of `RB(G)` in the basis `[G/H]`.
#[derive(Clone)]
pub struct BurnsideElement {
    burnside: BurnsideRing,
    ring: RingSpec,
    coeffs: Vec<RingElem>,
}

/// Outcome of [`BurnsideElement::invert`].
#[derive(Debug, Clone)]
pub enum Inversion {
    Inverse(BurnsideElement),
    NotInvertible(InvertObstruction),
}

/// The stage at which inversion failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvertObstruction {
    /// A mark is not a unit, so no inverse exists.
    NonUnitMark { label: String, mark: RingElem },
    /// The ghost inverse does not come from an element of `RB(G)`.
    NonIntegralPullback { label: String, value: BigRational },
    /// Over `Z/m`, where the ghost map is not injective: `a * x = 1` has no solution.
    NoLinearSolution(Certificate),
}

impl InvertObstruction {
    pub fn to_json(&self) -> Value {
        match self {
            InvertObstruction::NonUnitMark { label, mark } => {
                json!({ "kind": "non-unit-mark", "class": label, "mark": mark.to_string() })
            }
            InvertObstruction::NonIntegralPullback { label, value } => {
                json!({ "kind": "non-integral-pullback", "class": label, "value": value.to_string() })
            }
            InvertObstruction::NoLinearSolution(c) => {
                json!({ "kind": "no-linear-solution", "certificate": c.to_json() })
            }
        }
    }
}

impl BurnsideElement {
    pub fn burnside(&self) -> &BurnsideRing {
        &self.burnside
    }

    pub fn group(&self) -> &Group {
        self.burnside.group()
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, class: usize) -> &RingElem {
        &self.coeffs[class]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElem::is_zero)
    }

    fn compatible(&self, other: &BurnsideElement) -> Result<()> {
        if self.burnside != other.burnside || self.ring != other.ring {
            return Err(Error::Mismatch(format!(
                "elements of {}B({}) and {}B({})",
                self.ring,
                self.group(),
                other.ring,
                other.group()
            )));
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<RingElem>) -> BurnsideElement {
        BurnsideElement { burnside: self.burnside.clone(), ring: self.ring, coeffs }
    }

    pub fn add(&self, other: &BurnsideElement) -> Result<BurnsideElement> {
        self.compatible(other)?;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &BurnsideElement) -> Result<BurnsideElement> {
        self.compatible(other)?;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect()))
    }

    pub fn neg(&self) -> BurnsideElement {
        self.with_coeffs(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, r: &RingElem) -> BurnsideElement {
        self.with_coeffs(self.coeffs.iter().map(|a| a * r).collect())
    }

    pub fn scale_i64(&self, r: i64) -> BurnsideElement {
        self.scale(&self.ring.from_i64(r))
    }

    /// Product through the structure constants.
    pub fn multiply(&self, other: &BurnsideElement) -> Result<BurnsideElement> {
        self.compatible(other)?;
        let n = self.coeffs.len();
        let mut out = vec![self.ring.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for &(k, c) in self.burnside.structure_constants(i, j) {
                    out[k] = &out[k] + &(&ab * &self.ring.from_i64(c as i64));
                }
            }
        }
        Ok(self.with_coeffs(out))
    }

    /// The mark `Phi_H` at a class.
    pub fn mark(&self, class: usize) -> RingElem {
        self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()).fold(self.ring.zero(), |acc, (k, a)| {
            &acc + &(a * &self.ring.from_i64(self.burnside.mark_of_basis(k, class) as i64))
        })
    }

    pub fn mark_by_label(&self, label: &str) -> Result<RingElem> {
        Ok(self.mark(self.burnside.class_by_label(label)?))
    }

    pub fn marks(&self) -> Vec<RingElem> {
        (0..self.coeffs.len()).map(|h| self.mark(h)).collect()
    }

    /// Inverse in `RB(G)`, found by pulling back the inverse ghost vector.
    pub fn invert(&self) -> Inversion {
        let marks = self.marks();
        let b = &self.burnside;
        for (h, m) in marks.iter().enumerate() {
            if !m.is_unit() {
                return Inversion::NotInvertible(InvertObstruction::NonUnitMark {
                    label: b.label(h).to_string(),
                    mark: m.clone(),
                });
            }
        }
        // ghost coordinates of the candidate, lifted to Q
        let ghost: Vec<BigRational> = marks.iter().map(|m| m.inv().expect("unit").to_rational()).collect();
        let n = marks.len();
        let mut x = vec![BigRational::zero(); n];
        for h in (0..n).rev() {
            let mut acc = ghost[h].clone();
            for (k, xk) in x.iter().enumerate().skip(h + 1) {
                let m = b.mark_of_basis(k, h);
                if m != 0 && !xk.is_zero() {
                    acc -= xk * BigRational::from_integer(BigInt::from(m));
                }
            }
            x[h] = acc / BigRational::from_integer(BigInt::from(b.mark_of_basis(h, h)));
        }
        let pulled: Option<Vec<RingElem>> = x.iter().map(|q| self.ring.from_rational(q)).collect();
        if let Some(c) = pulled {
            let candidate = self.with_coeffs(c);
            if self.multiply(&candidate).expect("same ring") == b.one(self.ring) {
                return Inversion::Inverse(candidate);
            }
        }
        match self.ring {
            RingSpec::Modular(_) => self.invert_by_solving(),
            _ => {
                let h = x.iter().position(|q| self.ring.from_rational(q).is_none()).unwrap_or(0);
                Inversion::NotInvertible(InvertObstruction::NonIntegralPullback {
                    label: b.label(h).to_string(),
                    value: x[h].clone(),
                })
            }
        }
    }

    /// Solves `a * x = [G/G]` through the multiplication matrix of `a`.
    fn invert_by_solving(&self) -> Inversion {
        let m = self.multiplication_matrix();
        let target = self.burnside.one(self.ring).coeffs;
        match solve_linear(&m, &target).expect("square system") {
            LinearSolution::Solution { particular, .. } => Inversion::Inverse(self.with_coeffs(particular)),
            LinearSolution::NoSolution(c) => Inversion::NotInvertible(InvertObstruction::NoLinearSolution(c)),
        }
    }

    /// Matrix of `x -> self * x`; column `j` holds `self * [G/H_j]`.
    pub fn multiplication_matrix(&self) -> Matrix {
        let n = self.coeffs.len();
        let mut m = Matrix::zeros(self.ring, n, n);
        for j in 0..n {
            let col = self.multiply(&self.burnside.basis(self.ring, j)).expect("same ring");
            for (i, c) in col.coeffs.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Coefficients keyed by class label, zero entries omitted.
    pub fn to_json(&self) -> Value {
        let mut coeffs = Map::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(self.burnside.label(i).to_string(), Value::String(c.to_string()));
            }
        }
        json!({ "group": self.group().label(), "ring": self.ring.to_string(), "coeffs": coeffs })
    }

    pub fn from_json(burnside: &BurnsideRing, value: &Value) -> Result<BurnsideElement> {
        let bad = |what: &str| Error::Parse(format!("element JSON: {what}"));
        let ring = RingSpec::parse(value.get("ring").and_then(Value::as_str).ok_or_else(|| bad("missing ring"))?)?;
        let mut e = burnside.zero(ring);
        let coeffs = value.get("coeffs").and_then(Value::as_object).ok_or_else(|| bad("missing coeffs"))?;
        for (label, c) in coeffs {
            let class = burnside.class_by_label(label)?;
            e.coeffs[class] = ring.parse_elem(c.as_str().ok_or_else(|| bad("coefficient must be a string"))?)?;
        }
        Ok(e)
    }
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &BurnsideElement) -> bool {
        self.burnside == other.burnside && self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl Eq for BurnsideElement {}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, text.as_str()),
            };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let label = self.burnside.label(i);
            if magnitude == "1" {
                write!(f, "[{label}]")?;
            } else {
                write!(f, "{magnitude}*[{label}]")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}B({}): {}", self.ring, self.group().label(), self)
    }
}

/// Marks of transitive sets: row `K`, column `H` holds `|(G/K)^H|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarksTable {
    pub group: String,
    pub labels: Vec<String>,
    pub entries: Vec<Vec<u64>>,
}

impl MarksTable {
    pub fn is_lower_triangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, row)| row.iter().skip(k + 1).all(|&x| x == 0))
    }

    /// Inverse over `Q`; rows and columns as in `entries`.
    pub fn rational_inverse(&self) -> Vec<Vec<BigRational>> {
        let n = self.entries.len();
        let mut inv = vec![vec![BigRational::zero(); n]; n];
        // forward substitution column by column, the table being lower triangular
        for c in 0..n {
            for r in c..n {
                let mut acc = if r == c { BigRational::one() } else { BigRational::zero() };
                for k in c..r {
                    let e = self.entries[r][k];
                    if e != 0 {
                        acc -= BigRational::from_integer(BigInt::from(e)) * &inv[k][c];
                    }
                }
                inv[r][c] = acc / BigRational::from_integer(BigInt::from(self.entries[r][r]));
            }
        }
        inv
    }

    pub fn to_json(&self) -> Value {
        json!({ "group": self.group, "rows": self.labels, "columns": self.labels, "entries": self.entries })
    }
}
