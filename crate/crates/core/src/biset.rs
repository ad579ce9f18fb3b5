//! Concrete bisets, carried as `(L x R)`-sets with `(l, r).x = l x r^-1`.

use std::fmt;

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::group::{Group, Hom, Subgroup};
use crate::gset::{GSet, UnionFind};
use crate::ring::RingSpec;
use crate::Config;

/// An `(L, R)`-biset. The carrier lives over `prod(L, R)`; the right action
/// of `r` is the left action of `(1, r^-1)`.
#[derive(Clone)]
pub struct Biset {
    left: Group,
    right: Group,
    carrier: GSet,
}

impl Biset {
    pub fn from_carrier(carrier: GSet) -> Result<Biset> {
        match carrier.group().factors() {
            [l, r] => Ok(Biset { left: l.clone(), right: r.clone(), carrier }),
            _ => Err(Error::NotAProductGroup(carrier.group().label().to_string())),
        }
    }

    /// The set `T` with `l.x.r = left(l) x right(r)`.
    pub fn translation(left: &Hom, right: &Hom, config: &Config) -> Result<Biset> {
        let t = left.target();
        if right.target() != t {
            return Err(Error::GroupMismatch("translation maps land in different groups".into()));
        }
        let lr = Group::product_of(&[left.source().clone(), right.source().clone()], config)?;
        let mut action = Vec::with_capacity(lr.order() * t.order());
        for z in lr.elements() {
            let c = lr.coords(z);
            let (a, b) = (left.apply(c[0]), t.inv(right.apply(c[1])));
            for x in t.elements() {
                action.push(t.mul(t.mul(a, x), b) as u32);
            }
        }
        Biset::from_carrier(GSet::trusted(&lr, t.order(), action))
    }

    /// `Ind_H^G`: the `(G, H)`-biset `G`.
    pub fn induction(h: &Subgroup, config: &Config) -> Result<Biset> {
        let (_, inclusion) = h.as_group();
        Biset::translation(&Hom::identity(h.group()), &inclusion, config)
    }

    /// `Res_H^G`: the `(H, G)`-biset `G`.
    pub fn restriction(h: &Subgroup, config: &Config) -> Result<Biset> {
        let (_, inclusion) = h.as_group();
        Biset::translation(&inclusion, &Hom::identity(h.group()), config)
    }

    /// `Iso(phi)` for a bijective `phi: G -> H`: the `(H, G)`-biset `H`.
    pub fn isomorphism(phi: &Hom, config: &Config) -> Result<Biset> {
        if !phi.is_bijective() {
            return Err(Error::NotAnIsomorphism(format!("{} -> {}", phi.source(), phi.target())));
        }
        Biset::translation(&Hom::identity(phi.target()), phi, config)
    }

    pub fn identity(g: &Group, config: &Config) -> Result<Biset> {
        Biset::isomorphism(&Hom::identity(g), config)
    }

    pub fn left(&self) -> &Group {
        &self.left
    }

    pub fn right(&self) -> &Group {
        &self.right
    }

    pub fn carrier(&self) -> &GSet {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    fn left_act(&self, l: usize, x: usize) -> usize {
        self.carrier.act(self.carrier.group().from_coords(&[l, self.right.identity()]), x)
    }

    fn right_act(&self, x: usize, r: usize) -> usize {
        self.carrier.act(self.carrier.group().from_coords(&[self.left.identity(), self.right.inv(r)]), x)
    }

    /// `self x_G other` for `self` an `(H, G)`- and `other` a `(G, K)`-biset.
    pub fn compose(&self, other: &Biset, config: &Config) -> Result<Biset> {
        if self.right != other.left {
            return Err(Error::GroupMismatch(format!("composing over {} and {}", self.right, other.left)));
        }
        let (n, m) = (self.size(), other.size());
        let mut uf = UnionFind::new(n * m);
        for &g in self.right.generators() {
            for x in 0..n {
                let xg = self.right_act(x, g);
                for y in 0..m {
                    uf.union(xg * m + y, x * m + other.left_act(g, y));
                }
            }
        }
        let (class, count) = uf.classes();
        let mut rep = vec![usize::MAX; count];
        for p in (0..n * m).rev() {
            rep[class[p]] = p;
        }
        let hk = Group::product_of(&[self.left.clone(), other.right.clone()], config)?;
        let mut action = Vec::with_capacity(hk.order() * count);
        for z in hk.elements() {
            let c = hk.coords(z);
            for &p in &rep {
                let x = self.left_act(c[0], p / m);
                let y = other.right_act(p % m, other.right.inv(c[1]));
                action.push(class[x * m + y] as u32);
            }
        }
        Biset::from_carrier(GSet::trusted(&hk, count, action))
    }

    /// `self x_G X` for a left `G`-set `X`, as a left `H`-set.
    pub fn apply_gset(&self, x: &GSet) -> Result<GSet> {
        if x.group() != &self.right {
            return Err(Error::GroupMismatch(format!("{} acting on a {}-set", self.right, x.group())));
        }
        let (n, m) = (self.size(), x.size());
        let mut uf = UnionFind::new(n * m);
        for &g in self.right.generators() {
            for u in 0..n {
                let ug = self.right_act(u, g);
                for y in 0..m {
                    uf.union(ug * m + y, u * m + x.act(g, y));
                }
            }
        }
        let (class, count) = uf.classes();
        let mut rep = vec![usize::MAX; count];
        for p in (0..n * m).rev() {
            rep[class[p]] = p;
        }
        let mut action = Vec::with_capacity(self.left.order() * count);
        for h in self.left.elements() {
            for &p in &rep {
                action.push(class[self.left_act(h, p / m) * m + p % m] as u32);
            }
        }
        Ok(GSet::trusted(&self.left, count, action))
    }

    /// The map `RB(G) -> RB(H)` induced by this `(H, G)`-biset.
    pub fn apply(&self, a: &BurnsideElement, target: &BurnsideRing) -> Result<BurnsideElement> {
        if a.group() != &self.right || target.group() != &self.left {
            return Err(Error::Mismatch("biset does not match source and target rings".into()));
        }
        let ring = a.ring();
        let mut out = target.zero(ring);
        for (k, c) in a.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let image = target.from_gset(ring, &self.apply_gset(a.burnside().transitive(k))?)?;
            out = out.add(&image.scale(c))?;
        }
        Ok(out)
    }

    pub fn iso_equal(&self, other: &Biset) -> Result<bool> {
        self.carrier.iso_equal(&other.carrier)
    }
}

impl fmt::Debug for Biset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Biset({}, {}; {} points)", self.left.label(), self.right.label(), self.size())
    }
}

/// A virtual `(L, R)`-biset: an element of `RB(L x R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualBiset {
    pub left: Group,
    pub right: Group,
    pub element: BurnsideElement,
}

impl VirtualBiset {
    pub fn new(element: BurnsideElement) -> Result<VirtualBiset> {
        match element.group().factors() {
            [l, r] => Ok(VirtualBiset { left: l.clone(), right: r.clone(), element }),
            _ => Err(Error::NotAProductGroup(element.group().label().to_string())),
        }
    }

    pub fn from_biset(u: &Biset, burnside: &BurnsideRing, ring: RingSpec) -> Result<VirtualBiset> {
        VirtualBiset::new(burnside.from_gset(ring, u.carrier())?)
    }
}

/// `X x Y` over `prod(A, B)` for an `A`-set `X` and a `B`-set `Y`; `(x, y)` has index `x * |Y| + y`.
pub fn external_product_gset(x: &GSet, y: &GSet, target: &Group) -> Result<GSet> {
    if target.factors() != [x.group().clone(), y.group().clone()] {
        return Err(Error::FactorMismatch(format!("{target} is not prod({}, {})", x.group(), y.group())));
    }
    let m = y.size();
    let mut action = Vec::with_capacity(target.order() * x.size() * m);
    for z in target.elements() {
        let c = target.coords(z);
        for p in 0..x.size() * m {
            action.push((x.act(c[0], p / m) * m + y.act(c[1], p % m)) as u32);
        }
    }
    Ok(GSet::trusted(target, x.size() * m, action))
}

/// Bilinear extension of [`external_product_gset`] into `RB(A x B)`.
pub fn external_product(a: &BurnsideElement, b: &BurnsideElement, target: &BurnsideRing) -> Result<BurnsideElement> {
    if a.ring() != b.ring() {
        return Err(Error::Mismatch("coefficient rings differ".into()));
    }
    let ring = a.ring();
    let mut out = target.zero(ring);
    for (i, ca) in a.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, cb) in b.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let x = external_product_gset(a.burnside().transitive(i), b.burnside().transitive(j), target.group())?;
            out = out.add(&target.from_gset(ring, &x)?.scale(&(ca * cb)))?;
        }
    }
    Ok(out)
}

/// `(H x H') x (K x K')`-biset `U x V` of an `(H, K)`- and an `(H', K')`-biset.
pub fn external_product_biset(u: &Biset, v: &Biset, config: &Config) -> Result<Biset> {
    let left = Group::product_of(&[u.left.clone(), v.left.clone()], config)?;
    let right = Group::product_of(&[u.right.clone(), v.right.clone()], config)?;
    let lr = Group::product_of(&[left.clone(), right.clone()], config)?;
    let m = v.size();
    let mut action = Vec::with_capacity(lr.order() * u.size() * m);
    for z in lr.elements() {
        let c = lr.coords(z);
        let (l, r) = (left.coords(c[0]), right.coords(c[1]));
        let gu = u.carrier.group().from_coords(&[l[0], r[0]]);
        let gv = v.carrier.group().from_coords(&[l[1], r[1]]);
        for p in 0..u.size() * m {
            action.push((u.carrier.act(gu, p / m) * m + v.carrier.act(gv, p % m)) as u32);
        }
    }
    Biset::from_carrier(GSet::trusted(&lr, u.size() * m, action))
}

/// Factors of the group `a x^G b` lives over: the factors of `a` without
/// `shared_a`, then those of `b` without `shared_b`, then the shared `G`.
pub fn diagonal_product_factors(a: &Group, shared_a: usize, b: &Group, shared_b: usize) -> Result<Vec<Group>> {
    let (fa, fb) = (a.factors(), b.factors());
    if fa.is_empty() || fb.is_empty() {
        return Err(Error::NotAProductGroup(if fa.is_empty() { a.label() } else { b.label() }.to_string()));
    }
    let (Some(ga), Some(gb)) = (fa.get(shared_a), fb.get(shared_b)) else {
        return Err(Error::FactorMismatch("shared factor index out of range".into()));
    };
    if ga != gb {
        return Err(Error::FactorMismatch(format!("shared factors {ga} and {gb} differ")));
    }
    let mut out: Vec<Group> = fa.iter().enumerate().filter(|&(i, _)| i != shared_a).map(|(_, f)| f.clone()).collect();
    out.extend(fb.iter().enumerate().filter(|&(i, _)| i != shared_b).map(|(_, f)| f.clone()));
    out.push(ga.clone());
    Ok(out)
}

/// `X x^G Y`: the cartesian product with `G` acting on both sides.
///
/// `shared_a` and `shared_b` name the factor of each group that is the shared
/// `G`; `target` must be built from [`diagonal_product_factors`].
pub fn diagonal_product_gset(x: &GSet, shared_a: usize, y: &GSet, shared_b: usize, target: &Group) -> Result<GSet> {
    let factors = diagonal_product_factors(x.group(), shared_a, y.group(), shared_b)?;
    if target.factors() != factors.as_slice() {
        return Err(Error::FactorMismatch(format!("{target} has the wrong factors")));
    }
    let (na, nb) = (x.group().factors().len(), y.group().factors().len());
    let m = y.size();
    let mut action = Vec::with_capacity(target.order() * x.size() * m);
    for z in target.elements() {
        let c = target.coords(z);
        let g = c[c.len() - 1];
        let mut ca: Vec<usize> = c[..na - 1].to_vec();
        ca.insert(shared_a, g);
        let mut cb: Vec<usize> = c[na - 1..na + nb - 2].to_vec();
        cb.insert(shared_b, g);
        let (ga, gb) = (x.group().from_coords(&ca), y.group().from_coords(&cb));
        for p in 0..x.size() * m {
            action.push((x.act(ga, p / m) * m + y.act(gb, p % m)) as u32);
        }
    }
    Ok(GSet::trusted(target, x.size() * m, action))
}

/// Bilinear extension of [`diagonal_product_gset`].
pub fn diagonal_product(
    a: &BurnsideElement,
    shared_a: usize,
    b: &BurnsideElement,
    shared_b: usize,
    target: &BurnsideRing,
) -> Result<BurnsideElement> {
    if a.ring() != b.ring() {
        return Err(Error::Mismatch("coefficient rings differ".into()));
    }
    let ring = a.ring();
    let mut out = target.zero(ring);
    for (i, ca) in a.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, cb) in b.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let x = diagonal_product_gset(
                a.burnside().transitive(i),
                shared_a,
                b.burnside().transitive(j),
                shared_b,
                target.group(),
            )?;
            out = out.add(&target.from_gset(ring, &x)?.scale(&(ca * cb)))?;
        }
    }
    Ok(out)
}

/// The class of `G` acting on itself by conjugation.
pub fn gamma(burnside: &BurnsideRing, ring: RingSpec) -> BurnsideElement {
    burnside.from_gset(ring, &GSet::conjugation(burnside.group())).expect("conjugation set of the ring's own group")
}

/// `Res^{GG}_{Delta(G)}`, landing in `RB(G)`.
pub fn diagonal_restrict(a: &BurnsideElement, target: &BurnsideRing) -> Result<BurnsideElement> {
    let delta = Hom::diagonal(a.group())?;
    if delta.source() != target.group() {
        return Err(Error::GroupMismatch(format!("{} is not the square of {}", a.group(), target.group())));
    }
    let ring = a.ring();
    let mut out = target.zero(ring);
    for (k, c) in a.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let x = a.burnside().transitive(k).pullback(&delta)?;
        out = out.add(&target.from_gset(ring, &x)?.scale(c))?;
    }
    Ok(out)
}

/// `Ind_{Delta(G)}^{GG}`, sending `[G/L]` to `[GG/Delta(L)]`.
pub fn diagonal_induce(a: &BurnsideElement, target: &BurnsideRing) -> Result<BurnsideElement> {
    let delta = Hom::diagonal(target.group())?;
    if delta.source() != a.group() {
        return Err(Error::GroupMismatch(format!("{} is not the square of {}", target.group(), a.group())));
    }
    let ring = a.ring();
    let mut out = target.zero(ring);
    for (k, c) in a.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let x = a.burnside().transitive(k).induce_along(&delta)?;
        out = out.add(&target.from_gset(ring, &x)?.scale(c))?;
    }
    Ok(out)
}
