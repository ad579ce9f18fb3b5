//! Finite left G-sets stored as dense action tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Group, Hom, Subgroup, SubgroupLattice};

/// A finite left action of a group on `0..size`.
#[derive(Clone)]
pub struct GSet {
    group: Group,
    size: usize,
    /// `action[g * size + x]` is `g . x`.
    action: Arc<Vec<u32>>,
}

impl GSet {
    /// Wraps an action table, checking `e.x = x` and `(gs).x = g.(s.x)` for generators `s`.
    pub fn from_action(group: &Group, size: usize, action: Vec<usize>) -> Result<GSet> {
        if action.len() != group.order() * size || action.iter().any(|&y| y >= size) {
            return Err(Error::Mismatch("action table has the wrong shape".into()));
        }
        let at = |g: usize, x: usize| action[g * size + x];
        let e = group.identity();
        if (0..size).any(|x| at(e, x) != x) {
            return Err(Error::Mismatch("identity does not act trivially".into()));
        }
        let ok = group
            .elements()
            .all(|g| group.generators().iter().all(|&s| (0..size).all(|x| at(group.mul(g, s), x) == at(g, at(s, x)))));
        if !ok {
            return Err(Error::Mismatch("table is not a group action".into()));
        }
        Ok(GSet::trusted(group, size, action.into_iter().map(|y| y as u32).collect()))
    }

    pub(crate) fn trusted(group: &Group, size: usize, action: Vec<u32>) -> GSet {
        debug_assert_eq!(action.len(), group.order() * size);
        GSet { group: group.clone(), size, action: Arc::new(action) }
    }

    fn from_fn(group: &Group, size: usize, f: impl Fn(usize, usize) -> usize) -> GSet {
        let mut action = Vec::with_capacity(group.order() * size);
        for g in group.elements() {
            for x in 0..size {
                action.push(f(g, x) as u32);
            }
        }
        GSet::trusted(group, size, action)
    }

    pub fn empty(group: &Group) -> GSet {
        GSet::trusted(group, 0, Vec::new())
    }

    /// The one-point set `G/G`.
    pub fn point(group: &Group) -> GSet {
        GSet::trusted(group, 1, vec![0; group.order()])
    }

    /// Left multiplication on `G`.
    pub fn regular(group: &Group) -> GSet {
        GSet::from_fn(group, group.order(), |g, x| group.mul(g, x))
    }

    /// `G` acting on itself by conjugation.
    pub fn conjugation(group: &Group) -> GSet {
        GSet::from_fn(group, group.order(), |g, x| group.conj(g, x))
    }

    /// Left cosets `G/H`, numbered by their smallest element.
    pub fn transitive(h: &Subgroup) -> GSet {
        let g = h.group();
        let mut coset = vec![usize::MAX; g.order()];
        let mut count = 0;
        for x in g.elements() {
            if coset[x] == usize::MAX {
                for &m in h.members() {
                    coset[g.mul(x, m)] = count;
                }
                count += 1;
            }
        }
        let rep: Vec<usize> = {
            let mut rep = vec![usize::MAX; count];
            for x in g.elements().rev() {
                rep[coset[x]] = x;
            }
            rep
        };
        GSet::from_fn(g, count, |a, c| coset[g.mul(a, rep[c])])
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x] as usize
    }

    fn check_subgroup(&self, h: &Subgroup) -> Result<()> {
        if h.group() != &self.group {
            return Err(Error::NotContained(format!("subgroup is not in {}", self.group)));
        }
        Ok(())
    }

    /// Number of points fixed by every element of `h`.
    pub fn fixed_points(&self, h: &Subgroup) -> Result<usize> {
        self.check_subgroup(h)?;
        let gens = h.generators();
        Ok((0..self.size).filter(|&x| gens.iter().all(|&s| self.act(s, x) == x)).count())
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let mask = self.group.elements().map(|g| self.act(g, x) == x).collect();
        Subgroup::from_mask(&self.group, mask)
    }

    /// Orbits as sorted point lists, ordered by their smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let gens = self.group.generators();
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for start in 0..self.size {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                i += 1;
                for &s in gens {
                    let y = self.act(s, x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Cartesian product with the diagonal action; `(x, y)` has index `x * |other| + y`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        self.same_group(other)?;
        let m = other.size;
        Ok(GSet::from_fn(&self.group, self.size * m, |g, p| self.act(g, p / m) * m + other.act(g, p % m)))
    }

    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        self.same_group(other)?;
        let n = self.size;
        Ok(GSet::from_fn(
            &self.group,
            n + other.size,
            |g, p| {
                if p < n {
                    self.act(g, p)
                } else {
                    n + other.act(g, p - n)
                }
            },
        ))
    }

    fn same_group(&self, other: &GSet) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.group, other.group)));
        }
        Ok(())
    }

    /// Orbits with the stabilizer of their smallest point.
    pub fn decompose(&self) -> OrbitDecomposition {
        let orbits = self
            .orbits()
            .into_iter()
            .map(|points| {
                let base = points[0];
                Orbit { stabilizer: self.stabilizer(base), base, points, class: None }
            })
            .collect();
        OrbitDecomposition { orbits }
    }

    /// Decomposition with each stabilizer resolved to its class in `lattice`.
    pub fn decompose_in(&self, lattice: &SubgroupLattice) -> Result<OrbitDecomposition> {
        let mut d = self.decompose();
        for o in &mut d.orbits {
            o.class = Some(lattice.class_of(&o.stabilizer)?);
        }
        Ok(d)
    }

    /// Multiplicity of each transitive class `[G/H]`, indexed like `lattice.classes()`.
    pub fn class_counts(&self, lattice: &SubgroupLattice) -> Result<Vec<usize>> {
        let mut counts = vec![0; lattice.class_count()];
        for o in self.decompose_in(lattice)?.orbits {
            counts[o.class.expect("classified")] += 1;
        }
        Ok(counts)
    }

    /// Pullback along `hom`: the source acts through its image.
    pub fn pullback(&self, hom: &Hom) -> Result<GSet> {
        if hom.target() != &self.group {
            return Err(Error::GroupMismatch("pullback along a map into another group".into()));
        }
        Ok(GSet::from_fn(hom.source(), self.size, |g, x| self.act(hom.apply(g), x)))
    }

    /// Restriction to `h`, viewed as a group in its own right.
    pub fn restrict(&self, h: &Subgroup) -> Result<GSet> {
        self.check_subgroup(h)?;
        let (_, inclusion) = h.as_group();
        self.pullback(&inclusion)
    }

    /// `K x_H X` along an injective `hom: H -> K`, where `H` is this set's group.
    ///
    /// Points are classes of pairs `(k, x)` under `(k hom(b), x) ~ (k, b.x)`,
    /// numbered by their smallest pair `k * |X| + x`.
    pub fn induce_along(&self, hom: &Hom) -> Result<GSet> {
        if hom.source() != &self.group {
            return Err(Error::GroupMismatch("induction along a map from another group".into()));
        }
        if !hom.is_injective() {
            return Err(Error::NotContained("induction needs an injective map".into()));
        }
        let k = hom.target();
        let n = self.size;
        let mut uf = UnionFind::new(k.order() * n);
        for a in k.elements() {
            for &b in self.group.generators() {
                let kb = k.mul(a, hom.apply(b));
                for x in 0..n {
                    uf.union(kb * n + x, a * n + self.act(b, x));
                }
            }
        }
        let (class, count) = uf.classes();
        let mut rep = vec![usize::MAX; count];
        for p in (0..k.order() * n).rev() {
            rep[class[p]] = p;
        }
        Ok(GSet::from_fn(k, count, |g, c| {
            let p = rep[c];
            class[k.mul(g, p / n) * n + p % n]
        }))
    }

    /// Induction along the inclusion of `h`, where this set lives over `h.as_group()`.
    pub fn induce(&self, h: &Subgroup) -> Result<GSet> {
        let (sub, inclusion) = h.as_group();
        if sub != self.group {
            return Err(Error::NotContained("G-set does not live over the given subgroup".into()));
        }
        self.induce_along(&inclusion)
    }

    /// Isomorphism test by matching orbit stabilizers up to conjugacy.
    ///
    /// Needs no subgroup lattice, so it stays cheap in large groups.
    pub fn iso_equal(&self, other: &GSet) -> Result<bool> {
        self.same_group(other)?;
        if self.size != other.size {
            return Ok(false);
        }
        let mut classes = StabilizerClasses::new(&self.group);
        Ok(classes.counts(self)? == classes.counts(other)?)
    }
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet({} points over {})", self.size, self.group.label())
    }
}

#[derive(Debug, Clone)]
pub struct Orbit {
    pub points: Vec<usize>,
    /// Smallest point of the orbit.
    pub base: usize,
    pub stabilizer: Subgroup,
    /// Class of the stabilizer, when resolved against a lattice.
    pub class: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// Conjugacy classes of stabilizers, collected on the fly without a lattice.
#[derive(Debug, Clone)]
pub struct StabilizerClasses {
    group: Group,
    reps: Vec<Subgroup>,
}

impl StabilizerClasses {
    pub fn new(group: &Group) -> Self {
        StabilizerClasses { group: group.clone(), reps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[Subgroup] {
        &self.reps
    }

    /// Index of the class of `s`, adding a new class if needed.
    pub fn class_of(&mut self, s: &Subgroup) -> Result<usize> {
        if s.group() != &self.group {
            return Err(Error::GroupMismatch("stabilizer of another group".into()));
        }
        if let Some(i) = self.find(s) {
            return Ok(i);
        }
        self.reps.push(s.clone());
        Ok(self.reps.len() - 1)
    }

    /// Index of the class of `s` if it has been seen.
    pub fn find(&self, s: &Subgroup) -> Option<usize> {
        self.reps.iter().position(|r| r.order() == s.order() && r.is_conjugate_to(s))
    }

    /// Orbit counts per class; the vector grows with the number of known classes.
    pub fn counts(&mut self, x: &GSet) -> Result<Vec<usize>> {
        let mut counts = vec![0; self.reps.len()];
        for o in x.decompose().orbits {
            let c = self.class_of(&o.stabilizer)?;
            if c >= counts.len() {
                counts.resize(c + 1, 0);
            }
            counts[c] += 1;
        }
        counts.resize(self.reps.len(), 0);
        Ok(counts)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so class numbering follows the smallest member
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Class index of every element, classes numbered by smallest member.
    pub(crate) fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut class = vec![0; n];
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = count;
                count += 1;
            }
            class[x] = id[r];
        }
        (class, count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::Config;
    use proptest::prelude::*;

    fn g(s: &str) -> Group {
        GroupSpec::parse(s).unwrap().build(&Config::default()).unwrap()
    }

    fn lat(group: &Group) -> SubgroupLattice {
        SubgroupLattice::new(group, &Config::default()).unwrap()
    }

    #[test]
    fn transitive_sets() {
        let s3 = g("S3");
        assert_eq!(GSet::transitive(&Subgroup::whole(&s3)).size(), 1);
        let c2 = g("C2");
        let reg = GSet::transitive(&Subgroup::trivial(&c2));
        assert_eq!(reg.size(), 2);
        assert_eq!(reg.fixed_points(&Subgroup::whole(&c2)).unwrap(), 0);
        let t = Subgroup::generated(&s3, &[1]);
        let x = GSet::transitive(&t);
        assert_eq!(x.size(), 3);
        assert!(x.is_transitive());
        assert_eq!(x.fixed_points(&Subgroup::trivial(&s3)).unwrap(), 3);
        assert_eq!(x.fixed_points(&Subgroup::whole(&s3)).unwrap(), 0);
        assert_eq!(x.stabilizer(0), t);
    }

    #[test]
    fn rejects_bad_actions() {
        let c2 = g("C2");
        assert!(GSet::from_action(&c2, 2, vec![0, 1, 1, 0]).is_ok());
        assert!(GSet::from_action(&c2, 2, vec![1, 0, 1, 0]).is_err());
        assert!(GSet::from_action(&c2, 2, vec![0, 1, 0]).is_err());
        let c3 = g("C3");
        // 1 acts as a transposition, which has order 2, not dividing 3
        assert!(GSet::from_action(&c3, 2, vec![0, 1, 1, 0, 0, 1]).is_err());
        let other = g("C3");
        assert!(matches!(GSet::point(&c2).fixed_points(&Subgroup::whole(&other)), Err(Error::NotContained(_))));
    }

    #[test]
    fn products_and_decompositions() {
        let c2 = g("C2");
        let l = lat(&c2);
        let free = GSet::regular(&c2);
        let sq = free.product(&free).unwrap();
        assert_eq!(sq.class_counts(&l).unwrap(), vec![2, 0]);
        let two = free.disjoint_union(&free).unwrap();
        assert!(sq.iso_equal(&two).unwrap());
        let pts = GSet::point(&c2).disjoint_union(&GSet::point(&c2)).unwrap();
        assert!(!free.iso_equal(&pts).unwrap());
        assert!(free.product(&GSet::point(&c2)).unwrap().iso_equal(&free).unwrap());
        assert!(GSet::empty(&c2).decompose().is_empty());
        let d = GSet::regular(&c2).decompose();
        assert_eq!(d.len(), 1);
        assert_eq!(d.orbits[0].stabilizer.order(), 1);
        assert!(matches!(free.product(&GSet::point(&g("C3"))), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn conjugation_action_of_s3() {
        let s3 = g("S3");
        let l = lat(&s3);
        let d = GSet::conjugation(&s3).decompose_in(&l).unwrap();
        let orders: Vec<usize> = d.orbits.iter().map(|o| o.stabilizer.order()).collect();
        assert_eq!(orders, vec![6, 2, 3]);
        assert_eq!(GSet::conjugation(&s3).class_counts(&l).unwrap(), vec![0, 1, 1, 1]);
    }

    #[test]
    fn induction_and_restriction() {
        let s3 = g("S3");
        let one = Subgroup::trivial(&s3);
        let (triv, _) = one.as_group();
        let induced = GSet::point(&triv).induce(&one).unwrap();
        assert!(induced.iso_equal(&GSet::regular(&s3)).unwrap());

        // Ind_H^K(H/L) = K/L with L = 1 < H = C3 < S3
        let c3 = Subgroup::generated(&s3, &[3]);
        let (h, _) = c3.as_group();
        let free_h = GSet::regular(&h);
        let up = free_h.induce(&c3).unwrap();
        assert_eq!(up.size(), 6);
        assert!(up.iso_equal(&GSet::transitive(&one)).unwrap());

        // Res_{C2}^{S3}(S3/C3) is one free orbit
        let t = Subgroup::generated(&s3, &[1]);
        let r = GSet::transitive(&c3).restrict(&t).unwrap();
        let (c2, _) = t.as_group();
        assert!(r.iso_equal(&GSet::regular(&c2)).unwrap());
        let r1 = GSet::transitive(&c3).restrict(&one).unwrap();
        assert_eq!(r1.fixed_points(&Subgroup::whole(r1.group())).unwrap(), 2);
        let whole = GSet::transitive(&t).restrict(&Subgroup::whole(&s3)).unwrap();
        assert_eq!(whole.size(), 3);
    }

    #[test]
    fn induced_size_is_index_times_size() {
        let d8 = g("D8");
        for sub in lat(&d8).subgroups() {
            let (h, _) = sub.as_group();
            for x in [GSet::point(&h), GSet::regular(&h), GSet::conjugation(&h)] {
                let up = x.induce(sub).unwrap();
                assert_eq!(up.size(), sub.index() * x.size());
            }
        }
    }

    fn test_groups() -> Vec<Group> {
        ["C1", "C2", "C4", "prod(C2,C2)", "S3", "D8", "Q8"].iter().map(|s| g(s)).collect()
    }

    #[test]
    fn orbit_stabilizer() {
        for group in test_groups() {
            for sub in lat(&group).subgroups() {
                let x = GSet::transitive(sub).product(&GSet::conjugation(&group)).unwrap();
                for o in x.decompose().orbits {
                    assert_eq!(o.points.len() * o.stabilizer.order(), group.order());
                }
            }
        }
    }

    #[test]
    fn marks_are_multiplicative() {
        for group in test_groups() {
            let l = lat(&group);
            let sets: Vec<GSet> =
                l.classes().iter().map(|c| GSet::transitive(&l.subgroups()[c.representative])).collect();
            for a in &sets {
                for b in &sets {
                    let p = a.product(b).unwrap();
                    for c in l.classes() {
                        let h = &l.subgroups()[c.representative];
                        assert_eq!(p.fixed_points(h).unwrap(), a.fixed_points(h).unwrap() * b.fixed_points(h).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_identity() {
        for group in test_groups() {
            let l = lat(&group);
            let reps: Vec<Subgroup> = l.classes().iter().map(|c| l.subgroups()[c.representative].clone()).collect();
            for h in &reps {
                for k in &reps {
                    let x = GSet::transitive(k);
                    let lhs = x.restrict(h).unwrap().induce(h).unwrap();
                    let rhs = GSet::transitive(h).product(&x).unwrap();
                    assert_eq!(lhs.class_counts(&l).unwrap(), rhs.class_counts(&l).unwrap());
                }
            }
        }
    }

    #[test]
    fn iso_equal_matches_marks() {
        let s3 = g("S3");
        let l = lat(&s3);
        let reps: Vec<Subgroup> = l.classes().iter().map(|c| l.subgroups()[c.representative].clone()).collect();
        let basis: Vec<GSet> = reps.iter().map(GSet::transitive).collect();
        // all sums of at most three basis sets
        let mut sets = vec![GSet::empty(&s3)];
        for _ in 0..2 {
            let mut next = sets.clone();
            for s in &sets {
                for b in &basis {
                    next.push(s.disjoint_union(b).unwrap());
                }
            }
            sets = next;
        }
        let marks = |x: &GSet| reps.iter().map(|h| x.fixed_points(h).unwrap()).collect::<Vec<_>>();
        for a in &sets {
            assert!(a.iso_equal(a).unwrap());
            for b in &sets {
                assert_eq!(a.iso_equal(b).unwrap(), marks(a) == marks(b));
            }
        }
    }

    proptest! {
        #[test]
        fn pullback_of_random_product_is_an_action(i in 0usize..4, j in 0usize..4) {
            let s3 = g("S3");
            let l = lat(&s3);
            let reps: Vec<Subgroup> = l.classes().iter().map(|c| l.subgroups()[c.representative].clone()).collect();
            let x = GSet::transitive(&reps[i]).product(&GSet::transitive(&reps[j])).unwrap();
            let raw: Vec<usize> = (0..s3.order() * x.size()).map(|p| x.act(p / x.size(), p % x.size())).collect();
            prop_assert!(GSet::from_action(&s3, x.size(), raw).is_ok());
            let total: usize = x.orbits().iter().map(Vec::len).sum();
            prop_assert_eq!(total, x.size());
        }
    }
}
