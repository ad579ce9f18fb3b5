use std::fmt;
use std::hash::{Hash, Hasher};

use super::{Group, Hom};
use crate::error::{Error, Result};

/// A subgroup, stored as its sorted member list plus a membership mask.
#[derive(Clone)]
pub struct Subgroup {
    group: Group,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// Subgroup generated by `gens`.
    pub fn generated(group: &Group, gens: &[usize]) -> Subgroup {
        let mut mask = vec![false; group.order()];
        mask[group.identity()] = true;
        let mut queue = vec![group.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &s in gens {
                let y = group.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    queue.push(y);
                }
            }
        }
        Subgroup::from_mask(group, mask)
    }

    /// Wraps a member set, verifying closure.
    pub fn from_members(group: &Group, members: &[usize]) -> Result<Subgroup> {
        let mut mask = vec![false; group.order()];
        for &m in members {
            if m >= group.order() {
                return Err(Error::NotContained(format!("{m} is not an element of {group}")));
            }
            mask[m] = true;
        }
        let sub = Subgroup::from_mask(group, mask);
        let closed = sub.mask[group.identity()]
            && sub
                .members
                .iter()
                .all(|&a| sub.contains(group.inv(a)) && sub.members.iter().all(|&b| sub.contains(group.mul(a, b))));
        if !closed {
            return Err(Error::NotContained("member set is not a subgroup".into()));
        }
        Ok(sub)
    }

    pub(crate) fn from_mask(group: &Group, mask: Vec<bool>) -> Subgroup {
        let members = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        Subgroup { group: group.clone(), members, mask }
    }

    pub fn trivial(group: &Group) -> Subgroup {
        Subgroup::generated(group, &[])
    }

    pub fn whole(group: &Group) -> Subgroup {
        Subgroup::from_mask(group, vec![true; group.order()])
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.members.iter().all(|&x| other.contains(x))
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut mask = vec![false; self.group.order()];
        for &x in &self.members {
            mask[self.group.conj(g, x)] = true;
        }
        Subgroup::from_mask(&self.group, mask)
    }

    /// Some `g` with `g H g^-1 = other`, if the two are conjugate.
    pub fn conjugator_to(&self, other: &Subgroup) -> Option<usize> {
        if self.order() != other.order() || self.group != other.group {
            return None;
        }
        let gens = self.generators();
        self.group.elements().find(|&g| gens.iter().all(|&x| other.contains(self.group.conj(g, x))))
    }

    pub fn is_conjugate_to(&self, other: &Subgroup) -> bool {
        self.conjugator_to(other).is_some()
    }

    /// A small generating set.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(&self.group);
        for &x in &self.members {
            if !span.contains(x) {
                gens.push(x);
                span = Subgroup::generated(&self.group, &gens);
            }
        }
        gens
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask = self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect();
        Subgroup::from_mask(&self.group, mask)
    }

    /// The subgroup as a group in its own right: element `i` is `members[i]`.
    /// Returns the group together with its inclusion into the parent.
    pub fn as_group(&self) -> (Group, Hom) {
        let pos: Vec<usize> = {
            let mut pos = vec![usize::MAX; self.group.order()];
            for (i, &m) in self.members.iter().enumerate() {
                pos[m] = i;
            }
            pos
        };
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.members {
            for &b in &self.members {
                table.push(pos[self.group.mul(a, b)] as u32);
            }
        }
        let label = format!(
            "{}[{}]",
            self.group.label(),
            self.members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
        );
        let identity = pos[self.group.identity()];
        let sub = Group::trusted(label, n, identity, table, Vec::new());
        let inclusion = Hom::unchecked(&sub, &self.group, self.members.clone());
        (sub, inclusion)
    }

    /// Image under an injective homomorphism out of `self.group()`.
    pub fn image(&self, hom: &Hom) -> Subgroup {
        let mut mask = vec![false; hom.target().order()];
        for &x in &self.members {
            mask[hom.apply(x)] = true;
        }
        Subgroup::from_mask(hom.target(), mask)
    }

    /// Preimage under a homomorphism into `self.group()`.
    pub fn preimage(&self, hom: &Hom) -> Subgroup {
        let mask = hom.source().elements().map(|x| self.contains(hom.apply(x))).collect();
        Subgroup::from_mask(hom.source(), mask)
    }

    pub fn normalizer(&self) -> Subgroup {
        let gens = self.generators();
        let mask = self.group.elements().map(|g| gens.iter().all(|&x| self.contains(self.group.conj(g, x)))).collect();
        Subgroup::from_mask(&self.group, mask)
    }

    pub fn centralizer(&self) -> Subgroup {
        let gens = self.generators();
        let g = &self.group;
        let mask = g.elements().map(|y| gens.iter().all(|&x| g.mul(x, y) == g.mul(y, x))).collect();
        Subgroup::from_mask(g, mask)
    }

    pub fn is_normal(&self) -> bool {
        self.normalizer().order() == self.group.order()
    }
}

/// Centralizer of a single element.
pub fn centralizer_of_element(group: &Group, x: usize) -> Subgroup {
    Subgroup::generated(group, &[x]).centralizer()
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Subgroup) -> bool {
        self.members == other.members && self.group == other.group
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {}: {:?})", self.order(), self.group.label(), self.members)
    }
}

/// Conjugacy class of elements.
#[derive(Debug, Clone)]
pub struct ElementClass {
    /// Smallest element index in the class.
    pub representative: usize,
    pub members: Vec<usize>,
    pub centralizer: Subgroup,
}

impl ElementClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl Group {
    /// Conjugacy classes of elements, ordered by representative.
    pub fn element_classes(&self) -> Vec<ElementClass> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for x in self.elements() {
            if seen[x] {
                continue;
            }
            let mut members: Vec<usize> = self.elements().map(|g| self.conj(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                seen[m] = true;
            }
            out.push(ElementClass { representative: x, members, centralizer: centralizer_of_element(self, x) });
        }
        out
    }

    pub fn centralizer_of_element(&self, x: usize) -> Subgroup {
        centralizer_of_element(self, x)
    }

    /// `{(g, g)}` inside a group recorded as `G x G`.
    pub fn diagonal_subgroup(&self) -> Result<Subgroup> {
        let delta = Hom::diagonal(self)?;
        Ok(Subgroup::whole(delta.source()).image(&delta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::Config;

    fn g(s: &str) -> Group {
        GroupSpec::parse(s).unwrap().build(&Config::default()).unwrap()
    }

    #[test]
    fn s3_classes_by_brute_force() {
        let s3 = g("S3");
        let classes = s3.element_classes();
        let mut sizes: Vec<usize> = classes.iter().map(ElementClass::size).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 6);
        assert_eq!(classes[0].representative, s3.identity());
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        // spec order: identity, transpositions, 3-cycles since index 1 = (2,3)
        assert_eq!(classes.iter().map(ElementClass::size).collect::<Vec<_>>(), vec![1, 3, 2]);
        for c in &classes {
            assert_eq!(c.size() * c.centralizer.order(), 6);
        }
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let c6 = g("prod(C2,C3)");
        assert_eq!(c6.element_classes().len(), 6);
        assert_eq!(g("C1").element_classes().len(), 1);
    }

    #[test]
    fn normalizers_and_centralizers() {
        let s3 = g("S3");
        let c3 = Subgroup::generated(&s3, &[3]);
        assert_eq!(c3.order(), 3);
        assert_eq!(c3.normalizer().order(), 6);
        // element 1 is the transposition (2,3)
        let t = s3.centralizer_of_element(1);
        assert_eq!(t, Subgroup::generated(&s3, &[1]));
        assert_eq!(s3.centralizer_of_element(s3.identity()).order(), 6);
        let c2 = Subgroup::generated(&s3, &[1]);
        assert_eq!(c2.normalizer(), c2);
        assert!(!c2.is_normal());
        assert!(c3.is_normal());
    }

    #[test]
    fn diagonal_subgroups() {
        let cfg = Config::default();
        for s in ["C1", "C2", "S3"] {
            let base = g(s);
            let sq = base.direct_product(&base, &cfg).unwrap();
            let d = sq.diagonal_subgroup().unwrap();
            assert_eq!(d.order(), base.order());
        }
        let c2 = g("C2");
        let sq = c2.direct_product(&c2, &cfg).unwrap();
        assert_eq!(sq.diagonal_subgroup().unwrap().members(), &[0, 3]);
    }

    #[test]
    fn membership_validation() {
        let s3 = g("S3");
        assert!(Subgroup::from_members(&s3, &[0, 1]).is_ok());
        assert!(Subgroup::from_members(&s3, &[0, 1, 2]).is_err());
        assert!(Subgroup::from_members(&s3, &[0, 9]).is_err());
    }

    #[test]
    fn as_group_round_trip() {
        let s3 = g("S3");
        let c3 = Subgroup::generated(&s3, &[3]);
        let (h, inc) = c3.as_group();
        assert_eq!(h.order(), 3);
        assert!(h.is_abelian());
        assert_eq!(Subgroup::whole(&h).image(&inc), c3);
        assert_eq!(c3.preimage(&inc).order(), 3);
    }
}
