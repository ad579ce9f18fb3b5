//! Subgroup lattices up to conjugacy and their Möbius functions.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::{Group, Subgroup};
use crate::error::{Error, Result};
use crate::{par, Config};

/// One conjugacy class of subgroups.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    /// Label `<order>#<rank within that order>`, rank starting at 1.
    pub label: String,
    /// Index (into [`SubgroupLattice::subgroups`]) of the canonical representative.
    pub representative: usize,
    pub members: Vec<usize>,
}

impl SubgroupClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// All subgroups of a group, partitioned into conjugacy classes.
///
/// Subgroups are sorted by order and then by member list; class
/// representatives are the first subgroup of each class in that order, so
/// the class list (and every label) is reproducible.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: Group,
    subgroups: Vec<Subgroup>,
    index: HashMap<Vec<usize>, usize>,
    class_of: Vec<usize>,
    /// For each subgroup `S`, an element `c` with `c S c^-1` equal to its class representative.
    conjugator: Vec<usize>,
    classes: Vec<SubgroupClass>,
    /// `moebius_to_rep[c]` lists `(K, mu(K, rep_c))` for every subgroup `K` of the representative.
    moebius_to_rep: Vec<Vec<(usize, i64)>>,
}

impl SubgroupLattice {
    pub fn new(group: &Group, config: &Config) -> Result<SubgroupLattice> {
        let subgroups = enumerate_subgroups(group, config)?;
        let index: HashMap<Vec<usize>, usize> =
            subgroups.iter().enumerate().map(|(i, s)| (s.members().to_vec(), i)).collect();

        let n = subgroups.len();
        let mut class_of = vec![usize::MAX; n];
        let mut conjugator = vec![group.identity(); n];
        let mut classes: Vec<SubgroupClass> = Vec::new();
        let mut rank_in_order: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let rep = &subgroups[i];
            let mut members = Vec::new();
            for g in group.elements() {
                let j = index[rep.conjugate(g).members()];
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    conjugator[j] = group.inv(g);
                    members.push(j);
                }
            }
            members.sort_unstable();
            let rank = rank_in_order.entry(rep.order()).or_insert(0);
            *rank += 1;
            classes.push(SubgroupClass { label: format!("{}#{}", rep.order(), rank), representative: i, members });
        }

        let moebius_to_rep =
            par::map_slice(config.execution, &classes, |class| moebius_column(&subgroups, class.representative));

        Ok(SubgroupLattice { group: group.clone(), subgroups, index, class_of, conjugator, classes, moebius_to_rep })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representative(&self, class: usize) -> &Subgroup {
        &self.subgroups[self.classes[class].representative]
    }

    pub fn label(&self, class: usize) -> &str {
        &self.classes[class].label
    }

    pub fn class_by_label(&self, label: &str) -> Result<usize> {
        self.classes.iter().position(|c| c.label == label).ok_or_else(|| Error::BadLabel(label.to_string()))
    }

    /// Position of a subgroup in [`Self::subgroups`].
    pub fn position(&self, h: &Subgroup) -> Result<usize> {
        if h.group() != &self.group {
            return Err(Error::GroupMismatch("subgroup of a different group".into()));
        }
        self.index.get(h.members()).copied().ok_or_else(|| Error::NotContained("not a subgroup".into()))
    }

    /// Conjugacy class of an arbitrary subgroup.
    pub fn class_of(&self, h: &Subgroup) -> Result<usize> {
        Ok(self.class_of[self.position(h)?])
    }

    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn trivial_class(&self) -> usize {
        0
    }

    /// Class of the whole group, always the last one.
    pub fn whole_class(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn is_contained(&self, k: usize, h: usize) -> bool {
        self.subgroups[k].is_subgroup_of(&self.subgroups[h])
    }

    /// Möbius function of the subgroup poset.
    pub fn moebius(&self, k: &Subgroup, h: &Subgroup) -> Result<i64> {
        let (ki, hi) = (self.position(k)?, self.position(h)?);
        if !self.is_contained(ki, hi) {
            return Err(Error::NotContained("moebius(K, H) needs K <= H".into()));
        }
        // conjugate the pair so that H becomes its class representative
        let c = self.conjugator[hi];
        let k_moved = self.index[self.subgroups[ki].conjugate(c).members()];
        let column = &self.moebius_to_rep[self.class_of[hi]];
        Ok(column.iter().find(|(x, _)| *x == k_moved).map_or(0, |(_, m)| *m))
    }

    /// `(K, mu(K, H))` for all `K <= H`, `H` the representative of `class`.
    pub fn moebius_column(&self, class: usize) -> &[(usize, i64)] {
        &self.moebius_to_rep[class]
    }
}

fn moebius_column(subgroups: &[Subgroup], top: usize) -> Vec<(usize, i64)> {
    let h = &subgroups[top];
    // subgroups of h, in increasing order (the global list is sorted by order)
    let below: Vec<usize> = (0..=top).filter(|&k| subgroups[k].is_subgroup_of(h)).collect();
    let mut mu = vec![0i64; below.len()];
    for a in (0..below.len()).rev() {
        if below[a] == top {
            mu[a] = 1;
            continue;
        }
        let k = &subgroups[below[a]];
        let mut sum = 0;
        for b in a + 1..below.len() {
            let m = &subgroups[below[b]];
            if m.order() > k.order() && k.is_subgroup_of(m) {
                sum += mu[b];
            }
        }
        mu[a] = -sum;
    }
    below.into_iter().zip(mu).collect()
}

/// Breadth-first closure: start from the cyclic subgroups and repeatedly join
/// each new subgroup with every cyclic subgroup not already inside it.
fn enumerate_subgroups(group: &Group, config: &Config) -> Result<Vec<Subgroup>> {
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for x in group.elements() {
        let c = Subgroup::generated(group, &[x]);
        if !seen.contains_key(c.members()) {
            seen.insert(c.members().to_vec(), vec![x]);
            cyclic.push((x, c));
        }
    }
    // frontier entries carry a generating set
    let mut frontier: Vec<Vec<usize>> = cyclic.iter().map(|(x, _)| vec![*x]).collect();
    while !frontier.is_empty() {
        let joins: Vec<Vec<(Vec<usize>, Vec<usize>)>> = par::map_slice(config.execution, &frontier, |gens| {
            let base = Subgroup::generated(group, gens);
            cyclic
                .iter()
                .filter(|(x, _)| !base.contains(*x))
                .map(|(x, _)| {
                    let mut g = gens.clone();
                    g.push(*x);
                    let joined = join(group, &base, &g);
                    (joined.members().to_vec(), g)
                })
                .collect()
        });
        let mut next = Vec::new();
        for (members, gens) in joins.into_iter().flatten() {
            if let Entry::Vacant(slot) = seen.entry(members) {
                slot.insert(gens.clone());
                if seen.len() > config.max_subgroups {
                    return Err(Error::ResourceBound(format!(
                        "more than {} subgroups in {}",
                        config.max_subgroups,
                        group.label()
                    )));
                }
                next.push(gens);
            }
        }
        frontier = next;
    }
    let mut all: Vec<Subgroup> =
        seen.into_keys().map(|members| Subgroup::from_mask(group, mask_of(group.order(), &members))).collect();
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
    Ok(all)
}

fn join(group: &Group, base: &Subgroup, gens: &[usize]) -> Subgroup {
    let mut mask = vec![false; group.order()];
    let mut queue: Vec<usize> = base.members().to_vec();
    for &x in &queue {
        mask[x] = true;
    }
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

fn mask_of(n: usize, members: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &m in members {
        mask[m] = true;
    }
    mask
}
