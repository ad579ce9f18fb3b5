//! Finite groups given by full multiplication tables.
//!
//! Elements are indices `0..order`. Groups are cheap handles over shared,
//! immutable tables, so cloning a [`Group`] never copies the table.

mod hom;
mod lattice;
mod perm;
mod spec;
mod subgroup;

pub use hom::Hom;
pub use lattice::{SubgroupClass, SubgroupLattice};
pub use perm::Permutation;
pub use spec::GroupSpec;
pub use subgroup::{ElementClass, Subgroup};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::par;
use crate::Config;

#[derive(Clone)]
pub struct Group(Arc<GroupData>);

struct GroupData {
    label: String,
    order: usize,
    identity: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    generators: Vec<usize>,
    /// Direct factors, row-major layout; empty for groups not built as products.
    factors: Vec<Group>,
}

impl Group {
    /// Builds a group from a multiplication table, verifying the axioms.
    ///
    /// `table[a * order + b]` is the index of `a * b`.
    pub fn from_table(
        label: impl Into<String>,
        order: usize,
        table: Vec<usize>,
        identity: usize,
        config: &Config,
    ) -> Result<Group> {
        if order == 0 {
            return Err(Error::NotAGroup("empty element set".into()));
        }
        if order > config.max_order {
            return Err(Error::OrderBound { order, max: config.max_order });
        }
        if table.len() != order * order {
            return Err(Error::NotAGroup(format!("table has {} entries, expected {}", table.len(), order * order)));
        }
        if identity >= order || table.iter().any(|&x| x >= order) {
            return Err(Error::NotAGroup("entry out of range".into()));
        }
        let table: Vec<u32> = table.into_iter().map(|x| x as u32).collect();
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for a in 0..order {
            if at(identity, a) != a || at(a, identity) != a {
                return Err(Error::NotAGroup(format!("{identity} is not a two-sided identity")));
            }
        }
        let mut inverses = vec![u32::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == identity) {
                Some(b) if at(b, a) == identity => inverses[a] = b as u32,
                _ => return Err(Error::NotAGroup(format!("element {a} has no two-sided inverse"))),
            }
        }
        let associative = par::all_range(config.execution, order, |a| {
            (0..order).all(|b| {
                let ab = at(a, b);
                (0..order).all(|c| at(ab, c) == at(a, at(b, c)))
            })
        });
        if !associative {
            return Err(Error::NotAGroup("multiplication is not associative".into()));
        }
        Ok(Group::assemble(label.into(), order, identity, table, inverses, Vec::new()))
    }

    /// Table already known to satisfy the axioms (e.g. a product of groups).
    fn trusted(label: String, order: usize, identity: usize, table: Vec<u32>, factors: Vec<Group>) -> Group {
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let b = row.iter().position(|&x| x as usize == identity).expect("group table");
            inverses[a] = b as u32;
        }
        Group::assemble(label, order, identity, table, inverses, factors)
    }

    fn assemble(
        label: String,
        order: usize,
        identity: usize,
        table: Vec<u32>,
        inverses: Vec<u32>,
        factors: Vec<Group>,
    ) -> Group {
        let mut data = GroupData { label, order, identity, table, inverses, generators: Vec::new(), factors };
        data.generators = greedy_generators(&data);
        Group(Arc::new(data))
    }

    /// The trivial group.
    pub fn trivial() -> Group {
        Group::trusted("C1".into(), 1, 0, vec![0], Vec::new())
    }

    /// Direct product with the fixed row-major layout: `(a, b)` has index `a * |h| + b`.
    pub fn direct_product(&self, other: &Group, config: &Config) -> Result<Group> {
        Group::product_of(&[self.clone(), other.clone()], config)
    }

    /// Direct product of several factors, row-major: the last factor varies fastest.
    pub fn product_of(factors: &[Group], config: &Config) -> Result<Group> {
        if factors.is_empty() {
            return Ok(Group::trivial());
        }
        let mut order = 1usize;
        for f in factors {
            order = order.saturating_mul(f.order());
            if order > config.max_order {
                return Err(Error::OrderBound { order: factor_order(factors), max: config.max_order });
            }
        }
        let label = format!("prod({})", factors.iter().map(|f| f.label().to_string()).collect::<Vec<_>>().join(","));
        let identity = encode(factors, &factors.iter().map(Group::identity).collect::<Vec<_>>());
        let rows = par::map_range(config.execution, order, |a| {
            let ca = decode(factors, a);
            let mut row = Vec::with_capacity(order);
            let mut cb = vec![0usize; factors.len()];
            for b in 0..order {
                decode_into(factors, b, &mut cb);
                let prod: Vec<usize> = factors.iter().enumerate().map(|(i, f)| f.mul(ca[i], cb[i])).collect();
                row.push(encode(factors, &prod) as u32);
            }
            row
        });
        let table = rows.into_iter().flatten().collect();
        Ok(Group::trusted(label, order, identity, table, factors.to_vec()))
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverses[a] as usize
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> &[usize] {
        &self.0.generators
    }

    /// Direct factors if the group was built as a product, else empty.
    pub fn factors(&self) -> &[Group] {
        &self.0.factors
    }

    /// Factor coordinates of an element of a product group.
    pub fn coords(&self, x: usize) -> Vec<usize> {
        decode(&self.0.factors, x)
    }

    /// Element of a product group with the given factor coordinates.
    pub fn from_coords(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.0.factors.len());
        encode(&self.0.factors, coords)
    }

    /// True if this group was built as `G x G` for a single `G`.
    pub fn square_root(&self) -> Option<&Group> {
        match self.factors() {
            [a, b] if a == b => Some(a),
            _ => None,
        }
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != self.identity() {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|x| self.element_order(x)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn ptr_eq(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for Group {
    /// Two handles are equal when they carry the same table; labels are ignored.
    fn eq(&self, other: &Group) -> bool {
        self.ptr_eq(other)
            || (self.0.order == other.0.order && self.0.identity == other.0.identity && self.0.table == other.0.table)
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.label(), self.order())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn factor_order(factors: &[Group]) -> usize {
    factors.iter().fold(1usize, |acc, f| acc.saturating_mul(f.order()))
}

fn encode(factors: &[Group], coords: &[usize]) -> usize {
    factors.iter().zip(coords).fold(0, |acc, (f, &c)| acc * f.order() + c)
}

fn decode(factors: &[Group], x: usize) -> Vec<usize> {
    let mut out = vec![0; factors.len()];
    decode_into(factors, x, &mut out);
    out
}

fn decode_into(factors: &[Group], mut x: usize, out: &mut [usize]) {
    for (i, f) in factors.iter().enumerate().rev() {
        out[i] = x % f.order();
        x /= f.order();
    }
}

fn greedy_generators(data: &GroupData) -> Vec<usize> {
    let n = data.order;
    let at = |a: usize, b: usize| data.table[a * n + b] as usize;
    let mut inside = vec![false; n];
    inside[data.identity] = true;
    let mut members = vec![data.identity];
    let mut gens = Vec::new();
    for x in 0..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        // closure of members under right multiplication by all generators
        let mut i = 0;
        let mut queue = members.clone();
        inside[x] = true;
        queue.push(x);
        while i < queue.len() {
            let y = queue[i];
            i += 1;
            for &s in &gens {
                let z = at(y, s);
                if !inside[z] {
                    inside[z] = true;
                    queue.push(z);
                }
            }
        }
        members = queue;
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Group {
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Group::from_table(format!("C{n}"), n, table, 0, &Config::default()).unwrap()
    }

    #[test]
    fn rejects_non_groups() {
        let cfg = Config::default();
        // x*y = 0 everywhere: no identity
        assert!(matches!(Group::from_table("bad", 2, vec![0, 0, 0, 0], 0, &cfg), Err(Error::NotAGroup(_))));
        // identity acts trivially but 1*1 = 1 means 1 has no inverse
        assert!(matches!(Group::from_table("bad", 2, vec![0, 1, 1, 1], 0, &cfg), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn product_layout_is_row_major() {
        let cfg = Config::default();
        let c2 = cyclic(2);
        let c3 = cyclic(3);
        let p = c2.direct_product(&c3, &cfg).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.from_coords(&[1, 2]), 5);
        assert_eq!(p.coords(4), vec![1, 1]);
        // (1,1) generates C6
        assert_eq!(p.element_order(p.from_coords(&[1, 1])), 6);
        assert!(p.is_abelian());
        assert_eq!(p.label(), "prod(C2,C3)");
    }

    #[test]
    fn product_respects_order_bound() {
        let cfg = Config { max_order: 10, ..Config::default() };
        let c4 = cyclic(4);
        assert!(matches!(c4.direct_product(&c4, &cfg), Err(Error::OrderBound { order: 16, max: 10 })));
    }

    #[test]
    fn generators_generate() {
        let g = cyclic(12);
        assert_eq!(g.generators(), &[1]);
        assert_eq!(g.exponent(), 12);
    }
}
