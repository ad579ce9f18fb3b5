use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::Group;
use crate::error::{Error, Result};
use crate::Config;

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    /// Parses cycle notation with 1-based points, e.g. `(1,2,3)(4,5)` or `()`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("malformed cycle list `{text}`")))?;
            let (inner, tail) = body;
            rest = tail.trim_start();
            if inner.trim().is_empty() {
                continue;
            }
            let points = inner
                .split(',')
                .map(|p| match p.trim().parse::<usize>() {
                    Ok(v) if v >= 1 && v <= degree => Ok(v - 1),
                    _ => Err(Error::Parse(format!("bad point `{}` in `{text}`", p.trim()))),
                })
                .collect::<Result<Vec<_>>>()?;
            let distinct: BTreeSet<_> = points.iter().collect();
            if distinct.len() != points.len() {
                return Err(Error::Parse(format!("repeated point in cycle `({inner})`")));
            }
            // cycles compose right to left: apply this cycle after the ones to its right
            let mut cycle = (0..degree).collect::<Vec<_>>();
            for (k, &p) in points.iter().enumerate() {
                cycle[p] = points[(k + 1) % points.len()];
            }
            let composed: Vec<usize> = (0..degree).map(|x| images[cycle[x]]).collect();
            images = composed;
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.0[x];
            }
            let body: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Closes the generators under composition. Elements are sorted
/// lexicographically by image list, so the identity is element 0.
pub(crate) fn permutation_group(
    label: String,
    gens: &[Permutation],
    config: &Config,
) -> Result<(Group, Vec<Permutation>)> {
    let degree = gens.first().map_or(1, Permutation::degree);
    let id = Permutation::identity(degree);
    let mut found: BTreeSet<Permutation> = BTreeSet::new();
    found.insert(id.clone());
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        let p = queue[i].clone();
        i += 1;
        for s in gens {
            let q = p.compose(s);
            if found.insert(q.clone()) {
                if found.len() > config.max_order {
                    return Err(Error::OrderBound { order: found.len(), max: config.max_order });
                }
                queue.push(q);
            }
        }
    }
    let elements: Vec<Permutation> = found.into_iter().collect();
    let group = group_on(label, &elements, config)?;
    Ok((group, elements))
}

/// Group on a list of permutations closed under composition, in list order.
pub(crate) fn group_on(label: String, elements: &[Permutation], config: &Config) -> Result<Group> {
    if elements.len() > config.max_order {
        return Err(Error::OrderBound { order: elements.len(), max: config.max_order });
    }
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = elements.len();
    let identity = elements
        .iter()
        .position(Permutation::is_identity)
        .ok_or_else(|| Error::NotAGroup("identity missing".into()))?;
    let mut table = Vec::with_capacity(n * n);
    for a in elements {
        for b in elements {
            let c =
                index.get(&a.compose(b)).ok_or_else(|| Error::NotAGroup("set not closed under composition".into()))?;
            table.push(*c);
        }
    }
    Group::from_table(label, n, table, identity, config)
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation(current.clone()));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else { break };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}
