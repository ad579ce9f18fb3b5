use std::sync::Arc;

use super::Group;
use crate::error::{Error, Result};

/// A group homomorphism stored as an image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    source: Group,
    target: Group,
    map: Arc<Vec<usize>>,
}

impl Hom {
    /// Checks the homomorphism property on generator pairs against all elements.
    pub fn new(source: &Group, target: &Group, map: Vec<usize>) -> Result<Hom> {
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(Error::Mismatch("image table has the wrong shape".into()));
        }
        let ok = source
            .elements()
            .all(|a| source.generators().iter().all(|&s| map[source.mul(a, s)] == target.mul(map[a], map[s])))
            && map[source.identity()] == target.identity();
        if !ok {
            return Err(Error::Mismatch("map is not a homomorphism".into()));
        }
        Ok(Hom::unchecked(source, target, map))
    }

    pub(crate) fn unchecked(source: &Group, target: &Group, map: Vec<usize>) -> Hom {
        Hom { source: source.clone(), target: target.clone(), map: Arc::new(map) }
    }

    pub fn identity(g: &Group) -> Hom {
        Hom::unchecked(g, g, g.elements().collect())
    }

    /// `g -> (g, g)` into a group recorded as `G x G`.
    pub fn diagonal(square: &Group) -> Result<Hom> {
        let base = square.square_root().ok_or_else(|| Error::NotAProductGroup(square.label().to_string()))?;
        let map = base.elements().map(|g| square.from_coords(&[g, g])).collect();
        Ok(Hom::unchecked(base, square, map))
    }

    /// Homomorphism into a product group given by the factor coordinates of each image.
    ///
    /// `placement[i]` names, for target factor `i`, which coordinate of the
    /// source (itself a product) feeds it.
    pub fn from_placement(source: &Group, target: &Group, placement: &[usize]) -> Result<Hom> {
        if placement.len() != target.factors().len() {
            return Err(Error::FactorMismatch(format!(
                "{} placements for {} target factors",
                placement.len(),
                target.factors().len()
            )));
        }
        for (i, &p) in placement.iter().enumerate() {
            if source.factors().get(p) != Some(&target.factors()[i]) {
                return Err(Error::FactorMismatch(format!("target factor {i} is not source factor {p}")));
            }
        }
        let map = source
            .elements()
            .map(|x| {
                let c = source.coords(x);
                let d: Vec<usize> = placement.iter().map(|&p| c[p]).collect();
                target.from_coords(&d)
            })
            .collect();
        Ok(Hom::unchecked(source, target, map))
    }

    /// Projection of a product group onto the listed factors (in that order),
    /// landing in `target`, which must be the product of those factors.
    pub fn projection(source: &Group, target: &Group, factors: &[usize]) -> Result<Hom> {
        Hom::from_placement(source, target, factors)
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn compose(&self, after: &Hom) -> Result<Hom> {
        if self.target != after.source {
            return Err(Error::GroupMismatch("composition of incompatible maps".into()));
        }
        let map = self.map.iter().map(|&y| after.map[y]).collect();
        Ok(Hom::unchecked(&self.source, &after.target, map))
    }

    pub fn inverse(&self) -> Result<Hom> {
        if !self.is_bijective() {
            return Err(Error::NotAnIsomorphism(format!("{} -> {}", self.source.label(), self.target.label())));
        }
        let mut map = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        Ok(Hom::unchecked(&self.target, &self.source, map))
    }
}
