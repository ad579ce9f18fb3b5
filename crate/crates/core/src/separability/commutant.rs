use crate::biset::{diagonal_product_factors, diagonal_product_gset};
use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::group::{Group, Hom, SubgroupLattice};
use crate::gset::{GSet, StabilizerClasses};
use crate::ring::{solve_linear, LinearSolution, Matrix, RingSpec};
use crate::{par, Config};

/// Solutions `m` in `RB(GG)` of `Ind_{Delta(G)G}^{GGG}(m) = Ind_{D13}^{GGG}(m)`.
#[derive(Debug, Clone)]
pub struct Commutant {
    pub burnside: BurnsideRing,
    pub ring: RingSpec,
    /// Spans the solutions; a basis over `Q`.
    pub solutions: Vec<BurnsideElement>,
    /// `[GG/Delta(L)]` for each class of `L`.
    pub diagonal: Vec<BurnsideElement>,
    pub matches_diagonal_span: bool,
}

impl Commutant {
    /// Dimension of the solution space, over a field.
    pub fn dimension(&self) -> Option<usize> {
        self.ring.is_field().then_some(self.solutions.len())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.burnside.group().factors()[0].label(),
            "ring": self.ring.to_string(),
            "dimension": self.dimension(),
            "matches_diagonal_span": self.matches_diagonal_span,
            "solutions": self.solutions.iter().map(BurnsideElement::to_json).collect::<Vec<_>>(),
            "diagonal": self.diagonal.iter().map(BurnsideElement::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `(a, b) -> (a, a, b)` and `(c, d) -> (d, c, d)`, the two embeddings of `GG` in `GGG`.
fn embeddings(gg: &Group, ggg: &Group) -> Result<(Hom, Hom)> {
    Ok((Hom::from_placement(gg, ggg, &[0, 0, 1])?, Hom::from_placement(gg, ggg, &[1, 0, 1])?))
}

fn check_bound(g: &Group, config: &Config) -> Result<()> {
    if g.order() > config.max_commutant_order {
        return Err(Error::ResourceBound(format!(
            "commutant of a group of order {} (bound {})",
            g.order(),
            config.max_commutant_order
        )));
    }
    Ok(())
}

pub fn commutant_basis(g: &Group, ring: RingSpec, config: &Config) -> Result<Commutant> {
    check_bound(g, config)?;
    let gg = g.direct_product(g, config)?;
    let ggg = Group::product_of(&[g.clone(), g.clone(), g.clone()], config)?;
    let burnside = BurnsideRing::new(&gg, config)?;
    let (left, right) = embeddings(&gg, &ggg)?;
    let n = burnside.rank();

    let induced: Vec<Result<(GSet, GSet)>> = par::map_range(config.execution, n, |c| {
        let x = burnside.transitive(c);
        Ok((x.induce_along(&left)?, x.induce_along(&right)?))
    });
    let mut classes = StabilizerClasses::new(&ggg);
    let mut columns = Vec::with_capacity(n);
    for pair in induced {
        let (l, r) = pair?;
        let (cl, cr) = (classes.counts(&l)?, classes.counts(&r)?);
        columns.push((cl, cr));
    }
    let rows = classes.len();
    let mut a = Matrix::zeros(ring, rows, n);
    for (c, (cl, cr)) in columns.iter().enumerate() {
        for row in 0..rows {
            let d = cl.get(row).copied().unwrap_or(0) as i64 - cr.get(row).copied().unwrap_or(0) as i64;
            a.set(row, c, ring.from_i64(d));
        }
    }
    let kernel = match solve_linear(&a, &vec![ring.zero(); rows])? {
        LinearSolution::Solution { kernel, .. } => kernel,
        LinearSolution::NoSolution(_) => {
            return Err(Error::InternalInconsistency("homogeneous system unsolvable".into()))
        }
    };
    let solutions = kernel.into_iter().map(|v| burnside.from_coeffs(ring, v)).collect::<Result<Vec<_>>>()?;

    let lattice = SubgroupLattice::new(g, config)?;
    let delta = Hom::diagonal(&gg)?;
    let diagonal_classes: Vec<usize> = (0..lattice.class_count())
        .map(|l| burnside.lattice().class_of(&lattice.representative(l).image(&delta)))
        .collect::<Result<_>>()?;
    let diagonal: Vec<BurnsideElement> = diagonal_classes.iter().map(|&c| burnside.basis(ring, c)).collect();

    let in_kernel = diagonal_classes.iter().all(|&c| (0..rows).all(|r| a.get(r, c).is_zero()));
    let supported = solutions
        .iter()
        .all(|s| s.coeffs().iter().enumerate().all(|(c, x)| x.is_zero() || diagonal_classes.contains(&c)));
    Ok(Commutant { burnside, ring, solutions, diagonal, matches_diagonal_span: in_kernel && supported })
}

/// Checks `alpha x^{G1} [GG/Delta(L)] = [GG/Delta(L)] x^{G2} alpha` after
/// exchanging the two copies of `G`, for every transitive `(K x G)`-set
/// `alpha` with `K` trivial or `G`, and every `L`.
pub fn commutant_sufficiency(g: &Group, config: &Config) -> Result<bool> {
    check_bound(g, config)?;
    let gg = g.direct_product(g, config)?;
    let delta = Hom::diagonal(&gg)?;
    let lattice = SubgroupLattice::new(g, config)?;
    let diagonal: Vec<GSet> =
        (0..lattice.class_count()).map(|c| GSet::transitive(&lattice.representative(c).image(&delta))).collect();
    for k in [Group::trivial(), g.clone()] {
        let kg = Group::product_of(&[k.clone(), g.clone()], config)?;
        let first = Group::product_of(&diagonal_product_factors(&kg, 1, &gg, 0)?, config)?;
        let second = Group::product_of(&diagonal_product_factors(&gg, 1, &kg, 1)?, config)?;
        // (k, a, b) -> (a, k, b)
        let reorder = Hom::from_placement(&first, &second, &[1, 0, 2])?;
        let alphas = SubgroupLattice::new(&kg, config)?;
        for class in 0..alphas.class_count() {
            let alpha = GSet::transitive(alphas.representative(class));
            for m in &diagonal {
                let lhs = diagonal_product_gset(&alpha, 1, m, 0, &first)?;
                let rhs = diagonal_product_gset(m, 1, &alpha, 1, &second)?.pullback(&reorder)?;
                if !lhs.iso_equal(&rhs)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
