//! Multisets of subspaces of `F_q^r`: λ-packings and partial spreads.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{BaseField, FieldTower};
use crate::limits::Limits;
use crate::linalg::Matrix;
use crate::subspace::{point_count, point_index, subspaces, PointIter, Subspace};

/// A multiset of subspaces of `F_q^r`, kept in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    field: Arc<BaseField>,
    ambient: usize,
    blocks: Vec<Subspace>,
}

/// Outcome of [`Packing::verify_lambda_packing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingCheck {
    pub lambda: usize,
    /// Largest number of blocks through one projective point.
    pub max_multiplicity: usize,
    /// First point (in point order) lying in more than `lambda` blocks.
    pub point_witness: Option<(Vec<u32>, usize)>,
    /// First `(lambda+1)`-set of blocks (1-based, lexicographic) with a
    /// nontrivial common intersection.
    pub subset_witness: Option<Vec<usize>>,
}

impl PackingCheck {
    pub fn holds(&self) -> bool {
        self.point_witness.is_none()
    }
}

impl Packing {
    pub fn new(field: Arc<BaseField>, ambient: usize, blocks: Vec<Subspace>) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.ambient() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "block in F_q^{} inside a packing of F_q^{ambient}",
                b.ambient()
            )));
        }
        Ok(Packing {
            field,
            ambient,
            blocks,
        })
    }

    pub fn field(&self) -> &Arc<BaseField> {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn blocks(&self) -> &[Subspace] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn push(&mut self, block: Subspace) -> Result<()> {
        if block.ambient() != self.ambient {
            return Err(Error::DimensionMismatch("block ambient dimension".into()));
        }
        self.blocks.push(block);
        Ok(())
    }

    /// Blocks with multiplicities.
    pub fn multiset(&self) -> BTreeMap<Subspace, usize> {
        let mut m = BTreeMap::new();
        for b in &self.blocks {
            *m.entry(b.clone()).or_insert(0) += 1;
        }
        m
    }

    /// Number of blocks through each projective point, indexed by point order.
    fn point_multiplicities(&self, limits: &Limits) -> Result<Vec<u16>> {
        let q = self.field.order();
        let total = point_count(q as u64, self.ambient);
        limits.check_vectors(&format!("projective points of F_{q}^{}", self.ambient), total)?;
        let incidences: u128 = self
            .blocks
            .iter()
            .map(|b| point_count(q as u64, b.dim()))
            .sum();
        limits.check_vectors("block point incidences", incidences)?;
        let mut counts = vec![0u16; total as usize];
        for b in &self.blocks {
            for p in b.points(&self.field) {
                let idx = point_index(q, &p).expect("normalized");
                counts[idx as usize] = counts[idx as usize].saturating_add(1);
            }
        }
        Ok(counts)
    }

    /// First `size`-subset of blocks (0-based, lexicographic) with nonzero
    /// common intersection.
    fn first_dependent_subset(&self, size: usize, limits: &Limits) -> Option<Vec<usize>> {
        let gf = &*self.field;
        let n = self.blocks.len();
        if size == 0 || size > n {
            return None;
        }
        let annihilators: Vec<Matrix> = self
            .blocks
            .iter()
            .map(|b| b.perp(gf).basis().clone())
            .collect();
        let firsts: Vec<usize> = (0..=n - size).collect();
        let found = limits.map_items(&firsts, |&first| {
            let mut chosen = vec![first];
            dfs_nontrivial(
                gf,
                &annihilators,
                size,
                first + 1,
                &mut chosen,
                &self.blocks[first],
            )
        });
        found.into_iter().flatten().next()
    }

    /// Checks that every projective point lies in at most `lambda` blocks,
    /// once by counting per point and once by testing all `(lambda+1)`-sets
    /// of blocks for trivial intersection. Disagreement is an error.
    pub fn verify_lambda_packing(&self, lambda: usize, limits: &Limits) -> Result<PackingCheck> {
        let counts = self.point_multiplicities(limits)?;
        let q = self.field.order();
        let max_multiplicity = counts.iter().copied().max().unwrap_or(0) as usize;
        let point_witness = counts
            .iter()
            .position(|&c| c as usize > lambda)
            .map(|i| {
                let p = crate::subspace::point_at(q, self.ambient, i as u64).expect("in range");
                (p, counts[i] as usize)
            });
        let subset_witness = self
            .first_dependent_subset(lambda + 1, limits)
            .map(|s| s.into_iter().map(|i| i + 1).collect());
        if point_witness.is_some() != subset_witness.is_some() {
            return Err(Error::Verification(format!(
                "{lambda}-packing checks disagree: point count says {}, subset test says {}",
                point_witness.is_none(),
                subset_witness.is_none()
            )));
        }
        Ok(PackingCheck {
            lambda,
            max_multiplicity,
            point_witness,
            subset_witness,
        })
    }

    /// All blocks have dimension `t` and meet pairwise trivially.
    pub fn is_partial_spread(&self, t: usize) -> bool {
        if self.blocks.iter().any(|b| b.dim() != t) {
            return false;
        }
        let gf = &*self.field;
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                let s = self.blocks[i].sum(gf, &self.blocks[j]).expect("same ambient");
                if s.dim() != 2 * t {
                    return false;
                }
            }
        }
        true
    }

    /// Searches, in canonical subspace order, for a `dim`-dimensional
    /// subspace not already a block whose addition keeps this a
    /// `lambda`-packing. `Ok(None)` is an exhaustive certificate.
    pub fn extend_search(
        &self,
        lambda: usize,
        dim: usize,
        limits: &Limits,
    ) -> Result<Option<Subspace>> {
        let check = self.verify_lambda_packing(lambda, limits)?;
        if !check.holds() {
            return Err(Error::InvalidParams(format!(
                "the packing is not a {lambda}-packing to begin with"
            )));
        }
        let counts = self.point_multiplicities(limits)?;
        let candidates: Vec<Subspace> =
            subspaces(&self.field, self.ambient, dim, limits)?.collect();
        let existing = self.multiset();
        let q = self.field.order();
        let gf = &*self.field;
        let hits = limits.map_ranges(candidates.len() as u64, |range| {
            candidates[range.start as usize..range.end as usize]
                .iter()
                .position(|w| {
                    !existing.contains_key(w)
                        && w.points(gf).all(|p| {
                            (counts[point_index(q, &p).expect("normalized") as usize] as usize)
                                < lambda
                        })
                })
                .map(|i| range.start as usize + i)
        });
        Ok(hits.into_iter().flatten().next().map(|i| candidates[i].clone()))
    }
}

/// Depth-first search for a nontrivially intersecting `size`-set extending
/// `chosen`, whose running intersection is `inter`.
fn dfs_nontrivial(
    gf: &BaseField,
    annihilators: &[Matrix],
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    inter: &Subspace,
) -> Option<Vec<usize>> {
    if inter.is_zero() {
        return None;
    }
    if chosen.len() == size {
        return Some(chosen.clone());
    }
    let remaining = size - chosen.len();
    let n = annihilators.len();
    if n < remaining {
        return None;
    }
    for j in start..=n - remaining {
        let next = inter.restrict(gf, &annihilators[j]);
        chosen.push(j);
        let hit = dfs_nontrivial(gf, annihilators, size, j + 1, chosen, &next);
        chosen.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// `floor((q^r - 1) / (q^t - 1))`, the maximum size of a partial `t`-spread
/// of `F_q^r` when `t` does not divide `r`, and the spread size when it does.
pub fn spread_upper_bound(q: u64, r: usize, t: usize) -> Result<u128> {
    if t == 0 || t >= r {
        return Err(Error::InvalidParams(format!("need 1 <= t < r, got t={t}, r={r}")));
    }
    let q = q as u128;
    let num = q
        .checked_pow(r as u32)
        .ok_or_else(|| Error::InvalidParams("q^r overflows".into()))?
        - 1;
    Ok(num / (q.pow(t as u32) - 1))
}

/// The Desarguesian `t`-spread of `F_q^r` (`t | r`): each point of
/// `PG(r/t - 1, q^t)` expanded to a `t`-dimensional subspace over `F_q`.
///
/// Block order follows the point order of `F_{q^t}^{r/t}`.
pub fn desarguesian_spread(field: Arc<BaseField>, r: usize, t: usize) -> Result<Packing> {
    if t == 0 || r % t != 0 {
        return Err(Error::InvalidParams(format!("{t} does not divide {r}")));
    }
    let m = r / t;
    let ext = FieldTower::over(field.clone(), t)?;
    let big_q = ext.order();
    if big_q > u32::MAX as u64 {
        return Err(Error::InvalidParams("q^t too large".into()));
    }
    let count = point_count(big_q, m);
    if count > u32::MAX as u128 {
        return Err(Error::cap("spread blocks", count, u32::MAX as u64));
    }
    let mut blocks = Vec::with_capacity(count as usize);
    for point in PointIter::new(big_q as u32, m) {
        let v: Vec<_> = point.iter().map(|&x| ext.element(x as u64)).collect();
        let mut rows = Matrix::zeros(0, r);
        for j in 0..t {
            let s = ext.basis(j);
            let row: Vec<u32> = v.iter().flat_map(|c| ext.expand(&ext.mul(&s, c))).collect();
            rows.push_row(&row)?;
        }
        blocks.push(Subspace::row_space(&field, &rows));
    }
    Packing::new(field, r, blocks)
}

/// Size of the partial spread built by [`beutelspacher_spread`]:
/// `sum_{i=1}^{a-1} q^(it+b) + 1` for `r = at + b`.
pub fn beutelspacher_size(q: u64, r: usize, t: usize) -> u128 {
    let (a, b) = (r / t, r % t);
    let q = q as u128;
    (1..a).map(|i| q.pow((i * t + b) as u32)).sum::<u128>() + 1
}

/// A partial `t`-spread of `F_q^r` with `r = at + b`, `0 < b < t`, of size
/// `sum_{i=1}^{a-1} q^(it+b) + 1`.
///
/// Write `F_q^r = Y ⊕ X` with `Y = F_q^(t+b)` (first coordinates) read as
/// `F_{q^(t+b)}` and `X = F_q^((a-1)t)` carrying a Desarguesian `t`-spread.
/// For every spread element `D` with RREF basis `d_1..d_t` and every
/// `c in F_{q^(t+b)}` the block spanned by `(c xi^(j-1), d_j)` is taken,
/// plus the span of the first `t` coordinates of `Y`.
pub fn beutelspacher_spread(field: Arc<BaseField>, r: usize, t: usize) -> Result<Packing> {
    if t == 0 || t > r {
        return Err(Error::InvalidParams(format!("need 1 <= t <= r, got t={t}, r={r}")));
    }
    let (a, b) = (r / t, r % t);
    if b == 0 {
        return Err(Error::InvalidParams(format!(
            "{t} divides {r}; use the Desarguesian spread"
        )));
    }
    let y_dim = t + b;
    let mut blocks = Vec::new();
    if a >= 2 {
        let x_dim = (a - 1) * t;
        let base = desarguesian_spread(field.clone(), x_dim, t)?;
        let ext = FieldTower::over(field.clone(), y_dim)?;
        for d in base.blocks() {
            for c in ext.elements() {
                let mut rows = Matrix::zeros(0, r);
                for j in 0..t {
                    let mut row = ext.expand(&ext.mul(&c, &ext.basis(j)));
                    row.extend_from_slice(d.basis().row(j));
                    rows.push_row(&row)?;
                }
                blocks.push(Subspace::row_space(&field, &rows));
            }
        }
    }
    blocks.push(Subspace::coordinate(r, 0..t));
    let packing = Packing::new(field, r, blocks)?;
    let expected = beutelspacher_size(packing.field.order() as u64, r, t);
    if packing.len() as u128 != expected || !packing.is_partial_spread(t) {
        return Err(Error::Verification(format!(
            "partial {t}-spread of F_q^{r}: got {} blocks, expected {expected}",
            packing.len()
        )));
    }
    Ok(packing)
}

/// Desarguesian spread when `t | r`, otherwise the Beutelspacher partial
/// spread.
pub fn default_partial_spread(field: Arc<BaseField>, r: usize, t: usize) -> Result<Packing> {
    if r % t == 0 {
        desarguesian_spread(field, r, t)
    } else {
        beutelspacher_spread(field, r, t)
    }
}
