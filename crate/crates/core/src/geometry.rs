//! Dimensional dual arcs, dual hyperovals and their codes.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::code::AdditiveCode;
use crate::error::{Error, Result};
use crate::field::{BaseField, FieldTower};
use crate::limits::Limits;
use crate::packing::Packing;
use crate::subspace::{point_count, point_index, subspaces, Subspace};

/// `(q^(d+1) - 1)/(q - 1)`, the number of points of `PG(d, q)`.
pub fn theta(q: u64, d: usize) -> u128 {
    point_count(q, d + 1)
}

/// A set of `(d+1)`-dimensional subspaces, to be tested as a `d`-dimensional
/// dual arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualArcCandidate {
    pub field: Arc<BaseField>,
    pub ambient: usize,
    pub blocks: Vec<Subspace>,
}

/// Why a candidate is not a dual arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DdaViolation {
    /// Size above `theta_q(d) + 1`.
    TooLarge { size: usize, max: u128 },
    /// Blocks (1-based) whose intersection is not 1-dimensional.
    Pair { blocks: (usize, usize), dim: usize },
    /// Blocks (1-based) with a nonzero common vector.
    Triple { blocks: (usize, usize, usize) },
    /// The blocks span only this dimension.
    Span { dim: usize },
    /// Size below `theta_q(d) + 1` (for the hyperoval test).
    TooSmall { size: usize, needed: u128 },
}

impl std::fmt::Display for DdaViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DdaViolation::TooLarge { size, max } => {
                write!(f, "{size} blocks exceed the maximum {max}")
            }
            DdaViolation::Pair { blocks, dim } => {
                write!(f, "blocks {} and {} meet in dimension {dim}", blocks.0, blocks.1)
            }
            DdaViolation::Triple { blocks } => write!(
                f,
                "blocks {}, {}, {} share a nonzero vector",
                blocks.0, blocks.1, blocks.2
            ),
            DdaViolation::Span { dim } => write!(f, "blocks span only dimension {dim}"),
            DdaViolation::TooSmall { size, needed } => {
                write!(f, "{size} blocks, a dual hyperoval has {needed}")
            }
        }
    }
}

impl DualArcCandidate {
    pub fn new(field: Arc<BaseField>, ambient: usize, blocks: Vec<Subspace>) -> Result<Self> {
        if blocks.iter().any(|b| b.ambient() != ambient) {
            return Err(Error::DimensionMismatch("block outside the ambient space".into()));
        }
        Ok(DualArcCandidate {
            field,
            ambient,
            blocks,
        })
    }

    pub fn from_packing(p: &Packing) -> Result<Self> {
        Self::new(p.field().clone(), p.ambient(), p.blocks().to_vec())
    }

    pub fn to_packing(&self) -> Packing {
        Packing::new(self.field.clone(), self.ambient, self.blocks.clone())
            .expect("blocks share the ambient space")
    }

    /// The arc dimension `d` (blocks have dimension `d + 1`). Errors on
    /// mixed or zero block dimensions.
    pub fn arc_dim(&self) -> Result<usize> {
        let Some(first) = self.blocks.first() else {
            return Err(Error::InvalidParams("empty candidate".into()));
        };
        let dim = first.dim();
        if dim == 0 || self.blocks.iter().any(|b| b.dim() != dim) {
            return Err(Error::InvalidParams("blocks of mixed or zero dimension".into()));
        }
        Ok(dim - 1)
    }

    /// Checks the three dual-arc axioms; `Ok(None)` means it is a DDA.
    pub fn dda_violation(&self) -> Result<Option<DdaViolation>> {
        let d = self.arc_dim()?;
        let gf = &*self.field;
        let max = theta(gf.order() as u64, d) + 1;
        let n = self.blocks.len();
        if n as u128 > max {
            return Ok(Some(DdaViolation::TooLarge { size: n, max }));
        }
        let annihilators: Vec<_> = self.blocks.iter().map(|b| b.perp(gf).basis().clone()).collect();
        let mut pairs = vec![vec![None; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let x = self.blocks[i].restrict(gf, &annihilators[j]);
                if x.dim() != 1 {
                    return Ok(Some(DdaViolation::Pair {
                        blocks: (i + 1, j + 1),
                        dim: x.dim(),
                    }));
                }
                pairs[i][j] = Some(x);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let x = pairs[i][j].as_ref().expect("filled");
                for (l, ann) in annihilators.iter().enumerate().skip(j + 1) {
                    if !x.restrict(gf, ann).is_zero() {
                        return Ok(Some(DdaViolation::Triple {
                            blocks: (i + 1, j + 1, l + 1),
                        }));
                    }
                }
            }
        }
        let mut span = Subspace::zero(self.ambient);
        for b in &self.blocks {
            span = span.sum(gf, b)?;
        }
        if span.dim() != self.ambient {
            return Ok(Some(DdaViolation::Span { dim: span.dim() }));
        }
        Ok(None)
    }

    pub fn is_dda(&self) -> Result<bool> {
        Ok(self.dda_violation()?.is_none())
    }

    /// A DDA of size `theta_q(d) + 1`; `Ok(None)` means it is a DHO.
    pub fn dho_violation(&self) -> Result<Option<DdaViolation>> {
        let d = self.arc_dim()?;
        let needed = theta(self.field.order() as u64, d) + 1;
        if (self.blocks.len() as u128) < needed {
            return Ok(Some(DdaViolation::TooSmall {
                size: self.blocks.len(),
                needed,
            }));
        }
        self.dda_violation()
    }

    pub fn is_dho(&self) -> Result<bool> {
        Ok(self.dho_violation()?.is_none())
    }
}

/// The additive code whose `T(C)` is an `h`-dimensional dual arc in
/// `F_q^(2h+1)`; it is a dually QMDS `[n, 2 + 1/h, n - 2]` code.
pub fn dda_to_code(arc: &DualArcCandidate, tower: Arc<FieldTower>) -> Result<AdditiveCode> {
    let h = tower.h();
    if arc.ambient != 2 * h + 1 || arc.arc_dim()? != h {
        return Err(Error::InvalidParams(format!(
            "need {h}-dimensional arc in F_q^{}, got blocks of dimension {} in F_q^{}",
            2 * h + 1,
            arc.blocks.first().map_or(0, |b| b.dim()),
            arc.ambient
        )));
    }
    if let Some(v) = arc.dda_violation()? {
        return Err(Error::Verification(format!("not a dual arc: {v}")));
    }
    AdditiveCode::from_packing(tower, &arc.to_packing())
}

/// The dual arc `T(C)` of a faithful dually QMDS `[n, 2 + 1/h, n - 2]` code.
pub fn code_to_dda(code: &AdditiveCode, limits: &Limits) -> Result<DualArcCandidate> {
    let h = code.h();
    if code.r() != 2 * h + 1 {
        return Err(Error::InvalidParams(format!(
            "need F_q-dimension 2h + 1 = {}, got {}",
            2 * h + 1,
            code.r()
        )));
    }
    if !code.is_faithful() {
        return Err(Error::Verification("code is not faithful".into()));
    }
    let d = code.min_distance(limits)?;
    if d + 2 != code.n() {
        return Err(Error::Verification(format!(
            "distance {d}, expected n - 2 = {}",
            code.n() as i64 - 2
        )));
    }
    if !code.is_dually_qmds(limits)? {
        return Err(Error::Verification("code is not dually QMDS".into()));
    }
    let arc = DualArcCandidate::from_packing(&code.t_multiset())?;
    if let Some(v) = arc.dda_violation()? {
        return Err(Error::Verification(format!("T(C) is not a dual arc: {v}")));
    }
    Ok(arc)
}

/// Outcome of an exhaustive dual hyperoval search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DhoSearch {
    Found(DualArcCandidate),
    /// Every branch was explored without success.
    NoneExists { nodes: u64 },
}

/// Options for [`search_dho_with`].
#[derive(Clone, Debug, Default)]
pub struct DhoSearchOptions {
    /// Blocks to start from instead of the two normalized first blocks.
    pub seed: Option<Vec<Subspace>>,
    /// File recording the number of top-level branches and each finished
    /// one (`done <i>`); an existing file is resumed.
    pub state_file: Option<PathBuf>,
}

struct Universe {
    blocks: Vec<Subspace>,
    /// Points of each candidate block, as indices into the point order.
    points: Vec<FixedBitSet>,
    /// Candidates through each point.
    through: Vec<FixedBitSet>,
    npoints: usize,
}

impl Universe {
    fn meet(&self, a: usize, b: usize) -> usize {
        self.points[a].intersection_count(&self.points[b])
    }

    /// The single common point of two compatible blocks.
    fn common_point(&self, a: usize, b: usize) -> usize {
        self.points[a]
            .intersection(&self.points[b])
            .next()
            .expect("blocks meet in a point")
    }
}

#[derive(Clone)]
struct Node {
    chosen: Vec<usize>,
    /// Points lying on two chosen blocks.
    covered: FixedBitSet,
    /// Candidates meeting every chosen block in exactly one uncovered point.
    pool: FixedBitSet,
}

impl Node {
    fn add(&self, u: &Universe, c: usize) -> Node {
        let mut covered = self.covered.clone();
        for &b in &self.chosen {
            covered.insert(u.common_point(b, c));
        }
        let mut pool = FixedBitSet::with_capacity(u.blocks.len());
        for x in self.pool.ones() {
            if x == c || u.meet(x, c) != 1 {
                continue;
            }
            if u.points[x].is_disjoint(&covered) {
                pool.insert(x);
            }
        }
        let mut chosen = self.chosen.clone();
        chosen.push(c);
        Node {
            chosen,
            covered,
            pool,
        }
    }

    /// An uncovered point of a chosen block with the fewest candidates
    /// through it, and those candidates. In a hyperoval every point of every
    /// block is covered, so an uncovered point with no candidates is a dead
    /// end.
    fn branch(&self, u: &Universe) -> Option<Vec<usize>> {
        let mut best: Option<(usize, usize)> = None;
        for &b in &self.chosen {
            for p in u.points[b].ones() {
                if self.covered.contains(p) {
                    continue;
                }
                let count = u.through[p].intersection_count(&self.pool);
                if best.map_or(true, |(c, _)| count < c) {
                    best = Some((count, p));
                }
            }
        }
        let (_, p) = best?;
        Some(u.through[p].intersection(&self.pool).collect())
    }
}

struct Search<'a> {
    u: &'a Universe,
    target: usize,
    ambient: usize,
    field: &'a BaseField,
    nodes: AtomicUsize,
}

impl Search<'_> {
    fn spans(&self, chosen: &[usize]) -> bool {
        let mut span = Subspace::zero(self.ambient);
        for &c in chosen {
            span = span.sum(self.field, &self.u.blocks[c]).expect("same ambient");
        }
        span.dim() == self.ambient
    }

    fn dfs(&self, node: &Node, cutoff: &AtomicUsize, my_branch: usize) -> Option<Vec<usize>> {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if cutoff.load(Ordering::Relaxed) < my_branch {
            return None;
        }
        if node.chosen.len() == self.target {
            return self.spans(&node.chosen).then(|| node.chosen.clone());
        }
        if node.chosen.len() + node.pool.count_ones(..) < self.target {
            return None;
        }
        let options = match node.branch(self.u) {
            Some(o) => o,
            // no chosen block yet has an uncovered point: take pool order
            None => node.pool.ones().collect(),
        };
        for c in options {
            if let Some(hit) = self.dfs(&node.add(self.u, c), cutoff, my_branch) {
                return Some(hit);
            }
        }
        None
    }
}

fn read_state(path: &Path, q: u32, h: usize) -> Result<BTreeSet<usize>> {
    let mut done = BTreeSet::new();
    let Ok(text) = std::fs::read_to_string(path) else {
        return Ok(done);
    };
    let mut lines = text.lines().enumerate();
    let header = format!("dho-search v1 q={q} h={h}");
    match lines.next() {
        Some((_, l)) if l.trim() == header => {}
        Some((_, l)) => {
            return Err(Error::parse(1, format!("expected {header:?}, found {l:?}")));
        }
        None => return Ok(done),
    }
    for (i, l) in lines {
        let l = l.trim();
        if l.is_empty() {
            continue;
        }
        if l.starts_with("branches ") {
            continue;
        }
        let idx = l
            .strip_prefix("done ")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(i + 1, format!("bad state line {l:?}")))?;
        done.insert(idx);
    }
    Ok(done)
}

/// Exhaustive search for an `h`-dimensional dual hyperoval in
/// `F_q^(2h+1)`, i.e. `theta_q(h) + 1` blocks of dimension `h + 1`.
pub fn search_dho(q: u64, h: usize, limits: &Limits) -> Result<DhoSearch> {
    search_dho_with(q, h, &DhoSearchOptions::default(), limits)
}

/// [`search_dho`] with a seed or a resumable state file.
///
/// Without a seed the first block is the first `(h+1)`-subspace in
/// canonical order and the second is the first one meeting it in a point;
/// `GL(2h+1, q)` is transitive on such pairs, so this loses no generality.
/// Branching is on an uncovered point of a chosen block with the fewest
/// candidates through it; the reported hyperoval is the first one found in
/// this deterministic order.
pub fn search_dho_with(
    q: u64,
    h: usize,
    options: &DhoSearchOptions,
    limits: &Limits,
) -> Result<DhoSearch> {
    if h == 0 {
        return Err(Error::InvalidParams("need h >= 1".into()));
    }
    let field = Arc::new(BaseField::with_order(q)?);
    let m = 2 * h + 1;
    let qq = field.order();
    let npoints = point_count(q, m);
    limits.check_vectors("projective points", npoints)?;
    let npoints = npoints as usize;
    let blocks: Vec<Subspace> = subspaces(&field, m, h + 1, limits)?.collect();
    let mut points = Vec::with_capacity(blocks.len());
    let mut through = vec![FixedBitSet::with_capacity(blocks.len()); npoints];
    for (i, b) in blocks.iter().enumerate() {
        let mut set = FixedBitSet::with_capacity(npoints);
        for p in b.points(&field) {
            let idx = point_index(qq, &p).expect("normalized") as usize;
            set.insert(idx);
            through[idx].insert(i);
        }
        points.push(set);
    }
    let u = Universe {
        blocks,
        points,
        through,
        npoints,
    };
    let target = (theta(q, h) + 1) as usize;

    let mut root = Node {
        chosen: Vec::new(),
        covered: FixedBitSet::with_capacity(u.npoints),
        pool: {
            let mut all = FixedBitSet::with_capacity(u.blocks.len());
            all.insert_range(..);
            all
        },
    };
    let seed: Vec<usize> = match &options.seed {
        Some(seed) => seed
            .iter()
            .map(|s| {
                u.blocks.iter().position(|b| b == s).ok_or_else(|| {
                    Error::InvalidParams("seed block is not an (h+1)-subspace of F_q^(2h+1)".into())
                })
            })
            .collect::<Result<_>>()?,
        None => {
            let second = (1..u.blocks.len()).find(|&j| u.meet(0, j) == 1);
            match second {
                Some(j) => vec![0, j],
                None => vec![0],
            }
        }
    };
    for &s in &seed {
        if !root.pool.contains(s) {
            return Ok(DhoSearch::NoneExists { nodes: 0 });
        }
        root = root.add(&u, s);
    }

    let search = Search {
        u: &u,
        target,
        ambient: m,
        field: &field,
        nodes: AtomicUsize::new(0),
    };
    if root.chosen.len() >= target {
        return Ok(if search.spans(&root.chosen) {
            DhoSearch::Found(DualArcCandidate::new(
                field.clone(),
                m,
                root.chosen.iter().map(|&c| u.blocks[c].clone()).collect(),
            )?)
        } else {
            DhoSearch::NoneExists { nodes: 0 }
        });
    }
    let branches: Vec<usize> = root.branch(&u).unwrap_or_else(|| root.pool.ones().collect());

    let done = match &options.state_file {
        Some(p) => read_state(p, qq, h)?,
        None => BTreeSet::new(),
    };
    let mut log = match &options.state_file {
        Some(p) => {
            let fresh = !p.exists();
            let mut f = std::fs::OpenOptions::new().create(true).append(true).open(p)?;
            if fresh {
                writeln!(f, "dho-search v1 q={qq} h={h}")?;
                writeln!(f, "branches {}", branches.len())?;
                f.flush()?;
            }
            Some(std::sync::Mutex::new(f))
        }
        None => None,
    };

    let cutoff = AtomicUsize::new(usize::MAX);
    let indexed: Vec<(usize, usize)> = branches.iter().copied().enumerate().collect();
    let results = limits.map_items(&indexed, |&(i, c)| {
        if done.contains(&i) {
            return Ok(None);
        }
        let hit = search.dfs(&root.add(&u, c), &cutoff, i);
        match &hit {
            Some(_) => {
                cutoff.fetch_min(i, Ordering::Relaxed);
            }
            None if cutoff.load(Ordering::Relaxed) >= i => {
                if let Some(f) = &log {
                    let mut f = f.lock().expect("state file lock");
                    writeln!(f, "done {i}")?;
                    f.flush()?;
                }
            }
            None => {}
        }
        Ok::<_, Error>(hit)
    });
    if let Some(f) = log.take() {
        drop(f);
    }
    for r in results {
        if let Some(chosen) = r? {
            let arc = DualArcCandidate::new(
                field.clone(),
                m,
                chosen.iter().map(|&c| u.blocks[c].clone()).collect(),
            )?;
            if let Some(v) = arc.dho_violation()? {
                return Err(Error::Verification(format!("search returned a non-hyperoval: {v}")));
            }
            return Ok(DhoSearch::Found(arc));
        }
    }
    Ok(DhoSearch::NoneExists {
        nodes: search.nodes.load(Ordering::Relaxed) as u64,
    })
}
