//! Additive codes: `F_q`-linear subspaces of `F_{q^h}^n` given by an
//! `r x n` generator matrix whose rows are `F_q`-independent.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{BaseField, FieldTower, Fqh};
use crate::limits::Limits;
use crate::linalg::Matrix;
use crate::packing::Packing;
use crate::subspace::{point_count, PointWalker, Subspace};

/// An additive `[n, r/h, d]_q^h` code.
#[derive(Clone)]
pub struct AdditiveCode {
    tower: Arc<FieldTower>,
    n: usize,
    generator: Vec<Vec<Fqh>>,
    /// `r x nh` expansion over the basis `1, xi, ..., xi^(h-1)`.
    expanded: Matrix,
    perps: Vec<Subspace>,
    distance: OnceLock<usize>,
    dual_distance: OnceLock<usize>,
}

impl fmt::Debug for AdditiveCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdditiveCode")
            .field("n", &self.n)
            .field("r", &self.r())
            .field("h", &self.h())
            .field("q", &self.q())
            .finish()
    }
}

/// Result of a geometric quotient `C/J`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub code: AdditiveCode,
    /// Rows form a basis of `∩_{j in J} W_j`; row `i` is the message of `C`
    /// whose codeword, punctured at `J`, is generator row `i` of the quotient.
    pub embedding: Matrix,
    /// The deleted positions, 1-based and sorted.
    pub positions: Vec<usize>,
}

/// Outcome of the hyperplane check on `X(C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemReport {
    /// Largest number of `U_i` contained in one hyperplane.
    pub max_count: usize,
    /// Defining covector of a hyperplane attaining `max_count`.
    pub hyperplane: Vec<u32>,
    pub n_minus_d: usize,
}

impl SystemReport {
    pub fn holds(&self) -> bool {
        self.max_count == self.n_minus_d
    }
}

/// Summary of the main invariants of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeProfile {
    pub n: usize,
    pub r: usize,
    pub h: usize,
    pub q: u32,
    pub k: usize,
    pub d: usize,
    pub d_perp: Option<usize>,
    pub qmds: bool,
    pub long: bool,
    pub faithful: bool,
    pub dually_qmds: Option<bool>,
}

impl AdditiveCode {
    /// Builds a code from generator rows over `F_{q^h}`; `n` is needed for
    /// the zero code.
    pub fn new(tower: Arc<FieldTower>, n: usize, rows: Vec<Vec<Fqh>>) -> Result<Self> {
        let h = tower.h();
        let mut expanded = Matrix::zeros(0, n * h);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator row of length {} for a code of length {n}",
                    row.len()
                )));
            }
            let mut flat = Vec::with_capacity(n * h);
            for a in row {
                if a.coords().len() != h {
                    return Err(Error::CoordinateCount {
                        expected: h,
                        got: a.coords().len(),
                    });
                }
                flat.extend_from_slice(&tower.expand(a));
            }
            expanded.push_row(&flat)?;
        }
        Self::from_expanded(tower, n, expanded)
    }

    /// Builds a code from its `r x nh` expansion `G~`.
    pub fn from_expanded(tower: Arc<FieldTower>, n: usize, expanded: Matrix) -> Result<Self> {
        let h = tower.h();
        if expanded.cols() != n * h {
            return Err(Error::DimensionMismatch(format!(
                "expanded generator has {} columns, expected n*h = {}",
                expanded.cols(),
                n * h
            )));
        }
        let gf = tower.base();
        let rank = expanded.rank(gf);
        if rank != expanded.rows() {
            return Err(Error::NotFullRank {
                rank,
                rows: expanded.rows(),
            });
        }
        let generator = expanded
            .iter_rows()
            .map(|row| {
                row.chunks(h)
                    .map(|c| tower.contract(c))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let perps = (0..n)
            .map(|i| expanded.columns(i * h..(i + 1) * h).transpose().kernel(gf))
            .collect();
        Ok(AdditiveCode {
            tower,
            n,
            generator,
            expanded,
            perps,
            distance: OnceLock::new(),
            dual_distance: OnceLock::new(),
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    fn gf(&self) -> &BaseField {
        self.tower.base()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension over `F_q`.
    pub fn r(&self) -> usize {
        self.expanded.rows()
    }

    pub fn h(&self) -> usize {
        self.tower.h()
    }

    pub fn q(&self) -> u32 {
        self.tower.q()
    }

    /// `ceil(r/h)`.
    pub fn k(&self) -> usize {
        self.r().div_ceil(self.h())
    }

    pub fn is_integral(&self) -> bool {
        self.r() % self.h() == 0
    }

    pub fn generator(&self) -> &[Vec<Fqh>] {
        &self.generator
    }

    /// `G~`, the `r x nh` expansion of the generator.
    pub fn expand_generator(&self) -> &Matrix {
        &self.expanded
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n,
            });
        }
        Ok(())
    }

    /// `U_i`: the span in `F_q^r` of the `h` columns of block `i` (1-based).
    pub fn column_space(&self, i: usize) -> Result<Subspace> {
        self.check_index(i)?;
        let h = self.h();
        Ok(Subspace::row_space(
            self.gf(),
            &self.expanded.columns((i - 1) * h..i * h).transpose(),
        ))
    }

    /// `W_i = U_i^⊥` (1-based).
    pub fn block_perp(&self, i: usize) -> Result<&Subspace> {
        self.check_index(i)?;
        Ok(&self.perps[i - 1])
    }

    pub fn block_perps(&self) -> &[Subspace] {
        &self.perps
    }

    /// `X(C)`, the multiset of block column spaces in position order.
    pub fn x_multiset(&self) -> Vec<Subspace> {
        (1..=self.n)
            .map(|i| self.column_space(i).expect("index in range"))
            .collect()
    }

    /// `T(C)` as a packing of `F_q^r`.
    pub fn t_multiset(&self) -> Packing {
        Packing::new(self.tower.base().clone(), self.r(), self.perps.clone())
            .expect("block perps live in F_q^r")
    }

    fn check_message(&self, u: &[u32]) -> Result<()> {
        if u.len() != self.r() {
            return Err(Error::DimensionMismatch(format!(
                "message of length {} for a code of F_q-dimension {}",
                u.len(),
                self.r()
            )));
        }
        Ok(())
    }

    /// The codeword `uG`, computed over `F_{q^h}`.
    pub fn codeword(&self, u: &[u32]) -> Result<Vec<Fqh>> {
        self.check_message(u)?;
        let mut c = vec![self.tower.zero(); self.n];
        for (row, &ui) in self.generator.iter().zip(u) {
            if ui == 0 {
                continue;
            }
            for (cj, g) in c.iter_mut().zip(row) {
                *cj = self.tower.add(cj, &self.tower.scale(ui, g));
            }
        }
        Ok(c)
    }

    /// Weight of `uG` as `n - #{i : u in W_i}`.
    pub fn weight(&self, u: &[u32]) -> Result<usize> {
        self.check_message(u)?;
        let mut inside = 0;
        for w in &self.perps {
            if w.contains(self.gf(), u)? {
                inside += 1;
            }
        }
        Ok(self.n - inside)
    }

    /// Largest number of zero blocks of `uG` over projective `u`, with the
    /// first point (in point order) attaining it.
    fn max_zero_blocks(&self, limits: &Limits) -> Result<(usize, Vec<u32>)> {
        let r = self.r();
        if r == 0 {
            return Err(Error::InvalidParams(
                "the zero code has no minimum distance".into(),
            ));
        }
        let total = point_count(self.q() as u64, r);
        limits.check_vectors(&format!("projective points of F_{}^{r}", self.q()), total)?;
        let h = self.h();
        let n = self.n;
        let gf = self.gf();
        let parts = limits.map_ranges(total as u64, |range| {
            let mut walker = PointWalker::new(gf, &self.expanded, range.start).expect("in range");
            let mut best = (0usize, range.start);
            for idx in range.clone() {
                let image = walker.image();
                let zeros = (0..n)
                    .filter(|&i| image[i * h..(i + 1) * h].iter().all(|&x| x == 0))
                    .count();
                if zeros > best.0 || idx == range.start {
                    best = (zeros, idx);
                }
                if idx + 1 < range.end {
                    walker.advance();
                }
            }
            best
        });
        let mut best = parts[0];
        for &p in &parts[1..] {
            if p.0 > best.0 {
                best = p;
            }
        }
        let u = crate::subspace::point_at(self.q(), r, best.1).expect("in range");
        Ok((best.0, u))
    }

    /// Minimum distance by exhaustive enumeration of projective messages.
    /// Memoized.
    pub fn min_distance(&self, limits: &Limits) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        let (zeros, _) = self.max_zero_blocks(limits)?;
        let d = self.n - zeros;
        let _ = self.distance.set(d);
        Ok(d)
    }

    /// Minimum distance together with a message attaining it.
    pub fn min_weight_message(&self, limits: &Limits) -> Result<(usize, Vec<u32>)> {
        let (zeros, u) = self.max_zero_blocks(limits)?;
        let d = self.n - zeros;
        let _ = self.distance.set(d);
        Ok((d, u))
    }

    /// `(n - d + 1) - ceil(r/h)`, nonnegative by the Singleton-type bound.
    pub fn singleton_defect(&self, limits: &Limits) -> Result<i64> {
        let d = self.min_distance(limits)?;
        Ok((self.n as i64 - d as i64 + 1) - self.k() as i64)
    }

    pub fn is_qmds(&self, limits: &Limits) -> Result<bool> {
        Ok(self.singleton_defect(limits)? == 0)
    }

    /// QMDS with `n > q^h + 1`.
    pub fn is_long(&self, limits: &Limits) -> Result<bool> {
        Ok(self.is_qmds(limits)? && self.n as u128 > self.tower.order() as u128 + 1)
    }

    /// Every `U_i` has dimension `h`.
    pub fn is_faithful(&self) -> bool {
        let r = self.r();
        let h = self.h();
        r >= h && self.perps.iter().all(|w| w.dim() == r - h)
    }

    /// The trace dual `{v : Tr(<u, v>) = 0 for all u in C}`.
    pub fn dual(&self) -> AdditiveCode {
        let h = self.h();
        let gf = self.gf();
        let mut gram = Matrix::zeros(h, h);
        for a in 0..h {
            for b in 0..h {
                gram.set(a, b, self.tower.trace_form(a, b));
            }
        }
        let mut twisted = Matrix::zeros(self.r(), self.n * h);
        for i in 0..self.n {
            let block = self
                .expanded
                .columns(i * h..(i + 1) * h)
                .mul(gf, &gram)
                .expect("h x h gram");
            for row in 0..self.r() {
                twisted.row_mut(row)[i * h..(i + 1) * h].copy_from_slice(block.row(row));
            }
        }
        let kernel = twisted.kernel(gf);
        AdditiveCode::from_expanded(self.tower.clone(), self.n, kernel.basis().clone())
            .expect("a kernel basis has full rank")
    }

    /// Equality of codeword sets.
    pub fn same_code(&self, other: &AdditiveCode) -> bool {
        self.tower == other.tower
            && self.n == other.n
            && Subspace::row_space(self.gf(), &self.expanded)
                == Subspace::row_space(other.gf(), &other.expanded)
    }

    /// Rank of the columns of `G~` in the given (0-based) blocks.
    fn block_rank(&self, blocks: &[usize]) -> usize {
        let h = self.h();
        let mut cols = Matrix::zeros(0, self.r());
        for &b in blocks {
            let t = self.expanded.columns(b * h..(b + 1) * h).transpose();
            cols = cols.vstack(&t).expect("same width");
        }
        cols.rank(self.gf())
    }

    /// Minimum distance of the trace dual: the smallest `|J|` whose blocks
    /// of `G~` are linearly dependent (rank below `|J| h`).
    ///
    /// Memoized. The number of examined block subsets is charged against
    /// the vector cap.
    pub fn dual_distance(&self, limits: &Limits) -> Result<usize> {
        if let Some(&d) = self.dual_distance.get() {
            return Ok(d);
        }
        let h = self.h();
        if self.r() == self.n * h {
            return Err(Error::InvalidParams(
                "the dual of the full space is the zero code".into(),
            ));
        }
        let mut examined: u128 = 0;
        for size in 1..=self.n {
            let hit = for_each_subset(self.n, size, &mut |set| {
                examined += 1;
                if examined > limits.vector_cap as u128 {
                    return Some(Err(Error::cap("block subsets", examined, limits.vector_cap)));
                }
                (self.block_rank(set) < size * h).then_some(Ok(()))
            });
            match hit {
                Some(Ok(())) => {
                    let _ = self.dual_distance.set(size);
                    return Ok(size);
                }
                Some(Err(e)) => return Err(e),
                None => {}
            }
        }
        unreachable!("the full block set is dependent when r < nh")
    }

    /// Condition (b) of the dually-QMDS characterization: for every block set
    /// `J` with `|J| <= k-1`, `dim(∩_J W_j) = r - |J| h`. Returns the first
    /// violating `J` (1-based, smallest size first, then lexicographic).
    pub fn condition_b(&self) -> Result<Option<Vec<usize>>> {
        let r = self.r() as i64;
        let h = self.h() as i64;
        let gf = self.gf();
        let top = self.k().saturating_sub(1);
        for size in 1..=top.min(self.n) {
            let mut witness = None;
            let mut stack: Vec<Subspace> = vec![Subspace::full(self.r())];
            let mut chosen: Vec<usize> = Vec::new();
            dfs_intersections(
                &self.perps,
                gf,
                size,
                0,
                &mut chosen,
                &mut stack,
                &mut |set, inter| {
                    if inter.dim() as i64 != r - set.len() as i64 * h {
                        witness = Some(set.iter().map(|j| j + 1).collect());
                        true
                    } else {
                        false
                    }
                },
            )?;
            if witness.is_some() {
                return Ok(witness);
            }
        }
        Ok(None)
    }

    /// Whether `C` and its trace dual are both QMDS.
    ///
    /// Uses condition (b) when `C` is faithful, QMDS and `d > 1`; otherwise
    /// computes the dual distance directly.
    pub fn is_dually_qmds(&self, limits: &Limits) -> Result<bool> {
        if !self.is_qmds(limits)? {
            return Ok(false);
        }
        if self.is_faithful() && self.min_distance(limits)? > 1 {
            return Ok(self.condition_b()?.is_none());
        }
        self.dual_is_qmds_direct(limits)
    }

    /// The dual's distance compared with its Singleton bound, without
    /// condition (b).
    pub fn dual_is_qmds_direct(&self, limits: &Limits) -> Result<bool> {
        let h = self.h();
        let dual_r = self.n * h - self.r();
        if dual_r == 0 {
            return Ok(false);
        }
        let dual_k = dual_r.div_ceil(h);
        Ok(self.dual_distance(limits)? == self.n - dual_k + 1)
    }

    /// The geometric quotient `C/J` for 1-based positions `J`.
    pub fn geometric_quotient(&self, positions: &[usize]) -> Result<Quotient> {
        let mut positions = positions.to_vec();
        positions.sort_unstable();
        positions.dedup();
        for &j in &positions {
            self.check_index(j)?;
        }
        let gf = self.gf();
        let mut inter = Subspace::full(self.r());
        for &j in &positions {
            inter = inter.intersect(gf, &self.perps[j - 1])?;
        }
        let embedding = inter.basis().clone();
        let image = embedding.mul(gf, &self.expanded)?;
        let h = self.h();
        let keep: Vec<usize> = (1..=self.n).filter(|i| !positions.contains(i)).collect();
        let mut expanded = Matrix::zeros(image.rows(), keep.len() * h);
        for row in 0..image.rows() {
            for (slot, &i) in keep.iter().enumerate() {
                expanded.row_mut(row)[slot * h..(slot + 1) * h]
                    .copy_from_slice(&image.row(row)[(i - 1) * h..i * h]);
            }
        }
        let code = AdditiveCode::from_expanded(self.tower.clone(), keep.len(), expanded)?;
        Ok(Quotient {
            code,
            embedding,
            positions,
        })
    }

    /// `dim(C/J) >= h`.
    pub fn is_non_obliterating(&self, positions: &[usize]) -> Result<bool> {
        Ok(self.geometric_quotient(positions)?.code.r() >= self.h())
    }

    /// Checks that `X(C)` is an `h-(n, r, d)_q` system: every hyperplane
    /// contains at most `n - d` of the `U_i`, with equality somewhere.
    ///
    /// Hyperplanes are enumerated through their defining covectors `a`, and
    /// `U_i ⊆ a^⊥` is tested as `a ∈ W_i`.
    pub fn verify_system(&self, limits: &Limits) -> Result<SystemReport> {
        let d = self.min_distance(limits)?;
        let r = self.r();
        let gf = self.gf();
        let total = point_count(self.q() as u64, r);
        limits.check_vectors(&format!("hyperplanes of F_{}^{r}", self.q()), total)?;
        let q = self.q();
        let parts = limits.map_ranges(total as u64, |range| {
            let mut best = (0usize, range.start);
            for idx in range.clone() {
                let a = crate::subspace::point_at(q, r, idx).expect("in range");
                let count = self
                    .perps
                    .iter()
                    .filter(|w| w.contains(gf, &a).expect("lengths match"))
                    .count();
                if count > best.0 || idx == range.start {
                    best = (count, idx);
                }
            }
            best
        });
        let mut best = parts[0];
        for &p in &parts[1..] {
            if p.0 > best.0 {
                best = p;
            }
        }
        Ok(SystemReport {
            max_count: best.0,
            hyperplane: crate::subspace::point_at(q, r, best.1).expect("in range"),
            n_minus_d: self.n - d,
        })
    }

    /// Builds the code whose `T(C)` is the given packing: block `i` of `G~`
    /// holds the RREF basis of `W_i^⊥`, zero-padded to `h` columns.
    pub fn from_packing(tower: Arc<FieldTower>, packing: &Packing) -> Result<Self> {
        let h = tower.h();
        let r = packing.ambient();
        if *packing.field() != *tower.base() {
            return Err(Error::InvalidParams(
                "packing and tower use different base fields".into(),
            ));
        }
        let gf = tower.base().clone();
        let n = packing.len();
        let mut expanded = Matrix::zeros(r, n * h);
        for (i, block) in packing.blocks().iter().enumerate() {
            if block.dim() + h < r {
                return Err(Error::InvalidParams(format!(
                    "block {} has dimension {} < r - h = {}",
                    i + 1,
                    block.dim(),
                    r - h
                )));
            }
            let gens = block.perp(&gf);
            for (c, v) in gens.basis().iter_rows().enumerate() {
                for (row, &x) in v.iter().enumerate() {
                    expanded.set(row, i * h + c, x);
                }
            }
        }
        Self::from_expanded(tower, n, expanded)
    }

    /// `[n, r/h, d]_q^h` with `r/h` in lowest terms; `d` is shown as `?`
    /// when not supplied.
    pub fn type_string(&self, d: Option<usize>) -> String {
        let d = d.map_or_else(|| "?".to_string(), |d| d.to_string());
        format!(
            "[{}, {}, {}]_{}^{}",
            self.n,
            fraction(self.r(), self.h()),
            d,
            self.q(),
            self.h()
        )
    }

    /// Distance, dual distance and the derived predicates.
    pub fn profile(&self, limits: &Limits) -> Result<CodeProfile> {
        let d = self.min_distance(limits)?;
        let full = self.r() == self.n * self.h();
        let d_perp = if full {
            None
        } else {
            match self.dual_distance(limits) {
                Ok(v) => Some(v),
                Err(Error::CapExceeded { .. }) => None,
                Err(e) => return Err(e),
            }
        };
        let qmds = self.is_qmds(limits)?;
        let dually_qmds = match self.is_dually_qmds(limits) {
            Ok(v) => Some(v),
            Err(Error::CapExceeded { .. }) => None,
            Err(Error::InvalidParams(_)) if full => Some(false),
            Err(e) => return Err(e),
        };
        Ok(CodeProfile {
            n: self.n,
            r: self.r(),
            h: self.h(),
            q: self.q(),
            k: self.k(),
            d,
            d_perp,
            qmds,
            long: self.is_long(limits)?,
            faithful: self.is_faithful(),
            dually_qmds,
        })
    }
}

/// `a/b` in lowest terms, or an integer when `b | a`.
pub fn fraction(a: usize, b: usize) -> String {
    let g = gcd(a, b).max(1);
    if b / g == 1 {
        format!("{}", a / g)
    } else {
        format!("{}/{}", a / g, b / g)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Calls `f` on every `size`-subset of `0..n` in lexicographic order until it
/// returns `Some`.
fn for_each_subset<T>(
    n: usize,
    size: usize,
    f: &mut dyn FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    if size > n {
        return None;
    }
    let mut set: Vec<usize> = (0..size).collect();
    loop {
        if let Some(t) = f(&set) {
            return Some(t);
        }
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if set[i] < n - size + i {
                set[i] += 1;
                for j in i + 1..size {
                    set[j] = set[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Depth-first walk over `size`-subsets of the blocks in lexicographic
/// order, carrying the running intersection. Stops when `visit` returns true.
fn dfs_intersections(
    perps: &[Subspace],
    gf: &BaseField,
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    stack: &mut Vec<Subspace>,
    visit: &mut dyn FnMut(&[usize], &Subspace) -> bool,
) -> Result<bool> {
    if chosen.len() == size {
        return Ok(visit(chosen, stack.last().expect("non-empty")));
    }
    let remaining = size - chosen.len();
    for j in start..=perps.len().saturating_sub(remaining) {
        if perps.len() < remaining {
            break;
        }
        let next = stack.last().expect("non-empty").intersect(gf, &perps[j])?;
        stack.push(next);
        chosen.push(j);
        let stop = dfs_intersections(perps, gf, size, j + 1, chosen, stack, visit)?;
        chosen.pop();
        stack.pop();
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A rational bound `num/den` together with its floor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub floor: u128,
    pub num: u128,
    pub den: u128,
}

impl Bound {
    fn new(num: u128, den: u128) -> Self {
        Bound {
            floor: num / den,
            num,
            den,
        }
    }

    /// Whether the bound is an integer.
    pub fn is_exact(&self) -> bool {
        self.num % self.den == 0
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.floor)
        } else {
            let g = gcd_u128(self.num, self.den);
            write!(f, "{} (exact {}/{})", self.floor, self.num / g, self.den / g)
        }
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

fn pow_checked(q: u64, e: usize) -> Result<u128> {
    (q as u128)
        .checked_pow(e as u32)
        .ok_or_else(|| Error::InvalidParams(format!("{q}^{e} overflows")))
}

/// Upper bound on the length of a QMDS `[n, r/h]_q^h` code with
/// `r = (k-1)h + r0`: `k - 2 + q^h + (q^h - 1)/(q^r0 - 1)`.
///
/// When `r0` does not divide `h` the last term is not an integer; the
/// returned [`Bound`] keeps both the floor and the exact value.
pub fn qmds_length_bound(q: u64, h: usize, k: usize, r0: usize) -> Result<Bound> {
    if r0 == 0 || r0 > h || k == 0 || q < 2 {
        return Err(Error::InvalidParams(format!(
            "need q >= 2, k >= 1 and 1 <= r0 <= h, got q={q}, k={k}, r0={r0}, h={h}"
        )));
    }
    let qh = pow_checked(q, h)?;
    let den = pow_checked(q, r0)? - 1;
    let whole = k as u128 + qh - 2;
    Ok(Bound::new(whole * den + qh - 1, den))
}

/// Upper bound on `k` for a fractional dually QMDS code:
/// `q^h + (q^h - 1)/(q^r0 - 1) - 1`.
pub fn dually_k_bound(q: u64, h: usize, r0: usize) -> Result<Bound> {
    if r0 == 0 || r0 > h || q < 2 {
        return Err(Error::InvalidParams(format!(
            "need q >= 2 and 1 <= r0 <= h, got q={q}, r0={r0}, h={h}"
        )));
    }
    let qh = pow_checked(q, h)?;
    let den = pow_checked(q, r0)? - 1;
    Ok(Bound::new((qh - 1) * den + qh - 1, den))
}

/// `r0` in `r = (k-1)h + r0` with `1 <= r0 <= h`.
pub fn r0_of(r: usize, h: usize) -> usize {
    r - (r.div_ceil(h).max(1) - 1) * h
}
