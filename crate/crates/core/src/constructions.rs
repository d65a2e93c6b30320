//! Long QMDS families: `A` (`n = q^h + 2`), `B` (`n = q^h + 3`), `Bbar`
//! (`k = 3`, `n = q^h + g`) and spread codes (`k = 2`).
//!
//! Vectors of `F_q^r` are read as `(x_1, ..., x_{k-1}, z_1, ..., z_r0)` with
//! `x_i in F_{q^h}` occupying coordinates `(i-1)h .. ih` (over the basis
//! `1, xi, ..., xi^(h-1)`) and the `z_j` at the end.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::code::{qmds_length_bound, AdditiveCode, Bound};
use crate::error::{Error, Result};
use crate::field::{BaseField, FieldTower, Fqh};
use crate::limits::Limits;
use crate::linalg::Matrix;
use crate::packing::{default_partial_spread, Packing};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    Bbar,
    Spread,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::Bbar => "Bbar",
            Family::Spread => "spread",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "Bbar" | "bbar" | "Bbar3" => Ok(Family::Bbar),
            "spread" | "Spread" | "omega" => Ok(Family::Spread),
            _ => Err(Error::InvalidParams(format!("unknown family {s:?}"))),
        }
    }
}

/// Parameters of a construction. `r1`, `r2` only matter for `B`/`Bbar`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructionParams {
    pub q: u64,
    pub h: usize,
    pub k: usize,
    pub r0: usize,
    pub r1: Option<usize>,
    pub r2: Option<usize>,
}

impl ConstructionParams {
    pub fn new(q: u64, h: usize, k: usize, r0: usize) -> Self {
        ConstructionParams {
            q,
            h,
            k,
            r0,
            r1: None,
            r2: None,
        }
    }

    pub fn with_split(mut self, r1: usize, r2: usize) -> Self {
        self.r1 = Some(r1);
        self.r2 = Some(r2);
        self
    }

    /// `r = (k-1)h + r0`.
    pub fn r(&self) -> usize {
        (self.k - 1) * self.h + self.r0
    }

    fn q_pow_h(&self) -> u128 {
        (self.q as u128).saturating_pow(self.h as u32)
    }

    fn tower(&self) -> Result<Arc<FieldTower>> {
        let base = BaseField::with_order(self.q)?;
        Ok(Arc::new(FieldTower::over(Arc::new(base), self.h)?))
    }

    /// Preconditions of family `A`: `h >= 2`, `2 <= k <= q^h - 1`,
    /// `1 <= r0 <= h/2`.
    pub fn validate_a(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if self.h < 2 {
            return bad(format!("family A needs h >= 2, got {}", self.h));
        }
        if self.k < 2 || self.k as u128 > self.q_pow_h() - 1 {
            return bad(format!("family A needs 2 <= k <= q^h - 1, got k={}", self.k));
        }
        if self.r0 == 0 || 2 * self.r0 > self.h {
            return bad(format!("family A needs 1 <= r0 <= h/2, got r0={}", self.r0));
        }
        Ok(())
    }

    /// The default `r2`: the largest value `<= floor(h/2)` with
    /// `h + r0 - r2 <= floor(2h/3)`.
    pub fn default_r2(h: usize, r0: usize) -> Option<usize> {
        (1..=h / 2).rev().find(|&r2| h + r0 - r2 <= 2 * h / 3)
    }

    /// Resolves `(r1, r2)` and checks the preconditions shared by `B` and
    /// `Bbar`: `h >= 6`, `h != 7`, `1 <= r0 <= h/6`, `r1 <= 2h/3`,
    /// `1 <= r2 <= h/2`, `r1 + r2 = h + r0`.
    pub fn resolve_split(&self) -> Result<(usize, usize)> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        let h = self.h;
        if h < 6 || h == 7 {
            return bad(format!("families B and Bbar need h >= 6 and h != 7, got h={h}"));
        }
        if self.r0 == 0 || 6 * self.r0 > h {
            return bad(format!("families B and Bbar need 1 <= r0 <= h/6, got r0={}", self.r0));
        }
        let r2 = match (self.r1, self.r2) {
            (_, Some(r2)) => r2,
            (Some(r1), None) if r1 <= h + self.r0 => h + self.r0 - r1,
            (Some(r1), None) => return bad(format!("r1={r1} exceeds h + r0")),
            (None, None) => match Self::default_r2(h, self.r0) {
                Some(r2) => r2,
                None => return bad(format!("no admissible (r1, r2) for h={h}, r0={}", self.r0)),
            },
        };
        if r2 > h + self.r0 {
            return bad(format!("r2={r2} exceeds h + r0"));
        }
        let r1 = self.r1.unwrap_or(h + self.r0 - r2);
        if r1 + r2 != h + self.r0 {
            return bad(format!("need r1 + r2 = h + r0, got {r1} + {r2} != {}", h + self.r0));
        }
        if 3 * r1 > 2 * h {
            return bad(format!("need r1 <= 2h/3, got r1={r1}"));
        }
        if r2 == 0 || 2 * r2 > h {
            return bad(format!("need 1 <= r2 <= h/2, got r2={r2}"));
        }
        Ok((r1, r2))
    }

    /// Preconditions of family `B` (also `3 <= k <= q^h - 1`).
    pub fn validate_b(&self) -> Result<(usize, usize)> {
        let split = self.resolve_split()?;
        if self.k < 3 || self.k as u128 > self.q_pow_h() - 1 {
            return Err(Error::InvalidParams(format!(
                "family B needs 3 <= k <= q^h - 1, got k={}",
                self.k
            )));
        }
        Ok(split)
    }

    /// Preconditions of spread codes: `k = 2`, `1 <= r0 < h`.
    pub fn validate_spread(&self) -> Result<()> {
        if self.k != 2 {
            return Err(Error::InvalidParams(format!("spread codes have k = 2, got {}", self.k)));
        }
        if self.r0 == 0 || self.r0 >= self.h {
            return Err(Error::InvalidParams(format!(
                "spread codes need 1 <= r0 < h, got r0={}, h={}",
                self.r0, self.h
            )));
        }
        Ok(())
    }
}

/// A verified construction.
#[derive(Clone, Debug)]
pub struct Construction {
    pub family: Family,
    pub params: ConstructionParams,
    /// The `(k-1)`-packing `T(C)`.
    pub packing: Packing,
    pub code: AdditiveCode,
    pub lambda: usize,
    /// `None` when exhaustive distance computation exceeds the cap.
    pub distance: Option<usize>,
    pub length_bound: Bound,
    /// Family specific facts, as `key=value` pairs.
    pub details: Vec<(String, String)>,
}

impl Construction {
    pub fn type_string(&self) -> String {
        self.code.type_string(self.distance)
    }

    /// Whether the exhaustively computed distance reaches `n - k + 1`.
    pub fn is_qmds(&self) -> Option<bool> {
        self.distance.map(|d| d + self.code.k() == self.code.n() + 1)
    }

    pub fn is_long(&self) -> Option<bool> {
        let long = self.code.n() as u128 > self.params.q_pow_h() + 1;
        self.is_qmds().map(|q| q && long)
    }
}

/// The `F_q`-linear form `(x, z) -> sum alpha^(i-1) x_i + alpha^(k-1) sum
/// xi^(j-1) z_j`, as an `r x h` matrix (row `c` is the image of the `c`-th
/// unit vector). `0^0` is taken as 1.
fn phi_alpha(tower: &FieldTower, k: usize, r0: usize, alpha: &Fqh) -> Matrix {
    let h = tower.h();
    let r = (k - 1) * h + r0;
    let mut m = Matrix::zeros(r, h);
    let mut power = tower.one();
    for i in 0..k - 1 {
        for b in 0..h {
            let img = tower.mul(&power, &tower.basis(b));
            m.row_mut(i * h + b).copy_from_slice(&tower.expand(&img));
        }
        power = tower.mul(&power, alpha);
    }
    for j in 0..r0 {
        let img = tower.mul(&power, &tower.basis(j));
        m.row_mut((k - 1) * h + j).copy_from_slice(&tower.expand(&img));
    }
    m
}

/// `W_alpha`, the kernel of [`phi_alpha`]; it has dimension `(k-2)h + r0`.
pub fn w_alpha(tower: &FieldTower, k: usize, r0: usize, alpha: &Fqh) -> Result<Subspace> {
    let h = tower.h();
    if k < 2 || r0 == 0 || r0 > h {
        return Err(Error::InvalidParams(format!(
            "W_alpha needs k >= 2 and 1 <= r0 <= h, got k={k}, r0={r0}"
        )));
    }
    let m = phi_alpha(tower, k, r0, alpha);
    Ok(m.transpose().kernel(tower.base()))
}

/// Span of the first `free` coordinates together with, for each
/// `(offset, part)`, the vectors of `part ⊆ F_q^h` placed at `offset`.
fn block_with_parts(
    gf: &BaseField,
    r: usize,
    free: usize,
    parts: &[(usize, &Subspace)],
) -> Result<Subspace> {
    let mut rows = Matrix::zeros(0, r);
    for c in 0..free {
        let mut v = vec![0; r];
        v[c] = 1;
        rows.push_row(&v)?;
    }
    for &(offset, part) in parts {
        for b in part.basis().iter_rows() {
            let mut v = vec![0; r];
            v[offset..offset + b.len()].copy_from_slice(b);
            rows.push_row(&v)?;
        }
    }
    Ok(Subspace::row_space(gf, &rows))
}

fn alpha_blocks(tower: &FieldTower, k: usize, r0: usize) -> Result<Vec<Subspace>> {
    tower
        .elements()
        .map(|alpha| w_alpha(tower, k, r0, &alpha))
        .collect()
}

/// Verifies the packing, builds the code and checks distance and bound.
fn finish(
    family: Family,
    params: ConstructionParams,
    tower: Arc<FieldTower>,
    packing: Packing,
    details: Vec<(String, String)>,
    limits: &Limits,
) -> Result<Construction> {
    let lambda = params.k - 1;
    let check = packing.verify_lambda_packing(lambda, limits)?;
    if let Some(w) = &check.subset_witness {
        return Err(Error::Verification(format!(
            "family {family}: blocks {w:?} meet nontrivially, not a {lambda}-packing"
        )));
    }
    let code = AdditiveCode::from_packing(tower, &packing)?;
    if code.t_multiset().multiset() != packing.multiset() {
        return Err(Error::Verification(format!(
            "family {family}: T(C) differs from the packing"
        )));
    }
    let distance = match code.min_distance(limits) {
        Ok(d) => Some(d),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let n = code.n();
    if let Some(d) = distance {
        if d + code.k() != n + 1 {
            return Err(Error::Verification(format!(
                "family {family}: distance {d} differs from n - k + 1 = {}",
                n + 1 - code.k()
            )));
        }
    }
    let length_bound = qmds_length_bound(params.q, params.h, params.k, params.r0)?;
    if n as u128 > length_bound.floor {
        return Err(Error::Verification(format!(
            "family {family}: n = {n} exceeds the length bound {length_bound}"
        )));
    }
    Ok(Construction {
        family,
        params,
        packing,
        code,
        lambda,
        distance,
        length_bound,
        details,
    })
}

/// Family `A`: `{W_alpha} ∪ {W_inf1, W_inf2}`, a `(k-1)`-packing of size
/// `q^h + 2`. `S_1`, `S_2` are the coordinate spans of `xi^0..xi^(r0-1)` and
/// `xi^r0..xi^(2r0-1)` inside `x_{k-1}`.
pub fn construct_a(params: ConstructionParams, limits: &Limits) -> Result<Construction> {
    params.validate_a()?;
    let tower = params.tower()?;
    let gf = tower.base().clone();
    let (h, k, r0) = (params.h, params.k, params.r0);
    let r = params.r();
    let mut blocks = alpha_blocks(&tower, k, r0)?;
    let s1 = Subspace::coordinate(h, 0..r0);
    let s2 = Subspace::coordinate(h, r0..2 * r0);
    for s in [&s1, &s2] {
        blocks.push(block_with_parts(&gf, r, (k - 2) * h, &[((k - 2) * h, s)])?);
    }
    let packing = Packing::new(gf, r, blocks)?;
    finish(Family::A, params, tower, packing, Vec::new(), limits)
}

/// The three `Y_i` of family `B`: `Y_1` = first `r1` coordinates, `Y_2` =
/// last `r1`, `Y_3` = first `r1` coordinates outside `Y_1 ∩ Y_2`.
pub fn default_ys(h: usize, r1: usize) -> [Subspace; 3] {
    let overlap = (h - r1)..r1;
    let y3: Vec<usize> = (0..h).filter(|c| !overlap.contains(c)).take(r1).collect();
    [
        Subspace::coordinate(h, 0..r1),
        Subspace::coordinate(h, h - r1..h),
        Subspace::coordinate(h, y3),
    ]
}

/// Family `B`: `{W_alpha} ∪ {W_inf1, W_inf2, W_inf3}`, a `(k-1)`-packing of
/// size `q^h + 3`.
pub fn construct_b(params: ConstructionParams, limits: &Limits) -> Result<Construction> {
    let (r1, r2) = params.validate_b()?;
    let params = params.with_split(r1, r2);
    let tower = params.tower()?;
    let gf = tower.base().clone();
    let (h, k, r0) = (params.h, params.k, params.r0);
    let r = params.r();
    let ys = default_ys(h, r1);
    let spread = default_partial_spread(gf.clone(), h, r2)?;
    if spread.len() < 3 {
        return Err(Error::InvalidParams(format!(
            "the partial {r2}-spread of F_q^{h} has fewer than 3 blocks"
        )));
    }
    let mut blocks = alpha_blocks(&tower, k, r0)?;
    for (y, s) in ys.iter().zip(spread.blocks()) {
        blocks.push(block_with_parts(
            &gf,
            r,
            (k - 3) * h,
            &[((k - 3) * h, y), ((k - 2) * h, s)],
        )?);
    }
    let packing = Packing::new(gf, r, blocks)?;
    let details = vec![("r1".into(), r1.to_string()), ("r2".into(), r2.to_string())];
    finish(Family::B, params, tower, packing, details, limits)
}

/// Largest subfamily (up to `target` members) of `family` whose members
/// meet trivially three at a time, by exhaustive branch and bound within a
/// node budget. Returns the indices and whether the search was complete.
pub fn triple_trivial_subfamily(
    gf: &BaseField,
    family: &[Subspace],
    target: usize,
    node_budget: u64,
) -> (Vec<usize>, bool) {
    let annihilators: Vec<Matrix> = family.iter().map(|b| b.perp(gf).basis().clone()).collect();
    let n = family.len();
    // pair[a][b] = Y_a ∩ Y_b for a < b
    let mut pair: Vec<Vec<Option<Subspace>>> = vec![vec![None; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            pair[a][b] = Some(family[a].restrict(gf, &annihilators[b]));
        }
    }
    let ok = |a: usize, b: usize, c: usize| {
        let (a, b) = (a.min(b), a.max(b));
        pair[a][b]
            .as_ref()
            .expect("a < b")
            .restrict(gf, &annihilators[c])
            .is_zero()
    };

    struct State {
        best: Vec<usize>,
        nodes: u64,
        complete: bool,
    }
    fn grow(
        chosen: &mut Vec<usize>,
        cands: &[usize],
        target: usize,
        budget: u64,
        st: &mut State,
        ok: &dyn Fn(usize, usize, usize) -> bool,
    ) {
        if chosen.len() > st.best.len() {
            st.best = chosen.clone();
        }
        if st.best.len() >= target {
            return;
        }
        for (pos, &c) in cands.iter().enumerate() {
            if chosen.len() + cands.len() - pos <= st.best.len() {
                return;
            }
            st.nodes += 1;
            if st.nodes > budget {
                st.complete = false;
                return;
            }
            let next: Vec<usize> = cands[pos + 1..]
                .iter()
                .copied()
                .filter(|&d| chosen.iter().all(|&a| ok(a, c, d)))
                .collect();
            chosen.push(c);
            grow(chosen, &next, target, budget, st, ok);
            chosen.pop();
            if st.best.len() >= target || !st.complete {
                return;
            }
        }
    }

    let mut st = State {
        best: Vec::new(),
        nodes: 0,
        complete: true,
    };
    let all: Vec<usize> = (0..n).collect();
    grow(&mut Vec::new(), &all, target, node_budget, &mut st, &ok);
    let complete = st.complete || st.best.len() >= target;
    (st.best, complete)
}

/// Options for [`construct_bbar`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BbarOptions {
    /// Use only the first `g` blocks of `Omega_2`. `None` means all of them,
    /// i.e. `n = q^h + #Omega_2`.
    pub g: Option<usize>,
    /// Node budget of the `Omega_1` search (default 5 000 000).
    pub search_budget: Option<u64>,
}

/// Family `Bbar` (`k = 3`): `{W_alpha} ∪ {W_inf_i : i <= g}` with
/// `W_inf_i = (y, s, 0)`, `y in Y_i ∈ Omega_1`, `s in S_i ∈ Omega_2`.
///
/// `Omega_2` is the default partial `r2`-spread of `F_q^h`. `Omega_1` is
/// searched among `Gamma^⊥` for the default partial `(h - r1)`-spread
/// `Gamma`: a subfamily of size `g` meeting trivially three at a time is
/// required, and its absence is reported as a verification error.
pub fn construct_bbar(
    params: ConstructionParams,
    options: BbarOptions,
    limits: &Limits,
) -> Result<Construction> {
    if params.k != 3 {
        return Err(Error::InvalidParams(format!("family Bbar has k = 3, got {}", params.k)));
    }
    let (r1, r2) = params.resolve_split()?;
    let params = params.with_split(r1, r2);
    let tower = params.tower()?;
    let gf = tower.base().clone();
    let (h, r0) = (params.h, params.r0);
    let r = params.r();
    let omega2 = default_partial_spread(gf.clone(), h, r2)?;
    let g = options.g.unwrap_or(omega2.len());
    if g > omega2.len() || g < 3 {
        return Err(Error::InvalidParams(format!(
            "g must lie in 3..={}, got {g}",
            omega2.len()
        )));
    }
    let gamma = default_partial_spread(gf.clone(), h, h - r1)?;
    let gamma_perp: Vec<Subspace> = gamma.blocks().iter().map(|u| u.perp(&gf)).collect();
    let budget = options.search_budget.unwrap_or(5_000_000);
    let (found, complete) = triple_trivial_subfamily(&gf, &gamma_perp, g, budget);
    if found.len() < g {
        return Err(Error::Verification(format!(
            "Omega_1: the largest subfamily of Gamma^perp ({} subspaces of dimension {r1}) \
             meeting trivially three at a time has {} members{}, but g = #Omega_2 = {g} are needed",
            gamma_perp.len(),
            found.len(),
            if complete { " (exhaustive)" } else { " (search budget exhausted)" }
        )));
    }
    let mut blocks = alpha_blocks(&tower, 3, r0)?;
    for (&yi, s) in found.iter().zip(omega2.blocks()).take(g) {
        blocks.push(block_with_parts(&gf, r, 0, &[(0, &gamma_perp[yi]), (h, s)])?);
    }
    let packing = Packing::new(gf, r, blocks)?;
    let details = vec![
        ("r1".into(), r1.to_string()),
        ("r2".into(), r2.to_string()),
        ("g".into(), g.to_string()),
        ("omega2".into(), omega2.len().to_string()),
        ("gamma".into(), gamma.len().to_string()),
    ];
    finish(Family::Bbar, params, tower, packing, details, limits)
}

/// Spread code `C_Omega` (`k = 2`, `r = h + r0`): `T(C) = Omega`, a partial
/// `r0`-spread of `F_q^(h+r0)`. Without `omega` the Desarguesian spread is
/// used when `r0 | h`, the Beutelspacher partial spread otherwise.
pub fn construct_spread_code(
    params: ConstructionParams,
    omega: Option<Packing>,
    limits: &Limits,
) -> Result<Construction> {
    params.validate_spread()?;
    let tower = params.tower()?;
    let gf = tower.base().clone();
    let r = params.r();
    let omega = match omega {
        Some(o) => {
            if o.ambient() != r || !o.is_partial_spread(params.r0) {
                return Err(Error::InvalidParams(format!(
                    "Omega must be a partial {}-spread of F_q^{r}",
                    params.r0
                )));
            }
            Packing::new(gf, r, o.blocks().to_vec())?
        }
        None => default_partial_spread(gf, r, params.r0)?,
    };
    let f = omega.len() as i128 - params.q_pow_h() as i128;
    let details = vec![("f".into(), f.to_string())];
    finish(Family::Spread, params, tower, omega, details, limits)
}

/// Dispatches on the family. `Bbar` uses default options.
pub fn construct(family: Family, params: ConstructionParams, limits: &Limits) -> Result<Construction> {
    match family {
        Family::A => construct_a(params, limits),
        Family::B => construct_b(params, limits),
        Family::Bbar => construct_bbar(params, BbarOptions::default(), limits),
        Family::Spread => construct_spread_code(params, None, limits),
    }
}
