//! Subspaces of `F_q^m` in canonical form, and enumeration of vectors,
//! projective points and subspaces of small spaces.

use crate::error::{Error, Result};
use crate::field::BaseField;
use crate::limits::Limits;
use crate::linalg::{axpy, Matrix};

/// A subspace of `F_q^m`, stored as the reduced row echelon form of a basis.
///
/// The RREF basis is unique, so equality, hashing and ordering of
/// `Subspace` values coincide with equality of the underlying sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The row space of `m`.
    pub fn row_space(gf: &BaseField, m: &Matrix) -> Self {
        let mut basis = m.clone();
        let pivots = basis.rref_in_place(gf);
        basis.truncate_rows(pivots.len());
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    /// The span of `vectors` in `F_q^ambient`.
    pub fn span<R: AsRef<[u32]>>(gf: &BaseField, ambient: usize, vectors: &[R]) -> Result<Self> {
        Ok(Self::row_space(gf, &Matrix::from_rows(ambient, vectors)?))
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(ambient: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let mut rows: Vec<usize> = coords.into_iter().collect();
        rows.sort_unstable();
        rows.dedup();
        let mut basis = Matrix::zeros(rows.len(), ambient);
        for (i, &c) in rows.iter().enumerate() {
            basis.set(i, c, 1);
        }
        Subspace {
            ambient,
            basis,
            pivots: rows,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The RREF basis, one row per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_q^{} and F_q^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Reduces `v` against the basis in place; the result is zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, gf: &BaseField, v: &mut [u32]) {
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c != 0 {
                axpy(gf, v, gf.neg(c), self.basis.row(i));
            }
        }
    }

    pub fn contains(&self, gf: &BaseField, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against F_q^{}",
                v.len(),
                self.ambient
            )));
        }
        let mut w = v.to_vec();
        self.reduce(gf, &mut w);
        Ok(w.iter().all(|&x| x == 0))
    }

    pub fn is_subspace_of(&self, gf: &BaseField, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for row in self.basis.iter_rows() {
            if !other.contains(gf, row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, gf: &BaseField, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::row_space(gf, &self.basis.vstack(&other.basis)?))
    }

    /// `A ∩ B`, computed as `(A^⊥ + B^⊥)^⊥`.
    pub fn intersect(&self, gf: &BaseField, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.perp(gf).sum(gf, &other.perp(gf))?.perp(gf))
    }

    /// `{v in self : rows * v^T = 0}`; with `rows` a basis of `B^⊥` this is
    /// `self ∩ B`.
    pub fn restrict(&self, gf: &BaseField, rows: &Matrix) -> Subspace {
        if self.is_zero() || rows.rows() == 0 {
            return self.clone();
        }
        // coefficients x with (x * basis) * rows^T = 0
        let m = self.basis.mul(gf, &rows.transpose()).expect("widths match");
        let coeffs = m.transpose().kernel(gf);
        let image = coeffs.basis().mul(gf, &self.basis).expect("widths match");
        Subspace::row_space(gf, &image)
    }

    /// Orthogonal complement under the standard dot product.
    pub fn perp(&self, gf: &BaseField) -> Subspace {
        self.basis.kernel(gf)
    }

    /// All `q^dim` vectors, coefficients over the basis counted in base `q`
    /// with the last basis vector's coefficient varying fastest.
    pub fn elements<'a>(&'a self, gf: &'a BaseField) -> impl Iterator<Item = Vec<u32>> + 'a {
        let q = gf.order() as u64;
        let dim = self.dim();
        let total = q.pow(dim as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![0; self.ambient];
            for i in (0..dim).rev() {
                let c = (idx % q) as u32;
                idx /= q;
                if c != 0 {
                    axpy(gf, &mut v, c, self.basis.row(i));
                }
            }
            v
        })
    }

    /// Projective points (normalized nonzero vectors) of the subspace.
    pub fn points<'a>(&'a self, gf: &'a BaseField) -> impl Iterator<Item = Vec<u32>> + 'a {
        let q = gf.order();
        let dim = self.dim();
        PointIter::new(q, dim).map(move |coeffs| {
            let mut v = vec![0; self.ambient];
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    axpy(gf, &mut v, c, self.basis.row(i));
                }
            }
            // RREF rows keep the leading coefficient at 1
            v
        })
    }
}

/// Scales `v` so that its first nonzero entry is 1. Returns false for zero.
pub fn normalize(gf: &BaseField, v: &mut [u32]) -> bool {
    let Some(&lead) = v.iter().find(|&&x| x != 0) else {
        return false;
    };
    if lead != 1 {
        let inv = gf.inv(lead).expect("nonzero");
        for x in v.iter_mut() {
            *x = gf.mul(*x, inv);
        }
    }
    true
}

/// Number of `t`-dimensional subspaces of `F_q^m`, saturating at `u128::MAX`.
pub fn gaussian_binomial(q: u64, m: usize, t: usize) -> u128 {
    if t > m {
        return 0;
    }
    let q = q as u128;
    let mut acc: u128 = 1;
    for i in 0..t {
        let num = q.checked_pow((m - i) as u32).map(|x| x - 1);
        let den = q.pow((i + 1) as u32) - 1;
        match num.and_then(|n| acc.checked_mul(n)) {
            Some(v) => acc = v / den,
            None => return u128::MAX,
        }
    }
    acc
}

/// Number of projective points of `F_q^m`.
pub fn point_count(q: u64, m: usize) -> u128 {
    gaussian_binomial(q, m, 1)
}

/// The `index`-th projective point of `F_q^m`: points with their leading 1
/// at position 0 come first, then position 1, and so on; within a group the
/// tail is a base-`q` counter with the last coordinate varying fastest.
pub fn point_at(q: u32, m: usize, mut index: u64) -> Option<Vec<u32>> {
    let qq = q as u64;
    for lead in 0..m {
        let group = qq.pow((m - 1 - lead) as u32);
        if index < group {
            let mut v = vec![0; m];
            v[lead] = 1;
            for pos in (lead + 1..m).rev() {
                v[pos] = (index % qq) as u32;
                index /= qq;
            }
            return Some(v);
        }
        index -= group;
    }
    None
}

/// Inverse of [`point_at`] for a normalized nonzero vector.
pub fn point_index(q: u32, v: &[u32]) -> Option<u64> {
    let lead = v.iter().position(|&x| x != 0)?;
    if v[lead] != 1 {
        return None;
    }
    let qq = q as u64;
    let m = v.len();
    let mut idx: u64 = (0..lead).map(|l| qq.pow((m - 1 - l) as u32)).sum();
    let mut tail: u64 = 0;
    for &x in &v[lead + 1..] {
        tail = tail * qq + x as u64;
    }
    idx += tail;
    Some(idx)
}

/// Iterator over the projective points of `F_q^m` in [`point_at`] order.
pub struct PointIter {
    q: u32,
    m: usize,
    next: Option<Vec<u32>>,
}

impl PointIter {
    pub fn new(q: u32, m: usize) -> Self {
        PointIter {
            q,
            m,
            next: point_at(q, m, 0),
        }
    }
}

impl Iterator for PointIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let cur = self.next.take()?;
        let mut v = cur.clone();
        let lead = v.iter().position(|&x| x != 0).expect("points are nonzero");
        let mut pos = self.m;
        loop {
            pos -= 1;
            if pos == lead {
                // tail exhausted: move the leading 1 one step right
                if lead + 1 < self.m {
                    let mut w = vec![0; self.m];
                    w[lead + 1] = 1;
                    self.next = Some(w);
                }
                break;
            }
            v[pos] += 1;
            if v[pos] < self.q {
                self.next = Some(v);
                break;
            }
            v[pos] = 0;
        }
        Some(cur)
    }
}

/// All projective points of `F_q^m`, subject to the vector cap.
pub fn points(gf: &BaseField, m: usize, limits: &Limits) -> Result<PointIter> {
    limits.check_vectors("projective points", point_count(gf.order() as u64, m))?;
    Ok(PointIter::new(gf.order(), m))
}

/// Walks a contiguous range of projective points while maintaining the image
/// `v * rows`, updating it incrementally for each changed coordinate.
pub(crate) struct PointWalker<'a> {
    gf: &'a BaseField,
    rows: &'a Matrix,
    q: u32,
    vector: Vec<u32>,
    image: Vec<u32>,
}

impl<'a> PointWalker<'a> {
    pub(crate) fn new(gf: &'a BaseField, rows: &'a Matrix, start: u64) -> Option<Self> {
        let vector = point_at(gf.order(), rows.rows(), start)?;
        let image = rows.left_mul(gf, &vector).expect("lengths match");
        Some(PointWalker {
            gf,
            rows,
            q: gf.order(),
            vector,
            image,
        })
    }

    #[cfg(test)]
    pub(crate) fn vector(&self) -> &[u32] {
        &self.vector
    }

    pub(crate) fn image(&self) -> &[u32] {
        &self.image
    }

    /// Moves to the next point; returns false past the last one.
    pub(crate) fn advance(&mut self) -> bool {
        let m = self.vector.len();
        let lead = self
            .vector
            .iter()
            .position(|&x| x != 0)
            .expect("points are nonzero");
        let mut pos = m;
        loop {
            pos -= 1;
            if pos == lead {
                if lead + 1 == m {
                    return false;
                }
                self.vector.iter_mut().for_each(|x| *x = 0);
                self.vector[lead + 1] = 1;
                self.image.copy_from_slice(self.rows.row(lead + 1));
                return true;
            }
            let old = self.vector[pos];
            let new = if old + 1 == self.q { 0 } else { old + 1 };
            self.vector[pos] = new;
            axpy(self.gf, &mut self.image, self.gf.sub(new, old), self.rows.row(pos));
            if new != 0 {
                return true;
            }
        }
    }
}

/// Iterator over all `t`-dimensional subspaces of `F_q^m`.
///
/// Order: pivot column sets in lexicographic order; for each pivot set, the
/// free RREF entries (row-major) form a base-`q` counter with the last entry
/// varying fastest. This order is the canonical subspace order used by the
/// searches in this crate.
pub struct SubspaceIter {
    q: u32,
    m: usize,
    t: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    done: bool,
}

impl SubspaceIter {
    pub fn new(q: u32, m: usize, t: usize) -> Self {
        let mut it = SubspaceIter {
            q,
            m,
            t,
            pivots: (0..t).collect(),
            free: Vec::new(),
            counter: Vec::new(),
            done: t > m,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        self.free.clear();
        for (i, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.m {
                if !self.pivots.contains(&c) {
                    self.free.push((i, c));
                }
            }
        }
        self.counter = vec![0; self.free.len()];
    }

    fn next_combination(&mut self) -> bool {
        let t = self.t;
        let mut i = t;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < self.m - t + i {
                self.pivots[i] += 1;
                for j in i + 1..t {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn current(&self) -> Subspace {
        let mut basis = Matrix::zeros(self.t, self.m);
        for (i, &p) in self.pivots.iter().enumerate() {
            basis.set(i, p, 1);
        }
        for (&(i, c), &v) in self.free.iter().zip(&self.counter) {
            basis.set(i, c, v);
        }
        Subspace {
            ambient: self.m,
            basis,
            pivots: self.pivots.clone(),
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let out = self.current();
        let mut pos = self.counter.len();
        loop {
            if pos == 0 {
                if self.next_combination() {
                    self.reset_free();
                } else {
                    self.done = true;
                }
                break;
            }
            pos -= 1;
            self.counter[pos] += 1;
            if self.counter[pos] < self.q {
                break;
            }
            self.counter[pos] = 0;
        }
        Some(out)
    }
}

/// All `t`-dimensional subspaces of `F_q^m`, subject to the subspace cap.
pub fn subspaces(gf: &BaseField, m: usize, t: usize, limits: &Limits) -> Result<SubspaceIter> {
    let count = gaussian_binomial(gf.order() as u64, m, t);
    limits.check_subspaces(&format!("{t}-dimensional subspaces of F_{}^{m}", gf.order()), count)?;
    Ok(SubspaceIter::new(gf.order(), m, t))
}
