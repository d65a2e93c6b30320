//! Exact arithmetic in `F_q = F_p[x]/(f)` and `F_{q^h} = F_q[y]/(g)`.
//!
//! Elements of `F_q` are plain `u32` values in `0..q`; the base-`p` digits of
//! the value are the coefficients `c_0, ..., c_{e-1}` of the residue class in
//! `F_p[x]/(f)`. Elements of `F_{q^h}` are [`Fqh`] coordinate tuples over the
//! basis `1, xi, ..., xi^(h-1)` where `xi` is the class of `y`.

pub(crate) mod poly;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Lookup tables are built for fields up to this order.
const TABLE_LIMIT: u32 = 256;

#[derive(Clone)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// The field `F_q` with `q = p^e`.
#[derive(Clone)]
pub struct BaseField {
    p: u32,
    e: usize,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl fmt::Debug for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaseField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for BaseField {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseField {
    /// The prime field `F_p`, represented as `F_p[x]/(x)`.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Self::build(p, vec![0, 1]))
    }

    /// `F_{p^e}` with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u32, e: usize) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidParams("extension degree e must be >= 1".into()));
        }
        let fp = Self::prime(p)?;
        Self::check_order(p, e)?;
        let f = poly::smallest_irreducible(&fp, e);
        Ok(Self::build(p, f))
    }

    /// `F_{p^e}` with a caller-supplied monic modulus (coefficients ascending).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let fp = Self::prime(p)?;
        if modulus.iter().any(|&c| c >= p) || modulus.last() != Some(&1) {
            return Err(Error::InvalidParams(format!(
                "modulus {modulus:?} must be monic with coefficients below {p}"
            )));
        }
        let e = modulus.len() - 1;
        Self::check_order(p, e)?;
        if !poly::is_irreducible(&fp, &modulus) {
            return Err(Error::Reducible(poly::to_string(&fp, &modulus, 'x')));
        }
        Ok(Self::build(p, modulus))
    }

    /// The field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let p = (2..=q).find(|d| q % d == 0).expect("q >= 2 has a prime factor");
        let mut rest = q;
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Self::new(p as u32, e)
    }

    fn check_order(p: u32, e: usize) -> Result<()> {
        let q = (p as u64).checked_pow(e as u32);
        match q {
            Some(q) if q <= u32::MAX as u64 => Ok(()),
            _ => Err(Error::InvalidParams(format!("{p}^{e} is too large"))),
        }
    }

    fn build(p: u32, modulus: Vec<u32>) -> Self {
        let e = modulus.len() - 1;
        let q = p.pow(e as u32);
        let mut field = BaseField {
            p,
            e,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            let n = q as usize;
            let mut add = vec![0; n * n];
            let mut mul = vec![0; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * n + b as usize] = field.add_slow(a, b);
                    mul[a as usize * n + b as usize] = field.mul_slow(a, b);
                }
            }
            let neg = (0..q).map(|a| field.neg_slow(a)).collect();
            let mut inv = vec![0; n];
            for a in 1..q {
                inv[a as usize] = (1..q)
                    .find(|&b| mul[a as usize * n + b as usize] == 1)
                    .expect("nonzero elements are invertible");
            }
            field.tables = Some(Tables { add, mul, neg, inv });
        }
        field
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// The field order `q`.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus `f` over `F_p`, ascending coefficients, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = vec![0; self.e];
        for d in out.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(&u, &v)| (u + v) % self.p).collect();
        self.undigits(&s)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let s: Vec<u32> = self
            .digits(a)
            .iter()
            .map(|&u| (self.p - u) % self.p)
            .collect();
        self.undigits(&s)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.e == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.e - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        // reduce by the monic modulus, highest degree first
        for i in (self.e..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.e {
                let t = c * self.modulus[j] as u64 % p;
                prod[i - self.e + j] = (prod[i - self.e + j] + p - t) % p;
            }
        }
        let s: Vec<u32> = prod[..self.e].iter().map(|&c| c as u32).collect();
        self.undigits(&s)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.add[(a * self.q + b) as usize],
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => self.neg_slow(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize],
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => t.inv[a as usize],
            None => self.pow(a, self.q as u64 - 2),
        })
    }

    pub fn pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut result = 1;
        let mut b = a;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        result
    }

    /// Text form used by the file formats: the `e` base-`p` digits joined by `:`.
    pub fn format_element(&self, a: u32) -> String {
        if self.e == 1 {
            return a.to_string();
        }
        self.digits(a)
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(":")
    }

    pub fn parse_element(&self, s: &str) -> Option<u32> {
        let digits: Vec<u32> = s
            .split(':')
            .map(|d| d.trim().parse().ok())
            .collect::<Option<_>>()?;
        if digits.len() != self.e || digits.iter().any(|&d| d >= self.p) {
            return None;
        }
        Some(self.undigits(&digits))
    }
}

/// An element of `F_{q^h}`: its `h` coordinates over `1, xi, ..., xi^(h-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fqh(Vec<u32>);

impl Fqh {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// `F_q` together with its degree-`h` extension `F_{q^h} = F_q[y]/(g)`.
#[derive(Clone, Debug)]
pub struct FieldTower {
    base: Arc<BaseField>,
    h: usize,
    modulus: Vec<u32>,
    /// `Tr(xi^i)` for `i < 2h - 1`.
    trace_powers: Vec<u32>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.modulus == other.modulus
    }
}

impl Eq for FieldTower {}

impl FieldTower {
    /// Builds `F_{p^e}` and its degree-`h` extension, both with the
    /// lexicographically smallest irreducible moduli.
    pub fn new(p: u32, e: usize, h: usize) -> Result<Self> {
        Self::over(Arc::new(BaseField::new(p, e)?), h)
    }

    /// Degree-`h` extension of an existing base field.
    pub fn over(base: Arc<BaseField>, h: usize) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidParams("extension degree h must be >= 1".into()));
        }
        let order = (base.order() as u128).checked_pow(h as u32);
        if order.is_none_or(|o| o > u64::MAX as u128) {
            return Err(Error::InvalidParams(format!(
                "{}^{h} does not fit in 64 bits",
                base.order()
            )));
        }
        let g = poly::smallest_irreducible(&base, h);
        Ok(Self::assemble(base, g))
    }

    /// Extension with a caller-supplied monic modulus `g` over `F_q`.
    pub fn with_modulus(base: Arc<BaseField>, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2
            || modulus.last() != Some(&1)
            || modulus.iter().any(|&c| c >= base.order())
        {
            return Err(Error::InvalidParams(format!(
                "modulus {modulus:?} must be monic of positive degree over F_{}",
                base.order()
            )));
        }
        if !poly::is_irreducible(&base, &modulus) {
            return Err(Error::Reducible(poly::to_string(&base, &modulus, 'y')));
        }
        Ok(Self::assemble(base, modulus))
    }

    fn assemble(base: Arc<BaseField>, modulus: Vec<u32>) -> Self {
        let h = modulus.len() - 1;
        let mut tower = FieldTower {
            base,
            h,
            modulus,
            trace_powers: Vec::new(),
        };
        let mut x = tower.one();
        let xi = tower.xi();
        let mut powers = Vec::with_capacity(2 * h - 1);
        for _ in 0..(2 * h - 1) {
            powers.push(tower.trace(&x));
            x = tower.mul(&x, &xi);
        }
        tower.trace_powers = powers;
        tower
    }

    pub fn base(&self) -> &Arc<BaseField> {
        &self.base
    }

    pub fn q(&self) -> u32 {
        self.base.order()
    }

    pub fn h(&self) -> usize {
        self.h
    }

    /// `q^h`.
    pub fn order(&self) -> u64 {
        (self.q() as u64).pow(self.h as u32)
    }

    /// Modulus `g` over `F_q`, ascending coefficients, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Fqh {
        Fqh(vec![0; self.h])
    }

    pub fn one(&self) -> Fqh {
        self.embed(1)
    }

    /// The generator `xi` (class of `y`).
    pub fn xi(&self) -> Fqh {
        if self.h == 1 {
            // y = -g_0 modulo y + g_0
            return self.embed(self.base.neg(self.modulus[0]));
        }
        let mut c = vec![0; self.h];
        c[1] = 1;
        Fqh(c)
    }

    /// `xi^i` for `i < h` is the `i`-th basis vector.
    pub fn basis(&self, i: usize) -> Fqh {
        let mut c = vec![0; self.h];
        c[i] = 1;
        Fqh(c)
    }

    /// `c * 1` for `c` in `F_q`.
    pub fn embed(&self, c: u32) -> Fqh {
        let mut v = vec![0; self.h];
        v[0] = c;
        Fqh(v)
    }

    /// The `index`-th element, reading `index` in base `q` with the
    /// coordinate of `1` as least significant digit.
    pub fn element(&self, mut index: u64) -> Fqh {
        let q = self.q() as u64;
        let mut c = vec![0; self.h];
        for x in c.iter_mut() {
            *x = (index % q) as u32;
            index /= q;
        }
        Fqh(c)
    }

    pub fn index_of(&self, a: &Fqh) -> u64 {
        let q = self.q() as u64;
        a.0.iter().rev().fold(0, |acc, &c| acc * q + c as u64)
    }

    /// All `q^h` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fqh> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &Fqh, b: &Fqh) -> Fqh {
        Fqh(a.0.iter().zip(&b.0).map(|(&x, &y)| self.base.add(x, y)).collect())
    }

    pub fn sub(&self, a: &Fqh, b: &Fqh) -> Fqh {
        Fqh(a.0.iter().zip(&b.0).map(|(&x, &y)| self.base.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &Fqh) -> Fqh {
        Fqh(a.0.iter().map(|&x| self.base.neg(x)).collect())
    }

    /// `c * a` for a scalar `c` in `F_q`.
    pub fn scale(&self, c: u32, a: &Fqh) -> Fqh {
        Fqh(a.0.iter().map(|&x| self.base.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Fqh, b: &Fqh) -> Fqh {
        let k = &*self.base;
        let h = self.h;
        let mut prod = vec![0u32; 2 * h - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = k.add(prod[i + j], k.mul(x, y));
            }
        }
        for i in (h..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..h {
                prod[i - h + j] = k.sub(prod[i - h + j], k.mul(c, self.modulus[j]));
            }
        }
        prod.truncate(h);
        Fqh(prod)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// polynomial representatives.
    pub fn inv(&self, a: &Fqh) -> Result<Fqh> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rep = poly::inv_mod(&self.base, &a.0, &self.modulus)
            .expect("nonzero residues are invertible modulo an irreducible");
        rep.resize(self.h, 0);
        Ok(Fqh(rep))
    }

    pub fn pow(&self, a: &Fqh, mut exp: u64) -> Fqh {
        let mut result = self.one();
        let mut b = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(&result, &b);
            }
            b = self.mul(&b, &b);
            exp >>= 1;
        }
        result
    }

    /// `a^q`.
    pub fn frobenius(&self, a: &Fqh) -> Fqh {
        self.pow(a, self.q() as u64)
    }

    /// `Tr(a) = a + a^q + ... + a^(q^(h-1))`, an element of `F_q`.
    pub fn trace(&self, a: &Fqh) -> u32 {
        let mut acc = a.clone();
        let mut conj = a.clone();
        for _ in 1..self.h {
            conj = self.frobenius(&conj);
            acc = self.add(&acc, &conj);
        }
        debug_assert!(acc.0[1..].iter().all(|&c| c == 0), "trace lies in F_q");
        acc.0[0]
    }

    /// `Tr(xi^a * xi^b)` for basis exponents `a, b < h`.
    pub fn trace_form(&self, a: usize, b: usize) -> u32 {
        self.trace_powers[a + b]
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &Fqh) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let group = self.order() - 1;
        let mut primes = Vec::new();
        let mut rest = group;
        let mut d = 2;
        while d * d <= rest {
            if rest % d == 0 {
                primes.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        let mut order = group;
        for d in primes {
            while order % d == 0 && self.pow(a, order / d) == self.one() {
                order /= d;
            }
        }
        Ok(order)
    }

    /// Coordinates of `a` over the basis `1, xi, ..., xi^(h-1)`.
    pub fn expand(&self, a: &Fqh) -> Vec<u32> {
        a.0.clone()
    }

    pub fn contract(&self, coords: &[u32]) -> Result<Fqh> {
        if coords.len() != self.h {
            return Err(Error::CoordinateCount {
                expected: self.h,
                got: coords.len(),
            });
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= self.q()) {
            return Err(Error::InvalidParams(format!(
                "coordinate {c} is not an element of F_{}",
                self.q()
            )));
        }
        Ok(Fqh(coords.to_vec()))
    }

    pub fn format_element(&self, a: &Fqh) -> String {
        a.0.iter()
            .map(|&c| self.base.format_element(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_element(&self, s: &str) -> Option<Fqh> {
        let coords: Vec<u32> = s
            .split(',')
            .map(|c| self.base.parse_element(c))
            .collect::<Option<_>>()?;
        self.contract(&coords).ok()
    }
}
