//! Dense univariate polynomials over a [`BaseField`], coefficients ascending.
//!
//! These helpers back both layers of the tower: `F_q = F_p[x]/(f)` is built
//! with the prime field as coefficient ring, `F_{q^h} = F_q[y]/(g)` with `F_q`.

use super::BaseField;

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(k: &BaseField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out: Vec<u32> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            k.sub(x, y)
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(k: &BaseField, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn divrem(k: &BaseField, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = k.inv(b[db]).expect("nonzero leading coefficient");
    let mut rem: Vec<u32> = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0; rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = k.mul(rem[dr], lead_inv);
        let shift = dr - db;
        quot[shift] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            rem[shift + j] = k.sub(rem[shift + j], k.mul(c, bj));
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn rem(k: &BaseField, a: &[u32], m: &[u32]) -> Vec<u32> {
    divrem(k, a, m).1
}

fn make_monic(k: &BaseField, a: &mut [u32]) {
    if let Some(d) = degree(a) {
        let inv = k.inv(a[d]).expect("nonzero leading coefficient");
        for c in a.iter_mut() {
            *c = k.mul(*c, inv);
        }
    }
}

pub(crate) fn gcd(k: &BaseField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(k, &x, &y);
        x = y;
        y = r;
    }
    make_monic(k, &mut x);
    x
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub(crate) fn inv_mod(k: &BaseField, a: &[u32], m: &[u32]) -> Option<Vec<u32>> {
    // Invariant: s * a == r (mod m).
    let mut r0 = m.to_vec();
    let mut r1 = rem(k, a, m);
    let mut s0: Vec<u32> = Vec::new();
    let mut s1: Vec<u32> = vec![1];
    trim(&mut r0);
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1);
        let s = sub(k, &s0, &mul(k, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = k.inv(r0[0]).ok()?;
    let mut out: Vec<u32> = s0.iter().map(|&x| k.mul(x, c)).collect();
    out = rem(k, &out, m);
    Some(out)
}

pub(crate) fn mulmod(k: &BaseField, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    rem(k, &mul(k, a, b), m)
}

pub(crate) fn powmod(k: &BaseField, base: &[u32], mut exp: u64, m: &[u32]) -> Vec<u32> {
    let mut result = rem(k, &[1], m);
    let mut b = rem(k, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mulmod(k, &result, &b, m);
        }
        b = mulmod(k, &b, &b, m);
        exp >>= 1;
    }
    result
}

/// Irreducibility test for a monic `f` of positive degree: `f` has no factor
/// of degree `i <= deg/2`, checked as `gcd(f, x^(Q^i) - x) = 1` where `Q = |k|`.
pub(crate) fn is_irreducible(k: &BaseField, f: &[u32]) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut frob = rem(k, &x, f);
    for _ in 1..=d / 2 {
        frob = powmod(k, &frob, k.order() as u64, f);
        let g = gcd(k, f, &sub(k, &frob, &x));
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree `d`,
/// comparing the coefficient tuples `(c_0, ..., c_{d-1})` from `c_0` on.
pub(crate) fn smallest_irreducible(k: &BaseField, d: usize) -> Vec<u32> {
    let q = k.order();
    let mut coeffs = vec![0u32; d];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if is_irreducible(k, &f) {
            return f;
        }
        // c_{d-1} is the least significant position of the tuple order
        let mut pos = d;
        loop {
            assert!(pos > 0, "irreducible polynomials exist in every degree");
            pos -= 1;
            coeffs[pos] += 1;
            if coeffs[pos] < q {
                break;
            }
            coeffs[pos] = 0;
        }
    }
}

pub(crate) fn to_string(k: &BaseField, f: &[u32], var: char) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && i > 0 {
            String::new()
        } else {
            k.format_element(c)
        };
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(format!("{coeff}{mono}"));
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
