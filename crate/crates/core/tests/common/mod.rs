//! Brute-force oracles and random instances shared by the integration tests.
//!
//! The oracles work on codewords computed with `F_{q^h}` arithmetic and never
//! consult `W_i`, ranks of `G~` or the dual generator construction.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use qmds::code::qmds_length_bound;
use qmds::constructions::{construct, ConstructionParams, Family};
use qmds::geometry::theta;
use qmds::{AdditiveCode, FieldTower, Fqh, Limits};
use rand::Rng;

pub fn tower(p: u32, e: usize, h: usize) -> Arc<FieldTower> {
    Arc::new(FieldTower::new(p, e, h).unwrap())
}

/// All vectors of `F_q^m`, last coordinate fastest.
pub fn vectors(q: u32, m: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (q as u64).pow(m as u32);
    (0..total).map(move |mut i| {
        let mut v = vec![0; m];
        for c in v.iter_mut().rev() {
            *c = (i % q as u64) as u32;
            i /= q as u64;
        }
        v
    })
}

pub fn hamming(w: &[Fqh]) -> usize {
    w.iter().filter(|c| !c.is_zero()).count()
}

/// `uG` computed entrywise over `F_{q^h}`.
pub fn encode(code: &AdditiveCode, u: &[u32]) -> Vec<Fqh> {
    let t = code.tower();
    let mut w = vec![t.zero(); code.n()];
    for (row, &c) in code.generator().iter().zip(u) {
        if c == 0 {
            continue;
        }
        for (acc, g) in w.iter_mut().zip(row) {
            *acc = t.add(acc, &t.scale(c, g));
        }
    }
    w
}

pub fn codewords(code: &AdditiveCode) -> BTreeSet<Vec<Fqh>> {
    vectors(code.q(), code.r()).map(|u| encode(code, &u)).collect()
}

pub fn brute_distance(code: &AdditiveCode) -> usize {
    vectors(code.q(), code.r())
        .skip(1)
        .map(|u| hamming(&encode(code, &u)))
        .min()
        .unwrap_or(usize::MAX)
}

/// `Tr(<u, v>)`.
pub fn trace_inner(t: &FieldTower, u: &[Fqh], v: &[Fqh]) -> u32 {
    let mut s = t.zero();
    for (a, b) in u.iter().zip(v) {
        s = t.add(&s, &t.mul(a, b));
    }
    t.trace(&s)
}

/// Whether every coordinate of the code takes all `q^h` values.
pub fn brute_faithful(code: &AdditiveCode) -> bool {
    let words = codewords(code);
    let full = code.tower().order() as usize;
    (0..code.n()).all(|i| words.iter().map(|w| &w[i]).collect::<BTreeSet<_>>().len() == full)
}

/// `log_q` of the number of codewords vanishing on the 1-based positions.
pub fn brute_vanishing_dim(code: &AdditiveCode, j: &[usize]) -> usize {
    let count = vectors(code.q(), code.r())
        .filter(|u| {
            let w = encode(code, u);
            j.iter().all(|&i| w[i - 1].is_zero())
        })
        .count();
    let mut dim = 0;
    let mut c = 1;
    while c < count {
        c *= code.q() as usize;
        dim += 1;
    }
    assert_eq!(c, count, "vanishing codewords form a subspace");
    dim
}

/// Towers small enough for exhaustive oracles.
pub const TOWERS: [(u32, usize, usize); 5] = [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2)];

/// A random full-rank code: `r` random rows of length `n`.
pub fn random_code<R: Rng>(rng: &mut R, t: &Arc<FieldTower>, n: usize, r: usize) -> AdditiveCode {
    loop {
        let rows = (0..r)
            .map(|_| (0..n).map(|_| t.element(rng.gen_range(0..t.order()))).collect())
            .collect();
        if let Ok(c) = AdditiveCode::new(t.clone(), n, rows) {
            return c;
        }
    }
}

/// A random code for which every oracle below stays small: `q^r` and the
/// dual size `q^(nh - r)` are at most `2^12`.
pub fn random_small_code<R: Rng>(rng: &mut R) -> AdditiveCode {
    loop {
        let (p, e, h) = TOWERS[rng.gen_range(0..TOWERS.len())];
        let t = tower(p, e, h);
        let q = t.q() as f64;
        let n = rng.gen_range(2..=6);
        let r = rng.gen_range(1..=n * h);
        let small = |dim: usize| q.powi(dim as i32) <= 4096.0;
        if !small(r) || !small(n * h - r) {
            continue;
        }
        // bias towards zero-ish entries now and then to hit unfaithful codes
        let mut c = random_code(rng, &t, n, r);
        if rng.gen_bool(0.1) {
            let i = rng.gen_range(0..n);
            let rows: Vec<Vec<Fqh>> = c
                .generator()
                .iter()
                .map(|row| {
                    let mut row = row.clone();
                    row[i] = t.embed(row[i].coords()[0]);
                    row
                })
                .collect();
            match AdditiveCode::new(t.clone(), n, rows) {
                Ok(d) => c = d,
                Err(_) => continue,
            }
        }
        return c;
    }
}

/// Constructed codes small enough for exhaustive checks.
pub fn constructed_corpus() -> Vec<(String, AdditiveCode)> {
    let limits = Limits::default();
    let mut out = Vec::new();
    let list: &[(Family, u64, usize, usize, usize)] = &[
        (Family::A, 2, 2, 2, 1),
        (Family::A, 2, 2, 3, 1),
        (Family::A, 2, 4, 2, 2),
        (Family::A, 3, 2, 2, 1),
        (Family::A, 2, 3, 2, 1),
        (Family::A, 2, 3, 3, 1),
        (Family::A, 4, 2, 2, 1),
        (Family::Spread, 2, 2, 2, 1),
        (Family::Spread, 3, 2, 2, 1),
        (Family::Spread, 2, 3, 2, 1),
        (Family::Spread, 2, 3, 2, 2),
    ];
    for &(f, q, h, k, r0) in list {
        let c = construct(f, ConstructionParams::new(q, h, k, r0), &limits).unwrap();
        out.push((format!("{f}({q},{h},{k},{r0})"), c.code));
    }
    out
}

/// One invariant: how many instances it was checked on and its violations.
#[derive(Debug, Default)]
pub struct Tally {
    pub name: &'static str,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, ..Default::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

pub fn check_weight_formula(code: &AdditiveCode, t: &mut Tally) {
    let ok = vectors(code.q(), code.r()).all(|u| code.weight(&u).unwrap() == hamming(&encode(code, &u)));
    t.check(ok, || format!("weight formula on {}", code.type_string(None)));
}

pub fn check_duality(code: &AdditiveCode, t: &mut Tally) {
    let tw = code.tower();
    let dual = code.dual();
    let dim_ok = dual.r() == code.n() * code.h() - code.r();
    let orth = code
        .generator()
        .iter()
        .all(|u| dual.generator().iter().all(|v| trace_inner(tw, u, v) == 0));
    let back = dual.dual();
    let involution = back.r() == code.r() && codewords(&back) == codewords(code);
    t.check(dim_ok && orth && involution, || {
        format!(
            "duality on {}: dim {dim_ok}, orthogonal {orth}, involution {involution}",
            code.type_string(None)
        )
    });
}

pub fn check_faithfulness(code: &AdditiveCode, limits: &Limits, t: &mut Tally) {
    let dual = code.dual();
    let dp = brute_distance(&dual);
    let faithful = code.is_faithful();
    let oracle = brute_faithful(code);
    let part1 = faithful == oracle && (!faithful == (dp == 1));
    let lib_dp = code.dual_distance(limits).unwrap();
    let d = brute_distance(code);
    let part2 = (faithful && d >= 2) == (dual.is_faithful() && dp >= 2);
    t.check(part1 && part2 && lib_dp == dp, || {
        format!(
            "faithfulness on {}: faithful {faithful} (oracle {oracle}), d_perp {dp} (lib {lib_dp})",
            code.type_string(None)
        )
    });
}

/// Returns whether the instance was in scope (faithful, QMDS, `d > 1`).
pub fn check_iff_dqmds(code: &AdditiveCode, t: &mut Tally) -> bool {
    let d = brute_distance(code);
    if !code.is_faithful() || d + code.k() != code.n() + 1 || d <= 1 {
        return false;
    }
    let dual = code.dual();
    let dual_qmds = brute_distance(&dual) + dual.k() == dual.n() + 1;
    let cond_b = code.condition_b().unwrap().is_none();
    t.check(cond_b == dual_qmds, || {
        format!(
            "condition (b) {cond_b} but dual QMDS {dual_qmds} on {}",
            code.type_string(Some(d))
        )
    });
    true
}

/// Quotient dimension law on every `J` with `|J| <= 2`, and, when the code
/// is dually QMDS, the quotients by `|J| <= k - 1` are dually QMDS of
/// dimension `r - |J|h`.
pub fn check_quotients(code: &AdditiveCode, limits: &Limits, t: &mut Tally) {
    let n = code.n();
    let h = code.h();
    let dually = dually_brute(code);
    let mut sets: Vec<Vec<usize>> = (1..=n).map(|i| vec![i]).collect();
    for a in 1..=n {
        for b in a + 1..=n {
            sets.push(vec![a, b]);
        }
    }
    for j in sets {
        if j.len() >= n {
            continue;
        }
        let qc = code.geometric_quotient(&j).unwrap().code;
        let want = brute_vanishing_dim(code, &j);
        t.check(qc.r() == want && qc.n() == n - j.len(), || {
            format!("C/{j:?} has dim {}, oracle {want}", qc.r())
        });
        if dually && j.len() < code.k() {
            let expect_dim = code.r() as i64 - (j.len() * h) as i64;
            let ok = qc.r() as i64 == expect_dim && (qc.r() == 0 || dually_brute(&qc));
            t.check(ok, || {
                format!("quotient {j:?} of dually QMDS {} is {}", code.type_string(None), qc.type_string(None))
            });
        }
        let _ = limits;
    }
}

/// Dually QMDS by brute force on both codes.
pub fn dually_brute(code: &AdditiveCode) -> bool {
    if code.r() == 0 || code.r() == code.n() * code.h() {
        return false;
    }
    let dual = code.dual();
    brute_distance(code) + code.k() == code.n() + 1
        && brute_distance(&dual) + dual.k() == dual.n() + 1
}

pub fn check_singleton(code: &AdditiveCode, limits: &Limits, t: &mut Tally) {
    let defect = code.singleton_defect(limits).unwrap();
    let d = brute_distance(code);
    let oracle = (code.n() + 1) as i64 - code.k() as i64 - d as i64;
    t.check(defect >= 0 && defect == oracle, || {
        format!("Singleton defect {defect} (oracle {oracle}) on {}", code.type_string(Some(d)))
    });
}

/// QMDS codes with `r = (k-1)h + r0` respect the length bound.
pub fn check_length_bound(code: &AdditiveCode, t: &mut Tally) {
    let d = brute_distance(code);
    if d + code.k() != code.n() + 1 || code.k() < 2 {
        return;
    }
    let r0 = qmds::code::r0_of(code.r(), code.h());
    let b = qmds_length_bound(code.q() as u64, code.h(), code.k(), r0).unwrap();
    t.check(code.n() as u128 <= b.floor, || {
        format!("{} exceeds the length bound {b}", code.type_string(Some(d)))
    });
}

/// Dually QMDS `[n, 2 + 1/h]` codes have `n <= theta_q(h) + 1`, and
/// `n <= theta_q(h)` when `q` is odd.
pub fn check_length_ceiling(code: &AdditiveCode, t: &mut Tally) {
    let h = code.h();
    if code.r() != 2 * h + 1 || !dually_brute(code) {
        return;
    }
    let th = theta(code.q() as u64, h);
    let ceiling = if code.q() % 2 == 1 { th } else { th + 1 };
    t.check(code.n() as u128 <= ceiling, || {
        format!("dually QMDS {} beyond theta + 1", code.type_string(None))
    });
}

/// Runs every code-level invariant on `count` random codes plus the
/// constructed corpus and its quotients.
pub fn property_suite<R: Rng>(rng: &mut R, count: usize) -> (Vec<Tally>, usize) {
    let limits = Limits::default();
    let mut tallies = vec![
        Tally::new("weight formula"),
        Tally::new("duality"),
        Tally::new("unfaithful <=> d_perp = 1"),
        Tally::new("condition (b) <=> dual QMDS"),
        Tally::new("quotients"),
        Tally::new("Singleton defect >= 0"),
        Tally::new("length bound"),
        Tally::new("dually QMDS length ceiling"),
    ];
    let mut corpus: Vec<AdditiveCode> = constructed_corpus().into_iter().map(|(_, c)| c).collect();
    corpus.extend((0..count).map(|_| random_small_code(rng)));
    let mut in_scope = 0;
    for code in &corpus {
        let small_dual = (code.q() as f64).powi((code.n() * code.h() - code.r()) as i32) <= 65536.0;
        check_weight_formula(code, &mut tallies[0]);
        if small_dual && code.r() < code.n() * code.h() {
            check_duality(code, &mut tallies[1]);
            check_faithfulness(code, &limits, &mut tallies[2]);
            if check_iff_dqmds(code, &mut tallies[3]) {
                in_scope += 1;
            }
            check_quotients(code, &limits, &mut tallies[4]);
            check_length_ceiling(code, &mut tallies[7]);
        }
        check_singleton(code, &limits, &mut tallies[5]);
        check_length_bound(code, &mut tallies[6]);
    }
    (tallies, in_scope)
}
