//! Property tests. Field and linear algebra laws run under proptest; the
//! code-level laws use seeded random codes checked against brute-force
//! oracles.

mod common;

use std::sync::Arc;

use common::{brute_distance, dually_brute, tower, vectors};
use proptest::prelude::*;
use qmds::code::{qmds_length_bound, r0_of};
use qmds::constructions::{construct, ConstructionParams, Family};
use qmds::geometry::{code_to_dda, dda_to_code, search_dho, DhoSearch};
use qmds::packing::{
    beutelspacher_size, beutelspacher_spread, default_partial_spread, desarguesian_spread,
    spread_upper_bound,
};
use qmds::{BaseField, Error, FieldTower, Limits, Matrix, Packing, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------- fields

/// Remainder of `a` modulo monic `m` over `k`, coefficients ascending.
fn poly_rem(k: &BaseField, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            a[shift + i] = k.sub(a[shift + i], k.mul(lead, c));
        }
        a.pop();
    }
    a
}

/// Reducible iff some monic polynomial of degree `1..=deg/2` divides it.
fn brute_reducible(k: &BaseField, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    let q = k.order() as u64;
    (1..=deg / 2).any(|d| {
        (0..q.pow(d as u32)).any(|mut idx| {
            let mut g = Vec::with_capacity(d + 1);
            for _ in 0..d {
                g.push((idx % q) as u32);
                idx /= q;
            }
            g.push(1);
            poly_rem(k, f, &g).iter().all(|&c| c == 0)
        })
    })
}

fn monic(k: &BaseField, idx: u64, deg: usize) -> Vec<u32> {
    let q = k.order() as u64;
    let mut idx = idx;
    let mut f = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        f.push((idx % q) as u32);
        idx /= q;
    }
    f.push(1);
    f
}

#[test]
fn irreducibility_matches_factor_search() {
    for p in [2u32, 3, 5] {
        let k = BaseField::prime(p).unwrap();
        for deg in 1..=4usize {
            let count = (p as u64).pow(deg as u32);
            for idx in 0..count {
                let f = monic(&k, idx, deg);
                let accepted = BaseField::with_modulus(p, f.clone()).is_ok();
                assert_eq!(accepted, !brute_reducible(&k, &f), "p={p} f={f:?}");
            }
        }
    }
    // over F_4
    let k = Arc::new(BaseField::new(2, 2).unwrap());
    for deg in 1..=3usize {
        for idx in 0..4u64.pow(deg as u32) {
            let g = monic(&k, idx, deg);
            let accepted = FieldTower::with_modulus(k.clone(), g.clone()).is_ok();
            assert_eq!(accepted, !brute_reducible(&k, &g), "g={g:?}");
        }
    }
}

#[test]
fn default_moduli_are_lexicographically_first() {
    for (p, e, h) in [(2u32, 1usize, 2usize), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 3), (2, 3, 2)] {
        let t = FieldTower::new(p, e, h).unwrap();
        let k = t.base();
        // ascending coefficients, c0 most significant
        let key = |f: &[u32]| f.to_vec();
        let q = k.order() as u64;
        let first = (0..q.pow(h as u32))
            .map(|i| monic(k, i, h))
            .filter(|g| !brute_reducible(k, g))
            .min_by_key(|g| key(g))
            .unwrap();
        assert_eq!(t.modulus(), first.as_slice(), "p={p} e={e} h={h}");
    }
    assert_eq!(FieldTower::new(2, 1, 2).unwrap().modulus(), &[1, 1, 1]);
}

/// Exhaustive field laws on towers with `q^h <= 64`.
#[test]
fn trace_frobenius_and_cyclic_group() {
    for (p, e, h) in [(2u32, 1usize, 2usize), (2, 1, 3), (2, 1, 6), (3, 1, 2), (2, 2, 2), (2, 2, 3), (7, 1, 2), (3, 1, 3)] {
        let t = FieldTower::new(p, e, h).unwrap();
        let k = t.base();
        let els: Vec<_> = t.elements().collect();
        // linearity on all pairs with a few scalars, surjectivity
        for a in &els {
            for b in els.iter().step_by(3) {
                for l in k.elements() {
                    for m in [0, 1, k.order() - 1] {
                        let lhs = t.trace(&t.add(&t.scale(l, a), &t.scale(m, b)));
                        let rhs = k.add(k.mul(l, t.trace(a)), k.mul(m, t.trace(b)));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        let mut image: Vec<u32> = els.iter().map(|a| t.trace(a)).collect();
        image.sort_unstable();
        image.dedup();
        assert_eq!(image.len() as u32, k.order());
        // Frobenius: F_q-linear bijection whose fixed points are F_q
        let frob: Vec<_> = els.iter().map(|a| t.frobenius(a)).collect();
        let mut sorted = frob.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), els.len());
        let fixed = els.iter().zip(&frob).filter(|(a, f)| a == f).count();
        assert_eq!(fixed as u32, k.order());
        for (a, fa) in els.iter().zip(&frob) {
            assert_eq!(*fa, t.pow(a, k.order() as u64));
            assert_eq!(t.frobenius(&t.scale(k.order() - 1, a)), t.scale(k.order() - 1, fa));
        }
        // a generator of order q^h - 1
        let n = t.order() - 1;
        let g = els
            .iter()
            .find(|a| !a.is_zero() && t.multiplicative_order(a).unwrap() == n)
            .expect("cyclic");
        let mut seen = std::collections::BTreeSet::new();
        let mut x = t.one();
        for _ in 0..n {
            seen.insert(x.clone());
            x = t.mul(&x, g);
        }
        assert_eq!(seen.len() as u64, n);
        assert!(t.inv(&t.zero()).is_err());
    }
}

#[test]
fn f4_reference_values() {
    let t = FieldTower::new(2, 1, 2).unwrap();
    let xi = t.xi();
    assert_eq!(t.mul(&xi, &xi), t.add(&xi, &t.one()));
    assert_eq!(t.trace(&t.one()), 0);
    assert_eq!(t.trace(&xi), 1);
    assert_eq!(t.expand(&xi), vec![0, 1]);
    assert_eq!(t.contract(&[1, 1]).unwrap(), t.add(&t.one(), &xi));
    assert!(t.contract(&[1]).is_err());
}

fn tower_strategy() -> impl Strategy<Value = Arc<FieldTower>> {
    prop::sample::select(common::TOWERS.to_vec()).prop_map(|(p, e, h)| tower(p, e, h))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(t in tower_strategy(), i in any::<u64>(), j in any::<u64>(), l in any::<u64>()) {
        let n = t.order();
        let (a, b, c) = (t.element(i % n), t.element(j % n), t.element(l % n));
        prop_assert_eq!(t.mul(&a, &t.add(&b, &c)), t.add(&t.mul(&a, &b), &t.mul(&a, &c)));
        prop_assert_eq!(t.mul(&a, &t.one()), a.clone());
        prop_assert!(t.add(&a, &t.neg(&a)).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(t.mul(&a, &t.inv(&a).unwrap()), t.one());
        }
        prop_assert_eq!(t.contract(&t.expand(&a)).unwrap(), a.clone());
        prop_assert_eq!(t.index_of(&a), i % n);
        let sum = t.expand(&t.add(&a, &b));
        let k = t.base();
        let parts: Vec<u32> = t.expand(&a).iter().zip(t.expand(&b)).map(|(&x, y)| k.add(x, y)).collect();
        prop_assert_eq!(sum, parts);
    }
}

// ---------------------------------------------------------- linear algebra

fn random_matrix(rng: &mut ChaCha8Rng, k: &BaseField, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen_range(0..k.order()));
        }
    }
    m
}

fn random_subspace(rng: &mut ChaCha8Rng, k: &BaseField, m: usize) -> Subspace {
    let rows = rng.gen_range(0..=m);
    Subspace::row_space(k, &random_matrix(rng, k, rows, m))
}

fn is_rref(m: &Matrix) -> bool {
    let mut last: Option<usize> = None;
    for i in 0..m.rows() {
        let Some(p) = m.row(i).iter().position(|&x| x != 0) else {
            return false;
        };
        if last.is_some_and(|l| p <= l) || m.get(i, p) != 1 {
            return false;
        }
        if (0..m.rows()).any(|r| r != i && m.get(r, p) != 0) {
            return false;
        }
        last = Some(p);
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rref_is_canonical(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 4, 5]), m in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = BaseField::with_order(q).unwrap();
        let a = random_subspace(&mut rng, &k, m);
        prop_assert!(is_rref(a.basis()));
        // random invertible change of basis plus redundant rows
        let d = a.dim();
        let mut rows = Matrix::zeros(0, m);
        loop {
            let c = random_matrix(&mut rng, &k, d, d);
            if c.rank(&k) == d {
                let b = c.mul(&k, a.basis()).unwrap();
                for r in b.iter_rows() {
                    rows.push_row(r).unwrap();
                }
                break;
            }
        }
        let extra = random_matrix(&mut rng, &k, 2, d.max(1));
        if d > 0 {
            let e = extra.mul(&k, a.basis()).unwrap();
            for r in e.iter_rows() {
                rows.push_row(r).unwrap();
            }
        }
        prop_assert_eq!(Subspace::row_space(&k, &rows), a.clone());
        prop_assert_eq!(rows.rref(&k).rref(&k), rows.rref(&k));
    }

    #[test]
    fn dimension_formula_and_perp(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 4]), m in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = BaseField::with_order(q).unwrap();
        let a = random_subspace(&mut rng, &k, m);
        let b = random_subspace(&mut rng, &k, m);
        let meet = a.intersect(&k, &b).unwrap();
        let join = a.sum(&k, &b).unwrap();
        prop_assert_eq!(meet.dim() + join.dim(), a.dim() + b.dim());
        prop_assert!(meet.is_subspace_of(&k, &a).unwrap() && meet.is_subspace_of(&k, &b).unwrap());
        // brute-force intersection count
        let count = a.elements(&k).filter(|v| b.contains(&k, v).unwrap()).count();
        prop_assert_eq!(count as u64, (q).pow(meet.dim() as u32));
        // perp: involution, inclusion reversing, dimension
        prop_assert_eq!(a.perp(&k).perp(&k), a.clone());
        prop_assert_eq!(a.perp(&k).dim(), m - a.dim());
        if meet == a {
            prop_assert!(b.perp(&k).is_subspace_of(&k, &a.perp(&k)).unwrap());
        }
        if meet.is_zero() {
            prop_assert_eq!(a.perp(&k).sum(&k, &b.perp(&k)).unwrap().dim(), m);
        }
        // kernel
        let mat = random_matrix(&mut rng, &k, 3, m);
        let ker = mat.kernel(&k);
        prop_assert_eq!(ker.dim(), m - mat.rank(&k));
        for v in ker.basis().iter_rows() {
            prop_assert!(mat.transpose().left_mul(&k, v).unwrap().iter().all(|&x| x == 0));
        }
    }
}

#[test]
fn random_dim3_pairs_in_f2_5_meet() {
    let k = BaseField::prime(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let a = Subspace::row_space(&k, &random_matrix(&mut rng, &k, 3, 5));
        let b = Subspace::row_space(&k, &random_matrix(&mut rng, &k, 3, 5));
        if a.dim() == 3 && b.dim() == 3 {
            assert!(a.intersect(&k, &b).unwrap().dim() >= 1);
        }
    }
}

#[test]
fn vandermonde_has_full_rank_over_the_big_field() {
    // rows alpha_i^j: expanded, any k rows of the F_{q^h}-matrix stay
    // independent, so the additive code they generate has r = kh.
    let t = tower(2, 1, 3);
    let alphas: Vec<_> = t.elements().skip(1).take(4).collect();
    let k = 3;
    let rows: Vec<Vec<_>> = (0..k).map(|j| alphas.iter().map(|a| t.pow(a, j as u64)).collect()).collect();
    let mut scaled = Vec::new();
    for row in &rows {
        for b in 0..3 {
            scaled.push(row.iter().map(|x| t.mul(x, &t.basis(b))).collect::<Vec<_>>());
        }
    }
    let code = qmds::AdditiveCode::new(t.clone(), 4, scaled).unwrap();
    assert_eq!(code.r(), k * 3);
    // brute-force: kernel of the Vandermonde map is trivial
    assert_eq!(brute_distance(&code), 4 - k + 1);
}

// ----------------------------------------------------------------- codes

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn code_laws_on_random_codes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = common::random_small_code(&mut rng);
        let limits = Limits::default();
        let mut t = common::Tally::default();
        common::check_weight_formula(&code, &mut t);
        common::check_singleton(&code, &limits, &mut t);
        common::check_length_bound(&code, &mut t);
        if code.r() < code.n() * code.h() {
            common::check_duality(&code, &mut t);
            common::check_faithfulness(&code, &limits, &mut t);
            common::check_iff_dqmds(&code, &mut t);
            common::check_quotients(&code, &limits, &mut t);
            common::check_length_ceiling(&code, &mut t);
        }
        prop_assert!(t.violations.is_empty(), "{:?}", t.violations);
    }
}

#[test]
fn thousand_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xadd);
    let (tallies, in_scope) = common::property_suite(&mut rng, 1000);
    for t in &tallies {
        assert!(t.checked > 0, "{} never exercised", t.name);
        assert!(t.violations.is_empty(), "{}: {:?}", t.name, &t.violations[..t.violations.len().min(5)]);
    }
    assert!(in_scope >= 50, "only {in_scope} codes exercised condition (b)");
}

#[test]
fn unfaithful_code_has_dual_distance_one() {
    let t = tower(2, 1, 2);
    // second column only takes values in F_2
    let rows = vec![vec![t.one(), t.one()], vec![t.xi(), t.zero()]];
    let c = qmds::AdditiveCode::new(t, 2, rows).unwrap();
    assert!(!c.is_faithful());
    assert_eq!(c.dual_distance(&Limits::default()).unwrap(), 1);
    assert_eq!(brute_distance(&c.dual()), 1);
}

// -------------------------------------------------------------- packings

#[test]
fn packing_checks_agree_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let limits = Limits::default();
    for _ in 0..300 {
        let q = [2u64, 3][rng.gen_range(0..2)];
        let k = Arc::new(BaseField::with_order(q).unwrap());
        let m = rng.gen_range(2..=5);
        let blocks: Vec<Subspace> = (0..rng.gen_range(1..8))
            .map(|_| {
                let rows = rng.gen_range(1..=m - 1);
                Subspace::row_space(&k, &random_matrix(&mut rng, &k, rows, m))
            })
            .collect();
        let p = Packing::new(k.clone(), m, blocks).unwrap();
        let worst = vectors(q as u32, m)
            .skip(1)
            .map(|v| p.blocks().iter().filter(|b| b.contains(&k, &v).unwrap()).count())
            .max()
            .unwrap();
        for lambda in 1..=3 {
            let check = p.verify_lambda_packing(lambda, &limits).unwrap();
            assert_eq!(check.max_multiplicity, worst);
            assert_eq!(check.holds(), worst <= lambda);
            assert_eq!(check.subset_witness.is_some(), worst > lambda);
        }
    }
}

#[test]
fn spreads() {
    let limits = Limits::default();
    for (q, r, t) in [(2u64, 4usize, 2usize), (2, 6, 3), (2, 6, 2), (3, 4, 2), (4, 4, 2), (2, 8, 4)] {
        let k = Arc::new(BaseField::with_order(q).unwrap());
        let s = desarguesian_spread(k.clone(), r, t).unwrap();
        let check = s.verify_lambda_packing(1, &limits).unwrap();
        assert!(check.holds());
        assert_eq!(s.len() as u128, ((q as u128).pow(r as u32) - 1) / ((q as u128).pow(t as u32) - 1));
        // every point exactly once
        let covered: usize = s.blocks().iter().map(|b| b.points(&k).count()).sum();
        assert_eq!(covered as u128, qmds::subspace::point_count(q, r));
    }
    for (q, r, t) in [(2u64, 5usize, 2usize), (2, 7, 2), (2, 7, 3), (3, 5, 2), (2, 8, 3), (4, 5, 2)] {
        let k = Arc::new(BaseField::with_order(q).unwrap());
        let s = beutelspacher_spread(k, r, t).unwrap();
        assert_eq!(s.len() as u128, beutelspacher_size(q, r, t));
        assert!(s.len() as u128 <= spread_upper_bound(q, r, t).unwrap());
        assert!(s.is_partial_spread(t));
    }
}

/// Pairwise intersections of `Gamma^⊥` have dimension `r - 2t`; triple
/// intersections are checked per instance and can be nontrivial.
#[test]
fn perp_of_partial_spread() {
    let k = Arc::new(BaseField::prime(2).unwrap());
    for (r, t) in [(6usize, 2usize), (6, 3), (4, 2), (5, 2)] {
        let s = default_partial_spread(k.clone(), r, t).unwrap();
        let perps: Vec<Subspace> = s.blocks().iter().map(|b| b.perp(&k)).collect();
        for i in 0..perps.len() {
            for j in i + 1..perps.len() {
                assert_eq!(perps[i].intersect(&k, &perps[j]).unwrap().dim(), r - 2 * t);
            }
        }
    }
    // 21 lines of the Desarguesian line spread of PG(5,2): some three lie in
    // a hyperplane, so their perps meet nontrivially
    let s = desarguesian_spread(k.clone(), 6, 2).unwrap();
    let perps: Vec<Subspace> = s.blocks().iter().map(|b| b.perp(&k)).collect();
    let mut bad = 0;
    for a in 0..perps.len() {
        for b in a + 1..perps.len() {
            let ab = perps[a].intersect(&k, &perps[b]).unwrap();
            for c in b + 1..perps.len() {
                if !ab.intersect(&k, &perps[c]).unwrap().is_zero() {
                    bad += 1;
                }
            }
        }
    }
    assert!(bad > 0);
}

// ---------------------------------------------------------- constructions

#[test]
fn constructed_codes_meet_their_contracts() {
    let limits = Limits::default();
    let cases: &[(Family, u64, usize, usize, usize)] = &[
        (Family::A, 2, 2, 2, 1),
        (Family::A, 2, 2, 3, 1),
        (Family::A, 3, 2, 2, 1),
        (Family::A, 3, 2, 3, 1),
        (Family::A, 2, 3, 2, 1),
        (Family::A, 2, 3, 3, 1),
        (Family::A, 4, 2, 2, 1),
        (Family::A, 2, 4, 2, 2),
        (Family::A, 2, 4, 3, 1),
        (Family::Spread, 2, 2, 2, 1),
        (Family::Spread, 3, 2, 2, 1),
        (Family::Spread, 2, 3, 2, 1),
        (Family::Spread, 2, 3, 2, 2),
        (Family::Spread, 2, 4, 2, 2),
        (Family::B, 2, 6, 3, 1),
    ];
    for &(f, q, h, k, r0) in cases {
        let c = construct(f, ConstructionParams::new(q, h, k, r0), &limits).unwrap();
        let code = &c.code;
        let name = format!("{f}({q},{h},{k},{r0})");
        assert!(c.packing.verify_lambda_packing(k - 1, &limits).unwrap().holds(), "{name}");
        let d = c.distance.expect("in cap");
        assert_eq!(d + code.k(), code.n() + 1, "{name} QMDS");
        if (code.q() as f64).powi(code.r() as i32) <= 65536.0 {
            assert_eq!(brute_distance(code), d, "{name}");
        }
        let qh = (q as u128).pow(h as u32);
        let f_long = c.details.iter().find(|(k, _)| k == "f").map(|(_, v)| v.parse::<i64>().unwrap());
        if f != Family::Spread || f_long.unwrap() >= 2 {
            assert!(code.n() as u128 > qh + 1, "{name} long");
        }
        let bound = qmds_length_bound(q, h, k, r0_of(code.r(), h)).unwrap();
        assert!(code.n() as u128 <= bound.floor, "{name} bound");
        let dual_qmds = code.dual_is_qmds_direct(&limits).unwrap();
        if k >= 3 {
            assert!(!dual_qmds, "{name} dual should not be QMDS");
            assert!(code.condition_b().unwrap().is_some());
        } else {
            assert!(dual_qmds, "{name} dual should be QMDS");
            assert!(code.condition_b().unwrap().is_none());
        }
    }
}

#[test]
fn non_extendability() {
    let limits = Limits::default();
    for (q, h) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let c = construct(Family::A, ConstructionParams::new(q, h, 3, 1), &limits).unwrap();
        let hit = c.packing.extend_search(2, c.code.r() - h, &limits).unwrap();
        assert!(hit.is_none(), "A({q},{h},3,1) extends by {hit:?}");
    }
    // family B needs h >= 6: the k = 4 search space is far beyond the cap
    let b = construct(Family::B, ConstructionParams::new(2, 6, 4, 1), &limits).unwrap();
    match b.packing.extend_search(3, b.code.r() - 6, &limits) {
        Err(Error::CapExceeded { .. }) => {}
        other => panic!("expected the cap to trigger, got {other:?}"),
    }
}

#[test]
fn invalid_family_parameters_are_rejected() {
    let limits = Limits::default();
    for (f, q, h, k, r0) in [
        (Family::B, 2u64, 4usize, 3usize, 1usize),
        (Family::B, 2, 7, 3, 1),
        (Family::A, 2, 2, 4, 1),
        (Family::A, 2, 1, 2, 1),
        (Family::Spread, 2, 2, 3, 1),
        (Family::Spread, 2, 2, 2, 2),
    ] {
        let err = construct(f, ConstructionParams::new(q, h, k, r0), &limits).unwrap_err();
        assert!(matches!(err, Error::InvalidParams(_)), "{f}({q},{h},{k},{r0}): {err}");
    }
}

// ---------------------------------------------------------------- geometry

#[test]
fn dual_arcs_and_codes() {
    let limits = Limits::default();
    let DhoSearch::Found(arc) = search_dho(2, 2, &limits).unwrap() else {
        panic!("no DHO for q = 2");
    };
    let p = arc.to_packing();
    assert!(p.verify_lambda_packing(2, &limits).unwrap().holds());
    let t = tower(2, 1, 2);
    let code = dda_to_code(&arc, t).unwrap();
    assert!(code.is_faithful());
    assert!(code.block_perps().iter().all(|w| w.dim() == 3));
    assert!(code.condition_b().unwrap().is_none());
    assert!(dually_brute(&code));
    let back = code_to_dda(&code, &limits).unwrap();
    assert_eq!(back.to_packing().multiset(), p.multiset());
    // sub-arcs are DDAs but not hyperovals; their codes stay dually QMDS
    for drop in 0..8 {
        let mut blocks = arc.blocks.clone();
        blocks.remove(drop);
        let sub = qmds::geometry::DualArcCandidate::new(arc.field.clone(), 5, blocks).unwrap();
        assert!(sub.is_dda().unwrap());
        assert!(!sub.is_dho().unwrap());
        let c = dda_to_code(&sub, tower(2, 1, 2)).unwrap();
        assert!(dually_brute(&c));
    }
}

#[test]
fn odd_q_dually_qmds_codes_stay_below_theta_plus_one() {
    // random [n, 2 + 1/2]_3^2 codes and their quotients
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let t = tower(3, 1, 2);
    let mut dually = 0;
    for _ in 0..300 {
        let n = rng.gen_range(4..=8);
        let code = common::random_code(&mut rng, &t, n, 5);
        if dually_brute(&code) {
            dually += 1;
            assert!(code.n() as u128 <= qmds::geometry::theta(3, 2));
            let qc = code.geometric_quotient(&[1]).unwrap().code;
            assert!(dually_brute(&qc));
        }
    }
    assert!(dually > 0);
}
