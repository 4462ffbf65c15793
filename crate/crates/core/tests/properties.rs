//! Structural invariants of the component calculus.

use std::collections::BTreeSet;

use nilvar::exactalg::{FieldCtx, PrimeField};
use nilvar::multiset::RootMultiset;
use nilvar::par::{ExecMode, TrialConfig};
use nilvar::pimod::{
    build_extension, check_pi, dual_pimod, ext1_pi_dim_cb, ext_space, hom_pi_dim,
};
use nilvar::qrep::hom_q_dim;
use nilvar::quiver::{DimVector, Quiver};
use nilvar::starops::{Side, StarEngine};
use nilvar::taudata::{hom_pi_via_t, split_by_tau_vanishing, star_criterion, t_map, TauMod};
use proptest::prelude::*;

fn engine(q: &Quiver) -> StarEngine {
    StarEngine::new(q, TrialConfig::default()).unwrap()
}

/// Components with total dimension at most `k`.
fn up_to(e: &StarEngine, k: usize) -> Vec<RootMultiset> {
    let n = e.quiver().vertex_count();
    DimVector(vec![k; n])
        .box_below()
        .into_iter()
        .filter(|d| d.total() <= k)
        .flat_map(|d| e.enumerate_components(&d).unwrap())
        .collect()
}

/// Ordered pairs whose combined total dimension is at most `k`.
fn pairs_up_to(e: &StarEngine, k: usize) -> Vec<(RootMultiset, RootMultiset)> {
    let n = e.quiver().vertex_count();
    let cs = up_to(e, k);
    let mut out = Vec::new();
    for a in &cs {
        for b in &cs {
            if a.grdim(n).total() + b.grdim(n).total() <= k {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn small_engines() -> Vec<StarEngine> {
    vec![engine(&Quiver::a_n(2)), engine(&Quiver::a_n(3))]
}

#[test]
fn star_adds_dimensions_and_has_unit() {
    for e in small_engines() {
        let n = e.quiver().vertex_count();
        for (m, k) in pairs_up_to(&e, 4) {
            let r = e.star_product(&m, &k).unwrap();
            assert_eq!(r.result.grdim(n), m.grdim(n).add(&k.grdim(n)));
            assert!(r.agreement <= r.trials);
        }
        for m in up_to(&e, 3) {
            assert_eq!(e.star(&m, &RootMultiset::empty()).unwrap(), m);
            assert_eq!(e.star(&RootMultiset::empty(), &m).unwrap(), m);
        }
    }
}

#[test]
fn strong_commutation_means_direct_sum() {
    for e in small_engines() {
        for (m, k) in pairs_up_to(&e, 4) {
            let strong = e.strongly_commute(&m, &k).unwrap();
            let sum = m.sum(&k);
            let both = e.star(&m, &k).unwrap() == sum && e.star(&k, &m).unwrap() == sum;
            assert_eq!(strong, both, "({m}, {k})");
            if strong {
                assert!(e.weakly_commute(&m, &k).unwrap());
            }
        }
    }
}

#[test]
fn criterion_matches_product() {
    for e in small_engines() {
        for (m, k) in pairs_up_to(&e, 4) {
            let crit = star_criterion(e.catalog(), &m, &k, e.config()).unwrap();
            let prod = e.star(&m, &k).unwrap() == m.sum(&k);
            assert_eq!(crit, prod, "({m}, {k})");
        }
    }
}

#[test]
fn crystal_inverse_and_dual_involution() {
    for e in small_engines() {
        let n = e.quiver().vertex_count();
        for m in up_to(&e, 3) {
            for i in 0..n {
                let up = e.crystal_f(i, &m, Side::Left).unwrap();
                assert_eq!(e.crystal_e(i, &up).unwrap(), Some(m.clone()));
                let right = e.crystal_f(i, &m, Side::Right).unwrap();
                assert_eq!(right.grdim(n), m.grdim(n).add(&DimVector::unit(n, i)));
            }
        }
        for m in up_to(&e, 4) {
            assert_eq!(e.dual_component(&e.dual_component(&m).unwrap()).unwrap(), m);
        }
    }
}

#[test]
fn duality_reverses_products_on_a3() {
    let e = engine(&Quiver::a_n(3));
    for (m, k) in pairs_up_to(&e, 4) {
        let lhs = e.dual_component(&e.star(&m, &k).unwrap()).unwrap();
        let rhs = e
            .star(&e.dual_component(&k).unwrap(), &e.dual_component(&m).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "({m}, {k})");
    }
}

#[test]
fn crystal_reaches_every_component() {
    for e in small_engines() {
        let g = e.crystal_graph(4).unwrap();
        let reached: BTreeSet<_> = g.nodes.into_iter().collect();
        let all: BTreeSet<_> = up_to(&e, 4).into_iter().collect();
        assert_eq!(reached, all);
    }
}

#[test]
fn rigid_products_have_rigid_factors() {
    let e = engine(&Quiver::a_n(3));
    let mut checked = 0;
    for (m, k) in pairs_up_to(&e, 4) {
        if e.is_rigid(&e.star(&m, &k).unwrap()).unwrap() && e.generic_hom(&k, &m).unwrap() == 0 {
            assert!(e.is_rigid(&m).unwrap() && e.is_rigid(&k).unwrap(), "({m}, {k})");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn sequential_and_parallel_agree() {
    let q = Quiver::a_n(3);
    let par = StarEngine::new(&q, TrialConfig::default()).unwrap();
    let seq = StarEngine::new(&q, TrialConfig::default().with_mode(ExecMode::Sequential)).unwrap();
    for (m, k) in pairs_up_to(&par, 3) {
        assert_eq!(par.star_product(&m, &k).unwrap(), seq.star_product(&m, &k).unwrap());
    }
    let d = DimVector(vec![1, 1, 1]);
    assert_eq!(par.ext_table(&d).unwrap(), seq.ext_table(&d).unwrap());
}

fn a3_component() -> impl Strategy<Value = RootMultiset> {
    let e = engine(&Quiver::a_n(3));
    let cs = up_to(&e, 3);
    prop::sample::select(cs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ext_is_symmetric_and_duality_preserves_hom(m in a3_component(), k in a3_component(), seed in 0u64..1000) {
        let q = Quiver::a_n(3);
        let e = engine(&q);
        let mut ctx = FieldCtx::new(PrimeField::default(), seed);
        let x1 = e.sample(&m, &mut ctx).unwrap();
        let x2 = e.sample(&k, &mut ctx).unwrap();
        let s = ext_space(&q, &x1, &x2).unwrap();
        let x = build_extension(&q, &x1, &x2, &s.random_class(&mut ctx)).unwrap();
        let y = e.sample(&k, &mut ctx).unwrap();
        prop_assert!(check_pi(&q, &x));
        prop_assert_eq!(ext1_pi_dim_cb(&q, &x, &y).unwrap(), ext1_pi_dim_cb(&q, &y, &x).unwrap());
        let (dx, dy) = (dual_pimod(&q, &x), dual_pimod(&q, &y));
        prop_assert!(check_pi(&q, &dx));
        prop_assert_eq!(hom_pi_dim(&q, &x, &y), hom_pi_dim(&q, &dy, &dx));
    }

    #[test]
    fn t_map_rank_nullity(m in a3_component(), k in a3_component(), seed in 0u64..1000) {
        let q = Quiver::a_n(3);
        let e = engine(&q);
        let mut ctx = FieldCtx::new(PrimeField::default(), seed);
        let x = TauMod::random(&q, e.catalog().rep_of_multiset(&m).unwrap(), &mut ctx).unwrap();
        let y = TauMod::random(&q, e.catalog().rep_of_multiset(&k).unwrap(), &mut ctx).unwrap();
        let t = t_map(&q, &x, &y).unwrap();
        let target = hom_q_dim(&q, x.rep(), y.tau_image().rep());
        let domain = hom_q_dim(&q, x.rep(), y.rep());
        prop_assert_eq!(t.coker_dim() + domain, target + hom_pi_via_t(&q, &x, &y).unwrap());
    }

    #[test]
    fn splitting_respects_dimensions(m in a3_component(), k in a3_component(), seed in 0u64..1000) {
        let q = Quiver::a_n(3);
        let e = engine(&q);
        let cat = e.catalog();
        let (m1, m2) = (cat.rep_of_multiset(&m).unwrap(), cat.rep_of_multiset(&k).unwrap());
        let mut ctx = FieldCtx::new(PrimeField::default(), seed);
        let x = TauMod::random(&q, m1.direct_sum(&m2), &mut ctx).unwrap();
        let hyp = hom_q_dim(&q, &m2, nilvar::coxeter::tau(&q, &m1).unwrap().rep()) == 0;
        match split_by_tau_vanishing(&q, &x, &m1, &m2) {
            Ok((x1, x2)) => {
                prop_assert!(hyp);
                prop_assert_eq!(x1.dim().add(x2.dim()), x.dim().clone());
            }
            Err(_) => prop_assert!(!hyp),
        }
    }
}
