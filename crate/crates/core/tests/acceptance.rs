//! Acceptance gate: one line per criterion, all must pass.

use std::time::{Duration, Instant};

use nilvar::catalog::Catalog;
use nilvar::coxeter::tau;
use nilvar::exactalg::{FieldCtx, PrimeField};
use nilvar::multiset::RootMultiset;
use nilvar::par::TrialConfig;
use nilvar::pimod::{
    build_extension, ext_space, ext_space_unchecked, hom_pi_dim, is_rigid_component,
    orbitmap_coker_dim,
};
use nilvar::qrep::{ext1_q_dim, hom_q_dim};
use nilvar::quiver::{DimVector, Quiver};
use nilvar::starops::{Side, StarEngine};
use nilvar::taudata::{ext1_pi_via_t, TauMod};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TRIALS: usize = 7;
const MIN_AGREEMENT: usize = 5;
const CB_PAIRS: usize = 100;
const ORBIT_TRIPLES: usize = 30;
const A2_PRODUCT_BUDGET: Duration = Duration::from_secs(1);
const SUITE_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ms(s: &str) -> RootMultiset {
    s.parse().unwrap()
}

fn cfg() -> TrialConfig {
    TrialConfig::new(PrimeField::default(), 0, TRIALS)
}

fn engine(q: &Quiver) -> StarEngine {
    StarEngine::new(q, cfg()).unwrap()
}

/// Components with `grdim ≤ top` componentwise.
fn components_below(e: &StarEngine, top: &[usize]) -> Vec<RootMultiset> {
    DimVector(top.to_vec())
        .box_below()
        .iter()
        .flat_map(|d| e.enumerate_components(d).unwrap())
        .collect()
}

fn ordered_pairs(xs: &[RootMultiset]) -> Vec<(RootMultiset, RootMultiset)> {
    xs.iter()
        .flat_map(|a| xs.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

fn fail<T: std::fmt::Debug>(what: &str, got: T) -> Outcome {
    Err(format!("{what}: {got:?}"))
}

fn a2_product_table() -> Outcome {
    let e = engine(&Quiver::a_n(2));
    let start = Instant::now();
    let r12 = e.star_product(&ms("[1,0]"), &ms("[0,1]")).map_err(|x| x.to_string())?;
    let r21 = e.star_product(&ms("[0,1]"), &ms("[1,0]")).map_err(|x| x.to_string())?;
    let took = start.elapsed();
    if r12.result != ms("[1,1]") {
        return fail("S(1)*S(2)", r12);
    }
    if r21.result != ms("[1,0]+[0,1]") {
        return fail("S(2)*S(1)", r21);
    }
    if r12.agreement < MIN_AGREEMENT || r21.agreement < MIN_AGREEMENT {
        return fail("agreement", (r12.agreement, r21.agreement));
    }
    if took > A2_PRODUCT_BUDGET {
        return fail("runtime", took);
    }
    Ok(format!(
        "agreement {}/{} and {}/{}, {took:.2?}",
        r12.agreement, r12.trials, r21.agreement, r21.trials
    ))
}

fn associativity_failure() -> Outcome {
    let e = engine(&Quiver::a_n(2));
    let r = e
        .associativity_probe(&ms("[1,0]"), &ms("[0,1]"), &ms("[1,0]"))
        .map_err(|x| x.to_string())?;
    if r.left == ms("[1,1]+[1,0]") && r.right == ms("[1,0]^2+[0,1]") && !r.equal {
        Ok(format!("left {}, right {}", r.left, r.right))
    } else {
        fail("probe", r)
    }
}

/// Random Π-modules: generic extensions of random conormal points.
fn random_module(cat: &Catalog, comps: &[RootMultiset], rng: &mut ChaCha8Rng, ctx: &mut FieldCtx) -> nilvar::pimod::PiMod {
    let q = cat.quiver();
    let m = &comps[rng.random_range(0..comps.len())];
    let n = &comps[rng.random_range(0..comps.len())];
    let x1 = nilvar::pimod::sample_conormal(cat, m, ctx).unwrap();
    let x2 = nilvar::pimod::sample_conormal(cat, n, ctx).unwrap();
    let s = ext_space_unchecked(q, &x1, &x2).unwrap();
    build_extension(q, &x1, &x2, &s.random_class(ctx)).unwrap()
}

fn crawley_boevey_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let setups: Vec<(StarEngine, Vec<RootMultiset>)> = [(Quiver::a_n(2), vec![1, 1]), (Quiver::a_n(3), vec![1, 1, 1])]
        .into_iter()
        .map(|(q, top)| {
            let e = engine(&q);
            let comps = components_below(&e, &top);
            (e, comps)
        })
        .collect();
    let mut bad = Vec::new();
    for k in 0..CB_PAIRS {
        let (e, comps) = &setups[k % 2];
        let q = e.quiver();
        let mut ctx = FieldCtx::new(PrimeField::default(), k as u64);
        let x = random_module(e.catalog(), comps, &mut rng, &mut ctx);
        let y = random_module(e.catalog(), comps, &mut rng, &mut ctx);
        let ext = ext_space_unchecked(q, &x, &y).unwrap().dim() as i64;
        let lhs = hom_pi_dim(q, &x, &y) as i64 - ext + hom_pi_dim(q, &y, &x) as i64;
        if lhs != q.sym_form(x.dim(), y.dim()).unwrap() {
            bad.push((k, x.dim().to_string(), y.dim().to_string()));
        }
    }
    if bad.is_empty() {
        Ok(format!("{CB_PAIRS} pairs, 0 failures"))
    } else {
        fail("failing pairs", bad)
    }
}

fn route_agreement() -> Outcome {
    let mut cases = 0;
    for (q, top) in [(Quiver::a_n(2), vec![2, 2]), (Quiver::a_n(3), vec![1, 1, 1])] {
        let e = engine(&q);
        let c = cfg();
        for (m, n) in ordered_pairs(&components_below(&e, &top)) {
            let via_cb = e.generic_ext(&m, &n).map_err(|x| x.to_string())?;
            let mq = e.catalog().rep_of_multiset(&m).unwrap();
            let nq = e.catalog().rep_of_multiset(&n).unwrap();
            let via_t = c
                .run(|ctx| {
                    let x = TauMod::random(&q, mq.clone(), ctx).unwrap();
                    let y = TauMod::random(&q, nq.clone(), ctx).unwrap();
                    ext1_pi_via_t(&q, &x, &y).unwrap()
                })
                .into_iter()
                .min()
                .unwrap();
            if via_cb != via_t {
                return fail(&format!("({m}, {n}) on {}", q.dynkin_type().unwrap()), (via_cb, via_t));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} ordered pairs"))
}

fn ar_formula() -> Outcome {
    let mut cases = 0;
    for q in [Quiver::a_n(2), Quiver::a_n(3)] {
        let cat = Catalog::build(&q, PrimeField::default(), 0).unwrap();
        for a in cat.roots().roots() {
            let m = cat.indecomposable(a).unwrap();
            let tm = tau(&q, m).unwrap();
            for b in cat.roots().roots() {
                let n = cat.indecomposable(b).unwrap();
                let lhs = ext1_q_dim(&q, m, n).unwrap();
                let rhs = hom_q_dim(&q, n, tm.rep());
                if lhs != rhs {
                    return fail(&format!("({a}, {b})"), (lhs, rhs));
                }
                cases += 1;
            }
        }
    }
    if cases != 9 + 36 {
        return fail("case count", cases);
    }
    Ok(format!("{cases} ordered pairs"))
}

fn purity() -> Outcome {
    let q = Quiver::a_n(3);
    let e = engine(&q);
    let mut cases = 0;
    for d in DimVector(vec![6, 6, 6]).box_below() {
        if d.total() > 6 {
            continue;
        }
        for m in e.enumerate_components(&d).unwrap() {
            let x = e.catalog().rep_of_multiset(&m).unwrap();
            let orbit = q.group_dim(&d) - hom_q_dim(&q, &x, &x);
            let t = tau(&q, &x).unwrap();
            let lhs = orbit + hom_q_dim(&q, &x, t.rep());
            if lhs != q.rep_space_dim(&d) {
                return fail(&m.to_string(), (lhs, q.rep_space_dim(&d)));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} multisets"))
}

fn rigidity_ledger() -> Outcome {
    let q = Quiver::a_n(3);
    let e = engine(&q);
    let mut cases: Vec<RootMultiset> = e
        .catalog()
        .roots()
        .roots()
        .iter()
        .map(|r| RootMultiset::singleton(r.clone()))
        .collect();
    cases.extend(
        components_below(&e, &[2, 2, 2])
            .into_iter()
            .filter(RootMultiset::is_semisimple),
    );
    let mut worst = TRIALS;
    for m in &cases {
        let v = is_rigid_component(e.catalog(), m, &cfg()).map_err(|x| x.to_string())?;
        if !v.rigid || v.agreement < MIN_AGREEMENT {
            return fail(&m.to_string(), v);
        }
        worst = worst.min(v.agreement);
    }
    Ok(format!("{} components, min agreement {worst}/{TRIALS}", cases.len()))
}

fn duality() -> Outcome {
    let e = engine(&Quiver::a_n(2));
    let comps = components_below(&e, &[2, 2]);
    let dual = |m: &RootMultiset| e.dual_component(m).unwrap();
    let star = |m: &RootMultiset, n: &RootMultiset| e.star(m, n).unwrap();
    let pairs = ordered_pairs(&comps);
    for (m, n) in &pairs {
        let lhs = dual(&star(m, n));
        let rhs = star(&dual(n), &dual(m));
        if lhs != rhs {
            return fail(&format!("({m}, {n})"), (lhs.to_string(), rhs.to_string()));
        }
    }
    Ok(format!("{} ordered pairs", pairs.len()))
}

fn cancellation() -> Outcome {
    let e = engine(&Quiver::a_n(3));
    let s1 = ms("[1,0,0]");
    let ns = components_below(&e, &[1, 1, 1]);
    if !e.cancellation_probe(&s1, &ns).map_err(|x| x.to_string())? {
        return fail("n -> S(1) * n", "not injective");
    }
    for m in &ns {
        let up = e.crystal_f(0, m, Side::Left).unwrap();
        let back = e.crystal_e(0, &up).unwrap();
        if back.as_ref() != Some(m) {
            return fail(&format!("e1 f1 {m}"), back.map(|b| b.to_string()));
        }
    }
    Ok(format!("{} components", ns.len()))
}

fn commutativity_dichotomy() -> Outcome {
    let e = engine(&Quiver::a_n(2));
    let comps = components_below(&e, &[2, 2]);
    let rigid: Vec<bool> = comps.iter().map(|m| e.is_rigid(m).unwrap()).collect();
    let mut cases = 0;
    for (a, m) in comps.iter().enumerate() {
        for (b, n) in comps.iter().enumerate() {
            if !(rigid[a] || rigid[b]) {
                continue;
            }
            let strong = e.strongly_commute(m, n).unwrap();
            let weak = e.weakly_commute(m, n).unwrap();
            if strong != weak {
                return fail(&format!("({m}, {n})"), (strong, weak));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} ordered pairs with a rigid side"))
}

fn orbit_map_identity() -> Outcome {
    let q = Quiver::a_n(3);
    let e = engine(&q);
    let comps = components_below(&e, &[1, 1, 1]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut ctx = FieldCtx::new(PrimeField::default(), 11);
    let (mut found, mut attempts, mut nonzero) = (0, 0, 0);
    while found < ORBIT_TRIPLES {
        attempts += 1;
        if attempts > 5000 {
            return fail("triples found", found);
        }
        let m = &comps[rng.random_range(0..comps.len())];
        let n = &comps[rng.random_range(0..comps.len())];
        let x1 = e.sample(m, &mut ctx).unwrap();
        let x2 = e.sample(n, &mut ctx).unwrap();
        if hom_pi_dim(&q, &x2, &x1) != 0 {
            continue;
        }
        let space = ext_space(&q, &x1, &x2).unwrap();
        // sparse combinations of cocycles also probe non-generic classes
        let mut class = space.zero_class();
        for z in space.cocycle_basis() {
            if rng.random_bool(0.5) {
                let c = ctx.random_elem();
                class = class.iter().zip(&z).map(|(a, b)| a.add(&b.scale(c))).collect();
            }
        }
        let coker = orbitmap_coker_dim(&q, &x1, &x2, &class).map_err(|x| x.to_string())?;
        let x = build_extension(&q, &x1, &x2, &class).unwrap();
        let self_ext = |y| ext_space_unchecked(&q, y, y).unwrap().dim();
        let lhs = self_ext(&x);
        let rhs = self_ext(&x1) + self_ext(&x2) + 2 * coker;
        if lhs != rhs {
            return fail(&format!("({m}, {n})"), (lhs, rhs));
        }
        found += 1;
        nonzero += usize::from(coker > 0);
    }
    Ok(format!("{found} triples ({nonzero} with nonzero cokernel)"))
}

/// Multiplicity vectors over the roots, each entry up to the largest coordinate of `d`.
fn brute_force_count(roots: &[DimVector], d: &DimVector) -> usize {
    let cap = d.0.iter().copied().max().unwrap_or(0);
    let mut count = 0;
    let mut mult = vec![0usize; roots.len()];
    loop {
        let mut sum = vec![0usize; d.len()];
        for (r, &k) in roots.iter().zip(&mult) {
            for (s, &x) in sum.iter_mut().zip(&r.0) {
                *s += k * x;
            }
        }
        count += usize::from(sum == d.0);
        let mut i = 0;
        loop {
            if i == mult.len() {
                return count;
            }
            mult[i] += 1;
            if mult[i] <= cap {
                break;
            }
            mult[i] = 0;
            i += 1;
        }
    }
}

fn component_census() -> Outcome {
    let q = Quiver::a_n(3);
    let e = engine(&q);
    let roots = e.catalog().roots().roots().to_vec();
    let boxes = DimVector(vec![2, 2, 2]).box_below();
    for d in &boxes {
        let got = e.enumerate_components(d).unwrap().len();
        let want = brute_force_count(&roots, d);
        if got != want {
            return fail(&format!("|Irrcomp({d})|"), (got, want));
        }
    }
    let c111 = e.enumerate_components(&DimVector(vec![1, 1, 1])).unwrap().len();
    if c111 != 4 {
        return fail("|Irrcomp([1,1,1])|", c111);
    }
    Ok(format!("{} dimension vectors", boxes.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("A2 product table", a2_product_table),
        ("associativity failure", associativity_failure),
        ("Crawley-Boevey identity", crawley_boevey_identity),
        ("route agreement", route_agreement),
        ("AR formula", ar_formula),
        ("purity", purity),
        ("rigidity ledger", rigidity_ledger),
        ("duality anti-automorphism", duality),
        ("cancellation", cancellation),
        ("commutativity dichotomy", commutativity_dichotomy),
        ("orbit-map identity", orbit_map_identity),
        ("component census", component_census),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    let took = start.elapsed();
    println!("acceptance suite finished in {took:.2?}");
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
    assert!(took < SUITE_BUDGET, "suite took {took:?}");
}
