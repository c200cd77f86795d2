//! Acceptance run: one PASS/FAIL line per criterion. All checks are exact over ℚ;
//! the only pinned tolerances are the wall-clock budgets.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mould::algebra::{kernel_basis, RatMatrix, Q};
use mould::dihedral::{dihedral_space_basis, solve_relations, DihedralCollection, Relation};
use mould::flexion::ari;
use mould::json::{dihedral_from_json, dihedral_to_json, mould_from_json, mould_to_json};
use mould::lie::kv::{f_tilde, krv_basis, kv1_route_i, kv1_route_ii, kv2, lkrv_basis, lkrv_member, lkrvd_member, lkv1, lkv1_route_ii, lkv2, sf};
use mould::lie::lyndon::lie_basis;
use mould::lie::ma::{ma, ma_preimage, mt_bracket};
use mould::lie::parse::{parse_lie, print_lie};
use mould::lie::NCPoly;
use mould::random::{random_lie_of_weight, random_mould, rng};
use mould::spaces::{is_alternal, is_bialternal, is_mantar_invariant, satisfies_all_distributions, Condition, Space, SpaceSpec};
use mould::verify::{run_suite, Params};
use mould::{Group, Mould, Side};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn groups3() -> [Group; 3] {
    [Group::trivial(), Group::cyclic(2), Group::cyclic(3)]
}

fn groups2() -> [Group; 2] {
    [Group::trivial(), Group::cyclic(2)]
}

fn gname(g: &Group) -> String {
    format!("Z{:?}", g.moduli())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn suites(names: &[&str], groups: &[Group], trials: usize) -> Outcome {
    let mut checks = 0;
    for g in groups {
        for name in names {
            let p = Params { trials, seed: 2024, max_depth: 3, max_degree: 3, ..Params::new(g) };
            let r = run_suite(name, &p).map_err(e2s)?;
            ensure(r.passed(), || format!("{name} on {}: {}", gname(g), r.to_json()))?;
            ensure(r.checks > 0, || format!("{name} on {} ran no checks", gname(g)))?;
            checks += r.checks;
        }
    }
    Ok(format!("{checks} identities"))
}

fn c1() -> Outcome {
    suites(&["jacobi"], &groups3(), 50)
}

fn c2() -> Outcome {
    suites(&["derivation", "prelie", "aritcomp"], &groups3(), 25)
}

fn c3() -> Outcome {
    suites(&["flexion"], &[Group::cyclic(2)], 1)
}

fn c4() -> Outcome {
    let a = suites(&["closure-al", "closure-push", "closure-pusnu", "closure-alal"], &groups3(), 20)?;
    let b = suites(&["closure-dist"], &[Group::cyclic(2), Group::cyclic(3), Group::cyclic(4)], 20)?;
    Ok(format!("{a}; distribution: {b}"))
}

fn mt_basis(g: &Group, w: usize) -> Vec<NCPoly> {
    lie_basis(g, w, None).into_iter().filter(|b| *b != NCPoly::x(g)).collect()
}

fn c5() -> Outcome {
    let mut pairs = 0;
    for g in groups2() {
        let bases: Vec<Vec<NCPoly>> = (0..=5).map(|w| if w == 0 { vec![] } else { mt_basis(&g, w) }).collect();
        for w in 1..=5 {
            for f in lie_basis(&g, w, None) {
                let m = ma(&f);
                ensure(is_alternal(&m).is_ok(), || format!("ma({}) not alternal", print_lie(&f).unwrap_or_default()))?;
                ensure(is_mantar_invariant(&m).is_ok(), || format!("ma({}) not mantar-invariant", print_lie(&f).unwrap_or_default()))?;
            }
        }
        for w1 in 1..5 {
            for w2 in 1..=5 - w1 {
                for f1 in &bases[w1] {
                    let m1 = ma(f1);
                    for f2 in &bases[w2] {
                        let lhs = ma(&mt_bracket(f1, f2).map_err(e2s)?);
                        let rhs = ari(&m1, &ma(f2)).map_err(e2s)?;
                        ensure(lhs == rhs, || {
                            format!("{}: ma bracket fails for {} and {}", gname(&g), print_lie(f1).unwrap_or_default(), print_lie(f2).unwrap_or_default())
                        })?;
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} bracket pairs"))
}

fn c6() -> Outcome {
    let mut n = 0;
    let mut dims = Vec::new();
    for g in groups2() {
        for w in 2..=5 {
            let krv = krv_basis(&g, w);
            for f in mt_basis(&g, w).iter().chain(&krv) {
                let name = || print_lie(f).unwrap_or_default();
                let m = ma(&f_tilde(f));
                let k1 = kv1_route_i(f).is_ok();
                ensure(k1 == kv1_route_ii(f, w).is_ok(), || format!("{}: KV1 routes disagree on {}", gname(&g), name()))?;
                let k2 = kv2(f).is_ok();
                let sen = Condition::Senary.check(&m).map_err(e2s)?.is_ok();
                let pusnu = Condition::SwapPusnu.check(&m).map_err(e2s)?.is_ok();
                ensure(k1 == sen, || format!("{}: KV1 vs senary on {}", gname(&g), name()))?;
                ensure(k2 == pusnu, || format!("{}: KV2 vs pus-neutrality on {}", gname(&g), name()))?;
                ensure((k1 && k2) == (sen && pusnu), || format!("{}: KV1∧KV2 on {}", gname(&g), name()))?;
                n += 1;
            }
            let mould_dim = SpaceSpec::new(vec![Space::SenaPusnu, Space::Al], &g, w, None).dimension().map_err(e2s)?;
            ensure(krv.len() == mould_dim, || format!("{} w={w}: dim krv {} vs mould side {mould_dim}", gname(&g), krv.len()))?;
            dims.push(krv.len());
        }
    }
    Ok(format!("{n} elements, krv dims {dims:?}"))
}

/// The mould attached to a depth-d leading part.
fn leading_mould(fbar: &NCPoly, w: usize, d: usize) -> Mould {
    ma(&sf(fbar, w, d).tilde())
}

fn bigraded_slot(g: &Group, w: usize, d: usize) -> Result<usize, String> {
    let label = || format!("{} ({w},{d})", gname(g));
    let lk = lkrv_basis(g, w, d, false);
    for f in lie_basis(g, w, Some(d)).iter().chain(&lk) {
        let m = leading_mould(f, w, d);
        let l1 = lkv1(f, d).is_ok();
        ensure(l1 == lkv1_route_ii(f, w, d).is_ok(), || format!("{}: LKV1 routes disagree", label()))?;
        ensure(l1 == Condition::Push.check(&m).map_err(e2s)?.is_ok(), || format!("{}: LKV1 vs push-invariance", label()))?;
        let l2 = lkv2(f, d).is_ok();
        ensure(l2 == Condition::SwapPusnu.check(&m).map_err(e2s)?.is_ok(), || format!("{}: LKV2 vs pus-neutrality", label()))?;
    }
    let spec = SpaceSpec::new(vec![Space::PushPusnu, Space::Al], g, w, Some(d));
    let basis = spec.basis().map_err(e2s)?;
    for m in &basis {
        let f = ma_preimage(m, w).map_err(e2s)?.ok_or_else(|| format!("{}: no Lie preimage", label()))?;
        lkrv_member(&f, w, d).map_err(|e| format!("{}: preimage not in lkrv: {e}", label()))?;
    }
    ensure(lk.len() == basis.len(), || format!("{}: dim lkrv {} vs PUSH_PUSNU∩AL {}", label(), lk.len(), basis.len()))?;
    Ok(lk.len())
}

fn c7() -> Outcome {
    let mut nonzero = Vec::new();
    let mut slots = 0;
    let mut run = |g: &Group, w: usize, d: usize| -> Result<(), String> {
        let n = bigraded_slot(g, w, d)?;
        slots += 1;
        if n > 0 {
            nonzero.push(format!("{}({w},{d})={n}", gname(g)));
        }
        Ok(())
    };
    for w in 1..=6 {
        for d in 1..=3.min(w) {
            run(&Group::trivial(), w, d)?;
        }
    }
    for (w, d) in [(7, 2), (8, 2), (7, 3)] {
        run(&Group::trivial(), w, d)?;
    }
    for w in 2..=5 {
        for d in 1..=3.min(w) {
            run(&Group::cyclic(2), w, d)?;
        }
    }
    ensure(!nonzero.is_empty(), || "every slot was zero".into())?;
    Ok(format!("{slots} slots, nonzero {}", nonzero.join(" ")))
}

fn c8() -> Outcome {
    let mut dims = Vec::new();
    for g in groups2() {
        for (w, m) in [(3, 2), (4, 2), (5, 2), (5, 3)] {
            let label = || format!("{} ({w},{m})", gname(&g));
            for z in solve_relations(&g, w, m, &[Relation::Harmonic, Relation::Shuffle]).map_err(e2s)? {
                ensure(z.check_dihedral().map_err(e2s)?.is_ok(), || format!("{}: dihedral symmetry fails", label()))?;
                ensure(is_bialternal(&z.to_mould()).map_err(e2s)?.is_ok(), || format!("{}: image not bialternal", label()))?;
            }
            let d = dihedral_space_basis(&g, w, m, false).map_err(e2s)?.len();
            let a = SpaceSpec::new(vec![Space::Alal], &g, w, Some(m)).dimension().map_err(e2s)?;
            ensure(d == a, || format!("{}: dim 𝔻 {d} vs ALAL {a}", label()))?;
            dims.push(d);
        }
    }
    Ok(format!("dims {dims:?}"))
}

fn c9() -> Outcome {
    let mut counted = 0;
    let slots = |g: &Group, wmax: usize| -> Vec<(Group, usize, usize)> {
        (2..=wmax).flat_map(|w| (2..=w.min(3)).map(move |m| (w, m))).map(|(w, m)| (g.clone(), w, m)).collect()
    };
    let mut all = slots(&Group::trivial(), 6);
    all.push((Group::trivial(), 8, 2));
    all.extend(slots(&Group::cyclic(2), 5));
    all.extend(slots(&Group::cyclic(3), 4));
    for (g, w, m) in all {
        let label = || format!("{} ({w},{m})", gname(&g));
        for mm in SpaceSpec::new(vec![Space::Alal], &g, w, Some(m)).basis().map_err(e2s)? {
            ensure(Condition::Push.check(&mm).map_err(e2s)?.is_ok(), || format!("{}: ALAL element not push-invariant", label()))?;
            ensure(Condition::SwapPusnu.check(&mm).map_err(e2s)?.is_ok(), || format!("{}: ALAL element not pus-neutral", label()))?;
            counted += 1;
        }
        let arid = SpaceSpec::new(vec![Space::AridAlal], &g, w, Some(m)).basis().map_err(e2s)?;
        let dist: Vec<Mould> = dihedral_space_basis(&g, w, m, true).map_err(e2s)?.iter().map(DihedralCollection::to_mould).collect();
        for mm in arid.iter().chain(&dist) {
            for c in [Condition::Push, Condition::SwapPusnu] {
                ensure(c.check(mm).map_err(e2s)?.is_ok(), || format!("{}: ARID element fails {c:?}", label()))?;
            }
            ensure(satisfies_all_distributions(mm).map_err(e2s)?.is_ok(), || format!("{}: distribution fails", label()))?;
            let f = ma_preimage(mm, w).map_err(e2s)?.ok_or_else(|| format!("{}: no Lie preimage", label()))?;
            lkrvd_member(&f, w, m, None).map_err(|e| format!("{}: preimage not in lkrv with distribution: {e}", label()))?;
            counted += 1;
        }
    }
    ensure(counted > 0, || "no nonzero elements".into())?;
    Ok(format!("{counted} basis elements"))
}

fn c10() -> Outcome {
    let g = Group::trivial();
    for w in 2..=15 {
        let d = SpaceSpec::new(vec![Space::Alal], &g, w, Some(1)).dimension().map_err(e2s)?;
        let want = w % 2;
        ensure(d == want, || format!("dim ALAL_({w},1) = {d}, expected {want}"))?;
    }
    for w in 1..=12 {
        let n = lkrv_basis(&g, w, 1, false).len();
        ensure(n == 0, || format!("lkrv_({w},1) has dimension {n}"))?;
        let m = SpaceSpec::new(vec![Space::PushPusnu, Space::Al], &g, w, Some(1)).dimension().map_err(e2s)?;
        ensure(m == 0, || format!("PUSH_PUSNU∩AL ({w},1) has dimension {m}"))?;
    }
    Ok("w ≤ 15 parity, lkrv depth 1 zero for w ≤ 12".into())
}

fn c11() -> Outcome {
    let mut r = rng(11);
    let groups = [Group::trivial(), Group::cyclic(5), Group::new(&[2, 4]).map_err(e2s)?];
    let mut n = 0;
    for g in &groups {
        for side in [Side::U, Side::V] {
            for _ in 0..20 {
                let m = random_mould(&mut r, g, side, 4, 4);
                let s = mould_to_json(&m);
                let back = mould_from_json(&s).map_err(e2s)?;
                ensure(back == m && mould_to_json(&back) == s, || "mould round trip".into())?;
                n += 1;
            }
        }
        for w in 1..=5 {
            let f = random_lie_of_weight(&mut r, g, w);
            let s = print_lie(&f).map_err(e2s)?;
            ensure(parse_lie(g, &s).map_err(e2s)? == f, || format!("Lie round trip for {s}"))?;
            n += 1;
        }
    }
    for g in [Group::cyclic(2), Group::cyclic(3)] {
        for z in dihedral_space_basis(&g, 5, 2, false).map_err(e2s)? {
            let s = dihedral_to_json(&z);
            ensure(dihedral_from_json(&s).map_err(e2s)? == z && dihedral_to_json(&z) == s, || "dihedral round trip".into())?;
            n += 1;
        }
    }
    for _ in 0..200 {
        let (rows, cols) = (r.gen_range(1..=6), r.gen_range(1..=7));
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-3..=3)).collect()).collect();
        let m = RatMatrix::from_i64(&data);
        let k = kernel_basis(&m);
        ensure(k.len() + m.rank() == cols, || "rank-nullity".into())?;
        for v in &k {
            ensure(m.mul_vec(v).iter().all(|x| x == &Q::from_integer(0.into())), || "kernel vector does not annihilate".into())?;
        }
        n += 1;
    }
    for name in ["jacobi", "closure-alal", "kv-equiv", "reform-dihedral"] {
        let p = Params { trials: 3, seed: 77, max_weight: 4, ..Params::new(&Group::cyclic(2)) };
        let a = run_suite(name, &p).map_err(e2s)?.to_json();
        let b = run_suite(name, &p).map_err(e2s)?.to_json();
        ensure(a == b, || format!("{name} is not deterministic"))?;
        n += 1;
    }
    Ok(format!("{n} round trips and reruns"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 Lie structure", Duration::from_secs(60), c1),
        ("2 derivation, pre-Lie, composition", Duration::from_secs(60), c2),
        ("3 flexion lemmas", Duration::from_secs(30), c3),
        ("4 closure theorems", Duration::from_secs(120), c4),
        ("5 ma bridge", Duration::from_secs(120), c5),
        ("6 KV reformulation", Duration::from_secs(300), c6),
        ("7 bigraded bridge", Duration::from_secs(300), c7),
        ("8 dihedral reformulation", Duration::from_secs(300), c8),
        ("9 embeddings", Duration::from_secs(120), c9),
        ("10 forced dimensions", Duration::from_secs(30), c10),
        ("11 infrastructure", Duration::from_secs(30), c11),
    ];
    let only: Option<String> = std::env::args().nth(1).filter(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (name, budget, f) in criteria {
        if only.as_deref().is_some_and(|o| !name.starts_with(&format!("{o} "))) {
            continue;
        }
        let t = Instant::now();
        let res = f();
        let dt = t.elapsed();
        let res = res.and_then(|s| if dt <= budget { Ok(s) } else { Err(format!("{s}; over budget {budget:?}")) });
        match res {
            Ok(s) => println!("PASS criterion {name} [{:.1}s / {}s] {s}", dt.as_secs_f64(), budget.as_secs()),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} [{:.1}s / {}s] {e}", dt.as_secs_f64(), budget.as_secs());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
