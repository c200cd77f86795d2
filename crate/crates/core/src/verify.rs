//! Randomized and exhaustive identity suites. Each suite draws seeded inputs,
//! checks an exact identity and reports the first counterexample as JSON.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::algebra::q;
use crate::dihedral::{dihedral_space_basis, solve_relations, DihedralCheck, DihedralCollection, Relation};
use crate::error::{Error, Result};
use crate::flexion::{self, ari_upto, arit_upto, flex_ll, flex_lr, flex_ul, flex_ur, truncate, Letter, Word};
use crate::group::Group;
use crate::json::{dihedral_doc, dihedral_witness_value, mould_doc, witness_value};
use crate::lie::kv::{f_tilde, krv_basis, kv1_route_i, kv1_route_ii, kv2, leading_part, lkrv_member, lkrvd_member};
use crate::lie::ma::{ma, ma_preimage, mt_bracket};
use crate::lie::parse::print_lie;
use crate::lie::NCPoly;
use crate::mould::{tuples, Mould, Side};
use crate::random::{random_combination, random_lie_of_weight, random_mould, random_pus_neutral, random_push_invariant, rng, Rng64};
use crate::spaces::{is_alternal, is_bialternal, is_mantar_invariant, Check, Condition, Space, SpaceSpec};

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "jacobi",
    "prelie",
    "derivation",
    "aritcomp",
    "flexion",
    "closure-al",
    "closure-alal",
    "closure-push",
    "closure-pusnu",
    "closure-dist",
    "swapari",
    "bialternal-push",
    "bialternal-pusnu",
    "ma-hom",
    "kv-equiv",
    "dihedral-sym",
    "reform-dihedral",
    "embedding",
];

#[derive(Clone, Debug)]
pub struct Params {
    pub group: Group,
    pub trials: usize,
    pub seed: u64,
    /// Depth of random input moulds.
    pub max_depth: usize,
    pub max_degree: u32,
    /// Weight bound for Lie-word, solver-basis and dihedral inputs.
    pub max_weight: usize,
    /// Output depths checked by the bracket identities (default: max_depth + 1).
    pub cap: Option<usize>,
}

impl Params {
    pub fn new(group: &Group) -> Self {
        Params { group: group.clone(), trials: 25, seed: 0, max_depth: 3, max_degree: 3, max_weight: 5, cap: None }
    }

    fn cap(&self) -> usize {
        self.cap.unwrap_or(self.max_depth + 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: String,
    pub trials: usize,
    /// Number of individual identities evaluated.
    pub checks: usize,
    pub warnings: Vec<String>,
    pub counterexample: Option<Value>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "trials": self.trials,
            "checks": self.checks,
            "warnings": self.warnings,
            "counterexample": self.counterexample,
        })
    }
}

struct Ctx<'a> {
    p: &'a Params,
    r: Rng64,
    report: Report,
}

impl Ctx<'_> {
    fn failed(&self) -> bool {
        self.report.counterexample.is_some()
    }

    fn fail(&mut self, identity: &str, inputs: Value, detail: Value) {
        self.report.counterexample = Some(json!({ "identity": identity, "inputs": inputs, "detail": detail }));
    }

    fn zero(&mut self, identity: &str, inputs: &[(&str, &Mould)], residual: &Mould) {
        self.report.checks += 1;
        if !residual.is_zero() && !self.failed() {
            self.fail(identity, moulds_value(inputs), json!({ "residual": mould_doc(residual) }));
        }
    }

    fn holds(&mut self, identity: &str, inputs: &[(&str, &Mould)], c: Check) {
        self.report.checks += 1;
        if let Err(w) = c {
            if !self.failed() {
                let g = inputs.first().map(|(_, m)| m.group().clone()).unwrap_or_else(Group::trivial);
                self.fail(identity, moulds_value(inputs), json!({ "witness": witness_value(&g, &w) }));
            }
        }
    }

    fn holds_dihedral(&mut self, identity: &str, z: &DihedralCollection, c: DihedralCheck) {
        self.report.checks += 1;
        if let Err(w) = c {
            if !self.failed() {
                self.fail(identity, json!({ "Z": dihedral_doc(z) }), json!({ "witness": dihedral_witness_value(z.group(), &w) }));
            }
        }
    }

    fn truth(&mut self, identity: &str, inputs: Value, ok: bool, detail: Value) {
        self.report.checks += 1;
        if !ok && !self.failed() {
            self.fail(identity, inputs, detail);
        }
    }

    fn mould(&mut self, side: Side) -> Mould {
        random_mould(&mut self.r, &self.p.group, side, self.p.max_depth, self.p.max_degree)
    }
}

fn moulds_value(inputs: &[(&str, &Mould)]) -> Value {
    Value::Object(inputs.iter().map(|(k, m)| (k.to_string(), serde_json::to_value(mould_doc(m)).expect("json"))).collect())
}

fn lie_value(inputs: &[(&str, &NCPoly)]) -> Value {
    Value::Object(inputs.iter().map(|(k, h)| (k.to_string(), Value::String(print_lie(h).unwrap_or_else(|_| format!("{h:?}"))))).collect())
}

/// Runs one named suite.
pub fn run_suite(name: &str, params: &Params) -> Result<Report> {
    let mut ctx = Ctx {
        p: params,
        r: rng(params.seed),
        report: Report { suite: name.into(), trials: params.trials, checks: 0, warnings: Vec::new(), counterexample: None },
    };
    if params.trials == 0 {
        ctx.report.warnings.push("trials = 0: nothing was checked, the pass is vacuous".into());
        return Ok(ctx.report);
    }
    match name {
        "jacobi" => jacobi(&mut ctx)?,
        "prelie" => prelie(&mut ctx)?,
        "derivation" => derivation(&mut ctx)?,
        "aritcomp" => aritcomp(&mut ctx)?,
        "flexion" => flexion_suite(&mut ctx)?,
        "closure-al" => closure_al(&mut ctx)?,
        "closure-alal" => closure_alal(&mut ctx)?,
        "closure-push" => closure_push(&mut ctx)?,
        "closure-pusnu" => closure_pusnu(&mut ctx)?,
        "closure-dist" => closure_dist(&mut ctx)?,
        "swapari" => swapari(&mut ctx)?,
        "bialternal-push" => bialternal_embedding(&mut ctx, Condition::Push)?,
        "bialternal-pusnu" => bialternal_embedding(&mut ctx, Condition::SwapPusnu)?,
        "ma-hom" => ma_hom(&mut ctx)?,
        "kv-equiv" => kv_equiv(&mut ctx)?,
        "dihedral-sym" => dihedral_sym(&mut ctx)?,
        "reform-dihedral" => reform_dihedral(&mut ctx)?,
        "embedding" => embedding(&mut ctx)?,
        other => return Err(Error::Invalid(format!("unknown suite {other}; known: {}", SUITES.join(", ")))),
    }
    Ok(ctx.report)
}

const SIDES: [Side; 2] = [Side::U, Side::V];

fn preari_upto(a: &Mould, b: &Mould, cap: usize) -> Result<Mould> {
    arit_upto(b, a, cap)?.add(&truncate(&a.mu(b)?, cap))
}

fn jacobi(c: &mut Ctx) -> Result<()> {
    let cap = c.p.cap();
    for _ in 0..c.p.trials {
        for side in SIDES {
            let (a, b, m) = (c.mould(side), c.mould(side), c.mould(side));
            let ab = ari_upto(&a, &b, cap)?;
            c.zero("ari(A,B) + ari(B,A) = 0", &[("A", &a), ("B", &b)], &ab.add(&ari_upto(&b, &a, cap)?)?);
            let j = ari_upto(&ab, &m, cap)?.add(&ari_upto(&ari_upto(&b, &m, cap)?, &a, cap)?)?.add(&ari_upto(&ari_upto(&m, &a, cap)?, &b, cap)?)?;
            c.zero("Jacobi identity for ari", &[("A", &a), ("B", &b), ("C", &m)], &j);
        }
        if c.failed() {
            break;
        }
    }
    Ok(())
}

fn prelie(c: &mut Ctx) -> Result<()> {
    let cap = c.p.cap();
    let assoc = |a: &Mould, b: &Mould, m: &Mould| -> Result<Mould> {
        preari_upto(a, &preari_upto(b, m, cap)?, cap)?.sub(&preari_upto(&preari_upto(a, b, cap)?, m, cap)?)
    };
    for _ in 0..c.p.trials {
        for side in SIDES {
            let (a, b, m) = (c.mould(side), c.mould(side), c.mould(side));
            let r = assoc(&a, &b, &m)?.sub(&assoc(&a, &m, &b)?)?;
            c.zero("preari associator is symmetric in its last two arguments", &[("A", &a), ("B", &b), ("C", &m)], &r);
        }
        if c.failed() {
            break;
        }
    }
    Ok(())
}

fn derivation(c: &mut Ctx) -> Result<()> {
    let cap = c.p.cap();
    for _ in 0..c.p.trials {
        for side in SIDES {
            let (a, b, m) = (c.mould(side), c.mould(side), c.mould(side));
            let lhs = arit_upto(&a, &truncate(&b.mu(&m)?, cap), cap)?;
            let rhs = truncate(&arit_upto(&a, &b, cap)?.mu(&m)?, cap).add(&truncate(&b.mu(&arit_upto(&a, &m, cap)?)?, cap))?;
            c.zero("arit(A)(B×C) = arit(A)(B)×C + B×arit(A)(C)", &[("A", &a), ("B", &b), ("C", &m)], &lhs.sub(&rhs)?);
        }
        if c.failed() {
            break;
        }
    }
    Ok(())
}

fn aritcomp(c: &mut Ctx) -> Result<()> {
    let cap = c.p.cap();
    for _ in 0..c.p.trials {
        for side in SIDES {
            let (a, b, m) = (c.mould(side), c.mould(side), c.mould(side));
            let lhs = arit_upto(&b, &arit_upto(&a, &m, cap)?, cap)?.sub(&arit_upto(&a, &arit_upto(&b, &m, cap)?, cap)?)?;
            let rhs = arit_upto(&ari_upto(&a, &b, cap)?, &m, cap)?;
            c.zero("arit(B)∘arit(A) − arit(A)∘arit(B) = arit(ari(A,B))", &[("A", &a), ("B", &b), ("C", &m)], &lhs.sub(&rhs)?);
        }
        if c.failed() {
            break;
        }
    }
    Ok(())
}

/// All words with letter count ≤ max_len, each letter carrying its own fresh variable.
fn all_words(g: &Group, side: Side, max_len: usize, offset: usize, nvars: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        for sig in tuples(g, len) {
            let letters = sig.iter().enumerate().map(|(i, &s)| Letter { form: crate::algebra::LinearForm::unit(offset + i, nvars), sigma: s }).collect();
            out.push(Word::new(side, letters));
        }
    }
    out
}

/// Number of ways to interleave ω and η into α.
pub fn shuffle_coefficient<T: PartialEq>(omega: &[T], eta: &[T], alpha: &[T]) -> u64 {
    if omega.len() + eta.len() != alpha.len() {
        return 0;
    }
    // ways[i][j]: interleavings of ω[..i] and η[..j] matching α[..i+j]
    let mut ways = vec![vec![0u64; eta.len() + 1]; omega.len() + 1];
    ways[0][0] = 1;
    for i in 0..=omega.len() {
        for j in 0..=eta.len() {
            if i > 0 && omega[i - 1] == alpha[i + j - 1] {
                ways[i][j] += ways[i - 1][j];
            }
            if j > 0 && eta[j - 1] == alpha[i + j - 1] {
                ways[i][j] += ways[i][j - 1];
            }
        }
    }
    ways[omega.len()][eta.len()]
}

/// Σ over deconcatenations ω = ω₁⋯ω_r, η = η₁⋯η_r of Π Sh(ωᵢ, ηᵢ; αᵢ).
fn factored_shuffle_coefficient<T: PartialEq>(omega: &[T], eta: &[T], alphas: &[&[T]]) -> u64 {
    let Some((first, rest)) = alphas.split_first() else {
        return u64::from(omega.is_empty() && eta.is_empty());
    };
    let mut total = 0;
    for i in 0..=omega.len() {
        for j in 0..=eta.len() {
            let s = shuffle_coefficient(&omega[..i], &eta[..j], first);
            if s > 0 {
                total += s * factored_shuffle_coefficient(&omega[i..], &eta[j..], rest);
            }
        }
    }
    total
}

fn flexion_suite(c: &mut Ctx) -> Result<()> {
    let g = c.p.group.clone();
    let len = c.p.max_depth;
    let nv = 3 * len;
    for side in SIDES {
        let aa = all_words(&g, side, len, 0, nv);
        let bb = all_words(&g, side, len, len, nv);
        let cc = all_words(&g, side, len, 2 * len, nv);
        let (ur, ul, lr, ll) = (
            |x: &Word, y: &Word| flex_ur(&g, x, y).expect("same side"),
            |x: &Word, y: &Word| flex_ul(&g, x, y).expect("same side"),
            |x: &Word, y: &Word| flex_lr(&g, x, y).expect("same side"),
            |x: &Word, y: &Word| flex_ll(&g, x, y).expect("same side"),
        );
        let cat = |x: &Word, y: &Word| x.concat(y).expect("same side");
        for a in &aa {
            for b in &bb {
                for m in &cc {
                    let mut eqs: Vec<(&str, Word, Word)> = vec![
                        ("ur(ab, c) = ur(a, ur(b,c))", ur(&cat(a, b), m), ur(a, &ur(b, m))),
                        ("ul(c, ab) = ul(ul(c,a), b)", ul(m, &cat(a, b)), ul(&ul(m, a), b)),
                        ("lr(a, bc) = lr(a,b) lr(a,c)", lr(a, &cat(b, m)), cat(&lr(a, b), &lr(a, m))),
                        ("ll(bc, a) = ll(b,a) ll(c,a)", ll(&cat(b, m), a), cat(&ll(b, a), &ll(m, a))),
                    ];
                    let nonempty = !a.is_empty() && !b.is_empty() && !m.is_empty();
                    if nonempty {
                        eqs.extend([
                            ("ur(a, ur(b,c)) = ur(b, ur(a,c))", ur(a, &ur(b, m)), ur(b, &ur(a, m))),
                            ("ul(ul(c,a),b) = ul(ul(c,b),a)", ul(&ul(m, a), b), ul(&ul(m, b), a)),
                            ("lr(a, lr(b,c)) = lr(b, lr(a,c))", lr(a, &lr(b, m)), lr(b, &lr(a, m))),
                            ("ll(ll(c,a),b) = ll(ll(c,b),a)", ll(&ll(m, a), b), ll(&ll(m, b), a)),
                            ("ur(a, ul(c,b)) = ul(ur(a,c),b)", ur(a, &ul(m, b)), ul(&ur(a, m), b)),
                            ("ur(a, lr(b,c)) = lr(b, ur(a,c))", ur(a, &lr(b, m)), lr(b, &ur(a, m))),
                            ("ur(a, ll(c,b)) = ll(ur(a,c),b)", ur(a, &ll(m, b)), ll(&ur(a, m), b)),
                            ("ul(lr(b,c),a) = lr(b, ul(c,a))", ul(&lr(b, m), a), lr(b, &ul(m, a))),
                            ("ul(ll(c,b),a) = ll(ul(c,a),b)", ul(&ll(m, b), a), ll(&ul(m, a), b)),
                            ("lr(a, ll(c,b)) = ll(lr(a,c),b)", lr(a, &ll(m, b)), ll(&lr(a, m), b)),
                            ("ur(ul(b,a),c) = ur(ab,c)", ur(&ul(b, a), m), ur(&cat(a, b), m)),
                            ("ur(ur(a,b),c) = ur(ab,c)", ur(&ur(a, b), m), ur(&cat(a, b), m)),
                            ("ul(c, ul(b,a)) = ul(c,ab)", ul(m, &ul(b, a)), ul(m, &cat(a, b))),
                            ("ul(c, ur(a,b)) = ul(c,ab)", ul(m, &ur(a, b)), ul(m, &cat(a, b))),
                            ("ur(ll(b,a),c) = ur(b,c)", ur(&ll(b, a), m), ur(b, m)),
                            ("ur(lr(a,b),c) = ur(b,c)", ur(&lr(a, b), m), ur(b, m)),
                            ("lr(ul(b,a),c) = lr(b,c)", lr(&ul(b, a), m), lr(b, m)),
                            ("lr(ur(a,b),c) = lr(b,c)", lr(&ur(a, b), m), lr(b, m)),
                            ("ul(c, ll(b,a)) = ul(c,b)", ul(m, &ll(b, a)), ul(m, b)),
                            ("ul(c, lr(a,b)) = ul(c,b)", ul(m, &lr(a, b)), ul(m, b)),
                            ("ll(c, ul(b,a)) = ll(c,b)", ll(m, &ul(b, a)), ll(m, b)),
                            ("ll(c, ur(a,b)) = ll(c,b)", ll(m, &ur(a, b)), ll(m, b)),
                        ]);
                    }
                    if !m.is_empty() {
                        eqs.push(("ur(a, cb) = ur(a,c) b", ur(a, &cat(m, b)), cat(&ur(a, m), b)));
                        eqs.push(("ul(bc, a) = b ul(c,a)", ul(&cat(b, m), a), cat(b, &ul(m, a))));
                    }
                    if !b.is_empty() {
                        eqs.push(("lr(ab, c) = lr(b,c)", lr(&cat(a, b), m), lr(b, m)));
                        eqs.push(("ll(c, ba) = ll(c,b)", ll(m, &cat(b, a)), ll(m, b)));
                    }
                    if nonempty {
                        eqs.push(("lr(ll(b,a), ll(c,a)) = lr(b,c)", lr(&ll(b, a), &ll(m, a)), lr(b, m)));
                        eqs.push(("lr(lr(a,b), lr(a,c)) = lr(b,c)", lr(&lr(a, b), &lr(a, m)), lr(b, m)));
                        eqs.push(("ll(ll(c,a), ll(b,a)) = ll(c,b)", ll(&ll(m, a), &ll(b, a)), ll(m, b)));
                        eqs.push(("ll(lr(a,c), lr(a,b)) = ll(c,b)", ll(&lr(a, m), &lr(a, b)), ll(m, b)));
                    }
                    for (name, l, r) in eqs {
                        let words = json!({
                            "side": side.name(),
                            "a": a.sigmas().iter().map(|e| e.0).collect::<Vec<_>>(),
                            "b": b.sigmas().iter().map(|e| e.0).collect::<Vec<_>>(),
                            "c": m.sigmas().iter().map(|e| e.0).collect::<Vec<_>>(),
                        });
                        c.truth(name, words, l == r, json!({ "lhs": format!("{l:?}"), "rhs": format!("{r:?}") }));
                    }
                    if c.failed() {
                        return Ok(());
                    }
                }
            }
        }
    }
    // shuffle coefficients factor through deconcatenation, on a two-letter alphabet
    let words: Vec<Vec<u8>> = (0..=len).flat_map(|l| (0..1u32 << l).map(move |bits| (0..l).map(|i| ((bits >> i) & 1) as u8).collect())).collect();
    for w in &words {
        for e in &words {
            let n = w.len() + e.len();
            for alpha in (0..1u32 << n).map(|bits| (0..n).map(|i| ((bits >> i) & 1) as u8).collect::<Vec<u8>>()) {
                let whole = shuffle_coefficient(w, e, &alpha);
                for i in 0..=n {
                    for j in i..=n {
                        let split = factored_shuffle_coefficient(w, e, &[&alpha[..i], &alpha[i..j], &alpha[j..]]);
                        let inputs = json!({ "omega": w, "eta": e, "alpha": alpha, "cuts": [i, j] });
                        c.truth("Sh(ω,η;α₁α₂α₃) factors over deconcatenations", inputs, whole == split, json!({ "whole": whole, "split": split }));
                    }
                }
                if c.failed() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

/// Two weights w₁, w₂ ≥ 1 with w₁ + w₂ ≤ max_weight.
fn weight_pair(c: &mut Ctx) -> Option<(usize, usize)> {
    let mw = c.p.max_weight;
    if mw < 2 {
        return None;
    }
    let w1 = c.r.gen_range(1..mw);
    let w2 = c.r.gen_range(1..=mw - w1);
    Some((w1, w2))
}

fn closure_al(c: &mut Ctx) -> Result<()> {
    let g = c.p.group.clone();
    for _ in 0..c.p.trials {
        let Some((w1, w2)) = weight_pair(c) else {
            c.report.warnings.push("max_weight < 2: no pairs to bracket".into());
            return Ok(());
        };
        let a = ma(&random_lie_of_weight(&mut c.r, &g, w1));
        let b = ma(&random_lie_of_weight(&mut c.r, &g, w2));
        for side in SIDES {
            let (a, b) = (a.clone().with_side(side), b.clone().with_side(side));
            let r = flexion::ari(&a, &b)?;
            c.holds("ari of alternal moulds is alternal", &[("A", &a), ("B", &b)], is_alternal(&r));
        }
        if c.failed() {
            break;
        }
    }
    Ok(())
}

type BasisCache = BTreeMap<(usize, Option<usize>), Vec<Mould>>;

fn space_basis(cache: &mut BasisCache, spaces: &[Space], g: &Group, w: usize, d: Option<usize>) -> Result<Vec<Mould>> {
    if let Some(b) = cache.get(&(w, d)) {
        return Ok(b.clone());
    }
    let b = SpaceSpec::new(spaces.to_vec(), g, w, d).basis()?;
    cache.insert((w, d), b.clone());
    Ok(b)
}

/// Random element of a space: a random combination over depths of the single-depth bases,
/// restricted to depths ≥ min_depth, at a weight for which some basis is nonempty.
fn random_space_element(c: &mut Ctx, cache: &mut BasisCache, spaces: &[Space], weights: &[usize], min_depth: usize) -> Result<Option<(usize, Mould)>> {
    let g = c.p.group.clone();
    let mut options = Vec::new();
    for &w in weights {
        let mut all = Vec::new();
        for d in min_depth.max(1)..=w {
            all.extend(space_basis(cache, spaces, &g, w, Some(d))?);
        }
        if !all.is_empty() {
            options.push((w, all));
        }
    }
    let Some((w, basis)) = options.choose(&mut c.r) else { return Ok(None) };
    let (w, basis) = (*w, basis.clone());
    Ok(random_combination(&mut c.r, &basis).map(|m| (w, m)))
}

fn closure_alal(c: &mut Ctx) -> Result<()> {
    let mut cache = BasisCache::new();
    let mw = c.p.max_weight;
    let weights: Vec<usize> = (1..mw).collect();
    for _ in 0..c.p.trials {
        let Some((w1, a)) = random_space_element(c, &mut cache, &[Space::Alal], &weights, 1)? else { break };
        let rest: Vec<usize> = (1..=mw.saturating_sub(w1)).collect();
        let Some((_, b)) = random_space_element(c, &mut cache, &[Space::Alal], &rest, 1)? else { continue };
        let r = flexion::ari(&a, &b)?;
        c.holds("ari of bialternal moulds is bialternal", &[("A", &a), ("B", &b)], is_bialternal(&r)?);
        if c.failed() {
            break;
        }
    }
    if c.report.checks == 0 {
        c.report.warnings.push("no nonzero bialternal pairs in range".into());
    }
    Ok(())
}

fn closure_push(c: &mut Ctx) -> Result<()> {
    let cap = c.p.cap();
    let g = c.p.group.clone();
    for _ in 0..c.p.trials {
        let a = random_push_invariant(&mut c.r, &g, c.p.max_depth, c.p.max_degree)?;
        let b = random_push_invariant(&mut c.r, &g, c.p.max_depth, c.p.max_degree)?;
        let r = ari_upto(&a, &b, cap)?;
        c.holds("ari of push-invariant moulds is push-invariant", &[("A", &a), ("B", &b)], Condition::Push.check(&r)?);
        if c.failed() {
            break;
        }
    }
    Ok(())
}

fn closure_pusnu(c: &mut Ctx) -> Result<()> {
    let cap = c.p.cap();
    let g = c.p.group.clone();
    let mut cache = BasisCache::new();
    let mw = c.p.max_weight;
    let weights: Vec<usize> = (2..mw.max(2)).collect();
    for _ in 0..c.p.trials {
        let a = random_pus_neutral(&mut c.r, &g, c.p.max_depth, c.p.max_degree)?;
        let b = random_pus_neutral(&mut c.r, &g, c.p.max_depth, c.p.max_degree)?;
        let r = ari_upto(&a, &b, cap)?;
        c.holds("ari_v of pus-neutral moulds is pus-neutral", &[("A", &a), ("B", &b)], Condition::Pusnu.check(&r)?);
        if let Some((w1, a)) = random_space_element(c, &mut cache, &[Space::PushPusnu], &weights, 1)? {
            let rest: Vec<usize> = (2..=mw.saturating_sub(w1)).collect();
            if let Some((_, b)) = random_space_element(c, &mut cache, &[Space::PushPusnu], &rest, 1)? {
                let r = flexion::ari(&a, &b)?;
                let ins = [("A", &a), ("B", &b)];
                c.holds("ari_u preserves push-invariance", &ins, Condition::Push.check(&r)?);
                c.holds("ari_u preserves pus-neutrality of swap", &ins, Condition::SwapPusnu.check(&r)?);
            }
        }
        if c.failed() {
            break;
        }
    }
    Ok(())
}

fn closure_dist(c: &mut Ctx) -> Result<()> {
    let cap = c.p.cap();
    let g = c.p.group.clone();
    let ns: Vec<i64> = g.order_divisors().into_iter().flat_map(|d| [d, -d]).collect();
    for _ in 0..c.p.trials {
        let side = *SIDES.choose(&mut c.r).expect("nonempty");
        let (a, b) = (c.mould(side), c.mould(side));
        let n = *ns.choose(&mut c.r).expect("nonempty");
        let lhs = ari_upto(&a, &b, cap)?.m_n(n);
        let rhs = ari_upto(&a.m_n(n), &b.m_n(n), cap)?;
        c.zero(&format!("m_N(ari(A,B)) = ari(m_N A, m_N B), N = {n}"), &[("A", &a), ("B", &b)], &lhs.sub(&rhs)?);
        if c.failed() {
            break;
        }
    }
    Ok(())
}

fn swapari(c: &mut Ctx) -> Result<()> {
    let cap = c.p.cap();
    let g = c.p.group.clone();
    for _ in 0..c.p.trials {
        let a = random_push_invariant(&mut c.r, &g, c.p.max_depth, c.p.max_degree)?;
        let b = random_push_invariant(&mut c.r, &g, c.p.max_depth, c.p.max_degree)?;
        let lhs = ari_upto(&a, &b, cap)?.swap();
        let rhs = ari_upto(&a.swap(), &b.swap(), cap)?;
        c.zero("swap(ari_u(A,B)) = ari_v(swap A, swap B) for push-invariant A, B", &[("A", &a), ("B", &b)], &lhs.sub(&rhs)?);
        if c.failed() {
            break;
        }
    }
    Ok(())
}

fn bialternal_embedding(c: &mut Ctx, cond: Condition) -> Result<()> {
    let mut cache = BasisCache::new();
    let weights: Vec<usize> = (2..=c.p.max_weight).collect();
    let name = format!("bialternal moulds in depth ≥ 2 satisfy {cond}");
    for _ in 0..c.p.trials {
        let Some((_, m)) = random_space_element(c, &mut cache, &[Space::Alal], &weights, 2)? else {
            c.report.warnings.push("no nonzero bialternal moulds in range".into());
            break;
        };
        c.holds(&name, &[("M", &m)], cond.check(&m)?);
        if c.failed() {
            break;
        }
    }
    Ok(())
}

fn ma_hom(c: &mut Ctx) -> Result<()> {
    let g = c.p.group.clone();
    for _ in 0..c.p.trials {
        let w1 = c.r.gen_range(1..=c.p.max_weight.max(1));
        let f1 = random_lie_of_weight(&mut c.r, &g, w1);
        let m1 = ma(&f1);
        c.holds("ma(f) is alternal", &[("ma(f)", &m1)], is_alternal(&m1));
        c.holds("ma(f) is mantar-invariant", &[("ma(f)", &m1)], is_mantar_invariant(&m1));
        if w1 < c.p.max_weight {
            let w2 = c.r.gen_range(1..=c.p.max_weight - w1);
            let f2 = random_lie_of_weight(&mut c.r, &g, w2);
            let lhs = ma(&mt_bracket(&f1, &f2)?);
            let rhs = flexion::ari(&m1, &ma(&f2))?;
            let res = lhs.sub(&rhs)?;
            c.report.checks += 1;
            if !res.is_zero() && !c.failed() {
                c.fail("ma({f1,f2}) = ari(ma f1, ma f2)", lie_value(&[("f1", &f1), ("f2", &f2)]), json!({ "residual": mould_doc(&res) }));
            }
        }
        if c.failed() {
            break;
        }
    }
    Ok(())
}

fn kv_equiv(c: &mut Ctx) -> Result<()> {
    let g = c.p.group.clone();
    let mut members: BTreeMap<usize, Vec<NCPoly>> = BTreeMap::new();
    let mw = c.p.max_weight.max(2);
    for _ in 0..c.p.trials {
        let w = c.r.gen_range(2..=mw);
        let basis = members.entry(w).or_insert_with(|| krv_basis(&g, w)).clone();
        let f = if !basis.is_empty() && c.r.gen_bool(0.5) {
            basis.iter().fold(NCPoly::zero(&g), |acc, b| acc.add_scaled(b, &q(c.r.gen_range(1..=3))))
        } else {
            random_lie_of_weight(&mut c.r, &g, w)
        };
        let m = ma(&f_tilde(&f));
        let ins = lie_value(&[("f", &f)]);
        let route_i = kv1_route_i(&f).is_ok();
        let route_ii = kv1_route_ii(&f, w).is_ok();
        c.truth("KV1 route (i) agrees with route (ii)", ins.clone(), route_i == route_ii, json!({ "route_i": route_i, "route_ii": route_ii }));
        let senary = Condition::Senary.check(&m)?.is_ok();
        c.truth("KV1 ⇔ senary relation for ma(f̃)", ins.clone(), route_i == senary, json!({ "kv1": route_i, "senary": senary }));
        let k2 = kv2(&f).is_ok();
        let pusnu = Condition::SwapPusnu.check(&m)?.is_ok();
        c.truth("KV2 ⇔ swap(ma(f̃)) is pus-neutral", ins.clone(), k2 == pusnu, json!({ "kv2": k2, "pusnu": pusnu }));
        if route_i && k2 {
            if let Some((d, fbar)) = leading_part(&f) {
                let ok = lkrv_member(&fbar, w, d);
                c.truth("leading part of a krv element lies in lkrv", ins, ok.is_ok(), json!({ "error": ok.err() }));
            }
        }
        if c.failed() {
            break;
        }
    }
    Ok(())
}

/// Slots (w, m) with 2 ≤ m ≤ w ≤ max_weight.
fn dihedral_slots(max_weight: usize) -> Vec<(usize, usize)> {
    (2..=max_weight).flat_map(|w| (2..=w).map(move |m| (w, m))).collect()
}

fn random_collection(r: &mut Rng64, basis: &[DihedralCollection]) -> Option<DihedralCollection> {
    let first = basis.first()?;
    let mut z = DihedralCollection::zero(first.group(), first.weight(), first.depth());
    for b in basis {
        z = z.add_scaled(b, &q(r.gen_range(1..=3)));
    }
    Some(z)
}

type DihedralCache = BTreeMap<(usize, usize, u8), Vec<DihedralCollection>>;

fn dihedral_basis_cached(cache: &mut DihedralCache, g: &Group, w: usize, m: usize, kind: u8) -> Result<Vec<DihedralCollection>> {
    if let Some(b) = cache.get(&(w, m, kind)) {
        return Ok(b.clone());
    }
    let b = match kind {
        0 => solve_relations(g, w, m, &[Relation::Harmonic, Relation::Shuffle])?,
        1 => dihedral_space_basis(g, w, m, false)?,
        _ => dihedral_space_basis(g, w, m, true)?,
    };
    cache.insert((w, m, kind), b.clone());
    Ok(b)
}

fn random_slot_element(c: &mut Ctx, cache: &mut DihedralCache, kind: u8) -> Result<Option<DihedralCollection>> {
    let g = c.p.group.clone();
    let mut nonempty = Vec::new();
    for (w, m) in dihedral_slots(c.p.max_weight) {
        if !dihedral_basis_cached(cache, &g, w, m, kind)?.is_empty() {
            nonempty.push((w, m));
        }
    }
    let Some(&(w, m)) = nonempty.choose(&mut c.r) else { return Ok(None) };
    let b = dihedral_basis_cached(cache, &g, w, m, kind)?;
    Ok(random_collection(&mut c.r, &b))
}

fn dihedral_sym(c: &mut Ctx) -> Result<()> {
    let mut cache = DihedralCache::new();
    for _ in 0..c.p.trials {
        let Some(z) = random_slot_element(c, &mut cache, 0)? else {
            c.report.warnings.push("no nonzero double-shuffle collections in range".into());
            break;
        };
        let r = z.check_dihedral()?;
        c.holds_dihedral("double shuffle implies the dihedral symmetries", &z, r);
        if c.failed() {
            break;
        }
    }
    Ok(())
}

fn reform_dihedral(c: &mut Ctx) -> Result<()> {
    let g = c.p.group.clone();
    let mut cache = DihedralCache::new();
    for (w, m) in dihedral_slots(c.p.max_weight) {
        let d = dihedral_basis_cached(&mut cache, &g, w, m, 1)?.len();
        let a = SpaceSpec::new(vec![Space::Alal], &g, w, Some(m)).dimension()?;
        c.truth("dim 𝔻(Γ)_{w,m} = dim ALAL slot", json!({ "w": w, "m": m }), d == a, json!({ "dihedral": d, "alal": a }));
        let d = dihedral_basis_cached(&mut cache, &g, w, m, 2)?.len();
        let a = SpaceSpec::new(vec![Space::AridAlal], &g, w, Some(m)).dimension()?;
        c.truth("dim D(Γ)_{w,m} = dim ARID ∩ ALAL slot", json!({ "w": w, "m": m }), d == a, json!({ "dihedral": d, "arid_alal": a }));
    }
    let arid = Space::AridAlal.conditions(&g);
    for _ in 0..c.p.trials {
        if c.failed() {
            break;
        }
        let Some(z) = random_slot_element(c, &mut cache, 1)? else {
            c.report.warnings.push("no nonzero dihedral collections in range".into());
            break;
        };
        let mm = z.to_mould();
        c.holds("to_mould of a double-shuffle collection is bialternal", &[("M", &mm)], is_bialternal(&mm)?);
        let back = DihedralCollection::from_mould(&mm, z.weight(), z.depth())?;
        c.truth("from_mould inverts to_mould", json!({ "Z": dihedral_doc(&z) }), back == z, Value::Null);
        if let Some(z2) = random_slot_element(c, &mut cache, 1)? {
            if z.weight() + z2.weight() <= c.p.max_weight + 2 {
                let m2 = z2.to_mould();
                let br = flexion::ari(&mm, &m2)?;
                c.holds("ari of images is bialternal", &[("A", &mm), ("B", &m2)], is_bialternal(&br)?);
            }
        }
        if let Some(zd) = random_slot_element(c, &mut cache, 2)? {
            let md = zd.to_mould();
            for cond in &arid {
                c.holds("images of D(Γ) satisfy ARID ∩ ALAL", &[("M", &md)], cond.check(&md)?);
            }
        }
    }
    Ok(())
}

fn embedding(c: &mut Ctx) -> Result<()> {
    let mut cache = DihedralCache::new();
    for _ in 0..c.p.trials {
        for (kind, name) in [(1u8, "𝔻"), (2u8, "D")] {
            let Some(z) = random_slot_element(c, &mut cache, kind)? else { continue };
            let (w, m) = (z.weight(), z.depth());
            let mm = z.to_mould();
            c.holds(&format!("Fil² {name}(Γ) lands in push-invariant moulds"), &[("M", &mm)], Condition::Push.check(&mm)?);
            c.holds(&format!("Fil² {name}(Γ) lands in pus-neutral swaps"), &[("M", &mm)], Condition::SwapPusnu.check(&mm)?);
            if kind == 2 {
                c.holds("Fil² D(Γ) satisfies distribution", &[("M", &mm)], crate::spaces::satisfies_all_distributions(&mm)?);
            }
            let f = ma_preimage(&mm, w)?;
            let ok = match &f {
                None => Err("no Lie preimage".to_string()),
                Some(f) if kind == 1 => lkrv_member(f, w, m),
                Some(f) => lkrvd_member(f, w, m, None),
            };
            c.truth(&format!("Fil² {name}(Γ) embeds into the Lie-word space"), json!({ "Z": dihedral_doc(&z) }), ok.is_ok(), json!({ "error": ok.err() }));
        }
        if c.failed() {
            break;
        }
    }
    if c.report.checks == 0 {
        c.report.warnings.push("no nonzero dihedral collections in range".into());
    }
    Ok(())
}
