//! Self-test suites. Each suite checks the library against an oracle or an
//! invariant on seeded random or exhaustive inputs and reports a verdict.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use stonedual::duality::{
    classify_symmetric, comparison_isomorphism, duality_roundtrip, ideal_correspondence, ultrafilter_groupoid,
};
use stonedual::filtercomp::{
    booleanization_report, check_universal_property, cover_to_join_maps, distributive_completion, part1_isomorphism,
};
use stonedual::finitesgp::symmetric_inverse_monoid;
use stonedual::graphisg::gisg_mul;
use stonedual::polycyclic::{poly_mul, PolyElement, Polycyclic, Subst};
use stonedual::thompson::{
    cuntz_arrow, cuntz_eq, cuntz_mul, cuntz_normalize, cuntz_normalize_with, tp_from_unit, tp_inv, tp_mul, tp_reduce,
    CuntzElement, Params, TreePair,
};
use stonedual::words::{is_maximal_prefix_code, kraft_sum, Alphabet};
use stonedual_oracle::{action, arrow, random, tables};

use crate::corpus;

/// Suite names, in the order `all` runs them.
pub const SUITES: &[&str] =
    &["duality", "classify", "semilattices", "completion", "lenz", "action", "codes", "thompson", "ideals", "normal"];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    /// Number of instances checked.
    pub checked: usize,
    pub detail: String,
    #[serde(serialize_with = "seconds")]
    pub elapsed: Duration,
}

fn seconds<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

/// Default instance counts for the randomized suites.
pub fn default_count(suite: &str) -> usize {
    match suite {
        "lenz" | "codes" | "normal" => 10_000,
        "action" => 100_000,
        "thompson" => 1_000,
        _ => 0,
    }
}

/// Runs one suite. `count` overrides the default instance count of the
/// randomized suites and is ignored by the exhaustive ones.
pub fn run(suite: &str, seed: u64, count: Option<usize>) -> Option<SuiteReport> {
    let count = count.unwrap_or_else(|| default_count(suite));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let outcome = match suite {
        "duality" => duality(),
        "classify" => classify(),
        "semilattices" => semilattices(),
        "completion" => completion(),
        "lenz" => lenz(&mut rng, count),
        "action" => action_suite(&mut rng, count),
        "codes" => codes(&mut rng, count),
        "thompson" => thompson(&mut rng, count),
        "ideals" => ideals(),
        "normal" => normal(&mut rng, count),
        _ => return None,
    };
    let (passed, checked, detail) = match outcome {
        Ok((checked, detail)) => (true, checked, detail),
        Err(detail) => (false, 0, detail),
    };
    Some(SuiteReport { suite: suite.to_string(), passed, checked, detail, elapsed: start.elapsed() })
}

type Outcome = Result<(usize, String), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: stonedual::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn duality() -> Outcome {
    let mut sizes = Vec::new();
    for k in 1..=4 {
        let s = lib(symmetric_inverse_monoid(k), "I(k)")?;
        let g = lib(ultrafilter_groupoid(&s), "groupoid")?;
        let (objects, arrows) = (g.groupoid.objects().len(), g.groupoid.len());
        ensure(objects == k && arrows == k * k, || format!("G(I({k})) has {objects} objects and {arrows} arrows"))?;
        let r = lib(duality_roundtrip(&s), "round trip")?;
        ensure(r.bisections.table.size() == s.size(), || format!("|B(G(I({k})))| != |I({k})|"))?;
        sizes.push(s.size());
    }
    Ok((4, format!("S ≅ B(G(S)) for I(1..4), sizes {sizes:?}")))
}

fn classify() -> Outcome {
    let mut negatives = 0;
    for (name, s) in corpus::all() {
        let c = lib(classify_symmetric(&s), name)?;
        let expected = (1..=4).find(|&k| {
            let ik = symmetric_inverse_monoid(k).unwrap();
            ik.size() == s.size() && tables::find_isomorphism(&s, &ik).is_some()
        });
        ensure(c.k == expected, || format!("{name}: classified {:?}, expected {expected:?}", c.k))?;
        if c.k.is_none() {
            negatives += 1;
        }
    }
    let reasons: Vec<String> = ["i2_x_i2", "b2", "z2"]
        .iter()
        .map(|n| {
            let s = corpus::named(n).unwrap().unwrap();
            format!("{n}: {}", classify_symmetric(&s).unwrap().failure.unwrap_or_default())
        })
        .collect();
    Ok((corpus::NAMES.len(), format!("I(1..4) recognised, {negatives} rejected ({})", reasons.join("; "))))
}

fn semilattices() -> Outcome {
    let all = tables::meet_semilattices(6);
    let mut disjunctive = 0;
    for (i, e) in all.iter().enumerate() {
        let r = lib(booleanization_report(e), &format!("semilattice {i}"))?;
        ensure(r.tight_eq_ultra, || format!("semilattice {i}: a tight filter is not an ultrafilter"))?;
        ensure(r.d_boolean, || format!("semilattice {i}: D(E) is not Boolean"))?;
        ensure(r.unital == r.compactable, || format!("semilattice {i}: unital != compactable"))?;
        ensure(!r.zero_disjunctive || r.densely_embedded, || format!("semilattice {i}: not densely embedded"))?;
        disjunctive += r.zero_disjunctive as usize;
    }
    Ok((all.len(), format!("{} semilattices up to 6 elements, {disjunctive} 0-disjunctive", all.len())))
}

fn completion() -> Outcome {
    let i3 = lib(symmetric_inverse_monoid(3), "I(3)")?;
    let mut checked = 0;
    let mut maps = 0;
    let mut pre_boolean = 0;
    for (name, s) in corpus::all() {
        if s.size() > 20 || !s.predicates().meet_semigroup {
            continue;
        }
        let c = lib(distributive_completion(&s), name)?;
        ensure(c.table.predicates().distributive, || format!("{name}: D(S) is not distributive"))?;
        lib(part1_isomorphism(&s), name)?;
        if c.table.predicates().boolean {
            lib(comparison_isomorphism(&s), name)?;
            pre_boolean += 1;
        }
        for theta in lib(cover_to_join_maps(&s, &i3), name)? {
            lib(check_universal_property(&s, &i3, &theta), name)?;
            maps += 1;
        }
        checked += 1;
    }
    Ok((checked, format!("{checked} tables, {pre_boolean} pre-Boolean, {maps} cover-to-join maps into I(3)")))
}

fn lenz(rng: &mut ChaCha8Rng, count: usize) -> Outcome {
    let mut positive = 0;
    for i in 0..count {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let p = Polycyclic::new(n).unwrap();
        let a = random::subst(rng, n, 2);
        let mut targets: Vec<PolyElement> = Vec::new();
        if rng.gen_bool(0.6) {
            // Restrictions of `a` along a prefix code, sometimes incomplete.
            for w in random::prefix_code(rng, n, 3) {
                targets.push(PolyElement::new(a.range.concat(&w), a.domain.concat(&w)));
            }
        }
        for _ in 0..rng.gen_range(0..3) {
            targets.push(random::poly(rng, n, 3));
        }
        targets.shuffle(rng);
        let a = PolyElement::NonZero(a);
        let got = lib(p.lenz_arrow(&a, &targets), "lenz_arrow")?;
        let want = arrow::lenz_arrow(n, &a, &targets).unwrap();
        ensure(got == want, || format!("{} -> {:?}: library {got}, oracle {want}", p.format(&a), targets))?;
        positive += got as usize;
    }
    Ok((count, format!("{count} instances agree, {positive} arrows hold")))
}

fn action_suite(rng: &mut ChaCha8Rng, count: usize) -> Outcome {
    let mut triples = 0;
    for i in 0..count {
        if i % 2 == 0 {
            let n = 2 + (i / 2) % 2;
            let (s, t, u) = (random::poly(rng, n, 3), random::poly(rng, n, 3), random::poly(rng, n, 3));
            let want = action::poly_product(n, &s, &t)?;
            let got = poly_mul(&s, &t);
            ensure(got == want, || format!("poly: {s:?} * {t:?} gave {got:?}, maps give {want:?}"))?;
            if i % 10 == 0 {
                ensure(poly_mul(&got, &u) == poly_mul(&s, &poly_mul(&t, &u)), || format!("poly associativity at {s:?}"))?;
                ensure(poly_mul(&got, &u) == action::poly_product(n, &got, &u)?, || "poly triple".into())?;
                triples += 1;
            }
        } else {
            let g = random::graph(rng, 3, 5);
            let (s, t, u) = (random::gisg(rng, &g, 3), random::gisg(rng, &g, 3), random::gisg(rng, &g, 3));
            let want = action::gisg_product(&g, &s, &t)?;
            let got = gisg_mul(&g, &s, &t);
            ensure(got == want, || format!("graph: {s:?} * {t:?} gave {got:?}, maps give {want:?}"))?;
            if i % 10 == 1 {
                let left = gisg_mul(&g, &got, &u);
                ensure(left == gisg_mul(&g, &s, &gisg_mul(&g, &t, &u)), || "graph associativity".into())?;
                ensure(left == action::gisg_product(&g, &got, &u)?, || "graph triple".into())?;
                triples += 1;
            }
        }
    }
    Ok((count, format!("{count} products match composed maps, {triples} associativity triples")))
}

fn codes(rng: &mut ChaCha8Rng, count: usize) -> Outcome {
    let mut maximal = 0;
    for i in 0..count {
        let n = 2 + i % 2;
        let alphabet = Alphabet::new(n).unwrap();
        let code = random::prefix_code(rng, n, 8);
        let depth = lib(is_maximal_prefix_code(&alphabet, &code), "depth criterion")?;
        let kraft = lib(kraft_sum(&alphabet, &code), "kraft")?;
        ensure(depth == (kraft.to_string() == "1"), || format!("{code:?}: depth {depth}, kraft {kraft}"))?;
        let p = Polycyclic::new(n).unwrap();
        let idempotents: Vec<PolyElement> =
            code.iter().map(|w| PolyElement::NonZero(Subst::idempotent(w.clone()))).collect();
        let arrow_holds = lib(p.lenz_arrow(&PolyElement::one(), &idempotents), "arrow")?;
        ensure(arrow_holds == depth, || format!("{code:?}: 1 -> C is {arrow_holds}, maximal {depth}"))?;
        if code.iter().all(|w| w.len() <= 4) {
            let brute = arrow::lenz_arrow(n, &PolyElement::one(), &idempotents).unwrap();
            ensure(brute == depth, || format!("{code:?}: enumerated arrow {brute}"))?;
        }
        maximal += depth as usize;
    }
    Ok((count, format!("{count} codes, {maximal} maximal; depth criterion, Kraft sum and 1 -> C agree")))
}

fn thompson(rng: &mut ChaCha8Rng, count: usize) -> Outcome {
    let mut checked = 0;
    for (n, r) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let params = Params::new(n, r).unwrap();
        let id = TreePair::identity(params);
        for _ in 0..count {
            let g = random::tree_pair(rng, params, 16);
            let h = random::tree_pair(rng, params, 16);
            let k = random::tree_pair(rng, params, 16);
            let gh = lib(tp_mul(&g, &h), "tp_mul")?;
            ensure(stonedual_oracle::action::tree_pair_product_agrees(&g, &h, &gh), || {
                format!("{} * {} = {} disagrees with composition", g.format(), h.format(), gh.format())
            })?;
            let left = lib(tp_mul(&gh, &k), "tp_mul")?;
            let right = lib(tp_mul(&g, &lib(tp_mul(&h, &k), "tp_mul")?), "tp_mul")?;
            ensure(left == right, || format!("associativity fails at {}", g.format()))?;
            ensure(lib(tp_mul(&g, &id), "tp_mul")? == lib(tp_reduce(&g), "reduce")?, || "right identity".into())?;
            ensure(lib(tp_mul(&id, &g), "tp_mul")? == lib(tp_reduce(&g), "reduce")?, || "left identity".into())?;
            let inv = lib(tp_inv(&g), "tp_inv")?;
            ensure(lib(tp_mul(&g, &inv), "tp_mul")? == id, || format!("g g⁻¹ != 1 for {}", g.format()))?;
            ensure(lib(tp_mul(&inv, &g), "tp_mul")? == id, || format!("g⁻¹ g != 1 for {}", g.format()))?;
            let (x, y) = (random::unit(rng, params, 16), random::unit(rng, params, 16));
            let via_units = lib(tp_from_unit(&lib(cuntz_mul(&x, &y), "cuntz_mul")?), "from_unit")?;
            let via_pairs =
                lib(tp_mul(&lib(tp_from_unit(&x), "from_unit")?, &lib(tp_from_unit(&y), "from_unit")?), "tp_mul")?;
            ensure(via_units == via_pairs, || format!("unit product {} vs {}", via_units.format(), via_pairs.format()))?;
            checked += 1;
        }
    }
    Ok((checked, format!("{checked} samples over (n, r) in (2,1), (2,2), (3,1), (3,2)")))
}

fn ideals() -> Outcome {
    let mut lines = Vec::new();
    for (name, s) in corpus::all() {
        let p = s.predicates();
        if !p.boolean || !p.meet_semigroup {
            continue;
        }
        let c = lib(ideal_correspondence(&s), name)?;
        lines.push(format!("{name}:{}", c.ideals.len()));
    }
    Ok((lines.len(), format!("tightly closed ideals match component unions ({})", lines.join(", "))))
}

fn normal(rng: &mut ChaCha8Rng, count: usize) -> Outcome {
    let combos = [(2, 1), (2, 2), (3, 1), (3, 2)];
    let mut equal_pairs = 0;
    for i in 0..count {
        let (n, r) = combos[i % combos.len()];
        let params = Params::new(n, r).unwrap();
        let x = random::compatible_parts(rng, params, 12);
        let nf = lib(cuntz_normalize(&x), "normalize")?;
        for _ in 0..2 {
            let mut picks = ChaCha8Rng::seed_from_u64(rng.gen());
            let other = lib(cuntz_normalize_with(&x, |k| picks.gen_range(0..k)), "normalize_with")?;
            ensure(other == nf, || format!("step orders disagree on {}", nf.format()))?;
        }
        ensure(cuntz_arrow(&x, &nf) && cuntz_arrow(&nf, &x), || format!("{} is not ↔ its input", nf.format()))?;
        let y = match i % 3 {
            0 => nf.clone(),
            1 => random::compatible_parts(rng, params, 12),
            _ => {
                let mut parts = x.parts.clone();
                parts.pop();
                CuntzElement { params, parts }
            }
        };
        let eq = lib(cuntz_eq(&x, &y), "cuntz_eq")?;
        let arrows = cuntz_arrow(&x, &y) && cuntz_arrow(&y, &x);
        ensure(eq == arrows, || format!("cuntz_eq {eq} but mutual arrow {arrows}"))?;
        equal_pairs += eq as usize;
    }
    Ok((count, format!("{count} inputs: step orders agree; cuntz_eq matches the mutual arrow ({equal_pairs} equal)")))
}
