//! Filters, the Lenz congruence, compatible order ideals and the distributive
//! completion `D(S)` of a finite inverse ∧-semigroup.
//!
//! Every filter of a finite poset is principal, so filters are stored by
//! their generator. An element of `D(S)` is identified by its support: the
//! set of 0-minimal elements of `S` lying below some generator.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finitesgp::{is_homomorphism, is_isomorphism, MulTable, Partition};

/// Upper bound on the number of compatible ideals enumerated.
pub const FC_LIMIT: usize = 200_000;

/// The filter `generator^↑`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrincipalFilter {
    pub generator: usize,
}

impl PrincipalFilter {
    pub fn members<'a>(&self, s: &'a MulTable) -> &'a FixedBitSet {
        s.up(self.generator)
    }
}

/// The maximal filters: `m^↑` for each 0-minimal `m`.
pub fn ultrafilters(s: &MulTable) -> Vec<PrincipalFilter> {
    s.zero_minimal().iter().map(|&generator| PrincipalFilter { generator }).collect()
}

/// Whether `e^↑` is tight. Any cover of some `a >= e` avoiding the filter
/// lies inside `{x <= a : x != 0, e ≰ x}`, and covers are closed under
/// enlargement below `a`, so it is enough to test that one set for each `a`.
pub fn is_tight_filter(s: &MulTable, e: usize) -> Result<bool> {
    if e == s.zero() {
        return Err(Error::ZeroArgument);
    }
    for a in s.up(e).ones() {
        let avoid: Vec<usize> = s.down(a).ones().filter(|&x| x != s.zero() && !s.leq(e, x)).collect();
        if s.lenz_arrow(a, &avoid) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators of all tight filters.
pub fn tight_filters(s: &MulTable) -> Vec<PrincipalFilter> {
    s.nonzero()
        .filter(|&e| is_tight_filter(s, e).unwrap_or(false))
        .map(|generator| PrincipalFilter { generator })
        .collect()
}

/// `S/↔` together with the projection `λ`.
#[derive(Clone, Debug)]
pub struct LenzQuotient {
    pub table: MulTable,
    /// `λ(a)` for each element of `S`.
    pub projection: Vec<usize>,
    /// A chosen preimage of each class.
    pub representative: Vec<usize>,
}

/// `a ↔ b` when `a -> b` and `b -> a`.
pub fn lenz_partition(s: &MulTable) -> Partition {
    let m = s.size();
    let mut label: Vec<usize> = (0..m).collect();
    for a in 0..m {
        if label[a] != a {
            continue;
        }
        for b in a + 1..m {
            if label[b] == b && s.lenz_arrow(a, &[b]) && s.lenz_arrow(b, &[a]) {
                label[b] = a;
            }
        }
    }
    Partition::from_labels(&label)
}

/// The Lenz congruence `↔` and the separative quotient it produces.
pub fn lenz_congruence(s: &MulTable) -> Result<LenzQuotient> {
    require_meet_semigroup(s)?;
    let part = lenz_partition(s);
    let classes = part.classes();
    let representative: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let projection: Vec<usize> = s.elements().map(|a| part.class_of(a)).collect();
    for a in s.elements() {
        for b in s.elements() {
            let ab = projection[s.mul(a, b)];
            if ab != projection[s.mul(representative[projection[a]], representative[projection[b]])] {
                return Err(Error::Internal(format!("↔ is not a congruence at ({}, {})", s.name(a), s.name(b))));
            }
        }
    }
    let names: Vec<String> = classes
        .iter()
        .map(|c| if c.len() == 1 { s.name(c[0]) } else { c.iter().map(|&x| s.name(x)).collect::<Vec<_>>().join("~") })
        .collect();
    let table = MulTable::from_fn(
        classes.len(),
        projection[s.zero()],
        s.identity().map(|e| projection[e]),
        Some(names),
        |a, b| projection[s.mul(representative[a], representative[b])],
    )?;
    if !table.predicates().separative {
        return Err(Error::Internal("Lenz quotient is not separative".into()));
    }
    Ok(LenzQuotient { table, projection, representative })
}

fn require_meet_semigroup(s: &MulTable) -> Result<()> {
    if !s.predicates().meet_semigroup {
        return Err(Error::Precondition("table is not an inverse ∧-semigroup".into()));
    }
    Ok(())
}

/// `FC(S)`: compatible order ideals, each stored as its antichain of
/// generators, with the embedding `ι(s) = s^↓`.
#[derive(Clone, Debug)]
pub struct FcSemigroup {
    pub ideals: Vec<Vec<usize>>,
    pub table: MulTable,
    pub iota: Vec<usize>,
}

/// Maximal elements of a set of nonzero elements, sorted.
fn maxima(s: &MulTable, set: &BTreeSet<usize>) -> Vec<usize> {
    set.iter()
        .copied()
        .filter(|&a| !set.iter().any(|&b| b != a && s.leq(a, b)))
        .collect()
}

pub fn compatible_antichains(s: &MulTable) -> Result<Vec<Vec<usize>>> {
    fn go(
        s: &MulTable,
        nz: &[usize],
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        out.push(cur.clone());
        if out.len() > FC_LIMIT {
            return Err(Error::SizeLimit { what: "FC(S)".into(), size: out.len(), limit: FC_LIMIT });
        }
        for i in start..nz.len() {
            let a = nz[i];
            if cur.iter().all(|&b| s.compatible(a, b) && !s.leq(a, b) && !s.leq(b, a)) {
                cur.push(a);
                go(s, nz, i + 1, cur, out)?;
                cur.pop();
            }
        }
        Ok(())
    }
    let nz: Vec<usize> = s.nonzero().collect();
    let mut out = Vec::new();
    go(s, &nz, 0, &mut Vec::new(), &mut out)?;
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

pub fn fc_semigroup(s: &MulTable) -> Result<FcSemigroup> {
    let ideals = compatible_antichains(s)?;
    let index: HashMap<&[usize], usize> = ideals.iter().enumerate().map(|(i, g)| (g.as_slice(), i)).collect();
    let n = ideals.len();
    let mut table = vec![0usize; n * n];
    for (i, a) in ideals.iter().enumerate() {
        for (j, b) in ideals.iter().enumerate() {
            let prods: BTreeSet<usize> =
                a.iter().flat_map(|&x| b.iter().map(move |&y| s.mul(x, y))).filter(|&p| p != s.zero()).collect();
            let gens = maxima(s, &prods);
            table[i * n + j] = *index
                .get(gens.as_slice())
                .ok_or_else(|| Error::Internal("product of compatible ideals is not compatible".into()))?;
        }
    }
    let iota: Vec<usize> = s
        .elements()
        .map(|a| if a == s.zero() { index[&[][..]] } else { index[&[a][..]] })
        .collect();
    let identity = s.identity().map(|e| iota[e]);
    let names = ideals.iter().map(|g| format_set(s, g)).collect();
    let fc = MulTable::from_fn(n, index[&[][..]], identity, Some(names), |a, b| table[a * n + b])?;
    if !is_homomorphism(s, &fc, &iota) {
        return Err(Error::Internal("ι is not a homomorphism".into()));
    }
    Ok(FcSemigroup { ideals, table: fc, iota })
}

fn format_set(s: &MulTable, set: &[usize]) -> String {
    format!("{{{}}}", set.iter().map(|&x| s.name(x)).collect::<Vec<_>>().join(","))
}

/// An element of `D(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DClass {
    /// 0-minimal elements of `S` below the class, sorted.
    pub support: Vec<usize>,
    /// Generators, as elements of `S`, of one compatible ideal in the class.
    pub representative: Vec<usize>,
}

/// `D(S)` with its structure maps.
#[derive(Clone, Debug)]
pub struct Completion {
    pub quotient: LenzQuotient,
    pub fc: FcSemigroup,
    pub classes: Vec<DClass>,
    pub table: MulTable,
    /// `δ = ξ ι λ`.
    pub delta: Vec<usize>,
    /// The class of each element of `FC(S/↔)`.
    pub class_of_ideal: Vec<usize>,
}

impl Completion {
    pub fn class_by_support(&self, support: &[usize]) -> Option<usize> {
        self.classes.iter().position(|c| c.support == support)
    }
}

pub fn distributive_completion(s: &MulTable) -> Result<Completion> {
    let quotient = lenz_congruence(s)?;
    let q = &quotient.table;
    let fc = fc_semigroup(q)?;
    // 0-minimal elements of S and of S/↔ correspond under λ.
    let min_of_q: HashMap<usize, usize> = s.zero_minimal().iter().map(|&m| (quotient.projection[m], m)).collect();
    let support_of = |gens: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = gens.iter().flat_map(|&g| q.support(g).ones()).map(|x| min_of_q[&x]).collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let mut classes: Vec<DClass> = Vec::new();
    let mut by_support: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut class_of_ideal = Vec::with_capacity(fc.ideals.len());
    for gens in &fc.ideals {
        let support = support_of(gens);
        let next = classes.len();
        let c = *by_support.entry(support.clone()).or_insert(next);
        if c == next {
            let representative = gens.iter().map(|&g| quotient.representative[g]).collect();
            classes.push(DClass { support, representative });
        }
        class_of_ideal.push(c);
    }
    let first_ideal: Vec<usize> = {
        let mut first = vec![usize::MAX; classes.len()];
        for (i, &c) in class_of_ideal.iter().enumerate() {
            if first[c] == usize::MAX {
                first[c] = i;
            }
        }
        first
    };
    let n = classes.len();
    let fct = &fc.table;
    let zero = class_of_ideal[fct.zero()];
    let identity = fct.identity().map(|e| class_of_ideal[e]);
    let names = classes.iter().map(|c| format_set(s, &c.support)).collect();
    let table = MulTable::from_fn(n, zero, identity, Some(names), |a, b| {
        class_of_ideal[fct.mul(first_ideal[a], first_ideal[b])]
    })?;
    let delta: Vec<usize> = s.elements().map(|a| class_of_ideal[fc.iota[quotient.projection[a]]]).collect();
    let completion = Completion { quotient, fc, classes, table, delta, class_of_ideal };
    verify_completion(s, &completion)?;
    Ok(completion)
}

fn verify_completion(s: &MulTable, c: &Completion) -> Result<()> {
    let d = &c.table;
    // ≡ must be a congruence: the class of a product may not depend on the
    // chosen representatives.
    let fct = &c.fc.table;
    if fct.size() <= 4096 {
        for a in fct.elements() {
            for b in fct.elements() {
                let via_classes = d.mul(c.class_of_ideal[a], c.class_of_ideal[b]);
                if c.class_of_ideal[fct.mul(a, b)] != via_classes {
                    return Err(Error::Internal("support equivalence is not a congruence on FC".into()));
                }
            }
        }
    }
    if !is_homomorphism(s, d, &c.delta) {
        return Err(Error::Internal("δ is not a homomorphism".into()));
    }
    if s.nonzero().any(|a| c.delta[a] == d.zero()) {
        return Err(Error::Internal("δ is not 0-restricted".into()));
    }
    check_cover_to_join(s, d, &c.delta).map_err(|e| Error::Internal(format!("δ is not cover-to-join: {e}")))?;
    Ok(())
}

/// Antichains of nonzero idempotents below `e` that cover `e`.
fn idempotent_covers(s: &MulTable, e: usize) -> Vec<Vec<usize>> {
    let below: Vec<usize> = s.down(e).ones().filter(|&x| x != s.zero() && s.is_idempotent(x)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(s: &MulTable, e: usize, below: &[usize], i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == below.len() {
            if !cur.is_empty() && s.lenz_arrow(e, cur) {
                out.push(cur.clone());
            }
            return;
        }
        go(s, e, below, i + 1, cur, out);
        let x = below[i];
        if cur.iter().all(|&y| !s.leq(x, y) && !s.leq(y, x)) {
            cur.push(x);
            go(s, e, below, i + 1, cur, out);
            cur.pop();
        }
    }
    go(s, e, &below, 0, &mut cur, &mut out);
    out
}

/// Checks that a homomorphism is cover-to-join: `θ(e) = ∨θ(A)` for every
/// nonzero idempotent `e` and every cover `A` of `e`. Restricting to
/// idempotents and to antichain covers loses nothing. On failure the
/// violated cover is returned.
pub fn check_cover_to_join(s: &MulTable, t: &MulTable, theta: &[usize]) -> Result<()> {
    if !is_homomorphism(s, t, theta) {
        return Err(Error::Counterexample("map is not a homomorphism with θ(0) = 0".into()));
    }
    for e in s.nonzero_idempotents() {
        for cover in idempotent_covers(s, e) {
            let images: Vec<usize> = cover.iter().map(|&a| theta[a]).collect();
            if t.join(&images) != Some(theta[e]) {
                return Err(Error::Counterexample(format!(
                    "θ({}) is not the join of θ over the cover {}",
                    s.name(e),
                    format_set(s, &cover)
                )));
            }
        }
    }
    Ok(())
}

/// All cover-to-join homomorphisms `S -> T`. Such a map is determined by its
/// values on 0-minimal elements, through `θ(s) = ∨{θ(m) : m <= s minimal}`.
pub fn cover_to_join_maps(s: &MulTable, t: &MulTable) -> Result<Vec<Vec<usize>>> {
    let mins = s.zero_minimal().to_vec();
    let pos: HashMap<usize, usize> = mins.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    // product[i][j]: None for zero, Some(k) for the minimal element m_i m_j.
    let product: Vec<Vec<Option<usize>>> = mins
        .iter()
        .map(|&a| mins.iter().map(|&b| pos.get(&s.mul(a, b)).copied()).collect())
        .collect();
    for (i, row) in product.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if p.is_none() && s.mul(mins[i], mins[j]) != s.zero() {
                return Err(Error::Internal("product of 0-minimal elements is neither zero nor 0-minimal".into()));
            }
        }
    }
    let mut out = Vec::new();
    let mut assign = vec![usize::MAX; mins.len()];
    search(s, t, &mins, &product, 0, &mut assign, &mut out);
    Ok(out)
}

fn search(
    s: &MulTable,
    t: &MulTable,
    mins: &[usize],
    product: &[Vec<Option<usize>>],
    p: usize,
    assign: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p == mins.len() {
        let mut theta = Vec::with_capacity(s.size());
        for a in s.elements() {
            let images: Vec<usize> = s.support(a).ones().map(|m| assign[mins.iter().position(|&x| x == m).unwrap()]).collect();
            match t.join(&images) {
                Some(j) => theta.push(j),
                None => return,
            }
        }
        if is_homomorphism(s, t, &theta) {
            out.push(theta);
        }
        return;
    }
    for v in t.elements() {
        assign[p] = v;
        let consistent = (0..=p).all(|i| {
            [(i, p), (p, i)].iter().all(|&(a, b)| match product[a][b] {
                None => t.mul(assign[a], assign[b]) == t.zero(),
                Some(k) if k <= p => t.mul(assign[a], assign[b]) == assign[k],
                Some(_) => true,
            })
        }) && (0..p).all(|i| {
            (0..p).all(|j| match product[i][j] {
                Some(k) if k == p => t.mul(assign[i], assign[j]) == v,
                _ => true,
            })
        });
        if consistent {
            search(s, t, mins, product, p + 1, assign, out);
        }
    }
    assign[p] = usize::MAX;
}

/// Builds the extension `θ̄: D(S) -> T` of a cover-to-join homomorphism and
/// verifies it: well defined, a homomorphism, join preserving, `θ̄ δ = θ`,
/// and forced on every class by its generators.
pub fn check_universal_property(s: &MulTable, t: &MulTable, theta: &[usize]) -> Result<Vec<usize>> {
    if !t.predicates().distributive {
        return Err(Error::Precondition("target is not distributive".into()));
    }
    check_cover_to_join(s, t, theta)?;
    let c = distributive_completion(s)?;
    let d = &c.table;
    let q = &c.quotient;
    for a in s.elements() {
        let rep = q.representative[q.projection[a]];
        if theta[a] != theta[rep] {
            return Err(Error::Counterexample(format!(
                "θ separates {} and {}, which are ↔-related",
                s.name(a),
                s.name(rep)
            )));
        }
    }
    let mut bar = vec![usize::MAX; d.size()];
    for (i, gens) in c.fc.ideals.iter().enumerate() {
        let images: Vec<usize> = gens.iter().map(|&g| theta[q.representative[g]]).collect();
        let j = t.join(&images).ok_or_else(|| {
            Error::Counterexample(format!("θ images of {} have no join", c.fc.table.name(i)))
        })?;
        let cls = c.class_of_ideal[i];
        if bar[cls] == usize::MAX {
            bar[cls] = j;
        } else if bar[cls] != j {
            return Err(Error::Counterexample(format!("θ̄ is not well defined on {}", d.name(cls))));
        }
    }
    if !is_homomorphism(d, t, &bar) {
        return Err(Error::Counterexample("θ̄ is not a homomorphism".into()));
    }
    for x in d.elements() {
        for y in d.elements() {
            if d.compatible(x, y) {
                let j = d.join(&[x, y]).ok_or_else(|| Error::Internal("D(S) lacks a compatible join".into()))?;
                if t.join(&[bar[x], bar[y]]) != Some(bar[j]) {
                    return Err(Error::Counterexample(format!("θ̄ does not preserve {} ∨ {}", d.name(x), d.name(y))));
                }
            }
        }
    }
    if s.elements().any(|a| bar[c.delta[a]] != theta[a]) {
        return Err(Error::Counterexample("θ̄ δ differs from θ".into()));
    }
    for (x, class) in c.classes.iter().enumerate() {
        let parts: Vec<usize> = class.representative.iter().map(|&g| c.delta[g]).collect();
        if d.join(&parts) != Some(x) {
            return Err(Error::Internal(format!("{} is not the join of its generators", d.name(x))));
        }
    }
    Ok(bar)
}

/// Flags of the Booleanization theorem for `E(S)`, with the isomorphism
/// `E(D(S)) ≅ D(E(S))` checked on `S` itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BooleanizationReport {
    pub tight_eq_ultra: bool,
    pub d_boolean: bool,
    pub unital: bool,
    pub compactable: bool,
    pub zero_disjunctive: bool,
    pub densely_embedded: bool,
    pub part1_iso: bool,
    /// Names of the atoms of `E`, an essential set.
    pub atoms: Vec<String>,
    /// Filters that are tight but not ultrafilters.
    pub tight_not_ultra: Vec<String>,
    pub completion_size: usize,
}

pub fn booleanization_report(s: &MulTable) -> Result<BooleanizationReport> {
    require_meet_semigroup(s)?;
    let (e, _) = s.idempotent_semilattice();
    let ultra: Vec<usize> = ultrafilters(&e).iter().map(|f| f.generator).collect();
    let tight: Vec<usize> = tight_filters(&e).iter().map(|f| f.generator).collect();
    let tight_not_ultra: Vec<String> = tight.iter().filter(|x| !ultra.contains(x)).map(|&x| e.name(x)).collect();
    let tight_eq_ultra = tight == ultra;
    let c = distributive_completion(&e)?;
    let d = &c.table;
    let d_boolean = d.predicates().boolean;
    let unital = d.identity().is_some();
    let compactable = e.nonzero().all(|x| ultra.iter().any(|&a| e.meets(x, a)));
    let injective = {
        let mut seen = vec![false; d.size()];
        c.delta.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    };
    let preserves_meets = e.elements().all(|a| {
        e.elements().all(|b| Some(c.delta[e.mul(a, b)]) == d.meet(c.delta[a], c.delta[b]))
    });
    let generated = c.classes.iter().enumerate().all(|(x, class)| {
        let parts: Vec<usize> = class.representative.iter().map(|&g| c.delta[g]).collect();
        d.join(&parts) == Some(x)
    });
    let densely_embedded = injective && preserves_meets && generated && d_boolean;
    let zero_disjunctive = e.predicates().zero_disjunctive;
    let part1_iso = part1_isomorphism(s).is_ok();
    if d_boolean != tight_eq_ultra {
        return Err(Error::Internal("D(E) Boolean disagrees with tight = ultra".into()));
    }
    if unital != compactable {
        return Err(Error::Internal("unital disagrees with compactable".into()));
    }
    if densely_embedded != zero_disjunctive {
        return Err(Error::Internal("dense embedding disagrees with 0-disjunctivity".into()));
    }
    Ok(BooleanizationReport {
        tight_eq_ultra,
        d_boolean,
        unital,
        compactable,
        zero_disjunctive,
        densely_embedded,
        part1_iso,
        atoms: ultra.iter().map(|&a| e.name(a)).collect(),
        tight_not_ultra,
        completion_size: d.size(),
    })
}

/// The isomorphism `E(D(S)) -> D(E(S))`, matching classes with equal
/// supports. Returned as pairs of (index in `D(S)`, index in `D(E(S))`).
pub fn part1_isomorphism(s: &MulTable) -> Result<Vec<(usize, usize)>> {
    let ds = distributive_completion(s)?;
    let (e, emb) = s.idempotent_semilattice();
    let de = distributive_completion(&e)?;
    let (eds, eds_emb) = ds.table.idempotent_semilattice();
    let mut theta = vec![usize::MAX; eds.size()];
    let mut pairs = Vec::new();
    for (i, &x) in eds_emb.iter().enumerate() {
        let support = &ds.classes[x].support;
        let mapped: Vec<usize> = de
            .classes
            .iter()
            .position(|c| {
                let mut sup: Vec<usize> = c.support.iter().map(|&m| emb[m]).collect();
                sup.sort_unstable();
                &sup == support
            })
            .into_iter()
            .collect();
        let &[y] = mapped.as_slice() else {
            return Err(Error::Counterexample(format!("no class of D(E(S)) has support {}", ds.table.name(x))));
        };
        theta[i] = y;
        pairs.push((x, y));
    }
    if !is_isomorphism(&eds, &de.table, &theta) {
        return Err(Error::Counterexample("support matching is not an isomorphism E(D(S)) -> D(E(S))".into()));
    }
    Ok(pairs)
}

/// Discard procedure: walk the list, dropping the smaller of
/// each comparable pair, until what remains is pairwise orthogonal.
pub fn orthogonalize_by<T: Clone>(
    items: &[T],
    leq: impl Fn(&T, &T) -> bool,
    orthogonal: impl Fn(&T, &T) -> bool,
) -> Result<Vec<T>> {
    let mut list = items.to_vec();
    let mut i = 0;
    while i < list.len() {
        let mut j = i + 1;
        let mut drop_i = false;
        while j < list.len() {
            if orthogonal(&list[i], &list[j]) {
                j += 1;
            } else if leq(&list[j], &list[i]) {
                list.remove(j);
            } else if leq(&list[i], &list[j]) {
                drop_i = true;
                break;
            } else {
                return Err(Error::Incompatible(format!("items {i} and {j} are neither comparable nor orthogonal")));
            }
        }
        if drop_i {
            list.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(list)
}

/// Orthogonalizes a compatible set of elements of a finite unambiguous
/// E*-unitary table.
pub fn orthogonalize(s: &MulTable, set: &[usize]) -> Result<Vec<usize>> {
    let p = s.predicates();
    if !p.unambiguous || !p.e_star_unitary {
        return Err(Error::Precondition("table must be unambiguous and E*-unitary".into()));
    }
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            if !s.compatible(a, b) {
                return Err(Error::Incompatible(format!("{} and {}", s.name(a), s.name(b))));
            }
        }
    }
    let nonzero: Vec<usize> = set.iter().copied().filter(|&a| a != s.zero()).collect();
    orthogonalize_by(&nonzero, |&a, &b| s.leq(a, b), |&a, &b| s.orthogonal(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitesgp::{
        chain_semilattice, cyclic_group_with_zero, meet_semilattice, symmetric_inverse_monoid, zero_direct_union,
    };

    fn diamond() -> MulTable {
        let above = [vec![0, 1, 2, 3], vec![1, 3], vec![2, 3], vec![3]];
        meet_semilattice(4, |a, b| above[a].contains(&b)).unwrap()
    }

    /// `{0, e, 1, g}` with `{1, g}` the group of order two and `e` below both.
    pub(crate) fn lenz_witness() -> MulTable {
        let rows = [[0, 0, 0, 0], [0, 1, 1, 1], [0, 1, 2, 3], [0, 1, 3, 2]];
        let names = ["0", "e", "1", "g"].iter().map(|s| s.to_string()).collect();
        MulTable::from_fn_checked(4, 0, Some(2), Some(names), |a, b| rows[a][b]).unwrap()
    }

    #[test]
    fn ultrafilter_examples() {
        let i2 = symmetric_inverse_monoid(2).unwrap();
        assert_eq!(ultrafilters(&i2).len(), 4);
        let (e, _) = i2.idempotent_semilattice();
        assert_eq!(ultrafilters(&e).len(), 2);
        assert_eq!(ultrafilters(&chain_semilattice(2)).len(), 1);
    }

    #[test]
    fn tight_filter_examples() {
        let c2 = chain_semilattice(2);
        assert!(is_tight_filter(&c2, 1).unwrap());
        let c3 = chain_semilattice(3);
        assert!(!is_tight_filter(&c3, 2).unwrap());
        assert!(!is_tight_filter(&diamond(), 3).unwrap());
        assert!(is_tight_filter(&diamond(), 1).unwrap());
        assert_eq!(is_tight_filter(&c2, 0), Err(Error::ZeroArgument));
    }

    #[test]
    fn lenz_congruence_collapses_the_witness() {
        let w = lenz_witness();
        assert!(!w.predicates().separative);
        let q = lenz_congruence(&w).unwrap();
        // Every nonzero element is above the single atom `e`.
        assert_eq!(q.table.size(), 2);
        assert_eq!(q.projection[2], q.projection[3]);
        assert_eq!(q.projection[1], q.projection[2]);
        let i2 = symmetric_inverse_monoid(2).unwrap();
        assert_eq!(lenz_congruence(&i2).unwrap().table.size(), 7);
    }

    #[test]
    fn arrow_matches_order_in_the_quotient() {
        for s in [lenz_witness(), diamond(), chain_semilattice(3), symmetric_inverse_monoid(2).unwrap()] {
            let q = lenz_congruence(&s).unwrap();
            for a in s.nonzero() {
                for b in s.nonzero() {
                    assert_eq!(s.lenz_arrow(a, &[b]), q.table.leq(q.projection[a], q.projection[b]));
                }
            }
        }
    }

    #[test]
    fn fc_of_small_examples() {
        assert_eq!(fc_semigroup(&chain_semilattice(2)).unwrap().ideals.len(), 2);
        let i2 = symmetric_inverse_monoid(2).unwrap();
        let fc = fc_semigroup(&i2).unwrap();
        assert_eq!(fc.ideals.len(), 9);
        let atoms: Vec<usize> = i2.zero_minimal().iter().copied().filter(|&a| i2.is_idempotent(a)).collect();
        assert!(fc.ideals.contains(&atoms));
        assert!(fc.table.predicates().distributive);
    }

    #[test]
    fn completion_examples() {
        let c = distributive_completion(&chain_semilattice(2)).unwrap();
        assert_eq!(c.table.size(), 2);
        assert!(c.table.predicates().boolean);
        let i2 = symmetric_inverse_monoid(2).unwrap();
        let c = distributive_completion(&i2).unwrap();
        assert_eq!(c.table.size(), 7);
        assert!(is_isomorphism(&i2, &c.table, &c.delta));
        assert_eq!(c.delta[i2.zero()], c.table.zero());
        // The 3-chain completes to the Boolean algebra 2.
        let c = distributive_completion(&chain_semilattice(3)).unwrap();
        assert_eq!(c.table.size(), 2);
        let w = distributive_completion(&lenz_witness()).unwrap();
        assert_eq!(w.table.size(), 2);
    }

    #[test]
    fn universal_property_for_small_targets() {
        let (e2, _) = symmetric_inverse_monoid(2).unwrap().idempotent_semilattice();
        let i3 = symmetric_inverse_monoid(3).unwrap();
        let maps = cover_to_join_maps(&e2, &i3).unwrap();
        assert_eq!(maps.len(), 27);
        for theta in &maps {
            check_universal_property(&e2, &i3, theta).unwrap();
        }
        let c = distributive_completion(&e2).unwrap();
        let bar = check_universal_property(&e2, &c.table, &c.delta).unwrap();
        assert!(bar.iter().enumerate().all(|(i, &x)| i == x));
    }

    #[test]
    fn planted_non_cover_to_join_map_is_rejected() {
        // Kill one atom of E(I(2)) but keep the top: a homomorphism, yet the
        // top is covered by the two atoms and is not the join of their images.
        let (e2, _) = symmetric_inverse_monoid(2).unwrap().idempotent_semilattice();
        let atoms = e2.zero_minimal().to_vec();
        let theta: Vec<usize> = e2.elements().map(|x| if x == atoms[1] { e2.zero() } else { x }).collect();
        assert!(is_homomorphism(&e2, &e2, &theta));
        match check_universal_property(&e2, &e2, &theta) {
            Err(Error::Counterexample(msg)) => assert!(msg.contains("cover"), "{msg}"),
            other => panic!("expected a counterexample, got {other:?}"),
        }
    }

    #[test]
    fn booleanization_of_small_semilattices() {
        for s in [chain_semilattice(2), chain_semilattice(4), diamond(), symmetric_inverse_monoid(2).unwrap()] {
            let r = booleanization_report(&s).unwrap();
            assert!(r.tight_eq_ultra && r.d_boolean && r.unital && r.compactable && r.part1_iso);
        }
        assert!(!booleanization_report(&chain_semilattice(3)).unwrap().densely_embedded);
        assert!(booleanization_report(&diamond()).unwrap().densely_embedded);
    }

    #[test]
    fn part1_isomorphism_for_i2() {
        let pairs = part1_isomorphism(&symmetric_inverse_monoid(2).unwrap()).unwrap();
        assert_eq!(pairs.len(), 4);
    }

    #[test]
    fn orthogonalize_discards_smaller_elements() {
        let i2 = symmetric_inverse_monoid(2).unwrap();
        let atoms: Vec<usize> = i2.zero_minimal().iter().copied().filter(|&a| i2.is_idempotent(a)).collect();
        let one = i2.identity().unwrap();
        assert_eq!(orthogonalize(&i2, &[atoms[0], one]).unwrap(), vec![one]);
        assert_eq!(orthogonalize(&i2, &atoms).unwrap(), atoms);
        let two_atoms = zero_direct_union(&chain_semilattice(2), &chain_semilattice(2)).unwrap();
        assert_eq!(orthogonalize(&two_atoms, &[1, 2]).unwrap(), vec![1, 2]);
        assert!(orthogonalize(&symmetric_inverse_monoid(3).unwrap(), &[1]).is_err());
        let z2 = cyclic_group_with_zero(2).unwrap();
        assert!(matches!(orthogonalize(&z2, &[1, 2]), Err(Error::Incompatible(_))));
    }

    #[test]
    fn filter_correspondences() {
        for s in [symmetric_inverse_monoid(2).unwrap(), lenz_witness(), cyclic_group_with_zero(2).unwrap()] {
            let (e, emb) = s.idempotent_semilattice();
            // Idempotent ultrafilters of S are exactly the ultrafilters of E(S).
            let idem_ultra: Vec<usize> =
                ultrafilters(&s).iter().map(|f| f.generator).filter(|&g| s.is_idempotent(g)).collect();
            let from_e: Vec<usize> = ultrafilters(&e).iter().map(|f| emb[f.generator]).collect();
            assert_eq!(idem_ultra, from_e);
            for a in s.nonzero() {
                // E(F^↑) = F for the filter generated by an idempotent.
                if s.is_idempotent(a) {
                    let ea = emb.iter().position(|&x| x == a).unwrap();
                    let in_e: Vec<usize> = e.up(ea).ones().map(|x| emb[x]).collect();
                    let restricted: Vec<usize> = s.up(a).ones().filter(|&x| s.is_idempotent(x)).collect();
                    assert_eq!(in_e, restricted);
                    assert_eq!(is_tight_filter(&s, a).unwrap(), is_tight_filter(&e, ea).unwrap());
                }
                assert_eq!(is_tight_filter(&s, a).unwrap(), is_tight_filter(&s, s.dom(a)).unwrap());
            }
        }
    }
}
