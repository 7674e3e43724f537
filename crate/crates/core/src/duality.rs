//! Finite Stone duality: the groupoid of 0-minimal elements of a finite
//! inverse ∧-semigroup, the inverse semigroup of bisections of a finite
//! groupoid, and the round trips between them.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filtercomp::distributive_completion;
use crate::finitesgp::{
    is_homomorphism, is_isomorphism, is_zero_simplifying, symmetric_inverse_monoid, tightly_closed_ideals, MulTable,
    PartialInjection,
};

/// A finite groupoid. Objects are identified with their identity arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    labels: Vec<String>,
    domain: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    compose: Vec<Option<usize>>,
}

impl FiniteGroupoid {
    /// Builds and validates a groupoid from `d`, `r` (given as identity
    /// arrows) and a composition defined exactly when `d(a) = r(b)`.
    pub fn new(
        labels: Vec<String>,
        domain: Vec<usize>,
        range: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        if domain.len() != n || range.len() != n {
            return Err(Error::Precondition("groupoid data have mismatched lengths".into()));
        }
        if domain.iter().chain(&range).any(|&o| o >= n || domain[o] != o || range[o] != o) {
            return Err(Error::Precondition("d and r must take values among identity arrows".into()));
        }
        let mut table = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                if domain[a] == range[b] {
                    let c = compose(a, b);
                    if c >= n || domain[c] != domain[b] || range[c] != range[a] {
                        return Err(Error::Precondition(format!("bad composite of {} and {}", labels[a], labels[b])));
                    }
                    table[a * n + b] = Some(c);
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            if table[a * n + domain[a]] != Some(a) || table[range[a] * n + a] != Some(a) {
                return Err(Error::Precondition(format!("identities do not act trivially on {}", labels[a])));
            }
            inverse[a] = (0..n)
                .find(|&b| table[a * n + b] == Some(range[a]) && table[b * n + a] == Some(domain[a]))
                .ok_or_else(|| Error::Precondition(format!("{} has no inverse", labels[a])))?;
        }
        let g = FiniteGroupoid { labels, domain, range, inverse, compose: table };
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = g.compose(a, b) else { continue };
                for c in 0..n {
                    if let Some(bc) = g.compose(b, c) {
                        if g.compose(ab, c) != g.compose(a, bc) {
                            return Err(Error::Precondition("composition is not associative".into()));
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// The pair groupoid on `k` points. Arrow `(i, j)`, from `j` to `i`, has
    /// index `i * k + j`.
    pub fn pair(k: usize) -> Self {
        let labels = (0..k * k).map(|a| format!("({},{})", a / k + 1, a % k + 1)).collect();
        let domain = (0..k * k).map(|a| (a % k) * k + a % k).collect();
        let range = (0..k * k).map(|a| (a / k) * k + a / k).collect();
        Self::new(labels, domain, range, |a, b| (a / k) * k + b % k).expect("pair groupoids are groupoids")
    }

    /// `k` objects and no other arrows.
    pub fn discrete(k: usize) -> Self {
        let labels = (0..k).map(|a| format!("o{}", a + 1)).collect();
        Self::new(labels, (0..k).collect(), (0..k).collect(), |a, _| a).expect("discrete groupoids are groupoids")
    }

    /// The cyclic group of order `n` as a one-object groupoid.
    pub fn cyclic_group(n: usize) -> Self {
        let labels = (0..n).map(|a| format!("g{a}")).collect();
        Self::new(labels, vec![0; n], vec![0; n], |a, b| (a + b) % n).expect("groups are groupoids")
    }

    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> Self {
        let k = self.len();
        let labels = self.labels.iter().map(|l| format!("L{l}")).chain(other.labels.iter().map(|l| format!("R{l}")));
        let domain = self.domain.iter().copied().chain(other.domain.iter().map(|&o| o + k)).collect();
        let range = self.range.iter().copied().chain(other.range.iter().map(|&o| o + k)).collect();
        Self::new(labels.collect(), domain, range, |a, b| {
            if a < k {
                self.compose(a, b).unwrap()
            } else {
                other.compose(a - k, b - k).unwrap() + k
            }
        })
        .expect("disjoint unions of groupoids are groupoids")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn domain(&self, a: usize) -> usize {
        self.domain[a]
    }

    pub fn range(&self, a: usize) -> usize {
        self.range[a]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a b`, defined when `d(a) = r(b)`.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.compose[a * self.len() + b]
    }

    pub fn objects(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.domain[a] == a).collect()
    }

    /// Whether every local group is trivial.
    pub fn is_principal(&self) -> bool {
        (0..self.len()).all(|a| self.domain[a] != self.range[a] || self.domain[a] == a)
    }

    /// Connected components, as sorted lists of objects.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let objects = self.objects();
        let mut label: HashMap<usize, usize> = objects.iter().map(|&o| (o, o)).collect();
        let find = |label: &HashMap<usize, usize>, mut o: usize| {
            while label[&o] != o {
                o = label[&o];
            }
            o
        };
        for a in 0..self.len() {
            let (x, y) = (find(&label, self.domain[a]), find(&label, self.range[a]));
            if x != y {
                label.insert(x.max(y), x.min(y));
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &o in &objects {
            groups.entry(find(&label, o)).or_default().push(o);
        }
        groups.into_values().collect()
    }

    /// `object`, `arrow` and `compose` lines; identities appear only as
    /// objects.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for o in self.objects() {
            out.push_str(&format!("object {}\n", self.labels[o]));
        }
        for a in (0..self.len()).filter(|&a| self.domain[a] != a) {
            let (d, r) = (self.domain[a], self.range[a]);
            out.push_str(&format!("arrow {} {} {}\n", self.labels[a], self.labels[d], self.labels[r]));
        }
        for a in 0..self.len() {
            for b in 0..self.len() {
                if let Some(c) = self.compose(a, b) {
                    if self.domain[a] != a && self.domain[b] != b {
                        out.push_str(&format!("compose {} {} {}\n", self.labels[a], self.labels[b], self.labels[c]));
                    }
                }
            }
        }
        out
    }

    /// Inverse of [`FiniteGroupoid::to_text`]. Composites with an identity
    /// may be omitted.
    pub fn parse(text: &str) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut ends: Vec<Option<(String, String)>> = Vec::new();
        let mut composes: Vec<(usize, [String; 3])> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["object", id] => {
                    labels.push(id.to_string());
                    ends.push(None);
                }
                ["arrow", id, d, r] => {
                    labels.push(id.to_string());
                    ends.push(Some((d.to_string(), r.to_string())));
                }
                ["compose", a, b, c] => composes.push((i + 1, [a.to_string(), b.to_string(), c.to_string()])),
                _ => return Err(Error::parse(i + 1, format!("unrecognised line `{line}`"))),
            }
        }
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        if index.len() != labels.len() {
            return Err(Error::parse(0, "duplicate arrow name"));
        }
        let lookup = |name: &str, line: usize| {
            index.get(name).copied().ok_or_else(|| Error::parse(line, format!("unknown arrow `{name}`")))
        };
        let mut domain = Vec::new();
        let mut range = Vec::new();
        for (a, e) in ends.iter().enumerate() {
            match e {
                None => {
                    domain.push(a);
                    range.push(a);
                }
                Some((d, r)) => {
                    domain.push(lookup(d, 0)?);
                    range.push(lookup(r, 0)?);
                }
            }
        }
        let n = labels.len();
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for (line, [a, b, c]) in &composes {
            table.insert((lookup(a, *line)?, lookup(b, *line)?), lookup(c, *line)?);
        }
        for a in 0..n {
            for b in 0..n {
                if domain[a] == range[b] && !table.contains_key(&(a, b)) {
                    if domain[a] == a {
                        table.insert((a, b), b);
                    } else if domain[b] == b {
                        table.insert((a, b), a);
                    } else {
                        return Err(Error::parse(0, format!("missing composite of {} and {}", labels[a], labels[b])));
                    }
                }
            }
        }
        Self::new(labels, domain, range, |a, b| table[&(a, b)])
    }
}

/// `G(S)` with the element of `S` behind each arrow.
#[derive(Clone, Debug)]
pub struct UltrafilterGroupoid {
    pub groupoid: FiniteGroupoid,
    /// `elements[a]` is the 0-minimal element standing for the ultrafilter
    /// `elements[a]^↑`.
    pub elements: Vec<usize>,
}

impl UltrafilterGroupoid {
    pub fn arrow_of(&self, s: usize) -> Option<usize> {
        self.elements.iter().position(|&x| x == s)
    }

    /// `V_s`: the arrows below `s`, sorted.
    pub fn v(&self, s: &MulTable, a: usize) -> Vec<usize> {
        s.support(a).ones().map(|m| self.arrow_of(m).expect("support consists of arrows")).collect()
    }
}

/// The groupoid of ultrafilters of a finite inverse ∧-semigroup, realised on
/// its 0-minimal elements.
pub fn ultrafilter_groupoid(s: &MulTable) -> Result<UltrafilterGroupoid> {
    if !s.predicates().meet_semigroup {
        return Err(Error::Precondition("table is not an inverse ∧-semigroup".into()));
    }
    let elements = s.zero_minimal().to_vec();
    let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let arrow = |x: usize| {
        pos.get(&x).copied().ok_or_else(|| Error::Internal(format!("{} is not 0-minimal", s.name(x))))
    };
    let mut domain = Vec::new();
    let mut range = Vec::new();
    for &m in &elements {
        domain.push(arrow(s.dom(m))?);
        range.push(arrow(s.ran(m))?);
    }
    for (i, &a) in elements.iter().enumerate() {
        for (j, &b) in elements.iter().enumerate() {
            let composable = domain[i] == range[j];
            if composable != (s.mul(a, b) != s.zero()) {
                return Err(Error::Internal(format!("st is nonzero exactly when d(s) = r(t) fails at {}", s.name(a))));
            }
            if composable && filter_product(s, a, b) != *s.up(s.mul(a, b)) {
                return Err(Error::Internal(format!("(s↑ t↑)↑ differs from (st)↑ at ({}, {})", s.name(a), s.name(b))));
            }
        }
    }
    let labels = elements.iter().map(|&m| s.name(m)).collect();
    let groupoid = FiniteGroupoid::new(labels, domain, range, |i, j| pos[&s.mul(elements[i], elements[j])])?;
    Ok(UltrafilterGroupoid { groupoid, elements })
}

fn filter_product(s: &MulTable, a: usize, b: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(s.size());
    for x in s.up(a).ones() {
        for y in s.up(b).ones() {
            out.union_with(s.up(s.mul(x, y)));
        }
    }
    out
}

/// `B(G)` together with the arrow set of each element.
#[derive(Clone, Debug)]
pub struct BisectionSemigroup {
    pub table: MulTable,
    pub bisections: Vec<Vec<usize>>,
}

impl BisectionSemigroup {
    pub fn index_of(&self, arrows: &[usize]) -> Option<usize> {
        self.bisections.binary_search_by(|b| cmp_bisection(b, arrows)).ok()
    }
}

fn cmp_bisection(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// All bisections of a finite groupoid under setwise product.
pub fn bisection_semigroup(g: &FiniteGroupoid) -> Result<BisectionSemigroup> {
    let objects = g.objects();
    let mut bisections = Vec::new();
    fn go(
        g: &FiniteGroupoid,
        objects: &[usize],
        i: usize,
        used: &mut BTreeSet<usize>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == objects.len() {
            let mut b = cur.clone();
            b.sort_unstable();
            out.push(b);
            return;
        }
        go(g, objects, i + 1, used, cur, out);
        for a in (0..g.len()).filter(|&a| g.domain(a) == objects[i]) {
            if used.insert(g.range(a)) {
                cur.push(a);
                go(g, objects, i + 1, used, cur, out);
                cur.pop();
                used.remove(&g.range(a));
            }
        }
    }
    go(g, &objects, 0, &mut BTreeSet::new(), &mut Vec::new(), &mut bisections);
    bisections.sort_by(|a, b| cmp_bisection(a, b));
    let index: HashMap<&[usize], usize> = bisections.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    let n = bisections.len();
    let mut prod = vec![0usize; n * n];
    for (i, x) in bisections.iter().enumerate() {
        for (j, y) in bisections.iter().enumerate() {
            let mut c: Vec<usize> = x.iter().flat_map(|&a| y.iter().filter_map(move |&b| g.compose(a, b))).collect();
            c.sort_unstable();
            prod[i * n + j] = *index
                .get(c.as_slice())
                .ok_or_else(|| Error::Internal("product of bisections is not a bisection".into()))?;
        }
    }
    let names = bisections
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(|&a| g.label(a)).collect::<Vec<_>>().join(",")))
        .collect();
    let identity = index.get(objects.as_slice()).copied();
    let table = MulTable::from_fn(n, 0, identity, Some(names), |a, b| prod[a * n + b])?;
    let p = table.predicates();
    if !p.boolean || !p.meet_semigroup {
        return Err(Error::Internal("B(G) is not a Boolean inverse ∧-semigroup".into()));
    }
    for (i, x) in bisections.iter().enumerate() {
        if table.is_idempotent(i) != x.iter().all(|&a| g.domain(a) == a) {
            return Err(Error::Internal("idempotents of B(G) are not the sets of identities".into()));
        }
        for (j, y) in bisections.iter().enumerate() {
            if table.leq(i, j) != x.iter().all(|a| y.contains(a)) {
                return Err(Error::Internal("order on B(G) is not inclusion".into()));
            }
        }
    }
    Ok(BisectionSemigroup { table, bisections })
}

/// The isomorphism `S -> B(G(S))`, `s ↦ V_s`.
#[derive(Clone, Debug)]
pub struct Roundtrip {
    pub groupoid: UltrafilterGroupoid,
    pub bisections: BisectionSemigroup,
    pub map: Vec<usize>,
}

fn require_boolean(s: &MulTable) -> Result<()> {
    let p = s.predicates();
    if !p.boolean || !p.meet_semigroup {
        return Err(Error::Precondition("table is not a Boolean inverse ∧-semigroup".into()));
    }
    Ok(())
}

pub fn duality_roundtrip(s: &MulTable) -> Result<Roundtrip> {
    require_boolean(s)?;
    let groupoid = ultrafilter_groupoid(s)?;
    let bisections = bisection_semigroup(&groupoid.groupoid)?;
    let mut map = Vec::with_capacity(s.size());
    let mut hit = vec![None; bisections.table.size()];
    for a in s.elements() {
        let v = groupoid.v(s, a);
        let x = bisections
            .index_of(&v)
            .ok_or_else(|| Error::Counterexample(format!("V_{} is not a bisection", s.name(a))))?;
        if let Some(b) = hit[x].replace(a) {
            return Err(Error::Counterexample(format!("V_{} = V_{}", s.name(b), s.name(a))));
        }
        map.push(x);
    }
    if let Some(x) = hit.iter().position(Option::is_none) {
        return Err(Error::Counterexample(format!("bisection {} is no V_s", bisections.table.name(x))));
    }
    for a in s.elements() {
        for b in s.elements() {
            if map[s.mul(a, b)] != bisections.table.mul(map[a], map[b]) {
                return Err(Error::Counterexample(format!("V_st != V_s V_t at ({}, {})", s.name(a), s.name(b))));
            }
        }
    }
    Ok(Roundtrip { groupoid, bisections, map })
}

/// `g ↦ F_g`: the isomorphism `G -> G(B(G))`, returned as arrow indices.
pub fn groupoid_roundtrip(g: &FiniteGroupoid) -> Result<Vec<usize>> {
    let b = bisection_semigroup(g)?;
    let h = ultrafilter_groupoid(&b.table)?;
    let mut map = Vec::with_capacity(g.len());
    for a in 0..g.len() {
        let x = b.index_of(&[a]).ok_or_else(|| Error::Internal("singleton is not a bisection".into()))?;
        map.push(h.arrow_of(x).ok_or_else(|| Error::Counterexample(format!("{{{}}} is not 0-minimal", g.label(a))))?);
    }
    let hg = &h.groupoid;
    if hg.len() != g.len() {
        return Err(Error::Counterexample("G and G(B(G)) have different sizes".into()));
    }
    for a in 0..g.len() {
        if map[g.domain(a)] != hg.domain(map[a]) || map[g.range(a)] != hg.range(map[a]) {
            return Err(Error::Counterexample(format!("F_g does not preserve ends at {}", g.label(a))));
        }
        for b in 0..g.len() {
            if g.compose(a, b).map(|c| map[c]) != hg.compose(map[a], map[b]) {
                return Err(Error::Counterexample(format!("F_g is not a functor at ({}, {})", g.label(a), g.label(b))));
            }
        }
    }
    Ok(map)
}

/// `D(S) ≅ B(G(S))` for a pre-Boolean `S`, matching a class with the set of
/// arrows in its support. Indexed by element of `D(S)`.
pub fn comparison_isomorphism(s: &MulTable) -> Result<Vec<usize>> {
    let d = distributive_completion(s)?;
    if !d.table.predicates().boolean {
        return Err(Error::Precondition("table is not pre-Boolean".into()));
    }
    let g = ultrafilter_groupoid(s)?;
    let b = bisection_semigroup(&g.groupoid)?;
    let mut theta = Vec::with_capacity(d.table.size());
    for class in &d.classes {
        let mut arrows: Vec<usize> = class.support.iter().map(|&m| g.arrow_of(m).unwrap()).collect();
        arrows.sort_unstable();
        theta.push(b.index_of(&arrows).ok_or_else(|| {
            Error::Counterexample(format!("support of {} is not a bisection", d.table.name(theta.len())))
        })?);
    }
    if !is_isomorphism(&d.table, &b.table, &theta) {
        return Err(Error::Counterexample("support map D(S) -> B(G(S)) is not an isomorphism".into()));
    }
    Ok(theta)
}

/// Tightly closed ideals against invariant sets of objects.
#[derive(Clone, Debug, Serialize)]
pub struct IdealCorrespondence {
    /// Each tightly closed ideal as a sorted element list.
    pub ideals: Vec<Vec<usize>>,
    /// Each union of connected components as a sorted list of objects.
    pub invariant: Vec<Vec<usize>>,
    /// `O`: ideal index to invariant-set index.
    pub o_map: Vec<usize>,
    /// `C`: invariant-set index to ideal index.
    pub c_map: Vec<usize>,
}

pub fn ideal_correspondence(s: &MulTable) -> Result<IdealCorrespondence> {
    require_boolean(s)?;
    let g = ultrafilter_groupoid(s)?;
    let gr = &g.groupoid;
    let ideals: Vec<Vec<usize>> = tightly_closed_ideals(s)?.iter().map(|t| t.ones().collect()).collect();
    let components = gr.components();
    if components.len() > 20 {
        return Err(Error::SizeLimit { what: "connected components".into(), size: components.len(), limit: 20 });
    }
    let mut invariant: Vec<Vec<usize>> = (0u32..1 << components.len())
        .map(|mask| {
            let mut objs: Vec<usize> = components
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, c)| c.iter().copied())
                .collect();
            objs.sort_unstable();
            objs
        })
        .collect();
    invariant.sort_by(|a, b| cmp_bisection(a, b));
    let o_of = |t: &[usize]| -> Vec<usize> {
        let mut objs: Vec<usize> =
            t.iter().flat_map(|&x| g.v(s, x)).flat_map(|a| [gr.domain(a), gr.range(a)]).collect();
        objs.sort_unstable();
        objs.dedup();
        objs
    };
    let c_of = |o: &[usize]| -> Vec<usize> {
        s.elements().filter(|&x| g.v(s, x).iter().all(|&a| o.contains(&gr.domain(a)))).collect()
    };
    let mut o_map = Vec::new();
    for t in &ideals {
        let o = o_of(t);
        o_map.push(invariant.iter().position(|x| *x == o).ok_or_else(|| {
            Error::Counterexample(format!("O(T) = {o:?} is not a union of components"))
        })?);
    }
    let mut c_map = Vec::new();
    for o in &invariant {
        let c = c_of(o);
        c_map.push(ideals.iter().position(|x| *x == c).ok_or_else(|| {
            Error::Counterexample(format!("C(O) for objects {o:?} is not a tightly closed ideal"))
        })?);
    }
    for (i, &o) in o_map.iter().enumerate() {
        if c_map[o] != i {
            return Err(Error::Counterexample(format!("C(O(T)) != T for ideal {i}")));
        }
    }
    for (o, &i) in c_map.iter().enumerate() {
        if o_map[i] != o {
            return Err(Error::Counterexample(format!("O(C(O)) != O for invariant set {o}")));
        }
    }
    for (i, t) in ideals.iter().enumerate() {
        for (j, u) in ideals.iter().enumerate() {
            let sub = t.iter().all(|x| u.contains(x));
            let osub = invariant[o_map[i]].iter().all(|x| invariant[o_map[j]].contains(x));
            if sub != osub {
                return Err(Error::Counterexample(format!("O does not preserve order on ideals {i}, {j}")));
            }
        }
    }
    Ok(IdealCorrespondence { ideals, invariant, o_map, c_map })
}

/// Outcome of the symmetric-inverse-monoid recogniser.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub k: Option<usize>,
    /// Image in `I(k)` of each element, when recognised.
    pub iso: Option<Vec<usize>>,
    /// The first property that fails, when not recognised.
    pub failure: Option<String>,
}

/// Recognises `I(k)`: a finite Boolean inverse ∧-monoid that is fundamental
/// and 0-simplifying. An explicit isomorphism is built from the action of
/// each element on the objects of `G(S)`.
pub fn classify_symmetric(s: &MulTable) -> Result<Classification> {
    let fail = |why: &str| Ok(Classification { k: None, iso: None, failure: Some(why.to_string()) });
    let p = s.predicates();
    if s.size() == 1 {
        return fail("trivial");
    }
    if s.identity().is_none() {
        return fail("not a monoid");
    }
    if !p.meet_semigroup {
        return fail("not an inverse ∧-semigroup");
    }
    if !p.boolean {
        return fail("not Boolean");
    }
    if !p.fundamental {
        return fail("not fundamental");
    }
    if !is_zero_simplifying(s)? {
        return fail("not 0-simplifying");
    }
    let g = ultrafilter_groupoid(s)?;
    let gr = &g.groupoid;
    let objects = gr.objects();
    let k = objects.len();
    if k > 5 {
        return Err(Error::SizeLimit { what: "I(k) rank".into(), size: k, limit: 5 });
    }
    let point = |o: usize| objects.iter().position(|&x| x == o).unwrap();
    let ik = symmetric_inverse_monoid(k)?;
    let mut iso = Vec::with_capacity(s.size());
    for a in s.elements() {
        let mut images = vec![None; k];
        for arrow in g.v(s, a) {
            images[point(gr.domain(arrow))] = Some(point(gr.range(arrow)) as u8);
        }
        let label = PartialInjection { images }.label();
        iso.push(ik.find(&label).ok_or_else(|| Error::Internal(format!("{label} is not in I({k})")))?);
    }
    if !is_isomorphism(s, &ik, &iso) {
        return Err(Error::Internal(format!("recognised table is not isomorphic to I({k})")));
    }
    Ok(Classification { k: Some(k), iso: Some(iso), failure: None })
}

/// Whether `F^↑ = F^c` for every ultrafilter `F` of `E(S)`, where `F^c`
/// collects the `s` with `d(s), r(s) ∈ F` and `sFs⁻¹, s⁻¹Fs ⊆ F`.
pub fn principal_criterion(s: &MulTable) -> Result<bool> {
    require_boolean(s)?;
    let mut holds = true;
    for &e in s.zero_minimal().iter().filter(|&&m| s.is_idempotent(m)) {
        let f: Vec<usize> = s.up(e).ones().filter(|&x| s.is_idempotent(x)).collect();
        let in_f = |x: usize| s.is_idempotent(x) && s.leq(e, x);
        let fc: Vec<usize> = s
            .elements()
            .filter(|&x| {
                in_f(s.dom(x))
                    && in_f(s.ran(x))
                    && f.iter().all(|&y| in_f(s.mul(s.mul(x, y), s.inv(x))) && in_f(s.mul(s.mul(s.inv(x), y), x)))
            })
            .collect();
        let up: Vec<usize> = s.up(e).ones().collect();
        if fc != up {
            holds = false;
        }
    }
    let principal = ultrafilter_groupoid(s)?.groupoid.is_principal();
    if holds != principal || holds != s.predicates().fundamental {
        return Err(Error::Internal(format!(
            "principal criterion {holds}, groupoid principal {principal}, fundamental {}",
            s.predicates().fundamental
        )));
    }
    Ok(holds)
}

/// Whether `θ` is an order isomorphism `E(S) -> E(T)` given on idempotents
/// of `S`. Used by round-trip checks.
pub fn idempotent_order_iso(s: &MulTable, t: &MulTable, theta: &[usize]) -> bool {
    let (es, emb_s) = s.idempotent_semilattice();
    let (et, emb_t) = t.idempotent_semilattice();
    if es.size() != et.size() {
        return false;
    }
    let map: Option<Vec<usize>> =
        emb_s.iter().map(|&x| emb_t.iter().position(|&y| y == theta[x])).collect();
    map.is_some_and(|m| is_homomorphism(&es, &et, &m) && is_isomorphism(&es, &et, &m))
}
