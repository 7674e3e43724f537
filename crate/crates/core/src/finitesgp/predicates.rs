//! Structural predicates, congruences and ideals of finite tables.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::MulTable;
use crate::error::{Error, Result};

/// Principal congruences are enumerated for tables up to this size.
pub const CONGRUENCE_LIMIT: usize = 128;
/// Upper bound on the number of ideals or congruences enumerated.
pub const ENUMERATION_LIMIT: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub monoid: bool,
    pub fundamental: bool,
    pub zero_simple: bool,
    pub zero_disjunctive: bool,
    pub e_star_unitary: bool,
    pub unambiguous: bool,
    pub meet_semigroup: bool,
    pub separative: bool,
    pub distributive: bool,
    pub boolean: bool,
}

pub fn predicates(s: &MulTable) -> &Predicates {
    s.predicates()
}

pub(super) fn compute(s: &MulTable) -> Predicates {
    let distributive = is_distributive(s);
    Predicates {
        monoid: s.identity().is_some(),
        fundamental: mu(s).is_identity(),
        zero_simple: is_zero_simple(s),
        zero_disjunctive: is_zero_disjunctive(s),
        e_star_unitary: is_e_star_unitary(s),
        unambiguous: is_unambiguous(s),
        meet_semigroup: is_meet_semigroup(s),
        separative: is_separative(s),
        distributive,
        boolean: distributive && is_relatively_complemented(s),
    }
}

/// Idempotents of the ideal generated by `f`: `{r(x) : d(x) <= f}`.
fn ideal_idempotents(s: &MulTable, f: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(s.size());
    for x in s.elements() {
        if s.leq(s.dom(x), f) {
            out.insert(s.ran(x));
        }
    }
    out
}

fn is_zero_simple(s: &MulTable) -> bool {
    if s.is_trivial() {
        return false;
    }
    let all: Vec<usize> = s.nonzero_idempotents().collect();
    all.iter().all(|&f| {
        let reach = ideal_idempotents(s, f);
        all.iter().all(|&e| reach.contains(e))
    })
}

fn is_zero_disjunctive(s: &MulTable) -> bool {
    let e_nz: Vec<usize> = s.nonzero_idempotents().collect();
    for &e in &e_nz {
        for &f in &e_nz {
            if f != e && s.leq(f, e) {
                let ok = e_nz.iter().any(|&g| s.leq(g, e) && s.mul(f, g) == s.zero());
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

fn is_e_star_unitary(s: &MulTable) -> bool {
    s.nonzero_idempotents().all(|e| s.up(e).ones().all(|x| s.is_idempotent(x)))
}

fn is_unambiguous(s: &MulTable) -> bool {
    let e_nz: Vec<usize> = s.nonzero_idempotents().collect();
    e_nz.iter().all(|&e| {
        e_nz.iter().all(|&f| s.mul(e, f) == s.zero() || s.leq(e, f) || s.leq(f, e))
    })
}

fn is_meet_semigroup(s: &MulTable) -> bool {
    s.elements().all(|a| (a..s.size()).all(|b| s.meet(a, b).is_some()))
}

fn is_separative(s: &MulTable) -> bool {
    let nz: Vec<usize> = s.nonzero().collect();
    for (i, &a) in nz.iter().enumerate() {
        for &b in &nz[i + 1..] {
            if s.lenz_arrow(a, &[b]) && s.lenz_arrow(b, &[a]) {
                return false;
            }
        }
    }
    true
}

/// Every compatible pair has a join and multiplication distributes over it
/// on both sides. Joins of larger compatible sets then exist by induction,
/// since the join of two compatible elements is compatible with anything
/// compatible with both.
fn is_distributive(s: &MulTable) -> bool {
    let m = s.size();
    const NONE: u32 = u32::MAX;
    let mut join = vec![NONE; m * m];
    for a in 0..m {
        for b in a..m {
            if s.compatible(a, b) {
                match s.join(&[a, b]) {
                    Some(j) => {
                        join[a * m + b] = j as u32;
                        join[b * m + a] = j as u32;
                    }
                    None => return false,
                }
            }
        }
    }
    for a in 0..m {
        for b in a..m {
            let j = join[a * m + b];
            if j == NONE {
                continue;
            }
            for c in 0..m {
                let left = s.mul(c, j as usize);
                if join[s.mul(c, a) * m + s.mul(c, b)] != left as u32 {
                    return false;
                }
                let right = s.mul(j as usize, c);
                if join[s.mul(a, c) * m + s.mul(b, c)] != right as u32 {
                    return false;
                }
            }
        }
    }
    true
}

/// For idempotents `e <= f` there is `g <= f` with `eg = 0` and `e ∨ g = f`.
fn is_relatively_complemented(s: &MulTable) -> bool {
    let es = s.idempotents();
    for &f in es {
        for &e in es {
            if !s.leq(e, f) {
                continue;
            }
            let ok = es.iter().any(|&g| s.leq(g, f) && s.mul(e, g) == s.zero() && s.join(&[e, g]) == Some(f));
            if !ok {
                return false;
            }
        }
    }
    true
}

/// An equivalence relation on the elements, stored as canonical class labels
/// numbered in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<u32>,
}

impl Partition {
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut map = HashMap::new();
        let labels = raw
            .iter()
            .map(|x| {
                let next = map.len() as u32;
                *map.entry(*x).or_insert(next)
            })
            .collect();
        Partition { labels }
    }

    pub fn identity(m: usize) -> Self {
        Partition { labels: (0..m as u32).collect() }
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.labels[a] as usize
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn class_count(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.class_count() == self.labels.len()
    }

    pub fn is_universal(&self) -> bool {
        self.class_count() <= 1
    }

    /// `self` is contained in `other` as a relation.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut rep: HashMap<u32, u32> = HashMap::new();
        self.labels.iter().zip(&other.labels).all(|(a, b)| *rep.entry(*a).or_insert(*b) == *b)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (x, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(x);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .classes()
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(m: usize) -> Self {
        UnionFind((0..m).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }

    fn partition(mut self) -> Partition {
        let roots: Vec<usize> = (0..self.0.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}

/// The congruence generated by the pairs `seeds`.
fn generated_congruence(s: &MulTable, seeds: impl IntoIterator<Item = (usize, usize)>) -> Partition {
    let mut uf = UnionFind::new(s.size());
    let mut queue: Vec<(usize, usize)> = seeds.into_iter().collect();
    while let Some((a, b)) = queue.pop() {
        if uf.union(a, b) {
            for x in s.elements() {
                queue.push((s.mul(x, a), s.mul(x, b)));
                queue.push((s.mul(a, x), s.mul(b, x)));
            }
        }
    }
    uf.partition()
}

/// The smallest congruence relating `a` and `b`.
pub fn principal_congruence(s: &MulTable, a: usize, b: usize) -> Partition {
    generated_congruence(s, [(a, b)])
}

/// The join of two congruences in the congruence lattice.
pub fn congruence_join(s: &MulTable, p: &Partition, q: &Partition) -> Partition {
    let pairs = p.classes().into_iter().chain(q.classes()).flat_map(|c| {
        let first = c[0];
        c.into_iter().skip(1).map(move |x| (first, x))
    });
    generated_congruence(s, pairs.collect::<Vec<_>>())
}

/// Every congruence, as joins of principal ones.
pub fn all_congruences(s: &MulTable) -> Result<Vec<Partition>> {
    check_congruence_size(s)?;
    let mut seen: HashSet<Partition> = HashSet::new();
    let identity = Partition::identity(s.size());
    seen.insert(identity.clone());
    let mut principal = Vec::new();
    for a in s.elements() {
        for b in a + 1..s.size() {
            let c = principal_congruence(s, a, b);
            if seen.insert(c.clone()) {
                principal.push(c);
            }
        }
    }
    let mut frontier = principal.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principal {
                let j = congruence_join(s, c, p);
                if seen.insert(j.clone()) {
                    if seen.len() > ENUMERATION_LIMIT {
                        return Err(Error::SizeLimit {
                            what: "congruence lattice".into(),
                            size: seen.len(),
                            limit: ENUMERATION_LIMIT,
                        });
                    }
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<Partition> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

fn check_congruence_size(s: &MulTable) -> Result<()> {
    if s.size() > CONGRUENCE_LIMIT {
        return Err(Error::SizeLimit { what: "congruence enumeration".into(), size: s.size(), limit: CONGRUENCE_LIMIT });
    }
    Ok(())
}

/// The maximum idempotent-separating congruence: `s μ t` when
/// `s e s⁻¹ = t e t⁻¹` for every idempotent `e`.
pub fn mu(s: &MulTable) -> Partition {
    let es = s.idempotents();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let labels: Vec<usize> = s
        .elements()
        .map(|a| {
            let sig: Vec<usize> = es.iter().map(|&e| s.mul(s.mul(a, e), s.inv(a))).collect();
            let next = ids.len();
            *ids.entry(sig).or_insert(next)
        })
        .collect();
    Partition::from_labels(&labels)
}

/// Green's relation `D`: `a D b` when some `x` has `d(x) = d(a)` and `r(x) = d(b)`.
pub fn green_d(s: &MulTable) -> Partition {
    let mut uf = UnionFind::new(s.size());
    for x in s.elements() {
        uf.union(s.dom(x), s.ran(x));
    }
    let labels: Vec<usize> = s.elements().map(|a| uf.find(s.dom(a))).collect();
    Partition::from_labels(&labels)
}

/// Whether the only congruences are equality and the universal relation.
/// Computed by principal-congruence closure and, independently, as
/// fundamental + 0-simple + 0-disjunctive; disagreement is an error.
pub fn is_congruence_free(s: &MulTable) -> Result<bool> {
    check_congruence_size(s)?;
    let by_enumeration =
        s.elements().all(|a| (a + 1..s.size()).all(|b| principal_congruence(s, a, b).is_universal()));
    if s.is_trivial() {
        return Ok(by_enumeration);
    }
    let p = s.predicates();
    let by_criterion = p.fundamental && p.zero_simple && p.zero_disjunctive;
    if by_enumeration != by_criterion {
        return Err(Error::Internal(format!(
            "congruence enumeration says {by_enumeration}, structural criterion says {by_criterion}"
        )));
    }
    Ok(by_enumeration)
}

/// The ideal generated by `a`, as a set of elements.
pub fn ideal_of(s: &MulTable, a: usize) -> FixedBitSet {
    let reach = ideal_idempotents(s, s.dom(a));
    let mut out = FixedBitSet::with_capacity(s.size());
    for x in s.elements() {
        if reach.contains(s.ran(x)) {
            out.insert(x);
        }
    }
    out
}

/// All ideals, including `{0}` and `S`, smallest first.
pub fn ideals(s: &MulTable) -> Result<Vec<FixedBitSet>> {
    let mut principal: Vec<FixedBitSet> = Vec::new();
    for e in s.idempotents() {
        let i = ideal_of(s, *e);
        if !principal.contains(&i) {
            principal.push(i);
        }
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out: Vec<FixedBitSet> = Vec::new();
    let zero_ideal = ideal_of(s, s.zero());
    seen.insert(zero_ideal.ones().collect());
    out.push(zero_ideal);
    let mut i = 0;
    while i < out.len() {
        let cur = out[i].clone();
        for p in &principal {
            let mut u = cur.clone();
            u.union_with(p);
            if seen.insert(u.ones().collect()) {
                if out.len() >= ENUMERATION_LIMIT {
                    return Err(Error::SizeLimit { what: "ideal lattice".into(), size: out.len(), limit: ENUMERATION_LIMIT });
                }
                out.push(u);
            }
        }
        i += 1;
    }
    out.sort_by_key(|t| (t.count_ones(..), t.ones().collect::<Vec<_>>()));
    Ok(out)
}

/// No element outside `t` is covered by elements of `t` below it.
pub fn is_tightly_closed(s: &MulTable, t: &FixedBitSet) -> bool {
    s.nonzero().filter(|&x| !t.contains(x)).all(|x| {
        let inside: Vec<usize> = s.down(x).ones().filter(|&y| y != s.zero() && t.contains(y)).collect();
        !s.lenz_arrow(x, &inside)
    })
}

pub fn tightly_closed_ideals(s: &MulTable) -> Result<Vec<FixedBitSet>> {
    Ok(ideals(s)?.into_iter().filter(|t| is_tightly_closed(s, t)).collect())
}

/// The preorder `e ⪯ f` on nonzero idempotents: `e` is covered, in the
/// sense of the Lenz arrow, by ranges of elements whose domains lie below
/// `f`. Enlarging the witness set only helps, so it is taken to be all such
/// ranges. Returned as a map from `(e, f)` to the verdict.
pub fn zero_simplifying_preorder(s: &MulTable) -> HashMap<(usize, usize), bool> {
    let es: Vec<usize> = s.nonzero_idempotents().collect();
    let mut out = HashMap::new();
    for &f in &es {
        let ranges: Vec<usize> = ideal_idempotents(s, f).ones().filter(|&r| r != s.zero()).collect();
        for &e in &es {
            out.insert((e, f), s.lenz_arrow(e, &ranges));
        }
    }
    out
}

/// `≡` is universal on the nonzero idempotents. Cross-checked against the
/// absence of proper nonzero tightly closed ideals.
pub fn is_zero_simplifying(s: &MulTable) -> Result<bool> {
    if !s.predicates().meet_semigroup {
        return Err(Error::Precondition("table is not an inverse ∧-semigroup".into()));
    }
    let pre = zero_simplifying_preorder(s);
    let universal = pre.values().all(|&v| v);
    let nontrivial = tightly_closed_ideals(s)?
        .iter()
        .any(|t| t.count_ones(..) != 1 && t.count_ones(..) != s.size());
    if universal == nontrivial {
        return Err(Error::Internal(format!(
            "preorder universal = {universal} but nontrivial tightly closed ideal = {nontrivial}"
        )));
    }
    Ok(universal)
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn b2() -> MulTable {
        rees_b_r(&symmetric_inverse_monoid(1).unwrap(), 2).unwrap()
    }

    #[test]
    fn predicate_examples() {
        let i2 = symmetric_inverse_monoid(2).unwrap();
        let p = i2.predicates();
        assert!(p.fundamental && !p.zero_simple && p.boolean && p.meet_semigroup);
        let p = b2().predicates().clone();
        assert!(p.fundamental && p.zero_simple && p.zero_disjunctive);
        // The two orthogonal idempotents of B_2 have no join.
        assert!(!p.distributive && !p.boolean);
        let chain = chain_semilattice(2);
        assert!(chain.predicates().boolean);
        let chain3 = chain_semilattice(3);
        let p = chain3.predicates();
        assert!(!p.zero_disjunctive && p.distributive && !p.boolean);
        let z2 = cyclic_group_with_zero(2).unwrap();
        let p = z2.predicates();
        assert!(!p.fundamental && p.boolean && p.zero_simple && p.e_star_unitary);
        assert!(i2.predicates().unambiguous);
        // In I(3) the identities on {1,2} and {2,3} overlap without being comparable.
        assert!(!symmetric_inverse_monoid(3).unwrap().predicates().unambiguous);
    }

    #[test]
    fn congruence_free_examples() {
        assert!(is_congruence_free(&b2()).unwrap());
        assert!(!is_congruence_free(&symmetric_inverse_monoid(2).unwrap()).unwrap());
        assert!(!is_congruence_free(&chain_semilattice(3)).unwrap());
        assert!(is_congruence_free(&chain_semilattice(2)).unwrap());
        assert!(is_congruence_free(&chain_semilattice(1)).unwrap());
        let b3 = rees_b_r(&symmetric_inverse_monoid(1).unwrap(), 3).unwrap();
        assert!(is_congruence_free(&b3).unwrap());
    }

    #[test]
    fn zero_simplifying_examples() {
        assert!(is_zero_simplifying(&symmetric_inverse_monoid(3).unwrap()).unwrap());
        let i2 = symmetric_inverse_monoid(2).unwrap();
        assert!(!is_zero_simplifying(&direct_product(&i2, &i2).unwrap()).unwrap());
        assert!(is_zero_simplifying(&b2()).unwrap());
        // In a chain the top is covered by anything nonzero below it.
        assert!(is_zero_simplifying(&chain_semilattice(3)).unwrap());
        let two_atoms = zero_direct_union(&chain_semilattice(2), &chain_semilattice(2)).unwrap();
        assert!(!is_zero_simplifying(&two_atoms).unwrap());
    }

    #[test]
    fn ideals_of_small_tables() {
        assert_eq!(ideals(&chain_semilattice(2)).unwrap().len(), 2);
        assert_eq!(ideals(&symmetric_inverse_monoid(3).unwrap()).unwrap().len(), 4);
        assert_eq!(tightly_closed_ideals(&symmetric_inverse_monoid(3).unwrap()).unwrap().len(), 2);
        let i2 = symmetric_inverse_monoid(2).unwrap();
        assert_eq!(tightly_closed_ideals(&direct_product(&i2, &i2).unwrap()).unwrap().len(), 4);
    }

    #[test]
    fn mu_is_the_largest_idempotent_separating_congruence() {
        let corpus = [
            symmetric_inverse_monoid(2).unwrap(),
            b2(),
            cyclic_group_with_zero(2).unwrap(),
            cyclic_group_with_zero(3).unwrap(),
            rees_b_r(&cyclic_group_with_zero(2).unwrap(), 2).unwrap(),
            chain_semilattice(3),
        ];
        for s in &corpus {
            let m = mu(s);
            let congruences = all_congruences(s).unwrap();
            assert!(congruences.contains(&m));
            let separating = |c: &Partition| {
                s.idempotents().iter().all(|&e| s.idempotents().iter().all(|&f| e == f || !c.same(e, f)))
            };
            assert!(separating(&m));
            for c in congruences.iter().filter(|c| separating(c)) {
                assert!(c.refines(&m));
            }
        }
    }

    #[test]
    fn congruence_lattice_of_a_chain() {
        // A k-element chain semilattice has 2^(k-1) congruences.
        assert_eq!(all_congruences(&chain_semilattice(4)).unwrap().len(), 8);
    }

    #[test]
    fn green_d_classes_of_i3_are_ranks() {
        assert_eq!(green_d(&symmetric_inverse_monoid(3).unwrap()).class_count(), 4);
    }
}
