//! Finite inverse semigroups with zero given by multiplication tables.
//!
//! Tables are validated when they are read: associativity, an absorbing
//! zero, unique inverses and commuting idempotents are all checked, and the
//! first failure is reported with a witness. Order-theoretic data (down-sets,
//! 0-minimal elements, supports) is computed once on first use.

mod constructors;
mod predicates;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use constructors::{
    chain_semilattice, cyclic_group_with_zero, direct_product, meet_semilattice, rees_b_r,
    symmetric_element, symmetric_inverse_monoid, zero_direct_union, PartialInjection,
};
pub use predicates::{
    all_congruences, congruence_join, green_d, ideal_of, ideals, is_congruence_free, is_tightly_closed,
    is_zero_simplifying, mu, predicates, principal_congruence, tightly_closed_ideals, zero_simplifying_preorder,
    Partition, Predicates,
};

/// A multiplication table as read from a file, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTable {
    pub size: usize,
    pub zero: usize,
    pub identity: Option<usize>,
    pub rows: Vec<Vec<usize>>,
    pub names: Option<Vec<String>>,
}

/// The first axiom a table violates, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    Shape(String),
    EntryOutOfRange { row: usize, col: usize, value: usize },
    ZeroNotAbsorbing { element: usize },
    NotAssociative { a: usize, b: usize, c: usize },
    NoInverse { element: usize },
    SeveralInverses { element: usize, first: usize, second: usize },
    IdempotentsDoNotCommute { e: usize, f: usize },
    IdentityFails { element: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Shape(msg) => write!(f, "malformed table: {msg}"),
            Diagnostic::EntryOutOfRange { row, col, value } => {
                write!(f, "entry {row}*{col} = {value} is not an element")
            }
            Diagnostic::ZeroNotAbsorbing { element } => write!(f, "zero does not absorb element {element}"),
            Diagnostic::NotAssociative { a, b, c } => write!(f, "({a}*{b})*{c} != {a}*({b}*{c})"),
            Diagnostic::NoInverse { element } => write!(f, "element {element} has no inverse"),
            Diagnostic::SeveralInverses { element, first, second } => {
                write!(f, "element {element} has two inverses, {first} and {second}")
            }
            Diagnostic::IdempotentsDoNotCommute { e, f: g } => write!(f, "idempotents {e} and {g} do not commute"),
            Diagnostic::IdentityFails { element } => write!(f, "declared identity fails on element {element}"),
        }
    }
}

impl From<Diagnostic> for Error {
    fn from(d: Diagnostic) -> Self {
        Error::NotInverse(d.to_string())
    }
}

impl RawTable {
    /// Checks every axiom of an inverse semigroup with zero.
    pub fn validate(self) -> std::result::Result<MulTable, Diagnostic> {
        let m = self.size;
        if m == 0 {
            return Err(Diagnostic::Shape("no elements".into()));
        }
        if self.zero >= m {
            return Err(Diagnostic::Shape(format!("zero {} is not an element", self.zero)));
        }
        if let Some(e) = self.identity {
            if e >= m {
                return Err(Diagnostic::Shape(format!("identity {e} is not an element")));
            }
        }
        if self.rows.len() != m {
            return Err(Diagnostic::Shape(format!("expected {m} rows, found {}", self.rows.len())));
        }
        let mut table = Vec::with_capacity(m * m);
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != m {
                return Err(Diagnostic::Shape(format!("row {i} has {} entries, expected {m}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= m {
                    return Err(Diagnostic::EntryOutOfRange { row: i, col: j, value: v });
                }
                table.push(v as u32);
            }
        }
        if let Some(names) = &self.names {
            if names.len() != m {
                return Err(Diagnostic::Shape("wrong number of names".into()));
            }
        }
        let at = |a: usize, b: usize| table[a * m + b] as usize;
        let z = self.zero;
        for s in 0..m {
            if at(z, s) != z || at(s, z) != z {
                return Err(Diagnostic::ZeroNotAbsorbing { element: s });
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = at(a, b);
                for c in 0..m {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Diagnostic::NotAssociative { a, b, c });
                    }
                }
            }
        }
        if let Some(e) = self.identity {
            for s in 0..m {
                if at(e, s) != s || at(s, e) != s {
                    return Err(Diagnostic::IdentityFails { element: s });
                }
            }
        }
        let inverse = compute_inverses(m, &table)?;
        let idempotents: Vec<usize> = (0..m).filter(|&e| at(e, e) == e).collect();
        for &e in &idempotents {
            for &f in &idempotents {
                if at(e, f) != at(f, e) {
                    return Err(Diagnostic::IdempotentsDoNotCommute { e, f });
                }
            }
        }
        Ok(MulTable::assemble(m, z, self.identity, table, inverse, self.names))
    }
}

fn compute_inverses(m: usize, table: &[u32]) -> std::result::Result<Vec<u32>, Diagnostic> {
    let at = |a: usize, b: usize| table[a * m + b] as usize;
    let mut inverse = Vec::with_capacity(m);
    for s in 0..m {
        let mut found = None;
        for t in 0..m {
            if at(at(s, t), s) == s && at(at(t, s), t) == t {
                if let Some(first) = found {
                    return Err(Diagnostic::SeveralInverses { element: s, first, second: t });
                }
                found = Some(t);
            }
        }
        inverse.push(found.ok_or(Diagnostic::NoInverse { element: s })? as u32);
    }
    Ok(inverse)
}

/// A validated finite inverse semigroup with zero.
#[derive(Debug)]
pub struct MulTable {
    size: usize,
    zero: usize,
    identity: Option<usize>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    names: Option<Vec<String>>,
    derived: OnceLock<Derived>,
    predicates: OnceLock<Predicates>,
}

impl Clone for MulTable {
    fn clone(&self) -> Self {
        MulTable::assemble(
            self.size,
            self.zero,
            self.identity,
            self.table.clone(),
            self.inverse.clone(),
            self.names.clone(),
        )
    }
}

impl PartialEq for MulTable {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.zero == other.zero && self.identity == other.identity && self.table == other.table
    }
}

#[derive(Debug)]
struct Derived {
    idempotents: Vec<usize>,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
    zero_minimal: Vec<usize>,
    support: Vec<FixedBitSet>,
}

impl MulTable {
    fn assemble(
        size: usize,
        zero: usize,
        identity: Option<usize>,
        table: Vec<u32>,
        inverse: Vec<u32>,
        names: Option<Vec<String>>,
    ) -> Self {
        // An undeclared identity is still an identity.
        let identity = identity.or_else(|| {
            let at = |a: usize, b: usize| table[a * size + b] as usize;
            (0..size).find(|&e| at(e, e) == e && (0..size).all(|x| at(e, x) == x && at(x, e) == x))
        });
        MulTable {
            size,
            zero,
            identity,
            table,
            inverse,
            names,
            derived: OnceLock::new(),
            predicates: OnceLock::new(),
        }
    }

    /// Builds a table from a product function known to define an inverse
    /// semigroup. Inverses are still computed and checked for uniqueness,
    /// but associativity is not re-verified.
    pub fn from_fn(
        size: usize,
        zero: usize,
        identity: Option<usize>,
        names: Option<Vec<String>>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                table.push(mul(a, b) as u32);
            }
        }
        let inverse = compute_inverses(size, &table)?;
        Ok(MulTable::assemble(size, zero, identity, table, inverse, names))
    }

    /// Fully validated construction from a product function.
    pub fn from_fn_checked(
        size: usize,
        zero: usize,
        identity: Option<usize>,
        names: Option<Vec<String>>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let rows = (0..size).map(|a| (0..size).map(|b| mul(a, b)).collect()).collect();
        Ok(RawTable { size, zero, identity, rows, names }.validate()?)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `d(a) = a⁻¹ a`.
    pub fn dom(&self, a: usize) -> usize {
        self.mul(self.inv(a), a)
    }

    /// `r(a) = a a⁻¹`.
    pub fn ran(&self, a: usize) -> usize {
        self.mul(a, self.inv(a))
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&a| a != self.zero)
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    fn derived(&self) -> &Derived {
        self.derived.get_or_init(|| {
            let m = self.size;
            let idempotents: Vec<usize> = (0..m).filter(|&a| self.is_idempotent(a)).collect();
            let mut down = vec![FixedBitSet::with_capacity(m); m];
            let mut up = vec![FixedBitSet::with_capacity(m); m];
            for a in 0..m {
                let ra = self.ran(a);
                for b in 0..m {
                    if self.mul(ra, b) == a {
                        down[b].insert(a);
                        up[a].insert(b);
                    }
                }
            }
            let zero_minimal: Vec<usize> =
                (0..m).filter(|&a| a != self.zero && down[a].count_ones(..) == 2).collect();
            let mut support = vec![FixedBitSet::with_capacity(m); m];
            for &x in &zero_minimal {
                for b in up[x].ones() {
                    support[b].insert(x);
                }
            }
            Derived { idempotents, down, up, zero_minimal, support }
        })
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.derived().idempotents
    }

    pub fn nonzero_idempotents(&self) -> impl Iterator<Item = usize> + '_ {
        self.idempotents().iter().copied().filter(move |&e| e != self.zero)
    }

    /// Natural partial order, `a = r(a) b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.derived().down[b].contains(a)
    }

    /// `{x : x <= a}`, including zero.
    pub fn down(&self, a: usize) -> &FixedBitSet {
        &self.derived().down[a]
    }

    /// `{x : x >= a}`.
    pub fn up(&self, a: usize) -> &FixedBitSet {
        &self.derived().up[a]
    }

    /// Nonzero elements with nothing but zero below them.
    pub fn zero_minimal(&self) -> &[usize] {
        &self.derived().zero_minimal
    }

    /// The 0-minimal elements below `a`.
    pub fn support(&self, a: usize) -> &FixedBitSet {
        &self.derived().support[a]
    }

    /// `a` and `b` have a nonzero common lower bound.
    pub fn meets(&self, a: usize, b: usize) -> bool {
        let d = self.derived();
        d.down[a].intersection(&d.down[b]).any(|x| x != self.zero)
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let d = self.derived();
        let mut common = d.down[a].clone();
        common.intersect_with(&d.down[b]);
        greatest_in(&common, &d.down)
    }

    /// Least upper bound of a set; the empty join is zero.
    pub fn join(&self, set: &[usize]) -> Option<usize> {
        let d = self.derived();
        let mut bounds = FixedBitSet::with_capacity(self.size);
        bounds.insert_range(..);
        for &a in set {
            bounds.intersect_with(&d.up[a]);
        }
        bounds.ones().find(|&u| bounds.is_subset(&d.up[u]))
    }

    pub fn compatible(&self, a: usize, b: usize) -> bool {
        self.is_idempotent(self.mul(self.inv(a), b)) && self.is_idempotent(self.mul(a, self.inv(b)))
    }

    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.mul(self.inv(a), b) == self.zero && self.mul(a, self.inv(b)) == self.zero
    }

    /// `a -> B`: every nonzero `x <= a` meets some element of `B`.
    pub fn lenz_arrow(&self, a: usize, targets: &[usize]) -> bool {
        self.down(a).ones().filter(|&x| x != self.zero).all(|x| targets.iter().any(|&b| self.meets(x, b)))
    }

    /// `B` lies below `a` and `a -> B`.
    pub fn is_cover(&self, a: usize, set: &[usize]) -> bool {
        set.iter().all(|&b| self.leq(b, a)) && self.lenz_arrow(a, set)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    /// Looks an element up by name or by index.
    pub fn find(&self, token: &str) -> Option<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == token) {
                return Some(i);
            }
        }
        token.parse::<usize>().ok().filter(|&i| i < self.size)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::Precondition("wrong number of names".into()));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// The cached structural predicates.
    pub fn predicates(&self) -> &Predicates {
        self.predicates.get_or_init(|| predicates::compute(self))
    }

    /// The subsemigroup on `elements`, which must contain zero and be closed
    /// under products and inverses. Returns the table and the embedding.
    pub fn restrict(&self, elements: &[usize]) -> Result<(MulTable, Vec<usize>)> {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let index: HashMap<usize, usize> = sorted.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let zero = *index.get(&self.zero).ok_or_else(|| Error::Precondition("subset must contain zero".into()))?;
        for &a in &sorted {
            if !index.contains_key(&self.inv(a)) {
                return Err(Error::Precondition(format!("subset not closed under inverse at {}", self.name(a))));
            }
            for &b in &sorted {
                if !index.contains_key(&self.mul(a, b)) {
                    return Err(Error::Precondition("subset not closed under products".into()));
                }
            }
        }
        let identity = self.identity.and_then(|e| index.get(&e).copied());
        let names = self.names.as_ref().map(|n| sorted.iter().map(|&a| n[a].clone()).collect());
        let t = MulTable::from_fn(sorted.len(), zero, identity, names, |a, b| index[&self.mul(sorted[a], sorted[b])])?;
        Ok((t, sorted))
    }

    /// `E(S)` as a semilattice in its own right, with its embedding into `S`.
    pub fn idempotent_semilattice(&self) -> (MulTable, Vec<usize>) {
        let elems = self.idempotents().to_vec();
        self.restrict(&elems).expect("idempotents form a subsemigroup")
    }

    /// Reads the text format: a header `elements m zero z [identity e]`, `m`
    /// rows of `m` indices, and optional `name i label` lines.
    pub fn parse(text: &str) -> Result<Self> {
        Ok(parse_raw(text)?.validate()?)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("elements {} zero {}", self.size, self.zero);
        if let Some(e) = self.identity {
            out.push_str(&format!(" identity {e}"));
        }
        out.push('\n');
        for a in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        if let Some(names) = &self.names {
            for (i, n) in names.iter().enumerate() {
                out.push_str(&format!("name {i} {n}\n"));
            }
        }
        out
    }
}

/// The element of `set` lying above all others, if any.
fn greatest_in(set: &FixedBitSet, down: &[FixedBitSet]) -> Option<usize> {
    let best = set.ones().max_by_key(|&x| down[x].count_ones(..))?;
    set.is_subset(&down[best]).then_some(best)
}

pub fn parse_raw(text: &str) -> Result<RawTable> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty table file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let num = |t: &str| t.parse::<usize>().map_err(|_| Error::parse(hline, format!("expected a number, found `{t}`")));
    let (size, zero, identity) = match toks.as_slice() {
        ["elements", m, "zero", z] => (num(m)?, num(z)?, None),
        ["elements", m, "zero", z, "identity", e] => (num(m)?, num(z)?, Some(num(e)?)),
        _ => return Err(Error::parse(hline, "expected `elements <m> zero <z> [identity <e>]`")),
    };
    let mut rows = Vec::with_capacity(size);
    let mut names: Vec<Option<String>> = vec![None; size];
    let mut any_name = false;
    for (ln, line) in lines {
        if let Some(rest) = line.strip_prefix("name ") {
            let (idx, label) = rest.trim().split_once(char::is_whitespace).ok_or_else(|| Error::parse(ln, "expected `name <i> <label>`"))?;
            let idx: usize = idx.parse().map_err(|_| Error::parse(ln, "bad element index"))?;
            if idx >= size {
                return Err(Error::parse(ln, format!("element {idx} out of range")));
            }
            names[idx] = Some(label.trim().to_string());
            any_name = true;
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(ln, format!("bad entry `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let names = if any_name {
        Some(names.into_iter().enumerate().map(|(i, n)| n.unwrap_or_else(|| i.to_string())).collect())
    } else {
        None
    };
    Ok(RawTable { size, zero, identity, rows, names })
}

/// `θ: S -> T` preserves products and zero.
pub fn is_homomorphism(s: &MulTable, t: &MulTable, theta: &[usize]) -> bool {
    theta.len() == s.size()
        && theta[s.zero()] == t.zero()
        && s.elements().all(|a| s.elements().all(|b| theta[s.mul(a, b)] == t.mul(theta[a], theta[b])))
}

/// `θ` is a bijective homomorphism.
pub fn is_isomorphism(s: &MulTable, t: &MulTable, theta: &[usize]) -> bool {
    if s.size() != t.size() || !is_homomorphism(s, t, theta) {
        return false;
    }
    let mut seen = vec![false; t.size()];
    theta.iter().all(|&x| x < t.size() && !std::mem::replace(&mut seen[x], true))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn brandt2() -> MulTable {
        rees_b_r(&symmetric_inverse_monoid(1).unwrap(), 2).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        let text = "# the 2-chain\nelements 2 zero 0 identity 1\n0 0\n0 1\nname 0 z\nname 1 e\n";
        let t = MulTable::parse(text).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(t.find("e"), Some(1));
        assert_eq!(MulTable::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn diagnostics_name_a_witness() {
        let not_assoc = "elements 3 zero 0\n0 0 0\n0 1 2\n0 1 1\n";
        let err = parse_raw(not_assoc).unwrap().validate().unwrap_err();
        assert!(matches!(err, Diagnostic::NotAssociative { .. }), "{err:?}");
        // The full transformation monoid on two points adjoined with zero is
        // regular but the constant maps have several inverses.
        let mut rows = vec![vec![0; 5]; 5];
        let maps = [[0usize, 0], [0, 1], [1, 0], [1, 1]];
        for (i, f) in maps.iter().enumerate() {
            for (j, g) in maps.iter().enumerate() {
                let h = [f[g[0]], f[g[1]]];
                rows[i + 1][j + 1] = 1 + maps.iter().position(|m| *m == h).unwrap();
            }
        }
        let err = RawTable { size: 5, zero: 0, identity: None, rows, names: None }.validate().unwrap_err();
        assert!(matches!(err, Diagnostic::SeveralInverses { .. } | Diagnostic::NoInverse { .. }), "{err:?}");
        let bad_zero = "elements 2 zero 0\n0 1\n1 1\n";
        assert!(matches!(parse_raw(bad_zero).unwrap().validate(), Err(Diagnostic::ZeroNotAbsorbing { .. })));
        assert!(MulTable::parse("elements 2 zero 0\n0 0\n").is_err());
    }

    #[test]
    fn order_and_minimal_elements_in_brandt() {
        let b2 = brandt2();
        assert_eq!(b2.size(), 5);
        assert_eq!(b2.zero_minimal().len(), 4);
        assert_eq!(b2.idempotents().len(), 3);
        for a in b2.nonzero() {
            assert_eq!(b2.support(a).count_ones(..), 1);
            assert_eq!(b2.ran(b2.inv(a)), b2.dom(a));
        }
    }

    #[test]
    fn natural_order_characterisations_agree() {
        for table in [symmetric_inverse_monoid(3).unwrap(), brandt2(), chain_semilattice(4)] {
            for a in table.elements() {
                for b in table.elements() {
                    let left = a == table.mul(table.ran(a), b);
                    let right = a == table.mul(b, table.dom(a));
                    assert_eq!(left, right);
                    assert_eq!(left, table.leq(a, b));
                }
            }
        }
    }

    #[test]
    fn joins_and_meets_in_i2() {
        let i2 = symmetric_inverse_monoid(2).unwrap();
        let atoms: Vec<usize> = i2.nonzero_idempotents().filter(|&e| i2.support(e).count_ones(..) == 1).collect();
        assert_eq!(atoms.len(), 2);
        assert_eq!(i2.join(&atoms), i2.identity());
        assert_eq!(i2.join(&[]), Some(i2.zero()));
        assert_eq!(i2.meet(atoms[0], atoms[1]), Some(i2.zero()));
        assert!(i2.is_cover(i2.identity().unwrap(), &atoms));
        assert!(!i2.is_cover(i2.identity().unwrap(), &atoms[..1]));
    }

    #[test]
    fn restriction_to_idempotents() {
        let i3 = symmetric_inverse_monoid(3).unwrap();
        let (e, emb) = i3.idempotent_semilattice();
        assert_eq!(e.size(), 8);
        assert!(is_homomorphism(&e, &i3, &emb));
        assert!(i3.restrict(&[1, 2]).is_err());
    }
}
