//! The Cuntz inverse monoids `C_{n,r}` as finite orthogonal joins of elements
//! of `P_{n,r}`, and their unit groups `G_{n,r}` as tree pairs.
//!
//! A normal form is a sorted, pairwise orthogonal list of parts in which no
//! full sibling family `(u a_k)(v a_k)⁻¹, k = 1..n` survives. Each part is a
//! cone of the domain on which the element is a single prefix replacement,
//! and in normal form these cones are the maximal ones, so the normal form
//! is unique.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::filtercomp::orthogonalize_by;
use crate::polycyclic::{ext_arrow, format_subst, parse_subst, ExtPolycyclic, ExtSubst, Subst};
use crate::words::{format_rooted, is_rooted_maximal_prefix_code, parse_rooted, Alphabet, Letter, RootedWord, Word};

/// Alphabet size and number of roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub n: usize,
    pub r: usize,
}

impl Params {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        ExtPolycyclic::new(n, r)?;
        Ok(Params { n, r })
    }

    fn semigroup(&self) -> ExtPolycyclic {
        ExtPolycyclic::new(self.n, self.r).expect("validated parameters")
    }

    fn alphabet(&self) -> Alphabet {
        self.semigroup().alphabet
    }

    fn same(&self, other: &Params) -> Result<()> {
        if self != other {
            return Err(Error::ParameterMismatch(format!(
                "(n, r) = ({}, {}) against ({}, {})",
                self.n, self.r, other.n, other.r
            )));
        }
        Ok(())
    }
}

/// An element of `C_{n,r}`: the join of its parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CuntzElement {
    pub params: Params,
    pub parts: Vec<ExtSubst>,
}

impl CuntzElement {
    /// Normalizes the join of `parts`, which must be pairwise compatible.
    pub fn new(params: Params, parts: Vec<ExtSubst>) -> Result<Self> {
        let sg = params.semigroup();
        for p in &parts {
            sg.check(p)?;
        }
        cuntz_normalize(&CuntzElement { params, parts })
    }

    pub fn zero(params: Params) -> Self {
        CuntzElement { params, parts: Vec::new() }
    }

    pub fn one(params: Params) -> Self {
        CuntzElement { params, parts: (1..=params.r).map(ExtSubst::identity_at).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parts separated by `;`. Each part is `(i|y,x|j)`, or with one root
    /// also `y.x^-1`. The empty join is `0`.
    pub fn parse(params: Params, s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s);
        if s.trim() == "0" || s.trim().is_empty() {
            return Ok(CuntzElement::zero(params));
        }
        let sg = params.semigroup();
        let mut parts = Vec::new();
        for piece in s.split(';') {
            let piece = piece.trim();
            let part = if piece.starts_with('(') {
                sg.parse_ext(piece)?
            } else if params.r == 1 {
                ExtSubst::new(1, parse_subst(&sg.alphabet, piece)?, 1)
            } else {
                return Err(Error::literal(piece, "parts are written (i|y,x|j) when r > 1"));
            };
            parts.push(part);
        }
        CuntzElement::new(params, parts)
    }

    pub fn format(&self) -> String {
        if self.parts.is_empty() {
            return "0".to_string();
        }
        let sg = self.params.semigroup();
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| if self.params.r == 1 { format_subst(&sg.alphabet, &p.subst) } else { sg.format_ext(p) })
            .collect();
        parts.join(";")
    }
}

fn check_compatible(parts: &[ExtSubst]) -> Result<()> {
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            if !a.compatible(b) {
                return Err(Error::Incompatible(format!("{a:?} and {b:?}")));
            }
        }
    }
    Ok(())
}

/// Sibling families: parts `(u a_k)(v a_k)⁻¹` grouped by `(roots, u, v)`.
fn families(parts: &[ExtSubst]) -> BTreeMap<(usize, Word, Word, usize), Vec<(Letter, usize)>> {
    let mut groups: BTreeMap<_, Vec<(Letter, usize)>> = BTreeMap::new();
    for (i, p) in parts.iter().enumerate() {
        if let (Some((y, a)), Some((x, b))) = (p.subst.range.split_last(), p.subst.domain.split_last()) {
            if a == b {
                groups.entry((p.range_root, y, x, p.domain_root)).or_default().push((a, i));
            }
        }
    }
    groups
}

fn contract_once(parts: &mut Vec<ExtSubst>, n: usize, pick: &mut impl FnMut(usize) -> usize) -> bool {
    let full: Vec<_> = families(parts)
        .into_iter()
        .filter(|(_, members)| {
            let mut letters: Vec<Letter> = members.iter().map(|m| m.0).collect();
            letters.sort_unstable();
            letters.dedup();
            letters.len() == n
        })
        .collect();
    if full.is_empty() {
        return false;
    }
    let ((ri, y, x, di), members) = full[pick(full.len())].clone();
    let mut drop: Vec<usize> = members.iter().map(|m| m.1).collect();
    drop.sort_unstable();
    for i in drop.into_iter().rev() {
        parts.remove(i);
    }
    parts.push(ExtSubst::new(ri, Subst::new(y, x), di));
    true
}

/// Orthogonalize, then contract sibling families to a fixpoint.
pub fn cuntz_normalize(x: &CuntzElement) -> Result<CuntzElement> {
    check_compatible(&x.parts)?;
    let mut parts = x.parts.clone();
    parts.sort();
    parts.dedup();
    loop {
        parts = orthogonalize_by(&parts, |a, b| a.leq(b), |a, b| a.orthogonal(b))?;
        if !contract_once(&mut parts, x.params.n, &mut |_| 0) {
            break;
        }
    }
    parts.sort();
    Ok(CuntzElement { params: x.params, parts })
}

/// Normalization with the order of steps left to `pick`, which is handed
/// the number of available steps and returns the index of the one to take.
/// Every order reaches the same normal form.
pub fn cuntz_normalize_with(x: &CuntzElement, mut pick: impl FnMut(usize) -> usize) -> Result<CuntzElement> {
    check_compatible(&x.parts)?;
    let mut parts = x.parts.clone();
    loop {
        let mut discards: Vec<usize> = Vec::new();
        for (i, a) in parts.iter().enumerate() {
            let dominated = parts.iter().enumerate().any(|(j, b)| j != i && a.leq(b) && (a != b || j < i));
            if dominated {
                discards.push(i);
            }
        }
        let contractible = families(&parts)
            .values()
            .filter(|m| {
                let mut l: Vec<Letter> = m.iter().map(|x| x.0).collect();
                l.sort_unstable();
                l.dedup();
                l.len() == x.params.n
            })
            .count();
        let total = discards.len() + contractible;
        if total == 0 {
            break;
        }
        let k = pick(total) % total;
        if k < discards.len() {
            parts.remove(discards[k]);
        } else {
            let target = k - discards.len();
            let mut seen = 0;
            contract_once(&mut parts, x.params.n, &mut |count| {
                seen = count;
                target.min(count - 1)
            });
            debug_assert_eq!(seen, contractible);
        }
    }
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            if !a.orthogonal(b) {
                return Err(Error::Incompatible(format!("{a:?} and {b:?} are neither comparable nor orthogonal")));
            }
        }
    }
    parts.sort();
    Ok(CuntzElement { params: x.params, parts })
}

pub fn cuntz_mul(x: &CuntzElement, y: &CuntzElement) -> Result<CuntzElement> {
    x.params.same(&y.params)?;
    let parts = x.parts.iter().flat_map(|a| y.parts.iter().filter_map(move |b| a.mul(b))).collect();
    cuntz_normalize(&CuntzElement { params: x.params, parts })
}

pub fn cuntz_inv(x: &CuntzElement) -> CuntzElement {
    let mut parts: Vec<ExtSubst> = x.parts.iter().map(ExtSubst::inverse).collect();
    parts.sort();
    CuntzElement { params: x.params, parts }
}

pub fn cuntz_meet(x: &CuntzElement, y: &CuntzElement) -> Result<CuntzElement> {
    x.params.same(&y.params)?;
    let parts = x.parts.iter().flat_map(|a| y.parts.iter().filter_map(move |b| a.meet(b))).collect();
    cuntz_normalize(&CuntzElement { params: x.params, parts })
}

pub fn cuntz_join(x: &CuntzElement, y: &CuntzElement) -> Result<CuntzElement> {
    x.params.same(&y.params)?;
    let parts = x.parts.iter().chain(&y.parts).cloned().collect();
    cuntz_normalize(&CuntzElement { params: x.params, parts })
}

/// Whether every part of `x` is covered by the parts of `y`.
pub fn cuntz_arrow(x: &CuntzElement, y: &CuntzElement) -> bool {
    let alphabet = x.params.alphabet();
    x.parts.iter().all(|a| ext_arrow(&alphabet, a, y.parts.iter()))
}

/// Equality in `C_{n,r}`, by normal forms, cross-checked against the mutual
/// arrow between the two part sets.
pub fn cuntz_eq(x: &CuntzElement, y: &CuntzElement) -> Result<bool> {
    x.params.same(&y.params)?;
    let by_normal_form = cuntz_normalize(x)?.parts == cuntz_normalize(y)?.parts;
    let by_arrow = cuntz_arrow(x, y) && cuntz_arrow(y, x);
    if by_normal_form != by_arrow {
        return Err(Error::Internal("normal forms disagree with the mutual arrow".into()));
    }
    Ok(by_normal_form)
}

/// Whether a normalized element is a unit: its domain words and its range
/// words both form maximal prefix codes over all roots.
pub fn is_unit(x: &CuntzElement) -> Result<bool> {
    let alphabet = x.params.alphabet();
    let dom: Vec<RootedWord> = x.parts.iter().map(ExtSubst::domain_word).collect();
    let ran: Vec<RootedWord> = x.parts.iter().map(ExtSubst::range_word).collect();
    if dom.is_empty() {
        return Ok(false);
    }
    Ok(is_rooted_maximal_prefix_code(&alphabet, x.params.r, &dom)?
        && is_rooted_maximal_prefix_code(&alphabet, x.params.r, &ran)?)
}

/// An element of `G_{n,r}`: leaf `domain[i]` is sent to `range[perm[i]]`.
/// Both codes are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreePair {
    pub params: Params,
    pub domain: Vec<RootedWord>,
    pub range: Vec<RootedWord>,
    pub perm: Vec<usize>,
}

impl TreePair {
    /// Builds a tree pair from leaf pairs, checking both codes.
    pub fn from_pairs(params: Params, pairs: Vec<(RootedWord, RootedWord)>) -> Result<Self> {
        let mut domain: Vec<RootedWord> = pairs.iter().map(|p| p.0.clone()).collect();
        let mut range: Vec<RootedWord> = pairs.iter().map(|p| p.1.clone()).collect();
        domain.sort();
        range.sort();
        let alphabet = params.alphabet();
        for code in [&domain, &range] {
            if code.windows(2).any(|w| w[0] == w[1])
                || !is_rooted_maximal_prefix_code(&alphabet, params.r, code)?
            {
                return Err(Error::Precondition("tree pair codes must be maximal prefix codes over all roots".into()));
            }
        }
        let perm = domain
            .iter()
            .map(|d| {
                let image = &pairs.iter().find(|p| &p.0 == d).unwrap().1;
                range.binary_search(image).unwrap()
            })
            .collect();
        Ok(TreePair { params, domain, range, perm })
    }

    pub fn identity(params: Params) -> Self {
        let roots: Vec<RootedWord> = (1..=params.r).map(|i| RootedWord::new(i, Word::empty())).collect();
        TreePair { params, perm: (0..params.r).collect(), domain: roots.clone(), range: roots }
    }

    pub fn pairs(&self) -> Vec<(RootedWord, RootedWord)> {
        self.domain.iter().zip(&self.perm).map(|(d, &p)| (d.clone(), self.range[p].clone())).collect()
    }

    pub fn leaves(&self) -> usize {
        self.domain.len()
    }

    /// The image of a word long enough to pass through a domain leaf.
    pub fn act(&self, w: &RootedWord) -> Option<RootedWord> {
        let (i, d) = self.domain.iter().enumerate().find(|(_, d)| d.is_prefix_of(w))?;
        let rest = w.word.strip_prefix(&d.word)?;
        let r = &self.range[self.perm[i]];
        Some(RootedWord::new(r.root, r.word.concat(&rest)))
    }

    fn as_parts(&self) -> Vec<ExtSubst> {
        self.pairs()
            .into_iter()
            .map(|(d, r)| ExtSubst::new(r.root, Subst::new(r.word, d.word), d.root))
            .collect()
    }

    /// `{a,ba,bb}->{aa,ab,b}:perm=[0,1,2]`.
    pub fn format(&self) -> String {
        let alphabet = self.params.alphabet();
        let code = |c: &[RootedWord]| {
            c.iter().map(|w| format_rooted(&alphabet, self.params.r, w)).collect::<Vec<_>>().join(",")
        };
        let perm: Vec<String> = self.perm.iter().map(usize::to_string).collect();
        format!("{{{}}}->{{{}}}:perm=[{}]", code(&self.domain), code(&self.range), perm.join(","))
    }

    /// Parses the [`TreePair::format`] syntax. Codes may be listed in any
    /// order; `perm` refers to the positions as written.
    pub fn parse(params: Params, s: &str) -> Result<Self> {
        let alphabet = params.alphabet();
        let bad = |msg: &str| Error::literal(s, msg);
        let (codes, perm) = s.trim().split_once(":perm=").ok_or_else(|| bad("missing `:perm=`"))?;
        let (dom, ran) = codes.split_once("->").ok_or_else(|| bad("missing `->`"))?;
        let code = |c: &str| -> Result<Vec<RootedWord>> {
            let inner = c.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(|| bad("codes are braced"))?;
            inner.split(',').map(|w| parse_rooted(&alphabet, params.r, w)).collect()
        };
        let (dom, ran) = (code(dom)?, code(ran)?);
        let inner = perm.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(|| bad("perm is bracketed"))?;
        let perm: Vec<usize> = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad("perm entries are indices")))
            .collect::<Result<_>>()?;
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if dom.len() != ran.len() || sorted != (0..dom.len()).collect::<Vec<_>>() {
            return Err(bad("perm must be a bijection between equally sized codes"));
        }
        let pairs = dom.into_iter().zip(&perm).map(|(d, &p)| (d, ran[p].clone())).collect();
        TreePair::from_pairs(params, pairs)
    }
}

pub fn tp_from_unit(x: &CuntzElement) -> Result<TreePair> {
    let x = cuntz_normalize(x)?;
    if !is_unit(&x)? {
        return Err(Error::NotUnit(x.format()));
    }
    let pairs = x.parts.iter().map(|p| (p.domain_word(), p.range_word())).collect();
    TreePair::from_pairs(x.params, pairs)
}

pub fn tp_to_unit(g: &TreePair) -> Result<CuntzElement> {
    CuntzElement::new(g.params, g.as_parts())
}

/// Removes sibling families mapped intact onto sibling families.
pub fn tp_reduce(g: &TreePair) -> Result<TreePair> {
    let mut parts = g.as_parts();
    while contract_once(&mut parts, g.params.n, &mut |_| 0) {}
    let pairs = parts.iter().map(|p| (p.domain_word(), p.range_word())).collect();
    TreePair::from_pairs(g.params, pairs)
}

pub fn tp_inv(g: &TreePair) -> Result<TreePair> {
    TreePair::from_pairs(g.params, g.pairs().into_iter().map(|(d, r)| (r, d)).collect())
}

/// `g ∘ h`, applying `h` first. Each range leaf `w` of `h` is matched with
/// each comparable domain leaf `z` of `g`; the longer of the two is a leaf
/// of the common refinement, so only disagreeing branches are expanded.
pub fn tp_mul(g: &TreePair, h: &TreePair) -> Result<TreePair> {
    g.params.same(&h.params)?;
    let mut pairs = Vec::new();
    for (hd, w) in h.pairs() {
        for (z, gr) in g.pairs() {
            if w.is_prefix_of(&z) {
                let t = z.word.strip_prefix(&w.word).unwrap();
                pairs.push((RootedWord::new(hd.root, hd.word.concat(&t)), gr));
            } else if z.is_prefix_of(&w) {
                let t = w.word.strip_prefix(&z.word).unwrap();
                pairs.push((hd.clone(), RootedWord::new(gr.root, gr.word.concat(&t))));
            }
        }
    }
    tp_reduce(&TreePair::from_pairs(g.params, pairs)?)
}

pub fn tp_eq(g: &TreePair, h: &TreePair) -> Result<bool> {
    g.params.same(&h.params)?;
    Ok(tp_reduce(g)? == tp_reduce(h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: usize, r: usize) -> Params {
        Params::new(n, r).unwrap()
    }

    fn c(s: &str) -> CuntzElement {
        CuntzElement::parse(p(2, 1), s).unwrap()
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(c("a.a^-1;ba.ba^-1;bb.bb^-1"), CuntzElement::one(p(2, 1)));
        assert_eq!(c("a.a^-1;ab.ab^-1").format(), "a.a^-1");
        assert_eq!(c("a.b^-1").format(), "a.b^-1");
        assert!(matches!(CuntzElement::parse(p(2, 1), "a;b"), Err(Error::Incompatible(_))));
    }

    #[test]
    fn arithmetic_examples() {
        let one = CuntzElement::one(p(2, 1));
        let x = c("ab.b^-1;b.a^-1");
        assert_eq!(cuntz_mul(&one, &x).unwrap(), x);
        let j = cuntz_join(&c("a.a^-1"), &c("ba.ba^-1;bb.bb^-1")).unwrap();
        assert_eq!(j, one);
        let u = c("aa.a^-1;ab.ba^-1;b.bb^-1");
        assert!(is_unit(&u).unwrap());
        assert_eq!(cuntz_mul(&u, &cuntz_inv(&u)).unwrap(), one);
        assert!(cuntz_eq(&one, &c("a.a^-1;ba.ba^-1;bb.bb^-1")).unwrap());
        assert!(!cuntz_eq(&c("a.a^-1"), &c("b.b^-1")).unwrap());
        assert!(cuntz_eq(&x, &x).unwrap());
        assert!(cuntz_join(&c("a"), &c("b")).is_err());
        assert!(cuntz_mul(&one, &CuntzElement::one(p(2, 2))).is_err());
    }

    #[test]
    fn unit_examples() {
        assert!(!is_unit(&c("a.a^-1")).unwrap());
        assert!(is_unit(&CuntzElement::one(p(2, 1))).unwrap());
        assert!(is_unit(&CuntzElement::one(p(3, 2))).unwrap());
    }

    #[test]
    fn tree_pair_conversions() {
        let pr = p(2, 1);
        let id = TreePair::identity(pr);
        assert_eq!(tp_to_unit(&id).unwrap(), CuntzElement::one(pr));
        assert_eq!(tp_from_unit(&CuntzElement::one(pr)).unwrap(), id);
        let swap = TreePair::parse(pr, "{a,b}->{a,b}:perm=[1,0]").unwrap();
        assert_eq!(tp_to_unit(&swap).unwrap().format(), "a.b^-1;b.a^-1");
        assert_eq!(tp_mul(&swap, &swap).unwrap(), id);
        let g = TreePair::parse(pr, "{a,ba,bb}->{aa,ab,b}:perm=[0,1,2]").unwrap();
        assert_eq!(g.format(), "{a,ba,bb}->{aa,ab,b}:perm=[0,1,2]");
        let u = tp_to_unit(&g).unwrap();
        assert!(is_unit(&u).unwrap());
        assert_eq!(tp_from_unit(&u).unwrap(), g);
        assert_eq!(tp_mul(&g, &tp_inv(&g).unwrap()).unwrap(), id);
        assert!(matches!(tp_from_unit(&c("a.a^-1")), Err(Error::NotUnit(_))));
        let reducible = TreePair::parse(pr, "{a,b}->{a,b}:perm=[0,1]").unwrap();
        assert_eq!(tp_reduce(&reducible).unwrap(), id);
        let pr2 = p(2, 2);
        let roots = TreePair::parse(pr2, "{r1:1,r2:1}->{r1:1,r2:1}:perm=[1,0]").unwrap();
        assert_eq!(roots.format(), "{r1:1,r2:1}->{r1:1,r2:1}:perm=[1,0]");
        assert_eq!(tp_mul(&roots, &roots).unwrap(), TreePair::identity(pr2));
    }

    fn leaf_code(n: usize, r: usize, splits: &[usize]) -> Vec<RootedWord> {
        let mut code: Vec<RootedWord> = (1..=r).map(|i| RootedWord::new(i, Word::empty())).collect();
        for &s in splits {
            let w = code.remove(s % code.len());
            for l in 0..n as Letter {
                code.push(RootedWord::new(w.root, w.word.with(l)));
            }
        }
        code
    }

    fn tree_pair(n: usize, r: usize, a: &[usize], b: &[usize], shift: usize) -> TreePair {
        let d = leaf_code(n, r, a);
        let mut rng = leaf_code(n, r, &b[..a.len()]);
        let k = shift % rng.len();
        rng.rotate_left(k);
        TreePair::from_pairs(p(n, r), d.into_iter().zip(rng).collect()).unwrap()
    }

    fn arb_pair() -> impl Strategy<Value = TreePair> {
        (2usize..=3, 1usize..=2, prop::collection::vec(0usize..64, 0..5), prop::collection::vec(0usize..64, 5), 0usize..32)
            .prop_map(|(n, r, a, b, s)| tree_pair(n, r, &a, &b, s))
    }

    fn words_of(g: &TreePair, len: usize) -> Vec<RootedWord> {
        let alphabet = g.params.alphabet();
        (1..=g.params.r)
            .flat_map(|root| alphabet.words_of_length(len).into_iter().map(move |w| RootedWord::new(root, w)))
            .collect()
    }

    fn depth(g: &TreePair) -> usize {
        g.domain.iter().chain(&g.range).map(|w| w.word.len()).max().unwrap_or(0)
    }

    proptest! {
        #[test]
        fn product_is_composition(g in arb_pair(), seed in 0usize..1000) {
            let h = tree_pair(g.params.n, g.params.r, &[seed % 7, seed % 5], &[seed % 3, seed % 11], seed);
            let gh = tp_mul(&g, &h).unwrap();
            for w in words_of(&g, depth(&g) + depth(&h)) {
                prop_assert_eq!(gh.act(&w), g.act(&h.act(&w).unwrap()));
            }
        }

        #[test]
        fn unit_roundtrip(g in arb_pair()) {
            let u = tp_to_unit(&g).unwrap();
            prop_assert!(is_unit(&u).unwrap());
            prop_assert_eq!(tp_from_unit(&u).unwrap(), tp_reduce(&g).unwrap());
            let inv = tp_inv(&g).unwrap();
            prop_assert_eq!(tp_mul(&g, &inv).unwrap(), TreePair::identity(g.params));
            prop_assert_eq!(tp_from_unit(&cuntz_mul(&u, &tp_to_unit(&inv).unwrap()).unwrap()).unwrap(), TreePair::identity(g.params));
        }

        #[test]
        fn step_order_does_not_matter(g in arb_pair(), picks in prop::collection::vec(0usize..100, 64)) {
            // Expanded and redundant parts: the unit plus some of its restrictions.
            let mut parts = g.as_parts();
            let extra: Vec<ExtSubst> = parts
                .iter()
                .take(2)
                .map(|q| ExtSubst::new(q.range_root, Subst::new(q.subst.range.with(0), q.subst.domain.with(0)), q.domain_root))
                .collect();
            parts.extend(extra);
            let x = CuntzElement { params: g.params, parts };
            let mut it = picks.into_iter().cycle();
            let a = cuntz_normalize_with(&x, |k| it.next().unwrap() % k).unwrap();
            prop_assert_eq!(&a, &cuntz_normalize(&x).unwrap());
            prop_assert!(cuntz_eq(&a, &x).unwrap());
        }
    }
}
