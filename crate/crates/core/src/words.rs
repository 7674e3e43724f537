//! Words over finite alphabets, prefix codes, and paths in directed graphs.
//!
//! Letters are indices `0..n`. In literals they are written `a, b, c, ...`
//! when `n <= 26` and `a0, a1, ...` otherwise; the empty word is `1`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Letter = u16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet {
    n: usize,
}

impl Alphabet {
    /// An alphabet with `n >= 1` letters.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > Letter::MAX as usize {
            return Err(Error::AlphabetTooSmall { min: 1, got: n });
        }
        Ok(Alphabet { n })
    }

    /// Alphabets used by polycyclic monoids need at least two letters.
    pub fn polycyclic(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::AlphabetTooSmall { min: 2, got: n });
        }
        Alphabet::new(n)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.n as Letter
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&l| l as usize >= self.n) {
            Some(&l) => Err(Error::LetterOutOfRange { letter: l as usize, size: self.n }),
            None => Ok(()),
        }
    }

    /// All words of exactly `len` letters in lexicographic order.
    pub fn words_of_length(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * self.n);
            for w in &out {
                for l in self.letters() {
                    next.push(w.with(l));
                }
            }
            out = next;
        }
        out
    }

    /// All words with at most `len` letters, shortest first.
    pub fn words_up_to(&self, len: usize) -> Vec<Word> {
        (0..=len).flat_map(|k| self.words_of_length(k)).collect()
    }

    pub fn format_letter(&self, l: Letter) -> String {
        if self.n <= 26 {
            ((b'a' + l as u8) as char).to_string()
        } else {
            format!("a{l}")
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter().map(|&l| self.format_letter(l)).collect()
    }

    /// Parses a word literal. `1`, `ε` and the empty string denote the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "ε" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        if self.n <= 26 {
            for c in s.chars() {
                if !c.is_ascii_lowercase() {
                    return Err(Error::literal(s, format!("unexpected character `{c}`")));
                }
                letters.push((c as u8 - b'a') as Letter);
            }
        } else {
            let bytes = s.as_bytes();
            let mut i = 0;
            while i < bytes.len() {
                if bytes[i] != b'a' {
                    return Err(Error::literal(s, "letters are written a0, a1, ..."));
                }
                let start = i + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let idx: usize = s[start..end]
                    .parse()
                    .map_err(|_| Error::literal(s, "missing letter index"))?;
                letters.push(idx as Letter);
                i = end;
            }
        }
        let w = Word(letters);
        self.check(&w)?;
        Ok(w)
    }

    /// Parses a comma separated list of words.
    pub fn parse_code(&self, s: &str) -> Result<Vec<Word>> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(|w| self.parse_word(w)).collect()
    }
}

/// A finite word, stored as letter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// This word followed by one more letter.
    pub fn with(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `Some(z)` with `self = prefix z`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    /// Splits off the final letter.
    pub fn split_last(&self) -> Option<(Word, Letter)> {
        self.0.split_last().map(|(&l, rest)| (Word(rest.to_vec()), l))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Outcome of comparing two words in the prefix order. The carried word is
/// the remainder `z` with `longer = shorter z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrefixOrder {
    Equal,
    XPrefixOfY(Word),
    YPrefixOfX(Word),
    Incomparable,
}

pub fn prefix_compare(x: &Word, y: &Word) -> PrefixOrder {
    match slice_relation(&x.0, &y.0) {
        SliceRelation::Equal => PrefixOrder::Equal,
        SliceRelation::XPrefix => PrefixOrder::XPrefixOfY(Word(y.0[x.len()..].to_vec())),
        SliceRelation::YPrefix => PrefixOrder::YPrefixOfX(Word(x.0[y.len()..].to_vec())),
        SliceRelation::Incomparable => PrefixOrder::Incomparable,
    }
}

/// Meet in the prefix order read downwards: the longer of two comparable
/// words, or `None` when they diverge.
pub fn word_meet(x: &Word, y: &Word) -> Option<Word> {
    match prefix_compare(x, y) {
        PrefixOrder::Equal | PrefixOrder::YPrefixOfX(_) => Some(x.clone()),
        PrefixOrder::XPrefixOfY(_) => Some(y.clone()),
        PrefixOrder::Incomparable => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SliceRelation {
    Equal,
    XPrefix,
    YPrefix,
    Incomparable,
}

pub(crate) fn slice_relation<L: Eq>(x: &[L], y: &[L]) -> SliceRelation {
    if x.len() <= y.len() && y.starts_with(x) {
        if x.len() == y.len() {
            SliceRelation::Equal
        } else {
            SliceRelation::XPrefix
        }
    } else if x.len() > y.len() && x.starts_with(y) {
        SliceRelation::YPrefix
    } else {
        SliceRelation::Incomparable
    }
}

/// Decides whether every branch of a prefix tree eventually passes through
/// one of `targets`.
///
/// Nodes are sequences of labels starting at the empty sequence, and
/// `children` lists the labels that may extend a node. A node is covered when
/// some target is a prefix of it, or when some target strictly extends it and
/// every child is covered. This is the depth criterion: it agrees with asking
/// that all extensions of the root of length `max |target|` have a target
/// prefix, but only descends where a target still lies ahead.
pub fn branches_covered<L, F>(targets: &[Vec<L>], mut children: F) -> bool
where
    L: Clone + Eq,
    F: FnMut(&[L]) -> Vec<L>,
{
    fn go<L: Clone + Eq, F: FnMut(&[L]) -> Vec<L>>(
        node: &mut Vec<L>,
        targets: &[Vec<L>],
        children: &mut F,
    ) -> bool {
        if targets.iter().any(|t| node.starts_with(t)) {
            return true;
        }
        let live: Vec<Vec<L>> = targets
            .iter()
            .filter(|t| t.len() > node.len() && t.starts_with(node))
            .cloned()
            .collect();
        if live.is_empty() {
            return false;
        }
        let kids = children(node);
        if kids.is_empty() {
            return false;
        }
        for k in kids {
            node.push(k);
            let ok = go(node, &live, children);
            node.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut root = Vec::new();
    go(&mut root, targets, &mut children)
}

/// True when no word of `code` is a proper prefix of another. Duplicates make
/// a multiset that is not a code, so they are reported as well.
pub fn check_prefix_code(alphabet: &Alphabet, code: &[Word]) -> Result<()> {
    for w in code {
        alphabet.check(w)?;
    }
    for (i, x) in code.iter().enumerate() {
        for y in &code[i + 1..] {
            if x.is_prefix_of(y) {
                return Err(Error::NotPrefixCode(alphabet.format_word(x), alphabet.format_word(y)));
            }
            if y.is_prefix_of(x) {
                return Err(Error::NotPrefixCode(alphabet.format_word(y), alphabet.format_word(x)));
            }
        }
    }
    Ok(())
}

/// Whether `code` is a maximal prefix code over `alphabet`.
pub fn is_maximal_prefix_code(alphabet: &Alphabet, code: &[Word]) -> Result<bool> {
    if code.is_empty() {
        return Err(Error::EmptyCode);
    }
    match check_prefix_code(alphabet, code) {
        Ok(()) => {}
        Err(Error::NotPrefixCode(..)) => return Ok(false),
        Err(e) => return Err(e),
    }
    let targets: Vec<Vec<Letter>> = code.iter().map(|w| w.0.clone()).collect();
    Ok(branches_covered(&targets, |_| alphabet.letters().collect()))
}

/// Exact Kraft sum of a prefix code.
pub fn kraft_sum(alphabet: &Alphabet, code: &[Word]) -> Result<BigRational> {
    check_prefix_code(alphabet, code)?;
    let n = BigInt::from(alphabet.size());
    let mut sum = BigRational::zero();
    for w in code {
        let denom = num_traits::pow(n.clone(), w.len());
        sum += BigRational::new(BigInt::one(), denom);
    }
    Ok(sum)
}

/// A word hanging from one of `r` roots, numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedWord {
    pub root: usize,
    pub word: Word,
}

impl RootedWord {
    pub fn new(root: usize, word: Word) -> Self {
        RootedWord { root, word }
    }

    pub fn is_prefix_of(&self, other: &RootedWord) -> bool {
        self.root == other.root && self.word.is_prefix_of(&other.word)
    }
}

/// Formats `r2:ab`; the root is omitted when there is a single root.
pub fn format_rooted(alphabet: &Alphabet, roots: usize, w: &RootedWord) -> String {
    if roots == 1 {
        alphabet.format_word(&w.word)
    } else {
        format!("r{}:{}", w.root, alphabet.format_word(&w.word))
    }
}

pub fn parse_rooted(alphabet: &Alphabet, roots: usize, s: &str) -> Result<RootedWord> {
    let s = s.trim();
    let (root, word) = match s.strip_prefix('r').and_then(|rest| rest.split_once(':')) {
        Some((r, w)) => {
            let r: usize = r.parse().map_err(|_| Error::literal(s, "bad root index"))?;
            (r, w)
        }
        None if roots == 1 => (1, s),
        None => return Err(Error::literal(s, "rooted words are written r<i>:<word>")),
    };
    if root == 0 || root > roots {
        return Err(Error::RootOutOfRange { root, roots });
    }
    Ok(RootedWord::new(root, alphabet.parse_word(word)?))
}

/// Whether `code` is a maximal prefix code over every one of the `roots` roots.
pub fn is_rooted_maximal_prefix_code(
    alphabet: &Alphabet,
    roots: usize,
    code: &[RootedWord],
) -> Result<bool> {
    for w in code {
        if w.root == 0 || w.root > roots {
            return Err(Error::RootOutOfRange { root: w.root, roots });
        }
    }
    for root in 1..=roots {
        let sub: Vec<Word> = code.iter().filter(|w| w.root == root).map(|w| w.word.clone()).collect();
        if sub.is_empty() || !is_maximal_prefix_code(alphabet, &sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub type VertexId = usize;
pub type EdgeId = usize;

/// A finite directed graph with named vertices and edges. An edge
/// `e: src -> dst` has domain `d(e) = src` and range `r(e) = dst`.
#[derive(Clone, Debug, Default)]
pub struct DirectedGraph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    src: Vec<VertexId>,
    dst: Vec<VertexId>,
    in_edges: Vec<Vec<EdgeId>>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

impl DirectedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        check_name(name)?;
        if self.vertex_index.contains_key(name) {
            return Err(Error::GraphMismatch(format!("duplicate vertex `{name}`")));
        }
        let id = self.vertex_names.len();
        self.vertex_names.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        self.in_edges.push(Vec::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, name: &str, src: VertexId, dst: VertexId) -> Result<EdgeId> {
        check_name(name)?;
        if self.edge_index.contains_key(name) {
            return Err(Error::GraphMismatch(format!("duplicate edge `{name}`")));
        }
        if src >= self.vertex_count() || dst >= self.vertex_count() {
            return Err(Error::GraphMismatch(format!("edge `{name}` uses an unknown vertex")));
        }
        let id = self.edge_names.len();
        self.edge_names.push(name.to_string());
        self.edge_index.insert(name.to_string(), id);
        self.src.push(src);
        self.dst.push(dst);
        self.in_edges[dst].push(id);
        Ok(id)
    }

    /// Reads the line format `vertex <name>` / `edge <name> <src> <dst>`,
    /// with `#` starting a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut g = DirectedGraph::new();
        let mut pending = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["vertex", name] => {
                    g.add_vertex(name).map_err(|e| Error::parse(i + 1, e.to_string()))?;
                }
                ["edge", name, src, dst] => pending.push((i + 1, *name, *src, *dst)),
                _ => return Err(Error::parse(i + 1, format!("unrecognised line `{line}`"))),
            }
        }
        for (line, name, src, dst) in pending {
            let s = g.vertex_id(src).ok_or_else(|| Error::parse(line, format!("unknown vertex `{src}`")))?;
            let d = g.vertex_id(dst).ok_or_else(|| Error::parse(line, format!("unknown vertex `{dst}`")))?;
            g.add_edge(name, s, d).map_err(|e| Error::parse(line, e.to_string()))?;
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertex_names {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in 0..self.edge_count() {
            out.push_str(&format!(
                "edge {} {} {}\n",
                self.edge_names[e], self.vertex_names[self.src[e]], self.vertex_names[self.dst[e]]
            ));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e]
    }

    /// `d(e)`.
    pub fn edge_domain(&self, e: EdgeId) -> VertexId {
        self.src[e]
    }

    /// `r(e)`.
    pub fn edge_range(&self, e: EdgeId) -> VertexId {
        self.dst[e]
    }

    /// Edges `e` with `r(e) = v`.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_edges[v].len()
    }

    /// The vertex a path starts from, `d(p)`.
    pub fn path_domain(&self, p: &Path) -> VertexId {
        p.edges.last().map_or(p.anchor, |&e| self.src[e])
    }

    /// Checks that `p` is a well formed path of this graph.
    pub fn check_path(&self, p: &Path) -> Result<()> {
        if p.anchor >= self.vertex_count() {
            return Err(Error::GraphMismatch(format!("vertex {} does not exist", p.anchor)));
        }
        let mut at = p.anchor;
        for &e in &p.edges {
            if e >= self.edge_count() {
                return Err(Error::GraphMismatch(format!("edge {e} does not exist")));
            }
            if self.dst[e] != at {
                return Err(Error::InvalidPath(format!(
                    "edge `{}` does not end at `{}`",
                    self.edge_names[e], self.vertex_names[at]
                )));
            }
            at = self.src[e];
        }
        Ok(())
    }

    /// A path from its edges, read left to right as `e1 e2 ... ek` with
    /// `d(e_i) = r(e_{i+1})`.
    pub fn path(&self, edges: Vec<EdgeId>) -> Result<Path> {
        let first = *edges.first().ok_or_else(|| Error::InvalidPath("no edges".into()))?;
        if first >= self.edge_count() {
            return Err(Error::GraphMismatch(format!("edge {first} does not exist")));
        }
        let p = Path { anchor: self.dst[first], edges };
        self.check_path(&p)?;
        Ok(p)
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            format!("1@{}", self.vertex_names[p.anchor])
        } else {
            p.edges.iter().map(|&e| self.edge_names[e].as_str()).collect::<Vec<_>>().join(".")
        }
    }

    /// Parses `e1.e2.e3`, or `1@v` for the empty path at `v`.
    pub fn parse_path(&self, s: &str) -> Result<Path> {
        let s = s.trim();
        if let Some(v) = s.strip_prefix("1@") {
            let v = self.vertex_id(v).ok_or_else(|| Error::literal(s, "unknown vertex"))?;
            return Ok(Path::identity(v));
        }
        let edges = s
            .split('.')
            .map(|name| self.edge_id(name.trim()).ok_or_else(|| Error::literal(s, format!("unknown edge `{name}`"))))
            .collect::<Result<Vec<_>>>()?;
        self.path(edges)
    }
}

fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name.contains(['.', '/', '@', '#']) || name.chars().any(char::is_whitespace) {
        return Err(Error::GraphMismatch(format!("invalid name `{name}`")));
    }
    Ok(())
}

/// A path `e1 e2 ... ek` with `r(p) = anchor`. The empty path is the
/// identity at its anchor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub anchor: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn identity(v: VertexId) -> Self {
        Path { anchor: v, edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Prefix order: `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.anchor == other.anchor && other.edges.starts_with(&self.edges)
    }

    /// `self = prefix z`; the remainder is anchored at `d(prefix)`.
    pub fn strip_prefix(&self, graph: &DirectedGraph, prefix: &Path) -> Option<Path> {
        if !prefix.is_prefix_of(self) {
            return None;
        }
        Some(Path { anchor: graph.path_domain(prefix), edges: self.edges[prefix.len()..].to_vec() })
    }

    /// Concatenation without endpoint checks; callers guarantee `d(self) = r(z)`.
    pub(crate) fn concat_unchecked(&self, z: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&z.edges);
        Path { anchor: self.anchor, edges }
    }
}

/// `p q`, defined when `d(p) = r(q)`.
pub fn path_compose(graph: &DirectedGraph, p: &Path, q: &Path) -> Result<Option<Path>> {
    graph.check_path(p)?;
    graph.check_path(q)?;
    if graph.path_domain(p) != q.anchor {
        return Ok(None);
    }
    Ok(Some(p.concat_unchecked(q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Alphabet::new(3).unwrap().parse_word(s).unwrap()
    }

    #[test]
    fn prefix_compare_cases() {
        assert_eq!(prefix_compare(&w("ab"), &w("abba")), PrefixOrder::XPrefixOfY(w("ba")));
        assert_eq!(prefix_compare(&w("abba"), &w("ab")), PrefixOrder::YPrefixOfX(w("ba")));
        assert_eq!(prefix_compare(&w("ab"), &w("ba")), PrefixOrder::Incomparable);
        assert_eq!(prefix_compare(&w("1"), &w("1")), PrefixOrder::Equal);
        assert_eq!(word_meet(&w("a"), &w("ab")), Some(w("ab")));
        assert_eq!(word_meet(&w("a"), &w("b")), None);
    }

    #[test]
    fn maximal_prefix_code_examples() {
        let a2 = Alphabet::new(2).unwrap();
        let code = a2.parse_code("a,ba,bb").unwrap();
        assert!(is_maximal_prefix_code(&a2, &code).unwrap());
        assert_eq!(kraft_sum(&a2, &code).unwrap(), BigRational::one());
        let code = a2.parse_code("a,ba").unwrap();
        assert!(!is_maximal_prefix_code(&a2, &code).unwrap());
        assert_eq!(kraft_sum(&a2, &code).unwrap(), BigRational::new(3.into(), 4.into()));
        assert!(is_maximal_prefix_code(&a2, &[Word::empty()]).unwrap());
        assert_eq!(is_maximal_prefix_code(&a2, &[]), Err(Error::EmptyCode));
        let not_code = a2.parse_code("a,ab,b").unwrap();
        assert!(!is_maximal_prefix_code(&a2, &not_code).unwrap());
        assert!(matches!(kraft_sum(&a2, &not_code), Err(Error::NotPrefixCode(..))));
    }

    #[test]
    fn word_literals_round_trip() {
        let big = Alphabet::new(30).unwrap();
        let word = Word::from_letters(vec![0, 29, 3]);
        assert_eq!(big.format_word(&word), "a0a29a3");
        assert_eq!(big.parse_word("a0a29a3").unwrap(), word);
        assert!(big.parse_word("a30").is_err());
        let small = Alphabet::new(2).unwrap();
        assert!(small.parse_word("abc").is_err());
        assert_eq!(small.format_word(&Word::empty()), "1");
    }

    #[test]
    fn rooted_codes() {
        let a = Alphabet::new(2).unwrap();
        let code: Vec<RootedWord> = ["r1:a", "r1:b", "r2:1"].iter().map(|s| parse_rooted(&a, 2, s).unwrap()).collect();
        assert!(is_rooted_maximal_prefix_code(&a, 2, &code).unwrap());
        assert!(!is_rooted_maximal_prefix_code(&a, 2, &code[..2]).unwrap());
        assert_eq!(format_rooted(&a, 2, &code[2]), "r2:1");
        assert!(parse_rooted(&a, 2, "r3:a").is_err());
    }

    #[test]
    fn graph_file_and_paths() {
        let g = DirectedGraph::parse(
            "# two loops\nvertex p\nvertex q\nedge x q p\nedge y q p\nedge z q q  # loop\n",
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.in_degree(g.vertex_id("p").unwrap()), 2);
        let xz = g.parse_path("x.z").unwrap();
        assert_eq!(g.path_domain(&xz), g.vertex_id("q").unwrap());
        assert!(g.parse_path("z.x").is_err());
        let x = g.parse_path("x").unwrap();
        let z = g.parse_path("z").unwrap();
        assert_eq!(path_compose(&g, &x, &z).unwrap(), Some(xz.clone()));
        assert_eq!(path_compose(&g, &z, &x).unwrap(), None);
        assert_eq!(g.format_path(&Path::identity(0)), "1@p");
        assert_eq!(DirectedGraph::parse(&g.to_text()).unwrap().to_text(), g.to_text());
        assert!(DirectedGraph::parse("vertex p\nedge x p r\n").is_err());
        let foreign = Path { anchor: 7, edges: vec![] };
        assert!(matches!(path_compose(&g, &foreign, &x), Err(Error::GraphMismatch(_))));
    }

    fn arb_code() -> impl Strategy<Value = (usize, Vec<Word>)> {
        (2usize..=3).prop_flat_map(|n| {
            let word = proptest::collection::vec(0..n as Letter, 0..=5).prop_map(Word::from_letters);
            (Just(n), proptest::collection::vec(word, 1..8))
        })
    }

    fn prefix_free(code: &[Word]) -> Vec<Word> {
        let mut out: Vec<Word> = Vec::new();
        for w in code {
            if out.iter().all(|u| !u.is_prefix_of(w) && !w.is_prefix_of(u)) {
                out.push(w.clone());
            }
        }
        out
    }

    proptest! {
        #[test]
        fn meet_is_commutative_and_below_both(x in proptest::collection::vec(0u16..2, 0..6), y in proptest::collection::vec(0u16..2, 0..6)) {
            let (x, y) = (Word::from(x), Word::from(y));
            prop_assert_eq!(word_meet(&x, &y), word_meet(&y, &x));
            if let Some(m) = word_meet(&x, &y) {
                prop_assert!(x.is_prefix_of(&m) && y.is_prefix_of(&m));
            }
        }

        #[test]
        fn depth_criterion_matches_every_long_word((n, raw) in arb_code()) {
            let alphabet = Alphabet::new(n).unwrap();
            let code = prefix_free(&raw);
            let depth = code.iter().map(Word::len).max().unwrap_or(0);
            let exhaustive = (depth..=depth + 3).all(|len| {
                alphabet.words_of_length(len).iter().all(|u| code.iter().any(|c| c.is_prefix_of(u)))
            });
            prop_assert_eq!(is_maximal_prefix_code(&alphabet, &code).unwrap(), exhaustive);
        }

        #[test]
        fn kraft_sum_is_one_on_maximal_codes((n, raw) in arb_code()) {
            let alphabet = Alphabet::new(n).unwrap();
            let code = prefix_free(&raw);
            let maximal = is_maximal_prefix_code(&alphabet, &code).unwrap();
            let k = kraft_sum(&alphabet, &code).unwrap();
            prop_assert!(k <= BigRational::one());
            prop_assert_eq!(maximal, k == BigRational::one());
        }
    }
}
