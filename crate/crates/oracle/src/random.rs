//! Random instances for property checks and self-tests.

use rand::seq::SliceRandom;
use rand::Rng;

use stonedual::graphisg::{GraphISGElement, PathPair};
use stonedual::polycyclic::{ExtSubst, PolyElement, Subst};
use stonedual::thompson::{tp_to_unit, CuntzElement, Params, TreePair};
use stonedual::words::{DirectedGraph, Path, RootedWord, Word};

pub fn word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| rng.gen_range(0..n as u16)).collect())
}

/// A nonzero element of `P_n` with words of at most `max_len` letters.
pub fn subst<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Subst {
    Subst::new(word(rng, n, max_len), word(rng, n, max_len))
}

/// An element of `P_n`, zero about one time in twenty.
pub fn poly<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> PolyElement {
    if rng.gen_ratio(1, 20) {
        PolyElement::Zero
    } else {
        PolyElement::NonZero(subst(rng, n, max_len))
    }
}

pub fn ext<R: Rng>(rng: &mut R, n: usize, r: usize, max_len: usize) -> ExtSubst {
    ExtSubst::new(rng.gen_range(1..=r), subst(rng, n, max_len), rng.gen_range(1..=r))
}

/// A graph with `1..=max_vertices` vertices and `0..=max_edges` edges,
/// loops and parallel edges allowed.
pub fn graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> DirectedGraph {
    let mut g = DirectedGraph::new();
    let nv = rng.gen_range(1..=max_vertices);
    for v in 0..nv {
        g.add_vertex(&format!("v{v}")).unwrap();
    }
    for e in 0..rng.gen_range(0..=max_edges) {
        g.add_edge(&format!("e{e}"), rng.gen_range(0..nv), rng.gen_range(0..nv)).unwrap();
    }
    g
}

/// A random path with domain `start`, built from its last edge backwards.
pub fn path_from<R: Rng>(rng: &mut R, g: &DirectedGraph, start: usize, max_len: usize) -> Path {
    let mut rev = Vec::new();
    let mut at = start;
    for _ in 0..rng.gen_range(0..=max_len) {
        let out: Vec<usize> = (0..g.edge_count()).filter(|&e| g.edge_domain(e) == at).collect();
        let Some(&e) = out.choose(rng) else { break };
        rev.push(e);
        at = g.edge_range(e);
    }
    rev.reverse();
    Path { anchor: at, edges: rev }
}

pub fn gisg<R: Rng>(rng: &mut R, g: &DirectedGraph, max_len: usize) -> GraphISGElement {
    if rng.gen_ratio(1, 20) {
        return GraphISGElement::Zero;
    }
    let w = rng.gen_range(0..g.vertex_count());
    GraphISGElement::NonZero(PathPair { range: path_from(rng, g, w, max_len), domain: path_from(rng, g, w, max_len) })
}

/// A maximal prefix code grown by splitting leaves, no deeper than
/// `max_len`.
pub fn maximal_code<R: Rng>(rng: &mut R, n: usize, max_len: usize, splits: usize) -> Vec<Word> {
    let mut code = vec![Word::empty()];
    for _ in 0..splits {
        let open: Vec<usize> = (0..code.len()).filter(|&i| code[i].len() < max_len).collect();
        let Some(&i) = open.choose(rng) else { break };
        let w = code.swap_remove(i);
        code.extend((0..n as u16).map(|l| w.with(l)));
    }
    code.sort();
    code
}

/// A prefix code that is maximal about half the time; otherwise some leaves
/// of a maximal code are dropped.
pub fn prefix_code<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Vec<Word> {
    let splits = rng.gen_range(1..=2 * max_len + 2);
    let mut code = maximal_code(rng, n, max_len, splits);
    if rng.gen_bool(0.5) && code.len() > 1 {
        let keep = rng.gen_range(1..code.len());
        code.shuffle(rng);
        code.truncate(keep);
        code.sort();
    }
    code
}

fn rooted_code<R: Rng>(rng: &mut R, params: Params, expansions: usize) -> Vec<RootedWord> {
    let mut code: Vec<RootedWord> = (1..=params.r).map(|i| RootedWord::new(i, Word::empty())).collect();
    for _ in 0..expansions {
        let i = rng.gen_range(0..code.len());
        let w = code.swap_remove(i);
        code.extend((0..params.n as u16).map(|l| RootedWord::new(w.root, w.word.with(l))));
    }
    code
}

/// A tree pair with at most `max_leaves` leaves.
pub fn tree_pair<R: Rng>(rng: &mut R, params: Params, max_leaves: usize) -> TreePair {
    let most = max_leaves.saturating_sub(params.r) / (params.n - 1);
    let m = rng.gen_range(0..=most);
    let dom = rooted_code(rng, params, m);
    let mut ran = rooted_code(rng, params, m);
    ran.shuffle(rng);
    TreePair::from_pairs(params, dom.into_iter().zip(ran).collect()).expect("generated codes are maximal")
}

pub fn unit<R: Rng>(rng: &mut R, params: Params, max_leaves: usize) -> CuntzElement {
    tp_to_unit(&tree_pair(rng, params, max_leaves)).expect("tree pairs give units")
}

/// An unnormalized, pairwise compatible part list: the parts of a random
/// tree pair, some split into their children, some duplicated by a
/// restriction, and a random subset dropped.
pub fn compatible_parts<R: Rng>(rng: &mut R, params: Params, max_leaves: usize) -> CuntzElement {
    let g = tree_pair(rng, params, max_leaves);
    let mut parts = Vec::new();
    for (d, r) in g.pairs() {
        let base = ExtSubst::new(r.root, Subst::new(r.word, d.word), d.root);
        if rng.gen_ratio(1, 4) {
            for l in 0..params.n as u16 {
                parts.push(extend(&base, &[l]));
            }
        } else {
            parts.push(base.clone());
        }
        if rng.gen_ratio(1, 4) {
            let tail: Vec<u16> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..params.n as u16)).collect();
            parts.push(extend(&base, &tail));
        }
    }
    if rng.gen_ratio(1, 3) {
        let keep = rng.gen_range(0..=parts.len());
        parts.shuffle(rng);
        parts.truncate(keep);
    }
    parts.shuffle(rng);
    CuntzElement { params, parts }
}

fn extend(s: &ExtSubst, tail: &[u16]) -> ExtSubst {
    let t = Word::from_letters(tail.to_vec());
    ExtSubst::new(s.range_root, Subst::new(s.subst.range.concat(&t), s.subst.domain.concat(&t)), s.domain_root)
}
