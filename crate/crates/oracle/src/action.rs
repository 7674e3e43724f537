//! Elements as partial maps on words and paths.
//!
//! A nonzero element of `P_n` or `P_G` is recovered from its partial map as
//! the shortest point of the domain together with its image. Products are
//! computed by composing the maps pointwise and then recovering.

use stonedual::graphisg::{GraphISGElement, PathPair};
use stonedual::polycyclic::{PolyElement, Subst};
use stonedual::thompson::TreePair;
use stonedual::words::{DirectedGraph, Letter, Path, RootedWord, Word};

/// `x w ↦ y w` on raw letter slices.
pub fn prefix_replace(y: &[u16], x: &[u16], w: &[u16]) -> Option<Vec<u16>> {
    if w.len() < x.len() || &w[..x.len()] != x {
        return None;
    }
    let mut out = y.to_vec();
    out.extend_from_slice(&w[x.len()..]);
    Some(out)
}

/// All words over `n` letters of length at most `len`, shortest first.
pub fn all_words(n: usize, len: usize) -> Vec<Vec<u16>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..n as u16 {
                let mut v: Vec<u16> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn apply(s: &PolyElement, w: &[u16]) -> Option<Vec<u16>> {
    let t = s.as_subst()?;
    prefix_replace(t.range.letters(), t.domain.letters(), w)
}

/// Recovers an element of `P_n` from a partial map given on all words of
/// length at most `len`, checking that the map really is a single prefix
/// replacement there.
pub fn poly_from_map(n: usize, len: usize, map: impl Fn(&[u16]) -> Option<Vec<u16>>) -> Result<PolyElement, String> {
    let words = all_words(n, len);
    let Some(x) = words.iter().find(|w| map(w).is_some()) else {
        return Ok(PolyElement::Zero);
    };
    let y = map(x).unwrap();
    for w in &words {
        if map(w) != prefix_replace(&y, x, w) {
            return Err(format!("map is not the prefix replacement {x:?} -> {y:?} at {w:?}"));
        }
    }
    Ok(PolyElement::NonZero(Subst::new(Word::from_letters(y), Word::from_letters(x.clone()))))
}

fn poly_depth(s: &PolyElement) -> usize {
    s.as_subst().map_or(0, |t| t.domain.len())
}

/// `s t` by composing partial maps. The shortest point of the composite's
/// domain has at most `|x_s| + |x_t|` letters; one more letter checks the
/// shape of the map beyond it.
pub fn poly_product(n: usize, s: &PolyElement, t: &PolyElement) -> Result<PolyElement, String> {
    let len = poly_depth(s) + poly_depth(t) + 1;
    poly_from_map(n, len, |w| apply(t, w).and_then(|v| apply(s, &v)))
}

/// All paths of the graph with at most `len` edges.
pub fn all_paths(graph: &DirectedGraph, len: usize) -> Vec<Path> {
    let mut layer: Vec<Path> = (0..graph.vertex_count()).map(Path::identity).collect();
    let mut out = layer.clone();
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &layer {
            let end = match p.edges.last() {
                Some(&e) => graph.edge_domain(e),
                None => p.anchor,
            };
            for &e in graph.in_edges(end) {
                let mut q = p.clone();
                q.edges.push(e);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn path_replace(s: &GraphISGElement, p: &Path) -> Option<Path> {
    let pair = s.as_pair()?;
    let (u, v) = (&pair.range, &pair.domain);
    if p.anchor != v.anchor || !p.edges.starts_with(&v.edges) {
        return None;
    }
    let mut edges = u.edges.clone();
    edges.extend_from_slice(&p.edges[v.edges.len()..]);
    Some(Path { anchor: u.anchor, edges })
}

fn gisg_depth(s: &GraphISGElement) -> usize {
    s.as_pair().map_or(0, |p| p.domain.len())
}

/// `s t` in `P_G` by composing partial maps on paths.
pub fn gisg_product(graph: &DirectedGraph, s: &GraphISGElement, t: &GraphISGElement) -> Result<GraphISGElement, String> {
    let len = gisg_depth(s) + gisg_depth(t) + 1;
    let paths = all_paths(graph, len);
    let map = |p: &Path| path_replace(t, p).and_then(|q| path_replace(s, &q));
    let Some(v) = paths.iter().find(|p| map(p).is_some()) else {
        return Ok(GraphISGElement::Zero);
    };
    let u = map(v).unwrap();
    let candidate = GraphISGElement::NonZero(PathPair { range: u, domain: v.clone() });
    for p in &paths {
        if map(p) != path_replace(&candidate, p) {
            return Err(format!("composite is not a single path replacement at {p:?}"));
        }
    }
    Ok(candidate)
}

/// Image of a rooted word under a tree pair, found by scanning the leaves.
pub fn tree_pair_image(g: &TreePair, w: &RootedWord) -> Option<RootedWord> {
    for (i, d) in g.domain.iter().enumerate() {
        if d.root == w.root {
            if let Some(rest) = prefix_replace(&[], d.word.letters(), w.word.letters()) {
                let r = &g.range[g.perm[i]];
                let mut out = r.word.letters().to_vec();
                out.extend(rest);
                return Some(RootedWord::new(r.root, Word::from_letters(out)));
            }
        }
    }
    None
}

/// Whether the leaves form a complete prefix code under every root: no
/// leaf is a prefix of another and the Kraft sums are all one.
pub fn is_complete_code(n: usize, r: usize, code: &[RootedWord]) -> bool {
    let deepest = code.iter().map(|w| w.word.len()).max().unwrap_or(0) as u32;
    if (n as u128).checked_pow(deepest).is_none() {
        return false;
    }
    let prefix_free = code.iter().enumerate().all(|(i, a)| {
        code.iter().enumerate().all(|(j, b)| i == j || !(a.root == b.root && b.word.letters().starts_with(a.word.letters())))
    });
    prefix_free
        && (1..=r).all(|root| {
            let total: u128 = code
                .iter()
                .filter(|w| w.root == root)
                .map(|w| (n as u128).pow(deepest - w.word.len() as u32))
                .sum();
            total == (n as u128).pow(deepest)
        })
}

/// Whether `product` is `g ∘ h` as a map on infinite words. Each cone of
/// `product`'s domain is split until `h` and then `g` act on it by a single
/// prefix replacement, and the composite is compared there.
pub fn tree_pair_product_agrees(g: &TreePair, h: &TreePair, product: &TreePair) -> bool {
    let (n, r) = (g.params.n, g.params.r);
    is_complete_code(n, r, &product.domain)
        && is_complete_code(n, r, &product.range)
        && product.pairs().iter().all(|(d, image)| cone_agrees(g, h, n, d.clone(), image.clone()))
}

fn cone_agrees(g: &TreePair, h: &TreePair, n: usize, w: RootedWord, target: RootedWord) -> bool {
    if let Some(img) = tree_pair_image(h, &w).and_then(|v| tree_pair_image(g, &v)) {
        return img == target;
    }
    (0..n).all(|a| {
        let extend = |x: &RootedWord| {
            let mut letters = x.word.letters().to_vec();
            letters.push(a as Letter);
            RootedWord::new(x.root, Word::from_letters(letters))
        };
        cone_agrees(g, h, n, extend(&w), extend(&target))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use stonedual::polycyclic::Polycyclic;

    #[test]
    fn inverse_letter_times_letter_is_one() {
        let p = Polycyclic::new(2).unwrap();
        let got = poly_product(2, &p.parse("a^-1").unwrap(), &p.parse("a").unwrap()).unwrap();
        assert_eq!(got, PolyElement::one());
        let got = poly_product(2, &p.parse("a^-1").unwrap(), &p.parse("b").unwrap()).unwrap();
        assert_eq!(got, PolyElement::Zero);
    }

    #[test]
    fn word_counts() {
        assert_eq!(all_words(2, 3).len(), 15);
        assert_eq!(all_words(3, 2).len(), 13);
    }

    #[test]
    fn product_leaves_may_merge_leaves_of_the_factors() {
        use stonedual::thompson::{Params, TreePair};
        let params = Params::new(2, 1).unwrap();
        let g = TreePair::parse(params, "{aa,ab,b}->{aa,ab,b}:perm=[0,1,2]").unwrap();
        let id = TreePair::identity(params);
        assert!(tree_pair_product_agrees(&g, &id, &id));
        let swap = TreePair::parse(params, "{a,b}->{a,b}:perm=[1,0]").unwrap();
        assert!(!tree_pair_product_agrees(&g, &id, &swap));
    }
}
