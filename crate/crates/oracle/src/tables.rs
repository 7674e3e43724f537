//! Finite tables: semilattice enumeration, isomorphism search and a direct
//! enumeration of cover-to-join maps.

use std::collections::BTreeSet;

use stonedual::finitesgp::{meet_semilattice, MulTable};

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Every meet-semilattice with zero having at most `max_size` elements, one
/// per isomorphism class, ordered by size.
pub fn meet_semilattices(max_size: usize) -> Vec<MulTable> {
    let mut out = Vec::new();
    for size in 1..=max_size {
        let k = size - 1;
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let perms = permutations(k);
        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            // lt[i][j]: i < j among the nonzero elements; indices respect it.
            let mut lt = vec![vec![false; k]; k];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                lt[i][j] = mask >> b & 1 == 1;
            }
            let transitive = (0..k).all(|i| {
                (0..k).all(|j| (0..k).all(|l| !(lt[i][j] && lt[j][l]) || lt[i][l]))
            });
            if !transitive {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut m = vec![false; k * k];
                    for i in 0..k {
                        for j in 0..k {
                            m[p[i] * k + p[j]] = lt[i][j];
                        }
                    }
                    m
                })
                .min()
                .unwrap_or_default();
            if !seen.insert(canon) {
                continue;
            }
            let leq = |a: usize, b: usize| a == 0 || a == b || (a > 0 && b > 0 && lt[a - 1][b - 1]);
            if let Ok(t) = meet_semilattice(size, leq) {
                out.push(t);
            }
        }
    }
    out
}

/// An isomorphism `s -> t` by backtracking, if one exists.
pub fn find_isomorphism(s: &MulTable, t: &MulTable) -> Option<Vec<usize>> {
    if s.size() != t.size() {
        return None;
    }
    let m = s.size();
    let mut theta = vec![usize::MAX; m];
    let mut used = vec![false; m];
    fn ok(s: &MulTable, t: &MulTable, theta: &[usize], a: usize) -> bool {
        (0..=a).all(|b| {
            [(a, b), (b, a)].iter().all(|&(x, y)| {
                let p = s.mul(x, y);
                theta[p] == usize::MAX || t.mul(theta[x], theta[y]) == theta[p]
            })
        }) && (0..a).all(|x| (0..a).all(|y| {
            let p = s.mul(x, y);
            p != a || t.mul(theta[x], theta[y]) == theta[a]
        }))
    }
    fn go(s: &MulTable, t: &MulTable, a: usize, theta: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if a == s.size() {
            return true;
        }
        for v in 0..t.size() {
            if used[v] || s.is_idempotent(a) != t.is_idempotent(v) {
                continue;
            }
            theta[a] = v;
            used[v] = true;
            if ok(s, t, theta, a) && go(s, t, a + 1, theta, used) {
                return true;
            }
            used[v] = false;
            theta[a] = usize::MAX;
        }
        false
    }
    go(s, t, 0, &mut theta, &mut used).then_some(theta)
}

fn inverse_of(s: &MulTable, a: usize) -> usize {
    s.elements()
        .find(|&b| s.mul(s.mul(a, b), a) == a && s.mul(s.mul(b, a), b) == b)
        .expect("inverse semigroup")
}

/// `a <= b` read straight from the table: `a = b a⁻¹ a`.
pub fn below(s: &MulTable, a: usize, b: usize) -> bool {
    s.mul(s.mul(b, inverse_of(s, a)), a) == a
}

fn meets(s: &MulTable, a: usize, b: usize) -> bool {
    s.nonzero().any(|z| below(s, z, a) && below(s, z, b))
}

/// Least upper bound in the natural order, if any.
fn join(t: &MulTable, set: &[usize]) -> Option<usize> {
    let ubs: Vec<usize> = t.elements().filter(|&u| set.iter().all(|&x| below(t, x, u))).collect();
    ubs.iter().copied().find(|&u| ubs.iter().all(|&v| below(t, u, v)))
}

/// Every map `θ: S -> T` that is a homomorphism sending zero to zero and
/// satisfies `θ(a) = ∨θ(A)` for every element `a` and every cover `A` of
/// `a`, found by exhaustive search. Only for small tables.
pub fn cover_to_join_maps(s: &MulTable, t: &MulTable) -> Vec<Vec<usize>> {
    let m = s.size();
    let mut covers: Vec<(usize, Vec<usize>)> = Vec::new();
    for a in s.nonzero() {
        let down: Vec<usize> = s.nonzero().filter(|&x| below(s, x, a)).collect();
        assert!(down.len() <= 16, "too many elements below one element");
        for mask in 1u32..1 << down.len() {
            let set: Vec<usize> = (0..down.len()).filter(|i| mask >> i & 1 == 1).map(|i| down[i]).collect();
            if down.iter().all(|&x| set.iter().any(|&y| meets(s, x, y))) {
                covers.push((a, set));
            }
        }
    }
    let mut out = Vec::new();
    let mut theta = vec![usize::MAX; m];
    fn go(
        s: &MulTable,
        t: &MulTable,
        a: usize,
        theta: &mut Vec<usize>,
        covers: &[(usize, Vec<usize>)],
        out: &mut Vec<Vec<usize>>,
    ) {
        if a == s.size() {
            if covers.iter().all(|(x, set)| {
                let imgs: Vec<usize> = set.iter().map(|&y| theta[y]).collect();
                join(t, &imgs) == Some(theta[*x])
            }) {
                out.push(theta.clone());
            }
            return;
        }
        let choices: Vec<usize> = if a == s.zero() { vec![t.zero()] } else { t.elements().collect() };
        for v in choices {
            theta[a] = v;
            let consistent = (0..=a).all(|x| {
                (0..=a).all(|y| {
                    let p = s.mul(x, y);
                    p > a || t.mul(theta[x], theta[y]) == theta[p]
                })
            });
            if consistent {
                go(s, t, a + 1, theta, covers, out);
            }
        }
        theta[a] = usize::MAX;
    }
    go(s, t, 0, &mut theta, &covers, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use stonedual::finitesgp::{chain_semilattice, symmetric_inverse_monoid};

    #[test]
    fn semilattice_counts_match_lattice_counts() {
        // Adjoining a top is a bijection onto lattices with one more
        // element, counted 1, 1, 2, 5, 15, 53 for sizes 2 to 7.
        let counts: Vec<usize> =
            (1..=6).map(|k| meet_semilattices(k).iter().filter(|t| t.size() == k).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn isomorphism_search() {
        let i2 = symmetric_inverse_monoid(2).unwrap();
        assert!(find_isomorphism(&i2, &i2).is_some());
        assert!(find_isomorphism(&chain_semilattice(3), &i2).is_none());
    }

    #[test]
    fn brute_force_cover_to_join_count() {
        let (e2, _) = symmetric_inverse_monoid(2).unwrap().idempotent_semilattice();
        let i3 = symmetric_inverse_monoid(3).unwrap();
        let maps = cover_to_join_maps(&e2, &i3);
        assert_eq!(maps.len(), 27);
        let mut lib = stonedual::filtercomp::cover_to_join_maps(&e2, &i3).unwrap();
        let mut brute = maps;
        lib.sort();
        brute.sort();
        assert_eq!(lib, brute);
    }
}
