use std::collections::HashMap;

use super::MulTable;
use crate::error::{Error, Result};

/// A partial injection of `{0, ..., k-1}`; `images[x]` is the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialInjection {
    pub images: Vec<Option<u8>>,
}

impl PartialInjection {
    pub fn rank(&self) -> usize {
        self.images.iter().flatten().count()
    }

    /// `f g`, applying `g` first.
    pub fn compose(&self, g: &PartialInjection) -> PartialInjection {
        PartialInjection { images: g.images.iter().map(|x| x.and_then(|y| self.images[y as usize])).collect() }
    }

    /// Written as the list of images, 1-based, with `-` for undefined.
    pub fn label(&self) -> String {
        let parts: Vec<String> =
            self.images.iter().map(|x| x.map_or("-".to_string(), |y| (y + 1).to_string())).collect();
        format!("[{}]", parts.join(","))
    }

    fn all(k: usize) -> Vec<PartialInjection> {
        fn go(k: usize, x: usize, used: &mut Vec<bool>, cur: &mut Vec<Option<u8>>, out: &mut Vec<PartialInjection>) {
            if x == k {
                out.push(PartialInjection { images: cur.clone() });
                return;
            }
            cur.push(None);
            go(k, x + 1, used, cur, out);
            cur.pop();
            for y in 0..k {
                if !used[y] {
                    used[y] = true;
                    cur.push(Some(y as u8));
                    go(k, x + 1, used, cur, out);
                    cur.pop();
                    used[y] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(k, 0, &mut vec![false; k], &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.cmp(b)));
        out
    }
}

/// The symmetric inverse monoid `I(k)` of all partial bijections of a
/// `k`-element set, ordered by rank. Index 0 is the empty map.
pub fn symmetric_inverse_monoid(k: usize) -> Result<MulTable> {
    if !(1..=5).contains(&k) {
        return Err(Error::Precondition(format!("I(k) is available for 1 <= k <= 5, got {k}")));
    }
    let maps = PartialInjection::all(k);
    let index: HashMap<&PartialInjection, usize> = maps.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let identity = maps.iter().position(|f| f.rank() == k);
    let names = maps.iter().map(PartialInjection::label).collect();
    MulTable::from_fn(maps.len(), 0, identity, Some(names), |a, b| index[&maps[a].compose(&maps[b])])
}

/// The partial injection represented by element `a` of `I(k)`.
pub fn symmetric_element(k: usize, a: usize) -> Option<PartialInjection> {
    PartialInjection::all(k).into_iter().nth(a)
}

/// `S ⊔ T` with the two zeros identified and mixed products zero.
pub fn zero_direct_union(s: &MulTable, t: &MulTable) -> Result<MulTable> {
    let m = s.size() + t.size() - 1;
    let t_nonzero: Vec<usize> = t.nonzero().collect();
    let mut from_t = vec![s.zero(); t.size()];
    for (i, &x) in t_nonzero.iter().enumerate() {
        from_t[x] = s.size() + i;
    }
    let to_t = |a: usize| t_nonzero[a - s.size()];
    let names = (0..m)
        .map(|a| if a < s.size() { format!("L{}", s.name(a)) } else { format!("R{}", t.name(to_t(a))) })
        .collect();
    MulTable::from_fn(m, s.zero(), None, Some(names), |a, b| match (a < s.size(), b < s.size()) {
        (true, true) => s.mul(a, b),
        (false, false) => from_t[t.mul(to_t(a), to_t(b))],
        _ => s.zero(),
    })
}

/// The plain direct product `S × T`, with zero `(0, 0)`.
pub fn direct_product(s: &MulTable, t: &MulTable) -> Result<MulTable> {
    let n = t.size();
    let m = s.size() * n;
    let identity = s.identity().zip(t.identity()).map(|(a, b)| a * n + b);
    let names = (0..m).map(|x| format!("({},{})", s.name(x / n), t.name(x % n))).collect();
    MulTable::from_fn(m, s.zero() * n + t.zero(), identity, Some(names), |x, y| {
        s.mul(x / n, y / n) * n + t.mul(x % n, y % n)
    })
}

/// The Rees matrix semigroup `B_r(M)`: triples `(i, m, j)` with `m` nonzero,
/// multiplied by `(i,m,j)(k,n,l) = (i,mn,l)` when `j = k` and `mn != 0`.
pub fn rees_b_r(m: &MulTable, r: usize) -> Result<MulTable> {
    if r == 0 {
        return Err(Error::NoRoots(0));
    }
    let nonzero: Vec<usize> = m.nonzero().collect();
    let pos: HashMap<usize, usize> = nonzero.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let k = nonzero.len();
    let size = 1 + r * k * r;
    let encode = |i: usize, x: usize, j: usize| 1 + (i * k + pos[&x]) * r + j;
    let decode = |a: usize| {
        let a = a - 1;
        (a / (k * r), nonzero[(a / r) % k], a % r)
    };
    let identity = if r == 1 { m.identity().map(|e| encode(0, e, 0)) } else { None };
    let mut names = vec!["0".to_string()];
    for a in 1..size {
        let (i, x, j) = decode(a);
        names.push(format!("({},{},{})", i + 1, m.name(x), j + 1));
    }
    MulTable::from_fn(size, 0, identity, Some(names), |a, b| {
        if a == 0 || b == 0 {
            return 0;
        }
        let (i, x, j) = decode(a);
        let (k2, y, l) = decode(b);
        let p = m.mul(x, y);
        if j != k2 || p == m.zero() {
            0
        } else {
            encode(i, p, l)
        }
    })
}

/// The chain `0 < e1 < ... < e(k-1)` as a semilattice.
pub fn chain_semilattice(k: usize) -> MulTable {
    assert!(k >= 1, "a chain needs at least its zero");
    let names = (0..k).map(|i| if i == 0 { "0".to_string() } else { format!("e{i}") }).collect();
    MulTable::from_fn(k, 0, Some(k - 1), Some(names), |a, b| a.min(b)).expect("chains are semilattices")
}

/// The meet semilattice of a finite partial order with a least element.
pub fn meet_semilattice(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<MulTable> {
    let leq = &leq;
    let lower = move |a: usize, b: usize| (0..size).filter(move |&x| leq(x, a) && leq(x, b));
    let mut meet = vec![0usize; size * size];
    for a in 0..size {
        for b in 0..size {
            let best = lower(a, b)
                .find(|&g| lower(a, b).all(|x| leq(x, g)))
                .ok_or_else(|| Error::Precondition(format!("{a} and {b} have no meet")))?;
            meet[a * size + b] = best;
        }
    }
    let zero = (0..size)
        .find(|&z| (0..size).all(|x| leq(z, x)))
        .ok_or_else(|| Error::Precondition("no least element".into()))?;
    let top = (0..size).find(|&t| (0..size).all(|x| leq(x, t)));
    MulTable::from_fn_checked(size, zero, top, None, |a, b| meet[a * size + b])
}

/// The cyclic group of order `n` with a zero adjoined. Index 0 is zero and
/// index 1 the identity.
pub fn cyclic_group_with_zero(n: usize) -> Result<MulTable> {
    if n == 0 {
        return Err(Error::Precondition("group order must be positive".into()));
    }
    let names = (0..=n).map(|i| if i == 0 { "0".to_string() } else { format!("g{}", i - 1) }).collect();
    MulTable::from_fn(n + 1, 0, Some(1), Some(names), |a, b| {
        if a == 0 || b == 0 {
            0
        } else {
            1 + (a - 1 + b - 1) % n
        }
    })
}

#[cfg(test)]
mod tests {
    use super::super::RawTable;
    use super::*;

    fn revalidate(t: &MulTable) {
        let rows = t.elements().map(|a| t.elements().map(|b| t.mul(a, b)).collect()).collect();
        RawTable { size: t.size(), zero: t.zero(), identity: t.identity(), rows, names: None }
            .validate()
            .unwrap();
    }

    #[test]
    fn symmetric_inverse_monoid_sizes() {
        let sizes: Vec<usize> = (1..=4).map(|k| symmetric_inverse_monoid(k).unwrap().size()).collect();
        assert_eq!(sizes, vec![2, 7, 34, 209]);
        assert!(symmetric_inverse_monoid(0).is_err());
        assert!(symmetric_inverse_monoid(6).is_err());
        for k in 1..=3 {
            revalidate(&symmetric_inverse_monoid(k).unwrap());
        }
    }

    #[test]
    #[ignore = "builds the 1546-element table"]
    fn i5_has_1546_elements() {
        assert_eq!(symmetric_inverse_monoid(5).unwrap().size(), 1546);
    }

    #[test]
    fn product_and_union_sizes() {
        let i1 = symmetric_inverse_monoid(1).unwrap();
        let i2 = symmetric_inverse_monoid(2).unwrap();
        let prod = direct_product(&i2, &i2).unwrap();
        assert_eq!(prod.size(), 49);
        assert!(prod.identity().is_some());
        let union = zero_direct_union(&i2, &i1).unwrap();
        assert_eq!(union.size(), 8);
        assert_eq!(union.identity(), None);
        let b2 = rees_b_r(&i1, 2).unwrap();
        assert_eq!(b2.size(), 5);
        assert_eq!(rees_b_r(&i2, 1).unwrap().size(), 7);
        for t in [prod, union, b2, rees_b_r(&cyclic_group_with_zero(2).unwrap(), 2).unwrap()] {
            revalidate(&t);
        }
    }

    #[test]
    fn b1_of_m_is_m() {
        let i2 = symmetric_inverse_monoid(2).unwrap();
        let b1 = rees_b_r(&i2, 1).unwrap();
        let theta: Vec<usize> = i2.elements().map(|x| if x == 0 { 0 } else { x }).collect();
        assert!(super::super::is_isomorphism(&i2, &b1, &theta));
    }

    #[test]
    fn semilattice_from_order() {
        // The diamond 0 < e, f < 1.
        let above = [vec![0, 1, 2, 3], vec![1, 3], vec![2, 3], vec![3]];
        let d = meet_semilattice(4, |a, b| above[a].contains(&b)).unwrap();
        assert_eq!(d.mul(1, 2), 0);
        assert_eq!(d.identity(), Some(3));
        // Two incomparable maximal elements over a common pair has no meet.
        let above = [vec![0, 1, 2, 3, 4], vec![1, 3, 4], vec![2, 3, 4], vec![3], vec![4]];
        assert!(meet_semilattice(5, |a, b| above[a].contains(&b)).is_err());
    }
}
