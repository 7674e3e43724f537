//! The Lenz arrow in `P_n` by enumeration.
//!
//! The elements below `a = y x⁻¹` are `(y w)(x w)⁻¹`. If one of them meets no
//! target then neither does anything below it, and from depth `L`, the
//! longest target domain, on the answer no longer changes. So it suffices
//! to test every `w` of length `L + 2`. Two elements meet exactly when their
//! partial maps agree at some word as long as both domains.

use crate::action::{all_words, prefix_replace};
use stonedual::polycyclic::{PolyElement, Subst};

fn maps_agree_somewhere(s: &Subst, t: &Subst) -> bool {
    // Any point of both domains as long as both domain words extends the
    // longer one, and agreement there is inherited from its prefix.
    let w = if s.domain.len() >= t.domain.len() { &s.domain } else { &t.domain };
    let a = prefix_replace(s.range.letters(), s.domain.letters(), w.letters());
    a.is_some() && a == prefix_replace(t.range.letters(), t.domain.letters(), w.letters())
}

/// `a -> targets`; `None` when `a` is zero.
pub fn lenz_arrow(n: usize, a: &PolyElement, targets: &[PolyElement]) -> Option<bool> {
    let a = a.as_subst()?;
    let targets: Vec<&Subst> = targets.iter().filter_map(PolyElement::as_subst).collect();
    let depth = targets.iter().map(|t| t.domain.len()).max().unwrap_or(0) + 2;
    let below = all_words(n, depth).into_iter().filter(|w| w.len() == depth);
    Some(below.into_iter().all(|w| {
        let mut x = a.domain.letters().to_vec();
        let mut y = a.range.letters().to_vec();
        x.extend(&w);
        y.extend(&w);
        let c = Subst::new(y.into(), x.into());
        targets.iter().any(|t| maps_agree_somewhere(&c, t))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use stonedual::polycyclic::Polycyclic;

    #[test]
    fn small_cases() {
        let p = Polycyclic::new(2).unwrap();
        let e = |s: &str| p.parse(s).unwrap();
        assert_eq!(lenz_arrow(2, &e("1"), &[e("a.a^-1"), e("b.b^-1")]), Some(true));
        assert_eq!(lenz_arrow(2, &e("1"), &[e("a.a^-1")]), Some(false));
        assert_eq!(lenz_arrow(2, &e("0"), &[]), None);
    }
}
