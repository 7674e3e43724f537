//! Named tables used by the command line tool and the self-tests.

use stonedual::finitesgp::{
    chain_semilattice, cyclic_group_with_zero, direct_product, meet_semilattice, rees_b_r, symmetric_inverse_monoid,
    zero_direct_union, MulTable,
};
use stonedual::Result;

/// Names understood by [`named`], small tables first.
pub const NAMES: &[&str] = &[
    "chain1", "i1", "chain2", "chain3", "two_atoms", "z2", "chain4", "diamond", "lenz", "z3", "b2",
    "chain3_x_chain2", "i2", "b2_plus_z2", "e_i3", "i2_plus_i1", "b2_z2", "b3", "i2_x_chain2", "i3", "i2_x_i2", "i4",
];

/// `{0, e, 1, g}`: the group `{1, g}` of order two over an atom `e`.
pub fn lenz_witness() -> MulTable {
    let rows = [[0, 0, 0, 0], [0, 1, 1, 1], [0, 1, 2, 3], [0, 1, 3, 2]];
    let names = ["0", "e", "1", "g"].iter().map(|s| s.to_string()).collect();
    MulTable::from_fn_checked(4, 0, Some(2), Some(names), |a, b| rows[a][b]).expect("valid table")
}

fn diamond() -> Result<MulTable> {
    let above = [vec![0, 1, 2, 3], vec![1, 3], vec![2, 3], vec![3]];
    meet_semilattice(4, |a, b| above[a].contains(&b))
}

/// Builds a table by name: the names in [`NAMES`], plus `i<k>`, `chain<k>`,
/// `b<r>` and `z<n>` for other sizes.
pub fn named(name: &str) -> Result<Option<MulTable>> {
    let i = symmetric_inverse_monoid;
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|k| k.parse::<usize>().ok());
    let t = match name {
        "two_atoms" => zero_direct_union(&chain_semilattice(2), &chain_semilattice(2))?,
        "diamond" => diamond()?,
        "lenz" => lenz_witness(),
        "e_i3" => i(3)?.idempotent_semilattice().0,
        "i2_plus_i1" => zero_direct_union(&i(2)?, &i(1)?)?,
        "b2_z2" => rees_b_r(&cyclic_group_with_zero(2)?, 2)?,
        "i2_x_chain2" => direct_product(&i(2)?, &chain_semilattice(2))?,
        "chain3_x_chain2" => direct_product(&chain_semilattice(3), &chain_semilattice(2))?,
        "b2_plus_z2" => zero_direct_union(&rees_b_r(&i(1)?, 2)?, &cyclic_group_with_zero(2)?)?,
        "i2_x_i2" => direct_product(&i(2)?, &i(2)?)?,
        _ => {
            if let Some(k) = num("chain").filter(|&k| k >= 1) {
                chain_semilattice(k)
            } else if let Some(k) = num("i") {
                i(k)?
            } else if let Some(r) = num("b") {
                rees_b_r(&i(1)?, r)?
            } else if let Some(n) = num("z") {
                cyclic_group_with_zero(n)?
            } else {
                return Ok(None);
            }
        }
    };
    Ok(Some(t))
}

/// The whole named corpus, in [`NAMES`] order.
pub fn all() -> Vec<(&'static str, MulTable)> {
    NAMES.iter().map(|&n| (n, named(n).expect("corpus builds").expect("known name"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds_and_is_sorted_by_size() {
        let tables = all();
        assert_eq!(tables.len(), NAMES.len());
        let sizes: Vec<usize> = tables.iter().map(|t| t.1.size()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
        assert!(named("nonsense").unwrap().is_none());
    }
}
