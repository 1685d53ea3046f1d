//! Finite enumerations: isomorphism classes by invariant factors, and all
//! submodules of a finite module.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::module::{sub_join, FPModule, Submodule};
use crate::ring::RingDesc;

/// Every submodule of a finite module, starting with `0`.
///
/// Submodules are joins of cyclic ones; the search closes the set of cyclic
/// submodules under join. `cap` bounds the element count of `m`.
pub fn enumerate_submodules(m: &FPModule, cap: u64) -> Result<Vec<Submodule>> {
    let elems = m.element_coords(cap)?;
    let mut cyclic: Vec<Submodule> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for e in elems {
        let c = Submodule::from_elements(m, &[e])?;
        if seen_cyclic.insert(c.canonical_gens().clone()) {
            cyclic.push(c);
        }
    }
    let mut all = vec![m.zero_submodule()];
    let mut seen: HashSet<_> = all.iter().map(|s| s.canonical_gens().clone()).collect();
    let mut frontier = 0;
    while frontier < all.len() {
        let s = all[frontier].clone();
        frontier += 1;
        for c in &cyclic {
            if c.is_contained_in(&s)? {
                continue;
            }
            let j = sub_join(&s, c)?;
            if seen.insert(j.canonical_gens().clone()) {
                all.push(j);
            }
        }
    }
    Ok(all)
}

/// Invariant-factor lists `d_1 | d_2 | ... | d_k` (all `d_i > 1`), `k ≤ max_gens`,
/// `Π d_i ≤ max_order`; over `Z/n` each `d_i` divides `n`. Finite modules only.
pub fn invariant_factor_lists(ring: &RingDesc, max_gens: usize, max_order: u64) -> Vec<Vec<u64>> {
    let candidates: Vec<u64> = match ring.modulus() {
        Some(n) => (2..=n).filter(|d| n % d == 0 && *d <= max_order).collect(),
        None => (2..=max_order).collect(),
    };
    let mut out = Vec::new();
    let mut cur = Vec::new();
    extend(&candidates, max_gens, max_order, 1, &mut cur, &mut out);
    out.sort_by_key(|f| (f.iter().product::<u64>(), f.len(), f.clone()));
    out
}

fn extend(
    candidates: &[u64],
    max_gens: usize,
    max_order: u64,
    order: u64,
    cur: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    out.push(cur.clone());
    if cur.len() == max_gens {
        return;
    }
    for &d in candidates {
        if cur.last().is_some_and(|&prev| d % prev != 0) {
            continue;
        }
        let Some(next) = order.checked_mul(d) else { continue };
        if next > max_order {
            continue;
        }
        cur.push(d);
        extend(candidates, max_gens, max_order, next, cur, out);
        cur.pop();
    }
}

/// One module per isomorphism class, per [`invariant_factor_lists`].
pub fn iso_classes(ring: &RingDesc, max_gens: usize, max_order: u64) -> Result<Vec<FPModule>> {
    if max_order > ORDER_LIMIT {
        return Err(Error::OracleInfeasible {
            what: "universe order bound".into(),
            cardinality: max_order.to_string(),
            cap: ORDER_LIMIT,
        });
    }
    invariant_factor_lists(ring, max_gens, max_order)
        .into_iter()
        .map(|f| {
            let f: Vec<BigInt> = f.into_iter().map(BigInt::from).collect();
            FPModule::from_invariant_factors(ring.clone(), &f)
        })
        .collect()
}

/// Largest order bound accepted for exhaustive universes.
pub const ORDER_LIMIT: u64 = 1024;

/// Product of the invariant factors, or `None` for infinite modules.
pub fn order_of_factors(f: &[BigInt]) -> Option<BigInt> {
    if f.iter().any(Zero::is_zero) {
        None
    } else {
        Some(f.iter().fold(BigInt::one(), |acc, d| acc * d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::big_vec;

    #[test]
    fn submodules_of_cyclic_groups() {
        let z = RingDesc::Integers;
        // Subgroups of Z/12 correspond to the 6 divisors of 12.
        let m = FPModule::from_invariant_factors(z.clone(), &big_vec(&[12])).unwrap();
        assert_eq!(enumerate_submodules(&m, 100).unwrap().len(), 6);
        // Z/2 ⊕ Z/2 has 5 subgroups.
        let m = FPModule::from_invariant_factors(z, &big_vec(&[2, 2])).unwrap();
        assert_eq!(enumerate_submodules(&m, 100).unwrap().len(), 5);
    }

    #[test]
    fn factor_lists_over_z12() {
        let lists = invariant_factor_lists(&RingDesc::IntegersMod(12), 2, 36);
        assert_eq!(lists[0], Vec::<u64>::new());
        assert!(lists.contains(&vec![6, 6]));
        assert!(lists.contains(&vec![3, 12]));
        assert!(!lists.contains(&vec![4, 12]));
        assert!(!lists.contains(&vec![2, 3]));
    }

    #[test]
    fn order_limit_is_enforced() {
        assert!(matches!(
            iso_classes(&RingDesc::Integers, 2, 5000),
            Err(Error::OracleInfeasible { .. })
        ));
    }
}
