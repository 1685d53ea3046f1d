//! Brute-force counterparts of the matrix algorithms, for finite modules.
//!
//! Everything here works on explicit element sets and enumerated maps; none
//! of it goes through `hom_group`, `sub_meet` or the Hermite lattice of a
//! submodule. Elements are identified by their canonical coordinates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::closure::{Divisible, ObjectRef, Subcategory};
use crate::error::{Error, Result};
use crate::hom::{enumerate_homs, Homomorphism};
use crate::module::{quotient, FPModule, Submodule};

pub type ElementSet = BTreeSet<Vec<BigInt>>;

/// Default cap on enumerated sets and assignments.
pub const DEFAULT_CAP: u64 = 1 << 16;

pub fn all_elements(m: &FPModule, cap: u64) -> Result<ElementSet> {
    Ok(m.element_coords(cap)?.into_iter().collect())
}

/// The subgroup generated by `gens`, by closing under addition.
pub fn generated_set(m: &FPModule, gens: &[Vec<BigInt>], cap: u64) -> Result<ElementSet> {
    if !m.is_finite() {
        return Err(Error::InfiniteModule("element-set oracle".into()));
    }
    let gens: Vec<Vec<BigInt>> = gens.iter().map(|g| m.element(g).map(|e| e.coords().to_vec())).collect::<Result<_>>()?;
    let zero = vec![BigInt::zero(); m.n_gens()];
    let mut set = ElementSet::new();
    set.insert(zero.clone());
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for g in &gens {
            let y: Vec<BigInt> = x.iter().zip(g).map(|(a, b)| a + b).collect();
            let y = m.element(&y)?.coords().to_vec();
            if set.insert(y.clone()) {
                if set.len() as u64 > cap {
                    return Err(Error::OracleInfeasible {
                        what: "generated subgroup".into(),
                        cardinality: format!(">{cap}"),
                        cap,
                    });
                }
                stack.push(y);
            }
        }
    }
    Ok(set)
}

pub fn submodule_set(s: &Submodule, cap: u64) -> Result<ElementSet> {
    let gens: Vec<Vec<BigInt>> = s.gens().columns().collect();
    generated_set(s.parent(), &gens, cap)
}

pub fn kernel_set(f: &Homomorphism, cap: u64) -> Result<ElementSet> {
    let mut out = ElementSet::new();
    for x in f.dom().element_coords(cap)? {
        if f.apply(&x)?.iter().all(Zero::is_zero) {
            out.insert(x);
        }
    }
    Ok(out)
}

fn vanishes_on(f: &Homomorphism, gens: &[Vec<BigInt>]) -> Result<bool> {
    for g in gens {
        if !f.apply(g)?.iter().all(Zero::is_zero) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every map `m → a` that kills `n`, by enumeration of generator images.
pub fn homs_vanishing_on(
    m: &FPModule,
    n: &Submodule,
    a: &FPModule,
    cap: u64,
) -> Result<Vec<Homomorphism>> {
    let gens: Vec<Vec<BigInt>> = n.gens().columns().collect();
    let mut out = Vec::new();
    for f in enumerate_homs(m, a, cap)? {
        if vanishes_on(&f, &gens)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// `c_A(N)` as an element set: the intersection of kernels of all enumerated
/// maps into finite objects that kill `N`. Divisible objects over `Z` use
/// their character-style oracles on the finite module `M`.
pub fn closure_set(m: &FPModule, n: &Submodule, cat: &Subcategory, cap: u64) -> Result<ElementSet> {
    let mut acc = all_elements(m, cap)?;
    for a in cat.finite_objects() {
        for f in homs_vanishing_on(m, n, a, cap)? {
            let k = kernel_set(&f, cap)?;
            acc = acc.intersection(&k).cloned().collect();
        }
    }
    for &d in cat.divisible_objects() {
        match d {
            // A finite M has no nonzero map to Q.
            Divisible::Rationals => {}
            Divisible::RationalsModZ => {
                let n_set = submodule_set(n, cap)?;
                acc = acc.intersection(&n_set).cloned().collect();
            }
        }
    }
    Ok(acc)
}

/// `Hom(M/N, A) = 0` for each object, decided by enumerating every map.
pub fn hom_vanishing_by_enumeration(
    m: &FPModule,
    n: &Submodule,
    cat: &Subcategory,
    cap: u64,
) -> Result<bool> {
    let (q, _) = quotient(m, n)?;
    for obj in cat.objects() {
        if has_nonzero_hom_by_enumeration(&q, cat, obj, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nonzero map `x → obj` for finite `x`. For `Q/Z` a nonzero finite `x`
/// always has one: a character into `Z/e ⊆ Q/Z`, `e` the exponent of `x`.
pub fn has_nonzero_hom_by_enumeration(
    x: &FPModule,
    cat: &Subcategory,
    obj: ObjectRef,
    cap: u64,
) -> Result<bool> {
    match obj {
        ObjectRef::Finite(i) => Ok(enumerate_homs(x, &cat.finite_objects()[i], cap)?
            .iter()
            .any(|f| !f.is_zero())),
        ObjectRef::Divisible(Divisible::Rationals) => {
            if x.is_finite() {
                Ok(false)
            } else {
                Err(Error::InfiniteModule("enumeration oracle".into()))
            }
        }
        ObjectRef::Divisible(Divisible::RationalsModZ) => {
            let sep = characters_separate(x, cap)?;
            Ok(sep && !x.is_zero())
        }
    }
}

/// Every nonzero element of a finite `x` survives some map `x → Z/e`, where
/// `e` is the exponent of `x`. Checks the cogenerator property of `Q/Z` on `x`.
pub fn characters_separate(x: &FPModule, cap: u64) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    let e = x
        .invariant_factors()
        .last()
        .cloned()
        .ok_or_else(|| Error::InfiniteModule("character oracle".into()))?;
    if e.is_zero() {
        return Err(Error::InfiniteModule("character oracle".into()));
    }
    let target = FPModule::from_invariant_factors(x.ring().clone(), &[e])?;
    let chars = enumerate_homs(x, &target, cap)?;
    for v in x.element_coords(cap)? {
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let mut hit = false;
        for c in &chars {
            if !c.apply(&v)?.iter().all(Zero::is_zero) {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All submodules of a finite module as element sets, via subsets closed
/// under addition generated by at most two elements at a time, iterated.
pub fn all_subgroup_sets(m: &FPModule, cap: u64) -> Result<BTreeSet<ElementSet>> {
    let elems = m.element_coords(cap)?;
    let mut found: BTreeSet<ElementSet> = BTreeSet::new();
    let mut frontier: Vec<Vec<Vec<BigInt>>> = vec![Vec::new()];
    found.insert(generated_set(m, &[], cap)?);
    while let Some(gens) = frontier.pop() {
        let current = generated_set(m, &gens, cap)?;
        for e in &elems {
            if current.contains(e) {
                continue;
            }
            let mut next = gens.clone();
            next.push(e.clone());
            let s = generated_set(m, &next, cap)?;
            if found.insert(s) {
                frontier.push(next);
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::big_vec;
    use crate::ring::RingDesc;

    #[test]
    fn subgroup_sets_of_klein_group() {
        let m = FPModule::from_invariant_factors(RingDesc::Integers, &big_vec(&[2, 2])).unwrap();
        assert_eq!(all_subgroup_sets(&m, 100).unwrap().len(), 5);
    }

    #[test]
    fn closure_set_matches_example() {
        let r = RingDesc::IntegersMod(4);
        let m = FPModule::free(r.clone(), 1);
        let cat = Subcategory::finite(r, vec![m.clone()]).unwrap();
        let n = Submodule::from_elements(&m, &[big_vec(&[2])]).unwrap();
        let set = closure_set(&m, &n, &cat, 100).unwrap();
        assert_eq!(set, [big_vec(&[0]), big_vec(&[2])].into_iter().collect());
        assert_eq!(homs_vanishing_on(&m, &n, &m, 100).unwrap().len(), 2);
    }

    #[test]
    fn characters_of_cyclic_groups() {
        let m = FPModule::from_invariant_factors(RingDesc::Integers, &big_vec(&[2, 6])).unwrap();
        assert!(characters_separate(&m, 1000).unwrap());
    }
}
