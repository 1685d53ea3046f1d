//! Injectivity of finite modules over `Z/n`, decided two independent ways.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hom::enumerate_homs;
use crate::module::FPModule;
use crate::ring::RingDesc;

const ELEMENT_CAP: u64 = 1 << 20;

fn modulus_of(a: &FPModule) -> Result<u64> {
    a.ring().modulus().ok_or_else(|| {
        Error::WrongRing("injectivity over Z handled by divisible backend".into())
    })
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `(p, e)` with `p^e` exactly dividing `n`.
pub fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Baer's criterion by brute force: every hom from an ideal `dZ/n` into `a`
/// extends to `Z/n`.
pub fn injective_by_baer(a: &FPModule) -> Result<bool> {
    let n = modulus_of(a)?;
    let ring = RingDesc::IntegersMod(n);
    let elems = a.element_coords(ELEMENT_CAP)?;
    for d in divisors(n) {
        // The ideal dZ/n, generated by d, is cyclic of order n/d.
        let ideal = FPModule::from_invariant_factors(ring.clone(), &[BigInt::from(n / d)])?;
        for h in enumerate_homs(&ideal, a, ELEMENT_CAP)? {
            let target = h.matrix().column(0);
            // An extension Z/n → a sends 1 to some b with d·b = h(d).
            let extends = elems.iter().any(|b| {
                let db: Vec<BigInt> = b.iter().map(|x| x * d).collect();
                let diff: Vec<BigInt> = db.iter().zip(&target).map(|(x, y)| x - y).collect();
                a.is_zero_vector(&diff)
            });
            if !extends {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `a` is injective over `Z/n` iff for every `p^e ∥ n` its `p`-component is
/// free over `Z/p^e`, i.e. every invariant factor has `p`-valuation 0 or `e`.
pub fn injective_by_structure(a: &FPModule) -> Result<bool> {
    let n = modulus_of(a)?;
    for (p, e) in prime_powers(n) {
        let p = BigInt::from(p);
        for f in a.invariant_factors() {
            debug_assert!(!f.is_zero(), "modules over Z/n are finite");
            let mut v = 0u32;
            let mut x = f.clone();
            while x.is_multiple_of(&p) {
                x /= &p;
                v += 1;
            }
            if v != 0 && v != e {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Baer verdict; errors over `Z`.
pub fn is_injective_module(a: &FPModule) -> Result<bool> {
    injective_by_baer(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: u64, d: i64) -> FPModule {
        FPModule::from_invariant_factors(RingDesc::IntegersMod(n), &[BigInt::from(d)]).unwrap()
    }

    #[test]
    fn baer_examples() {
        assert!(injective_by_baer(&cyc(4, 4)).unwrap());
        assert!(!injective_by_baer(&cyc(4, 2)).unwrap());
        assert!(injective_by_baer(&cyc(6, 2)).unwrap());
    }

    #[test]
    fn structure_examples() {
        assert!(injective_by_structure(&cyc(4, 4)).unwrap());
        assert!(!injective_by_structure(&cyc(4, 2)).unwrap());
        assert!(injective_by_structure(&cyc(6, 2)).unwrap());
        assert!(injective_by_structure(&cyc(12, 4)).unwrap());
        assert!(!injective_by_structure(&cyc(12, 2)).unwrap());
    }

    #[test]
    fn integers_rejected() {
        let m = FPModule::free(RingDesc::Integers, 1);
        assert!(matches!(is_injective_module(&m), Err(Error::WrongRing(_))));
    }

    #[test]
    fn factorisation() {
        assert_eq!(prime_powers(12), vec![(2, 2), (3, 1)]);
        assert_eq!(prime_powers(9), vec![(3, 2)]);
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
    }
}
