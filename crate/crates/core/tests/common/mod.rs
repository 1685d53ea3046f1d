#![allow(dead_code)]

use modclose::closure::{Divisible, Subcategory};
use modclose::hom::{hom_group, Homomorphism};
use modclose::injective::is_injective_module;
use modclose::linalg::IntMatrix;
use modclose::module::{present_module, FPModule, Submodule};
use modclose::ring::RingDesc;
use modclose::universe::{invariant_factor_lists, iso_classes};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    if rows == 0 {
        IntMatrix::zeros(0, cols)
    } else {
        IntMatrix::from_rows(&data).unwrap()
    }
}

/// Random presentation over `ring`. Over `Z` the relation matrix is
/// uniform in `[-9, 9]` (often infinite); over `Z/n` see [`random_finite_module`].
pub fn random_presentation(rng: &mut impl Rng, ring: &RingDesc, max_gens: usize) -> FPModule {
    match ring.modulus() {
        None => {
            let g = rng.gen_range(0..=max_gens);
            let k = rng.gen_range(0..=max_gens);
            present_module(ring.clone(), g, random_matrix(rng, g, k, 9)).unwrap()
        }
        Some(n) => random_finite_module(rng, ring, max_gens, n.pow(max_gens as u32)),
    }
}

/// Random unimodular matrix as a product of elementary operations.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = c;
        m = &e * &m;
    }
    m
}

/// Random finite module of order at most `max_order`: a random isomorphism
/// class, possibly padded with a trivial generator, disguised by random
/// unimodular changes of basis and a redundant relation column.
pub fn random_finite_module(
    rng: &mut impl Rng,
    ring: &RingDesc,
    max_gens: usize,
    max_order: u64,
) -> FPModule {
    let classes = invariant_factor_lists(ring, max_gens, max_order);
    let f = classes.choose(rng).unwrap();
    let mut diag: Vec<i64> = f.iter().map(|&d| d as i64).collect();
    if diag.len() < max_gens && rng.gen_bool(0.3) {
        diag.insert(0, 1);
    }
    let g = diag.len();
    let mut d = IntMatrix::zeros(g, g);
    for (i, x) in diag.iter().enumerate() {
        d[(i, i)] = BigInt::from(*x);
    }
    let mut rel = &(&random_unimodular(rng, g) * &d) * &random_unimodular(rng, g);
    if g > 0 && rng.gen_bool(0.5) {
        let extra = random_matrix(rng, g, 1, 2);
        rel = rel.hcat(&(&rel * &extra)).unwrap();
    }
    let m = present_module(ring.clone(), g, rel).unwrap();
    debug_assert_eq!(
        m.invariant_factors().iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>(),
        f.iter().map(|&d| d as i64).collect::<Vec<_>>()
    );
    m
}

pub fn random_element(rng: &mut impl Rng, m: &FPModule) -> Vec<BigInt> {
    (0..m.n_gens())
        .map(|_| BigInt::from(rng.gen_range(-12i64..=12)))
        .collect()
}

pub fn random_submodule(rng: &mut impl Rng, m: &FPModule) -> Submodule {
    let k = rng.gen_range(0..=2);
    let elems: Vec<Vec<BigInt>> = (0..k).map(|_| random_element(rng, m)).collect();
    Submodule::from_elements(m, &elems).unwrap()
}

/// A random element of `Hom(m, y)`.
pub fn random_hom(rng: &mut impl Rng, m: &FPModule, y: &FPModule) -> Homomorphism {
    let h = hom_group(m, y).unwrap();
    let coeffs: Vec<BigInt> = h
        .generators
        .iter()
        .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
        .collect();
    h.combination(&coeffs).unwrap()
}

pub const MOD_RINGS: [u64; 5] = [4, 6, 8, 9, 12];

/// Nonzero injective modules among the isomorphism classes bounded as given.
pub fn injectives(ring: &RingDesc, max_gens: usize, max_order: u64) -> Vec<FPModule> {
    iso_classes(ring, max_gens, max_order)
        .unwrap()
        .into_iter()
        .filter(|m| !m.is_zero() && is_injective_module(m).unwrap())
        .collect()
}

pub fn random_subcategory(rng: &mut impl Rng, ring: &RingDesc) -> Subcategory {
    match ring {
        RingDesc::Integers => {
            let options = [
                vec![Divisible::Rationals],
                vec![Divisible::RationalsModZ],
                vec![Divisible::Rationals, Divisible::RationalsModZ],
            ];
            Subcategory::divisible(options.choose(rng).unwrap().clone()).unwrap()
        }
        RingDesc::IntegersMod(_) => {
            let inj = injectives(ring, 2, 36);
            let k = rng.gen_range(1..=2.min(inj.len()));
            let objs: Vec<FPModule> = inj.choose_multiple(rng, k).cloned().collect();
            Subcategory::finite(ring.clone(), objs).unwrap()
        }
    }
}

pub fn cyclic(ring: &RingDesc, d: i64) -> FPModule {
    FPModule::from_invariant_factors(ring.clone(), &[BigInt::from(d)]).unwrap()
}
