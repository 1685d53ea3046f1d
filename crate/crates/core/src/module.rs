//! Finitely presented modules, their elements, and the submodule lattice.
//!
//! Every module over `Z/n` is treated as the `Z`-module `Z^g / L` where `L`
//! is spanned by the relation columns together with `n·e_i`. Submodules
//! and homomorphisms of `Z/n`-modules coincide with those of the underlying
//! abelian groups, so a single integer code path serves both ring regimes.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::linalg::{integer_kernel, smith_normal_form, unit, IntMatrix, Lattice};
use crate::ring::RingDesc;

struct ModuleData {
    ring: RingDesc,
    n_gens: usize,
    relations: IntMatrix,
    lattice: Lattice,
    invariant_factors: Vec<BigInt>,
}

/// `R^{n_gens} / span(relations)`; cheap to clone.
#[derive(Clone)]
pub struct FPModule(Arc<ModuleData>);

/// Builds `R^{n_gens}` modulo the column span of `relations`.
pub fn present_module(ring: RingDesc, n_gens: usize, relations: IntMatrix) -> Result<FPModule> {
    if relations.rows() != n_gens {
        return Err(Error::Dimension(format!(
            "relation matrix has {} rows but the module has {n_gens} generators",
            relations.rows()
        )));
    }
    let relations = match ring.modulus_big() {
        Some(n) => relations.reduce_mod(&n),
        None => relations,
    };
    let mut gens: Vec<Vec<BigInt>> = relations.columns().collect();
    if let Some(n) = ring.modulus_big() {
        gens.extend((0..n_gens).map(|i| {
            let mut e = unit(n_gens, i);
            e[i] = n.clone();
            e
        }));
    }
    let lattice = Lattice::from_generators(n_gens, gens);
    let invariant_factors = invariant_factors_of(&lattice);
    Ok(FPModule(Arc::new(ModuleData {
        ring,
        n_gens,
        relations,
        lattice,
        invariant_factors,
    })))
}

fn invariant_factors_of(lattice: &Lattice) -> Vec<BigInt> {
    let snf = smith_normal_form(&lattice.to_matrix());
    let mut out: Vec<BigInt> = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
    out.extend(std::iter::repeat_n(BigInt::zero(), lattice.dim() - lattice.rank()));
    out
}

impl FPModule {
    /// `R/d_1 ⊕ ... ⊕ R/d_k`; a factor of 0 contributes a free summand.
    pub fn from_invariant_factors(ring: RingDesc, factors: &[BigInt]) -> Result<Self> {
        let k = factors.len();
        let mut rel = IntMatrix::zeros(k, k);
        for (i, d) in factors.iter().enumerate() {
            rel[(i, i)] = d.clone();
        }
        present_module(ring, k, rel)
    }

    pub fn zero(ring: RingDesc) -> Self {
        present_module(ring, 0, IntMatrix::zeros(0, 0)).expect("empty presentation")
    }

    /// The ring as a module over itself.
    pub fn free(ring: RingDesc, rank: usize) -> Self {
        present_module(ring, rank, IntMatrix::zeros(rank, 0)).expect("free presentation")
    }

    pub fn ring(&self) -> &RingDesc {
        &self.0.ring
    }

    pub fn n_gens(&self) -> usize {
        self.0.n_gens
    }

    /// The relation columns as supplied (reduced into `[0, n)` over `Z/n`).
    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    /// Relations as an integer lattice, including `n·e_i` over `Z/n`.
    pub fn relation_lattice(&self) -> &Lattice {
        &self.0.lattice
    }

    /// Nonunit invariant factors in divisibility order, free factors (0) last.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.0.invariant_factors
    }

    /// Number of free cyclic summands.
    pub fn free_rank(&self) -> usize {
        self.0.n_gens - self.0.lattice.rank()
    }

    /// Cardinality when finite.
    pub fn order(&self) -> Option<BigInt> {
        self.0.lattice.index()
    }

    pub fn is_finite(&self) -> bool {
        self.0.lattice.is_full_rank()
    }

    pub fn is_zero(&self) -> bool {
        self.0.invariant_factors.is_empty()
    }

    /// Same ring and invariant factors.
    pub fn is_isomorphic(&self, other: &FPModule) -> bool {
        self.ring() == other.ring() && self.invariant_factors() == other.invariant_factors()
    }

    pub fn element(&self, coords: &[BigInt]) -> Result<ModuleElement> {
        if coords.len() != self.n_gens() {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, module has {} generators",
                coords.len(),
                self.n_gens()
            )));
        }
        Ok(ModuleElement {
            parent: self.clone(),
            coords: self.reduce(coords),
        })
    }

    pub(crate) fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.0.lattice.reduce(coords)
    }

    pub(crate) fn is_zero_vector(&self, coords: &[BigInt]) -> bool {
        self.0.lattice.contains(coords)
    }

    /// Canonical coordinates of every element, lexicographically ordered.
    ///
    /// Fails for infinite modules and when the order exceeds `cap`.
    pub fn element_coords(&self, cap: u64) -> Result<Vec<Vec<BigInt>>> {
        let order = self
            .order()
            .ok_or_else(|| Error::InfiniteModule("element enumeration".into()))?;
        if order > BigInt::from(cap) {
            return Err(Error::OracleInfeasible {
                what: "module element set".into(),
                cardinality: order.to_string(),
                cap,
            });
        }
        let g = self.n_gens();
        let bounds: Vec<BigInt> = (0..g)
            .map(|c| self.0.lattice.pivot_at(c).cloned().expect("full rank lattice"))
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![BigInt::zero(); g];
        loop {
            out.push(cur.clone());
            // odometer with the last coordinate fastest
            let mut i = g;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = BigInt::zero();
            }
        }
    }

    pub fn whole(&self) -> Submodule {
        Submodule::new(self, IntMatrix::identity(self.n_gens())).expect("identity has n_gens rows")
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule::new(self, IntMatrix::zeros(self.n_gens(), 0)).expect("empty generators")
    }

    pub fn identity(&self) -> Homomorphism {
        Homomorphism::new(self, self, IntMatrix::identity(self.n_gens()))
            .expect("identity is well defined")
    }

    /// `self ⊕ other`, presented on the concatenated generators.
    pub fn direct_sum(&self, other: &FPModule) -> Result<FPModule> {
        self.ring().ensure_same(other.ring())?;
        let (a, b) = (self.n_gens(), other.n_gens());
        let (ra, rb) = (self.relations(), other.relations());
        let mut rel = IntMatrix::zeros(a + b, ra.cols() + rb.cols());
        for i in 0..a {
            for j in 0..ra.cols() {
                rel[(i, j)] = ra[(i, j)].clone();
            }
        }
        for i in 0..b {
            for j in 0..rb.cols() {
                rel[(a + i, ra.cols() + j)] = rb[(i, j)].clone();
            }
        }
        present_module(self.ring().clone(), a + b, rel)
    }

    /// Human-readable decomposition, e.g. `Z/2 ⊕ Z` or `0`.
    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let base = match self.ring() {
            RingDesc::Integers => "Z".to_string(),
            RingDesc::IntegersMod(n) => format!("Z/{n}"),
        };
        self.invariant_factors()
            .iter()
            .map(|d| {
                if d.is_zero() {
                    base.clone()
                } else {
                    format!("Z/{d}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }

    pub(crate) fn ensure_same(&self, other: &FPModule) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }
}

/// Presentations are equal when they quotient the same free module by the same lattice.
impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring && self.0.lattice == other.0.lattice)
    }
}

impl Eq for FPModule {}

impl fmt::Debug for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FPModule[{}]({})", self.ring(), self.describe())
    }
}

/// An element in canonical reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    parent: FPModule,
    coords: Vec<BigInt>,
}

impl ModuleElement {
    pub fn parent(&self) -> &FPModule {
        &self.parent
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// A submodule of a fixed module, stored by generators.
#[derive(Clone)]
pub struct Submodule {
    parent: FPModule,
    gens: IntMatrix,
    /// span(gens) + relation lattice
    lattice: Lattice,
    canonical_gens: IntMatrix,
}

impl Submodule {
    /// Submodule generated by the columns of `gens`.
    pub fn new(parent: &FPModule, gens: IntMatrix) -> Result<Self> {
        if gens.rows() != parent.n_gens() {
            return Err(Error::Dimension(format!(
                "generator matrix has {} rows but the module has {} generators",
                gens.rows(),
                parent.n_gens()
            )));
        }
        let lattice = Lattice::from_generators(
            parent.n_gens(),
            gens.columns()
                .chain(parent.relation_lattice().basis().iter().cloned()),
        );
        let rel = parent.relation_lattice();
        let kept: Vec<Vec<BigInt>> = lattice
            .basis()
            .iter()
            .filter(|b| !rel.contains(b))
            .cloned()
            .collect();
        let canonical_gens =
            IntMatrix::from_columns(parent.n_gens(), &kept).expect("basis length is n_gens");
        Ok(Submodule {
            parent: parent.clone(),
            gens,
            lattice,
            canonical_gens,
        })
    }

    pub fn from_elements(parent: &FPModule, elems: &[Vec<BigInt>]) -> Result<Self> {
        Self::new(parent, IntMatrix::from_columns(parent.n_gens(), elems)?)
    }

    pub fn parent(&self) -> &FPModule {
        &self.parent
    }

    pub fn gens(&self) -> &IntMatrix {
        &self.gens
    }

    /// Deterministic generators: equal submodules have identical canonical generators.
    pub fn canonical_gens(&self) -> &IntMatrix {
        &self.canonical_gens
    }

    pub(crate) fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn canonical(&self) -> Submodule {
        Submodule::new(&self.parent, self.canonical_gens.clone()).expect("same row count")
    }

    pub fn is_zero(&self) -> bool {
        self.canonical_gens.cols() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.lattice.is_full_rank() && self.lattice.index() == Some(BigInt::one())
    }

    pub fn contains_vector(&self, coords: &[BigInt]) -> bool {
        self.lattice.contains(coords)
    }

    /// `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Submodule) -> Result<bool> {
        self.parent.ensure_same(&other.parent)?;
        Ok(other.lattice.contains_lattice(&self.lattice))
    }

    /// The submodule presented as a module in its own right, on its canonical generators.
    pub fn as_module(&self) -> FPModule {
        let s = &self.canonical_gens;
        let k = s.cols();
        let rel = self.parent.relation_lattice().to_matrix();
        let block = s.hcat(&rel).expect("same row count");
        let ker = integer_kernel(&block);
        let cols: Vec<Vec<BigInt>> = ker.basis().iter().map(|v| v[..k].to_vec()).collect();
        let relations = IntMatrix::from_columns(k, &cols).expect("length k");
        present_module(self.parent.ring().clone(), k, relations).expect("rows match")
    }

    /// Inclusion of [`Submodule::as_module`] into the parent.
    pub fn inclusion(&self) -> Homomorphism {
        Homomorphism::new(&self.as_module(), &self.parent, self.canonical_gens.clone())
            .expect("inclusion is well defined")
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.lattice == other.lattice
    }
}

impl Eq for Submodule {}

impl std::hash::Hash for Submodule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.lattice.hash(state);
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Submodule")
            .field("parent", &self.parent)
            .field("canonical_gens", &self.canonical_gens)
            .finish()
    }
}

/// `U ∧ V`, from the integer kernel of `[U | -V | relations]`.
pub fn sub_meet(u: &Submodule, v: &Submodule) -> Result<Submodule> {
    u.parent.ensure_same(&v.parent)?;
    let (ug, vg) = (&u.canonical_gens, &v.canonical_gens);
    let rel = u.parent.relation_lattice().to_matrix();
    let block = ug.hcat(&vg.neg())?.hcat(&rel)?;
    let ker = integer_kernel(&block);
    let k = ug.cols();
    let elems: Vec<Vec<BigInt>> = ker
        .basis()
        .iter()
        .map(|x| ug.mul_vec(&x[..k]).expect("k columns"))
        .collect();
    Submodule::from_elements(&u.parent, &elems)
}

/// `U ∨ V`.
pub fn sub_join(u: &Submodule, v: &Submodule) -> Result<Submodule> {
    u.parent.ensure_same(&v.parent)?;
    Submodule::new(&u.parent, u.canonical_gens.hcat(&v.canonical_gens)?)
}

/// `M/N` on the generators of `M`, with the projection `M → M/N`.
pub fn quotient(m: &FPModule, n: &Submodule) -> Result<(FPModule, Homomorphism)> {
    m.ensure_same(&n.parent)?;
    let q = present_module(
        m.ring().clone(),
        m.n_gens(),
        m.relations().hcat(&n.canonical_gens)?,
    )?;
    let pi = Homomorphism::new(m, &q, IntMatrix::identity(m.n_gens()))?;
    Ok((q, pi))
}

pub fn sub_image(f: &Homomorphism, u: &Submodule) -> Result<Submodule> {
    f.dom().ensure_same(&u.parent)?;
    Submodule::new(f.cod(), f.matrix().checked_mul(&u.canonical_gens)?)
}

/// `{x : f(x) ∈ W}`.
pub fn sub_preimage(f: &Homomorphism, w: &Submodule) -> Result<Submodule> {
    f.cod().ensure_same(&w.parent)?;
    let a = f.dom().n_gens();
    let block = f
        .matrix()
        .hcat(&w.lattice.to_matrix().neg())?;
    let ker = integer_kernel(&block);
    let elems: Vec<Vec<BigInt>> = ker.basis().iter().map(|x| x[..a].to_vec()).collect();
    Submodule::from_elements(f.dom(), &elems)
}

pub fn sub_contains(u: &Submodule, x: &ModuleElement) -> Result<bool> {
    u.parent.ensure_same(&x.parent)?;
    Ok(u.contains_vector(&x.coords))
}

pub fn sub_equal(u: &Submodule, v: &Submodule) -> Result<bool> {
    u.parent.ensure_same(&v.parent)?;
    Ok(u.canonical_gens == v.canonical_gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::big_vec;

    fn z() -> RingDesc {
        RingDesc::Integers
    }

    fn cyclic(ring: RingDesc, d: i64) -> FPModule {
        present_module(ring, 1, IntMatrix::from_rows(&[vec![d]]).unwrap()).unwrap()
    }

    fn factors(m: &FPModule) -> Vec<i64> {
        m.invariant_factors()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn presentation_examples() {
        let m = present_module(
            z(),
            2,
            IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap(),
        )
        .unwrap();
        assert_eq!(factors(&m), vec![6]);
        assert_eq!(m.order(), Some(BigInt::from(6)));
        assert_eq!(factors(&FPModule::free(z(), 1)), vec![0]);
        assert_eq!(factors(&FPModule::free(RingDesc::IntegersMod(4), 1)), vec![4]);
        assert!(present_module(z(), 2, IntMatrix::zeros(1, 1)).is_err());
    }

    #[test]
    fn zero_module_is_legal() {
        let m = FPModule::zero(z());
        assert!(m.is_zero());
        assert_eq!(m.order(), Some(BigInt::one()));
        assert!(m.whole().is_zero());
        assert_eq!(m.element_coords(10).unwrap(), vec![Vec::<BigInt>::new()]);
        let (q, _) = quotient(&m, &m.whole()).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn meet_and_join_in_z() {
        let m = FPModule::free(z(), 1);
        let two = Submodule::from_elements(&m, &[big_vec(&[2])]).unwrap();
        let three = Submodule::from_elements(&m, &[big_vec(&[3])]).unwrap();
        let six = Submodule::from_elements(&m, &[big_vec(&[6])]).unwrap();
        assert_eq!(sub_meet(&two, &three).unwrap(), six);
        assert_eq!(sub_join(&two, &three).unwrap(), m.whole());
        assert_eq!(sub_meet(&m.whole(), &three).unwrap(), three);
        assert_eq!(sub_join(&two, &m.zero_submodule()).unwrap(), two);
    }

    #[test]
    fn meet_join_idempotent_in_z4() {
        let m = FPModule::free(RingDesc::IntegersMod(4), 1);
        let two = Submodule::from_elements(&m, &[big_vec(&[2])]).unwrap();
        assert_eq!(sub_meet(&two, &two).unwrap(), two);
        assert_eq!(sub_join(&two, &two).unwrap(), two);
        assert_eq!(two.canonical_gens(), &IntMatrix::from_rows(&[vec![2]]).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let m = FPModule::free(z(), 1);
        let two = Submodule::from_elements(&m, &[big_vec(&[2])]).unwrap();
        assert_eq!(factors(&quotient(&m, &two).unwrap().0), vec![2]);
        assert!(quotient(&m, &m.zero_submodule()).unwrap().0.is_isomorphic(&m));
        let m = FPModule::from_invariant_factors(z(), &big_vec(&[0, 2])).unwrap();
        let n = Submodule::from_elements(&m, &[big_vec(&[2, 0])]).unwrap();
        assert_eq!(factors(&quotient(&m, &n).unwrap().0), vec![2, 2]);
    }

    #[test]
    fn image_and_preimage() {
        let zz = FPModule::free(z(), 1);
        let (z2, pi) = quotient(&zz, &Submodule::from_elements(&zz, &[big_vec(&[2])]).unwrap())
            .unwrap();
        let two = Submodule::from_elements(&zz, &[big_vec(&[2])]).unwrap();
        assert!(sub_image(&pi, &two).unwrap().is_zero());
        assert_eq!(sub_image(&zz.identity(), &two).unwrap(), two);
        assert_eq!(z2.order(), Some(BigInt::from(2)));

        let r4 = FPModule::free(RingDesc::IntegersMod(4), 1);
        let double = Homomorphism::new(&r4, &r4, IntMatrix::from_rows(&[vec![2]]).unwrap()).unwrap();
        let pre = sub_preimage(&double, &r4.zero_submodule()).unwrap();
        assert_eq!(pre, Submodule::from_elements(&r4, &[big_vec(&[2])]).unwrap());
    }

    #[test]
    fn containment_and_equality() {
        let m = FPModule::free(z(), 1);
        let a = Submodule::from_elements(&m, &[big_vec(&[2])]).unwrap();
        let b = Submodule::from_elements(&m, &[big_vec(&[-2]), big_vec(&[4])]).unwrap();
        assert!(sub_equal(&a, &b).unwrap());
        assert!(sub_contains(&a, &m.element(&big_vec(&[0])).unwrap()).unwrap());
        assert!(!sub_contains(&a, &m.element(&big_vec(&[1])).unwrap()).unwrap());
    }

    #[test]
    fn parent_mismatch_is_an_error() {
        let a = FPModule::free(z(), 1);
        let b = cyclic(z(), 2);
        assert_eq!(
            sub_meet(&a.whole(), &b.whole()).unwrap_err(),
            Error::ParentMismatch
        );
    }

    #[test]
    fn submodule_presentation() {
        // ⟨2⟩ in Z/12 is cyclic of order 6.
        let m = cyclic(z(), 12);
        let s = Submodule::from_elements(&m, &[big_vec(&[2])]).unwrap();
        assert_eq!(factors(&s.as_module()), vec![6]);
        assert!(s.inclusion().is_injective());
    }
}
