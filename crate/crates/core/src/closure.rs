//! The regular closure operator induced by a list of injective modules.
//!
//! For a submodule `N ⊆ M`, `c_A(N)` is the intersection of the kernels of
//! all maps `g: M → A` with `A ∈ A` and `g(N) = 0`. Such maps are exactly
//! `f ∘ π` for `f ∈ Hom(M/N, A)`, and intersecting over a generating set of
//! each `Hom(M/N, A)` suffices since `ker f₁ ∩ ker f₂ ⊆ ker(r₁f₁ + r₂f₂)`.
//!
//! Over `Z` there are no nonzero finitely generated injectives, so the
//! objects are the divisible groups `Q` and `Q/Z`, handled analytically.

use std::fmt;

use crate::error::{Error, Result};
use crate::hom::{hom_group, kernel_of_hom, Homomorphism};
use crate::injective::is_injective_module;
use crate::linalg::{integer_kernel, IntMatrix};
use crate::module::{quotient, sub_image, sub_join, sub_meet, FPModule, Submodule};
use crate::ring::RingDesc;
use crate::universe::enumerate_submodules;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Divisible {
    /// `Q`
    Rationals,
    /// `Q/Z`
    RationalsModZ,
}

impl fmt::Display for Divisible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Divisible::Rationals => "Q",
            Divisible::RationalsModZ => "QmodZ",
        })
    }
}

/// Identifies one object of a [`Subcategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObjectRef {
    Finite(usize),
    Divisible(Divisible),
}

/// A finite list of injective modules standing for an isomorphism-closed subcategory.
#[derive(Clone, Debug)]
pub struct Subcategory {
    ring: RingDesc,
    finite: Vec<FPModule>,
    divisible: Vec<Divisible>,
}

impl Subcategory {
    pub fn new(ring: RingDesc, finite: Vec<FPModule>, divisible: Vec<Divisible>) -> Result<Self> {
        if finite.is_empty() && divisible.is_empty() {
            return Err(Error::InvalidSubcategory("subcategory has no objects".into()));
        }
        match &ring {
            RingDesc::Integers => {
                if !finite.is_empty() {
                    return Err(Error::InvalidSubcategory(
                        "over Z the only injectives allowed are Q and QmodZ".into(),
                    ));
                }
            }
            RingDesc::IntegersMod(n) => {
                if !divisible.is_empty() {
                    return Err(Error::InvalidSubcategory(format!(
                        "divisible objects are only legal over Z, not Z/{n}"
                    )));
                }
                for (i, a) in finite.iter().enumerate() {
                    ring.ensure_same(a.ring())?;
                    if !is_injective_module(a)? {
                        return Err(Error::InvalidSubcategory(format!(
                            "object {i} ({}) is not injective over Z/{n}: Baer criterion fails",
                            a.describe()
                        )));
                    }
                }
            }
        }
        let mut divisible = divisible;
        divisible.dedup();
        Ok(Subcategory {
            ring,
            finite,
            divisible,
        })
    }

    pub fn finite(ring: RingDesc, objects: Vec<FPModule>) -> Result<Self> {
        Self::new(ring, objects, Vec::new())
    }

    pub fn divisible(objects: Vec<Divisible>) -> Result<Self> {
        Self::new(RingDesc::Integers, Vec::new(), objects)
    }

    pub fn ring(&self) -> &RingDesc {
        &self.ring
    }

    pub fn finite_objects(&self) -> &[FPModule] {
        &self.finite
    }

    pub fn divisible_objects(&self) -> &[Divisible] {
        &self.divisible
    }

    /// All objects, finite ones first, in list order.
    pub fn objects(&self) -> Vec<ObjectRef> {
        (0..self.finite.len())
            .map(ObjectRef::Finite)
            .chain(self.divisible.iter().copied().map(ObjectRef::Divisible))
            .collect()
    }

    pub fn describe(&self, obj: ObjectRef) -> String {
        match obj {
            ObjectRef::Finite(i) => self.finite[i].describe(),
            ObjectRef::Divisible(d) => d.to_string(),
        }
    }

    /// Whether some nonzero map `x → obj` exists.
    pub fn has_nonzero_hom(&self, x: &FPModule, obj: ObjectRef) -> Result<bool> {
        self.ring.ensure_same(x.ring())?;
        Ok(match obj {
            ObjectRef::Finite(i) => !hom_group(x, &self.finite[i])?.is_zero(),
            // Hom(X, Q) ≠ 0 iff X has positive rank; Q/Z cogenerates.
            ObjectRef::Divisible(Divisible::Rationals) => x.free_rank() > 0,
            ObjectRef::Divisible(Divisible::RationalsModZ) => !x.is_zero(),
        })
    }

    fn ensure_compatible(&self, m: &FPModule) -> Result<()> {
        self.ring.ensure_same(m.ring())
    }
}

/// A map whose kernel entered the intersection.
#[derive(Clone, Debug)]
pub struct Witness {
    pub object: ObjectRef,
    /// `g = f ∘ π: M → A` for finite objects; analytic rules carry no map.
    pub hom: Option<Homomorphism>,
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub closure: Submodule,
    pub dense: bool,
    pub closed: bool,
    pub witnesses: Vec<Witness>,
}

pub fn regular_closure(m: &FPModule, n: &Submodule, cat: &Subcategory) -> Result<ClosureResult> {
    cat.ensure_compatible(m)?;
    m.ensure_same(n.parent())?;
    let mut closure = m.whole();
    let mut witnesses = Vec::new();
    if !cat.finite.is_empty() {
        let (q, _) = quotient(m, n)?;
        for (i, a) in cat.finite.iter().enumerate() {
            for f in hom_group(&q, a)?.generators {
                let g = f.with_domain(m)?;
                closure = sub_meet(&closure, &kernel_of_hom(&g))?;
                witnesses.push(Witness {
                    object: ObjectRef::Finite(i),
                    hom: Some(g),
                });
            }
        }
    }
    for &d in &cat.divisible {
        closure = sub_meet(&closure, &divisible_closure(m, n, d)?)?;
        witnesses.push(Witness {
            object: ObjectRef::Divisible(d),
            hom: None,
        });
    }
    let closure = closure.canonical();
    let dense = closure.is_whole();
    let closed = closure == *n;
    Ok(ClosureResult {
        closure,
        dense,
        closed,
        witnesses,
    })
}

/// Closure with respect to a single divisible group over `Z`.
///
/// Maps to `Q` kill exactly the torsion of `M/N`, so the closure is
/// `π⁻¹(torsion(M/N))`. `Q/Z` separates points, so the closure is `N`.
pub fn divisible_closure(m: &FPModule, n: &Submodule, which: Divisible) -> Result<Submodule> {
    if !m.ring().is_integers() {
        return Err(Error::WrongRing(
            "divisible closure requires ring Z".into(),
        ));
    }
    m.ensure_same(n.parent())?;
    match which {
        Divisible::RationalsModZ => Ok(n.canonical()),
        Divisible::Rationals => Submodule::new(m, saturation(n)),
    }
}

/// `{x : kx ∈ L for some k ≠ 0}` for the lattice `L = N + relations`.
fn saturation(n: &Submodule) -> IntMatrix {
    let g = n.parent().n_gens();
    let lat = n.lattice().to_matrix();
    // Linear forms vanishing on L, then their common kernel.
    let forms = integer_kernel(&lat.transpose());
    let rows: Vec<Vec<_>> = forms.basis().to_vec();
    let form_mat = if rows.is_empty() {
        IntMatrix::zeros(0, g)
    } else {
        IntMatrix::from_rows(&rows).expect("rectangular")
    };
    integer_kernel(&form_mat).to_matrix()
}

pub fn is_dense(m: &FPModule, n: &Submodule, cat: &Subcategory) -> Result<bool> {
    Ok(regular_closure(m, n, cat)?.dense)
}

/// `Hom(M/N, A) = 0` for every object, each tested on its own.
pub fn is_hom_vanishing(m: &FPModule, n: &Submodule, cat: &Subcategory) -> Result<bool> {
    cat.ensure_compatible(m)?;
    let (q, _) = quotient(m, n)?;
    for obj in cat.objects() {
        if cat.has_nonzero_hom(&q, obj)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Density computed both ways; a disagreement is an error, never reconciled.
pub fn check_density(m: &FPModule, n: &Submodule, cat: &Subcategory) -> Result<bool> {
    let dense = is_dense(m, n, cat)?;
    let vanishing = is_hom_vanishing(m, n, cat)?;
    if dense != vanishing {
        return Err(Error::Verification(format!(
            "density {dense} but hom-vanishing {vanishing} for N = {:?}",
            n.canonical_gens()
        )));
    }
    Ok(dense)
}

pub fn is_closed(m: &FPModule, n: &Submodule, cat: &Subcategory) -> Result<bool> {
    Ok(regular_closure(m, n, cat)?.closed)
}

#[derive(Clone, Debug)]
pub struct ScanEntry {
    /// A nonzero submodule `T/N` of `M/N`.
    pub submodule: Submodule,
    /// Objects admitting a nonzero map from `T/N`.
    pub nonzero_targets: Vec<ObjectRef>,
}

#[derive(Clone, Debug)]
pub struct ClosednessScan {
    pub entries: Vec<ScanEntry>,
    /// Every nonzero `T/N` maps nontrivially into some object.
    pub exists_verdict: bool,
    /// Every nonzero `T/N` maps nontrivially into every object.
    pub forall_verdict: bool,
    pub closed: bool,
}

impl ClosednessScan {
    pub fn consistent(&self) -> bool {
        self.exists_verdict == self.closed
    }
}

/// Scans every nonzero submodule of a finite `M/N` for nonzero maps into the objects.
pub fn closedness_witness_scan(
    m: &FPModule,
    n: &Submodule,
    cat: &Subcategory,
) -> Result<ClosednessScan> {
    cat.ensure_compatible(m)?;
    let (q, _) = quotient(m, n)?;
    if !q.is_finite() {
        return Err(Error::InfiniteModule(
            "scan infeasible: closedness witness scan".into(),
        ));
    }
    let objects = cat.objects();
    let mut entries = Vec::new();
    for t in enumerate_submodules(&q, SCAN_CAP)? {
        if t.is_zero() {
            continue;
        }
        let t_mod = t.as_module();
        let mut nonzero_targets = Vec::new();
        for &obj in &objects {
            if cat.has_nonzero_hom(&t_mod, obj)? {
                nonzero_targets.push(obj);
            }
        }
        entries.push(ScanEntry {
            submodule: t,
            nonzero_targets,
        });
    }
    let exists_verdict = entries.iter().all(|e| !e.nonzero_targets.is_empty());
    let forall_verdict = entries
        .iter()
        .all(|e| e.nonzero_targets.len() == objects.len());
    Ok(ClosednessScan {
        entries,
        exists_verdict,
        forall_verdict,
        closed: is_closed(m, n, cat)?,
    })
}

const SCAN_CAP: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Extension,
    Monotonicity,
    Continuity,
    Idempotency,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Extension => "extension",
            Axiom::Monotonicity => "monotonicity",
            Axiom::Continuity => "continuity",
            Axiom::Idempotency => "idempotency",
        })
    }
}

/// Inputs for one round of axiom checks on a fixed module `M`.
#[derive(Clone, Debug)]
pub struct AxiomSample {
    pub sub: Submodule,
    pub other: Submodule,
    /// A map `M → Y` for the continuity check.
    pub map: Option<Homomorphism>,
}

#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub sample: usize,
    pub axiom: Axiom,
    pub passed: bool,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    /// `(sample, c(N ∨ N') = c(N) ∨ c(N'))`; recorded, not required.
    pub additivity: Vec<(usize, bool)>,
}

impl AxiomReport {
    pub fn violations(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.checks.iter().filter(|c| c.axiom == axiom).count()
    }
}

pub fn axiom_suite(
    m: &FPModule,
    cat: &Subcategory,
    samples: &[AxiomSample],
) -> Result<AxiomReport> {
    let close = |x: &Submodule| regular_closure(x.parent(), x, cat).map(|r| r.closure);
    let mut report = AxiomReport::default();
    for (i, s) in samples.iter().enumerate() {
        m.ensure_same(s.sub.parent())?;
        m.ensure_same(s.other.parent())?;
        let mut push = |axiom, passed| {
            report.checks.push(AxiomCheck {
                sample: i,
                axiom,
                passed,
            })
        };
        let c = close(&s.sub)?;
        let c_other = close(&s.other)?;
        push(Axiom::Extension, s.sub.is_contained_in(&c)?);
        push(Axiom::Idempotency, close(&c)? == c);
        if s.sub.is_contained_in(&s.other)? {
            push(Axiom::Monotonicity, c.is_contained_in(&c_other)?);
        }
        if s.other.is_contained_in(&s.sub)? {
            push(Axiom::Monotonicity, c_other.is_contained_in(&c)?);
        }
        if let Some(f) = &s.map {
            let lhs = sub_image(f, &c)?;
            let rhs = close(&sub_image(f, &s.sub)?)?;
            push(Axiom::Continuity, lhs.is_contained_in(&rhs)?);
        }
        let joined = close(&sub_join(&s.sub, &s.other)?)?;
        report
            .additivity
            .push((i, joined == sub_join(&c, &c_other)?));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::big_vec;

    fn z4() -> RingDesc {
        RingDesc::IntegersMod(4)
    }

    fn sub(m: &FPModule, elems: &[&[i64]]) -> Submodule {
        let v: Vec<_> = elems.iter().map(|e| big_vec(e)).collect();
        Submodule::from_elements(m, &v).unwrap()
    }

    #[test]
    fn z4_two_is_closed() {
        let m = FPModule::free(z4(), 1);
        let cat = Subcategory::finite(z4(), vec![m.clone()]).unwrap();
        let n = sub(&m, &[&[2]]);
        let r = regular_closure(&m, &n, &cat).unwrap();
        assert_eq!(r.closure, n);
        assert!(r.closed);
        assert!(!r.dense);
        assert!(!is_hom_vanishing(&m, &n, &cat).unwrap());
        let scan = closedness_witness_scan(&m, &n, &cat).unwrap();
        assert_eq!(scan.entries.len(), 1);
        assert!(scan.exists_verdict && scan.consistent());
    }

    #[test]
    fn z_two_is_dense_for_q() {
        let m = FPModule::free(RingDesc::Integers, 1);
        let cat = Subcategory::divisible(vec![Divisible::Rationals]).unwrap();
        let n = sub(&m, &[&[2]]);
        let r = regular_closure(&m, &n, &cat).unwrap();
        assert!(r.dense && !r.closed);
        assert!(is_hom_vanishing(&m, &n, &cat).unwrap());
        assert!(!is_closed(&m, &n, &cat).unwrap());
    }

    #[test]
    fn whole_submodule() {
        let m = FPModule::free(z4(), 1);
        let cat = Subcategory::finite(z4(), vec![m.clone()]).unwrap();
        let r = regular_closure(&m, &m.whole(), &cat).unwrap();
        assert!(r.dense && r.closed);
        assert!(check_density(&m, &m.whole(), &cat).unwrap());
        let scan = closedness_witness_scan(&m, &m.whole(), &cat).unwrap();
        assert!(scan.entries.is_empty() && scan.exists_verdict);
    }

    #[test]
    fn divisible_rules() {
        let z = RingDesc::Integers;
        let m = FPModule::from_invariant_factors(z.clone(), &big_vec(&[2, 0])).unwrap();
        let c = divisible_closure(&m, &m.zero_submodule(), Divisible::Rationals).unwrap();
        // Torsion part Z/2 sits on the first generator.
        assert_eq!(c, sub(&m, &[&[1, 0]]));
        let zz = FPModule::free(z, 1);
        assert!(divisible_closure(&zz, &zz.zero_submodule(), Divisible::Rationals)
            .unwrap()
            .is_zero());
        let n = sub(&zz, &[&[6]]);
        assert_eq!(divisible_closure(&zz, &n, Divisible::RationalsModZ).unwrap(), n);
        let r4 = FPModule::free(z4(), 1);
        assert!(divisible_closure(&r4, &r4.zero_submodule(), Divisible::Rationals).is_err());
    }

    #[test]
    fn subcategory_validation() {
        let z2 = FPModule::from_invariant_factors(z4(), &big_vec(&[2])).unwrap();
        let err = Subcategory::finite(z4(), vec![z2]).unwrap_err();
        assert!(err.to_string().contains("Baer"));
        assert!(Subcategory::new(RingDesc::Integers, vec![], vec![]).is_err());
        let zfree = FPModule::free(RingDesc::Integers, 1);
        assert!(Subcategory::new(RingDesc::Integers, vec![zfree], vec![Divisible::Rationals]).is_err());
        assert!(Subcategory::new(z4(), vec![], vec![Divisible::Rationals]).is_err());
    }

    #[test]
    fn axioms_on_z4() {
        let m = FPModule::free(z4(), 1);
        let cat = Subcategory::finite(z4(), vec![m.clone()]).unwrap();
        let n = sub(&m, &[&[2]]);
        let report = axiom_suite(
            &m,
            &cat,
            &[AxiomSample {
                sub: n.clone(),
                other: m.whole(),
                map: Some(m.identity()),
            }],
        )
        .unwrap();
        assert!(report.all_passed());
        assert_eq!(report.count(Axiom::Monotonicity), 1);
    }

    #[test]
    fn continuity_through_projection() {
        let z = RingDesc::Integers;
        let m = FPModule::free(z.clone(), 1);
        let n = sub(&m, &[&[2]]);
        let (_, pi) = quotient(&m, &n).unwrap();
        let cat = Subcategory::divisible(vec![Divisible::RationalsModZ]).unwrap();
        let report = axiom_suite(
            &m,
            &cat,
            &[AxiomSample {
                sub: n.clone(),
                other: n,
                map: Some(pi),
            }],
        )
        .unwrap();
        assert!(report.all_passed());
        assert_eq!(report.count(Axiom::Continuity), 1);
    }

    #[test]
    fn zero_module_is_dense_and_closed() {
        let m = FPModule::zero(z4());
        let cat = Subcategory::finite(z4(), vec![FPModule::free(z4(), 1)]).unwrap();
        let r = regular_closure(&m, &m.zero_submodule(), &cat).unwrap();
        assert!(r.dense && r.closed);
    }
}
