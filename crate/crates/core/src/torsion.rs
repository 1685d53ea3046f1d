//! The torsion theory `(T, F)` cogenerated by a subcategory of injectives,
//! and boundedness over `Z`.
//!
//! `t(M) = c_A(0)` is the torsion radical; `T = {X : t(X) = X}` and
//! `F = {X : t(X) = 0}`. Verification runs over a finite universe of
//! modules; infinite sums and products are checked in their finite form.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::closure::{is_hom_vanishing, regular_closure, ObjectRef, Subcategory};
use crate::error::{Error, Result};
use crate::hom::hom_group;
use crate::module::{quotient, FPModule, Submodule};
use crate::ring::RingDesc;
use crate::universe::{enumerate_submodules, iso_classes};

const SUBMODULE_CAP: u64 = 1 << 12;

pub fn torsion_radical(m: &FPModule, cat: &Subcategory) -> Result<Submodule> {
    Ok(regular_closure(m, &m.zero_submodule(), cat)?.closure)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorsionClass {
    /// `t(X) = X`; includes the zero module.
    Torsion,
    /// `t(X) = 0`, `X ≠ 0`.
    TorsionFree,
    Mixed,
}

pub fn classify(x: &FPModule, cat: &Subcategory) -> Result<TorsionClass> {
    let t = torsion_radical(x, cat)?;
    Ok(if t.is_whole() {
        TorsionClass::Torsion
    } else if t.is_zero() {
        TorsionClass::TorsionFree
    } else {
        TorsionClass::Mixed
    })
}

fn require_integers(m: &FPModule) -> Result<()> {
    if m.ring().is_integers() {
        Ok(())
    } else {
        Err(Error::WrongRing(
            "boundedness is defined over a free ideal ring; use ring Z".into(),
        ))
    }
}

/// `Hom(M, Z) = 0`, which for finitely generated `M` means rank 0.
pub fn is_bounded(m: &FPModule) -> Result<bool> {
    require_integers(m)?;
    Ok(m.free_rank() == 0)
}

/// Rank of the largest free direct summand.
pub fn free_summand_rank(m: &FPModule) -> Result<usize> {
    require_integers(m)?;
    Ok(m.free_rank())
}

/// A finite list of modules, one per isomorphism class.
#[derive(Clone, Debug)]
pub struct ModuleUniverse {
    ring: RingDesc,
    objects: Vec<FPModule>,
    pub closed_under_submodules: bool,
    pub closed_under_quotients: bool,
    pub closed_under_direct_sums: bool,
}

impl ModuleUniverse {
    /// Drops later duplicates up to isomorphism and computes the closure flags.
    pub fn new(ring: RingDesc, objects: Vec<FPModule>) -> Result<Self> {
        let mut kept: Vec<FPModule> = Vec::new();
        for o in objects {
            ring.ensure_same(o.ring())?;
            if !kept.iter().any(|k| k.is_isomorphic(&o)) {
                kept.push(o);
            }
        }
        let has = |m: &FPModule| kept.iter().any(|k| k.is_isomorphic(m));
        let mut subs_ok = true;
        let mut quots_ok = true;
        for o in &kept {
            if !o.is_finite() {
                subs_ok = false;
                quots_ok = false;
                continue;
            }
            for s in enumerate_submodules(o, SUBMODULE_CAP)? {
                subs_ok &= has(&s.as_module());
                quots_ok &= has(&quotient(o, &s)?.0);
            }
        }
        let mut sums_ok = true;
        'outer: for a in &kept {
            for b in &kept {
                if !has(&a.direct_sum(b)?) {
                    sums_ok = false;
                    break 'outer;
                }
            }
        }
        Ok(ModuleUniverse {
            ring,
            objects: kept,
            closed_under_submodules: subs_ok,
            closed_under_quotients: quots_ok,
            closed_under_direct_sums: sums_ok,
        })
    }

    /// All modules with at most `max_gens` generators and order at most `max_order`.
    pub fn exhaustive(ring: RingDesc, max_gens: usize, max_order: u64) -> Result<Self> {
        let objects = iso_classes(&ring, max_gens, max_order)?;
        Self::new(ring, objects)
    }

    pub fn ring(&self) -> &RingDesc {
        &self.ring
    }

    pub fn objects(&self) -> &[FPModule] {
        &self.objects
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug)]
pub struct TorsionTheoryReport {
    pub cat: Subcategory,
    pub universe: ModuleUniverse,
    /// Indices into the universe.
    pub t_members: Vec<usize>,
    pub f_members: Vec<usize>,
    /// `t(X)` for every universe object, in universe order.
    pub radical_table: Vec<Submodule>,
    pub checks: Vec<Check>,
}

impl TorsionTheoryReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Records the first counterexample per check.
struct Ledger {
    checks: Vec<Check>,
}

impl Ledger {
    fn record(&mut self, name: &'static str, ok: bool, witness: impl FnOnce() -> String) {
        let entry = match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => c,
            None => {
                self.checks.push(Check {
                    name,
                    passed: true,
                    counterexample: None,
                });
                self.checks.last_mut().expect("just pushed")
            }
        };
        if !ok && entry.passed {
            entry.passed = false;
            entry.counterexample = Some(witness());
        }
    }

    fn declare(&mut self, name: &'static str) {
        self.record(name, true, String::new);
    }
}

/// Memoises class membership by isomorphism type.
struct Classifier<'a> {
    cat: &'a Subcategory,
    cache: HashMap<Vec<BigInt>, (bool, bool)>,
}

impl Classifier<'_> {
    /// `(in T, in F)`
    fn membership(&mut self, x: &FPModule) -> Result<(bool, bool)> {
        if let Some(&v) = self.cache.get(x.invariant_factors()) {
            return Ok(v);
        }
        let t = torsion_radical(x, self.cat)?;
        let v = (t.is_whole(), t.is_zero());
        self.cache.insert(x.invariant_factors().to_vec(), v);
        Ok(v)
    }

    fn in_t(&mut self, x: &FPModule) -> Result<bool> {
        Ok(self.membership(x)?.0)
    }

    fn in_f(&mut self, x: &FPModule) -> Result<bool> {
        Ok(self.membership(x)?.1)
    }
}

pub const CHECK_NAMES: [&str; 17] = [
    "precondition: T ∩ A = {0}",
    "A ⊆ F",
    "T via radical agrees with Hom(X, A) = 0",
    "T ∩ F = {0}",
    "Hom(T, F) = 0",
    "radical: t(t(M)) = t(M)",
    "radical: t(M/t(M)) = 0",
    "radical: t(M) ∈ T",
    "radical: M/t(M) ∈ F",
    "T closed under quotients",
    "T closed under finite direct sums",
    "T closed under extensions (finite variant)",
    "F closed under submodules",
    "F closed under finite direct products",
    "F closed under extensions (finite variant)",
    "hereditary: T closed under submodules",
    "Hom(t(M), A) = 0",
];

pub fn verify_torsion_theory(
    universe: &ModuleUniverse,
    cat: &Subcategory,
) -> Result<TorsionTheoryReport> {
    universe.ring.ensure_same(cat.ring())?;
    let mut ledger = Ledger { checks: Vec::new() };
    for name in CHECK_NAMES {
        ledger.declare(name);
    }
    let mut cls = Classifier {
        cat,
        cache: HashMap::new(),
    };
    let objs = universe.objects();

    for a in cat.finite_objects() {
        let (in_t, in_f) = cls.membership(a)?;
        ledger.record(CHECK_NAMES[0], !in_t || a.is_zero(), || a.describe());
        ledger.record(CHECK_NAMES[1], in_f, || a.describe());
    }

    let mut radical_table = Vec::with_capacity(objs.len());
    let mut t_members = Vec::new();
    let mut f_members = Vec::new();
    for (i, x) in objs.iter().enumerate() {
        let t = torsion_radical(x, cat)?;
        let by_radical = t.is_whole();
        let by_hom = is_hom_vanishing(x, &x.zero_submodule(), cat)?;
        ledger.record(CHECK_NAMES[2], by_radical == by_hom, || x.describe());
        if by_radical {
            t_members.push(i);
        }
        if t.is_zero() {
            f_members.push(i);
        }
        ledger.record(CHECK_NAMES[3], !(by_radical && t.is_zero()) || x.is_zero(), || {
            x.describe()
        });

        let t_mod = t.as_module();
        let tt = torsion_radical(&t_mod, cat)?;
        ledger.record(CHECK_NAMES[5], tt.is_whole(), || x.describe());
        let (q, _) = quotient(x, &t)?;
        ledger.record(CHECK_NAMES[6], torsion_radical(&q, cat)?.is_zero(), || {
            x.describe()
        });
        ledger.record(CHECK_NAMES[7], cls.in_t(&t_mod)?, || x.describe());
        ledger.record(CHECK_NAMES[8], cls.in_f(&q)?, || x.describe());
        for obj in cat.objects() {
            let nonzero = cat.has_nonzero_hom(&t_mod, obj)?;
            ledger.record(CHECK_NAMES[16], !nonzero, || {
                format!("t({}) → {}", x.describe(), cat.describe(obj))
            });
        }
        radical_table.push(t);
    }

    for &i in &t_members {
        for &j in &f_members {
            let h = hom_group(&objs[i], &objs[j])?;
            ledger.record(CHECK_NAMES[4], h.is_zero(), || {
                format!("{} → {}", objs[i].describe(), objs[j].describe())
            });
        }
    }

    for (i, x) in objs.iter().enumerate() {
        if !x.is_finite() {
            continue;
        }
        let x_in_t = t_members.contains(&i);
        let x_in_f = f_members.contains(&i);
        for s in enumerate_submodules(x, SUBMODULE_CAP)? {
            let s_mod = s.as_module();
            let (q, _) = quotient(x, &s)?;
            let (s_t, s_f) = cls.membership(&s_mod)?;
            let (q_t, q_f) = cls.membership(&q)?;
            let show = || format!("{} ⊇ {} with quotient {}", x.describe(), s_mod.describe(), q.describe());
            if x_in_t {
                ledger.record(CHECK_NAMES[9], q_t, show);
                ledger.record(CHECK_NAMES[15], s_t, show);
            }
            if x_in_f {
                ledger.record(CHECK_NAMES[12], s_f, show);
            }
            if s_t && q_t {
                ledger.record(CHECK_NAMES[11], x_in_t, show);
            }
            if s_f && q_f {
                ledger.record(CHECK_NAMES[14], x_in_f, show);
            }
        }
    }

    for (members, name) in [(&t_members, CHECK_NAMES[10]), (&f_members, CHECK_NAMES[13])] {
        for &i in members.iter() {
            for &j in members.iter() {
                let sum = objs[i].direct_sum(&objs[j])?;
                let (in_t, in_f) = cls.membership(&sum)?;
                let ok = if name == CHECK_NAMES[10] { in_t } else { in_f };
                ledger.record(name, ok, || {
                    format!("{} ⊕ {}", objs[i].describe(), objs[j].describe())
                });
            }
        }
    }

    Ok(TorsionTheoryReport {
        cat: cat.clone(),
        universe: universe.clone(),
        t_members,
        f_members,
        radical_table,
        checks: ledger.checks,
    })
}

/// Objects of `cat` as a list of labels, e.g. for reports.
pub fn object_labels(cat: &Subcategory) -> Vec<String> {
    cat.objects()
        .into_iter()
        .map(|o: ObjectRef| cat.describe(o))
        .collect()
}
