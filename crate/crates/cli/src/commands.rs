use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use modclose::closure::{regular_closure, ObjectRef, Subcategory};
use modclose::hom::{enumerate_homs, hom_group};
use modclose::linalg::{smith_normal_form, IntMatrix};
use modclose::module::FPModule;
use modclose::oracle::{
    closure_set, has_nonzero_hom_by_enumeration, hom_vanishing_by_enumeration, submodule_set,
};
use modclose::torsion::{
    classify, free_summand_rank, is_bounded, verify_torsion_theory, ModuleUniverse, TorsionClass,
};
use modclose::universe::enumerate_submodules;
use modclose::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::json::{columns, int_list, rows, Int};
use crate::workspace::Workspace;
use crate::CliError;

const ORACLE_CAP: u64 = 1 << 16;

#[derive(Debug, Parser)]
#[command(name = "modclose", version, about = "Regular closure operators induced by injective modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closure of a submodule, with density, closedness and witnesses.
    Closure(Opts),
    /// Verify the torsion theory induced by a subcategory on a module universe.
    Verify(Opts),
    /// Smith normal form of a matrix or of a module's relations.
    Snf(Opts),
    /// Structure and generators of Hom(module, target).
    Hom(Opts),
    /// Whether a Z-module is bounded.
    Bounded(Opts),
    /// Rank of the free summand of a Z-module.
    FreeRank(Opts),
}

#[derive(Debug, Args)]
pub struct Opts {
    #[arg(long, value_name = "FILE")]
    pub workspace: Option<PathBuf>,
    #[arg(long, value_name = "NAME")]
    pub module: Option<String>,
    #[arg(long, value_name = "NAME")]
    pub sub: Option<String>,
    #[arg(long, value_name = "NAME")]
    pub cat: Option<String>,
    /// Codomain for `hom`.
    #[arg(long, value_name = "NAME")]
    pub target: Option<String>,
    /// Matrix for `snf` as JSON rows, e.g. '[[2,4],[6,8]]'.
    #[arg(long, value_name = "ROWS")]
    pub matrix: Option<String>,
    /// Named module list from the workspace's `universes` for `verify`.
    #[arg(long, value_name = "NAME", conflicts_with_all = ["max_gens", "max_order"])]
    pub universe: Option<String>,
    #[arg(long, value_name = "K")]
    pub max_gens: Option<usize>,
    #[arg(long, value_name = "B")]
    pub max_order: Option<u64>,
    /// Rerun the computation against brute-force oracles and diff.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, conflicts_with = "pretty")]
    pub json: bool,
    #[arg(long)]
    pub pretty: bool,
}

/// A JSON report and whether it records a verification failure.
#[derive(Debug)]
pub struct Report {
    pub value: Value,
    pub failed: bool,
}

impl Opts {
    fn workspace(&self) -> Result<Workspace, CliError> {
        let path = self
            .workspace
            .as_ref()
            .ok_or_else(|| CliError::input("missing required option --workspace"))?;
        Workspace::load(path)
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref()
        .ok_or_else(|| CliError::input(format!("missing required option --{flag}")))
}

fn module_summary(m: &FPModule) -> Value {
    json!({
        "describe": m.describe(),
        "generators": m.n_gens(),
        "invariant_factors": int_list(m.invariant_factors()),
    })
}

/// Oracle section: either a verdict with its diffs or the reason it was skipped.
struct OracleRun {
    checks: Map<String, Value>,
    skipped: Option<String>,
}

impl OracleRun {
    fn new() -> Self {
        OracleRun {
            checks: Map::new(),
            skipped: None,
        }
    }

    fn record(&mut self, name: &str, agrees: bool) {
        self.checks.insert(name.to_string(), Value::Bool(agrees));
    }

    fn agrees(&self) -> bool {
        self.checks.values().all(|v| v == &Value::Bool(true))
    }

    fn into_value(self) -> Value {
        let agrees = self.agrees();
        let mut out = Map::new();
        out.insert("agrees".into(), Value::Bool(agrees));
        out.insert("checks".into(), Value::Object(self.checks));
        if let Some(reason) = self.skipped {
            out.insert("skipped".into(), Value::String(reason));
        }
        Value::Object(out)
    }
}

fn attach_oracle(report: &mut Report, run: OracleRun) {
    report.failed |= !run.agrees();
    report.value["oracle"] = run.into_value();
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Closure(o) => cmd_closure(o),
        Command::Verify(o) => cmd_verify(o),
        Command::Snf(o) => cmd_snf(o),
        Command::Hom(o) => cmd_hom(o),
        Command::Bounded(o) => cmd_bounded(o),
        Command::FreeRank(o) => cmd_free_rank(o),
    }
}

pub fn opts(command: &Command) -> &Opts {
    match command {
        Command::Closure(o)
        | Command::Verify(o)
        | Command::Snf(o)
        | Command::Hom(o)
        | Command::Bounded(o)
        | Command::FreeRank(o) => o,
    }
}

fn object_label(names: &[String], cat: &Subcategory, obj: ObjectRef) -> String {
    match obj {
        ObjectRef::Finite(i) => format!("{} ({})", names[i], cat.describe(obj)),
        ObjectRef::Divisible(d) => d.to_string(),
    }
}

fn cmd_closure(o: &Opts) -> Result<Report, CliError> {
    let ws = o.workspace()?;
    let sub_name = required(&o.sub, "sub")?;
    let cat_name = required(&o.cat, "cat")?;
    let n = ws.submodule(sub_name)?;
    let parent_name = &ws.file.submodules[sub_name].parent;
    let module_name = match &o.module {
        Some(m) => {
            ws.module(m)?;
            if m != parent_name {
                return Err(CliError::input(format!(
                    "submodule `{sub_name}` lives in `{parent_name}`, not `{m}`"
                )));
            }
            m.clone()
        }
        None => parent_name.clone(),
    };
    let m = ws.module(&module_name)?;
    let cat = ws.subcategory(cat_name)?;
    let names = ws.object_names(cat_name)?;
    let r = regular_closure(m, n, cat)?;

    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "object": object_label(&names, cat, w.object),
                "map": w.hom.as_ref().map(|h| rows(h.matrix())),
            })
        })
        .collect();
    let mut report = Report {
        value: json!({
            "command": "closure",
            "ring": ws.ring().to_string(),
            "module": module_name,
            "submodule": sub_name,
            "subcategory": cat_name,
            "submodule_generators": columns(n.canonical_gens()),
            "closure_generators": columns(r.closure.canonical_gens()),
            "dense": r.dense,
            "closed": r.closed,
            "witnesses": witnesses,
        }),
        failed: false,
    };
    if o.oracle {
        let mut run = OracleRun::new();
        if m.is_finite() {
            let expected = closure_set(m, n, cat, ORACLE_CAP)?;
            run.record("closure", submodule_set(&r.closure, ORACLE_CAP)? == expected);
            let vanishing = hom_vanishing_by_enumeration(m, n, cat, ORACLE_CAP)?;
            run.record("dense", vanishing == r.dense);
            run.record("closed", (expected == submodule_set(n, ORACLE_CAP)?) == r.closed);
        } else {
            run.skipped = Some("module is infinite; brute-force oracles need a finite module".into());
        }
        attach_oracle(&mut report, run);
    }
    Ok(report)
}

fn universe_for(o: &Opts, ws: &Workspace) -> Result<(ModuleUniverse, Value), CliError> {
    if let Some(name) = &o.universe {
        let objects = ws.universe(name)?;
        let u = ModuleUniverse::new(ws.ring().clone(), objects)?;
        return Ok((u, json!({"source": "named", "name": name})));
    }
    match (o.max_gens, o.max_order) {
        (Some(g), Some(b)) => {
            let u = ModuleUniverse::exhaustive(ws.ring().clone(), g, b)?;
            Ok((
                u,
                json!({"source": "exhaustive", "max_gens": g, "max_order": b}),
            ))
        }
        _ => Err(CliError::input(
            "verify needs a universe: --universe NAME or both --max-gens and --max-order",
        )),
    }
}

fn cmd_verify(o: &Opts) -> Result<Report, CliError> {
    let ws = o.workspace()?;
    let cat_name = required(&o.cat, "cat")?;
    let cat = ws.subcategory(cat_name)?;
    let names = ws.object_names(cat_name)?;
    let (universe, source) = universe_for(o, &ws)?;
    let rep = verify_torsion_theory(&universe, cat)?;

    let objects = universe.objects();
    let modules: Vec<Value> = objects
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut v = module_summary(m);
            v["index"] = json!(i);
            v["radical_generators"] = columns(rep.radical_table[i].canonical_gens());
            v
        })
        .collect();
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "counterexample": c.counterexample}))
        .collect();
    let all_passed = rep.all_passed();
    let mut report = Report {
        value: json!({
            "command": "verify",
            "ring": ws.ring().to_string(),
            "subcategory": cat_name,
            "objects": cat.objects().into_iter().map(|x| object_label(&names, cat, x)).collect::<Vec<_>>(),
            "universe": {
                "spec": source,
                "size": objects.len(),
                "closed_under_submodules": universe.closed_under_submodules,
                "closed_under_quotients": universe.closed_under_quotients,
                "closed_under_direct_sums": universe.closed_under_direct_sums,
                "modules": modules,
            },
            "torsion_class": rep.t_members,
            "torsion_free_class": rep.f_members,
            "checks": checks,
            "all_passed": all_passed,
        }),
        failed: !all_passed,
    };
    if o.oracle {
        let mut run = OracleRun::new();
        let mut t_ok = true;
        let mut f_ok = true;
        let mut skipped = 0;
        for (i, x) in objects.iter().enumerate() {
            if !x.is_finite() {
                skipped += 1;
                continue;
            }
            let in_t = cat
                .objects()
                .into_iter()
                .map(|a| has_nonzero_hom_by_enumeration(x, cat, a, ORACLE_CAP))
                .collect::<modclose::Result<Vec<bool>>>()?
                .iter()
                .all(|nz| !nz);
            t_ok &= in_t == rep.t_members.contains(&i);
            let mut torsion_sub = false;
            for s in enumerate_submodules(x, ORACLE_CAP)? {
                if s.is_zero() {
                    continue;
                }
                let sm = s.as_module();
                let mut vanish = true;
                for a in cat.objects() {
                    vanish &= !has_nonzero_hom_by_enumeration(&sm, cat, a, ORACLE_CAP)?;
                }
                if vanish {
                    torsion_sub = true;
                    break;
                }
            }
            f_ok &= !torsion_sub == rep.f_members.contains(&i);
        }
        run.record("torsion_class", t_ok);
        run.record("torsion_free_class", f_ok);
        if skipped > 0 {
            run.skipped = Some(format!("{skipped} infinite modules not enumerated"));
        }
        attach_oracle(&mut report, run);
    }
    Ok(report)
}

fn parse_matrix(text: &str) -> Result<IntMatrix, CliError> {
    let rows: Vec<Vec<Int>> = serde_json::from_str(text)
        .map_err(|e| CliError::input(format!("--matrix: expected JSON rows of integers: {e}")))?;
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
    IntMatrix::from_rows(&rows).map_err(|e| CliError::input(format!("--matrix: {e}")))
}

/// Minors of size `k`, for the determinant-divisor oracle.
fn determinant_divisor(a: &IntMatrix, k: usize) -> modclose::Result<BigInt> {
    fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = choose(n - 1, k);
        for mut c in choose(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }
    let mut g = BigInt::zero();
    for rs in choose(a.rows(), k) {
        for cs in choose(a.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| a[(i, j)].clone()).collect())
                .collect();
            g = num_integer::Integer::gcd(&g, &IntMatrix::from_rows(&sub)?.determinant()?);
        }
    }
    Ok(g)
}

fn cmd_snf(o: &Opts) -> Result<Report, CliError> {
    let (a, source) = match (&o.matrix, &o.module) {
        (Some(text), None) => (parse_matrix(text)?, json!({"matrix": Value::Null})),
        (None, Some(name)) => {
            let ws = o.workspace()?;
            let m = ws.module(name)?;
            (m.relations().clone(), json!({"module": name}))
        }
        _ => return Err(CliError::input("snf needs exactly one of --matrix or --module")),
    };
    let r = smith_normal_form(&a);
    let diag = r.diagonal();
    let mut value = json!({
        "command": "snf",
        "input": rows(&a),
        "d": int_list(&diag),
        "rank": r.rank(),
        "u": rows(&r.u),
        "v": rows(&r.v),
    });
    if let Some(name) = source.get("module") {
        value["module"] = name.clone();
    }
    let mut report = Report { value, failed: false };
    if o.oracle {
        let mut run = OracleRun::new();
        run.record("uav_equals_d", &(&r.u * &a) * &r.v == r.d);
        let unimodular = |m: &IntMatrix| m.determinant().map(|d| d.abs().is_one());
        run.record("unimodular", unimodular(&r.u)? && unimodular(&r.v)?);
        let mut prod = BigInt::one();
        let mut divisors_ok = true;
        for (k, d) in diag.iter().enumerate() {
            prod *= d;
            divisors_ok &= determinant_divisor(&a, k + 1)? == prod;
        }
        run.record("determinant_divisors", divisors_ok);
        attach_oracle(&mut report, run);
    }
    Ok(report)
}

fn hom_cap_ok(dom: &FPModule, cod: &FPModule) -> bool {
    match cod.order() {
        Some(order) => num_traits::pow(order, dom.n_gens()) <= BigInt::from(ORACLE_CAP),
        None => false,
    }
}

fn cmd_hom(o: &Opts) -> Result<Report, CliError> {
    let ws = o.workspace()?;
    let dom_name = required(&o.module, "module")?;
    let cod_name = required(&o.target, "target")?;
    let dom = ws.module(dom_name)?;
    let cod = ws.module(cod_name)?;
    let h = hom_group(dom, cod)?;
    let mut report = Report {
        value: json!({
            "command": "hom",
            "ring": ws.ring().to_string(),
            "domain": dom_name,
            "codomain": cod_name,
            "structure": int_list(&h.structure),
            "generators": h.generators.iter().map(|g| rows(g.matrix())).collect::<Vec<_>>(),
            "is_zero": h.is_zero(),
        }),
        failed: false,
    };
    if o.oracle {
        let mut run = OracleRun::new();
        if dom.is_finite() && hom_cap_ok(dom, cod) {
            let key = |hs: Vec<modclose::hom::Homomorphism>| -> BTreeSet<Vec<Vec<BigInt>>> {
                hs.iter().map(|f| f.matrix().to_rows()).collect()
            };
            let span = key(h.all_elements(ORACLE_CAP)?);
            let all = key(enumerate_homs(dom, cod, ORACLE_CAP)?);
            run.record("span_equals_enumeration", span == all);
        } else {
            run.skipped = Some("Hom set is infinite or exceeds the enumeration cap".into());
        }
        attach_oracle(&mut report, run);
    }
    Ok(report)
}

fn rational_subcategory() -> Subcategory {
    Subcategory::divisible(vec![modclose::closure::Divisible::Rationals])
        .expect("Q is a valid subcategory over Z")
}

fn cmd_bounded(o: &Opts) -> Result<Report, CliError> {
    let ws = o.workspace()?;
    let name = required(&o.module, "module")?;
    let m = ws.module(name)?;
    let bounded = is_bounded(m)?;
    let mut report = Report {
        value: json!({
            "command": "bounded",
            "ring": ws.ring().to_string(),
            "module": name,
            "structure": module_summary(m),
            "bounded": bounded,
        }),
        failed: false,
    };
    if o.oracle {
        let mut run = OracleRun::new();
        let torsion = classify(m, &rational_subcategory())? == TorsionClass::Torsion;
        run.record("torsion_for_q", torsion == bounded);
        let z = FPModule::free(ws.ring().clone(), 1);
        run.record("no_map_to_z", hom_group(m, &z)?.is_zero() == bounded);
        attach_oracle(&mut report, run);
    }
    Ok(report)
}

fn cmd_free_rank(o: &Opts) -> Result<Report, CliError> {
    let ws = o.workspace()?;
    let name = required(&o.module, "module")?;
    let m = ws.module(name)?;
    let rank = free_summand_rank(m)?;
    let mut report = Report {
        value: json!({
            "command": "free-rank",
            "ring": ws.ring().to_string(),
            "module": name,
            "structure": module_summary(m),
            "free_summand_rank": rank,
        }),
        failed: false,
    };
    if o.oracle {
        let mut run = OracleRun::new();
        let z = FPModule::free(ws.ring().clone(), 1);
        let dual = hom_group(m, &z)?;
        run.record("rank_of_dual", dual.structure.iter().filter(|d| d.is_zero()).count() == rank);
        attach_oracle(&mut report, run);
    }
    Ok(report)
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::input(e.to_string())
    }
}
