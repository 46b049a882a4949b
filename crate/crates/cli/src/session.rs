//! Elaboration and execution of a parsed script.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use reldep::fgmod::{ModuleSummary, PresentedModule};
use reldep::fuzz::{generate, FuzzConfig, Rejection, RingFamily};
use reldep::gtheory::{
    complete_resolution, gtor_table, proper_resolution, tate_tor_table, CompleteKind, Extrapolation, TateCertificate,
};
use reldep::invariants::{Bounds, ConclusionStatus, InvariantReport, PairAnalysis, TheoremId, VerdictRecord};
use reldep::oracle::{cross_check, Discrepancy};
use reldep::polyring::{AmbientRing, Poly};
use reldep::quotient::{PrimeIdeal, QuotientRing, RingProperties};
use reldep::resolve::{tor_table, HomologyTable, TableRecord};
use serde::Serialize;

use crate::ast::*;
use crate::error::{CliError, ErrorObject};
use crate::parse::parse_script;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Options {
    pub bounds: Bounds,
    /// Seed for `fuzz` commands that do not name one.
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModuleRecord {
    pub ring: String,
    #[serde(flatten)]
    pub presentation: ModuleSummary,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairRecord {
    pub ring: String,
    pub declared_primes: Vec<String>,
    #[serde(flatten)]
    pub report: InvariantReport,
    pub verdicts: Vec<VerdictRecord>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableOutput {
    pub command: String,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "N")]
    pub n: String,
    #[serde(flatten)]
    pub table: TableRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete_resolution: Option<CompleteKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tate_certificate: Option<TateCertificate>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FuzzOutput {
    pub count: usize,
    pub seed: u64,
    pub family: RingFamily,
    pub attempts: usize,
    pub rejected: Vec<Rejection>,
    pub tally: BTreeMap<String, usize>,
    pub verdicts: Vec<VerdictRecord>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DiscrepancyRecord {
    pub table: String,
    #[serde(flatten)]
    pub discrepancy: Discrepancy,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleCheck {
    /// "pass", "fail" or "not-run" (no tables were computed).
    pub status: String,
    pub tables_checked: usize,
    pub degree_bound: i32,
    pub discrepancies: Vec<DiscrepancyRecord>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionReport {
    /// Properties of the first declared ring.
    pub ring: Option<RingProperties>,
    pub rings: BTreeMap<String, RingProperties>,
    pub modules: BTreeMap<String, ModuleRecord>,
    pub bounds: Bounds,
    pub pairs: Vec<PairRecord>,
    pub tables: Vec<TableOutput>,
    pub fuzz: Vec<FuzzOutput>,
    pub oracle_check: OracleCheck,
    pub error: Option<ErrorObject>,
}

pub struct SessionOutcome {
    pub report: SessionReport,
    pub text: String,
    pub exit_code: i32,
}

impl SessionOutcome {
    /// Pretty JSON with a trailing newline; identical inputs give identical bytes.
    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn verdicts(&self) -> impl Iterator<Item = &VerdictRecord> {
        self.report
            .pairs
            .iter()
            .flat_map(|p| p.verdicts.iter())
            .chain(self.report.fuzz.iter().flat_map(|f| f.verdicts.iter()))
    }
}

struct Env {
    rings: BTreeMap<String, Arc<QuotientRing>>,
    first_ring: Option<String>,
    last_ring: Option<String>,
    modules: BTreeMap<String, (String, PresentedModule)>,
    primes: BTreeMap<String, (String, PrimeIdeal)>,
    names: BTreeMap<String, Pos>,
}

impl Env {
    fn new() -> Self {
        Env {
            rings: BTreeMap::new(),
            first_ring: None,
            last_ring: None,
            modules: BTreeMap::new(),
            primes: BTreeMap::new(),
            names: BTreeMap::new(),
        }
    }

    fn claim(&mut self, name: &Name) -> Result<(), CliError> {
        if let Some(first) = self.names.get(&name.text) {
            return Err(CliError::Duplicate { name: name.text.clone(), pos: name.pos, first: *first });
        }
        self.names.insert(name.text.clone(), name.pos);
        Ok(())
    }

    fn ring(&self, name: &Name) -> Result<&Arc<QuotientRing>, CliError> {
        self.rings.get(&name.text).ok_or_else(|| CliError::Undefined { name: name.text.clone(), pos: name.pos })
    }

    fn module(&self, name: &Name) -> Result<&(String, PresentedModule), CliError> {
        self.modules.get(&name.text).ok_or_else(|| CliError::Undefined { name: name.text.clone(), pos: name.pos })
    }

    fn prime(&self, name: &Name) -> Result<&(String, PrimeIdeal), CliError> {
        self.primes.get(&name.text).ok_or_else(|| CliError::Undefined { name: name.text.clone(), pos: name.pos })
    }
}

fn parse_poly(ambient: &AmbientRing, p: &PolyText) -> Result<Poly, CliError> {
    let f = ambient.parse(&p.text).map_err(|e| CliError::engine(format!("polynomial {}", p.text), p.pos, e))?;
    if !f.is_homogeneous() {
        return Err(CliError::Inhomogeneous {
            entry: p.text.clone(),
            pos: p.pos,
            detail: "terms of different degrees".into(),
        });
    }
    Ok(f)
}

/// Generator degrees making every relation column homogeneous. Each connected
/// block of generators is normalized to start in degree 0.
fn infer_degrees(entries: &[Vec<(Poly, &PolyText)>], ngens: usize) -> Result<Vec<i32>, CliError> {
    // entries[row][col]; d_row + deg(entry) is constant along each column.
    let ncols = entries.first().map_or(0, |r| r.len());
    let mut deg: Vec<Option<i32>> = vec![None; ngens];
    for start in 0..ngens {
        if deg[start].is_some() {
            continue;
        }
        deg[start] = Some(0);
        let mut block = vec![start];
        let mut stack = vec![start];
        while let Some(r) = stack.pop() {
            for c in 0..ncols {
                let Some(er) = entries[r][c].0.homogeneous_degree() else { continue };
                let col_deg = deg[r].expect("assigned") + er as i32;
                for (r2, row) in entries.iter().enumerate() {
                    let Some(e2) = row[c].0.homogeneous_degree() else { continue };
                    let want = col_deg - e2 as i32;
                    match deg[r2] {
                        None => {
                            deg[r2] = Some(want);
                            block.push(r2);
                            stack.push(r2);
                        }
                        Some(d) if d != want => {
                            let p = row[c].1;
                            return Err(CliError::Inhomogeneous {
                                entry: p.text.clone(),
                                pos: p.pos,
                                detail: format!("relation {} has no consistent degree", c + 1),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let lo = block.iter().map(|&r| deg[r].expect("assigned")).min().expect("nonempty");
        for &r in &block {
            deg[r] = deg[r].map(|d| d - lo);
        }
    }
    Ok(deg.into_iter().map(|d| d.expect("assigned")).collect())
}

fn elaborate_module(env: &Env, decl: &ModuleDecl) -> Result<PresentedModule, CliError> {
    let ring = env.ring(&decl.ring)?.clone();
    let entries = decl
        .rows
        .iter()
        .map(|row| row.iter().map(|p| Ok((parse_poly(ring.ambient(), p)?, p))).collect::<Result<Vec<_>, CliError>>())
        .collect::<Result<Vec<_>, CliError>>()?;
    let ngens = entries.len();
    let degrees = match &decl.degrees {
        Some(d) if d.len() != ngens => {
            return Err(CliError::syntax(decl.matrix_pos, format!("{} degrees given for {ngens} generators", d.len())))
        }
        Some(d) => {
            for (c, _) in entries[0].iter().enumerate() {
                let mut col = entries
                    .iter()
                    .enumerate()
                    .filter_map(|(r, row)| row[c].0.homogeneous_degree().map(|e| (d[r] + e as i32, row[c].1)));
                if let Some((first, _)) = col.next() {
                    if let Some((_, p)) = col.find(|(v, _)| *v != first) {
                        return Err(CliError::Inhomogeneous {
                            entry: p.text.clone(),
                            pos: p.pos,
                            detail: format!("relation {} is not homogeneous for degrees {d:?}", c + 1),
                        });
                    }
                }
            }
            d.clone()
        }
        None => infer_degrees(&entries, ngens)?,
    };
    let ncols = entries[0].len();
    let columns: Vec<Vec<Poly>> = (0..ncols).map(|c| entries.iter().map(|row| row[c].0.clone()).collect()).collect();
    let m = PresentedModule::coker(ring, degrees, columns)
        .map_err(|e| CliError::engine(format!("module {}", decl.name.text), decl.matrix_pos, e))?;
    Ok(m)
}

fn elaborate(env: &mut Env, item: &Item) -> Result<(), CliError> {
    match item {
        Item::Ring(r) => {
            env.claim(&r.name)?;
            let names: Vec<&str> = r.vars.iter().map(|v| v.text.as_str()).collect();
            let ambient = AmbientRing::new(&names, r.characteristic)
                .map_err(|e| CliError::engine(format!("ring {}", r.name.text), r.name.pos, e))?;
            let gens = r.quotient.iter().map(|p| parse_poly(&ambient, p)).collect::<Result<Vec<_>, _>>()?;
            let ring = QuotientRing::new(ambient, &gens, r.golod)
                .map_err(|e| CliError::engine(format!("ring {}", r.name.text), r.name.pos, e))?;
            env.rings.insert(r.name.text.clone(), Arc::new(ring));
            env.first_ring.get_or_insert_with(|| r.name.text.clone());
            env.last_ring = Some(r.name.text.clone());
        }
        Item::Module(m) => {
            let module = elaborate_module(env, m)?;
            env.claim(&m.name)?;
            env.modules.insert(m.name.text.clone(), (m.ring.text.clone(), module));
        }
        Item::Prime(p) => {
            let ring_name = env
                .last_ring
                .clone()
                .ok_or_else(|| CliError::syntax(p.name.pos, "a prime must follow a ring declaration"))?;
            let ring = env.rings[&ring_name].clone();
            let gens = p.gens.iter().map(|g| parse_poly(ring.ambient(), g)).collect::<Result<Vec<_>, _>>()?;
            let prime = PrimeIdeal::declared(&ring, &p.name.text, &gens)
                .map_err(|e| CliError::engine(format!("prime {}", p.name.text), p.name.pos, e))?;
            env.claim(&p.name)?;
            env.primes.insert(p.name.text.clone(), (ring_name, prime));
        }
        Item::Command(c) => check_command(env, c)?,
    }
    Ok(())
}

const FUZZ_KEYS: [&str; 3] = ["count", "seed", "polynomial"];

/// Name resolution for a command against the declarations seen so far.
fn check_command(env: &Env, c: &Command) -> Result<(), CliError> {
    if c.kind == CommandKind::Fuzz {
        for a in &c.args {
            if !FUZZ_KEYS.contains(&a.name.text.as_str()) {
                return Err(CliError::syntax(a.name.pos, format!("unknown fuzz argument `{}`", a.name.text)));
            }
            if a.name.text != "polynomial" && a.value.is_none_or(|v| v < 0) {
                return Err(CliError::syntax(a.name.pos, format!("`{}` needs a nonnegative value", a.name.text)));
            }
        }
        return Ok(());
    }
    if c.args.len() < 2 {
        return Err(CliError::syntax(c.pos, format!("`{}` takes two modules", c.kind.keyword())));
    }
    for a in &c.args {
        if a.value.is_some() {
            return Err(CliError::syntax(a.name.pos, "module and prime arguments take no value"));
        }
    }
    let (rm, _) = env.module(&c.args[0].name)?;
    let (rn, _) = env.module(&c.args[1].name)?;
    if rm != rn {
        return Err(CliError::syntax(c.args[1].name.pos, "the two modules live over different rings"));
    }
    for a in &c.args[2..] {
        if c.kind != CommandKind::Report && !matches!(c.kind, CommandKind::Verify(_)) {
            return Err(CliError::syntax(a.name.pos, "only report and verify accept declared primes"));
        }
        let (rp, _) = env.prime(&a.name)?;
        if rp != rm {
            return Err(CliError::syntax(a.name.pos, format!("prime {} belongs to ring {rp}", a.name.text)));
        }
    }
    Ok(())
}

struct Session<'a> {
    env: Env,
    options: &'a Options,
    pairs: Vec<(PairAnalysis, PairRecord)>,
    tables: Vec<TableOutput>,
    fuzz: Vec<FuzzOutput>,
    checked: Vec<(String, HomologyTable)>,
    text: String,
}

fn verdict_line(v: &VerdictRecord) -> String {
    let status = serde_json::to_value(v.conclusion_status).expect("status serializes");
    format!("{} {}: {}", v.theorem_id, v.instance, status.as_str().unwrap_or("?"))
}

fn dims_line(table: &HomologyTable) -> String {
    table
        .entries
        .values()
        .map(|e| {
            let d: Vec<String> = e.dims.iter().map(|(deg, v)| format!("{v}@{deg}")).collect();
            format!("{}: {}", e.index, if d.is_empty() { "0".into() } else { d.join("+") })
        })
        .collect::<Vec<_>>()
        .join("; ")
}

impl Session<'_> {
    fn pair_index(&mut self, c: &Command) -> Result<usize, CliError> {
        let m_name = &c.args[0].name.text;
        let n_name = &c.args[1].name.text;
        let primes: Vec<String> = c.args[2..].iter().map(|a| a.name.text.clone()).collect();
        if let Some(k) = self
            .pairs
            .iter()
            .position(|(_, r)| &r.report.m == m_name && &r.report.n == n_name && r.declared_primes == primes)
        {
            return Ok(k);
        }
        let (ring, m) = self.env.modules[m_name].clone();
        let (_, n) = self.env.modules[n_name].clone();
        let declared: Vec<PrimeIdeal> = primes.iter().map(|p| self.env.primes[p].1.clone()).collect();
        let ctx = |e| CliError::engine(format!("pair ({m_name}, {n_name})"), c.pos, e);
        let pa = PairAnalysis::new((m_name, &m), (n_name, &n), &declared, self.options.bounds).map_err(ctx)?;
        let report = pa.report().map_err(ctx)?;
        let (_, tor) = pa.q().map_err(ctx)?;
        self.checked.push((format!("Tor({m_name}, {n_name})"), tor.clone()));
        if report.gdim.is_some() {
            let gtor = pa.gtor().map_err(ctx)?;
            self.checked.push((format!("GTor({m_name}, {n_name})"), gtor.clone()));
        }
        let _ = writeln!(self.text, "pair ({m_name}, {n_name}) over {ring}:");
        let t = match &report.t {
            Some(t) => {
                format!("{} ({})", t.value, serde_json::to_value(t.exactness).expect("ok").as_str().unwrap_or(""))
            }
            None => "unavailable".into(),
        };
        let _ = writeln!(
            self.text,
            "  q = {}, s = {}, t = {t}, G-dim {m_name} = {}",
            report.q.value,
            report.s.map_or("unavailable".into(), |s| s.to_string()),
            report.gdim.map_or("unavailable".into(), |g| g.to_string())
        );
        let _ = writeln!(
            self.text,
            "  depth R = {}, depth {m_name} = {}, depth {n_name} = {}",
            report.depths.ring, report.depths.m, report.depths.n
        );
        let mu: Vec<String> = report.mu.iter().map(|(k, v)| format!("{k} {v}")).collect();
        let _ = writeln!(self.text, "  minimal generators: {}", mu.join(", "));
        self.pairs.push((pa, PairRecord { ring, declared_primes: primes, report, verdicts: Vec::new() }));
        Ok(self.pairs.len() - 1)
    }

    fn run(&mut self, c: &Command) -> Result<(), CliError> {
        match c.kind {
            CommandKind::Report => {
                self.pair_index(c)?;
            }
            CommandKind::Verify(id) => self.verify(c, id)?,
            CommandKind::Tor | CommandKind::GTor | CommandKind::Tate => self.table(c)?,
            CommandKind::Fuzz => self.fuzz(c)?,
        }
        Ok(())
    }

    fn verify(&mut self, c: &Command, id: TheoremId) -> Result<(), CliError> {
        let k = self.pair_index(c)?;
        let params: BTreeMap<String, i64> = c.params.iter().map(|p| (p.name.text.clone(), p.value)).collect();
        let v = self.pairs[k].0.verify(id, &params);
        let _ = writeln!(self.text, "verify {}", verdict_line(&v));
        self.pairs[k].1.verdicts.push(v);
        Ok(())
    }

    fn table(&mut self, c: &Command) -> Result<(), CliError> {
        let (m_name, n_name) = (&c.args[0].name.text, &c.args[1].name.text);
        let m = &self.env.modules[m_name].1;
        let n = &self.env.modules[n_name].1;
        let b = self.options.bounds;
        let d_max = c.param("degree").map_or(b.max_degree, |d| d as i32);
        let rendered = Item::Command(c.clone()).to_string();
        let ctx = |e| CliError::engine(rendered.trim_end_matches(';').to_string(), c.pos, e);
        let (table, kind, cert) = match c.kind {
            CommandKind::Tor => {
                let bound = c.param("bound").map_or(b.tor_bound, |v| v.max(0) as usize);
                (tor_table(m, n, bound, d_max).map_err(ctx)?, None, None)
            }
            CommandKind::GTor => {
                let pr = proper_resolution(m).map_err(ctx)?;
                (gtor_table(&pr, n, d_max).map_err(ctx)?, None, None)
            }
            _ => {
                let lo = c.param("lo").map_or(-b.tate_window, |v| v as i32);
                let hi = c.param("hi").map_or(0, |v| v as i32);
                let cr = complete_resolution(m, (lo, hi)).map_err(ctx)?;
                let (table, cert) = tate_tor_table(&cr, n, d_max).map_err(ctx)?;
                (table, Some(cr.kind), Some(cert))
            }
        };
        let label = format!("{}({m_name}, {n_name})", c.kind.keyword());
        let _ = writeln!(self.text, "{label}: {}", dims_line(&table));
        if let Some(cert) = &cert {
            let ex = match cert.extrapolation {
                Extrapolation::Periodic { period } => format!("periodic with period {period}"),
                Extrapolation::None => "no extrapolation".into(),
            };
            let _ = writeln!(self.text, "  window [{}, {}], {ex}", cert.window.0, cert.window.1);
        }
        self.checked.push((label, table.clone()));
        self.tables.push(TableOutput {
            command: rendered,
            m: m_name.clone(),
            n: n_name.clone(),
            table: table.record(),
            complete_resolution: kind,
            tate_certificate: cert,
        });
        Ok(())
    }

    fn fuzz(&mut self, c: &Command) -> Result<(), CliError> {
        let count = c.keyword_arg("count").and_then(|a| a.value).unwrap_or(30) as usize;
        let seed = c.keyword_arg("seed").and_then(|a| a.value).map_or(self.options.seed, |v| v as u64);
        let mut cfg = FuzzConfig::new(count, seed);
        if c.keyword_arg("polynomial").is_some() {
            cfg.family = RingFamily::Polynomial;
        }
        let batch = generate(&cfg).map_err(|e| CliError::engine("fuzz", c.pos, e))?;
        let mut verdicts = Vec::new();
        let mut tally = BTreeMap::new();
        for inst in &batch.instances {
            let pa = PairAnalysis::new(("M", &inst.m), ("N", &inst.n), &[], self.options.bounds)
                .map_err(|e| CliError::engine("fuzz", c.pos, e))?;
            let mut v = pa.verify(TheoremId::T1_2Upper, &BTreeMap::new());
            v.instance = inst.describe();
            let key = serde_json::to_value(v.conclusion_status).expect("ok").as_str().unwrap_or("?").to_string();
            *tally.entry(key).or_insert(0) += 1;
            verdicts.push(v);
        }
        let counts: Vec<String> = tally.iter().map(|(k, v)| format!("{k} {v}")).collect();
        let _ = writeln!(
            self.text,
            "fuzz(count {count}, seed {seed}): {} instances, {} rejected; T1.2-upper {}",
            batch.instances.len(),
            batch.rejected.len(),
            counts.join(", ")
        );
        for v in verdicts.iter().filter(|v| v.conclusion_status == ConclusionStatus::Fails) {
            let _ = writeln!(self.text, "  {}", verdict_line(v));
        }
        self.fuzz.push(FuzzOutput {
            count,
            seed,
            family: cfg.family,
            attempts: batch.attempts,
            rejected: batch.rejected,
            tally,
            verdicts,
        });
        Ok(())
    }

    fn oracle_check(&self) -> OracleCheck {
        let d = self.options.bounds.max_degree;
        let discrepancies: Vec<DiscrepancyRecord> = self
            .checked
            .iter()
            .flat_map(|(label, t)| {
                cross_check(t, d).into_iter().map(|discrepancy| DiscrepancyRecord { table: label.clone(), discrepancy })
            })
            .collect();
        let status = if self.checked.is_empty() {
            "not-run"
        } else if discrepancies.is_empty() {
            "pass"
        } else {
            "fail"
        };
        OracleCheck { status: status.into(), tables_checked: self.checked.len(), degree_bound: d, discrepancies }
    }
}

fn empty_report(options: &Options) -> SessionReport {
    SessionReport {
        ring: None,
        rings: BTreeMap::new(),
        modules: BTreeMap::new(),
        bounds: options.bounds,
        pairs: Vec::new(),
        tables: Vec::new(),
        fuzz: Vec::new(),
        oracle_check: OracleCheck {
            status: "not-run".into(),
            tables_checked: 0,
            degree_bound: options.bounds.max_degree,
            discrepancies: Vec::new(),
        },
        error: None,
    }
}

fn failed(mut report: SessionReport, mut text: String, e: &CliError) -> SessionOutcome {
    let _ = writeln!(text, "error: {e}");
    report.error = Some(e.object());
    SessionOutcome { report, text, exit_code: 1 }
}

/// Runs every command in order. Errors stop the session and are reported in
/// the outcome (exit code 1); a failing verdict gives exit code 2.
pub fn run_session(script: &Script, options: &Options) -> SessionOutcome {
    let mut env = Env::new();
    for item in &script.items {
        if let Err(e) = elaborate(&mut env, item) {
            return failed(empty_report(options), String::new(), &e);
        }
    }
    let mut report = empty_report(options);
    report.rings = env.rings.iter().map(|(k, r)| (k.clone(), r.properties())).collect();
    report.ring = env.first_ring.as_ref().map(|k| env.rings[k].properties());
    report.modules = env
        .modules
        .iter()
        .map(|(k, (ring, m))| (k.clone(), ModuleRecord { ring: ring.clone(), presentation: m.summary() }))
        .collect();
    let mut text = String::new();
    for (name, r) in &env.rings {
        let p = r.properties();
        let mut flags = Vec::new();
        for (on, label) in [
            (p.regular, "regular"),
            (p.hypersurface, "hypersurface"),
            (p.gorenstein, "Gorenstein"),
            (p.cohen_macaulay, "Cohen-Macaulay"),
            (p.golod_declared, "Golod (declared)"),
        ] {
            if on {
                flags.push(label);
            }
        }
        let _ = writeln!(
            text,
            "ring {name} = F_{}[{}]/({}): dim {}, depth {}; {}",
            p.characteristic,
            p.variables.join(","),
            p.ideal.join(", "),
            p.krull_dim,
            p.depth,
            flags.join(", ")
        );
    }
    let mut session =
        Session { env, options, pairs: Vec::new(), tables: Vec::new(), fuzz: Vec::new(), checked: Vec::new(), text };
    let mut error = None;
    for item in &script.items {
        if let Item::Command(c) = item {
            if let Err(e) = session.run(c) {
                error = Some(e);
                break;
            }
        }
    }
    report.oracle_check = session.oracle_check();
    let _ = writeln!(
        session.text,
        "oracle check: {} ({} tables, {} discrepancies)",
        report.oracle_check.status,
        report.oracle_check.tables_checked,
        report.oracle_check.discrepancies.len()
    );
    report.pairs = session.pairs.into_iter().map(|(_, r)| r).collect();
    report.tables = session.tables;
    report.fuzz = session.fuzz;
    if let Some(e) = error {
        return failed(report, session.text, &e);
    }
    let mut outcome = SessionOutcome { report, text: session.text, exit_code: 0 };
    let fails = outcome.verdicts().any(|v| v.conclusion_status == ConclusionStatus::Fails);
    let oracle_failed = outcome.report.oracle_check.status == "fail";
    if fails || oracle_failed {
        outcome.exit_code = 2;
    }
    outcome
}

/// Parses and runs a script; parse errors become an error outcome.
pub fn run_source(text: &str, options: &Options) -> SessionOutcome {
    match parse_script(text) {
        Ok(script) => run_session(&script, options),
        Err(e) => failed(empty_report(options), String::new(), &e),
    }
}
