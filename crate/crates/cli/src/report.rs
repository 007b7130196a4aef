//! Serializable command outputs and their plain-text tables.

use std::fmt::Write as _;

use serde::Serialize;

use iwachar::exactnum::{CycloNum, LaurentPoly, RatFuncT};
use iwachar::groups::orbits::BlockReport;
use iwachar::groups::HallReport;
use iwachar::io::ExampleDoc;
use iwachar::skewgraded::{FormulaCheck, RankReport, StabilizationCertificate, VanishingEntry};

use crate::corpus::CorpusReport;

pub trait Report: Serialize {
    fn table(&self) -> String;
}

/// Right-pads every column to its widest cell.
fn grid(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<String>, out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.iter().map(|h| h.to_string()).collect(), &mut out);
    line(widths.iter().map(|w| "-".repeat(*w)).collect(), &mut out);
    for row in rows {
        line(row, &mut out);
    }
    out
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

#[derive(Debug, Serialize)]
pub struct OrbitsReport {
    pub group_order: usize,
    pub p: u64,
    pub q: u64,
    pub m: u64,
    pub orbit_count: usize,
    pub blocks: Vec<BlockReport>,
}

impl Report for OrbitsReport {
    fn table(&self) -> String {
        let mut out = format!(
            "|G| = {}, p = {}, q = {}, m = {}: {} orbits\n",
            self.group_order, self.p, self.q, self.m, self.orbit_count
        );
        let rows = self
            .blocks
            .iter()
            .map(|b| {
                vec![b.block.to_string(), b.representative_cycles.clone(), b.order.to_string(), b.size.to_string()]
            })
            .collect();
        out.push_str(&grid(&["block", "representative", "order", "size"], rows));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ValueRow {
    pub block: usize,
    pub representative: usize,
    pub cycles: String,
    pub value: CycloNum,
}

#[derive(Debug, Serialize)]
pub struct BrauerReport {
    pub dim: usize,
    pub p: u64,
    pub q: u64,
    pub m: u64,
    pub values: Vec<ValueRow>,
}

impl Report for BrauerReport {
    fn table(&self) -> String {
        let mut out = format!("dim {}, p = {}, q = {}, m = {}\n", self.dim, self.p, self.q, self.m);
        let rows =
            self.values.iter().map(|v| vec![v.block.to_string(), v.cycles.clone(), v.value.to_string()]).collect();
        out.push_str(&grid(&["block", "representative", "value"], rows));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct PsiRow {
    pub block: usize,
    pub representative: usize,
    pub cycles: String,
    pub centralizer_dim: usize,
    pub psi: LaurentPoly,
}

#[derive(Debug, Serialize)]
pub struct PsiReport {
    pub d: usize,
    pub m: u64,
    pub rows: Vec<PsiRow>,
}

impl Report for PsiReport {
    fn table(&self) -> String {
        let mut out = format!("d = {}, m = {}\n", self.d, self.m);
        let rows = self
            .rows
            .iter()
            .map(|r| vec![r.block.to_string(), r.cycles.clone(), r.centralizer_dim.to_string(), r.psi.to_string()])
            .collect();
        out.push_str(&grid(&["block", "representative", "dim C_V(g)", "Psi(g)"], rows));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct TorRow {
    pub j: usize,
    pub degree: i64,
    pub dim: usize,
    /// Brauer values at the orbit representatives.
    pub character: Vec<CycloNum>,
}

#[derive(Debug, Serialize)]
pub struct TorReport {
    pub module: String,
    pub lowest: i64,
    pub top: i64,
    pub representatives: Vec<usize>,
    pub certificate: StabilizationCertificate,
    pub pieces: Vec<TorRow>,
}

impl Report for TorReport {
    fn table(&self) -> String {
        let c = &self.certificate;
        let mut out = format!(
            "{}: degrees {}..={}, zero window {}, square zero {}, equivariant {}\n",
            self.module, self.lowest, self.top, c.window, c.square_zero, c.equivariant
        );
        let rows = self
            .pieces
            .iter()
            .map(|p| {
                let chars: Vec<String> = p.character.iter().map(ToString::to_string).collect();
                vec![p.j.to_string(), p.degree.to_string(), p.dim.to_string(), chars.join(" | ")]
            })
            .collect();
        out.push_str(&grid(&["j", "degree", "dim", "character"], rows));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ZetaRow {
    pub representative: usize,
    pub cycles: String,
    pub zeta: RatFuncT,
}

#[derive(Debug, Serialize)]
pub struct ZetaReport {
    pub module: String,
    pub dimension: i64,
    pub guard: u32,
    pub top: i64,
    pub rows: Vec<ZetaRow>,
}

impl Report for ZetaReport {
    fn table(&self) -> String {
        let mut out =
            format!("{}: dimension {}, guard {}, top {}\n", self.module, self.dimension, self.guard, self.top);
        let rows = self.rows.iter().map(|r| vec![r.cycles.clone(), r.zeta.to_string()]).collect();
        out.push_str(&grid(&["representative", "zeta"], rows));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct RhoRow {
    pub representative: usize,
    pub cycles: String,
    pub centralizer_dim: usize,
    pub rho: CycloNum,
}

#[derive(Debug, Serialize)]
pub struct RhoReport {
    pub module: String,
    pub dimension: i64,
    pub rows: Vec<RhoRow>,
}

impl Report for RhoReport {
    fn table(&self) -> String {
        let mut out = format!("{}: dimension {}\n", self.module, self.dimension);
        let rows = self
            .rows
            .iter()
            .map(|r| vec![r.cycles.clone(), r.centralizer_dim.to_string(), r.rho.to_string()])
            .collect();
        out.push_str(&grid(&["representative", "dim C_V(g)", "rho"], rows));
        out
    }
}

/// Rows a module-level verdict can hold.
pub trait Checked {
    fn holds(&self) -> bool;
    fn cells(&self) -> Vec<String>;
}

impl Checked for FormulaCheck {
    fn holds(&self) -> bool {
        self.holds
    }
    fn cells(&self) -> Vec<String> {
        vec![self.element.to_string(), self.lhs.clone(), self.rhs.clone(), verdict(self.holds).into()]
    }
}

impl Checked for VanishingEntry {
    fn holds(&self) -> bool {
        self.holds
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.element.to_string(),
            self.centralizer_dim.to_string(),
            self.required.to_string(),
            self.rho.clone(),
            verdict(self.holds).into(),
        ]
    }
}

#[derive(Debug, Serialize)]
pub struct ModuleVerdict<T> {
    pub module: String,
    pub dimension: i64,
    pub passed: bool,
    pub entries: Vec<T>,
}

#[derive(Debug, Serialize)]
pub struct Verdict<T> {
    pub which: &'static str,
    pub passed: bool,
    pub modules: Vec<ModuleVerdict<T>>,
}

impl<T: Checked> Verdict<T> {
    pub fn new(which: &'static str, modules: Vec<ModuleVerdict<T>>) -> Self {
        Verdict { which, passed: modules.iter().all(|m| m.passed), modules }
    }
}

impl<T: Checked> ModuleVerdict<T> {
    pub fn new(module: String, dimension: i64, entries: Vec<T>) -> Self {
        ModuleVerdict { module, dimension, passed: entries.iter().all(Checked::holds), entries }
    }
}

impl<T: Checked + Serialize> Report for Verdict<T> {
    fn table(&self) -> String {
        let header: &[&str] = if self.which == "vanishing" {
            &["element", "dim C_V(g)", "required", "rho", "verdict"]
        } else {
            &["element", "lhs", "rhs", "verdict"]
        };
        let mut out = format!("{}: {}\n", self.which, verdict(self.passed));
        for m in &self.modules {
            let _ = writeln!(out, "\n{} (dimension {}): {}", m.module, m.dimension, verdict(m.passed));
            out.push_str(&grid(header, m.entries.iter().map(Checked::cells).collect()));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct RankOutput {
    pub modules: Vec<String>,
    /// Catalog modules left out because their dimension exceeds `i`.
    pub skipped: Vec<String>,
    pub report: RankReport,
}

impl Report for RankOutput {
    fn table(&self) -> String {
        let r = &self.report;
        format!(
            "i = {}: rank {} over {} modules, bound {}: {}\nmodules: {}\nskipped: {}\n",
            r.i,
            r.rank,
            r.modules,
            r.bound,
            verdict(r.holds),
            self.modules.join(", "),
            if self.skipped.is_empty() { "none".to_string() } else { self.skipped.join(", ") }
        )
    }
}

#[derive(Debug, Serialize)]
pub struct HallEntry {
    pub group: String,
    pub subgroup: Vec<usize>,
    pub passed: bool,
    pub report: Option<HallReport>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct HallOutput {
    pub passed: bool,
    pub entries: Vec<HallEntry>,
}

impl Report for HallOutput {
    fn table(&self) -> String {
        let mut out = format!("hall: {} over {} pairs\n", verdict(self.passed), self.entries.len());
        for e in &self.entries {
            let _ = writeln!(out, "\n{} with U of order {}: {}", e.group, e.subgroup.len(), verdict(e.passed));
            if let Some(r) = &e.report {
                let rows = r
                    .pairs
                    .iter()
                    .map(|p| {
                        vec![
                            p.block.to_string(),
                            p.size.to_string(),
                            p.quotient_block.to_string(),
                            p.quotient_size.to_string(),
                        ]
                    })
                    .collect();
                out.push_str(&grid(&["block", "size", "quotient block", "quotient size"], rows));
            }
            if let Some(err) = &e.error {
                let _ = writeln!(out, "{err}");
            }
        }
        out
    }
}

impl Report for CorpusReport {
    fn table(&self) -> String {
        let mut out = format!("seed {}: {} instances, {}\n", self.seed, self.instances, verdict(self.passed));
        let rows = self
            .checks
            .iter()
            .map(|c| vec![c.check.to_string(), c.instances.to_string(), c.failures.len().to_string()])
            .collect();
        out.push_str(&grid(&["check", "instances", "failures"], rows));
        for c in &self.checks {
            for f in &c.failures {
                let _ = writeln!(out, "{}: {f}", c.check);
            }
        }
        out
    }
}

impl Report for ExampleDoc {
    fn table(&self) -> String {
        let mut out = format!(
            "{}: |H| generators {}, field GF({}^{}), dim V = {}\n",
            self.name,
            self.model.group.generators.len(),
            self.model.field.p,
            self.model.field.s,
            self.model.dim.unwrap_or_else(|| self.model.matrices.first().map_or(0, Vec::len))
        );
        let rows = self
            .modules
            .iter()
            .map(|m| {
                let degrees: Vec<String> = m.module.generators.iter().map(|g| g.degree.to_string()).collect();
                vec![m.name.clone(), degrees.join(","), m.module.relations.len().to_string()]
            })
            .collect();
        out.push_str(&grid(&["module", "generator degrees", "relations"], rows));
        out
    }
}
