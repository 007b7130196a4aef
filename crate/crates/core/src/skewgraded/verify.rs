//! End-to-end analysis of a module and the checks built on it.

use std::sync::Arc;

use serde::Serialize;

use super::koszul::{graded_tor, StabilizationCertificate, TorTable};
use super::module::GradedModule;
use super::presentation::Presentation;
use super::series::{
    degree_values, promote, rational_from_series, rho_from_tor, series_from_values, tor_euler_series, Settings,
};
use crate::error::{Error, Result};
use crate::exactnum::cyclo::{cyclo_rank, CycloNum};
use crate::exactnum::laurent::LaurentPoly;
use crate::exactnum::ratfunc::{eval_at_one, RatFuncT};
use crate::reps::classfn::brauer_value;
use crate::reps::model::ModelGN;

/// Everything computed for one module at the orbit representatives.
#[derive(Debug, Clone)]
pub struct ModuleAnalysis {
    pub representatives: Vec<usize>,
    pub guard: u32,
    pub dimension: i64,
    pub tor: TorTable,
    /// Truncated `zeta_M(g)` per representative.
    pub series: Vec<LaurentPoly>,
    /// `zeta_M(g)` over `(1 - t^m)^{dimension}`.
    pub zeta: Vec<RatFuncT>,
    pub psi: Vec<LaurentPoly>,
    /// `rho_M(g)` from `Tor`.
    pub rho: Vec<CycloNum>,
    /// `sum_j (-1)^j zeta_{Tor_j}(g)`.
    pub tor_series: Vec<LaurentPoly>,
    /// Degrees where `sum_j (-1)^j phi` of the Koszul terms and of `Tor` differ.
    pub euler_defects: Vec<i64>,
}

/// Builds the module for a presentation, choosing the cutoff from `settings`.
pub fn build_module(model: Arc<ModelGN>, pres: &Presentation, settings: &Settings) -> Result<GradedModule> {
    let lowest = pres.lowest_degree().unwrap_or(0);
    let max_degree = pres.max_degree().unwrap_or(0);
    let top = settings.top(&model, lowest, max_degree);
    GradedModule::from_presentation(model, pres, top)
}

impl ModuleAnalysis {
    pub fn run(module: &GradedModule, settings: &Settings) -> Result<Self> {
        let model = module.model();
        let exec = settings.exec;
        let guard = settings.guard(model);
        let representatives = model.orbits().representatives();
        let m = model.m();
        let (lowest, top) = (module.lowest_degree(), module.top_degree());
        let tor = graded_tor(module, exec)?;

        let values = representatives.iter().map(|&g| degree_values(module, g, exec)).collect::<Result<Vec<_>>>()?;
        let series: Vec<LaurentPoly> = values.iter().map(|v| series_from_values(m, lowest, v.clone())).collect();
        let fits = series
            .iter()
            .map(|s| rational_from_series(s, top, m, model.d() as u32, guard))
            .collect::<Result<Vec<_>>>()?;
        let dimension = fits[0].pole_order_at_one();
        let zeta = fits.into_iter().map(|f| promote(f, dimension)).collect::<Result<Vec<_>>>()?;
        let psi = representatives.iter().map(|&g| model.psi(g)).collect::<Result<Vec<_>>>()?;
        let rho = representatives.iter().map(|&g| rho_from_tor(model, &tor, g)).collect::<Result<Vec<_>>>()?;
        let tor_series =
            representatives.iter().map(|&g| tor_euler_series(model, &tor, g)).collect::<Result<Vec<_>>>()?;

        // Degreewise Euler characteristic of the Koszul complex against Tor.
        let mut euler_defects = Vec::new();
        let lambdas = model.exterior_powers();
        for (r, &g) in representatives.iter().enumerate() {
            let lam_vals = lambdas.iter().map(|l| brauer_value(model.context(), l, g)).collect::<Result<Vec<_>>>()?;
            for n in lowest..=top {
                let mut acc = CycloNum::zero(m);
                for (j, lv) in lam_vals.iter().enumerate() {
                    let a = n - j as i64;
                    if a < lowest {
                        break;
                    }
                    let term = values[r][(a - lowest) as usize].mul(lv);
                    acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                if acc != tor_series[r].coeff(n) && !euler_defects.contains(&n) {
                    euler_defects.push(n);
                }
            }
        }
        euler_defects.sort_unstable();
        Ok(ModuleAnalysis { representatives, guard, dimension, tor, series, zeta, psi, rho, tor_series, euler_defects })
    }

    pub fn certificate(&self) -> &StabilizationCertificate {
        &self.tor.certificate
    }

    fn position(&self, g: usize) -> Result<usize> {
        self.representatives
            .iter()
            .position(|&r| r == g)
            .ok_or_else(|| Error::InvalidInput(format!("element {g} is not an orbit representative")))
    }

    /// `(sum_j (-1)^j zeta_{Tor_j}(g)) (1 - t^m)^{d(M)}` and `u_g(t) Psi(g)`.
    pub fn key_formula_sides(&self, g: usize) -> Result<(LaurentPoly, LaurentPoly)> {
        let r = self.position(g)?;
        let zeta = &self.zeta[r];
        let factor = LaurentPoly::one_minus_t_pow(zeta.num.conductor(), zeta.m as i64).pow(zeta.den_exp);
        Ok((self.tor_series[r].mul(&factor), zeta.num.mul(&self.psi[r])))
    }

    /// `rho` from `Tor` and from `(zeta_M(g) Psi(g))(1)`.
    pub fn main_formula_sides(&self, g: usize) -> Result<(CycloNum, CycloNum)> {
        let r = self.position(g)?;
        Ok((self.rho[r].clone(), eval_at_one(&self.zeta[r], &self.psi[r])?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub element: usize,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// Key identity at every orbit representative.
pub fn verify_key_formula(analysis: &ModuleAnalysis) -> Result<Vec<FormulaCheck>> {
    analysis
        .representatives
        .iter()
        .map(|&g| {
            let (lhs, rhs) = analysis.key_formula_sides(g)?;
            Ok(FormulaCheck { element: g, holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() })
        })
        .collect()
}

/// Main formula at every orbit representative.
pub fn verify_main_formula(analysis: &ModuleAnalysis) -> Result<Vec<FormulaCheck>> {
    analysis
        .representatives
        .iter()
        .map(|&g| {
            let (lhs, rhs) = analysis.main_formula_sides(g)?;
            Ok(FormulaCheck { element: g, holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingEntry {
    pub element: usize,
    pub centralizer_dim: usize,
    pub rho: String,
    /// Whether vanishing is required, i.e. `dim C_V(g) > d(M)`.
    pub required: bool,
    pub holds: bool,
}

/// `rho_M(g) = 0` whenever the centralizer dimension exceeds `d(M)`.
pub fn vanishing_check(model: &ModelGN, analysis: &ModuleAnalysis) -> Result<Vec<VanishingEntry>> {
    analysis
        .representatives
        .iter()
        .zip(&analysis.rho)
        .map(|(&g, rho)| {
            let centralizer_dim = model.centralizer_dim(g)?;
            let required = centralizer_dim as i64 > analysis.dimension;
            Ok(VanishingEntry {
                element: g,
                centralizer_dim,
                rho: rho.to_string(),
                required,
                holds: !required || rho.is_zero(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub i: i64,
    pub modules: usize,
    pub rank: usize,
    pub bound: usize,
    pub holds: bool,
    /// Orbit representatives counted by the bound, listed when it is attained.
    pub witnesses: Vec<usize>,
}

/// Rank over `Q(zeta_m)` of the `rho` vectors of modules with `d(M) <= i`
/// against the number of orbits with centralizer dimension `<= i`.
pub fn rank_harness(model: &ModelGN, analyses: &[ModuleAnalysis], i: i64) -> Result<RankReport> {
    for a in analyses {
        if a.dimension > i {
            return Err(Error::DimensionTooLarge { dim: a.dimension, i });
        }
    }
    let rows: Vec<Vec<CycloNum>> = analyses.iter().map(|a| a.rho.clone()).collect();
    let rank = cyclo_rank(&rows);
    let filt = model.s_filtration(i)?;
    let holds = rank <= filt.count;
    let witnesses = if rank == filt.count { filt.representatives.clone() } else { Vec::new() };
    Ok(RankReport { i, modules: analyses.len(), rank, bound: filt.count, holds, witnesses })
}
