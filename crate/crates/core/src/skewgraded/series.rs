//! Graded Brauer characters as series in `t`, their rational forms, the
//! Krull dimension and the Euler characteristic `rho`.

use super::koszul::{graded_tor, TorTable};
use super::module::GradedModule;
use crate::error::{Error, Result};
use crate::exactnum::cyclo::CycloNum;
use crate::exactnum::laurent::LaurentPoly;
use crate::exactnum::ratfunc::{eval_at_one, reconstruct_rational, RatFuncT};
use crate::exec::Exec;
use crate::reps::classfn::brauer_value;
use crate::reps::model::ModelGN;

/// Cutoff, guard and execution strategy for the series pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Settings {
    /// Absolute top degree; `None` picks [`default_cutoff`].
    pub cutoff: Option<i64>,
    /// Guard window for rational reconstruction; `None` picks [`default_guard`].
    pub guard: Option<u32>,
    pub exec: Exec,
}

/// `max(m, 2) + 2`.
pub fn default_guard(model: &ModelGN) -> u32 {
    model.m().max(2) as u32 + 2
}

/// Cutoff relative to the lowest generator degree, large enough for a
/// doubly guarded reconstruction and for the `Tor` vanishing window:
/// `max(m d + maxdeg + 2 guard, maxdeg + d + max(m, 4) + maxdeg)`.
pub fn default_cutoff(model: &ModelGN, relative_max_degree: i64, guard: u32) -> i64 {
    let m = model.m() as i64;
    let d = model.d() as i64;
    let window = m.max(4) + relative_max_degree;
    (m * d + relative_max_degree + 2 * guard as i64).max(relative_max_degree + d + window)
}

impl Settings {
    pub fn guard(&self, model: &ModelGN) -> u32 {
        self.guard.unwrap_or_else(|| default_guard(model))
    }

    /// Absolute top degree for a presentation spanning `lowest..=max_degree`.
    pub fn top(&self, model: &ModelGN, lowest: i64, max_degree: i64) -> i64 {
        self.cutoff.unwrap_or_else(|| lowest + default_cutoff(model, max_degree - lowest, self.guard(model)))
    }
}

/// Brauer values of `g` on `M_n` for every degree of the window.
pub fn degree_values(module: &GradedModule, g: usize, exec: Exec) -> Result<Vec<CycloNum>> {
    let ctx = module.model().context();
    let lowest = module.lowest_degree();
    let count = (module.top_degree() - lowest + 1) as usize;
    exec.try_map_range(count, |k| brauer_value(ctx, module.piece(lowest + k as i64).expect("in window"), g))
}

/// `zeta_M(g) = sum_n phi_{M_n}(g) t^n` through the top of the window.
pub fn zeta_series(module: &GradedModule, g: usize, exec: Exec) -> Result<LaurentPoly> {
    let vals = degree_values(module, g, exec)?;
    Ok(series_from_values(module.model().m(), module.lowest_degree(), vals))
}

pub(crate) fn series_from_values(m: u64, lowest: i64, vals: Vec<CycloNum>) -> LaurentPoly {
    LaurentPoly::from_terms(m, vals.into_iter().enumerate().map(|(k, v)| (lowest + k as i64, v)))
}

/// Rational form of a truncated series with period `m`: fitted below
/// `top - guard` and then required to reproduce the remaining `guard`
/// coefficients, so `2 guard` coefficients are checked in total.
pub fn rational_from_series(series: &LaurentPoly, top: i64, m: u64, delta_max: u32, guard: u32) -> Result<RatFuncT> {
    let fit = reconstruct_rational(series, top - guard as i64, m, delta_max, guard)?;
    if fit.expand(top) != series.truncate(top) {
        return Err(Error::InsufficientData(format!(
            "rational fit below degree {} does not reproduce the series through {top}",
            top - guard as i64
        )));
    }
    Ok(fit)
}

/// Reduced rational form of `zeta_M(g)`.
pub fn zeta_rational_reduced(module: &GradedModule, g: usize, guard: u32, exec: Exec) -> Result<RatFuncT> {
    let model = module.model();
    let series = zeta_series(module, g, exec)?;
    rational_from_series(&series, module.top_degree(), model.m(), model.d() as u32, guard)
}

/// Krull dimension: pole order at `t = 1` of the Poincare series.
pub fn dimension(module: &GradedModule, guard: u32, exec: Exec) -> Result<i64> {
    Ok(zeta_rational_reduced(module, 0, guard, exec)?.pole_order_at_one())
}

/// `zeta_M(g)` written over `(1 - t^m)^{d(M)}`.
pub fn zeta_rational(module: &GradedModule, g: usize, guard: u32, exec: Exec) -> Result<RatFuncT> {
    let dim = dimension(module, guard, exec)?;
    promote(zeta_rational_reduced(module, g, guard, exec)?, dim)
}

pub(crate) fn promote(f: RatFuncT, dim: i64) -> Result<RatFuncT> {
    let reduced = f.reduced();
    if i64::from(reduced.den_exp) > dim {
        return Err(Error::Internal(format!(
            "denominator exponent {} exceeds the module dimension {dim}",
            reduced.den_exp
        )));
    }
    reduced.with_den_exp(dim.max(0) as u32)
}

/// `rho_M(g) = sum_j (-1)^j phi_{Tor_j}(g)` from a computed `Tor` table.
pub fn rho_from_tor(model: &ModelGN, tor: &TorTable, g: usize) -> Result<CycloNum> {
    let mut acc = CycloNum::zero(model.m());
    for piece in tor.pieces.values() {
        let v = brauer_value(model.context(), &piece.rep, g)?;
        acc = if piece.j % 2 == 0 { acc.add(&v) } else { acc.sub(&v) };
    }
    Ok(acc)
}

/// `sum_j (-1)^j zeta_{Tor_j}(g)` as a Laurent polynomial.
pub fn tor_euler_series(model: &ModelGN, tor: &TorTable, g: usize) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero(model.m());
    for piece in tor.pieces.values() {
        let v = brauer_value(model.context(), &piece.rep, g)?;
        out.add_term(piece.degree, &if piece.j % 2 == 0 { v } else { v.neg() });
    }
    Ok(out)
}

/// `rho_M(g)` straight from the definition.
pub fn rho(module: &GradedModule, g: usize, exec: Exec) -> Result<CycloNum> {
    let tor = graded_tor(module, exec)?;
    rho_from_tor(module.model(), &tor, g)
}

/// `rho_M(g)` from the main formula `(zeta_M(g) Psi(g))(1)`.
pub fn rho_via_formula(module: &GradedModule, g: usize, guard: u32, exec: Exec) -> Result<CycloNum> {
    let zeta = zeta_rational(module, g, guard, exec)?;
    eval_at_one(&zeta, &module.model().psi(g)?)
}
