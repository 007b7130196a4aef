//! The Koszul complex `M (x) Lambda^j V` and graded `Tor^R(M, kH)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::module::GradedModule;
use crate::error::{Error, Result};
use crate::exactnum::matrix::{FFMatrix, Subquotient};
use crate::exec::Exec;
use crate::reps::rep::{subsets, Rep};

/// `K_{j,n} = M_{n-j} (x) Lambda^j V` with basis `(m_k, v_S)` at index
/// `k * C(d, j) + index(S)`, subsets in lexicographic order.
pub struct KoszulComplex<'a> {
    module: &'a GradedModule,
    subsets: Vec<Vec<Vec<usize>>>,
    subset_index: Vec<HashMap<Vec<usize>, usize>>,
}

impl<'a> KoszulComplex<'a> {
    pub fn new(module: &'a GradedModule) -> Self {
        let d = module.model().d();
        let subsets: Vec<_> = (0..=d).map(|j| subsets(d, j)).collect();
        let subset_index =
            subsets.iter().map(|ss| ss.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        KoszulComplex { module, subsets, subset_index }
    }

    pub fn length(&self) -> usize {
        self.module.model().d()
    }

    pub fn term_dim(&self, j: usize, n: i64) -> usize {
        self.module.dim(n - j as i64) * self.subsets[j].len()
    }

    /// `phi_j : K_{j,n} -> K_{j-1,n}`,
    /// `m (x) v_{s_1} ^ ... ^ v_{s_j} -> sum_t (-1)^(t+1) m v_{s_t} (x) (s_t omitted)`.
    /// Requires `1 <= j <= d` and `n - j + 1 <= top`.
    pub fn differential(&self, j: usize, n: i64) -> FFMatrix {
        let field = self.module.field();
        let src = n - j as i64;
        let (rows, cols) = (self.term_dim(j, n), self.term_dim(j - 1, n));
        let mut out = FFMatrix::zeros(rows, cols);
        if rows == 0 || cols == 0 {
            return out;
        }
        let width_src = self.subsets[j].len();
        let width_dst = self.subsets[j - 1].len();
        for (si, set) in self.subsets[j].iter().enumerate() {
            for (t, &var) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(t);
                let ri = self.subset_index[j - 1][&rest];
                let map = self.module.var_map(src, var).expect("degree inside the window");
                let negate = t % 2 == 1;
                for k in 0..self.module.dim(src) {
                    let row = out.row_mut(k * width_src + si);
                    for (l, &a) in map.row(k).iter().enumerate() {
                        if a != 0 {
                            let idx = l * width_dst + ri;
                            let a = if negate { field.neg_raw(a) } else { a };
                            row[idx] = field.add_raw(row[idx], a);
                        }
                    }
                }
            }
        }
        out
    }

    /// Diagonal action of a group element on `K_{j,n}`.
    pub fn group_action(&self, j: usize, n: i64, g: usize) -> FFMatrix {
        let model = self.module.model();
        match self.module.element_matrix(n - j as i64, g) {
            Some(mat) => mat.kron(model.field(), model.exterior_powers()[j].matrix(g)),
            None => FFMatrix::zeros(0, 0),
        }
    }
}

/// `Tor_j` in internal degree `n`, with its `H`-action.
#[derive(Debug, Clone)]
pub struct TorPiece {
    pub j: usize,
    pub degree: i64,
    pub rep: Rep,
}

/// Evidence that the computed homology is the whole of `Tor`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StabilizationCertificate {
    pub top: i64,
    /// Every `Tor_{j,n}` with `top - window < n <= top` vanishes.
    pub window: i64,
    pub last_nonzero_degree: Option<i64>,
    /// `phi_{j-1} phi_j = 0` held in every degree.
    pub square_zero: bool,
    /// Every differential commuted with the group action.
    pub equivariant: bool,
}

#[derive(Debug, Clone)]
pub struct TorTable {
    pub d: usize,
    pub lowest: i64,
    pub top: i64,
    /// Nonzero pieces keyed by `(j, n)`.
    pub pieces: BTreeMap<(usize, i64), TorPiece>,
    pub certificate: StabilizationCertificate,
}

impl TorTable {
    pub fn dim(&self, j: usize, n: i64) -> usize {
        self.pieces.get(&(j, n)).map_or(0, |p| p.rep.dim())
    }

    pub fn pieces_of(&self, j: usize) -> impl Iterator<Item = &TorPiece> {
        self.pieces.range((j, i64::MIN)..=(j, i64::MAX)).map(|(_, p)| p)
    }
}

/// Stabilization window `max(m, 4)` plus the relative generation degree.
pub fn stabilization_window(module: &GradedModule) -> i64 {
    let m = module.model().m() as i64;
    m.max(4) + (module.max_degree() - module.lowest_degree())
}

fn homology_in_degree(cx: &KoszulComplex<'_>, n: i64) -> Result<(Vec<TorPiece>, bool)> {
    let module = cx.module;
    let model = module.model();
    let field = model.field();
    let d = cx.length();
    let group = model.group();
    // phis[j] for 1 <= j <= d.
    let phis: Vec<Option<FFMatrix>> = (0..=d + 1).map(|j| (j >= 1 && j <= d).then(|| cx.differential(j, n))).collect();
    for j in 2..=d {
        let (a, b) = (phis[j].as_ref().unwrap(), phis[j - 1].as_ref().unwrap());
        if a.rows() > 0 && b.cols() > 0 && !a.mul(field, b).is_zero() {
            return Err(Error::Internal(format!("Koszul differentials do not compose to zero in degree {n}")));
        }
    }
    let ranks: Vec<usize> = phis.iter().map(|p| p.as_ref().map_or(0, |p| p.rank(field))).collect();
    let mut equivariant = true;
    let mut out = Vec::new();
    for j in 0..=d {
        let dim_k = cx.term_dim(j, n);
        let h = dim_k - ranks[j] - ranks[j + 1];
        if dim_k == 0 {
            continue;
        }
        if let Some(phi) = &phis[j] {
            for &s in group.generator_indices() {
                let lhs = cx.group_action(j, n, s).mul(field, phi);
                let rhs = phi.mul(field, &cx.group_action(j - 1, n, s));
                if phi.cols() > 0 && lhs != rhs {
                    equivariant = false;
                }
            }
        }
        if h == 0 {
            continue;
        }
        let cycles = match &phis[j] {
            Some(phi) if phi.cols() > 0 => phi.left_kernel(field),
            _ => FFMatrix::identity(dim_k).row_vecs(),
        };
        let boundaries = phis[j + 1].as_ref().map_or_else(Vec::new, FFMatrix::row_vecs);
        let sq = Subquotient::new(field, dim_k, cycles, boundaries);
        if sq.dim() != h {
            return Err(Error::Internal(format!("rank count {h} disagrees with homology basis {}", sq.dim())));
        }
        let mut gens = Vec::new();
        for &s in group.generator_indices() {
            let act = cx.group_action(j, n, s);
            let mut mat = FFMatrix::zeros(h, h);
            for (r, z) in sq.basis().iter().enumerate() {
                mat.row_mut(r).copy_from_slice(&sq.coords(field, &act.vec_mul(field, z))?);
            }
            gens.push(mat);
        }
        let rep = Rep::new(Arc::clone(group), field.clone(), h, gens)
            .map_err(|e| Error::Internal(format!("group action on Tor_{j} in degree {n}: {e}")))?;
        out.push(TorPiece { j, degree: n, rep });
    }
    Ok((out, equivariant))
}

/// `Tor_j^R(M, kH)` in every internal degree of the window, with a
/// stabilization certificate; errors with `NotStabilized` when homology
/// appears within `stabilization_window` of the top.
pub fn graded_tor(module: &GradedModule, exec: Exec) -> Result<TorTable> {
    let cx = KoszulComplex::new(module);
    let (lowest, top) = (module.lowest_degree(), module.top_degree());
    let window = stabilization_window(module);
    if top - window < module.max_degree() {
        return Err(Error::WindowTooSmall { degree: module.max_degree() + window, top });
    }
    let count = (top - lowest + 1) as usize;
    let per_degree = exec.try_map_range(count, |k| homology_in_degree(&cx, lowest + k as i64))?;
    let mut pieces = BTreeMap::new();
    let mut equivariant = true;
    for (list, eq) in per_degree {
        equivariant &= eq;
        for p in list {
            pieces.insert((p.j, p.degree), p);
        }
    }
    let last_nonzero_degree = pieces.keys().map(|&(_, n)| n).max();
    if let Some(last) = last_nonzero_degree {
        if last > top - window {
            return Err(Error::NotStabilized(format!(
                "Tor is nonzero in degree {last}, inside the last {window} degrees before {top}"
            )));
        }
    }
    if !equivariant {
        return Err(Error::Internal("a Koszul differential is not equivariant".into()));
    }
    let certificate = StabilizationCertificate { top, window, last_nonzero_degree, square_zero: true, equivariant };
    Ok(TorTable { d: cx.length(), lowest, top, pieces, certificate })
}
