//! Named models with module catalogs, shared by tests, benches and the CLI.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::field::{make_field, FFElem, FiniteField};
use crate::exactnum::matrix::FFMatrix;
use crate::exec::Exec;
use crate::groups::catalog::{cyclic as cyclic_group, dihedral, direct_product, symmetric};
use crate::groups::finite::FiniteGroup;
use crate::groups::orbits::galois_orbits;
use crate::reps::classfn::{brauer_character, char_span_rank};
use crate::reps::context::BrauerContext;
use crate::reps::model::ModelGN;
use crate::reps::rep::Rep;
use crate::skewgraded::module::presentations;
use crate::skewgraded::presentation::Presentation;

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation: Presentation,
}

/// A model together with a catalog of graded modules over it.
#[derive(Debug, Clone)]
pub struct Example {
    pub name: String,
    pub model: Arc<ModelGN>,
    pub catalog: Vec<CatalogEntry>,
}

impl Example {
    pub fn entry(&self, name: &str) -> Result<&Presentation> {
        self.catalog
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.presentation)
            .ok_or_else(|| Error::InvalidInput(format!("no module named {name} in {}", self.name)))
    }
}

/// `GF(q)` for a prime power `q = p^s`.
pub fn field_of_order(p: u64, q: u64) -> Result<FiniteField> {
    let mut s = 0;
    let mut acc = 1u64;
    while acc < q {
        acc = acc.checked_mul(p).ok_or(Error::BadCharacteristic { p, q })?;
        s += 1;
    }
    if acc != q || s == 0 {
        return Err(Error::BadCharacteristic { p, q });
    }
    make_field(p, s)
}

fn entry(name: &str, presentation: Presentation) -> CatalogEntry {
    CatalogEntry { name: name.to_string(), presentation }
}

fn diag(field: &FiniteField, entries: &[i64]) -> FFMatrix {
    let n = entries.len();
    let mut m = FFMatrix::zeros(n, n);
    for (i, &e) in entries.iter().enumerate() {
        m.set(i, i, field.from_i64(e));
    }
    m
}

/// Modules every model carries: free, shifted free, `Sym(V)`, shifted
/// `Sym(V)`, `kH` and the trivial module, the last two with `V` acting as zero.
fn standard_catalog(model: &ModelGN) -> Vec<CatalogEntry> {
    let ones = vec![FFElem::ONE; model.group().generators().len()];
    vec![
        entry("free", presentations::free(0)),
        entry("free_shift2", presentations::free(2)),
        entry("sym", presentations::symmetric_algebra(model)),
        entry("sym_shift1", presentations::symmetric_algebra(model).shifted(1)),
        entry("group_algebra", presentations::group_algebra(model)),
        entry("trivial", presentations::line(model, &ones)),
    ]
}

fn sign_entry(model: &ModelGN) -> CatalogEntry {
    let minus = model.field().from_i64(-1);
    entry("sign", presentations::line(model, &vec![minus; model.group().generators().len()]))
}

/// `H = C2` acting on `V = F_q^{2r+1}` by `diag(-1, ..., -1, 1)`: the
/// associated graded of a Heisenberg group with a central last coordinate
/// `z` and every other generator inverted.
pub fn heisenberg(r: usize, p: u64, q: u64) -> Result<Example> {
    if p == 2 {
        return Err(Error::InvalidInput("the Heisenberg model needs an odd prime".into()));
    }
    if r == 0 {
        return Err(Error::InvalidInput("the Heisenberg model needs r >= 1".into()));
    }
    let field = field_of_order(p, q)?;
    let d = 2 * r + 1;
    let mut signs = vec![-1; d];
    signs[d - 1] = 1;
    let rep = Rep::new(Arc::new(cyclic_group(2)), field.clone(), d, vec![diag(&field, &signs)])?;
    let model = ModelGN::new(rep)?;
    let z = d - 1;
    let xs: Vec<usize> = (0..r).collect();
    let mut catalog = standard_catalog(&model);
    catalog.push(sign_entry(&model));
    catalog.push(entry("sym_mod_z", presentations::kill_variables(presentations::symmetric_algebra(&model), d, &[z])));
    catalog.push(entry("free_mod_z", presentations::kill_variables(presentations::free(0), d, &[z])));
    let mut killed = xs.clone();
    killed.push(z);
    catalog.push(entry("free_mod_xz", presentations::kill_variables(presentations::free(0), d, &killed)));
    catalog
        .push(entry("sym_mod_xz", presentations::kill_variables(presentations::symmetric_algebra(&model), d, &killed)));
    Ok(Example { name: format!("heisenberg({r},{p},{q})"), model: Arc::new(model), catalog })
}

/// Names of the Heisenberg modules annihilated by `z` with dimension at most `r`.
pub const HEISENBERG_Z_KILLED: [&str; 5] = ["trivial", "sign", "group_algebra", "free_mod_xz", "sym_mod_xz"];

/// `H = C2` acting on `V = F_q` by `-1`.
pub fn dihedral_abelian(p: u64, q: u64) -> Result<Example> {
    if p == 2 {
        return Err(Error::InvalidInput("the sign action needs an odd prime".into()));
    }
    let field = field_of_order(p, q)?;
    let rep = Rep::new(Arc::new(cyclic_group(2)), field.clone(), 1, vec![diag(&field, &[-1])])?;
    let model = ModelGN::new(rep)?;
    let mut catalog = standard_catalog(&model);
    catalog.push(sign_entry(&model));
    Ok(Example { name: format!("dihedral_abelian({p},{q})"), model: Arc::new(model), catalog })
}

/// `S3` on its two-dimensional reflection representation over `GF(q)`.
pub fn s3_reflection(q: u64) -> Result<Example> {
    let p = crate::exactnum::field::prime_factors(q).first().copied().ok_or(Error::NonPrime(q))?;
    let field = field_of_order(p, q)?;
    let swap = FFMatrix::from_rows(vec![vec![0, 1], vec![1, 0]], 2);
    let minus = field.from_i64(-1).0;
    let rotate = FFMatrix::from_rows(vec![vec![0, 1], vec![minus, minus]], 2);
    let rep = Rep::new(Arc::new(symmetric(3)), field, 2, vec![swap, rotate])?;
    let model = ModelGN::new(rep)?;
    let mut catalog = standard_catalog(&model);
    if p != 2 {
        // Transpositions act by -1, 3-cycles by 1.
        let minus = model.field().from_i64(-1);
        catalog.push(entry("sign", presentations::line(&model, &[minus, FFElem::ONE])));
    }
    Ok(Example { name: format!("s3_reflection({q})"), model: Arc::new(model), catalog })
}

/// `C2 x C2` acting on `V = F_q^2` by `diag(-1, 1)` and `diag(1, -1)`.
pub fn klein_four(p: u64, q: u64) -> Result<Example> {
    if p == 2 {
        return Err(Error::InvalidInput("the sign action needs an odd prime".into()));
    }
    let field = field_of_order(p, q)?;
    let group = direct_product(&cyclic_group(2), &cyclic_group(2));
    let rep = Rep::new(Arc::new(group), field.clone(), 2, vec![diag(&field, &[-1, 1]), diag(&field, &[1, -1])])?;
    let model = ModelGN::new(rep)?;
    let catalog = standard_catalog(&model);
    Ok(Example { name: format!("klein_four({p},{q})"), model: Arc::new(model), catalog })
}

/// `C_n` with `V = 0`.
pub fn cyclic(n: usize, p: u64, q: u64) -> Result<Example> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclic groups need n >= 1".into()));
    }
    let field = field_of_order(p, q)?;
    let group = Arc::new(cyclic_group(n));
    let gens = vec![FFMatrix::zeros(0, 0); group.generators().len()];
    let rep = Rep::new(group, field, 0, gens)?;
    let model = ModelGN::new(rep)?;
    let catalog = vec![
        entry("free", presentations::free(0)),
        entry("trivial", presentations::line(&model, &vec![FFElem::ONE; model.group().generators().len()])),
    ];
    Ok(Example { name: format!("cyclic({n},{p},{q})"), model: Arc::new(model), catalog })
}

/// A group, a coefficient field and a catalog of modules whose Brauer
/// characters should span the class functions on the orbit space.
#[derive(Debug, Clone)]
pub struct SpanFixture {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub p: u64,
    pub q: u64,
    pub catalog: Vec<(String, Rep)>,
    /// Orbit count the catalog is expected to reach.
    pub stated_count: usize,
}

impl SpanFixture {
    /// Rank of the catalog's Brauer characters and the orbit count they are measured against.
    pub fn measure(&self, exec: Exec) -> Result<(usize, usize)> {
        let field = field_of_order(self.p, self.q)?;
        let ctx = BrauerContext::new(&field, self.group.p_prime_exponent(self.p))?;
        let orbits = galois_orbits(&self.group, self.p, self.q)?;
        let chars =
            self.catalog.iter().map(|(_, rep)| brauer_character(&ctx, rep, exec)).collect::<Result<Vec<_>>>()?;
        Ok((char_span_rank(&chars, &orbits)?, orbits.len()))
    }
}

fn line(group: &Arc<FiniteGroup>, field: &FiniteField, scalars: &[FFElem]) -> Result<Rep> {
    let gens = scalars.iter().map(|&c| FFMatrix::from_raw(1, 1, vec![c.0])).collect();
    Rep::new(Arc::clone(group), field.clone(), 1, gens)
}

fn reflection(group: &Arc<FiniteGroup>, field: &FiniteField) -> Result<Rep> {
    let minus = field.from_i64(-1).0;
    let swap = FFMatrix::from_rows(vec![vec![0, 1], vec![1, 0]], 2);
    let rotate = FFMatrix::from_rows(vec![vec![0, 1], vec![minus, minus]], 2);
    Rep::new(Arc::clone(group), field.clone(), 2, vec![swap, rotate])
}

/// Span fixtures for `S3` over `F2, F3, F4`, `C7` over `F2, F8` and `D4` over `F2`.
///
/// Each catalog lists the simple modules over the given field. The `S3`/`F4`
/// entry states 3, but its two 2-regular non-identity elements are conjugate,
/// so the orbit count and the reachable rank are both 2.
pub fn span_fixtures() -> Result<Vec<SpanFixture>> {
    let mut out = Vec::new();
    let s3 = Arc::new(symmetric(3));
    for (p, q, stated) in [(3u64, 3u64, 2usize), (2, 2, 2), (2, 4, 3)] {
        let field = field_of_order(p, q)?;
        let ones = [FFElem::ONE, FFElem::ONE];
        let mut catalog = vec![("trivial".to_string(), line(&s3, &field, &ones)?)];
        if p == 2 {
            catalog.push(("reflection".into(), reflection(&s3, &field)?));
        } else {
            catalog.push(("sign".into(), line(&s3, &field, &[field.from_i64(-1), FFElem::ONE])?));
        }
        out.push(SpanFixture { name: format!("S3/F{q}"), group: Arc::clone(&s3), p, q, catalog, stated_count: stated });
    }

    let c7 = Arc::new(cyclic_group(7));
    let f2 = field_of_order(2, 2)?;
    let cubic = |rows: Vec<Vec<u32>>| Rep::new(Arc::clone(&c7), f2.clone(), 3, vec![FFMatrix::from_rows(rows, 3)]);
    let catalog = vec![
        ("trivial".to_string(), line(&c7, &f2, &[FFElem::ONE])?),
        // Companion matrices of x^3 + x + 1 and x^3 + x^2 + 1.
        ("cubic_a".into(), cubic(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]])?),
        ("cubic_b".into(), cubic(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 1]])?),
    ];
    out.push(SpanFixture { name: "C7/F2".into(), group: Arc::clone(&c7), p: 2, q: 2, catalog, stated_count: 3 });

    let f8 = field_of_order(2, 8)?;
    let omega = f8.primitive_root_of_unity(7)?;
    let catalog = (0..7u64)
        .map(|k| Ok((format!("omega^{k}"), line(&c7, &f8, &[f8.pow(omega, k)])?)))
        .collect::<Result<Vec<_>>>()?;
    out.push(SpanFixture { name: "C7/F8".into(), group: c7, p: 2, q: 8, catalog, stated_count: 7 });

    let d4 = Arc::new(dihedral(4));
    let f2 = field_of_order(2, 2)?;
    let ones = vec![FFElem::ONE; d4.generators().len()];
    let catalog = vec![("trivial".to_string(), line(&d4, &f2, &ones)?)];
    out.push(SpanFixture { name: "D4/F2".into(), group: d4, p: 2, q: 2, catalog, stated_count: 1 });
    Ok(out)
}

/// Parses `heisenberg(1,3,3)`-style identifiers.
pub fn by_id(id: &str) -> Result<Example> {
    let id = id.replace(' ', "");
    let (name, rest) =
        id.split_once('(').ok_or_else(|| Error::InvalidInput(format!("expected name(args), got {id}")))?;
    let args =
        rest.strip_suffix(')').ok_or_else(|| Error::InvalidInput(format!("missing closing parenthesis in {id}")))?;
    let nums = args
        .split(',')
        .map(|a| a.parse::<u64>().map_err(|_| Error::InvalidInput(format!("bad argument {a} in {id}"))))
        .collect::<Result<Vec<_>>>()?;
    let want = |k: usize| {
        if nums.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("{name} takes {k} arguments")))
        }
    };
    match name {
        "heisenberg" => want(3).and_then(|_| heisenberg(nums[0] as usize, nums[1], nums[2])),
        "dihedral_abelian" => want(2).and_then(|_| dihedral_abelian(nums[0], nums[1])),
        "s3_reflection" => want(1).and_then(|_| s3_reflection(nums[0])),
        "klein_four" => want(2).and_then(|_| klein_four(nums[0], nums[1])),
        "cyclic" => want(3).and_then(|_| cyclic(nums[0] as usize, nums[1], nums[2])),
        _ => Err(Error::InvalidInput(format!("unknown example {name}"))),
    }
}
