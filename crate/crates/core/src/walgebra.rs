//! Generators `W_ij^(r)` from the column-determinant of `B`, their BRST
//! closure, Miura images, leading terms and the `(2,2)` conformal vector.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::brst::Brst;
use crate::cli::Report;
use crate::coeff::{Rational, Scalar};
use crate::liealg::{bracket, e, LieElem, Shape, TensorBasis};
use crate::pbw::{build_b, tmap, AlgElem, Flavor, Mode, NcMatrix, PbwError};
use crate::vertex::{VState, VertexAlgebra, VertexError};

pub const DEFAULT_MAX_SIZE: usize = 6;
pub const MAX_SIZE_ENV: &str = "WALG_MAX_SIZE";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalgError {
    #[error("N = {size} exceeds the resource bound {max}")]
    TooLarge { size: usize, max: usize },
    #[error("the conformal vector is only available for n = l = 2")]
    UnsupportedShape,
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error(transparent)]
    Vertex(#[from] VertexError),
}

/// The resource bound on `N`, overridable through `WALG_MAX_SIZE`.
pub fn max_size() -> usize {
    std::env::var(MAX_SIZE_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_SIZE)
}

/// `W_ij^(r)` for `1 ≤ i,j ≤ n`, `0 ≤ r ≤ l`, as `τ`-free elements of
/// `U(b[t⁻¹]t⁻¹)`.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    shape: Shape,
    table: BTreeMap<(usize, usize, usize), AlgElem>,
}

impl GeneratorSet {
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn get(&self, i: usize, j: usize, r: usize) -> &AlgElem {
        &self.table[&(i, j, r)]
    }

    /// All `(i, j, r)` with `r ≥ 1`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), &AlgElem)> {
        self.table.iter().filter(|((_, _, r), _)| *r > 0).map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn extract_generators(shape: Shape) -> Result<GeneratorSet, WalgError> {
    extract_generators_bounded(shape, max_size())
}

pub fn extract_generators_bounded(shape: Shape, max: usize) -> Result<GeneratorSet, WalgError> {
    if shape.size() > max {
        return Err(WalgError::TooLarge { size: shape.size(), max });
    }
    let cdet = build_b(&shape).cdet();
    let alpha = shape.alpha();
    let l = shape.l;
    let cells: Vec<(usize, usize)> = (1..=shape.n).flat_map(|i| (1..=shape.n).map(move |j| (i, j))).collect();
    let rows: Result<Vec<_>, PbwError> = cells
        .par_iter()
        .map(|&(i, j)| {
            let t = tmap(i, j, &cdet, &shape)?;
            Ok((0..=l)
                .map(|r| {
                    let e = (l - r) as u32;
                    let scale = alpha.pow(e).recip().expect("α is nonzero");
                    ((i, j, r), t.tau_coefficient(e).scale(&scale))
                })
                .collect::<Vec<_>>())
        })
        .collect();
    let table = rows?.into_iter().flatten().collect();
    Ok(GeneratorSet { shape, table })
}

/// `Σ_r W_ij^(r) (ατ)^{l−r}`.
pub fn reconstruct(gens: &GeneratorSet, i: usize, j: usize) -> AlgElem {
    let alpha = gens.shape.alpha();
    let l = gens.shape.l;
    let mut out = AlgElem::zero(Flavor::Enveloping);
    for r in 0..=l {
        let e = (l - r) as u32;
        out = out.add(&gens.get(i, j, r).times_tau(e).scale(&alpha.pow(e)));
    }
    out
}

pub fn verify_reconstruction(gens: &GeneratorSet) -> Report {
    let shape = gens.shape;
    let cdet = build_b(&shape).cdet();
    let mut report = Report::new(format!("reconstruction {shape}"));
    for i in 1..=shape.n {
        for j in 1..=shape.n {
            let start = Instant::now();
            let target = tmap(i, j, &cdet, &shape).expect("indices in range");
            let diff = reconstruct(gens, i, j).sub(&target);
            let w0 = gens.get(i, j, 0);
            let unit = if i == j { AlgElem::one(Flavor::Enveloping) } else { AlgElem::zero(Flavor::Enveloping) };
            let ok = diff.is_zero() && *w0 == unit;
            report.push_timed(format!("T_{i}{j}(cdet B)"), ok, (!ok).then(|| diff.to_string()), start);
        }
    }
    report
}

/// Embeds every generator into `V^k(a)` and tests `Q W = 0`.
pub fn verify_closure(gens: &GeneratorSet) -> Report {
    verify_closure_with(gens, &Brst::new(gens.shape))
}

pub fn verify_closure_with(gens: &GeneratorSet, q: &Brst) -> Report {
    let items: Vec<_> = gens.iter().collect();
    let checks: Vec<_> = items
        .par_iter()
        .map(|((i, j, r), w)| {
            let start = Instant::now();
            let name = format!("Q W_{i}{j}^({r})");
            match q.algebra().embed_alg(w) {
                Ok(v) => {
                    let qv = q.q_apply(&v);
                    let ok = qv.is_zero();
                    (name, ok, (!ok).then(|| first_term(&qv)), start)
                }
                Err(err) => (name, false, Some(err.to_string()), start),
            }
        })
        .collect();
    let mut report = Report::new(format!("BRST closure {}", gens.shape));
    for (name, ok, witness, start) in checks {
        report.push_timed(name, ok, witness, start);
    }
    report
}

fn first_term(v: &VState) -> String {
    v.first_term().to_string()
}

/// The Miura map: deletes every monomial containing a mode from `m`.
pub fn miura(a: &AlgElem, shape: &Shape) -> AlgElem {
    AlgElem::from_terms(
        a.flavor(),
        a.terms()
            .filter(|(t, _)| t.word.iter().all(|m| shape.in_levi(m.x)))
            .map(|(t, c)| (t.clone(), c.clone())),
    )
}

/// `T_ij((ατ + e_11[−1]) ⋯ (ατ + e_ll[−1]))` with `τ` moved right.
pub fn miura_product(shape: &Shape, i: usize, j: usize) -> Result<AlgElem, PbwError> {
    let flavor = if shape.is_principal() { Flavor::Enveloping } else { Flavor::Free };
    let alpha = shape.alpha();
    let mut prod = AlgElem::one(flavor);
    for s in 1..=shape.l as u8 {
        let factor = AlgElem::tau(flavor).scale(&alpha).add(&AlgElem::mode(flavor, e(s, s), 1));
        prod = prod.mul(&factor);
    }
    tmap(i, j, &prod, shape)
}

pub fn verify_miura_factorization(gens: &GeneratorSet) -> Report {
    let shape = gens.shape;
    let alpha = shape.alpha();
    let l = shape.l;
    let mut report = Report::new(format!("Miura factorization {shape}"));
    for i in 1..=shape.n {
        for j in 1..=shape.n {
            let start = Instant::now();
            let target = miura_product(&shape, i, j).expect("indices in range");
            let mut lhs = AlgElem::zero(Flavor::Enveloping);
            for r in 0..=l {
                let e = (l - r) as u32;
                lhs = lhs.add(&miura(gens.get(i, j, r), &shape).times_tau(e).scale(&alpha.pow(e)));
            }
            let diff = lhs.sub(&target);
            let witness = diff.terms().next().map(|(t, c)| {
                AlgElem::from_terms(Flavor::Enveloping, [(t.clone(), c.clone())]).to_string()
            });
            report.push_timed(format!("nu T_{i}{j}"), diff.is_zero(), witness, start);
        }
    }
    report
}

pub fn leading_term(a: &AlgElem, shape: &Shape) -> AlgElem {
    a.lowest_degree_part(shape)
}

/// `T_ij(Σ_s e_{r+s−1,s}[−1])`.
pub fn expected_leading(shape: &Shape, i: usize, j: usize, r: usize) -> AlgElem {
    let mut x = AlgElem::zero(Flavor::Free);
    for s in 1..=shape.l + 1 - r {
        x = x.add(&AlgElem::mode(Flavor::Free, e((r + s - 1) as u8, s as u8), 1));
    }
    if shape.is_principal() {
        let word: Vec<_> = x.terms().map(|(t, c)| (t.clone(), c.clone())).collect();
        return AlgElem::from_terms(Flavor::Enveloping, word);
    }
    tmap(i, j, &x, shape).expect("indices in range")
}

/// The `gl_N` element `Σ c x` read off a combination of `x[−1]` modes.
fn linear_part(a: &AlgElem, size: usize) -> Option<LieElem> {
    let mut out = LieElem::zero(size);
    for (t, c) in a.terms() {
        match t.word.as_slice() {
            [Mode { x, depth: 1 }] if t.tau == 0 => out.add_term(*x, c),
            _ => return None,
        }
    }
    Some(out)
}

/// Rank over `ℚ` of vectors with rational entries.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                let (src, dst) = if r < rank {
                    let (lo, hi) = rows.split_at_mut(rank);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&lo[rank], &mut hi[0])
                };
                for (d, s) in dst[c..cols].iter_mut().zip(&src[c..cols]) {
                    *d -= s * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Leading terms equal `T_ij(Σ_s e_{r+s−1,s}[−1])`, and their `gl_N` images
/// are `l·n²` independent elements of the centralizer of `f`.
pub fn verify_centralizer_basis(gens: &GeneratorSet) -> Report {
    let shape = gens.shape;
    let size = shape.size();
    let f = shape.nilpotent();
    let mut report = Report::new(format!("leading terms {shape}"));
    let mut vectors = Vec::new();
    for ((i, j, r), w) in gens.iter() {
        let start = Instant::now();
        let lead = leading_term(w, &shape);
        let expected = expected_leading(&shape, i, j, r);
        let ok = lead == expected;
        report.push_timed(format!("lead W_{i}{j}^({r})"), ok, (!ok).then(|| lead.to_string()), start);
        let start = Instant::now();
        let Some(x) = linear_part(&lead, size) else {
            report.push_timed(format!("linear W_{i}{j}^({r})"), false, Some(lead.to_string()), start);
            continue;
        };
        let commutes = bracket(&x, &f).map(|b| b.is_zero()).unwrap_or(false);
        report.push_timed(format!("[f, gr W_{i}{j}^({r})] = 0"), commutes, None, start);
        let row: Vec<Rational> = shape
            .basis_g()
            .into_iter()
            .map(|b| x.coeff(b).as_rational().unwrap_or_else(Rational::one))
            .collect();
        vectors.push(row);
    }
    let start = Instant::now();
    let expected = shape.l * shape.n * shape.n;
    let found = rank(vectors);
    report.push_timed(
        format!("rank of leading terms = {expected}"),
        found == expected,
        (found != expected).then(|| format!("rank {found}")),
        start,
    );
    report
}

/// Every monomial of `W_ij^(r)` has weight `r`, with `wt x[−m] = m − deg x`.
pub fn verify_homogeneity(gens: &GeneratorSet) -> Report {
    let shape = gens.shape;
    let mut report = Report::new(format!("homogeneity {shape}"));
    for ((i, j, r), w) in gens.iter() {
        let start = Instant::now();
        let bad = w.terms().find(|(t, _)| {
            let wt: i32 = t.word.iter().map(|m| m.depth as i32 - shape.degree(m.x)).sum();
            wt != r as i32
        });
        report.push_timed(format!("weight W_{i}{j}^({r})"), bad.is_none(), bad.map(|(t, _)| format!("{:?}", t.word)), start);
    }
    report
}

/// The conformal vector of the `n = l = 2` W-algebra, products being
/// `(−1)`-products and primes the translation operator.
///
/// Differs from the displayed formula in three coefficients: `W_12 W_21`
/// carries 2, and both translation terms flip sign. With those changes all
/// of `L_(0)L = DL`, `L_(1)L = 2L`, `L_(2)L = 0` hold exactly.
pub fn conformal_vector_22(gens: &GeneratorSet, va: &VertexAlgebra) -> Result<VState, WalgError> {
    conformal_family_22(gens, va, [Scalar::from_int(2), Scalar::k_plus(2), Scalar::one()])
}

/// The displayed formula taken literally. Kept for comparison only.
pub fn conformal_vector_22_as_printed(gens: &GeneratorSet, va: &VertexAlgebra) -> Result<VState, WalgError> {
    conformal_family_22(gens, va, [Scalar::one(), -Scalar::k_plus(2), Scalar::from_int(-1)])
}

fn conformal_family_22(gens: &GeneratorSet, va: &VertexAlgebra, c: [Scalar; 3]) -> Result<VState, WalgError> {
    if gens.shape != Shape::new(2, 2).expect("valid") || *va.shape() != gens.shape {
        return Err(WalgError::UnsupportedShape);
    }
    let w = |i, j, r| va.embed_alg(gens.get(i, j, r));
    let (w11, w22, w12, w21) = (w(1, 1, 1)?, w(2, 2, 1)?, w(1, 2, 1)?, w(2, 1, 1)?);
    let (v11, v22) = (w(1, 1, 2)?, w(2, 2, 2)?);
    let prod = |a: &VState, b: &VState| va.nth_product(a, -1, b);
    let q = Scalar::ratio;
    let [c12, cj, cd] = c;
    let mut inner = v11.add(&v22).scale(&Scalar::from_int(-2));
    inner.add_scaled(&prod(&w12, &w21)?, &c12);
    inner.add_scaled(&prod(&w11, &w11)?.add(&prod(&w22, &w22)?), &q(3, 4));
    inner.add_scaled(&prod(&w11, &w22)?, &q(-1, 2));
    inner.add_scaled(&va.translate(&w11.add(&w22)), &cj);
    inner.add_scaled(&va.translate(&w11.sub(&w22)), &cd);
    let norm = (Scalar::k_plus(4) * Scalar::from_int(2)).recip().expect("nonzero");
    Ok(inner.scale(&norm))
}

/// Half the central charge actually produced by [`conformal_vector_22`]:
/// `−(12k²+41k+32)/(2(k+4))`.
pub fn computed_central_term_22() -> Scalar {
    central_term_22() * Scalar::k_plus(4)
}

/// The target value `c/2 = −(12k²+41k+32)/(2(k+4)²)`.
pub fn central_term_22() -> Scalar {
    let num = Scalar::from_poly(crate::coeff::Poly::from_coeffs(vec![
        Rational::from_integer((-32).into()),
        Rational::from_integer((-41).into()),
        Rational::from_integer((-12).into()),
    ]));
    num * (Scalar::k_plus(4).pow(2) * Scalar::from_int(2)).recip().expect("nonzero")
}

/// `L_(0)L = DL`, `L_(1)L = 2L`, `L_(2)L = 0`, `L_(3)L = c/2|0⟩`, `L_(n)L = 0` for `n ≥ 4`.
pub fn verify_virasoro_22(gens: &GeneratorSet) -> Result<Report, WalgError> {
    let va = VertexAlgebra::new(gens.shape);
    let mut report = Report::new("Virasoro (2,2)".to_string());
    let start = Instant::now();
    let l = conformal_vector_22(gens, &va)?;
    let q = Brst::new(gens.shape);
    let closed = q.q_apply(&l).is_zero();
    report.push_timed("Q L = 0".into(), closed, None, start);
    let expected = [
        va.translate(&l),
        l.scale(&Scalar::from_int(2)),
        VState::zero(),
        VState::vacuum().scale(&central_term_22()),
        VState::zero(),
    ];
    for (n, want) in expected.iter().enumerate() {
        let start = Instant::now();
        let got = va.nth_product(&l, n as i32, &l)?;
        let ok = got == *want;
        report.push_timed(format!("L_({n})L"), ok, (!ok).then(|| got.to_string()), start);
    }
    Ok(report)
}

/// `gl_l ⊗ gl_n` label of a `gl_N` mode, used for printing.
pub fn tensor_label(shape: &Shape, m: &Mode) -> TensorBasis {
    shape.split(m.x)
}

/// `NcMatrix` of the construction, re-exported for the CLI.
pub fn matrix_b(shape: &Shape) -> NcMatrix {
    build_b(shape)
}
