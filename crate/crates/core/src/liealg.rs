//! Structure of `gl_N ≅ gl_l ⊗ gl_n`: matrix units, the grading induced by
//! the principal grading of `gl_l`, the subalgebras `b ⊃ m` and `l = g_0`,
//! and the invariant forms `κ` and `κ_b`.
//!
//! Indices are 1-based throughout.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("ambient sizes differ: gl_{0} vs gl_{1}")]
    SizeMismatch(usize, usize),
    #[error("not in b")]
    NotInB,
    #[error("invalid shape n={n}, l={l}")]
    BadShape { n: usize, l: usize },
    #[error("index out of range: {0}")]
    Index(String),
}

/// Matrix unit `e_ij` of `gl_N`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GlBasis {
    pub i: u8,
    pub j: u8,
}

pub const fn e(i: u8, j: u8) -> GlBasis {
    GlBasis { i, j }
}

impl fmt::Display for GlBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i < 10 && self.j < 10 {
            write!(f, "e_{}{}", self.i, self.j)
        } else {
            write!(f, "e_{{{},{}}}", self.i, self.j)
        }
    }
}

/// `e_ij ⊗ e_pq ∈ gl_l ⊗ gl_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TensorBasis {
    pub i: u8,
    pub j: u8,
    pub p: u8,
    pub q: u8,
}

/// `[e_ij, e_kl] = δ_jk e_il − δ_li e_kj`, as at most two signed terms.
pub fn basis_bracket(a: GlBasis, b: GlBasis) -> impl Iterator<Item = (GlBasis, i64)> {
    let first = (a.j == b.i).then_some((e(a.i, b.j), 1));
    let second = (b.j == a.i).then_some((e(b.i, a.j), -1));
    // [e_ii, e_ii] and friends: the two terms cancel
    let cancel = matches!((first, second), (Some((x, _)), Some((y, _))) if x == y);
    [first, second].into_iter().flatten().filter(move |_| !cancel)
}

/// Rectangular shape `(l^n)`: `n` Jordan blocks of size `l`, `N = n·l`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Shape {
    pub n: usize,
    pub l: usize,
}

impl Shape {
    pub fn new(n: usize, l: usize) -> Result<Shape, LieError> {
        if n == 0 || l == 0 || n * l > 64 {
            return Err(LieError::BadShape { n, l });
        }
        Ok(Shape { n, l })
    }

    pub fn principal(size: usize) -> Result<Shape, LieError> {
        Shape::new(1, size)
    }

    pub fn size(&self) -> usize {
        self.n * self.l
    }

    pub fn is_principal(&self) -> bool {
        self.n == 1
    }

    /// `e_ij ⊗ e_pq ↦ e_{(i−1)n+p, (j−1)n+q}`
    pub fn embed(&self, t: TensorBasis) -> GlBasis {
        let n = self.n as u8;
        e((t.i - 1) * n + t.p, (t.j - 1) * n + t.q)
    }

    /// Inverse of [`Shape::embed`].
    pub fn split(&self, x: GlBasis) -> TensorBasis {
        let n = self.n as u8;
        TensorBasis {
            i: (x.i - 1) / n + 1,
            j: (x.j - 1) / n + 1,
            p: (x.i - 1) % n + 1,
            q: (x.j - 1) % n + 1,
        }
    }

    pub fn contains(&self, x: GlBasis) -> bool {
        let size = self.size();
        (1..=size).contains(&(x.i as usize)) && (1..=size).contains(&(x.j as usize))
    }

    /// Degree of the `gl_l` factor under `deg e_ij = j − i`.
    pub fn degree(&self, x: GlBasis) -> i32 {
        let t = self.split(x);
        t.j as i32 - t.i as i32
    }

    pub fn in_b(&self, x: GlBasis) -> bool {
        self.degree(x) <= 0
    }

    pub fn in_m(&self, x: GlBasis) -> bool {
        self.degree(x) < 0
    }

    pub fn in_levi(&self, x: GlBasis) -> bool {
        self.degree(x) == 0
    }

    pub fn basis_g(&self) -> Vec<GlBasis> {
        let s = self.size() as u8;
        (1..=s).flat_map(|i| (1..=s).map(move |j| e(i, j))).collect()
    }

    pub fn basis_b(&self) -> Vec<GlBasis> {
        self.basis_g().into_iter().filter(|&x| self.in_b(x)).collect()
    }

    pub fn basis_m(&self) -> Vec<GlBasis> {
        self.basis_g().into_iter().filter(|&x| self.in_m(x)).collect()
    }

    pub fn basis_levi(&self) -> Vec<GlBasis> {
        self.basis_g().into_iter().filter(|&x| self.in_levi(x)).collect()
    }

    /// `α = k + n(l−1)`; equals `k + N − 1` in the principal case.
    pub fn alpha(&self) -> Scalar {
        Scalar::k_plus((self.n * (self.l - 1)) as i64)
    }

    /// `k̄ = k + (n−1)(l−1)`, the level of the principal comparison algebra.
    pub fn shifted_level(&self) -> Scalar {
        Scalar::k_plus(((self.n - 1) * (self.l - 1)) as i64)
    }

    /// `f = f_l ⊗ I_n`.
    pub fn nilpotent(&self) -> LieElem {
        let mut f = LieElem::zero(self.size());
        for i in 1..self.l as u8 {
            for p in 1..=self.n as u8 {
                f.add_term(self.embed(TensorBasis { i: i + 1, j: i, p, q: p }), &Scalar::one());
            }
        }
        f
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.l)
    }
}

/// Finite linear combination of matrix units of a fixed `gl_N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieElem {
    size: usize,
    terms: BTreeMap<GlBasis, Scalar>,
}

impl LieElem {
    pub fn zero(size: usize) -> LieElem {
        LieElem {
            size,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(size: usize, x: GlBasis) -> LieElem {
        let mut v = LieElem::zero(size);
        v.add_term(x, &Scalar::one());
        v
    }

    pub fn from_terms(size: usize, terms: impl IntoIterator<Item = (GlBasis, Scalar)>) -> LieElem {
        let mut v = LieElem::zero(size);
        for (x, c) in terms {
            v.add_term(x, &c);
        }
        v
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GlBasis, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: GlBasis) -> Scalar {
        self.terms.get(&x).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, x: GlBasis, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(x).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn add(&self, other: &LieElem) -> Result<LieElem, LieError> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(*x, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> LieElem {
        LieElem::from_terms(self.size, self.terms.iter().map(|(x, a)| (*x, a * c)))
    }

    fn check_size(&self, other: &LieElem) -> Result<(), LieError> {
        if self.size != other.size {
            return Err(LieError::SizeMismatch(self.size, other.size));
        }
        Ok(())
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for (x, c) in &self.terms {
            if x.i == x.j {
                t += c;
            }
        }
        t
    }

    /// Matrix product (as elements of `Mat_N`).
    pub fn matmul(&self, other: &LieElem) -> Result<LieElem, LieError> {
        self.check_size(other)?;
        let mut out = LieElem::zero(self.size);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.j == b.i {
                    out.add_term(e(a.i, b.j), &(ca * cb));
                }
            }
        }
        Ok(out)
    }

    /// Keeps the graded components selected by `keep`.
    pub fn project(&self, shape: &Shape, keep: Part) -> LieElem {
        LieElem::from_terms(
            self.size,
            self.terms
                .iter()
                .filter(|(x, _)| keep.contains(shape, **x))
                .map(|(x, c)| (*x, c.clone())),
        )
    }

    pub fn lies_in(&self, shape: &Shape, part: Part) -> bool {
        self.terms.keys().all(|&x| part.contains(shape, x))
    }
}

impl fmt::Display for LieElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (x, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{x}")?;
            } else {
                write!(f, "({c}){x}")?;
            }
        }
        Ok(())
    }
}

/// Graded pieces of `g` used for projections.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Part {
    /// `l = g_0`
    Levi,
    /// `m = ⊕_{p<0} g_p`
    Nilradical,
    /// `b = ⊕_{p≤0} g_p`
    Borel,
}

impl Part {
    pub fn contains(&self, shape: &Shape, x: GlBasis) -> bool {
        match self {
            Part::Levi => shape.in_levi(x),
            Part::Nilradical => shape.in_m(x),
            Part::Borel => shape.in_b(x),
        }
    }
}

pub fn bracket(x: &LieElem, y: &LieElem) -> Result<LieElem, LieError> {
    x.check_size(y)?;
    let mut out = LieElem::zero(x.size);
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let c = ca * cb;
            for (z, s) in basis_bracket(*a, *b) {
                out.add_term(z, &(&c * &Scalar::from_int(s)));
            }
        }
    }
    Ok(out)
}

/// `κ(x,y) = k (tr(xy) − tr x tr y / N)`
pub fn kappa(x: &LieElem, y: &LieElem) -> Result<Scalar, LieError> {
    let xy = x.matmul(y)?;
    let n = Scalar::from_int(x.size as i64);
    let inner = xy.trace() - &(&x.trace() * &y.trace()) / &n;
    Ok(Scalar::k() * inner)
}

/// Closed formula for `κ_b` on a pair of basis vectors of `b`.
pub fn kappa_b_basis(x: GlBasis, y: GlBasis, shape: &Shape) -> Scalar {
    kappa_b_basis_at(x, y, shape, &Scalar::k())
}

/// [`kappa_b_basis`] with the level `k` replaced by `level`.
pub fn kappa_b_basis_at(x: GlBasis, y: GlBasis, shape: &Shape, level: &Scalar) -> Scalar {
    debug_assert!(shape.in_b(x) && shape.in_b(y));
    let (a, b) = (shape.split(x), shape.split(y));
    if a.i != a.j || b.i != b.j {
        return Scalar::zero();
    }
    let d = |u: u8, v: u8| (u == v) as i64;
    let (n, l) = (shape.n as i64, shape.l as i64);
    let cross = d(a.p, b.q) * d(a.q, b.p);
    let diag = d(a.p, a.q) * d(b.p, b.q);
    let same_block = d(a.i, b.i);
    // (k+nl)(δ_ij δ_ps δ_qr − δ_pq δ_rs/(nl)) − n δ_ij (δ_ps δ_qr − δ_pq δ_rs/n)
    let first = (level + &Scalar::from_int(n * l)) * Scalar::ratio(same_block * cross * n * l - diag, n * l);
    let second = Scalar::from_int(same_block * (n * cross - diag));
    first - second
}

/// `κ_b` via the closed formula, extended bilinearly.
pub fn kappa_b(x: &LieElem, y: &LieElem, shape: &Shape) -> Result<Scalar, LieError> {
    check_in_b(x, y, shape)?;
    let mut acc = Scalar::zero();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let v = kappa_b_basis(*a, *b, shape);
            if !v.is_zero() {
                acc += &(&(ca * cb) * &v);
            }
        }
    }
    Ok(acc)
}

fn check_in_b(x: &LieElem, y: &LieElem, shape: &Shape) -> Result<(), LieError> {
    x.check_size(y)?;
    if x.size != shape.size() {
        return Err(LieError::SizeMismatch(x.size, shape.size()));
    }
    if !x.lies_in(shape, Part::Borel) || !y.lies_in(shape, Part::Borel) {
        return Err(LieError::NotInB);
    }
    Ok(())
}

/// `Σ_z coeff_z(p([x,[y,z]]))` over the basis vectors `z` of `part`.
fn restricted_trace(x: &LieElem, y: &LieElem, shape: &Shape, part: Option<Part>) -> Result<Scalar, LieError> {
    let mut acc = Scalar::zero();
    for z in shape.basis_g() {
        if part.is_some_and(|p| !p.contains(shape, z)) {
            continue;
        }
        let zz = LieElem::basis(shape.size(), z);
        let inner = bracket(y, &zz)?;
        let outer = bracket(x, &inner)?;
        acc += &outer.coeff(z);
    }
    Ok(acc)
}

/// `κ_b(x,y) = κ(x,y) + ½ tr_g(ad x ad y) − ½ tr_{g_0} p_0(ad x ad y)`,
/// evaluated by explicit traces over bases.
pub fn kappa_b_by_trace(x: &LieElem, y: &LieElem, shape: &Shape) -> Result<Scalar, LieError> {
    check_in_b(x, y, shape)?;
    let half = Scalar::ratio(1, 2);
    let full = restricted_trace(x, y, shape, None)?;
    let levi = restricted_trace(x, y, shape, Some(Part::Levi))?;
    Ok(kappa(x, y)? + &half * &full - &half * &levi)
}

/// `tr_m p_+(ad(e_ij⊗e_qp) ad(e_ji⊗e_pq))` for `i < j`, computed over a basis
/// of `m`; the lower-degree operator acts first.
pub fn trace_identity(i: u8, j: u8, p: u8, q: u8, shape: &Shape) -> Result<Scalar, LieError> {
    if i >= j {
        return Err(LieError::Index(format!("need i < j, got i={i}, j={j}")));
    }
    if j as usize > shape.l || p == 0 || q == 0 || i == 0 || p as usize > shape.n || q as usize > shape.n {
        return Err(LieError::Index(format!("({i},{j},{p},{q}) outside shape {shape}")));
    }
    let size = shape.size();
    let lower = LieElem::basis(size, shape.embed(TensorBasis { i: j, j: i, p, q }));
    let upper = LieElem::basis(size, shape.embed(TensorBasis { i, j, p: q, q: p }));
    restricted_trace(&upper, &lower, shape, Some(Part::Nilradical))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(size: usize, x: GlBasis) -> LieElem {
        LieElem::basis(size, x)
    }

    #[test]
    fn brackets_of_matrix_units() {
        let r = bracket(&el(4, e(1, 2)), &el(4, e(2, 1))).unwrap();
        let expected = LieElem::from_terms(4, [(e(1, 1), Scalar::one()), (e(2, 2), Scalar::from_int(-1))]);
        assert_eq!(r, expected);
        assert_eq!(bracket(&el(4, e(1, 1)), &el(4, e(1, 2))).unwrap(), el(4, e(1, 2)));
        assert!(bracket(&el(4, e(1, 2)), &el(4, e(3, 4))).unwrap().is_zero());
        assert!(bracket(&el(4, e(1, 1)), &el(4, e(1, 1))).unwrap().is_zero());
        assert_eq!(bracket(&el(3, e(1, 2)), &el(4, e(2, 1))), Err(LieError::SizeMismatch(3, 4)));
    }

    #[test]
    fn embedding_examples() {
        let s = Shape::new(2, 2).unwrap();
        assert_eq!(s.embed(TensorBasis { i: 1, j: 2, p: 1, q: 1 }), e(1, 3));
        assert_eq!(s.embed(TensorBasis { i: 1, j: 1, p: 1, q: 2 }), e(1, 2));
        assert_eq!(s.embed(TensorBasis { i: 2, j: 2, p: 2, q: 1 }), e(4, 3));
        for x in s.basis_g() {
            assert_eq!(s.embed(s.split(x)), x);
        }
    }

    #[test]
    fn grading_examples() {
        assert_eq!(Shape::new(1, 3).unwrap().degree(e(3, 1)), -2);
        let s = Shape::new(2, 2).unwrap();
        assert_eq!(s.degree(e(3, 1)), -1);
        assert_eq!(s.degree(e(1, 2)), 0);
    }

    #[test]
    fn projections() {
        let p = Shape::new(1, 2).unwrap();
        let x = LieElem::from_terms(2, [(e(1, 1), Scalar::one()), (e(2, 1), Scalar::one())]);
        assert_eq!(x.project(&p, Part::Levi), el(2, e(1, 1)));
        let s = Shape::new(2, 2).unwrap();
        let y = LieElem::from_terms(4, [(e(3, 1), Scalar::one()), (e(1, 2), Scalar::one())]);
        assert_eq!(y.project(&s, Part::Nilradical), el(4, e(3, 1)));
        assert!(LieElem::zero(4).project(&s, Part::Levi).is_zero());
    }

    #[test]
    fn killing_form_examples() {
        assert_eq!(kappa(&el(4, e(1, 1)), &el(4, e(1, 1))).unwrap(), Scalar::k() * Scalar::ratio(3, 4));
        assert_eq!(kappa(&el(4, e(1, 2)), &el(4, e(2, 1))).unwrap(), Scalar::k());
        assert!(kappa(&el(4, e(1, 2)), &el(4, e(1, 2))).unwrap().is_zero());
    }

    #[test]
    fn kappa_b_examples() {
        let s = Shape::new(2, 2).unwrap();
        let kb = |a, b| kappa_b(&el(4, a), &el(4, b), &s).unwrap();
        assert_eq!(kb(e(1, 1), e(1, 1)), (Scalar::k() * Scalar::from_int(3) + Scalar::from_int(8)) * Scalar::ratio(1, 4));
        assert_eq!(kb(e(1, 1), e(3, 3)), -Scalar::k_plus(4) * Scalar::ratio(1, 4));
        assert_eq!(kb(e(1, 2), e(2, 1)), Scalar::k_plus(2));
        let p = Shape::principal(3).unwrap();
        assert_eq!(
            kappa_b(&el(3, e(1, 1)), &el(3, e(2, 2)), &p).unwrap(),
            -Scalar::k_plus(3) * Scalar::ratio(1, 3)
        );
        assert_eq!(kappa_b(&el(4, e(1, 3)), &el(4, e(1, 1)), &s), Err(LieError::NotInB));
        assert_eq!(LieError::NotInB.to_string(), "not in b");
    }

    #[test]
    fn principal_formula_is_the_n1_case() {
        for size in 1..=4 {
            let s = Shape::principal(size).unwrap();
            for x in s.basis_b() {
                for y in s.basis_b() {
                    let expected = if x.i == x.j && y.i == y.j {
                        let delta = (x.i == y.i) as i64;
                        Scalar::k_plus(size as i64) * Scalar::ratio(delta * size as i64 - 1, size as i64)
                    } else {
                        Scalar::zero()
                    };
                    assert_eq!(kappa_b_basis(x, y, &s), expected, "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn closed_formula_matches_trace_definition() {
        for (n, l) in [(1, 2), (1, 3), (2, 2), (1, 4), (3, 2)] {
            let s = Shape::new(n, l).unwrap();
            let size = s.size();
            for x in s.basis_b() {
                for y in s.basis_b() {
                    assert_eq!(
                        kappa_b(&el(size, x), &el(size, y), &s).unwrap(),
                        kappa_b_by_trace(&el(size, x), &el(size, y), &s).unwrap(),
                        "shape {s}: {x}, {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn m_is_an_ideal_of_b() {
        for (n, l) in [(1, 3), (2, 2), (3, 2), (2, 3)] {
            let s = Shape::new(n, l).unwrap();
            for x in s.basis_b() {
                for y in s.basis_b() {
                    for (z, _) in basis_bracket(x, y) {
                        assert!(s.in_b(z));
                        if s.in_m(y) {
                            assert!(s.in_m(z));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_is_a_lie_isomorphism() {
        for (n, l) in [(2, 2), (2, 3), (3, 2)] {
            let s = Shape::new(n, l).unwrap();
            let size = s.size();
            for a in s.basis_g() {
                for b in s.basis_g() {
                    // bracket in gl_l ⊗ gl_n: [x⊗u, y⊗v] = xy⊗uv − yx⊗vu
                    let (ta, tb) = (s.split(a), s.split(b));
                    let mut expected = LieElem::zero(size);
                    if ta.j == tb.i && ta.q == tb.p {
                        expected.add_term(s.embed(TensorBasis { i: ta.i, j: tb.j, p: ta.p, q: tb.q }), &Scalar::one());
                    }
                    if tb.j == ta.i && tb.q == ta.p {
                        expected.add_term(s.embed(TensorBasis { i: tb.i, j: ta.j, p: tb.p, q: ta.q }), &Scalar::from_int(-1));
                    }
                    assert_eq!(bracket(&el(size, a), &el(size, b)).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn trace_identity_values() {
        let s = Shape::new(2, 2).unwrap();
        for p in 1..=2 {
            for q in 1..=2 {
                assert!(trace_identity(1, 2, p, q, &s).unwrap().is_zero());
            }
        }
        assert_eq!(trace_identity(1, 2, 1, 1, &Shape::new(1, 3).unwrap()).unwrap(), Scalar::from_int(1));
        assert_eq!(trace_identity(2, 3, 1, 2, &Shape::new(3, 4).unwrap()).unwrap(), Scalar::from_int(6));
        assert!(trace_identity(2, 2, 1, 1, &s).is_err());
    }

    #[test]
    fn nilpotent_has_rectangular_jordan_type() {
        let s = Shape::new(2, 3).unwrap();
        let f = s.nilpotent();
        assert_eq!(f.terms().count(), 4);
        assert!(f.lies_in(&s, Part::Nilradical));
        let f2 = f.matmul(&f).unwrap();
        assert_eq!(f2.terms().count(), 2);
        assert!(f2.matmul(&f).unwrap().is_zero());
    }

    fn gl3_elem() -> impl Strategy<Value = LieElem> {
        prop::collection::vec(((1u8..=3, 1u8..=3), -3i64..=3), 0..5).prop_map(|v| {
            LieElem::from_terms(3, v.into_iter().map(|((i, j), c)| (e(i, j), Scalar::from_int(c))))
        })
    }

    fn b22_elem() -> impl Strategy<Value = LieElem> {
        let s = Shape::new(2, 2).unwrap();
        let basis = s.basis_b();
        prop::collection::vec((0..basis.len(), -3i64..=3), 0..5).prop_map(move |v| {
            LieElem::from_terms(4, v.into_iter().map(|(idx, c)| (basis[idx], Scalar::from_int(c))))
        })
    }

    proptest! {
        #[test]
        fn antisymmetry_and_jacobi(x in gl3_elem(), y in gl3_elem(), z in gl3_elem()) {
            let xy = bracket(&x, &y).unwrap();
            let yx = bracket(&y, &x).unwrap();
            prop_assert!(xy.add(&yx).unwrap().is_zero());
            let j1 = bracket(&x, &bracket(&y, &z).unwrap()).unwrap();
            let j2 = bracket(&y, &bracket(&z, &x).unwrap()).unwrap();
            let j3 = bracket(&z, &bracket(&x, &y).unwrap()).unwrap();
            prop_assert!(j1.add(&j2).unwrap().add(&j3).unwrap().is_zero());
        }

        #[test]
        fn kappa_b_is_symmetric_and_invariant(x in b22_elem(), y in b22_elem(), z in b22_elem()) {
            let s = Shape::new(2, 2).unwrap();
            prop_assert_eq!(kappa_b(&x, &y, &s).unwrap(), kappa_b(&y, &x, &s).unwrap());
            let lhs = kappa_b(&bracket(&x, &y).unwrap(), &z, &s).unwrap()
                + kappa_b(&y, &bracket(&x, &z).unwrap(), &s).unwrap();
            prop_assert!(lhs.is_zero());
            let k1 = kappa(&bracket(&x, &y).unwrap(), &z).unwrap() + kappa(&y, &bracket(&x, &z).unwrap()).unwrap();
            prop_assert!(k1.is_zero());
        }
    }
}
