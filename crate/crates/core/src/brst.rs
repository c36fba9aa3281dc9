//! The BRST differential `Q` on `V^k(a)`, the W-algebra membership test and
//! the matrix-element map `T̃_pq` relating the rectangular and principal
//! differentials.
//!
//! `Q` is fixed on generator states by its commutation relations and extended
//! to monomials by `[Q, u_(n)] = (Qu)_(n)`, i.e.
//! `Q(u_(n) w) = (Qu)_(n) w + (−1)^{|u|} u_(n) Q(w)`.
//!
//! Generator images are kept as formal right-nested products of modes, so
//! that `T̃_pq` can act on them before any reordering takes place.

use std::collections::HashMap;
use std::sync::RwLock;

use thiserror::Error;

use crate::coeff::Scalar;
use crate::liealg::{GlBasis, Shape, TensorBasis};
use crate::vertex::{Monomial, VMode, VState, VertexAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrstError {
    #[error("not in V^k(b)")]
    NotInVb,
    #[error("matrix index out of range")]
    Index,
}

/// Formal linear combination of right-nested products `m_1(m_2(⋯ m_r|0⟩))`.
pub type Formal = Vec<(Scalar, Vec<VMode>)>;

/// Shape data of the differential: `α = k + n(l−1)` and `k̄ = k + (n−1)(l−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QParams {
    pub shape: Shape,
    pub alpha: Scalar,
    pub shifted_level: Scalar,
}

impl QParams {
    pub fn new(shape: Shape) -> QParams {
        QParams::at_level(shape, &Scalar::k())
    }

    /// `α = level + n(l−1)`.
    pub fn at_level(shape: Shape, level: &Scalar) -> QParams {
        QParams {
            shape,
            alpha: level + &Scalar::from_int((shape.n * (shape.l - 1)) as i64),
            shifted_level: shape.shifted_level(),
        }
    }
}

/// `Q` together with the vertex algebra it acts on.
pub struct Brst {
    params: QParams,
    va: VertexAlgebra,
    images: HashMap<(GlBasis, bool), VState>,
    cache: RwLock<HashMap<Monomial, VState>>,
}

impl std::fmt::Debug for Brst {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Brst").field("params", &self.params).finish()
    }
}

fn tensor_label(shape: &Shape, j: usize, i: usize, p: usize, q: usize) -> Option<GlBasis> {
    if j < 1 || i < 1 || j > shape.l || i > shape.l {
        return None;
    }
    Some(shape.embed(TensorBasis {
        i: j as u8,
        j: i as u8,
        p: p as u8,
        q: q as u8,
    }))
}

/// `ψ_ji[m] ⊗ e_pq`, or `None` when the subscripts are out of range.
fn psi(shape: &Shape, j: usize, i: usize, p: usize, q: usize, m: i16) -> Option<VMode> {
    if j <= i {
        return None;
    }
    tensor_label(shape, j, i, p, q).map(|x| VMode::psi(x, m))
}

fn even(shape: &Shape, j: usize, i: usize, p: usize, q: usize) -> Option<VMode> {
    tensor_label(shape, j, i, p, q).map(|x| VMode::even(x, -1))
}

fn push(out: &mut Formal, c: Scalar, word: &[Option<VMode>]) {
    if word.iter().all(Option::is_some) {
        out.push((c, word.iter().map(|m| m.unwrap()).collect()));
    }
}

/// `[Q, e_ji[−1] ⊗ e_pq]` as a formal expression (rectangular relations;
/// at `n = 1` these are the principal ones).
pub fn q_even_formal(shape: &Shape, alpha: &Scalar, j: usize, i: usize, p: usize, q: usize) -> Formal {
    let n = shape.n;
    let mut out = Formal::new();
    let one = Scalar::one();
    let minus = Scalar::from_int(-1);
    for a in i..j {
        for r in 1..=n {
            push(&mut out, one.clone(), &[even(shape, a, i, r, q), psi(shape, j, a, p, r, 0)]);
        }
    }
    for a in i + 1..=j {
        for r in 1..=n {
            push(&mut out, minus.clone(), &[psi(shape, a, i, r, q, 0), even(shape, j, a, p, r)]);
        }
    }
    push(&mut out, alpha.clone(), &[psi(shape, j, i, p, q, -1)]);
    push(&mut out, one.clone(), &[psi(shape, j + 1, i, p, q, 0)]);
    if i > 1 {
        push(&mut out, minus, &[psi(shape, j, i - 1, p, q, 0)]);
    }
    out
}

/// `[Q, ψ_ji[0] ⊗ e_pq]` as a formal expression.
pub fn q_odd_formal(shape: &Shape, j: usize, i: usize, p: usize, q: usize) -> Formal {
    let half = Scalar::ratio(1, 2);
    let minus_half = Scalar::ratio(-1, 2);
    let mut out = Formal::new();
    for r in i + 1..j {
        for s in 1..=shape.n {
            push(&mut out, half.clone(), &[psi(shape, j, r, s, q, 0), psi(shape, r, i, p, s, 0)]);
            push(&mut out, minus_half.clone(), &[psi(shape, r, i, s, q, 0), psi(shape, j, r, p, s, 0)]);
        }
    }
    out
}

/// The principal relations written directly with `gl_N` indices.
pub fn q_principal_formal(size: usize, alpha: &Scalar, x: GlBasis, odd: bool) -> Formal {
    let (j, i) = (x.i as usize, x.j as usize);
    let ps = |a: usize, b: usize, m: i16| -> Option<VMode> {
        (b >= 1 && a > b && a <= size).then(|| VMode::psi(crate::liealg::e(a as u8, b as u8), m))
    };
    let ev = |a: usize, b: usize| Some(VMode::even(crate::liealg::e(a as u8, b as u8), -1));
    let mut out = Formal::new();
    if odd {
        for r in i + 1..j {
            push(&mut out, Scalar::ratio(1, 2), &[ps(j, r, 0), ps(r, i, 0)]);
            push(&mut out, Scalar::ratio(-1, 2), &[ps(r, i, 0), ps(j, r, 0)]);
        }
        return out;
    }
    for a in i..j {
        push(&mut out, Scalar::one(), &[ev(a, i), ps(j, a, 0)]);
    }
    for a in i + 1..=j {
        push(&mut out, Scalar::from_int(-1), &[ps(a, i, 0), ev(j, a)]);
    }
    push(&mut out, alpha.clone(), &[ps(j, i, -1)]);
    push(&mut out, Scalar::one(), &[ps(j + 1, i, 0)]);
    if i > 1 {
        push(&mut out, Scalar::from_int(-1), &[ps(j, i - 1, 0)]);
    }
    out
}

/// Evaluates a formal right-nested expression as a state.
pub fn evaluate(va: &VertexAlgebra, f: &Formal) -> VState {
    let mut out = VState::zero();
    for (c, w) in f {
        out.add_scaled(&va.word(w), c);
    }
    out
}

/// `T̃_pq` on a formal word of principal modes: `x[m] ↦ x[m] ⊗ e_qp`,
/// multiplicative in the matrix sense `T̃_pq(xy) = Σ_r T̃_pr(x) T̃_rq(y)`.
pub fn tmap_tilde_word(p: usize, q: usize, word: &[VMode], shape: &Shape) -> Result<Formal, BrstError> {
    let n = shape.n;
    if p < 1 || q < 1 || p > n || q > n {
        return Err(BrstError::Index);
    }
    if word.is_empty() {
        return Ok(if p == q { vec![(Scalar::one(), Vec::new())] } else { Vec::new() });
    }
    let len = word.len();
    let mut out = Formal::new();
    // chains p = r_0, r_1, …, r_len = q
    let inner = len - 1;
    let mut idx = vec![1usize; inner];
    loop {
        let chain: Vec<usize> = std::iter::once(p).chain(idx.iter().copied()).chain(std::iter::once(q)).collect();
        let modes: Vec<VMode> = word
            .iter()
            .enumerate()
            .map(|(s, m)| {
                let label = shape.embed(TensorBasis {
                    i: m.x.i,
                    j: m.x.j,
                    p: chain[s + 1] as u8,
                    q: chain[s] as u8,
                });
                VMode { x: label, ..*m }
            })
            .collect();
        out.push((Scalar::one(), modes));
        let mut pos = 0;
        loop {
            if pos == inner {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] <= n {
                break;
            }
            idx[pos] = 1;
            pos += 1;
        }
    }
}

pub fn tmap_tilde(p: usize, q: usize, f: &Formal, shape: &Shape) -> Result<Formal, BrstError> {
    let mut out = Formal::new();
    for (c, w) in f {
        for (d, w2) in tmap_tilde_word(p, q, w, shape)? {
            out.push((c * &d, w2));
        }
    }
    Ok(out)
}

impl Brst {
    pub fn new(shape: Shape) -> Brst {
        Brst::on(VertexAlgebra::new(shape))
    }

    /// `Q` on a given `V^k(a)`; the level of `va` only enters through `κ_b`.
    pub fn on(va: VertexAlgebra) -> Brst {
        let shape = *va.shape();
        let params = QParams::at_level(shape, va.level());
        let mut images = HashMap::new();
        let l = shape.l;
        for x in shape.basis_b() {
            let t = shape.split(x);
            let (j, i, p, q) = (t.i as usize, t.j as usize, t.p as usize, t.q as usize);
            images.insert((x, false), evaluate(&va, &q_even_formal(&shape, &params.alpha, j, i, p, q)));
            if j > i && j <= l {
                images.insert((x, true), evaluate(&va, &q_odd_formal(&shape, j, i, p, q)));
            }
        }
        Brst {
            params,
            va,
            images,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &QParams {
        &self.params
    }

    pub fn algebra(&self) -> &VertexAlgebra {
        &self.va
    }

    /// `Q` on the generator state `x[−1]|0⟩` or `ψ_x[0]|0⟩`.
    pub fn q_on_generator(&self, x: GlBasis, odd: bool) -> VState {
        self.images.get(&(x, odd)).cloned().unwrap_or_default()
    }

    /// The generator relations as formal expressions.
    pub fn q_generator_formal(&self, x: GlBasis, odd: bool) -> Formal {
        let t = self.params.shape.split(x);
        let (j, i, p, q) = (t.i as usize, t.j as usize, t.p as usize, t.q as usize);
        if odd {
            q_odd_formal(&self.params.shape, j, i, p, q)
        } else {
            q_even_formal(&self.params.shape, &self.params.alpha, j, i, p, q)
        }
    }

    pub fn q_apply(&self, v: &VState) -> VState {
        let mut out = VState::zero();
        for (w, c) in v.terms() {
            out.add_scaled(&self.q_monomial(w), c);
        }
        out
    }

    fn q_monomial(&self, w: &[VMode]) -> VState {
        let Some((&g, rest)) = w.split_first() else {
            return VState::zero();
        };
        if let Some(hit) = self.cache.read().unwrap().get(w) {
            return hit.clone();
        }
        let rest_state = self.va.word(rest);
        let qu = self.q_on_generator(g.x, g.odd);
        let mut out = self.va.product(&qu, g.t as i32, &rest_state);
        let q_rest = self.q_monomial(rest);
        let sign = if g.odd { -1 } else { 1 };
        out.add_scaled(&self.va.mode_apply(g, &q_rest), &Scalar::from_int(sign));
        self.cache.write().unwrap().insert(w.to_vec(), out.clone());
        out
    }

    /// `Q v = 0` for `v ∈ V^k(b)`.
    pub fn is_closed(&self, v: &VState) -> Result<bool, BrstError> {
        if !v.in_vb() {
            return Err(BrstError::NotInVb);
        }
        Ok(self.q_apply(v).is_zero())
    }
}

/// Compares `[Q, T̃_pq(a)]` with `T̃_pq([Q̄, a])` for a principal generator
/// state `a`, the principal algebra taken at level `k̄`.
pub fn intertwining_defect(
    rect: &Brst,
    principal: &Brst,
    x: GlBasis,
    odd: bool,
    p: usize,
    q: usize,
) -> Result<VState, BrstError> {
    let shape = rect.params.shape;
    let gen = vec![(Scalar::one(), vec![if odd { VMode::psi(x, 0) } else { VMode::even(x, -1) }])];
    let lifted = evaluate(&rect.va, &tmap_tilde(p, q, &gen, &shape)?);
    let lhs = rect.q_apply(&lifted);
    let rhs = evaluate(&rect.va, &tmap_tilde(p, q, &principal.q_generator_formal(x, odd), &shape)?);
    Ok(lhs.sub(&rhs))
}

/// The principal comparison differential `Q̄` for a rectangular shape.
pub fn principal_comparison(shape: Shape) -> Brst {
    let bar = Shape::new(1, shape.l).expect("valid shape");
    Brst::on(VertexAlgebra::with_level(bar, shape.shifted_level()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::e;

    fn shape(n: usize, l: usize) -> Shape {
        Shape::new(n, l).unwrap()
    }

    #[test]
    fn generator_images_principal() {
        let q = Brst::new(shape(1, 2));
        let va = q.algebra();
        assert_eq!(q.q_on_generator(e(1, 1), false), va.generator(e(2, 1), true));
        let expected = va
            .word(&[VMode::even(e(1, 1), -1), VMode::psi(e(2, 1), 0)])
            .sub(&va.word(&[VMode::psi(e(2, 1), 0), VMode::even(e(2, 2), -1)]))
            .add(&va.word(&[VMode::psi(e(2, 1), -1)]).scale(&Scalar::k_plus(1)));
        assert_eq!(q.q_on_generator(e(2, 1), false), expected);
        let q3 = Brst::new(shape(1, 3));
        let expected = q3.algebra().word(&[VMode::psi(e(3, 2), 0), VMode::psi(e(2, 1), 0)]);
        assert_eq!(q3.q_on_generator(e(3, 1), true), expected);
    }

    #[test]
    fn vacuum_and_first_generator() {
        let q = Brst::new(shape(1, 2));
        let va = q.algebra();
        assert!(q.q_apply(&VState::vacuum()).is_zero());
        let w1 = va.generator(e(1, 1), false).add(&va.generator(e(2, 2), false));
        assert!(q.is_closed(&w1).unwrap());
        assert!(!q.is_closed(&va.generator(e(2, 1), false)).unwrap());
        assert_eq!(q.is_closed(&va.generator(e(2, 1), true)), Err(BrstError::NotInVb));
    }

    #[test]
    fn second_generator_principal_two() {
        let q = Brst::new(shape(1, 2));
        let va = q.algebra();
        let w2 = va
            .word(&[VMode::even(e(1, 1), -1), VMode::even(e(2, 2), -1)])
            .add(&va.generator(e(2, 1), false))
            .add(&va.word(&[VMode::even(e(2, 2), -2)]).scale(&Scalar::k_plus(1)));
        assert!(q.is_closed(&w2).unwrap());
    }

    #[test]
    fn rectangular_relations_specialize() {
        for l in 2..=4 {
            let s = shape(1, l);
            let q = Brst::new(s);
            for x in s.basis_b() {
                for odd in [false, true] {
                    if odd && !s.in_m(x) {
                        continue;
                    }
                    let direct = evaluate(q.algebra(), &q_principal_formal(l, &s.alpha(), x, odd));
                    assert_eq!(q.q_on_generator(x, odd), direct, "{x} {odd}");
                }
            }
        }
    }

    #[test]
    fn q_squared_on_generators() {
        for (n, l) in [(1, 2), (1, 3), (2, 2)] {
            let s = shape(n, l);
            let q = Brst::new(s);
            for x in s.basis_b() {
                for odd in [false, true] {
                    if odd && !s.in_m(x) {
                        continue;
                    }
                    let img = q.q_on_generator(x, odd);
                    assert!(q.q_apply(&img).is_zero(), "Q^2 on {x} odd={odd} at {s}");
                }
            }
        }
    }

    #[test]
    fn commutes_with_translation() {
        let s = shape(2, 2);
        let q = Brst::new(s);
        let va = q.algebra();
        let states = [
            va.generator(e(3, 1), false),
            va.word(&[VMode::even(e(1, 1), -1), VMode::even(e(4, 3), -1)]),
            va.word(&[VMode::psi(e(3, 2), 0), VMode::even(e(2, 1), -2)]),
        ];
        for a in &states {
            assert_eq!(q.q_apply(&va.translate(a)), va.translate(&q.q_apply(a)));
        }
    }

    #[test]
    fn tilde_map_examples() {
        let s = shape(2, 2);
        let gen = vec![(Scalar::one(), vec![VMode::even(e(2, 1), -1)])];
        let t = tmap_tilde(1, 1, &gen, &s).unwrap();
        assert_eq!(t, vec![(Scalar::one(), vec![VMode::even(e(3, 1), -1)])]);
        let vac = vec![(Scalar::one(), Vec::new())];
        assert_eq!(tmap_tilde(1, 1, &vac, &s).unwrap().len(), 1);
        assert!(tmap_tilde(1, 2, &vac, &s).unwrap().is_empty());
        assert_eq!(tmap_tilde(3, 1, &vac, &s), Err(BrstError::Index));
        let two = vec![(Scalar::one(), vec![VMode::even(e(1, 1), -1), VMode::even(e(2, 2), -1)])];
        assert_eq!(tmap_tilde(1, 2, &two, &s).unwrap().len(), 2);
    }

    #[test]
    fn intertwining_on_generators() {
        let s = shape(2, 2);
        let rect = Brst::new(s);
        let bar = principal_comparison(s);
        let ps = Shape::new(1, 2).unwrap();
        for x in ps.basis_b() {
            for odd in [false, true] {
                if odd && !ps.in_m(x) {
                    continue;
                }
                for p in 1..=2 {
                    for q in 1..=2 {
                        let d = intertwining_defect(&rect, &bar, x, odd, p, q).unwrap();
                        assert!(d.is_zero(), "{x} {odd} {p}{q}: {d}");
                    }
                }
            }
        }
    }
}
