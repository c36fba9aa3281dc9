//! The vertex superalgebra `V^k(a)` induced from `b[t] ⊕ C1 ⊕ m[t]`.
//!
//! Modes are `x t^r` for `x ∈ b` (even) and `X t^r` for `X ∈ m` (odd). The odd
//! mode `ψ_X[m]` is `X t^{m−1}`, so `ψ_X[0]|0⟩ = X t^{−1}|0⟩`. A mode with
//! `r ≤ −1` creates, `r ≥ 0` annihilates the vacuum. States are linear
//! combinations of PBW-ordered creation monomials.
//!
//! Every generator state `u = X t^{−1}|0⟩` has field modes `u_(n) = X t^n`;
//! products with composite left arguments are reduced to these by the
//! iterate formula
//!
//! `(u_(m)a)_(n)c = Σ_j (−1)^j C(m,j) [u_(m−j) a_(n+j) c − (−1)^{m+|u||a|} a_(m+n−j) u_(j) c]`.
//!
//! States are graded by weight (sum of `−r` over modes); `a_(n)b` has weight
//! `wt a + wt b − n − 1`, which bounds every sum.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use thiserror::Error;

use crate::coeff::Scalar;
use crate::liealg::{basis_bracket, kappa_b_basis_at, GlBasis, Shape};
use crate::pbw::{AlgElem, Flavor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VertexError {
    #[error("state of weight {weight} exceeds the weight bound {bound}")]
    WeightBound { weight: u32, bound: u32 },
    #[error("element still contains τ")]
    HasTau,
    #[error("expected an element of the enveloping algebra")]
    NotEnveloping,
    #[error("label {0} is not allowed for this mode parity")]
    BadLabel(GlBasis),
}

pub const DEFAULT_WEIGHT_BOUND: u32 = 8;

/// `x t^t`; odd modes carry labels in `m`, even ones labels in `b`.
///
/// The derived order (power, parity, row, column) is the PBW order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VMode {
    pub t: i16,
    pub odd: bool,
    pub x: GlBasis,
}

impl VMode {
    /// `x[r] = x t^r`
    pub fn even(x: GlBasis, r: i16) -> VMode {
        VMode { t: r, odd: false, x }
    }

    /// `ψ_X[m] = X t^{m−1}`
    pub fn psi(x: GlBasis, m: i16) -> VMode {
        VMode { t: m - 1, odd: true, x }
    }

    pub fn with_power(self, t: i16) -> VMode {
        VMode { t, ..self }
    }

    pub fn is_creation(&self) -> bool {
        self.t < 0
    }

    /// The label used in print: `r` for even modes, `m = r + 1` for odd ones.
    pub fn label_index(&self) -> i16 {
        if self.odd {
            self.t + 1
        } else {
            self.t
        }
    }
}

impl fmt::Display for VMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.odd { "psi" } else { "e" };
        let (i, j) = (self.x.i, self.x.j);
        if i < 10 && j < 10 {
            write!(f, "{name}_{i}{j}[{}]", self.label_index())
        } else {
            write!(f, "{name}_{{{i},{j}}}[{}]", self.label_index())
        }
    }
}

pub type Monomial = Vec<VMode>;

fn weight_of(w: &[VMode]) -> u32 {
    w.iter().map(|m| (-(m.t as i32)) as u32).sum()
}

fn parity_of(w: &[VMode]) -> bool {
    w.iter().filter(|m| m.odd).count() % 2 == 1
}

/// A vector of `V^k(a)` in the PBW monomial basis.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VState {
    terms: BTreeMap<Monomial, Scalar>,
}

impl VState {
    pub fn zero() -> VState {
        VState::default()
    }

    pub fn vacuum() -> VState {
        VState::monomial(Vec::new(), Scalar::one())
    }

    fn monomial(w: Monomial, c: Scalar) -> VState {
        let mut s = VState::zero();
        s.push(w, &c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// The first monomial with its coefficient, or zero.
    pub fn first_term(&self) -> VState {
        match self.terms.iter().next() {
            Some((w, c)) => VState::monomial(w.clone(), c.clone()),
            None => VState::zero(),
        }
    }

    /// Builds a state from monomials that are already in PBW order.
    pub fn from_monomials(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> VState {
        let mut s = VState::zero();
        for (w, c) in terms {
            s.push(w, &c);
        }
        s
    }

    pub fn coeff(&self, w: &[VMode]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    fn push(&mut self, w: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &VState, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            if c.is_one() {
                self.push(w.clone(), v);
            } else {
                self.push(w.clone(), &(v * c));
            }
        }
    }

    pub fn add(&self, other: &VState) -> VState {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &VState) -> VState {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> VState {
        let mut out = VState::zero();
        out.add_scaled(self, c);
        out
    }

    /// Largest weight among the monomials (0 for the zero vector).
    pub fn weight(&self) -> u32 {
        self.terms.keys().map(|w| weight_of(w)).max().unwrap_or(0)
    }

    /// `Some(parity)` if homogeneous; the zero vector is even.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|w| parity_of(w));
        let first = it.next().unwrap_or(false);
        it.all(|p| p == first).then_some(first)
    }

    /// True if every monomial only uses even modes.
    pub fn in_vb(&self) -> bool {
        self.terms.keys().all(|w| w.iter().all(|m| !m.odd))
    }

    /// Keeps the monomials of the given weight.
    pub fn weight_component(&self, weight: u32) -> VState {
        let mut out = VState::zero();
        for (w, c) in &self.terms {
            if weight_of(w) == weight {
                out.push(w.clone(), c);
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (w, c) in &self.terms {
            let body: Vec<String> = w
                .iter()
                .map(|m| {
                    if latex {
                        let name = if m.odd { "\\psi" } else { "e" };
                        format!("{name}_{{{}{}}}[{}]", m.x.i, m.x.j, m.label_index())
                    } else {
                        m.to_string()
                    }
                })
                .collect();
            let vac = if latex { "|0\\rangle" } else { "|0>" };
            let body = format!("{}{}", body.join(if latex { "\\," } else { " " }), vac);
            let cs = if latex { c.to_latex() } else { c.to_string() };
            if c.is_one() {
                parts.push(body);
            } else {
                parts.push(format!("({cs}) {body}"));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for VState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

fn binomial_signed(m: i64, j: u32) -> i64 {
    let mut acc: i64 = 1;
    for t in 0..j as i64 {
        acc = acc * (m - t) / (t + 1);
    }
    acc
}

/// `V^k(a)` for a rectangular shape at a given level, with memoized mode
/// actions and products.
pub struct VertexAlgebra {
    shape: Shape,
    level: Scalar,
    weight_bound: u32,
    kappa: HashMap<(GlBasis, GlBasis), Scalar>,
    mode_cache: RwLock<HashMap<(VMode, Monomial), VState>>,
    product_cache: RwLock<HashMap<(Monomial, i32, Monomial), VState>>,
}

impl fmt::Debug for VertexAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VertexAlgebra")
            .field("shape", &self.shape)
            .field("level", &self.level.to_string())
            .finish()
    }
}

impl VertexAlgebra {
    pub fn new(shape: Shape) -> VertexAlgebra {
        VertexAlgebra::with_level(shape, Scalar::k())
    }

    /// The same algebra with `k` replaced by `level` in `κ_b`.
    pub fn with_level(shape: Shape, level: Scalar) -> VertexAlgebra {
        let mut kappa = HashMap::new();
        let basis = shape.basis_b();
        for &x in &basis {
            for &y in &basis {
                let v = kappa_b_basis_at(x, y, &shape, &level);
                if !v.is_zero() {
                    kappa.insert((x, y), v);
                }
            }
        }
        VertexAlgebra {
            shape,
            level,
            weight_bound: DEFAULT_WEIGHT_BOUND,
            kappa,
            mode_cache: RwLock::new(HashMap::new()),
            product_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_weight_bound(mut self, bound: u32) -> VertexAlgebra {
        self.weight_bound = bound;
        self
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn level(&self) -> &Scalar {
        &self.level
    }

    pub fn weight_bound(&self) -> u32 {
        self.weight_bound
    }

    pub fn kappa_b(&self, x: GlBasis, y: GlBasis) -> Scalar {
        self.kappa.get(&(x, y)).cloned().unwrap_or_default()
    }

    pub fn check_mode(&self, m: VMode) -> Result<(), VertexError> {
        let ok = self.shape.contains(m.x) && if m.odd { self.shape.in_m(m.x) } else { self.shape.in_b(m.x) };
        if ok {
            Ok(())
        } else {
            Err(VertexError::BadLabel(m.x))
        }
    }

    fn check_weight(&self, s: &VState) -> Result<(), VertexError> {
        let weight = s.weight();
        if weight > self.weight_bound {
            return Err(VertexError::WeightBound {
                weight,
                bound: self.weight_bound,
            });
        }
        Ok(())
    }

    /// `x t^{−1}|0⟩` (even) or `ψ_x[0]|0⟩` (odd).
    pub fn generator(&self, x: GlBasis, odd: bool) -> VState {
        let m = VMode { t: -1, odd, x };
        debug_assert!(self.check_mode(m).is_ok());
        VState::monomial(vec![m], Scalar::one())
    }

    /// `m_1 m_2 ⋯ m_k |0⟩` for creation or annihilation modes in any order.
    pub fn word(&self, modes: &[VMode]) -> VState {
        let mut s = VState::vacuum();
        for &m in modes.iter().rev() {
            s = self.mode_apply(m, &s);
        }
        s
    }

    /// Supercommutator `[g, h}` as modes plus a central multiple of `1`.
    fn super_bracket(&self, g: VMode, h: VMode) -> (Vec<(VMode, i64)>, Scalar) {
        if g.odd && h.odd {
            return (Vec::new(), Scalar::zero());
        }
        let odd = g.odd || h.odd;
        let t = g.t + h.t;
        let modes = basis_bracket(g.x, h.x).map(|(z, s)| (VMode { t, odd, x: z }, s)).collect();
        let central = if !odd && t == 0 && g.t != 0 {
            &self.kappa_b(g.x, h.x) * &Scalar::from_int(g.t as i64)
        } else {
            Scalar::zero()
        };
        (modes, central)
    }

    /// The action of a single mode on a state.
    pub fn mode_apply(&self, g: VMode, v: &VState) -> VState {
        let mut out = VState::zero();
        for (w, c) in &v.terms {
            out.add_scaled(&self.apply_to_monomial(g, w), c);
        }
        out
    }

    fn apply_to_monomial(&self, g: VMode, w: &[VMode]) -> VState {
        match w.first() {
            None if g.is_creation() => return VState::monomial(vec![g], Scalar::one()),
            None => return VState::zero(),
            Some(&c1) if g.is_creation() && g <= c1 => {
                if g == c1 && g.odd {
                    return VState::zero();
                }
                let mut m = Vec::with_capacity(w.len() + 1);
                m.push(g);
                m.extend_from_slice(w);
                return VState::monomial(m, Scalar::one());
            }
            Some(_) => {}
        }
        let key = (g, w.to_vec());
        if let Some(hit) = self.mode_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let c1 = w[0];
        let rest = &w[1..];
        let mut out = VState::zero();
        let (modes, central) = self.super_bracket(g, c1);
        for (m, s) in modes {
            out.add_scaled(&self.apply_to_monomial(m, rest), &Scalar::from_int(s));
        }
        if !central.is_zero() {
            out.push(rest.to_vec(), &central);
        }
        let sign = if g.odd && c1.odd { -1 } else { 1 };
        let inner = self.apply_to_monomial(g, rest);
        for (w2, c) in &inner.terms {
            out.add_scaled(&self.apply_to_monomial(c1, w2), &(c * &Scalar::from_int(sign)));
        }
        self.mode_cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// `a_(n) b`.
    pub fn nth_product(&self, a: &VState, n: i32, b: &VState) -> Result<VState, VertexError> {
        self.check_weight(a)?;
        self.check_weight(b)?;
        Ok(self.product(a, n, b))
    }

    /// `a_(n) b` without the weight bound check.
    pub fn product(&self, a: &VState, n: i32, b: &VState) -> VState {
        let mut out = VState::zero();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let p = self.product_monomials(wa, n, wb);
                out.add_scaled(&p, &(ca * cb));
            }
        }
        out
    }

    fn product_monomials(&self, a: &[VMode], n: i32, c: &[VMode]) -> VState {
        if a.is_empty() {
            return if n == -1 {
                VState::monomial(c.to_vec(), Scalar::one())
            } else {
                VState::zero()
            };
        }
        // a_(n) c vanishes below weight 0
        if weight_of(a) as i64 + weight_of(c) as i64 - n as i64 - 1 < 0 {
            return VState::zero();
        }
        let g = a[0];
        let rest = &a[1..];
        if rest.is_empty() && g.t == -1 {
            return self.apply_to_monomial(g.with_power(n as i16), c);
        }
        let key = (a.to_vec(), n, c.to_vec());
        if let Some(hit) = self.product_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let e = g.t as i64;
        let rest_state = VState::monomial(rest.to_vec(), Scalar::one());
        let (wt_rest, wt_c) = (weight_of(rest) as i64, weight_of(c) as i64);
        let mut out = VState::zero();
        // Σ_j (−1)^j C(e,j) u_(e−j) (rest_(n+j) c)
        let mut j = 0i64;
        while n as i64 + j < wt_rest + wt_c {
            let coef = binomial_signed(e, j as u32) * if j % 2 == 0 { 1 } else { -1 };
            let inner = self.product_monomials(rest, n + j as i32, c);
            if !inner.is_zero() {
                let applied = self.mode_apply(g.with_power((e - j) as i16), &inner);
                out.add_scaled(&applied, &Scalar::from_int(coef));
            }
            j += 1;
        }
        // − (−1)^{e + |u||rest|} Σ_j (−1)^j C(e,j) rest_(e+n−j) (u_(j) c)
        let swap_sign = if (g.odd && parity_of(rest)) ^ (e.rem_euclid(2) == 1) { 1 } else { -1 };
        for j in 0..=wt_c {
            let inner = self.apply_to_monomial(g.with_power(j as i16), c);
            if inner.is_zero() {
                continue;
            }
            let coef = binomial_signed(e, j as u32) * if j % 2 == 0 { 1 } else { -1 } * swap_sign;
            let prod = self.product(&rest_state, (e + n as i64 - j) as i32, &inner);
            out.add_scaled(&prod, &Scalar::from_int(coef));
        }
        self.product_cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// The translation operator `D`, `[D, x t^r] = −r x t^{r−1}`, `D|0⟩ = 0`.
    pub fn translate(&self, a: &VState) -> VState {
        let mut out = VState::zero();
        for (w, c) in &a.terms {
            for pos in 0..w.len() {
                let m = w[pos];
                let mut modes = w.clone();
                modes[pos] = m.with_power(m.t - 1);
                let factor = Scalar::from_int(-(m.t as i64));
                out.add_scaled(&self.word(&modes), &(c * &factor));
            }
        }
        out
    }

    /// `u ↦ u|0⟩` from `U(b[t⁻¹]t⁻¹)` onto the even part `V^k(b)`.
    pub fn embed_alg(&self, a: &AlgElem) -> Result<VState, VertexError> {
        if a.flavor() != Flavor::Enveloping {
            return Err(VertexError::NotEnveloping);
        }
        let mut out = VState::zero();
        for (t, c) in a.terms() {
            if t.tau != 0 {
                return Err(VertexError::HasTau);
            }
            let modes: Vec<VMode> = t.word.iter().map(|m| VMode::even(m.x, -(m.depth as i16))).collect();
            for &m in &modes {
                self.check_mode(m)?;
            }
            out.add_scaled(&self.word(&modes), c);
        }
        Ok(out)
    }

    /// Inverse of [`VertexAlgebra::embed_alg`] on `V^k(b)`.
    pub fn to_alg(&self, v: &VState) -> Option<AlgElem> {
        let mut out = AlgElem::zero(Flavor::Enveloping);
        for (w, c) in &v.terms {
            if w.iter().any(|m| m.odd) {
                return None;
            }
            let word: Vec<crate::pbw::Mode> = w.iter().map(|m| crate::pbw::Mode::new(m.x, (-m.t) as u8)).collect();
            out = out.add(&AlgElem::from_word(Flavor::Enveloping, &word, 0, c));
        }
        Some(out)
    }
}

/// Identities of vertex algebras, each returned as `lhs − rhs`.
impl VertexAlgebra {
    fn sign(&self, a: &VState, b: &VState) -> i64 {
        let pa = a.parity().unwrap_or(false);
        let pb = b.parity().unwrap_or(false);
        if pa && pb {
            -1
        } else {
            1
        }
    }

    fn divided_translate(&self, a: &VState, j: u32) -> VState {
        let mut out = a.clone();
        for t in 1..=j {
            out = self.translate(&out).scale(&Scalar::ratio(1, t as i64));
        }
        out
    }

    /// `a_(n)b + (−1)^{|a||b|} Σ_j (−1)^{n+j} D^(j)(b_(n+j)a)`
    pub fn skew_symmetry_defect(&self, a: &VState, n: i32, b: &VState) -> VState {
        let mut out = self.product(a, n, b);
        let top = (a.weight() + b.weight()) as i32;
        let sign = self.sign(a, b);
        let mut j = 0;
        while n + j <= top {
            let inner = self.product(b, n + j, a);
            let s = sign * if (n + j).rem_euclid(2) == 0 { 1 } else { -1 };
            out.add_scaled(&self.divided_translate(&inner, j as u32), &Scalar::from_int(s));
            j += 1;
        }
        out
    }

    /// `a_(m)b_(n)c − (−1)^{|a||b|} b_(n)a_(m)c − Σ_j C(m,j) (a_(j)b)_(m+n−j)c`
    pub fn commutator_defect(&self, a: &VState, m: i32, b: &VState, n: i32, c: &VState) -> VState {
        let mut out = self.product(a, m, &self.product(b, n, c));
        let swapped = self.product(b, n, &self.product(a, m, c));
        out.add_scaled(&swapped, &Scalar::from_int(-self.sign(a, b)));
        let top = (a.weight() + b.weight()) as i32;
        for j in 0..=top {
            let ab = self.product(a, j, b);
            if ab.is_zero() {
                continue;
            }
            let coef = binomial_signed(m as i64, j as u32);
            out.add_scaled(&self.product(&ab, m + n - j, c), &Scalar::from_int(-coef));
        }
        out
    }

    /// `(a_(−1)b)_(−1)c − a_(−1)(b_(−1)c) − Σ_j a_(−j−2)b_(j)c − (−1)^{|a||b|} Σ_j b_(−j−2)a_(j)c`
    pub fn quasi_associativity_defect(&self, a: &VState, b: &VState, c: &VState) -> VState {
        let mut out = self.product(&self.product(a, -1, b), -1, c);
        out.add_scaled(&self.product(a, -1, &self.product(b, -1, c)), &Scalar::from_int(-1));
        let sign = self.sign(a, b);
        for j in 0..=(b.weight() + c.weight()) as i32 {
            let bc = self.product(b, j, c);
            out.add_scaled(&self.product(a, -j - 2, &bc), &Scalar::from_int(-1));
        }
        for j in 0..=(a.weight() + c.weight()) as i32 {
            let ac = self.product(a, j, c);
            out.add_scaled(&self.product(b, -j - 2, &ac), &Scalar::from_int(-sign));
        }
        out
    }

    /// `D(a_(n)b) − (Da)_(n)b − a_(n)Db` and `(Da)_(n)b + n a_(n−1)b`.
    pub fn translation_defects(&self, a: &VState, n: i32, b: &VState) -> (VState, VState) {
        let da = self.translate(a);
        let mut leibniz = self.translate(&self.product(a, n, b));
        leibniz.add_scaled(&self.product(&da, n, b), &Scalar::from_int(-1));
        leibniz.add_scaled(&self.product(a, n, &self.translate(b)), &Scalar::from_int(-1));
        let mut shift = self.product(&da, n, b);
        shift.add_scaled(&self.product(a, n - 1, b), &Scalar::from_int(n as i64));
        (leibniz, shift)
    }

    /// A random homogeneous state of weight at most `max_weight`.
    pub fn random_state<R: rand::Rng>(&self, rng: &mut R, max_weight: u32, odd: bool) -> VState {
        let even_labels = self.shape.basis_b();
        let odd_labels = self.shape.basis_m();
        let terms = rng.gen_range(1..=2);
        let mut out = VState::zero();
        let mut attempts = 0;
        while out.len() < terms && attempts < 200 {
            attempts += 1;
            let mut budget = rng.gen_range(1..=max_weight.max(1)) as i16;
            let mut modes = Vec::new();
            let mut parity = false;
            while budget > 0 {
                let depth = rng.gen_range(1..=budget.min(2));
                let use_odd = !odd_labels.is_empty() && rng.gen_bool(0.35);
                let x = if use_odd {
                    odd_labels[rng.gen_range(0..odd_labels.len())]
                } else {
                    even_labels[rng.gen_range(0..even_labels.len())]
                };
                parity ^= use_odd;
                modes.push(VMode { t: -depth, odd: use_odd, x });
                budget -= depth;
            }
            if parity != odd {
                continue;
            }
            let c = if rng.gen_bool(0.3) { Scalar::k_plus(rng.gen_range(-2..=2)) } else { Scalar::from_int(rng.gen_range(1..=3)) };
            out.add_scaled(&self.word(&modes), &c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::e;

    fn alg(n: usize, l: usize) -> VertexAlgebra {
        VertexAlgebra::new(Shape::new(n, l).unwrap())
    }

    #[test]
    fn central_contraction() {
        let v = alg(2, 2);
        let y = v.generator(e(2, 1), false);
        let r = v.mode_apply(VMode::even(e(1, 2), 1), &y);
        assert_eq!(r, VState::vacuum().scale(&Scalar::k_plus(2)));
        let r = v.mode_apply(VMode::even(e(1, 1), 1), &v.generator(e(1, 1), false));
        assert_eq!(r, VState::vacuum().scale(&v.kappa_b(e(1, 1), e(1, 1))));
    }

    #[test]
    fn zero_mode_acts_by_bracket() {
        let v = alg(1, 2);
        let r = v.mode_apply(VMode::even(e(1, 1), 0), &v.generator(e(2, 1), false));
        assert_eq!(r, v.generator(e(2, 1), false).scale(&Scalar::from_int(-1)));
    }

    #[test]
    fn odd_modes_anticommute() {
        let v = alg(1, 2);
        let psi = v.generator(e(2, 1), true);
        assert!(v.mode_apply(VMode::psi(e(2, 1), 1), &psi).is_zero());
        assert!(v.mode_apply(VMode::psi(e(2, 1), 0), &psi).is_zero());
        let v3 = alg(1, 3);
        let a = v3.word(&[VMode::psi(e(3, 2), 0), VMode::psi(e(2, 1), 0)]);
        let b = v3.word(&[VMode::psi(e(2, 1), 0), VMode::psi(e(3, 2), 0)]);
        assert_eq!(a, b.scale(&Scalar::from_int(-1)));
    }

    #[test]
    fn current_algebra_products() {
        let v = alg(1, 2);
        let x = v.generator(e(2, 2), false);
        let y = v.generator(e(2, 1), false);
        let p0 = v.nth_product(&x, 0, &y).unwrap();
        assert_eq!(p0, y);
        let p1 = v.nth_product(&x, 1, &x).unwrap();
        assert_eq!(p1, VState::vacuum().scale(&v.kappa_b(e(2, 2), e(2, 2))));
        let pm1 = v.nth_product(&x, -1, &y).unwrap();
        assert_eq!(pm1, v.word(&[VMode::even(e(2, 2), -1), VMode::even(e(2, 1), -1)]));
        assert!(v.nth_product(&x, 2, &y).unwrap().is_zero());
    }

    #[test]
    fn translation() {
        let v = alg(2, 2);
        let x = v.generator(e(3, 1), false);
        assert_eq!(v.translate(&x), v.word(&[VMode::even(e(3, 1), -2)]));
        assert!(v.translate(&VState::vacuum()).is_zero());
        let xy = v.word(&[VMode::even(e(1, 1), -1), VMode::even(e(3, 3), -1)]);
        let expected = v
            .word(&[VMode::even(e(1, 1), -2), VMode::even(e(3, 3), -1)])
            .add(&v.word(&[VMode::even(e(1, 1), -1), VMode::even(e(3, 3), -2)]));
        assert_eq!(v.translate(&xy), expected);
        let psi = v.generator(e(3, 1), true);
        assert_eq!(v.translate(&psi), v.word(&[VMode::psi(e(3, 1), -1)]));
        let psi2 = v.word(&[VMode::psi(e(3, 1), -1)]);
        assert_eq!(v.translate(&psi2), v.word(&[VMode::psi(e(3, 1), -2)]).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn embedding_of_enveloping_words() {
        use crate::pbw::Mode;
        let v = alg(1, 2);
        let a = AlgElem::from_word(Flavor::Enveloping, &[Mode::new(e(1, 1), 1), Mode::new(e(2, 2), 1)], 0, &Scalar::one());
        assert_eq!(
            v.embed_alg(&a).unwrap(),
            v.word(&[VMode::even(e(1, 1), -1), VMode::even(e(2, 2), -1)])
        );
        assert_eq!(v.embed_alg(&AlgElem::one(Flavor::Enveloping)).unwrap(), VState::vacuum());
        let b = AlgElem::mode(Flavor::Enveloping, e(2, 2), 2).scale(&Scalar::k_plus(1));
        assert_eq!(v.embed_alg(&b).unwrap(), v.word(&[VMode::even(e(2, 2), -2)]).scale(&Scalar::k_plus(1)));
        assert_eq!(v.embed_alg(&AlgElem::tau(Flavor::Enveloping)), Err(VertexError::HasTau));
        assert_eq!(v.to_alg(&v.embed_alg(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn vacuum_axioms() {
        let v = alg(2, 2);
        let a = v.word(&[VMode::even(e(1, 2), -2), VMode::psi(e(3, 1), 0), VMode::even(e(4, 1), -1)]);
        assert_eq!(v.nth_product(&VState::vacuum(), -1, &a).unwrap(), a);
        assert_eq!(v.nth_product(&a, -1, &VState::vacuum()).unwrap(), a);
        for n in 0..4 {
            assert!(v.nth_product(&a, n, &VState::vacuum()).unwrap().is_zero());
        }
    }

    #[test]
    fn weight_bound_is_enforced() {
        let v = alg(1, 2).with_weight_bound(2);
        let a = v.word(&[VMode::even(e(1, 1), -3)]);
        assert!(matches!(v.nth_product(&a, 0, &a), Err(VertexError::WeightBound { .. })));
    }

    fn axiom_suite(n: usize, l: usize, seed: u64, count: usize) {
        use rand::{Rng, SeedableRng};
        let v = alg(n, l);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            let pa = rng.gen_bool(0.3);
            let pb = rng.gen_bool(0.3);
            let a = v.random_state(&mut rng, 2, pa);
            let b = v.random_state(&mut rng, 2, pb);
            let pc = rng.gen_bool(0.3);
            let c = v.random_state(&mut rng, 2, pc);
            let (m, k) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            assert!(v.skew_symmetry_defect(&a, m, &b).is_zero(), "skew {a} ({m}) {b}");
            assert!(v.commutator_defect(&a, m, &b, k, &c).is_zero(), "comm {a} {b} {c}");
            assert!(v.quasi_associativity_defect(&a, &b, &c).is_zero(), "qa {a} {b} {c}");
            let (d1, d2) = v.translation_defects(&a, m, &b);
            assert!(d1.is_zero() && d2.is_zero(), "D {a} {b}");
        }
    }

    #[test]
    fn axioms_principal() {
        axiom_suite(1, 2, 7, 25);
        axiom_suite(1, 3, 8, 15);
    }

    #[test]
    fn axioms_rectangular() {
        axiom_suite(2, 2, 9, 15);
    }
}
