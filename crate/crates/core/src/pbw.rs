//! Associative layer: `U(b[t⁻¹]t⁻¹) ⊗ C[τ]` in PBW normal form, the free
//! algebra `T(gl_{l,≤0}[t⁻¹]t⁻¹) ⊗ C[τ]`, column- and row-determinants, and
//! the homomorphisms `T_ij` from the free algebra to the enveloping one.
//!
//! Every stored word has `τ` commuted fully to the right using
//! `[τ, x[−m]] = m x[−m−1]`. In the enveloping flavor words are additionally
//! sorted by the PBW order on modes (depth descending, then row, then column).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::coeff::Scalar;
use crate::liealg::{basis_bracket, GlBasis, Shape, TensorBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
    #[error("index out of range: {0}")]
    Index(String),
    #[error("flavor mismatch")]
    FlavorMismatch,
    #[error("matrix is not square")]
    NotSquare,
}

/// `x[−depth]` for a matrix unit `x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mode {
    pub x: GlBasis,
    pub depth: u8,
}

impl Mode {
    pub fn new(x: GlBasis, depth: u8) -> Mode {
        debug_assert!(depth >= 1);
        Mode { x, depth }
    }
}

impl Ord for Mode {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .depth
            .cmp(&self.depth)
            .then(self.x.i.cmp(&other.x.i))
            .then(self.x.j.cmp(&other.x.j))
    }
}

impl PartialOrd for Mode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[-{}]", self.x, self.depth)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    /// PBW-ordered words in `U(b[t⁻¹]t⁻¹)`, labels are `gl_N` matrix units.
    Enveloping,
    /// Unrestricted words in the tensor algebra, labels are `gl_l` matrix units.
    Free,
}

pub type Word = Vec<Mode>;

/// A word followed by `τ^tau`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Term {
    pub word: Word,
    pub tau: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgElem {
    flavor: Flavor,
    terms: BTreeMap<Term, Scalar>,
}

type IntComb = BTreeMap<Word, i64>;

fn add_int(acc: &mut IntComb, w: Word, c: i64) {
    if c == 0 {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let v = o.get().checked_add(c).expect("PBW coefficient overflow");
            if v == 0 {
                o.remove();
            } else {
                *o.get_mut() = v;
            }
        }
    }
}

/// `m · w` in `U` for a PBW-sorted word `w`, as a PBW combination.
fn insert_left(m: Mode, word: &[Mode]) -> IntComb {
    let mut out = IntComb::new();
    match word.first() {
        Some(&w0) if m > w0 => {
            let rest = &word[1..];
            // m w0 rest = w0 (m rest) + [m, w0] rest
            for (r, c) in insert_left(m, rest) {
                for (r2, c2) in insert_left(w0, &r) {
                    add_int(&mut out, r2, c * c2);
                }
            }
            for (z, s) in basis_bracket(m.x, w0.x) {
                for (r, c) in insert_left(Mode::new(z, m.depth + w0.depth), rest) {
                    add_int(&mut out, r, s * c);
                }
            }
        }
        _ => {
            let mut w = Vec::with_capacity(word.len() + 1);
            w.push(m);
            w.extend_from_slice(word);
            out.insert(w, 1);
        }
    }
    out
}

/// PBW normal form of an arbitrary word in `U(b[t⁻¹]t⁻¹)`.
pub fn straighten(word: &[Mode]) -> IntComb {
    let mut acc = IntComb::new();
    acc.insert(Vec::new(), 1);
    for &m in word.iter().rev() {
        let mut next = IntComb::new();
        for (w, c) in acc {
            for (w2, c2) in insert_left(m, &w) {
                add_int(&mut next, w2, c * c2);
            }
        }
        acc = next;
    }
    acc
}

/// Which adjacent disorder a rewriting step resolves first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RewriteOrder {
    Leftmost,
    Rightmost,
}

/// PBW normal form by repeated rewriting `y x → x y + [y,x]` of a single
/// adjacent disorder. Independent of [`straighten`]; used to check confluence.
pub fn rewrite_normalize(word: &[Mode], order: RewriteOrder) -> IntComb {
    let mut pending: Vec<(Word, i64)> = vec![(word.to_vec(), 1)];
    let mut done = IntComb::new();
    while let Some((w, c)) = pending.pop() {
        let mut disorders = (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]);
        let pos = match order {
            RewriteOrder::Leftmost => disorders.next(),
            RewriteOrder::Rightmost => disorders.next_back(),
        };
        let Some(p) = pos else {
            add_int(&mut done, w, c);
            continue;
        };
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        pending.push((swapped, c));
        let (y, x) = (w[p], w[p + 1]);
        for (z, s) in basis_bracket(y.x, x.x) {
            let mut shorter = w[..p].to_vec();
            shorter.push(Mode::new(z, y.depth + x.depth));
            shorter.extend_from_slice(&w[p + 2..]);
            pending.push((shorter, c * s));
        }
    }
    done
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut acc: i64 = 1;
    for t in 0..k as i64 {
        acc = acc * (n as i64 - t) / (t + 1);
    }
    acc
}

impl AlgElem {
    pub fn zero(flavor: Flavor) -> AlgElem {
        AlgElem {
            flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(flavor: Flavor, c: Scalar) -> AlgElem {
        let mut a = AlgElem::zero(flavor);
        a.push(Term { word: Vec::new(), tau: 0 }, &c);
        a
    }

    pub fn one(flavor: Flavor) -> AlgElem {
        AlgElem::scalar(flavor, Scalar::one())
    }

    pub fn mode(flavor: Flavor, x: GlBasis, depth: u8) -> AlgElem {
        let mut a = AlgElem::zero(flavor);
        a.push(Term { word: vec![Mode::new(x, depth)], tau: 0 }, &Scalar::one());
        a
    }

    pub fn tau(flavor: Flavor) -> AlgElem {
        let mut a = AlgElem::zero(flavor);
        a.push(Term { word: Vec::new(), tau: 1 }, &Scalar::one());
        a
    }

    /// `c · word · τ^tau`, normalized.
    pub fn from_word(flavor: Flavor, word: &[Mode], tau: u32, c: &Scalar) -> AlgElem {
        let mut a = AlgElem::zero(flavor);
        a.add_word(word, tau, c);
        a
    }

    /// Adds `c · word · τ^tau` for a word with `τ` already on the right.
    fn add_word(&mut self, word: &[Mode], tau: u32, c: &Scalar) {
        match self.flavor {
            Flavor::Free => self.push(Term { word: word.to_vec(), tau }, c),
            Flavor::Enveloping => {
                for (w, m) in straighten(word) {
                    self.push(Term { word: w, tau }, &(c * &Scalar::from_int(m)));
                }
            }
        }
    }

    fn push(&mut self, t: Term, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c.clone());
            }
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_terms(flavor: Flavor, terms: impl IntoIterator<Item = (Term, Scalar)>) -> AlgElem {
        let mut a = AlgElem::zero(flavor);
        for (t, c) in terms {
            a.add_word(&t.word, t.tau, &c);
        }
        a
    }

    pub fn max_tau(&self) -> Option<u32> {
        self.terms.keys().map(|t| t.tau).max()
    }

    /// The `τ`-free coefficient of `τ^e` (with `τ` on the right).
    pub fn tau_coefficient(&self, e: u32) -> AlgElem {
        let mut a = AlgElem::zero(self.flavor);
        for (t, c) in &self.terms {
            if t.tau == e {
                a.push(Term { word: t.word.clone(), tau: 0 }, c);
            }
        }
        a
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        assert_eq!(self.flavor, other.flavor, "flavor mismatch");
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.push(t.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &AlgElem) -> AlgElem {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> AlgElem {
        let mut out = AlgElem::zero(self.flavor);
        if c.is_zero() {
            return out;
        }
        for (t, v) in &self.terms {
            out.push(t.clone(), &(v * c));
        }
        out
    }

    /// Multiplies every term on the right by `τ^e`.
    pub fn times_tau(&self, e: u32) -> AlgElem {
        let mut out = AlgElem::zero(self.flavor);
        for (t, c) in &self.terms {
            out.push(Term { word: t.word.clone(), tau: t.tau + e }, c);
        }
        out
    }

    /// `ad τ`: the derivation `x[−m] ↦ m x[−m−1]` applied to every word
    /// (`τ` factors are left in place).
    pub fn derive(&self) -> AlgElem {
        let mut out = AlgElem::zero(self.flavor);
        for (t, c) in &self.terms {
            for pos in 0..t.word.len() {
                let mut w = t.word.clone();
                let m = w[pos];
                w[pos] = Mode::new(m.x, m.depth + 1);
                out.add_word(&w, t.tau, &(c * &Scalar::from_int(m.depth as i64)));
            }
        }
        out
    }

    pub fn mul(&self, other: &AlgElem) -> AlgElem {
        assert_eq!(self.flavor, other.flavor, "flavor mismatch");
        let mut out = AlgElem::zero(self.flavor);
        // cache of D^c applied to each right term
        for (t2, c2) in &other.terms {
            let base = AlgElem::from_terms(self.flavor, [(Term { word: t2.word.clone(), tau: 0 }, Scalar::one())]);
            let max_a = self.terms.keys().map(|t| t.tau).max().unwrap_or(0);
            let mut derivs = vec![base];
            for _ in 0..max_a {
                let next = derivs.last().unwrap().derive();
                derivs.push(next);
            }
            for (t1, c1) in &self.terms {
                let coeff = c1 * c2;
                // τ^a w2 = Σ_c C(a,c) D^c(w2) τ^{a−c}
                for c in 0..=t1.tau {
                    let bin = Scalar::from_int(binomial(t1.tau, c));
                    for (t3, c3) in &derivs[c as usize].terms {
                        let mut w = t1.word.clone();
                        w.extend_from_slice(&t3.word);
                        out.add_word(&w, t1.tau - c + t2.tau, &(&(&coeff * &bin) * c3));
                    }
                }
            }
        }
        out
    }

    /// Lowest-degree homogeneous component, with the degree of `x[−m]` equal
    /// to the grading degree of `x`.
    pub fn lowest_degree_part(&self, shape: &Shape) -> AlgElem {
        let degree = |t: &Term| t.word.iter().map(|m| shape.degree(m.x)).sum::<i32>();
        let Some(min) = self.terms.keys().map(degree).min() else {
            return self.clone();
        };
        let mut out = AlgElem::zero(self.flavor);
        for (t, c) in &self.terms {
            if degree(t) == min {
                out.push(t.clone(), c);
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
        let mut out = String::new();
        for (idx, (t, c)) in self.terms.iter().enumerate() {
            let body = render_word(&t.word, t.tau, latex);
            let neg = c.as_rational().is_some_and(|r| r < num_traits::Zero::zero());
            let c_abs = if neg { -c } else { c.clone() };
            if idx > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let cs = if latex { c_abs.to_latex() } else { c_abs.to_string() };
            match (c_abs.is_one(), body.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&body),
                (false, true) => out.push_str(&cs),
                (false, false) => {
                    if c_abs.as_rational().is_some() && !cs.contains('/') && !cs.contains("frac") {
                        out.push_str(&cs);
                    } else {
                        out.push('(');
                        out.push_str(&cs);
                        out.push(')');
                    }
                    if !latex {
                        out.push(' ');
                    }
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

fn render_word(word: &[Mode], tau: u32, latex: bool) -> String {
    let mut parts: Vec<String> = word
        .iter()
        .map(|m| {
            if latex {
                format!("e_{{{}{}}}[-{}]", m.x.i, m.x.j, m.depth)
            } else {
                m.to_string()
            }
        })
        .collect();
    match (tau, latex) {
        (0, _) => {}
        (1, false) => parts.push("τ".into()),
        (1, true) => parts.push("\\tau".into()),
        (e, false) => parts.push(format!("τ^{e}")),
        (e, true) => parts.push(format!("\\tau^{{{e}}}")),
    }
    parts.join(if latex { "\\," } else { " " })
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Square matrix over [`AlgElem`], row-major.
#[derive(Clone, Debug)]
pub struct NcMatrix {
    size: usize,
    flavor: Flavor,
    entries: Vec<AlgElem>,
}

impl NcMatrix {
    pub fn from_fn(size: usize, flavor: Flavor, mut f: impl FnMut(usize, usize) -> AlgElem) -> NcMatrix {
        let mut entries = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                let a = f(r, c);
                assert_eq!(a.flavor, flavor, "flavor mismatch");
                entries.push(a);
            }
        }
        NcMatrix { size, flavor, entries }
    }

    pub fn from_rows(rows: Vec<Vec<AlgElem>>) -> Result<NcMatrix, PbwError> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) || size == 0 {
            return Err(PbwError::NotSquare);
        }
        let flavor = rows[0][0].flavor;
        if rows.iter().flatten().any(|a| a.flavor != flavor) {
            return Err(PbwError::FlavorMismatch);
        }
        Ok(NcMatrix {
            size,
            flavor,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// 0-based entry access.
    pub fn get(&self, r: usize, c: usize) -> &AlgElem {
        &self.entries[r * self.size + c]
    }

    /// Trailing `p×p` block (last `p` rows and columns).
    pub fn trailing(&self, p: usize) -> NcMatrix {
        let off = self.size - p;
        NcMatrix::from_fn(p, self.flavor, |r, c| self.get(off + r, off + c).clone())
    }

    /// `Σ_σ sgn σ · a_{σ(1)1} a_{σ(2)2} ⋯ a_{σ(N)N}`
    pub fn cdet(&self) -> AlgElem {
        self.permutation_sum(true)
    }

    /// `Σ_σ sgn σ · a_{1σ(1)} a_{2σ(2)} ⋯ a_{Nσ(N)}`
    pub fn rdet(&self) -> AlgElem {
        self.permutation_sum(false)
    }

    fn permutation_sum(&self, by_columns: bool) -> AlgElem {
        let mut out = AlgElem::zero(self.flavor);
        if self.size == 0 {
            return AlgElem::one(self.flavor);
        }
        let mut used = vec![false; self.size];
        let mut perm = Vec::with_capacity(self.size);
        self.expand(by_columns, &mut used, &mut perm, AlgElem::one(self.flavor), &mut out);
        out
    }

    fn expand(&self, by_columns: bool, used: &mut [bool], perm: &mut Vec<usize>, acc: AlgElem, out: &mut AlgElem) {
        let step = perm.len();
        if step == self.size {
            let sign = if permutation_is_odd(perm) { -1 } else { 1 };
            *out = out.add(&acc.scale(&Scalar::from_int(sign)));
            return;
        }
        for choice in 0..self.size {
            if used[choice] {
                continue;
            }
            let entry = if by_columns { self.get(choice, step) } else { self.get(step, choice) };
            if entry.is_zero() {
                continue;
            }
            used[choice] = true;
            perm.push(choice);
            let next = acc.mul(entry);
            if !next.is_zero() {
                self.expand(by_columns, used, perm, next, out);
            }
            perm.pop();
            used[choice] = false;
        }
    }

    /// `D^(p)`: column-determinant of the trailing `p×p` block, `D^(0) = 1`.
    pub fn minor(&self, p: usize) -> Result<AlgElem, PbwError> {
        if p > self.size {
            return Err(PbwError::Index(format!("minor size {p} exceeds {}", self.size)));
        }
        if p == 0 {
            return Ok(AlgElem::one(self.flavor));
        }
        Ok(self.trailing(p).cdet())
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// The matrix `B`: `ατ + e_ii[−1]` on the diagonal, `−1` above it and
/// `e_ij[−1]` below. Entries use `gl_l` labels.
pub fn build_b_with(shape: &Shape, flavor: Flavor) -> NcMatrix {
    let alpha = shape.alpha();
    let l = shape.l;
    NcMatrix::from_fn(l, flavor, |r, c| {
        let (i, j) = (r as u8 + 1, c as u8 + 1);
        match (r, c) {
            _ if r == c => AlgElem::tau(flavor)
                .scale(&alpha)
                .add(&AlgElem::mode(flavor, crate::liealg::e(i, i), 1)),
            _ if c == r + 1 => AlgElem::scalar(flavor, Scalar::from_int(-1)),
            _ if r > c => AlgElem::mode(flavor, crate::liealg::e(i, j), 1),
            _ => AlgElem::zero(flavor),
        }
    })
}

/// `B` in the free flavor, or the enveloping flavor when `n = 1`.
pub fn build_b(shape: &Shape) -> NcMatrix {
    let flavor = if shape.is_principal() { Flavor::Enveloping } else { Flavor::Free };
    build_b_with(shape, flavor)
}

/// `T_ij`: free algebra → `U(b[t⁻¹]t⁻¹) ⊗ C[τ]`, `T_ij(x) = x ⊗ e_ji` on
/// generators, multiplicative in the matrix sense, `τ ↦ τ`.
pub fn tmap(i: usize, j: usize, a: &AlgElem, shape: &Shape) -> Result<AlgElem, PbwError> {
    let n = shape.n;
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(PbwError::Index(format!("T_{i}{j} with n = {n}")));
    }
    if a.flavor == Flavor::Enveloping {
        if n == 1 {
            return Ok(a.clone());
        }
        return Err(PbwError::FlavorMismatch);
    }
    let mut out = AlgElem::zero(Flavor::Enveloping);
    for (t, c) in &a.terms {
        let m = t.word.len();
        if m == 0 {
            if i == j {
                out.push(t.clone(), c);
            }
            continue;
        }
        // indices r_0 = i, r_1, …, r_{m−1}, r_m = j
        let mut chain = vec![1usize; m + 1];
        chain[0] = i;
        chain[m] = j;
        loop {
            let word: Word = (0..m)
                .map(|s| {
                    let x = t.word[s];
                    let (a_idx, b_idx) = (chain[s], chain[s + 1]);
                    let g = shape.embed(TensorBasis { i: x.x.i, j: x.x.j, p: b_idx as u8, q: a_idx as u8 });
                    Mode::new(g, x.depth)
                })
                .collect();
            out.add_word(&word, t.tau, c);
            // advance interior indices
            let mut pos = 1;
            while pos < m {
                if chain[pos] < n {
                    chain[pos] += 1;
                    break;
                }
                chain[pos] = 1;
                pos += 1;
            }
            if pos >= m {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::e;
    use proptest::prelude::*;

    const ENV: Flavor = Flavor::Enveloping;
    const FREE: Flavor = Flavor::Free;

    fn md(i: u8, j: u8, d: u8) -> Mode {
        Mode::new(e(i, j), d)
    }

    fn word(flavor: Flavor, w: &[Mode]) -> AlgElem {
        AlgElem::from_word(flavor, w, 0, &Scalar::one())
    }

    #[test]
    fn tau_moves_right() {
        let t = AlgElem::tau(ENV);
        let x = AlgElem::mode(ENV, e(1, 1), 1);
        let expected = word(ENV, &[md(1, 1, 1)]).times_tau(1).add(&word(ENV, &[md(1, 1, 2)]));
        assert_eq!(t.mul(&x), expected);
        // τ² x[−1] = x[−1]τ² + 2x[−2]τ + 2x[−3]
        let t2 = t.mul(&t);
        let expected2 = word(ENV, &[md(1, 1, 1)])
            .times_tau(2)
            .add(&word(ENV, &[md(1, 1, 2)]).times_tau(1).scale(&Scalar::from_int(2)))
            .add(&word(ENV, &[md(1, 1, 3)]).scale(&Scalar::from_int(2)));
        assert_eq!(t2.mul(&x), expected2);
    }

    #[test]
    fn commutator_straightening() {
        let a = word(ENV, &[md(2, 2, 1), md(2, 1, 1)]);
        let b = word(ENV, &[md(2, 1, 1), md(2, 2, 1)]);
        assert_eq!(a.sub(&b), word(ENV, &[md(2, 1, 2)]));
    }

    #[test]
    fn free_words_do_not_commute() {
        let a = word(FREE, &[md(2, 2, 1), md(2, 1, 1)]);
        let b = word(FREE, &[md(2, 1, 1), md(2, 2, 1)]);
        assert_eq!(a.sub(&b).len(), 2);
    }

    #[test]
    fn straightening_agrees_with_rewriting() {
        let w = [md(1, 1, 1), md(3, 1, 2), md(2, 2, 1), md(3, 2, 1), md(2, 1, 3)];
        let a = straighten(&w);
        assert_eq!(a, rewrite_normalize(&w, RewriteOrder::Leftmost));
        assert_eq!(a, rewrite_normalize(&w, RewriteOrder::Rightmost));
    }

    #[test]
    fn small_determinants() {
        let sym = |i: u8| AlgElem::mode(FREE, e(i, 1), 1);
        let m1 = NcMatrix::from_rows(vec![vec![sym(1)]]).unwrap();
        assert_eq!(m1.cdet(), sym(1));
        assert_eq!(m1.rdet(), sym(1));
        let (a, b, c, d) = (sym(1), sym(2), sym(3), sym(4));
        let m = NcMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
        assert_eq!(m.cdet(), a.mul(&d).sub(&c.mul(&b)));
        assert_eq!(m.rdet(), a.mul(&d).sub(&b.mul(&c)));
    }

    #[test]
    fn commuting_entries_give_the_classical_determinant() {
        let m = [[2, -1, 3], [0, 4, 1], [5, 2, -2]];
        let mat = NcMatrix::from_fn(3, ENV, |r, c| AlgElem::scalar(ENV, Scalar::from_int(m[r][c])));
        // 2(−8−2) + 1(0−5) + 3(0−20)
        assert_eq!(mat.cdet(), AlgElem::scalar(ENV, Scalar::from_int(-85)));
    }

    #[test]
    fn cdet_of_b_for_two_by_two() {
        let s = Shape::new(2, 2).unwrap();
        let b = build_b(&s);
        let alpha = Scalar::k_plus(2);
        let at = AlgElem::tau(FREE).scale(&alpha);
        let expected = at
            .mul(&at)
            .add(&word(FREE, &[md(1, 1, 1)]).add(&word(FREE, &[md(2, 2, 1)])).mul(&at))
            .add(&word(FREE, &[md(1, 1, 1), md(2, 2, 1)]))
            .add(&word(FREE, &[md(2, 1, 1)]))
            .add(&word(FREE, &[md(2, 2, 2)]).scale(&alpha));
        assert_eq!(b.cdet(), expected);
        assert_eq!(b.rdet(), b.cdet());
    }

    #[test]
    fn b_matrix_layout() {
        let p2 = build_b(&Shape::new(1, 2).unwrap());
        let alpha = Scalar::k_plus(1);
        assert_eq!(p2.get(0, 0), &AlgElem::tau(ENV).scale(&alpha).add(&AlgElem::mode(ENV, e(1, 1), 1)));
        assert_eq!(p2.get(0, 1), &AlgElem::scalar(ENV, Scalar::from_int(-1)));
        assert_eq!(p2.get(1, 0), &AlgElem::mode(ENV, e(2, 1), 1));
        let p3 = build_b(&Shape::new(1, 3).unwrap());
        assert_eq!(p3.get(2, 0), &AlgElem::mode(ENV, e(3, 1), 1));
        assert!(p3.get(0, 2).is_zero());
        assert_eq!(p3.get(1, 2), &AlgElem::scalar(ENV, Scalar::from_int(-1)));
    }

    #[test]
    fn minors() {
        let b = build_b(&Shape::new(1, 3).unwrap());
        assert_eq!(b.minor(0).unwrap(), AlgElem::one(ENV));
        assert_eq!(b.minor(3).unwrap(), b.cdet());
        let expected = AlgElem::tau(ENV).scale(&Scalar::k_plus(2)).add(&AlgElem::mode(ENV, e(3, 3), 1));
        assert_eq!(b.minor(1).unwrap(), expected);
        assert!(b.minor(4).is_err());
    }

    #[test]
    fn first_column_expansion() {
        for l in 2..=4 {
            let s = Shape::new(1, l).unwrap();
            let b = build_b(&s);
            let mut rhs = AlgElem::zero(ENV);
            for i in 1..=l {
                let mut head = AlgElem::mode(ENV, e(i as u8, 1), 1);
                if i == 1 {
                    head = head.add(&AlgElem::tau(ENV).scale(&s.alpha()));
                }
                rhs = rhs.add(&head.mul(&b.minor(l - i).unwrap()));
            }
            assert_eq!(b.cdet(), rhs, "l = {l}");
        }
    }

    #[test]
    fn row_and_column_determinants_agree() {
        for (n, l) in [(1, 2), (1, 3), (2, 2), (2, 3), (1, 4)] {
            let b = build_b(&Shape::new(n, l).unwrap());
            assert_eq!(b.rdet(), b.cdet(), "shape ({n},{l})");
        }
    }

    #[test]
    fn tmap_examples() {
        let s = Shape::new(2, 2).unwrap();
        let x = AlgElem::mode(FREE, e(2, 1), 1);
        assert_eq!(tmap(1, 1, &x, &s).unwrap(), AlgElem::mode(ENV, e(3, 1), 1));
        let w = word(FREE, &[md(1, 1, 1), md(2, 2, 1)]);
        let expected = word(ENV, &[md(1, 1, 1), md(3, 3, 1)]).add(&word(ENV, &[md(2, 1, 1), md(3, 4, 1)]));
        assert_eq!(tmap(1, 1, &w, &s).unwrap(), expected);
        assert!(tmap(3, 1, &w, &s).is_err());
        let p = Shape::new(1, 3).unwrap();
        let u = word(ENV, &[md(2, 1, 1), md(3, 3, 2)]);
        assert_eq!(tmap(1, 1, &u, &p).unwrap(), u);
        assert_eq!(tmap(1, 2, &AlgElem::one(FREE), &s).unwrap(), AlgElem::zero(ENV));
    }

    #[test]
    fn rendering() {
        let a = word(ENV, &[md(1, 1, 1), md(2, 2, 1)]).add(&word(ENV, &[md(2, 2, 2)]).scale(&Scalar::k_plus(1)));
        assert_eq!(a.to_string(), "(k+1) e_22[-2] + e_11[-1] e_22[-1]");
        assert_eq!(a.to_latex(), "(k+1)e_{22}[-2] + e_{11}[-1]\\,e_{22}[-1]");
    }

    fn mode_b13() -> impl Strategy<Value = Mode> {
        let s = Shape::new(1, 3).unwrap();
        let basis = s.basis_b();
        (0..basis.len(), 1u8..=3).prop_map(move |(i, d)| Mode::new(basis[i], d))
    }

    fn mode_b22() -> impl Strategy<Value = Mode> {
        let s = Shape::new(2, 2).unwrap();
        let basis = s.basis_b();
        (0..basis.len(), 1u8..=3).prop_map(move |(i, d)| Mode::new(basis[i], d))
    }

    fn free_mode() -> impl Strategy<Value = Mode> {
        ((1u8..=2), (1u8..=2), 1u8..=2).prop_filter_map("lower", |(i, j, d)| (i >= j).then(|| md(i, j, d)))
    }

    proptest! {
        #[test]
        fn normalization_is_confluent(w in prop::collection::vec(prop_oneof![mode_b13(), mode_b22()], 0..=5)) {
            // mixing the two shapes is fine: both are subalgebras of gl_4 ⊃ gl_3
            let a = straighten(&w);
            prop_assert_eq!(&a, &rewrite_normalize(&w, RewriteOrder::Leftmost));
            prop_assert_eq!(&a, &rewrite_normalize(&w, RewriteOrder::Rightmost));
            for word in a.keys() {
                prop_assert_eq!(straighten(word).len(), 1);
            }
        }

        #[test]
        fn tmap_is_multiplicative(x in prop::collection::vec(free_mode(), 0..=2), y in prop::collection::vec(free_mode(), 0..=2), tx in 0u32..=1, i in 1usize..=2, j in 1usize..=2) {
            let s = Shape::new(2, 2).unwrap();
            let xa = AlgElem::from_word(FREE, &x, tx, &Scalar::one());
            let ya = AlgElem::from_word(FREE, &y, 0, &Scalar::one());
            let lhs = tmap(i, j, &xa.mul(&ya), &s).unwrap();
            let mut rhs = AlgElem::zero(ENV);
            for r in 1..=2 {
                rhs = rhs.add(&tmap(i, r, &xa, &s).unwrap().mul(&tmap(r, j, &ya, &s).unwrap()));
            }
            prop_assert_eq!(lhs, rhs);
        }
    }
}
