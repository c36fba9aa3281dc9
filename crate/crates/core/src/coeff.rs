//! Exact scalars: rationals and rational functions in the level `k`.
//!
//! A [`Scalar`] is a reduced fraction `num(k) / den(k)` of polynomials with
//! rational coefficients, with `den` monic. Two scalars are equal exactly when
//! their stored representations are equal.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("evaluation at pole")]
    Pole,
    #[error("malformed scalar: {0}")]
    Malformed(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense univariate polynomial over ℚ, coefficients low degree first.
/// Trailing zeros are never stored; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The indeterminate `k`.
    pub fn k() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = &rem[shift + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * d;
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    fn add_ref(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        Poly::from_coeffs(coeffs)
    }

    fn neg_ref(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul_ref(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

/// Element of ℚ(k) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar {
            num: Poly::constant(r),
            den: Poly::one(),
        }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(rat(n, d))
    }

    /// The level `k`.
    pub fn k() -> Self {
        Scalar {
            num: Poly::k(),
            den: Poly::one(),
        }
    }

    /// `k + c`
    pub fn k_plus(c: i64) -> Self {
        Scalar::k() + Scalar::from_int(c)
    }

    pub fn from_poly(num: Poly) -> Self {
        Scalar { num, den: Poly::one() }
    }

    /// Builds `num/den`, reducing to canonical form.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::ZeroDivisor);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.degree() == Some(0) {
            let inv = den.coeffs[0].recip();
            return Scalar {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let inv = den.leading().expect("nonzero").recip();
        Scalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value if this scalar does not depend on `k`.
    pub fn as_rational(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.is_one()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), true) => Some(self.num.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        if other.is_zero() {
            return Err(CoeffError::ZeroDivisor);
        }
        Ok(Scalar::reduce(
            self.num.mul_ref(&other.den),
            self.den.mul_ref(&other.num),
        ))
    }

    pub fn recip(&self) -> Result<Scalar, CoeffError> {
        Scalar::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale_rational(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    /// Specializes `k` to `k0`.
    pub fn eval(&self, k0: &Rational) -> Result<Rational, CoeffError> {
        let d = self.den.eval(k0);
        if d.is_zero() {
            return Err(CoeffError::Pole);
        }
        Ok(self.num.eval(k0) / d)
    }

    /// Integer serialization: `(num, den)` integer coefficient lists, low
    /// degree first, scaled by a common factor so that all entries are
    /// integers with overall content 1 and `den` has positive leading term.
    pub fn to_integer_lists(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        if self.is_zero() {
            return (Vec::new(), vec![BigInt::one()]);
        }
        let mut lcm = BigInt::one();
        for c in self.num.coeffs.iter().chain(&self.den.coeffs) {
            lcm = lcm.lcm(c.denom());
        }
        let to_int = |p: &Poly| -> Vec<BigInt> {
            p.coeffs
                .iter()
                .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
                .collect()
        };
        let mut num = to_int(&self.num);
        let mut den = to_int(&self.den);
        let mut content = BigInt::zero();
        for c in num.iter().chain(&den) {
            content = content.gcd(c);
        }
        if !content.is_zero() && !content.is_one() {
            for c in num.iter_mut().chain(den.iter_mut()) {
                *c /= &content;
            }
        }
        (num, den)
    }

    pub fn from_integer_lists(num: &[BigInt], den: &[BigInt]) -> Result<Scalar, CoeffError> {
        let lift = |v: &[BigInt]| {
            Poly::from_coeffs(v.iter().map(|c| Rational::from_integer(c.clone())).collect())
        };
        let d = lift(den);
        if d.is_zero() {
            return Err(CoeffError::Malformed("zero denominator".into()));
        }
        Scalar::from_fraction(lift(num), d)
    }

    /// LaTeX rendering, e.g. `\frac{3k+8}{4}`.
    pub fn to_latex(&self) -> String {
        let (num, den) = self.to_integer_lists();
        let n = format_int_poly(&num);
        if den.len() == 1 && den[0].is_one() {
            return n;
        }
        let (n, sign) = match n.strip_prefix('-') {
            Some(rest) if num.iter().filter(|c| !c.is_zero()).count() == 1 => (rest.to_string(), "-"),
            _ => (n, ""),
        };
        format!("{sign}\\frac{{{}}}{{{}}}", n, format_int_poly(&den))
    }
}

fn format_int_poly(c: &[BigInt]) -> String {
    let mut out = String::new();
    for (deg, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let abs = a.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        let var = match deg {
            0 => String::new(),
            1 => "k".to_string(),
            d => format!("k^{d}"),
        };
        if abs.is_one() && deg > 0 {
            out.push_str(&var);
        } else {
            out.push_str(&abs.to_string());
            out.push_str(&var);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.to_integer_lists();
        let n = format_int_poly(&num);
        if den.len() == 1 && den[0].is_one() {
            return f.write_str(&n);
        }
        let nterms = num.iter().filter(|c| !c.is_zero()).count();
        let dterms = den.iter().filter(|c| !c.is_zero()).count();
        let n = if nterms > 1 { format!("({n})") } else { n };
        let d = format_int_poly(&den);
        let d = if dterms > 1 || den.len() > 1 { format!("({d})") } else { d };
        write!(f, "{n}/{d}")
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural total order; used only to make containers deterministic.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.den
            .coeffs
            .cmp(&other.den.coeffs)
            .then_with(|| self.num.coeffs.cmp(&other.num.coeffs))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return Scalar::from_poly(self.num.add_ref(&other.num));
            }
            return Scalar::reduce(self.num.add_ref(&other.num), self.den.clone());
        }
        Scalar::reduce(
            self.num.mul_ref(&other.den).add_ref(&other.num.mul_ref(&self.den)),
            self.den.mul_ref(&other.den),
        )
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar::from_poly(self.num.mul_ref(&other.num));
        }
        Scalar::reduce(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, other: &Scalar) -> Scalar {
        self + &(-other)
    }
}

/// Panics on a zero divisor; use [`Scalar::checked_div`] for fallible division.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, other: &Scalar) -> Scalar {
        self.checked_div(other).expect("zero divisor")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, other: Scalar) -> Scalar {
                (&self).$m(&other)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, other: &Scalar) -> Scalar {
                (&self).$m(other)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, other: Scalar) -> Scalar {
                self.$m(&other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, other: &Scalar) {
        *self = &*self + other;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, other: &Scalar) {
        *self = &*self - other;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, other: &Scalar) {
        *self = &*self * other;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}
