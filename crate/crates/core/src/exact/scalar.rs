//! Exact ground-field scalars.
//!
//! Two fields are supported: the rationals and the Gaussian rationals
//! `Q(i)`. A computation always stays inside one field; combining a
//! rational with a Gaussian scalar is a programming error and panics.
//! Matrix and algebra constructors check field uniformity up front and
//! report it as [`Error::MixedField`](crate::Error::MixedField).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Qi")]
    Gaussian,
}

impl Field {
    pub fn code(self) -> &'static str {
        match self {
            Field::Rational => "Q",
            Field::Gaussian => "Qi",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(Field::Rational),
            "Qi" => Ok(Field::Gaussian),
            other => Err(Error::InvalidAlgebra(format!("unknown field `{other}`"))),
        }
    }
}

/// `re + im*i` with `i^2 = -1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussianRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

/// An element of [`Field::Rational`] or [`Field::Gaussian`].
///
/// Equality is structural. Rationals are kept reduced by `num-rational`,
/// so two equal numbers always compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Gaussian(GaussianRational),
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: Field) -> Self {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: Field, n: i64) -> Self {
        Scalar::from_rational(field, Rational::from_integer(BigInt::from(n)))
    }

    /// `n / d` in `field`. Panics if `d == 0`.
    pub fn from_ratio(field: Field, n: i64, d: i64) -> Self {
        Scalar::from_rational(field, ratio(n, d))
    }

    pub fn from_rational(field: Field, q: Rational) -> Self {
        match field {
            Field::Rational => Scalar::Rational(q),
            Field::Gaussian => Scalar::Gaussian(GaussianRational::new(q, Rational::zero())),
        }
    }

    /// The imaginary unit of `Q(i)`.
    pub fn i() -> Self {
        Scalar::Gaussian(GaussianRational::new(Rational::zero(), Rational::one()))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Gaussian(_) => Field::Gaussian,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Gaussian(g) => g.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Gaussian(g) => g.re.is_one() && g.im.is_zero(),
        }
    }

    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Gaussian(_) => None,
        }
    }

    /// Sign of a rational scalar; `None` over `Q(i)`.
    pub fn signum(&self) -> Option<i8> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) if q.is_zero() => None,
            Scalar::Rational(q) => Some(Scalar::Rational(q.recip())),
            Scalar::Gaussian(g) => g.inv().map(Scalar::Gaussian),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    /// Largest bit length of any numerator or denominator involved.
    pub fn bits(&self) -> u64 {
        fn qbits(q: &Rational) -> u64 {
            q.numer().bits().max(q.denom().bits())
        }
        match self {
            Scalar::Rational(q) => qbits(q),
            Scalar::Gaussian(g) => qbits(&g.re).max(qbits(&g.im)),
        }
    }

    /// `self -= a * b`, the inner step of every elimination loop.
    pub fn sub_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self -= &(a * b);
    }
}

fn mixed(a: &Scalar, b: &Scalar) -> ! {
    panic!(
        "mixed scalar fields in one computation: {} and {}",
        a.field(),
        b.field()
    )
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => {
                Scalar::Gaussian(GaussianRational::new(&a.re + &b.re, &a.im + &b.im))
            }
            _ => mixed(self, rhs),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => {
                Scalar::Gaussian(GaussianRational::new(&a.re - &b.re, &a.im - &b.im))
            }
            _ => mixed(self, rhs),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::Gaussian(GaussianRational::new(
                &a.re * &b.re - &a.im * &b.im,
                &a.re * &b.im + &a.im * &b.re,
            )),
            _ => mixed(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Gaussian(a) => Scalar::Gaussian(GaussianRational::new(-&a.re, -&a.im)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => {
                a.re += &b.re;
                a.im += &b.im;
            }
            _ => mixed(self, rhs),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => {
                a.re -= &b.re;
                a.im -= &b.im;
            }
            _ => mixed(self, rhs),
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Rationals print as `p` or `p/q`; Gaussian rationals as `a+b*i` or
/// `a-b*i` with both parts always present.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Gaussian(g) => {
                if g.im.is_negative() {
                    write!(f, "{}-{}*i", g.re, -&g.im)
                } else {
                    write!(f, "{}+{}*i", g.re, g.im)
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

impl Scalar {
    /// Parses `p`, `p/q`, `a+b*i`, `a-b*i` or `b*i` into `field`.
    ///
    /// A rational literal is accepted for either field; an imaginary part
    /// is only accepted for [`Field::Gaussian`].
    pub fn parse(s: &str, field: Field) -> Result<Scalar> {
        let err = || Error::ParseScalar(s.to_string());
        let t = s.trim();
        if let Some(body) = t.strip_suffix("*i") {
            if field != Field::Gaussian {
                return Err(err());
            }
            // The separating sign is the last `+`/`-` not at position 0.
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(i, _)| i)
                .last();
            let (re, im) = match split {
                Some(k) => {
                    let re = parse_rational(&body[..k]).ok_or_else(err)?;
                    let sign = &body[k..k + 1];
                    let mut im = parse_rational(&body[k + 1..]).ok_or_else(err)?;
                    if sign == "-" {
                        im = -im;
                    }
                    (re, im)
                }
                None => (Rational::zero(), parse_rational(body).ok_or_else(err)?),
            };
            return Ok(Scalar::Gaussian(GaussianRational::new(re, im)));
        }
        let q = parse_rational(t).ok_or_else(err)?;
        Ok(Scalar::from_rational(field, q))
    }
}
