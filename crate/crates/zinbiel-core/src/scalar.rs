//! Exact field arithmetic: arbitrary-precision rationals and simple number
//! fields `Q[x]/(m(x))` with `m` monic.
//!
//! A [`FieldElement`] is either a plain rational or a vector of rational
//! coordinates with respect to `1, x, ..., x^{d-1}` in a [`NumberField`].
//! Rationals coerce into any number field, so mixed arithmetic only fails
//! when two *distinct* extensions meet.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly;

macro_rules! fmt_debug_as_display {
    ($ty:ty) => {
        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }
    };
}

/// Arbitrary-precision rational, always reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    FieldMismatch,
    DivisionByZero,
    /// The minimal polynomial turned out to be reducible (caught either by
    /// the static degree-<=4 check or while inverting an element).
    ReducibleModulus,
    Parse(String),
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::FieldMismatch => write!(f, "field mismatch"),
            ScalarError::DivisionByZero => write!(f, "division by zero"),
            ScalarError::ReducibleModulus => write!(f, "reducible minimal polynomial"),
            ScalarError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ScalarError {}

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
        if e < 0 && self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(self.0.pow(e)))
    }

    /// Exact `n`-th root if it exists in `Q`.
    pub fn nth_root(&self, n: u32) -> Option<Self> {
        assert!(n >= 1);
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_negative() && n % 2 == 0 {
            return None;
        }
        let root_of = |v: &BigInt| -> Option<BigInt> {
            let (sign, mag) = (v.sign(), v.magnitude().clone());
            let r = num_integer::Roots::nth_root(&BigInt::from_biguint(Sign::Plus, mag), n);
            let r = if sign == Sign::Minus { -r } else { r };
            if num_traits::Pow::pow(r.clone(), n) == *v {
                Some(r)
            } else {
                None
            }
        };
        let rn = root_of(self.numer())?;
        let rd = root_of(self.denom())?;
        Some(Rational(BigRational::new(rn, rd)))
    }

    pub fn is_square(&self) -> bool {
        self.nth_root(2).is_some()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fmt_debug_as_display!(Rational);

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl core::ops::$trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(core::ops::$trait::$method(&self.0, &rhs.0))
            }
        }
        impl core::ops::$trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                core::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl core::ops::Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl core::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl core::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// Parse `p`, `-p/q` style rational literals.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let s = s.trim();
    let bad = || ScalarError::Parse(alloc::format!("invalid rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(ScalarError::Parse("zero denominator".to_string()));
        }
        Ok(Rational(BigRational::new(n, d)))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational(BigRational::from_integer(n)))
    }
}

/// A simple extension `Q[x]/(m(x))` with `m` monic of degree >= 1.
///
/// Irreducibility is verified for degrees up to 4 (rational roots plus a
/// quadratic-factor search); higher degrees are taken on trust and reducible
/// moduli are still caught at inversion time.
#[derive(Clone, PartialEq, Eq)]
pub struct NumberField {
    /// Monic minimal polynomial, low-to-high coefficients; last entry is 1.
    modulus: Vec<Rational>,
    verified_irreducible: bool,
}

impl NumberField {
    pub fn new(modulus: Vec<Rational>) -> Result<Arc<Self>, ScalarError> {
        let modulus = poly::normalized(modulus);
        if modulus.len() < 2 {
            return Err(ScalarError::Parse("minimal polynomial must have degree >= 1".into()));
        }
        if !modulus.last().unwrap().is_one() {
            return Err(ScalarError::Parse("minimal polynomial must be monic".into()));
        }
        let verified = match poly::irreducible_over_q(&modulus) {
            Some(false) => return Err(ScalarError::ReducibleModulus),
            Some(true) => true,
            None => false,
        };
        Ok(Arc::new(NumberField {
            modulus,
            verified_irreducible: verified,
        }))
    }

    /// `x^d - a`, the field adjoining a `d`-th root of `a`.
    pub fn adjoin_root(d: usize, a: Rational) -> Result<Arc<Self>, ScalarError> {
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[0] = -a;
        coeffs[d] = Rational::one();
        NumberField::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    pub fn irreducibility_verified(&self) -> bool {
        self.verified_irreducible
    }

    /// The generator `x` as a field element.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        let mut coords = vec![Rational::zero(); self.degree()];
        if self.degree() == 1 {
            // x = -c0 in a degree-1 "extension"
            coords[0] = -&self.modulus[0];
        } else {
            coords[1] = Rational::one();
        }
        FieldElement {
            field: Some(self.clone()),
            coords,
        }
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly::render(&self.modulus))
    }
}

fmt_debug_as_display!(NumberField);

/// An exact scalar: a rational, or an element of one [`NumberField`].
#[derive(Clone)]
pub struct FieldElement {
    field: Option<Arc<NumberField>>,
    /// Coordinates w.r.t. `1, x, ..., x^{d-1}`; length 1 when rational.
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement {
            field: None,
            coords: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        FieldElement {
            field: None,
            coords: vec![Rational::one()],
        }
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement {
            field: None,
            coords: vec![Rational::from_int(n)],
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement {
            field: None,
            coords: vec![Rational::new(n, d)],
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        FieldElement {
            field: None,
            coords: vec![q],
        }
    }

    /// Embed a rational with coordinates `(q, 0, ..., 0)`.
    pub fn embed_rational(q: Rational, field: &Arc<NumberField>) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = q;
        FieldElement {
            field: Some(field.clone()),
            coords,
        }
    }

    pub fn from_coords(field: &Arc<NumberField>, mut coords: Vec<Rational>) -> Self {
        assert!(
            coords.len() <= field.degree(),
            "coordinate vector longer than field degree"
        );
        coords.resize(field.degree(), Rational::zero());
        FieldElement {
            field: Some(field.clone()),
            coords,
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Rational::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn same_field(a: &FieldElement, b: &FieldElement) -> Result<Option<Arc<NumberField>>, ScalarError> {
        match (&a.field, &b.field) {
            (None, None) => Ok(None),
            (Some(f), None) => Ok(Some(f.clone())),
            (None, Some(g)) => Ok(Some(g.clone())),
            (Some(f), Some(g)) => {
                if Arc::ptr_eq(f, g) || f.modulus == g.modulus {
                    Ok(Some(f.clone()))
                } else {
                    Err(ScalarError::FieldMismatch)
                }
            }
        }
    }

    fn lifted(&self, field: &Option<Arc<NumberField>>) -> Vec<Rational> {
        let d = field.as_ref().map_or(1, |f| f.degree());
        let mut c = self.coords.clone();
        c.resize(d.max(c.len()), Rational::zero());
        c
    }

    pub fn try_add(&self, rhs: &FieldElement) -> Result<FieldElement, ScalarError> {
        let field = Self::same_field(self, rhs)?;
        let (a, b) = (self.lifted(&field), rhs.lifted(&field));
        let coords = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        Ok(FieldElement { field, coords })
    }

    pub fn try_sub(&self, rhs: &FieldElement) -> Result<FieldElement, ScalarError> {
        let field = Self::same_field(self, rhs)?;
        let (a, b) = (self.lifted(&field), rhs.lifted(&field));
        let coords = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        Ok(FieldElement { field, coords })
    }

    pub fn try_mul(&self, rhs: &FieldElement) -> Result<FieldElement, ScalarError> {
        let field = Self::same_field(self, rhs)?;
        let prod = poly::mul(&self.coords, &rhs.coords);
        let coords = match &field {
            None => prod,
            Some(f) => poly::rem_by_monic(prod, &f.modulus),
        };
        let mut out = FieldElement { field, coords };
        out.fit();
        Ok(out)
    }

    fn fit(&mut self) {
        let d = self.field.as_ref().map_or(1, |f| f.degree());
        self.coords.resize(d, Rational::zero());
    }

    /// Multiplicative inverse; errors on zero, and on a zero divisor when the
    /// (unverified) modulus turns out to be reducible.
    pub fn inverse(&self) -> Result<FieldElement, ScalarError> {
        match &self.field {
            None => {
                let q = self.coords[0].recip()?;
                Ok(FieldElement::from_rational(q))
            }
            Some(f) => {
                if self.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                let (g, u, _) = poly::xgcd(&self.coords, &f.modulus);
                if poly::degree(&g) != Some(0) {
                    return Err(ScalarError::ReducibleModulus);
                }
                let scale = g[0].recip()?;
                let coords: Vec<Rational> = u.iter().map(|c| c * &scale).collect();
                let coords = poly::rem_by_monic(coords, &f.modulus);
                let mut out = FieldElement {
                    field: Some(f.clone()),
                    coords,
                };
                out.fit();
                Ok(out)
            }
        }
    }

    pub fn try_div(&self, rhs: &FieldElement) -> Result<FieldElement, ScalarError> {
        self.try_mul(&rhs.inverse()?)
    }

    pub fn pow(&self, e: i32) -> Result<FieldElement, ScalarError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = FieldElement::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.try_mul(&base)?;
        }
        Ok(acc)
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match Self::same_field(self, other) {
            Err(_) => false,
            Ok(field) => self.lifted(&field) == other.lifted(&field),
        }
    }
}

impl Eq for FieldElement {}

/// Order by coordinates; only meaningful inside one field, but total enough
/// for deterministic sorting of report rows.
impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let field = Self::same_field(self, other).ok();
        match field {
            Some(f) => self.lifted(&f).cmp(&other.lifted(&f)),
            None => self.coords.cmp(&other.coords),
        }
    }
}

macro_rules! element_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl core::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl core::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field mismatch")
            }
        }
    };
}

element_binop!(Add, add, try_add);
element_binop!(Sub, sub, try_sub);
element_binop!(Mul, mul, try_mul);

impl core::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            None => write!(f, "{}", self.coords[0]),
            Some(_) => {
                if self.is_rational() {
                    return write!(f, "{}", self.coords[0]);
                }
                write!(f, "poly(")?;
                for (i, c) in self.coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fmt_debug_as_display!(FieldElement);

/// Parse the textual scalar syntax: `p/q`, `p`, or `poly(c0,c1,...)` with an
/// optional `@m(x)` suffix that must match `field` when given.
pub fn parse_scalar(
    s: &str,
    field: Option<&Arc<NumberField>>,
) -> Result<FieldElement, ScalarError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("poly(") {
        let (inner, suffix) = match rest.split_once(')') {
            Some((inner, suffix)) => (inner, suffix.trim()),
            None => return Err(ScalarError::Parse("unterminated poly(...)".into())),
        };
        let field = field.ok_or_else(|| {
            ScalarError::Parse("poly(...) scalar used without a field declaration".into())
        })?;
        if let Some(modtext) = suffix.strip_prefix('@') {
            let declared = poly::parse(modtext)?;
            if poly::normalized(declared) != field.modulus {
                return Err(ScalarError::Parse(
                    "poly(...)@m(x) does not match the declared field".into(),
                ));
            }
        } else if !suffix.is_empty() {
            return Err(ScalarError::Parse(alloc::format!(
                "unexpected trailing `{suffix}` after poly(...)"
            )));
        }
        let mut coords = Vec::new();
        for part in inner.split(',') {
            coords.push(parse_rational(part)?);
        }
        if coords.len() > field.degree() {
            return Err(ScalarError::Parse("poly(...) longer than field degree".into()));
        }
        Ok(FieldElement::from_coords(field, coords))
    } else {
        Ok(FieldElement::from_rational(parse_rational(s)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldElement {
        FieldElement::from_ratio(n, d)
    }

    #[test]
    fn rational_arithmetic() {
        let half = q(1, 2);
        let third = q(1, 3);
        assert_eq!(&half + &third, q(5, 6));
        assert_eq!(q(5, 6).inverse().unwrap(), q(6, 5));
        assert_eq!(FieldElement::zero().inverse(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn sqrt2_field() {
        let f = NumberField::adjoin_root(2, Rational::from_int(2)).unwrap();
        let x = f.generator();
        assert_eq!(&x * &x, FieldElement::from_int(2));
        // x^{-1} = x/2
        let inv = x.inverse().unwrap();
        assert_eq!(&inv * &x, FieldElement::one());
        assert_eq!(inv, x.scale(&Rational::new(1, 2)));
    }

    #[test]
    fn cbrt2_field() {
        let f = NumberField::adjoin_root(3, Rational::from_int(2)).unwrap();
        let x = f.generator();
        let one_plus_x = &FieldElement::one() + &x;
        let sq = &one_plus_x * &one_plus_x;
        // (1+x)^2 = 1 + 2x + x^2, below the reduction degree
        let expected = FieldElement::from_coords(
            &f,
            vec![Rational::one(), Rational::from_int(2), Rational::one()],
        );
        assert_eq!(sq, expected);
        // inverse(x) = x^2/2 by the extended Euclidean algorithm
        let inv = x.inverse().unwrap();
        let expected_inv = FieldElement::from_coords(
            &f,
            vec![Rational::zero(), Rational::zero(), Rational::new(1, 2)],
        );
        assert_eq!(inv, expected_inv);
        assert_eq!(&inv * &x, FieldElement::one());
    }

    #[test]
    fn embed_is_homomorphism_samples() {
        let f = NumberField::adjoin_root(3, Rational::from_int(2)).unwrap();
        let e = |n: i64, d: i64| FieldElement::embed_rational(Rational::new(n, d), &f);
        assert_eq!(e(0, 1), FieldElement::zero());
        assert_eq!(
            FieldElement::embed_rational(Rational::from_int(1), &NumberField::adjoin_root(2, Rational::from_int(-1)).unwrap()),
            FieldElement::one()
        );
        assert_eq!(&e(1, 2) + &e(1, 3), e(5, 6));
        assert_eq!(&e(-3, 7) * &e(7, 3), e(-1, 1));
    }

    #[test]
    fn mixed_field_errors() {
        let f2 = NumberField::adjoin_root(2, Rational::from_int(2)).unwrap();
        let f3 = NumberField::adjoin_root(2, Rational::from_int(3)).unwrap();
        let a = f2.generator();
        let b = f3.generator();
        assert_eq!(a.try_add(&b), Err(ScalarError::FieldMismatch));
        // rationals coerce
        assert_eq!(a.try_mul(&FieldElement::from_int(0)).unwrap(), FieldElement::zero());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 - 4 = (x-2)(x+2)
        assert_eq!(
            NumberField::adjoin_root(2, Rational::from_int(4)).err(),
            Some(ScalarError::ReducibleModulus)
        );
        // x^4 - 4 is reducible (x^2-2)(x^2+2)
        assert_eq!(
            NumberField::adjoin_root(4, Rational::from_int(4)).err(),
            Some(ScalarError::ReducibleModulus)
        );
        // x^4 + 4 = (x^2-2x+2)(x^2+2x+2)
        assert_eq!(
            NumberField::adjoin_root(4, Rational::from_int(-4)).err(),
            Some(ScalarError::ReducibleModulus)
        );
        assert!(NumberField::adjoin_root(4, Rational::from_int(2)).is_ok());
        assert!(NumberField::adjoin_root(4, Rational::new(1, 2)).is_ok());
        assert!(NumberField::adjoin_root(2, Rational::from_int(-1)).is_ok());
    }

    #[test]
    fn scalar_syntax_round_trip() {
        let f = NumberField::adjoin_root(3, Rational::from_int(2)).unwrap();
        let x = f.generator();
        let v = &x * &x;
        let shown = alloc::format!("{v}");
        assert_eq!(shown, "poly(0,0,1)");
        let back = parse_scalar(&shown, Some(&f)).unwrap();
        assert_eq!(back, v);
        assert_eq!(parse_scalar("-3/7", None).unwrap(), q(-3, 7));
        assert!(parse_scalar("poly(1,2)@x^3 - 2", Some(&f)).is_ok());
        assert!(parse_scalar("poly(1,2)@x^2 - 2", Some(&f)).is_err());
    }
}
