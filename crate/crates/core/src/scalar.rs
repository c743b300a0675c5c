//! Scalar abstraction shared by the operator algebra.
//!
//! All symbolic machinery (normal ordering, similarity transforms, recurrence
//! extraction) is generic over a commutative coefficient field. Two concrete
//! scalars are used throughout:
//!
//! * [`C64`] — double-precision complex numbers, for everything numeric;
//! * [`CRat`] — complex numbers with exact rational parts, for identities
//!   that must hold exactly rather than to a tolerance.
//!
//! Every finite `f64` is an exact rational, so model parameters drawn as
//! floats convert losslessly into the exact path via [`Scalar::from_c64`].

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Double-precision complex scalar.
pub type C64 = Complex64;
/// Exact complex scalar with rational real and imaginary parts.
pub type CRat = num_complex::Complex<BigRational>;

/// Coefficient field for boson and differential operators.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_u128(n: u128) -> Self;

    /// Exact rational embedding.
    fn from_big_ratio(r: &BigRational) -> Self;

    /// Embed a complex double. Exact for [`CRat`] since every finite `f64`
    /// is a dyadic rational.
    fn from_c64(z: Complex64) -> Self;

    fn conj(&self) -> Self;

    fn to_c64(&self) -> Complex64;

    /// Render the coefficient so that parsing it back is lossless.
    fn fmt_coeff(&self) -> String;

    fn parse_coeff(s: &str) -> Option<Self>;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl Scalar for Complex64 {
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_u128(n: u128) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_big_ratio(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_c64(z: Complex64) -> Self {
        z
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn fmt_coeff(&self) -> String {
        fmt_complex_parts(&format!("{}", self.re), &format!("{}", self.im), self.im == 0.0)
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        let (re, im) = split_complex(s)?;
        Some(Complex64::new(re.parse().ok()?, im.map_or(Some(0.0), |t| t.parse().ok())?))
    }
}

impl Scalar for CRat {
    fn from_int(n: i64) -> Self {
        CRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn from_u128(n: u128) -> Self {
        CRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn from_big_ratio(r: &BigRational) -> Self {
        CRat::new(r.clone(), BigRational::zero())
    }

    fn from_c64(z: Complex64) -> Self {
        let part = |x: f64| BigRational::from_f64(x).expect("finite float");
        CRat::new(part(z.re), part(z.im))
    }

    fn conj(&self) -> Self {
        CRat::new(self.re.clone(), -self.im.clone())
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn fmt_coeff(&self) -> String {
        fmt_complex_parts(&self.re.to_string(), &self.im.to_string(), self.im.is_zero())
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        let parse_rat = |t: &str| -> Option<BigRational> {
            if let Some((n, d)) = t.split_once('/') {
                Some(BigRational::new(n.parse().ok()?, d.parse().ok()?))
            } else {
                Some(BigRational::from_integer(t.parse().ok()?))
            }
        };
        let (re, im) = split_complex(s)?;
        Some(CRat::new(
            parse_rat(re)?,
            im.map_or(Some(BigRational::zero()), parse_rat)?,
        ))
    }
}

fn fmt_complex_parts(re: &str, im: &str, im_is_zero: bool) -> String {
    if im_is_zero {
        re.to_string()
    } else if im.starts_with('-') {
        format!("({}{}i)", re, im)
    } else {
        format!("({}+{}i)", re, im)
    }
}

/// Split `"(re+imi)"` / `"(re-imi)"` / `"re"` into its parts.
fn split_complex(s: &str) -> Option<(&str, Option<&str>)> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix("i)")) {
        // the sign separating re from im is the last +/- not in position 0
        // and not directly after '/', 'e' or 'E'
        let bytes = inner.as_bytes();
        for i in (1..bytes.len()).rev() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E' | '/') {
                let (re, im) = inner.split_at(i);
                return Some((re, Some(im)));
            }
        }
        None
    } else {
        Some((s, None))
    }
}

/// Exact falling factorial x(x-1)...(x-j+1) of a rational argument.
pub fn falling_rational(x: &BigRational, j: u32) -> BigRational {
    let mut acc = BigRational::one();
    for t in 0..j {
        acc *= x - BigRational::from_integer(BigInt::from(t));
    }
    acc
}

/// n!/(n-k)! for integers, exact in `u128` (small exponents only).
pub fn falling_u128(n: u64, k: u64) -> u128 {
    debug_assert!(k <= n);
    ((n - k + 1)..=n).map(u128::from).product()
}

/// Binomial coefficient in `u128`.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * u128::from(n - t) / u128::from(t + 1);
    }
    acc
}

/// Floating falling factorial n!/(n-k)! for ladder amplitudes.
///
/// Computed by direct product; with per-mode occupations below ~170 the
/// intermediate values stay inside the `f64` range (170! ~ 7e306), which
/// covers every sector size this crate targets.
pub fn falling_f64(n: u32, k: u32) -> f64 {
    debug_assert!(k <= n);
    ((n - k + 1)..=n).map(f64::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_roundtrip_f64() {
        for z in [
            Complex64::new(0.1 + 0.2, 0.0),
            Complex64::new(-1.5e-13, 2.0 / 3.0),
            Complex64::new(0.0, -1.0),
        ] {
            let s = z.fmt_coeff();
            assert_eq!(Complex64::parse_coeff(&s), Some(z), "{s}");
        }
    }

    #[test]
    fn coeff_roundtrip_rational() {
        let z = CRat::new(
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
            BigRational::new(BigInt::from(1), BigInt::from(7)),
        );
        let s = z.fmt_coeff();
        assert_eq!(CRat::parse_coeff(&s), Some(z), "{s}");
        assert_eq!(CRat::parse_coeff("5/8"), Some(CRat::ratio(5, 8)));
    }

    #[test]
    fn float_to_rational_is_exact() {
        let x = 0.1f64;
        let r = CRat::from_c64(Complex64::new(x, 0.0));
        assert_eq!(r.re.to_f64().unwrap(), x);
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_u128(5, 2), 20);
        assert_eq!(falling_u128(5, 0), 1);
        assert_eq!(binomial_u128(6, 3), 20);
        assert_eq!(falling_f64(4, 4), 24.0);
        let x = BigRational::new(BigInt::from(7), BigInt::from(2));
        // 7/2 * 5/2 = 35/4
        assert_eq!(
            falling_rational(&x, 2),
            BigRational::new(BigInt::from(35), BigInt::from(4))
        );
    }
}
