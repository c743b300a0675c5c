//! Canonical normal-ordered polynomials in two boson modes.
//!
//! Monomials are kept in the fixed normal order `a1^+^p a1^q a2^+^r a2^s`;
//! every product is re-expanded through the commutator `[a, a^+] = 1` of each
//! mode, so two operators are equal iff their term maps are equal. With a
//! rational scalar the expansion is exact, which is what makes the algebra
//! identity checks in this crate meaningful.

use crate::error::{QesError, Result};
use crate::scalar::{binomial_u128, falling_u128, Scalar};
use num_integer::Integer;
use std::collections::BTreeMap;
use std::fmt;

/// Exponents (p, q, r, s) of `a1^+^p a1^q a2^+^r a2^s`.
pub type Exponents = (u32, u32, u32, u32);

/// Elementary ladder operator of one of the two modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    Create1,
    Annihilate1,
    Create2,
    Annihilate2,
}

impl Ladder {
    fn exponents(self) -> Exponents {
        match self {
            Ladder::Create1 => (1, 0, 0, 0),
            Ladder::Annihilate1 => (0, 1, 0, 0),
            Ladder::Create2 => (0, 0, 1, 0),
            Ladder::Annihilate2 => (0, 0, 0, 1),
        }
    }
}

/// One normal-ordered monomial with a nonzero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct BosonMonomial<S> {
    pub coeff: S,
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub s: u32,
}

/// Finite linear combination of normal-ordered two-mode monomials.
///
/// Terms are merged and sorted by (p, q, r, s); zero coefficients are
/// dropped, so the representation is canonical.
#[derive(Clone, Debug, PartialEq)]
pub struct BosonOperator<S: Scalar> {
    terms: BTreeMap<Exponents, S>,
}

impl<S: Scalar> Default for BosonOperator<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> BosonOperator<S> {
    pub fn zero() -> Self {
        BosonOperator { terms: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::monomial(S::one(), (0, 0, 0, 0))
    }

    pub fn monomial(coeff: S, exps: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        BosonOperator { terms }
    }

    pub fn ladder(op: Ladder) -> Self {
        Self::monomial(S::one(), op.exponents())
    }

    /// Number operator of mode 1 or 2.
    pub fn number(mode: u8) -> Self {
        match mode {
            1 => Self::monomial(S::one(), (1, 1, 0, 0)),
            2 => Self::monomial(S::one(), (0, 0, 1, 1)),
            _ => panic!("mode must be 1 or 2"),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (S, Exponents)>) -> Self {
        let mut out = Self::zero();
        for (c, e) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = BosonMonomial<S>> + '_ {
        self.terms.iter().map(|(&(p, q, r, s), c)| BosonMonomial {
            coeff: c.clone(),
            p,
            q,
            r,
            s,
        })
    }

    pub fn coeff_of(&self, exps: Exponents) -> S {
        self.terms.get(&exps).cloned().unwrap_or_else(S::zero)
    }

    fn add_term(&mut self, exps: Exponents, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(S::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-S::one()))
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c.clone() * factor.clone());
        }
        out
    }

    /// Operator product, re-expanded into normal order.
    ///
    /// Per mode, `a^m a^+^n = sum_k k! C(m,k) C(n,k) a^+^(n-k) a^(m-k)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(p1, q1, r1, s1), c1) in &self.terms {
            for (&(p2, q2, r2, s2), c2) in &other.terms {
                let base = c1.clone() * c2.clone();
                for k in 0..=q1.min(p2) {
                    let f1 = contraction_factor(q1, p2, k);
                    for j in 0..=s1.min(r2) {
                        let f2 = contraction_factor(s1, r2, j);
                        let coeff = base.clone() * S::from_u128(f1 * f2);
                        let exps = (p1 + p2 - k, q1 + q2 - k, r1 + r2 - j, s1 + s2 - j);
                        out.add_term(exps, coeff);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Hermitian adjoint: reverses each monomial and conjugates coefficients.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (&(p, q, r, s), c) in &self.terms {
            out.add_term((q, p, s, r), c.conj());
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Occupation shifts (n1, n2) -> (n1+dn1, n2+dn2) of every term.
    pub fn shifts(&self) -> Vec<(i64, i64)> {
        self.terms
            .keys()
            .map(|&(p, q, r, s)| (i64::from(p) - i64::from(q), i64::from(r) - i64::from(s)))
            .collect()
    }

    /// Smallest conserved charge Q = c1*n1 + c2*n2, if one exists.
    ///
    /// Returns the primitive pair with c1 > 0 (or c1 = 0, c2 > 0). A purely
    /// diagonal operator conserves every charge; (1, 0) is returned then.
    /// `None` means the term shifts span both directions, so only the
    /// trivial charge works.
    pub fn conserved_charge(&self) -> Option<(i64, i64)> {
        let nonzero: Vec<(i64, i64)> = self
            .shifts()
            .into_iter()
            .filter(|&(a, b)| a != 0 || b != 0)
            .collect();
        let Some(&(a0, b0)) = nonzero.first() else {
            return Some((1, 0));
        };
        let g = a0.gcd(&b0);
        let prim = (a0 / g, b0 / g);
        for &(a, b) in &nonzero[1..] {
            // parallel iff cross product vanishes and it lies on the same line
            if a * prim.1 != b * prim.0 {
                return None;
            }
        }
        let (mut c1, mut c2) = (-prim.1, prim.0);
        if c1 < 0 || (c1 == 0 && c2 < 0) {
            c1 = -c1;
            c2 = -c2;
        }
        Some((c1, c2))
    }

    /// True when every term conserves Q = c1*n1 + c2*n2.
    pub fn conserves(&self, c1: i64, c2: i64) -> bool {
        self.shifts().iter().all(|&(a, b)| c1 * a + c2 * b == 0)
    }

    pub fn check_conserves(&self, c1: i64, c2: i64) -> Result<()> {
        for (a, b) in self.shifts() {
            if c1 * a + c2 * b != 0 {
                return Err(QesError::ChargeViolation { c1, c2, dn1: a, dn2: b });
            }
        }
        Ok(())
    }

    /// Map coefficients into another scalar field.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BosonOperator<T> {
        let mut out = BosonOperator::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    pub fn to_c64(&self) -> BosonOperator<crate::scalar::C64> {
        self.map_scalar(|c| c.to_c64())
    }

    /// Lossless text form, e.g. `0.5*a1d^2 a2^1 + (0+1i)*a2d^3`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(p, q, r, s), c)| {
                let mut factors = Vec::new();
                for (name, e) in [("a1d", p), ("a1", q), ("a2d", r), ("a2", s)] {
                    if e > 0 {
                        factors.push(format!("{name}^{e}"));
                    }
                }
                if factors.is_empty() {
                    c.fmt_coeff()
                } else {
                    format!("{}*{}", c.fmt_coeff(), factors.join(" "))
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut out = Self::zero();
        let text = text.trim();
        if text == "0" {
            return Ok(out);
        }
        for part in text.split(" + ") {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (coeff_str, factors) = match part.split_once('*') {
                Some((c, f)) => (c, Some(f)),
                None => (part, None),
            };
            let coeff = S::parse_coeff(coeff_str)
                .ok_or_else(|| QesError::InvalidInput(format!("bad coefficient `{coeff_str}`")))?;
            let mut exps = (0u32, 0u32, 0u32, 0u32);
            if let Some(factors) = factors {
                for factor in factors.split_whitespace() {
                    let (name, e) = factor
                        .split_once('^')
                        .ok_or_else(|| QesError::InvalidInput(format!("bad factor `{factor}`")))?;
                    let e: u32 = e
                        .parse()
                        .map_err(|_| QesError::InvalidInput(format!("bad exponent `{e}`")))?;
                    match name {
                        "a1d" => exps.0 += e,
                        "a1" => exps.1 += e,
                        "a2d" => exps.2 += e,
                        "a2" => exps.3 += e,
                        _ => {
                            return Err(QesError::InvalidInput(format!("unknown factor `{name}`")))
                        }
                    }
                }
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }
}

impl<S: Scalar> fmt::Display for BosonOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn contraction_factor(m: u32, n: u32, k: u32) -> u128 {
    // k! C(m,k) C(n,k) = falling(m,k) * C(n,k)
    falling_u128(u64::from(m), u64::from(k)) * binomial_u128(u64::from(n), u64::from(k))
}

/// Normal-order an arbitrary product of elementary ladder factors.
pub fn normal_order<S: Scalar>(factors: &[Ladder]) -> BosonOperator<S> {
    factors
        .iter()
        .fold(BosonOperator::identity(), |acc, &f| acc.mul(&BosonOperator::ladder(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{C64, CRat};
    use Ladder::*;

    fn op(f: &[Ladder]) -> BosonOperator<CRat> {
        normal_order(f)
    }

    #[test]
    fn single_commutator() {
        // a1 a1+ = a1+ a1 + 1
        let lhs = op(&[Annihilate1, Create1]);
        let expected = BosonOperator::from_terms([
            (CRat::from_int(1), (1, 1, 0, 0)),
            (CRat::from_int(1), (0, 0, 0, 0)),
        ]);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn cross_mode_factors_commute() {
        let lhs = op(&[Annihilate1, Create2]);
        assert_eq!(lhs, BosonOperator::monomial(CRat::from_int(1), (0, 1, 1, 0)));
        assert_eq!(op(&[Create2, Annihilate1]), lhs);
    }

    #[test]
    fn double_contraction() {
        // a2 a2+ a2+ = a2+^2 a2 + 2 a2+
        let lhs = op(&[Annihilate2, Create2, Create2]);
        let expected = BosonOperator::from_terms([
            (CRat::from_int(1), (0, 0, 2, 1)),
            (CRat::from_int(2), (0, 0, 1, 0)),
        ]);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn commutator_of_elementary_ops() {
        let a1 = BosonOperator::<CRat>::ladder(Annihilate1);
        let a1d = BosonOperator::<CRat>::ladder(Create1);
        assert_eq!(a1.commutator(&a1d), BosonOperator::identity());
    }

    #[test]
    fn adjoint_reverses() {
        let m = BosonOperator::<C64>::monomial(C64::new(0.0, 0.5), (2, 1, 0, 3));
        // (c a1d^2 a1 a2^3)^+ = conj(c) a1d a1^2 a2d^3
        assert_eq!(
            m.adjoint(),
            BosonOperator::monomial(C64::new(0.0, -0.5), (1, 2, 3, 0))
        );
    }

    #[test]
    fn charge_detection() {
        // kappa a1d^2 a2 + conj shifts (+2,-1): charge (1,2)
        let h = BosonOperator::<CRat>::from_terms([
            (CRat::from_int(1), (2, 0, 0, 1)),
            (CRat::from_int(1), (0, 2, 1, 0)),
            (CRat::from_int(3), (1, 1, 0, 0)),
        ]);
        assert_eq!(h.conserved_charge(), Some((1, 2)));

        // a1 + a1d: shifts (+-1, 0): charge (0,1)
        let x = BosonOperator::<CRat>::from_terms([
            (CRat::from_int(1), (1, 0, 0, 0)),
            (CRat::from_int(1), (0, 1, 0, 0)),
        ]);
        assert_eq!(x.conserved_charge(), Some((0, 1)));

        // diagonal: every charge conserved
        assert_eq!(
            BosonOperator::<CRat>::number(1).conserved_charge(),
            Some((1, 0))
        );

        // rank-2 shifts: none
        let bad = BosonOperator::<CRat>::from_terms([
            (CRat::from_int(1), (1, 0, 0, 0)),
            (CRat::from_int(1), (0, 0, 1, 0)),
        ]);
        assert_eq!(bad.conserved_charge(), None);
    }

    #[test]
    fn mul_is_associative_exactly() {
        let a = BosonOperator::<CRat>::from_terms([
            (CRat::ratio(1, 3), (1, 2, 0, 1)),
            (CRat::from_int(-2), (0, 0, 1, 1)),
        ]);
        let b = BosonOperator::<CRat>::from_terms([
            (CRat::from_int(1), (0, 1, 2, 0)),
            (CRat::ratio(-5, 7), (2, 0, 0, 0)),
        ]);
        let c = BosonOperator::<CRat>::from_terms([(CRat::from_int(1), (1, 1, 1, 1))]);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn text_roundtrip() {
        let h = BosonOperator::<C64>::from_terms([
            (C64::new(0.5, 0.0), (2, 0, 0, 1)),
            (C64::new(0.1, -0.7), (0, 0, 0, 0)),
            (C64::new(-1.25e-3, 0.0), (1, 1, 2, 2)),
        ]);
        let text = h.to_text();
        assert_eq!(BosonOperator::<C64>::from_text(&text).unwrap(), h);

        let mixed = CRat::new(
            num_rational::BigRational::new(1.into(), 6.into()),
            num_rational::BigRational::new((-2).into(), 9.into()),
        );
        let e = BosonOperator::<CRat>::from_terms([
            (CRat::ratio(-3, 4), (0, 1, 0, 0)),
            (mixed, (1, 0, 1, 0)),
        ]);
        let text = e.to_text();
        assert_eq!(BosonOperator::<CRat>::from_text(&text).unwrap(), e);
    }
}
