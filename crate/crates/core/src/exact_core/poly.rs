//! Sparse polynomials in the two spectral variables `u` and `v`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use super::Scalar;

/// Exponent pair `(deg_u, deg_v)`.
pub type Monomial = (u32, u32);

/// Polynomial in `u`, `v` over [`Scalar`]. Terms are sorted by monomial and
/// never carry a zero coefficient, so equality of the term lists is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly2::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly2::monomial(c, 0, 0)
    }

    pub fn monomial(c: Scalar, du: u32, dv: u32) -> Self {
        if c.is_zero() {
            Poly2::zero()
        } else {
            Poly2 { terms: vec![((du, dv), c)] }
        }
    }

    pub fn u() -> Self {
        Poly2::monomial(Scalar::one(), 1, 0)
    }

    pub fn v() -> Self {
        Poly2::monomial(Scalar::one(), 0, 1)
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Self {
        let mut raw: Vec<(Monomial, Scalar)> = terms.into_iter().collect();
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly2 { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, du: u32, dv: u32) -> Scalar {
        self.terms
            .binary_search_by(|(m, _)| m.cmp(&(du, dv)))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|((a, b), _)| a + b).max()
    }

    pub fn degree_u(&self) -> Option<u32> {
        self.terms.iter().map(|((a, _), _)| *a).max()
    }

    pub fn degree_v(&self) -> Option<u32> {
        self.terms.iter().map(|((_, b), _)| *b).max()
    }

    /// Returns the constant if the polynomial has no `u`/`v` dependence.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [((0, 0), c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn add_assign_ref(&mut self, rhs: &Poly2) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            self.terms = rhs.terms.clone();
            return;
        }
        *self = merge(&self.terms, &rhs.terms, false);
    }

    /// `self += a * b` without materializing the product separately when
    /// either factor is a single term.
    pub fn add_product(&mut self, a: &Poly2, b: &Poly2) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let prod = a * b;
        self.add_assign_ref(&prod);
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut acc = Poly2::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates `u := pu`, `v := pv` where `pu`, `pv` are themselves
    /// polynomials in `u`, `v`.
    pub fn substitute(&self, pu: &Poly2, pv: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((a, b), c) in &self.terms {
            let term = &(&pu.pow(*a) * &pv.pow(*b)) * &Poly2::constant(c.clone());
            out.add_assign_ref(&term);
        }
        out
    }

    /// Evaluates at rational points.
    pub fn eval(&self, u: &Scalar, v: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for ((a, b), c) in &self.terms {
            out += &(&(c * &u.pow(*a)) * &v.pow(*b));
        }
        out
    }
}

fn merge(a: &[(Monomial, Scalar)], b: &[(Monomial, Scalar)], negate_b: bool) -> Poly2 {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
            out.push((b[j].0, c));
            j += 1;
        } else {
            let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    Poly2 { terms: out }
}

impl<'a> Add<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl<'a> Sub<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl<'a> Mul<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        if self.is_zero() || rhs.is_zero() {
            return Poly2::zero();
        }
        if self.terms.len() == 1 {
            let ((a, b), c) = &self.terms[0];
            let terms = rhs.terms.iter().map(|((x, y), d)| ((x + a, y + b), c * d)).collect();
            return Poly2 { terms };
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &rhs.terms {
                raw.push(((a + x, b + y), c * d));
            }
        }
        Poly2::from_terms(raw)
    }
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(self, rhs: Poly2) -> Poly2 {
        &self + &rhs
    }
}

impl Sub for Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: Poly2) -> Poly2 {
        &self - &rhs
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        &self * &rhs
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

impl From<Scalar> for Poly2 {
    fn from(c: Scalar) -> Self {
        Poly2::constant(c)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|((a, b), c)| {
                let mut s = format!("({c})");
                if *a > 0 {
                    s.push_str(&format!("*u^{a}"));
                }
                if *b > 0 {
                    s.push_str(&format!("*v^{b}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Term<'a>(&'a Monomial, &'a Scalar);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 3)?;
        st.serialize_field("du", &self.0 .0)?;
        st.serialize_field("dv", &self.0 .1)?;
        st.serialize_field("coeff", &self.1.to_string())?;
        st.end()
    }
}

impl Serialize for Poly2 {
    /// Array of `{du, dv, coeff}` records with string coefficients.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&Term(m, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn zero_terms_dropped() {
        let p = &Poly2::u() - &Poly2::u();
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn substitution_shift() {
        // (u - v)^2 = u^2 - 2uv + v^2
        let p = Poly2::u().pow(2);
        let q = p.substitute(&(&Poly2::u() - &Poly2::v()), &Poly2::v());
        assert_eq!(q.coeff(2, 0), s(1));
        assert_eq!(q.coeff(1, 1), s(-2));
        assert_eq!(q.coeff(0, 2), s(1));
        assert_eq!(q.num_terms(), 3);
    }

    #[test]
    fn serializes_as_term_records() {
        let p = Poly2::monomial(Scalar::frac(1, 2), 1, 0);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"[{"du":1,"dv":0,"coeff":"1/2"}]"#);
    }
}
