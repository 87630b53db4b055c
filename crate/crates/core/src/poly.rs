//! Multivariate polynomials with exact rational coefficients over
//! indeterminates `w(a,b)` indexed by ordered label pairs.
//!
//! Monomials are sorted `(pair, exponent)` lists with lexicographic order on
//! pairs, and zero coefficients are never stored, so two polynomials are equal
//! iff their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Indeterminate(pub u32, pub u32);

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w({},{})", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Indeterminate, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(x: Indeterminate) -> Self {
        Monomial(vec![(x, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Indeterminate, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

// graded, then lexicographic on the factor list
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (x, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{x}")?;
            } else {
                write!(f, "{x}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(crate::rational::int(c))
    }

    pub fn var(a: u32, b: u32) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(Indeterminate(a, b)), Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Substitutes a value for every indeterminate.
    pub fn eval(&self, mut value: impl FnMut(Indeterminate) -> Rational) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(x, e) in m.factors() {
                t *= crate::rational::pow(&value(x), e);
            }
            total += t;
        }
        total
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if mag.is_integer() { mag.numer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) };
            if m.factors().is_empty() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_and_display() {
        let a = Polynomial::var(1, 3);
        let b = Polynomial::var(2, 4);
        let three = Polynomial::int(3);
        let p = &(&a + &b) * &(&three + &Polynomial::var(1, 4));
        let p = &Polynomial::int(8) + &(&Polynomial::int(2) * &p);
        assert_eq!(p.to_string(), "8 + 6*w(1,3) + 6*w(2,4) + 2*w(1,3)*w(1,4) + 2*w(1,4)*w(2,4)");
        assert!((&p - &p).is_zero());
        assert_eq!((&a * &a).to_string(), "w(1,3)^2");
        assert_eq!((-&a).to_string(), "-w(1,3)");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = Polynomial::var(1, 2);
        let s = &a - &a;
        assert!(s.is_zero());
        assert_eq!(s.term_count(), 0);
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-3i64..4, 0u32..3, 1u32..3), 0..4).prop_map(|terms| {
            terms.into_iter().fold(Polynomial::zero(), |acc, (c, a, b)| {
                let t = &Polynomial::int(c) * &Polynomial::var(a, b);
                &acc + &t
            })
        })
    }

    proptest! {
        #[test]
        fn ring_laws(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        }

        #[test]
        fn evaluation_is_a_homomorphism(p in small_poly(), q in small_poly(), vals in prop::collection::vec(-3i64..4, 6)) {
            let val = |x: Indeterminate| int(vals[(x.0 * 2 + x.1) as usize % vals.len()]);
            prop_assert_eq!((&p * &q).eval(val), p.eval(val) * q.eval(val));
            prop_assert_eq!((&p + &q).eval(val), p.eval(val) + q.eval(val));
        }
    }
}
