//! Dense univariate polynomials over [`Rational`].
//!
//! Coefficients are stored in ascending degree order: index `i` holds the
//! coefficient of `λ^i`. The zero polynomial is the empty vector and a
//! nonzero polynomial never has a trailing zero coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

/// Result of [`Poly::ext_gcd`]: `u·a + v·b = g` with `g` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtGcd {
    pub u: Poly,
    pub v: Poly,
    pub g: Poly,
}

impl Poly {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The indeterminate `λ`.
    pub fn lambda() -> Self {
        Poly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Poly { coeffs: vec![c] }.normalize()
    }

    /// `c·λ^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }.normalize()
    }

    /// Builds from ascending coefficients, stripping trailing zeros.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Poly { coeffs }.normalize()
    }

    /// Builds from ascending integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// `λ - c`.
    pub fn linear_root(c: Rational) -> Self {
        Poly::new(vec![-c, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `λ^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
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

    /// Scales to leading coefficient one; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// `self · λ^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i))
                .collect(),
        )
    }

    /// `[f^(0), …, f^(k)]` where `f^(i)` is `1/i!` times the `i`-th derivative.
    ///
    /// The coefficient of `λ^m` in `f^(i)` is `C(m+i, i)·a_{m+i}`, so each term
    /// is built directly without dividing by factorials.
    pub fn scaled_derivatives(&self, k: usize) -> Vec<Poly> {
        (0..=k)
            .map(|i| {
                let len = self.coeffs.len().saturating_sub(i);
                let mut binom = Rational::one();
                let mut out = Vec::with_capacity(len);
                for m in 0..len {
                    // binom = C(m+i, i)
                    if m > 0 {
                        binom = binom * Rational::from(m + i) / Rational::from(m);
                    }
                    out.push(&self.coeffs[m + i] * &binom);
                }
                Poly::new(out)
            })
            .collect()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Division with remainder: `self = q·divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let db = divisor.degree().ok_or(Error::ZeroDivisor)?;
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if da < db {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc_inv = divisor.coeffs[db].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = &rem[k + db] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Exact quotient, erroring if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Verification(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(q)
    }

    /// True when `self` divides `other` (the zero polynomial divides only zero).
    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd_monic(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns `u, v, g` with `u·self + v·other = g`, `g` monic.
    ///
    /// When `g = 1` and `deg self ≥ 1` the cofactor `v` is reduced modulo `self`
    /// so that `deg v < deg self`.
    pub fn ext_gcd(&self, other: &Poly) -> Result<ExtGcd> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(), Poly::zero());
        let (mut v0, mut v1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let u2 = &u0 - &(&q * &u1);
            let v2 = &v0 - &(&q * &v1);
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u2);
            v0 = std::mem::replace(&mut v1, v2);
        }
        let lc_inv = r0.leading_coeff().expect("nonzero gcd").recip();
        let mut u = u0.scale(&lc_inv);
        let mut v = v0.scale(&lc_inv);
        let g = r0.scale(&lc_inv);
        if g.is_one() && self.degree().is_some_and(|d| d >= 1) {
            let (q, v_red) = v.div_rem(self)?;
            u = &u + &(&q * other);
            v = v_red;
        }
        Ok(ExtGcd { u, v, g })
    }

    /// Descending-degree text in `λ`, e.g. `λ^2 - 2λ + 1`.
    pub fn pretty(&self) -> String {
        self.pretty_in("λ")
    }

    pub fn pretty_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else if mag.is_integer() {
                out.push_str(&format!("{mag}{mono}"));
            } else {
                out.push_str(&format!("({mag}){mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.pretty())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Vec::<Rational>::deserialize(deserializer).map(Poly::new)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

macro_rules! owned_poly_ops {
    ($($Trait:ident $method:ident),*) => {$(
        impl $Trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $Trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    )*};
}

owned_poly_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    // Schoolbook convolution on plain integers, independent of `Mul for Poly`.
    fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p(&[1, 1]) * p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(Poly::zero() * p(&[2, 0, 0, 1]), Poly::zero());
        let sq = convolve(&[1, 0, 1], &[1, 0, 1]);
        assert_eq!(sq, vec![1, 0, 2, 0, 1]);
        assert_eq!(p(&[1, 0, 1]) * p(&[1, 0, 1]), p(&sq));
    }

    #[test]
    fn divmod_examples() {
        assert_eq!(p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap(), (p(&[1, 1]), Poly::zero()));
        assert_eq!(p(&[0, 0, 0, 1]).div_rem(&p(&[0, 0, 1])).unwrap(), (p(&[0, 1]), Poly::zero()));
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[0, 2])).unwrap();
        assert_eq!(q, Poly::monomial(ratio(1, 2), 1));
        assert_eq!(r, p(&[1]));
        assert_eq!(&q * &p(&[0, 2]) + &r, p(&[1, 0, 1]));
        assert_eq!(p(&[1]).div_rem(&Poly::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn gcd_examples() {
        // λ³ − λ² and 3λ² − 2λ share exactly λ.
        let a = p(&[0, 0, -1, 1]);
        let b = p(&[0, -2, 3]);
        let g = a.gcd_monic(&b).unwrap();
        assert_eq!(g, p(&[0, 1]));
        assert!(g.divides(&a) && g.divides(&b));
        assert_eq!(p(&[4, 2]).gcd_monic(&Poly::zero()).unwrap(), p(&[2, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd_monic(&p(&[0, 2])).unwrap(), Poly::one());
        assert_eq!(Poly::zero().gcd_monic(&Poly::zero()), Err(Error::GcdOfZeros));
    }

    #[test]
    fn ext_gcd_examples() {
        let e = p(&[-1, 1]).ext_gcd(&Poly::one()).unwrap();
        assert_eq!((e.u, e.v, e.g), (Poly::zero(), Poly::one(), Poly::one()));

        let e = p(&[1, 0, 1]).ext_gcd(&p(&[0, 2])).unwrap();
        assert_eq!(e.u, Poly::one());
        assert_eq!(e.v, Poly::monomial(ratio(-1, 2), 1));
        assert_eq!(e.g, Poly::one());

        let e = p(&[0, 1]).ext_gcd(&p(&[1, 1])).unwrap();
        assert_eq!((e.u, e.v, e.g), (p(&[-1]), p(&[1]), Poly::one()));
        assert!(Poly::zero().ext_gcd(&Poly::zero()).is_err());
    }

    #[test]
    fn scaled_derivative_examples() {
        assert_eq!(
            p(&[1, 0, 1]).scaled_derivatives(2),
            vec![p(&[1, 0, 1]), p(&[0, 2]), p(&[1])]
        );
        assert_eq!(p(&[-1, 1]).scaled_derivatives(1), vec![p(&[-1, 1]), p(&[1])]);
        // Binomial coefficients of (λ+z)^4, read column by column in z.
        let binom4 = [1, 4, 6, 4, 1];
        let expected: Vec<Poly> = (0..=4).map(|i| Poly::monomial(rat(binom4[i]), 4 - i)).collect();
        assert_eq!(p(&[0, 0, 0, 0, 1]).scaled_derivatives(4), expected);
        assert_eq!(p(&[3, 1]).scaled_derivatives(3)[2..], [Poly::zero(), Poly::zero()]);
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(p(&[1, -2, 1]).pretty(), "λ^2 - 2λ + 1");
        assert_eq!(p(&[0, 0, -1]).pretty(), "-λ^2");
        assert_eq!(Poly::new(vec![ratio(1, 2), ratio(-3, 4)]).pretty(), "-(3/4)λ + 1/2");
        assert_eq!(Poly::zero().pretty(), "0");
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((-5i64..=5, 1i64..=3), 0..=max_deg + 1)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    // Symbolic Taylor expansion: f(x + z) = Σ f^(i)(x) z^i checked at rational points.
    fn taylor_holds(f: &Poly, x: &Rational, z: &Rational) -> bool {
        let d = f.degree().unwrap_or(0);
        let rhs: Rational = f
            .scaled_derivatives(d)
            .iter()
            .enumerate()
            .map(|(i, fi)| fi.eval(x) * (0..i).fold(Rational::one(), |acc, _| acc * z))
            .sum();
        f.eval(&(x + z)) == rhs
    }

    proptest! {
        #[test]
        fn divmod_reconstructs(a in small_poly(6), b in small_poly(4)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn gcd_is_greatest_common_divisor(f in small_poly(3), x in small_poly(3), y in small_poly(3)) {
            prop_assume!(!f.is_zero() && !(x.is_zero() && y.is_zero()));
            let a = &f * &x;
            let b = &f * &y;
            let g = a.gcd_monic(&b).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(g.divides(&a) && g.divides(&b));
            prop_assert!(f.divides(&g));
        }

        #[test]
        fn bezout_identity(a in small_poly(5), b in small_poly(5)) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let e = a.ext_gcd(&b).unwrap();
            prop_assert_eq!(&(&e.u * &a) + &(&e.v * &b), e.g.clone());
            prop_assert_eq!(e.g.clone(), a.gcd_monic(&b).unwrap());
            if e.g.is_one() && a.degree().unwrap_or(0) >= 1 {
                prop_assert!(e.v.degree() < a.degree());
            }
        }

        #[test]
        fn taylor_identity(f in small_poly(6), xn in -4i64..=4, zn in -4i64..=4, zd in 1i64..=3) {
            prop_assert!(taylor_holds(&f, &rat(xn), &ratio(zn, zd)));
        }
    }
}
