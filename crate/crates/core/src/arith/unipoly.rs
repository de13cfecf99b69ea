use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::tower::{Elem, FieldTower};
use crate::error::{Error, Result};

/// Dense univariate polynomial over a [`FieldTower`], lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldTower,
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn new(field: &FieldTower, mut coeffs: Vec<Elem>) -> Self {
        field.trim(field.depth(), &mut coeffs);
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldTower) -> Self {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldTower) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &FieldTower, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `c * t^n`.
    pub fn monomial(field: &FieldTower, c: Elem, n: usize) -> Self {
        let mut v = vec![field.zero(); n];
        v.push(c);
        Self::new(field, v)
    }

    /// The variable `t`.
    pub fn var(field: &FieldTower) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn from_i64s(field: &FieldTower, cs: &[i64]) -> Self {
        Self::new(field, cs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    fn depth(&self) -> usize {
        self.field.depth()
    }

    fn check(&self, other: &UniPoly) {
        assert!(self.field == other.field, "univariate operands over different towers");
    }

    pub fn scale(&self, c: &Elem) -> UniPoly {
        UniPoly { field: self.field.clone(), coeffs: self.field.pscale(self.depth(), &self.coeffs, c) }
    }

    /// Scaled to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.leading()).expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn divrem(&self, other: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.check(other);
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.field.pdivrem(self.depth(), &self.coeffs, &other.coeffs);
        Ok((UniPoly { field: self.field.clone(), coeffs: q }, UniPoly { field: self.field.clone(), coeffs: r }))
    }

    pub fn rem(&self, other: &UniPoly) -> UniPoly {
        self.divrem(other).expect("nonzero divisor").1
    }

    /// Quotient when `other` divides `self`, otherwise `None`.
    pub fn div_exact(&self, other: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(other).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        self.check(other);
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(f), UniPoly::zero(f));
        let (mut t0, mut t1) = (UniPoly::zero(f), UniPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(&r0.leading()).expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        UniPoly::new(f, coeffs)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(g(t))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        self.check(g);
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(f), |acc, c| &(&acc * g) + &UniPoly::constant(f, c.clone()))
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut r = UniPoly::one(&self.field);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &UniPoly) -> UniPoly {
        let base = self.rem(m);
        let mut r = UniPoly::one(&self.field).rem(m);
        for i in (0..e.bits()).rev() {
            r = (&r * &r).rem(m);
            if e.bit(i) {
                r = (&r * &base).rem(m);
            }
        }
        r
    }

    /// Coefficients mapped into an extension of the current tower.
    pub fn embed(&self, target: &FieldTower) -> Result<UniPoly> {
        if !self.field.is_prefix_of(target) {
            return Err(Error::FieldMismatch);
        }
        let d = self.depth();
        Ok(UniPoly::new(target, self.coeffs.iter().map(|c| target.embed_from_depth(c, d)).collect()))
    }

    /// Pretty form in the variable `var`.
    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mut cs = f.format(c);
            if i > 0 && cs.contains(' ') {
                cs = format!("({cs})");
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = match (i, cs.as_str()) {
                (0, _) => cs.clone(),
                (_, "1") => mono,
                (_, "-1") => format!("-{mono}"),
                _ => format!("{cs}*{mono}"),
            };
            if s.is_empty() {
                s.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(&term);
            }
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("t"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.check(rhs);
        UniPoly { field: self.field.clone(), coeffs: self.field.padd(self.depth(), &self.coeffs, &rhs.coeffs) }
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.check(rhs);
        UniPoly { field: self.field.clone(), coeffs: self.field.psub(self.depth(), &self.coeffs, &rhs.coeffs) }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.check(rhs);
        UniPoly { field: self.field.clone(), coeffs: self.field.pmul(self.depth(), &self.coeffs, &rhs.coeffs) }
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| self.field.neg_elem(c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_xgcd() {
        let q = FieldTower::rationals();
        let a = UniPoly::from_i64s(&q, &[-1, 0, 1]); // t^2 - 1
        let b = UniPoly::from_i64s(&q, &[1, 2, 1]); // (t + 1)^2
        assert_eq!(a.gcd(&b), UniPoly::from_i64s(&q, &[1, 1]));
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn division_and_composition() {
        let f5 = FieldTower::prime(5).unwrap();
        let a = UniPoly::from_i64s(&f5, &[1, 0, 0, 1]);
        let b = UniPoly::from_i64s(&f5, &[1, 1]);
        let (qt, r) = a.divrem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(&qt * &b, a);
        let shift = UniPoly::from_i64s(&f5, &[2, 1]);
        assert_eq!(b.compose(&shift), UniPoly::from_i64s(&f5, &[3, 1]));
        assert_eq!(a.format("t"), "t^3 + 1");
    }

    #[test]
    fn pow_mod_matches_plain_power() {
        let f5 = FieldTower::prime(5).unwrap();
        let m = UniPoly::from_i64s(&f5, &[2, 0, 1, 1]);
        let x = UniPoly::var(&f5);
        assert_eq!(x.pow_mod(&BigUint::from(11u32), &m), x.pow(11).rem(&m));
    }
}
