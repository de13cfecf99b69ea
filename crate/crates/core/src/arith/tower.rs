//! Ground fields and towers of simple algebraic extensions.
//!
//! An element of a tower of depth `d` is stored as a polynomial in the top
//! generator whose coefficients are elements of depth `d - 1`; depth zero is
//! the ground field (Q or F_p).  All arithmetic is routed through the tower
//! handle, which knows the minimal polynomials.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// A scalar in some level of a [`FieldTower`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    Mod(u64),
    /// Coefficients in the next lower level, lowest power first, no trailing zeros.
    Ext(Vec<Elem>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

#[derive(Debug)]
struct Inner {
    base: BaseField,
    /// Monic minimal polynomials, one per level, each over the level below.
    minpolys: Vec<Vec<Elem>>,
    parent: Option<FieldTower>,
}

/// Cheaply clonable handle on a ground field plus a tower of simple extensions.
#[derive(Clone, Debug)]
pub struct FieldTower(Arc<Inner>);

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base == other.0.base && self.0.minpolys == other.0.minpolys)
    }
}

impl Eq for FieldTower {}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

impl FieldTower {
    pub fn rationals() -> Self {
        FieldTower(Arc::new(Inner { base: BaseField::Rationals, minpolys: Vec::new(), parent: None }))
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldTower(Arc::new(Inner { base: BaseField::Prime(p), minpolys: Vec::new(), parent: None })))
    }

    pub fn from_base(base: BaseField) -> Result<Self> {
        match base {
            BaseField::Rationals => Ok(Self::rationals()),
            BaseField::Prime(p) => Self::prime(p),
        }
    }

    pub fn base(&self) -> BaseField {
        self.0.base
    }

    /// Zero for Q.
    pub fn characteristic(&self) -> u64 {
        match self.0.base {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => p,
        }
    }

    pub fn depth(&self) -> usize {
        self.0.minpolys.len()
    }

    /// `[tower : base]`.
    pub fn degree(&self) -> usize {
        self.0.minpolys.iter().map(|m| m.len() - 1).product()
    }

    /// Degree of the extension at `level` (1-based) over the level below.
    pub fn level_degree(&self, level: usize) -> usize {
        self.0.minpolys[level - 1].len() - 1
    }

    /// Coefficients of the minimal polynomial of level `level` (1-based).
    pub fn minpoly_coeffs(&self, level: usize) -> &[Elem] {
        &self.0.minpolys[level - 1]
    }

    pub fn parent(&self) -> Option<&FieldTower> {
        self.0.parent.as_ref()
    }

    /// The sub-tower made of the first `depth` levels.
    pub fn prefix(&self, depth: usize) -> FieldTower {
        assert!(depth <= self.depth());
        let mut t = self;
        while t.depth() > depth {
            t = t.parent().expect("parent of a nonzero-depth tower");
        }
        t.clone()
    }

    /// True when `self` is `other` or one of its sub-towers.
    pub fn is_prefix_of(&self, other: &FieldTower) -> bool {
        self.depth() <= other.depth() && other.prefix(self.depth()) == *self
    }

    /// Name of the generator of `level` (1-based).
    pub fn generator_name(level: usize) -> String {
        format!("a{level}")
    }

    /// Number of elements for finite towers.
    pub fn order(&self) -> Option<BigUint> {
        match self.0.base {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some(BigUint::from(p).pow(self.degree() as u32)),
        }
    }

    /// Adjoin a root of `minpoly`, which must be monic and irreducible over `self`.
    pub fn extend(&self, minpoly: &super::UniPoly) -> Result<FieldTower> {
        if minpoly.field() != self {
            return Err(Error::FieldMismatch);
        }
        if minpoly.degree().unwrap_or(0) < 2 || !self.is_one(&minpoly.leading()) {
            return Err(Error::BadMinimalPolynomial);
        }
        let factors = super::factor::factor_univariate(minpoly)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::NotIrreducible);
        }
        Ok(self.extend_trusted(minpoly.coeffs().to_vec()))
    }

    /// Extension by a polynomial already known to be monic irreducible.
    pub(crate) fn extend_trusted(&self, minpoly: Vec<Elem>) -> FieldTower {
        let mut minpolys = self.0.minpolys.clone();
        minpolys.push(minpoly);
        FieldTower(Arc::new(Inner { base: self.0.base, minpolys, parent: Some(self.clone()) }))
    }

    // ---- constructors -------------------------------------------------

    fn base_zero(&self) -> Elem {
        match self.0.base {
            BaseField::Rationals => Elem::Rat(BigRational::zero()),
            BaseField::Prime(_) => Elem::Mod(0),
        }
    }

    fn lift_once(&self, e: Elem) -> Elem {
        if self.is_zero_at(0, &e) {
            Elem::Ext(Vec::new())
        } else {
            Elem::Ext(vec![e])
        }
    }

    fn lift_base(&self, e: Elem, depth: usize) -> Elem {
        (0..depth).fold(e, |e, _| self.lift_once(e))
    }

    pub(crate) fn zero_at(&self, depth: usize) -> Elem {
        if depth == 0 {
            self.base_zero()
        } else {
            Elem::Ext(Vec::new())
        }
    }

    pub fn zero(&self) -> Elem {
        self.zero_at(self.depth())
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub(crate) fn int_at(&self, depth: usize, n: &BigInt) -> Elem {
        let b = match self.0.base {
            BaseField::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => {
                Elem::Mod(n.mod_floor(&BigInt::from(p)).to_u64().expect("reduced residue"))
            }
        };
        self.lift_base(b, depth)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.int_at(self.depth(), &BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        self.int_at(self.depth(), n)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        let b = match self.0.base {
            BaseField::Rationals => Elem::Rat(q.clone()),
            BaseField::Prime(p) => {
                let pb = BigInt::from(p);
                let n = q.numer().mod_floor(&pb).to_u64().expect("reduced");
                let d = q.denom().mod_floor(&pb).to_u64().expect("reduced");
                let di = inv_mod(d, p).ok_or(Error::DivisionByZero)?;
                Elem::Mod(mul_mod(n, di, p))
            }
        };
        Ok(self.lift_base(b, self.depth()))
    }

    /// The generator of the top level.
    pub fn generator(&self) -> Option<Elem> {
        let d = self.depth();
        if d == 0 {
            return None;
        }
        let one = self.int_at(d - 1, &BigInt::one());
        Some(Elem::Ext(vec![self.zero_at(d - 1), one]))
    }

    /// Embed `e`, an element of the sub-tower `from`, into `self`.
    pub fn embed(&self, e: &Elem, from: &FieldTower) -> Result<Elem> {
        if !from.is_prefix_of(self) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.embed_from_depth(e, from.depth()))
    }

    pub(crate) fn embed_from_depth(&self, e: &Elem, from_depth: usize) -> Elem {
        (from_depth..self.depth()).fold(e.clone(), |e, _| self.lift_once(e))
    }

    /// Inverse of [`Self::embed`]: succeeds when `e` lies in the sub-tower of depth `depth`.
    pub fn restrict(&self, e: &Elem, depth: usize) -> Option<Elem> {
        let mut cur = e.clone();
        for d in (depth..self.depth()).rev() {
            cur = match cur {
                Elem::Ext(v) => match v.len() {
                    0 => self.zero_at(d),
                    1 => v.into_iter().next().unwrap(),
                    _ => return None,
                },
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Coordinates of `e` over the sub-tower of depth `sub_depth`, in the
    /// power basis of the intermediate generators (lowest level fastest).
    pub fn coords_over(&self, e: &Elem, sub_depth: usize) -> Vec<Elem> {
        fn rec(t: &FieldTower, e: &Elem, depth: usize, sub: usize, out: &mut Vec<Elem>) {
            if depth == sub {
                out.push(e.clone());
                return;
            }
            let deg = t.level_degree(depth);
            let v = match e {
                Elem::Ext(v) => v,
                _ => unreachable!("element depth mismatch"),
            };
            // Higher generator powers are the slow index.
            for i in 0..deg {
                match v.get(i) {
                    Some(c) => rec(t, c, depth - 1, sub, out),
                    None => {
                        let z = t.zero_at(depth - 1);
                        rec(t, &z, depth - 1, sub, out)
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(self.degree());
        rec(self, e, self.depth(), sub_depth, &mut out);
        out
    }

    /// Checks that `e` is a normalized element of this tower.
    pub fn contains(&self, e: &Elem) -> bool {
        fn rec(t: &FieldTower, e: &Elem, depth: usize) -> bool {
            match (depth, e) {
                (0, Elem::Rat(_)) => t.0.base == BaseField::Rationals,
                (0, Elem::Mod(n)) => matches!(t.0.base, BaseField::Prime(p) if *n < p),
                (0, Elem::Ext(_)) => false,
                (d, Elem::Ext(v)) => {
                    v.len() <= t.level_degree(d)
                        && v.last().is_none_or(|c| !t.is_zero_at(d - 1, c))
                        && v.iter().all(|c| rec(t, c, d - 1))
                }
                _ => false,
            }
        }
        rec(self, e, self.depth())
    }

    // ---- arithmetic ----------------------------------------------------

    pub(crate) fn is_zero_at(&self, depth: usize, a: &Elem) -> bool {
        let _ = depth;
        match a {
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod(n) => *n == 0,
            Elem::Ext(v) => v.is_empty(),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        self.is_zero_at(self.depth(), a)
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    fn p(&self) -> u64 {
        match self.0.base {
            BaseField::Prime(p) => p,
            BaseField::Rationals => unreachable!("modular operation over Q"),
        }
    }

    pub(crate) fn add_at(&self, depth: usize, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Elem::Mod(x), Elem::Mod(y)) => {
                let p = self.p();
                let s = *x as u128 + *y as u128;
                Elem::Mod((s % p as u128) as u64)
            }
            (Elem::Ext(x), Elem::Ext(y)) => Elem::Ext(self.padd(depth - 1, x, y)),
            _ => unreachable!("mixed element depths"),
        }
    }

    pub(crate) fn neg_elem(&self, a: &Elem) -> Elem {
        match a {
            Elem::Rat(x) => Elem::Rat(-x),
            Elem::Mod(x) => Elem::Mod(if *x == 0 { 0 } else { self.p() - x }),
            Elem::Ext(v) => Elem::Ext(v.iter().map(|c| self.neg_elem(c)).collect()),
        }
    }

    pub(crate) fn sub_at(&self, depth: usize, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            (Elem::Mod(x), Elem::Mod(y)) => {
                let p = self.p();
                Elem::Mod(if x >= y { x - y } else { p - (y - x) })
            }
            (Elem::Ext(x), Elem::Ext(y)) => Elem::Ext(self.psub(depth - 1, x, y)),
            _ => unreachable!("mixed element depths"),
        }
    }

    pub(crate) fn mul_at(&self, depth: usize, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(mul_mod(*x, *y, self.p())),
            (Elem::Ext(x), Elem::Ext(y)) => {
                if x.is_empty() || y.is_empty() {
                    return Elem::Ext(Vec::new());
                }
                let prod = self.pmul(depth - 1, x, y);
                Elem::Ext(self.reduce_mod_minpoly(depth, prod))
            }
            _ => unreachable!("mixed element depths"),
        }
    }

    fn reduce_mod_minpoly(&self, depth: usize, mut v: Vec<Elem>) -> Vec<Elem> {
        let m = &self.0.minpolys[depth - 1];
        let n = m.len() - 1;
        let d = depth - 1;
        while v.len() > n {
            let top = v.pop().unwrap();
            if self.is_zero_at(d, &top) {
                continue;
            }
            let shift = v.len() - n;
            for (i, mc) in m[..n].iter().enumerate() {
                let t = self.mul_at(d, &top, mc);
                v[shift + i] = self.sub_at(d, &v[shift + i], &t);
            }
        }
        self.trim(d, &mut v);
        v
    }

    pub(crate) fn inv_at(&self, depth: usize, a: &Elem) -> Result<Elem> {
        match a {
            Elem::Rat(x) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Elem::Rat(x.recip()))
                }
            }
            Elem::Mod(x) => inv_mod(*x, self.p()).map(Elem::Mod).ok_or(Error::DivisionByZero),
            Elem::Ext(v) => {
                if v.is_empty() {
                    return Err(Error::DivisionByZero);
                }
                let d = depth - 1;
                let m = self.0.minpolys[depth - 1].clone();
                // s*v + t*m = g with g a nonzero constant since m is irreducible.
                let (g, s) = self.pxgcd_s(d, v, &m);
                if g.len() != 1 {
                    return Err(Error::NotIrreducible);
                }
                let gi = self.inv_at(d, &g[0])?;
                let s = self.pscale(d, &s, &gi);
                Ok(Elem::Ext(s))
            }
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.add_at(self.depth(), a, b)
    }
    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.sub_at(self.depth(), a, b)
    }
    pub fn neg(&self, a: &Elem) -> Elem {
        self.neg_elem(a)
    }
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul_at(self.depth(), a, b)
    }
    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        self.inv_at(self.depth(), a)
    }
    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, e: u64) -> Elem {
        self.pow_big(a, &BigUint::from(e))
    }

    pub fn pow_big(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut result = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    /// Uniformly random element; only meaningful for finite towers.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        fn rec<R: Rng + ?Sized>(t: &FieldTower, depth: usize, rng: &mut R) -> Elem {
            if depth == 0 {
                return match t.0.base {
                    BaseField::Prime(p) => Elem::Mod(rng.gen_range(0..p)),
                    BaseField::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)))),
                };
            }
            let n = t.level_degree(depth);
            let mut v: Vec<Elem> = (0..n).map(|_| rec(t, depth - 1, rng)).collect();
            t.trim(depth - 1, &mut v);
            Elem::Ext(v)
        }
        rec(self, self.depth(), rng)
    }

    /// p-th root in a finite tower (the Frobenius is bijective).
    pub fn pth_root(&self, a: &Elem) -> Elem {
        let p = self.characteristic();
        assert!(p > 0, "p-th root requested in characteristic zero");
        let q = self.order().expect("finite");
        let e = q / BigUint::from(p);
        self.pow_big(a, &e)
    }

    // ---- raw polynomials over the level `depth` ------------------------

    pub(crate) fn trim(&self, depth: usize, v: &mut Vec<Elem>) {
        while v.last().is_some_and(|c| self.is_zero_at(depth, c)) {
            v.pop();
        }
    }

    pub(crate) fn padd(&self, depth: usize, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => self.add_at(depth, x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            });
        }
        self.trim(depth, &mut out);
        out
    }

    pub(crate) fn psub(&self, depth: usize, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => self.sub_at(depth, x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => self.neg_elem(y),
                (None, None) => unreachable!(),
            });
        }
        self.trim(depth, &mut out);
        out
    }

    pub(crate) fn pmul(&self, depth: usize, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero_at(depth); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero_at(depth, x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.is_zero_at(depth, y) {
                    continue;
                }
                let t = self.mul_at(depth, x, y);
                out[i + j] = self.add_at(depth, &out[i + j], &t);
            }
        }
        self.trim(depth, &mut out);
        out
    }

    pub(crate) fn pscale(&self, depth: usize, a: &[Elem], c: &Elem) -> Vec<Elem> {
        if self.is_zero_at(depth, c) {
            return Vec::new();
        }
        let mut out: Vec<Elem> = a.iter().map(|x| self.mul_at(depth, x, c)).collect();
        self.trim(depth, &mut out);
        out
    }

    /// Division with remainder by a nonzero `b`.
    pub(crate) fn pdivrem(&self, depth: usize, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lc_inv = self.inv_at(depth, b.last().unwrap()).expect("nonzero leading coefficient");
        let mut q = vec![self.zero_at(depth); r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = self.mul_at(depth, r.last().unwrap(), &lc_inv);
            for (i, bc) in b.iter().enumerate() {
                let t = self.mul_at(depth, &c, bc);
                r[shift + i] = self.sub_at(depth, &r[shift + i], &t);
            }
            q[shift] = c;
            r.pop();
            self.trim(depth, &mut r);
        }
        self.trim(depth, &mut q);
        (q, r)
    }

    /// Returns `(g, s)` with `s*a ≡ g (mod b)`, `g` the monic-free gcd.
    pub(crate) fn pxgcd_s(&self, depth: usize, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (Vec<Elem>, Vec<Elem>) = (vec![self.int_at(depth, &BigInt::one())], Vec::new());
        while !r1.is_empty() {
            let (q, r) = self.pdivrem(depth, &r0, &r1);
            let s2 = self.psub(depth, &s0, &self.pmul(depth, &q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        (r0, s0)
    }

    // ---- display -------------------------------------------------------

    pub fn format(&self, e: &Elem) -> String {
        self.format_at(self.depth(), e)
    }

    pub(crate) fn format_at(&self, depth: usize, e: &Elem) -> String {
        match e {
            Elem::Rat(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Mod(n) => n.to_string(),
            Elem::Ext(v) => {
                if v.is_empty() {
                    return "0".into();
                }
                let g = Self::generator_name(depth);
                let mut terms = Vec::new();
                for (i, c) in v.iter().enumerate().rev() {
                    if self.is_zero_at(depth - 1, c) {
                        continue;
                    }
                    let cs = self.format_at(depth - 1, c);
                    let cs = if i > 0 && cs.contains(' ') { format!("({cs})") } else { cs };
                    let mono = match i {
                        0 => String::new(),
                        1 => g.clone(),
                        _ => format!("{g}^{i}"),
                    };
                    terms.push(match (i, cs.as_str()) {
                        (0, _) => cs,
                        (_, "1") => mono,
                        (_, "-1") => format!("-{mono}"),
                        _ => format!("{cs}*{mono}"),
                    });
                }
                let mut s = String::new();
                for (k, t) in terms.iter().enumerate() {
                    if k == 0 {
                        s.push_str(t);
                    } else if let Some(rest) = t.strip_prefix('-') {
                        s.push_str(" - ");
                        s.push_str(rest);
                    } else {
                        s.push_str(" + ");
                        s.push_str(t);
                    }
                }
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::UniPoly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q_sqrt2() -> FieldTower {
        let q = FieldTower::rationals();
        let m = UniPoly::from_i64s(&q, &[-2, 0, 1]);
        q.extend(&m).unwrap()
    }

    #[test]
    fn prime_check() {
        assert!(FieldTower::prime(5).is_ok());
        assert_eq!(FieldTower::prime(6).unwrap_err(), Error::NotPrime(6));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let k = q_sqrt2();
        let a = k.generator().unwrap();
        assert_eq!(k.mul(&a, &a), k.from_i64(2));
        assert_eq!(k.degree(), 2);
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
    }

    #[test]
    fn extend_degrees_multiply() {
        let f2 = FieldTower::prime(2).unwrap();
        let k = f2.extend(&UniPoly::from_i64s(&f2, &[1, 1, 1])).unwrap();
        assert_eq!(k.degree(), 2);
        // t^2 + a1 t + 1 has no root in F_4 (checked by the factorizer).
        let a = k.generator().unwrap();
        let m = UniPoly::new(&k, vec![k.one(), a, k.one()]);
        let k2 = k.extend(&m).unwrap();
        assert_eq!(k2.degree(), 4);
        assert_eq!(k2.order().unwrap(), BigUint::from(16u32));
    }

    #[test]
    fn reducible_extension_rejected() {
        let q = FieldTower::rationals();
        let m = UniPoly::from_i64s(&q, &[-1, 0, 1]);
        assert_eq!(q.extend(&m).unwrap_err(), Error::NotIrreducible);
        let f5 = FieldTower::prime(5).unwrap();
        let m = UniPoly::from_i64s(&f5, &[1, 0, 1]);
        assert_eq!(f5.extend(&m).unwrap_err(), Error::NotIrreducible);
    }

    #[test]
    fn field_axioms_on_random_elements() {
        let f5 = FieldTower::prime(5).unwrap();
        let k = f5.extend(&UniPoly::from_i64s(&f5, &[2, 0, 1])).unwrap();
        let k = k.extend(&UniPoly::from_i64s(&k, &[1, 1, 0, 1])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let (a, b, c) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
            assert!(k.contains(&a), "{a:?}");
            assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
            assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
            if !k.is_zero(&a) {
                assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
            }
        }
        let s2 = q_sqrt2();
        for _ in 0..50 {
            let (a, b) = (s2.random(&mut rng), s2.random(&mut rng));
            assert_eq!(s2.sub(&s2.add(&a, &b), &b), a);
            if !s2.is_zero(&b) {
                assert_eq!(s2.mul(&s2.div(&a, &b).unwrap(), &b), a);
            }
        }
    }

    #[test]
    fn embed_and_coords() {
        let k = q_sqrt2();
        let q = FieldTower::rationals();
        let three = q.from_i64(3);
        let e = k.embed(&three, &q).unwrap();
        assert_eq!(e, k.from_i64(3));
        assert_eq!(k.restrict(&e, 0), Some(three));
        let a = k.generator().unwrap();
        let x = k.add(&a, &k.from_i64(5));
        assert_eq!(k.coords_over(&x, 0), vec![q.from_i64(5), q.from_i64(1)]);
        assert_eq!(k.restrict(&x, 0), None);
        assert_eq!(k.format(&x), "a1 + 5");
    }

    #[test]
    fn rational_into_prime_field() {
        let f5 = FieldTower::prime(5).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f5.from_rational(&half).unwrap(), Elem::Mod(3));
        let fifth = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert_eq!(f5.from_rational(&fifth).unwrap_err(), Error::DivisionByZero);
    }
}
