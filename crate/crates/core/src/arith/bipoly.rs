use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::tower::{Elem, FieldTower};
use super::UniPoly;
use crate::error::{Error, Result};

/// Exponent pair `(i, j)` of the monomial `u^i w^j`.
pub type Exps = (u32, u32);

/// Sparse polynomial in two variables over a [`FieldTower`].
///
/// Variables are positional: the first (`u`) and the second (`w`).  Names are
/// only attached when formatting.  No zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    field: FieldTower,
    terms: BTreeMap<Exps, Elem>,
}

impl BiPoly {
    pub fn zero(field: &FieldTower) -> Self {
        BiPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &FieldTower) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &FieldTower, c: Elem) -> Self {
        Self::monomial(field, c, 0, 0)
    }

    pub fn monomial(field: &FieldTower, c: Elem, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert((i, j), c);
        }
        BiPoly { field: field.clone(), terms }
    }

    /// The first variable.
    pub fn u(field: &FieldTower) -> Self {
        Self::monomial(field, field.one(), 1, 0)
    }

    /// The second variable.
    pub fn w(field: &FieldTower) -> Self {
        Self::monomial(field, field.one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, Elem)>>(field: &FieldTower, terms: I) -> Self {
        let mut p = Self::zero(field);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_i64s(field: &FieldTower, terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(field, terms.iter().map(|&(e, c)| (e, field.from_i64(c))))
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Elem> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exps) -> Elem {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Elem {
        self.coeff((0, 0))
    }

    /// Nonzero at the origin, hence a unit of the local ring there.
    pub fn is_unit_at_origin(&self) -> bool {
        self.terms.contains_key(&(0, 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| self.field.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub(crate) fn add_term(&mut self, e: Exps, c: &Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = self.field.add(v, c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    fn check(&self, other: &BiPoly) {
        assert!(self.field == other.field, "bivariate operands over different towers");
    }

    pub fn scale(&self, c: &Elem) -> BiPoly {
        if self.field.is_zero(c) {
            return Self::zero(&self.field);
        }
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, v)| (*e, self.field.mul(v, c))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut r = Self::one(&self.field);
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = &r * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Multiply by `u^i w^j`.
    pub fn shift(&self, i: u32, j: u32) -> BiPoly {
        BiPoly { field: self.field.clone(), terms: self.terms.iter().map(|(&(a, b), v)| ((a + i, b + j), v.clone())).collect() }
    }

    /// Least total degree of a monomial: the order at the origin.
    pub fn ord(&self) -> Result<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min().ok_or(Error::ZeroPolynomial)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Sum of the monomials of least total degree.
    pub fn initial_form(&self) -> Result<BiPoly> {
        let d = self.ord()?;
        Ok(self.homogeneous_part(d))
    }

    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(&(i, j), _)| i + j == d).map(|(e, v)| (*e, v.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|&(i, j)| i + j);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Terms of total degree `< bound`.
    pub fn truncate(&self, bound: u32) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(&(i, j), _)| i + j < bound).map(|(e, v)| (*e, v.clone())).collect(),
        }
    }

    /// Product truncated to total degree `< bound`.
    pub fn mul_truncated(&self, other: &BiPoly, bound: u32) -> BiPoly {
        self.check(other);
        let f = &self.field;
        let mut out = Self::zero(f);
        for (&(a, b), x) in &self.terms {
            if a + b >= bound {
                continue;
            }
            for (&(c, d), y) in &other.terms {
                if a + b + c + d >= bound {
                    continue;
                }
                out.add_term((a + c, b + d), &f.mul(x, y));
            }
        }
        out
    }

    /// `F(1, t)` for a form `F`; in general `sum c_ij t^j`.
    pub fn dehomogenize(&self) -> UniPoly {
        let f = &self.field;
        let deg = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        let mut cs = vec![f.zero(); deg + 1];
        for (&(_, j), c) in &self.terms {
            cs[j as usize] = f.add(&cs[j as usize], c);
        }
        UniPoly::new(f, cs)
    }

    /// The form `u^d F(w/u)` of degree `d` from a univariate `F`.
    pub fn homogenize(p: &UniPoly, d: u32) -> BiPoly {
        let f = p.field();
        Self::from_terms(f, p.coeffs().iter().enumerate().map(|(j, c)| ((d - j as u32, j as u32), c.clone())))
    }

    pub fn eval(&self, a: &Elem, b: &Elem) -> Elem {
        let f = &self.field;
        let mut s = f.zero();
        for (&(i, j), c) in &self.terms {
            let t = f.mul(c, &f.mul(&f.pow(a, i as u64), &f.pow(b, j as u64)));
            s = f.add(&s, &t);
        }
        s
    }

    /// Exchange the two variables.
    pub fn swap(&self) -> BiPoly {
        BiPoly { field: self.field.clone(), terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    pub fn derivative_u(&self) -> BiPoly {
        let f = &self.field;
        Self::from_terms(
            f,
            self.terms.iter().filter(|(&(i, _), _)| i > 0).map(|(&(i, j), c)| ((i - 1, j), f.mul(c, &f.from_i64(i as i64)))),
        )
    }

    pub fn derivative_w(&self) -> BiPoly {
        let f = &self.field;
        Self::from_terms(
            f,
            self.terms.iter().filter(|(&(_, j), _)| j > 0).map(|(&(i, j), c)| ((i, j - 1), f.mul(c, &f.from_i64(j as i64)))),
        )
    }

    /// `self(U, V)` for polynomials `U`, `V` over the same tower.
    pub fn substitute(&self, u: &BiPoly, w: &BiPoly) -> BiPoly {
        self.check(u);
        self.check(w);
        let f = &self.field;
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let upows = powers(u, max_i);
        let wpows = powers(w, max_j);
        let mut out = Self::zero(f);
        for (&(i, j), c) in &self.terms {
            let t = &upows[i as usize] * &wpows[j as usize];
            out = &out + &t.scale(c);
        }
        out
    }

    /// `self(U, V)` keeping only terms of total degree `< bound`.  Valid when
    /// `U` and `V` vanish at the origin, since then no discarded term can
    /// contribute below the bound.
    pub fn substitute_truncated(&self, u: &BiPoly, w: &BiPoly, bound: u32) -> BiPoly {
        self.check(u);
        self.check(w);
        let f = &self.field;
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let upows = truncated_powers(u, max_i, bound);
        let wpows = truncated_powers(w, max_j, bound);
        let mut out = Self::zero(f);
        for (&(i, j), c) in &self.terms {
            let (a, b) = (&upows[i as usize], &wpows[j as usize]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            out = &out + &a.mul_truncated(b, bound).scale(c);
        }
        out
    }

    /// Coefficients mapped into an extension of the current tower.
    pub fn embed(&self, target: &FieldTower) -> Result<BiPoly> {
        if self.field == *target {
            return Ok(self.clone());
        }
        if !self.field.is_prefix_of(target) {
            return Err(Error::FieldMismatch);
        }
        let d = self.field.depth();
        Ok(BiPoly {
            field: target.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, target.embed_from_depth(c, d))).collect(),
        })
    }

    /// Coefficients restricted to the sub-tower of depth `depth`, if they lie there.
    pub fn restrict(&self, target: &FieldTower) -> Option<BiPoly> {
        if !target.is_prefix_of(&self.field) {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(*e, self.field.restrict(c, target.depth())?);
        }
        Some(BiPoly { field: target.clone(), terms })
    }

    /// Scaled so that the lexicographically least monomial has coefficient one.
    pub fn normalize_lex_least(&self) -> BiPoly {
        match self.terms.values().next() {
            None => self.clone(),
            Some(c) => self.scale(&self.field.inv(c).expect("nonzero")),
        }
    }

    /// Scaled so that the lexicographically greatest monomial has coefficient one.
    pub fn monic(&self) -> BiPoly {
        match self.terms.values().next_back() {
            None => self.clone(),
            Some(c) => self.scale(&self.field.inv(c).expect("nonzero")),
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        self.check(d);
        let f = &self.field;
        let (&(di, dj), dc) = d.terms.iter().next_back()?;
        let dinv = f.inv(dc).expect("nonzero");
        let mut r = self.clone();
        let mut q = Self::zero(f);
        while let Some((&(ri, rj), rc)) = r.terms.iter().next_back() {
            if ri < di || rj < dj {
                return None;
            }
            let c = f.mul(rc, &dinv);
            let t = Self::monomial(f, c, ri - di, rj - dj);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Greatest common divisor, normalized by [`BiPoly::monic`]; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        self.check(other);
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let f = &self.field;
        let a = to_w_coeffs(self);
        let b = to_w_coeffs(other);
        let ca = content(&a);
        let cb = content(&b);
        let c = ca.gcd(&cb);
        let mut pa = divide_content(&a, &ca);
        let mut pb = divide_content(&b, &cb);
        if pa.len() < pb.len() {
            std::mem::swap(&mut pa, &mut pb);
        }
        let g = loop {
            if pb.is_empty() {
                break pa;
            }
            if pb.len() == 1 {
                break vec![UniPoly::one(f)];
            }
            let r = prem(&pa, &pb);
            pa = pb;
            pb = if r.is_empty() { r } else { divide_content(&r, &content(&r)) };
        };
        let g: Vec<UniPoly> = g.iter().map(|x| x * &c).collect();
        from_w_coeffs(f, &g).monic()
    }

    /// Radical up to constants, through `gcd(f, f_u, f_w)`; valid when the
    /// characteristic is zero or exceeds the total degree.
    pub fn squarefree_part(&self) -> Result<BiPoly> {
        let p = self.field.characteristic();
        let deg = self.total_degree().ok_or(Error::ZeroPolynomial)?;
        if p != 0 && p as u32 <= deg {
            return Err(Error::SquarefreeUnsupported(p));
        }
        let g = self.gcd(&self.derivative_u()).gcd(&self.derivative_w());
        if g.is_zero() {
            return Ok(self.monic());
        }
        Ok(self.div_exact(&g).expect("gcd divides").monic())
    }

    /// Human-readable form with the given variable names, highest degree first.
    pub fn format(&self, names: [&str; 2]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut keys: Vec<&Exps> = self.terms.keys().collect();
        keys.sort_by_key(|e| std::cmp::Reverse((e.0 + e.1, e.0)));
        let mut s = String::new();
        for k in keys {
            let c = &self.terms[k];
            let mut parts = Vec::new();
            for (e, name) in [(k.0, names[0]), (k.1, names[1])] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            let mono = parts.join("*");
            let mut cs = f.format(c);
            if !mono.is_empty() && cs.contains(' ') {
                cs = format!("({cs})");
            }
            let term = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            if s.is_empty() {
                s = term;
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

fn powers(p: &BiPoly, n: u32) -> Vec<BiPoly> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(BiPoly::one(p.field()));
    for k in 1..=n as usize {
        let next = &v[k - 1] * p;
        v.push(next);
    }
    v
}

fn truncated_powers(p: &BiPoly, n: u32, bound: u32) -> Vec<BiPoly> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(BiPoly::one(p.field()).truncate(bound));
    for k in 1..=n as usize {
        let next = v[k - 1].mul_truncated(p, bound);
        v.push(next);
    }
    v
}

/// Coefficients with respect to `w`, each a polynomial in `u`.
fn to_w_coeffs(p: &BiPoly) -> Vec<UniPoly> {
    let f = p.field();
    let maxj = p.terms.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
    let mut cols: Vec<Vec<Elem>> = vec![Vec::new(); maxj + 1];
    for (&(i, j), c) in &p.terms {
        let col = &mut cols[j as usize];
        if col.len() <= i as usize {
            col.resize(i as usize + 1, f.zero());
        }
        col[i as usize] = c.clone();
    }
    let mut out: Vec<UniPoly> = cols.into_iter().map(|c| UniPoly::new(f, c)).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn from_w_coeffs(f: &FieldTower, cs: &[UniPoly]) -> BiPoly {
    let mut p = BiPoly::zero(f);
    for (j, c) in cs.iter().enumerate() {
        for (i, e) in c.coeffs().iter().enumerate() {
            p.add_term((i as u32, j as u32), e);
        }
    }
    p
}

fn content(cs: &[UniPoly]) -> UniPoly {
    let f = cs[0].field();
    cs.iter().fold(UniPoly::zero(f), |g, c| g.gcd(c))
}

fn divide_content(cs: &[UniPoly], c: &UniPoly) -> Vec<UniPoly> {
    cs.iter().map(|x| x.div_exact(c).expect("content divides")).collect()
}

/// Pseudo-remainder in `w` over `k[u]`.
fn prem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let f = b[0].field().clone();
    let lb = b.last().unwrap().clone();
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        let mut next: Vec<UniPoly> = r.iter().map(|c| c * &lb).collect();
        for (k, bc) in b.iter().enumerate() {
            next[shift + k] = &next[shift + k] - &(&lr * bc);
        }
        while next.last().is_some_and(|c| c.is_zero()) {
            next.pop();
        }
        debug_assert!(next.len() < r.len());
        r = next;
        if r.is_empty() {
            break;
        }
    }
    let _ = f;
    r
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.check(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.check(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &self.field.neg(c));
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.check(rhs);
        let f = &self.field;
        let mut out = BiPoly::zero(f);
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term((a + c, b + d), &f.mul(x, y));
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { field: self.field.clone(), terms: self.terms.iter().map(|(e, c)| (*e, self.field.neg(c))).collect() }
    }
}
