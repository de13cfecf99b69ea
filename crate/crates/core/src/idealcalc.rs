//! Linear algebra modulo powers of the maximal ideal: colengths, membership,
//! integral closure, reductions.
//!
//! A polynomial modulo `M^N` is a sparse row over the monomials of degree
//! `< N`, indexed degree by degree (`u^d, u^{d-1} w, ..., w^d`).

use std::collections::BTreeMap;

use crate::arith::linalg::{Echelon, Row};
use crate::arith::{BiPoly, FieldTower};
use crate::dicritical::{self, Factorization};
use crate::divisors::PrimeDivisor;
use crate::error::{Error, Result};
use crate::nearpoints::{LocalIdeal, QdtPath, QdtStep};
use crate::Limits;

/// Number of monomials of degree `< n`.
pub fn mono_count(n: u32) -> usize {
    (n as usize) * (n as usize + 1) / 2
}

pub fn mono_index(i: u32, j: u32) -> usize {
    let d = (i + j) as usize;
    d * (d + 1) / 2 + j as usize
}

pub fn index_mono(idx: usize) -> (u32, u32) {
    let mut d = 0usize;
    while (d + 1) * (d + 2) / 2 <= idx {
        d += 1;
    }
    let j = idx - d * (d + 1) / 2;
    ((d - j) as u32, j as u32)
}

pub(crate) fn poly_row(f: &BiPoly, n: u32) -> Row {
    let mut row: Row = f
        .terms()
        .iter()
        .filter(|(&(i, j), _)| i + j < n)
        .map(|(&(i, j), c)| (mono_index(i, j), c.clone()))
        .collect();
    row.sort_by_key(|(c, _)| *c);
    row
}

pub(crate) fn row_poly(field: &FieldTower, row: &Row) -> BiPoly {
    BiPoly::from_terms(field, row.iter().map(|(c, x)| (index_mono(*c), x.clone())))
}

/// `J + M^N` modulo `M^N` at a degree bound `N` where `M^N` lies in `J`.
#[derive(Clone, Debug)]
pub struct TruncationFrame {
    pub bound: u32,
    pub colength: usize,
    echelon: Echelon,
}

impl TruncationFrame {
    pub fn contains(&self, f: &BiPoly) -> bool {
        self.echelon.contains(poly_row(f, self.bound))
    }
}

fn span(j: &LocalIdeal, n: u32) -> Echelon {
    multiples(j, n, 0)
}

/// Span of `m * g` over generators `g` and monomials `m` of degree `>= from`, modulo `M^n`.
fn multiples(j: &LocalIdeal, n: u32, from: u32) -> Echelon {
    let mut e = Echelon::new(j.field());
    for g in j.gens() {
        let o = g.ord().expect("nonzero");
        if o >= n {
            continue;
        }
        for d in from..n - o {
            for b in 0..=d {
                e.insert(poly_row(&g.shift(d - b, b), n));
            }
        }
    }
    e
}

/// Stabilized frame: the bound doubles until the colength agrees at `N` and
/// `N + 1`, which forces `M^N` into `J`.
pub fn truncation_frame(j: &LocalIdeal, limits: &Limits) -> Result<TruncationFrame> {
    if !j.is_unit() && !j.is_m_primary() {
        return Err(Error::NotPrimary);
    }
    let deg = j.gens().iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let mut n = (deg + j.order()).max(1);
    loop {
        if n > limits.max_bound {
            return Err(Error::Unstable(limits.max_bound as usize));
        }
        let e = span(j, n);
        let c = mono_count(n) - e.rank();
        let c1 = mono_count(n + 1) - span(j, n + 1).rank();
        if c == c1 {
            return Ok(TruncationFrame { bound: n, colength: c, echelon: e });
        }
        n *= 2;
    }
}

/// `dim R/J` over the residue tower.
pub fn colength(j: &LocalIdeal, limits: &Limits) -> Result<usize> {
    Ok(truncation_frame(j, limits)?.colength)
}

pub fn membership(f: &BiPoly, j: &LocalIdeal, limits: &Limits) -> Result<bool> {
    Ok(truncation_frame(j, limits)?.contains(f))
}

pub fn product(j: &LocalIdeal, k: &LocalIdeal) -> Result<LocalIdeal> {
    if j.field() != k.field() {
        return Err(Error::FieldMismatch);
    }
    let mut gens: Vec<BiPoly> = Vec::new();
    for a in j.gens() {
        for b in k.gens() {
            let c = a * b;
            if !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
    LocalIdeal::new(gens)
}

pub fn power(j: &LocalIdeal, n: u32) -> LocalIdeal {
    let mut r = LocalIdeal::unit(j.field());
    for _ in 0..n {
        r = product(&r, j).expect("same field");
    }
    r
}

/// Required values of the integral closure of an ideal.
#[derive(Clone, Debug)]
pub struct ClosureData {
    pub factorization: Factorization,
    /// `(V, v_V(J))` for every dicritical divisor `V`.
    pub required: Vec<(PrimeDivisor, u32)>,
}

impl ClosureData {
    /// Locally divisible by the principal part and valued at least `v_V(J)`
    /// at every recorded divisor.
    pub fn contains(&self, f: &BiPoly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        if !locally_divides(&self.factorization.principal, f) {
            return Ok(false);
        }
        for (v, need) in &self.required {
            if v.value(f)? < *need {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `g | f` in the local ring at the origin.
pub fn locally_divides(g: &BiPoly, f: &BiPoly) -> bool {
    if g.is_unit_at_origin() {
        return true;
    }
    let h = g.gcd(f);
    g.div_exact(&h).expect("gcd divides").is_unit_at_origin()
}

pub fn closure_data(j: &LocalIdeal, limits: &Limits) -> Result<ClosureData> {
    let factorization = dicritical::zariski_factorization(j, limits)?;
    let required = factorization
        .exponents
        .iter()
        .map(|(path, _)| {
            let v = PrimeDivisor::new(path.clone());
            let need = v.value_of_ideal(j)?;
            Ok((v, need))
        })
        .collect::<Result<_>>()?;
    Ok(ClosureData { factorization, required })
}

/// Valuative criterion over the dicritical divisors.
pub fn closure_membership(f: &BiPoly, j: &LocalIdeal, limits: &Limits) -> Result<bool> {
    closure_data(j, limits)?.contains(f)
}

/// Rows expressing `v(f) >= c` for `f` modulo `M^n`, split into coordinates
/// over the root tower.
pub(crate) fn valuation_conditions(v: &PrimeDivisor, c: u32, n: u32) -> Vec<Row> {
    if c == 0 {
        return Vec::new();
    }
    let path = v.path();
    let root = path.root_field();
    let term = path.terminal_field();
    let deg = term.degree() / root.degree();
    let (u, w) = path.compose_truncated(c);
    let mut upows = vec![BiPoly::one(term)];
    let mut wpows = vec![BiPoly::one(term)];
    for k in 1..n as usize {
        upows.push(upows[k - 1].mul_truncated(&u, c));
        wpows.push(wpows[k - 1].mul_truncated(&w, c));
    }
    let mut rows: BTreeMap<usize, Row> = BTreeMap::new();
    for col in 0..mono_count(n) {
        let (i, j) = index_mono(col);
        let (a, b) = (&upows[i as usize], &wpows[j as usize]);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let img = a.mul_truncated(b, c);
        for (&(x, y), coef) in img.terms() {
            let key = mono_index(x, y) * deg;
            for (t, e) in term.coords_over(coef, root.depth()).into_iter().enumerate() {
                if !root.is_zero(&e) {
                    rows.entry(key + t).or_default().push((col, e));
                }
            }
        }
    }
    rows.into_values().collect()
}

fn condition_echelon(root: &FieldTower, reqs: &[(PrimeDivisor, u32)], n: u32) -> Echelon {
    let mut e = Echelon::new(root);
    for (v, c) in reqs {
        for r in valuation_conditions(v, *c, n) {
            e.insert(r);
        }
    }
    e
}

/// `{f : v_i(f) >= c_i}` given a bound `n` with `M^n` inside it, minimally generated.
pub fn valuation_ideal(root: &FieldTower, reqs: &[(PrimeDivisor, u32)], n: u32) -> Result<LocalIdeal> {
    let e = condition_echelon(root, reqs, n);
    let mut basis: Vec<BiPoly> = e.kernel(mono_count(n)).iter().map(|r| row_poly(root, r)).collect();
    for b in 0..=n {
        basis.push(BiPoly::monomial(root, root.one(), n - b, b));
    }
    LocalIdeal::new(minimal_generators(root, basis, n + 1))
}

/// Elements of `basis` independent modulo `M*I`, where `basis` spans
/// `I` modulo `M^bound` and `M^(bound-1)` lies in `I`.
fn minimal_generators(root: &FieldTower, mut basis: Vec<BiPoly>, bound: u32) -> Vec<BiPoly> {
    basis.sort_by_key(|b| (b.ord().expect("nonzero"), b.terms().len()));
    let mut e = Echelon::new(root);
    let u = BiPoly::u(root);
    let w = BiPoly::w(root);
    for b in &basis {
        e.insert(poly_row(&(&u * b), bound));
        e.insert(poly_row(&(&w * b), bound));
    }
    basis.into_iter().filter(|b| e.insert(poly_row(b, bound))).map(|b| b.normalize_lex_least()).collect()
}

/// Generators of the integral closure of an `M`-primary ideal.
pub fn closure_ideal(j: &LocalIdeal, limits: &Limits) -> Result<LocalIdeal> {
    let frame = truncation_frame(j, limits)?;
    let data = closure_data(j, limits)?;
    valuation_ideal(j.field(), &data.required, frame.bound)
}

/// `dim R/J-bar`.
pub fn closure_colength(j: &LocalIdeal, limits: &Limits) -> Result<usize> {
    let frame = truncation_frame(j, limits)?;
    let data = closure_data(j, limits)?;
    Ok(condition_echelon(j.field(), &data.required, frame.bound).rank())
}

/// Whether `K` is the integral closure of `J` (both `M`-primary).
pub fn closure_equals(j: &LocalIdeal, k: &LocalIdeal, limits: &Limits) -> Result<bool> {
    for x in [j, k] {
        if !x.is_m_primary() {
            return Err(Error::NotPrimary);
        }
    }
    let data = closure_data(j, limits)?;
    for g in k.gens() {
        if !data.contains(g)? {
            return Ok(false);
        }
    }
    if dicritical::zariski_factorization(k, limits)? != data.factorization {
        return Ok(false);
    }
    Ok(colength(k, limits)? == closure_colength(j, limits)?)
}

/// Both reduction tests; `witness` is the least `n` with `J I^n = I^(n+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub decision: bool,
    pub witness: Option<usize>,
    pub valuative: bool,
}

/// Least `n <= n_max` with `J I^n = I^(n+1)`; `None` when `J` is not inside `I`.
pub fn reduction_direct(j: &LocalIdeal, i: &LocalIdeal, n_max: usize, limits: &Limits) -> Result<Option<usize>> {
    let fi = truncation_frame(i, limits)?;
    for g in j.gens() {
        if !fi.contains(g) {
            return Ok(None);
        }
    }
    let mut ipow = LocalIdeal::unit(i.field());
    for n in 0..=n_max {
        let next = product(&ipow, i)?;
        let lhs = truncation_frame(&product(j, &ipow)?, limits)?;
        if next.gens().iter().all(|g| lhs.contains(g)) {
            return Ok(Some(n));
        }
        ipow = next;
    }
    Err(Error::BudgetExceeded(n_max))
}

/// `J` inside `I` and `I` inside the closure of `J`.
pub fn reduction_valuative(j: &LocalIdeal, i: &LocalIdeal, limits: &Limits) -> Result<bool> {
    let fi = truncation_frame(i, limits)?;
    if !j.gens().iter().all(|g| fi.contains(g)) {
        return Ok(false);
    }
    let data = closure_data(j, limits)?;
    for g in i.gens() {
        if !data.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Valuative decision, with the direct witness searched up to
/// `limits.n_max` (default: the colength of `I`) when it is positive.
pub fn is_reduction(j: &LocalIdeal, i: &LocalIdeal, limits: &Limits) -> Result<ReductionReport> {
    let valuative = reduction_valuative(j, i, limits)?;
    if !valuative {
        return Ok(ReductionReport { decision: false, witness: None, valuative });
    }
    let n_max = match limits.n_max {
        Some(n) => n,
        None => colength(i, limits)?,
    };
    let witness = reduction_direct(j, i, n_max, limits)?;
    Ok(ReductionReport { decision: witness.is_some(), witness, valuative })
}

/// `B(n) = n(n+1)/2`.
pub fn triangular(n: u32) -> u32 {
    n * (n + 1) / 2
}

/// `F_m`, `G_m` and `I_m`, with `I_m` the product of the simple ideals of the
/// divisors reached by `j = 0..m-1` steps into the chart `w = u w'`.
#[derive(Clone, Debug)]
pub struct AbhyankarFamily {
    pub f: BiPoly,
    pub g: BiPoly,
    pub ideal: LocalIdeal,
    pub divisors: Vec<PrimeDivisor>,
}

pub fn abhyankar_family(m: u32, field: &FieldTower, limits: &Limits) -> Result<AbhyankarFamily> {
    if m == 0 {
        return Err(Error::InvalidStep("the family starts at m = 1".into()));
    }
    let mono = |k: u32| BiPoly::monomial(field, field.one(), triangular(k), m - k);
    let mut f = BiPoly::zero(field);
    let mut g = BiPoly::zero(field);
    for k in 0..=m {
        if k % 2 == 1 {
            f = &f + &mono(k);
        } else {
            g = &g + &mono(k);
        }
    }
    let mut divisors = Vec::new();
    let mut ideal = LocalIdeal::unit(field);
    let mut path = QdtPath::new(field);
    for _ in 0..m {
        let v = PrimeDivisor::new(path.clone());
        ideal = product(&ideal, &v.simple_ideal(limits)?)?;
        divisors.push(v);
        path = path.push(QdtStep::affine(field.zero()))?;
    }
    Ok(AbhyankarFamily { f, g, ideal, divisors })
}

/// Minimal generators of an `M`-primary ideal.
pub fn minimalize(j: &LocalIdeal, limits: &Limits) -> Result<LocalIdeal> {
    if j.is_unit() {
        return Ok(LocalIdeal::unit(j.field()));
    }
    // M^(n+1) lies in M J, so minimal generators are read off modulo M^(n+1).
    let n = truncation_frame(j, limits)?.bound + 1;
    let mut e = multiples(j, n, 1);
    let mut gens = j.gens().to_vec();
    gens.sort_by_key(|b| (b.ord().expect("nonzero"), b.terms().len()));
    LocalIdeal::new(gens.into_iter().filter(|g| e.insert(poly_row(g, n))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: &FieldTower, t: &[((u32, u32), i64)]) -> BiPoly {
        BiPoly::from_i64s(k, t)
    }

    fn monomials(k: &FieldTower, es: &[(u32, u32)]) -> LocalIdeal {
        LocalIdeal::new(es.iter().map(|&(i, j)| BiPoly::monomial(k, k.one(), i, j)).collect()).unwrap()
    }

    #[test]
    fn monomial_indexing_round_trips() {
        for idx in 0..200 {
            let (i, j) = index_mono(idx);
            assert_eq!(mono_index(i, j), idx);
        }
        assert_eq!(mono_count(3), 6);
    }

    #[test]
    fn colengths() {
        let k = FieldTower::rationals();
        let l = Limits::default();
        assert_eq!(colength(&LocalIdeal::maximal(&k), &l).unwrap(), 1);
        assert_eq!(colength(&power(&LocalIdeal::maximal(&k), 4), &l).unwrap(), 10);
        assert_eq!(colength(&monomials(&k, &[(3, 0), (0, 2)]), &l).unwrap(), 6);
        let bad = LocalIdeal::new(vec![p(&k, &[((1, 0), 1)])]).unwrap();
        assert_eq!(colength(&bad, &l).unwrap_err(), Error::NotPrimary);
    }

    #[test]
    fn memberships() {
        let k = FieldTower::rationals();
        let l = Limits::default();
        let j = monomials(&k, &[(3, 0), (0, 2)]);
        assert!(!membership(&p(&k, &[((2, 1), 1)]), &j, &l).unwrap());
        assert!(membership(&p(&k, &[((3, 0), 2), ((1, 2), 1)]), &j, &l).unwrap());
        assert!(closure_membership(&p(&k, &[((2, 1), 1)]), &j, &l).unwrap());
        assert!(!closure_membership(&p(&k, &[((1, 1), 1)]), &j, &l).unwrap());
        // A unit multiple does not change membership.
        let unit = p(&k, &[((0, 0), 1), ((1, 0), 1)]);
        assert!(membership(&(&unit * &p(&k, &[((0, 2), 1)])), &j, &l).unwrap());
    }

    #[test]
    fn cusp_reduction() {
        let k = FieldTower::rationals();
        let l = Limits::default();
        let j = monomials(&k, &[(3, 0), (0, 2)]);
        let i = monomials(&k, &[(3, 0), (0, 2), (2, 1)]);
        let r = is_reduction(&j, &i, &l).unwrap();
        assert_eq!(r, ReductionReport { decision: true, witness: Some(1), valuative: true });
        assert_eq!(is_reduction(&i, &i, &l).unwrap().witness, Some(0));
        // (x, y^2) has the same order as M but is not a reduction of it.
        let r = is_reduction(&monomials(&k, &[(1, 0), (0, 2)]), &LocalIdeal::maximal(&k), &l).unwrap();
        assert!(!r.decision);
        assert!(closure_equals(&j, &i, &l).unwrap());
        assert!(!closure_equals(&j, &j, &l).unwrap());
    }

    #[test]
    fn simple_ideal_of_cusp_divisor() {
        let k = FieldTower::rationals();
        let l = Limits::default();
        let v = PrimeDivisor::new(QdtPath::from_steps(&k, vec![QdtStep::affine(k.zero()), QdtStep::infinity()]).unwrap());
        let s = v.simple_ideal(&l).unwrap();
        let expect = monomials(&k, &[(3, 0), (2, 1), (0, 2)]);
        assert_eq!(s.gens().len(), 3);
        for g in expect.gens() {
            assert!(membership(g, &s, &l).unwrap());
        }
        for g in s.gens() {
            assert!(membership(g, &expect, &l).unwrap());
        }
        assert_eq!(PrimeDivisor::order_valuation(&k).simple_ideal(&l).unwrap().gens().len(), 2);
    }

    #[test]
    fn abhyankar_small_cases() {
        let k = FieldTower::rationals();
        let l = Limits::default();
        let fam = abhyankar_family(5, &k, &l).unwrap();
        assert_eq!(fam.f, p(&k, &[((1, 4), 1), ((6, 2), 1), ((15, 0), 1)]));
        assert_eq!(fam.g, p(&k, &[((0, 5), 1), ((3, 3), 1), ((10, 1), 1)]));
        let one = abhyankar_family(1, &k, &l).unwrap();
        assert_eq!((one.f, one.g), (BiPoly::u(&k), BiPoly::w(&k)));
        assert_eq!(triangular(3), 6);
        assert_eq!(triangular(5), 15);
        let two = abhyankar_family(2, &k, &l).unwrap();
        assert_eq!(minimalize(&two.ideal, &l).unwrap().gens().len(), 3);
    }
}
