//! Infinitely near points as chains of local quadratic transforms.
//!
//! Coordinates at every node are positional `(u, w)`.  A step blows up the
//! origin and moves to one point of the exceptional line; in both charts the
//! new first coordinate `u'` defines the exceptional divisor:
//!
//! * `Affine(c)`: `u = u'`, `w = u'(w' + c)`, the point `w/u = c`;
//! * `Infinity`: `u = u'w'`, `w = u'`, the point `u/w = 0`.

use std::cmp::Ordering;

use crate::arith::factor::{canonical_cmp, factor_univariate};
use crate::arith::{BiPoly, Elem, FieldTower, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chart {
    Affine(Elem),
    Infinity,
}

/// One local quadratic transform.  When `extension` is present the residue
/// tower is first extended by that minimal polynomial (over the tower before
/// the step) and `c` lives in the extended tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QdtStep {
    pub chart: Chart,
    pub extension: Option<UniPoly>,
}

impl QdtStep {
    pub fn affine(c: Elem) -> Self {
        QdtStep { chart: Chart::Affine(c), extension: None }
    }

    pub fn infinity() -> Self {
        QdtStep { chart: Chart::Infinity, extension: None }
    }

    pub fn extending(minpoly: UniPoly, c: Elem) -> Self {
        QdtStep { chart: Chart::Affine(c), extension: Some(minpoly) }
    }

    /// Tower reached by the step from `field`, verifying the step's data.
    pub fn target_field(&self, field: &FieldTower) -> Result<FieldTower> {
        let target = match &self.extension {
            None => field.clone(),
            Some(mu) => {
                if matches!(self.chart, Chart::Infinity) {
                    return Err(Error::InvalidStep("the infinity chart never extends the tower".into()));
                }
                if mu.field() != field {
                    return Err(Error::FieldMismatch);
                }
                field.extend(mu)?
            }
        };
        if let Chart::Affine(c) = &self.chart {
            if !target.contains(c) {
                return Err(Error::ElementOutsideTower);
            }
        }
        Ok(target)
    }
}

/// A chain of steps from a root ring; node `i` is reached after `i` steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QdtPath {
    towers: Vec<FieldTower>,
    steps: Vec<QdtStep>,
}

impl QdtPath {
    pub fn new(root: &FieldTower) -> Self {
        QdtPath { towers: vec![root.clone()], steps: Vec::new() }
    }

    pub fn from_steps(root: &FieldTower, steps: Vec<QdtStep>) -> Result<Self> {
        let mut p = Self::new(root);
        for s in steps {
            p = p.push(s)?;
        }
        Ok(p)
    }

    /// The path extended by one verified step.
    pub fn push(&self, step: QdtStep) -> Result<Self> {
        let target = step.target_field(self.terminal_field())?;
        Ok(self.push_trusted(step, target))
    }

    pub(crate) fn push_trusted(&self, step: QdtStep, target: FieldTower) -> Self {
        let mut p = self.clone();
        p.steps.push(step);
        p.towers.push(target);
        p
    }

    pub fn steps(&self) -> &[QdtStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn root_field(&self) -> &FieldTower {
        &self.towers[0]
    }

    pub fn terminal_field(&self) -> &FieldTower {
        self.towers.last().expect("nonempty")
    }

    /// Residue tower at node `i`.
    pub fn field_at(&self, i: usize) -> &FieldTower {
        &self.towers[i]
    }

    /// The first `n` steps.
    pub fn prefix(&self, n: usize) -> QdtPath {
        QdtPath { towers: self.towers[..=n].to_vec(), steps: self.steps[..n].to_vec() }
    }

    /// The steps after node `n`, rooted at node `n`.
    pub fn suffix(&self, n: usize) -> QdtPath {
        QdtPath { towers: self.towers[n..].to_vec(), steps: self.steps[n..].to_vec() }
    }

    pub fn starts_with(&self, other: &QdtPath) -> bool {
        other.len() <= self.len() && self.prefix(other.len()) == *other
    }

    /// Root coordinates as polynomials in the terminal coordinates.
    pub fn compose_substitution(&self) -> (BiPoly, BiPoly) {
        self.compose(None)
    }

    /// As [`Self::compose_substitution`], modulo terms of degree `>= bound`.
    pub fn compose_truncated(&self, bound: u32) -> (BiPoly, BiPoly) {
        self.compose(Some(bound))
    }

    fn compose(&self, bound: Option<u32>) -> (BiPoly, BiPoly) {
        let root = self.root_field();
        let mut u = BiPoly::u(root);
        let mut w = BiPoly::w(root);
        if let Some(b) = bound {
            u = u.truncate(b);
            w = w.truncate(b);
        }
        for (i, s) in self.steps.iter().enumerate() {
            let t = &self.towers[i + 1];
            u = step_image(&u.embed(t).expect("prefix tower"), &s.chart, bound);
            w = step_image(&w.embed(t).expect("prefix tower"), &s.chart, bound);
        }
        (u, w)
    }
}

/// `f` composed with the substitution of a chart, over `f`'s tower, keeping
/// only degrees `< bound` when a bound is given.
pub(crate) fn step_image(f: &BiPoly, chart: &Chart, bound: Option<u32>) -> BiPoly {
    let k = f.field();
    let bound = bound.unwrap_or(u32::MAX);
    match chart {
        Chart::Infinity => BiPoly::from_terms(
            k,
            f.terms().iter().filter(|(&(i, j), _)| 2 * i + j < bound).map(|(&(i, j), c)| ((i + j, i), c.clone())),
        ),
        Chart::Affine(c) if k.is_zero(c) => BiPoly::from_terms(
            k,
            f.terms()
                .iter()
                .filter(|(&(i, j), _)| i + 2 * j < bound)
                .map(|(&(i, j), c)| ((i + j, j), c.clone())),
        ),
        Chart::Affine(c) => {
            let maxj = f.terms().keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
            // Rows of (w + c)^j, lowest power first.
            let mut binom: Vec<Vec<Elem>> = vec![vec![k.one()]];
            for j in 1..=maxj {
                let prev = &binom[j - 1];
                let mut row = vec![k.zero(); j + 1];
                for (e, x) in prev.iter().enumerate() {
                    row[e] = k.add(&row[e], &k.mul(x, c));
                    row[e + 1] = k.add(&row[e + 1], x);
                }
                binom.push(row);
            }
            let mut out = BiPoly::zero(k);
            for (&(i, j), a) in f.terms() {
                let base = i + j;
                if base >= bound {
                    continue;
                }
                for (e, b) in binom[j as usize].iter().enumerate() {
                    if base + e as u32 >= bound {
                        break;
                    }
                    out.add_term((base, e as u32), &k.mul(a, b));
                }
            }
            out
        }
    }
}

/// Order and initial form of `f` composed with a path's substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub order: u32,
    pub initial: BiPoly,
}

/// Pull `f` (over the path's root tower) back to the terminal ring.
pub fn pullback(path: &QdtPath, f: &BiPoly) -> Result<Pullback> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.embed(path.root_field())?;
    let mut bound = 2 * f.ord()? + 2 + path.len() as u32;
    loop {
        let (u, w) = path.compose_truncated(bound);
        let g = f.embed(path.terminal_field())?.substitute_truncated(&u, &w, bound);
        if !g.is_zero() {
            return Ok(Pullback { order: g.ord()?, initial: g.initial_form()? });
        }
        bound *= 2;
    }
}

/// Order at the terminal origin of `f` pulled back along `path`.
pub fn pullback_order(path: &QdtPath, f: &BiPoly) -> Result<u32> {
    Ok(pullback(path, f)?.order)
}

/// Composition of the per-step substitutions along `path`.
pub fn compose_substitution(path: &QdtPath) -> (BiPoly, BiPoly) {
    path.compose_substitution()
}

/// An ideal of the local ring at the origin, given by polynomial generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIdeal {
    field: FieldTower,
    gens: Vec<BiPoly>,
}

impl LocalIdeal {
    /// Zero generators are dropped; at least one nonzero generator is required.
    pub fn new(gens: Vec<BiPoly>) -> Result<Self> {
        let field = gens.first().ok_or(Error::EmptyInput)?.field().clone();
        if gens.iter().any(|g| *g.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let gens: Vec<BiPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::ZeroInput);
        }
        Ok(LocalIdeal { field, gens })
    }

    pub fn unit(field: &FieldTower) -> Self {
        LocalIdeal { field: field.clone(), gens: vec![BiPoly::one(field)] }
    }

    /// `(u, w)`.
    pub fn maximal(field: &FieldTower) -> Self {
        LocalIdeal { field: field.clone(), gens: vec![BiPoly::u(field), BiPoly::w(field)] }
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn gens(&self) -> &[BiPoly] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_unit_at_origin())
    }

    /// Least order of a generator; zero for the unit ideal.
    pub fn order(&self) -> u32 {
        self.gens.iter().map(|g| g.ord().expect("nonzero")).min().expect("nonempty")
    }

    /// Polynomial GCD of the generators; locally it differs from the local GCD
    /// by a unit.
    pub fn gcd(&self) -> BiPoly {
        let mut g = BiPoly::zero(&self.field);
        for h in &self.gens {
            g = g.gcd(h);
            if g.is_constant() {
                break;
            }
        }
        g
    }

    /// Proper with no common factor through the origin.
    pub fn is_m_primary(&self) -> bool {
        !self.is_unit() && self.gcd().is_unit_at_origin()
    }

    /// Generators divided by their common factor and normalized.
    pub fn residual(&self) -> LocalIdeal {
        divide_out(&self.field, self.gens.clone())
    }

    pub fn embed(&self, target: &FieldTower) -> Result<LocalIdeal> {
        Ok(LocalIdeal {
            field: target.clone(),
            gens: self.gens.iter().map(|g| g.embed(target)).collect::<Result<_>>()?,
        })
    }

    pub fn format(&self, names: [&str; 2]) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.format(names)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Divide by the polynomial GCD; a unit quotient yields the unit ideal.
fn divide_out(field: &FieldTower, gens: Vec<BiPoly>) -> LocalIdeal {
    let tmp = LocalIdeal { field: field.clone(), gens };
    let g = tmp.gcd();
    let mut out = Vec::with_capacity(tmp.gens.len());
    for h in &tmp.gens {
        let q = if g.is_constant() { h.clone() } else { h.div_exact(&g).expect("gcd divides") };
        if q.is_unit_at_origin() {
            return LocalIdeal::unit(field);
        }
        out.push(q.normalize_lex_least());
    }
    LocalIdeal { field: field.clone(), gens: out }
}

/// Transform of `J` under `step`, verifying the step.
pub fn transform_ideal(j: &LocalIdeal, step: &QdtStep) -> Result<LocalIdeal> {
    let target = step.target_field(j.field())?;
    Ok(transform_into(j, &step.chart, &target))
}

pub(crate) fn transform_into(j: &LocalIdeal, chart: &Chart, target: &FieldTower) -> LocalIdeal {
    if j.is_unit() {
        return LocalIdeal::unit(target);
    }
    let d = j.order();
    let gens: Vec<BiPoly> = j
        .gens
        .iter()
        .map(|g| {
            let h = step_image(&g.embed(target).expect("prefix tower"), chart, None);
            strip_u(&h, d)
        })
        .collect();
    divide_out(target, gens)
}

/// Divide by `u^d`, which is known to divide `h`.
fn strip_u(h: &BiPoly, d: u32) -> BiPoly {
    BiPoly::from_terms(h.field(), h.terms().iter().map(|(&(i, j), c)| ((i - d, j), c.clone())))
}

/// GCD of nonzero forms: common monomial part times the homogenized GCD of
/// the dehomogenized monomial-free parts.
pub fn homogeneous_gcd(forms: &[BiPoly]) -> Result<BiPoly> {
    let first = forms.first().ok_or(Error::EmptyInput)?;
    let k = first.field();
    let mut a = u32::MAX;
    let mut b = u32::MAX;
    let mut g = UniPoly::zero(k);
    for f in forms {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let fa = f.terms().keys().map(|e| e.0).min().unwrap();
        let fb = f.terms().keys().map(|e| e.1).min().unwrap();
        a = a.min(fa);
        b = b.min(fb);
        let core = BiPoly::from_terms(k, f.terms().iter().map(|(&(i, j), c)| ((i - fa, j - fb), c.clone())));
        g = g.gcd(&core.dehomogenize());
    }
    let d = g.degree().unwrap_or(0) as u32;
    Ok(BiPoly::homogenize(&g, d).shift(a, b))
}

/// `d - s` for the least generator order `d` and the degree `s` of the GCD of
/// the initial forms of order-`d` generators.
pub fn zariski_number(j: &LocalIdeal) -> Result<u32> {
    if j.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let (d, g) = gcd_form(j)?;
    Ok(d - g.total_degree().unwrap_or(0))
}

fn gcd_form(j: &LocalIdeal) -> Result<(u32, BiPoly)> {
    let d = j.order();
    let forms: Vec<BiPoly> = j
        .gens
        .iter()
        .filter(|g| g.ord().expect("nonzero") == d)
        .map(|g| g.initial_form().expect("nonzero"))
        .collect();
    Ok((d, homogeneous_gcd(&forms)?))
}

/// First-neighbourhood base points of an `M`-primary ideal, in canonical order.
pub fn base_directions(j: &LocalIdeal) -> Result<Vec<QdtStep>> {
    if !j.is_m_primary() {
        return Err(if j.is_unit() { Error::UnitIdeal } else { Error::NotPrimary });
    }
    Ok(directions(j)?.into_iter().map(|d| d.step).collect())
}

/// A base direction with its target tower and the transform there.
#[derive(Clone, Debug)]
pub(crate) struct Direction {
    pub step: QdtStep,
    pub field: FieldTower,
    pub transform: LocalIdeal,
}

pub(crate) fn directions(j: &LocalIdeal) -> Result<Vec<Direction>> {
    let k = j.field();
    let (_, g) = gcd_form(j)?;
    let gd = g.total_degree().unwrap_or(0);
    if gd == 0 {
        return Ok(Vec::new());
    }
    let dehom = g.dehomogenize();
    let mut rational: Vec<(Elem, QdtStep, FieldTower)> = Vec::new();
    let mut extended: Vec<(UniPoly, QdtStep, FieldTower)> = Vec::new();
    if dehom.degree().unwrap_or(0) > 0 {
        for (phi, _) in factor_univariate(&dehom)? {
            if phi.degree() == Some(1) {
                let c = k.neg(&phi.coeff(0));
                rational.push((c.clone(), QdtStep::affine(c), k.clone()));
            } else {
                let t = k.extend_trusted(phi.coeffs().to_vec());
                let c = t.generator().expect("extended");
                extended.push((phi.clone(), QdtStep::extending(phi, c), t));
            }
        }
    }
    rational.sort_by(|a, b| a.0.cmp(&b.0));
    extended.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    let mut cands: Vec<(QdtStep, FieldTower)> = rational.into_iter().map(|(_, s, t)| (s, t)).collect();
    cands.extend(extended.into_iter().map(|(_, s, t)| (s, t)));
    if (dehom.degree().unwrap_or(0) as u32) < gd {
        cands.push((QdtStep::infinity(), k.clone()));
    }
    let mut out = Vec::new();
    for (step, field) in cands {
        let transform = transform_into(j, &step.chart, &field);
        if !transform.is_unit() {
            out.push(Direction { step, field, transform });
        }
    }
    Ok(out)
}

/// Canonical order on steps from a common node: rational affine points by
/// their coordinate, then extensions by minimal polynomial, then infinity.
pub fn step_cmp(a: &QdtStep, b: &QdtStep) -> Ordering {
    fn key(s: &QdtStep) -> u8 {
        match (&s.chart, &s.extension) {
            (Chart::Affine(_), None) => 0,
            (Chart::Affine(_), Some(_)) => 1,
            (Chart::Infinity, _) => 2,
        }
    }
    key(a).cmp(&key(b)).then_with(|| match (&a.chart, &b.chart, &a.extension, &b.extension) {
        (_, _, Some(p), Some(q)) => canonical_cmp(p, q),
        (Chart::Affine(x), Chart::Affine(y), _, _) => x.cmp(y),
        _ => Ordering::Equal,
    })
}
