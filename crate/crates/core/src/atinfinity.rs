//! Points of a plane polynomial on the line at infinity and the partition of
//! its dicritical divisors among them.
//!
//! For `f(X, Y)` of degree `N` with degree form `phi`:
//!
//! * a factor `zeta` of `phi(1, Y)` gives the point `[1 : c : 0]`, `c` a root of
//!   `zeta` (adjoined when `zeta` is not linear); local coordinates
//!   `(z, y) = (1/X, Y/X - c)`;
//! * a factor `X` of `phi` gives `[0 : 1 : 0]`; local coordinates
//!   `(z, x) = (1/Y, X/Y)`.
//!
//! In both charts `f = F / z^N` with `F` a polynomial, and the local pencil is
//! the ideal `(F, z^N)` after removing common factors.

use crate::arith::factor::factor_univariate;
use crate::arith::{BiPoly, Elem, FieldTower, UniPoly};
use crate::dicritical::{dicritical_of_rational, special_pencil_test, DicriticalRecord};
use crate::divisors::RationalFn;
use crate::error::{Error, Result};
use crate::nearpoints::LocalIdeal;
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfinityKind {
    /// `[1 : c : 0]`; `zeta` is the monic irreducible factor of `phi(1, Y)`.
    Finite { zeta: UniPoly, c: Elem },
    /// `[0 : 1 : 0]`.
    Vertical,
}

#[derive(Clone, Debug)]
pub struct InfinityPoint {
    pub kind: InfinityKind,
    /// Residue tower at the point (extended when `zeta` is not linear).
    pub field: FieldTower,
    /// `f` in the local coordinates `(z, second)`.
    pub z: RationalFn,
    pub ideal: LocalIdeal,
    /// Witness `m` with `z^m f` regular at the point.
    pub pencil_witness: u32,
}

impl InfinityPoint {
    /// Local coordinate names, first the one defining the line at infinity.
    pub fn chart_names(&self) -> [&'static str; 2] {
        match self.kind {
            InfinityKind::Finite { .. } => ["z", "y"],
            InfinityKind::Vertical => ["z", "x"],
        }
    }

    /// Degrees computed over an extension of the ground field.
    pub fn is_extended(&self) -> bool {
        matches!(&self.kind, InfinityKind::Finite { zeta, .. } if zeta.degree() != Some(1))
    }

    /// The global coordinates `X`, `Y` as rational functions of the chart.
    pub fn global_coordinates(&self) -> (RationalFn, RationalFn) {
        let k = &self.field;
        let z = BiPoly::u(k);
        let one = BiPoly::one(k);
        match &self.kind {
            InfinityKind::Finite { c, .. } => {
                let y = &BiPoly::w(k) + &BiPoly::constant(k, c.clone());
                (RationalFn::new(one, z.clone()).expect("nonzero"), RationalFn::new(y, z).expect("nonzero"))
            }
            InfinityKind::Vertical => {
                (RationalFn::new(BiPoly::w(k), z.clone()).expect("nonzero"), RationalFn::new(one, z).expect("nonzero"))
            }
        }
    }
}

/// Top-degree homogeneous part.
pub fn degree_form(f: &BiPoly) -> Result<BiPoly> {
    let n = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    Ok(f.homogeneous_part(n))
}

pub fn points_at_infinity(f: &BiPoly) -> Result<Vec<InfinityPoint>> {
    let n = match f.total_degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    let k = f.field();
    let phi = f.homogeneous_part(n);
    let dehom = phi.dehomogenize();
    let mut points = Vec::new();
    if dehom.degree().unwrap_or(0) > 0 {
        for (zeta, _) in factor_univariate(&dehom)? {
            let (field, c) = if zeta.degree() == Some(1) {
                (k.clone(), k.neg(&zeta.coeff(0)))
            } else {
                let t = k.extend_trusted(zeta.coeffs().to_vec());
                let g = t.generator().expect("extended");
                (t, g)
            };
            points.push(make_point(f, n, InfinityKind::Finite { zeta, c }, field)?);
        }
    }
    if (dehom.degree().unwrap_or(0) as u32) < n {
        points.push(make_point(f, n, InfinityKind::Vertical, k.clone())?);
    }
    Ok(points)
}

fn make_point(f: &BiPoly, n: u32, kind: InfinityKind, field: FieldTower) -> Result<InfinityPoint> {
    let f = f.embed(&field)?;
    // X^i Y^j = z^(N-i-j) * (local monomial) / z^N.
    let big = match &kind {
        InfinityKind::Finite { c, .. } => {
            // X = 1/z, Y = (y + c)/z: X^i Y^j -> z^(N-i-j) (y + c)^j.
            let shift = &BiPoly::w(&field) + &BiPoly::constant(&field, c.clone());
            let maxj = f.terms().keys().map(|e| e.1).max().unwrap_or(0);
            let mut pows = vec![BiPoly::one(&field)];
            for j in 1..=maxj as usize {
                let next = &pows[j - 1] * &shift;
                pows.push(next);
            }
            let mut out = BiPoly::zero(&field);
            for (&(i, j), a) in f.terms() {
                out = &out + &pows[j as usize].shift(n - i - j, 0).scale(a);
            }
            out
        }
        // X = x/z, Y = 1/z: X^i Y^j -> z^(N-i-j) x^i.
        InfinityKind::Vertical => {
            BiPoly::from_terms(&field, f.terms().iter().map(|(&(i, j), a)| ((n - i - j, i), a.clone())))
        }
    };
    let zn = BiPoly::monomial(&field, field.one(), n, 0);
    let z = RationalFn::new(big, zn)?;
    let pencil = special_pencil_test(&z)?;
    if !pencil.special {
        return Err(Error::NotSimple("pencil at infinity is not special".into()));
    }
    let ideal = LocalIdeal::new(vec![z.num().clone(), z.den().clone()])?;
    Ok(InfinityPoint { kind, field, z, ideal, pencil_witness: pencil.witness.unwrap_or(0) })
}

/// Dicritical divisors of `f` at one point, with values of `X` and `Y`.
#[derive(Clone, Debug)]
pub struct PointReport {
    pub point: InfinityPoint,
    pub records: Vec<DicriticalRecord>,
    /// `(v(X), v(Y))` for each record.
    pub global_values: Vec<[i64; 2]>,
}

#[derive(Clone, Debug)]
pub struct InfinityReport {
    pub points: Vec<PointReport>,
}

impl InfinityReport {
    pub fn total(&self) -> usize {
        self.points.iter().map(|p| p.records.len()).sum()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.points.iter().flat_map(|p| p.records.iter().filter_map(|r| r.degree)).collect()
    }
}

pub fn dicriticals_at_infinity(f: &BiPoly, limits: &Limits) -> Result<InfinityReport> {
    let mut points = Vec::new();
    for point in points_at_infinity(f)? {
        let records = dicritical_of_rational(&point.z, limits)?;
        let (gx, gy) = point.global_coordinates();
        let global_values = records
            .iter()
            .map(|r| Ok([r.divisor.value_rational(&gx)?, r.divisor.value_rational(&gy)?]))
            .collect::<Result<_>>()?;
        points.push(PointReport { point, records, global_values });
    }
    Ok(InfinityReport { points })
}
