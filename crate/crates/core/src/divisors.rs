//! Prime divisors given by paths of quadratic transforms: values, residue
//! images of rational functions, dicritical degrees and simple ideals.

use crate::arith::{BiPoly, FieldTower, UniPoly};
use crate::error::{Error, Result};
use crate::nearpoints::{pullback, Chart, LocalIdeal, QdtPath};
use crate::{dicritical, idealcalc, Limits};

/// The order valuation of the terminal ring of a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDivisor {
    path: QdtPath,
}

impl PrimeDivisor {
    pub fn new(path: QdtPath) -> Self {
        PrimeDivisor { path }
    }

    /// `ord_R` itself.
    pub fn order_valuation(field: &FieldTower) -> Self {
        PrimeDivisor { path: QdtPath::new(field) }
    }

    pub fn path(&self) -> &QdtPath {
        &self.path
    }

    pub fn root_field(&self) -> &FieldTower {
        self.path.root_field()
    }

    pub fn value(&self, f: &BiPoly) -> Result<u32> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(pullback(&self.path, f)?.order)
    }

    pub fn value_rational(&self, z: &RationalFn) -> Result<i64> {
        Ok(self.value(z.num())? as i64 - self.value(z.den())? as i64)
    }

    /// Least value of a generator.
    pub fn value_of_ideal(&self, j: &LocalIdeal) -> Result<u32> {
        j.gens().iter().map(|g| self.value(g)).try_fold(u32::MAX, |m, v| Ok(m.min(v?)))
    }

    /// Values of the two root coordinates.
    pub fn coordinate_values(&self) -> Result<[u32; 2]> {
        let k = self.root_field();
        Ok([self.value(&BiPoly::u(k))?, self.value(&BiPoly::w(k))?])
    }

    /// Degree of the terminal residue tower over the root tower.
    pub fn residue_degree(&self) -> usize {
        self.path.terminal_field().degree() / self.path.root_field().degree()
    }

    /// `v(M)` at every node of the path, root first.
    pub fn intermediate_multiplicities(&self) -> Result<Vec<u32>> {
        (0..=self.path.len())
            .map(|i| {
                let tail = self.path.suffix(i);
                let k = tail.root_field();
                let a = pullback(&tail, &BiPoly::u(k))?.order;
                let b = pullback(&tail, &BiPoly::w(k))?.order;
                Ok(a.min(b))
            })
            .collect()
    }

    /// Whether the point after step `j` lies on the strict transform of the
    /// exceptional line of the point before step `i` (`i < j`).
    pub fn is_proximate(&self, j: usize, i: usize) -> bool {
        if j <= i {
            return false;
        }
        // The line is u = 0 right after step i; track which coordinate cuts it.
        let mut second = false;
        for k in i + 1..j {
            let s = &self.path.steps()[k];
            second = match (&s.chart, &s.extension, second) {
                (Chart::Infinity, _, false) => true,
                (Chart::Affine(c), None, true) if self.path.field_at(k).is_zero(c) => true,
                _ => return false,
            };
        }
        true
    }

    /// Orders of the transforms of the simple ideal at each node, root first.
    pub fn simple_orders(&self) -> Vec<u32> {
        let n = self.path.len();
        let deg = |i: usize| self.path.field_at(i).degree();
        let mut o = vec![0u32; n + 1];
        o[n] = 1;
        for i in (0..n).rev() {
            o[i] = (i + 1..=n)
                .filter(|&j| self.is_proximate(j, i))
                .map(|j| (deg(j) / deg(i)) as u32 * o[j])
                .sum();
        }
        o
    }

    /// Value of the simple ideal of this divisor at the divisor itself:
    /// transform orders weighted by the multiplicities of the divisor.
    pub fn simple_threshold(&self) -> Result<u32> {
        let r = self.intermediate_multiplicities()?;
        Ok(self.simple_orders().iter().zip(&r).map(|(o, r)| o * r).sum())
    }

    /// Image of a unit `z` in the residue field `k_S(t)`, `t` the class of
    /// `w/u` at the terminal ring.
    pub fn residue_image(&self, z: &RationalFn) -> Result<ResidueImage> {
        let a = pullback(&self.path, z.num())?;
        let b = pullback(&self.path, z.den())?;
        if a.order != b.order {
            return Err(Error::NonzeroValue(a.order as i64 - b.order as i64));
        }
        Ok(ResidueImage::new(a.initial.dehomogenize(), b.initial.dehomogenize()))
    }

    /// `[k'(t) : k(z)]` for the residue image of `z`.
    pub fn dicritical_degree(&self, z: &RationalFn) -> Result<u32> {
        let img = self.residue_image(z)?;
        if img.is_constant() {
            return Err(Error::ConstantImage);
        }
        Ok(self.residue_degree() as u32 * img.degree())
    }

    /// `{f : v(f) >= c}` for `c` the simple threshold, minimally
    /// generated, and checked to factor as a single simple ideal.
    pub fn simple_ideal(&self, limits: &Limits) -> Result<LocalIdeal> {
        let c = self.simple_threshold()?;
        let ideal = idealcalc::valuation_ideal(self.root_field(), &[(self.clone(), c)], c)?;
        let fac = dicritical::zariski_factorization(&ideal, limits)?;
        if !fac.principal.is_constant() || fac.exponents.len() != 1 || fac.exponents[0].1 != 1 {
            return Err(Error::NotSimple(format!("{} dicritical factors", fac.exponents.len())));
        }
        Ok(ideal)
    }
}

/// Quotient `num / den` with no common factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    num: BiPoly,
    den: BiPoly,
}

impl RationalFn {
    /// Reduces by the polynomial GCD; the denominator is scaled to be monic.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Err(Error::ZeroInput);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let k = den.field().clone();
        let lc = den.terms().values().next_back().expect("nonzero").clone();
        let inv = k.inv(&lc)?;
        Ok(RationalFn { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(f: BiPoly) -> Result<Self> {
        let one = BiPoly::one(f.field());
        Self::new(f, one)
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn field(&self) -> &FieldTower {
        self.num.field()
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone()).expect("nonzero")
    }

    pub fn mul(&self, other: &RationalFn) -> Result<Self> {
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }

    /// `z` or `1/z` lies in the local ring at the origin.
    pub fn is_regular_or_inverse(&self) -> bool {
        self.num.is_unit_at_origin() || self.den.is_unit_at_origin()
    }

    pub fn format(&self, names: [&str; 2]) -> String {
        if self.den.is_one() {
            return self.num.format(names);
        }
        format!("({})/({})", self.num.format(names), self.den.format(names))
    }
}

/// Reduced univariate rational function; the denominator is monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueImage {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl ResidueImage {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let inv = den.field().inv(&den.leading()).expect("nonzero");
        ResidueImage { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn degree(&self) -> u32 {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0)) as u32
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn format(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.format(var);
        }
        format!("({})/({})", self.num.format(var), self.den.format(var))
    }
}
