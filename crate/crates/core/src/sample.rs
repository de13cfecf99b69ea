//! Seeded random instances for property checks and benchmarks.

use rand::Rng;

use crate::arith::{BiPoly, FieldTower};
use crate::nearpoints::{LocalIdeal, QdtPath, QdtStep};

/// Nonzero polynomial with up to `terms` monomials of total degree in `1..=max_deg`.
pub fn poly<R: Rng + ?Sized>(k: &FieldTower, rng: &mut R, max_deg: u32, terms: usize) -> BiPoly {
    loop {
        let n = rng.gen_range(1..=terms.max(1));
        let f = BiPoly::from_terms(
            k,
            (0..n).map(|_| {
                let d = rng.gen_range(1..=max_deg);
                let i = rng.gen_range(0..=d);
                ((i, d - i), k.random(rng))
            }),
        );
        if !f.is_zero() {
            return f;
        }
    }
}

/// Ideal of `gens` random generators, possibly with a common factor.
pub fn ideal<R: Rng + ?Sized>(k: &FieldTower, rng: &mut R, gens: usize, max_deg: u32) -> LocalIdeal {
    LocalIdeal::new((0..gens).map(|_| poly(k, rng, max_deg, 3)).collect()).expect("nonzero generators")
}

/// Ideal primary to the maximal ideal.
pub fn primary_ideal<R: Rng + ?Sized>(k: &FieldTower, rng: &mut R, gens: usize, max_deg: u32) -> LocalIdeal {
    loop {
        let j = ideal(k, rng, gens.max(2), max_deg);
        if j.is_m_primary() {
            return j;
        }
    }
}

/// Monomial ideal primary to the maximal ideal, as exponent pairs.
pub fn monomial_exponents<R: Rng + ?Sized>(rng: &mut R, max_deg: u32) -> Vec<(u32, u32)> {
    let mut e = vec![(rng.gen_range(1..=max_deg), 0), (0, rng.gen_range(1..=max_deg))];
    for _ in 0..rng.gen_range(0..3) {
        let d = rng.gen_range(1..=max_deg);
        let i = rng.gen_range(0..=d);
        e.push((i, d - i));
    }
    e.sort();
    e.dedup();
    e
}

/// Path of up to `len` steps through rational points.
pub fn path<R: Rng + ?Sized>(k: &FieldTower, rng: &mut R, len: usize) -> QdtPath {
    let mut p = QdtPath::new(k);
    for _ in 0..rng.gen_range(0..=len) {
        let step = if rng.gen_bool(0.25) {
            QdtStep::infinity()
        } else {
            QdtStep::affine(k.from_i64(rng.gen_range(-2..=2)))
        };
        p = p.push(step).expect("rational steps are valid");
    }
    p
}
