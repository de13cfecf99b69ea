//! Univariate factorization over field towers.
//!
//! * finite towers: squarefree decomposition with p-th roots, distinct-degree
//!   and Cantor–Zassenhaus equal-degree splitting;
//! * Q: Zassenhaus (factor mod p, Hensel lift, recombine);
//! * towers over Q: norm-based reduction to the level below.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tower::{Elem, FieldTower};
use super::UniPoly;
use crate::error::{Error, Result};

/// Monic irreducible factors with multiplicities, in canonical order.
///
/// The product of the factors raised to their multiplicities equals the
/// input divided by its leading coefficient.
pub fn factor_univariate(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(p)? {
        for h in factor_squarefree(&g)? {
            out.push((h, m));
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

/// Roots of `p` in its own tower, in canonical order, without multiplicity.
pub fn roots(p: &UniPoly) -> Result<Vec<Elem>> {
    let f = p.field().clone();
    Ok(factor_univariate(p)?
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| f.neg(&g.coeff(0)))
        .collect())
}

pub(crate) fn canonical_cmp(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

fn sort_factors(v: &mut [(UniPoly, u32)]) {
    v.sort_by(|(a, m), (b, n)| canonical_cmp(a, b).then(m.cmp(n)));
}

/// Pairwise coprime monic squarefree factors `(g_i, i)` with `p = lc * prod g_i^i`.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = p.monic();
    if f.is_constant() {
        return Ok(Vec::new());
    }
    if p.field().characteristic() == 0 {
        Ok(yun(&f))
    } else {
        Ok(sqf_char_p(&f))
    }
}

fn yun(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        let nb = b.div_exact(&a).expect("gcd divides");
        let nc = d.div_exact(&a).expect("gcd divides");
        d = &nc - &nb.derivative();
        b = nb;
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn sqf_char_p(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_constant() {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.div_exact(&y).expect("gcd divides");
        i += 1;
    }
    if !c.is_constant() {
        // Only exponents divisible by p survive; take the p-th root.
        let deg = c.degree().unwrap();
        let root: Vec<Elem> = (0..=deg / p).map(|j| field.pth_root(&c.coeff(j * p))).collect();
        let root = UniPoly::new(&field, root);
        for (g, m) in sqf_char_p(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn factor_squarefree(g: &UniPoly) -> Result<Vec<UniPoly>> {
    let g = g.monic();
    if g.degree().unwrap_or(0) <= 1 {
        return Ok(vec![g]);
    }
    let field = g.field();
    if field.characteristic() > 0 {
        Ok(finite_factor(&g))
    } else if field.depth() == 0 {
        zassenhaus(&g)
    } else {
        norm_factor(&g)
    }
}

// ---- finite towers -------------------------------------------------------

fn finite_factor(g: &UniPoly) -> Vec<UniPoly> {
    let field = g.field().clone();
    let q = field.order().expect("finite tower");
    let x = UniPoly::var(&field);
    let mut f = g.clone();
    let mut h = x.clone();
    let mut i = 1usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut out = Vec::new();
    while f.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(&q, &f);
        let gg = (&h - &x).gcd(&f);
        if !gg.is_one() {
            out.extend(equal_degree_split(&gg, i, &q, &mut rng));
            f = f.div_exact(&gg).expect("gcd divides");
            h = h.rem(&f);
        }
        i += 1;
    }
    if f.degree().unwrap_or(0) > 0 {
        out.push(f);
    }
    out.sort_by(canonical_cmp);
    out
}

fn equal_degree_split(f: &UniPoly, d: usize, q: &BigUint, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let p = field.characteristic();
    loop {
        let a = UniPoly::new(&field, (0..n).map(|_| field.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Trace of F_{q^d} over F_2: sum of the a^(2^i).
            let k = q.bits() as usize - 1;
            let mut acc = a.rem(f);
            let mut cur = acc.clone();
            for _ in 1..k * d {
                cur = (&cur * &cur).rem(f);
                acc = &acc + &cur;
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            &a.pow_mod(&e, f) - &UniPoly::one(&field)
        };
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree_split(&g, d, q, rng);
            out.extend(equal_degree_split(&h, d, q, rng));
            return out;
        }
    }
}

// ---- integer polynomials ---------------------------------------------------

type ZPoly = Vec<BigInt>;

fn ztrim(v: &mut ZPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut v: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    ztrim(&mut v);
    v
}

fn zsym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut v: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    ztrim(&mut v);
    v
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut v: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    ztrim(&mut v);
    v
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut v: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    ztrim(&mut v);
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    ztrim(&mut v);
    v
}

/// Division by a polynomial whose leading coefficient is 1.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = zmod(a, m);
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[k + i] = (&r[k + i] - &c * bc).mod_floor(m);
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    ztrim(&mut r);
    ztrim(&mut q);
    (q, r)
}

/// Exact division over Z; `None` when `b` does not divide `a`.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    if r.len() < b.len() {
        return r.is_empty().then(Vec::new);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while !r.is_empty() && r.len() > db {
        let k = r.len() - 1 - db;
        let (c, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        q[k] = c;
        ztrim(&mut r);
    }
    if !r.is_empty() {
        return None;
    }
    ztrim(&mut q);
    Some(q)
}

fn zcontent(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn zprimitive(a: &[BigInt]) -> ZPoly {
    let c = zcontent(a);
    let mut v: ZPoly = a.iter().map(|x| x / &c).collect();
    if v.last().is_some_and(|l| l.is_negative()) {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
    v
}

fn to_fp(a: &[BigInt], fp: &FieldTower) -> UniPoly {
    UniPoly::new(fp, a.iter().map(|c| fp.from_bigint(c)).collect())
}

fn from_fp(a: &UniPoly) -> ZPoly {
    a.coeffs()
        .iter()
        .map(|c| match c {
            Elem::Mod(n) => BigInt::from(*n),
            _ => unreachable!("prime field element"),
        })
        .collect()
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

// ---- Zassenhaus over Q --------------------------------------------------------

const SMALL_PRIMES: [u64; 24] =
    [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

fn zassenhaus(g: &UniPoly) -> Result<Vec<UniPoly>> {
    let field = g.field().clone();
    // Clear denominators to a primitive integer polynomial.
    let rats: Vec<BigRational> = g
        .coeffs()
        .iter()
        .map(|c| match c {
            Elem::Rat(r) => r.clone(),
            _ => unreachable!("rational coefficient"),
        })
        .collect();
    let den = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints: ZPoly = rats.iter().map(|r| (r * BigRational::from_integer(den.clone())).to_integer()).collect();
    let f = zprimitive(&ints);
    let n = f.len() - 1;
    let lc = f.last().unwrap().clone();

    // Pick the admissible prime with the fewest modular factors among a few.
    let mut best: Option<(u64, Vec<UniPoly>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FieldTower::prime(p).expect("prime");
        let fbar = to_fp(&f, &fp);
        if !fbar.gcd(&fbar.derivative()).is_one() {
            continue;
        }
        let facs = finite_factor(&fbar.monic());
        if facs.len() == 1 {
            return Ok(vec![g.monic()]);
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, modfacs) =
        best.ok_or_else(|| Error::UnsupportedExtension("no admissible prime for Hensel lifting".into()))?;
    if modfacs.len() > 16 {
        return Err(Error::UnsupportedExtension(format!("{} modular factors exceed the recombination budget", modfacs.len())));
    }

    // Coefficient bound for factors (Mignotte), times the leading coefficient.
    let norm2_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm2 = norm2_sq.sqrt() + BigInt::one();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm2 + BigInt::one();
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut steps = 0;
    while modulus < bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }

    let us: Vec<ZPoly> = modfacs.iter().map(from_fp).collect();
    let lifted = hensel_lift(&f, &us, &pb, steps);

    // Recombination.
    let mut remaining = f.clone();
    let mut ws = lifted;
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= ws.len() {
        let mut hit = None;
        for combo in combinations(ws.len(), s) {
            let lcr = remaining.last().unwrap().clone();
            let mut cand = vec![lcr];
            for &i in &combo {
                cand = zmod(&zmul(&cand, &ws[i]), &modulus);
            }
            let cand = zprimitive(&zsym(&cand, &modulus));
            if let Some(q) = zdiv_exact(&remaining, &cand) {
                hit = Some((combo, cand, q));
                break;
            }
        }
        match hit {
            Some((combo, cand, q)) => {
                found.push(cand);
                remaining = zprimitive(&q);
                ws = ws.into_iter().enumerate().filter(|(i, _)| !combo.contains(i)).map(|(_, w)| w).collect();
            }
            None => s += 1,
        }
    }
    if remaining.len() > 1 {
        found.push(remaining);
    }
    let mut out: Vec<UniPoly> = found
        .into_iter()
        .map(|z| UniPoly::new(&field, z.iter().map(|c| field.from_bigint(c)).collect()).monic())
        .collect();
    out.sort_by(canonical_cmp);
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Lift `f ≡ lc(f) * prod us (mod p)` to monic factors modulo `p^(2^steps)`.
fn hensel_lift(f: &[BigInt], us: &[ZPoly], p: &BigInt, steps: u32) -> Vec<ZPoly> {
    let mut m_final = p.clone();
    for _ in 0..steps {
        m_final = &m_final * &m_final;
    }
    if us.len() == 1 {
        let lc_inv = inv_mod_big(f.last().unwrap(), &m_final);
        return vec![zmod(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &m_final)];
    }
    let fp = FieldTower::prime(p.to_u64().expect("small prime")).expect("prime");
    let k = us.len() / 2;
    let lc = f.last().unwrap().clone();
    let mut g = vec![lc];
    for u in &us[..k] {
        g = zmod(&zmul(&g, u), p);
    }
    let mut h = vec![BigInt::one()];
    for u in &us[k..] {
        h = zmod(&zmul(&h, u), p);
    }
    let (_, s, t) = to_fp(&g, &fp).xgcd(&to_fp(&h, &fp));
    let (mut s, mut t) = (from_fp(&s), from_fp(&t));
    let mut m = p.clone();
    for _ in 0..steps {
        let m2 = &m * &m;
        let e = zmod(&zsub(f, &zmul(&g, &h)), &m2);
        let (q, r) = zdivrem_monic(&zmul(&s, &e), &h, &m2);
        let g2 = zmod(&zadd(&zadd(&g, &zmul(&t, &e)), &zmul(&q, &g)), &m2);
        let h2 = zmod(&zadd(&h, &r), &m2);
        let b = zmod(&zsub(&zadd(&zmul(&s, &g2), &zmul(&t, &h2)), &[BigInt::one()]), &m2);
        let (c, d) = zdivrem_monic(&zmul(&s, &b), &h2, &m2);
        s = zmod(&zsub(&s, &d), &m2);
        t = zmod(&zsub(&zsub(&t, &zmul(&t, &b)), &zmul(&c, &g2)), &m2);
        g = g2;
        h = h2;
        m = m2;
    }
    let mut out = hensel_lift(&g, &us[..k], p, steps);
    out.extend(hensel_lift(&h, &us[k..], p, steps));
    out
}

// ---- towers over Q --------------------------------------------------------------

/// Factor a squarefree monic polynomial over `K = L(a)` through its norm to `L`.
fn norm_factor(g: &UniPoly) -> Result<Vec<UniPoly>> {
    let k = g.field().clone();
    let l = k.parent().expect("extension").clone();
    let alpha = k.generator().expect("extension");
    let n = k.level_degree(k.depth());
    let t = UniPoly::var(&k);
    for shift in (0..40i64).map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }) {
        let sa = k.mul(&k.from_i64(shift), &alpha);
        let gs = g.compose(&(&t - &UniPoly::constant(&k, sa.clone())));
        let norm = norm_poly(&gs, &l, n);
        if !norm.gcd(&norm.derivative()).is_one() {
            continue;
        }
        let mut out = Vec::new();
        for (ni, _) in factor_univariate(&norm)? {
            let h = gs.gcd(&ni.embed(&k)?);
            if h.is_constant() {
                continue;
            }
            let back = h.compose(&(&t + &UniPoly::constant(&k, sa.clone())));
            out.push(back.monic());
        }
        out.sort_by(canonical_cmp);
        return Ok(out);
    }
    Err(Error::UnsupportedExtension("no squarefree norm found for the shifted polynomial".into()))
}

/// `Norm_{K/L}(g)` by evaluation at integer points and interpolation over `L`.
fn norm_poly(g: &UniPoly, l: &FieldTower, n: usize) -> UniPoly {
    let k = g.field();
    let deg = n * g.degree().unwrap();
    let xs: Vec<Elem> = (0..=deg as i64).map(|i| l.from_i64(i)).collect();
    let ys: Vec<Elem> = (0..=deg as i64)
        .map(|i| {
            let beta = g.eval(&k.from_i64(i));
            element_norm(k, l, &beta, n)
        })
        .collect();
    interpolate(l, &xs, &ys)
}

/// Determinant of multiplication by `beta` on `K` as an `L`-vector space.
fn element_norm(k: &FieldTower, l: &FieldTower, beta: &Elem, n: usize) -> Elem {
    let alpha = k.generator().unwrap();
    let mut col = beta.clone();
    let mut rows = vec![vec![l.zero(); n]; n];
    for j in 0..n {
        if let Elem::Ext(v) = &col {
            for (row, c) in rows.iter_mut().zip(v) {
                row[j] = c.clone();
            }
        }
        col = k.mul(&col, &alpha);
    }
    determinant(l, rows)
}

pub(crate) fn determinant(f: &FieldTower, mut m: Vec<Vec<Elem>>) -> Elem {
    let n = m.len();
    let mut det = f.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !f.is_zero(&m[r][c])) else {
            return f.zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = f.neg(&det);
        }
        det = f.mul(&det, &m[c][c]);
        let inv = f.inv(&m[c][c]).expect("nonzero pivot");
        let (top, rest) = m.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in rest {
            if f.is_zero(&row[c]) {
                continue;
            }
            let factor = f.mul(&row[c], &inv);
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = f.sub(x, &f.mul(&factor, p));
            }
        }
    }
    det
}

/// Newton interpolation through distinct points.
fn interpolate(f: &FieldTower, xs: &[Elem], ys: &[Elem]) -> UniPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&coef[i], &coef[i - 1]);
            let den = f.sub(&xs[i], &xs[i - j]);
            coef[i] = f.div(&num, &den).expect("distinct nodes");
        }
    }
    let mut p = UniPoly::constant(f, coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = UniPoly::new(f, vec![f.neg(&xs[i]), f.one()]);
        p = &(&p * &lin) + &UniPoly::constant(f, coef[i].clone());
    }
    p
}
