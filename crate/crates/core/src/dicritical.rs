//! Base-point trees, Zariski indices, dicritical sets and factorizations.

use crate::arith::BiPoly;
use crate::divisors::{PrimeDivisor, RationalFn};
use crate::error::{Error, Result};
use crate::nearpoints::{directions, zariski_number, LocalIdeal, QdtPath};
use crate::Limits;

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub path: QdtPath,
    /// Transform of the residual ideal at this point.
    pub ideal: LocalIdeal,
    pub zariski: u32,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Base points in depth-first preorder, children in canonical direction order.
#[derive(Clone, Debug)]
pub struct BasePointTree {
    /// Polynomial GCD of the generators (one when it is a local unit).
    pub principal: BiPoly,
    pub nodes: Vec<TreeNode>,
}

pub fn base_point_tree(j: &LocalIdeal, limits: &Limits) -> Result<BasePointTree> {
    let principal = principal_part(j);
    let residual = j.residual();
    let mut nodes = Vec::new();
    if !residual.is_unit() {
        let path = QdtPath::new(j.field());
        grow(path, residual, None, limits, &mut nodes)?;
    }
    Ok(BasePointTree { principal, nodes })
}

fn grow(path: QdtPath, ideal: LocalIdeal, parent: Option<usize>, limits: &Limits, nodes: &mut Vec<TreeNode>) -> Result<()> {
    if path.len() > limits.max_depth {
        return Err(Error::DepthExceeded(limits.max_depth));
    }
    if nodes.len() >= limits.max_nodes {
        return Err(Error::NodeBudget(limits.max_nodes));
    }
    let zariski = zariski_number(&ideal)?;
    let me = nodes.len();
    let dirs = directions(&ideal)?;
    nodes.push(TreeNode { path: path.clone(), ideal, zariski, parent, children: Vec::new() });
    if let Some(p) = parent {
        nodes[p].children.push(me);
    }
    for d in dirs {
        grow(path.push_trusted(d.step, d.field), d.transform, Some(me), limits, nodes)?;
    }
    Ok(())
}

fn principal_part(j: &LocalIdeal) -> BiPoly {
    let g = j.gcd();
    if g.is_unit_at_origin() {
        BiPoly::one(j.field())
    } else {
        g.normalize_lex_least()
    }
}

/// A dicritical divisor with its Zariski index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicriticalRecord {
    pub divisor: PrimeDivisor,
    pub index: u32,
    /// Dicritical degree, present when a rational function is in play.
    pub degree: Option<u32>,
    /// Values of the two root coordinates.
    pub values: [u32; 2],
}

/// One record per base point with positive Zariski number.
pub fn dicritical_set(j: &LocalIdeal, limits: &Limits) -> Result<Vec<DicriticalRecord>> {
    let tree = base_point_tree(j, limits)?;
    records(&tree)
}

fn records(tree: &BasePointTree) -> Result<Vec<DicriticalRecord>> {
    tree.nodes
        .iter()
        .filter(|n| n.zariski > 0)
        .map(|n| {
            let divisor = PrimeDivisor::new(n.path.clone());
            let values = divisor.coordinate_values()?;
            Ok(DicriticalRecord { divisor, index: n.zariski, degree: None, values })
        })
        .collect()
}

/// Principal part times simple ideals raised to Zariski indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub principal: BiPoly,
    pub exponents: Vec<(QdtPath, u32)>,
}

pub fn zariski_factorization(j: &LocalIdeal, limits: &Limits) -> Result<Factorization> {
    let tree = base_point_tree(j, limits)?;
    let exponents = tree.nodes.iter().filter(|n| n.zariski > 0).map(|n| (n.path.clone(), n.zariski)).collect();
    Ok(Factorization { principal: tree.principal, exponents })
}

/// Dicritical divisors of `z = a/b`: empty when `z` or `1/z` is regular,
/// otherwise those of `(a, b)` with their degrees.
pub fn dicritical_of_rational(z: &RationalFn, limits: &Limits) -> Result<Vec<DicriticalRecord>> {
    if z.is_regular_or_inverse() {
        return Ok(Vec::new());
    }
    let j = LocalIdeal::new(vec![z.num().clone(), z.den().clone()])?;
    let mut recs = dicritical_set(&j, limits)?;
    for r in &mut recs {
        r.degree = Some(r.divisor.dicritical_degree(z)?);
    }
    Ok(recs)
}

/// Outcome of [`special_pencil_test`]; `witness` is the exponent `m` with
/// `x^m z` regular for a suitable parameter `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PencilDecision {
    pub special: bool,
    pub witness: Option<u32>,
}

/// Whether the local part of the denominator is a power of one regular parameter.
pub fn special_pencil_test(z: &RationalFn) -> Result<PencilDecision> {
    let den = z.den();
    if den.is_unit_at_origin() {
        return Ok(PencilDecision { special: true, witness: Some(0) });
    }
    let rad = den.squarefree_part()?;
    if rad.ord()? == 1 {
        Ok(PencilDecision { special: true, witness: Some(den.ord()?) })
    } else {
        Ok(PencilDecision { special: false, witness: None })
    }
}

/// For `J = (a, b)`: `v(a) = v(b)` and the residue image of `a/b` is transcendental.
pub fn rees_certificate(j: &LocalIdeal, v: &PrimeDivisor) -> Result<bool> {
    let [a, b] = j.gens() else {
        return Err(Error::NotTwoGenerated);
    };
    let (va, vb) = (v.value(a)?, v.value(b)?);
    if va != vb {
        return Ok(false);
    }
    let z = RationalFn::new(a.clone(), b.clone())?;
    Ok(!v.residue_image(&z)?.is_constant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldTower;
    use crate::nearpoints::QdtStep;

    fn p(k: &FieldTower, t: &[((u32, u32), i64)]) -> BiPoly {
        BiPoly::from_i64s(k, t)
    }

    fn ideal(k: &FieldTower, gens: &[&[((u32, u32), i64)]]) -> LocalIdeal {
        LocalIdeal::new(gens.iter().map(|g| p(k, g)).collect()).unwrap()
    }

    #[test]
    fn zariski_example_tree() {
        let k = FieldTower::rationals();
        let j = ideal(&k, &[&[((3, 0), 1)], &[((2, 1), 1)], &[((0, 7), 1)]]);
        let tree = base_point_tree(&j, &Limits::default()).unwrap();
        let numbers: Vec<u32> = tree.nodes.iter().map(|n| n.zariski).collect();
        assert_eq!(numbers, vec![1, 0, 2]);
        assert_eq!(tree.nodes[2].parent, Some(1));
        let recs = dicritical_set(&j, &Limits::default()).unwrap();
        assert_eq!(recs.iter().map(|r| (r.divisor.path().len(), r.index)).collect::<Vec<_>>(), vec![(0, 1), (2, 2)]);
    }

    #[test]
    fn cusp_pencil() {
        let k = FieldTower::rationals();
        let z = RationalFn::new(p(&k, &[((0, 2), 1)]), p(&k, &[((3, 0), 1)])).unwrap();
        let recs = dicritical_of_rational(&z, &Limits::default()).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].values, [2, 3]);
        assert_eq!(recs[0].index, 1);
        assert_eq!(recs[0].degree, Some(1));
        let unit = RationalFn::new(p(&k, &[((0, 0), 1), ((1, 0), 1)]), p(&k, &[((0, 0), 2)])).unwrap();
        assert!(dicritical_of_rational(&unit, &Limits::default()).unwrap().is_empty());
        let ratio = RationalFn::new(p(&k, &[((0, 1), 1)]), p(&k, &[((1, 0), 1)])).unwrap();
        let recs = dicritical_of_rational(&ratio, &Limits::default()).unwrap();
        assert_eq!(recs.len(), 1);
        assert!(recs[0].divisor.path().is_empty());
    }

    #[test]
    fn factorization_of_principal_and_cusp() {
        let k = FieldTower::rationals();
        let f = ideal(&k, &[&[((2, 0), 1), ((0, 3), 1)]]);
        let fac = zariski_factorization(&f, &Limits::default()).unwrap();
        assert!(fac.exponents.is_empty());
        assert_eq!(fac.principal, p(&k, &[((2, 0), 1), ((0, 3), 1)]));
        let j = ideal(&k, &[&[((3, 0), 1)], &[((0, 2), 1)]]);
        let fac = zariski_factorization(&j, &Limits::default()).unwrap();
        assert!(fac.principal.is_one());
        assert_eq!(fac.exponents.len(), 1);
        assert_eq!(fac.exponents[0].1, 1);
    }

    #[test]
    fn pencils() {
        let k = FieldTower::rationals();
        let z = RationalFn::new(p(&k, &[((0, 2), 1)]), p(&k, &[((3, 0), 1)])).unwrap();
        assert_eq!(special_pencil_test(&z).unwrap(), PencilDecision { special: true, witness: Some(3) });
        let z = RationalFn::new(p(&k, &[((0, 3), 1)]), p(&k, &[((2, 0), 1), ((1, 1), 1)])).unwrap();
        assert!(!special_pencil_test(&z).unwrap().special);
    }

    #[test]
    fn certificates() {
        let k = FieldTower::rationals();
        let m = LocalIdeal::maximal(&k);
        let ord = PrimeDivisor::order_valuation(&k);
        assert!(rees_certificate(&m, &ord).unwrap());
        let j = ideal(&k, &[&[((3, 0), 1)], &[((0, 2), 1)]]);
        assert!(!rees_certificate(&j, &ord).unwrap());
        let cusp = PrimeDivisor::new(QdtPath::from_steps(&k, vec![QdtStep::affine(k.zero()), QdtStep::infinity()]).unwrap());
        assert!(rees_certificate(&j, &cusp).unwrap());
    }
}
