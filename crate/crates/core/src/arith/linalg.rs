//! Sparse incremental row echelon forms over a field tower.

use std::collections::BTreeMap;

use super::tower::{Elem, FieldTower};

/// Sparse row: `(column, nonzero value)` sorted by column.
pub type Row = Vec<(usize, Elem)>;

/// Rows kept in semi-echelon form: each stored row has a distinct leading
/// (least) column, and its leading coefficient is one.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldTower,
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new(field: &FieldTower) -> Self {
        Echelon { field: field.clone(), pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = &usize> {
        self.pivots.keys()
    }

    /// Eliminate the pivots of `self` from `row`.
    pub fn reduce(&self, mut row: Row) -> Row {
        let f = &self.field;
        let mut start = 0;
        loop {
            let Some(pos) = row[start..].iter().position(|(c, _)| self.pivots.contains_key(c)) else {
                return row;
            };
            let idx = start + pos;
            let (col, coef) = row[idx].clone();
            let piv = &self.pivots[&col];
            row = axpy(f, &row, &f.neg(&coef), piv);
            // Columns before `idx` are untouched; the pivot column is cleared.
            start = idx.min(row.len());
        }
    }

    /// Reduce `row` and keep it if it is independent; returns whether it was kept.
    pub fn insert(&mut self, row: Row) -> bool {
        let row = self.reduce(row);
        let Some((lead, c)) = row.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&c).expect("nonzero");
        let row: Row = row.into_iter().map(|(k, v)| (k, self.field.mul(&v, &inv))).collect();
        self.pivots.insert(lead, row);
        true
    }

    pub fn contains(&self, row: Row) -> bool {
        self.reduce(row).is_empty()
    }

    /// Rows in reduced echelon form: every pivot column is zero in every other row.
    pub fn reduced_rows(&self) -> BTreeMap<usize, Row> {
        let f = &self.field;
        let mut done: BTreeMap<usize, Row> = BTreeMap::new();
        for (&lead, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let mut k = 1;
            while k < r.len() {
                let (col, coef) = r[k].clone();
                match done.get(&col) {
                    Some(p) => {
                        r = axpy(f, &r, &f.neg(&coef), p);
                    }
                    None => k += 1,
                }
            }
            done.insert(lead, r);
        }
        done
    }

    /// Basis of `{v : row . v = 0 for every row}` over columns `0..ncols`,
    /// one vector per free column, ordered by that column.
    pub fn kernel(&self, ncols: usize) -> Vec<Row> {
        let f = &self.field;
        let red = self.reduced_rows();
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !red.contains_key(c)) {
            let mut v: Row = Vec::new();
            for (&lead, row) in &red {
                if let Ok(pos) = row.binary_search_by(|(c, _)| c.cmp(&free)) {
                    v.push((lead, f.neg(&row[pos].1)));
                }
            }
            v.push((free, f.one()));
            v.sort_by_key(|(c, _)| *c);
            out.push(v);
        }
        out
    }
}

/// `a + s*b` for sorted sparse rows.
fn axpy(f: &FieldTower, a: &Row, s: &Elem, b: &Row) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|x| x.0);
        let cb = b.get(j).map(|x| x.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = f.add(&a[i].1, &f.mul(s, &b[j].1));
                if !f.is_zero(&v) {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, f.mul(s, &b[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        let q = FieldTower::rationals();
        let r = |v: &[(usize, i64)]| -> Row { v.iter().map(|&(c, x)| (c, q.from_i64(x))).collect() };
        let mut e = Echelon::new(&q);
        assert!(e.insert(r(&[(0, 1), (2, 3)])));
        assert!(e.insert(r(&[(0, 2), (1, 1)])));
        assert!(!e.insert(r(&[(1, 1), (2, -6)])));
        assert!(e.insert(r(&[(2, 1)])));
        assert_eq!(e.rank(), 3);
        assert!(e.contains(r(&[(1, 7)])));
    }

    #[test]
    fn kernel_vectors_annihilate_rows() {
        let q = FieldTower::rationals();
        let rows: Vec<Row> = vec![
            vec![(0, q.from_i64(1)), (2, q.from_i64(3)), (3, q.from_i64(-1))],
            vec![(1, q.from_i64(2)), (2, q.from_i64(1))],
        ];
        let mut e = Echelon::new(&q);
        for r in &rows {
            e.insert(r.clone());
        }
        let ker = e.kernel(4);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for r in &rows {
                let dot = r.iter().fold(q.zero(), |acc, (c, x)| {
                    let y = v.iter().find(|(d, _)| d == c).map(|(_, y)| y.clone()).unwrap_or(q.zero());
                    q.add(&acc, &q.mul(x, &y))
                });
                assert!(q.is_zero(&dot));
            }
        }
    }
}
