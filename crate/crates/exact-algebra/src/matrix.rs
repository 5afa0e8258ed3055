//! Dense matrices over finite fields.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::{Fe, GaloisField};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: GaloisField,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}x{} over F_{}",
            self.rows,
            self.cols,
            self.field.order()
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FqMatrix {
    pub fn zeros(field: &GaloisField, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &GaloisField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &GaloisField, rows: &[Vec<Fe>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "row {i} has length {} not {c}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= field.order() {
                    return Err(AlgebraError::FieldMismatch(format!(
                        "entry {v} outside F_{}",
                        field.order()
                    )));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { 1 } else { 0 }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    fn check_same_shape(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(AlgebraError::FieldMismatch(
                "matrices over different fields".into(),
            ));
        }
        if self.rows != o.rows || self.cols != o.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: Fe) -> Self {
        let f = &self.field;
        FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.field != o.field {
            return Err(AlgebraError::FieldMismatch(
                "matrices over different fields".into(),
            ));
        }
        if self.cols != o.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "vector length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let t = m.get(pr, j);
                    m.set(pr, j, m.get(r, j));
                    m.set(r, j, t);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<Fe> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let f = &self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if pr != c {
                for j in 0..n {
                    let t = m.get(pr, j);
                    m.set(pr, j, m.get(c, j));
                    m.set(c, j, t);
                }
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv)?;
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(AlgebraError::Singular);
        }
        let mut inv = Self::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Some solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Fe]) -> Result<Option<Vec<Fe>>> {
        if b.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "rhs length {} vs {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Characteristic polynomial `det(x I - A)` via Hessenberg reduction.
    pub fn charpoly(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch(
                "charpoly of a non-square matrix".into(),
            ));
        }
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    let t = h.get(i, j);
                    h.set(i, j, h.get(m, j));
                    h.set(m, j, t);
                }
                for j in 0..n {
                    let t = h.get(j, i);
                    h.set(j, i, h.get(j, m));
                    h.set(j, m, t);
                }
            }
            let inv = f.inv(h.get(m, m - 1))?;
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = f.add(h.get(j, m), f.mul(u, h.get(j, i)));
                    h.set(j, m, v);
                }
            }
        }
        // p[k] is the charpoly of the leading k x k block
        let ring = crate::poly::PolyRing::new(f);
        let mut p: Vec<Poly> = vec![Poly::one()];
        for m in 0..n {
            let lin = Poly::new(vec![f.neg(h.get(m, m)), 1]);
            let mut next = ring.mul(&lin, &p[m]);
            let mut t = 1;
            for i in (0..m).rev() {
                t = f.mul(t, h.get(i + 1, i));
                let c = f.mul(h.get(i, m), t);
                if c != 0 {
                    next = ring.sub(&next, &ring.scale(&p[i], c));
                }
            }
            p.push(next);
        }
        Ok(p.pop().unwrap())
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let mut acc = Self::identity(&self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut m = Self::zeros(&self.field, self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j));
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn f7() -> GaloisField {
        GaloisField::prime(7).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let f = f7();
        let a = FqMatrix::from_rows(&f, &[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]).unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let s = FqMatrix::from_rows(&f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(s.inverse().unwrap_err(), AlgebraError::Singular);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn nullspace_is_kernel() {
        let f = f7();
        let a = FqMatrix::from_rows(&f, &[vec![1, 2, 3, 4], vec![2, 4, 6, 1]]).unwrap();
        let ns = a.nullspace();
        assert_eq!(ns.len(), 4 - a.rank());
        for v in ns {
            assert!(a.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = f7();
        let a = FqMatrix::from_rows(&f, &[vec![1, 1], vec![2, 2]]).unwrap();
        let x = a.solve(&[3, 6]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![3, 6]);
        assert!(a.solve(&[3, 5]).unwrap().is_none());
    }

    #[test]
    fn charpoly_matches_pointwise_determinant() {
        let f = GaloisField::prime(11).unwrap();
        let a = FqMatrix::from_rows(
            &f,
            &[
                vec![0, 1, 0, 3],
                vec![0, 0, 1, 0],
                vec![5, 0, 0, 2],
                vec![0, 7, 0, 1],
            ],
        )
        .unwrap();
        let cp = a.charpoly().unwrap();
        assert_eq!(cp.degree(), Some(4));
        let ring = PolyRing::new(&f);
        for x in f.elements() {
            let xi = FqMatrix::identity(&f, 4).scale(x);
            let d = xi.sub(&a).unwrap().determinant().unwrap();
            assert_eq!(ring.eval(&cp, x), d);
        }
    }

    #[test]
    fn charpoly_of_permutation() {
        // 3-cycle over F_4: x^3 - 1
        let f = GaloisField::conway(2, 2).unwrap();
        let a = FqMatrix::from_rows(&f, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(a.charpoly().unwrap(), Poly::new(vec![1, 0, 0, 1]));
    }
}
