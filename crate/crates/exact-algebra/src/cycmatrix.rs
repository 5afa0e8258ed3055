//! Determinants and rank of small matrices over cyclotomic fields.

use crate::cyclotomic::CycNumber;
use crate::error::{AlgebraError, Result};

fn check_square(rows: &[Vec<CycNumber>]) -> Result<usize> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::DimensionMismatch(
            "matrix is not square".into(),
        ));
    }
    Ok(n)
}

/// Determinant by fraction-carrying Gaussian elimination.
pub fn determinant(rows: &[Vec<CycNumber>], conductor: u64) -> Result<CycNumber> {
    let n = check_square(rows)?;
    let mut m: Vec<Vec<CycNumber>> = rows.to_vec();
    let mut det = CycNumber::one(conductor);
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Ok(CycNumber::zero(conductor));
        };
        if pr != c {
            m.swap(pr, c);
            det = -&det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inverse()?;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] * &inv;
            for j in c..n {
                let v = &m[i][j] - &(&factor * &m[c][j]);
                m[i][j] = v;
            }
        }
    }
    Ok(det)
}

pub fn rank(rows: &[Vec<CycNumber>]) -> usize {
    let mut m: Vec<Vec<CycNumber>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(pr, r);
        let inv = m[r][c].inverse().expect("pivot is nonzero");
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] * &inv;
            for j in c..cols {
                let v = &m[i][j] - &(&factor * &m[r][j]);
                m[i][j] = v;
            }
        }
        r += 1;
    }
    r
}
