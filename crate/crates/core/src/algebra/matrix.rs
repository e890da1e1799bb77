//! Dense matrices over F_q, stored row-major as element codes.

use std::fmt;

use crate::algebra::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            (0..self.rows).map(|i| self.row(i).iter().map(u32::to_string).collect::<Vec<_>>().join(",")).collect();
        f.write_str(&rows.join(";"))
    }
}

impl FqMatrix {
    /// Parses rows of element codes: `"0,1;1,1"`.
    pub fn parse(text: &str, f: &Field) -> Result<Self> {
        let rows = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|c| {
                        let c = c.trim();
                        let v: u32 = c.parse().map_err(|_| Error::Parse(format!("bad element code {c:?}")))?;
                        if v >= f.q() {
                            return Err(Error::Parse(format!("element code {v} out of range for F_{}", f.q())));
                        }
                        Ok(v)
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FqMatrix::from_rows(rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FqMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(FqMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Wraps row-major data.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(FqMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = FqMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FqMatrix, f: &Field) -> Result<FqMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FqMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32], f: &Field) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect()
    }

    fn zip_with(&self, other: &FqMatrix, op: impl Fn(u32, u32) -> u32) -> Result<FqMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("operands differ in shape".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect();
        Ok(FqMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &FqMatrix, f: &Field) -> Result<FqMatrix> {
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &FqMatrix, f: &Field) -> Result<FqMatrix> {
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn neg(&self, f: &Field) -> FqMatrix {
        FqMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let factor = self.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self, f: &Field) -> (FqMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(f);
        (m, pivots)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn nullspace(&self, f: &Field) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, f: &Field) -> Option<FqMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = FqMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref_in_place(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FqMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diagonal(blocks: &[FqMatrix]) -> FqMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = FqMatrix::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.rows;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let f = Field::prime(3).unwrap();
        let m = FqMatrix::parse("0,1; 2,1", &f).unwrap();
        assert_eq!(m.to_rows(), vec![vec![0, 1], vec![2, 1]]);
        assert_eq!(m.to_string(), "0,1;2,1");
        assert!(FqMatrix::parse("0,3", &f).is_err());
        assert!(FqMatrix::parse("0,1;1", &f).is_err());
        assert!(FqMatrix::parse("a", &f).is_err());
    }
    use proptest::prelude::*;

    #[test]
    fn rank_and_inverse() {
        let f = Field::prime(3).unwrap();
        let a = FqMatrix::from_rows(vec![vec![1, 2], vec![2, 1]]).unwrap();
        // det = 1 - 4 = -3 = 0 mod 3
        assert_eq!(a.rank(&f), 1);
        assert!(a.inverse(&f).is_none());
        let b = FqMatrix::from_rows(vec![vec![1, 1], vec![0, 2]]).unwrap();
        let bi = b.inverse(&f).unwrap();
        assert_eq!(b.mul(&bi, &f).unwrap(), FqMatrix::identity(2));
    }

    proptest! {
        #[test]
        fn nullspace_is_annihilated(data in prop::collection::vec(0u32..4, 12)) {
            let f = Field::with_order(4).unwrap();
            let m = FqMatrix::from_vec(3, 4, data).unwrap();
            let basis = m.nullspace(&f);
            prop_assert_eq!(basis.len() + m.rank(&f), 4);
            for v in &basis {
                prop_assert!(m.mul_vec(v, &f).iter().all(|&c| c == 0));
            }
        }
    }
}
