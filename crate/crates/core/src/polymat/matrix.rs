use std::fmt;

use crate::algebra::{parse_poly, Field, FqMatrix, Poly};
use crate::error::{Error, Result};

/// An `n × k` matrix over F_q[x], row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix[{self}]")
    }
}

/// Rows separated by `;`, entries by `,`.
impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            (0..self.rows).map(|i| self.row(i).iter().map(Poly::to_string).collect::<Vec<_>>().join(",")).collect();
        f.write_str(&rows.join(";"))
    }
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        PolyMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    /// `diag_{n,k}(d₁, …)`: an `n × k` matrix with the given leading diagonal.
    pub fn diagonal(rows: usize, cols: usize, diag: &[Poly]) -> Self {
        let mut m = PolyMatrix::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d.clone());
        }
        m
    }

    /// `xI - A` for a square matrix `A` over F_q.
    pub fn char_matrix(a: &FqMatrix, f: &Field) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch("characteristic matrix needs a square matrix".into()));
        }
        let n = a.rows();
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = f.neg(a.get(i, j));
                let entry = if i == j { Poly::from_coeffs(vec![c, 1]) } else { Poly::constant(c) };
                m.set(i, j, entry);
            }
        }
        Ok(m)
    }

    /// Parses `"x,1;0,x"`.
    pub fn parse(text: &str, f: &Field) -> Result<Self> {
        let rows = text
            .split(';')
            .map(|row| row.split(',').map(|e| parse_poly(e, f)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix, f: &Field) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero();
                for t in 0..self.cols {
                    acc = acc.add(&self.get(i, t).mul(other.get(t, j), f), f);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Multiplies every entry by `p`.
    pub fn scale(&self, p: &Poly, f: &Field) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e.mul(p, f)).collect() }
    }

    /// The submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        PolyMatrix { rows: rows.len(), cols: cols.len(), entries }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self, f: &Field) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        Ok(det_rec(self, &(0..self.rows).collect::<Vec<_>>(), 0, f))
    }
}

fn det_rec(m: &PolyMatrix, cols: &[usize], row: usize, f: &Field) -> Poly {
    if cols.is_empty() {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.mul(&det_rec(m, &rest, row + 1, f), f);
        acc = if idx % 2 == 0 { acc.add(&term, f) } else { acc.sub(&term, f) };
    }
    acc
}

/// An element `x^d I + x^{d-1} C_{d-1} + … + C_0` of `M_q(n, k, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeShaped {
    matrix: PolyMatrix,
    degree: usize,
}

impl DegreeShaped {
    /// Builds from `C_0, …, C_{d-1}`, each `n × k` with `k ≤ n`.
    pub fn from_coefficients(coeffs: &[FqMatrix], rows: usize, cols: usize) -> Result<Self> {
        if cols == 0 || cols > rows {
            return Err(Error::DimensionMismatch(format!("need 1 <= k <= n, got n={rows}, k={cols}")));
        }
        if coeffs.iter().any(|c| c.rows() != rows || c.cols() != cols) {
            return Err(Error::DimensionMismatch(format!("coefficient matrices must be {rows}x{cols}")));
        }
        let d = coeffs.len();
        let mut m = PolyMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let mut c: Vec<u32> = coeffs.iter().map(|cm| cm.get(i, j)).collect();
                c.push(u32::from(i == j));
                m.set(i, j, Poly::from_coeffs(c));
            }
        }
        Ok(DegreeShaped { matrix: m, degree: d })
    }

    /// Decodes a mixed-radix rank: digit `t·nk + i·k + j` (least significant
    /// first) is entry `(i, j)` of `C_t`.
    pub fn from_rank(mut rank: u64, rows: usize, cols: usize, degree: usize, q: u32) -> Self {
        let mut digits = vec![0u32; rows * cols * degree];
        for d in digits.iter_mut() {
            *d = (rank % q as u64) as u32;
            rank /= q as u64;
        }
        let nk = rows * cols;
        let mut entries = Vec::with_capacity(nk);
        for i in 0..rows {
            for j in 0..cols {
                let mut c: Vec<u32> = (0..degree).map(|t| digits[t * nk + i * cols + j]).collect();
                c.push(u32::from(i == j));
                entries.push(Poly::from_coeffs(c));
            }
        }
        DegreeShaped { matrix: PolyMatrix { rows, cols, entries }, degree }
    }

    /// Validates the degree shape of an arbitrary polynomial matrix.
    pub fn from_matrix(matrix: PolyMatrix, degree: usize) -> Result<Self> {
        if matrix.cols > matrix.rows {
            return Err(Error::DimensionMismatch("need k <= n".into()));
        }
        for i in 0..matrix.rows {
            for j in 0..matrix.cols {
                let e = matrix.get(i, j);
                let ok = if i == j { e.is_monic() && e.deg() == degree } else { e.is_zero() || e.deg() < degree };
                if !ok {
                    return Err(Error::DimensionMismatch(format!(
                        "entry ({i},{j}) = {e} violates the degree-{degree} shape"
                    )));
                }
            }
        }
        Ok(DegreeShaped { matrix, degree })
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.matrix
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `C_0, …, C_{d-1}`.
    pub fn coefficients(&self) -> Vec<FqMatrix> {
        (0..self.degree)
            .map(|t| {
                let data = self.matrix.entries.iter().map(|e| e.coeff(t)).collect();
                FqMatrix::from_vec(self.matrix.rows, self.matrix.cols, data).expect("shape")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let f = Field::prime(2).unwrap();
        let m = PolyMatrix::parse("x,1;0,x", &f).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.to_string(), "x,1;0,x");
        assert!(PolyMatrix::parse("x,1;0", &f).is_err());
        assert_eq!(m.det(&f).unwrap().to_string(), "x^2");
    }

    #[test]
    fn degree_shape_roundtrip() {
        let f = Field::prime(3).unwrap();
        let (n, k, d) = (3, 2, 2);
        let total = 3u64.pow((n * k * d) as u32);
        for rank in (0..total).step_by(97) {
            let p = DegreeShaped::from_rank(rank, n, k, d, 3);
            let again = DegreeShaped::from_coefficients(&p.coefficients(), n, k).unwrap();
            assert_eq!(again, p);
            assert!(DegreeShaped::from_matrix(p.matrix().clone(), d).is_ok());
        }
        let bad = PolyMatrix::parse("x^2+x,x^2;0,x^2", &f).unwrap();
        assert!(DegreeShaped::from_matrix(bad, 2).is_err());
    }
}
