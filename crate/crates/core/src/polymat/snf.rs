//! Smith normal form over F_q[x].
//!
//! Pivoting picks the nonzero entry of least degree in the active block (ties
//! broken row-major), clears its row and column by Euclidean division, and,
//! once the cross is clear, adds any row holding an entry the pivot does not
//! divide into the pivot row and starts over. Diagonal entries are made monic
//! at the end by scaling columns, which is recorded in the right witness.

use crate::algebra::{Field, Poly};
use crate::error::Result;
use crate::polymat::matrix::PolyMatrix;

/// Diagonal of the Smith form with optional witnesses `A·P·B = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<Poly>,
    pub left: Option<PolyMatrix>,
    pub right: Option<PolyMatrix>,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|p| !p.is_zero()).count()
    }
}

struct Work<'a> {
    m: PolyMatrix,
    left: Option<PolyMatrix>,
    right: Option<PolyMatrix>,
    f: &'a Field,
}

impl Work<'_> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        swap_rows(&mut self.m, a, b);
        if let Some(l) = self.left.as_mut() {
            swap_rows(l, a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        swap_cols(&mut self.m, a, b);
        if let Some(r) = self.right.as_mut() {
            swap_cols(r, a, b);
        }
    }

    /// row[target] -= c · row[src]
    fn row_axpy(&mut self, target: usize, src: usize, c: &Poly) {
        row_axpy(&mut self.m, target, src, c, self.f);
        if let Some(l) = self.left.as_mut() {
            row_axpy(l, target, src, c, self.f);
        }
    }

    /// col[target] -= c · col[src]
    fn col_axpy(&mut self, target: usize, src: usize, c: &Poly) {
        col_axpy(&mut self.m, target, src, c, self.f);
        if let Some(r) = self.right.as_mut() {
            col_axpy(r, target, src, c, self.f);
        }
    }

    fn scale_col(&mut self, col: usize, c: u32) {
        let f = self.f;
        for i in 0..self.m.rows() {
            let v = self.m.get(i, col).scale(c, f);
            self.m.set(i, col, v);
        }
        if let Some(r) = self.right.as_mut() {
            for i in 0..r.rows() {
                let v = r.get(i, col).scale(c, f);
                r.set(i, col, v);
            }
        }
    }

    fn select_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let e = self.m.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(d, _, _)| e.deg() < d) {
                    best = Some((e.deg(), i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Clears row and column `t`; false if some remainder was left behind.
    fn clear_cross(&mut self, t: usize) -> bool {
        let f = self.f;
        let pivot = self.m.get(t, t).clone();
        let mut clean = true;
        for i in t + 1..self.m.rows() {
            if self.m.get(i, t).is_zero() {
                continue;
            }
            let (quot, rem) = self.m.get(i, t).divrem(&pivot, f).expect("pivot is nonzero");
            self.row_axpy(i, t, &quot);
            clean &= rem.is_zero();
        }
        for j in t + 1..self.m.cols() {
            if self.m.get(t, j).is_zero() {
                continue;
            }
            let (quot, rem) = self.m.get(t, j).divrem(&pivot, f).expect("pivot is nonzero");
            self.col_axpy(j, t, &quot);
            clean &= rem.is_zero();
        }
        clean
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let pivot = self.m.get(t, t);
        (t + 1..self.m.rows()).find(|&i| (t + 1..self.m.cols()).any(|j| !pivot.divides(self.m.get(i, j), self.f)))
    }

    fn run(&mut self) {
        let r = self.m.rows().min(self.m.cols());
        for t in 0..r {
            loop {
                let Some((pi, pj)) = self.select_pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                if !self.clear_cross(t) {
                    continue;
                }
                match self.non_divisible_row(t) {
                    Some(i) => {
                        // row[t] += row[i]
                        let minus_one = Poly::constant(self.f.neg(1));
                        self.row_axpy(t, i, &minus_one);
                    }
                    None => break,
                }
            }
        }
    }
}

fn swap_rows(m: &mut PolyMatrix, a: usize, b: usize) {
    for j in 0..m.cols() {
        let tmp = m.get(a, j).clone();
        m.set(a, j, m.get(b, j).clone());
        m.set(b, j, tmp);
    }
}

fn swap_cols(m: &mut PolyMatrix, a: usize, b: usize) {
    for i in 0..m.rows() {
        let tmp = m.get(i, a).clone();
        m.set(i, a, m.get(i, b).clone());
        m.set(i, b, tmp);
    }
}

fn row_axpy(m: &mut PolyMatrix, target: usize, src: usize, c: &Poly, f: &Field) {
    for j in 0..m.cols() {
        if m.get(src, j).is_zero() {
            continue;
        }
        let v = m.get(target, j).sub(&c.mul(m.get(src, j), f), f);
        m.set(target, j, v);
    }
}

fn col_axpy(m: &mut PolyMatrix, target: usize, src: usize, c: &Poly, f: &Field) {
    for i in 0..m.rows() {
        if m.get(i, src).is_zero() {
            continue;
        }
        let v = m.get(i, target).sub(&c.mul(m.get(i, src), f), f);
        m.set(i, target, v);
    }
}

/// Smith normal form of `p`; the diagonal has `min(n, k)` entries, monic or zero.
pub fn smith_normal_form(p: &PolyMatrix, f: &Field, want_witnesses: bool) -> SmithForm {
    let mut work = Work {
        m: p.clone(),
        left: want_witnesses.then(|| PolyMatrix::identity(p.rows())),
        right: want_witnesses.then(|| PolyMatrix::identity(p.cols())),
        f,
    };
    work.run();
    let r = p.rows().min(p.cols());
    for t in 0..r {
        let lead = work.m.get(t, t).lead();
        if lead > 1 {
            work.scale_col(t, f.inv(lead).expect("nonzero"));
        }
    }
    SmithForm { diagonal: (0..r).map(|t| work.m.get(t, t).clone()).collect(), left: work.left, right: work.right }
}

/// The diagonal `(p₁, …)` alone.
pub fn smith_diagonal(p: &PolyMatrix, f: &Field) -> Vec<Poly> {
    smith_normal_form(p, f, false).diagonal
}

/// Checks `left · p · right = diag` and that both witnesses have constant
/// nonzero determinant.
pub fn verify_witnesses(p: &PolyMatrix, snf: &SmithForm, f: &Field) -> Result<bool> {
    let (Some(a), Some(b)) = (&snf.left, &snf.right) else {
        return Ok(false);
    };
    let prod = a.mul(p, f)?.mul(b, f)?;
    let d = PolyMatrix::diagonal(p.rows(), p.cols(), &snf.diagonal);
    let unit = |m: &PolyMatrix| -> Result<bool> {
        let det = m.det(f)?;
        Ok(!det.is_zero() && det.is_constant())
    };
    Ok(prod == d && unit(a)? && unit(b)?)
}
