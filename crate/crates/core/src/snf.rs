//! Smith normal form over the integers.
//!
//! For an integer matrix `A` this computes unimodular `P`, `Q` and a diagonal
//! `D = P·A·Q` whose non-zero entries `d_1 | d_2 | … | d_r` are the invariant
//! factors. `Q⁻¹` is tracked alongside `Q` because both the kernel (columns of
//! `Q`) and the change of generators for a presented group (rows of `Q⁻¹`)
//! are needed downstream. All arithmetic is checked and reports
//! [`Error::Overflow`] instead of wrapping.

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.checked_mul(other.get(k, j)).ok_or(Error::Overflow)?;
                    let v = out.get(i, j).checked_add(prod).ok_or(Error::Overflow)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s != 0 {
                let v = s
                    .checked_mul(k)
                    .and_then(|p| self.get(dst, j).checked_add(p))
                    .ok_or(Error::Overflow)?;
                self.set(dst, j, v);
            }
        }
        Ok(())
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s != 0 {
                let v = s
                    .checked_mul(k)
                    .and_then(|p| self.get(i, dst).checked_add(p))
                    .ok_or(Error::Overflow)?;
                self.set(i, dst, v);
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = self.get(i, j);
            self.set(i, j, -v);
        }
    }
}

/// `D = P·A·Q` with `D` diagonal and each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diagonal: Vec<i128>,
    pub rank: usize,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inverse: IntMatrix,
}

struct Reducer {
    a: IntMatrix,
    p: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.q_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        self.a.add_row(dst, src, k)?;
        self.p.add_row(dst, src, k)
    }

    fn add_col(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        self.a.add_col(dst, src, k)?;
        self.q.add_col(dst, src, k)?;
        // (I + k e_src e_dstᵀ)⁻¹ = I - k e_src e_dstᵀ acts on the rows of Q⁻¹.
        self.q_inv.add_row(src, dst, k.checked_neg().ok_or(Error::Overflow)?)
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.p.negate_row(i);
    }

    fn smallest_in_corner(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i128)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = self.a.get(i, j).abs();
                if v != 0 && best.is_none_or(|(_, _, b)| v < b) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(mut self) -> Result<Smith> {
        let (m, n) = (self.a.rows, self.a.cols);
        let mut rank = 0;
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.smallest_in_corner(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a.get(t, t);
                let mut clean = true;
                for i in t + 1..m {
                    let v = self.a.get(i, t);
                    if v != 0 {
                        self.add_row(i, t, -(v / pivot))?;
                        if self.a.get(i, t) != 0 {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..n {
                    let v = self.a.get(t, j);
                    if v != 0 {
                        self.add_col(j, t, -(v / pivot))?;
                        if self.a.get(t, j) != 0 {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    let (pi, pj) = self
                        .smallest_in_corner(t)
                        .expect("corner is non-zero while a remainder is pending");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                // The pivot must divide everything left in the corner.
                let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| self.a.get(i, j) % pivot != 0));
                match offender {
                    Some(i) => self.add_row(t, i, 1)?,
                    None => break,
                }
            }
            if self.a.get(t, t) < 0 {
                self.negate_row(t);
            }
            rank += 1;
        }
        let diagonal = (0..m.min(n)).map(|i| self.a.get(i, i)).collect();
        Ok(Smith {
            diagonal,
            rank,
            left: self.p,
            right: self.q,
            right_inverse: self.q_inv,
        })
    }
}

/// Computes the Smith normal form of `a` together with its transforms.
pub fn smith_normal_form(a: &IntMatrix) -> Result<Smith> {
    Reducer {
        a: a.clone(),
        p: IntMatrix::identity(a.rows),
        q: IntMatrix::identity(a.cols),
        q_inv: IntMatrix::identity(a.cols),
    }
    .run()
}

/// A basis of the integer kernel `{x ∈ Zⁿ : A·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Result<Vec<Vec<i128>>> {
    let smith = smith_normal_form(a)?;
    Ok((smith.rank..a.cols).map(|j| smith.right.column(j)).collect())
}
