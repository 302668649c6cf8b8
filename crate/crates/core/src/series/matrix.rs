use super::traits::CommRing;
use crate::error::{Error, Result};

/// Largest supported size for determinants and adjugates.
pub const MAX_DET_SIZE: usize = 8;

/// A dense rectangular matrix over a commutative ring, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<C> {
    rows: usize,
    cols: usize,
    entries: Vec<C>,
}

impl<C: CommRing> PolyMatrix<C> {
    pub fn new(rows: usize, cols: usize, entries: Vec<C>) -> Result<PolyMatrix<C>> {
        if entries.len() != rows * cols {
            return Err(Error::structural(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<PolyMatrix<C>> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::structural("ragged matrix rows"));
        }
        PolyMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize, proto: &C) -> PolyMatrix<C> {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { proto.one_like() } else { proto.zero_like() })
            .collect();
        PolyMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.entries[i * self.cols + j]
    }

    pub fn mul(&self, o: &PolyMatrix<C>) -> Result<PolyMatrix<C>> {
        if self.cols != o.rows {
            return Err(Error::structural("matrix product dimension mismatch"));
        }
        let mut out = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = self.get(i, 0).zero_like();
                for k in 0..self.cols {
                    acc.mul_acc(self.get(i, k), o.get(k, j));
                }
                out.push(acc);
            }
        }
        PolyMatrix::new(self.rows, o.cols, out)
    }

    pub fn mul_vec(&self, v: &[C]) -> Result<Vec<C>> {
        if self.cols != v.len() {
            return Err(Error::structural("matrix-vector dimension mismatch"));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = v[0].zero_like();
                for (k, vk) in v.iter().enumerate() {
                    acc.mul_acc(self.get(i, k), vk);
                }
                acc
            })
            .collect())
    }

    pub fn scale_by(&self, c: &C) -> PolyMatrix<C> {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        }
    }

    fn check_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::structural(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Err(Error::structural("determinant of an empty matrix"));
        }
        if self.rows > MAX_DET_SIZE {
            return Err(Error::structural(format!(
                "matrix size {} exceeds the supported maximum {MAX_DET_SIZE}",
                self.rows
            )));
        }
        Ok(self.rows)
    }

    /// Determinant of the submatrix on `rows` × `cols` (equal lengths),
    /// by Laplace expansion along rows with memoisation on column subsets.
    fn minor(&self, rows: &[usize], cols: &[usize]) -> C {
        let k = rows.len();
        let proto = self.entries[0].zero_like();
        if k == 0 {
            return proto.one_like();
        }
        // dp[mask] = det of rows[k - popcount(mask)..] × cols selected by mask
        let mut dp: Vec<Option<C>> = vec![None; 1 << k];
        dp[0] = Some(proto.one_like());
        for mask in 1usize..(1 << k) {
            let used = mask.count_ones() as usize;
            let row = rows[k - used];
            let mut acc = proto.clone();
            let mut sign_pos = 0;
            for (c, &col) in cols.iter().enumerate() {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let rest = dp[mask ^ (1 << c)].as_ref().expect("filled in order");
                let entry = self.get(row, col);
                if !entry.is_zero() && !rest.is_zero() {
                    let term = entry.mul(rest);
                    acc = if sign_pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                sign_pos += 1;
            }
            dp[mask] = Some(acc);
        }
        dp[(1 << k) - 1].take().expect("full mask")
    }

    pub fn det(&self) -> Result<C> {
        let n = self.check_square()?;
        let idx: Vec<usize> = (0..n).collect();
        Ok(self.minor(&idx, &idx))
    }

    /// Determinant and adjugate (transposed cofactor matrix), so that
    /// `M·adj M = adj M·M = det M · Id`. The adjugate of a 1×1 matrix is `(1)`.
    pub fn det_and_adjugate(&self) -> Result<(C, PolyMatrix<C>)> {
        let n = self.check_square()?;
        let det = self.det()?;
        let proto = self.entries[0].zero_like();
        let mut adj = vec![proto.clone(); n * n];
        for i in 0..n {
            for j in 0..n {
                // cofactor (i, j) goes to adj[j][i]
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let m = self.minor(&rows, &cols);
                adj[j * n + i] = if (i + j) % 2 == 0 { m } else { m.neg() };
            }
        }
        Ok((det, PolyMatrix { rows: n, cols: n, entries: adj }))
    }

    pub fn map<D: CommRing>(&self, f: impl Fn(&C) -> D) -> PolyMatrix<D> {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}
