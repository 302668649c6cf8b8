//! Dense linear algebra over the base field: row reduction, particular
//! solutions and kernels.

use super::{Field, Scalar};

/// A matrix over `k` in reduced row-echelon form, remembering the row
/// operations so that right-hand sides can be solved against it.
#[derive(Clone, Debug)]
pub struct RowReduced {
    field: Field,
    cols: usize,
    /// Reduced rows (only the nonzero ones).
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    /// `transform · original = [rows; zero rows]`.
    transform: Vec<Vec<Scalar>>,
}

impl RowReduced {
    /// Row-reduce an `m × cols` matrix.
    pub fn new(field: Field, matrix: &[Vec<Scalar>], cols: usize) -> RowReduced {
        let m = matrix.len();
        let mut a: Vec<Vec<Scalar>> = matrix.to_vec();
        let mut t: Vec<Vec<Scalar>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(p) = (row..m).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            t.swap(row, p);
            let inv = a[row][col].inverse().expect("nonzero pivot");
            a[row] = a[row].iter().map(|x| x.mul(&inv)).collect();
            t[row] = t[row].iter().map(|x| x.mul(&inv)).collect();
            for i in 0..m {
                if i != row && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..cols {
                        let v = a[i][j].sub(&f.mul(&a[row][j]));
                        a[i][j] = v;
                    }
                    for j in 0..m {
                        let v = t[i][j].sub(&f.mul(&t[row][j]));
                        t[i][j] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m {
                break;
            }
        }
        a.truncate(row);
        RowReduced { field, cols, rows: a, pivots, transform: t }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Some `x` with `A·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let tb: Vec<Scalar> = self
            .transform
            .iter()
            .map(|row| row.iter().zip(b).fold(self.field.zero(), |acc, (x, y)| acc.add(&x.mul(y))))
            .collect();
        if tb[self.rank()..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in self.pivots.iter().enumerate() {
            x[c] = tb[r].clone();
        }
        Some(x)
    }

    /// A basis of the kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let free = (0..self.cols).filter(|c| !self.pivots.contains(c));
        free.map(|f| {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (r, &c) in self.pivots.iter().enumerate() {
                v[c] = self.rows[r][f].neg();
            }
            v
        })
        .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(f: Field, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()
    }

    fn apply(a: &[Vec<Scalar>], x: &[Scalar], f: Field) -> Vec<Scalar> {
        a.iter()
            .map(|r| r.iter().zip(x).fold(f.zero(), |acc, (u, v)| acc.add(&u.mul(v))))
            .collect()
    }

    #[test]
    fn solve_and_kernel() {
        let q = Field::Rationals;
        let a = mat(q, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let rr = RowReduced::new(q, &a, 3);
        assert_eq!(rr.rank(), 2);
        let b: Vec<Scalar> = [1, 2, 5].iter().map(|&x| q.from_i64(x)).collect();
        let x = rr.solve(&b).unwrap();
        assert_eq!(apply(&a, &x, q), b);
        let bad: Vec<Scalar> = [1, 3, 0].iter().map(|&x| q.from_i64(x)).collect();
        assert!(rr.solve(&bad).is_none());
        let ker = rr.kernel();
        assert_eq!(ker.len(), 1);
        assert!(apply(&a, &ker[0], q).iter().all(Scalar::is_zero));
    }

    #[test]
    fn empty_and_prime_field() {
        let f = Field::prime(5).unwrap();
        let rr = RowReduced::new(f, &[], 2);
        assert_eq!(rr.kernel().len(), 2);
        assert_eq!(rr.solve(&[]).unwrap().len(), 2);
        let a = mat(f, &[&[2, 3]]);
        let rr = RowReduced::new(f, &a, 2);
        let x = rr.solve(&[f.from_i64(1)]).unwrap();
        assert_eq!(apply(&a, &x, f), vec![f.from_i64(1)]);
    }
}
