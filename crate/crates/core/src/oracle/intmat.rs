//! Dense integer matrices with exact Hermite and Smith reduction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.row(i)) {
                *o += a * b;
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let rows = (0..self.rows).map(|i| other.left_mul(self.row(i))).collect();
        IntMatrix::from_rows(other.cols, rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q * row[src]`.
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] -= t;
        }
    }

    /// `col[dst] -= q * col[src]`.
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    /// Row Hermite normal form: echelon rows with positive pivots, entries
    /// above each pivot reduced into `0..pivot`, zero rows dropped. Returns
    /// the reduced matrix and its pivot columns.
    pub fn hermite(&self) -> (IntMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            loop {
                // smallest nonzero |entry| in column c at or below row r
                let best = (r..a.rows)
                    .filter(|&i| !a[(i, c)].is_zero())
                    .min_by(|&i, &j| a[(i, c)].abs().cmp(&a[(j, c)].abs()).then(i.cmp(&j)));
                let Some(p) = best else { break };
                a.swap_rows(r, p);
                let mut done = true;
                for i in r + 1..a.rows {
                    if a[(i, c)].is_zero() {
                        continue;
                    }
                    let q = a[(i, c)].div_floor(&a[(r, c)]);
                    a.sub_row(i, r, &q);
                    if !a[(i, c)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if a[(r, c)].is_zero() {
                continue;
            }
            if a[(r, c)].is_negative() {
                a.negate_row(r);
            }
            for i in 0..r {
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                a.sub_row(i, r, &q);
            }
            pivots.push(c);
            r += 1;
        }
        a.data.truncate(r * a.cols);
        a.rows = r;
        (a, pivots)
    }

    /// Smith normal form `U A V = D`.
    pub fn smith(&self) -> Smith {
        let mut a = self.clone();
        let mut v = IntMatrix::identity(a.cols);
        let mut v_inv = IntMatrix::identity(a.cols);
        let mut t = 0;
        while t < a.rows.min(a.cols) {
            let best = (t..a.rows)
                .flat_map(|i| (t..a.cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()).then(x.cmp(&y)));
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..a.rows {
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    a.sub_row(i, t, &q);
                    if !a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..a.cols {
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    a.sub_col(j, t, &q);
                    v.sub_col(j, t, &q);
                    // inverse of a column operation acts on rows of V^-1
                    v_inv.sub_row(t, j, &-q);
                    if !a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    // divisibility of the remaining block
                    let bad = (t + 1..a.rows)
                        .find(|&i| (t + 1..a.cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
                    match bad {
                        Some(i) => {
                            let one = -BigInt::one();
                            a.sub_row(t, i, &one);
                            continue;
                        }
                        None => break,
                    }
                }
                let best = (t..a.rows)
                    .map(|i| (i, t))
                    .chain((t + 1..a.cols).map(|j| (t, j)))
                    .filter(|&(i, j)| !a[(i, j)].is_zero())
                    .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()).then(x.cmp(&y)))
                    .expect("pivot row or column is nonzero");
                let (pi, pj) = best;
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                v_inv.swap_rows(t, pj);
            }
            if a[(t, t)].is_negative() {
                a.negate_row(t);
            }
            t += 1;
        }
        let diagonal = (0..t).map(|i| a[(i, i)].clone()).collect();
        Smith { diagonal, v, v_inv }
    }

    /// Determinant of a square matrix by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Basis of the integer vectors `x` with `x A = 0`, in Hermite form.
    pub fn left_kernel(&self) -> Vec<Vec<BigInt>> {
        let mut aug = IntMatrix::zeros(self.rows, self.cols + self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols + i)] = BigInt::one();
        }
        let (h, _) = aug.hermite();
        (0..h.rows)
            .filter(|&i| h.row(i)[..self.cols].iter().all(Zero::is_zero))
            .map(|i| h.row(i)[self.cols..].to_vec())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of [`IntMatrix::smith`]: the nonzero elementary divisors and the
/// unimodular column transform `V` together with its inverse.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Whether the cokernel of the row space is torsion-free.
    pub fn is_free(&self) -> bool {
        self.diagonal.iter().all(One::is_one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    #[test]
    fn hermite_form() {
        let (h, p) = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).hermite();
        assert_eq!(p, vec![0, 1, 2]);
        assert_eq!(h, m(&[&[2, 4, 4], &[0, 6, 0], &[0, 0, 12]]));
        let (h, p) = m(&[&[1, 1], &[2, 2]]).hermite();
        assert_eq!(p, vec![0]);
        assert_eq!(h, m(&[&[1, 1]]));
    }

    #[test]
    fn smith_form() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = a.smith();
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert!(s.v.mul(&s.v_inv) == IntMatrix::identity(3));
        let s = m(&[&[1, -1, 0], &[0, 1, -1]]).smith();
        assert!(s.is_free());
        assert_eq!(s.rank(), 2);
        let s = m(&[&[2, 0], &[0, 3]]).smith();
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        assert!(!s.is_free());
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).det(), BigInt::from(-144));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), BigInt::zero());
        assert_eq!(IntMatrix::zeros(0, 0).det(), BigInt::one());
    }

    #[test]
    fn kernel() {
        let a = m(&[&[1, 2], &[2, 4], &[0, 1]]);
        let k = a.left_kernel();
        assert_eq!(k.len(), 1);
        assert!(a.left_mul(&k[0]).iter().all(Zero::is_zero));
        assert!(m(&[&[1, 0], &[0, 1]]).left_kernel().is_empty());
    }
}
