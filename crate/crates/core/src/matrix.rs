//! Dense matrices over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rat::{self, Rat};
use crate::{Error, Result};

/// Square or rectangular matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(ExactMatrix { rows: r, cols: c, data })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| rat::int(x)).collect()).collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    /// Elementary matrix with a single one at `(r, c)`.
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(r, c)] = Rat::one();
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rat) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        for &r in rows {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange { index: r, bound: self.rows });
            }
        }
        for &c in cols {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange { index: c, bound: self.cols });
            }
        }
        let data = rows.iter().flat_map(|&r| cols.iter().map(move |&c| self[(r, c)].clone())).collect();
        Ok(ExactMatrix { rows: rows.len(), cols: cols.len(), data })
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let mut a = self.data.clone();
        let mut sign = false;
        let mut prev = Rat::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return Ok(Rat::zero());
                };
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign = !sign;
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &pivot - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
                a[i * n + k] = Rat::zero();
            }
            prev = pivot;
        }
        let d = a[n * n - 1].clone();
        Ok(if sign { -d } else { d })
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Rat> {
        if rows.len() != cols.len() {
            return Err(Error::DimensionMismatch { expected: rows.len(), got: cols.len() });
        }
        self.submatrix(rows, cols)?.det()
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        if !self[(r, j)].is_zero() {
                            let v = &self[(i, j)] - &f * &self[(r, j)];
                            self[(i, j)] = v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut r = self.clone();
        let pivots = r.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn is_strictly_lower(&self) -> bool {
        (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_unit_lower_triangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_one() && (i + 1..self.cols).all(|j| self[(i, j)].is_zero())
            })
    }

    pub fn is_nilpotent_lower(&self) -> bool {
        self.is_square() && self.is_strictly_lower()
    }

    /// Exponential of a strictly lower-triangular (hence nilpotent) matrix.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if !self.is_nilpotent_lower() {
            return Err(Error::Precondition("exp_nilpotent needs a strictly lower-triangular matrix".into()));
        }
        let n = self.rows;
        let mut out = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..n {
            term = &term * self;
            if term.is_zero() {
                break;
            }
            term = term.scale(&rat::frac(1, k as i64));
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| rat::to_f64(&self[(i, j)]))
    }

    /// Row-major rows as `p/q` strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(rat::format).collect()).collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| rat::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rat::format).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        ExactMatrix::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = ExactMatrix::from_i64(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.det().unwrap(), int(4));
        let s = ExactMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(s.det().unwrap(), int(-1));
        let z = ExactMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(z.det().unwrap(), int(0));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = ExactMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn nilpotent_exponential() {
        let mut f = ExactMatrix::zeros(3, 3);
        f[(1, 0)] = int(1);
        f[(2, 1)] = int(1);
        let e = f.exp_nilpotent().unwrap();
        assert_eq!(e[(2, 0)], frac(1, 2));
        assert_eq!(e[(1, 0)], int(1));
        assert!(e.is_unit_lower_triangular());
        assert!(ExactMatrix::identity(2).exp_nilpotent().is_err());
    }

    #[test]
    fn string_round_trip() {
        let m = ExactMatrix::from_rows(vec![vec![frac(1, 2), int(0)], vec![int(-3), frac(5, 7)]]).unwrap();
        let back = ExactMatrix::from_strings(&m.to_strings()).unwrap();
        assert_eq!(m, back);
        assert_eq!(m.to_strings()[0][0], "1/2");
    }
}
