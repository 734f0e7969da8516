//! Dense exact linear algebra over the two coefficient fields that back the
//! built-in scalars: prime fields `F_p` and the rationals. Matrices are tiny
//! (the dimension of a built-in field over its base field), so plain Gaussian
//! elimination with exact pivots is all that is needed.

use num::{BigRational, One, Zero};

use crate::intops::is_prime_u64;

pub(crate) trait BaseField: Clone + PartialEq + std::fmt::Debug {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Fp {
        debug_assert!(is_prime_u64(p));
        Fp { p }
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl BaseField for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub(crate) struct Rationals;

impl BaseField for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Outcome of solving `M x = rhs` exactly.
#[derive(Clone, PartialEq, Debug)]
pub(crate) enum Solve<E> {
    Unique(Vec<E>),
    /// A particular solution exists but the kernel is nontrivial.
    Underdetermined(Vec<E>),
    Inconsistent,
}

/// Row-major dense matrix over an exact base field.
#[derive(Clone, PartialEq, Debug)]
pub(crate) struct Mat<F: BaseField> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: BaseField> Mat<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    /// Build from column vectors (the images of the basis vectors).
    pub fn from_columns(field: F, columns: &[Vec<F::Elem>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Mat::zero(field, rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column set");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.add(a, b);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.sub(a, b);
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zero(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if self.field.is_zero(aik) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = self.field.mul(aik, other.at(k, j));
                    let cur = self.field.add(out.at(i, j), &prod);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    acc = self.field.add(&acc, &self.field.mul(self.at(i, j), x));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut k: usize) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.field.clone(), self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.matmul(&base);
            }
            base = base.matmul(&base);
            k >>= 1;
        }
        acc
    }

    /// In-place reduced row echelon form; returns the pivot column of each
    /// pivot row in order.
    fn rref(rows: &mut [Vec<F::Elem>], field: &F) -> Vec<usize> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(pr) = (r..nrows).find(|&i| !field.is_zero(&rows[i][c])) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = field
                .inv(&rows[r][c])
                .expect("pivot is nonzero by construction");
            for x in rows[r].iter_mut() {
                *x = field.mul(x, &inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !field.is_zero(&row[c]) {
                    let factor = row[c].clone();
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        let t = field.mul(&factor, p);
                        *x = field.sub(x, &t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn to_row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).clone()).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_row_vecs();
        Mat::rref(&mut rows, &self.field).len()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn solve(&self, rhs: &[F::Elem]) -> Solve<F::Elem> {
        assert_eq!(self.rows, rhs.len(), "dimension mismatch");
        let mut rows = self.to_row_vecs();
        for (row, b) in rows.iter_mut().zip(rhs) {
            row.push(b.clone());
        }
        let pivots = Mat::rref(&mut rows, &self.field);
        if pivots.last() == Some(&self.cols) {
            return Solve::Inconsistent;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rows[r][self.cols].clone();
        }
        if pivots.len() == self.cols {
            Solve::Unique(x)
        } else {
            Solve::Underdetermined(x)
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut rows = self.to_row_vecs();
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..n {
                row.push(if i == j {
                    self.field.one()
                } else {
                    self.field.zero()
                });
            }
        }
        let pivots = Mat::rref(&mut rows, &self.field);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let mut out = Mat::zero(self.field.clone(), n, n);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..n {
                out.set(i, j, row[n + j].clone());
            }
        }
        Some(out)
    }

    /// A basis of the right kernel `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let mut rows = self.to_row_vecs();
        let pivots = Mat::rref(&mut rows, &self.field);
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = self.field.neg(&rows[r][f]);
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intops::bigrat;

    #[test]
    fn fp_arithmetic() {
        let f = Fp::new(7);
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.mul(&5, &4), 6);
        assert_eq!(f.inv(&3), Some(5)); // 3·5 = 15 ≡ 1
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.reduce_i64(-1), 6);
    }

    #[test]
    fn solve_unique_fp() {
        // [1 2; 3 4] x = [5, 6] over F_7  =>  x = (3, 1): 3+2=5, 9+4=13≡6.
        let f = Fp::new(7);
        let m = Mat::from_columns(f, &[vec![1, 3], vec![2, 4]]);
        assert!(m.is_nonsingular());
        match m.solve(&[5, 6]) {
            Solve::Unique(x) => assert_eq!(x, vec![3, 1]),
            other => panic!("expected unique solution, got {other:?}"),
        }
        let inv = m.inverse().unwrap();
        assert_eq!(inv.apply(&[5, 6]), vec![3, 1]);
    }

    #[test]
    fn solve_rational_and_nullspace() {
        let q = Rationals;
        // Singular matrix [[1,2],[2,4]]: kernel spanned by (-2, 1).
        let m = Mat::from_columns(
            q,
            &[
                vec![bigrat(1, 1), bigrat(2, 1)],
                vec![bigrat(2, 1), bigrat(4, 1)],
            ],
        );
        assert!(!m.is_nonsingular());
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![bigrat(-2, 1), bigrat(1, 1)]);
        assert_eq!(m.solve(&[bigrat(1, 1), bigrat(3, 1)]), Solve::Inconsistent);
        match m.solve(&[bigrat(1, 1), bigrat(2, 1)]) {
            Solve::Underdetermined(x) => {
                assert_eq!(x, vec![bigrat(1, 1), bigrat(0, 1)]);
            }
            other => panic!("expected underdetermined, got {other:?}"),
        }
    }

    #[test]
    fn matrix_power() {
        let f = Fp::new(5);
        let m = Mat::from_columns(f, &[vec![0, 1], vec![1, 1]]); // Fibonacci step
        let m8 = m.pow(8);
        assert_eq!(*m8.at(0, 1), 21 % 5);
    }
}
