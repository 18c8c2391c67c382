//! Dense integer matrices.
//!
//! Entries live in a `Vec<i64>` while they fit and are promoted to
//! [`BigInt`] on overflow, so arithmetic is always exact.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Entries {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// Row-major integer matrix.
///
/// The small representation is used whenever every entry fits in an `i64`,
/// which keeps equality and hashing structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

fn fit_i128(values: Vec<i128>) -> Entries {
    if values.iter().all(|&v| i64::try_from(v).is_ok()) {
        Entries::Small(values.into_iter().map(|v| v as i64).collect())
    } else {
        Entries::Big(values.into_iter().map(BigInt::from).collect())
    }
}

fn fit_big(values: Vec<BigInt>) -> Entries {
    let small: Option<Vec<i64>> = values.iter().map(ToPrimitive::to_i64).collect();
    match small {
        Some(s) => Entries::Small(s),
        None => Entries::Big(values),
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: Entries::Small(vec![0; rows * cols]) }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i64::from(i == j))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries: Entries::Small(data) }
    }

    pub fn from_big_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries: fit_big(data) }
    }

    /// Builds a matrix from rows; an empty slice gives the 0x0 matrix.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Ragged);
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, entries: Entries::Small(data) })
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Ragged);
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { rows: rows.len(), cols, entries: fit_big(data) })
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

    /// True when every entry fits in an `i64`.
    pub fn is_small(&self) -> bool {
        matches!(self.entries, Entries::Small(_))
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        let k = self.offset(i, j);
        match &self.entries {
            Entries::Small(d) => BigInt::from(d[k]),
            Entries::Big(d) => d[k].clone(),
        }
    }

    pub fn get_i64(&self, i: usize, j: usize) -> Option<i64> {
        let k = self.offset(i, j);
        match &self.entries {
            Entries::Small(d) => Some(d[k]),
            Entries::Big(d) => d[k].to_i64(),
        }
    }

    /// Sign of entry `(i, j)` as -1, 0 or 1.
    pub fn signum(&self, i: usize, j: usize) -> i8 {
        let k = self.offset(i, j);
        match &self.entries {
            Entries::Small(d) => d[k].signum() as i8,
            Entries::Big(d) => d[k].signum().to_i8().unwrap_or(0),
        }
    }

    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        self.signum(i, j) == 0
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        let k = self.offset(i, j);
        match (&mut self.entries, value.to_i64()) {
            (Entries::Small(d), Some(v)) => d[k] = v,
            (Entries::Big(d), _) => {
                d[k] = value;
                self.renormalize();
            }
            (Entries::Small(_), None) => {
                let mut big = self.big_entries();
                big[k] = value;
                self.entries = Entries::Big(big);
            }
        }
    }

    pub fn set_i64(&mut self, i: usize, j: usize, value: i64) {
        let k = self.offset(i, j);
        match &mut self.entries {
            Entries::Small(d) => d[k] = value,
            Entries::Big(d) => {
                d[k] = BigInt::from(value);
                self.renormalize();
            }
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        match &self.entries {
            Entries::Small(d) => {
                Some((0..self.rows).map(|i| d[i * self.cols..(i + 1) * self.cols].to_vec()).collect())
            }
            Entries::Big(_) => None,
        }
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let (r, c) = (self.rows, self.cols);
        let entries = match &self.entries {
            Entries::Small(d) => Entries::Small((0..r * c).map(|k| d[(k % r) * c + k / r]).collect()),
            Entries::Big(d) => Entries::Big((0..r * c).map(|k| d[(k % r) * c + k / r].clone()).collect()),
        };
        Matrix { rows: c, cols: r, entries }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, found: other.rows });
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        if let (Entries::Small(a), Entries::Small(b)) = (&self.entries, &other.entries) {
            if let Some(out) = mul_small(a, b, n, k, m) {
                return Ok(Matrix { rows: n, cols: m, entries: fit_i128(out) });
            }
        }
        let a = self.big_entries();
        let b = other.big_entries();
        let mut out = vec![BigInt::zero(); n * m];
        for i in 0..n {
            for t in 0..k {
                let x = &a[i * k + t];
                if x.is_zero() {
                    continue;
                }
                for j in 0..m {
                    out[i * m + j] += x * &b[t * m + j];
                }
            }
        }
        Ok(Matrix { rows: n, cols: m, entries: fit_big(out) })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |x, y| x.checked_add(y), |x, y| x + y)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |x, y| x.checked_sub(y), |x, y| x - y)
    }

    pub fn neg(&self) -> Matrix {
        match &self.entries {
            Entries::Small(d) if d.iter().all(|&x| x != i64::MIN) => Matrix {
                rows: self.rows,
                cols: self.cols,
                entries: Entries::Small(d.iter().map(|&x| -x).collect()),
            },
            _ => Matrix {
                rows: self.rows,
                cols: self.cols,
                entries: fit_big(self.big_entries().into_iter().map(|x| -x).collect()),
            },
        }
    }

    /// Column `dst` += `factor` * column `src`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: i64) {
        if factor == 0 {
            return;
        }
        let (r, c) = (self.rows, self.cols);
        if let Entries::Small(d) = &mut self.entries {
            let ok = (0..r).all(|i| {
                d[i * c + src].checked_mul(factor).and_then(|p| p.checked_add(d[i * c + dst])).is_some()
            });
            if ok {
                for i in 0..r {
                    d[i * c + dst] += d[i * c + src] * factor;
                }
                return;
            }
        }
        let mut big = self.big_entries();
        let f = BigInt::from(factor);
        for i in 0..r {
            let add = &big[i * c + src] * &f;
            big[i * c + dst] += add;
        }
        self.entries = fit_big(big);
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        let c = self.cols;
        for i in 0..self.rows {
            match &mut self.entries {
                Entries::Small(d) => d.swap(i * c + a, i * c + b),
                Entries::Big(d) => d.swap(i * c + a, i * c + b),
            }
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        let c = self.cols;
        for j in 0..c {
            match &mut self.entries {
                Entries::Small(d) => d.swap(a * c + j, b * c + j),
                Entries::Big(d) => d.swap(a * c + j, b * c + j),
            }
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Submatrix with the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_big_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn block_diagonal(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Small(d) => d.iter().all(|&x| x == 0),
            Entries::Big(_) => false,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && match &self.entries {
                Entries::Small(d) => (0..d.len()).all(|k| d[k] == i64::from(k / self.cols == k % self.cols)),
                Entries::Big(_) => false,
            }
    }

    /// Square, zero below the diagonal, ones on it.
    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..=i).all(|j| {
                    let v = self.signum(i, j);
                    if i == j { self.get_i64(i, j) == Some(1) } else { v == 0 }
                })
            })
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Largest absolute value of an entry.
    pub fn max_abs(&self) -> BigInt {
        self.big_entries().into_iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if let Entries::Small(d) = &self.entries {
            if let Some(v) = det_small(d, self.rows) {
                return Ok(BigInt::from(v));
            }
        }
        Ok(det_big(self.big_entries(), self.rows))
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.big_entries();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..c {
            if rank == r {
                break;
            }
            let Some(p) = (rank..r).find(|&i| !a[i * c + col].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..c {
                    a.swap(p * c + j, rank * c + j);
                }
            }
            let pivot = a[rank * c + col].clone();
            for i in rank + 1..r {
                let lead = a[i * c + col].clone();
                for j in col..c {
                    let v = (&pivot * &a[i * c + j] - &lead * &a[rank * c + j]) / &prev;
                    a[i * c + j] = v;
                }
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Inverse of an upper unitriangular matrix, which is again integral.
    pub fn inverse_unitriangular(&self) -> Result<Matrix> {
        if !self.is_upper_unitriangular() {
            return Err(Error::NotUnimodular);
        }
        let n = self.rows;
        if let Entries::Small(a) = &self.entries {
            if let Some(x) = unitriangular_inverse_small(a, n) {
                return Ok(Matrix { rows: n, cols: n, entries: fit_i128(x) });
            }
        }
        let a = self.big_entries();
        let mut x = vec![BigInt::zero(); n * n];
        for j in 0..n {
            x[j * n + j] = BigInt::one();
            for i in (0..j).rev() {
                let mut s = BigInt::zero();
                for k in i + 1..=j {
                    s += &a[i * n + k] * &x[k * n + j];
                }
                x[i * n + j] = -s;
            }
        }
        Ok(Matrix { rows: n, cols: n, entries: fit_big(x) })
    }

    /// Inverse of a matrix with determinant ±1, by unimodular row reduction.
    pub fn inverse_unimodular(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::identity(n).to_rows();
        for c in 0..n {
            loop {
                let p = (c..n)
                    .filter(|&i| !a[i][c].is_zero())
                    .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()))
                    .ok_or(Error::NotUnimodular)?;
                a.swap(c, p);
                inv.swap(c, p);
                let mut done = true;
                for i in c + 1..n {
                    if a[i][c].is_zero() {
                        continue;
                    }
                    let q = a[i][c].div_floor(&a[c][c]);
                    row_sub(&mut a, i, c, &q);
                    row_sub(&mut inv, i, c, &q);
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if !a[c][c].abs().is_one() {
                return Err(Error::NotUnimodular);
            }
            if a[c][c].is_negative() {
                for v in a[c].iter_mut().chain(inv[c].iter_mut()) {
                    *v = -&*v;
                }
            }
        }
        for c in (0..n).rev() {
            for i in 0..c {
                let q = a[i][c].clone();
                if !q.is_zero() {
                    row_sub(&mut a, i, c, &q);
                    row_sub(&mut inv, i, c, &q);
                }
            }
        }
        Matrix::from_big_rows(&inv)
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        assert!(i < self.rows && j < self.cols, "matrix index ({i}, {j}) out of bounds");
        i * self.cols + j
    }

    fn big_entries(&self) -> Vec<BigInt> {
        match &self.entries {
            Entries::Small(d) => d.iter().map(|&x| BigInt::from(x)).collect(),
            Entries::Big(d) => d.clone(),
        }
    }

    fn renormalize(&mut self) {
        if let Entries::Big(d) = &mut self.entries {
            let d = core::mem::take(d);
            self.entries = fit_big(d);
        }
    }

    fn zip(
        &self,
        other: &Matrix,
        small: impl Fn(i64, i64) -> Option<i64>,
        big: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        if let (Entries::Small(a), Entries::Small(b)) = (&self.entries, &other.entries) {
            let out: Option<Vec<i64>> = a.iter().zip(b).map(|(&x, &y)| small(x, y)).collect();
            if let Some(out) = out {
                return Ok(Matrix { rows: self.rows, cols: self.cols, entries: Entries::Small(out) });
            }
        }
        let a = self.big_entries();
        let b = other.big_entries();
        let out = a.iter().zip(&b).map(|(x, y)| big(x, y)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, entries: fit_big(out) })
    }
}

fn row_sub(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for j in 0..a[dst].len() {
        let v = q * &a[src][j];
        a[dst][j] -= v;
    }
}

fn mul_small(a: &[i64], b: &[i64], n: usize, k: usize, m: usize) -> Option<Vec<i128>> {
    let mut out = vec![0i128; n * m];
    for i in 0..n {
        for t in 0..k {
            let x = a[i * k + t] as i128;
            if x == 0 {
                continue;
            }
            for j in 0..m {
                let cell = &mut out[i * m + j];
                *cell = cell.checked_add(x * b[t * m + j] as i128)?;
            }
        }
    }
    Some(out)
}

fn det_small(a: &[i64], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut prev: i128 = 1;
    let mut sign = 1;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let p = (k + 1..n).find(|&i| a[i * n + k] != 0)?;
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k * n + k]
                    .checked_mul(a[i * n + j])?
                    .checked_sub(a[i * n + k].checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
        }
        prev = a[k * n + k];
    }
    Some(sign * a[n * n - 1])
}

fn det_big(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k * n + k] * &a[i * n + j] - &a[i * n + k] * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if negate { -d } else { d }
}

fn unitriangular_inverse_small(a: &[i64], n: usize) -> Option<Vec<i128>> {
    let mut x = vec![0i128; n * n];
    for j in 0..n {
        x[j * n + j] = 1;
        for i in (0..j).rev() {
            let mut s: i128 = 0;
            for k in i + 1..=j {
                s = s.checked_add((a[i * n + k] as i128).checked_mul(x[k * n + j])?)?;
            }
            x[i * n + j] = s.checked_neg()?;
        }
    }
    Some(x)
}

impl fmt::Display for Matrix {
    /// Right-aligned columns, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use alloc::string::ToString;
        let cells: Vec<String> = self.big_entries().iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    // Cofactor expansion, used as an oracle for the elimination routines.
    fn det_cofactor(a: &[Vec<i64>]) -> i128 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0i128;
        for c in 0..n {
            let minor: Vec<Vec<i64>> =
                a[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect()).collect();
            let term = a[0][c] as i128 * det_cofactor(&minor);
            total += if c % 2 == 0 { term } else { -term };
        }
        total
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), m(&[&[1, 3], &[2, 4]]));
        assert!(a.mul(&Matrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = m(&[&[i64::MAX, 0], &[0, 1]]);
        let sq = big.mul(&big).unwrap();
        assert!(!sq.is_small());
        assert_eq!(sq.get(0, 0), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        let mut back = sq.clone();
        back.set(0, 0, BigInt::from(5));
        assert!(back.is_small());
        assert_eq!(back, m(&[&[5, 0], &[0, 1]]));
    }

    #[test]
    fn det_and_rank_known_values() {
        assert_eq!(m(&[&[2, -1], &[-1, 2]]).det().unwrap(), BigInt::from(3));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(m(&[&[2, -2], &[-2, 2]]).rank(), 1);
        assert_eq!(Matrix::zeros(3, 2).rank(), 0);
        assert_eq!(Matrix::identity(4).rank(), 4);
    }

    #[test]
    fn unitriangular_inverse() {
        let g = m(&[&[1, -1, 2], &[0, 1, -1], &[0, 0, 1]]);
        let inv = g.inverse_unitriangular().unwrap();
        assert!(g.mul(&inv).unwrap().is_identity());
        assert!(m(&[&[2, 0], &[0, 1]]).inverse_unitriangular().is_err());
    }

    #[test]
    fn unimodular_inverse_rejects_singular() {
        assert_eq!(m(&[&[2, 0], &[0, 1]]).inverse_unimodular(), Err(Error::NotUnimodular));
        assert_eq!(m(&[&[1, 1], &[1, 1]]).inverse_unimodular(), Err(Error::NotUnimodular));
    }

    #[test]
    fn display_aligns_columns() {
        let s = alloc::format!("{}", m(&[&[1, -10], &[100, 0]]));
        assert_eq!(s, "  1 -10\n100   0");
    }

    fn small_square(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), n)
    }

    proptest! {
        #[test]
        fn det_matches_cofactor_expansion(a in (1usize..=5).prop_flat_map(small_square)) {
            let mat = Matrix::from_rows(&a).unwrap();
            prop_assert_eq!(mat.det().unwrap(), BigInt::from(det_cofactor(&a)));
            let full = det_cofactor(&a) != 0;
            prop_assert_eq!(mat.rank() == a.len(), full);
        }

        #[test]
        fn unimodular_inverse_of_products_of_elementary_ops(
            ops in proptest::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..12)
        ) {
            let mut b = Matrix::identity(4);
            for (dst, src, f) in ops {
                if dst == src { b.negate_col(dst); } else { b.add_col_multiple(dst, src, f); }
            }
            let inv = b.inverse_unimodular().unwrap();
            prop_assert!(b.mul(&inv).unwrap().is_identity());
            prop_assert!(inv.mul(&b).unwrap().is_identity());
        }

        #[test]
        fn big_and_small_products_agree(a in small_square(3), b in small_square(3), shift in 40u32..62) {
            let ma = Matrix::from_rows(&a).unwrap();
            let mb = Matrix::from_rows(&b).unwrap();
            let scale = Matrix::from_big_fn(3, 3, |i, j| if i == j { BigInt::from(1u64) << shift } else { BigInt::zero() });
            let lhs = ma.mul(&scale).unwrap().mul(&mb).unwrap();
            let rhs = ma.mul(&mb).unwrap().mul(&scale).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
