//! Univariate integer polynomials, coefficients in ascending degree.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    /// Trailing zero coefficients are dropped; the zero polynomial has none.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `λ^k - 1`.
    pub fn power_minus_one(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] = BigInt::from(-1);
        c[k] += BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    /// Quotient and remainder by a monic divisor; `None` if `divisor` is not monic.
    pub fn div_rem_monic(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        if !divisor.is_monic() {
            return None;
        }
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Some((Poly::new(Vec::new()), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + d].clone();
            if lead.is_zero() {
                continue;
            }
            for (t, c) in divisor.coeffs.iter().enumerate() {
                rem[k + t] -= &lead * c;
            }
            quot[k] = lead;
        }
        rem.truncate(d);
        Some((Poly::new(quot), Poly::new(rem)))
    }

    /// The `n`-th cyclotomic polynomial, `n >= 1`.
    pub fn cyclotomic(n: usize) -> Poly {
        let mut p = Poly::power_minus_one(n);
        for d in 1..n {
            if n % d == 0 {
                p = p.div_rem_monic(&Poly::cyclotomic(d)).expect("cyclotomic polynomials are monic").0;
            }
        }
        p
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &Matrix) -> Result<Matrix> {
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?;
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }
}

/// Characteristic polynomial `det(λ·Id - A)` by the Faddeev–LeVerrier
/// recursion; every division is exact over the integers.
pub fn char_poly(a: &Matrix) -> Result<Poly> {
    let n = a.rows();
    if !a.is_square() {
        return Err(crate::error::Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m)?;
        for i in 0..n {
            let v = m.get(i, i) + &coeffs[n - k + 1];
            m.set(i, i, v);
        }
        let t = a.mul(&m)?.trace();
        coeffs[n - k] = -(t / BigInt::from(k));
    }
    Ok(Poly::new(coeffs))
}

impl fmt::Display for Poly {
    /// Ascending degree with explicit signs, e.g. `1 + λ + λ^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, false) => write!(f, "{mag}")?,
                _ => {}
            }
            match k {
                0 => {}
                1 => f.write_str("λ")?,
                _ => write!(f, "λ^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn det_lambda(a: &[Vec<i64>], lambda: i64) -> BigInt {
        let n = a.len();
        let shifted = Matrix::from_fn(n, n, |i, j| if i == j { lambda - a[i][j] } else { -a[i][j] });
        shifted.det().unwrap()
    }

    fn eval(p: &Poly, x: i64) -> BigInt {
        p.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(Poly::cyclotomic(1), Poly::from_i64(&[-1, 1]));
        assert_eq!(Poly::cyclotomic(2), Poly::from_i64(&[1, 1]));
        assert_eq!(Poly::cyclotomic(3), Poly::from_i64(&[1, 1, 1]));
        assert_eq!(Poly::cyclotomic(4), Poly::from_i64(&[1, 0, 1]));
        assert_eq!(Poly::cyclotomic(6), Poly::from_i64(&[1, -1, 1]));
        assert_eq!(Poly::cyclotomic(12), Poly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn division_round_trip() {
        let a = Poly::from_i64(&[3, 0, -2, 5, 1]);
        let d = Poly::from_i64(&[1, -1, 1]);
        let (q, r) = a.div_rem_monic(&d).unwrap();
        assert!(r.degree().map_or(true, |k| k < 2));
        assert_eq!(q.mul(&d).sub(&a.sub(&r)), Poly::new(Vec::new()));
        assert!(a.div_rem_monic(&Poly::from_i64(&[1, 2])).is_none());
    }

    #[test]
    fn display_ascending() {
        assert_eq!(Poly::from_i64(&[1, 1, 1]).to_string(), "1 + λ + λ^2");
        assert_eq!(Poly::from_i64(&[1, -2, 1]).to_string(), "1 - 2λ + λ^2");
        assert_eq!(Poly::from_i64(&[0, -1]).to_string(), "-λ");
    }

    proptest! {
        // Oracle: det(λ·Id - A) at several integer points.
        #[test]
        fn char_poly_interpolates_determinant(a in (1usize..=5).prop_flat_map(|n|
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), n))) {
            let mat = Matrix::from_rows(&a).unwrap();
            let p = char_poly(&mat).unwrap();
            prop_assert!(p.is_monic());
            prop_assert_eq!(p.degree(), Some(a.len()));
            for x in -3..=3 {
                prop_assert_eq!(eval(&p, x), det_lambda(&a, x));
            }
            prop_assert!(p.eval_matrix(&mat).unwrap().is_zero());
        }
    }
}
