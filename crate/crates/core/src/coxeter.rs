//! Inverse quivers, Coxeter matrices, Coxeter polynomials and numbers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::form::UnitForm;
use crate::matrix::Matrix;
use crate::poly::{char_poly, Poly};
use crate::quiver::{Quiver, Walk};

/// Right-complete minimally decreasing walk starting with arrow `i`, from
/// its source when `dir = +1` and from its target when `dir = -1`.
pub fn min_decreasing_walk(q: &Quiver, i: usize, dir: i8) -> Result<Walk> {
    if i >= q.n_arrows() {
        return Err(Error::Index { index: i, bound: q.n_arrows() });
    }
    let (s, t) = q.arrow(i);
    let (start, mut v) = if dir >= 0 { (s, t) } else { (t, s) };
    let mut steps = alloc::vec![(i, if dir >= 0 { 1 } else { -1 })];
    let mut current = i;
    // Largest smaller arrow through the current endpoint.
    while let Some(next) = (0..current).rev().find(|&j| q.is_incident(v, j)) {
        let eps = if q.source(next) == v { 1 } else { -1 };
        steps.push((next, eps));
        v = q.other_end(next, v);
        current = next;
    }
    Ok(Walk { start, steps })
}

/// Inverse quiver by minimally decreasing walks.
pub fn inverse_quiver(q: &Quiver) -> Result<Quiver> {
    let mut arrows = Vec::with_capacity(q.n_arrows());
    for i in 0..q.n_arrows() {
        let back = q.walk_end(&min_decreasing_walk(q, i, -1)?)?;
        let forth = q.walk_end(&min_decreasing_walk(q, i, 1)?)?;
        arrows.push((back, forth));
    }
    Quiver::new(q.n_vertices(), arrows)
}

/// Inverse quiver read off from `I(Q) · Ǧ_Q⁻¹`.
pub fn inverse_via_gram(q: &Quiver) -> Result<Quiver> {
    let g_inv = q.unit_form()?.tri_gram().inverse_unitriangular()?;
    Quiver::from_incidence(&q.incidence_matrix().mul(&g_inv)?)
}

/// Inverse quiver from the column recursion `I⁻¹_k = I_k - Σ_{i<k} I⁻¹_i ⟨i,k⟩`.
pub fn inverse_via_recursion(q: &Quiver) -> Result<Quiver> {
    let inc = q.incidence_matrix();
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(q.n_arrows());
    for k in 0..q.n_arrows() {
        let mut col: Vec<i64> = (0..q.n_vertices()).map(|v| inc.get_i64(v, k).unwrap_or(0)).collect();
        for (i, prev) in cols.iter().enumerate() {
            let pair = q.pairing(i, k);
            if pair != 0 {
                for (c, p) in col.iter_mut().zip(prev) {
                    *c -= p * pair;
                }
            }
        }
        cols.push(col);
    }
    let m = Matrix::from_fn(q.n_vertices(), q.n_arrows(), |v, k| cols[k][v]);
    Quiver::from_incidence(&m)
}

/// Checks `Ǧ_Q · Ǧ_{Q⁻¹} = Id`.
pub fn triangular_inverse_identity(q: &Quiver) -> Result<bool> {
    let inv = inverse_quiver(q)?;
    let product = q.unit_form()?.tri_gram().mul(inv.unit_form()?.tri_gram())?;
    if product.is_identity() { Ok(true) } else { Err(Error::Internal("triangular Gram matrices are not inverse")) }
}

/// `-Ǧᵀ Ǧ⁻¹`.
pub fn coxeter_matrix(q: &UnitForm) -> Matrix {
    let g = q.tri_gram();
    let inv = g.inverse_unitriangular().expect("unit forms are unitriangular");
    g.transpose().mul(&inv).expect("square of equal size").neg()
}

/// `Id - I(Q)ᵀ I(Q⁻¹)`.
pub fn coxeter_matrix_of_quiver(q: &Quiver) -> Result<Matrix> {
    let inv = inverse_quiver(q)?;
    let prod = q.incidence_matrix().transpose().mul(&inv.incidence_matrix())?;
    Matrix::identity(q.n_arrows()).sub(&prod)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxeterNumber {
    Finite(u64),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterData {
    pub matrix: Matrix,
    pub char_poly: Poly,
    pub coxeter_number: CoxeterNumber,
    /// Set when `Infinite` only means "no finite order up to the cap".
    pub cap_based: bool,
}

/// `lcm(1, …, n + 1)`, saturating.
pub fn default_cap(n: usize) -> u64 {
    let mut l: u64 = 1;
    for k in 1..=(n as u64 + 1) {
        let g = num_integer::gcd(l, k);
        l = match (l / g).checked_mul(k) {
            Some(v) => v,
            None => return u64::MAX,
        };
    }
    l
}

/// Smallest `k <= cap` with `phi^k = Id`.
pub fn matrix_order(phi: &Matrix, cap: u64) -> Result<Option<u64>> {
    let mut power = phi.clone();
    for k in 1..=cap {
        if power.is_identity() {
            return Ok(Some(k));
        }
        if k < cap {
            power = power.mul(phi)?;
        }
    }
    Ok(None)
}

fn coxeter_data(matrix: Matrix, cap: u64) -> Result<CoxeterData> {
    let poly = char_poly(&matrix)?;
    let coxeter_number = match matrix_order(&matrix, cap)? {
        Some(k) => CoxeterNumber::Finite(k),
        None => CoxeterNumber::Infinite,
    };
    let cap_based = coxeter_number == CoxeterNumber::Infinite;
    Ok(CoxeterData { matrix, char_poly: poly, coxeter_number, cap_based })
}

/// Coxeter data of a unit form; `cap` defaults to [`default_cap`].
pub fn coxeter_from_form(q: &UnitForm, cap: Option<u64>) -> Result<CoxeterData> {
    coxeter_data(coxeter_matrix(q), cap.unwrap_or_else(|| default_cap(q.n())))
}

/// Coxeter data computed through the inverse quiver.
pub fn coxeter_from_quiver(q: &Quiver, cap: Option<u64>) -> Result<CoxeterData> {
    coxeter_data(coxeter_matrix_of_quiver(q)?, cap.unwrap_or_else(|| default_cap(q.n_arrows())))
}

/// `(λ^{m-ℓ} - 1)(λ^{n+1-(m-ℓ)} - 1)` for a 1-star with `n + 1` arrows and
/// the parallel pair at 0-based positions `ell < m <= n`.
pub fn one_star_coxeter_polynomial(n: usize, ell: usize, m: usize) -> Result<Poly> {
    if !(ell < m && m <= n) {
        return Err(Error::InvalidShape);
    }
    let gap = m - ell;
    Ok(Poly::power_minus_one(gap).mul(&Poly::power_minus_one(n + 1 - gap)))
}

/// Entry of a Coxeter matrix breaking one of the coefficient bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub row: usize,
    pub col: usize,
    pub value: BigInt,
    pub bound: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoxeterBoundsReport {
    pub max_offset: BigInt,
    pub violations: Vec<BoundViolation>,
}

impl CoxeterBoundsReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `|c_ij - δ_ij| <= 2`, plus `|c_ij| <= 2` for principal forms with
/// all `|q_ij| <= 1` and `|c_ij| <= 1` for positive forms.
pub fn check_coxeter_bounds(q: &UnitForm) -> CoxeterBoundsReport {
    let phi = coxeter_matrix(q);
    let n = q.n();
    let positive = q.is_positive();
    let small_coefs = (0..n).all(|i| (i + 1..n).all(|j| q.coef(i, j).abs() <= BigInt::one()));
    let principal_small = !positive && q.corank() == 1 && small_coefs && q.is_non_negative();
    let mut report = CoxeterBoundsReport::default();
    let two = BigInt::from(2);
    for i in 0..n {
        for j in 0..n {
            let c = phi.get(i, j);
            let offset = if i == j { (&c - BigInt::one()).abs() } else { c.abs() };
            if offset > report.max_offset {
                report.max_offset = offset.clone();
            }
            let mut flag = |bound: &'static str| report.violations.push(BoundViolation { row: i, col: j, value: c.clone(), bound });
            if offset > two {
                flag("|c_ij - δ_ij| <= 2");
            }
            if principal_small && c.abs() > two {
                flag("|c_ij| <= 2");
            }
            if positive && c.abs() > BigInt::one() {
                flag("|c_ij| <= 1");
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{connected_quivers, random_connected_quiver};
    use crate::star::{one_star_quiver, OneStarShape};
    use crate::transform::Transform;

    fn a2() -> Quiver {
        Quiver::canonical_extension(2, 0)
    }

    #[test]
    fn walks_on_a2() {
        let q = a2();
        assert_eq!(min_decreasing_walk(&q, 0, 1).unwrap(), Walk { start: 0, steps: alloc::vec![(0, 1)] });
        let back = min_decreasing_walk(&q, 1, -1).unwrap();
        assert_eq!(back, Walk { start: 2, steps: alloc::vec![(1, -1), (0, -1)] });
        assert_eq!(q.walk_end(&back).unwrap(), 0);
        let forth = min_decreasing_walk(&q, 1, 1).unwrap();
        assert_eq!(q.walk_end(&forth).unwrap(), 2);
    }

    #[test]
    fn inverse_examples() {
        let single = Quiver::new(2, alloc::vec![(0, 1)]).unwrap();
        assert_eq!(inverse_quiver(&single).unwrap(), single);
        let inv = inverse_quiver(&a2()).unwrap();
        assert_eq!(inv.arrows(), &[(0, 1), (0, 2)]);
        assert_eq!(inverse_via_gram(&a2()).unwrap(), inv);
        assert_eq!(inv.incidence_matrix().to_i64_rows().unwrap(), alloc::vec![alloc::vec![1, 1], alloc::vec![-1, 0], alloc::vec![0, -1]]);
        assert_eq!(inv.unit_form().unwrap().tri_gram().to_i64_rows().unwrap(), alloc::vec![alloc::vec![1, 1], alloc::vec![0, 1]]);
        assert!(triangular_inverse_identity(&a2()).unwrap());
    }

    #[test]
    fn three_inverse_routes_agree_exhaustively() {
        for k in 1..=5 {
            for q in connected_quivers(k) {
                let walk = inverse_quiver(&q).unwrap();
                assert_eq!(walk, inverse_via_gram(&q).unwrap(), "gram route differs for {q:?}");
                assert_eq!(walk, inverse_via_recursion(&q).unwrap(), "recursion route differs for {q:?}");
                assert!(triangular_inverse_identity(&q).unwrap());
                assert_eq!(walk.is_connected(), q.is_connected());
            }
        }
    }

    #[test]
    fn inverse_is_an_involution() {
        for k in 1..=5 {
            for q in connected_quivers(k) {
                assert_eq!(inverse_quiver(&inverse_quiver(&q).unwrap()).unwrap(), q);
            }
        }
    }

    // Reversing arrows C of Q reverses the arrows C* of the inverse.
    #[test]
    fn inverse_commutes_with_point_inversions() {
        for q in connected_quivers(4) {
            for mask in 1u32..16 {
                let c: Vec<usize> = (0..4).filter(|b| mask & (1 << b) != 0).collect();
                let flip = Transform::PointInversion(c);
                let lhs = inverse_quiver(&flip.apply_to_quiver(&q).unwrap()).unwrap();
                let rhs = flip.apply_to_quiver(&inverse_quiver(&q).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn coxeter_examples() {
        let one = coxeter_from_form(&UnitForm::identity(1), None).unwrap();
        assert_eq!(one.matrix.to_i64_rows().unwrap(), alloc::vec![alloc::vec![-1]]);
        assert_eq!(one.char_poly, Poly::from_i64(&[1, 1]));
        assert_eq!(one.coxeter_number, CoxeterNumber::Finite(2));

        let a2f = a2().unit_form().unwrap();
        let d = coxeter_from_form(&a2f, None).unwrap();
        assert_eq!(d.matrix.to_i64_rows().unwrap(), alloc::vec![alloc::vec![-1, -1], alloc::vec![1, 0]]);
        assert_eq!(d.char_poly, Poly::from_i64(&[1, 1, 1]));
        assert_eq!(d.coxeter_number, CoxeterNumber::Finite(3));
        assert!(!d.cap_based);
        assert!(d.matrix.pow(3).unwrap().is_identity());

        let kron = UnitForm::from_rows(&[[1, -2], [0, 1]]).unwrap();
        let k = coxeter_from_form(&kron, None).unwrap();
        assert_eq!(k.matrix.to_i64_rows().unwrap(), alloc::vec![alloc::vec![-1, -2], alloc::vec![2, 3]]);
        assert_eq!(k.char_poly, Poly::from_i64(&[1, -2, 1]));
        assert_eq!(k.coxeter_number, CoxeterNumber::Infinite);
        assert!(k.cap_based);
        let shifted = k.matrix.sub(&Matrix::identity(2)).unwrap();
        assert!(shifted.mul(&shifted).unwrap().is_zero());
    }

    #[test]
    fn quiver_route_matches_form_route() {
        assert_eq!(coxeter_matrix_of_quiver(&a2()).unwrap().to_i64_rows().unwrap(), alloc::vec![alloc::vec![-1, -1], alloc::vec![1, 0]]);
        for k in 1..=5 {
            for q in connected_quivers(k) {
                assert_eq!(coxeter_matrix_of_quiver(&q).unwrap(), coxeter_matrix(&q.unit_form().unwrap()));
            }
        }
    }

    #[test]
    fn coxeter_data_invariants() {
        for q in connected_quivers(3) {
            let d = coxeter_from_quiver(&q, None).unwrap();
            assert!(d.char_poly.is_monic());
            assert_eq!(d.char_poly.degree(), Some(3));
            assert!(d.char_poly.eval_matrix(&d.matrix).unwrap().is_zero());
            assert_eq!(d.matrix.det().unwrap().abs(), BigInt::one());
        }
    }

    #[test]
    fn default_cap_values() {
        assert_eq!(default_cap(1), 2);
        assert_eq!(default_cap(4), 60);
        assert_eq!(default_cap(200), u64::MAX);
    }

    #[test]
    fn one_star_polynomials() {
        assert_eq!(one_star_coxeter_polynomial(1, 0, 1).unwrap(), Poly::from_i64(&[1, -2, 1]));
        assert_eq!(one_star_coxeter_polynomial(4, 0, 4).unwrap(), Poly::from_i64(&[1, -1, 0, 0, -1, 1]));
        assert!(one_star_coxeter_polynomial(3, 2, 2).is_err());
        for n in 1..=7 {
            for m in 1..=n {
                for ell in 0..m {
                    let star = one_star_quiver(OneStarShape::new(n, ell, m).unwrap());
                    let d = coxeter_from_quiver(&star, Some(1)).unwrap();
                    assert_eq!(d.char_poly, one_star_coxeter_polynomial(n, ell, m).unwrap());
                }
            }
        }
    }

    #[test]
    fn bounds_examples() {
        let report = check_coxeter_bounds(&a2().unit_form().unwrap());
        assert!(report.is_clean());
        // Diagonal entry -1 sits at distance 2 from δ = 1.
        assert_eq!(report.max_offset, BigInt::from(2));
        let kron = UnitForm::from_rows(&[[1, -2], [0, 1]]).unwrap();
        let report = check_coxeter_bounds(&kron);
        assert!(report.is_clean());
        assert_eq!(report.max_offset, BigInt::from(2));
    }

    #[test]
    fn random_trees_have_clean_bounds() {
        let mut state = 7u64;
        let mut pick = |n: usize| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % n as u64) as usize
        };
        for _ in 0..200 {
            let m = 2 + pick(8);
            let t = random_connected_quiver(m, m - 1, &mut pick);
            assert!(check_coxeter_bounds(&t.unit_form().unwrap()).is_clean());
            assert!(triangular_inverse_identity(&t).unwrap());
        }
    }
}
