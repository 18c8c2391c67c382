//! Elementary transformations on unit forms and quivers.
//!
//! Matrices act on the right: a form `q` becomes `qT` with `G' = TᵀGT`, a
//! quiver satisfies `I(Q·t) = I(Q)·M(t)`, and an iterated transformation
//! accumulates `M(t_1)·M(t_2)·…·M(t_r)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::form::UnitForm;
use crate::matrix::Matrix;
use crate::quiver::Quiver;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    /// Sign change of the listed coordinates / reversal of the listed arrows.
    PointInversion(Vec<usize>),
    Swap { i: usize, j: usize },
    /// `x ↦ x - eps·x_i·e_j`.
    Flation { i: usize, j: usize, eps: i8 },
    /// Flation followed by the swap of `i` and `j`.
    Fst { i: usize, j: usize, eps: i8 },
}

impl Transform {
    pub fn fst(i: usize, j: usize, eps: i8) -> Self {
        Transform::Fst { i, j, eps }
    }

    fn check(&self, n: usize) -> Result<()> {
        let in_range = |k: usize| if k < n { Ok(()) } else { Err(Error::Index { index: k, bound: n }) };
        match self {
            Transform::PointInversion(c) => c.iter().try_for_each(|&k| in_range(k)),
            Transform::Swap { i, j } | Transform::Flation { i, j, .. } | Transform::Fst { i, j, .. } => {
                in_range(*i)?;
                in_range(*j)?;
                if i == j {
                    return Err(Error::Index { index: *j, bound: n });
                }
                match self {
                    Transform::Flation { eps, .. } | Transform::Fst { eps, .. } if !(-1..=1).contains(eps) => {
                        Err(Error::WrongSign { i: *i, j: *j, expected: 0, found: *eps })
                    }
                    _ => Ok(()),
                }
            }
        }
    }

    /// `M(t)` for dimension `n`.
    pub fn matrix(&self, n: usize) -> Result<Matrix> {
        let mut m = Matrix::identity(n);
        self.right_multiply(&mut m)?;
        Ok(m)
    }

    /// `m := m·M(t)`, done with column operations.
    pub fn right_multiply(&self, m: &mut Matrix) -> Result<()> {
        self.check(m.cols())?;
        match *self {
            Transform::PointInversion(ref c) => {
                for &k in c {
                    m.negate_col(k);
                }
            }
            Transform::Swap { i, j } => m.swap_cols(i, j),
            Transform::Flation { i, j, eps } => m.add_col_multiple(i, j, -i64::from(eps)),
            Transform::Fst { i, j, eps } => {
                m.add_col_multiple(i, j, -i64::from(eps));
                m.swap_cols(i, j);
            }
        }
        Ok(())
    }

    /// Step whose matrix is `M(t)⁻¹`.
    pub fn inverse(&self) -> Transform {
        match *self {
            Transform::PointInversion(ref c) => Transform::PointInversion(c.clone()),
            Transform::Swap { i, j } => Transform::Swap { i, j },
            Transform::Flation { i, j, eps } => Transform::Flation { i, j, eps: -eps },
            Transform::Fst { i, j, eps } => Transform::Fst { i: j, j: i, eps: -eps },
        }
    }

    /// `qT`. Flations need `eps = sgn(q_ij)` and `|q_ij| <= 1`.
    pub fn apply_to_form(&self, q: &UnitForm) -> Result<UnitForm> {
        self.check(q.n())?;
        if let Transform::Flation { i, j, eps } | Transform::Fst { i, j, eps } = *self {
            let sign = q.coef_sign(i, j);
            if sign != eps {
                return Err(Error::WrongSign { i, j, expected: sign, found: eps });
            }
            if q.coef(i, j).magnitude() > &num_bigint::BigUint::from(1u8) {
                return Err(Error::NonUnitResult { i, j });
            }
        }
        q.transform(&self.matrix(q.n())?)
    }

    /// `Q·t`. Flations slide the endpoint that arrow `i` shares with `j`
    /// to the far end of `j`, keeping its role as source or target.
    pub fn apply_to_quiver(&self, quiver: &Quiver) -> Result<Quiver> {
        self.check(quiver.n_arrows())?;
        let mut out = quiver.clone();
        match *self {
            Transform::PointInversion(ref c) => {
                for &k in c {
                    let a = &mut out.arrows_mut()[k];
                    *a = (a.1, a.0);
                }
            }
            Transform::Swap { i, j } => out.arrows_mut().swap(i, j),
            Transform::Flation { i, j, eps } => slide(&mut out, i, j, eps)?,
            Transform::Fst { i, j, eps } => {
                slide(&mut out, i, j, eps)?;
                out.arrows_mut().swap(i, j);
            }
        }
        Ok(out)
    }
}

/// Sign a flation of `i` along `j` must carry in this quiver.
pub fn quiver_flation_sign(quiver: &Quiver, i: usize, j: usize) -> Result<i8> {
    if quiver.are_parallel(i, j) {
        return Err(Error::ParallelArrows { i, j });
    }
    let (s, t) = quiver.arrow(i);
    Ok([s, t]
        .into_iter()
        .find(|&v| quiver.is_incident(v, j))
        .map_or(0, |v| quiver.sigma(v, i) * quiver.sigma(v, j)))
}

fn slide(quiver: &mut Quiver, i: usize, j: usize, eps: i8) -> Result<()> {
    let expected = quiver_flation_sign(quiver, i, j)?;
    if expected != eps {
        return Err(Error::WrongSign { i, j, expected, found: eps });
    }
    if eps == 0 {
        return Ok(());
    }
    let (s, t) = quiver.arrow(i);
    let shared = if quiver.is_incident(s, j) { s } else { t };
    let far = quiver.other_end(j, shared);
    let a = &mut quiver.arrows_mut()[i];
    if a.0 == shared {
        a.0 = far;
    } else {
        a.1 = far;
    }
    Ok(())
}

fn strictly_between(i: usize, j: usize) -> core::ops::Range<usize> {
    i.min(j) + 1..i.max(j)
}

/// `q_ik = 0 = q_kj` for every `k` strictly between `i` and `j`.
pub fn is_admissible(q: &UnitForm, i: usize, j: usize) -> bool {
    strictly_between(i, j).all(|k| q.coef_sign(i, k) == 0 && q.coef_sign(k, j) == 0)
}

/// No arrow strictly between `i` and `j` is adjacent to either.
pub fn is_admissible_quiver(quiver: &Quiver, i: usize, j: usize) -> bool {
    strictly_between(i, j).all(|k| !quiver.are_adjacent(i, k) && !quiver.are_adjacent(k, j))
}

/// Sequence of steps together with the product of their matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedTransform {
    steps: Vec<Transform>,
    accumulated: Matrix,
}

impl IteratedTransform {
    pub fn new(n: usize) -> Self {
        IteratedTransform { steps: Vec::new(), accumulated: Matrix::identity(n) }
    }

    pub fn from_steps(n: usize, steps: Vec<Transform>) -> Result<Self> {
        let mut it = Self::new(n);
        for t in steps {
            it.push(t)?;
        }
        Ok(it)
    }

    pub fn dim(&self) -> usize {
        self.accumulated.rows()
    }

    pub fn steps(&self) -> &[Transform] {
        &self.steps
    }

    pub fn accumulated(&self) -> &Matrix {
        &self.accumulated
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Appends a step without reference to any form or quiver.
    pub fn push(&mut self, t: Transform) -> Result<()> {
        t.right_multiply(&mut self.accumulated)?;
        self.steps.push(t);
        Ok(())
    }

    pub fn then(&self, other: &IteratedTransform) -> Result<IteratedTransform> {
        let mut out = self.clone();
        for t in &other.steps {
            out.push(t.clone())?;
        }
        Ok(out)
    }

    /// Reversed sequence of inverse steps; its matrix is the inverse.
    pub fn invert(&self) -> IteratedTransform {
        let mut out = IteratedTransform::new(self.dim());
        for t in self.steps.iter().rev() {
            out.push(t.inverse()).expect("indices were valid when recorded");
        }
        out
    }
}

/// Object that elementary transformations act on.
pub trait Context: Clone {
    fn size(&self) -> usize;
    fn apply(&self, t: &Transform) -> Result<Self>;
    /// Sign of the FS-transformation on `(i, j)`.
    fn fs_sign(&self, i: usize, j: usize) -> Result<i8>;
    fn admissible(&self, i: usize, j: usize) -> bool;
}

impl Context for UnitForm {
    fn size(&self) -> usize {
        self.n()
    }
    fn apply(&self, t: &Transform) -> Result<Self> {
        t.apply_to_form(self)
    }
    fn fs_sign(&self, i: usize, j: usize) -> Result<i8> {
        Ok(self.coef_sign(i, j))
    }
    fn admissible(&self, i: usize, j: usize) -> bool {
        is_admissible(self, i, j)
    }
}

impl Context for Quiver {
    fn size(&self) -> usize {
        self.n_arrows()
    }
    fn apply(&self, t: &Transform) -> Result<Self> {
        t.apply_to_quiver(self)
    }
    fn fs_sign(&self, i: usize, j: usize) -> Result<i8> {
        quiver_flation_sign(self, i, j)
    }
    fn admissible(&self, i: usize, j: usize) -> bool {
        is_admissible_quiver(self, i, j)
    }
}

/// Appends `t` after checking it applies to `ctx`; returns the extended
/// iterate and the transformed context.
pub fn compose<C: Context>(it: &IteratedTransform, t: Transform, ctx: &C) -> Result<(IteratedTransform, C)> {
    let next = ctx.apply(&t)?;
    let mut out = it.clone();
    out.push(t)?;
    Ok((out, next))
}

/// A context together with the iterate that produced it from a start value.
#[derive(Clone, Debug)]
pub struct Trail<C> {
    pub current: C,
    pub transform: IteratedTransform,
}

impl<C: Context> Trail<C> {
    pub fn new(start: C) -> Self {
        let n = start.size();
        Trail { current: start, transform: IteratedTransform::new(n) }
    }

    pub fn apply(&mut self, t: Transform) -> Result<()> {
        self.current = self.current.apply(&t)?;
        self.transform.push(t)
    }

    /// Admissible FS-transformation on `(i, j)` with its forced sign.
    pub fn fs(&mut self, i: usize, j: usize) -> Result<()> {
        if !self.current.admissible(i, j) {
            return Err(Error::NotAdmissible { i, j });
        }
        let eps = self.current.fs_sign(i, j)?;
        self.apply(Transform::fst(i, j, eps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::connected_quivers;
    use crate::form::{verify_congruence, CongruenceCertificate, CongruenceKind};
    use alloc::vec;

    fn a2() -> Quiver {
        Quiver::new(3, vec![(0, 1), (1, 2)]).unwrap()
    }

    fn a2_form() -> UnitForm {
        UnitForm::from_rows(&[[1, -1], [0, 1]]).unwrap()
    }

    fn all_steps(n: usize) -> Vec<Transform> {
        let mut out = Vec::new();
        for i in 0..n {
            out.push(Transform::PointInversion(vec![i]));
            for j in 0..n {
                if i == j {
                    continue;
                }
                out.push(Transform::Swap { i, j });
                for eps in -1..=1 {
                    out.push(Transform::Flation { i, j, eps });
                    out.push(Transform::Fst { i, j, eps });
                }
            }
        }
        out
    }

    #[test]
    fn matrices() {
        assert!(Transform::Flation { i: 0, j: 1, eps: 0 }.matrix(2).unwrap().is_identity());
        // T⁺₁₂ sends e₁ to e₁ - e₂ and fixes e₂.
        let t = Transform::Flation { i: 0, j: 1, eps: 1 }.matrix(2).unwrap();
        assert_eq!(t, Matrix::from_rows(&[[1, 0], [-1, 1]]).unwrap());
        let e1 = Matrix::from_rows(&[[1], [0]]).unwrap();
        assert_eq!(t.mul(&e1).unwrap(), Matrix::from_rows(&[[1], [-1]]).unwrap());
        for t in all_steps(3) {
            let m = t.matrix(3).unwrap();
            assert_eq!(m.det().unwrap().magnitude(), &num_bigint::BigUint::from(1u8));
            assert!(m.mul(&t.inverse().matrix(3).unwrap()).unwrap().is_identity());
        }
        assert!(Transform::Swap { i: 0, j: 3 }.matrix(3).is_err());
        assert!(Transform::Swap { i: 1, j: 1 }.matrix(3).is_err());
    }

    #[test]
    fn form_flations() {
        let q = a2_form();
        let t = Transform::Flation { i: 0, j: 1, eps: -1 };
        let q1 = t.apply_to_form(&q).unwrap();
        assert_eq!(t.inverse().apply_to_form(&q1).unwrap(), q);
        let fst = Transform::fst(0, 1, -1);
        let q2 = fst.apply_to_form(&q).unwrap();
        let m = fst.matrix(2).unwrap();
        let mut cert = CongruenceCertificate::new(m, CongruenceKind::Weak);
        assert!(verify_congruence(&q2, &q, &mut cert).unwrap());
        let double = UnitForm::from_rows(&[[1, -2], [0, 1]]).unwrap();
        assert_eq!(
            Transform::Flation { i: 0, j: 1, eps: -1 }.apply_to_form(&double),
            Err(Error::NonUnitResult { i: 0, j: 1 })
        );
        assert!(matches!(
            Transform::Flation { i: 0, j: 1, eps: 1 }.apply_to_form(&q),
            Err(Error::WrongSign { .. })
        ));
    }

    #[test]
    fn quiver_flations() {
        let all = (0..2).collect::<Vec<_>>();
        let inv = Transform::PointInversion(all);
        assert_eq!(inv.apply_to_quiver(&inv.apply_to_quiver(&a2()).unwrap()).unwrap(), a2());
        let t = Transform::Flation { i: 0, j: 1, eps: -1 };
        let q1 = t.apply_to_quiver(&a2()).unwrap();
        assert_eq!(q1.arrow(0), (0, 2));
        let lhs = q1.incidence_matrix();
        let rhs = a2().incidence_matrix().mul(&t.matrix(2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let kron = Quiver::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            Transform::Flation { i: 0, j: 1, eps: 1 }.apply_to_quiver(&kron),
            Err(Error::ParallelArrows { i: 0, j: 1 })
        );
    }

    #[test]
    fn admissibility_examples() {
        let a3 = Quiver::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let f = a3.unit_form().unwrap();
        assert!(is_admissible(&f, 0, 1) && is_admissible_quiver(&a3, 0, 1));
        assert!(!is_admissible(&f, 0, 2));
        assert!(!is_admissible_quiver(&a3, 0, 2));
        let split = Quiver::new(5, vec![(0, 1), (3, 4), (1, 2)]).unwrap();
        assert!(is_admissible_quiver(&split, 0, 2));
        assert!(is_admissible(&split.unit_form().unwrap(), 0, 2));
        let star = Quiver::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let g = star.unit_form().unwrap();
        // Arrows of a star are pairwise adjacent, so only neighbours qualify.
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    let adm = is_admissible(&g, i, j);
                    assert_eq!(adm, i.abs_diff(j) == 1);
                    let fst = Transform::fst(i, j, g.coef_sign(i, j));
                    let m = fst.matrix(4).unwrap();
                    let prod = m.transpose().mul(g.tri_gram()).unwrap().mul(&m).unwrap();
                    assert_eq!(prod.is_upper_unitriangular(), adm);
                }
            }
        }
    }

    #[test]
    fn iterates_and_inverses() {
        let it = IteratedTransform::new(3);
        assert!(it.accumulated().is_identity());
        let mut it = IteratedTransform::new(3);
        it.push(Transform::fst(1, 0, -1)).unwrap();
        it.push(Transform::fst(0, 1, 1)).unwrap();
        assert!(it.accumulated().is_identity());
        assert_eq!(Transform::fst(2, 1, -1).inverse(), Transform::fst(1, 2, 1));
        assert!(IteratedTransform::new(2).invert().is_empty());
        let (it2, q2) = compose(&IteratedTransform::new(2), Transform::fst(1, 0, -1), &a2()).unwrap();
        assert_eq!(q2.incidence_matrix(), a2().incidence_matrix().mul(it2.accumulated()).unwrap());
    }

    // Exhaustive: every applicable elementary step on every connected quiver
    // with at most 4 arrows commutes with the incidence matrix and the form.
    #[test]
    fn quiver_and_form_steps_commute() {
        for k in 1..=4 {
            for quiver in connected_quivers(k) {
                let inc = quiver.incidence_matrix();
                let form = quiver.unit_form().unwrap();
                for t in all_steps(k) {
                    let Ok(q2) = t.apply_to_quiver(&quiver) else { continue };
                    let m = t.matrix(k).unwrap();
                    assert_eq!(q2.incidence_matrix(), inc.mul(&m).unwrap());
                    let expected = form.transform(&m).unwrap();
                    assert_eq!(q2.unit_form().unwrap(), expected);
                    assert_eq!(q2.n_vertices(), quiver.n_vertices());
                    assert!(q2.is_connected());
                    if let Transform::Flation { i, j, eps } | Transform::Fst { i, j, eps } = t {
                        // The quiver sign agrees with the sign of the form coefficient.
                        assert_eq!(eps, form.coef_sign(i, j));
                        assert_eq!(t.apply_to_form(&form).unwrap(), expected);
                        let fadm = is_admissible(&form, i, j);
                        assert_eq!(fadm, is_admissible_quiver(&quiver, i, j));
                        if fadm && matches!(t, Transform::Fst { .. }) {
                            let prod = m.transpose().mul(form.tri_gram()).unwrap().mul(&m).unwrap();
                            assert_eq!(&prod, expected.tri_gram());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn point_inversion_is_strong() {
        let q = Quiver::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let t = Transform::PointInversion(vec![0, 2]);
        let m = t.matrix(4).unwrap();
        let f = q.unit_form().unwrap();
        let prod = m.transpose().mul(f.tri_gram()).unwrap().mul(&m).unwrap();
        assert_eq!(&prod, t.apply_to_quiver(&q).unwrap().unit_form().unwrap().tri_gram());
    }

    #[test]
    fn trail_round_trip_on_trees() {
        for quiver in crate::enumerate::connected_quivers_of_corank(4, 0).into_iter().step_by(11) {
            let mut trail = Trail::new(quiver.clone());
            for (i, j) in [(0, 1), (2, 1), (3, 2), (1, 0)] {
                if trail.fs(i, j).is_err() {
                    continue;
                }
            }
            let back = trail.transform.invert();
            let mut q = trail.current.clone();
            for t in back.steps() {
                q = t.apply_to_quiver(&q).unwrap();
            }
            assert_eq!(q, quiver);
            assert!(trail.transform.accumulated().mul(back.accumulated()).unwrap().is_identity());
        }
    }
}
