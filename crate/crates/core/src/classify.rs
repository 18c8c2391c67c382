//! Strong Gram congruence of non-negative unit forms of Dynkin type A with
//! corank at most one, with verified certificates.

use alloc::vec;
use alloc::vec::Vec;

use crate::coxeter::coxeter_matrix;
use crate::error::{Error, Result};
use crate::form::{verify_congruence, CongruenceCertificate, CongruenceKind, UnitForm};
use crate::matrix::Matrix;
use crate::poly::{char_poly, Poly};
use crate::quiver::Quiver;
use crate::realize::{realize_as_quiver, Realization};
use crate::star::{canonical_one_star, canonical_star};

/// Strong congruence class of a connected form of corank at most one:
/// number of variables, corank, and the 1-star invariant `d` for corank one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReductionKey {
    pub n: usize,
    pub corank: usize,
    pub d: Option<usize>,
}

/// A connected form brought to its canonical star or 1-star: `Mᵀ Ǧ M`
/// equals the triangular Gram matrix of `canonical`.
#[derive(Clone, Debug)]
pub struct CanonicalReduction {
    pub form: UnitForm,
    pub realization: Realization,
    pub canonical: Quiver,
    pub to_canonical: Matrix,
    pub from_canonical: Matrix,
    pub key: ReductionKey,
    pub char_poly: Poly,
}

/// Reduces a connected non-negative form of type A and corank at most one.
pub fn reduce_connected(q: &UnitForm) -> Result<CanonicalReduction> {
    let corank = q.corank();
    if corank > 1 {
        return Err(Error::WrongCorank { expected: 1, found: corank });
    }
    let realization = realize_as_quiver(q)?;
    let (canonical, it, d) = if corank == 0 {
        let (star, it) = canonical_star(&realization.quiver)?;
        (star, it, None)
    } else {
        let (d, star, it) = canonical_one_star(&realization.quiver)?;
        (star, it, Some(d))
    };
    let to_canonical = it.accumulated().clone();
    let from_canonical = it.invert().accumulated().clone();
    let key = ReductionKey { n: q.n(), corank, d };
    let char_poly = coxeter_polynomial(q);
    Ok(CanonicalReduction { form: q.clone(), realization, canonical, to_canonical, from_canonical, key, char_poly })
}

/// Certificate `B = M_a M_b⁻¹` with `Ǧ_b = Bᵀ Ǧ_a B` for two reductions
/// reaching the same canonical quiver. The certificate is always verified.
pub fn certificate_between(a: &CanonicalReduction, b: &CanonicalReduction) -> Result<CongruenceCertificate> {
    if a.canonical != b.canonical {
        return Err(Error::Internal("reductions reach different canonical quivers"));
    }
    let mut cert = CongruenceCertificate::new(a.to_canonical.mul(&b.from_canonical)?, CongruenceKind::Strong);
    if !verify_congruence(&b.form, &a.form, &mut cert)? {
        return Err(Error::Internal("composed certificate fails verification"));
    }
    Ok(cert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Congruent,
    NotCongruent,
    /// Not decided: corank two or more, or an unmatched decomposition with
    /// equal Coxeter polynomials.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormInvariant {
    pub n: usize,
    pub corank: usize,
    /// 1-star invariant, for connected forms of corank one.
    pub d: Option<usize>,
    pub char_poly: Poly,
    /// Keys of the connected parts that could be reduced.
    pub parts: Vec<ReductionKey>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub verdict: Verdict,
    /// Present exactly when congruent; verified strong, `Ǧ_right = BᵀǦ_left B`.
    pub certificate: Option<CongruenceCertificate>,
    pub left: FormInvariant,
    pub right: FormInvariant,
}

impl ClassificationVerdict {
    pub fn congruent(&self) -> bool {
        self.verdict == Verdict::Congruent
    }
}

/// Coxeter polynomial of a unit form.
pub fn coxeter_polynomial(q: &UnitForm) -> Poly {
    char_poly(&coxeter_matrix(q)).expect("coxeter matrices are square")
}

fn invariant(q: &UnitForm, parts: &[CanonicalReduction]) -> FormInvariant {
    let keys = parts.iter().map(|p| p.key).collect();
    match parts {
        [whole] if whole.key.n == q.n() => FormInvariant {
            n: q.n(),
            corank: whole.key.corank,
            d: whole.key.d,
            char_poly: whole.char_poly.clone(),
            parts: keys,
        },
        _ => FormInvariant { n: q.n(), corank: q.corank(), d: None, char_poly: coxeter_polynomial(q), parts: keys },
    }
}

fn verdict_from(a: &CanonicalReduction, b: &CanonicalReduction) -> Result<ClassificationVerdict> {
    let (left, right) = (invariant(&a.form, core::slice::from_ref(a)), invariant(&b.form, core::slice::from_ref(b)));
    if a.key != b.key {
        return Ok(ClassificationVerdict { verdict: Verdict::NotCongruent, certificate: None, left, right });
    }
    let cert = certificate_between(a, b)?;
    Ok(ClassificationVerdict { verdict: Verdict::Congruent, certificate: Some(cert), left, right })
}

fn require(q: &UnitForm, corank: usize) -> Result<()> {
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    let found = q.corank();
    if found != corank {
        return Err(Error::WrongCorank { expected: corank, found });
    }
    Ok(())
}

fn dimension_verdict(q: &UnitForm, qp: &UnitForm) -> ClassificationVerdict {
    let bare = |f: &UnitForm| FormInvariant {
        n: f.n(),
        corank: f.corank(),
        d: None,
        char_poly: coxeter_polynomial(f),
        parts: Vec::new(),
    };
    ClassificationVerdict { verdict: Verdict::NotCongruent, certificate: None, left: bare(q), right: bare(qp) }
}

/// Connected positive forms of type A with the same number of variables
/// are always strongly congruent.
pub fn strong_congruence_positive(q: &UnitForm, qp: &UnitForm) -> Result<ClassificationVerdict> {
    require(q, 0)?;
    require(qp, 0)?;
    if q.n() != qp.n() {
        return Ok(dimension_verdict(q, qp));
    }
    verdict_from(&reduce_connected(q)?, &reduce_connected(qp)?)
}

/// Connected principal forms of type A are strongly congruent exactly when
/// their 1-star invariants `d` agree.
pub fn strong_congruence_principal(q: &UnitForm, qp: &UnitForm) -> Result<ClassificationVerdict> {
    require(q, 1)?;
    require(qp, 1)?;
    if q.n() != qp.n() {
        return Ok(dimension_verdict(q, qp));
    }
    verdict_from(&reduce_connected(q)?, &reduce_connected(qp)?)
}

/// Verdict for two already reduced connected forms.
pub fn classify_reduced(a: &CanonicalReduction, b: &CanonicalReduction) -> Result<ClassificationVerdict> {
    verdict_from(a, b)
}

/// Strong congruence of arbitrary non-negative unit forms whose connected
/// parts are of type A. Parts are matched by their reduction keys; the
/// certificate folds in the permutations that split each form into parts.
pub fn classify(q: &UnitForm, qp: &UnitForm) -> Result<ClassificationVerdict> {
    if q.n() != qp.n() {
        return Ok(dimension_verdict(q, qp));
    }
    if !q.is_non_negative() || !qp.is_non_negative() {
        return Err(Error::NotNonNegative);
    }
    let (_, p_left, parts_left) = q.decompose_disconnected();
    let (_, p_right, parts_right) = qp.decompose_disconnected();
    let reduce_all = |parts: &[UnitForm]| -> Result<(Vec<CanonicalReduction>, bool)> {
        let mut out = Vec::new();
        let mut complete = true;
        for part in parts {
            if part.corank() > 1 {
                complete = false;
                // Still reject parts of type D or E.
                realize_as_quiver(part)?;
                continue;
            }
            out.push(reduce_connected(part)?);
        }
        Ok((out, complete))
    };
    let (red_left, complete_left) = reduce_all(&parts_left)?;
    let (red_right, complete_right) = reduce_all(&parts_right)?;
    let left = invariant(q, &red_left);
    let right = invariant(qp, &red_right);
    let undecided = |left: FormInvariant, right: FormInvariant| {
        let verdict = if left.char_poly != right.char_poly { Verdict::NotCongruent } else { Verdict::Undecided };
        Ok(ClassificationVerdict { verdict, certificate: None, left, right })
    };

    if q == qp {
        let mut cert = CongruenceCertificate::new(Matrix::identity(q.n()), CongruenceKind::Strong);
        verify_congruence(qp, q, &mut cert)?;
        return Ok(ClassificationVerdict { verdict: Verdict::Congruent, certificate: Some(cert), left, right });
    }
    if !complete_left || !complete_right || red_left.len() != red_right.len() {
        return undecided(left, right);
    }

    // Match each right part with an unused left part of the same key.
    let mut used = vec![false; red_left.len()];
    let mut matched = Vec::with_capacity(red_right.len());
    for b in &red_right {
        match (0..red_left.len()).find(|&a| !used[a] && red_left[a].key == b.key) {
            Some(a) => {
                used[a] = true;
                matched.push(a);
            }
            None => return undecided(left, right),
        }
    }
    let offsets = |reds: &[CanonicalReduction]| -> Vec<usize> {
        reds.iter().scan(0, |acc, r| { let o = *acc; *acc += r.key.n; Some(o) }).collect()
    };
    let (off_left, off_right) = (offsets(&red_left), offsets(&red_right));
    let n = q.n();
    let mut block = Matrix::zeros(n, n);
    for (b, &a) in matched.iter().enumerate() {
        let part = certificate_between(&red_left[a], &red_right[b])?.b;
        for i in 0..part.rows() {
            for j in 0..part.cols() {
                block.set(off_left[a] + i, off_right[b] + j, part.get(i, j));
            }
        }
    }
    let b = p_left.mul(&block)?.mul(&p_right.transpose())?;
    let mut cert = CongruenceCertificate::new(b, CongruenceKind::Strong);
    if !verify_congruence(qp, q, &mut cert)? {
        return Err(Error::Internal("assembled certificate fails verification"));
    }
    Ok(ClassificationVerdict { verdict: Verdict::Congruent, certificate: Some(cert), left, right })
}
