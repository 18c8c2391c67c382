//! Integral unit forms and their Gram matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Integral quadratic form `q(x) = xᵀ Ǧ x` with unit diagonal, stored by
/// its upper triangular Gram matrix `Ǧ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitForm {
    tri: Matrix,
}

impl UnitForm {
    pub fn new(tri_gram: Matrix) -> Result<Self> {
        if !tri_gram.is_square() {
            return Err(Error::NotSquare { rows: tri_gram.rows(), cols: tri_gram.cols() });
        }
        if tri_gram.rows() == 0 {
            return Err(Error::Dimension { expected: 1, found: 0 });
        }
        for i in 0..tri_gram.rows() {
            for j in 0..=i {
                let ok = if i == j { tri_gram.get_i64(i, i) == Some(1) } else { tri_gram.is_zero_at(i, j) };
                if !ok {
                    return Err(Error::NotUnitForm { row: i, col: j });
                }
            }
        }
        Ok(UnitForm { tri: tri_gram })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    /// The form whose upper triangle is `Ǧ'(i, j) = S(i, j) + S(j, i)` for
    /// a square `S`; the diagonal of `S` must already be 1.
    pub fn retriangularize(s: &Matrix) -> Result<Self> {
        let n = s.rows();
        let tri = Matrix::from_big_fn(n, n, |i, j| match i.cmp(&j) {
            core::cmp::Ordering::Less => s.get(i, j) + s.get(j, i),
            core::cmp::Ordering::Equal => s.get(i, i),
            core::cmp::Ordering::Greater => BigInt::zero(),
        });
        Self::new(tri)
    }

    /// The form with `Ǧ = Id`.
    pub fn identity(n: usize) -> Self {
        UnitForm { tri: Matrix::identity(n) }
    }

    pub fn n(&self) -> usize {
        self.tri.rows()
    }

    pub fn tri_gram(&self) -> &Matrix {
        &self.tri
    }

    /// `G = Ǧ + Ǧᵀ`.
    pub fn symmetric_gram(&self) -> Matrix {
        self.tri.add(&self.tri.transpose()).expect("square")
    }

    /// Coefficient of `x_i x_j`, symmetric in `i` and `j`.
    pub fn coef(&self, i: usize, j: usize) -> BigInt {
        self.tri.get(i.min(j), i.max(j))
    }

    pub fn coef_sign(&self, i: usize, j: usize) -> i8 {
        self.tri.signum(i.min(j), i.max(j))
    }

    pub fn evaluate(&self, x: &[i64]) -> Result<BigInt> {
        self.check_len(x.len())?;
        let n = self.n();
        let mut total = BigInt::zero();
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in i..n {
                if x[j] != 0 {
                    total += self.tri.get(i, j) * x[i] * x[j];
                }
            }
        }
        Ok(total)
    }

    /// `q(x|y) = xᵀ G y`.
    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> Result<BigInt> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let g = self.symmetric_gram();
        let mut total = BigInt::zero();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if x[i] != 0 && y[j] != 0 {
                    total += g.get(i, j) * x[i] * y[j];
                }
            }
        }
        Ok(total)
    }

    /// `(rank, corank)` of the symmetric Gram matrix.
    pub fn rank_corank(&self) -> (usize, usize) {
        let r = self.symmetric_gram().rank();
        (r, self.n() - r)
    }

    pub fn corank(&self) -> usize {
        self.rank_corank().1
    }

    /// Exact positive semidefiniteness test of `G`.
    ///
    /// Symmetric elimination: a positive diagonal entry is used as pivot and
    /// the Schur complement is taken in scaled integer form; a negative
    /// diagonal entry refutes; a zero diagonal entry forces its whole row to
    /// vanish, after which it is dropped.
    pub fn is_non_negative(&self) -> bool {
        let g = self.symmetric_gram();
        let mut a: Vec<Vec<BigInt>> = g.to_rows();
        let mut live: Vec<usize> = (0..self.n()).collect();
        let mut prev = BigInt::from(1);
        while !live.is_empty() {
            if live.iter().any(|&i| a[i][i].is_negative()) {
                return false;
            }
            if let Some(pos) = live.iter().position(|&i| a[i][i].is_zero()) {
                let z = live[pos];
                if live.iter().any(|&j| !a[z][j].is_zero()) {
                    return false;
                }
                live.remove(pos);
                continue;
            }
            let p = live.remove(0);
            let pivot = a[p][p].clone();
            let row: Vec<BigInt> = live.iter().map(|&j| a[p][j].clone()).collect();
            // Bareiss step: every entry is a bordered minor, so the division is exact.
            for (s, &i) in live.iter().enumerate() {
                for (t, &j) in live.iter().enumerate() {
                    let v = (&pivot * &a[i][j] - &row[s] * &row[t]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = pivot;
        }
        true
    }

    pub fn is_positive(&self) -> bool {
        self.is_non_negative() && self.corank() == 0
    }

    /// Connectivity of the graph with an edge `{i, j}` whenever `q_ij != 0`.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Index sets of connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut stack = vec![start];
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in 0..n {
                    if w != v && comp[w] == usize::MAX && self.coef_sign(v, w) != 0 {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn direct_sum(&self, other: &UnitForm) -> UnitForm {
        UnitForm { tri: Matrix::block_diagonal(&[&self.tri, &other.tri]) }
    }

    /// Restriction to the given indices, kept in the given order.
    pub fn restrict(&self, indices: &[usize]) -> UnitForm {
        let tri = self.tri.select(indices, indices);
        UnitForm::retriangularize(&tri).expect("restriction of a unit form")
    }

    /// Splits into connected parts.
    ///
    /// Returns `ρ` as a vector with `ρ[i]` the new position of index `i`,
    /// the permutation matrix `P` of `ρ⁻¹` (column `k` is `e_{ρ⁻¹(k)}`),
    /// and the parts, so that `PᵀǦP` is block diagonal. Parts appear in
    /// order of their smallest index and keep their internal order.
    pub fn decompose_disconnected(&self) -> (Vec<usize>, Matrix, Vec<UnitForm>) {
        let comps = self.components();
        let order: Vec<usize> = comps.iter().flatten().copied().collect();
        let n = self.n();
        let mut rho = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            rho[i] = k;
        }
        let p = Matrix::from_fn(n, n, |i, k| i64::from(order[k] == i));
        let parts = comps.iter().map(|c| self.restrict(c)).collect();
        (rho, p, parts)
    }

    /// `qB`: the form with `Ǧ = retriangularized BᵀǦB`. This is a unit form
    /// precisely when `BᵀGB` has diagonal 2.
    pub fn transform(&self, b: &Matrix) -> Result<UnitForm> {
        if b.rows() != self.n() || !b.is_square() {
            return Err(Error::Dimension { expected: self.n(), found: b.rows() });
        }
        let s = b.transpose().mul(&self.tri)?.mul(b)?;
        UnitForm::retriangularize(&s)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.n() { Ok(()) } else { Err(Error::Dimension { expected: self.n(), found: len }) }
    }
}

/// Loop-less signed multigraph with `Ǧ = Id - tri_adj`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bigraph {
    tri_adj: Matrix,
}

impl Bigraph {
    pub fn new(tri_adj: Matrix) -> Result<Self> {
        if !tri_adj.is_square() {
            return Err(Error::NotSquare { rows: tri_adj.rows(), cols: tri_adj.cols() });
        }
        for i in 0..tri_adj.rows() {
            for j in 0..=i {
                if !tri_adj.is_zero_at(i, j) {
                    return Err(Error::NotUnitForm { row: i, col: j });
                }
            }
        }
        Ok(Bigraph { tri_adj })
    }

    pub fn n_vertices(&self) -> usize {
        self.tri_adj.rows()
    }

    /// Signed multiplicity of the edges between `i < j`.
    pub fn tri_adj(&self) -> &Matrix {
        &self.tri_adj
    }

    pub fn to_unit_form(&self) -> UnitForm {
        let n = self.n_vertices();
        UnitForm { tri: Matrix::identity(n).sub(&self.tri_adj).expect("square") }
    }

    pub fn from_unit_form(q: &UnitForm) -> Bigraph {
        let n = q.n();
        Bigraph { tri_adj: Matrix::identity(n).sub(q.tri_gram()).expect("square") }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CongruenceKind {
    Weak,
    Strong,
}

/// Claimed witness `B` of `q' = qB`; `verified` is set by [`verify_congruence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCertificate {
    pub b: Matrix,
    pub kind: CongruenceKind,
    pub verified: bool,
}

impl CongruenceCertificate {
    pub fn new(b: Matrix, kind: CongruenceKind) -> Self {
        CongruenceCertificate { b, kind, verified: false }
    }
}

/// Checks `Ǧ_{q'} = BᵀǦ_qB` (strong) or `G_{q'} = BᵀG_qB` (weak), and
/// `|det B| = 1`. Records the outcome in `cert.verified`.
pub fn verify_congruence(qp: &UnitForm, q: &UnitForm, cert: &mut CongruenceCertificate) -> Result<bool> {
    let n = q.n();
    if qp.n() != n {
        return Err(Error::Dimension { expected: n, found: qp.n() });
    }
    if cert.b.rows() != n || cert.b.cols() != n {
        return Err(Error::Dimension { expected: n, found: cert.b.rows() });
    }
    let bt = cert.b.transpose();
    let ok = match cert.kind {
        CongruenceKind::Strong => bt.mul(q.tri_gram())?.mul(&cert.b)? == *qp.tri_gram(),
        CongruenceKind::Weak => bt.mul(&q.symmetric_gram())?.mul(&cert.b)? == qp.symmetric_gram(),
    };
    let ok = ok && cert.b.det()?.abs() == BigInt::from(1);
    cert.verified = ok;
    Ok(ok)
}
