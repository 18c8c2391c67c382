//! Loop-less quivers with totally ordered arrows.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::form::{Bigraph, UnitForm};
use crate::matrix::Matrix;

/// Arrow as `(source, target)`, 0-based vertices.
pub type Arrow = (usize, usize);

/// Finite quiver on vertices `0..n_vertices`; arrow identity is its position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    n_vertices: usize,
    arrows: Vec<Arrow>,
}

/// Sequence of arrow traversals from `start`; `+1` walks source to target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: usize,
    pub steps: Vec<(usize, i8)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub connected: bool,
    pub tree: bool,
    pub one_tree: bool,
}

impl Quiver {
    pub fn new(n_vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        for (k, &(s, t)) in arrows.iter().enumerate() {
            if s >= n_vertices {
                return Err(Error::Index { index: s, bound: n_vertices });
            }
            if t >= n_vertices {
                return Err(Error::Index { index: t, bound: n_vertices });
            }
            if s == t {
                return Err(Error::Loop { arrow: k });
            }
        }
        Ok(Quiver { n_vertices, arrows })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> Arrow {
        self.arrows[i]
    }

    pub fn source(&self, i: usize) -> usize {
        self.arrows[i].0
    }

    pub fn target(&self, i: usize) -> usize {
        self.arrows[i].1
    }

    /// `σ(v, i)`: +1 at the source of `i`, -1 at its target, else 0.
    pub fn sigma(&self, v: usize, i: usize) -> i8 {
        let (s, t) = self.arrows[i];
        if v == s {
            1
        } else if v == t {
            -1
        } else {
            0
        }
    }

    pub fn is_incident(&self, v: usize, i: usize) -> bool {
        let (s, t) = self.arrows[i];
        v == s || v == t
    }

    /// Endpoint of `i` opposite to `v`.
    pub fn other_end(&self, i: usize, v: usize) -> usize {
        let (s, t) = self.arrows[i];
        if v == s { t } else { s }
    }

    /// Same pair of endpoints, in either direction.
    pub fn are_parallel(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.arrows[i];
        let (c, d) = self.arrows[j];
        (a == c && b == d) || (a == d && b == c)
    }

    /// Distinct arrows sharing at least one endpoint.
    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.arrows[i];
        i != j && (self.is_incident(a, j) || self.is_incident(b, j))
    }

    /// `⟨i, j⟩ = I_iᵀ I_j`.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        let (si, ti) = self.arrows[i];
        let (sj, tj) = self.arrows[j];
        i64::from(si == sj) - i64::from(si == tj) - i64::from(ti == sj) + i64::from(ti == tj)
    }

    pub fn incidence_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n_vertices, self.arrows.len(), |v, i| i64::from(self.sigma(v, i)))
    }

    /// `Ǧ_Q` with `(i, j)` entry `⟨i, j⟩` above the diagonal.
    pub fn unit_form(&self) -> Result<UnitForm> {
        let n = self.arrows.len();
        if n == 0 {
            return Err(Error::Dimension { expected: 1, found: 0 });
        }
        UnitForm::new(Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            core::cmp::Ordering::Less => self.pairing(i, j),
            core::cmp::Ordering::Equal => 1,
            core::cmp::Ordering::Greater => 0,
        }))
    }

    /// Signed line multigraph on the arrows.
    ///
    /// Each common endpoint `v` of arrows `i < j` contributes an edge of
    /// sign `-σ(v, i)σ(v, j)`, so parallel arrows give a double edge.
    pub fn incidence_bigraph(&self) -> Bigraph {
        let n = self.arrows.len();
        let adj = Matrix::from_fn(n, n, |i, j| {
            if i >= j {
                return 0;
            }
            let (s, t) = self.arrows[i];
            [s, t]
                .iter()
                .filter(|&&v| self.is_incident(v, j))
                .map(|&v| -i64::from(self.sigma(v, i)) * i64::from(self.sigma(v, j)))
                .sum()
        });
        Bigraph::new(adj).expect("strictly upper triangular by construction")
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex sets of the underlying graph's components, by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n_vertices);
        for &(s, t) in &self.arrows {
            uf.union(s, t);
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); self.n_vertices];
        for v in 0..self.n_vertices {
            by_root[uf.find(v)].push(v);
        }
        let mut comps: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        comps.sort_unstable_by_key(|c| c[0]);
        comps
    }

    pub fn shape(&self) -> Shape {
        let connected = self.is_connected();
        let (m, a) = (self.n_vertices, self.arrows.len());
        Shape { connected, tree: connected && a + 1 == m, one_tree: connected && a == m }
    }

    /// `|Q₁| - |Q₀| + 1`, defined for connected quivers.
    pub fn corank(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        (self.arrows.len() + 1).checked_sub(self.n_vertices).ok_or(Error::Internal("connected quiver with too few arrows"))
    }

    /// Path `0 → 1 → … → n` followed by `c` arrows `n → 0`.
    pub fn canonical_extension(n: usize, c: usize) -> Quiver {
        let mut arrows: Vec<Arrow> = (0..n).map(|k| (k, k + 1)).collect();
        arrows.extend((0..c).map(|_| (n, 0)));
        Quiver { n_vertices: n + 1, arrows }
    }

    /// `Σ ε_t I_{i_t}`, which telescopes to `e_start - e_end`.
    pub fn walk_vector(&self, w: &Walk) -> Result<Vec<i64>> {
        let end = self.walk_end(w)?;
        let mut x = vec![0i64; self.n_vertices];
        for &(i, eps) in &w.steps {
            let (s, t) = self.arrows[i];
            x[s] += i64::from(eps);
            x[t] -= i64::from(eps);
        }
        let mut expected = vec![0i64; self.n_vertices];
        expected[w.start] += 1;
        expected[end] -= 1;
        if x != expected {
            return Err(Error::Internal("walk vector does not telescope"));
        }
        Ok(x)
    }

    /// Final vertex of a walk, checking that consecutive steps chain.
    pub fn walk_end(&self, w: &Walk) -> Result<usize> {
        if w.start >= self.n_vertices {
            return Err(Error::VertexNotInQuiver { vertex: w.start });
        }
        let mut v = w.start;
        for (k, &(i, eps)) in w.steps.iter().enumerate() {
            if i >= self.arrows.len() {
                return Err(Error::Index { index: i, bound: self.arrows.len() });
            }
            let (s, t) = self.arrows[i];
            v = match eps {
                1 if v == s => t,
                -1 if v == t => s,
                _ => return Err(Error::InvalidWalk { step: k }),
            };
        }
        Ok(v)
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel_vertices(&self, perm: &[usize]) -> Quiver {
        Quiver {
            n_vertices: self.n_vertices,
            arrows: self.arrows.iter().map(|&(s, t)| (perm[s], perm[t])).collect(),
        }
    }

    /// Recovers a quiver from a matrix whose columns have the shape `e_s - e_t`.
    pub fn from_incidence(m: &Matrix) -> Result<Quiver> {
        let mut arrows = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let mut s = None;
            let mut t = None;
            for i in 0..m.rows() {
                match m.get_i64(i, j) {
                    Some(0) => {}
                    Some(1) if s.is_none() => s = Some(i),
                    Some(-1) if t.is_none() => t = Some(i),
                    _ => return Err(Error::ColumnNotIncidence { column: j }),
                }
            }
            match (s, t) {
                (Some(s), Some(t)) => arrows.push((s, t)),
                _ => return Err(Error::ColumnNotIncidence { column: j }),
            }
        }
        Quiver::new(m.rows(), arrows)
    }

    pub(crate) fn arrows_mut(&mut self) -> &mut Vec<Arrow> {
        &mut self.arrows
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
