//! Realization of connected non-negative unit forms of Dynkin type A as
//! incidence forms of quivers, and flation sequences to the canonical
//! extended path `0 → 1 → … → n` plus `c` arrows `n → 0`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::form::{verify_congruence, CongruenceCertificate, CongruenceKind, UnitForm};
use crate::quiver::{Arrow, Quiver};
use crate::transform::{quiver_flation_sign, IteratedTransform, Trail, Transform};

/// Default bound on visited search nodes per realization.
pub const REALIZATION_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    /// Quiver with `unit_form() == q`, labeled so that applying
    /// `to_canonical` yields `Quiver::canonical_extension(dynkin_n, corank)`.
    pub quiver: Quiver,
    pub to_canonical: IteratedTransform,
    pub dynkin_n: usize,
    pub corank: usize,
    /// Nodes visited by the quiver search.
    pub visited: u64,
}

fn pairing(a: Arrow, b: Arrow) -> i64 {
    let d = |v: usize, (s, t): Arrow| i64::from(v == s) - i64::from(v == t);
    d(a.0, b) - d(a.1, b)
}

struct Search<'a> {
    coef: &'a [Vec<i64>],
    order: &'a [usize],
    parent: &'a [usize],
    vertices: usize,
    assigned: Vec<Option<Arrow>>,
    used: usize,
    visited: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, idx: usize) -> Result<bool> {
        if idx == self.order.len() {
            return Ok(self.used == self.vertices);
        }
        let a = self.order[idx];
        let (ps, pt) = self.assigned[self.parent[a]].expect("parents come first");
        for x in [ps, pt] {
            let fresh = self.used < self.vertices;
            for y in 0..self.used + usize::from(fresh) {
                if y == x {
                    continue;
                }
                for arrow in [(x, y), (y, x)] {
                    self.visited += 1;
                    if self.visited > self.budget {
                        return Err(Error::SearchBudget { budget: self.budget });
                    }
                    let fits = self.order[..idx].iter().all(|&r| {
                        pairing(arrow, self.assigned[r].expect("placed")) == self.coef[a][r]
                    });
                    if !fits {
                        continue;
                    }
                    let before = self.used;
                    self.used = self.used.max(y + 1);
                    self.assigned[a] = Some(arrow);
                    if self.run(idx + 1)? {
                        return Ok(true);
                    }
                    self.assigned[a] = None;
                    self.used = before;
                }
            }
        }
        Ok(false)
    }
}

/// Quiver whose incidence form is exactly `q`, found by backtracking over
/// arrow placements in breadth-first order of the coupling graph. Returns
/// the quiver and the number of visited nodes.
pub fn find_quiver(q: &UnitForm, budget: u64) -> Result<(Quiver, u64)> {
    let k = q.n();
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    if !q.is_non_negative() {
        return Err(Error::NotNonNegative);
    }
    let mut coef = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let c = q.coef(i, j);
                match i64::try_from(&c) {
                    Ok(v) if v.abs() <= 2 => coef[i][j] = v,
                    _ => return Err(Error::NotTypeA { states: 0 }),
                }
            }
        }
    }
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; k];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let a = order[head];
        head += 1;
        for b in 0..k {
            if !seen[b] && coef[a][b] != 0 {
                seen[b] = true;
                parent[b] = a;
                order.push(b);
            }
        }
    }
    let vertices = q.rank_corank().0 + 1;
    let mut assigned = vec![None; k];
    assigned[0] = Some((0, 1));
    let mut search =
        Search { coef: &coef, order: &order, parent: &parent, vertices, assigned, used: 2, visited: 1, budget };
    if !search.run(1)? {
        return Err(Error::NotTypeA { states: search.visited });
    }
    let arrows = search.assigned.into_iter().map(|a| a.expect("all placed")).collect();
    Ok((Quiver::new(vertices, arrows)?, search.visited))
}

/// Breadth-first search for slides of the endpoints of arrow `k` along the
/// other arrows until `goal(x, y)` holds for its unordered endpoints.
fn slide_arrow(trail: &mut Trail<Quiver>, k: usize, goal: impl Fn(usize, usize) -> bool) -> Result<()> {
    let q = &trail.current;
    let nv = q.n_vertices();
    let start = q.arrow(k);
    let key = |(x, y): Arrow| x * nv + y;
    let mut prev: Vec<Option<(Arrow, usize)>> = vec![None; nv * nv];
    let mut seen = vec![false; nv * nv];
    seen[key(start)] = true;
    let mut queue = VecDeque::from([start]);
    let mut found = None;
    while let Some((x, y)) = queue.pop_front() {
        if goal(x, y) {
            found = Some((x, y));
            break;
        }
        for j in (0..q.n_arrows()).filter(|&j| j != k) {
            for (moving, fixed, is_source) in [(x, y, true), (y, x, false)] {
                if !q.is_incident(moving, j) || q.is_incident(fixed, j) {
                    continue;
                }
                let moved = q.other_end(j, moving);
                let next = if is_source { (moved, fixed) } else { (fixed, moved) };
                if !seen[key(next)] {
                    seen[key(next)] = true;
                    prev[key(next)] = Some(((x, y), j));
                    queue.push_back(next);
                }
            }
        }
    }
    let mut at = found.ok_or(Error::Internal("arrow cannot reach its place on the path"))?;
    let mut along = Vec::new();
    while let Some((before, j)) = prev[key(at)] {
        along.push(j);
        at = before;
    }
    for j in along.into_iter().rev() {
        let eps = quiver_flation_sign(&trail.current, k, j)?;
        trail.apply(Transform::Flation { i: k, j, eps })?;
    }
    Ok(())
}

/// Flations (followed by one point inversion) taking a connected quiver to
/// the canonical extended path, and the vertex renaming `perm` with
/// `perm[v]` the path position of `v`.
pub fn flations_to_canonical(q: &Quiver) -> Result<(IteratedTransform, Vec<usize>)> {
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = q.n_vertices() - 1;
    let k_total = q.n_arrows();
    let mut trail = Trail::new(q.clone());
    let (a, b) = q.arrow(0);
    let mut path = vec![a, b];
    let mut on_path = vec![false; q.n_vertices()];
    on_path[a] = true;
    on_path[b] = true;
    for k in 1..n {
        let end = path[k];
        let op = on_path.clone();
        slide_arrow(&mut trail, k, |x, y| (x == end && !op[y]) || (y == end && !op[x]))?;
        let next = trail.current.other_end(k, end);
        path.push(next);
        on_path[next] = true;
    }
    let (first, last) = (path[0], path[n]);
    for k in n..k_total {
        slide_arrow(&mut trail, k, |x, y| (x == first && y == last) || (x == last && y == first))?;
    }
    let cur = &trail.current;
    let reversed: Vec<usize> = (0..k_total)
        .filter(|&k| if k < n { cur.source(k) != path[k] } else { cur.source(k) != last })
        .collect();
    if !reversed.is_empty() {
        trail.apply(Transform::PointInversion(reversed))?;
    }
    let mut perm = vec![0; q.n_vertices()];
    for (pos, &v) in path.iter().enumerate() {
        perm[v] = pos;
    }
    if trail.current.relabel_vertices(&perm) != Quiver::canonical_extension(n, k_total - n) {
        return Err(Error::Internal("flations did not reach the canonical extension"));
    }
    Ok((trail.transform, perm))
}

/// Realizes `q` as the incidence form of a quiver and finds the flation
/// sequence to the canonical extended path.
pub fn realize_as_quiver(q: &UnitForm) -> Result<Realization> {
    realize_with_budget(q, REALIZATION_BUDGET)
}

pub fn realize_with_budget(q: &UnitForm, budget: u64) -> Result<Realization> {
    let (rank, corank) = q.rank_corank();
    let target = Quiver::canonical_extension(rank, corank);
    if q.is_non_negative() && target.unit_form()? == *q {
        let to_canonical = IteratedTransform::new(q.n());
        return Ok(Realization { quiver: target, to_canonical, dynkin_n: rank, corank, visited: 0 });
    }
    let (found, visited) = find_quiver(q, budget)?;
    let (to_canonical, perm) = flations_to_canonical(&found)?;
    let quiver = found.relabel_vertices(&perm);
    if quiver.unit_form()? != *q {
        return Err(Error::Internal("realized quiver has a different unit form"));
    }
    let dynkin_n = quiver.n_vertices() - 1;
    let mut cert = CongruenceCertificate::new(to_canonical.accumulated().clone(), CongruenceKind::Weak);
    if !verify_congruence(&target.unit_form()?, q, &mut cert)? {
        return Err(Error::Internal("flation sequence is not a weak congruence"));
    }
    Ok(Realization { quiver, to_canonical, dynkin_n, corank, visited })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{connected_quivers, random_connected_quiver};

    fn check(q: &Quiver) -> Realization {
        let f = q.unit_form().unwrap();
        let r = realize_as_quiver(&f).unwrap();
        assert_eq!(r.quiver.unit_form().unwrap(), f);
        let n_c = Quiver::canonical_extension(r.dynkin_n, r.corank);
        // I(Q) · M(T) = I(canonical extension).
        assert_eq!(r.quiver.incidence_matrix().mul(r.to_canonical.accumulated()).unwrap(), n_c.incidence_matrix());
        assert_eq!(r.corank, q.corank().unwrap());
        r
    }

    #[test]
    fn canonical_extension_is_a_fixed_point() {
        for (n, c) in [(1, 0), (3, 0), (2, 1), (4, 2)] {
            let a = Quiver::canonical_extension(n, c);
            let r = check(&a);
            assert!(r.to_canonical.is_empty());
            assert_eq!(r.quiver, a);
        }
    }

    #[test]
    fn round_trip_exhaustive() {
        for k in 1..=5 {
            for q in connected_quivers(k) {
                let r = check(&q);
                assert!(r.visited <= REALIZATION_BUDGET);
            }
        }
    }

    #[test]
    fn round_trip_random_larger() {
        let mut state = 5u64;
        let mut pick = |n: usize| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % n as u64) as usize
        };
        for _ in 0..100 {
            let m = 2 + pick(8);
            let k = m - 1 + pick(3);
            check(&random_connected_quiver(m, k, &mut pick));
        }
    }

    // Positive forms of type D have no quiver realization.
    #[test]
    fn d4_is_not_type_a() {
        let d4 = UnitForm::from_rows(&[[1, -1, -1, -1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
        assert!(d4.is_positive());
        assert!(matches!(realize_as_quiver(&d4), Err(Error::NotTypeA { .. })));
        let d5 = UnitForm::from_rows(&[
            [1, -1, 0, 0, 0],
            [0, 1, -1, 0, 0],
            [0, 0, 1, -1, -1],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1],
        ])
        .unwrap();
        assert!(matches!(realize_as_quiver(&d5), Err(Error::NotTypeA { .. })));
    }

    #[test]
    fn rejects_other_inputs() {
        let split = UnitForm::identity(2);
        assert_eq!(realize_as_quiver(&split), Err(Error::NotConnected));
        let neg = UnitForm::from_rows(&[[1, -3], [0, 1]]).unwrap();
        assert_eq!(realize_as_quiver(&neg), Err(Error::NotNonNegative));
        let a4 = crate::star::star_quiver(6).unit_form().unwrap();
        assert_eq!(realize_with_budget(&a4, 2), Err(Error::SearchBudget { budget: 2 }));
    }
}
