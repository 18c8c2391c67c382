//! Reduction of trees to maximal stars and of 1-trees to maximal 1-stars by
//! admissible iterated FS-transformations.
//!
//! The recursive procedures work on a subset of arrow positions inside a
//! larger quiver. Every arrow outside the subset that touches it is larger
//! than all arrows of the subset, so admissibility inside the subset implies
//! admissibility in the whole quiver; [`Trail::fs`] re-checks it anyway.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quiver::{Quiver, UnionFind};
use crate::transform::{is_admissible_quiver, quiver_flation_sign, IteratedTransform, Trail, Transform};

/// Shape `S̃^{ℓ,m}_n` of a maximal 1-star: `n + 1` arrows, the parallel pair
/// at 0-based positions `ell < m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OneStarShape {
    pub n: usize,
    pub ell: usize,
    pub m: usize,
}

impl OneStarShape {
    pub fn new(n: usize, ell: usize, m: usize) -> Result<Self> {
        if ell < m && m <= n {
            Ok(OneStarShape { n, ell, m })
        } else {
            Err(Error::InvalidShape)
        }
    }

    /// Class invariant `min(m - ℓ, n + 1 - (m - ℓ))`.
    pub fn d(&self) -> usize {
        let gap = self.m - self.ell;
        gap.min(self.n + 1 - gap)
    }

    /// Representative of the class: parallel pair at the last two
    /// positions `n - d` and `n`.
    pub fn canonical(&self) -> OneStarShape {
        OneStarShape { n: self.n, ell: self.n - self.d(), m: self.n }
    }

    /// Shape after one recentering step.
    pub fn step(&self) -> OneStarShape {
        if self.ell > 0 {
            OneStarShape { n: self.n, ell: self.ell - 1, m: self.m - 1 }
        } else {
            OneStarShape { n: self.n, ell: self.m - 1, m: self.n }
        }
    }
}

/// Maximal star with `n` arrows `0 → t + 1`.
pub fn star_quiver(n: usize) -> Quiver {
    Quiver::new(n + 1, (0..n).map(|t| (0, t + 1)).collect()).expect("star is loop-less")
}

/// Maximal 1-star of the given shape with every arrow leaving vertex 0;
/// leaves are numbered in arrow order and arrow `m` shares the leaf of `ell`.
pub fn one_star_quiver(shape: OneStarShape) -> Quiver {
    let mut arrows = Vec::with_capacity(shape.n + 1);
    let mut next = 1;
    let mut leaf_of_ell = 0;
    for t in 0..=shape.n {
        if t == shape.m {
            arrows.push((0, leaf_of_ell));
            continue;
        }
        if t == shape.ell {
            leaf_of_ell = next;
        }
        arrows.push((0, next));
        next += 1;
    }
    Quiver::new(shape.n + 1, arrows).expect("1-star is loop-less")
}

fn vertices_of(q: &Quiver, arrows: &[usize]) -> Vec<usize> {
    let mut vs: Vec<usize> = arrows.iter().flat_map(|&i| [q.source(i), q.target(i)]).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

fn centers(q: &Quiver, arrows: &[usize]) -> Vec<usize> {
    vertices_of(q, arrows).into_iter().filter(|&v| arrows.iter().all(|&i| q.is_incident(v, i))).collect()
}

fn is_center(q: &Quiver, arrows: &[usize], v: usize) -> bool {
    arrows.iter().all(|&i| q.is_incident(v, i))
}

/// Arrows of `rest` in the component of `a`, and those in the component of `b`.
fn split(q: &Quiver, rest: &[usize], a: usize, b: usize) -> (Vec<usize>, Vec<usize>, bool) {
    let mut uf = UnionFind::new(q.n_vertices());
    for &i in rest {
        uf.union(q.source(i), q.target(i));
    }
    let (ra, rb) = (uf.find(a), uf.find(b));
    let side_a = rest.iter().copied().filter(|&i| uf.find(q.source(i)) == ra).collect();
    let side_b = rest.iter().copied().filter(|&i| uf.find(q.source(i)) == rb).collect();
    (side_a, side_b, ra == rb)
}

fn check_vertex(q: &Quiver, arrows: &[usize], v: usize) -> Result<()> {
    if vertices_of(q, arrows).binary_search(&v).is_ok() { Ok(()) } else { Err(Error::VertexNotInQuiver { vertex: v }) }
}

/// Moves the center of a maximal star (on `arrows`) to `v` by repeating
/// `FS_{2,1} FS_{3,2} … FS_{n,n-1}`; each round moves the center to the leaf
/// of the first arrow.
fn recenter_star_in(trail: &mut Trail<Quiver>, arrows: &[usize], v: usize) -> Result<()> {
    check_vertex(&trail.current, arrows, v)?;
    for _ in 0..=arrows.len() + 1 {
        if is_center(&trail.current, arrows, v) {
            return Ok(());
        }
        for t in 1..arrows.len() {
            trail.fs(arrows[t], arrows[t - 1])?;
        }
    }
    Err(Error::Internal("star recentering did not reach the requested vertex"))
}

fn tree_to_star_in(trail: &mut Trail<Quiver>, arrows: &[usize], v: usize) -> Result<()> {
    check_vertex(&trail.current, arrows, v)?;
    if arrows.len() == 1 {
        return Ok(());
    }
    let top = arrows[arrows.len() - 1];
    let rest = &arrows[..arrows.len() - 1];
    let (a, b) = trail.current.arrow(top);
    let (side_a, side_b, _) = split(&trail.current, rest, a, b);
    if side_b.is_empty() {
        tree_to_star_in(trail, &side_a, a)?;
    } else if side_a.is_empty() {
        tree_to_star_in(trail, &side_b, b)?;
    } else {
        // The second largest arrow becomes pendant at the split vertex and is
        // slid across the largest one, which is then pendant itself.
        let second = rest[rest.len() - 1];
        if side_a.contains(&second) {
            tree_to_star_in(trail, &side_a, a)?;
        } else {
            tree_to_star_in(trail, &side_b, b)?;
        }
        trail.fs(second, top)?;
        return tree_to_star_in(trail, arrows, v);
    }
    recenter_star_in(trail, arrows, v)
}

/// Center and 0-based shape of a maximal 1-star on the given arrows.
fn one_star_in(q: &Quiver, arrows: &[usize]) -> Option<(usize, OneStarShape)> {
    let cs = centers(q, arrows);
    let center = *cs.first()?;
    if vertices_of(q, arrows).len() != arrows.len() {
        return None;
    }
    let mut pair = None;
    for x in 0..arrows.len() {
        for y in x + 1..arrows.len() {
            if q.are_parallel(arrows[x], arrows[y]) {
                if pair.is_some() {
                    return None;
                }
                pair = Some((x, y));
            }
        }
    }
    let (ell, m) = pair?;
    Some((center, OneStarShape { n: arrows.len() - 1, ell, m }))
}

/// One step of the 1-star recentering: the three cases by shape.
fn one_star_step(trail: &mut Trail<Quiver>, arrows: &[usize], shape: OneStarShape) -> Result<()> {
    let n = shape.n;
    let mut fs = |a: usize, b: usize| trail.fs(arrows[a], arrows[b]);
    if shape.ell > 0 {
        for t in 1..=n {
            fs(t, t - 1)?;
        }
    } else if shape.m > 1 {
        for t in (1..=n).filter(|&t| t != shape.m) {
            fs(t, t - 1)?;
        }
    } else {
        for _ in 0..n - 1 {
            for t in (0..n).rev() {
                fs(t, t + 1)?;
            }
        }
        for t in (0..n - 1).rev() {
            fs(t, t + 1)?;
        }
    }
    Ok(())
}

/// Largest 1-star size handled by exhaustive search instead of the
/// three-case recentering, whose construction needs at least five arrows.
const SEARCH_MAX_N: usize = 3;
const SEARCH_BUDGET: usize = 1_000_000;

/// Breadth-first search over admissible FS-transformations on `arrows`
/// until `goal` holds; replays the shortest sequence found on `trail`.
fn search_fs(trail: &mut Trail<Quiver>, arrows: &[usize], goal: impl Fn(&Quiver) -> bool) -> Result<()> {
    let start = trail.current.clone();
    if goal(&start) {
        return Ok(());
    }
    let mut parent: BTreeMap<Quiver, Option<(Quiver, usize, usize)>> = BTreeMap::new();
    parent.insert(start.clone(), None);
    let mut frontier = vec![start];
    let mut found = None;
    'outer: while !frontier.is_empty() {
        let mut next = Vec::new();
        for q in &frontier {
            for &i in arrows {
                for &j in arrows {
                    if i == j || !is_admissible_quiver(q, i, j) {
                        continue;
                    }
                    let Ok(eps) = quiver_flation_sign(q, i, j) else { continue };
                    let q2 = Transform::fst(i, j, eps).apply_to_quiver(q)?;
                    if parent.contains_key(&q2) {
                        continue;
                    }
                    parent.insert(q2.clone(), Some((q.clone(), i, j)));
                    if parent.len() > SEARCH_BUDGET {
                        return Err(Error::SearchBudget { budget: SEARCH_BUDGET as u64 });
                    }
                    if goal(&q2) {
                        found = Some(q2);
                        break 'outer;
                    }
                    next.push(q2);
                }
            }
        }
        frontier = next;
    }
    let mut q = found.ok_or(Error::Internal("1-star target unreachable"))?;
    let mut moves = Vec::new();
    while let Some(Some((prev, i, j))) = parent.get(&q) {
        moves.push((*i, *j));
        q = prev.clone();
    }
    for (i, j) in moves.into_iter().rev() {
        trail.fs(i, j)?;
    }
    Ok(())
}

fn recenter_one_star_in(trail: &mut Trail<Quiver>, arrows: &[usize], v: usize) -> Result<()> {
    check_vertex(&trail.current, arrows, v)?;
    let n = arrows.len() - 1;
    if n <= SEARCH_MAX_N {
        return search_fs(trail, arrows, |q| is_center(q, arrows, v) && one_star_in(q, arrows).is_some());
    }
    for _ in 0..4 * (n + 2) * (n + 2) {
        if is_center(&trail.current, arrows, v) {
            return Ok(());
        }
        let (_, shape) = one_star_in(&trail.current, arrows).ok_or(Error::NotAOneStar)?;
        one_star_step(trail, arrows, shape)?;
    }
    Err(Error::Internal("1-star recentering did not reach the requested vertex"))
}

fn one_tree_to_one_star_in(trail: &mut Trail<Quiver>, arrows: &[usize], v: usize) -> Result<()> {
    check_vertex(&trail.current, arrows, v)?;
    if arrows.len() <= 2 {
        return Ok(());
    }
    let top = arrows[arrows.len() - 1];
    let rest = &arrows[..arrows.len() - 1];
    let (a, b) = trail.current.arrow(top);
    let (side_a, side_b, joined) = split(&trail.current, rest, a, b);
    if joined {
        tree_to_star_in(trail, rest, a)?;
    } else if side_b.is_empty() {
        one_tree_to_one_star_in(trail, &side_a, a)?;
    } else if side_a.is_empty() {
        one_tree_to_one_star_in(trail, &side_b, b)?;
    } else {
        let second = rest[rest.len() - 1];
        let (side, x) = if side_a.contains(&second) { (side_a, a) } else { (side_b, b) };
        if vertices_of(&trail.current, &side).len() == side.len() + 1 {
            tree_to_star_in(trail, &side, x)?;
        } else {
            one_tree_to_one_star_in(trail, &side, x)?;
        }
        trail.fs(second, top)?;
        return one_tree_to_one_star_in(trail, arrows, v);
    }
    recenter_one_star_in(trail, arrows, v)
}

fn all_arrows(q: &Quiver) -> Vec<usize> {
    (0..q.n_arrows()).collect()
}

fn require_tree(q: &Quiver) -> Result<()> {
    if q.shape().tree { Ok(()) } else { Err(Error::NotATree) }
}

fn require_star(q: &Quiver) -> Result<()> {
    require_tree(q)?;
    if centers(q, &all_arrows(q)).is_empty() { Err(Error::NotAStar) } else { Ok(()) }
}

/// Admissible iterate taking a maximal star to the maximal star centered at `v`.
pub fn recenter_star(star: &Quiver, v: usize) -> Result<(Quiver, IteratedTransform)> {
    require_star(star)?;
    let mut trail = Trail::new(star.clone());
    recenter_star_in(&mut trail, &all_arrows(star), v)?;
    Ok((trail.current, trail.transform))
}

/// Admissible iterate taking a tree quiver to a maximal star centered at `v`.
pub fn tree_to_star(tree: &Quiver, v: usize) -> Result<(Quiver, IteratedTransform)> {
    require_tree(tree)?;
    let mut trail = Trail::new(tree.clone());
    tree_to_star_in(&mut trail, &all_arrows(tree), v)?;
    Ok((trail.current, trail.transform))
}

/// Shape of a maximal 1-star.
pub fn one_star_shape(q: &Quiver) -> Result<OneStarShape> {
    if !q.shape().one_tree {
        return Err(Error::NotAOneStar);
    }
    one_star_in(q, &all_arrows(q)).map(|(_, s)| s).ok_or(Error::NotAOneStar)
}

/// Admissible iterate taking a maximal 1-star to one centered at `v`.
pub fn recenter_one_star(star: &Quiver, v: usize) -> Result<(Quiver, IteratedTransform)> {
    one_star_shape(star)?;
    let mut trail = Trail::new(star.clone());
    recenter_one_star_in(&mut trail, &all_arrows(star), v)?;
    Ok((trail.current, trail.transform))
}

/// Applies one recentering step to a maximal 1-star with at least five arrows.
pub fn one_star_recentering_step(star: &Quiver) -> Result<(Quiver, IteratedTransform)> {
    let shape = one_star_shape(star)?;
    if shape.n <= SEARCH_MAX_N {
        return Err(Error::InvalidShape);
    }
    let mut trail = Trail::new(star.clone());
    one_star_step(&mut trail, &all_arrows(star), shape)?;
    Ok((trail.current, trail.transform))
}

/// Admissible iterate taking a 1-tree quiver to a maximal 1-star centered at `v`.
pub fn one_tree_to_one_star(q: &Quiver, v: usize) -> Result<(Quiver, OneStarShape, IteratedTransform)> {
    if !q.shape().one_tree {
        return Err(Error::NotAOneTree);
    }
    let mut trail = Trail::new(q.clone());
    one_tree_to_one_star_in(&mut trail, &all_arrows(q), v)?;
    let shape = one_star_shape(&trail.current)?;
    Ok((trail.current, shape, trail.transform))
}

/// Renames vertices so that `center` is 0 and leaves follow arrow order.
fn relabel_star(q: &Quiver, center: usize) -> Quiver {
    let mut perm = vec![usize::MAX; q.n_vertices()];
    perm[center] = 0;
    let mut next = 1;
    for i in 0..q.n_arrows() {
        let leaf = q.other_end(i, center);
        if perm[leaf] == usize::MAX {
            perm[leaf] = next;
            next += 1;
        }
    }
    for p in perm.iter_mut().filter(|p| **p == usize::MAX) {
        *p = next;
        next += 1;
    }
    q.relabel_vertices(&perm)
}

/// Reverses every arrow that does not leave `center`.
fn orient_outward(trail: &mut Trail<Quiver>, center: usize) -> Result<()> {
    let inward: Vec<usize> = (0..trail.current.n_arrows()).filter(|&i| trail.current.source(i) != center).collect();
    if !inward.is_empty() {
        trail.apply(Transform::PointInversion(inward))?;
    }
    Ok(())
}

/// Brings a maximal 1-star to the canonical representative of its class:
/// shape `(n - d, n)`, every arrow leaving the center, center relabeled 0.
/// Returns `d`, the canonical quiver and the iterate (vertex renaming is
/// not part of the iterate since it does not affect incidence forms).
pub fn normalize_one_star(star: &Quiver) -> Result<(usize, Quiver, IteratedTransform)> {
    let shape = one_star_shape(star)?;
    let target = shape.canonical();
    let arrows = all_arrows(star);
    let mut trail = Trail::new(star.clone());
    let reached = |q: &Quiver| one_star_in(q, &arrows).is_some_and(|(_, s)| s == target);
    if shape.n <= SEARCH_MAX_N {
        search_fs(&mut trail, &arrows, reached)?;
    } else {
        let mut guard = 0;
        while !reached(&trail.current) {
            let (_, s) = one_star_in(&trail.current, &arrows).ok_or(Error::NotAOneStar)?;
            one_star_step(&mut trail, &arrows, s)?;
            guard += 1;
            if guard > 4 * (shape.n + 2) {
                return Err(Error::Internal("1-star normalization did not reach the canonical shape"));
            }
        }
    }
    let (center, _) = one_star_in(&trail.current, &arrows).ok_or(Error::NotAOneStar)?;
    orient_outward(&mut trail, center)?;
    let canonical = relabel_star(&trail.current, center);
    Ok((shape.d(), canonical, trail.transform))
}

/// Tree to the outward star `star_quiver(n)`: returns the relabeled star and
/// the iterate.
pub fn canonical_star(tree: &Quiver) -> Result<(Quiver, IteratedTransform)> {
    let (star, it) = tree_to_star(tree, 0)?;
    let mut trail = Trail { current: star, transform: it };
    orient_outward(&mut trail, 0)?;
    Ok((relabel_star(&trail.current, 0), trail.transform))
}

/// 1-tree to the canonical 1-star of its class; returns `d`, the canonical
/// quiver and the iterate.
pub fn canonical_one_star(q: &Quiver) -> Result<(usize, Quiver, IteratedTransform)> {
    let (star, _, it) = one_tree_to_one_star(q, 0)?;
    let (d, canonical, rest) = normalize_one_star(&star)?;
    Ok((d, canonical, it.then(&rest)?))
}
