//! The Grassmannian of l-planes in GF(q)^m as an indexed point set, with
//! Plücker coordinates, injection distance, discs and lines.

use thiserror::Error;

use crate::field::{Elem, Field};
use crate::linalg::{enumerate_subspaces, next_combination, subspaces_between, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeoError {
    #[error("expected a subspace of dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid line: U must have dimension l-1, W dimension l+1, and U inside W")]
    InvalidLine,
    #[error("invalid index tuple {0:?} for l={1}, m={2}")]
    InvalidTuple(Vec<usize>, usize, usize),
}

/// Strictly increasing tuple `1 <= a_1 < ... < a_l <= m` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(entries: Vec<usize>, m: usize) -> Result<Self, GeoError> {
        let l = entries.len();
        let ok = l >= 1
            && entries[0] >= 1
            && entries[l - 1] <= m
            && entries.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(IndexTuple(entries))
        } else {
            Err(GeoError::InvalidTuple(entries, l, m))
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `delta = sum (a_i - i)`.
    pub fn delta(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &a)| a - (i + 1)).sum()
    }

    /// Componentwise order `self <= other`.
    pub fn dominated_by(&self, other: &IndexTuple) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Zero-based column indices.
    pub fn columns(&self) -> Vec<usize> {
        self.0.iter().map(|a| a - 1).collect()
    }
}

impl std::fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All of I(l, m) in lexicographic order.
pub fn index_tuples(l: usize, m: usize) -> Vec<IndexTuple> {
    if l > m || l == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..l).collect();
    loop {
        out.push(IndexTuple(c.iter().map(|x| x + 1).collect()));
        if !next_combination(&mut c, m) {
            break;
        }
    }
    out
}

/// Un-normalized Plücker coordinates: the l x l minors of the canonical RREF
/// basis, in lexicographic order of I(l, m).
pub fn plucker_raw(p: &Subspace, f: &Field) -> Vec<Elem> {
    let basis = p.basis();
    index_tuples(p.dim(), p.ambient())
        .iter()
        .map(|t| basis.select_columns(&t.columns()).det(f))
        .collect()
}

/// Plücker coordinates scaled so the first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PluckerVector(Vec<Elem>);

impl PluckerVector {
    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    pub fn from_coords(coords: Vec<Elem>, f: &Field) -> Option<Self> {
        let lead = *coords.iter().find(|x| !x.is_zero())?;
        let inv = f.inv(lead).ok()?;
        Some(PluckerVector(
            coords.into_iter().map(|x| f.mul(x, inv)).collect(),
        ))
    }
}

pub fn plucker(p: &Subspace, l: usize, m: usize, f: &Field) -> Result<PluckerVector, GeoError> {
    if p.dim() != l {
        return Err(GeoError::Dimension {
            expected: l,
            got: p.dim(),
        });
    }
    if p.ambient() != m {
        return Err(GeoError::Dimension {
            expected: m,
            got: p.ambient(),
        });
    }
    Ok(PluckerVector::from_coords(plucker_raw(p, f), f).expect("a point has a nonzero minor"))
}

/// `l - dim(P cap Q)`.
pub fn injection_distance(p: &Subspace, q: &Subspace, f: &Field) -> usize {
    debug_assert_eq!(p.dim(), q.dim());
    p.dim() - p.intersection_dim(q, f)
}

/// Membership of `q` in the closed disc of radius `i` around `p`; empty for
/// negative radius.
pub fn disc_contains(p: &Subspace, q: &Subspace, i: i64, f: &Field) -> bool {
    i >= 0 && injection_distance(p, q, f) as i64 <= i
}

/// The line `L(U, W) = {P : U < P < W}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    u: Subspace,
    w: Subspace,
}

impl Line {
    pub fn new(u: Subspace, w: Subspace, f: &Field) -> Result<Self, GeoError> {
        if u.dim() + 2 != w.dim() || !u.is_subspace_of(&w, f) {
            return Err(GeoError::InvalidLine);
        }
        Ok(Line { u, w })
    }

    pub fn u(&self) -> &Subspace {
        &self.u
    }

    pub fn w(&self) -> &Subspace {
        &self.w
    }

    /// Dimension of the points on the line.
    pub fn point_dim(&self) -> usize {
        self.u.dim() + 1
    }

    /// The q + 1 points, in canonical order.
    pub fn points(&self, f: &Field) -> Vec<Subspace> {
        subspaces_between(&self.u, &self.w, self.point_dim(), f)
    }

    pub fn contains(&self, p: &Subspace, f: &Field) -> bool {
        p.dim() == self.point_dim() && self.u.is_subspace_of(p, f) && p.is_subspace_of(&self.w, f)
    }
}

/// The unique line through two points at distance one.
pub fn line_through_two(p: &Subspace, q: &Subspace, f: &Field) -> Option<Line> {
    if p.dim() != q.dim() || injection_distance(p, q, f) != 1 {
        return None;
    }
    let u = p.intersection(q, f).ok()?;
    let w = p.sum(q, f).ok()?;
    Line::new(u, w, f).ok()
}

/// Every line through `p`, ordered by `(U, W)`.
pub fn lines_through(p: &Subspace, f: &Field) -> Vec<Line> {
    if p.dim() == 0 || p.dim() == p.ambient() {
        return Vec::new();
    }
    let zero = Subspace::zero(p.ambient());
    let whole = Subspace::whole(p.ambient());
    let us = subspaces_between(&zero, p, p.dim() - 1, f);
    let ws = subspaces_between(p, &whole, p.dim() + 1, f);
    let mut out = Vec::with_capacity(us.len() * ws.len());
    for u in &us {
        for w in &ws {
            out.push(Line {
                u: u.clone(),
                w: w.clone(),
            });
        }
    }
    out
}

/// Every line of G(l, m), ordered by `(U, W)`.
pub fn all_lines(l: usize, m: usize, f: &Field) -> Vec<Line> {
    if l == 0 || l >= m {
        return Vec::new();
    }
    let mut out = Vec::new();
    for w in enumerate_subspaces(m, l + 1, f) {
        for u in subspaces_between(&Subspace::zero(m), &w, l - 1, f) {
            out.push(Line { u, w: w.clone() });
        }
    }
    out.sort();
    out
}

/// Points of `line` within injection distance `i` of `p`.
pub fn line_disc_intersection(line: &Line, p: &Subspace, i: i64, f: &Field) -> Vec<Subspace> {
    line.points(f)
        .into_iter()
        .filter(|t| disc_contains(p, t, i, f))
        .collect()
}

/// G(l, m) with a fixed canonical point order.
#[derive(Debug, Clone)]
pub struct GrassmannIndex {
    l: usize,
    m: usize,
    field: Field,
    points: Vec<Subspace>,
}

impl GrassmannIndex {
    pub fn new(l: usize, m: usize, field: &Field) -> Self {
        GrassmannIndex {
            l,
            m,
            points: enumerate_subspaces(m, l, field),
            field: field.clone(),
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[Subspace] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, p: &Subspace) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn point(&self, i: usize) -> &Subspace {
        &self.points[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn sub(f: &Field, m: usize, rows: &[&[u8]]) -> Subspace {
        let rs: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Elem(x)).collect())
            .collect();
        Subspace::from_rows(&Matrix::from_rows(m, &rs).unwrap(), f)
    }

    #[test]
    fn index_tuple_order_and_validation() {
        let ts = index_tuples(2, 4);
        let flat: Vec<Vec<usize>> = ts.iter().map(|t| t.entries().to_vec()).collect();
        assert_eq!(
            flat,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        assert!(IndexTuple::new(vec![2, 2], 4).is_err());
        assert!(IndexTuple::new(vec![0, 2], 4).is_err());
        assert!(IndexTuple::new(vec![1, 5], 4).is_err());
        assert_eq!(IndexTuple::new(vec![2, 4], 4).unwrap().delta(), 3);
    }

    #[test]
    fn plucker_examples() {
        let f = Field::new(2).unwrap();
        let p = Subspace::coordinate(4, &[0, 1]);
        let pv = plucker(&p, 2, 4, &f).unwrap();
        assert_eq!(pv.coords()[0], Elem::ONE);
        assert!(pv.coords()[1..].iter().all(|x| x.is_zero()));

        // rows (1,0,0,1), (0,1,1,0): minors on (1,2),(1,3),(2,4),(3,4) are nonzero
        let p = sub(&f, 4, &[&[1, 0, 0, 1], &[0, 1, 1, 0]]);
        let pv = plucker(&p, 2, 4, &f).unwrap();
        let nonzero: Vec<Vec<usize>> = index_tuples(2, 4)
            .into_iter()
            .zip(pv.coords())
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, _)| t.entries().to_vec())
            .collect();
        assert_eq!(
            nonzero,
            vec![vec![1, 2], vec![1, 3], vec![2, 4], vec![3, 4]]
        );

        // a different basis of the same plane
        let q = sub(&f, 4, &[&[1, 1, 1, 1], &[0, 1, 1, 0]]);
        assert_eq!(plucker(&q, 2, 4, &f).unwrap(), pv);

        assert!(plucker(&p, 3, 4, &f).is_err());
    }

    #[test]
    fn plucker_projective_invariance_gf5() {
        let f = Field::new(5).unwrap();
        let a = sub(&f, 4, &[&[1, 2, 0, 3], &[0, 1, 4, 1]]);
        let b = sub(&f, 4, &[&[2, 4, 0, 1], &[1, 3, 4, 4]]);
        assert_eq!(a, b);
        let raw: Vec<Elem> = plucker_raw(&a, &f);
        let scaled: Vec<Elem> = raw.iter().map(|&x| f.mul(x, Elem(3))).collect();
        assert_eq!(
            PluckerVector::from_coords(scaled, &f).unwrap(),
            plucker(&a, 2, 4, &f).unwrap()
        );
    }

    #[test]
    fn distance_examples() {
        let f = Field::new(2).unwrap();
        let p = Subspace::coordinate(4, &[0, 1]);
        let q = Subspace::coordinate(4, &[1, 2]);
        let r = Subspace::coordinate(4, &[2, 3]);
        assert_eq!(injection_distance(&p, &p, &f), 0);
        assert_eq!(injection_distance(&p, &r, &f), 2);
        assert_eq!(injection_distance(&p, &q, &f), 1);
        assert!(disc_contains(&p, &p, 0, &f));
        assert!(!disc_contains(&p, &p, -1, &f));
        assert!(!disc_contains(&p, &r, 1, &f));
        assert!(disc_contains(&p, &r, 2, &f));
        assert!(disc_contains(&p, &r, 7, &f));
    }

    #[test]
    fn metric_axioms_exhaustive_g24_gf2() {
        let f = Field::new(2).unwrap();
        let g = GrassmannIndex::new(2, 4, &f);
        let pts = g.points();
        let n = pts.len();
        let mut d = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                d[i * n + j] = injection_distance(&pts[i], &pts[j], &f);
                assert_eq!(d[i * n + j] == 0, i == j);
            }
        }
        for i in 0..n {
            for j in 0..n {
                assert_eq!(d[i * n + j], d[j * n + i]);
                for k in 0..n {
                    assert!(d[i * n + k] <= d[i * n + j] + d[j * n + k]);
                }
            }
        }
    }

    #[test]
    fn line_points_examples() {
        let f2 = Field::new(2).unwrap();
        let l = Line::new(Subspace::coordinate(3, &[0]), Subspace::whole(3), &f2).unwrap();
        let pts = l.points(&f2);
        assert_eq!(pts.len(), 3);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(pts.iter().all(|p| l.contains(p, &f2)));

        let proj = Line::new(Subspace::zero(2), Subspace::whole(2), &f2).unwrap();
        assert_eq!(proj.points(&f2), enumerate_subspaces(2, 1, &f2));

        let f3 = Field::new(3).unwrap();
        let l3 = Line::new(
            Subspace::coordinate(4, &[0]),
            Subspace::coordinate(4, &[0, 1, 3]),
            &f3,
        )
        .unwrap();
        assert_eq!(l3.points(&f3).len(), 4);

        assert_eq!(
            Line::new(
                Subspace::coordinate(4, &[2]),
                Subspace::coordinate(4, &[0, 1, 3]),
                &f3
            ),
            Err(GeoError::InvalidLine)
        );
    }

    #[test]
    fn line_through_two_examples() {
        let f = Field::new(2).unwrap();
        let p = Subspace::coordinate(4, &[0, 1]);
        let q = Subspace::coordinate(4, &[1, 2]);
        let l = line_through_two(&p, &q, &f).unwrap();
        let pts = l.points(&f);
        assert!(pts.contains(&p) && pts.contains(&q));
        assert!(line_through_two(&p, &p, &f).is_none());
        assert!(line_through_two(&p, &Subspace::coordinate(4, &[2, 3]), &f).is_none());
    }

    #[test]
    fn lines_through_counts() {
        let f = Field::new(2).unwrap();
        let g = GrassmannIndex::new(2, 4, &f);
        let all = all_lines(2, 4, &f);
        for p in g.points() {
            let ls = lines_through(p, &f);
            assert_eq!(ls.len(), 9);
            // exhaustive (U, W) filter
            let filtered: Vec<&Line> = all.iter().filter(|l| l.contains(p, &f)).collect();
            assert_eq!(filtered.len(), 9);
            assert!(ls.windows(2).all(|w| w[0] < w[1]));
        }
        // l = 1: [m-1 1]_q lines through a projective point
        let p = Subspace::coordinate(4, &[2]);
        assert_eq!(lines_through(&p, &f).len(), 7);
        let f3 = Field::new(3).unwrap();
        assert_eq!(lines_through(&Subspace::coordinate(4, &[0]), &f3).len(), 13);
        // m = l
        assert!(lines_through(&Subspace::whole(3), &f).is_empty());
    }

    #[test]
    fn line_disc_through_center() {
        let f = Field::new(3).unwrap();
        let p = Subspace::coordinate(4, &[0, 3]);
        for l in lines_through(&p, &f) {
            assert_eq!(line_disc_intersection(&l, &p, 1, &f).len(), 4);
            assert_eq!(line_disc_intersection(&l, &p, 0, &f), vec![p.clone()]);
        }
    }

    #[test]
    fn collinear_triples_are_dependent_with_full_support() {
        let f = Field::new(3).unwrap();
        for line in all_lines(2, 4, &f).iter().step_by(7) {
            let pts = line.points(&f);
            for a in 0..pts.len() {
                for b in a + 1..pts.len() {
                    for c in b + 1..pts.len() {
                        let vs: Vec<Vec<Elem>> = [&pts[a], &pts[b], &pts[c]]
                            .iter()
                            .map(|p| plucker_raw(p, &f))
                            .collect();
                        let sol = crate::linalg::solve_dependence(&vs, &f).unwrap();
                        assert!(sol.iter().all(|x| !x.is_zero()));
                    }
                }
            }
        }
    }
}
