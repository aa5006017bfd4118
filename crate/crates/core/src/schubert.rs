//! Schubert varieties in G(l, m) relative to a partial flag.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::count::{binomial, determinant, q_int, q_pow};
use crate::field::Field;
use crate::grassmann::{index_tuples, lines_through, GrassmannIndex, IndexTuple, Line};
use crate::linalg::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error("invalid Schubert index {0:?} for m={1}")]
    InvalidAlpha(Vec<usize>, usize),
    #[error("flag subspaces must form a chain with dimensions matching alpha")]
    InvalidFlag,
    #[error("point is not in the Schubert variety")]
    NotInVariety,
}

/// A partial flag `A_1 < ... < A_l` with `dim A_i = alpha_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    alpha: IndexTuple,
    spaces: Vec<Subspace>,
}

impl Flag {
    pub fn new(spaces: Vec<Subspace>, f: &Field) -> Result<Self, SchubertError> {
        let m = spaces
            .first()
            .map(|s| s.ambient())
            .ok_or(SchubertError::InvalidFlag)?;
        let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        let alpha = IndexTuple::new(dims, m).map_err(|_| SchubertError::InvalidFlag)?;
        if spaces.windows(2).any(|w| !w[0].is_subspace_of(&w[1], f)) {
            return Err(SchubertError::InvalidFlag);
        }
        Ok(Flag { alpha, spaces })
    }

    pub fn alpha(&self) -> &IndexTuple {
        &self.alpha
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    /// `A_i`, 1-based.
    pub fn space(&self, i: usize) -> &Subspace {
        &self.spaces[i - 1]
    }

    pub fn l(&self) -> usize {
        self.spaces.len()
    }

    pub fn m(&self) -> usize {
        self.spaces[0].ambient()
    }

    /// `dim(P cap A_i) >= i` for every i.
    pub fn contains(&self, p: &Subspace, f: &Field) -> bool {
        p.dim() == self.l()
            && self
                .spaces
                .iter()
                .enumerate()
                .all(|(i, a)| p.intersection_dim(a, f) > i)
    }

    /// Line classification by `(U, W)`: `W <= A_l`, the dimension bounds
    /// `dim(U cap A_i) >= i-1`, `dim(W cap A_i) >= i`, and for each i either
    /// `dim(U cap A_i) >= i` or `dim(W cap A_i) = i+1`.
    pub fn contains_line(&self, line: &Line, f: &Field) -> bool {
        if line.point_dim() != self.l() || !line.w().is_subspace_of(self.space(self.l()), f) {
            return false;
        }
        self.spaces.iter().enumerate().all(|(idx, a)| {
            let i = idx + 1;
            let du = line.u().intersection_dim(a, f);
            let dw = line.w().intersection_dim(a, f);
            du + 1 >= i && dw >= i && (du >= i || dw == i + 1)
        })
    }

    /// Lines through `p` that lie in the variety, ordered by `(U, W)`.
    pub fn lines_through_point(&self, p: &Subspace, f: &Field) -> Result<Vec<Line>, SchubertError> {
        if !self.contains(p, f) {
            return Err(SchubertError::NotInVariety);
        }
        Ok(lines_through(p, f)
            .into_iter()
            .filter(|l| self.contains_line(l, f))
            .collect())
    }
}

/// `A_i = span(e_1, ..., e_{alpha_i})`.
pub fn standard_flag(alpha: &[usize], m: usize) -> Result<Flag, SchubertError> {
    let tuple = IndexTuple::new(alpha.to_vec(), m)
        .map_err(|_| SchubertError::InvalidAlpha(alpha.to_vec(), m))?;
    let spaces = alpha
        .iter()
        .map(|&a| Subspace::coordinate(m, &(0..a).collect::<Vec<_>>()))
        .collect();
    Ok(Flag {
        alpha: tuple,
        spaces,
    })
}

/// A flag whose Schubert variety is the disc of radius `i` around `p`:
/// `alpha = (i+1, ..., l, m-i+1, ..., m)`, with the first `l-i` members
/// inside `p` (ending at `p`) and the rest containing `p`.
pub fn disc_flag(p: &Subspace, i: usize, f: &Field) -> Result<Flag, SchubertError> {
    let l = p.dim();
    let m = p.ambient();
    if i > l || l == 0 {
        return Err(SchubertError::InvalidFlag);
    }
    let mut spaces = Vec::with_capacity(l);
    // inner part: nested subspaces of p spanned by its leading basis rows
    for j in 1..=(l - i) {
        let rows: Vec<Vec<_>> = p.basis_rows().take(i + j).map(|r| r.to_vec()).collect();
        spaces.push(Subspace::from_vectors(m, &rows, f));
    }
    // outer part: p extended by standard vectors in index order
    let mut cur = p.clone();
    let mut e = 0;
    for j in (l - i + 1)..=l {
        let target = m - l + j;
        while cur.dim() < target {
            let mut v = vec![crate::field::Elem::ZERO; m];
            v[e] = crate::field::Elem::ONE;
            e += 1;
            if !cur.contains_vector(&v, f) {
                cur = cur.with_vector(&v, f);
            }
        }
        spaces.push(cur.clone());
    }
    Flag::new(spaces, f)
}

/// The points of a Schubert variety, in the ambient canonical order.
#[derive(Debug, Clone)]
pub struct SchubertIndex {
    flag: Flag,
    points: Vec<Subspace>,
}

impl SchubertIndex {
    pub fn new(flag: Flag, grass: &GrassmannIndex) -> Self {
        let f = grass.field();
        let points = grass
            .points()
            .iter()
            .filter(|p| flag.contains(p, f))
            .cloned()
            .collect();
        SchubertIndex { flag, points }
    }

    pub fn flag(&self) -> &Flag {
        &self.flag
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
}

/// `[n, k, d]` of the Schubert code and `delta(alpha)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertParams {
    pub n: BigUint,
    pub k: BigUint,
    pub d: BigUint,
    pub delta: usize,
}

pub fn schubert_params(alpha: &IndexTuple, m: usize, q: u64) -> SchubertParams {
    let l = alpha.len();
    let n = index_tuples(l, m)
        .iter()
        .filter(|b| b.dominated_by(alpha))
        .fold(BigUint::zero(), |acc, b| acc + q_pow(q, b.delta() as u32));
    let a = alpha.entries();
    // k = det( C(a_j - j + 1, i - j + 1) ), 1-based i, j
    let mat: Vec<Vec<BigInt>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| binomial(a[j - 1] as i64 - j as i64 + 1, i as i64 - j as i64 + 1))
                .collect()
        })
        .collect();
    let k = determinant(&mat)
        .to_biguint()
        .expect("dimension is nonnegative");
    let delta = alpha.delta();
    SchubertParams {
        n,
        k,
        d: q_pow(q, delta as u32),
        delta,
    }
}

/// Number of lines of the variety through a point, l = 2 and alpha_2 = m:
/// `[2 1][m-2 1]` when `P <= A_1`, else `q [alpha_1 - 1 1] + [m-2 1]`.
pub fn lines_through_point_count(q: u64, m: usize, alpha1: usize, inside_a1: bool) -> BigUint {
    let m2 = q_int(m as i64 - 2, q);
    if inside_a1 {
        q_int(2, q) * m2
    } else {
        BigUint::from(q) * q_int(alpha1 as i64 - 1, q) + m2
    }
}
