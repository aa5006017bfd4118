//! Grassmann and Schubert codes as explicit generator matrices, parity
//! checks, and brute-force distance oracles.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::field::{Elem, Field};
use crate::grassmann::{index_tuples, line_through_two, plucker_raw, GrassmannIndex, IndexTuple};
use crate::linalg::{solve_dependence, Matrix, Subspace};
use crate::schubert::{standard_flag, Flag, SchubertError, SchubertIndex};

/// Largest codebook the brute-force distance oracle will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("trivial Schubert code")]
    TrivialSchubert,
    #[error("points not collinear")]
    NotCollinear,
    #[error("point is not a coordinate of this code")]
    UnknownPoint,
    #[error("codebook of size {q}^{k} exceeds the brute-force limit")]
    GuardExceeded { q: usize, k: usize },
    #[error("parity check does not annihilate the generator")]
    NotAParityCheck,
    #[error("unsupported parameters: l={l}, m={m}")]
    BadDimensions { l: usize, m: usize },
    #[error(transparent)]
    Schubert(#[from] SchubertError),
}

/// A generator matrix together with the parameters that define its
/// coordinate order. This is exactly what the generator file stores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub q: u32,
    pub m: usize,
    pub l: usize,
    pub alpha: Option<Vec<usize>>,
    pub matrix: Matrix,
}

impl GeneratorMatrix {
    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn encode(&self, message: &[Elem], f: &Field) -> Vec<Elem> {
        self.matrix.left_mul_vec(message, f)
    }

    /// Basis of the dual code, one parity check per row.
    pub fn dual_basis(&self, f: &Field) -> Matrix {
        self.matrix.kernel(f)
    }
}

/// A sparse dual codeword: `(position, coefficient)` pairs, positions
/// strictly increasing, coefficients nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityCheck {
    entries: Vec<(usize, Elem)>,
}

impl ParityCheck {
    /// Sorts by position, merges repeats, and drops zero coefficients.
    pub fn from_entries(mut entries: Vec<(usize, Elem)>, f: &Field) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, Elem)> = Vec::with_capacity(entries.len());
        for (p, c) in entries {
            match out.last_mut() {
                Some(last) if last.0 == p => last.1 = f.add(last.1, c),
                _ => out.push((p, c)),
            }
        }
        out.retain(|e| !e.1.is_zero());
        ParityCheck { entries: out }
    }

    pub fn entries(&self) -> &[(usize, Elem)] {
        &self.entries
    }

    pub fn weight(&self) -> usize {
        self.entries.len()
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    pub fn coef_at(&self, pos: usize) -> Elem {
        self.entries
            .binary_search_by_key(&pos, |e| e.0)
            .map(|i| self.entries[i].1)
            .unwrap_or(Elem::ZERO)
    }

    pub fn scaled(&self, c: Elem, f: &Field) -> ParityCheck {
        ParityCheck::from_entries(
            self.entries
                .iter()
                .map(|&(p, x)| (p, f.mul(x, c)))
                .collect(),
            f,
        )
    }

    pub fn plus(&self, other: &ParityCheck, f: &Field) -> ParityCheck {
        let mut all = self.entries.clone();
        all.extend_from_slice(&other.entries);
        ParityCheck::from_entries(all, f)
    }

    /// Rescaled so the coefficient at `pos` is one; `None` if `pos` is not in the support.
    pub fn normalized_at(&self, pos: usize, f: &Field) -> Option<ParityCheck> {
        let c = self.coef_at(pos);
        let inv = f.inv(c).ok()?;
        Some(self.scaled(inv, f))
    }

    /// Inner product with a word.
    pub fn syndrome(&self, word: &[Elem], f: &Field) -> Elem {
        self.entries
            .iter()
            .fold(Elem::ZERO, |acc, &(p, c)| f.mul_add(acc, c, word[p]))
    }

    pub fn annihilates(&self, g: &Matrix, f: &Field) -> bool {
        g.row_iter().all(|row| self.syndrome(row, f).is_zero())
    }
}

/// A Grassmann code (`alpha = None`) or a Schubert code.
#[derive(Debug, Clone)]
pub struct Code {
    field: Field,
    l: usize,
    m: usize,
    flag: Option<Flag>,
    points: Vec<Subspace>,
    generator: GeneratorMatrix,
    row_labels: Vec<IndexTuple>,
}

impl Code {
    /// `C(l, m)`: one row per minor, columns the Plücker coordinates of all points.
    pub fn grassmann(l: usize, m: usize, field: &Field) -> Result<Code, CodeError> {
        if l == 0 || l > m {
            return Err(CodeError::BadDimensions { l, m });
        }
        let grass = GrassmannIndex::new(l, m, field);
        Ok(Code::from_points(
            field,
            l,
            m,
            None,
            grass.points().to_vec(),
        ))
    }

    /// `C_alpha(l, m)`: the Grassmann code punctured to the Schubert variety
    /// of the standard flag, keeping an independent subset of rows.
    pub fn schubert(alpha: &[usize], m: usize, field: &Field) -> Result<Code, CodeError> {
        let flag = standard_flag(alpha, m)?;
        let l = alpha.len();
        if alpha.iter().enumerate().all(|(i, &a)| a == i + 1) {
            return Err(CodeError::TrivialSchubert);
        }
        let grass = GrassmannIndex::new(l, m, field);
        let schub = SchubertIndex::new(flag.clone(), &grass);
        Ok(Code::from_points(
            field,
            l,
            m,
            Some(flag),
            schub.points().to_vec(),
        ))
    }

    /// Builds a Grassmann code for `alpha = None`, a Schubert code otherwise.
    pub fn build(
        l: usize,
        m: usize,
        alpha: Option<&[usize]>,
        field: &Field,
    ) -> Result<Code, CodeError> {
        match alpha {
            None => Code::grassmann(l, m, field),
            Some(a) => {
                if a.len() != l {
                    return Err(CodeError::BadDimensions { l, m });
                }
                Code::schubert(a, m, field)
            }
        }
    }

    fn from_points(
        field: &Field,
        l: usize,
        m: usize,
        flag: Option<Flag>,
        points: Vec<Subspace>,
    ) -> Code {
        let labels = index_tuples(l, m);
        let n = points.len();
        let columns: Vec<Vec<Elem>> = points.par_iter().map(|p| plucker_raw(p, field)).collect();
        let mut full = Matrix::zeros(labels.len(), n);
        for (c, col) in columns.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                full[(r, c)] = x;
            }
        }
        // greedy independent subset of rows, in label order
        let mut kept = Vec::new();
        let mut acc = Matrix::zeros(0, n);
        let mut rank = 0;
        for r in 0..labels.len() {
            let trial = acc.stack(&full.select_rows(&[r]));
            let rk = trial.rank(field);
            if rk > rank {
                rank = rk;
                acc = trial;
                kept.push(r);
            }
        }
        let generator = GeneratorMatrix {
            q: field.order() as u32,
            m,
            l,
            alpha: flag.as_ref().map(|fl| fl.alpha().entries().to_vec()),
            matrix: full.select_rows(&kept),
        };
        Code {
            field: field.clone(),
            l,
            m,
            flag,
            points,
            generator,
            row_labels: kept.into_iter().map(|r| labels[r].clone()).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn flag(&self) -> Option<&Flag> {
        self.flag.as_ref()
    }

    pub fn alpha(&self) -> Option<&[usize]> {
        self.flag.as_ref().map(|f| f.alpha().entries())
    }

    pub fn points(&self) -> &[Subspace] {
        &self.points
    }

    pub fn point(&self, pos: usize) -> &Subspace {
        &self.points[pos]
    }

    pub fn position(&self, p: &Subspace) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn generator(&self) -> &GeneratorMatrix {
        &self.generator
    }

    pub fn row_labels(&self) -> &[IndexTuple] {
        &self.row_labels
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.generator.k()
    }

    /// Validates that `check` is a dual codeword.
    pub fn verify_check(&self, check: &ParityCheck) -> Result<(), CodeError> {
        if check.positions().any(|p| p >= self.n())
            || !check.annihilates(&self.generator.matrix, &self.field)
        {
            return Err(CodeError::NotAParityCheck);
        }
        Ok(())
    }

    /// The weight-3 dual codeword supported on three collinear points.
    pub fn weight3_check(
        &self,
        p: &Subspace,
        q: &Subspace,
        r: &Subspace,
    ) -> Result<ParityCheck, CodeError> {
        let f = &self.field;
        let positions = [p, q, r]
            .iter()
            .map(|x| self.position(x).ok_or(CodeError::UnknownPoint))
            .collect::<Result<Vec<_>, _>>()?;
        let line = line_through_two(p, q, f).ok_or(CodeError::NotCollinear)?;
        if p == r || q == r || !line.contains(r, f) {
            return Err(CodeError::NotCollinear);
        }
        let cols: Vec<Vec<Elem>> = [p, q, r].iter().map(|x| plucker_raw(x, f)).collect();
        let coeffs = solve_dependence(&cols, f).ok_or(CodeError::NotCollinear)?;
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(CodeError::NotCollinear);
        }
        let check = ParityCheck::from_entries(positions.into_iter().zip(coeffs).collect(), f);
        self.verify_check(&check)?;
        Ok(check)
    }
}

/// Minimum Hamming weight over all nonzero codewords, by enumeration.
pub fn min_distance_bruteforce(g: &GeneratorMatrix, f: &Field) -> Result<usize, CodeError> {
    let q = f.order();
    let k = g.k();
    let total = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > BRUTE_FORCE_LIMIT {
        return Err(CodeError::GuardExceeded { q, k });
    }
    let total = total as u64;
    let best = (1..total)
        .into_par_iter()
        .map(|idx| {
            let msg = digits(idx, q, k);
            g.encode(&msg, f).iter().filter(|x| !x.is_zero()).count()
        })
        .min()
        .unwrap_or(0);
    Ok(best)
}

/// Base-q digits of `idx`, most significant first, as a message of length `k`.
pub fn digits(mut idx: u64, q: usize, k: usize) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; k];
    for slot in out.iter_mut().rev() {
        *slot = Elem((idx % q as u64) as u8);
        idx /= q as u64;
    }
    out
}

fn normalized(col: &[Elem], f: &Field) -> Option<Vec<Elem>> {
    let lead = *col.iter().find(|x| !x.is_zero())?;
    let inv = f.inv(lead).ok()?;
    Some(col.iter().map(|&x| f.mul(x, inv)).collect())
}

/// Column triples `(a, b, c)`, `a < b < c`, whose columns are linearly
/// dependent. For a code with no zero or proportional columns these are
/// exactly the supports of weight-3 dual codewords.
pub fn dependent_column_triples(g: &GeneratorMatrix, f: &Field) -> Vec<[usize; 3]> {
    let n = g.n();
    let cols: Vec<Vec<Elem>> = (0..n).map(|c| g.matrix.column(c)).collect();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let cols = &cols;
            (a + 1..n).flat_map(move |b| {
                (b + 1..n).filter_map(move |c| {
                    let m = Matrix::from_rows(
                        cols[a].len(),
                        &[cols[a].clone(), cols[b].clone(), cols[c].clone()],
                    )
                    .expect("equal column heights");
                    (m.rank(f) < 3).then_some([a, b, c])
                })
            })
        })
        .collect()
}

/// True iff the dual code has minimum distance exactly three: no zero
/// column, no two proportional columns, and some dependent column triple.
pub fn dual_min_distance_is_three(g: &GeneratorMatrix, f: &Field) -> bool {
    let n = g.n();
    let mut seen = HashSet::new();
    for c in 0..n {
        let Some(norm) = normalized(&g.matrix.column(c), f) else {
            return false;
        };
        if !seen.insert(norm) {
            return false;
        }
    }
    // any dependent triple will do; stop at the first one
    let cols: Vec<Vec<Elem>> = (0..n).map(|c| g.matrix.column(c)).collect();
    (0..n).any(|a| {
        (a + 1..n).any(|b| {
            (b + 1..n).any(|c| {
                let m = Matrix::from_rows(
                    cols[a].len(),
                    &[cols[a].clone(), cols[b].clone(), cols[c].clone()],
                )
                .expect("equal column heights");
                m.rank(f) < 3
            })
        })
    })
}
