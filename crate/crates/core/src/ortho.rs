//! Orthogonal parity-check sets for Schubert codes with `l = 2`.
//!
//! For a center point `P` the set has two tiers. Weight-3 checks come from
//! pairs of points on lines through `P`. Weight-5 checks combine one of those
//! with two more weight-3 checks on lines through its other two points, chosen
//! so that all new support points sit at distance two from `P` and no two
//! checks share anything but `P`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::code::{Code, CodeError, ParityCheck};
use crate::count::{q_int, q_pow};
use crate::field::{Elem, Field};
use crate::grassmann::{injection_distance, Line};
use crate::linalg::{subspaces_between, Subspace};
use crate::schubert::{lines_through_point_count, Flag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthoError {
    #[error("orthogonal sets are only constructed for l = 2, got l = {0}")]
    UnsupportedL(usize),
    #[error("orthogonal sets need a Schubert code")]
    NotSchubert,
    #[error("alpha_1 = {alpha1} out of range 2..={max}")]
    Alpha1OutOfRange { alpha1: usize, max: usize },
    #[error("point is not in the Schubert variety")]
    NotInVariety,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("degenerate weight-5 combination")]
    Degenerate,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// The chain `U_1 < P = W_2 < W_3 < ... < W_m = V` fixed through a center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagThroughPoint {
    center: Subspace,
    u1: Subspace,
    chain: Vec<Subspace>,
    inside_a1: bool,
}

impl FlagThroughPoint {
    pub fn center(&self) -> &Subspace {
        &self.center
    }

    pub fn u1(&self) -> &Subspace {
        &self.u1
    }

    /// `W_i` for `2 <= i <= m`.
    pub fn w(&self, i: usize) -> &Subspace {
        &self.chain[i - 2]
    }

    pub fn chain(&self) -> &[Subspace] {
        &self.chain
    }

    /// True when the center lies in `A_1`.
    pub fn inside_a1(&self) -> bool {
        self.inside_a1
    }

    /// Highest level carrying weight-5 checks.
    fn top_level(&self, alpha1: usize) -> usize {
        if self.inside_a1 {
            alpha1
        } else {
            alpha1 + 1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tier {
    Weight3,
    Weight5,
}

/// Parity checks orthogonal on one coordinate, each scaled to 1 there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalCheckSet {
    center: usize,
    checks: Vec<ParityCheck>,
    tiers: Vec<Tier>,
}

impl OrthogonalCheckSet {
    pub fn new(center: usize, checks: Vec<ParityCheck>, tiers: Vec<Tier>) -> Self {
        assert_eq!(checks.len(), tiers.len());
        OrthogonalCheckSet {
            center,
            checks,
            tiers,
        }
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn checks(&self) -> &[ParityCheck] {
        &self.checks
    }

    pub fn tiers(&self) -> &[Tier] {
        &self.tiers
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn count(&self, tier: Tier) -> usize {
        self.tiers.iter().filter(|&&t| t == tier).count()
    }

    fn extend(&mut self, other: OrthogonalCheckSet) {
        self.checks.extend(other.checks);
        self.tiers.extend(other.tiers);
    }

    /// Every check has coefficient one at the center and no other
    /// coordinate appears in more than one check.
    pub fn is_orthogonal(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.checks.iter().all(|c| {
            c.coef_at(self.center) == Elem::ONE
                && c.positions()
                    .filter(|&p| p != self.center)
                    .all(|p| seen.insert(p))
        })
    }
}

/// Lines through an anchor `Q` used to extend one weight-3 check at level `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFamily {
    pub level: usize,
    pub base: Line,
    pub anchor: Subspace,
    pub members: Vec<Line>,
}

impl LineFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Validates that the code supports the construction and returns `(flag, alpha_1)`.
fn context(code: &Code) -> Result<(&Flag, usize), OrthoError> {
    if code.l() != 2 {
        return Err(OrthoError::UnsupportedL(code.l()));
    }
    let flag = code.flag().ok_or(OrthoError::NotSchubert)?;
    let alpha1 = flag.alpha().entries()[0];
    let max = code.m() - 1;
    if alpha1 < 2 || alpha1 > max {
        return Err(OrthoError::Alpha1OutOfRange { alpha1, max });
    }
    Ok((flag, alpha1))
}

fn unit(m: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; m];
    v[i] = Elem::ONE;
    v
}

/// Fixes the chain through `p`: extend `p` greedily by the basis of `A_1`,
/// then by `e_1, ..., e_m`.
pub fn build_flag(code: &Code, p: &Subspace) -> Result<FlagThroughPoint, OrthoError> {
    let (flag, _) = context(code)?;
    let f = code.field();
    if !flag.contains(p, f) {
        return Err(OrthoError::NotInVariety);
    }
    let m = code.m();
    let a1 = flag.space(1);
    let inside_a1 = p.is_subspace_of(a1, f);
    let lead = if inside_a1 {
        p.basis_row(0).to_vec()
    } else {
        p.basis_rows()
            .find(|r| !a1.contains_vector(r, f))
            .expect("p not inside A_1")
            .to_vec()
    };
    let u1 = Subspace::from_vectors(m, &[lead], f);
    let mut chain = vec![p.clone()];
    let candidates = a1
        .basis_rows()
        .map(<[Elem]>::to_vec)
        .chain((0..m).map(|i| unit(m, i)));
    for v in candidates {
        let top = chain.last().expect("nonempty");
        if !top.contains_vector(&v, f) {
            chain.push(top.with_vector(&v, f));
        }
    }
    Ok(FlagThroughPoint {
        center: p.clone(),
        u1,
        chain,
        inside_a1,
    })
}

/// Weight-3 checks through `center` on `line`: the other points in canonical
/// order, paired consecutively, each check scaled to 1 at `center`.
fn paired_checks(
    code: &Code,
    center: &Subspace,
    line: &Line,
) -> Result<Vec<ParityCheck>, OrthoError> {
    let f = code.field();
    let pos = code.position(center).ok_or(OrthoError::NotInVariety)?;
    let others: Vec<Subspace> = line.points(f).into_iter().filter(|x| x != center).collect();
    others
        .chunks_exact(2)
        .map(|pair| {
            let chk = code.weight3_check(center, &pair[0], &pair[1])?;
            Ok(chk.normalized_at(pos, f).expect("center in support"))
        })
        .collect()
}

/// `J_1(P)`: one check per disjoint pair on every line through `P` in the variety.
pub fn build_j1(code: &Code, p: &Subspace) -> Result<OrthogonalCheckSet, OrthoError> {
    let (flag, _) = context(code)?;
    let f = code.field();
    let pos = code.position(p).ok_or(OrthoError::NotInVariety)?;
    let lines = flag
        .lines_through_point(p, f)
        .map_err(|_| OrthoError::NotInVariety)?;
    let mut checks = Vec::new();
    for line in &lines {
        checks.extend(paired_checks(code, p, line)?);
    }
    let tiers = vec![Tier::Weight3; checks.len()];
    Ok(OrthogonalCheckSet::new(pos, checks, tiers))
}

/// The 3-spaces `W` with `P < W <= W_i` and `W` not inside `W_{i-1}`.
pub fn level_spaces(ftp: &FlagThroughPoint, i: usize, f: &Field) -> Vec<Subspace> {
    let prev = ftp.w(i - 1);
    subspaces_between(ftp.center(), ftp.w(i), 3, f)
        .into_iter()
        .filter(|w| !w.is_subspace_of(prev, f))
        .collect()
}

fn line_family(
    code: &Code,
    ftp: &FlagThroughPoint,
    i: usize,
    w: &Subspace,
    q: &Subspace,
) -> Result<LineFamily, OrthoError> {
    let (flag, alpha1) = context(code)?;
    let f = code.field();
    if i < 3 || i > ftp.top_level(alpha1) {
        return Err(OrthoError::Precondition("level out of range"));
    }
    if w.dim() != 3
        || !ftp.center().is_subspace_of(w, f)
        || !w.is_subspace_of(ftp.w(i), f)
        || w.is_subspace_of(ftp.w(i - 1), f)
    {
        return Err(OrthoError::Precondition(
            "W must satisfy P < W <= W_i, W not in W_(i-1)",
        ));
    }
    let base = Line::new(ftp.u1().clone(), w.clone(), f)
        .map_err(|_| OrthoError::Precondition("bad base line"))?;
    if q == ftp.center() || !base.contains(q, f) {
        return Err(OrthoError::Precondition(
            "anchor must be a point of the base line other than P",
        ));
    }
    let wi = ftp.w(i);
    let members = flag
        .lines_through_point(q, f)
        .map_err(|_| OrthoError::NotInVariety)?
        .into_iter()
        .filter(|l| l.u() != ftp.u1() && !l.w().is_subspace_of(wi, f))
        .collect();
    Ok(LineFamily {
        level: i,
        base,
        anchor: q.clone(),
        members,
    })
}

/// Family used when the center lies in `A_1`: lines through `Q` with
/// `U != U_1` and `W` not inside `W_i`.
pub fn line_family_l(
    code: &Code,
    ftp: &FlagThroughPoint,
    i: usize,
    w: &Subspace,
    q: &Subspace,
) -> Result<LineFamily, OrthoError> {
    if !ftp.inside_a1() {
        return Err(OrthoError::Precondition("center must lie in A_1"));
    }
    line_family(code, ftp, i, w, q)
}

/// Family used when the center is not in `A_1`: lines through `Q` with
/// `U = Q cap A_1` and `W` not inside `W_i`, together with lines having
/// `U` different from both `Q cap A_1` and `U_1`, and `W <= W_(alpha_1+1)`
/// but not inside `W_i`.
pub fn line_family_k(
    code: &Code,
    ftp: &FlagThroughPoint,
    i: usize,
    w: &Subspace,
    q: &Subspace,
) -> Result<LineFamily, OrthoError> {
    if ftp.inside_a1() {
        return Err(OrthoError::Precondition("center must not lie in A_1"));
    }
    line_family(code, ftp, i, w, q)
}

/// `omega + l1 * omega_1 + l2 * omega_2`, where `omega_j` is the `k`-th
/// paired check on `line_j` around the `j`-th non-center point of `omega`,
/// and the scalars cancel those two points.
pub fn build_weight5(
    code: &Code,
    base: &ParityCheck,
    center: usize,
    line1: &Line,
    line2: &Line,
    k: usize,
) -> Result<ParityCheck, OrthoError> {
    let f = code.field();
    let anchors: Vec<usize> = base.positions().filter(|&p| p != center).collect();
    if base.weight() != 3 || anchors.len() != 2 {
        return Err(OrthoError::Precondition(
            "base check must have weight 3 through the center",
        ));
    }
    let mut acc = base.clone();
    for (&anchor, line) in anchors.iter().zip([line1, line2]) {
        let q = code.point(anchor).clone();
        let checks = paired_checks(code, &q, line)?;
        let side = checks
            .get(k)
            .ok_or(OrthoError::Precondition("pair index out of range"))?;
        let lambda = f.neg(
            f.div(base.coef_at(anchor), side.coef_at(anchor))
                .expect("nonzero"),
        );
        acc = acc.plus(&side.scaled(lambda, f), f);
    }
    if acc.weight() != 5 || acc.coef_at(center) != Elem::ONE {
        return Err(OrthoError::Degenerate);
    }
    Ok(acc)
}

/// Weight-5 tier: `A_2(P)` when `P <= A_1`, `B_2(P)` otherwise.
pub fn build_tier2(code: &Code, p: &Subspace) -> Result<OrthogonalCheckSet, OrthoError> {
    let (_, alpha1) = context(code)?;
    let f = code.field();
    let pos = code.position(p).ok_or(OrthoError::NotInVariety)?;
    let ftp = build_flag(code, p)?;
    let mut checks = Vec::new();
    for i in 3..=ftp.top_level(alpha1) {
        for w in level_spaces(&ftp, i, f) {
            let base_line = Line::new(ftp.u1().clone(), w.clone(), f).expect("P < W");
            for base in paired_checks(code, p, &base_line)? {
                let anchors: Vec<usize> = base.positions().filter(|&x| x != pos).collect();
                let fam1 = line_family(code, &ftp, i, &w, code.point(anchors[0]))?;
                let fam2 = line_family(code, &ftp, i, &w, code.point(anchors[1]))?;
                if fam1.len() != fam2.len() {
                    return Err(OrthoError::Precondition("anchor families differ in size"));
                }
                for (l1, l2) in fam1.members.iter().zip(&fam2.members) {
                    for k in 0..f.order() / 2 {
                        checks.push(build_weight5(code, &base, pos, l1, l2, k)?);
                    }
                }
            }
        }
    }
    let tiers = vec![Tier::Weight5; checks.len()];
    Ok(OrthogonalCheckSet::new(pos, checks, tiers))
}

pub fn build_a2(code: &Code, p: &Subspace) -> Result<OrthogonalCheckSet, OrthoError> {
    let ftp = build_flag(code, p)?;
    if !ftp.inside_a1() {
        return Err(OrthoError::Precondition("center must lie in A_1"));
    }
    build_tier2(code, p)
}

pub fn build_b2(code: &Code, p: &Subspace) -> Result<OrthogonalCheckSet, OrthoError> {
    let ftp = build_flag(code, p)?;
    if ftp.inside_a1() {
        return Err(OrthoError::Precondition("center must not lie in A_1"));
    }
    build_tier2(code, p)
}

/// `J(P)`: both tiers.
pub fn build_full(code: &Code, p: &Subspace) -> Result<OrthogonalCheckSet, OrthoError> {
    let mut set = build_j1(code, p)?;
    set.extend(build_tier2(code, p)?);
    Ok(set)
}

/// `J(P)` for every coordinate, in coordinate order.
pub fn build_all(code: &Code) -> Result<Vec<OrthogonalCheckSet>, OrthoError> {
    context(code)?;
    code.points()
        .par_iter()
        .map(|p| build_full(code, p))
        .collect()
}

/// True when every weight-3 check lies on a line through `P` and every
/// weight-5 check has its four other points at distance exactly two.
pub fn tiers_separated(code: &Code, set: &OrthogonalCheckSet) -> bool {
    let f = code.field();
    let center = code.point(set.center());
    set.checks().iter().zip(set.tiers()).all(|(chk, tier)| {
        let want = match tier {
            Tier::Weight3 => (3, 1),
            Tier::Weight5 => (5, 2),
        };
        chk.weight() == want.0
            && chk
                .positions()
                .filter(|&x| x != set.center())
                .all(|x| injection_distance(center, code.point(x), f) == want.1)
    })
}

// Counting formulas.

fn half(q: u64) -> BigUint {
    BigUint::from(q / 2)
}

fn qi(n: usize, q: u64) -> BigUint {
    q_int(n as i64, q)
}

/// `|J_1(P)|`.
pub fn j1_count(q: u64, m: usize, alpha1: usize, inside_a1: bool) -> BigUint {
    half(q) * lines_through_point_count(q, m, alpha1, inside_a1)
}

/// Size of one level of `A_2(P)`.
pub fn a2_level_count(q: u64, m: usize, i: usize) -> BigUint {
    let h = half(q);
    &h * &h * (qi(i - 2, q) - qi(i - 3, q)) * (qi(2, q) - 1u32) * (qi(m - 2, q) - qi(i - 2, q))
}

/// Size of one level of `B_2(P)`.
pub fn b2_level_count(q: u64, m: usize, alpha1: usize, i: usize) -> BigUint {
    let h = half(q);
    let family =
        (qi(m - 2, q) - qi(i - 2, q)) + (q_pow(q, alpha1 as u32 - 1) - q_pow(q, i as u32 - 2));
    &h * &h * (qi(i - 2, q) - qi(i - 3, q)) * family
}

/// `|A_2(P)|` as a sum over levels `3..=alpha_1`.
pub fn a2_count(q: u64, m: usize, alpha1: usize) -> BigUint {
    (3..=alpha1).map(|i| a2_level_count(q, m, i)).sum()
}

/// `|B_2(P)|` as a sum over levels `3..=alpha_1+1`.
pub fn b2_count(q: u64, m: usize, alpha1: usize) -> BigUint {
    (3..=alpha1 + 1)
        .map(|i| b2_level_count(q, m, alpha1, i))
        .sum()
}

fn exact_div(num: BigInt, den: BigInt) -> BigInt {
    debug_assert!((&num % &den).is_zero());
    num / den
}

fn big(x: BigUint) -> BigInt {
    BigInt::from(x)
}

/// Closed form of `a2_count`:
/// `(h^2/(q-1)) (q^(m-2) ([alpha_1-1]_q - 1) - (q^(2 alpha_1 - 2) - q^2)/(q^2-1))`.
pub fn a2_closed_form(q: u64, m: usize, alpha1: usize) -> BigUint {
    let qq = BigInt::from(q);
    let h = big(half(q));
    let inner = big(q_pow(q, m as u32 - 2)) * (big(qi(alpha1 - 1, q)) - 1)
        - exact_div(
            big(q_pow(q, 2 * alpha1 as u32 - 2)) - &qq * &qq,
            &qq * &qq - 1,
        );
    exact_div(&h * &h * inner, qq - 1)
        .to_biguint()
        .expect("nonnegative")
}

/// Closed form of `b2_count`:
/// `(h^2/(q-1)) ((q^(m-2) + (q-1) q^(alpha_1-1)) [alpha_1-1]_q - q^2 (q^(2 alpha_1 - 2) - 1)/(q^2-1))`.
pub fn b2_closed_form(q: u64, m: usize, alpha1: usize) -> BigUint {
    let qq = BigInt::from(q);
    let h = big(half(q));
    let lead = big(q_pow(q, m as u32 - 2)) + (&qq - 1) * big(q_pow(q, alpha1 as u32 - 1));
    let inner = lead * big(qi(alpha1 - 1, q))
        - exact_div(
            &qq * &qq * (big(q_pow(q, 2 * alpha1 as u32 - 2)) - 1),
            &qq * &qq - 1,
        );
    exact_div(&h * &h * inner, qq - 1)
        .to_biguint()
        .expect("nonnegative")
}

/// Guaranteed number of orthogonal checks on every coordinate.
pub fn j_lower_bound(q: u64, m: usize, alpha1: usize) -> Result<BigUint, OrthoError> {
    if alpha1 < 2 || alpha1 + 1 > m {
        return Err(OrthoError::Alpha1OutOfRange {
            alpha1,
            max: m.saturating_sub(1),
        });
    }
    Ok(b2_closed_form(q, m, alpha1) + j1_count(q, m, alpha1, false))
}

/// Weight-5 closed form for centers inside `A_1` as it is usually printed:
/// `(h^2/(q-1)) (q^(m-2) [alpha_1-1]_q - (q^(2 alpha_1 - 2) - 1)/(q^2-1))`.
/// It disagrees with the level sum; kept for comparison only.
pub fn a2_printed_form(q: u64, m: usize, alpha1: usize) -> BigRational {
    let r = |x: BigUint| BigRational::from_integer(BigInt::from(x));
    let qq = BigRational::from_integer(BigInt::from(q));
    let h = r(half(q));
    let one = BigRational::one();
    let inner = r(q_pow(q, m as u32 - 2)) * r(qi(alpha1 - 1, q))
        - (r(q_pow(q, 2 * alpha1 as u32 - 2)) - &one) / (&qq * &qq - &one);
    &h * &h * inner / (qq - one)
}

/// Weight-5 closed form for centers outside `A_1` as it is usually printed:
/// `h^2 ((q^(m-2) + q^(alpha_1-1)) [alpha_1-1]_q - q^2 (q^(2 alpha_1 - 4) - 1)/(q^2-1))`.
/// It disagrees with the level sum; kept for comparison only.
pub fn b2_printed_form(q: u64, m: usize, alpha1: usize) -> BigRational {
    let r = |x: BigUint| BigRational::from_integer(BigInt::from(x));
    let qq = BigRational::from_integer(BigInt::from(q));
    let h = r(half(q));
    let one = BigRational::one();
    let lead = r(q_pow(q, m as u32 - 2)) + r(q_pow(q, alpha1 as u32 - 1));
    let tail = &qq * &qq * (r(q_pow(q, 2 * alpha1 as u32 - 4)) - &one) / (&qq * &qq - &one);
    &h * &h * (lead * r(qi(alpha1 - 1, q)) - tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::disc_contains;

    fn code(q: u32, alpha: &[usize], m: usize) -> Code {
        Code::schubert(alpha, m, &Field::new(q).unwrap()).unwrap()
    }

    fn pt(m: usize, rows: &[&[u8]], f: &Field) -> Subspace {
        let vs: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Elem(x)).collect())
            .collect();
        Subspace::from_vectors(m, &vs, f)
    }

    #[test]
    fn flag_through_point_shapes() {
        let c = code(2, &[2, 4], 4);
        let f = c.field().clone();
        let a1 = c.flag().unwrap().space(1).clone();
        let ftp = build_flag(&c, &a1).unwrap();
        assert!(ftp.inside_a1());
        assert_eq!(ftp.w(2), &a1);
        assert_eq!(ftp.chain().len(), 3);
        assert!(ftp.u1().is_subspace_of(&a1, &f));

        let m = 5;
        let c = code(2, &[3, 5], m);
        let p = pt(m, &[&[1, 0, 0, 0, 0], &[0, 0, 0, 0, 1]], &f);
        let ftp = build_flag(&c, &p).unwrap();
        assert!(!ftp.inside_a1());
        assert_eq!(ftp.u1(), &Subspace::coordinate(m, &[4]));
        for i in 2..=m {
            let mut idx = vec![0, 4];
            idx.extend(1..i - 1);
            idx.sort();
            assert_eq!(ftp.w(i), &Subspace::coordinate(m, &idx));
            assert_eq!(ftp.w(i).dim(), i);
        }
        let a1 = c.flag().unwrap().space(1);
        assert_eq!(ftp.w(4), &p.sum(a1, &f).unwrap());
    }

    #[test]
    fn flag_rejects_points_outside() {
        let c = code(2, &[2, 4], 4);
        let f = c.field().clone();
        let p = pt(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]], &f);
        assert_eq!(build_flag(&c, &p).unwrap_err(), OrthoError::NotInVariety);
        let bad = Code::schubert(&[1, 4], 4, &f).unwrap();
        assert!(matches!(
            build_flag(&bad, &Subspace::coordinate(4, &[0, 1])).unwrap_err(),
            OrthoError::Alpha1OutOfRange { .. }
        ));
    }

    #[test]
    fn j1_sizes() {
        let c = code(2, &[2, 4], 4);
        let f = c.field().clone();
        let outside = pt(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]], &f);
        assert_eq!(build_j1(&c, &outside).unwrap().len(), 5);
        let inside = Subspace::coordinate(4, &[0, 1]);
        assert_eq!(build_j1(&c, &inside).unwrap().len(), 9);
        let c3 = code(3, &[2, 4], 4);
        let f3 = c3.field().clone();
        let outside3 = pt(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]], &f3);
        assert_eq!(build_j1(&c3, &outside3).unwrap().len(), 7);
    }

    #[test]
    fn family_sizes_and_membership() {
        let cases: [(u32, [usize; 2], usize, usize, usize); 3] = [
            (2, [2, 4], 4, 3, 2),
            (3, [2, 4], 4, 3, 3),
            (2, [3, 5], 5, 3, 8),
        ];
        for (q, alpha, m, i, want) in cases {
            let c = code(q, &alpha, m);
            let f = c.field().clone();
            let p = Subspace::coordinate(m, &[0, m - 1]);
            let ftp = build_flag(&c, &p).unwrap();
            for w in level_spaces(&ftp, i, &f) {
                let base = Line::new(ftp.u1().clone(), w.clone(), &f).unwrap();
                for qpt in base.points(&f).into_iter().filter(|x| x != &p) {
                    let fam = line_family_k(&c, &ftp, i, &w, &qpt).unwrap();
                    assert_eq!(fam.len(), want);
                    for line in &fam.members {
                        assert!(c.flag().unwrap().contains_line(line, &f));
                        let near: Vec<_> = line
                            .points(&f)
                            .into_iter()
                            .filter(|x| disc_contains(&p, x, 1, &f))
                            .collect();
                        assert_eq!(near, vec![qpt.clone()]);
                    }
                }
            }
        }
        // center inside A_1: q=2, m=5, alpha_1=3, i=3 gives 2 * (7 - 1)
        let c = code(2, &[3, 5], 5);
        let f = c.field().clone();
        let p = Subspace::coordinate(5, &[0, 1]);
        let ftp = build_flag(&c, &p).unwrap();
        let w = &level_spaces(&ftp, 3, &f)[0];
        let base = Line::new(ftp.u1().clone(), w.clone(), &f).unwrap();
        let qpt = base.points(&f).into_iter().find(|x| x != &p).unwrap();
        let fam = line_family_l(&c, &ftp, 3, w, &qpt).unwrap();
        assert_eq!(fam.len(), 12);
        assert!(line_family_k(&c, &ftp, 3, w, &qpt).is_err());
        assert!(line_family_l(&c, &ftp, 4, w, &qpt).is_err());
        assert!(line_family_l(&c, &ftp, 3, w, &p).is_err());
    }

    #[test]
    fn full_sets_are_orthogonal() {
        let cases: [(u32, [usize; 2], usize); 4] = [
            (2, [2, 4], 4),
            (3, [2, 4], 4),
            (2, [3, 5], 5),
            (2, [2, 5], 5),
        ];
        for (q, alpha, m) in cases {
            let c = code(q, &alpha, m);
            let bound = j_lower_bound(q as u64, m, alpha[0]).unwrap();
            for set in build_all(&c).unwrap() {
                assert!(set.is_orthogonal());
                assert!(tiers_separated(&c, &set));
                for chk in set.checks() {
                    c.verify_check(chk).unwrap();
                }
                let p = c.point(set.center());
                let inside = p.is_subspace_of(c.flag().unwrap().space(1), c.field());
                let qq = q as u64;
                assert_eq!(
                    BigUint::from(set.count(Tier::Weight3)),
                    j1_count(qq, m, alpha[0], inside)
                );
                let tier2 = if inside {
                    a2_count(qq, m, alpha[0])
                } else {
                    b2_count(qq, m, alpha[0])
                };
                assert_eq!(BigUint::from(set.count(Tier::Weight5)), tier2);
                assert!(BigUint::from(set.len()) >= bound);
                if !inside {
                    assert_eq!(BigUint::from(set.len()), bound);
                }
            }
        }
    }

    #[test]
    fn weight5_over_gf2_uses_unit_scalars() {
        let c = code(2, &[2, 4], 4);
        let f = c.field().clone();
        let p = pt(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]], &f);
        let set = build_b2(&c, &p).unwrap();
        assert_eq!(set.len(), 2);
        for chk in set.checks() {
            assert!(chk.entries().iter().all(|e| e.1 == Elem::ONE));
        }
        assert!(build_a2(&c, &p).is_err());
        assert!(build_a2(&c, &Subspace::coordinate(4, &[0, 1]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn count_examples() {
        assert_eq!(a2_count(2, 4, 2), BigUint::zero());
        assert_eq!(a2_count(2, 5, 3), BigUint::from(12u32));
        assert_eq!(a2_count(2, 6, 3), BigUint::from(28u32));
        assert_eq!(b2_count(2, 4, 2), BigUint::from(2u32));
        assert_eq!(b2_count(3, 4, 2), BigUint::from(3u32));
        assert_eq!(b2_count(2, 5, 3), BigUint::from(16u32));
        assert_eq!(j_lower_bound(2, 4, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(j_lower_bound(2, 5, 2).unwrap(), BigUint::from(15u32));
        assert_eq!(j_lower_bound(2, 5, 3).unwrap(), BigUint::from(29u32));
        assert_eq!(j_lower_bound(3, 4, 2).unwrap(), BigUint::from(10u32));
        assert!(j_lower_bound(2, 4, 1).is_err());
        assert!(j_lower_bound(2, 4, 4).is_err());
    }

    #[test]
    fn closed_forms_match_level_sums() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for m in 3..9 {
                for a1 in 2..m {
                    assert_eq!(
                        a2_closed_form(q, m, a1),
                        a2_count(q, m, a1),
                        "A2 q={q} m={m} a1={a1}"
                    );
                    assert_eq!(
                        b2_closed_form(q, m, a1),
                        b2_count(q, m, a1),
                        "B2 q={q} m={m} a1={a1}"
                    );
                }
            }
        }
    }

    #[test]
    fn printed_forms_disagree_with_construction() {
        let r = |x: u32| BigRational::from_integer(BigInt::from(x));
        // nonzero where the construction is empty
        assert_ne!(a2_printed_form(2, 4, 2), r(0));
        assert_ne!(b2_printed_form(2, 4, 2), r(2));
    }
}
