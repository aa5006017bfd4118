//! Brute-force oracles and decoding experiments.
//!
//! Each oracle recomputes its answer directly (column-triple scans, pointwise
//! containment, disc membership, exhaustive enumeration) rather than reusing
//! the predicate or formula under test. Results are collected in a
//! [`VerificationReport`] whose text form is stable for a fixed seed.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::code::{
    dependent_column_triples, dual_min_distance_is_three, min_distance_bruteforce, Code, CodeError,
};
use crate::count::{binomial, gaussian_binomial, q_pow};
use crate::decoder::{decode, DecoderTable};
use crate::field::{Elem, Field};
use crate::grassmann::{
    all_lines, disc_contains, injection_distance, lines_through, GrassmannIndex, IndexTuple, Line,
};
use crate::linalg::{next_combination, Subspace};
use crate::ortho::{
    a2_count, a2_printed_form, b2_count, b2_printed_form, build_all, j1_count, j_lower_bound,
    tiers_separated, OrthogonalCheckSet, Tier,
};
use crate::schubert::{disc_flag, schubert_params, standard_flag};

/// Largest number of error patterns the exhaustive decode test will run.
pub const EXHAUSTIVE_PATTERN_LIMIT: u64 = 10_000_000;
/// Largest code length for the cubic column-triple scan.
pub const TRIPLE_SCAN_LIMIT: usize = 200;
/// Codebooks up to this size are used in full by the exhaustive decode test.
pub const FULL_CODEBOOK_LIMIT: u64 = 102;
/// Random messages used otherwise, on top of the zero and all-ones messages.
pub const SAMPLED_MESSAGES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Warn,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub status: Status,
    pub check: String,
    pub config: String,
    pub expected: String,
    pub observed: String,
    pub note: Option<String>,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "status={} check={} config={} expected={} observed={}",
            self.status, self.check, self.config, self.expected, self.observed
        )?;
        if let Some(note) = &self.note {
            write!(f, " note={note:?}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub seed: Option<u64>,
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    pub fn new(seed: Option<u64>) -> Self {
        VerificationReport {
            seed,
            entries: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        status: Status,
        check: &str,
        config: &str,
        expected: impl fmt::Display,
        observed: impl fmt::Display,
        note: Option<String>,
    ) {
        self.entries.push(Entry {
            status,
            check: check.to_string(),
            config: config.to_string(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            note,
        });
    }

    /// Pass when `expected == observed`, otherwise fail.
    pub fn compare<T: PartialEq + fmt::Display>(
        &mut self,
        check: &str,
        config: &str,
        expected: T,
        observed: T,
        note: Option<String>,
    ) {
        let status = if expected == observed {
            Status::Pass
        } else {
            Status::Fail
        };
        self.push(status, check, config, expected, observed, note);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        if self.seed.is_none() {
            self.seed = other.seed;
        }
        self.entries.extend(other.entries);
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    /// No hard failures. Warnings and skips are allowed.
    pub fn ok(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        let seed = self.seed.map_or("none".to_string(), |s| s.to_string());
        out.push_str(&format!(
            "summary pass={} fail={} warn={} skip={} seed={}\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Warn),
            self.count(Status::Skip),
            seed
        ));
        out
    }
}

/// A code to test: Grassmann when `alpha` is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeConfig {
    pub q: u32,
    pub l: usize,
    pub m: usize,
    pub alpha: Option<Vec<usize>>,
}

impl CodeConfig {
    pub fn schubert(q: u32, alpha: &[usize], m: usize) -> Self {
        CodeConfig {
            q,
            l: alpha.len(),
            m,
            alpha: Some(alpha.to_vec()),
        }
    }

    pub fn grassmann(q: u32, l: usize, m: usize) -> Self {
        CodeConfig {
            q,
            l,
            m,
            alpha: None,
        }
    }

    pub fn field(&self) -> Field {
        Field::new(self.q).expect("supported order")
    }

    pub fn build(&self) -> Result<Code, CodeError> {
        Code::build(self.l, self.m, self.alpha.as_deref(), &self.field())
    }
}

impl fmt::Display for CodeConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}-l{}-m{}", self.q, self.l, self.m)?;
        if let Some(a) = &self.alpha {
            let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            write!(f, "-a{}", parts.join("."))?;
        }
        Ok(())
    }
}

/// `(n, k, d)` from the closed formulas.
pub fn formula_params(cfg: &CodeConfig) -> (BigUint, BigUint, BigUint) {
    let q = cfg.q as u64;
    match &cfg.alpha {
        Some(a) => {
            let p = schubert_params(
                &IndexTuple::new(a.clone(), cfg.m).expect("valid alpha"),
                cfg.m,
                q,
            );
            (p.n, p.k, p.d)
        }
        None => {
            let (l, m) = (cfg.l as i64, cfg.m as i64);
            (
                gaussian_binomial(m, l, q).expect("l <= m"),
                binomial(m, l).to_biguint().expect("nonnegative"),
                q_pow(q, (cfg.l * (cfg.m - cfg.l)) as u32),
            )
        }
    }
}

/// Length, dimension and rank against the formulas; minimum distance by
/// enumerating every codeword when the codebook is small enough.
pub fn verify_parameters(configs: &[CodeConfig]) -> VerificationReport {
    let mut rep = VerificationReport::new(None);
    for cfg in configs {
        let label = cfg.to_string();
        let code = match cfg.build() {
            Ok(c) => c,
            Err(e) => {
                rep.push(
                    Status::Fail,
                    "params.build",
                    &label,
                    "code",
                    "error",
                    Some(e.to_string()),
                );
                continue;
            }
        };
        let (n, k, d) = formula_params(cfg);
        rep.compare("params.n", &label, n, BigUint::from(code.n()), None);
        rep.compare("params.k", &label, k.clone(), BigUint::from(code.k()), None);
        let rank = code.generator().matrix.rank(code.field());
        rep.compare("params.rank", &label, k, BigUint::from(rank), None);
        match min_distance_bruteforce(code.generator(), code.field()) {
            Ok(obs) => rep.compare("params.d", &label, d, BigUint::from(obs), None),
            Err(e) => rep.push(
                Status::Skip,
                "params.d",
                &label,
                d,
                "-",
                Some(e.to_string()),
            ),
        }
    }
    rep
}

/// Lines whose points all lie in the code's point set, by pointwise test.
fn lines_in_code(code: &Code) -> Vec<Line> {
    let f = code.field();
    let lines = all_lines(code.l(), code.m(), f);
    match code.flag() {
        None => lines,
        Some(flag) => lines
            .into_iter()
            .filter(|l| l.points(f).iter().all(|p| flag.contains(p, f)))
            .collect(),
    }
}

/// Supports of weight-3 dual words, found by a column-triple scan, against
/// all triples of collinear points inside the variety.
pub fn verify_dual_supports(cfg: &CodeConfig) -> VerificationReport {
    let mut rep = VerificationReport::new(None);
    let label = cfg.to_string();
    let code = match cfg.build() {
        Ok(c) => c,
        Err(e) => {
            rep.push(
                Status::Fail,
                "duals.build",
                &label,
                "code",
                "error",
                Some(e.to_string()),
            );
            return rep;
        }
    };
    if code.n() > TRIPLE_SCAN_LIMIT {
        rep.push(
            Status::Skip,
            "duals.scan",
            &label,
            "-",
            "-",
            Some(format!("n={} too large", code.n())),
        );
        return rep;
    }
    let f = code.field();
    let dependent: BTreeSet<[usize; 3]> = dependent_column_triples(code.generator(), f)
        .into_iter()
        .collect();
    let mut collinear = BTreeSet::new();
    for line in lines_in_code(&code) {
        let pos: Vec<usize> = line
            .points(f)
            .iter()
            .map(|p| code.position(p).expect("point of the code"))
            .collect();
        for a in 0..pos.len() {
            for b in a + 1..pos.len() {
                for c in b + 1..pos.len() {
                    let mut t = [pos[a], pos[b], pos[c]];
                    t.sort_unstable();
                    collinear.insert(t);
                }
            }
        }
    }
    let note = Some(format!(
        "dependent={} collinear={}",
        dependent.len(),
        collinear.len()
    ));
    rep.compare(
        "duals.dependent_in_collinear",
        &label,
        0,
        dependent.difference(&collinear).count(),
        note.clone(),
    );
    rep.compare(
        "duals.collinear_in_dependent",
        &label,
        0,
        collinear.difference(&dependent).count(),
        note,
    );
    rep.compare(
        "duals.min_distance_three",
        &label,
        true,
        dual_min_distance_is_three(code.generator(), f),
        None,
    );
    rep
}

/// The `(U, W)` line predicate against pointwise containment, for every
/// line of `G(l, m)`.
pub fn verify_line_classification(
    q: u32,
    l: usize,
    m: usize,
    alphas: &[Vec<usize>],
) -> VerificationReport {
    let mut rep = VerificationReport::new(None);
    let f = Field::new(q).expect("supported order");
    let lines = all_lines(l, m, &f);
    for alpha in alphas {
        let label = CodeConfig::schubert(q, alpha, m).to_string();
        let Ok(flag) = standard_flag(alpha, m) else {
            rep.push(
                Status::Fail,
                "lines.classify",
                &label,
                "valid alpha",
                "invalid",
                None,
            );
            continue;
        };
        let wrong = lines
            .par_iter()
            .filter(|line| {
                let pointwise = line.points(&f).iter().all(|p| flag.contains(p, &f));
                pointwise != flag.contains_line(line, &f)
            })
            .count();
        rep.compare(
            "lines.classify",
            &label,
            0,
            wrong,
            Some(format!("lines={}", lines.len())),
        );
    }
    rep
}

/// How many geometry cases to examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Default, Clone, Copy)]
struct Tally {
    cases: usize,
    bad: usize,
}

impl Tally {
    fn record(&mut self, holds: bool) {
        self.cases += 1;
        self.bad += usize::from(!holds);
    }
}

/// Counterexample tallies for the line/disc statements at one `(P, Q, L)`
/// with `Q` on `L`: `[t41, c43, c44, t45]`.
fn line_case(p: &Subspace, q: &Subspace, line: &Line, f: &Field, tallies: &mut [Tally; 4]) {
    let l = p.dim() as i64;
    let i = injection_distance(p, q, f) as i64;
    if i == 0 {
        return;
    }
    let pts = line.points(f);
    let within = |r: i64| pts.iter().filter(|x| disc_contains(p, x, r, f)).count();
    let cap = p.intersection(q, f).expect("same ambient");
    let sum = p.sum(q, f).expect("same ambient");
    let a = cap.is_subspace_of(line.u(), f);
    let b = line.w().is_subspace_of(&sum, f);
    let at_i = within(i);
    tallies[0].record((at_i >= 2) == (a || b));
    tallies[1].record((at_i == 1) == (!a && !b));
    tallies[2].record((1..=l).all(|r| {
        let c = within(r);
        c <= 1 || c == pts.len()
    }));
    let below = within(i - 1);
    tallies[3]
        .record((0..=i - 2).all(|j| within(j) == 0) && below <= 1 && (below == 1) == (a && b));
}

/// Disc-closure statement for points `P != T` on `line` and any `Q`.
fn closure_case(line: &Line, p: &Subspace, t: &Subspace, q: &Subspace, f: &Field) -> bool {
    let l = p.dim() as i64;
    (1..=l).all(|i| {
        !(disc_contains(p, q, i, f) && disc_contains(t, q, i, f))
            || line.points(f).iter().all(|r| disc_contains(r, q, i, f))
    })
}

/// Line/disc intersection statements in `G(l, m)` over `GF(q)`.
pub fn verify_line_theorems(q: u32, l: usize, m: usize, scope: Scope) -> VerificationReport {
    let f = Field::new(q).expect("supported order");
    let grass = GrassmannIndex::new(l, m, &f);
    let pts = grass.points();
    let label = format!("q{q}-l{l}-m{m}");
    let mut tallies = [Tally::default(); 4];
    let mut closure = Tally::default();
    let seed = match scope {
        Scope::Exhaustive => {
            let per_q: Vec<([Tally; 4], Tally)> = pts
                .par_iter()
                .map(|qp| {
                    let mut t = [Tally::default(); 4];
                    let mut c = Tally::default();
                    let lines = lines_through(qp, &f);
                    for p in pts {
                        for line in &lines {
                            line_case(p, qp, line, &f, &mut t);
                        }
                    }
                    // closure cases: lines through qp taken with qp as P, every T after it on the line
                    for line in &lines {
                        for tp in line.points(&f).into_iter().filter(|x| x > qp) {
                            for x in pts {
                                c.record(closure_case(line, qp, &tp, x, &f));
                            }
                        }
                    }
                    (t, c)
                })
                .collect();
            for (t, c) in per_q {
                for (acc, x) in tallies.iter_mut().zip(t) {
                    acc.cases += x.cases;
                    acc.bad += x.bad;
                }
                closure.cases += c.cases;
                closure.bad += c.bad;
            }
            None
        }
        Scope::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut done = 0;
            while done < samples {
                let p = &pts[rng.random_range(0..pts.len())];
                let qp = &pts[rng.random_range(0..pts.len())];
                if p == qp {
                    continue;
                }
                let lines = lines_through(qp, &f);
                let line = &lines[rng.random_range(0..lines.len())];
                line_case(p, qp, line, &f, &mut tallies);
                let on_line = line.points(&f);
                let pick = sample(&mut rng, on_line.len(), 2);
                let x = &pts[rng.random_range(0..pts.len())];
                closure.record(closure_case(
                    line,
                    &on_line[pick.index(0)],
                    &on_line[pick.index(1)],
                    x,
                    &f,
                ));
                done += 1;
            }
            Some(seed)
        }
    };
    let mut rep = VerificationReport::new(seed);
    let names = [
        "geometry.two_points_iff",
        "geometry.single_point_iff",
        "geometry.at_most_one_or_all",
        "geometry.smaller_radius",
    ];
    for (name, t) in names.iter().zip(tallies) {
        rep.compare(name, &label, 0, t.bad, Some(format!("cases={}", t.cases)));
    }
    rep.compare(
        "geometry.disc_closure",
        &label,
        0,
        closure.bad,
        Some(format!("cases={}", closure.cases)),
    );
    rep
}

/// The disc of radius `i` around each point, computed by distances, against
/// the Schubert variety of the matching flag.
pub fn verify_disc_identity(q: u32, l: usize, m: usize, radii: &[usize]) -> VerificationReport {
    let f = Field::new(q).expect("supported order");
    let grass = GrassmannIndex::new(l, m, &f);
    let label = format!("q{q}-l{l}-m{m}");
    let mut rep = VerificationReport::new(None);
    for &i in radii {
        let wrong = grass
            .points()
            .par_iter()
            .filter(|p| {
                let flag = disc_flag(p, i, &f).expect("radius within range");
                grass
                    .points()
                    .iter()
                    .any(|x| disc_contains(p, x, i as i64, &f) != flag.contains(x, &f))
            })
            .count();
        rep.compare(
            &format!("disc.radius{i}"),
            &label,
            0,
            wrong,
            Some(format!("centers={}", grass.len())),
        );
    }
    rep
}

fn inside_a1(code: &Code, pos: usize) -> bool {
    let flag = code.flag().expect("schubert code");
    code.point(pos).is_subspace_of(flag.space(1), code.field())
}

/// Constructed check-set sizes against the counting formulas, for every center.
pub fn verify_counts(code: &Code, sets: &[OrthogonalCheckSet]) -> VerificationReport {
    let mut rep = VerificationReport::new(None);
    let alpha = code.alpha().expect("schubert code").to_vec();
    let (q, m, a1) = (code.field().order() as u64, code.m(), alpha[0]);
    let label = CodeConfig::schubert(q as u32, &alpha, m).to_string();
    let bound = j_lower_bound(q, m, a1).expect("alpha_1 in range");
    let (mut j1_bad, mut t2_bad, mut out_bad, mut in_bad) = (0, 0, 0, 0);
    let (mut inside, mut outside) = (0, 0);
    for set in sets {
        let inn = inside_a1(code, set.center());
        let j1 = BigUint::from(set.count(Tier::Weight3));
        let t2 = BigUint::from(set.count(Tier::Weight5));
        let all = BigUint::from(set.len());
        j1_bad += usize::from(j1 != j1_count(q, m, a1, inn));
        let want_t2 = if inn {
            a2_count(q, m, a1)
        } else {
            b2_count(q, m, a1)
        };
        t2_bad += usize::from(t2 != want_t2);
        if inn {
            inside += 1;
            in_bad += usize::from(all < bound);
        } else {
            outside += 1;
            out_bad += usize::from(all != bound);
        }
    }
    let note = Some(format!(
        "centers={} inside_a1={inside} outside_a1={outside}",
        sets.len()
    ));
    rep.compare("counts.j1", &label, 0, j1_bad, note.clone());
    rep.compare("counts.tier2", &label, 0, t2_bad, note.clone());
    rep.compare(
        "counts.j_outside_equals_bound",
        &label,
        0,
        out_bad,
        note.clone(),
    );
    rep.compare("counts.j_inside_at_least_bound", &label, 0, in_bad, note);
    let j_min = sets.iter().map(OrthogonalCheckSet::len).min().unwrap_or(0);
    rep.compare("counts.j_min", &label, bound, BigUint::from(j_min), None);

    let as_rational = |x: BigUint| num_rational::BigRational::from_integer(BigInt::from(x));
    for (name, summed, printed) in [
        (
            "counts.printed_inside_form",
            a2_count(q, m, a1),
            a2_printed_form(q, m, a1),
        ),
        (
            "counts.printed_outside_form",
            b2_count(q, m, a1),
            b2_printed_form(q, m, a1),
        ),
    ] {
        let status = if as_rational(summed.clone()) == printed {
            Status::Pass
        } else {
            Status::Warn
        };
        rep.push(
            status,
            name,
            &label,
            summed,
            printed,
            Some("printed closed form vs level sum".into()),
        );
    }
    rep
}

/// Orthogonality on the center, dual membership, and tier placement.
pub fn verify_orthogonality(code: &Code, sets: &[OrthogonalCheckSet]) -> VerificationReport {
    let mut rep = VerificationReport::new(None);
    let alpha = code.alpha().expect("schubert code");
    let label = CodeConfig::schubert(code.field().order() as u32, alpha, code.m()).to_string();
    let checks: usize = sets.iter().map(OrthogonalCheckSet::len).sum();
    let note = Some(format!("centers={} checks={checks}", sets.len()));
    let not_orth = sets.iter().filter(|s| !s.is_orthogonal()).count();
    rep.compare(
        "ortho.orthogonal_on_center",
        &label,
        0,
        not_orth,
        note.clone(),
    );
    let bad = sets
        .par_iter()
        .flat_map_iter(|s| s.checks().iter())
        .filter(|c| !c.annihilates(&code.generator().matrix, code.field()))
        .count();
    rep.compare("ortho.in_dual_code", &label, 0, bad, note.clone());
    let misplaced = sets.iter().filter(|s| !tiers_separated(code, s)).count();
    rep.compare("ortho.tier_distances", &label, 0, misplaced, note);
    rep
}

fn code_label(code: &Code) -> String {
    let q = code.field().order() as u32;
    match code.alpha() {
        Some(a) => CodeConfig::schubert(q, a, code.m()).to_string(),
        None => CodeConfig::grassmann(q, code.l(), code.m()).to_string(),
    }
}

fn random_message(rng: &mut ChaCha8Rng, q: usize, k: usize) -> Vec<Elem> {
    (0..k).map(|_| Elem(rng.random_range(0..q) as u8)).collect()
}

fn random_nonzero(rng: &mut ChaCha8Rng, q: usize) -> Elem {
    Elem(rng.random_range(1..q) as u8)
}

/// Counts the error patterns of weight `1..=t`.
pub fn pattern_count(n: usize, q: usize, t: usize) -> BigUint {
    (1..=t)
        .map(|w| {
            binomial(n as i64, w as i64)
                .to_biguint()
                .expect("nonnegative")
                * BigUint::from(q - 1).pow(w as u32)
        })
        .sum()
}

/// Every nonzero error pattern of weight at most `t` in ascending order
/// of weight, then support, then values.
fn error_patterns(n: usize, q: usize, t: usize) -> Vec<Vec<(usize, Elem)>> {
    let mut out = Vec::new();
    for w in 1..=t.min(n) {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut vals = vec![1usize; w];
            loop {
                out.push(
                    support
                        .iter()
                        .zip(&vals)
                        .map(|(&p, &v)| (p, Elem(v as u8)))
                        .collect(),
                );
                // next value assignment, last fastest
                let mut i = w;
                while i > 0 && vals[i - 1] == q - 1 {
                    vals[i - 1] = 1;
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                vals[i - 1] += 1;
            }
            if !next_combination(&mut support, n) {
                break;
            }
        }
    }
    out
}

fn beyond_guarantee_status(failures: usize, t: usize, t_max: usize) -> Status {
    match (failures, t <= t_max) {
        (0, _) => Status::Pass,
        (_, true) => Status::Fail,
        (_, false) => Status::Warn,
    }
}

/// Decodes every codeword plus every error of weight `1..=t`. Small codebooks
/// are used in full; otherwise the zero word, the all-ones message, and
/// seeded random messages.
pub fn exhaustive_decode_test(
    code: &Code,
    table: &DecoderTable,
    t: usize,
    seed: u64,
) -> VerificationReport {
    let mut rep = VerificationReport::new(Some(seed));
    let label = code_label(code);
    let f = code.field();
    let (q, n, k) = (f.order(), code.n(), code.k());
    let patterns = pattern_count(n, q, t);
    if patterns > BigUint::from(EXHAUSTIVE_PATTERN_LIMIT) {
        rep.push(
            Status::Skip,
            "decode.exhaustive",
            &label,
            "-",
            "-",
            Some(format!("t={t} patterns={patterns} exceeds limit")),
        );
        return rep;
    }
    let book = (q as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    let messages: Vec<Vec<Elem>> = if book <= FULL_CODEBOOK_LIMIT {
        (0..book).map(|i| crate::code::digits(i, q, k)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ms = vec![vec![Elem::ZERO; k], vec![Elem::ONE; k]];
        ms.extend((0..SAMPLED_MESSAGES).map(|_| random_message(&mut rng, q, k)));
        ms
    };
    let words: Vec<Vec<Elem>> = messages
        .iter()
        .map(|m| code.generator().encode(m, f))
        .collect();
    let errors = error_patterns(n, q, t);
    let failures: usize = errors
        .par_iter()
        .map(|e| {
            words
                .iter()
                .filter(|c| {
                    let mut r = (*c).clone();
                    for &(p, v) in e {
                        r[p] = f.add(r[p], v);
                    }
                    decode(&r, table).expect("length n").corrected != **c
                })
                .count()
        })
        .sum();
    let decodes = errors.len() * words.len();
    rep.push(
        beyond_guarantee_status(failures, t, table.t_max()),
        "decode.exhaustive",
        &label,
        0,
        failures,
        Some(format!(
            "t={t} t_max={} patterns={} codewords={} decodes={decodes}",
            table.t_max(),
            errors.len(),
            words.len()
        )),
    );
    rep
}

/// Outcome of one seeded trial: uniform message, uniform support of size
/// exactly `t`, uniform nonzero values.
pub fn monte_carlo_trial(
    code: &Code,
    table: &DecoderTable,
    t: usize,
    seed: u64,
    trial: u64,
) -> bool {
    let f = code.field();
    let (q, n, k) = (f.order(), code.n(), code.k());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let c = code.generator().encode(&random_message(&mut rng, q, k), f);
    let mut r = c.clone();
    for p in sample(&mut rng, n, t.min(n)).into_iter() {
        r[p] = f.add(r[p], random_nonzero(&mut rng, q));
    }
    decode(&r, table).expect("length n").corrected == c
}

/// Seeded random decoding trials, run in parallel. Each trial draws from
/// its own stream of the seed, so the result does not depend on scheduling.
pub fn monte_carlo_decode_test(
    code: &Code,
    table: &DecoderTable,
    t: usize,
    trials: u64,
    seed: u64,
) -> VerificationReport {
    let mut rep = VerificationReport::new(Some(seed));
    let label = code_label(code);
    let failures = (0..trials)
        .into_par_iter()
        .filter(|&i| !monte_carlo_trial(code, table, t, seed, i))
        .count();
    rep.push(
        beyond_guarantee_status(failures, t, table.t_max()),
        "decode.monte_carlo",
        &label,
        0,
        failures,
        Some(format!("t={t} t_max={} trials={trials}", table.t_max())),
    );
    rep
}

/// Test groups selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Params,
    Duals,
    Lines,
    Geometry,
    Disc,
    Counts,
    Ortho,
    Decode,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "params" => Suite::Params,
            "duals" => Suite::Duals,
            "lines" => Suite::Lines,
            "geometry" => Suite::Geometry,
            "disc" => Suite::Disc,
            "counts" => Suite::Counts,
            "ortho" => Suite::Ortho,
            "decode" => Suite::Decode,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub samples: usize,
    pub trials: u64,
    /// Error weight for decode tests; `None` means the guaranteed radius.
    pub t: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 1,
            samples: 1000,
            trials: 10_000,
            t: None,
        }
    }
}

/// Geometry is exhaustive when the number of `(P, Q, L)` cases is small.
const EXHAUSTIVE_GEOMETRY_CASES: u128 = 20_000;

/// Runs one suite, or all of them, on a single configuration.
pub fn run_suite(suite: Suite, cfg: &CodeConfig, opts: &SuiteOptions) -> VerificationReport {
    let mut rep = VerificationReport::new(Some(opts.seed));
    let want = |s: Suite| suite == s || suite == Suite::All;
    let label = cfg.to_string();
    if want(Suite::Params) {
        rep.merge(verify_parameters(std::slice::from_ref(cfg)));
    }
    if want(Suite::Duals) {
        rep.merge(verify_dual_supports(cfg));
    }
    if want(Suite::Lines) {
        match &cfg.alpha {
            Some(a) => rep.merge(verify_line_classification(
                cfg.q,
                cfg.l,
                cfg.m,
                std::slice::from_ref(a),
            )),
            None => rep.push(
                Status::Skip,
                "lines.classify",
                &label,
                "-",
                "-",
                Some("no Schubert index".into()),
            ),
        }
    }
    if want(Suite::Geometry) {
        let q = cfg.q as u64;
        let points = gaussian_binomial(cfg.m as i64, cfg.l as i64, q).expect("l <= m");
        let through = gaussian_binomial(cfg.l as i64, 1, q).expect("l >= 1")
            * gaussian_binomial((cfg.m - cfg.l) as i64, 1, q).unwrap_or_default();
        let cases = (&points * &points * through).to_u128().unwrap_or(u128::MAX);
        let scope = if cases <= EXHAUSTIVE_GEOMETRY_CASES {
            Scope::Exhaustive
        } else {
            Scope::Sampled {
                samples: opts.samples,
                seed: opts.seed,
            }
        };
        rep.merge(verify_line_theorems(cfg.q, cfg.l, cfg.m, scope));
    }
    if want(Suite::Disc) {
        let radii: Vec<usize> = (0..=cfg.l).collect();
        rep.merge(verify_disc_identity(cfg.q, cfg.l, cfg.m, &radii));
    }
    let needs_sets = [Suite::Counts, Suite::Ortho, Suite::Decode]
        .into_iter()
        .any(want);
    if !needs_sets {
        return rep;
    }
    let built = cfg.build().map_err(|e| e.to_string()).and_then(|code| {
        build_all(&code)
            .map(|sets| (code, sets))
            .map_err(|e| e.to_string())
    });
    let (code, sets) = match built {
        Ok(x) => x,
        Err(e) => {
            rep.push(Status::Skip, "checks.build", &label, "-", "-", Some(e));
            return rep;
        }
    };
    if want(Suite::Counts) {
        rep.merge(verify_counts(&code, &sets));
    }
    if want(Suite::Ortho) {
        rep.merge(verify_orthogonality(&code, &sets));
    }
    if want(Suite::Decode) {
        match DecoderTable::new(code.field(), code.generator(), sets) {
            Ok(table) => {
                let t = opts.t.unwrap_or(table.t_max());
                let exhaustive = exhaustive_decode_test(&code, &table, t, opts.seed);
                if exhaustive.entries.iter().all(|e| e.status == Status::Skip) {
                    rep.merge(monte_carlo_decode_test(
                        &code,
                        &table,
                        t,
                        opts.trials,
                        opts.seed,
                    ));
                } else {
                    rep.merge(exhaustive);
                }
            }
            Err(e) => rep.push(
                Status::Fail,
                "decode.table",
                &label,
                "table",
                "error",
                Some(e.to_string()),
            ),
        }
    }
    rep
}
