use std::sync::OnceLock;

use proptest::prelude::*;
use schubert_core::code::{Code, ParityCheck};
use schubert_core::decoder::{decode, DecoderTable};
use schubert_core::field::{Elem, Field};
use schubert_core::grassmann::{injection_distance, line_through_two, plucker, GrassmannIndex};
use schubert_core::io::{parse_words, write_words};
use schubert_core::linalg::{Matrix, Subspace};

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fn field_and_elems(count: usize) -> impl Strategy<Value = (Field, Vec<Elem>)> {
    prop::sample::select(&ORDERS[..]).prop_flat_map(move |q| {
        prop::collection::vec(0..q as u8, count)
            .prop_map(move |v| (Field::new(q).unwrap(), v.into_iter().map(Elem).collect()))
    })
}

fn matrix(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..q as u8, rows * cols)
        .prop_map(move |v| Matrix::from_vec(rows, cols, v.into_iter().map(Elem).collect()))
}

fn sized_matrix() -> impl Strategy<Value = (u32, Matrix)> {
    (prop::sample::select(&ORDERS[..]), 1usize..5, 1usize..6)
        .prop_flat_map(|(q, rows, cols)| (Just(q), matrix(q, rows, cols)))
}

fn vectors(q: u32, m: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Elem>>> {
    prop::collection::vec(
        prop::collection::vec((0..q as u8).prop_map(Elem), m),
        0..=max,
    )
}

proptest! {
    #[test]
    fn field_axioms((f, e) in field_and_elems(3)) {
        let (a, b, c) = (e[0], e[1], e[2]);
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
    }

    #[test]
    fn rank_and_kernel((q, a) in sized_matrix()) {
        let f = Field::new(q).unwrap();
        let r = a.rank(&f);
        prop_assert_eq!(r, a.transpose().rank(&f));
        let k = a.kernel(&f);
        prop_assert_eq!(k.rows() + r, a.cols());
        for v in k.row_iter() {
            prop_assert!(a.mul_vec(v, &f).iter().all(|x| x.is_zero()));
        }
        let e = a.rref(&f);
        prop_assert_eq!(e.matrix.rref(&f).matrix, e.matrix);
    }

    #[test]
    fn dimension_formula(q in prop::sample::select(&[2u32, 3, 4][..]), us in vectors(4, 5, 4), ws in vectors(4, 5, 4)) {
        let f = Field::new(q).unwrap();
        let clip = |vs: &Vec<Vec<Elem>>| -> Vec<Vec<Elem>> {
            vs.iter().map(|v| v.iter().map(|x| Elem(x.0 % q as u8)).collect()).collect()
        };
        let u = Subspace::from_vectors(5, &clip(&us), &f);
        let w = Subspace::from_vectors(5, &clip(&ws), &f);
        let sum = u.sum(&w, &f).unwrap();
        let cap = u.intersection(&w, &f).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
        prop_assert!(cap.is_subspace_of(&u, &f) && cap.is_subspace_of(&w, &f));
        prop_assert!(u.is_subspace_of(&sum, &f) && w.is_subspace_of(&sum, &f));
    }

    #[test]
    fn canonical_form_ignores_basis(q in prop::sample::select(&[2u32, 3, 5][..]), vs in vectors(5, 5, 3), mix in prop::collection::vec(0u8..5, 9)) {
        let f = Field::new(q).unwrap();
        let vs: Vec<Vec<Elem>> = vs.iter().map(|v| v.iter().map(|x| Elem(x.0 % q as u8)).collect()).collect();
        let s = Subspace::from_vectors(5, &vs, &f);
        // add random combinations of the spanning set; the span does not change
        let mut more = vs.clone();
        for chunk in mix.chunks(3) {
            let mut acc = vec![Elem::ZERO; 5];
            for (c, v) in chunk.iter().zip(&vs) {
                for (a, x) in acc.iter_mut().zip(v) {
                    *a = f.mul_add(*a, Elem(c % q as u8), *x);
                }
            }
            more.push(acc);
        }
        more.reverse();
        prop_assert_eq!(Subspace::from_vectors(5, &more, &f), s);
    }

    #[test]
    fn plucker_is_projective(a in 0usize..130, c0 in 1u8..3, c1 in 0u8..3) {
        let f = Field::new(3).unwrap();
        let g = grass34();
        let p = g.point(a);
        let b = p.basis();
        // new basis: (c0 r0 + c1 r1, r1)
        let r0: Vec<Elem> = b.row(0).iter().zip(b.row(1)).map(|(&x, &y)| f.add(f.mul(Elem(c0), x), f.mul(Elem(c1), y))).collect();
        let other = Subspace::from_vectors(4, &[b.row(1).to_vec(), r0], &f);
        prop_assert_eq!(&other, p);
        prop_assert_eq!(plucker(&other, 2, 4, &f).unwrap(), plucker(p, 2, 4, &f).unwrap());
    }

    #[test]
    fn distance_is_a_metric(a in 0usize..130, b in 0usize..130, c in 0usize..130) {
        let f = Field::new(3).unwrap();
        let g = grass34();
        let (p, q, r) = (g.point(a), g.point(b), g.point(c));
        let d = |x, y| injection_distance(x, y, &f);
        prop_assert_eq!(d(p, q), d(q, p));
        prop_assert_eq!(d(p, q) == 0, a == b);
        prop_assert!(d(p, r) <= d(p, q) + d(q, r));
    }

    #[test]
    fn lines_have_q_plus_one_points(a in 0usize..130, b in 0usize..130) {
        let f = Field::new(3).unwrap();
        let g = grass34();
        let (p, q) = (g.point(a), g.point(b));
        match line_through_two(p, q, &f) {
            Some(line) => {
                prop_assert_eq!(injection_distance(p, q, &f), 1);
                let pts = line.points(&f);
                prop_assert_eq!(pts.len(), 4);
                prop_assert!(pts.contains(p) && pts.contains(q));
                for x in &pts {
                    prop_assert!(line.u().is_subspace_of(x, &f) && x.is_subspace_of(line.w(), &f));
                }
            }
            None => prop_assert_ne!(injection_distance(p, q, &f), 1),
        }
    }

    #[test]
    fn parity_check_entries_are_canonical(q in prop::sample::select(&ORDERS[..]), raw in prop::collection::vec((0usize..20, 0u8..9), 0..12)) {
        let f = Field::new(q).unwrap();
        let entries: Vec<(usize, Elem)> = raw.into_iter().map(|(p, c)| (p, Elem(c % q as u8))).collect();
        let chk = ParityCheck::from_entries(entries, &f);
        let e = chk.entries();
        prop_assert!(e.windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(e.iter().all(|x| !x.1.is_zero()));
    }

    #[test]
    fn words_round_trip(q in prop::sample::select(&ORDERS[..]), words in prop::collection::vec(prop::collection::vec(0u8..9, 7), 0..5)) {
        let words: Vec<Vec<Elem>> = words.into_iter().map(|w| w.into_iter().map(|x| Elem(x % q as u8)).collect()).collect();
        let text = write_words(&words);
        prop_assert_eq!(parse_words(&text, q, 7).unwrap(), words);
    }
}

fn grass34() -> &'static GrassmannIndex {
    static G: OnceLock<GrassmannIndex> = OnceLock::new();
    G.get_or_init(|| GrassmannIndex::new(2, 4, &Field::new(3).unwrap()))
}

fn decoder_q3() -> &'static (Code, DecoderTable) {
    static T: OnceLock<(Code, DecoderTable)> = OnceLock::new();
    T.get_or_init(|| {
        let code = Code::schubert(&[2, 4], 4, &Field::new(3).unwrap()).unwrap();
        let table = DecoderTable::from_code(&code).unwrap();
        (code, table)
    })
}

fn decoder_a35() -> &'static (Code, DecoderTable) {
    static T: OnceLock<(Code, DecoderTable)> = OnceLock::new();
    T.get_or_init(|| {
        let code = Code::schubert(&[3, 5], 5, &Field::new(2).unwrap()).unwrap();
        let table = DecoderTable::from_code(&code).unwrap();
        (code, table)
    })
}

fn errors(n: usize, q: u8, t: usize) -> impl Strategy<Value = Vec<(usize, u8)>> {
    prop::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=t)
        .prop_flat_map(move |pos| {
            let k = pos.len();
            (Just(pos), prop::collection::vec(1..q, k))
        })
        .prop_map(|(pos, vals)| pos.into_iter().zip(vals).collect())
}

fn corrects(
    code: &Code,
    table: &DecoderTable,
    msg: &[u8],
    err: &[(usize, u8)],
) -> Result<(), TestCaseError> {
    let f = code.field();
    let msg: Vec<Elem> = msg.iter().map(|&x| Elem(x)).collect();
    let c = code.generator().encode(&msg, f);
    let mut r = c.clone();
    for &(p, v) in err {
        r[p] = f.add(r[p], Elem(v));
    }
    let out = decode(&r, table).unwrap();
    prop_assert!(out.success);
    prop_assert_eq!(out.corrected, c);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decoder_corrects_up_to_t_max_gf3(msg in prop::collection::vec(0u8..3, 5), err in errors(49, 3, 5)) {
        let (code, table) = decoder_q3();
        prop_assert_eq!(table.t_max(), 5);
        corrects(code, table, &msg, &err)?;
    }

    #[test]
    fn decoder_corrects_up_to_t_max_a35(msg in prop::collection::vec(0u8..2, 9), err in errors(91, 2, 14)) {
        let (code, table) = decoder_a35();
        prop_assert_eq!(table.t_max(), 14);
        corrects(code, table, &msg, &err)?;
    }

    #[test]
    fn every_check_annihilates_codewords(msg in prop::collection::vec(0u8..3, 5), center in 0usize..49) {
        let (code, table) = decoder_q3();
        let f = code.field();
        let msg: Vec<Elem> = msg.into_iter().map(Elem).collect();
        let c = code.generator().encode(&msg, f);
        for chk in table.sets()[center].checks() {
            prop_assert!(chk.syndrome(&c, f).is_zero());
        }
    }
}
