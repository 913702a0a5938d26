use proptest::prelude::*;
use unf_core::corpus::{self, integer_corpus, structured_corpus, worked_fixtures};
use unf_core::nilpotent::{diagram_is_valid, jordan_block_matrix};
use unf_core::uniform::{expand_factorization, generator_spaces, split_ker_im};
use unf_core::{
    assemble, is_semisimple, jordan_chevalley, kernel_filtration, verify_decomposition, verify_uniform, young_basis,
    Mat, Poly,
};

fn all_inputs() -> Vec<Mat> {
    let mut v = integer_corpus(2024, 80, 5);
    v.extend(structured_corpus());
    v.extend(worked_fixtures().into_iter().map(|(_, m)| m));
    v
}

fn small_matrix() -> impl Strategy<Value = Mat> {
    (1usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |d| Mat::from_i64(n, n, &d))
    })
}

#[test]
fn full_pipeline_on_corpus() {
    for a in all_inputs() {
        let dec = jordan_chevalley(&a).unwrap_or_else(|e| panic!("{e} on {a:?}"));
        assert!(verify_decomposition(&a, &dec).all_passed(), "{a:?}");
        assert!(dec.state.telescopes(dec.squarefree.big_m));
        assert_eq!(dec.state.first_recurrence_failure(), None);

        let unf = assemble(&a, &dec).unwrap_or_else(|e| panic!("{e} on {a:?}"));
        let report = verify_uniform(&unf, &a, &dec);
        assert!(report.all_passed(), "{report:?} on {a:?}");
        assert_eq!(expand_factorization(&unf.factorization), a.char_poly().unwrap());
    }
}

#[test]
fn semisimple_iff_nilpotent_part_vanishes() {
    for a in all_inputs() {
        let ss = is_semisimple(&a).unwrap();
        let dec = jordan_chevalley(&a).unwrap();
        assert_eq!(ss.semisimple, dec.n.is_zero(), "{a:?}");
        assert_eq!(ss.semisimple, ss.squarefree.big_m == 1 || dec.n.is_zero());
    }
}

#[test]
fn kernel_and_image_of_s_are_complementary_and_n_invariant() {
    for a in all_inputs() {
        let dec = jordan_chevalley(&a).unwrap();
        let (ker, im) = split_ker_im(&dec.s).unwrap();
        assert_eq!(ker.dim() + im.dim(), a.rows());
        assert!(dec.n.restrict(&ker).is_ok() && dec.n.restrict(&im).is_ok());
    }
}

#[test]
fn generator_dimensions_follow_row_counts() {
    for a in all_inputs() {
        let dec = jordan_chevalley(&a).unwrap();
        let (ker, im) = split_ker_im(&dec.s).unwrap();
        for part in [ker, im] {
            if part.is_zero() {
                continue;
            }
            let n = dec.n.restrict(&part).unwrap();
            let s = dec.s.restrict(&part).unwrap();
            let (_, rows) = kernel_filtration(&n).unwrap();
            for (m, f) in generator_spaces(&n, &s).unwrap() {
                let next = rows.get(m).copied().unwrap_or(0);
                assert_eq!(f.dim(), rows[m - 1] - next);
                assert!(s.restrict(&f).is_ok());
            }
        }
    }
}

#[test]
fn s_restricted_to_block_has_power_char_poly() {
    for a in structured_corpus() {
        let dec = jordan_chevalley(&a).unwrap();
        let unf = assemble(&a, &dec).unwrap();
        for b in &unf.blocks {
            let u = unf_core::Subspace::from_spanning(&unf.p_basis.column_range(b.offset, b.offset + b.size()));
            let chi = dec.s.restrict(&u).unwrap().char_poly().unwrap();
            assert_eq!(chi, b.char_poly().pow(b.chain_length as u32));
        }
    }
}

#[test]
fn conjugated_nilpotents_match_filtration() {
    let mut rng = corpus::rng(99);
    for _ in 0..30 {
        let dim = rand::Rng::gen_range(&mut rng, 1..=6);
        let shape = corpus::random_partition(&mut rng, dim);
        let n = corpus::conjugated_nilpotent(&mut rng, &shape);
        let d = young_basis(&n).unwrap();
        assert!(diagram_is_valid(&n, &d));
        assert_eq!(d.lengths(), shape);
        let (basis, j) = jordan_block_matrix(&d);
        assert_eq!(&n * &basis, &basis * &j);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cayley_hamilton(a in small_matrix()) {
        let chi = a.char_poly().unwrap();
        prop_assert!(a.eval_poly(&chi).unwrap().is_zero());
    }

    #[test]
    fn rank_nullity_and_kernel(a in small_matrix()) {
        let k = a.kernel_basis();
        prop_assert_eq!(k.dim() + a.rank(), a.cols());
        prop_assert!((&a * k.basis()).is_zero());
        prop_assert_eq!(a.image_basis().dim(), a.rank());
    }

    #[test]
    fn char_poly_is_conjugation_invariant(a in small_matrix(), seed in any::<u64>()) {
        let (t, t_inv) = corpus::unimodular(&mut corpus::rng(seed), a.rows(), 2);
        let b = &(&t * &a) * &t_inv;
        prop_assert_eq!(a.char_poly().unwrap(), b.char_poly().unwrap());
    }

    #[test]
    fn jc_is_equivariant(a in small_matrix(), seed in any::<u64>()) {
        let (t, t_inv) = corpus::unimodular(&mut corpus::rng(seed), a.rows(), 2);
        let b = &(&t * &a) * &t_inv;
        let sa = jordan_chevalley(&a).unwrap().s;
        let sb = jordan_chevalley(&b).unwrap().s;
        prop_assert_eq!(sb, &(&t * &sa) * &t_inv);
    }

    #[test]
    fn jc_is_idempotent(a in small_matrix()) {
        let dec = jordan_chevalley(&a).unwrap();
        let again = jordan_chevalley(&dec.s).unwrap();
        prop_assert_eq!(&again.s, &dec.s);
        prop_assert!(again.n.is_zero());
    }

    #[test]
    fn s_is_a_polynomial_in_a(a in small_matrix()) {
        let dec = jordan_chevalley(&a).unwrap();
        prop_assert_eq!(a.eval_poly(&dec.s_polynomial).unwrap(), dec.s);
        let chi = a.char_poly().unwrap();
        prop_assert!(dec.s_polynomial.degree().map_or(true, |d| d < chi.degree().unwrap()));
    }

    #[test]
    fn solve_remultiplies(a in small_matrix(), x in proptest::collection::vec(-5i64..=5, 4)) {
        let x = Mat::from_i64(a.cols(), 1, &x[..a.cols()]);
        let rhs = &a * &x;
        let y = a.solve(&rhs).unwrap();
        prop_assert_eq!(&a * &y, rhs);
    }

    #[test]
    fn uniform_form_certifies(a in small_matrix()) {
        let dec = jordan_chevalley(&a).unwrap();
        let unf = assemble(&a, &dec).unwrap();
        prop_assert!(verify_uniform(&unf, &a, &dec).all_passed());
    }

    #[test]
    fn companion_char_poly(c in proptest::collection::vec(-4i64..=4, 1..6)) {
        let mut c = c;
        c.push(1);
        let p = Poly::from_ints(&c);
        prop_assert_eq!(Mat::companion(&p).char_poly().unwrap(), p);
    }
}
