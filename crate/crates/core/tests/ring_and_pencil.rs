use num_traits::Zero;
use quartic_cones::canring::{ideal_dimension, CurveContext, PanelConfig};
use quartic_cones::curve::generate_curve;
use quartic_cones::forms::Form;
use quartic_cones::matrix::DenseMatrix;
use quartic_cones::pencil::{
    build_pencil, cup_gram, gram_by_evaluation, hessian_psi_membership, psi_hessian_at,
};
use quartic_cones::rng::stream;
use quartic_cones::{Error, Fq, PrimeField};
use rand::Rng;

fn context(g: usize, seed: u64) -> CurveContext<Fq> {
    let curve = generate_curve::<Fq>(g, seed).unwrap();
    CurveContext::new(curve, PanelConfig::default()).unwrap()
}

fn random_vec<R: Rng>(g: usize, rng: &mut R) -> Vec<Fq> {
    (0..g).map(|_| Fq::random(rng)).collect()
}

fn proportional_matrices(a: &DenseMatrix<Fq>, b: &DenseMatrix<Fq>) -> bool {
    let flat = |m: &DenseMatrix<Fq>| m.to_rows().concat();
    let rows = vec![flat(a), flat(b)];
    DenseMatrix::from_rows(&rows, rows[0].len()).rank() <= 1
}

#[test]
fn ideal_pieces_have_riemann_roch_dimensions() {
    for (g, seed) in [(4, 1), (5, 7)] {
        let ctx = context(g, seed);
        for n in 2..=4 {
            assert_eq!(ctx.ideal(n).dim(), ideal_dimension(g, n), "g={g} n={n}");
            let again = ctx.compute_ideal(n, true).unwrap();
            assert_eq!(&again, ctx.ideal(n), "holdout panel disagrees, g={g} n={n}");
        }
        for q in ctx.ideal(2).forms() {
            assert!(q.eval(ctx.holdout()[0].coords()).is_zero());
        }
        // quadrics generate in degree 3 exactly when g = 5
        assert_eq!(ctx.petri_check(), g == 5);
    }
}

#[test]
fn ring_products_are_associative_and_unital() {
    let ctx = context(4, 1);
    let mut rng = stream(3, "test");
    let a = ctx.class_of(&Form::linear(&random_vec(4, &mut rng)));
    let b = ctx.class_of(&Form::linear(&random_vec(4, &mut rng)));
    let c = ctx.class_of(&Form::linear(&random_vec(4, &mut rng)).pow(2));
    let left = ctx.multiply(&ctx.multiply(&a, &b), &c);
    let right = ctx.multiply(&a, &ctx.multiply(&b, &c));
    assert_eq!(left, right);
    assert_eq!(ctx.multiply(&ctx.one(), &a).values, a.values);
    assert!(ctx.in_graded_piece(&left));
}

#[test]
fn pencil_functional_and_grams() {
    for (g, seed) in [(4, 1), (5, 7)] {
        let ctx = context(g, seed);
        let mut rng = stream(11, "test");
        for _ in 0..3 {
            let v = vec![random_vec(g, &mut rng), random_vec(g, &mut rng)];
            let pencil = build_pencil(&ctx, &v).unwrap();
            assert_eq!(pencil.codim, 1);
            for q in ctx.ideal(3).forms() {
                assert!(pencil.apply(&q).is_zero());
            }
            let w = random_vec(g, &mut rng);
            let cup = cup_gram(&pencil, &w).unwrap();
            assert!(cup.gram.is_symmetric());
            assert_eq!(cup.corank(), 2, "g={g}");
            for b in &pencil.basis {
                assert!(cup.gram.mul_vec(b).iter().all(|x| x.is_zero()));
            }
            let eval = gram_by_evaluation(&ctx, &v, &w).unwrap();
            assert!(!eval.to_rows().concat().iter().all(|x| x.is_zero()));
            assert!(proportional_matrices(&eval, &cup.gram));

            let h = psi_hessian_at(&pencil, &w);
            let k = pencil.complement.len();
            let six = Fq::from_u64(6);
            for a in 0..k {
                for b in 0..k {
                    let (i, j) = (pencil.complement[a], pencil.complement[b]);
                    assert_eq!(h[(a, b)], six * cup.gram[(i, j)]);
                }
            }
            assert!(!hessian_psi_membership(&pencil, &w).unwrap());
            assert!(matches!(
                cup_gram(&pencil, &v[0]),
                Err(Error::LiftInPencil)
            ));
        }
    }
}
