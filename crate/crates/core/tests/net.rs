use num_traits::Zero;
use quartic_cones::canring::{CurveContext, PanelConfig};
use quartic_cones::curve::generate_curve;
use quartic_cones::field::dot;
use quartic_cones::net::{build_net, d_net, fw_oracle, oracle_witness, polar_oracle, random_net};
use quartic_cones::rng::stream;
use quartic_cones::{Error, Fq, PrimeField};

fn context(g: usize, seed: u64) -> CurveContext<Fq> {
    let curve = generate_curve::<Fq>(g, seed).unwrap();
    CurveContext::new(curve, PanelConfig::default()).unwrap()
}

#[test]
fn random_nets_have_vertex_gamma_and_res() {
    for (g, seed) in [(4, 1), (5, 7)] {
        let ctx = context(g, seed);
        let mut rng = stream(5, "net-test");
        for _ in 0..3 {
            let net = random_net(&ctx, &mut rng).unwrap();
            assert_eq!(net.vertex.len(), g - 3);
            for v in &net.vertex {
                assert!(net.in_vertex(v));
            }
            let k = (g - 2) * (g - 3) / 2;
            assert_eq!((net.res.rows(), net.res.cols()), (k, k));
            assert!(!net.in_b && !net.in_d);
            let gamma = net.gamma.as_ref().unwrap();
            assert_eq!(gamma.degree(), 2 * g - 2);
            for p in ctx.holdout() {
                assert!(gamma.eval(&net.project(p.coords())).is_zero());
            }
        }
    }
}

#[test]
fn rank_deficient_net_is_rejected() {
    let ctx = context(4, 1);
    let r = vec![Fq::from_u64(1), Fq::from_u64(2), Fq::from_u64(3), Fq::from_u64(4)];
    let w = vec![r.clone(), r.iter().map(|&x| x + x).collect(), vec![Fq::zero(); 4]];
    assert!(matches!(build_net(&ctx, &w), Err(Error::RankDeficientW(1))));
}

#[test]
fn d_nets_carry_a_vertex_quadric() {
    for (g, seed) in [(4, 1), (5, 7)] {
        let ctx = context(g, seed);
        let mut rng = stream(9, "d-test");
        let net = d_net(&ctx, &mut rng).unwrap();
        assert!(net.in_d);
        let q = net.d_quadric().expect("generic point of D");
        assert!(ctx.ideal(2).contains(q.coeffs()));
        assert!(q.restrict(&net.vertex).is_zero());
        let b: Vec<Fq> = (0..g).map(|_| Fq::random(&mut rng)).collect();
        assert!(matches!(fw_oracle(&ctx, &net, &b), Err(Error::NetInD)));
    }
}

#[test]
fn oracle_is_independent_of_representatives() {
    for (g, seed) in [(4, 1), (5, 7)] {
        let ctx = context(g, seed);
        let mut rng = stream(21, "oracle-test");
        let net = random_net(&ctx, &mut rng).unwrap();
        let mut trues = 0;
        for _ in 0..10 {
            let b: Vec<Fq> = (0..g).map(|_| Fq::random(&mut rng)).collect();
            let wit = oracle_witness(&ctx, &net, &b).unwrap();
            for s in &wit.pencil.basis {
                assert!(dot(s, &b).is_zero());
            }
            let c = Fq::random_nonzero(&mut rng);
            let shifted: Vec<Fq> = wit
                .y
                .iter()
                .zip(&wit.pencil.basis[0])
                .map(|(&y, &v)| y + c * v)
                .collect();
            assert_eq!(dot(&b, &shifted).is_zero(), wit.value());
            let scaled: Vec<Fq> = b.iter().map(|&x| c * x).collect();
            assert_eq!(fw_oracle(&ctx, &net, &scaled).unwrap(), wit.value());
            trues += wit.value() as usize;
            let x = &net.vertex[0];
            assert_eq!(
                polar_oracle(&ctx, &net, x, &b).unwrap(),
                dot(x, &shifted).is_zero()
            );
        }
        assert_eq!(trues, 0, "random points should lie off the quartic");
        assert!(matches!(
            fw_oracle(&ctx, &net, &net.vertex[0]),
            Err(Error::InVertex)
        ));
        assert!(matches!(
            fw_oracle(&ctx, &net, ctx.panel()[0].coords()),
            Err(Error::OnGammaFiber)
        ));
        let zero = vec![Fq::zero(); g];
        assert!(matches!(
            polar_oracle(&ctx, &net, &zero, &net.vertex[0]),
            Err(Error::NotVertexVector)
        ));
    }
}
