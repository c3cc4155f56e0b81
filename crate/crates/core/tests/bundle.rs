use quartic_cones::bundle::{expected_nodes, fiber_quadric, hessian_sweep, node_count, SweepKind};
use quartic_cones::canring::{CurveContext, PanelConfig};
use quartic_cones::cone::{reconstruct_quartic, ReconstructOptions};
use quartic_cones::curve::generate_curve;
use quartic_cones::net::random_net;
use quartic_cones::rng::stream;
use quartic_cones::Fq;

fn context(g: usize, seed: u64) -> CurveContext<Fq> {
    let curve = generate_curve::<Fq>(g, seed).unwrap();
    CurveContext::new(curve, PanelConfig::default()).unwrap()
}

#[test]
fn node_formula_matches_genus_bookkeeping() {
    for g in 4..=7 {
        assert_eq!(expected_nodes(g), 2 * (g - 1) * (g - 3));
    }
}

#[test]
fn hessian_curve_is_gamma_and_steinerian_recovers_points() {
    for (g, seed) in [(4, 1), (5, 7)] {
        let ctx = context(g, seed);
        let mut rng = stream(13, "bundle-test");
        let net = random_net(&ctx, &mut rng).unwrap();
        let cone = reconstruct_quartic(&ctx, &net, &ReconstructOptions::default()).unwrap();
        let rows = hessian_sweep(&ctx, &net, &cone, 120, 5).unwrap();
        assert_eq!(rows.len(), 120);
        for r in &rows {
            assert_eq!(r.on_gamma(), r.singular_fiber(), "{r:?}");
        }
        assert!(rows.iter().any(|r| r.kind == SweepKind::GammaPoint));
        assert!(rows.iter().any(|r| r.kind == SweepKind::Random && !r.on_gamma()));
        let matches = rows.iter().filter(|r| r.kernel_match == Some(true)).count();
        assert!(rows.iter().all(|r| r.kernel_match != Some(false)));
        assert!(matches >= 50, "{matches}");

        let u = net.project(ctx.panel()[0].coords());
        let fq = fiber_quadric(&ctx, &net, &cone, &u).unwrap();
        assert_eq!(fq.gram.rows(), g - 2);

        let gamma = net.gamma.as_ref().unwrap();
        assert_eq!(node_count(gamma, &mut rng).unwrap(), expected_nodes(g));
    }
}
