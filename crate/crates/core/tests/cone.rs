use num_traits::Zero;
use quartic_cones::canring::{CurveContext, PanelConfig};
use quartic_cones::cone::{
    bitangent_partner, double_quadric_quartic, double_section_net, lw_space, polar_cubic,
    reconstruct_quartic, secant_criterion, split_fiber, tangent_space_check, vertex_secant_net,
    ReconstructOptions,
};
use quartic_cones::curve::generate_curve;
use quartic_cones::matrix::rank_of;
use quartic_cones::net::{d_net, fw_oracle, random_net};
use quartic_cones::rng::stream;
use quartic_cones::{Fq, PrimeField};

fn context(g: usize, seed: u64) -> CurveContext<Fq> {
    let curve = generate_curve::<Fq>(g, seed).unwrap();
    CurveContext::new(curve, PanelConfig::default()).unwrap()
}

#[test]
fn reconstruction_is_certified_and_seed_independent() {
    for (g, seed) in [(4, 1), (5, 7)] {
        let ctx = context(g, seed);
        let mut rng = stream(2, "cone-test");
        let net = random_net(&ctx, &mut rng).unwrap();
        let opts = ReconstructOptions::default();
        let cone = reconstruct_quartic(&ctx, &net, &opts).unwrap();
        let cert = &cone.certificate;
        eprintln!("g={g} {cert:?}");
        assert!(cert.passed());
        assert_eq!(cert.oracle_checked, 50);
        assert!(cert.oracle_on_cone > 0);
        assert!(ctx.ideal(4).contains(cone.form.coeffs()));

        let other = reconstruct_quartic(&ctx, &net, &ReconstructOptions { seed: 99, ..opts }).unwrap();
        assert_eq!(other.form, cone.form);

        // splitting identity on fresh pencils, and oracle on a fiber
        for _ in 0..3 {
            let u: Vec<Fq> = (0..3).map(|_| Fq::random(&mut rng)).collect();
            let v = net.pencil_of(&u).unwrap();
            let fiber = split_fiber(&ctx, &net, &v).unwrap();
            assert!(fiber.g_matrix.is_symmetric());
            assert_ne!(fiber.g_matrix.determinant(), Fq::zero());
            let beta: Vec<Fq> = (0..g - 2).map(|_| Fq::random(&mut rng)).collect();
            let b = fiber.point(&beta);
            assert_eq!(
                fw_oracle(&ctx, &net, &b).unwrap(),
                fiber.quadric_at(&beta).is_zero()
            );
        }

        for x in &net.vertex {
            let polar = polar_cubic(&ctx, &cone, x, 4, 50).unwrap();
            assert!(polar.certificate.passed(), "{:?}", polar.certificate);
        }
        let lw = lw_space(&ctx, &cone).unwrap();
        assert_eq!(lw.dim(), g - 3);
        assert_eq!(lw.polar_rank, g - 3);
        assert!(lw.polars_inside);

        for p in ctx.panel().iter().take(10) {
            assert!(tangent_space_check(&ctx, &net, &cone, p).unwrap());
        }
        let pts = ctx.panel();
        for i in 0..10 {
            let r = secant_criterion(&ctx, &net, &cone, &pts[i], &pts[i + 20]).unwrap();
            assert_eq!(r, (false, false));
        }
    }
}

#[test]
fn engineered_secants_lie_on_the_cone() {
    for (g, seed) in [(4, 1), (5, 7)] {
        let ctx = context(g, seed);
        let mut rng = stream(6, "secant-test");
        let (p, q) = (&ctx.panel()[3], &ctx.panel()[40]);
        let net = vertex_secant_net(&ctx, p, q, &mut rng).unwrap();
        let cone = reconstruct_quartic(&ctx, &net, &ReconstructOptions::default()).unwrap();
        assert_eq!(secant_criterion(&ctx, &net, &cone, p, q).unwrap(), (true, true));

    }
}

// A section vanishing doubly at p and q makes the secant tangent to the cone at
// both points, but the restriction is c·s²t² rather than zero; the oracle agrees.
#[test]
fn double_section_secants_are_bitangent_not_contained() {
    for (g, seed) in [(4, 1), (5, 7)] {
        let ctx = context(g, seed);
        let mut rng = stream(6, "secant-test");
        let (p, q) = if g == 5 {
            (ctx.panel()[5].clone(), ctx.panel()[17].clone())
        } else {
            let mut found = None;
            for p in ctx.panel().iter().take(20) {
                if let Some(q) = bitangent_partner(&ctx, p, &mut rng).unwrap() {
                    found = Some((p.clone(), q));
                    break;
                }
            }
            found.expect("a bitangent plane among 20 tries")
        };
        let net = double_section_net(&ctx, &p, &q, &mut rng).unwrap();
        let cone = reconstruct_quartic(&ctx, &net, &ReconstructOptions::default()).unwrap();
        let line = cone.form.on_line(p.coords(), q.coords());
        assert_eq!(line.degree(), Some(2));
        assert!(line.coeff(0).is_zero() && line.coeff(1).is_zero());
        assert_eq!(secant_criterion(&ctx, &net, &cone, &p, &q).unwrap(), (false, true));
        for k in 1..4u64 {
            let t = Fq::from_u64(7919 * k);
            let b: Vec<Fq> = p.coords().iter().zip(q.coords()).map(|(&a, &c)| a + t * c).collect();
            assert!(!fw_oracle(&ctx, &net, &b).unwrap());
        }
    }
}

#[test]
fn d_nets_give_double_quadrics() {
    for (g, seed) in [(4, 1), (5, 7)] {
        let ctx = context(g, seed);
        let mut rng = stream(8, "dq-test");
        let net = d_net(&ctx, &mut rng).unwrap();
        let cone = double_quadric_quartic(&ctx, &net).unwrap();
        assert!(cone.certificate.passed());
        let q = net.d_quadric().unwrap();
        let square = q.pow(2);
        let rows = vec![cone.form.coeffs().to_vec(), square.coeffs().to_vec()];
        assert_eq!(rank_of(&rows, rows[0].len()), 1);
    }
}
