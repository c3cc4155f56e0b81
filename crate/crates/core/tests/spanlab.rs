use quartic_cones::canring::{CurveContext, PanelConfig};
use quartic_cones::curve::generate_curve;
use quartic_cones::spanlab::{accumulate_spans, base_locus_probe, squares_containment, SpanOptions};
use quartic_cones::Fq;

#[test]
fn spans_saturate_and_cut_out_the_curve() {
    for (g, seed, f4_rank) in [(4, 1, 5), (5, 7, 16)] {
        let curve = generate_curve::<Fq>(g, seed).unwrap();
        let ctx = CurveContext::new(curve, PanelConfig::default()).unwrap();
        let t = std::time::Instant::now();
        let mut spans = accumulate_spans(&ctx, &SpanOptions::default()).unwrap();
        eprintln!(
            "g={g} f4={} f3={} nets={} skipped={} traj={:?} {:?}",
            spans.f4.rank(),
            spans.f3.rank(),
            spans.nets_used,
            spans.nets_skipped,
            spans.f4.trajectory,
            t.elapsed()
        );
        assert_eq!(spans.f4.rank(), f4_rank);
        for f in spans.f3.basis() {
            assert!(ctx.ideal(3).contains(f.coeffs()));
        }
        let (r4, r3) = (spans.f4.rank(), spans.f3.rank());
        for _ in 0..10 {
            spans.add_next(&ctx, 0).unwrap();
        }
        assert_eq!((spans.f4.rank(), spans.f3.rank()), (r4, r3));

        let sq = squares_containment(&ctx, &spans.f4, 20, 1);
        eprintln!("{sq:?}");
        assert!(sq.passed());
        if g == 4 {
            assert_eq!(sq.random_quartic_contained, Some(false));
        }
        for acc in [&spans.f4, &spans.f3] {
            let rep = base_locus_probe(&ctx, acc, 500, 30, 2).unwrap();
            eprintln!("{rep:?}");
            assert!(rep.passed());
        }
    }
}
