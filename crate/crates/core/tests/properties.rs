//! Property tests for the algebra kernels and the cone invariants.
//!
//! Exact rationals serve as a second field: integer matrices with small
//! entries have all minors below p, so rank and determinant agree between
//! `Q` and `F_p`.

use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_rational::Ratio;
use num_traits::{One, Zero};
use proptest::prelude::*;

use quartic_cones::canring::{CurveContext, PanelConfig};
use quartic_cones::cone::{reconstruct_quartic, zeros_on_random_line, QuarticCone, ReconstructOptions};
use quartic_cones::curve::generate_curve;
use quartic_cones::forms::{monomial_index, monomials, num_monomials};
use quartic_cones::matrix::rank_of;
use quartic_cones::net::{fw_oracle, polar_oracle, random_net};
use quartic_cones::poly::resultant;
use quartic_cones::rng::stream;
use quartic_cones::{DenseMatrix, Error, Field, Form, Fp, Fq, PrimeField, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Q(Ratio<i128>);

macro_rules! q_op {
    ($tr:ident, $f:ident, $atr:ident, $af:ident, $op:tt) => {
        impl $tr for Q {
            type Output = Q;
            fn $f(self, o: Q) -> Q {
                Q(self.0 $op o.0)
            }
        }
        impl $atr for Q {
            fn $af(&mut self, o: Q) {
                self.0 = self.0 $op o.0;
            }
        }
    };
}
q_op!(Add, add, AddAssign, add_assign, +);
q_op!(Sub, sub, SubAssign, sub_assign, -);
q_op!(Mul, mul, MulAssign, mul_assign, *);

impl Div for Q {
    type Output = Q;
    fn div(self, o: Q) -> Q {
        Q(self.0 / o.0)
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Zero for Q {
    fn zero() -> Q {
        Q(Ratio::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Q {
    fn one() -> Q {
        Q(Ratio::one())
    }
}

impl Field for Q {
    fn inv(self) -> Option<Q> {
        (!self.0.is_zero()).then(|| Q(self.0.recip()))
    }
    fn from_i64(v: i64) -> Q {
        Q(Ratio::from_integer(v as i128))
    }
}

type F101 = Fp<101>;

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        (Just(r), Just(c), prop::collection::vec(-5i64..=5, r * c))
    })
}

fn matrix<F: Field>(r: usize, c: usize, v: &[i64]) -> DenseMatrix<F> {
    DenseMatrix::new(r, c, v.iter().map(|&x| F::from_i64(x)).collect())
}

fn fq_vec(n: usize) -> impl Strategy<Value = Vec<Fq>> {
    prop::collection::vec(0u64..Fq::MODULUS, n).prop_map(|v| v.into_iter().map(Fq::from_u64).collect())
}

fn poly101(max_deg: usize) -> impl Strategy<Value = UniPoly<F101>> {
    prop::collection::vec(0u64..101, 1..=max_deg + 1)
        .prop_map(|v| UniPoly::new(v.into_iter().map(F101::from_u64).collect()))
}

fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

proptest! {
    #[test]
    fn rank_plus_nullity_is_column_count((r, c, v) in small_matrix()) {
        let m = matrix::<Fq>(r, c, &v);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), c);
        prop_assert_eq!(m.rref().pivots.len(), m.rank());
        for k in &kernel {
            prop_assert!(is_zero_vec(&m.mul_vec(k)));
        }
        prop_assert_eq!(rank_of(&kernel, c), kernel.len());
        prop_assert_eq!(m.left_kernel_basis().len(), r - m.rank());
    }

    #[test]
    fn rank_and_determinant_agree_with_rationals((r, c, v) in small_matrix()) {
        let mp = matrix::<Fq>(r, c, &v);
        let mq = matrix::<Q>(r, c, &v);
        prop_assert_eq!(mp.rank(), mq.rank());
        prop_assert_eq!(mp.kernel_basis().len(), mq.kernel_basis().len());
        if r == c {
            let d = mq.determinant().0;
            prop_assert!(d.is_integer());
            prop_assert_eq!(mp.determinant(), Fq::from_i64(*d.numer() as i64));
            prop_assert_eq!(mp.inverse().is_some(), !d.is_zero());
        }
    }

    #[test]
    fn consistent_systems_are_solved((r, c, v) in small_matrix(), x in prop::collection::vec(-5i64..=5, 5)) {
        let m = matrix::<Q>(r, c, &v);
        let x0: Vec<Q> = x[..c].iter().map(|&a| Q::from_i64(a)).collect();
        let rhs = m.mul_vec(&x0);
        let (sol, kernel) = m.solve_consistent(&rhs).unwrap();
        prop_assert_eq!(m.mul_vec(&sol), rhs);
        prop_assert_eq!(kernel.len(), c - m.rank());
    }

    #[test]
    fn resultant_is_multiplicative(f in poly101(3), g in poly101(3), h in poly101(3)) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let fg = &f * &g;
        prop_assert_eq!(resultant(&fg, &h), resultant(&f, &h) * resultant(&g, &h));
    }

    #[test]
    fn resultant_of_split_polynomial(roots in prop::collection::vec(0u64..101, 1..5), g in poly101(4)) {
        prop_assume!(!g.is_zero());
        let roots: Vec<F101> = roots.into_iter().map(F101::from_u64).collect();
        let f = UniPoly::from_roots(&roots);
        let product = roots.iter().fold(F101::one(), |acc, &a| acc * g.eval(a));
        prop_assert_eq!(resultant(&f, &g), product);
    }

    #[test]
    fn distinct_roots_match_brute_force(f in poly101(8)) {
        prop_assume!(!f.is_zero());
        let brute: Vec<F101> = (0..101).map(F101::from_u64).filter(|&a| f.eval(a).is_zero()).collect();
        prop_assert_eq!(f.distinct_roots(), brute);
    }

    #[test]
    fn division_with_remainder(f in poly101(8), d in poly101(4)) {
        prop_assume!(!d.is_zero());
        let (q, r) = f.div_rem(&d);
        prop_assert_eq!(&(&q * &d) + &r, f.clone());
        prop_assert!(r.is_zero() || r.degree() < d.degree());
        let g = f.gcd(&d);
        prop_assert!(d.rem(&g).is_zero());
        prop_assert!(f.rem(&g).is_zero());
    }

    #[test]
    fn monomial_index_inverts_the_table(n in 1usize..=6, d in 0usize..=5) {
        let table = monomials(n, d);
        prop_assert_eq!(table.len(), num_monomials(n, d));
        for (i, e) in table.iter().enumerate() {
            prop_assert_eq!(monomial_index(e), i);
        }
    }

    #[test]
    fn euler_identity_and_polar_linearity(
        c in fq_vec(num_monomials(4, 4)),
        x in fq_vec(4),
        y in fq_vec(4),
        s in 0u64..Fq::MODULUS,
    ) {
        let f = Form::new(4, 4, c);
        let s = Fq::from_u64(s);
        // Σ x_i ∂_i F(x) = 4 F(x)
        prop_assert_eq!(f.polar(&x).eval(&x), Fq::from_i64(4) * f.eval(&x));
        let xy: Vec<Fq> = x.iter().zip(&y).map(|(&a, &b)| a + s * b).collect();
        prop_assert_eq!(f.polar(&xy), f.polar(&x).add(&f.polar(&y).scale(s)));
    }

    #[test]
    fn restriction_commutes_with_evaluation(
        c in fq_vec(num_monomials(5, 3)),
        basis in prop::collection::vec(fq_vec(5), 3),
        t in fq_vec(3),
    ) {
        let f = Form::new(5, 3, c);
        let point: Vec<Fq> = (0..5)
            .map(|i| (0..3).fold(Fq::zero(), |acc, k| acc + t[k] * basis[k][i]))
            .collect();
        prop_assert_eq!(f.restrict(&basis).eval(&t), f.eval(&point));
    }
}

struct Fixture {
    ctx: CurveContext<Fq>,
    cone: QuarticCone<Fq>,
}

fn fixture() -> &'static Fixture {
    static FIXTURE: OnceLock<Fixture> = OnceLock::new();
    FIXTURE.get_or_init(|| {
        let curve = generate_curve::<Fq>(5, 7).unwrap();
        let ctx = CurveContext::new(curve, PanelConfig::default()).unwrap();
        let net = random_net(&ctx, &mut stream(11, "property-net")).unwrap();
        let cone = reconstruct_quartic(&ctx, &net, &ReconstructOptions::default()).unwrap();
        Fixture { ctx, cone }
    })
}

/// `Ok(None)` when the oracle does not apply at `b`.
fn oracle(f: &Fixture, b: &[Fq]) -> Result<Option<bool>, Error> {
    match fw_oracle(&f.ctx, &f.cone.net, b) {
        Ok(v) => Ok(Some(v)),
        Err(Error::InVertex | Error::OnGammaFiber | Error::InadmissiblePencil { .. } | Error::CorankJump(_)) => {
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_is_projective(b in fq_vec(5), s in 1u64..Fq::MODULUS) {
        let f = fixture();
        let scaled: Vec<Fq> = b.iter().map(|&x| x * Fq::from_u64(s)).collect();
        prop_assume!(!is_zero_vec(&b));
        prop_assert_eq!(oracle(f, &b).unwrap(), oracle(f, &scaled).unwrap());
    }

    #[test]
    fn cone_vanishing_matches_oracle(seed in any::<u64>()) {
        let f = fixture();
        let mut rng = stream(seed, "property-line");
        for b in zeros_on_random_line(&f.cone.form, &mut rng) {
            if let Some(v) = oracle(f, &b).unwrap() {
                prop_assert!(v);
            }
        }
        let b: Vec<Fq> = (0..5).map(|_| Fq::random(&mut rng)).collect();
        if let Some(v) = oracle(f, &b).unwrap() {
            prop_assert_eq!(v, f.cone.eval(&b).is_zero());
        }
    }

    #[test]
    fn polars_match_their_oracle(seed in any::<u64>(), a in 0u64..Fq::MODULUS) {
        let f = fixture();
        let v = &f.cone.net.vertex;
        let x: Vec<Fq> = v[0].iter().zip(&v[1]).map(|(&p, &q)| p + Fq::from_u64(a) * q).collect();
        let polar = f.cone.polar(&x);
        let mut rng = stream(seed, "property-polar");
        let b: Vec<Fq> = (0..5).map(|_| Fq::random(&mut rng)).collect();
        match polar_oracle(&f.ctx, &f.cone.net, &x, &b) {
            Ok(on) => prop_assert_eq!(on, polar.eval(&b).is_zero()),
            Err(Error::InVertex | Error::OnGammaFiber | Error::InadmissiblePencil { .. } | Error::CorankJump(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}
