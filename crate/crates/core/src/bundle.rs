//! The quadric bundle over `ℙW*`: for each `u` the residual quadric of
//! `F_W |_{ℙV_u⊥}` after removing `ℓ²`, its discriminant, its singular
//! point, and the nodes of `Γ`.

use rand::Rng;
use serde::Serialize;

use crate::bivariate::{resultant_y, Bivariate};
use crate::canring::CurveContext;
use crate::cone::{zeros_on_random_line, QuarticCone};
use crate::curve::{proportional, ProjPoint};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::forms::Form;
use crate::matrix::DenseMatrix;
use crate::net::{combine, Net, PlaneCurve};
use crate::poly::UniPoly;
use crate::rng::stream;

#[derive(Clone, Debug)]
pub struct FiberQuadric<F> {
    pub u: Vec<F>,
    /// `[f, e_1, …, e_{g−3}]`: `f` spans `V_u⊥` modulo the vertex, with `w(f) = 1`.
    pub basis: Vec<Vec<F>>,
    /// `F|_{ℙV_u⊥} / a²` in the coordinates `(a, x_1, …)` of `basis`.
    pub quotient: Form<F>,
    pub gram: DenseMatrix<F>,
}

impl<F: PrimeField> FiberQuadric<F> {
    pub fn discriminant(&self) -> F {
        self.gram.determinant()
    }

    pub fn to_ambient(&self, c: &[F]) -> Vec<F> {
        combine(&self.basis, c)
    }
}

/// The residual quadric of the fiber over `u ∈ ℙW*`.
pub fn fiber_quadric<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    cone: &QuarticCone<F>,
    u: &[F],
) -> Result<FiberQuadric<F>> {
    let g = ctx.genus();
    let v = net.pencil_of(u)?;
    let w = net
        .rows()
        .into_iter()
        .find(|r| DenseMatrix::from_rows(&[v[0].clone(), v[1].clone(), r.clone()], g).rank() == 3)
        .expect("W has rank 3");
    let system = DenseMatrix::from_rows(&[v[0].clone(), v[1].clone(), w], g);
    let mut rhs = vec![F::zero(); 3];
    rhs[2] = F::one();
    let (f, _) = system.solve_consistent(&rhs)?;
    let mut basis = vec![f];
    basis.extend(net.vertex.iter().cloned());

    let restricted = cone.form.restrict(&basis);
    let k = basis.len();
    let mut quotient = Form::zero(k, 2);
    for (e, c) in restricted.terms() {
        if e[0] < 2 {
            return Err(Error::SplittingViolation(e[0] as usize));
        }
        let mut e2 = e.clone();
        e2[0] -= 2;
        quotient = quotient.add(&Form::monomial(k, &e2, c));
    }
    let gram = quotient.gram();
    Ok(FiberQuadric {
        u: u.to_vec(),
        basis,
        quotient,
        gram,
    })
}

/// Whether `u` is a smooth point of `Γ` with a single sampled preimage.
fn smooth_fiber<F: PrimeField>(ctx: &CurveContext<F>, net: &Net<F>, u: &[F]) -> Result<()> {
    let gamma = net.gamma.as_ref().ok_or(Error::NetHasBasePoint)?;
    let preimages = ctx
        .all_points()
        .filter(|q| proportional(&net.project(q.coords()), u))
        .count();
    if preimages > 1 || gamma.gradient(u).iter().all(|x| x.is_zero()) {
        return Err(Error::NodeFiber);
    }
    Ok(())
}

/// Whether the singular point of the fiber quadric over `π(p)` is `p`.
pub fn steinerian_check<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    cone: &QuarticCone<F>,
    p: &ProjPoint<F>,
) -> Result<bool> {
    let u = net.project(p.coords());
    smooth_fiber(ctx, net, &u)?;
    let fq = fiber_quadric(ctx, net, cone, &u)?;
    let kernel = fq.gram.kernel_basis();
    if kernel.len() != 1 {
        return Ok(false);
    }
    Ok(proportional(&fq.to_ambient(&kernel[0]), p.coords()))
}

/// Number of singular points of `γ` over the algebraic closure.
///
/// Works in a random affine chart: the singular points are the common zeros
/// of `f`, `f_x`, `f_y`, their `x`-coordinates are the common roots of
/// `Res_y(f, ·)` against `f_x`, `f_y` and two random combinations, and the
/// rational ones are checked back on the curve.
pub fn node_count<F: PrimeField, R: Rng>(gamma: &PlaneCurve<F>, rng: &mut R) -> Result<usize> {
    for _ in 0..10 {
        match node_count_once(gamma, rng) {
            Err(Error::NonGenericCoordinates) => continue,
            other => return other,
        }
    }
    Err(Error::BudgetExhausted("generic coordinates for node count".into()))
}

fn node_count_once<F: PrimeField, R: Rng>(gamma: &PlaneCurve<F>, rng: &mut R) -> Result<usize> {
    let d = gamma.degree();
    let change: Vec<Vec<F>> = (0..3)
        .map(|_| (0..3).map(|_| F::random(rng)).collect())
        .collect();
    if DenseMatrix::from_rows(&change, 3).rank() < 3 {
        return Err(Error::NonGenericCoordinates);
    }
    let h = gamma.form.restrict(&change);
    // (0:1:0) off the curve keeps the y-degree at d in every fiber
    if h.coeff(&[0, d as u32, 0]).is_zero() {
        return Err(Error::NonGenericCoordinates);
    }
    if singular_at_infinity(&h) {
        return Err(Error::NonGenericCoordinates);
    }
    let mut table = vec![vec![F::zero(); d + 1]; d + 1];
    for (e, c) in h.terms() {
        table[e[0] as usize][e[1] as usize] = c;
    }
    let f = Bivariate::from_table(&table);
    let fx = f.partial_x();
    let fy = f.partial_y();
    let mut common = resultant_y(&f, &fx).gcd(&resultant_y(&f, &fy));
    for _ in 0..2 {
        let c = F::random(rng);
        let combo = fx.add(&fy.mul(&Bivariate::constant(c)));
        common = common.gcd(&resultant_y(&f, &combo));
    }
    if common.is_zero() {
        return Err(Error::NonGenericCoordinates);
    }
    let sq = common.squarefree_part();
    for x0 in sq.distinct_roots() {
        let in_y = f
            .eval_x(x0)
            .gcd(&fx.eval_x(x0))
            .gcd(&fy.eval_x(x0));
        if in_y.degree().unwrap_or(0) != 1 {
            return Err(Error::NonGenericCoordinates);
        }
    }
    Ok(sq.degree().unwrap_or(0))
}

/// Whether `h` has a singular point on the line `z = 0`.
fn singular_at_infinity<F: PrimeField>(h: &Form<F>) -> bool {
    let at_infinity = |form: &Form<F>| -> UniPoly<F> {
        // t ↦ form(t, 1, 0)
        let mut c = vec![F::zero(); form.degree() + 1];
        for (e, v) in form.terms() {
            if e[2] == 0 {
                c[e[0] as usize] = v;
            }
        }
        UniPoly::new(c)
    };
    let mut acc = at_infinity(h);
    for i in 0..3 {
        acc = acc.gcd(&at_infinity(&h.partial(i)));
    }
    acc.degree().unwrap_or(0) > 0 || acc.is_zero()
}

/// Kind of a sweep point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    /// `π(p)` for a sampled curve point.
    CurveImage,
    /// A rational point of `Γ` on a random line.
    GammaPoint,
    /// A random point of the plane.
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub kind: SweepKind,
    pub u: Vec<u64>,
    pub gamma: u64,
    pub det: u64,
    /// `None` when the Steinerian comparison does not apply.
    pub kernel_match: Option<bool>,
}

impl SweepRow {
    pub fn on_gamma(&self) -> bool {
        self.gamma == 0
    }

    pub fn singular_fiber(&self) -> bool {
        self.det == 0
    }
}

/// Fiber discriminants at `count` points of `ℙW*`, half of them on `Γ`.
pub fn hessian_sweep<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    cone: &QuarticCone<F>,
    count: usize,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    let gamma = net.gamma.as_ref().ok_or(Error::NetHasBasePoint)?;
    let mut rng = stream(seed, "hessian-sweep");
    let mut rows = Vec::with_capacity(count);
    let values = |u: &[F]| u.iter().map(|x| x.value()).collect::<Vec<u64>>();
    let push = |kind, u: Vec<F>, kernel_match, rows: &mut Vec<SweepRow>| -> Result<()> {
        let fq = fiber_quadric(ctx, net, cone, &u)?;
        rows.push(SweepRow {
            kind,
            u: values(&u),
            gamma: gamma.eval(&u).value(),
            det: fq.discriminant().value(),
            kernel_match,
        });
        Ok(())
    };
    let curve_target = count / 2;
    for p in ctx.panel().iter().take(curve_target) {
        let u = net.project(p.coords());
        let kernel_match = match steinerian_check(ctx, net, cone, p) {
            Ok(b) => Some(b),
            Err(Error::NodeFiber) => None,
            Err(e) => return Err(e),
        };
        push(SweepKind::CurveImage, u, kernel_match, &mut rows)?;
    }
    let lines = (count - rows.len()) / 2;
    let mut tries = 0;
    while rows.len() < curve_target + lines && tries < 50 * count {
        tries += 1;
        for u in zeros_on_random_line(&gamma.form, &mut rng) {
            if rows.len() < curve_target + lines && u.iter().any(|x| !x.is_zero()) {
                push(SweepKind::GammaPoint, u, None, &mut rows)?;
            }
        }
    }
    while rows.len() < count {
        let u: Vec<F> = (0..3).map(|_| F::random(&mut rng)).collect();
        if u.iter().all(|x| x.is_zero()) {
            continue;
        }
        push(SweepKind::Random, u, None, &mut rows)?;
    }
    Ok(rows)
}

/// `(2g − 3)(g − 2) − g`, the expected number of nodes of `Γ`.
pub fn expected_nodes(g: usize) -> usize {
    (2 * g - 3) * (g - 2) - g
}
