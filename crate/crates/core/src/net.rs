//! Nets `W ⊂ H⁰(ω)`: vertex, projection to `ℙW*`, the plane curve `Γ`,
//! membership in `𝒟` and `ℬ`, and the pointwise oracles for `F_W` and its
//! cubic polars.
//!
//! Points `b` of `ℙ^{g−1} = ℙH¹(𝒪)` pair with linear forms by evaluation,
//! so the hyperplane `H_b` is the kernel of `s ↦ s(b)` and the projection of
//! `b` to `ℙW*` is `W · b`.

use rand::Rng;

use crate::canring::CurveContext;
use crate::curve::ProjPoint;
use crate::error::{Error, Result};
use crate::field::{dot, normalize_first_nonzero, PrimeField};
use crate::forms::{monomial_values, num_monomials, Form};
use crate::matrix::DenseMatrix;
use crate::pencil::{build_pencil, cup_gram, PencilData};

/// A plane curve in the coordinates of `ℙW*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve<F> {
    pub form: Form<F>,
}

impl<F: PrimeField> PlaneCurve<F> {
    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn eval(&self, u: &[F]) -> F {
        self.form.eval(u)
    }

    pub fn gradient(&self, u: &[F]) -> Vec<F> {
        self.form.gradient(u)
    }
}

#[derive(Clone, Debug)]
pub struct Net<F> {
    /// Reduced echelon basis, three rows of length `g`.
    pub w: DenseMatrix<F>,
    /// Basis of the vertex `W⊥` (`g − 3` vectors).
    pub vertex: Vec<Vec<F>>,
    pub in_b: bool,
    /// Sampled curve points killed by all of `W`.
    pub base_points: Vec<ProjPoint<F>>,
    pub in_d: bool,
    /// Restriction of the `I(2)` basis to the vertex; rows follow the basis of `I(2)`.
    pub res: DenseMatrix<F>,
    /// Quadrics of `I(2)` containing the vertex.
    pub vertex_quadrics: Vec<Form<F>>,
    /// `None` exactly when the net has a base point.
    pub gamma: Option<PlaneCurve<F>>,
}

impl<F: PrimeField> Net<F> {
    pub fn genus(&self) -> usize {
        self.w.cols()
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.w.to_rows()
    }

    /// `π(b) = (s_1(b), s_2(b), s_3(b))`.
    pub fn project(&self, b: &[F]) -> Vec<F> {
        self.w.mul_vec(b)
    }

    /// The element `Σ α_i W_i` of `W`.
    pub fn element(&self, alpha: &[F]) -> Vec<F> {
        let g = self.genus();
        let mut s = vec![F::zero(); g];
        for (i, &a) in alpha.iter().enumerate() {
            for (x, &y) in s.iter_mut().zip(self.w.row(i)) {
                *x += a * y;
            }
        }
        s
    }

    /// The pencil `V_u = ker u ⊂ W` for `u ∈ ℙW*`.
    pub fn pencil_of(&self, u: &[F]) -> Result<Vec<Vec<F>>> {
        let kernel = DenseMatrix::from_rows(&[u.to_vec()], 3).kernel_basis();
        if kernel.len() != 2 {
            return Err(Error::Invalid("u must be a nonzero point of the plane".into()));
        }
        Ok(kernel.iter().map(|a| self.element(a)).collect())
    }

    pub fn in_vertex(&self, b: &[F]) -> bool {
        self.project(b).iter().all(|x| x.is_zero())
    }

    /// The quadric `Q_E` when the net is a generic point of `𝒟`.
    pub fn d_quadric(&self) -> Option<&Form<F>> {
        match self.vertex_quadrics.as_slice() {
            [q] => Some(q),
            _ => None,
        }
    }
}

/// Builds a net from three vectors of `H⁰(ω)`.
pub fn build_net<F: PrimeField>(ctx: &CurveContext<F>, w: &[Vec<F>]) -> Result<Net<F>> {
    let g = ctx.genus();
    if w.iter().any(|r| r.len() != g) {
        return Err(Error::Invalid("net rows must have length g".into()));
    }
    let ech = DenseMatrix::from_rows(w, g).rref();
    let rank = ech.pivots.len();
    if rank != 3 || w.len() != 3 {
        return Err(Error::RankDeficientW(rank));
    }
    let rows: Vec<Vec<F>> = (0..3).map(|i| ech.matrix.row(i).to_vec()).collect();
    let wm = DenseMatrix::from_rows(&rows, g);
    let vertex = wm.kernel_basis();

    let base_points: Vec<ProjPoint<F>> = ctx
        .all_points()
        .filter(|p| wm.mul_vec(p.coords()).iter().all(|x| x.is_zero()))
        .cloned()
        .collect();
    let in_b = !base_points.is_empty();

    let ideal = ctx.ideal(2);
    let res_rows: Vec<Vec<F>> = ideal
        .forms()
        .iter()
        .map(|q| q.restrict(&vertex).into_coeffs())
        .collect();
    let res_cols = num_monomials(vertex.len(), 2);
    let res = DenseMatrix::from_rows(&res_rows, res_cols);
    let vertex_quadrics: Vec<Form<F>> = res
        .left_kernel_basis()
        .iter()
        .map(|c| {
            let mut coeffs = vec![F::zero(); ideal.basis[0].len()];
            for (ci, b) in c.iter().zip(&ideal.basis) {
                for (x, &y) in coeffs.iter_mut().zip(b) {
                    *x += *ci * y;
                }
            }
            normalize_first_nonzero(&mut coeffs);
            Form::new(g, 2, coeffs)
        })
        .collect();
    let in_d = !vertex_quadrics.is_empty();

    let mut net = Net {
        w: wm,
        vertex,
        in_b,
        base_points,
        in_d: in_d || in_b,
        res,
        vertex_quadrics,
        gamma: None,
    };
    if !in_b {
        net.gamma = Some(gamma_equation(ctx, &net)?);
    }
    Ok(net)
}

/// The net whose vertex is spanned by `vertex` (`g − 3` independent vectors).
pub fn net_with_vertex<F: PrimeField>(ctx: &CurveContext<F>, vertex: &[Vec<F>]) -> Result<Net<F>> {
    let g = ctx.genus();
    let w = DenseMatrix::from_rows(vertex, g).kernel_basis();
    if w.len() != 3 {
        return Err(Error::RankDeficientW(g - w.len()));
    }
    build_net(ctx, &w)
}

/// A uniformly random net.
pub fn random_net<F: PrimeField, R: Rng>(ctx: &CurveContext<F>, rng: &mut R) -> Result<Net<F>> {
    let g = ctx.genus();
    loop {
        let w: Vec<Vec<F>> = (0..3)
            .map(|_| (0..g).map(|_| F::random(rng)).collect())
            .collect();
        match build_net(ctx, &w) {
            Err(Error::RankDeficientW(_)) => continue,
            other => return other,
        }
    }
}

/// Equation of `Γ = π(C)`, fitted through the projected panel.
pub fn gamma_equation<F: PrimeField>(ctx: &CurveContext<F>, net: &Net<F>) -> Result<PlaneCurve<F>> {
    if net.in_b {
        return Err(Error::NetHasBasePoint);
    }
    let g = ctx.genus();
    let d = 2 * g - 2;
    let m = num_monomials(3, d);
    let rows: Vec<Vec<F>> = ctx
        .panel()
        .iter()
        .map(|p| monomial_values(d, &net.project(p.coords())))
        .collect();
    if rows.len() < m + 10 {
        return Err(Error::AmbiguousFit(m + 10 - rows.len()));
    }
    let kernel = DenseMatrix::from_rows(&rows, m).kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::AmbiguousFit(kernel.len()));
    }
    let mut coeffs = kernel.into_iter().next().expect("one vector");
    normalize_first_nonzero(&mut coeffs);
    Ok(PlaneCurve {
        form: Form::new(3, d, coeffs),
    })
}

/// Everything computed by one oracle call.
#[derive(Clone, Debug)]
pub struct OracleWitness<F> {
    pub b: Vec<F>,
    pub pencil: PencilData<F>,
    pub w: Vec<F>,
    pub gram: DenseMatrix<F>,
    /// A solution of `gram · y = b`, defined modulo the pencil.
    pub y: Vec<F>,
}

impl<F: PrimeField> OracleWitness<F> {
    pub fn value(&self) -> bool {
        dot(&self.b, &self.y).is_zero()
    }

    pub fn polar_value(&self, x: &[F]) -> bool {
        dot(x, &self.y).is_zero()
    }
}

/// Runs the oracle construction at `b` and returns the witness.
pub fn oracle_witness<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    b: &[F],
) -> Result<OracleWitness<F>> {
    if net.in_b {
        return Err(Error::NetHasBasePoint);
    }
    if net.in_d {
        return Err(Error::NetInD);
    }
    let u = net.project(b);
    let Some(k) = u.iter().position(|x| !x.is_zero()) else {
        return Err(Error::InVertex);
    };
    let gamma = net.gamma.as_ref().ok_or(Error::NetHasBasePoint)?;
    if gamma.eval(&u).is_zero() {
        return Err(Error::OnGammaFiber);
    }
    let v = net.pencil_of(&u)?;
    let pencil = build_pencil(ctx, &v)?;
    let w = net.w.row(k).to_vec();
    let cup = cup_gram(&pencil, &w)?;
    let corank = cup.corank();
    if corank != 2 {
        return Err(Error::CorankJump(corank));
    }
    let (y, _) = cup.gram.solve_consistent(b)?;
    Ok(OracleWitness {
        b: b.to_vec(),
        pencil,
        w,
        gram: cup.gram,
        y,
    })
}

/// Whether `b` lies on `F_W`, decided without the quartic.
pub fn fw_oracle<F: PrimeField>(ctx: &CurveContext<F>, net: &Net<F>, b: &[F]) -> Result<bool> {
    Ok(oracle_witness(ctx, net, b)?.value())
}

/// Whether `b` lies on the cubic polar `P_x(F_W)`, for `x` in the vertex.
pub fn polar_oracle<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    x: &[F],
    b: &[F],
) -> Result<bool> {
    if x.iter().all(|c| c.is_zero()) || !net.in_vertex(x) {
        return Err(Error::NotVertexVector);
    }
    Ok(oracle_witness(ctx, net, b)?.polar_value(x))
}

/// A rational point on the quadric `q`, found on random lines.
pub fn point_on_quadric<F: PrimeField, R: Rng>(
    q: &Form<F>,
    basis: &[Vec<F>],
    rng: &mut R,
    attempts: usize,
) -> Result<Vec<F>> {
    let k = basis.len();
    let local = q.restrict(basis);
    for _ in 0..attempts {
        let p: Vec<F> = (0..k).map(|_| F::random(rng)).collect();
        let d: Vec<F> = (0..k).map(|_| F::random(rng)).collect();
        let f = local.on_line(&p, &d);
        if f.is_zero() {
            continue;
        }
        if let Some(&t) = f.distinct_roots().first() {
            let c: Vec<F> = p.iter().zip(&d).map(|(&a, &b)| a + t * b).collect();
            let z = combine(basis, &c);
            if z.iter().any(|x| !x.is_zero()) {
                return Ok(z);
            }
        }
    }
    Err(Error::BudgetExhausted("point on quadric".into()))
}

pub(crate) fn combine<F: PrimeField>(basis: &[Vec<F>], c: &[F]) -> Vec<F> {
    let n = basis[0].len();
    let mut z = vec![F::zero(); n];
    for (b, &ci) in basis.iter().zip(c) {
        for (x, &y) in z.iter_mut().zip(b) {
            *x += ci * y;
        }
    }
    z
}

fn unit_basis<F: PrimeField>(n: usize) -> Vec<Vec<F>> {
    (0..n)
        .map(|i| {
            let mut e = vec![F::zero(); n];
            e[i] = F::one();
            e
        })
        .collect()
}

/// A net in `𝒟`: its vertex is a linear space inside a quadric of `I(2)`.
///
/// For g = 4 the vertex is a point of the quadric; for g = 5 it is a line on a
/// random member of `I(2)`, built from a point `x` and a second point on the
/// tangent cone `Q ∩ T_x Q`.
pub fn d_net<F: PrimeField, R: Rng>(ctx: &CurveContext<F>, rng: &mut R) -> Result<Net<F>> {
    let g = ctx.genus();
    let quadrics = ctx.ideal(2).forms();
    for _ in 0..20 {
        let mut q = Form::zero(g, 2);
        for f in &quadrics {
            q = q.add(&f.scale(F::random(rng)));
        }
        let x = point_on_quadric(&q, &unit_basis(g), rng, 200)?;
        let vertex = if g == 4 {
            vec![x]
        } else {
            let tangent = q.gradient(&x);
            let plane = DenseMatrix::from_rows(&[tangent], g).kernel_basis();
            let d = point_on_quadric(&q, &plane, rng, 200)?;
            if crate::curve::proportional(&x, &d) {
                continue;
            }
            vec![x, d]
        };
        match net_with_vertex(ctx, &vertex) {
            Ok(net) if net.in_d && !net.in_b => return Ok(net),
            Ok(_) | Err(Error::AmbiguousFit(_)) | Err(Error::RankDeficientW(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::BudgetExhausted("net in D".into()))
}
