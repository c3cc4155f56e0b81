//! Canonical curves of genus 4 (quadric ∩ cubic in P³) and genus 5 (three
//! quadrics in P⁴) over F_p: generation, rational points, tangent lines, and
//! the curve file format.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bivariate::{resultant_y, Bivariate};
use crate::error::{Error, Result};
use crate::field::{normalize_first_nonzero, PrimeField};
use crate::forms::{monomials, Form};
use crate::matrix::DenseMatrix;
use crate::poly::UniPoly;
use crate::rng::{stream, stream_indexed, StreamRng};

/// Points of projective space, scaled so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint<F>(Vec<F>);

impl<F: PrimeField> ProjPoint<F> {
    /// `None` for the zero vector.
    pub fn new(mut coords: Vec<F>) -> Option<Self> {
        normalize_first_nonzero(&mut coords).then_some(Self(coords))
    }

    pub fn coords(&self) -> &[F] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<F> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            if let Some(p) = Self::new((0..n).map(|_| F::random(rng)).collect()) {
                return p;
            }
        }
    }
}

/// A point of the curve together with a second point spanning its tangent line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentData<F> {
    pub point: ProjPoint<F>,
    pub direction: ProjPoint<F>,
}

/// A canonical complete intersection: one quadric and one cubic (g = 4) or
/// three quadrics (g = 5) in `g` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel<F> {
    genus: usize,
    seed: u64,
    generators: Vec<Form<F>>,
}

/// Number of curve points drawn for the smoothness spot check.
pub const SMOOTHNESS_SAMPLES: usize = 50;
const GENERATION_ATTEMPTS: usize = 8;

/// Draws a random canonical curve of the given genus, deterministically in
/// `(genus, F::MODULUS, seed)`.
pub fn generate_curve<F: PrimeField>(genus: usize, seed: u64) -> Result<CurveModel<F>> {
    if genus != 4 && genus != 5 {
        return Err(Error::UnsupportedGenus(genus));
    }
    if F::MODULUS < 1_000_000 {
        return Err(Error::UnsupportedPrime(F::MODULUS));
    }
    for attempt in 0..GENERATION_ATTEMPTS {
        let mut rng = stream_indexed(seed, "curve", attempt as u64);
        let degrees: &[usize] = if genus == 4 { &[2, 3] } else { &[2, 2, 2] };
        let generators = degrees
            .iter()
            .map(|&d| random_form(genus, d, &mut rng))
            .collect();
        let curve = CurveModel {
            genus,
            seed,
            generators,
        };
        if curve.smoothness_spot_check(attempt as u64) {
            return Ok(curve);
        }
    }
    Err(Error::GenerationFailed {
        attempts: GENERATION_ATTEMPTS,
    })
}

fn random_form<F: PrimeField, R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Form<F> {
    let m = monomials(n, d).len();
    Form::new(n, d, (0..m).map(|_| F::random(rng)).collect())
}

impl<F: PrimeField> CurveModel<F> {
    /// Rebuilds a model from explicit generators (as read from a curve file).
    pub fn from_generators(genus: usize, seed: u64, generators: Vec<Form<F>>) -> Result<Self> {
        let expected: &[usize] = match genus {
            4 => &[2, 3],
            5 => &[2, 2, 2],
            g => return Err(Error::UnsupportedGenus(g)),
        };
        let degrees: Vec<usize> = generators.iter().map(|f| f.degree()).collect();
        if degrees != expected || generators.iter().any(|f| f.nvars() != genus) {
            return Err(Error::Invalid(format!(
                "genus {genus} needs generators of degrees {expected:?} in {genus} variables"
            )));
        }
        Ok(Self {
            genus,
            seed,
            generators,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn prime(&self) -> u64 {
        F::MODULUS
    }

    pub fn generators(&self) -> &[Form<F>] {
        &self.generators
    }

    /// Degree of the canonical curve, `2g − 2`.
    pub fn degree(&self) -> usize {
        2 * self.genus - 2
    }

    pub fn contains(&self, p: &[F]) -> bool {
        self.generators.iter().all(|f| f.eval(p).is_zero())
    }

    /// Rows are the gradients of the generators at `p`.
    pub fn jacobian(&self, p: &[F]) -> DenseMatrix<F> {
        DenseMatrix::from_rows(
            &self
                .generators
                .iter()
                .map(|f| f.gradient(p))
                .collect::<Vec<_>>(),
            self.genus,
        )
    }

    fn smoothness_spot_check(&self, attempt: u64) -> bool {
        let mut rng = stream_indexed(self.seed, "smoothness", attempt);
        match self.sample_points_with(SMOOTHNESS_SAMPLES, &mut rng) {
            Ok(points) => points
                .iter()
                .all(|p| self.jacobian(p.coords()).rank() == self.genus - 2),
            Err(_) => false,
        }
    }

    /// `count` distinct rational points, sorted by normalized coordinates.
    pub fn sample_points(&self, count: usize) -> Result<Vec<ProjPoint<F>>> {
        let mut rng = stream(self.seed, "points");
        self.sample_points_with(count, &mut rng)
    }

    pub fn sample_points_with(
        &self,
        count: usize,
        rng: &mut StreamRng,
    ) -> Result<Vec<ProjPoint<F>>> {
        let budget = 40 * count + 200;
        let mut found = BTreeSet::new();
        for _ in 0..budget {
            if found.len() >= count {
                break;
            }
            let basis: Vec<Vec<F>> = (0..self.genus - 1)
                .map(|_| (0..self.genus).map(|_| F::random(rng)).collect())
                .collect();
            for p in self.hyperplane_section(&basis, rng) {
                if found.len() < count {
                    found.insert(p);
                }
            }
        }
        if found.len() < count {
            return Err(Error::InsufficientPoints {
                found: found.len(),
                wanted: count,
            });
        }
        Ok(found.into_iter().collect())
    }

    /// Rational points of the curve on the hyperplane spanned by the `g − 1`
    /// rows of `basis`. For g = 5 the points on one coordinate plane of the
    /// slice chart are skipped.
    pub fn hyperplane_section(&self, basis: &[Vec<F>], rng: &mut StreamRng) -> Vec<ProjPoint<F>> {
        assert_eq!(basis.len(), self.genus - 1);
        let local: Vec<Form<F>> = self.generators.iter().map(|f| f.restrict(basis)).collect();
        let local_points = match self.genus {
            4 => conic_cubic_points(&local[0], &local[1], rng),
            _ => three_quadric_points(&local),
        };
        let mut out = BTreeSet::new();
        for t in local_points {
            let z: Vec<F> = (0..self.genus)
                .map(|i| {
                    basis
                        .iter()
                        .zip(&t)
                        .fold(F::zero(), |acc, (b, &ti)| acc + b[i] * ti)
                })
                .collect();
            if let Some(p) = ProjPoint::new(z) {
                if self.contains(p.coords()) {
                    out.insert(p);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Tangent line at a smooth point: the 2-dimensional kernel of the Jacobian.
    pub fn tangent_vector(&self, p: &ProjPoint<F>) -> Result<TangentData<F>> {
        let expected = self.genus - 2;
        let jac = self.jacobian(p.coords());
        let rank = jac.rank();
        if rank < expected || !self.contains(p.coords()) {
            return Err(Error::SingularPoint { rank, expected });
        }
        let kernel = jac.kernel_basis();
        debug_assert_eq!(kernel.len(), 2);
        let direction = kernel
            .into_iter()
            .filter_map(ProjPoint::new)
            .find(|d| !proportional(d.coords(), p.coords()))
            .ok_or(Error::SingularPoint { rank, expected })?;
        Ok(TangentData {
            point: p.clone(),
            direction,
        })
    }
}

/// Whether two vectors span at most a line.
pub fn proportional<F: PrimeField>(a: &[F], b: &[F]) -> bool {
    DenseMatrix::from_rows(&[a.to_vec(), b.to_vec()], a.len()).rank() < 2
}

/// A rational point of a quadric, found on random lines.
fn point_on_quadric<F: PrimeField>(q: &Form<F>, rng: &mut StreamRng) -> Option<Vec<F>> {
    let n = q.nvars();
    for _ in 0..64 {
        let a: Vec<F> = (0..n).map(|_| F::random(rng)).collect();
        let c: Vec<F> = (0..n).map(|_| F::random(rng)).collect();
        let line = q.on_line(&a, &c);
        if line.is_zero() {
            return Some(a);
        }
        if let Some(&t) = line.distinct_roots().first() {
            return Some(a.iter().zip(&c).map(|(&x, &y)| x + t * y).collect());
        }
    }
    None
}

/// Rational points on `{Q = 0, K = 0}` in P² by projecting the conic from one of its points.
fn conic_cubic_points<F: PrimeField>(
    q: &Form<F>,
    k: &Form<F>,
    rng: &mut StreamRng,
) -> Vec<Vec<F>> {
    let Some(o) = point_on_quadric(q, rng) else {
        return Vec::new();
    };
    if o.iter().all(|x| x.is_zero()) {
        return Vec::new();
    }
    let gram = q.gram();
    let go = gram.mul_vec(&o);
    // complete o to a basis of F³
    let mut dirs = Vec::new();
    for i in 0..3 {
        let mut e = vec![F::zero(); 3];
        e[i] = F::one();
        let mut cand = vec![o.clone()];
        cand.extend(dirs.iter().cloned());
        cand.push(e.clone());
        if DenseMatrix::from_rows(&cand, 3).rank() == cand.len() {
            dirs.push(e);
        }
        if dirs.len() == 2 {
            break;
        }
    }
    let conic_point = |d: &[F]| -> Vec<F> {
        let qd = q.eval(d);
        let b = crate::field::dot(&go, d);
        let two_b = b + b;
        (0..3).map(|i| qd * o[i] - two_b * d[i]).collect()
    };
    let mut out = vec![o.clone()];
    out.push(conic_point(&dirs[1]));
    let xs: Vec<F> = (0..7).map(|i| F::from_i64(i)).collect();
    let ys: Vec<F> = xs
        .iter()
        .map(|&t| {
            let d: Vec<F> = (0..3).map(|i| dirs[0][i] + t * dirs[1][i]).collect();
            k.eval(&conic_point(&d))
        })
        .collect();
    let h = UniPoly::interpolate(&xs, &ys);
    if h.is_zero() {
        return Vec::new();
    }
    for t in h.distinct_roots() {
        let d: Vec<F> = (0..3).map(|i| dirs[0][i] + t * dirs[1][i]).collect();
        out.push(conic_point(&d));
    }
    out
}

/// Coefficients of `q(x, y, z, 1)` grouped as `A2 z² + A1 z + A0`, `A_k ∈ F[x, y]`.
fn quadric_in_z<F: PrimeField>(q: &Form<F>) -> [Bivariate<F>; 3] {
    let mut tables = [
        vec![vec![F::zero(); 3]; 3],
        vec![vec![F::zero(); 3]; 3],
        vec![vec![F::zero(); 3]; 3],
    ];
    for (e, &c) in monomials(4, 2).iter().zip(q.coeffs()) {
        tables[e[2] as usize][e[0] as usize][e[1] as usize] += c;
    }
    let [a0, a1, a2] = tables;
    [
        Bivariate::from_table(&a0),
        Bivariate::from_table(&a1),
        Bivariate::from_table(&a2),
    ]
}

/// `Res_z` of two quadratics in `z` with bivariate coefficients.
fn quadratic_resultant<F: PrimeField>(a: &[Bivariate<F>; 3], b: &[Bivariate<F>; 3]) -> Bivariate<F> {
    let [a0, a1, a2] = a;
    let [b0, b1, b2] = b;
    let u = a2.mul(b0).sub(&a0.mul(b2));
    let v = a2.mul(b1).sub(&a1.mul(b2));
    let w = a1.mul(b0).sub(&a0.mul(b1));
    u.mul(&u).sub(&v.mul(&w))
}

/// Rational points of three quadrics in P³, on the chart where the last coordinate is 1.
fn three_quadric_points<F: PrimeField>(qs: &[Form<F>]) -> Vec<Vec<F>> {
    let parts: Vec<[Bivariate<F>; 3]> = qs.iter().map(quadric_in_z).collect();
    let r12 = quadratic_resultant(&parts[0], &parts[1]);
    let r13 = quadratic_resultant(&parts[0], &parts[2]);
    let rx = resultant_y(&r12, &r13);
    if rx.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for x0 in rx.distinct_roots() {
        let common_y = r12.eval_x(x0).gcd(&r13.eval_x(x0));
        if common_y.degree().unwrap_or(0) == 0 {
            continue;
        }
        for y0 in common_y.distinct_roots() {
            let in_z = |p: &[Bivariate<F>; 3]| {
                UniPoly::new(p.iter().map(|c| c.eval(x0, y0)).collect())
            };
            let g = in_z(&parts[0]).gcd(&in_z(&parts[1])).gcd(&in_z(&parts[2]));
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            for z0 in g.distinct_roots() {
                out.push(vec![x0, y0, z0, F::one()]);
            }
        }
    }
    out
}

/// On-disk representation of a curve; coefficients are canonical residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub genus: usize,
    pub prime: u64,
    pub seed: u64,
    pub generators: Vec<Vec<(Vec<u32>, u64)>>,
    pub points: Vec<Vec<u64>>,
}

impl CurveFile {
    pub fn from_curve<F: PrimeField>(curve: &CurveModel<F>, points: &[ProjPoint<F>]) -> Self {
        Self {
            genus: curve.genus,
            prime: F::MODULUS,
            seed: curve.seed,
            generators: curve
                .generators
                .iter()
                .map(|g| g.terms().into_iter().map(|(e, c)| (e, c.value())).collect())
                .collect(),
            points: points
                .iter()
                .map(|p| p.coords().iter().map(|c| c.value()).collect())
                .collect(),
        }
    }

    /// Rebuilds the model; fails if the prime differs from `F` or a listed point is off the curve.
    pub fn to_curve<F: PrimeField>(&self) -> Result<(CurveModel<F>, Vec<ProjPoint<F>>)> {
        if self.prime != F::MODULUS {
            return Err(Error::UnsupportedPrime(self.prime));
        }
        let degrees: &[usize] = match self.genus {
            4 => &[2, 3],
            5 => &[2, 2, 2],
            g => return Err(Error::UnsupportedGenus(g)),
        };
        if self.generators.len() != degrees.len() {
            return Err(Error::Invalid("wrong number of generators".into()));
        }
        let mut gens = Vec::new();
        for (terms, &d) in self.generators.iter().zip(degrees) {
            let mut f = Form::zero(self.genus, d);
            for (e, c) in terms {
                if e.len() != self.genus || e.iter().sum::<u32>() as usize != d {
                    return Err(Error::Invalid(format!("bad exponent tuple {e:?}")));
                }
                if *c >= self.prime {
                    return Err(Error::Invalid(format!("coefficient {c} is not reduced")));
                }
                f = f.add(&Form::monomial(self.genus, e, F::from_u64(*c)));
            }
            gens.push(f);
        }
        let curve = CurveModel::from_generators(self.genus, self.seed, gens)?;
        let mut points = Vec::new();
        for coords in &self.points {
            let p = ProjPoint::new(coords.iter().map(|&c| F::from_u64(c)).collect())
                .filter(|p| p.dim() == self.genus && curve.contains(p.coords()))
                .ok_or_else(|| Error::Invalid(format!("point {coords:?} is not on the curve")))?;
            points.push(p);
        }
        Ok((curve, points))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_traits::{One, Zero};

    type F = Fp<1_000_003>;

    #[test]
    fn unsupported_genus() {
        assert_eq!(
            generate_curve::<F>(6, 1).unwrap_err(),
            Error::UnsupportedGenus(6)
        );
    }

    #[test]
    fn small_prime_rejected() {
        assert!(matches!(
            generate_curve::<Fp<101>>(4, 1),
            Err(Error::UnsupportedPrime(101))
        ));
    }

    #[test]
    fn genus4_is_deterministic() {
        let a = generate_curve::<F>(4, 1).unwrap();
        let b = generate_curve::<F>(4, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.generators()[0].degree(), 2);
        assert_eq!(a.generators()[1].degree(), 3);
    }

    #[test]
    fn sampled_points_lie_on_curve() {
        let c = generate_curve::<F>(4, 3).unwrap();
        let pts = c.sample_points(60).unwrap();
        assert_eq!(pts.len(), 60);
        assert!(pts.iter().all(|p| c.contains(p.coords())));
        let set: BTreeSet<_> = pts.iter().collect();
        assert_eq!(set.len(), 60);
    }

    #[test]
    fn tangent_direction_is_not_the_point() {
        let c = generate_curve::<F>(4, 2).unwrap();
        let p = c.sample_points(1).unwrap().remove(0);
        let t = c.tangent_vector(&p).unwrap();
        assert!(!proportional(t.point.coords(), t.direction.coords()));
        let jac = c.jacobian(p.coords());
        assert!(jac.mul_vec(t.direction.coords()).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn off_curve_point_is_rejected() {
        let c = generate_curve::<F>(4, 2).unwrap();
        let p = ProjPoint::new(vec![F::one(), F::new(2), F::new(3), F::new(4)]).unwrap();
        assert!(matches!(c.tangent_vector(&p), Err(Error::SingularPoint { .. })));
    }
}
