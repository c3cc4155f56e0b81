//! Dense univariate polynomials, root finding over F_p, and resultants.

use std::ops::{Add, Mul, Neg, Sub};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, PrimeField};
use crate::matrix::DenseMatrix;

/// Univariate polynomial, coefficients lowest degree first.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// `c · x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `∏ (x − r)` over the given roots.
    pub fn from_roots(roots: &[F]) -> Self {
        roots.iter().fold(Self::constant(F::one()), |acc, &r| {
            &acc * &Self::new(vec![-r, F::one()])
        })
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).copied().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().copied().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, &c| acc * x + c)
    }

    pub fn scale(&self, s: F) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(inv) => self.scale(inv),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * F::from_i64(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().inv().expect("nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd] * inv;
            q[k] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= c * dc;
            }
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::constant(F::one()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Newton interpolation through `(xs[i], ys[i])`; the `xs` must be distinct.
    pub fn interpolate(xs: &[F], ys: &[F]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = (xs[i] - xs[i - level]).inv().expect("distinct nodes");
                dd[i] = (dd[i] - dd[i - 1]) * den;
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &Self::new(vec![-xs[i], F::one()])) + &Self::constant(dd[i]);
        }
        acc
    }
}

impl<F: PrimeField> UniPoly<F> {
    /// Distinct roots in F_p, sorted by residue.
    ///
    /// Takes `gcd(f, x^p − x)` and splits it by equal-degree factorisation.
    /// The splitting randomness comes from a fixed stream, so the function is pure.
    pub fn distinct_roots(&self) -> Vec<F> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let f = self.monic();
        let Some(deg) = f.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let xp = Self::x().pow_mod(F::MODULUS, &f);
        let g = f.gcd(&(&xp - &Self::x()));
        let mut roots = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_2007);
        split_linear(&g, &mut rng, &mut roots);
        roots.sort();
        roots
    }
}

fn split_linear<F: PrimeField>(g: &UniPoly<F>, rng: &mut ChaCha8Rng, out: &mut Vec<F>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(-g.coeff(0) * g.leading().inv().expect("nonzero")),
        Some(_) => loop {
            let a = F::random(rng);
            let h = UniPoly::new(vec![a, F::one()]).pow_mod((F::MODULUS - 1) / 2, g);
            let d = g.gcd(&(&h - &UniPoly::constant(F::one())));
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && dd < g.degree().unwrap() {
                let rest = g.div_rem(&d).0;
                split_linear(&d, rng, out);
                split_linear(&rest, rng, out);
                return;
            }
        },
    }
}

/// Sylvester resultant with formal degrees `df ≥ deg f` and `dg ≥ deg g`.
///
/// Formal degrees keep the determinant a polynomial identity in the
/// coefficients, which evaluation/interpolation schemes rely on.
pub fn resultant_formal<F: Field>(f: &UniPoly<F>, df: usize, g: &UniPoly<F>, dg: usize) -> F {
    let n = df + dg;
    if n == 0 {
        return F::one();
    }
    let mut s = DenseMatrix::zeros(n, n);
    for i in 0..dg {
        for k in 0..=df {
            s[(i, i + k)] = f.coeff(df - k);
        }
    }
    for i in 0..df {
        for k in 0..=dg {
            s[(dg + i, i + k)] = g.coeff(dg - k);
        }
    }
    s.determinant()
}

/// Resultant of two nonzero polynomials at their actual degrees.
pub fn resultant<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> F {
    let df = f.degree().expect("resultant of zero polynomial");
    let dg = g.degree().expect("resultant of zero polynomial");
    resultant_formal(f, df, g, dg)
}

impl<F: Field> Add for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: Self) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<F: Field> Sub for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, rhs: Self) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<F: Field> Mul for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: Self) -> UniPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_traits::{One, Zero};

    type F7 = Fp<7>;
    type F101 = Fp<101>;

    fn p7(c: &[i64]) -> UniPoly<F7> {
        UniPoly::new(c.iter().map(|&x| F7::from_i64(x)).collect())
    }

    #[test]
    fn zero_normalization() {
        let z = p7(&[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(p7(&[1, 0]).degree(), Some(0));
    }

    #[test]
    fn roots_of_small_quadratics() {
        assert_eq!(p7(&[-1, 0, 1]).distinct_roots(), vec![F7::one(), F7::new(6)]);
        assert!(p7(&[1, 0, 1]).distinct_roots().is_empty());
    }

    #[test]
    fn repeated_roots_listed_once() {
        let f = UniPoly::from_roots(&[F101::new(3), F101::new(3), F101::new(50)]);
        assert_eq!(f.distinct_roots(), vec![F101::new(3), F101::new(50)]);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p7(&[-2, 1]), &p7(&[-3, 1])), F7::new(6));
        let f = p7(&[1, 2, 3]);
        assert_eq!(resultant(&f, &f), F7::zero());
    }

    #[test]
    fn division_identity() {
        let a = p7(&[3, 1, 4, 1, 5]);
        let b = p7(&[2, 6, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = UniPoly::new(vec![F101::new(5), F101::new(0), F101::new(7), F101::new(1)]);
        let xs: Vec<F101> = (0..6).map(F101::new).collect();
        let ys: Vec<F101> = xs.iter().map(|&x| f.eval(x)).collect();
        assert_eq!(UniPoly::interpolate(&xs, &ys), f);
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        let f = UniPoly::from_roots(&[F101::new(1), F101::new(1), F101::new(2)]);
        assert_eq!(
            f.squarefree_part(),
            UniPoly::from_roots(&[F101::new(1), F101::new(2)])
        );
    }
}
