//! Homogeneous forms over a field, stored as dense coefficient vectors.
//!
//! Monomial order: graded, then lexicographic on exponent tuples with
//! `z0 > z1 > … > z_{n-1}`. For a fixed degree the first monomial is `z0^d`
//! and the last is `z_{n-1}^d`. Every coefficient vector in the crate, and in
//! every exported file, uses this order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::field::Field;
use crate::poly::UniPoly;

/// `C(n, k)` as usize.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of degree-`d` monomials in `n` variables.
pub fn num_monomials(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(n + d - 1, d)
}

type MonoTable = Arc<Vec<Vec<u32>>>;

/// Exponent tuples of degree `d` in `n` variables, in the crate's monomial order.
pub fn monomials(n: usize, d: usize) -> MonoTable {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), MonoTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("monomial cache poisoned");
    guard
        .entry((n, d))
        .or_insert_with(|| {
            let mut out = Vec::with_capacity(num_monomials(n, d));
            let mut cur = vec![0u32; n];
            fill(&mut cur, 0, d as u32, &mut out);
            Arc::new(out)
        })
        .clone()
}

fn fill(cur: &mut Vec<u32>, pos: usize, rem: u32, out: &mut Vec<Vec<u32>>) {
    let n = cur.len();
    if n == 0 {
        if rem == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = rem;
        out.push(cur.clone());
        return;
    }
    for e in (0..=rem).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, rem - e, out);
    }
    cur[pos] = 0;
}

/// Position of an exponent tuple in [`monomials`].
pub fn monomial_index(exps: &[u32]) -> usize {
    let n = exps.len();
    let mut rem: usize = exps.iter().map(|&e| e as usize).sum();
    let mut idx = 0;
    for i in 0..n.saturating_sub(1) {
        let e = exps[i] as usize;
        let tail = n - i - 1;
        // tuples agreeing before i with a larger entry at i
        for k in e + 1..=rem {
            idx += num_monomials(tail, rem - k);
        }
        rem -= e;
    }
    idx
}

/// Values of every degree-`d` monomial at `point`.
pub fn monomial_values<F: Field>(d: usize, point: &[F]) -> Vec<F> {
    let n = point.len();
    let mut pows = vec![vec![F::one(); d + 1]; n];
    for (i, row) in pows.iter_mut().enumerate() {
        for k in 1..=d {
            row[k] = row[k - 1] * point[i];
        }
    }
    monomials(n, d)
        .iter()
        .map(|e| {
            e.iter()
                .enumerate()
                .fold(F::one(), |acc, (i, &k)| acc * pows[i][k as usize])
        })
        .collect()
}

/// `d!/∏ e_i!` for an exponent tuple (as a field element).
pub fn multinomial<F: Field>(exps: &[u32]) -> F {
    let d: u32 = exps.iter().sum();
    let mut num: u128 = 1;
    for k in 1..=d as u128 {
        num *= k;
    }
    for &e in exps {
        for k in 1..=e as u128 {
            num /= k;
        }
    }
    F::from_i64(num as i64)
}

/// A homogeneous form of degree `degree` in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form<F> {
    nvars: usize,
    degree: usize,
    coeffs: Vec<F>,
}

impl<F: Field> Form<F> {
    pub fn new(nvars: usize, degree: usize, coeffs: Vec<F>) -> Self {
        assert_eq!(coeffs.len(), num_monomials(nvars, degree), "coefficient count");
        Self {
            nvars,
            degree,
            coeffs,
        }
    }

    pub fn zero(nvars: usize, degree: usize) -> Self {
        Self::new(nvars, degree, vec![F::zero(); num_monomials(nvars, degree)])
    }

    /// The linear form `Σ c_i z_i`.
    pub fn linear(coeffs: &[F]) -> Self {
        Self::new(coeffs.len(), 1, coeffs.to_vec())
    }

    /// Single monomial with coefficient `c`.
    pub fn monomial(nvars: usize, exps: &[u32], c: F) -> Self {
        let degree = exps.iter().sum::<u32>() as usize;
        let mut f = Self::zero(nvars, degree);
        f.coeffs[monomial_index(exps)] = c;
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, exps: &[u32]) -> F {
        self.coeffs[monomial_index(exps)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero terms in monomial order.
    pub fn terms(&self) -> Vec<(Vec<u32>, F)> {
        monomials(self.nvars, self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, &c)| (e.clone(), c))
            .collect()
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        crate::field::dot(&self.coeffs, &monomial_values(self.degree, point))
    }

    pub fn scale(&self, s: F) -> Self {
        Self::new(
            self.nvars,
            self.degree,
            self.coeffs.iter().map(|&c| c * s).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree));
        Self::new(
            self.nvars,
            self.degree,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-F::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let n = self.nvars;
        let mut out = Self::zero(n, self.degree + other.degree);
        let ma = monomials(n, self.degree);
        let mb = monomials(n, other.degree);
        let mut e = vec![0u32; n];
        for (ea, &a) in ma.iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            for (eb, &b) in mb.iter().zip(&other.coeffs) {
                if b.is_zero() {
                    continue;
                }
                for i in 0..n {
                    e[i] = ea[i] + eb[i];
                }
                out.coeffs[monomial_index(&e)] += a * b;
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::new(self.nvars, 0, vec![F::one()]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂z_i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(self.degree > 0, "derivative of a constant form");
        let mut out = Self::zero(self.nvars, self.degree - 1);
        let mut e2 = vec![0u32; self.nvars];
        for (e, &c) in monomials(self.nvars, self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() || e[i] == 0 {
                continue;
            }
            e2.copy_from_slice(e);
            e2[i] -= 1;
            out.coeffs[monomial_index(&e2)] += c * F::from_i64(e[i] as i64);
        }
        out
    }

    pub fn gradient(&self, point: &[F]) -> Vec<F> {
        (0..self.nvars).map(|i| self.partial(i).eval(point)).collect()
    }

    /// Polar `Σ x_i ∂F/∂z_i`.
    pub fn polar(&self, x: &[F]) -> Self {
        assert_eq!(x.len(), self.nvars);
        let mut out = Self::zero(self.nvars, self.degree - 1);
        for (i, &xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                out = out.add(&self.partial(i).scale(xi));
            }
        }
        out
    }

    /// Pull back along `z = Σ_k t_k · basis[k]`, giving a form in `basis.len()` variables.
    pub fn restrict(&self, basis: &[Vec<F>]) -> Self {
        let k = basis.len();
        for b in basis {
            assert_eq!(b.len(), self.nvars);
        }
        // z_i as linear forms in t, with their powers
        let lin: Vec<Form<F>> = (0..self.nvars)
            .map(|i| Form::linear(&basis.iter().map(|b| b[i]).collect::<Vec<_>>()))
            .collect();
        let pows: Vec<Vec<Form<F>>> = lin
            .iter()
            .map(|l| {
                let mut v = vec![Form::new(k, 0, vec![F::one()])];
                for j in 1..=self.degree {
                    v.push(v[j - 1].mul(l));
                }
                v
            })
            .collect();
        let mut out = Self::zero(k, self.degree);
        for (e, &c) in monomials(self.nvars, self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut term = Form::new(k, 0, vec![c]);
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = term.mul(&pows[i][ei as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// `t ↦ F(p + t q)` as a univariate polynomial.
    pub fn on_line(&self, p: &[F], q: &[F]) -> UniPoly<F> {
        let binary = self.restrict(&[p.to_vec(), q.to_vec()]);
        // binary monomials run s^d, s^{d-1} t, …, t^d
        UniPoly::new(binary.coeffs)
    }

    /// Symmetric matrix `G` with `Q(z) = zᵀ G z`, for a quadratic form.
    pub fn gram(&self) -> crate::matrix::DenseMatrix<F> {
        assert_eq!(self.degree, 2, "gram of a non-quadratic form");
        let n = self.nvars;
        let half = F::from_i64(2).inv().expect("characteristic is odd");
        let mut g = crate::matrix::DenseMatrix::zeros(n, n);
        for (e, &c) in monomials(n, 2).iter().zip(&self.coeffs) {
            let idx: Vec<usize> = (0..n)
                .flat_map(|i| std::iter::repeat(i).take(e[i] as usize))
                .collect();
            if idx[0] == idx[1] {
                g[(idx[0], idx[0])] = c;
            } else {
                g[(idx[0], idx[1])] = c * half;
                g[(idx[1], idx[0])] = c * half;
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_traits::One;

    type F = Fp<1_000_003>;

    fn f(v: i64) -> F {
        F::from_i64(v)
    }

    #[test]
    fn ordering_starts_with_highest_power_of_first_variable() {
        let m = monomials(3, 2);
        assert_eq!(
            *m,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn index_matches_enumeration() {
        for (n, d) in [(1, 3), (2, 4), (4, 4), (5, 3), (3, 8), (5, 4)] {
            let m = monomials(n, d);
            assert_eq!(m.len(), num_monomials(n, d));
            for (i, e) in m.iter().enumerate() {
                assert_eq!(monomial_index(e), i, "{e:?}");
            }
        }
    }

    #[test]
    fn euler_identity_on_quartic() {
        let coeffs: Vec<F> = (0..num_monomials(4, 4)).map(|i| f(i as i64 * 7 + 3)).collect();
        let q = Form::new(4, 4, coeffs);
        let z = [f(2), f(-1), f(5), f(11)];
        let polar = q.polar(&z).eval(&z);
        assert_eq!(polar, q.eval(&z) * f(4));
    }

    #[test]
    fn restriction_agrees_with_evaluation() {
        let q = Form::new(3, 3, (0..10).map(|i| f(i * i + 1)).collect());
        let basis = vec![vec![f(1), f(2), f(3)], vec![f(0), f(-1), f(4)]];
        let r = q.restrict(&basis);
        let t = [f(5), f(-3)];
        let z: Vec<F> = (0..3).map(|i| basis[0][i] * t[0] + basis[1][i] * t[1]).collect();
        assert_eq!(r.eval(&t), q.eval(&z));
    }

    #[test]
    fn gram_reproduces_quadric() {
        let q = Form::new(3, 2, vec![f(1), f(4), f(-2), f(3), f(6), f(5)]);
        let g = q.gram();
        let z = vec![f(7), f(-2), f(9)];
        let gz = g.mul_vec(&z);
        assert_eq!(crate::field::dot(&z, &gz), q.eval(&z));
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial::<F>(&[1, 1, 1]), f(6));
        assert_eq!(multinomial::<F>(&[3, 0]), F::one());
        assert_eq!(multinomial::<F>(&[2, 1]), f(3));
    }
}
