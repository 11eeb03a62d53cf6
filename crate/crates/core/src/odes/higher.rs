//! Monic scalar equations of order `n` with a fundamental system.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::invert_dense;
use crate::opalg::{Nf, OpAlg};
use crate::ring::IdRing;
use crate::scalar::Scalar;

use super::signed;
use super::wronskian::wronskian;

/// The data of `L = ∂ⁿ + a_{n−1}∂ⁿ⁻¹ + … + a₀` with a fundamental system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarProblem<E, S> {
    /// The coefficients `a₀,…,a_{n−1}`.
    pub coeffs: Vec<E>,
    /// Solutions `z₁,…,zₙ` of `L·z = 0`.
    pub zs: Vec<E>,
    /// The inverse of the Wronskian `w = W(z₁,…,zₙ)`, if representable.
    pub w_inv: Option<E>,
    /// Constants `c_{i,j}` (row `i` for `z_i`, column `j = 0,…,n−1`) with
    /// `E∂ᵏ Σᵢ c_{i,j} zᵢ = δ_{j,k}`.
    pub c: Option<Vec<Vec<S>>>,
}

impl<E: Clone, S: Scalar> ScalarProblem<E, S> {
    /// The problem with `1/w` found by the ring's partial inversion and no
    /// initial-condition matrix. Requires a commutative ring.
    pub fn new<R: IdRing<Elem = E, Scalar = S>>(ring: &R, coeffs: Vec<E>, zs: Vec<E>) -> Result<Self> {
        let w = wronskian(ring, &zs)?;
        let p = ScalarProblem { w_inv: ring.invert(&w), coeffs, zs, c: None };
        p.validate(ring)?;
        Ok(p)
    }

    /// Sets the initial-condition matrix, checking its defining identity.
    pub fn with_c<R: IdRing<Elem = E, Scalar = S>>(mut self, ring: &R, c: Vec<Vec<S>>) -> Result<Self> {
        self.c = Some(c);
        self.validate(ring)?;
        Ok(self)
    }

    /// The order `n`.
    pub fn order(&self) -> usize {
        self.zs.len()
    }

    /// Checks `L·zᵢ = 0`, `w·(1/w) = 1` and the identity of `c`.
    pub fn validate<R: IdRing<Elem = E, Scalar = S>>(&self, ring: &R) -> Result<()> {
        let r = ring;
        let n = self.order();
        if self.coeffs.len() != n {
            return Err(Error::SizeMismatch(format!("{} coefficients for {} solutions", self.coeffs.len(), n)));
        }
        for z in &self.zs {
            let mut lz = r.derive_n(z, n);
            for (k, a) in self.coeffs.iter().enumerate() {
                lz = r.add(&lz, &r.mul(a, &r.derive_n(z, k)));
            }
            if !r.is_zero(&lz) {
                return Err(Error::InvalidProblem(format!("L·z ≠ 0 for z = {}", r.format(z))));
            }
        }
        if let Some(wi) = &self.w_inv {
            if !r.is_zero(&r.sub(&r.mul(&wronskian(r, &self.zs)?, wi), &r.one())) {
                return Err(Error::InvalidProblem(format!("w·(1/w) ≠ 1 for 1/w = {}", r.format(wi))));
            }
        }
        if let Some(c) = &self.c {
            if c.len() != n || c.iter().any(|row| row.len() != n) {
                return Err(Error::SizeMismatch(format!("expected a {n}x{n} initial-condition matrix")));
            }
            for j in 0..n {
                let y = r.sum(&(0..n).map(|i| r.scale(&c[i][j], &self.zs[i])).collect::<Vec<_>>());
                for k in 0..n {
                    let v = r.evaluate(&r.derive_n(&y, k));
                    let want = if j == k { r.one() } else { r.zero() };
                    if !r.is_zero(&r.sub(&v, &want)) {
                        return Err(Error::InitialMatrixInvalid);
                    }
                }
            }
        }
        Ok(())
    }
}

/// `L = ∂ⁿ + Σ aₖ·∂ᵏ`.
pub fn scalar_operator<R: IdRing>(alg: &OpAlg<R>, coeffs: &[R::Elem]) -> Nf<R> {
    let mut l = alg.pow(&alg.d(), coeffs.len() as u32);
    for (k, a) in coeffs.iter().enumerate() {
        l = l.add(&alg.mul(&alg.coeff(a), &alg.pow(&alg.d(), k as u32)));
    }
    l
}

/// The terms `zₖ` and `W(z without zₖ)/w` of the variation-of-constants
/// formula.
fn voc_factors<R: IdRing>(ring: &R, p: &ScalarProblem<R::Elem, R::Scalar>) -> Result<Vec<R::Elem>> {
    let wi = p.w_inv.as_ref().ok_or(Error::WronskianNotInvertible)?;
    (0..p.order())
        .map(|k| {
            let rest: Vec<R::Elem> = p.zs.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, z)| z.clone()).collect();
            Ok(ring.mul(&wronskian(ring, &rest)?, wi))
        })
        .collect()
}

/// The right inverse `H = Σᵢ (−1)^{n−i} zᵢ·∫·W(z₁,…,ẑᵢ,…,zₙ)/w` of `L`.
pub fn variation_of_constants<R: IdRing>(alg: &OpAlg<R>, p: &ScalarProblem<R::Elem, R::Scalar>) -> Result<Nf<R>> {
    let n = p.order();
    let ws = voc_factors(&alg.ring, p)?;
    let mut h = Nf::<R>::zero();
    for (k, (z, w)) in p.zs.iter().zip(&ws).enumerate() {
        h = h.add(&signed::<R>(alg.product(&[alg.coeff(z), alg.i(), alg.coeff(w)]), (n - 1 - k) % 2 == 1));
    }
    Ok(h)
}

/// The matrix `c = (EZ)⁻¹` with `Z = (∂ᵏzᵢ)_{k,i}`, computed over the
/// scalars; fails if some `E∂ᵏzᵢ` is not a scalar or the matrix is
/// singular.
pub fn initial_matrix<R: IdRing>(ring: &R, zs: &[R::Elem]) -> Result<Vec<Vec<R::Scalar>>> {
    let n = zs.len();
    let mut ez = Vec::with_capacity(n);
    for k in 0..n {
        let row: Option<Vec<R::Scalar>> = zs.iter().map(|z| ring.scalar_value(&ring.evaluate(&ring.derive_n(z, k)))).collect();
        ez.push(row.ok_or(Error::InitialMatrixInvalid)?);
    }
    invert_dense(&ez).ok_or(Error::InitialMatrixInvalid)
}

/// The Green's operator
/// `G = Σₖ (−1)^{n−k} (zₖ − Σ_{i,j} zᵢc_{i,j−1}·E·∂^{j−1}zₖ)·∫·W(…ẑₖ…)/w`,
/// a right inverse of `L` with `E∂ⁱG = 0` for `i < n`. The matrix `c` is
/// taken from the problem or computed as `(EZ)⁻¹`.
pub fn green_scalar<R: IdRing>(alg: &OpAlg<R>, p: &ScalarProblem<R::Elem, R::Scalar>) -> Result<Nf<R>> {
    let r = &alg.ring;
    let n = p.order();
    let ws = voc_factors(r, p)?;
    let c = match &p.c {
        Some(c) => c.clone(),
        None => initial_matrix(r, &p.zs)?,
    };
    let mut g = Nf::<R>::zero();
    for (k, (zk, w)) in p.zs.iter().zip(&ws).enumerate() {
        let mut left = alg.coeff(zk);
        for (i, zi) in p.zs.iter().enumerate() {
            for (j, cij) in c[i].iter().enumerate() {
                if cij.is_zero() {
                    continue;
                }
                let t = alg.product(&[alg.coeff(&r.scale(cij, zi)), alg.e(), alg.coeff(&r.derive_n(zk, j))]);
                left = left.sub(&t);
            }
        }
        g = g.add(&signed::<R>(alg.product(&[left, alg.i(), alg.coeff(w)]), (n - 1 - k) % 2 == 1));
    }
    Ok(g)
}
