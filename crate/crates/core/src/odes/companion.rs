//! Companion matrices: scalar equations as first-order systems.

use crate::error::{Error, Result};
use crate::opalg::{Nf, OpAlg};
use crate::ring::IdRing;
use crate::rings::{laplace_det, minor_of, Mat, MatrixRing};

use super::first_order::{first_order_operator, right_inverse_first_order, FirstOrderProblem};
use super::higher::{variation_of_constants, ScalarProblem};
use super::iso::matrix_to_scalar;

/// The companion matrix of `∂ⁿ + a_{n−1}∂ⁿ⁻¹ + … + a₀`: `−1` on the
/// superdiagonal and last row `a₀ … a_{n−1}`, so that `∂ + A` acts on
/// `(y, ∂y, …, ∂ⁿ⁻¹y)` like `L` in the last component.
pub fn companion_matrix<R: IdRing>(ring: &R, coeffs: &[R::Elem]) -> Mat<R::Elem> {
    let n = coeffs.len();
    Mat::from_fn(n, |i, j| {
        if i + 1 == n {
            coeffs[j].clone()
        } else if j == i + 1 {
            ring.neg(&ring.one())
        } else {
            ring.zero()
        }
    })
}

/// The fundamental matrix `Z = (∂ⁱz_j)_{i,j}` with `∂Z + A·Z = 0`.
pub fn fundamental_matrix<R: IdRing>(ring: &R, zs: &[R::Elem]) -> Mat<R::Elem> {
    Mat::from_fn(zs.len(), |i, j| ring.derive_n(&zs[j], i))
}

/// `Z⁻¹ = adj(Z)·w⁻¹`.
fn inverse_by_adjugate<R: IdRing>(ring: &R, z: &Mat<R::Elem>, w_inv: &R::Elem) -> Mat<R::Elem> {
    let n = z.n;
    Mat::from_fn(n, |i, j| {
        let cof = ring.mul(&laplace_det(ring, &minor_of(&z.entries, n, j, i), n - 1), w_inv);
        if (i + j) % 2 == 1 {
            ring.neg(&cof)
        } else {
            cof
        }
    })
}

/// The results of solving a scalar equation through its companion system.
#[derive(Clone, Debug)]
pub struct CompanionRoute<R: IdRing> {
    /// The right inverse `Z·∫·Z⁻¹` of `∂ + A` over matrices.
    pub matrix_h: Nf<MatrixRing<R>>,
    /// `(∂ + A)·Z∫Z⁻¹ = 1` over matrices.
    pub matrix_is_right_inverse: bool,
    /// The last column `H_{1,n},…,H_{n,n}` as scalar operators.
    pub last_column: Vec<Nf<R>>,
    /// `H_{i,n} = ∂^{i−1}·H_{1,n}` for all `i`.
    pub derivative_column: bool,
    /// `L·H_{1,n} = 1`.
    pub entry_is_right_inverse: bool,
    /// `H_{1,n}` equals the Wronskian formula.
    pub matches_direct: bool,
}

/// Solves `L` through `∂ + A` with the matrix variation of constants and
/// reads off `H_{1,n}`; compares it with [`variation_of_constants`].
pub fn companion_right_inverse<R: IdRing>(salg: &OpAlg<R>, p: &ScalarProblem<R::Elem, R::Scalar>) -> Result<CompanionRoute<R>> {
    let r = &salg.ring;
    let n = p.order();
    let w_inv = p.w_inv.as_ref().ok_or(Error::WronskianNotInvertible)?;
    let mr = MatrixRing::new(r.clone(), n);
    let malg = OpAlg::new(mr.clone());
    let a = companion_matrix(r, &p.coeffs);
    let z = fundamental_matrix(r, &p.zs);
    let z_inv = inverse_by_adjugate(r, &z, w_inv);
    let fp = FirstOrderProblem::with_inverses(&mr, a.clone(), z, Some(z_inv), None)?;
    let matrix_h = right_inverse_first_order(&malg, &fp)?;
    let matrix_is_right_inverse = malg.mul(&first_order_operator(&malg, &a), &matrix_h) == malg.one();
    let entries = matrix_to_scalar(&malg, salg, &matrix_h)?;
    let last_column: Vec<Nf<R>> = entries.iter().map(|row| row[n - 1].clone()).collect();
    let h1 = &last_column[0];
    let derivative_column = last_column.iter().enumerate().all(|(i, h)| salg.mul(&salg.pow(&salg.d(), i as u32), h1) == *h);
    let l = super::higher::scalar_operator(salg, &p.coeffs);
    let entry_is_right_inverse = salg.mul(&l, h1) == salg.one();
    let matches_direct = variation_of_constants(salg, p)? == *h1;
    Ok(CompanionRoute { matrix_h, matrix_is_right_inverse, last_column, derivative_column, entry_is_right_inverse, matches_direct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::LaurentLogRing;
    use crate::scalar::qi;

    #[test]
    fn second_order_companion() {
        let alg = OpAlg::new(LaurentLogRing);
        let r = &alg.ring;
        let coeffs = vec![r.scale(&qi(2), &r.x_pow(-2)), r.scale(&qi(-2), &r.x_pow(-1))];
        let a = companion_matrix(r, &coeffs);
        assert_eq!(a.entries, vec![r.zero(), r.constant(&qi(-1)), coeffs[0].clone(), coeffs[1].clone()]);
        let p = ScalarProblem::new(r, coeffs, vec![r.x(), r.x_pow(2)]).unwrap();
        let route = companion_right_inverse(&alg, &p).unwrap();
        assert!(route.matrix_is_right_inverse);
        assert!(route.entry_is_right_inverse);
        assert!(route.derivative_column);
        assert!(route.matches_direct);
    }
}
