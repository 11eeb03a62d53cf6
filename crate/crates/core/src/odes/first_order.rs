//! First-order equations `∂y + a·y = f`, including systems.

use crate::error::{Error, Result};
use crate::opalg::{Nf, OpAlg};
use crate::ring::IdRing;

/// The data of `L = ∂ + a` with a homogeneous solution.
///
/// `a` and `z` may be matrices when the ring is a matrix ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderProblem<E> {
    /// The coefficient `a`.
    pub a: E,
    /// A solution of `∂z + a·z = 0`.
    pub z: E,
    /// A right inverse of `z`.
    pub z_inv: Option<E>,
    /// A right inverse of `Ez` among the constants.
    pub ez_inv: Option<E>,
}

impl<E: Clone> FirstOrderProblem<E> {
    /// The problem with inverses found by the ring's partial inversion.
    pub fn new<R: IdRing<Elem = E>>(ring: &R, a: E, z: E) -> Result<Self> {
        let z_inv = ring.invert(&z);
        let ez_inv = ring.invert(&ring.evaluate(&z));
        let p = FirstOrderProblem { a, z, z_inv, ez_inv };
        p.validate(ring)?;
        Ok(p)
    }

    /// The problem with caller-supplied inverses.
    pub fn with_inverses<R: IdRing<Elem = E>>(ring: &R, a: E, z: E, z_inv: Option<E>, ez_inv: Option<E>) -> Result<Self> {
        let p = FirstOrderProblem { a, z, z_inv, ez_inv };
        p.validate(ring)?;
        Ok(p)
    }

    /// Checks `∂z + a·z = 0`, `z·z⁻¹ = 1` and `Ez·(Ez)⁻¹ = 1`.
    pub fn validate<R: IdRing<Elem = E>>(&self, ring: &R) -> Result<()> {
        let r = ring;
        if !r.is_zero(&r.add(&r.derive(&self.z), &r.mul(&self.a, &self.z))) {
            return Err(Error::InvalidProblem(format!("∂z + a·z ≠ 0 for z = {}", r.format(&self.z))));
        }
        if let Some(zi) = &self.z_inv {
            if !r.is_zero(&r.sub(&r.mul(&self.z, zi), &r.one())) {
                return Err(Error::InvalidProblem(format!("z·z⁻¹ ≠ 1 for z⁻¹ = {}", r.format(zi))));
            }
        }
        if let Some(ei) = &self.ez_inv {
            if !r.is_constant(ei) || !r.is_zero(&r.sub(&r.mul(&r.evaluate(&self.z), ei), &r.one())) {
                return Err(Error::InvalidProblem(format!("Ez·(Ez)⁻¹ ≠ 1 for (Ez)⁻¹ = {}", r.format(ei))));
            }
        }
        Ok(())
    }
}

/// `L = ∂ + a`.
pub fn first_order_operator<R: IdRing>(alg: &OpAlg<R>, a: &R::Elem) -> Nf<R> {
    alg.d().add(&alg.coeff(a))
}

/// The right inverse `H = z·∫·z⁻¹` of `∂ + a`.
pub fn right_inverse_first_order<R: IdRing>(alg: &OpAlg<R>, p: &FirstOrderProblem<R::Elem>) -> Result<Nf<R>> {
    let zi = p.z_inv.as_ref().ok_or_else(|| Error::NotInvertible(alg.ring.format(&p.z)))?;
    Ok(alg.product(&[alg.coeff(&p.z), alg.i(), alg.coeff(zi)]))
}

/// The Green's operator `G = (1 − z(Ez)⁻¹·E)·z·∫·z⁻¹`, a right inverse of
/// `∂ + a` with `E·G = 0`.
pub fn green_first_order<R: IdRing>(alg: &OpAlg<R>, p: &FirstOrderProblem<R::Elem>) -> Result<Nf<R>> {
    let ei = p.ez_inv.as_ref().ok_or(Error::EzNotInvertible)?;
    let h = right_inverse_first_order(alg, p)?;
    let proj = alg.one().sub(&alg.product(&[alg.coeff(&alg.ring.mul(&p.z, ei)), alg.e()]));
    Ok(alg.mul(&proj, &h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odes::{initial_conditions, is_right_inverse};
    use crate::rings::{ExpPolyRing, LaurentLogRing, PolyRing};
    use crate::scalar::qi;

    #[test]
    fn trivial_problem() {
        let alg = OpAlg::new(PolyRing);
        let r = &alg.ring;
        let p = FirstOrderProblem::new(r, r.zero(), r.one()).unwrap();
        assert_eq!(right_inverse_first_order(&alg, &p).unwrap(), alg.i());
        assert_eq!(green_first_order(&alg, &p).unwrap(), alg.i());
    }

    #[test]
    fn laurent_x() {
        let alg = OpAlg::new(LaurentLogRing);
        let r = &alg.ring;
        let p = FirstOrderProblem::new(r, r.neg(&r.x_pow(-1)), r.x()).unwrap();
        let h = right_inverse_first_order(&alg, &p).unwrap();
        assert!(is_right_inverse(&alg, &first_order_operator(&alg, &p.a), &h));
        assert!(matches!(green_first_order(&alg, &p), Err(Error::EzNotInvertible)));
    }

    #[test]
    fn exponential() {
        let alg = OpAlg::new(ExpPolyRing::eval_at_zero());
        let r = &alg.ring;
        let c = qi(2);
        let p = FirstOrderProblem::new(r, r.constant(&-c.clone()), r.exp(c.clone())).unwrap();
        let g = green_first_order(&alg, &p).unwrap();
        assert!(is_right_inverse(&alg, &first_order_operator(&alg, &p.a), &g));
        assert_eq!(initial_conditions(&alg, &g, 1), vec![true]);

        let alg = OpAlg::new(ExpPolyRing::recursive());
        let r = &alg.ring;
        let p = FirstOrderProblem::new(r, r.constant(&-c.clone()), r.exp(c)).unwrap();
        assert!(matches!(green_first_order(&alg, &p), Err(Error::EzNotInvertible)));
    }
}
