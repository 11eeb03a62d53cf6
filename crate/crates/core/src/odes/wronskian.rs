//! Wronskians.

use crate::error::{Error, Result};
use crate::ring::IdRing;
use crate::rings::laplace_det;

/// `W(f₁,…,fₙ) = det((∂^{i−1}f_j)_{i,j})`, by cofactor expansion; `W() = 1`.
/// Requires a commutative ring.
pub fn wronskian<R: IdRing>(ring: &R, fs: &[R::Elem]) -> Result<R::Elem> {
    if !ring.is_commutative() {
        return Err(Error::CommutativeRequired);
    }
    let n = fs.len();
    let mut m = Vec::with_capacity(n * n);
    for i in 0..n {
        for f in fs {
            m.push(ring.derive_n(f, i));
        }
    }
    Ok(laplace_det(ring, &m, n))
}

/// The elements `g_i = W(f_i, f_n)` for `i = 1,…,n−1`. If `f₁,…,fₙ` are
/// linearly independent over the constants of an integral domain, so are
/// the `g_i`.
pub fn pairwise_wronskians<R: IdRing>(ring: &R, fs: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let Some((last, rest)) = fs.split_last() else {
        return Ok(Vec::new());
    };
    rest.iter().map(|f| wronskian(ring, &[f.clone(), last.clone()])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{LaurentLogRing, PolyRing};

    #[test]
    fn small_wronskians() {
        let r = PolyRing;
        assert_eq!(wronskian(&r, &[r.one(), r.x()]).unwrap(), r.one());
        assert_eq!(wronskian(&r, &[r.x()]).unwrap(), r.x());
        let l = LaurentLogRing;
        assert_eq!(wronskian(&l, &[l.x(), l.x_pow(2)]).unwrap(), l.x_pow(2));
    }
}
