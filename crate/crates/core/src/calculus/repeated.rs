//! Repeated integrals of one and Rota-Baxter identities.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::IdRing;
use crate::scalar::{binomial, factorial, Scalar};

/// `x_n = ∫ⁿ1`, with `x₀ = 1`.
pub fn x_n<R: IdRing>(ring: &R, n: usize) -> R::Elem {
    ring.integrate_n(&ring.one(), n)
}

/// The constant `c_{m,n} = E(x_m·x_n)`.
pub fn c_mn<R: IdRing>(ring: &R, m: usize, n: usize) -> R::Elem {
    ring.evaluate(&ring.mul(&x_n(ring, m), &x_n(ring, n)))
}

fn require_rationals<R: IdRing>(what: &str) -> Result<()> {
    if R::Scalar::characteristic() != 0 {
        return Err(Error::HypothesisViolated(format!("{what} needs Q ⊆ R")));
    }
    Ok(())
}

/// `c_{m,n}` for `m, n ≥ 1` from the values `c_{1,k}` alone, by
/// `c_{m,n} = (1/m)·(C(m+n−1, m−1)·c_{1,m+n−1}
///   + Σ_{j=0}^{m−2} Σ_{k=1}^{n−1} C(j+k, j)·c_{1,j+k}·c_{m−j−1,n−k})`.
///
/// Needs `Q ⊆ R`; the `c_{1,k}` are computed in the ring.
pub fn c_mn_by_recursion<R: IdRing>(ring: &R, m: usize, n: usize) -> Result<R::Elem> {
    require_rationals::<R>("the c_{m,n} recursion")?;
    if m == 0 || n == 0 {
        return Err(Error::HypothesisViolated("c_{m,n} is defined for m, n ≥ 1".into()));
    }
    let c1: Vec<R::Elem> = (0..m + n).map(|k| if k == 0 { ring.zero() } else { c_mn(ring, 1, k) }).collect();
    let mut memo = std::collections::HashMap::new();
    Ok(rec(ring, &c1, m, n, &mut memo))
}

fn rec<R: IdRing>(ring: &R, c1: &[R::Elem], m: usize, n: usize, memo: &mut std::collections::HashMap<(usize, usize), R::Elem>) -> R::Elem {
    if m == 1 {
        return c1[n].clone();
    }
    if let Some(v) = memo.get(&(m, n)) {
        return v.clone();
    }
    let mut acc = ring.scale(&binomial::<R::Scalar>(m + n - 1, m - 1), &c1[m + n - 1]);
    for j in 0..=m - 2 {
        for k in 1..n {
            let inner = rec(ring, c1, m - j - 1, n - k, memo);
            acc = ring.add(&acc, &ring.scale(&binomial::<R::Scalar>(j + k, j), &ring.mul(&c1[j + k], &inner)));
        }
    }
    let inv_m = R::Scalar::from_i64(m as i64).inv().expect("characteristic zero");
    let v = ring.scale(&inv_m, &acc);
    memo.insert((m, n), v.clone());
    v
}

/// `x_n` in terms of powers of `x₁`, by
/// `x_n = x₁ⁿ/n! − Σ_{i=2}^n (1/i!)·x_{n−i}·E(x₁ⁱ)`, with the lower `x_k`
/// obtained by the same recursion. Needs `Q ⊆ R`.
pub fn x_n_by_powers<R: IdRing>(ring: &R, n: usize) -> Result<R::Elem> {
    require_rationals::<R>("the x_n recursion")?;
    let x1 = x_n(ring, 1);
    let mut xs: Vec<R::Elem> = vec![ring.one()];
    for k in 1..=n {
        let inv = |i: usize| factorial::<R::Scalar>(i).inv().expect("characteristic zero");
        let mut v = ring.scale(&inv(k), &ring.pow(&x1, k as u32));
        for i in 2..=k {
            let t = ring.mul(&xs[k - i], &ring.evaluate(&ring.pow(&x1, i as u32)));
            v = ring.sub(&v, &ring.scale(&inv(i), &t));
        }
        xs.push(v);
    }
    Ok(xs.pop().expect("nonempty"))
}

/// Both sides of the Rota-Baxter identities for a pair `f, g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotaBaxterReport<E> {
    /// `(∫f)·∫g`.
    pub lhs: E,
    /// The evaluation term `E((∫f)·∫g)`.
    pub e_term: E,
    /// `∫f∫g + ∫(∫f)g + E((∫f)∫g) = (∫f)∫g`.
    pub with_evaluation: bool,
    /// The identity without evaluation term.
    pub classical: bool,
    /// The evaluation term `E((∫∂f)·∫∂g)` of the hybrid identity.
    pub hybrid_e_term: E,
    /// `(∫∂f)∫∂g = (∫∂f)g + f∫∂g − ∫∂(fg) − E((∫∂f)∫∂g)`.
    pub hybrid_with_evaluation: bool,
    /// The hybrid identity without evaluation term.
    pub hybrid_classical: bool,
}

impl<E> RotaBaxterReport<E> {
    /// JSON form, with elements formatted by `fmt`.
    pub fn to_json(&self, fmt: impl Fn(&E) -> String) -> Value {
        json!({
            "lhs": fmt(&self.lhs),
            "e_term": fmt(&self.e_term),
            "with_evaluation": self.with_evaluation,
            "classical": self.classical,
            "hybrid_e_term": fmt(&self.hybrid_e_term),
            "hybrid_with_evaluation": self.hybrid_with_evaluation,
            "hybrid_classical": self.hybrid_classical,
        })
    }
}

/// Checks the Rota-Baxter identity with evaluation
/// `(∫f)∫g = ∫f∫g + ∫(∫f)g + E((∫f)∫g)`, its hybrid form
/// `(∫∂f)∫∂g = (∫∂f)g + f∫∂g − ∫∂(fg) − E((∫∂f)∫∂g)`, and both
/// identities with the evaluation term dropped.
pub fn rota_baxter_check<R: IdRing>(ring: &R, f: &R::Elem, g: &R::Elem) -> RotaBaxterReport<R::Elem> {
    let r = ring;
    let (if_, ig) = (r.integrate(f), r.integrate(g));
    let lhs = r.mul(&if_, &ig);
    let e_term = r.evaluate(&lhs);
    let classical_rhs = r.add(&r.integrate(&r.mul(f, &ig)), &r.integrate(&r.mul(&if_, g)));
    let with_rhs = r.add(&classical_rhs, &e_term);

    let (idf, idg) = (r.integrate(&r.derive(f)), r.integrate(&r.derive(g)));
    let hybrid_lhs = r.mul(&idf, &idg);
    let hybrid_e_term = r.evaluate(&hybrid_lhs);
    let hybrid_classical_rhs = r.sub(&r.add(&r.mul(&idf, g), &r.mul(f, &idg)), &r.integrate(&r.derive(&r.mul(f, g))));
    let hybrid_rhs = r.sub(&hybrid_classical_rhs, &hybrid_e_term);
    RotaBaxterReport {
        with_evaluation: lhs == with_rhs,
        classical: lhs == classical_rhs,
        hybrid_with_evaluation: hybrid_lhs == hybrid_rhs,
        hybrid_classical: hybrid_lhs == hybrid_classical_rhs,
        lhs,
        e_term,
        hybrid_e_term,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{LaurentLogRing, PolyRing, ShiftedPolyRing};
    use crate::scalar::{q, qi};

    #[test]
    fn polynomial_repeated_integrals() {
        let r = PolyRing;
        assert_eq!(x_n(&r, 2), r.monomial(2, q(1, 2)));
        assert!(r.is_zero(&c_mn(&r, 1, 1)));
    }

    #[test]
    fn shifted_c11() {
        let c = qi(3);
        let r = ShiftedPolyRing::new(c.clone());
        assert_eq!(c_mn(&r, 1, 1), r.constant(&(-c.clone() * c.clone() - qi(2) * c)));
    }

    #[test]
    fn laurent_rota_baxter() {
        let l = LaurentLogRing;
        let rep = rota_baxter_check(&l, &l.x_pow(-2), &l.one());
        assert_eq!(rep.e_term, l.constant(&qi(-1)));
        assert!(rep.with_evaluation && !rep.classical);
        let rep = rota_baxter_check(&l, &l.x(), &l.x_pow(-1));
        assert!(rep.hybrid_with_evaluation && !rep.hybrid_classical);
    }
}
