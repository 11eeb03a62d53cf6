//! The integro-differential ring contract.
//!
//! An integro-differential ring `(R, ∂, ∫)` is a ring with a derivation `∂`
//! (additive, Leibniz rule) and a `C`-linear right inverse `∫` of `∂`, where
//! `C = ker ∂` is the ring of constants. The induced evaluation
//! `E f = f − ∫∂f` is a projector onto `C`, and `R = C ⊕ ∫R`.
//!
//! Every algorithm downstream is generic over [`IdRing`]. Each ring exposes a
//! countable basis over the base scalars (`coords`/`basis_elem`) so that
//! equality of elements and of tensor products over `C` is decidable by
//! comparing coordinates.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::RngCore;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::syntax::Expr;

/// Coordinates of a tensor: canonical basis-key words with scalar weights.
pub type TensorCoords<K, S> = BTreeMap<Vec<K>, S>;

/// A (generalized) integro-differential ring with exact arithmetic.
pub trait IdRing: Clone + Debug + Send + Sync + 'static {
    /// Base scalars; the ring is an algebra over them.
    type Scalar: Scalar;
    /// Ring elements in a canonical representation.
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;
    /// Index of the basis used for coordinates.
    type Key: Clone + Debug + Ord + Hash + Send + Sync + 'static;

    /// Short human-readable description of the ring.
    fn name(&self) -> String;

    /// Additive neutral element.
    fn zero(&self) -> Self::Elem;
    /// Multiplicative neutral element.
    fn one(&self) -> Self::Elem;
    /// Embeds a base scalar.
    fn constant(&self, c: &Self::Scalar) -> Self::Elem;
    /// Sum.
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Additive inverse.
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Product `a·b`.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Scalar multiple.
    fn scale(&self, c: &Self::Scalar, a: &Self::Elem) -> Self::Elem;
    /// Zero test.
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// The derivation `∂`.
    fn derive(&self, a: &Self::Elem) -> Self::Elem;
    /// The integration `∫`, a `C`-linear right inverse of `∂`.
    fn integrate(&self, a: &Self::Elem) -> Self::Elem;
    /// The evaluation `E`. The default is the defining formula `f − ∫∂f`;
    /// rings override it with a closed form.
    fn evaluate(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.integrate(&self.derive(a)))
    }

    /// Coordinates over the base scalars, sorted by key, without zeros.
    fn coords(&self, a: &Self::Elem) -> Vec<(Self::Key, Self::Scalar)>;
    /// The basis element with the given key.
    fn basis_elem(&self, k: &Self::Key) -> Self::Elem;

    /// Coordinates of `a₁ ⊗ … ⊗ a_k` in the tensor product over the
    /// constants `C`. The default assumes `C` equals the base scalars, so the
    /// tensor product has the product basis. Each returned key word is
    /// realized by the pure tensor of the corresponding basis elements.
    fn tensor_coords(&self, slots: &[&Self::Elem]) -> TensorCoords<Self::Key, Self::Scalar> {
        let mut acc: TensorCoords<Self::Key, Self::Scalar> = BTreeMap::new();
        acc.insert(Vec::new(), Self::Scalar::one());
        for s in slots {
            let cs = self.coords(s);
            let mut next = BTreeMap::new();
            for (w, c) in &acc {
                for (k, d) in &cs {
                    let mut w2 = w.clone();
                    w2.push(k.clone());
                    next.insert(w2, c.clone() * d.clone());
                }
            }
            acc = next;
        }
        acc
    }

    /// `true` if multiplication is commutative.
    fn is_commutative(&self) -> bool {
        true
    }
    /// `true` if the ring has no zero divisors.
    fn is_domain(&self) -> bool {
        true
    }
    /// `true` if the constants `C` coincide with the base scalars.
    fn constants_are_scalars(&self) -> bool {
        true
    }

    /// Multiplicative inverse, where representable.
    fn invert(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Printable form accepted back by the parser.
    fn format(&self, a: &Self::Elem) -> String;

    /// Interprets a named atom (e.g. `x`, `ln(x)`) of the text syntax.
    fn atom(&self, name: &str, args: &[Expr]) -> Result<Self::Elem>;

    /// Interprets a matrix literal; only matrix rings accept these.
    fn matrix_atom(&self, _rows: &[Vec<Expr>]) -> Result<Self::Elem> {
        Err(Error::Elaborate("matrix literal outside a matrix ring".into()))
    }

    /// Random element whose size grows with `size`; used by property tests
    /// and randomized checks.
    fn sample(&self, rng: &mut dyn RngCore, size: usize) -> Self::Elem;

    /// Difference `a − b`.
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Power with nonnegative exponent.
    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// The scalar `c` if `a = c·1`.
    fn scalar_value(&self, a: &Self::Elem) -> Option<Self::Scalar> {
        if self.is_zero(a) {
            return Some(Self::Scalar::zero());
        }
        let one = self.coords(&self.one());
        let cs = self.coords(a);
        if one.len() == 1 && cs.len() == 1 && cs[0].0 == one[0].0 {
            one[0].1.inv().map(|i| cs[0].1.clone() * i)
        } else {
            None
        }
    }

    /// Rebuilds an element from coordinates.
    fn from_coords(&self, cs: &[(Self::Key, Self::Scalar)]) -> Self::Elem {
        cs.iter().fold(self.zero(), |acc, (k, c)| self.add(&acc, &self.scale(c, &self.basis_elem(k))))
    }

    /// `∂ⁿ a`.
    fn derive_n(&self, a: &Self::Elem, n: usize) -> Self::Elem {
        (0..n).fold(a.clone(), |acc, _| self.derive(&acc))
    }

    /// `∫ⁿ a`.
    fn integrate_n(&self, a: &Self::Elem, n: usize) -> Self::Elem {
        (0..n).fold(a.clone(), |acc, _| self.integrate(&acc))
    }

    /// `true` if `a` is a constant, i.e. `∂a = 0`.
    fn is_constant(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.derive(a))
    }

    /// Sum of a list of elements.
    fn sum<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, items: I) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Sparse map from basis keys to nonzero coefficients; the common element
/// representation of the concrete rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sparse<K: Ord, S>(pub BTreeMap<K, S>);

impl<K: Ord + Clone, S: Scalar> Sparse<K, S> {
    /// The zero element.
    pub fn zero() -> Self {
        Sparse(BTreeMap::new())
    }

    /// A single term `c·b_k`.
    pub fn term(k: K, c: S) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        Sparse(m)
    }

    /// Adds `c·b_k` in place.
    pub fn add_term(&mut self, k: K, c: S) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&k) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.0.remove(&k);
                } else {
                    *v = s;
                }
            }
            None => {
                self.0.insert(k, c);
            }
        }
    }

    /// Sum.
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.0 {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    /// Negation.
    pub fn negated(&self) -> Self {
        Sparse(self.0.iter().map(|(k, c)| (k.clone(), -c.clone())).collect())
    }

    /// Scalar multiple.
    pub fn scaled(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Sparse(self.0.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).filter(|(_, v)| !v.is_zero()).collect())
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear(&self, f: impl Fn(&K) -> Self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.0 {
            for (k2, c2) in f(k).0 {
                out.add_term(k2, c.clone() * c2);
            }
        }
        out
    }

    /// Bilinear product given on pairs of basis elements.
    pub fn bilinear(&self, other: &Self, f: impl Fn(&K, &K) -> Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.0 {
            for (k2, c2) in &other.0 {
                let c = c1.clone() * c2.clone();
                for (k, d) in f(k1, k2).0 {
                    out.add_term(k, c.clone() * d);
                }
            }
        }
        out
    }

    /// Coordinates in key order.
    pub fn coords(&self) -> Vec<(K, S)> {
        self.0.iter().map(|(k, c)| (k.clone(), c.clone())).collect()
    }

    /// Coefficient of the basis element `k`.
    pub fn coeff(&self, k: &K) -> S {
        self.0.get(k).cloned().unwrap_or_else(S::zero)
    }
}

/// A functional `R → C` represented as a function returning embedded
/// constants.
pub type FunctionalFn<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// The integro-differential ring obtained from `base` by replacing its
/// integration with the one induced by an evaluation `e`:
/// `∫_e f = ∫f − e(∫f)`. Its induced evaluation is exactly `e`.
#[derive(Clone)]
pub struct Induced<R: IdRing> {
    base: R,
    label: String,
    e: FunctionalFn<R::Elem>,
}

impl<R: IdRing> Debug for Induced<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Induced({:?}, {})", self.base, self.label)
    }
}

/// Builds the integration induced by `e` on `base`.
///
/// `e` must be `C`-linear with values in the constants and act as the
/// identity on constants; the necessary condition `e(1) = 1` is checked.
pub fn induced_integration<R: IdRing>(base: R, label: &str, e: FunctionalFn<R::Elem>) -> Result<Induced<R>> {
    let one = base.one();
    let e1 = e(&one);
    if e1 != one {
        return Err(Error::NotAnEvaluation(base.format(&e1)));
    }
    Ok(Induced { base, label: label.to_string(), e })
}

impl<R: IdRing> Induced<R> {
    /// The underlying ring with its original integration.
    pub fn base(&self) -> &R {
        &self.base
    }
}

impl<R: IdRing> IdRing for Induced<R> {
    type Scalar = R::Scalar;
    type Elem = R::Elem;
    type Key = R::Key;

    fn name(&self) -> String {
        format!("{} with integration induced by {}", self.base.name(), self.label)
    }
    fn zero(&self) -> Self::Elem {
        self.base.zero()
    }
    fn one(&self) -> Self::Elem {
        self.base.one()
    }
    fn constant(&self, c: &Self::Scalar) -> Self::Elem {
        self.base.constant(c)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.base.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.base.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.base.mul(a, b)
    }
    fn scale(&self, c: &Self::Scalar, a: &Self::Elem) -> Self::Elem {
        self.base.scale(c, a)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(a)
    }
    fn derive(&self, a: &Self::Elem) -> Self::Elem {
        self.base.derive(a)
    }
    fn integrate(&self, a: &Self::Elem) -> Self::Elem {
        let i = self.base.integrate(a);
        self.base.sub(&i, &(self.e)(&i))
    }
    fn evaluate(&self, a: &Self::Elem) -> Self::Elem {
        (self.e)(a)
    }
    fn coords(&self, a: &Self::Elem) -> Vec<(Self::Key, Self::Scalar)> {
        self.base.coords(a)
    }
    fn basis_elem(&self, k: &Self::Key) -> Self::Elem {
        self.base.basis_elem(k)
    }
    fn tensor_coords(&self, slots: &[&Self::Elem]) -> TensorCoords<Self::Key, Self::Scalar> {
        self.base.tensor_coords(slots)
    }
    fn is_commutative(&self) -> bool {
        self.base.is_commutative()
    }
    fn is_domain(&self) -> bool {
        self.base.is_domain()
    }
    fn constants_are_scalars(&self) -> bool {
        self.base.constants_are_scalars()
    }
    fn invert(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.base.invert(a)
    }
    fn format(&self, a: &Self::Elem) -> String {
        self.base.format(a)
    }
    fn atom(&self, name: &str, args: &[Expr]) -> Result<Self::Elem> {
        self.base.atom(name, args)
    }
    fn matrix_atom(&self, rows: &[Vec<Expr>]) -> Result<Self::Elem> {
        self.base.matrix_atom(rows)
    }
    fn sample(&self, rng: &mut dyn RngCore, size: usize) -> Self::Elem {
        self.base.sample(rng, size)
    }
}

/// Outcome of checking the defining axioms on concrete elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    /// Which law failed.
    pub law: &'static str,
    /// Printed inputs.
    pub inputs: Vec<String>,
}

/// Checks the integro-differential axioms on `f`, `g` and the scalar `c`:
/// Leibniz rule, `∂∫ = id`, `∫∂ = id − E`, `C`-linearity of `∫`, the
/// projector laws of `E`, `E∫ = 0`, the closed-form evaluation against
/// `f − ∫∂f`, and the decomposition `f = Ef + ∫∂f`.
pub fn check_axioms<R: IdRing>(ring: &R, f: &R::Elem, g: &R::Elem, c: &R::Scalar) -> std::result::Result<(), AxiomViolation> {
    let fail = |law: &'static str| AxiomViolation { law, inputs: vec![ring.format(f), ring.format(g), format!("{c}")] };
    let d = |x: &R::Elem| ring.derive(x);
    let i = |x: &R::Elem| ring.integrate(x);
    let e = |x: &R::Elem| ring.evaluate(x);

    // Leibniz rule
    let lhs = d(&ring.mul(f, g));
    let rhs = ring.add(&ring.mul(&d(f), g), &ring.mul(f, &d(g)));
    if lhs != rhs {
        return Err(fail("leibniz"));
    }
    // additivity of ∂ and ∫
    if d(&ring.add(f, g)) != ring.add(&d(f), &d(g)) {
        return Err(fail("derivation additive"));
    }
    // section axiom
    if d(&i(f)) != *f {
        return Err(fail("derive(integrate(f)) = f"));
    }
    // evaluation definition
    let ef = e(f);
    if ring.sub(f, &i(&d(f))) != ef {
        return Err(fail("evaluate(f) = f - integrate(derive(f))"));
    }
    // C-linearity with an embedded constant and with a constant function
    let cf = ring.mul(&ring.constant(c), f);
    if i(&cf) != ring.mul(&ring.constant(c), &i(f)) {
        return Err(fail("integrate C-linear"));
    }
    let eg = e(g);
    if i(&ring.mul(&eg, f)) != ring.mul(&eg, &i(f)) || i(&ring.mul(f, &eg)) != ring.mul(&i(f), &eg) {
        return Err(fail("integrate linear over constants"));
    }
    // projector laws
    if !ring.is_constant(&ef) {
        return Err(fail("evaluate(f) constant"));
    }
    if e(&ef) != ef {
        return Err(fail("evaluate idempotent"));
    }
    if !ring.is_zero(&e(&i(f))) {
        return Err(fail("evaluate(integrate(f)) = 0"));
    }
    if e(&ring.constant(c)) != ring.constant(c) {
        return Err(fail("evaluate identity on constants"));
    }
    // decomposition
    if ring.add(&ef, &i(&d(f))) != *f {
        return Err(fail("decomposition"));
    }
    Ok(())
}

/// Returns `true` if `E(fg) = E(f)E(g)`.
pub fn evaluation_multiplicative_on<R: IdRing>(ring: &R, f: &R::Elem, g: &R::Elem) -> bool {
    ring.evaluate(&ring.mul(f, g)) == ring.mul(&ring.evaluate(f), &ring.evaluate(g))
}
