//! Square matrices over an integro-differential ring.

use std::collections::BTreeMap;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::ring::{IdRing, TensorCoords};
use crate::syntax::{eval_elem, Defs, Expr};

/// An `n×n` matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    /// Dimension.
    pub n: usize,
    /// Entries in row-major order.
    pub entries: Vec<E>,
}

impl<E: Clone> Mat<E> {
    /// Entry `(i, j)`, zero-based.
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    /// Builds a matrix from a function of the indices.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Mat { n, entries }
    }
}

/// `n×n` matrices over `inner` with entrywise `∂`, `∫` and `E`.
///
/// The constants are the constant matrices; for `n > 1` the ring is
/// noncommutative and has zero divisors. Tensor products over the constants
/// are computed by contraction: `Mₙ(R) ⊗ Mₙ(R) ≅ Mₙ(R ⊗ R)` over `Mₙ(C)`,
/// `A ⊗ B ↦ (Σₖ Aᵢₖ ⊗ Bₖⱼ)ᵢⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRing<R: IdRing> {
    /// Coefficient ring of the entries.
    pub inner: R,
    /// Dimension.
    pub n: usize,
}

impl<R: IdRing> MatrixRing<R> {
    /// The ring of `n×n` matrices over `inner`.
    pub fn new(inner: R, n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        MatrixRing { inner, n }
    }

    /// Builds a matrix from a function of the indices.
    pub fn from_fn(&self, f: impl Fn(usize, usize) -> R::Elem) -> Mat<R::Elem> {
        Mat::from_fn(self.n, f)
    }

    /// Builds a matrix from rows; fails on a size mismatch.
    pub fn from_rows(&self, rows: Vec<Vec<R::Elem>>) -> Result<Mat<R::Elem>> {
        if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::SizeMismatch(format!("expected a {0}x{0} matrix", self.n)));
        }
        Ok(Mat { n: self.n, entries: rows.into_iter().flatten().collect() })
    }

    /// The scalar matrix `f·Id`.
    pub fn diag(&self, f: &R::Elem) -> Mat<R::Elem> {
        self.from_fn(|i, j| if i == j { f.clone() } else { self.inner.zero() })
    }

    /// The matrix unit `E_{ij}·f`.
    pub fn unit(&self, i: usize, j: usize, f: &R::Elem) -> Mat<R::Elem> {
        self.from_fn(|a, b| if a == i && b == j { f.clone() } else { self.inner.zero() })
    }

    fn map(&self, a: &Mat<R::Elem>, f: impl Fn(&R::Elem) -> R::Elem) -> Mat<R::Elem> {
        Mat { n: a.n, entries: a.entries.iter().map(f).collect() }
    }

    /// Determinant by cofactor expansion along the first row. Requires a
    /// commutative entry ring.
    pub fn det(&self, a: &Mat<R::Elem>) -> Result<R::Elem> {
        if !self.inner.is_commutative() {
            return Err(Error::CommutativeRequired);
        }
        Ok(laplace_det(&self.inner, &a.entries, a.n))
    }
}

/// Determinant of a row-major `n×n` matrix over a commutative ring by
/// Laplace expansion along the first row.
pub(crate) fn laplace_det<R: IdRing>(ring: &R, m: &[R::Elem], n: usize) -> R::Elem {
    match n {
        0 => ring.one(),
        1 => m[0].clone(),
        2 => ring.sub(&ring.mul(&m[0], &m[3]), &ring.mul(&m[1], &m[2])),
        _ => {
            let mut acc = ring.zero();
            for j in 0..n {
                if ring.is_zero(&m[j]) {
                    continue;
                }
                let minor = minor_of(m, n, 0, j);
                let term = ring.mul(&m[j], &laplace_det(ring, &minor, n - 1));
                acc = if j % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
            }
            acc
        }
    }
}

/// The row-major minor obtained by deleting row `r` and column `c`.
pub(crate) fn minor_of<E: Clone>(m: &[E], n: usize, r: usize, c: usize) -> Vec<E> {
    let mut out = Vec::with_capacity((n - 1) * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != r && j != c {
                out.push(m[i * n + j].clone());
            }
        }
    }
    out
}

impl<R: IdRing> IdRing for MatrixRing<R> {
    type Scalar = R::Scalar;
    type Elem = Mat<R::Elem>;
    type Key = (usize, usize, R::Key);

    fn name(&self) -> String {
        format!("{0}x{0} matrices over {1}", self.n, self.inner.name())
    }
    fn zero(&self) -> Mat<R::Elem> {
        self.from_fn(|_, _| self.inner.zero())
    }
    fn one(&self) -> Mat<R::Elem> {
        self.diag(&self.inner.one())
    }
    fn constant(&self, c: &R::Scalar) -> Mat<R::Elem> {
        self.diag(&self.inner.constant(c))
    }
    fn add(&self, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Mat<R::Elem> {
        self.from_fn(|i, j| self.inner.add(a.get(i, j), b.get(i, j)))
    }
    fn neg(&self, a: &Mat<R::Elem>) -> Mat<R::Elem> {
        self.map(a, |x| self.inner.neg(x))
    }
    fn mul(&self, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Mat<R::Elem> {
        self.from_fn(|i, j| {
            (0..self.n).fold(self.inner.zero(), |acc, k| self.inner.add(&acc, &self.inner.mul(a.get(i, k), b.get(k, j))))
        })
    }
    fn scale(&self, c: &R::Scalar, a: &Mat<R::Elem>) -> Mat<R::Elem> {
        self.map(a, |x| self.inner.scale(c, x))
    }
    fn is_zero(&self, a: &Mat<R::Elem>) -> bool {
        a.entries.iter().all(|x| self.inner.is_zero(x))
    }
    fn derive(&self, a: &Mat<R::Elem>) -> Mat<R::Elem> {
        self.map(a, |x| self.inner.derive(x))
    }
    fn integrate(&self, a: &Mat<R::Elem>) -> Mat<R::Elem> {
        self.map(a, |x| self.inner.integrate(x))
    }
    fn evaluate(&self, a: &Mat<R::Elem>) -> Mat<R::Elem> {
        self.map(a, |x| self.inner.evaluate(x))
    }
    fn coords(&self, a: &Mat<R::Elem>) -> Vec<(Self::Key, R::Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for (k, c) in self.inner.coords(a.get(i, j)) {
                    out.push(((i, j, k), c));
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }
    fn basis_elem(&self, k: &Self::Key) -> Mat<R::Elem> {
        self.unit(k.0, k.1, &self.inner.basis_elem(&k.2))
    }
    fn tensor_coords(&self, slots: &[&Mat<R::Elem>]) -> TensorCoords<Self::Key, R::Scalar> {
        let mut out: TensorCoords<Self::Key, R::Scalar> = BTreeMap::new();
        let m = slots.len();
        if m == 0 {
            out.insert(Vec::new(), num_traits::One::one());
            return out;
        }
        let n = self.n;
        // Enumerate the interior contraction indices m₁…m_{m−1}.
        let interior = m - 1;
        let total = n.pow(interior as u32);
        for i in 0..n {
            for l in 0..n {
                for code in 0..total {
                    let mut mids = Vec::with_capacity(interior);
                    let mut c = code;
                    for _ in 0..interior {
                        mids.push(c % n);
                        c /= n;
                    }
                    let mut entries = Vec::with_capacity(m);
                    for s in 0..m {
                        let row = if s == 0 { i } else { mids[s - 1] };
                        let col = if s == m - 1 { l } else { mids[s] };
                        entries.push(slots[s].get(row, col));
                    }
                    if entries.iter().any(|e| self.inner.is_zero(e)) {
                        continue;
                    }
                    for (word, coef) in self.inner.tensor_coords(&entries) {
                        let key: Vec<Self::Key> = word
                            .into_iter()
                            .enumerate()
                            .map(|(s, k)| {
                                let row = if s == 0 { i } else { 0 };
                                let col = if s == m - 1 { l } else { 0 };
                                (row, col, k)
                            })
                            .collect();
                        let slot = out.entry(key.clone()).or_insert_with(num_traits::Zero::zero);
                        *slot = slot.clone() + coef;
                        if num_traits::Zero::is_zero(slot) {
                            out.remove(&key);
                        }
                    }
                }
            }
        }
        out
    }
    fn is_commutative(&self) -> bool {
        self.n == 1 && self.inner.is_commutative()
    }
    fn is_domain(&self) -> bool {
        self.n == 1 && self.inner.is_domain()
    }
    fn constants_are_scalars(&self) -> bool {
        self.n == 1 && self.inner.constants_are_scalars()
    }
    fn invert(&self, a: &Mat<R::Elem>) -> Option<Mat<R::Elem>> {
        if !self.inner.is_commutative() {
            return None;
        }
        let n = self.n;
        let det = laplace_det(&self.inner, &a.entries, n);
        let dinv = self.inner.invert(&det)?;
        if n == 1 {
            return Some(Mat { n, entries: vec![dinv] });
        }
        Some(self.from_fn(|i, j| {
            // adjugate: (−1)^{i+j} · minor(j, i)
            let cof = laplace_det(&self.inner, &minor_of(&a.entries, n, j, i), n - 1);
            let cof = if (i + j) % 2 == 0 { cof } else { self.inner.neg(&cof) };
            self.inner.mul(&cof, &dinv)
        }))
    }
    fn format(&self, a: &Mat<R::Elem>) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let cells: Vec<String> = (0..self.n).map(|j| self.inner.format(a.get(i, j))).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
    fn atom(&self, name: &str, args: &[Expr]) -> Result<Mat<R::Elem>> {
        Ok(self.diag(&self.inner.atom(name, args)?))
    }
    fn matrix_atom(&self, rows: &[Vec<Expr>]) -> Result<Mat<R::Elem>> {
        let defs = Defs::new();
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|e| eval_elem(&self.inner, e, &defs)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        self.from_rows(rows)
    }
    fn sample(&self, rng: &mut dyn RngCore, size: usize) -> Mat<R::Elem> {
        let entries = (0..self.n * self.n).map(|_| self.inner.sample(rng, size)).collect();
        Mat { n: self.n, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{LaurentLogRing, PolyRing};
    use crate::syntax::parse_elem;

    #[test]
    fn noncommutative_product() {
        let r = MatrixRing::new(PolyRing, 2);
        let a = parse_elem(&r, "[[0, 1], [0, 0]]").unwrap();
        let b = parse_elem(&r, "[[0, 0], [1, 0]]").unwrap();
        assert_ne!(r.mul(&a, &b), r.mul(&b, &a));
        assert!(!r.is_commutative());
    }

    #[test]
    fn print_parse_round_trip_and_inverse() {
        let r = MatrixRing::new(LaurentLogRing, 2);
        let a = parse_elem(&r, "[[x, 1], [0, x^-1]]").unwrap();
        assert_eq!(parse_elem(&r, &r.format(&a)).unwrap(), a);
        let ai = r.invert(&a).unwrap();
        assert_eq!(r.mul(&a, &ai), r.one());
    }

    #[test]
    fn contraction_respects_constant_matrices() {
        // A·C ⊗ B = A ⊗ C·B for a constant matrix C.
        let r = MatrixRing::new(PolyRing, 2);
        let a = parse_elem(&r, "[[x, 1], [x^2, 0]]").unwrap();
        let b = parse_elem(&r, "[[1, x], [0, x^3]]").unwrap();
        let c = parse_elem(&r, "[[1, 2], [3, 4]]").unwrap();
        let lhs = r.tensor_coords(&[&r.mul(&a, &c), &b]);
        let rhs = r.tensor_coords(&[&a, &r.mul(&c, &b)]);
        assert_eq!(lhs, rhs);
        assert_ne!(lhs, r.tensor_coords(&[&b, &a]));
    }
}
