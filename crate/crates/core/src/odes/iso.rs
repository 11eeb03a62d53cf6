//! The isomorphism between operators with matrix coefficients and
//! matrices of scalar operators.
//!
//! `φ` maps a coefficient `A` to the matrix `(A_{ij})` of multiplication
//! operators and each of `∂`, `∫`, functionals to the diagonal matrix of
//! the scalar generator; its inverse `ψ` maps `E_{ij}(L)` to
//! `E_{ij}(1)·L` with `L` read as an operator with scalar-diagonal
//! coefficients. Functional `k` of the matrix operators is taken to act
//! entrywise as functional `k` of the scalar operators.

use crate::error::{Error, Result};
use crate::opalg::{Item, Nf, OpAlg};
use crate::ring::IdRing;
use crate::rings::MatrixRing;

type OpMatrix<R> = Vec<Vec<Nf<R>>>;

fn check_functional<R: IdRing>(salg: &OpAlg<R>, k: usize) -> Result<()> {
    if k >= salg.funcs.len() {
        return Err(Error::UnknownFunctional(format!("#{k}")));
    }
    Ok(())
}

/// `m·diag(g)`.
fn right_multiply<R: IdRing>(salg: &OpAlg<R>, m: &mut OpMatrix<R>, g: &Nf<R>) {
    for e in m.iter_mut().flatten() {
        if !e.is_zero() {
            *e = salg.mul(e, g);
        }
    }
}

/// `φ`: an operator over `n×n` matrices as the `n×n` matrix of scalar
/// operators.
pub fn matrix_to_scalar<R: IdRing>(malg: &OpAlg<MatrixRing<R>>, salg: &OpAlg<R>, a: &Nf<MatrixRing<R>>) -> Result<OpMatrix<R>> {
    let n = malg.ring.n;
    let mut out: OpMatrix<R> = vec![vec![Nf::<R>::zero(); n]; n];
    for (c, word) in malg.words(a) {
        // Start from the identity matrix scaled by c.
        let mut m: OpMatrix<R> = (0..n).map(|i| (0..n).map(|j| if i == j { salg.scalar(&c) } else { Nf::<R>::zero() }).collect()).collect();
        for item in &word {
            match item {
                Item::C(f) => {
                    let fm: OpMatrix<R> = (0..n).map(|i| (0..n).map(|j| salg.coeff(f.get(i, j))).collect()).collect();
                    m = mat_mul(salg, &m, &fm);
                }
                Item::P(k) => {
                    check_functional(salg, *k)?;
                    right_multiply(salg, &mut m, &salg.phi(*k));
                }
                other => {
                    let g = match other {
                        Item::D => salg.d(),
                        Item::I => salg.i(),
                        _ => unreachable!("coefficients are handled above"),
                    };
                    right_multiply(salg, &mut m, &g);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                out[i][j] = out[i][j].add(&m[i][j]);
            }
        }
    }
    Ok(out)
}

fn mat_mul<R: IdRing>(salg: &OpAlg<R>, a: &OpMatrix<R>, b: &OpMatrix<R>) -> OpMatrix<R> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Nf::<R>::zero(), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc.add(&salg.mul(&a[i][k], &b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// `ψ`: an `n×n` matrix of scalar operators as an operator over `n×n`
/// matrices; fails on a size mismatch.
pub fn scalar_to_matrix<R: IdRing>(malg: &OpAlg<MatrixRing<R>>, salg: &OpAlg<R>, m: &OpMatrix<R>) -> Result<Nf<MatrixRing<R>>> {
    let mr = &malg.ring;
    let n = mr.n;
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::SizeMismatch(format!("expected a {n}x{n} operator matrix")));
    }
    let mut terms = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            for (c, word) in salg.words(entry) {
                let mut w = vec![Item::C(mr.unit(i, j, &mr.inner.one()))];
                for item in word {
                    w.push(match item {
                        Item::C(f) => Item::C(mr.diag(&f)),
                        Item::D => Item::D,
                        Item::I => Item::I,
                        Item::P(k) => {
                            check_functional(salg, k)?;
                            if k >= malg.funcs.len() {
                                return Err(Error::UnknownFunctional(format!("#{k}")));
                            }
                            Item::P(k)
                        }
                    });
                }
                terms.push((c, w));
            }
        }
    }
    Ok(malg.reduce_words(terms, crate::opalg::Strategy::Leftmost, None))
}
