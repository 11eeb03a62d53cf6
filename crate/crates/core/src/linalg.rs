//! Exact linear algebra over a scalar field on sparse row vectors.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A sparse row vector.
pub(crate) type Row<C, S> = BTreeMap<C, S>;

/// A rank factorization `M = A·B` of the matrix with the given rows: `B`
/// has linearly independent rows in reduced echelon form, and for each
/// original row `r` the coefficients `A[r]` express it in the rows of `B`.
pub(crate) struct RankFactorization<Rk, C, S> {
    /// Rows of `B`, each with its pivot column.
    pub basis: Vec<(C, Row<C, S>)>,
    /// `A` as a map from row keys to coefficients on the basis rows.
    pub coeffs: BTreeMap<Rk, Vec<S>>,
}

impl<Rk, C, S> RankFactorization<Rk, C, S> {
    /// The rank.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

fn axpy<C: Ord + Clone, S: Scalar>(target: &mut Row<C, S>, a: &S, x: &Row<C, S>) {
    for (k, v) in x {
        let s = target.get(k).cloned().unwrap_or_else(S::zero) + a.clone() * v.clone();
        if s.is_zero() {
            target.remove(k);
        } else {
            target.insert(k.clone(), s);
        }
    }
}

/// Computes a rank factorization over a field; entries whose pivots cannot
/// be inverted (non-field scalars) are skipped, which never happens for
/// the shipped fields.
pub(crate) fn rank_factorization<Rk: Ord + Clone, C: Ord + Clone, S: Scalar>(rows: &BTreeMap<Rk, Row<C, S>>) -> RankFactorization<Rk, C, S> {
    let mut basis: Vec<(C, Row<C, S>)> = Vec::new();
    for row in rows.values() {
        let mut r = row.clone();
        for (p, b) in &basis {
            if let Some(v) = r.get(p).cloned() {
                axpy(&mut r, &-v, b);
            }
        }
        let Some((pivot, lead)) = r.iter().next().map(|(k, v)| (k.clone(), v.clone())) else { continue };
        let Some(inv) = lead.inv() else { continue };
        let r: Row<C, S> = r.into_iter().map(|(k, v)| (k, v * inv.clone())).collect();
        for (_, b) in basis.iter_mut() {
            if let Some(v) = b.get(&pivot).cloned() {
                axpy(b, &-v, &r);
            }
        }
        basis.push((pivot, r));
    }
    basis.sort_by(|a, b| a.0.cmp(&b.0));
    let coeffs = rows
        .iter()
        .map(|(k, row)| (k.clone(), basis.iter().map(|(p, _)| row.get(p).cloned().unwrap_or_else(S::zero)).collect()))
        .collect();
    RankFactorization { basis, coeffs }
}

/// Rank of a list of sparse rows.
#[allow(dead_code)]
pub(crate) fn rank<C: Ord + Clone, S: Scalar>(rows: &[Row<C, S>]) -> usize {
    let m: BTreeMap<usize, Row<C, S>> = rows.iter().cloned().enumerate().collect();
    rank_factorization(&m).rank()
}

/// The inverse of a dense row-major `n×n` matrix over a field by
/// Gauss-Jordan elimination; `None` if it is singular.
pub(crate) fn invert_dense<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let mut a: Vec<Vec<S>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv()?;
        for v in a[col].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let s = a[r][k].clone() - f.clone() * a[col][k].clone();
                    a[r][k] = s;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
