//! Canonical linear subspaces of a coordinate space.
//!
//! A subspace stores its basis as the rows of a reduced-row-echelon matrix
//! with no zero rows, which is a canonical representative: two subspaces are
//! equal iff their stored matrices are identical.

use std::fmt;

use crate::mat::Mat;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonicalize the row span of `m`.
    pub fn from_mat(m: &Mat) -> Self {
        let mut r = m.clone();
        let pivots = r.rref_in_place();
        let basis = Mat::from_fn(pivots.len(), m.cols(), |i, j| r.get(i, j).clone());
        Subspace {
            ambient_dim: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn from_span(ambient_dim: usize, rows: &[Vec<Scalar>]) -> Self {
        for r in rows {
            assert_eq!(r.len(), ambient_dim, "span vector length mismatch");
        }
        if rows.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        Subspace::from_mat(&Mat::from_rows(rows.to_vec()))
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::zero(0, ambient_dim),
            pivots: vec![],
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The canonical RREF basis, rows = basis vectors.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.dim()).map(|r| self.basis.row(r))
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after elimination against the basis; zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (c, wc) in w.iter_mut().enumerate() {
                *wc = &*wc - &(&f * self.basis.get(r, c));
            }
        }
        w
    }

    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis_rows().all(|r| self.contains_vec(r))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vec(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Span of the union.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        Subspace::from_mat(&Mat::vstack(&self.basis, &other.basis))
    }

    /// Intersection, computed from the kernel of [A^T | -B^T].
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        let at = self.basis.transpose();
        let bt = other.basis.transpose().scale(&-Scalar::one());
        let sys = Mat::hstack(&at, &bt);
        let ker = crate::linalg::rref_kernel(&sys).1;
        let k1 = self.dim();
        let rows: Vec<Vec<Scalar>> = ker
            .basis_rows()
            .map(|uv| {
                let mut acc = vec![Scalar::zero(); self.ambient_dim];
                for (i, c) in uv[..k1].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (j, a) in self.basis.row(i).iter().enumerate() {
                        acc[j] = &acc[j] + &(c * a);
                    }
                }
                acc
            })
            .collect();
        Subspace::from_span(self.ambient_dim, &rows)
    }

    /// A matrix whose kernel is exactly this subspace: `v` is a member iff
    /// `residue_matrix * v = 0`.
    pub fn residue_matrix(&self) -> Mat {
        let n = self.ambient_dim;
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[j] = Scalar::one();
            cols.push(self.reduce(&e));
        }
        Mat::from_fn(n, n, |r, c| cols[c][r].clone())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {})\n{}",
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(ambient: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::from_span(
            ambient,
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn canonical_equality() {
        // same plane through different spanning sets
        let a = sp(3, &[&[1, 1, 0], &[0, 0, 1]]);
        let b = sp(3, &[&[2, 2, 2], &[0, 0, -5], &[1, 1, 3]]);
        assert_eq!(a, b);
        assert_ne!(a, sp(3, &[&[1, 0, 0], &[0, 0, 1]]));
    }

    #[test]
    fn membership_and_coords() {
        let s = sp(3, &[&[1, 0, 2], &[0, 1, -1]]);
        assert!(s.contains_vec(&[
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(1)
        ]));
        assert!(!s.contains_vec(&[
            Scalar::from_int(0),
            Scalar::from_int(0),
            Scalar::from_int(1)
        ]));
        let c = s
            .coords(&[
                Scalar::from_int(2),
                Scalar::from_int(3),
                Scalar::from_int(1),
            ])
            .unwrap();
        assert_eq!(c, vec![Scalar::from_int(2), Scalar::from_int(3)]);
    }

    #[test]
    fn sum_and_intersection() {
        let a = sp(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = sp(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.intersect(&b), sp(3, &[&[0, 1, 0]]));
        assert_eq!(a.intersect(&Subspace::zero(3)), Subspace::zero(3));
    }

    #[test]
    fn residue_matrix_kernel_is_subspace() {
        let s = sp(3, &[&[1, 0, 2], &[0, 1, -1]]);
        let phi = s.residue_matrix();
        let (_, ker) = crate::linalg::rref_kernel(&phi);
        assert_eq!(ker, s);
    }
}
