//! Matrix Lie algebras over Q(i): structure constants, central/derived
//! series, Cartan subalgebras, root space decompositions, rank, and
//! restricted algebraic hulls.
//!
//! Elements are coordinate vectors in a fixed basis of ambient x ambient
//! matrices; subalgebras are [`Subspace`]s of that coordinate space.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    char_poly, jordan_chevalley, primary_component, restriction, rref_kernel,
    simultaneous_primary_decomposition,
};
use crate::mat::Mat;
use crate::poly::gaussian_roots;
use crate::scalar::Scalar;
use crate::seeded;
use crate::subspace::Subspace;

/// A matrix Lie algebra: ambient size, basis, and the structure-constants
/// tensor `c[i][j][k]` with `[b_i, b_j] = sum_k c[i][j][k] b_k`.
///
/// Immutable after construction; closure, antisymmetry and the Jacobi
/// identity are verified exactly when the algebra is built.
pub struct LieAlgebra {
    ambient: usize,
    basis: Vec<Mat>,
    dim: usize,
    sc: Vec<Vec<Vec<Scalar>>>,
    /// RREF span of the flattened basis, for membership tests.
    span: Subspace,
    /// Flattened basis transposed (ambient^2 x dim), for coordinate solves.
    basis_t: Mat,
}

impl LieAlgebra {
    /// The smallest Lie algebra of matrices containing the span of `gens`:
    /// bracket-closure of the span, iterated until the dimension stabilizes.
    /// The resulting basis is the canonical RREF basis of the closure.
    pub fn from_matrices(ambient: usize, gens: &[Mat]) -> Result<LieAlgebra> {
        check_ambient(ambient, gens)?;
        let n2 = ambient * ambient;
        let rows: Vec<Vec<Scalar>> = gens.iter().map(Mat::flatten).collect();
        let mut span = Subspace::from_span(n2, &rows);
        loop {
            let mats: Vec<Mat> = span
                .basis_rows()
                .map(|r| Mat::unflatten(ambient, r))
                .collect();
            let mut rows: Vec<Vec<Scalar>> = mats.iter().map(Mat::flatten).collect();
            for i in 0..mats.len() {
                for j in (i + 1)..mats.len() {
                    rows.push(Mat::commutator(&mats[i], &mats[j]).flatten());
                }
            }
            let next = Subspace::from_span(n2, &rows);
            if next.dim() == span.dim() {
                break;
            }
            span = next;
        }
        let basis: Vec<Mat> = span
            .basis_rows()
            .map(|r| Mat::unflatten(ambient, r))
            .collect();
        Self::finish(ambient, basis)
    }

    /// Build from an explicit basis, which must be linearly independent and
    /// bracket-closed; the given order is kept.
    pub fn from_basis(ambient: usize, basis: Vec<Mat>) -> Result<LieAlgebra> {
        check_ambient(ambient, &basis)?;
        let n2 = ambient * ambient;
        let rows: Vec<Vec<Scalar>> = basis.iter().map(Mat::flatten).collect();
        let span = Subspace::from_span(n2, &rows);
        if span.dim() != basis.len() {
            return Err(Error::Input("basis matrices are linearly dependent".into()));
        }
        Self::finish(ambient, basis)
    }

    fn finish(ambient: usize, basis: Vec<Mat>) -> Result<LieAlgebra> {
        let n2 = ambient * ambient;
        let dim = basis.len();
        let rows: Vec<Vec<Scalar>> = basis.iter().map(Mat::flatten).collect();
        let span = Subspace::from_span(n2, &rows);
        let basis_t = if dim == 0 {
            Mat::zero(n2, 0)
        } else {
            Mat::from_rows(rows).transpose()
        };
        let mut alg = LieAlgebra {
            ambient,
            basis,
            dim,
            sc: vec![vec![vec![Scalar::zero(); dim]; dim]; dim],
            span,
            basis_t,
        };
        for i in 0..dim {
            for j in (i + 1)..dim {
                let br = Mat::commutator(&alg.basis[i], &alg.basis[j]);
                let coords = alg.coords_of_mat(&br).ok_or_else(|| {
                    Error::NotSubalgebra(format!("[b_{i}, b_{j}] is outside the span of the basis"))
                })?;
                for (k, c) in coords.iter().enumerate() {
                    alg.sc[i][j][k] = c.clone();
                    alg.sc[j][i][k] = -c;
                }
            }
        }
        alg.verify_jacobi()?;
        Ok(alg)
    }

    fn verify_jacobi(&self) -> Result<()> {
        let d = self.dim;
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); d];
            v[i] = Scalar::one();
            v
        };
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let a = self.bracket(&self.bracket(&unit(i), &unit(j)), &unit(k));
                    let b = self.bracket(&self.bracket(&unit(j), &unit(k)), &unit(i));
                    let c = self.bracket(&self.bracket(&unit(k), &unit(i)), &unit(j));
                    let ok = (0..d).all(|t| (&(&a[t] + &b[t]) + &c[t]).is_zero());
                    if !ok {
                        return Err(Error::Inconsistency(format!(
                            "Jacobi identity fails on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    /// Coordinates of an ambient matrix in the basis, if it lies in the span.
    pub fn coords_of_mat(&self, m: &Mat) -> Option<Vec<Scalar>> {
        if m.rows() != self.ambient || m.cols() != self.ambient {
            return None;
        }
        if !self.span.contains_vec(&m.flatten()) {
            return None;
        }
        let b = Mat::from_rows(vec![m.flatten()]).transpose();
        let x = crate::linalg::solve(&self.basis_t, &b)?;
        Some(x.col_vec(0))
    }

    /// The ambient matrix with the given coordinates.
    pub fn mat_of_coords(&self, x: &[Scalar]) -> Mat {
        assert_eq!(x.len(), self.dim, "coordinate length mismatch");
        let mut acc = Mat::zero(self.ambient, self.ambient);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &self.basis[i].scale(c);
            }
        }
        acc
    }

    /// `[x, y]` in coordinates, from the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for (k, c) in self.sc[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&f * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(x): y -> [x, y]` in the basis (column convention).
    pub fn ad(&self, x: &[Scalar]) -> Mat {
        assert_eq!(x.len(), self.dim);
        Mat::from_fn(self.dim, self.dim, |k, j| {
            let mut acc = Scalar::zero();
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    acc = &acc + &(xi * &self.sc[i][j][k]);
                }
            }
            acc
        })
    }

    /// Span of all brackets `[a, b]` with `a`, `b` ranging over bases of the
    /// two subspaces.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for x in a.basis_rows() {
            for y in b.basis_rows() {
                rows.push(self.bracket(x, y));
            }
        }
        Subspace::from_span(self.dim, &rows)
    }

    /// `C^0 = g, C^{m+1} = [g, C^m]`, up to stabilization.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim);
        let mut seq = vec![full.clone()];
        loop {
            let prev = seq.last().unwrap();
            let next = self.bracket_span(&full, prev);
            if &next == prev {
                break;
            }
            let done = next.is_zero();
            seq.push(next);
            if done {
                break;
            }
        }
        seq
    }

    /// `D^0 = g, D^{m+1} = [D^m, D^m]`, up to stabilization.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut seq = vec![Subspace::full(self.dim)];
        loop {
            let prev = seq.last().unwrap();
            let next = self.bracket_span(prev, prev);
            if &next == prev {
                break;
            }
            let done = next.is_zero();
            seq.push(next);
            if done {
                break;
            }
        }
        seq
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    fn check_coord_space(&self, h: &Subspace) -> Result<()> {
        if h.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "subspace lives in dimension {}, algebra has dimension {}",
                h.ambient_dim(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Is `h` closed under the bracket?
    pub fn is_subalgebra(&self, h: &Subspace) -> bool {
        if h.ambient_dim() != self.dim {
            return false;
        }
        let rows: Vec<&[Scalar]> = h.basis_rows().collect();
        for (i, x) in rows.iter().enumerate() {
            for y in &rows[i + 1..] {
                if !h.contains_vec(&self.bracket(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// Is the subalgebra `h` nilpotent as an abstract Lie algebra?
    /// Assumes bracket closure.
    pub fn subalgebra_is_nilpotent(&self, h: &Subspace) -> bool {
        let mut current = h.clone();
        loop {
            let next = self.bracket_span(h, &current);
            if next.is_zero() {
                return true;
            }
            if next == current {
                return false;
            }
            current = next;
        }
    }

    /// `z(g) = {x : [x, g] = 0}`.
    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim))
    }

    /// `n_g(h) = {x : [x, h] <= h}`.
    pub fn normalizer(&self, h: &Subspace) -> Subspace {
        assert_eq!(h.ambient_dim(), self.dim, "subspace dimension mismatch");
        if h.dim() == 0 {
            return Subspace::full(self.dim);
        }
        let phi = h.residue_matrix();
        let mut sys: Option<Mat> = None;
        for z in h.basis_rows() {
            let cond = phi.matmul(&self.bracket_with_matrix(z));
            sys = Some(match sys {
                Some(s) => Mat::vstack(&s, &cond),
                None => cond,
            });
        }
        rref_kernel(&sys.unwrap()).1
    }

    /// `z_g(h) = {x : [x, h] = 0}`.
    pub fn centralizer(&self, h: &Subspace) -> Subspace {
        assert_eq!(h.ambient_dim(), self.dim, "subspace dimension mismatch");
        if h.dim() == 0 {
            return Subspace::full(self.dim);
        }
        let mut sys: Option<Mat> = None;
        for z in h.basis_rows() {
            let m = self.bracket_with_matrix(z);
            sys = Some(match sys {
                Some(s) => Mat::vstack(&s, &m),
                None => m,
            });
        }
        rref_kernel(&sys.unwrap()).1
    }

    /// Matrix of `x -> [x, z]` for fixed `z`, in the basis.
    fn bracket_with_matrix(&self, z: &[Scalar]) -> Mat {
        Mat::from_fn(self.dim, self.dim, |k, i| {
            let mut acc = Scalar::zero();
            for (j, zj) in z.iter().enumerate() {
                if !zj.is_zero() {
                    acc = &acc + &(zj * &self.sc[i][j][k]);
                }
            }
            acc
        })
    }

    /// The joint 0-primary component `g^0(h)`: intersection over an h-basis
    /// of the generalized kernels of the ad maps.
    ///
    /// Preconditions: `h` is a bracket-closed nilpotent subalgebra. The
    /// result is certified a posteriori: `ad(Z)` restricted to it must be
    /// nilpotent for every basis `Z` and one seeded combination.
    pub fn g0_of(&self, h: &Subspace) -> Result<Subspace> {
        self.check_coord_space(h)?;
        if !self.is_subalgebra(h) {
            return Err(Error::NotSubalgebra(
                "argument of g^0 is not bracket-closed".into(),
            ));
        }
        if !self.subalgebra_is_nilpotent(h) {
            return Err(Error::NotNilpotent);
        }
        let mut g0 = Subspace::full(self.dim);
        for z in h.basis_rows() {
            let comp = primary_component(&self.ad(z), &Scalar::zero())?;
            g0 = g0.intersect(&comp);
        }
        let certify = |z: &[Scalar]| -> Result<()> {
            let r = restriction(&self.ad(z), &g0)?;
            if !r.pow(g0.dim().max(1)).is_zero() {
                return Err(Error::Inconsistency(
                    "ad is not nilpotent on the computed g^0".into(),
                ));
            }
            Ok(())
        };
        for z in h.basis_rows() {
            certify(z)?;
        }
        if h.dim() > 0 {
            let mut rng = seeded::rng(0, seeded::SALT_G0_CERTIFICATE);
            let mut combo = vec![Scalar::zero(); self.dim];
            for z in h.basis_rows() {
                let c = Scalar::from_int(rng.gen_range(1..=7));
                for (t, zt) in z.iter().enumerate() {
                    combo[t] = &combo[t] + &(&c * zt);
                }
            }
            certify(&combo)?;
        }
        Ok(g0)
    }

    /// Is `h` a Cartan subalgebra: a bracket-closed nilpotent subalgebra
    /// with `g^0(h) = h`?
    pub fn is_cartan(&self, h: &Subspace) -> bool {
        h.ambient_dim() == self.dim
            && self.is_subalgebra(h)
            && self.subalgebra_is_nilpotent(h)
            && self.g0_of(h).map(|g0| &g0 == h).unwrap_or(false)
    }

    /// Find a Cartan subalgebra by certified generic-element search: sample
    /// integer coordinate vectors in a growing box, keep candidates whose ad
    /// has a split characteristic polynomial, take the Fitting null
    /// component of minimal dimension, and accept once [`Self::is_cartan`]
    /// certifies. Deterministic given the seed.
    pub fn cartan_subalgebra(&self, seed: u64) -> Result<Subspace> {
        if self.dim == 0 {
            return Ok(Subspace::zero(0));
        }
        let mut rng = seeded::rng(seed, seeded::SALT_CARTAN_SEARCH);
        // initial box plus 8 doublings; the bound is arbitrary but fixed
        const ROUNDS: usize = 9;
        const PER_ROUND: usize = 24;
        let mut best: Option<(usize, Subspace)> = None;
        let mut radius: i64 = 1;
        for _ in 0..ROUNDS {
            let mut candidates: Vec<(usize, Subspace)> = Vec::new();
            for _ in 0..PER_ROUND {
                let x: Vec<Scalar> = (0..self.dim)
                    .map(|_| Scalar::from_int(rng.gen_range(-radius..=radius)))
                    .collect();
                if x.iter().all(Scalar::is_zero) {
                    continue;
                }
                let adx = self.ad(&x);
                match gaussian_roots(&char_poly(&adx)?) {
                    Ok(_) => {}
                    Err(Error::Split(_)) => continue,
                    Err(e) => return Err(e),
                }
                let h = primary_component(&adx, &Scalar::zero())?;
                candidates.push((h.dim(), h));
            }
            candidates.sort_by_key(|(d, _)| *d);
            candidates.dedup_by(|a, b| a.1 == b.1);
            for (d, h) in candidates {
                if self.is_cartan(&h) {
                    return Ok(h);
                }
                if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                    best = Some((d, h));
                }
            }
            radius *= 2;
        }
        let (best_dim, best_candidate) = best
            .map(|(d, h)| {
                let rows: Vec<String> = h
                    .basis_rows()
                    .map(|r| {
                        let parts: Vec<String> = r.iter().map(Scalar::to_string).collect();
                        format!("({})", parts.join(", "))
                    })
                    .collect();
                (d, rows.join(" "))
            })
            .unwrap_or((0, "none".into()));
        Err(Error::CartanSearchFailed {
            attempts: ROUNDS * PER_ROUND,
            best_dim,
            best_candidate,
        })
    }

    /// Dimension of a Cartan subalgebra.
    pub fn rank(&self, seed: u64) -> Result<usize> {
        Ok(self.cartan_subalgebra(seed)?.dim())
    }

    /// Root space decomposition with respect to a nilpotent subalgebra `h`:
    /// the joint primary decomposition of the ad maps of an h-basis, each
    /// space labeled by its eigenvalue tuple. The zero tuple's space equals
    /// `g^0(h)`.
    pub fn roots(&self, h: &Subspace) -> Result<RootDatum> {
        self.check_coord_space(h)?;
        if !self.is_subalgebra(h) {
            return Err(Error::NotSubalgebra(
                "root decomposition needs a bracket-closed h".into(),
            ));
        }
        if !self.subalgebra_is_nilpotent(h) {
            return Err(Error::NotNilpotent);
        }
        let h_basis = h.basis().clone();
        if h.dim() == 0 {
            return Ok(RootDatum {
                h_basis,
                roots: vec![Root {
                    values: vec![],
                    space: Subspace::full(self.dim),
                }],
            });
        }
        let ads: Vec<Mat> = h.basis_rows().map(|z| self.ad(z)).collect();
        let pieces = simultaneous_primary_decomposition(&ads).map_err(|e| match e {
            Error::Split(sf) => {
                let ctx = format!("root decomposition, {}", sf.context);
                Error::Split(sf.with_context(ctx))
            }
            other => other,
        })?;
        let roots: Vec<Root> = pieces
            .into_iter()
            .map(|(values, space)| Root { values, space })
            .collect();
        let zero = vec![Scalar::zero(); h.dim()];
        let zero_space = roots
            .iter()
            .find(|r| r.values == zero)
            .map(|r| r.space.clone())
            .ok_or_else(|| {
                Error::Inconsistency("zero tuple missing from root decomposition".into())
            })?;
        if zero_space != self.g0_of(h)? {
            return Err(Error::Inconsistency(
                "zero root space differs from g^0(h)".into(),
            ));
        }
        Ok(RootDatum { h_basis, roots })
    }
}

fn check_ambient(ambient: usize, mats: &[Mat]) -> Result<()> {
    for (i, m) in mats.iter().enumerate() {
        if m.rows() != ambient || m.cols() != ambient {
            return Err(Error::DimensionMismatch(format!(
                "generator #{i} is {}x{}, expected {ambient}x{ambient}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(())
}

/// One root: its value tuple on the h-basis and its generalized eigenspace.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub values: Vec<Scalar>,
    pub space: Subspace,
}

/// Root space decomposition of an algebra with respect to a nilpotent
/// subalgebra; roots are sorted by value tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDatum {
    h_basis: Mat,
    roots: Vec<Root>,
}

impl RootDatum {
    /// Basis of `h` (rows, in g-coordinates) that the value tuples refer to.
    pub fn h_basis(&self) -> &Mat {
        &self.h_basis
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn find(&self, values: &[Scalar]) -> Option<usize> {
        self.roots.iter().position(|r| r.values == values)
    }

    /// Root-space dimensions, in root order.
    pub fn dims(&self) -> Vec<usize> {
        self.roots.iter().map(|r| r.space.dim()).collect()
    }
}

/// The restricted algebraic hull of a single matrix: the smallest algebraic
/// Lie subalgebra of gl(ambient) containing `x`.
///
/// With `x = s + n` the Jordan-Chevalley decomposition, the hull is
/// `span(n) + a(span s)`, where `a(span s)` consists of the replicas of `s`:
/// operators scalar on each eigenspace of `s` whose eigenvalue tuples
/// satisfy every rational linear relation (real and imaginary parts
/// separately) satisfied by the eigenvalues of `s`.
pub fn algebraic_hull_single(ambient: usize, x: &Mat) -> Result<Subspace> {
    if x.rows() != ambient || x.cols() != ambient {
        return Err(Error::DimensionMismatch(format!(
            "hull generator is {}x{}, expected {ambient}x{ambient}",
            x.rows(),
            x.cols()
        )));
    }
    let n2 = ambient * ambient;
    let chi = char_poly(x)?;
    let eigs: Vec<Scalar> = gaussian_roots(&chi)
        .map_err(|e| match e {
            Error::Split(sf) => Error::Split(sf.with_context("eigenvalues of the hull generator")),
            other => other,
        })?
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    let (s_mat, n_mat) = jordan_chevalley(x)?;
    let m = eigs.len();
    let mut projections = Vec::with_capacity(m);
    for j in 0..m {
        let mut p = Mat::identity(ambient);
        for (k, ek) in eigs.iter().enumerate() {
            if k == j {
                continue;
            }
            let factor = &s_mat - &Mat::identity(ambient).scale(ek);
            let denom = (&eigs[j] - ek).inv()?;
            p = p.matmul(&factor).scale(&denom);
        }
        projections.push(p);
    }
    // rational relation lattice of the eigenvalue tuple
    let rel_sys = Mat::from_fn(2, m, |r, c| {
        if r == 0 {
            Scalar::real(eigs[c].re().clone())
        } else {
            Scalar::real(eigs[c].im().clone())
        }
    });
    let (_, relations) = rref_kernel(&rel_sys);
    let value_space = if relations.is_zero() {
        Subspace::full(m)
    } else {
        rref_kernel(relations.basis()).1
    };
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    if !n_mat.is_zero() {
        rows.push(n_mat.flatten());
    }
    for y in value_space.basis_rows() {
        let mut acc = Mat::zero(ambient, ambient);
        for (j, p) in projections.iter().enumerate() {
            if !y[j].is_zero() {
                acc = &acc + &p.scale(&y[j]);
            }
        }
        rows.push(acc.flatten());
    }
    Ok(Subspace::from_span(n2, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize, j: usize) -> Mat {
        Mat::from_fn(n, n, |r, c| {
            if (r, c) == (i, j) {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    fn sl2() -> LieAlgebra {
        let h = Mat::from_ints(&[&[1, 0], &[0, -1]]);
        LieAlgebra::from_basis(2, vec![h, e(2, 0, 1), e(2, 1, 0)]).unwrap()
    }

    fn b2() -> LieAlgebra {
        LieAlgebra::from_basis(2, vec![e(2, 0, 0), e(2, 0, 1), e(2, 1, 1)]).unwrap()
    }

    fn heis3() -> LieAlgebra {
        LieAlgebra::from_basis(3, vec![e(3, 0, 1), e(3, 1, 2), e(3, 0, 2)]).unwrap()
    }

    fn gl2() -> LieAlgebra {
        LieAlgebra::from_basis(2, vec![e(2, 0, 0), e(2, 0, 1), e(2, 1, 0), e(2, 1, 1)]).unwrap()
    }

    fn coords(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn span(alg: &LieAlgebra, rows: &[&[i64]]) -> Subspace {
        Subspace::from_span(
            alg.dim(),
            &rows.iter().map(|r| coords(r)).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn closure_from_generators() {
        // {E, F} closes to sl2 by adding H = [E, F]
        let alg = LieAlgebra::from_matrices(2, &[e(2, 0, 1), e(2, 1, 0)]).unwrap();
        assert_eq!(alg.dim(), 3);

        // a single diagonal idempotent spans a 1-dim abelian algebra
        let alg = LieAlgebra::from_matrices(2, &[e(2, 0, 0)]).unwrap();
        assert_eq!(alg.dim(), 1);

        // {e12, e23} closes to the Heisenberg algebra with [X, Y] = e13
        let alg = LieAlgebra::from_matrices(3, &[e(3, 0, 1), e(3, 1, 2)]).unwrap();
        assert_eq!(alg.dim(), 3);
        assert!(alg.coords_of_mat(&e(3, 0, 2)).is_some());
    }

    #[test]
    fn bracket_against_matrix_commutator() {
        let alg = sl2();
        let h = coords(&[1, 0, 0]);
        let e_ = coords(&[0, 1, 0]);
        assert_eq!(alg.bracket(&h, &e_), coords(&[0, 2, 0])); // [H, E] = 2E
        assert!(alg.bracket(&h, &h).iter().all(Scalar::is_zero));
        // ad(x) y = bracket(x, y), and both match the ambient commutator
        let x = coords(&[1, 2, -1]);
        let y = coords(&[0, 3, 5]);
        let via_ad = alg.ad(&x).apply(&y);
        let via_sc = alg.bracket(&x, &y);
        assert_eq!(via_ad, via_sc);
        let mx = alg.mat_of_coords(&x);
        let my = alg.mat_of_coords(&y);
        let via_mats = alg.coords_of_mat(&Mat::commutator(&mx, &my)).unwrap();
        assert_eq!(via_sc, via_mats);
    }

    #[test]
    fn heisenberg_ad_has_rank_one_and_square_zero() {
        let alg = heis3();
        let adx = alg.ad(&coords(&[1, 0, 0]));
        assert!(adx.matmul(&adx).is_zero());
        let (_, ker) = rref_kernel(&adx);
        assert_eq!(ker.dim(), 2); // rank 1
    }

    #[test]
    fn series_examples() {
        let h3 = heis3();
        let lcs = h3.lower_central_series();
        assert_eq!(lcs.len(), 3);
        assert_eq!(lcs[1], span(&h3, &[&[0, 0, 1]])); // span{Z}
        assert!(lcs[2].is_zero());

        let b = b2();
        let ds = b.derived_series();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds[1], span(&b, &[&[0, 1, 0]])); // span{e12}
        assert!(ds[2].is_zero());

        let s = sl2();
        assert_eq!(s.lower_central_series(), vec![Subspace::full(3)]);
    }

    #[test]
    fn nilpotency_and_solvability() {
        assert!(heis3().is_nilpotent());
        assert!(heis3().is_solvable());
        assert!(!b2().is_nilpotent());
        assert!(b2().is_solvable());
        assert!(!sl2().is_nilpotent());
        assert!(!sl2().is_solvable());
    }

    #[test]
    fn center_normalizer_centralizer() {
        let s = sl2();
        let span_h = span(&s, &[&[1, 0, 0]]);
        let span_e = span(&s, &[&[0, 1, 0]]);
        assert_eq!(s.normalizer(&span_h), span_h);
        assert_eq!(s.centralizer(&span_h), span_h);
        assert_eq!(s.normalizer(&span_e), span(&s, &[&[1, 0, 0], &[0, 1, 0]]));
        assert!(s.center().is_zero());

        let g = gl2();
        // center of gl2 is the scalar matrices: id = e11 + e22
        assert_eq!(g.center(), span(&g, &[&[1, 0, 0, 1]]));
    }

    #[test]
    fn g0_examples() {
        let s = sl2();
        let span_h = span(&s, &[&[1, 0, 0]]);
        assert_eq!(s.g0_of(&span_h).unwrap(), span_h);

        let span_e = span(&s, &[&[0, 1, 0]]);
        assert_eq!(s.g0_of(&span_e).unwrap(), Subspace::full(3));

        let b = b2();
        let diag = span(&b, &[&[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(b.g0_of(&diag).unwrap(), diag);

        // non-nilpotent h is rejected
        assert!(matches!(
            b.g0_of(&Subspace::full(3)),
            Err(Error::NotNilpotent)
        ));
    }

    #[test]
    fn cartan_predicates() {
        let s = sl2();
        assert!(s.is_cartan(&span(&s, &[&[1, 0, 0]]))); // span H
        assert!(!s.is_cartan(&span(&s, &[&[0, 1, 0]]))); // span E: g^0 = sl2
                                                         // span J with J = E - F: compact Cartan, ad J has eigenvalues 0, +-2i
        assert!(s.is_cartan(&span(&s, &[&[0, 1, -1]])));
    }

    #[test]
    fn cartan_search_and_rank() {
        let s = sl2();
        let h = s.cartan_subalgebra(0).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(s.is_cartan(&h));
        assert_eq!(s.rank(0).unwrap(), 1);

        let h3 = heis3();
        assert_eq!(h3.cartan_subalgebra(0).unwrap(), Subspace::full(3));
        assert_eq!(h3.rank(0).unwrap(), 3);

        assert_eq!(gl2().rank(0).unwrap(), 2);
        assert_eq!(b2().rank(0).unwrap(), 2);
    }

    /// Brute-force rank oracle: minimize dim g^0(ad x) over an exhaustive
    /// small integer grid.
    fn rank_oracle(alg: &LieAlgebra, radius: i64) -> usize {
        let dim = alg.dim();
        let mut best = dim;
        let width = (2 * radius + 1) as usize;
        for idx in 0..width.pow(dim as u32) {
            let mut rem = idx;
            let x: Vec<Scalar> = (0..dim)
                .map(|_| {
                    let v = (rem % width) as i64 - radius;
                    rem /= width;
                    Scalar::from_int(v)
                })
                .collect();
            if x.iter().all(Scalar::is_zero) {
                continue;
            }
            let g0 = primary_component(&alg.ad(&x), &Scalar::zero()).unwrap();
            best = best.min(g0.dim());
        }
        best
    }

    #[test]
    fn rank_matches_brute_force_oracle() {
        assert_eq!(rank_oracle(&sl2(), 2), 1);
        assert_eq!(sl2().rank(7).unwrap(), 1);
        assert_eq!(rank_oracle(&gl2(), 1), 2);
        assert_eq!(gl2().rank(7).unwrap(), 2);
    }

    #[test]
    fn equal_dimension_across_seeds() {
        for alg in [sl2(), gl2(), b2(), heis3()] {
            let dims: Vec<usize> = (0..10).map(|s| alg.rank(s).unwrap()).collect();
            assert!(dims.windows(2).all(|w| w[0] == w[1]), "dims {dims:?}");
        }
    }

    #[test]
    fn roots_of_sl2_split_cartan() {
        let s = sl2();
        let datum = s.roots(&span(&s, &[&[1, 0, 0]])).unwrap();
        let labels: Vec<Vec<Scalar>> = datum.roots().iter().map(|r| r.values.clone()).collect();
        assert_eq!(labels, vec![coords(&[-2]), coords(&[0]), coords(&[2])]);
        assert_eq!(datum.dims(), vec![1, 1, 1]);
        // the 2-root space is span E
        let idx = datum.find(&coords(&[2])).unwrap();
        assert_eq!(datum.roots()[idx].space, span(&s, &[&[0, 1, 0]]));
    }

    #[test]
    fn roots_of_sl2_compact_cartan() {
        let s = sl2();
        let datum = s.roots(&span(&s, &[&[0, 1, -1]])).unwrap();
        let two_i = vec![&Scalar::from_int(2) * &Scalar::i()];
        let minus_two_i = vec![&Scalar::from_int(-2) * &Scalar::i()];
        assert!(datum.find(&two_i).is_some());
        assert!(datum.find(&minus_two_i).is_some());
        assert_eq!(datum.dims().iter().sum::<usize>(), 3);
    }

    #[test]
    fn roots_of_b2_diagonal() {
        let b = b2();
        let diag = span(&b, &[&[1, 0, 0], &[0, 0, 1]]);
        let datum = b.roots(&diag).unwrap();
        assert_eq!(datum.roots().len(), 2);
        let zero = datum.find(&coords(&[0, 0])).unwrap();
        assert_eq!(datum.roots()[zero].space.dim(), 2);
        let alpha = datum.find(&coords(&[1, -1])).unwrap();
        assert_eq!(datum.roots()[alpha].space, span(&b, &[&[0, 1, 0]]));
    }

    #[test]
    fn root_linearity() {
        // the tuple evaluated on any Q(i)-combination of the h-basis matches
        // the eigenvalue of the combined ad on each root space
        let s = sl2();
        let h = span(&s, &[&[1, 0, 0]]);
        let c = Scalar::from_parts(5, -3);
        check_linearity(&s, &h, &[c]);

        let b = b2();
        let diag = span(&b, &[&[1, 0, 0], &[0, 0, 1]]);
        check_linearity(&b, &diag, &[Scalar::from_parts(2, 1), Scalar::from_int(3)]);
    }

    fn check_linearity(alg: &LieAlgebra, h: &Subspace, combo: &[Scalar]) {
        let datum = alg.roots(h).unwrap();
        let mut z = vec![Scalar::zero(); alg.dim()];
        for (c, row) in combo.iter().zip(h.basis_rows()) {
            for (t, rt) in row.iter().enumerate() {
                z[t] = &z[t] + &(c * rt);
            }
        }
        let adz = alg.ad(&z);
        for root in datum.roots() {
            let lam = combo
                .iter()
                .zip(&root.values)
                .fold(Scalar::zero(), |acc, (c, v)| &acc + &(c * v));
            let shifted = &adz - &Mat::identity(alg.dim()).scale(&lam);
            let r = restriction(&shifted, &root.space).unwrap();
            assert!(r.pow(root.space.dim()).is_zero());
        }
    }

    #[test]
    fn complexification_consistency() {
        // for real h and real root tuples, the root space is the
        // complexification of its real solution space
        let cases = [
            (sl2(), span(&sl2(), &[&[1, 0, 0]])),
            (b2(), span(&b2(), &[&[1, 0, 0], &[0, 0, 1]])),
        ];
        for (alg, h) in &cases {
            let datum = alg.roots(h).unwrap();
            for root in datum.roots() {
                assert!(root.values.iter().all(Scalar::is_real));
                let phi = root.space.residue_matrix();
                let re = Mat::from_fn(phi.rows(), phi.cols(), |r, c| {
                    Scalar::real(phi.get(r, c).re().clone())
                });
                let im = Mat::from_fn(phi.rows(), phi.cols(), |r, c| {
                    Scalar::real(phi.get(r, c).im().clone())
                });
                let real_points = rref_kernel(&Mat::vstack(&re, &im)).1;
                assert_eq!(&real_points, &root.space);
                assert!(real_points.basis().is_real());
            }
        }
    }

    #[test]
    fn hull_examples() {
        // nilpotent line: a(n) = n
        let hull = algebraic_hull_single(2, &e(2, 0, 1)).unwrap();
        assert_eq!(hull.dim(), 1);
        assert!(hull.contains_vec(&e(2, 0, 1).flatten()));

        // diag(1, 2): the relation -2*1 + 1*2 = 0 pins the hull to a line
        let d = Mat::from_ints(&[&[1, 0], &[0, 2]]);
        let hull = algebraic_hull_single(2, &d).unwrap();
        assert_eq!(hull.dim(), 1);
        assert!(hull.contains_vec(&d.flatten()));

        // unipotent [[1,1],[0,1]]: S = id, N = e12, hull = span{id, e12}
        let u = Mat::from_ints(&[&[1, 1], &[0, 1]]);
        let hull = algebraic_hull_single(2, &u).unwrap();
        assert_eq!(hull.dim(), 2);
        assert!(hull.contains_vec(&Mat::identity(2).flatten()));
        assert!(hull.contains_vec(&e(2, 0, 1).flatten()));

        // rotation generator: eigenvalues +-i satisfy i + (-i) = 0, hull
        // stays the line
        let w = Mat::from_ints(&[&[0, 1], &[-1, 0]]);
        let hull = algebraic_hull_single(2, &w).unwrap();
        assert_eq!(hull.dim(), 1);
        assert!(hull.contains_vec(&w.flatten()));

        // eigenvalues (1, 0): only relation 0*1 + m*0 = 0 with m free forces
        // the second component to vanish... the relation space is spanned by
        // (0, 1), so y_2 = 0 and the hull is the e11 line
        let d = Mat::from_ints(&[&[1, 0], &[0, 0]]);
        let hull = algebraic_hull_single(2, &d).unwrap();
        assert_eq!(hull.dim(), 1);
        assert!(hull.contains_vec(&e(2, 0, 0).flatten()));

        let split = algebraic_hull_single(2, &Mat::from_ints(&[&[0, 2], &[1, 0]]));
        assert!(matches!(split, Err(Error::Split(_))));
    }

    #[test]
    fn hull_rank_formula() {
        // rk g1 = rk g + dim g1 - dim g on the unipotent example
        let u = Mat::from_ints(&[&[1, 1], &[0, 1]]);
        let g = LieAlgebra::from_matrices(2, std::slice::from_ref(&u)).unwrap();
        assert_eq!((g.dim(), g.rank(0).unwrap()), (1, 1));
        let hull = algebraic_hull_single(2, &u).unwrap();
        let g1 =
            LieAlgebra::from_basis(2, hull.basis_rows().map(|r| Mat::unflatten(2, r)).collect())
                .unwrap();
        assert_eq!((g1.dim(), g1.rank(0).unwrap()), (2, 2));
        assert_eq!(g1.rank(0).unwrap(), g.rank(0).unwrap() + g1.dim() - g.dim());
    }

    #[test]
    fn g0_is_self_normalizing() {
        let s = sl2();
        for h in [
            span(&s, &[&[1, 0, 0]]),
            span(&s, &[&[0, 1, 0]]),
            span(&s, &[&[0, 1, -1]]),
        ] {
            let g0 = s.g0_of(&h).unwrap();
            assert_eq!(s.normalizer(&g0), g0);
        }
        let g = gl2();
        let diag = span(&g, &[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
        let g0 = g.g0_of(&diag).unwrap();
        assert_eq!(g.normalizer(&g0), g0);
    }

    #[test]
    fn rotation_algebra_has_compact_cartans() {
        // so(3): basis of antisymmetric matrices, [L1, L2] = L3 cyclically;
        // every Cartan is a line and the nonzero roots are purely imaginary
        let l1 = Mat::from_ints(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]);
        let l2 = Mat::from_ints(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]);
        let l3 = Mat::from_ints(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let so3 = LieAlgebra::from_basis(3, vec![l1, l2, l3]).unwrap();
        assert!(!so3.is_solvable());
        assert_eq!(so3.rank(0).unwrap(), 1);
        let h = so3.cartan_subalgebra(0).unwrap();
        let datum = so3.roots(&h).unwrap();
        assert_eq!(datum.dims(), vec![1, 1, 1]);
        let mut nonzero: Vec<&Scalar> = datum
            .roots()
            .iter()
            .filter(|r| !r.values[0].is_zero())
            .map(|r| &r.values[0])
            .collect();
        nonzero.sort();
        assert_eq!(nonzero.len(), 2);
        for v in nonzero {
            assert!(!v.is_real(), "compact root {v} should be imaginary");
            assert_eq!(v.re(), Scalar::zero().re());
        }
    }

    #[test]
    fn from_basis_rejects_bad_input() {
        // dependent basis
        let r = LieAlgebra::from_basis(2, vec![e(2, 0, 1), e(2, 0, 1)]);
        assert!(matches!(r, Err(Error::Input(_))));
        // not closed: span{E, F} alone misses H
        let r = LieAlgebra::from_basis(2, vec![e(2, 0, 1), e(2, 1, 0)]);
        assert!(matches!(r, Err(Error::NotSubalgebra(_))));
    }
}
