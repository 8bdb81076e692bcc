//! Group-side computations: the adjoint representation, shifted
//! characteristic coefficients a_j, rank and regularity, and membership in
//! N_G(h), Z_G(h) and the C-Cartan C(h).
//!
//! A group is presented by its Lie algebra plus an exact membership hint and
//! optional samplers; general matrix-group membership is undecidable here, so
//! elements failing the hint or the stabilization check are rejected rather
//! than trusted.

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, RootDatum};
use crate::linalg::{char_poly, inverse, jordan_chevalley, primary_component, restriction};
use crate::mat::Mat;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::seeded;
use crate::subspace::Subspace;

/// Exact predicates a candidate element must pass before the stabilization
/// check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MembershipHint {
    None,
    /// det = 1
    Det1,
    /// upper triangular with unit diagonal
    UnipotentUpper,
    /// diagonal and invertible
    Diagonal,
    /// upper triangular and invertible
    InvertibleUpper,
}

impl MembershipHint {
    pub fn as_str(&self) -> &'static str {
        match self {
            MembershipHint::None => "none",
            MembershipHint::Det1 => "det1",
            MembershipHint::UnipotentUpper => "unipotent-upper",
            MembershipHint::Diagonal => "diagonal",
            MembershipHint::InvertibleUpper => "invertible-upper",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "none" => MembershipHint::None,
            "det1" => MembershipHint::Det1,
            "unipotent-upper" => MembershipHint::UnipotentUpper,
            "diagonal" => MembershipHint::Diagonal,
            "invertible-upper" => MembershipHint::InvertibleUpper,
            other => return Err(Error::Input(format!("unknown membership hint {other:?}"))),
        })
    }

    fn passes(&self, g: &Mat, det_nonzero: bool) -> bool {
        let n = g.rows();
        match self {
            MembershipHint::None => det_nonzero,
            MembershipHint::Det1 => determinant_is_one(g),
            MembershipHint::UnipotentUpper => (0..n).all(|r| {
                (0..n).all(|c| {
                    if r > c {
                        g.get(r, c).is_zero()
                    } else if r == c {
                        g.get(r, c).is_one()
                    } else {
                        true
                    }
                })
            }),
            MembershipHint::Diagonal => {
                det_nonzero && (0..n).all(|r| (0..n).all(|c| r == c || g.get(r, c).is_zero()))
            }
            MembershipHint::InvertibleUpper => {
                det_nonzero && (0..n).all(|r| (0..r).all(|c| g.get(r, c).is_zero()))
            }
        }
    }
}

fn determinant_is_one(g: &Mat) -> bool {
    // det via the constant coefficient of the characteristic polynomial:
    // det(M) = (-1)^n chi(0)
    let chi = match char_poly(g) {
        Ok(c) => c,
        Err(_) => return false,
    };
    let c0 = chi.coeff(0);
    let sign = if g.rows().is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    };
    (&sign * &c0).is_one()
}

/// Why an element was rejected by [`GroupContext::validate`].
#[derive(Clone, Debug, PartialEq)]
pub enum Rejection {
    WrongSize {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    NotInvertible,
    HintFailed(&'static str),
    NotStabilizing {
        basis_index: usize,
    },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::WrongSize {
                rows,
                cols,
                expected,
            } => write!(
                f,
                "element is {rows}x{cols}, expected {expected}x{expected}"
            ),
            Rejection::NotInvertible => write!(f, "element is not invertible"),
            Rejection::HintFailed(hint) => write!(f, "membership hint {hint:?} failed"),
            Rejection::NotStabilizing { basis_index } => write!(
                f,
                "conjugation sends basis element #{basis_index} outside the algebra"
            ),
        }
    }
}

impl From<Rejection> for Error {
    fn from(r: Rejection) -> Error {
        Error::Rejected(r.to_string())
    }
}

/// The shifted characteristic coefficients: `det((T+1)id - Ad(g))
/// = a_0 + a_1 T + ... + T^n`, monic with `a[n] = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ACoeffs {
    a: Vec<Scalar>,
}

impl ACoeffs {
    pub fn coeffs(&self) -> &[Scalar] {
        &self.a
    }

    /// `r(g)`: least index with a nonzero coefficient.
    pub fn r_value(&self) -> usize {
        self.a
            .iter()
            .position(|c| !c.is_zero())
            .expect("monic, so some coefficient is nonzero")
    }
}

/// Seeded exact samplers and rational charts for the built-in groups.
///
/// `sample` draws group elements; `neighbors` parametrizes a box around a
/// given element (the chart), radius 1/16 in each coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampler {
    /// invertible matrices, by rejection on small rational entries
    GeneralLinear,
    /// the chart [[a, b], [c, (1+bc)/a]] with a != 0
    SpecialLinear2,
    /// invertible upper triangular
    UpperTriangular,
    /// unit upper triangular
    UnipotentUpper,
    /// invertible diagonal
    DiagonalTorus,
}

/// Numerator range +-8, denominator in {1, 2, 4}.
fn small_ratio(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(-8..=8);
    let den: i64 = 1 << rng.gen_range(0..=2);
    BigRational::new(num.into(), den.into())
}

fn small_ratio_nonzero(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let r = small_ratio(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Chart offset: k/256 with k in [-16, 16], so |offset| <= 1/16.
fn chart_delta(rng: &mut ChaCha8Rng) -> BigRational {
    let k: i64 = rng.gen_range(-16..=16);
    BigRational::new(k.into(), 256.into())
}

impl Sampler {
    pub fn sample(&self, ambient: usize, rng: &mut ChaCha8Rng) -> Mat {
        match self {
            Sampler::GeneralLinear => loop {
                let m = Mat::from_fn(ambient, ambient, |_, _| Scalar::real(small_ratio(rng)));
                if inverse(&m).is_ok() {
                    return m;
                }
            },
            Sampler::SpecialLinear2 => {
                let a = small_ratio_nonzero(rng);
                let b = small_ratio(rng);
                let c = small_ratio(rng);
                sl2_chart(&a, &b, &c)
            }
            Sampler::UpperTriangular => Mat::from_fn(ambient, ambient, |r, c| {
                if r == c {
                    Scalar::real(small_ratio_nonzero(rng))
                } else if r < c {
                    Scalar::real(small_ratio(rng))
                } else {
                    Scalar::zero()
                }
            }),
            Sampler::UnipotentUpper => Mat::from_fn(ambient, ambient, |r, c| {
                if r == c {
                    Scalar::one()
                } else if r < c {
                    Scalar::real(small_ratio(rng))
                } else {
                    Scalar::zero()
                }
            }),
            Sampler::DiagonalTorus => Mat::from_fn(ambient, ambient, |r, c| {
                if r == c {
                    Scalar::real(small_ratio_nonzero(rng))
                } else {
                    Scalar::zero()
                }
            }),
        }
    }

    /// Chart-box neighbors of `g`, or `None` when the chart does not cover
    /// `g` (e.g. the SL2 chart needs a nonzero upper-left entry).
    pub fn neighbors(
        &self,
        ambient: usize,
        g: &Mat,
        rng: &mut ChaCha8Rng,
        count: usize,
    ) -> Option<Vec<Mat>> {
        let mut out = Vec::with_capacity(count);
        match self {
            Sampler::GeneralLinear => {
                for _ in 0..count {
                    loop {
                        let m = Mat::from_fn(ambient, ambient, |r, c| {
                            g.get(r, c) + &Scalar::real(chart_delta(rng))
                        });
                        if inverse(&m).is_ok() {
                            out.push(m);
                            break;
                        }
                    }
                }
            }
            Sampler::SpecialLinear2 => {
                let a0 = g.get(0, 0).re().clone();
                if g.get(0, 0).is_zero() || !g.get(0, 0).is_real() {
                    return None;
                }
                let b0 = g.get(0, 1).re().clone();
                let c0 = g.get(1, 0).re().clone();
                for _ in 0..count {
                    loop {
                        let a = &a0 + chart_delta(rng);
                        if a.is_zero() {
                            continue;
                        }
                        let b = &b0 + chart_delta(rng);
                        let c = &c0 + chart_delta(rng);
                        out.push(sl2_chart(&a, &b, &c));
                        break;
                    }
                }
            }
            Sampler::UpperTriangular => {
                for _ in 0..count {
                    loop {
                        let m = Mat::from_fn(ambient, ambient, |r, c| {
                            if r > c {
                                Scalar::zero()
                            } else {
                                g.get(r, c) + &Scalar::real(chart_delta(rng))
                            }
                        });
                        if (0..ambient).all(|k| !m.get(k, k).is_zero()) {
                            out.push(m);
                            break;
                        }
                    }
                }
            }
            Sampler::UnipotentUpper => {
                for _ in 0..count {
                    out.push(Mat::from_fn(ambient, ambient, |r, c| {
                        if r == c {
                            Scalar::one()
                        } else if r < c {
                            g.get(r, c) + &Scalar::real(chart_delta(rng))
                        } else {
                            Scalar::zero()
                        }
                    }));
                }
            }
            Sampler::DiagonalTorus => {
                for _ in 0..count {
                    loop {
                        let m = Mat::from_fn(ambient, ambient, |r, c| {
                            if r == c {
                                g.get(r, c) + &Scalar::real(chart_delta(rng))
                            } else {
                                Scalar::zero()
                            }
                        });
                        if (0..ambient).all(|k| !m.get(k, k).is_zero()) {
                            out.push(m);
                            break;
                        }
                    }
                }
            }
        }
        Some(out)
    }
}

fn sl2_chart(a: &BigRational, b: &BigRational, c: &BigRational) -> Mat {
    let one = BigRational::new(1.into(), 1.into());
    let d = (&one + &(b * c)) / a;
    Mat::from_rows(vec![
        vec![Scalar::real(a.clone()), Scalar::real(b.clone())],
        vec![Scalar::real(c.clone()), Scalar::real(d)],
    ])
}

/// A matrix group presented by its Lie algebra, an exact membership hint,
/// and optional samplers. Immutable; all operations are pure given
/// (context, element, seed).
pub struct GroupContext {
    name: String,
    ambient: usize,
    lie: LieAlgebra,
    hint: MembershipHint,
    sampler: Option<Sampler>,
    rank_cache: OnceLock<usize>,
}

/// Which exact sequence `sequence_dims` instantiates.
pub enum SequenceKind {
    /// `0 -> h^1(Ad g) -> g^1(Ad g) -> g/h -> 0` for an ideal h and g in the
    /// corresponding normal subgroup (checked: Ad(g) = id mod h).
    Ideal(Subspace),
    /// `0 -> z(g) -> g^1(Ad g) -> h^1(Ad_H(Ad g)) -> 0` through the image of
    /// the adjoint representation.
    Center,
}

impl GroupContext {
    pub fn new(
        name: impl Into<String>,
        ambient: usize,
        lie: LieAlgebra,
        hint: MembershipHint,
        sampler: Option<Sampler>,
    ) -> Result<Self> {
        if lie.ambient() != ambient {
            return Err(Error::DimensionMismatch(format!(
                "algebra ambient {} differs from group ambient {ambient}",
                lie.ambient()
            )));
        }
        Ok(GroupContext {
            name: name.into(),
            ambient,
            lie,
            hint,
            sampler,
            rank_cache: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn hint(&self) -> MembershipHint {
        self.hint
    }

    pub fn sampler(&self) -> Option<Sampler> {
        self.sampler
    }

    /// Draw `count` validated elements; available only for contexts with a
    /// sampler.
    pub fn sample_elements(&self, seed: u64, salt: u64, count: usize) -> Result<Vec<Mat>> {
        let sampler = self
            .sampler
            .ok_or_else(|| Error::Input(format!("group {:?} has no sampler", self.name)))?;
        let mut rng = seeded::rng(seed, seeded::SALT_GROUP_SAMPLER ^ salt);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let g = sampler.sample(self.ambient, &mut rng);
            if self.validate(&g).is_ok() {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// Chart-box neighbors of a validated element.
    pub fn neighbors(&self, g: &Mat, seed: u64, count: usize) -> Result<Vec<Mat>> {
        let sampler = self
            .sampler
            .ok_or_else(|| Error::Input(format!("group {:?} has no chart", self.name)))?;
        let mut rng = seeded::rng(seed, seeded::SALT_NEIGHBORS);
        let nbrs = sampler
            .neighbors(self.ambient, g, &mut rng, count)
            .ok_or_else(|| Error::Input("chart does not cover the given base point".into()))?;
        for n in &nbrs {
            self.validate(n)?;
        }
        Ok(nbrs)
    }

    /// Ok iff `g` is square of the right size, invertible, passes the
    /// membership hint, and conjugation stabilizes the algebra's span.
    pub fn validate(&self, g: &Mat) -> std::result::Result<(), Rejection> {
        if g.rows() != self.ambient || g.cols() != self.ambient {
            return Err(Rejection::WrongSize {
                rows: g.rows(),
                cols: g.cols(),
                expected: self.ambient,
            });
        }
        let ginv = match inverse(g) {
            Ok(m) => m,
            Err(_) => return Err(Rejection::NotInvertible),
        };
        if !self.hint.passes(g, true) {
            return Err(Rejection::HintFailed(self.hint.as_str()));
        }
        for (i, b) in self.lie.basis().iter().enumerate() {
            let conj = g.matmul(b).matmul(&ginv);
            if self.lie.coords_of_mat(&conj).is_none() {
                return Err(Rejection::NotStabilizing { basis_index: i });
            }
        }
        Ok(())
    }

    /// Matrix of `X -> g X g^{-1}` in the algebra basis.
    pub fn ad(&self, g: &Mat) -> Result<Mat> {
        self.validate(g)?;
        let ginv = inverse(g)?;
        let dim = self.lie.dim();
        let mut out = Mat::zero(dim, dim);
        for (j, b) in self.lie.basis().iter().enumerate() {
            let conj = g.matmul(b).matmul(&ginv);
            let coords = self.lie.coords_of_mat(&conj).ok_or_else(|| {
                Error::Inconsistency("validated element stopped stabilizing".into())
            })?;
            for (k, c) in coords.into_iter().enumerate() {
                out.set(k, j, c);
            }
        }
        Ok(out)
    }

    /// Coefficients of `det((T+1)id - Ad(g))`, i.e. the characteristic
    /// polynomial of Ad(g) evaluated at T+1; monic by construction.
    pub fn a_coeffs(&self, g: &Mat) -> Result<ACoeffs> {
        let ad = self.ad(g)?;
        let chi = char_poly(&ad)?;
        let shifted = chi.compose(&Poly::new(vec![Scalar::one(), Scalar::one()]));
        let dim = self.lie.dim();
        let a: Vec<Scalar> = (0..=dim).map(|k| shifted.coeff(k)).collect();
        debug_assert!(a[dim].is_one());
        Ok(ACoeffs { a })
    }

    /// `r(g)`: least j with `a_j != 0`; equals `dim g^1(Ad g)`.
    pub fn r_of(&self, g: &Mat) -> Result<usize> {
        Ok(self.a_coeffs(g)?.r_value())
    }

    /// `g^1(Ad g)`: the primary component of eigenvalue 1.
    pub fn g1_of(&self, g: &Mat) -> Result<Subspace> {
        let ad = self.ad(g)?;
        primary_component(&ad, &Scalar::one())
    }

    /// The group rank `min dim g^1(Ad g)`, which equals the rank of the Lie
    /// algebra; the value is cached after the first computation.
    pub fn group_rank(&self, seed: u64) -> Result<usize> {
        if let Some(&r) = self.rank_cache.get() {
            return Ok(r);
        }
        let r = self.lie.rank(seed)?;
        Ok(*self.rank_cache.get_or_init(|| r))
    }

    /// Group rank plus a sampling cross-check: every sampled element has
    /// `dim g^1 >= rank`; the boolean reports whether the minimum was
    /// witnessed by some sample (budget 64).
    pub fn group_rank_witnessed(&self, seed: u64) -> Result<(usize, bool)> {
        let rank = self.group_rank(seed)?;
        if self.sampler.is_none() {
            return Ok((rank, false));
        }
        let mut witnessed = false;
        for g in self.sample_elements(seed, seeded::SALT_RANK_WITNESS, 64)? {
            let d = self.g1_of(&g)?.dim();
            if d < rank {
                return Err(Error::Inconsistency(format!(
                    "sampled element has dim g^1 = {d} below the rank {rank}"
                )));
            }
            witnessed |= d == rank;
        }
        Ok((rank, witnessed))
    }

    /// Is `g` regular: `r(g) = rk(G)`? Evaluates both characterizations --
    /// the rank equality and `g^1(Ad g)` being a Cartan subalgebra -- and
    /// hard-errors if they ever disagree.
    pub fn is_regular(&self, g: &Mat, seed: u64) -> Result<bool> {
        let r = self.r_of(g)?;
        let g1 = self.g1_of(g)?;
        if g1.dim() != r {
            return Err(Error::Inconsistency(format!(
                "r(g) = {r} but dim g^1(Ad g) = {}",
                g1.dim()
            )));
        }
        let by_rank = r == self.group_rank(seed)?;
        let by_cartan = self.lie.is_cartan(&g1);
        if by_rank != by_cartan {
            return Err(Error::Inconsistency(format!(
                "regularity characterizations disagree: rank equality {by_rank}, \
                 Cartan property {by_cartan}"
            )));
        }
        Ok(by_rank)
    }

    /// `g in N_G(h)`: conjugation maps `h` into `h`.
    pub fn in_ng_h(&self, g: &Mat, h: &Subspace) -> Result<bool> {
        self.validate(g)?;
        let ad = self.ad(g)?;
        Ok(h.basis_rows().all(|z| h.contains_vec(&ad.apply(z))))
    }

    /// `g in Z_G(h)`: conjugation is the identity on `h`.
    pub fn in_zg_h(&self, g: &Mat, h: &Subspace) -> Result<bool> {
        self.validate(g)?;
        let ad = self.ad(g)?;
        Ok(h.basis_rows().all(|z| ad.apply(z) == z))
    }

    /// The permutation induced on the root list by `lambda -> lambda o
    /// Ad(g)|_h`; requires `g in N_G(h)`.
    pub fn root_action(&self, g: &Mat, h: &Subspace) -> Result<Vec<usize>> {
        if !self.in_ng_h(g, h)? {
            return Err(Error::NotInNormalizer);
        }
        let datum = self.lie.roots(h)?;
        self.root_action_on(&datum, g, h)
    }

    fn root_action_on(&self, datum: &RootDatum, g: &Mat, h: &Subspace) -> Result<Vec<usize>> {
        let ad = self.ad(g)?;
        // coordinates (in the h-basis) of Ad(g) applied to each h-basis vector
        let images: Vec<Vec<Scalar>> = h
            .basis_rows()
            .map(|z| {
                h.coords(&ad.apply(z)).ok_or_else(|| {
                    Error::Inconsistency("normalizing element left h unstable".into())
                })
            })
            .collect::<Result<_>>()?;
        let mut perm = Vec::with_capacity(datum.roots().len());
        for root in datum.roots() {
            // lambda(Ad(g) Z_i) = sum_j coords_j lambda(Z_j), by linearity
            let moved: Vec<Scalar> = images
                .iter()
                .map(|coords| {
                    let mut acc = Scalar::zero();
                    for (j, c) in coords.iter().enumerate() {
                        if !c.is_zero() {
                            acc = &acc + &(c * &root.values[j]);
                        }
                    }
                    acc
                })
                .collect();
            let target = datum
                .find(&moved)
                .ok_or_else(|| Error::Inconsistency("root action left the root set".into()))?;
            perm.push(target);
        }
        // a map on a finite set that is injective is a permutation
        let mut seen = vec![false; perm.len()];
        for &t in &perm {
            if seen[t] {
                return Err(Error::Inconsistency(
                    "root action is not a bijection".into(),
                ));
            }
            seen[t] = true;
        }
        Ok(perm)
    }

    /// Membership in the C-Cartan `C(h)`, evaluated through BOTH
    /// characterizations: (a) `g in N_G(h)` fixing every root tuple, and
    /// (b) `g in N_G(h)` with `Ad(g)` commuting with the semisimple part of
    /// every `ad(Z)` for `Z` in an h-basis and one seeded combination.
    /// Disagreement is a hard error.
    ///
    /// Preconditions: `h` is a Cartan subalgebra and its root decomposition
    /// exists over Q(i).
    pub fn in_c_h(&self, g: &Mat, h: &Subspace, seed: u64) -> Result<bool> {
        if !self.lie.is_cartan(h) {
            return Err(Error::NotCartan(
                "C-Cartan membership needs a Cartan subalgebra".into(),
            ));
        }
        let datum = self.lie.roots(h)?;
        if !self.in_ng_h(g, h)? {
            return Ok(false); // both characterizations require the normalizer
        }
        let perm = self.root_action_on(&datum, g, h)?;
        let by_roots = perm.iter().enumerate().all(|(i, &t)| i == t);

        let ad = self.ad(g)?;
        let mut by_semisimple = true;
        let mut test_vectors: Vec<Vec<Scalar>> = h.basis_rows().map(<[Scalar]>::to_vec).collect();
        if h.dim() > 0 {
            let mut rng = seeded::rng(seed, seeded::SALT_C_CARTAN_COMBO);
            let mut combo = vec![Scalar::zero(); self.lie.dim()];
            for z in h.basis_rows() {
                let c = Scalar::from_int(rng.gen_range(1..=7));
                for (t, zt) in z.iter().enumerate() {
                    combo[t] = &combo[t] + &(&c * zt);
                }
            }
            test_vectors.push(combo);
        }
        for z in &test_vectors {
            let (s, _) = jordan_chevalley(&self.lie.ad(z))?;
            if ad.matmul(&s) != s.matmul(&ad) {
                by_semisimple = false;
                break;
            }
        }

        if by_roots != by_semisimple {
            return Err(Error::Inconsistency(format!(
                "C-Cartan characterizations disagree: root action fixed {by_roots}, \
                 semisimple commutation {by_semisimple}"
            )));
        }
        Ok(by_roots)
    }

    /// Dimensions `(kernel part, total, quotient part)` of the exact
    /// sequence selected by `kind`, with the additivity
    /// `total = kernel + quotient` asserted.
    pub fn sequence_dims(&self, kind: &SequenceKind, g: &Mat) -> Result<(usize, usize, usize)> {
        self.validate(g)?;
        let ad = self.ad(g)?;
        let dim_total = primary_component(&ad, &Scalar::one())?.dim();
        let (dim_kernel, dim_quotient) = match kind {
            SequenceKind::Ideal(h) => {
                if h.ambient_dim() != self.lie.dim() {
                    return Err(Error::DimensionMismatch(
                        "ideal lives in the wrong coordinate space".into(),
                    ));
                }
                // h must be an ideal: [g, h] <= h
                let full = Subspace::full(self.lie.dim());
                if !h.contains(&self.lie.bracket_span(&full, h)) {
                    return Err(Error::Input("designated subalgebra is not an ideal".into()));
                }
                // g must act trivially on g/h (i.e. lie in the subgroup's
                // coset of the identity modulo it): Ad(g) = id mod h
                for (j, col) in (0..self.lie.dim()).map(|j| (j, ad.col_vec(j))) {
                    let mut diff = col;
                    diff[j] = &diff[j] - &Scalar::one();
                    if !h.contains_vec(&diff) {
                        return Err(Error::Input(
                            "element does not act trivially modulo the ideal".into(),
                        ));
                    }
                }
                let restricted = restriction(&ad, h)?;
                let h1 = primary_component(&restricted, &Scalar::one())?.dim();
                (h1, self.lie.dim() - h.dim())
            }
            SequenceKind::Center => {
                let z = self.lie.center();
                // the adjoint action must fix the centre pointwise
                for row in z.basis_rows() {
                    if ad.apply(row) != row {
                        return Err(Error::Input(
                            "element does not fix the centre pointwise".into(),
                        ));
                    }
                }
                // image side: the algebra ad(g) acted on by conjugation with
                // Ad(g) inside gl(dim g)
                let dim = self.lie.dim();
                let ad_basis: Vec<Mat> = (0..dim)
                    .map(|i| {
                        let mut x = vec![Scalar::zero(); dim];
                        x[i] = Scalar::one();
                        self.lie.ad(&x)
                    })
                    .collect();
                let image_alg = LieAlgebra::from_matrices(dim, &ad_basis)?;
                let image_ctx = GroupContext::new(
                    format!("{}/centre", self.name),
                    dim,
                    image_alg,
                    MembershipHint::None,
                    None,
                )?;
                let h1 = image_ctx.g1_of(&ad)?.dim();
                (z.dim(), h1)
            }
        };
        if dim_total != dim_kernel + dim_quotient {
            return Err(Error::Inconsistency(format!(
                "exact sequence additivity fails: {dim_total} != {dim_kernel} + {dim_quotient}"
            )));
        }
        Ok((dim_kernel, dim_total, dim_quotient))
    }
}
