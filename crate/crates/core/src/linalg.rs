//! Exact dense linear algebra: echelon forms, kernels, characteristic
//! polynomials, primary decomposition, Jordan-Chevalley decomposition.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::poly::{gaussian_roots, poly_squarefree_part, Poly};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Reduced row echelon form together with the kernel `{v : Mv = 0}`.
pub fn rref_kernel(m: &Mat) -> (Mat, Subspace) {
    let mut r = m.clone();
    let pivots = r.rref_in_place();
    let n = m.cols();
    let pivot_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = Some(row);
        }
        v
    };
    let mut kernel_rows = Vec::new();
    for free in 0..n {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Scalar::zero(); n];
        v[free] = Scalar::one();
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = -r.get(row, free);
        }
        kernel_rows.push(v);
    }
    (r, Subspace::from_span(n, &kernel_rows))
}

/// One solution `x` of `a x = b` (columns of `b` solved independently), or
/// `None` if inconsistent. When `a` has full column rank the solution is
/// unique.
pub fn solve(a: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(a.rows(), b.rows(), "solve dimension mismatch");
    let mut aug = Mat::hstack(a, b);
    let pivots = aug.rref_in_place();
    if pivots.iter().any(|&p| p >= a.cols()) {
        return None; // a pivot landed in the right-hand side
    }
    let mut x = Mat::zero(a.cols(), b.cols());
    for (row, &col) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(col, j, aug.get(row, a.cols() + j).clone());
        }
    }
    Some(x)
}

pub fn inverse(m: &Mat) -> Result<Mat> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut aug = Mat::hstack(m, &Mat::identity(n));
    let pivots = aug.rref_in_place();
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::Singular);
    }
    Ok(Mat::from_fn(n, n, |r, c| aug.get(r, n + c).clone()))
}

/// Monic characteristic polynomial `det(t*id - M)` via the
/// Faddeev-LeVerrier trace recursion; exact in characteristic zero.
pub fn char_poly(m: &Mat) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut a = m.clone();
    for k in 1..=n {
        let c = a
            .trace()
            .div(&Scalar::from_int(-(k as i64)))
            .expect("nonzero integer");
        coeffs[n - k] = c.clone();
        if k < n {
            let shifted = &a + &Mat::identity(n).scale(&c);
            a = m.matmul(&shifted);
        }
    }
    Ok(Poly::new(coeffs))
}

/// Evaluate `p` at the square matrix `m` (Horner).
pub fn eval_poly_mat(p: &Poly, m: &Mat) -> Mat {
    assert!(m.is_square());
    let n = m.rows();
    let mut acc = Mat::zero(n, n);
    for c in p.coeffs().iter().rev() {
        acc = &acc.matmul(m) + &Mat::identity(n).scale(c);
    }
    acc
}

/// The primary component `V^s(M) = ker (M - s*id)^n` with `n` the ambient
/// dimension; the zero subspace when `s` is not an eigenvalue.
pub fn primary_component(m: &Mat, s: &Scalar) -> Result<Subspace> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let shifted = m - &Mat::identity(n).scale(s);
    let (_, ker) = rref_kernel(&shifted.pow(n));
    Ok(ker)
}

/// Fitting decomposition: the 0-primary component and its M-invariant
/// complement (the image of `M^n`).
pub fn fitting_decomposition(m: &Mat) -> Result<(Subspace, Subspace)> {
    let null_part = primary_component(m, &Scalar::zero())?;
    let n = m.rows();
    let mn = m.pow(n);
    let cols: Vec<Vec<Scalar>> = (0..n).map(|c| mn.col_vec(c)).collect();
    let invertible_part = Subspace::from_span(n, &cols);
    Ok((null_part, invertible_part))
}

/// Additive Jordan-Chevalley decomposition `M = S + N` with `S` semisimple
/// (annihilated by a squarefree polynomial), `N` nilpotent, `SN = NS`, both
/// polynomials in `M`.
///
/// Newton iteration modulo the squarefree part `q` of the characteristic
/// polynomial: `A <- A - q(A) q'(A)^{-1}` converges in at most
/// `ceil(log2 n) + 1` steps because `q(M)` is nilpotent and `q'(A)` stays
/// invertible.
pub fn jordan_chevalley(m: &Mat) -> Result<(Mat, Mat)> {
    let chi = char_poly(m)?;
    let q = poly_squarefree_part(&chi)?;
    let n = m.rows();
    let max_iter = (usize::BITS - n.leading_zeros()) as usize + 2;
    let mut a = m.clone();
    let dq = q.derivative();
    for _ in 0..max_iter {
        let qa = eval_poly_mat(&q, &a);
        if qa.is_zero() {
            break;
        }
        let dqa = eval_poly_mat(&dq, &a);
        let inv = inverse(&dqa).map_err(|_| {
            Error::Inconsistency("Jordan-Chevalley Newton step hit a singular derivative".into())
        })?;
        a = &a - &qa.matmul(&inv);
    }
    if !eval_poly_mat(&q, &a).is_zero() {
        return Err(Error::Split(
            crate::error::SplitFailure::new(q).with_context("jordan-chevalley certification"),
        ));
    }
    let nil = m - &a;
    Ok((a, nil))
}

/// Matrix of `m` restricted to the invariant subspace `w`, in `w`'s
/// canonical basis (column convention: column r = coords of `m * w_r`).
pub fn restriction(m: &Mat, w: &Subspace) -> Result<Mat> {
    let k = w.dim();
    let mut out = Mat::zero(k, k);
    for r in 0..k {
        let img = m.apply(w.basis().row(r));
        let coords = w.coords(&img).ok_or_else(|| {
            Error::Inconsistency("subspace is not invariant under the map".into())
        })?;
        for (s, c) in coords.into_iter().enumerate() {
            out.set(s, r, c);
        }
    }
    Ok(out)
}

/// Joint primary decomposition of a family of commuting-on-components maps:
/// iteratively refines the full space by the primary components of each map.
/// Each returned piece is labeled by its eigenvalue tuple (one entry per
/// input map); pieces are sorted by label.
pub fn simultaneous_primary_decomposition(maps: &[Mat]) -> Result<Vec<(Vec<Scalar>, Subspace)>> {
    let n = match maps.first() {
        Some(m) => m.rows(),
        None => return Ok(vec![]),
    };
    for (i, m) in maps.iter().enumerate() {
        if !m.is_square() || m.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "map #{i} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
    }
    let mut pieces: Vec<(Vec<Scalar>, Subspace)> = vec![(vec![], Subspace::full(n))];
    for (idx, m) in maps.iter().enumerate() {
        let mut next = Vec::new();
        for (labels, w) in &pieces {
            let restricted = restriction(m, w)?;
            let chi = char_poly(&restricted)?;
            let roots = gaussian_roots(&chi).map_err(|e| match e {
                Error::Split(sf) => Error::Split(sf.with_context(format!(
                    "restricted characteristic polynomial of map #{idx}"
                ))),
                other => other,
            })?;
            for (s, _) in roots {
                let sub = primary_component(&restricted, &s)?;
                let rows: Vec<Vec<Scalar>> = sub
                    .basis_rows()
                    .map(|coeffs| {
                        let mut acc = vec![Scalar::zero(); n];
                        for (i, c) in coeffs.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            for (j, b) in w.basis().row(i).iter().enumerate() {
                                acc[j] = &acc[j] + &(c * b);
                            }
                        }
                        acc
                    })
                    .collect();
                let mut labels = labels.clone();
                labels.push(s);
                next.push((labels, Subspace::from_span(n, &rows)));
            }
        }
        pieces = next;
    }
    pieces.sort_by(|a, b| a.0.cmp(&b.0));
    let total: usize = pieces.iter().map(|(_, s)| s.dim()).sum();
    if total != n {
        return Err(Error::Inconsistency(format!(
            "primary pieces sum to dimension {total}, expected {n}"
        )));
    }
    let stacked: Vec<Vec<Scalar>> = pieces
        .iter()
        .flat_map(|(_, s)| s.basis_rows().map(<[Scalar]>::to_vec).collect::<Vec<_>>())
        .collect();
    if Subspace::from_span(n, &stacked).dim() != n {
        return Err(Error::Inconsistency(
            "primary pieces are not independent".into(),
        ));
    }
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag(entries: &[Scalar]) -> Mat {
        let n = entries.len();
        Mat::from_fn(n, n, |r, c| {
            if r == c {
                entries[r].clone()
            } else {
                Scalar::zero()
            }
        })
    }

    /// Independent characteristic polynomial oracle: Laplace expansion of
    /// det(t*id - M) over the polynomial ring.
    fn char_poly_oracle(m: &Mat) -> Poly {
        let n = m.rows();
        let entries: Vec<Vec<Poly>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let mut p = -&Poly::constant(m.get(r, c).clone());
                        if r == c {
                            p = &p + &Poly::x();
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        fn det(rows: &[usize], cols: &[usize], e: &[Vec<Poly>]) -> Poly {
            if rows.is_empty() {
                return Poly::one();
            }
            let r = rows[0];
            let rest: Vec<usize> = rows[1..].to_vec();
            let mut acc = Poly::zero();
            for (k, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det(&rest, &sub_cols, e);
                let term = &e[r][c] * &minor;
                if k % 2 == 0 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        }
        let idx: Vec<usize> = (0..n).collect();
        det(&idx, &idx, &entries)
    }

    #[test]
    fn rref_kernel_examples() {
        let (_, k1) = rref_kernel(&Mat::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(k1.dim(), 1);
        assert!(k1.contains_vec(&[Scalar::from_int(-2), Scalar::from_int(1)]));

        let (_, k2) = rref_kernel(&Mat::identity(3));
        assert_eq!(k2.dim(), 0);

        let (_, k3) = rref_kernel(&Mat::zero(2, 2));
        assert_eq!(k3, Subspace::full(2));
    }

    #[test]
    fn char_poly_examples() {
        // diag(2, 1/2): (t-2)(t-1/2) = t^2 - 5/2 t + 1
        let m = diag(&[Scalar::from_int(2), Scalar::from_ratio(1, 2)]);
        let chi = char_poly(&m).unwrap();
        assert_eq!(
            chi,
            Poly::new(vec![
                Scalar::one(),
                Scalar::from_ratio(-5, 2),
                Scalar::one()
            ])
        );

        // e12 nilpotent: t^2
        let e12 = Mat::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            char_poly(&e12).unwrap(),
            Poly::new(vec![Scalar::zero(), Scalar::zero(), Scalar::one()])
        );

        // frozen from the cofactor-expansion oracle: t^2 (t - 1)
        let m = Mat::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]);
        let expect = Poly::new(vec![
            Scalar::zero(),
            Scalar::zero(),
            Scalar::from_int(-1),
            Scalar::one(),
        ]);
        assert_eq!(char_poly_oracle(&m), expect);
        assert_eq!(char_poly(&m).unwrap(), expect);
    }

    #[test]
    fn primary_component_examples() {
        // ad-matrix of H in sl2 basis (H, E, F): diag(0, 2, -2); s = 2 gives
        // the E-coordinate axis
        let m = diag(&[Scalar::zero(), Scalar::from_int(2), Scalar::from_int(-2)]);
        let v2 = primary_component(&m, &Scalar::from_int(2)).unwrap();
        assert_eq!(v2.dim(), 1);
        assert!(v2.contains_vec(&[Scalar::zero(), Scalar::one(), Scalar::zero()]));

        // single Jordan block: whole plane
        let j = Mat::from_ints(&[&[2, 1], &[0, 2]]);
        assert_eq!(
            primary_component(&j, &Scalar::from_int(2)).unwrap(),
            Subspace::full(2)
        );

        // non-eigenvalue: zero subspace
        let d = diag(&[Scalar::from_int(1), Scalar::from_int(2)]);
        assert!(primary_component(&d, &Scalar::from_int(3))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn fitting_examples() {
        let m = diag(&[Scalar::zero(), Scalar::from_int(2), Scalar::from_int(-2)]);
        let (null, inv) = fitting_decomposition(&m).unwrap();
        assert_eq!((null.dim(), inv.dim()), (1, 2));
        assert!(null.intersect(&inv).is_zero());

        let e12 = Mat::from_ints(&[&[0, 1], &[0, 0]]);
        let (null, inv) = fitting_decomposition(&e12).unwrap();
        assert_eq!((null.dim(), inv.dim()), (2, 0));

        let g = Mat::from_ints(&[&[1, 1], &[0, 1]]);
        let (null, inv) = fitting_decomposition(&g).unwrap();
        assert_eq!((null.dim(), inv.dim()), (0, 2));
    }

    #[test]
    fn fitting_parts_are_invariant() {
        let m = Mat::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]);
        let (null, inv) = fitting_decomposition(&m).unwrap();
        for part in [&null, &inv] {
            for row in part.basis_rows() {
                assert!(part.contains_vec(&m.apply(row)));
            }
        }
    }

    #[test]
    fn jordan_chevalley_examples() {
        // single Jordan block
        let m = Mat::from_ints(&[&[2, 1], &[0, 2]]);
        let (s, n) = jordan_chevalley(&m).unwrap();
        assert_eq!(s, Mat::identity(2).scale(&Scalar::from_int(2)));
        assert_eq!(n, Mat::from_ints(&[&[0, 1], &[0, 0]]));

        // distinct eigenvalues: already semisimple
        let m = Mat::from_ints(&[&[0, 1], &[1, 0]]);
        let (s, n) = jordan_chevalley(&m).unwrap();
        assert_eq!(s, m);
        assert!(n.is_zero());

        // mixed: S = diag(0,0,1), N = e12; verified S+N=M, SN=NS, N^2=0,
        // and S annihilated by the squarefree t(t-1)
        let m = Mat::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]);
        let (s, n) = jordan_chevalley(&m).unwrap();
        assert_eq!(&s + &n, m);
        assert_eq!(s.matmul(&n), n.matmul(&s));
        assert!(n.pow(3).is_zero());
        assert_eq!(s, Mat::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]]));
        assert_eq!(n, Mat::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]));
        let ann = &s.matmul(&s) - &s;
        assert!(ann.is_zero());
    }

    #[test]
    fn jordan_chevalley_without_splitting() {
        // t^2 - 2 does not split over Q(i), but the decomposition still
        // exists: M is already semisimple.
        let m = Mat::from_ints(&[&[0, 2], &[1, 0]]);
        let (s, n) = jordan_chevalley(&m).unwrap();
        assert_eq!(s, m);
        assert!(n.is_zero());
    }

    #[test]
    fn simultaneous_examples() {
        let d = diag(&[Scalar::zero(), Scalar::from_int(2), Scalar::from_int(-2)]);
        let pieces = simultaneous_primary_decomposition(std::slice::from_ref(&d)).unwrap();
        let labels: Vec<Vec<Scalar>> = pieces.iter().map(|(l, _)| l.clone()).collect();
        assert_eq!(
            labels,
            vec![
                vec![Scalar::from_int(-2)],
                vec![Scalar::zero()],
                vec![Scalar::from_int(2)]
            ]
        );
        assert!(pieces.iter().all(|(_, s)| s.dim() == 1));

        let z = Mat::zero(3, 3);
        let pieces = simultaneous_primary_decomposition(std::slice::from_ref(&z)).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].1, Subspace::full(3));

        let pieces = simultaneous_primary_decomposition(&[d, z]).unwrap();
        assert_eq!(pieces.len(), 3);
        for (labels, _) in &pieces {
            assert_eq!(labels.len(), 2);
            assert!(labels[1].is_zero());
        }
    }

    fn arb_mat3() -> impl Strategy<Value = Mat> {
        proptest::collection::vec(-3i64..=3, 9)
            .prop_map(|v| Mat::from_fn(3, 3, |r, c| Scalar::from_int(v[r * 3 + c])))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn cayley_hamilton(m in arb_mat3()) {
            let chi = char_poly(&m).unwrap();
            prop_assert!(eval_poly_mat(&chi, &m).is_zero());
            prop_assert_eq!(char_poly_oracle(&m), chi);
        }

        #[test]
        fn rank_nullity(m in arb_mat3()) {
            let (r, ker) = rref_kernel(&m);
            let rank = (0..r.rows()).filter(|&i| !r.row(i).iter().all(Scalar::is_zero)).count();
            prop_assert_eq!(rank + ker.dim(), m.cols());
            for row in ker.basis_rows() {
                prop_assert!(m.apply(row).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn jc_commutes_with_commutant(m in arb_mat3(), c0 in -3i64..=3, c1 in -3i64..=3, c2 in -3i64..=3) {
            // any polynomial in M commutes with S and N
            let (s, n) = jordan_chevalley(&m).unwrap();
            let p = Poly::new(vec![
                Scalar::from_int(c0),
                Scalar::from_int(c1),
                Scalar::from_int(c2),
            ]);
            let pm = eval_poly_mat(&p, &m);
            prop_assert_eq!(s.matmul(&pm), pm.matmul(&s));
            prop_assert_eq!(n.matmul(&pm), pm.matmul(&n));
        }

        #[test]
        fn primary_dims_sum_when_split(ev in proptest::collection::vec(-3i64..=3, 3)) {
            // upper-triangular with integer spectrum always splits
            let m = Mat::from_fn(3, 3, |r, c| {
                if r == c { Scalar::from_int(ev[r]) }
                else if r < c { Scalar::from_int(1) }
                else { Scalar::zero() }
            });
            let chi = char_poly(&m).unwrap();
            let roots = gaussian_roots(&chi).unwrap();
            let mut total = 0;
            for (s, mult) in roots {
                let comp = primary_component(&m, &s).unwrap();
                prop_assert_eq!(comp.dim(), mult);
                total += comp.dim();
            }
            prop_assert_eq!(total, 3);
        }
    }
}
