//! Built-in group contexts: gl2, sl2, b2, heis3, torus2.
//!
//! Each carries its Lie algebra with a fixed, documented basis, an exact
//! membership hint, and a seeded sampler/chart. The known-Cartan lists and
//! nilpotency/solvability facts used by the verification harness are
//! recorded here as well.

use crate::group::{GroupContext, MembershipHint, Sampler};
use crate::liealg::LieAlgebra;
use crate::mat::Mat;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

pub const NAMES: [&str; 5] = ["gl2", "sl2", "b2", "heis3", "torus2"];

fn e(n: usize, i: usize, j: usize) -> Mat {
    Mat::from_fn(n, n, |r, c| {
        if (r, c) == (i, j) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

fn span(dim: usize, rows: &[&[i64]]) -> Subspace {
    Subspace::from_span(
        dim,
        &rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )
}

/// The built-in context with the given name, if any.
pub fn context(name: &str) -> Option<GroupContext> {
    let ctx = match name {
        "gl2" => GroupContext::new(
            "gl2",
            2,
            // basis (e11, e12, e21, e22)
            LieAlgebra::from_basis(2, vec![e(2, 0, 0), e(2, 0, 1), e(2, 1, 0), e(2, 1, 1)])
                .expect("gl2 basis"),
            MembershipHint::None,
            Some(Sampler::GeneralLinear),
        ),
        "sl2" => GroupContext::new(
            "sl2",
            2,
            // basis (H, E, F)
            LieAlgebra::from_basis(
                2,
                vec![Mat::from_ints(&[&[1, 0], &[0, -1]]), e(2, 0, 1), e(2, 1, 0)],
            )
            .expect("sl2 basis"),
            MembershipHint::Det1,
            Some(Sampler::SpecialLinear2),
        ),
        "b2" => GroupContext::new(
            "b2",
            2,
            // basis (e11, e12, e22)
            LieAlgebra::from_basis(2, vec![e(2, 0, 0), e(2, 0, 1), e(2, 1, 1)]).expect("b2 basis"),
            MembershipHint::InvertibleUpper,
            Some(Sampler::UpperTriangular),
        ),
        "heis3" => GroupContext::new(
            "heis3",
            3,
            // basis (X, Y, Z) = (e12, e23, e13) with [X, Y] = Z
            LieAlgebra::from_basis(3, vec![e(3, 0, 1), e(3, 1, 2), e(3, 0, 2)])
                .expect("heis3 basis"),
            MembershipHint::UnipotentUpper,
            Some(Sampler::UnipotentUpper),
        ),
        "torus2" => GroupContext::new(
            "torus2",
            2,
            // basis (e11, e22)
            LieAlgebra::from_basis(2, vec![e(2, 0, 0), e(2, 1, 1)]).expect("torus2 basis"),
            MembershipHint::Diagonal,
            Some(Sampler::DiagonalTorus),
        ),
        _ => return None,
    };
    Some(ctx.expect("built-in context dimensions are consistent"))
}

/// The Borel subgroup of SL2 (upper triangular, determinant 1), with
/// algebra span{H, E}. Used by the exact-sequence checks; not addressable
/// through the corpus name list.
pub fn borel_sl2() -> GroupContext {
    let lie = LieAlgebra::from_basis(2, vec![Mat::from_ints(&[&[1, 0], &[0, -1]]), e(2, 0, 1)])
        .expect("borel basis");
    GroupContext::new("borel_sl2", 2, lie, MembershipHint::Det1, None).expect("borel context")
}

/// Hard-coded Cartan subalgebras per corpus algebra, in g-coordinates of the
/// documented basis.
pub fn known_cartans(name: &str) -> Vec<Subspace> {
    match name {
        "sl2" => vec![
            span(3, &[&[1, 0, 0]]),  // span H
            span(3, &[&[0, 1, -1]]), // span J = E - F
        ],
        "gl2" => vec![span(4, &[&[1, 0, 0, 0], &[0, 0, 0, 1]])], // diagonal
        "b2" => vec![span(3, &[&[1, 0, 0], &[0, 0, 1]])],        // diagonal
        "heis3" => vec![Subspace::full(3)],
        "torus2" => vec![Subspace::full(2)],
        _ => vec![],
    }
}

/// Group-side (nilpotent, solvable) facts, where known.
pub fn known_group_facts(name: &str) -> Option<(bool, bool)> {
    match name {
        "gl2" | "sl2" => Some((false, false)),
        "b2" => Some((false, true)),
        "heis3" => Some((true, true)),
        "torus2" => Some((true, true)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contexts_build_and_report_expected_dimensions() {
        let dims = [
            ("gl2", 4),
            ("sl2", 3),
            ("b2", 3),
            ("heis3", 3),
            ("torus2", 2),
        ];
        for (name, dim) in dims {
            let ctx = context(name).unwrap();
            assert_eq!(ctx.lie().dim(), dim, "{name}");
            assert_eq!(ctx.name(), name);
        }
        assert!(context("so3").is_none());
    }

    #[test]
    fn known_cartans_certify() {
        for name in NAMES {
            let ctx = context(name).unwrap();
            for h in known_cartans(name) {
                assert!(ctx.lie().is_cartan(&h), "{name}");
            }
        }
    }

    #[test]
    fn known_facts_match_algebra_predicates() {
        for name in NAMES {
            let ctx = context(name).unwrap();
            let (nil, solv) = known_group_facts(name).unwrap();
            assert_eq!(ctx.lie().is_nilpotent(), nil, "{name}");
            assert_eq!(ctx.lie().is_solvable(), solv, "{name}");
        }
    }

    #[test]
    fn samplers_produce_valid_elements() {
        for name in NAMES {
            let ctx = context(name).unwrap();
            let elems = ctx.sample_elements(42, 0, 10).unwrap();
            assert_eq!(elems.len(), 10);
            for g in &elems {
                assert!(ctx.validate(g).is_ok(), "{name}");
            }
        }
    }

    #[test]
    fn neighbors_stay_in_the_group() {
        for name in NAMES {
            let ctx = context(name).unwrap();
            let g = ctx.sample_elements(7, 1, 1).unwrap().remove(0);
            let nbrs = ctx.neighbors(&g, 11, 8).unwrap();
            assert_eq!(nbrs.len(), 8);
            for h in &nbrs {
                assert!(ctx.validate(h).is_ok(), "{name}");
            }
        }
    }
}
