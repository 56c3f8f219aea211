//! Spinor norm, determinant and Ω-membership read off the decomposition.

use crate::elimination::decompose;
use crate::error::{Error, Result};
use crate::field::SquareClass;
use crate::forms::{is_member, GroupKind};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaVerdict {
    pub in_group: bool,
    /// ±1, or 0 when `in_group` is false
    pub det: i8,
    /// None when `in_group` is false
    pub spinor: Option<SquareClass>,
    pub in_so: bool,
    pub in_omega: bool,
}

fn require_orthogonal(kind: GroupKind) -> Result<()> {
    if kind.is_orthogonal() {
        Ok(())
    } else {
        Err(Error::WrongKind { expected: "orthogonal group".into(), found: kind.to_string() })
    }
}

/// Θ(g): the square class of λ in the decomposition of g.
pub fn spinor_norm(kind: GroupKind, g: &Matrix) -> Result<SquareClass> {
    require_orthogonal(kind)?;
    let dec = decompose(kind, g)?;
    g.field().square_class(&dec.lambda)
}

/// 1 for Sp, (−1)^(rank deficit) for O(2l), ϑ for O(2l+1).
pub fn determinant_via_decomposition(kind: GroupKind, g: &Matrix) -> Result<i8> {
    Ok(decompose(kind, g)?.determinant())
}

/// Determinant by plain elimination, as ±1.
pub fn determinant_generic(g: &Matrix) -> Result<i8> {
    let f = g.field();
    let d = g.determinant()?;
    if f.is_one(&d) {
        Ok(1)
    } else if f.is_one(&f.neg(&d)) {
        Ok(-1)
    } else {
        Err(Error::InvalidArgument(format!("determinant {} is not ±1", f.format_elem(&d))))
    }
}

/// Membership in O, SO and Ω. Non-members give a verdict with `in_group = false`;
/// errors are reserved for a wrong kind, a bad characteristic or an undecidable square class.
pub fn omega_test(kind: GroupKind, g: &Matrix) -> Result<OmegaVerdict> {
    require_orthogonal(kind)?;
    kind.check_field(g.field())?;
    let outside = OmegaVerdict { in_group: false, det: 0, spinor: None, in_so: false, in_omega: false };
    match is_member(kind, g) {
        Ok(true) => {}
        Ok(false) | Err(Error::DimensionMismatch(_)) => return Ok(outside),
        Err(e) => return Err(e),
    }
    let dec = decompose(kind, g)?;
    let spinor = g.field().square_class(&dec.lambda)?;
    let det = dec.determinant();
    let in_so = det == 1;
    Ok(OmegaVerdict { in_group: true, det, in_omega: in_so && spinor.is_trivial(), spinor: Some(spinor), in_so })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::generators::{gen_matrix, symbol_shapes, torus_matrix, x, GenSymbol};

    #[test]
    fn generator_values() {
        for f in [Field::prime(7).unwrap(), Field::prime(11).unwrap(), Field::rationals()] {
            for kind in [GroupKind::OEven(3), GroupKind::OOdd(3)] {
                if let GroupKind::OEven(_) = kind {
                    let wl = gen_matrix(kind, &GenSymbol::Wl, &f).unwrap();
                    assert!(spinor_norm(kind, &wl).unwrap().is_trivial());
                    assert_eq!(determinant_via_decomposition(kind, &wl).unwrap(), -1);
                    let v = omega_test(kind, &wl).unwrap();
                    assert!(v.in_group && !v.in_so && !v.in_omega);
                }
                for (i, j) in symbol_shapes(kind) {
                    let g = gen_matrix(kind, &x(i, j, f.from_i64(3)), &f).unwrap();
                    assert!(spinor_norm(kind, &g).unwrap().is_trivial());
                }
                for lam in 1..12 {
                    let lam = f.from_i64(lam);
                    if f.is_zero(&lam) {
                        continue;
                    }
                    let g = torus_matrix(kind, &f, &lam, None).unwrap();
                    assert_eq!(spinor_norm(kind, &g).unwrap(), f.square_class(&lam).unwrap());
                    let v = omega_test(kind, &g).unwrap();
                    assert!(v.in_so);
                    assert_eq!(v.in_omega, f.is_square(&lam).unwrap());
                }
            }
        }
    }

    #[test]
    fn sp_is_not_orthogonal() {
        let f = Field::prime(7).unwrap();
        let g = Matrix::identity(&f, 4);
        assert!(matches!(spinor_norm(GroupKind::Sp(2), &g), Err(Error::WrongKind { .. })));
        assert_eq!(determinant_via_decomposition(GroupKind::Sp(2), &g).unwrap(), 1);
    }

    #[test]
    fn non_member_verdict() {
        let f = Field::prime(7).unwrap();
        let mut g = Matrix::identity(&f, 4);
        g.set(0, 1, f.one());
        let v = omega_test(GroupKind::OEven(2), &g).unwrap();
        assert!(!v.in_group && !v.in_so && !v.in_omega);
        let v = omega_test(GroupKind::OEven(2), &Matrix::identity(&f, 3)).unwrap();
        assert!(!v.in_group);
    }

    #[test]
    fn minus_identity() {
        // Θ(−1) is the discriminant class; in O(4) over GF(7), disc = (−1)^2 = 1
        let f = Field::prime(7).unwrap();
        let kind = GroupKind::OEven(2);
        let g = Matrix::identity(&f, 4).scale(&f.from_i64(-1));
        let v = omega_test(kind, &g).unwrap();
        assert!(v.in_so);
        assert!(v.spinor.unwrap().is_trivial());
        // O(6): disc = (−1)^3 = −1, a nonsquare mod 7
        let kind = GroupKind::OEven(3);
        let g = Matrix::identity(&f, 6).scale(&f.from_i64(-1));
        assert_eq!(determinant_via_decomposition(kind, &g).unwrap(), 1);
        assert!(!spinor_norm(kind, &g).unwrap().is_trivial());
    }
}
