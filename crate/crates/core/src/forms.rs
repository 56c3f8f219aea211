//! The fixed bilinear forms, group kinds and the signed basis indexing.
//!
//! Basis order is e_1..e_l, e_{-1}..e_{-l}, with e_0 prepended in odd
//! dimension. Signed index i maps to array position i-1 (even) or i (odd),
//! and -i maps to l+i-1 (even) or l+i (odd).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;

/// Signed basis label: -l..=-1, 1..=l, and 0 in odd dimension.
pub type SignedIndex = i32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Sp(2l, k)
    Sp(usize),
    /// O(2l, k)
    OEven(usize),
    /// O(2l+1, k)
    OOdd(usize),
}

impl GroupKind {
    pub fn new(family: Family, l: usize) -> Result<GroupKind> {
        if l < 2 {
            return Err(Error::InvalidArgument(format!("rank l = {l} < 2")));
        }
        Ok(match family {
            Family::Sp => GroupKind::Sp(l),
            Family::OEven => GroupKind::OEven(l),
            Family::OOdd => GroupKind::OOdd(l),
        })
    }

    pub fn family(&self) -> Family {
        match self {
            GroupKind::Sp(_) => Family::Sp,
            GroupKind::OEven(_) => Family::OEven,
            GroupKind::OOdd(_) => Family::OOdd,
        }
    }

    /// The Witt index l.
    pub fn l(&self) -> usize {
        match *self {
            GroupKind::Sp(l) | GroupKind::OEven(l) | GroupKind::OOdd(l) => l,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            GroupKind::Sp(l) | GroupKind::OEven(l) => 2 * l,
            GroupKind::OOdd(l) => 2 * l + 1,
        }
    }

    pub fn is_orthogonal(&self) -> bool {
        !matches!(self, GroupKind::Sp(_))
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, GroupKind::OOdd(_))
    }

    /// Array position of e_1 (0 for even kinds, 1 for odd).
    pub fn top(&self) -> usize {
        usize::from(self.is_odd())
    }

    /// Array position of e_{-1}.
    pub fn bottom(&self) -> usize {
        self.top() + self.l()
    }

    /// Orthogonal kinds need characteristic zero or odd.
    pub fn check_field(&self, field: &Field) -> Result<()> {
        if self.is_orthogonal() && field.characteristic() == 2 {
            return Err(Error::BadCharacteristic { kind: self.to_string(), char: 2 });
        }
        Ok(())
    }

    pub fn is_valid_index(&self, s: SignedIndex) -> bool {
        let l = self.l() as i32;
        (s != 0 || self.is_odd()) && s.abs() <= l
    }

    pub fn index(&self, s: SignedIndex) -> Result<usize> {
        if !self.is_valid_index(s) {
            return Err(Error::IndexOutOfRange(format!("signed index {s} for {self}")));
        }
        Ok(self.pos(s))
    }

    /// Unchecked version of [`GroupKind::index`].
    #[inline]
    pub fn pos(&self, s: SignedIndex) -> usize {
        let off = self.top();
        if s == 0 {
            0
        } else if s > 0 {
            s as usize + off - 1
        } else {
            self.l() + (-s) as usize + off - 1
        }
    }

    pub fn signed(&self, pos: usize) -> SignedIndex {
        let l = self.l();
        let off = self.top();
        if self.is_odd() && pos == 0 {
            0
        } else if pos < off + l {
            (pos + 1 - off) as i32
        } else {
            -((pos + 1 - off - l) as i32)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Sp,
    OEven,
    OOdd,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Sp => "sp",
            Family::OEven => "o-even",
            Family::OOdd => "o-odd",
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s.trim() {
            "sp" => Ok(Family::Sp),
            "o-even" => Ok(Family::OEven),
            "o-odd" => Ok(Family::OOdd),
            _ => Err(Error::Parse(format!("unknown group family '{s}'"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family(), self.l())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    /// "sp:l", "o-even:l" or "o-odd:l".
    fn from_str(s: &str) -> Result<GroupKind> {
        let (fam, l) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected family:l, got '{s}'")))?;
        let l: usize = l.parse().map_err(|_| Error::Parse(format!("bad rank in '{s}'")))?;
        GroupKind::new(fam.parse()?, l)
    }
}

/// Matrix of the form: [[0, I], [-I, 0]] for Sp, [[0, I], [I, 0]] for O(2l),
/// and [[2, 0, 0], [0, 0, I], [0, I, 0]] for O(2l+1).
pub fn form_matrix(kind: GroupKind, field: &Field) -> Result<Matrix> {
    kind.check_field(field)?;
    let d = kind.dim();
    let l = kind.l();
    let mut b = Matrix::zeros(field, d, d);
    if kind.is_odd() {
        b.set(0, 0, field.from_i64(2));
    }
    let (top, bot) = (kind.top(), kind.bottom());
    let lower = if kind.is_orthogonal() { field.one() } else { field.from_i64(-1) };
    for i in 0..l {
        b.set(top + i, bot + i, field.one());
        b.set(bot + i, top + i, lower.clone());
    }
    Ok(b)
}

fn form_sign(kind: GroupKind, field: &Field) -> Elem {
    if kind.is_orthogonal() {
        field.one()
    } else {
        field.from_i64(-1)
    }
}

/// beta * g, computed by permuting rows of g.
fn form_times(kind: GroupKind, g: &Matrix) -> Matrix {
    let f = g.field();
    let d = kind.dim();
    let l = kind.l();
    let (top, bot) = (kind.top(), kind.bottom());
    let sign = form_sign(kind, f);
    let mut out = Matrix::zeros(f, d, d);
    for j in 0..d {
        if kind.is_odd() {
            out.set(0, j, f.add(g.get(0, j), g.get(0, j)));
        }
        for i in 0..l {
            out.set(top + i, j, g.get(bot + i, j).clone());
            out.set(bot + i, j, f.mul(&sign, g.get(top + i, j)));
        }
    }
    out
}

/// Gram matrix ᵀg β g.
pub fn gram(kind: GroupKind, g: &Matrix) -> Result<Matrix> {
    kind.check_field(g.field())?;
    let d = kind.dim();
    if g.rows() != d || g.cols() != d {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix for {kind} (d = {d})",
            g.rows(),
            g.cols()
        )));
    }
    g.transpose().mul(&form_times(kind, g))
}

/// True iff ᵀg β g = β.
pub fn is_member(kind: GroupKind, g: &Matrix) -> Result<bool> {
    let gr = gram(kind, g)?;
    Ok(gr == form_matrix(kind, g.field())?)
}

/// Q(v) = ½ ᵀv β v for orthogonal kinds.
pub fn quadratic_form(kind: GroupKind, field: &Field, v: &[Elem]) -> Result<Elem> {
    if !kind.is_orthogonal() {
        return Err(Error::WrongKind { expected: "orthogonal group".into(), found: kind.to_string() });
    }
    kind.check_field(field)?;
    if v.len() != kind.dim() {
        return Err(Error::DimensionMismatch(format!("vector of length {} for {kind}", v.len())));
    }
    let (top, bot) = (kind.top(), kind.bottom());
    // ½ (2 v0^2 + 2 Σ v_i v_{-i}) = v0^2 + Σ v_i v_{-i}
    let mut acc = field.zero();
    if kind.is_odd() {
        acc = field.mul(&v[0], &v[0]);
    }
    for i in 0..kind.l() {
        acc = field.add(&acc, &field.mul(&v[top + i], &v[bot + i]));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sp_form_over_gf5() {
        let f = Field::prime(5).unwrap();
        let b = form_matrix(GroupKind::Sp(2), &f).unwrap();
        let expected =
            Matrix::from_i64(&f, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[4, 0, 0, 0], &[0, 4, 0, 0]]).unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn odd_form_over_q() {
        let f = Field::rationals();
        let b = form_matrix(GroupKind::OOdd(2), &f).unwrap();
        let expected = Matrix::from_i64(
            &f,
            &[&[2, 0, 0, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0]],
        )
        .unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn orthogonal_rejects_char_two() {
        let f = Field::prime(2).unwrap();
        assert!(matches!(form_matrix(GroupKind::OEven(2), &f), Err(Error::BadCharacteristic { .. })));
        assert!(form_matrix(GroupKind::Sp(2), &f).is_ok());
        let f4 = Field::extension(2, 2).unwrap();
        assert!(matches!(
            is_member(GroupKind::OOdd(2), &Matrix::identity(&f4, 5)),
            Err(Error::BadCharacteristic { .. })
        ));
    }

    #[test]
    fn forms_symmetric_or_skew_and_invertible() {
        for f in [Field::prime(3).unwrap(), Field::prime(7).unwrap(), Field::rationals()] {
            for kind in [GroupKind::Sp(3), GroupKind::OEven(3), GroupKind::OOdd(3)] {
                let b = form_matrix(kind, &f).unwrap();
                let bt = b.transpose();
                if kind.is_orthogonal() {
                    assert_eq!(bt, b);
                } else {
                    assert_eq!(bt, b.scale(&f.from_i64(-1)));
                }
                assert!(!f.is_zero(&b.determinant().unwrap()));
            }
        }
    }

    #[test]
    fn membership_examples() {
        let f = Field::prime(5).unwrap();
        assert!(is_member(GroupKind::Sp(2), &Matrix::identity(&f, 4)).unwrap());
        let g = Matrix::diagonal(&f, &[f.from_i64(2), f.one(), f.one(), f.one()]);
        assert!(!is_member(GroupKind::Sp(2), &g).unwrap());
        // (1,3) entry of ᵀgβg (1-based) becomes 2
        let gr = gram(GroupKind::Sp(2), &g).unwrap();
        assert_eq!(gr.get(0, 2), &f.from_i64(2));

        // w_l = I - e_{l,l} - e_{-l,-l} - e_{l,-l} - e_{-l,l} in O(4)
        let w = Matrix::from_i64(&f, &[&[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0], &[0, -1, 0, 0]])
            .unwrap();
        assert!(is_member(GroupKind::OEven(2), &w).unwrap());
        assert!(matches!(
            is_member(GroupKind::Sp(2), &Matrix::identity(&f, 5)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn quadratic_form_examples() {
        let f = Field::prime(11).unwrap();
        let kind = GroupKind::OEven(2);
        let lam = f.from_i64(7);
        // e_l + e_{-l}
        let v = vec![f.zero(), f.one(), f.zero(), f.one()];
        assert!(f.is_one(&quadratic_form(kind, &f, &v).unwrap()));
        let v = vec![f.zero(), f.one(), f.zero(), lam.clone()];
        assert_eq!(quadratic_form(kind, &f, &v).unwrap(), lam);
        let e0 = vec![f.one(), f.zero(), f.zero(), f.zero(), f.zero()];
        assert!(f.is_one(&quadratic_form(GroupKind::OOdd(2), &f, &e0).unwrap()));
    }

    #[test]
    fn index_map_is_bijective() {
        for l in 2..=64usize {
            for kind in [GroupKind::Sp(l), GroupKind::OEven(l), GroupKind::OOdd(l)] {
                let mut seen = vec![false; kind.dim()];
                let li = l as i32;
                for s in -li..=li {
                    if !kind.is_valid_index(s) {
                        continue;
                    }
                    let p = kind.index(s).unwrap();
                    assert!(!seen[p], "{kind} {s}");
                    seen[p] = true;
                    assert_eq!(kind.signed(p), s);
                }
                assert!(seen.iter().all(|&b| b));
            }
        }
        assert_eq!(GroupKind::OEven(3).index(-2).unwrap(), 4);
        assert_eq!(GroupKind::OOdd(3).index(-2).unwrap(), 5);
        assert_eq!(GroupKind::OOdd(3).index(0).unwrap(), 0);
        assert!(GroupKind::Sp(3).index(0).is_err());
    }

    #[test]
    fn kind_text() {
        for s in ["sp:3", "o-even:2", "o-odd:5"] {
            assert_eq!(s.parse::<GroupKind>().unwrap().to_string(), s);
        }
        assert!("sp:1".parse::<GroupKind>().is_err());
        assert!("gl:3".parse::<GroupKind>().is_err());
    }
}
