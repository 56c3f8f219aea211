//! Double cosets P\G/P for the Siegel parabolic P (the block upper-triangular
//! elements), with representatives ω_m = w_{1,-1}⋯w_{m,-m}.

use crate::elimination::{symmetric_completion, validate, Reducer};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::forms::{is_member, GroupKind, SignedIndex};
use crate::generators::{shape, special_w, torus_matrix, x, Shape, Word};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetResult {
    pub m: usize,
    /// in P; applied on the left of ω_m
    pub p_word: Word,
    /// in P; applied on the right of the diagonal factor
    pub q_word: Word,
    /// g = eval(p_word) · ω_m · diag(ϑ?, 1, …, λ, 1, …, λ⁻¹) · eval(q_word)
    pub lambda: Elem,
    pub theta: Option<i8>,
}

impl CosetResult {
    pub fn diagonal(&self, kind: GroupKind, field: &Field) -> Matrix {
        let theta = self.theta.map(|t| field.from_i64(t as i64));
        torus_matrix(kind, field, &self.lambda, theta.as_ref()).expect("λ ≠ 0")
    }

    /// eval(p_word) · ω_m · T · eval(q_word)
    pub fn witness_product(&self, kind: GroupKind, field: &Field) -> Result<Matrix> {
        let mut g = self.diagonal(kind, field);
        omega_word(kind, self.m, field)?.apply_left(kind, &mut g)?;
        self.p_word.apply_left(kind, &mut g)?;
        self.q_word.apply_right(kind, &mut g)?;
        Ok(g)
    }
}

/// Block pattern test: C = 0, and for odd kinds also the row block X = 0.
pub fn in_parabolic(kind: GroupKind, g: &Matrix) -> Result<bool> {
    if !is_member(kind, g)? {
        return Err(Error::NotAMember(kind.to_string()));
    }
    Ok(has_parabolic_shape(kind, g))
}

fn has_parabolic_shape(kind: GroupKind, g: &Matrix) -> bool {
    let l = kind.l() as SignedIndex;
    let zero = |i, j| g.is_zero_entry(kind.pos(i), kind.pos(j));
    (1..=l).all(|j| (1..=l).all(|i| zero(-i, j)) && (!kind.is_odd() || zero(0, j)))
}

/// Word for ω_m = w_{1,-1} ⋯ w_{m,-m}; empty for m = 0.
pub fn omega_word(kind: GroupKind, m: usize, field: &Field) -> Result<Word> {
    if m > kind.l() {
        return Err(Error::IndexOutOfRange(format!("ω_{m} for {kind}")));
    }
    let mut w = Word::new();
    for i in 1..=m {
        w.extend(&special_w(kind, i, field)?);
    }
    Ok(w)
}

pub fn omega_rep(kind: GroupKind, m: usize, field: &Field) -> Result<(Matrix, Word)> {
    let w = omega_word(kind, m, field)?;
    Ok((w.evaluate(kind, field)?, w))
}

fn violation(msg: impl Into<String>) -> Error {
    Error::InternalInvariantViolation(msg.into())
}

/// Finds m with g ∈ P ω_m P, together with an explicit factorisation.
pub fn coset_index(kind: GroupKind, g: &Matrix) -> Result<CosetResult> {
    validate(kind, g)?;
    let field = g.field().clone();
    let f = &field;
    let l = kind.l() as SignedIndex;
    let one = f.one();
    let mut r = Reducer::new(kind, g.clone(), false);

    // diagonalise C: row ops on C come from left x_{a,b}, column ops from right x_{i,j}
    let mut m: SignedIndex = 0;
    for k in 1..=l {
        let mut piv = None;
        'search: for c in k..=l {
            for row in k..=l {
                if !f.is_zero(r.at(-row, c)) {
                    piv = Some((row, c));
                    break 'search;
                }
            }
        }
        let Some((row, c)) = piv else { break };
        if c != k {
            r.right_mul(x(c, k, one.clone()))?;
        }
        if row != k {
            // C row k += C row `row`
            r.left_mul(x(row, k, f.neg(&one)))?;
        }
        let pinv = f.inv(r.at(-k, k))?;
        for i in k + 1..=l {
            let t = f.mul(r.at(-i, k), &pinv);
            r.left_mul(x(k, i, t))?;
        }
        for j in k + 1..=l {
            let t = f.neg(&f.mul(r.at(-k, j), &pinv));
            r.right_mul(x(k, j, t))?;
        }
        m = k;
    }

    if kind.is_odd() {
        // X_i -= s c_i under left x_{i,0}(s)
        for i in 1..=m {
            let s = f.div(r.at(0, i), r.at(-i, i))?;
            r.left_mul(x(i, 0, s))?;
        }
    }

    // clear the leading m×m block of A: A11 += R C11 under left upper-right generators
    if m > 0 {
        let y = Matrix::diagonal(f, &(1..=m).map(|i| r.at(-i, i).clone()).collect::<Vec<_>>());
        let a11 = Matrix::from_rows(
            f,
            (1..=m).map(|i| (1..=m).map(|j| f.neg(r.at(i, j))).collect()).collect(),
        )?;
        let pieces = symmetric_completion(&y, &a11, kind.is_orthogonal())
            .map_err(|e| violation(format!("clearing A: {e}")))?;
        for p in pieces {
            let (i, j) = (p.i as SignedIndex, p.j as SignedIndex);
            r.left_mul(x(i, -j, p.t))?;
        }
    }
    for i in 1..=m {
        for j in 1..=l {
            if !f.is_zero(r.at(i, j)) {
                return Err(violation(format!("A entry ({i},{j}) survived before the interchange")));
            }
        }
    }
    let p_len = r.left.len();

    // h = ω_m⁻¹ · (left ops) · g · (right ops) lies in P
    let omega = omega_word(kind, m as usize, f)?;
    let mut h = r.g.clone();
    omega.inverse(f).apply_left(kind, &mut h)?;
    if !has_parabolic_shape(kind, &h) {
        return Err(violation("ω_m⁻¹-reduced matrix is not in P"));
    }
    let mut q = Reducer::new(kind, h, false);

    // column reduction of A to diag(1, …, 1, λ)
    for k in 1..=l {
        let c = (k..=l)
            .find(|&c| !f.is_zero(q.at(k, c)))
            .ok_or_else(|| violation("A singular inside P"))?;
        if c != k {
            q.right_mul(x(c, k, one.clone()))?;
        }
        let p = q.at(k, k).clone();
        let pinv = f.inv(&p)?;
        for j in k + 1..=l {
            let t = f.neg(&f.mul(q.at(k, j), &pinv));
            q.right_mul(x(k, j, t))?;
        }
        let pivot_one = if !f.is_one(&p) && k < l {
            let j = k + 1;
            q.right_mul(x(k, j, one.clone()))?;
            q.right_mul(x(j, k, f.mul(&f.sub(&one, &p), &pinv)))?;
            q.right_mul(x(k, j, f.neg(&p)))?;
            true
        } else {
            f.is_one(&p)
        };
        let pk = q.at(k, k).clone();
        let pkinv = f.inv(&pk)?;
        for i in 1..=l {
            if i != k {
                let t = f.neg(&f.mul(q.at(k, i), &pkinv));
                q.right_mul(x(k, i, t))?;
            }
        }
        if k < l && !pivot_one {
            return Err(violation("pivot not normalised"));
        }
    }
    // A is now diag(1, …, 1, λ)
    for i in 1..=l {
        for j in 1..=l {
            if i != j && !f.is_zero(q.at(i, j)) {
                return Err(violation(format!("A not diagonal at ({i},{j}) in P")));
            }
        }
    }
    if kind.is_odd() {
        for i in 1..=l {
            let two_d = f.add(q.at(i, i), q.at(i, i));
            let s = f.neg(&f.div(q.at(i, 0), &two_d)?);
            q.right_mul(x(i, 0, s))?;
        }
    }
    // B += A R: R = −A⁻¹B
    let y = Matrix::diagonal(f, &(1..=l).map(|i| q.at(i, i).clone()).collect::<Vec<_>>());
    let b = Matrix::from_rows(f, (1..=l).map(|i| (1..=l).map(|j| f.neg(q.at(i, -j))).collect()).collect())?;
    // ᵀ(A R) = ᵀR·A: completion of ᵀ(−B) against Y = A gives ᵀR
    let pieces = symmetric_completion(&y, &b.transpose(), kind.is_orthogonal())
        .map_err(|e| violation(format!("clearing B in P: {e}")))?;
    for p in pieces {
        let (i, j) = (p.i as SignedIndex, p.j as SignedIndex);
        let t = if i != j && kind.is_orthogonal() { f.neg(&p.t) } else { p.t };
        q.right_mul(x(i, -j, t))?;
    }
    let (lambda, theta) = q.final_diagonal()?;

    let p_word: Word = r.left[..p_len].iter().map(|s| s.inverse(f)).collect();
    let mut right_all: Word = r.right.iter().cloned().collect();
    right_all.extend(&q.right.iter().cloned().collect());
    let q_word = right_all.inverse(f);
    for s in p_word.symbols().iter().chain(q_word.symbols()) {
        match shape(kind, s)? {
            Shape::E1 | Shape::E2 | Shape::E4a => {}
            other => return Err(violation(format!("{other:?} generator in a parabolic witness"))),
        }
    }
    Ok(CosetResult { m: m as usize, p_word, q_word, lambda, theta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_matrix, symbol_shapes};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn kinds(l: usize) -> [GroupKind; 3] {
        [GroupKind::Sp(l), GroupKind::OEven(l), GroupKind::OOdd(l)]
    }

    #[test]
    fn parabolic_shapes() {
        let f = Field::prime(7).unwrap();
        for kind in kinds(2) {
            assert!(in_parabolic(kind, &Matrix::identity(&f, kind.dim())).unwrap());
            for (i, j) in symbol_shapes(kind) {
                let s = x(i, j, f.from_i64(2));
                let g = gen_matrix(kind, &s, &f).unwrap();
                let expect = matches!(shape(kind, &s).unwrap(), Shape::E1 | Shape::E2 | Shape::E4a);
                assert_eq!(in_parabolic(kind, &g).unwrap(), expect, "{kind} {s}");
            }
            let (w1, _) = omega_rep(kind, 1, &f).unwrap();
            assert!(!in_parabolic(kind, &w1).unwrap());
        }
    }

    #[test]
    fn omega_reps() {
        let f = Field::prime(5).unwrap();
        let (m0, w0) = omega_rep(GroupKind::Sp(2), 0, &f).unwrap();
        assert!(m0.is_identity() && w0.is_empty());
        let (m1, _) = omega_rep(GroupKind::Sp(2), 1, &f).unwrap();
        assert_eq!(m1, special_w(GroupKind::Sp(2), 1, &f).unwrap().evaluate(GroupKind::Sp(2), &f).unwrap());
        assert!(omega_rep(GroupKind::Sp(2), 3, &f).is_err());
        for kind in kinds(3) {
            for m in 0..=3 {
                let (g, _) = omega_rep(kind, m, &f).unwrap();
                let res = coset_index(kind, &g).unwrap();
                assert_eq!(res.m, m);
                assert_eq!(res.witness_product(kind, &f).unwrap(), g);
            }
        }
    }

    #[test]
    fn random_witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for f in [Field::prime(7).unwrap(), Field::rationals()] {
            for kind in kinds(3) {
                let shapes = symbol_shapes(kind);
                for _ in 0..20 {
                    let n = rng.gen_range(0..25);
                    let w: Word = (0..n)
                        .map(|_| {
                            let (i, j) = shapes[rng.gen_range(0..shapes.len())];
                            x(i, j, f.random_nonzero(&mut rng))
                        })
                        .collect();
                    let g = w.evaluate(kind, &f).unwrap();
                    let res = coset_index(kind, &g).unwrap();
                    assert_eq!(res.witness_product(kind, &f).unwrap(), g, "{kind} over {f}");
                    let c = g.block(kind.bottom(), kind.top(), kind.l(), kind.l());
                    assert_eq!(res.m, c.rank());
                    assert_eq!(res.m == 0, in_parabolic(kind, &g).unwrap());
                }
            }
        }
    }
}
