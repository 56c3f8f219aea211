//! Random group elements, drawn as random words in the generators.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::forms::GroupKind;
use crate::generators::{shape, symbol_shapes, torus_matrix, x, GenSymbol, Shape, Word};
use crate::matrix::Matrix;

pub fn default_length(kind: GroupKind) -> usize {
    10 * kind.l()
}

/// Uniform symbol shapes (w_l counts as one more shape for O(2l)) with uniform nonzero t.
pub fn sample_word<R: Rng + ?Sized>(kind: GroupKind, field: &Field, len: usize, rng: &mut R) -> Result<Word> {
    if len == 0 {
        return Err(Error::InvalidArgument("word length must be at least 1".into()));
    }
    kind.check_field(field)?;
    let shapes = symbol_shapes(kind);
    let extra = usize::from(matches!(kind, GroupKind::OEven(_)));
    Ok((0..len)
        .map(|_| {
            let k = rng.gen_range(0..shapes.len() + extra);
            match shapes.get(k) {
                Some(&(i, j)) => x(i, j, field.random_nonzero(rng)),
                None => GenSymbol::Wl,
            }
        })
        .collect())
}

/// Seeded random word and its evaluation.
pub fn sample_element(kind: GroupKind, field: &Field, word_length: usize, seed: u64) -> Result<(Word, Matrix)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = sample_word(kind, field, word_length, &mut rng)?;
    let g = w.evaluate(kind, field)?;
    Ok((w, g))
}

/// A random word in the generators that lie in the Siegel parabolic.
pub fn sample_parabolic_word<R: Rng + ?Sized>(kind: GroupKind, field: &Field, len: usize, rng: &mut R) -> Result<Word> {
    kind.check_field(field)?;
    let shapes: Vec<_> = symbol_shapes(kind)
        .into_iter()
        .filter(|&(i, j)| {
            matches!(shape(kind, &x(i, j, field.one())), Ok(Shape::E1 | Shape::E2 | Shape::E4a))
        })
        .collect();
    Ok((0..len)
        .map(|_| {
            let (i, j) = shapes[rng.gen_range(0..shapes.len())];
            x(i, j, field.random_nonzero(rng))
        })
        .collect())
}

/// A random word times a random torus element, and for O(2l+1) a random sign in the
/// e_0 slot; reaches elements of every spinor class and determinant.
pub fn sample_member<R: Rng + ?Sized>(kind: GroupKind, field: &Field, len: usize, rng: &mut R) -> Result<Matrix> {
    let w = sample_word(kind, field, len, rng)?;
    let lambda = field.random_nonzero(rng);
    let theta = (kind.is_odd() && rng.gen_bool(0.5)).then(|| field.from_i64(-1));
    let mut g = torus_matrix(kind, field, &lambda, theta.as_ref())?;
    w.apply_left(kind, &mut g)?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::is_member;

    #[test]
    fn samples_are_members_and_deterministic() {
        let f = Field::prime(11).unwrap();
        for kind in [GroupKind::Sp(3), GroupKind::OEven(3), GroupKind::OOdd(3)] {
            let (w, g) = sample_element(kind, &f, default_length(kind), 42).unwrap();
            assert_eq!(w.len(), 30);
            assert!(is_member(kind, &g).unwrap());
            assert_eq!(sample_element(kind, &f, 30, 42).unwrap().0, w);
            assert_ne!(sample_element(kind, &f, 30, 43).unwrap().0, w);
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            assert!(is_member(kind, &sample_member(kind, &f, 10, &mut rng).unwrap()).unwrap());
        }
    }

    #[test]
    fn rejects_empty_words_and_char_two() {
        let f = Field::prime(11).unwrap();
        assert!(matches!(sample_element(GroupKind::Sp(2), &f, 0, 1), Err(Error::InvalidArgument(_))));
        let f2 = Field::prime(2).unwrap();
        assert!(matches!(sample_element(GroupKind::OOdd(2), &f2, 5, 1), Err(Error::BadCharacteristic { .. })));
    }
}
