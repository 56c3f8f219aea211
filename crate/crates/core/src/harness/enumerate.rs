//! Exhaustive enumeration of small groups by breadth-first closure, with every
//! element pushed through decomposition, the spinor norm and the coset index.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::coset::coset_index;
use crate::elimination::{decompose, full_word_sp, reconstruct};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::forms::GroupKind;
use crate::generators::{gen_matrix, symbol_shapes, torus_matrix, x, GenSymbol};
use crate::matrix::Matrix;
use crate::spinor::determinant_generic;

pub const ORDER_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub kind: GroupKind,
    pub field: String,
    pub order: usize,
    pub expected_order: BigUint,
    /// BFS levels needed to close the set
    pub depth: usize,
    pub round_trip_pass: usize,
    pub round_trip_fail: usize,
    /// Sp only: elements whose full word evaluates back to them
    pub full_word_pass: Option<usize>,
    pub det_agree: usize,
    pub det_disagree: usize,
    pub coset_witness_pass: usize,
    pub coset_histogram: BTreeMap<usize, usize>,
    /// orthogonal kinds only; keys are square classes
    pub spinor_histogram: BTreeMap<String, usize>,
    /// orthogonal kinds only: |SO| and |SO ∩ ker Θ|
    pub so_count: Option<usize>,
    pub omega_count: Option<usize>,
}

/// |G| for G = Sp(2l,q), O⁺(2l,q) or O(2l+1,q).
pub fn group_order(kind: GroupKind, q: &BigUint) -> BigUint {
    let l = kind.l() as u32;
    let prod = |n: u32| (1..=n).fold(BigUint::one(), |acc, i| acc * (q.pow(2 * i) - 1u32));
    match kind {
        GroupKind::Sp(_) => q.pow(l * l) * prod(l),
        GroupKind::OEven(_) => BigUint::from(2u32) * q.pow(l * (l - 1)) * (q.pow(l) - 1u32) * prod(l - 1),
        GroupKind::OOdd(_) => BigUint::from(2u32) * q.pow(l * l) * prod(l),
    }
}

/// Generating set for the closure: every elementary generator at every nonzero
/// scalar, w_l, and for orthogonal kinds the diagonal torus (and −1 in the e_0 slot).
fn generating_set(kind: GroupKind, field: &Field, scalars: &[crate::field::Elem]) -> Result<Vec<Matrix>> {
    let mut gens = Vec::new();
    for (i, j) in symbol_shapes(kind) {
        for t in scalars {
            gens.push(gen_matrix(kind, &x(i, j, t.clone()), field)?);
        }
    }
    if let GroupKind::OEven(_) = kind {
        gens.push(gen_matrix(kind, &GenSymbol::Wl, field)?);
    }
    if kind.is_orthogonal() {
        for t in scalars {
            gens.push(torus_matrix(kind, field, t, None)?);
        }
    }
    if kind.is_odd() {
        let m1 = field.from_i64(-1);
        gens.push(torus_matrix(kind, field, &field.one(), Some(&m1))?);
    }
    Ok(gens)
}

/// All elements of the group, in breadth-first order from the identity.
pub fn enumerate_elements(kind: GroupKind, field: &Field) -> Result<(Vec<Matrix>, usize)> {
    kind.check_field(field)?;
    let q = field
        .cardinality()
        .ok_or_else(|| Error::GroupTooLarge(format!("{kind} over an infinite field")))?;
    let expected = group_order(kind, &q);
    if expected > BigUint::from(ORDER_LIMIT) {
        return Err(Error::GroupTooLarge(expected.to_string()));
    }
    let scalars: Vec<_> = field
        .elements(ORDER_LIMIT)
        .expect("finite field")
        .into_iter()
        .filter(|e| !field.is_zero(e))
        .collect();
    let gens = generating_set(kind, field, &scalars)?;

    let id = Matrix::identity(field, kind.dim());
    let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
    let mut all = vec![id];
    let mut frontier = 0..1;
    let mut depth = 0;
    while !frontier.is_empty() {
        let start = all.len();
        for idx in frontier.clone() {
            for gen in &gens {
                let h = all[idx].mul(gen)?;
                if seen.insert(h.clone()) {
                    all.push(h);
                }
            }
        }
        if all.len() > start {
            depth += 1;
        }
        frontier = start..all.len();
    }
    Ok((all, depth))
}

struct ElementCheck {
    round_trip: bool,
    full_word: bool,
    det_agree: bool,
    coset_m: Option<usize>,
    coset_witness: bool,
    spinor: Option<String>,
    in_so: bool,
}

fn check_element(kind: GroupKind, field: &Field, g: &Matrix) -> ElementCheck {
    let dec = decompose(kind, g);
    let round_trip = dec.as_ref().is_ok_and(|d| reconstruct(d).is_ok_and(|h| &h == g));
    let full_word = match (&dec, kind) {
        (Ok(d), GroupKind::Sp(_)) => {
            full_word_sp(d).and_then(|w| w.evaluate(kind, field)).is_ok_and(|h| &h == g)
        }
        _ => false,
    };
    let det_dec = dec.as_ref().map(|d| d.determinant()).ok();
    let det_agree = det_dec.is_some() && determinant_generic(g).ok() == det_dec;
    let coset = coset_index(kind, g);
    let coset_witness = coset.as_ref().is_ok_and(|c| c.witness_product(kind, field).is_ok_and(|h| &h == g));
    let spinor = match (&dec, kind.is_orthogonal()) {
        (Ok(d), true) => field.square_class(&d.lambda).ok().map(|c| c.to_string()),
        _ => None,
    };
    ElementCheck {
        round_trip,
        full_word,
        det_agree,
        coset_m: coset.ok().map(|c| c.m),
        coset_witness,
        spinor,
        in_so: det_dec == Some(1),
    }
}

pub fn enumerate_small_group(kind: GroupKind, field: &Field) -> Result<EnumerationReport> {
    let (elements, depth) = enumerate_elements(kind, field)?;
    let q = field.cardinality().expect("finite field");
    let checks: Vec<ElementCheck> = elements.par_iter().map(|g| check_element(kind, field, g)).collect();

    let count = |p: &dyn Fn(&ElementCheck) -> bool| checks.iter().filter(|c| p(c)).count();
    let round_trip_pass = count(&|c| c.round_trip);
    let det_agree = count(&|c| c.det_agree);
    let mut coset_histogram = BTreeMap::new();
    let mut spinor_histogram = BTreeMap::new();
    for c in &checks {
        if let Some(m) = c.coset_m {
            *coset_histogram.entry(m).or_insert(0) += 1;
        }
        if let Some(s) = &c.spinor {
            *spinor_histogram.entry(s.clone()).or_insert(0) += 1;
        }
    }
    let orth = kind.is_orthogonal();
    let trivial = field.trivial_class().to_string();
    Ok(EnumerationReport {
        kind,
        field: field.spec().to_string(),
        order: elements.len(),
        expected_order: group_order(kind, &q),
        depth,
        round_trip_pass,
        round_trip_fail: elements.len() - round_trip_pass,
        full_word_pass: matches!(kind, GroupKind::Sp(_)).then(|| count(&|c| c.full_word)),
        det_agree,
        det_disagree: elements.len() - det_agree,
        coset_witness_pass: count(&|c| c.coset_witness),
        coset_histogram,
        spinor_histogram,
        so_count: orth.then(|| count(&|c| c.in_so)),
        omega_count: orth.then(|| count(&|c| c.in_so && c.spinor.as_deref() == Some(trivial.as_str()))),
    })
}

impl fmt::Display for EnumerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind={} field={}", self.kind, self.field)?;
        writeln!(f, "order={} expected={} depth={}", self.order, self.expected_order, self.depth)?;
        writeln!(f, "roundtrip pass={} fail={}", self.round_trip_pass, self.round_trip_fail)?;
        if let Some(n) = self.full_word_pass {
            writeln!(f, "fullword pass={n}")?;
        }
        writeln!(f, "determinant agree={} disagree={}", self.det_agree, self.det_disagree)?;
        let hist = |h: &mut dyn Iterator<Item = String>| h.collect::<Vec<_>>().join(" ");
        writeln!(
            f,
            "cosets {} witness_pass={}",
            hist(&mut self.coset_histogram.iter().map(|(m, n)| format!("m{m}={n}"))),
            self.coset_witness_pass
        )?;
        if let (Some(so), Some(om)) = (self.so_count, self.omega_count) {
            writeln!(
                f,
                "spinor {}",
                hist(&mut self.spinor_histogram.iter().map(|(c, n)| format!("{c}={n}")))
            )?;
            writeln!(f, "so={so} omega={om}")?;
        }
        Ok(())
    }
}

impl EnumerationReport {
    pub fn order_matches(&self) -> bool {
        self.expected_order.to_usize() == Some(self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_formulas() {
        let q2 = BigUint::from(2u32);
        let q3 = BigUint::from(3u32);
        assert_eq!(group_order(GroupKind::Sp(2), &q2), BigUint::from(720u32));
        assert_eq!(group_order(GroupKind::OEven(2), &q3), BigUint::from(1152u32));
        assert_eq!(group_order(GroupKind::OOdd(2), &q3), BigUint::from(103680u32));
    }

    #[test]
    fn guard_and_infinite_fields() {
        let f = Field::prime(101).unwrap();
        assert!(matches!(enumerate_elements(GroupKind::Sp(3), &f), Err(Error::GroupTooLarge(_))));
        assert!(matches!(
            enumerate_elements(GroupKind::Sp(2), &Field::rationals()),
            Err(Error::GroupTooLarge(_))
        ));
    }

    #[test]
    fn sp4_over_gf2() {
        let f = Field::prime(2).unwrap();
        let r = enumerate_small_group(GroupKind::Sp(2), &f).unwrap();
        assert_eq!(r.order, 720);
        assert!(r.order_matches());
        assert_eq!(r.round_trip_fail, 0);
        assert_eq!(r.full_word_pass, Some(720));
        assert_eq!(r.coset_histogram.len(), 3);
    }
}
