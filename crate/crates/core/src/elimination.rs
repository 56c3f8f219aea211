//! Gaussian elimination in Sp(2l), O(2l) and O(2l+1) using only elementary
//! generators (plus the row interchanges w_{i,-i} built from them).
//!
//! Left multiplications act on rows, right multiplications on columns. The
//! reduction ends at diag(1,…,1,λ,1,…,1,λ⁻¹), with an extra ϑ = ±1 in front
//! for odd orthogonal groups.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::forms::{is_member, GroupKind, SignedIndex};
use crate::generators::{apply_left, apply_right, special_w, torus_matrix, torus_word, x, GenSymbol, TorusParam, Word};
use crate::matrix::{skip_blank, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: GroupKind,
    pub field: Field,
    /// eval(row_word) · g · eval(col_word) = D
    pub row_word: Word,
    pub col_word: Word,
    pub lambda: Elem,
    /// ±1, odd kinds only
    pub theta: Option<i8>,
    /// number of row interchanges w_{i,-i} used
    pub rank_deficit: usize,
    /// generator applications performed
    pub ops: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    /// assert the block-shape facts and membership at every stage
    pub checked: bool,
}

/// A symmetric (or skew) elementary summand: t(e_ij + e_ji), t e_ii, or t(e_ij − e_ji).
/// Indices are 1-based with i <= j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPiece {
    pub i: usize,
    pub j: usize,
    pub t: Elem,
}

/// Splits X·Y⁻¹ into elementary (skew-)symmetric summands R with ΣR·Y = X.
/// Y must be an invertible diagonal matrix and Y·X (skew-)symmetric.
pub fn symmetric_completion(y: &Matrix, xm: &Matrix, skew: bool) -> Result<Vec<RPiece>> {
    let f = y.field().clone();
    let n = y.rows();
    if !y.is_square() || xm.rows() != n || xm.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "Y is {}x{}, X is {}x{}",
            y.rows(),
            y.cols(),
            xm.rows(),
            xm.cols()
        )));
    }
    if !y.is_diagonal() || (0..n).any(|i| y.is_zero_entry(i, i)) {
        return Err(Error::ShapeViolation("Y is not an invertible diagonal matrix".into()));
    }
    for i in 0..n {
        for j in i..n {
            let a = f.mul(y.get(i, i), xm.get(i, j));
            let b = f.mul(y.get(j, j), xm.get(j, i));
            let ok = if skew { f.is_zero(&f.add(&a, &b)) } else { a == b };
            if !ok {
                let what = if skew { "skew-symmetric" } else { "symmetric" };
                return Err(Error::ShapeViolation(format!("Y·X is not {what} at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        let start = if skew { i + 1 } else { i };
        for j in start..n {
            let t = f.div(xm.get(i, j), y.get(j, j))?;
            if !f.is_zero(&t) {
                out.push(RPiece { i: i + 1, j: j + 1, t });
            }
        }
    }
    Ok(out)
}

/// Matrix of ΣR (for tests and diagnostics).
pub fn pieces_matrix(field: &Field, n: usize, pieces: &[RPiece], skew: bool) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for p in pieces {
        let (i, j) = (p.i - 1, p.j - 1);
        let v = field.add(m.get(i, j), &p.t);
        m.set(i, j, v);
        if i != j {
            let s = if skew { field.neg(&p.t) } else { p.t.clone() };
            let v = field.add(m.get(j, i), &s);
            m.set(j, i, v);
        }
    }
    m
}

/// Working matrix together with the generators applied to it so far.
pub(crate) struct Reducer {
    pub kind: GroupKind,
    pub field: Field,
    pub g: Matrix,
    /// left multipliers in application order
    pub left: Vec<GenSymbol>,
    /// right multipliers in application order
    pub right: Vec<GenSymbol>,
    pub ops: usize,
    pub checked: bool,
}

fn violation(msg: impl Into<String>) -> Error {
    Error::InternalInvariantViolation(msg.into())
}

impl Reducer {
    pub fn new(kind: GroupKind, g: Matrix, checked: bool) -> Reducer {
        let field = g.field().clone();
        Reducer { kind, field, g, left: Vec::new(), right: Vec::new(), ops: 0, checked }
    }

    #[inline]
    pub fn at(&self, i: SignedIndex, j: SignedIndex) -> &Elem {
        self.g.get(self.kind.pos(i), self.kind.pos(j))
    }

    fn is_zero_at(&self, i: SignedIndex, j: SignedIndex) -> bool {
        self.field.is_zero(self.at(i, j))
    }

    pub fn l(&self) -> SignedIndex {
        self.kind.l() as SignedIndex
    }

    pub fn left_mul(&mut self, s: GenSymbol) -> Result<()> {
        if let GenSymbol::X { t, .. } = &s {
            if self.field.is_zero(t) {
                return Ok(());
            }
        }
        apply_left(self.kind, &s, &mut self.g)?;
        self.left.push(s);
        self.ops += 1;
        Ok(())
    }

    pub fn right_mul(&mut self, s: GenSymbol) -> Result<()> {
        if let GenSymbol::X { t, .. } = &s {
            if self.field.is_zero(t) {
                return Ok(());
            }
        }
        apply_right(self.kind, &s, &mut self.g)?;
        self.right.push(s);
        self.ops += 1;
        Ok(())
    }

    /// g <- eval(w) g
    pub fn left_word(&mut self, w: &Word) -> Result<()> {
        for s in w.symbols().iter().rev() {
            self.left_mul(s.clone())?;
        }
        Ok(())
    }

    pub fn check_member(&self, stage: &str) -> Result<()> {
        if self.checked && !is_member(self.kind, &self.g)? {
            return Err(violation(format!("left the group {stage}")));
        }
        Ok(())
    }

    /// Reduces the A block (rows and columns 1..l) to diag(1,…,1,d_m,0,…,0)
    /// with transvections x_{i,j}; d_m = 1 unless m = l. Returns m = rank A.
    pub fn diagonalize_a(&mut self) -> Result<usize> {
        let l = self.l();
        let f = self.field.clone();
        let one = f.one();
        let mut m = 0;
        for k in 1..=l {
            let mut piv = None;
            'search: for c in k..=l {
                for r in k..=l {
                    if !self.is_zero_at(r, c) {
                        piv = Some((r, c));
                        break 'search;
                    }
                }
            }
            let Some((r, c)) = piv else { break };
            if c != k {
                self.right_mul(x(c, k, one.clone()))?;
            }
            if r != k {
                self.left_mul(x(k, r, one.clone()))?;
            }
            let p = self.at(k, k).clone();
            let pinv = f.inv(&p)?;
            for i in k + 1..=l {
                let t = f.neg(&f.mul(self.at(i, k), &pinv));
                self.left_mul(x(i, k, t))?;
            }
            for j in k + 1..=l {
                let t = f.neg(&f.mul(self.at(k, j), &pinv));
                self.right_mul(x(k, j, t))?;
            }
            m += 1;
        }
        // diag(p, q) -> diag(1, pq) on consecutive slots; q may be 0
        for k in 1..(m as SignedIndex + 1).min(l) {
            let p = self.at(k, k).clone();
            if f.is_one(&p) {
                continue;
            }
            let pinv = f.inv(&p)?;
            let j = k + 1;
            self.left_mul(x(j, k, one.clone()))?;
            self.left_mul(x(k, j, f.mul(&f.sub(&one, &p), &pinv)))?;
            self.left_mul(x(j, k, f.neg(&p)))?;
            let t = f.neg(self.at(k, j));
            self.right_mul(x(k, j, t))?;
        }
        if self.checked {
            for i in 1..=l {
                for j in 1..=l {
                    if i != j && !self.is_zero_at(i, j) {
                        return Err(violation(format!("A not diagonal at ({i},{j}) after diagonalisation")));
                    }
                }
            }
        }
        Ok(m as usize)
    }

    /// Odd kinds: clears X_i (row 0) and E_i (column 0) wherever d_i ≠ 0.
    pub fn clear_x_and_e(&mut self) -> Result<()> {
        let f = self.field.clone();
        for i in 1..=self.l() {
            if self.is_zero_at(i, i) {
                continue;
            }
            let d = self.at(i, i).clone();
            let t = f.neg(&f.div(self.at(0, i), &d)?);
            self.left_mul(x(0, i, t))?;
            let two_d = f.add(&d, &d);
            let s = f.neg(&f.div(self.at(i, 0), &two_d)?);
            self.right_mul(x(i, 0, s))?;
        }
        Ok(())
    }

    fn diag_block(&self, m: usize, invert: bool) -> Result<Matrix> {
        let f = &self.field;
        let mut d = Vec::with_capacity(m);
        for i in 1..=m as SignedIndex {
            let v = self.at(i, i);
            d.push(if invert { f.inv(v)? } else { v.clone() });
        }
        Ok(Matrix::diagonal(f, &d))
    }

    /// Block of entries (r(i), c(j)) for 1 <= i, j <= m, negated.
    fn neg_block(&self, m: usize, r: impl Fn(SignedIndex) -> SignedIndex, c: impl Fn(SignedIndex) -> SignedIndex) -> Matrix {
        let f = &self.field;
        let rows = (1..=m as SignedIndex)
            .map(|i| (1..=m as SignedIndex).map(|j| f.neg(self.at(r(i), c(j)))).collect())
            .collect();
        Matrix::from_rows(f, rows).expect("square block")
    }

    /// Clears the leading m×m block of C with lower-left generators; A's leading
    /// block must be diagonal and invertible.
    pub fn clear_c(&mut self, m: usize) -> Result<()> {
        if m == 0 {
            return Ok(());
        }
        let y = self.diag_block(m, false)?;
        let xm = self.neg_block(m, |i| -i, |j| j);
        let skew = self.kind.is_orthogonal();
        let pieces = symmetric_completion(&y, &xm, skew).map_err(|e| violation(format!("clearing C: {e}")))?;
        for p in pieces {
            let (i, j) = (p.i as SignedIndex, p.j as SignedIndex);
            self.left_mul(x(-i, j, p.t))?;
        }
        for i in 1..=m as SignedIndex {
            for j in 1..=m as SignedIndex {
                if !self.is_zero_at(-i, j) {
                    return Err(violation(format!("C entry ({},{j}) survived clearing", -i)));
                }
            }
        }
        Ok(())
    }

    /// With C = 0 and A diagonal, clears B with upper-right generators.
    pub fn clear_b(&mut self) -> Result<()> {
        let l = self.kind.l();
        let y = self.diag_block(l, true)?;
        let xm = self.neg_block(l, |i| i, |j| -j);
        let skew = self.kind.is_orthogonal();
        let pieces = symmetric_completion(&y, &xm, skew).map_err(|e| violation(format!("clearing B: {e}")))?;
        for p in pieces {
            let (i, j) = (p.i as SignedIndex, p.j as SignedIndex);
            self.left_mul(x(i, -j, p.t))?;
        }
        Ok(())
    }

    /// Checks the shape once C is zero: D = ᵀA⁻¹, and X, E, F, Y vanish for odd kinds.
    pub fn check_after_c(&self) -> Result<()> {
        if !self.checked {
            return Ok(());
        }
        let l = self.l();
        let f = &self.field;
        for i in 1..=l {
            for j in 1..=l {
                if !self.is_zero_at(-i, j) {
                    return Err(violation("C is not zero"));
                }
                let want = if i == j { f.inv(self.at(i, i))? } else { f.zero() };
                if self.at(-i, -j) != &want {
                    return Err(violation(format!("D differs from the inverse transpose of A at ({},{})", -i, -j)));
                }
            }
            if self.kind.is_odd() {
                for (r, c) in [(0, i), (i, 0), (-i, 0), (0, -i)] {
                    if !self.is_zero_at(r, c) {
                        return Err(violation(format!("odd block entry ({r},{c}) nonzero after clearing C")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Reads λ and ϑ off the final matrix, which must be exactly diagonal of the expected form.
    pub fn final_diagonal(&self) -> Result<(Elem, Option<i8>)> {
        let f = &self.field;
        if !self.g.is_diagonal() {
            return Err(violation("final matrix is not diagonal"));
        }
        let l = self.l();
        for i in 1..l {
            if !f.is_one(self.at(i, i)) || !f.is_one(self.at(-i, -i)) {
                return Err(violation(format!("diagonal entry at {i} is not 1")));
            }
        }
        let lambda = self.at(l, l).clone();
        if f.is_zero(&lambda) || f.mul(&lambda, self.at(-l, -l)) != f.one() {
            return Err(violation("last diagonal pair is not (λ, λ⁻¹)"));
        }
        let theta = if self.kind.is_odd() {
            let a = self.at(0, 0);
            if f.is_one(a) {
                Some(1)
            } else if f.is_one(&f.neg(a)) {
                Some(-1)
            } else {
                return Err(violation("ϑ² ≠ 1"));
            }
        } else {
            None
        };
        Ok((lambda, theta))
    }
}

pub(crate) fn validate(kind: GroupKind, g: &Matrix) -> Result<()> {
    kind.check_field(g.field())?;
    if !is_member(kind, g)? {
        return Err(Error::NotAMember(kind.to_string()));
    }
    Ok(())
}

pub fn decompose(kind: GroupKind, g: &Matrix) -> Result<Decomposition> {
    decompose_with(kind, g, Options::default())
}

pub fn decompose_with(kind: GroupKind, g: &Matrix, opts: Options) -> Result<Decomposition> {
    validate(kind, g)?;
    let field = g.field().clone();
    let l = kind.l();
    let mut r = Reducer::new(kind, g.clone(), opts.checked);

    let mut m = r.diagonalize_a()?;
    if kind.is_odd() {
        r.clear_x_and_e()?;
    }
    r.check_member("after diagonalising A")?;
    let mut rank_deficit = 0;
    if m < l {
        if opts.checked {
            // A = diag(I_m, 0) forces the upper-right part of C to vanish
            for i in 1..=m as SignedIndex {
                for j in m as SignedIndex + 1..=l as SignedIndex {
                    if !r.is_zero_at(-i, j) {
                        return Err(violation(format!("C entry ({},{j}) nonzero with A singular", -i)));
                    }
                }
            }
        }
        r.clear_c(m)?;
        for i in m + 1..=l {
            let w = special_w(kind, i, &field)?;
            r.left_word(&w)?;
        }
        rank_deficit = l - m;
        m = r.diagonalize_a()?;
        if m < l {
            return Err(violation(format!("A has rank {m} < {l} after row interchanges")));
        }
        if kind.is_odd() {
            r.clear_x_and_e()?;
        }
        r.check_member("after row interchanges")?;
    }
    r.clear_c(l)?;
    r.check_after_c()?;
    r.check_member("after clearing C")?;
    r.clear_b()?;
    let (lambda, theta) = r.final_diagonal()?;

    let mut row_word: Word = r.left.iter().cloned().collect();
    row_word = Word::from(row_word.symbols().iter().rev().cloned().collect::<Vec<_>>());
    Ok(Decomposition {
        kind,
        field,
        row_word,
        col_word: r.right.into_iter().collect(),
        lambda,
        theta,
        rank_deficit,
        ops: r.ops,
    })
}

impl Decomposition {
    /// D = diag(ϑ?, 1, …, λ, 1, …, λ⁻¹)
    pub fn diagonal(&self) -> Matrix {
        let theta = self.theta.map(|t| self.field.from_i64(t as i64));
        torus_matrix(self.kind, &self.field, &self.lambda, theta.as_ref()).expect("λ ≠ 0")
    }

    pub fn determinant(&self) -> i8 {
        match self.kind {
            GroupKind::Sp(_) => 1,
            GroupKind::OEven(_) => {
                if self.rank_deficit % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            GroupKind::OOdd(_) => self.theta.unwrap_or(1),
        }
    }

    pub fn to_text(&self) -> String {
        let f = &self.field;
        let theta = match self.theta {
            Some(t) => t.to_string(),
            None => "none".into(),
        };
        format!(
            "decomposition kind={} lambda={} theta={} rankdeficit={}\nrowword\n{}colword\n{}",
            self.kind,
            f.format_elem(&self.lambda),
            theta,
            self.rank_deficit,
            self.row_word.to_text(f),
            self.col_word.to_text(f)
        )
    }

    pub fn from_text(field: &Field, text: &str) -> Result<Decomposition> {
        let mut lines = text.lines().peekable();
        skip_blank(&mut lines);
        let header = lines.next().ok_or_else(|| Error::Parse("empty decomposition".into()))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("decomposition") {
            return Err(Error::Parse(format!("bad decomposition header '{header}'")));
        }
        let (mut kind, mut lambda, mut theta, mut deficit) = (None, None, None, None);
        for kv in parts {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("bad field '{kv}'")))?;
            match k {
                "kind" => kind = Some(v.parse::<GroupKind>()?),
                "lambda" => lambda = Some(field.parse_elem(v)?),
                "theta" => {
                    theta = Some(match v {
                        "none" => None,
                        "1" => Some(1),
                        "-1" => Some(-1),
                        _ => return Err(Error::Parse(format!("bad theta '{v}'"))),
                    })
                }
                "rankdeficit" => {
                    deficit = Some(v.parse().map_err(|_| Error::Parse(format!("bad rankdeficit '{v}'")))?)
                }
                _ => return Err(Error::Parse(format!("unknown field '{k}'"))),
            }
        }
        let missing = |n: &str| Error::Parse(format!("decomposition header lacks {n}"));
        let kind = kind.ok_or_else(|| missing("kind"))?;
        let mut section = |name: &str| -> Result<Word> {
            skip_blank(&mut lines);
            if lines.next().map(str::trim) != Some(name) {
                return Err(Error::Parse(format!("expected '{name}' section")));
            }
            Word::parse_lines(field, &mut lines)
        };
        let row_word = section("rowword")?;
        let col_word = section("colword")?;
        skip_blank(&mut lines);
        if let Some(rest) = lines.next() {
            return Err(Error::Parse(format!("unexpected line '{rest}'")));
        }
        row_word.validate(kind)?;
        col_word.validate(kind)?;
        let lambda = lambda.ok_or_else(|| missing("lambda"))?;
        if field.is_zero(&lambda) {
            return Err(Error::ZeroLambda);
        }
        Ok(Decomposition {
            kind,
            field: field.clone(),
            row_word,
            col_word,
            lambda,
            theta: theta.ok_or_else(|| missing("theta"))?,
            rank_deficit: deficit.ok_or_else(|| missing("rankdeficit"))?,
            ops: 0,
        })
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// g = eval(row_word)⁻¹ · D · eval(col_word)⁻¹
pub fn reconstruct(dec: &Decomposition) -> Result<Matrix> {
    let mut g = dec.diagonal();
    dec.row_word.inverse(&dec.field).apply_left(dec.kind, &mut g)?;
    dec.col_word.inverse(&dec.field).apply_right(dec.kind, &mut g)?;
    Ok(g)
}

/// A word for g in Sp: inverse(row_word) ++ h_l(λ) ++ inverse(col_word).
pub fn full_word_sp(dec: &Decomposition) -> Result<Word> {
    if !matches!(dec.kind, GroupKind::Sp(_)) {
        return Err(Error::WrongKind { expected: "sp".into(), found: dec.kind.to_string() });
    }
    let f = &dec.field;
    let mut w = dec.row_word.inverse(f);
    w.extend(&torus_word(dec.kind, f, &TorusParam::Lambda(dec.lambda.clone()))?);
    w.extend(&dec.col_word.inverse(f));
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::symbol_shapes;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_word(kind: GroupKind, f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Word {
        let shapes = symbol_shapes(kind);
        (0..n)
            .map(|_| {
                let k = rng.gen_range(0..shapes.len() + 1);
                if k == shapes.len() && matches!(kind, GroupKind::OEven(_)) {
                    GenSymbol::Wl
                } else {
                    let (i, j) = shapes[k % shapes.len()];
                    x(i, j, f.random_nonzero(rng))
                }
            })
            .collect()
    }

    fn kinds(l: usize) -> [GroupKind; 3] {
        [GroupKind::Sp(l), GroupKind::OEven(l), GroupKind::OOdd(l)]
    }

    #[test]
    fn identity_decomposes_trivially() {
        let f = Field::prime(7).unwrap();
        for kind in kinds(3) {
            let d = decompose(kind, &Matrix::identity(&f, kind.dim())).unwrap();
            assert!(d.row_word.is_empty() && d.col_word.is_empty());
            assert!(f.is_one(&d.lambda));
            assert_eq!(d.theta, kind.is_odd().then_some(1));
            assert!(reconstruct(&d).unwrap().is_identity());
        }
    }

    #[test]
    fn torus_element_reports_lambda() {
        let f = Field::prime(11).unwrap();
        let kind = GroupKind::OEven(2);
        let g = torus_matrix(kind, &f, &f.from_i64(3), None).unwrap();
        let d = decompose(kind, &g).unwrap();
        assert_eq!(d.lambda, f.from_i64(3));
        assert_eq!(reconstruct(&d).unwrap(), g);
    }

    #[test]
    fn round_trip_random_words_checked() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for f in [Field::prime(5).unwrap(), Field::extension(7, 2).unwrap(), Field::rationals()] {
            for l in [2, 3, 4] {
                for kind in kinds(l) {
                    for _ in 0..15 {
                        let w = random_word(kind, &f, 10 * l, &mut rng);
                        let g = w.evaluate(kind, &f).unwrap();
                        let d = decompose_with(kind, &g, Options { checked: true }).unwrap();
                        assert_eq!(reconstruct(&d).unwrap(), g, "{kind} over {f}");
                        let mut h = g.clone();
                        d.row_word.apply_left(kind, &mut h).unwrap();
                        d.col_word.apply_right(kind, &mut h).unwrap();
                        assert_eq!(h, d.diagonal());
                        if kind.is_odd() {
                            assert!(d.theta.is_some());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn singular_a_takes_interchange_path() {
        let f = Field::prime(101).unwrap();
        for l in [2, 3] {
            for kind in kinds(l) {
                for i in 1..=l {
                    let g = special_w(kind, i, &f).unwrap().evaluate(kind, &f).unwrap();
                    let d = decompose_with(kind, &g, Options { checked: true }).unwrap();
                    assert!(d.rank_deficit >= 1);
                    assert_eq!(reconstruct(&d).unwrap(), g);
                }
            }
        }
        let kind = GroupKind::OEven(2);
        let wl = crate::generators::gen_matrix(kind, &GenSymbol::Wl, &f).unwrap();
        let d = decompose(kind, &wl).unwrap();
        assert_eq!(reconstruct(&d).unwrap(), wl);
        assert_eq!(d.determinant(), -1);
    }

    #[test]
    fn full_word_for_symplectic() {
        let f = Field::prime(11).unwrap();
        let kind = GroupKind::Sp(2);
        let g = torus_matrix(kind, &f, &f.from_i64(5), None).unwrap();
        let d = decompose(kind, &g).unwrap();
        let w = full_word_sp(&d).unwrap();
        assert_eq!(w.evaluate(kind, &f).unwrap(), Matrix::diagonal(&f, &[1, 5, 1, 9].map(|v| f.from_i64(v))));

        let f = Field::extension(7, 2).unwrap();
        let kind = GroupKind::Sp(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let g = random_word(kind, &f, 30, &mut rng).evaluate(kind, &f).unwrap();
            let d = decompose(kind, &g).unwrap();
            assert_eq!(full_word_sp(&d).unwrap().evaluate(kind, &f).unwrap(), g);
        }
        let d = decompose(GroupKind::OOdd(2), &Matrix::identity(&f, 5)).unwrap();
        assert!(matches!(full_word_sp(&d), Err(Error::WrongKind { .. })));
    }

    #[test]
    fn rejects_bad_input() {
        let f = Field::prime(7).unwrap();
        let mut g = Matrix::identity(&f, 4);
        g.set(0, 0, f.from_i64(2));
        assert!(matches!(decompose(GroupKind::Sp(2), &g), Err(Error::NotAMember(_))));
        let f2 = Field::prime(2).unwrap();
        assert!(matches!(
            decompose(GroupKind::OEven(2), &Matrix::identity(&f2, 4)),
            Err(Error::BadCharacteristic { .. })
        ));
        assert!(matches!(
            decompose(GroupKind::Sp(2), &Matrix::identity(&f, 5)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn completion_examples() {
        let f = Field::prime(13).unwrap();
        let lam = f.from_i64(3);
        let y = Matrix::diagonal(&f, &[f.one(), lam.clone()]);
        assert!(symmetric_completion(&y, &Matrix::zeros(&f, 2, 2), false).unwrap().is_empty());
        // X = [[a, λb], [b, c]]
        let (a, b, c) = (f.from_i64(2), f.from_i64(5), f.from_i64(7));
        let xm = Matrix::from_rows(&f, vec![vec![a.clone(), f.mul(&lam, &b)], vec![b.clone(), c.clone()]]).unwrap();
        let pieces = symmetric_completion(&y, &xm, false).unwrap();
        assert_eq!(pieces.len(), 3);
        assert_eq!(pieces[2].t, f.div(&c, &lam).unwrap());
        assert_eq!(pieces_matrix(&f, 2, &pieces, false).mul(&y).unwrap(), xm);

        let xs = Matrix::from_rows(&f, vec![vec![f.zero(), f.mul(&lam, &b)], vec![f.neg(&b), f.zero()]]).unwrap();
        let pieces = symmetric_completion(&y, &xs, true).unwrap();
        assert_eq!(pieces_matrix(&f, 2, &pieces, true).mul(&y).unwrap(), xs);

        let bad = Matrix::from_i64(&f, &[&[0, 1], &[0, 0]]).unwrap();
        assert!(matches!(symmetric_completion(&y, &bad, false), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn decomposition_text_round_trip() {
        let f = Field::extension(5, 2).unwrap();
        let kind = GroupKind::OOdd(2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_word(kind, &f, 20, &mut rng).evaluate(kind, &f).unwrap();
        let d = decompose(kind, &g).unwrap();
        let back = Decomposition::from_text(&f, &d.to_text()).unwrap();
        assert_eq!(reconstruct(&back).unwrap(), g);
        assert_eq!(back.row_word, d.row_word);
        assert_eq!(back.theta, d.theta);
    }
}
