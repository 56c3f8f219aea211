//! Chevalley elementary generators, words over them, and the derived
//! elements (row interchanges w_{i,-i} and torus elements) built from them.
//!
//! Every generator is I + N with N supported on at most four entries, so
//! multiplying a matrix by a generator is a handful of row (or column)
//! updates rather than a full product.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::forms::{GroupKind, SignedIndex};
use crate::matrix::{skip_blank, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GenSymbol {
    /// x_{i,j}(t); long roots x_{i,-i}, x_{-i,i} (Sp) and x_{i,0}, x_{0,i} (odd O) included.
    X { i: SignedIndex, j: SignedIndex, t: Elem },
    /// w_l = I - e_{l,l} - e_{-l,-l} - e_{l,-l} - e_{-l,l} (even O only).
    Wl,
}

/// Block shape of a generator, as named in the row/column operation tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// diag(R, ᵀR⁻¹)
    E1,
    /// upper-right block
    E2,
    /// lower-left block
    E3,
    /// x_{i,0}
    E4a,
    /// x_{0,i}
    E4b,
    Wl,
}

pub fn x(i: SignedIndex, j: SignedIndex, t: Elem) -> GenSymbol {
    GenSymbol::X { i, j, t }
}

impl GenSymbol {
    pub fn inverse(&self, field: &Field) -> GenSymbol {
        match self {
            GenSymbol::X { i, j, t } => GenSymbol::X { i: *i, j: *j, t: field.neg(t) },
            GenSymbol::Wl => GenSymbol::Wl,
        }
    }

    pub fn to_text(&self, field: &Field) -> String {
        match self {
            GenSymbol::X { i, j, t } => format!("x {i} {j} {}", field.format_elem(t)),
            GenSymbol::Wl => "wl".to_string(),
        }
    }

    pub fn parse(field: &Field, line: &str) -> Result<GenSymbol> {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["wl"] => Ok(GenSymbol::Wl),
            ["x", i, j, t] => {
                let i = i.parse().map_err(|_| Error::Parse(format!("bad index in '{line}'")))?;
                let j = j.parse().map_err(|_| Error::Parse(format!("bad index in '{line}'")))?;
                Ok(GenSymbol::X { i, j, t: field.parse_elem(t)? })
            }
            _ => Err(Error::Parse(format!("bad word symbol '{line}'"))),
        }
    }
}

fn invalid(kind: GroupKind, sym: &GenSymbol) -> Error {
    let s = match sym {
        GenSymbol::X { i, j, .. } => format!("x({i},{j})"),
        GenSymbol::Wl => "wl".into(),
    };
    Error::InvalidSymbolForKind { kind: kind.to_string(), sym: s }
}

/// Classifies an admissible symbol, or reports why it is not a generator of `kind`.
pub fn shape(kind: GroupKind, sym: &GenSymbol) -> Result<Shape> {
    let (i, j) = match sym {
        GenSymbol::Wl => {
            return match kind {
                GroupKind::OEven(_) => Ok(Shape::Wl),
                _ => Err(invalid(kind, sym)),
            }
        }
        GenSymbol::X { i, j, .. } => (*i, *j),
    };
    if !kind.is_valid_index(i) || !kind.is_valid_index(j) {
        return Err(Error::IndexOutOfRange(format!("x({i},{j}) in {kind}")));
    }
    let sp = matches!(kind, GroupKind::Sp(_));
    match (i.signum(), j.signum()) {
        (1, 1) if i != j => Ok(Shape::E1),
        (1, -1) if i < -j || (sp && i == -j) => Ok(Shape::E2),
        (-1, 1) if -i < j || (sp && -i == j) => Ok(Shape::E3),
        (1, 0) => Ok(Shape::E4a),
        (0, 1) => Ok(Shape::E4b),
        _ => Err(invalid(kind, sym)),
    }
}

/// Nonzero entries of N where the generator is I + N, in array coordinates.
pub fn sparse_part(kind: GroupKind, sym: &GenSymbol, field: &Field) -> Result<Vec<(usize, usize, Elem)>> {
    let sh = shape(kind, sym)?;
    let p = |s: SignedIndex| kind.pos(s);
    let sp = matches!(kind, GroupKind::Sp(_));
    let out = match sym {
        GenSymbol::Wl => {
            let l = kind.l() as i32;
            let m1 = field.from_i64(-1);
            vec![
                (p(l), p(l), m1.clone()),
                (p(-l), p(-l), m1.clone()),
                (p(l), p(-l), m1.clone()),
                (p(-l), p(l), m1),
            ]
        }
        GenSymbol::X { i, j, t } => {
            let (i, j) = (*i, *j);
            let nt = field.neg(t);
            match sh {
                Shape::E1 => vec![(p(i), p(j), t.clone()), (p(-j), p(-i), nt)],
                Shape::E2 | Shape::E3 if i == -j => vec![(p(i), p(j), t.clone())],
                Shape::E2 | Shape::E3 => {
                    // x_{i,-b} pairs e_{i,-b} with e_{b,-i}; x_{-a,j} pairs e_{-a,j} with e_{-j,a}
                    let partner = if sp { t.clone() } else { nt };
                    vec![(p(i), p(j), t.clone()), (p(-j), p(-i), partner)]
                }
                Shape::E4a => {
                    let two_t = field.add(t, t);
                    let t2 = field.neg(&field.mul(t, t));
                    vec![(p(i), p(0), two_t), (p(0), p(-i), nt), (p(i), p(-i), t2)]
                }
                Shape::E4b => {
                    let m2t = field.neg(&field.add(t, t));
                    let t2 = field.neg(&field.mul(t, t));
                    vec![(p(-j), p(0), m2t), (p(0), p(j), t.clone()), (p(-j), p(j), t2)]
                }
                Shape::Wl => unreachable!(),
            }
        }
    };
    Ok(out)
}

pub fn gen_matrix(kind: GroupKind, sym: &GenSymbol, field: &Field) -> Result<Matrix> {
    let mut m = Matrix::identity(field, kind.dim());
    for (r, c, v) in sparse_part(kind, sym, field)? {
        let cur = field.add(m.get(r, c), &v);
        m.set(r, c, cur);
    }
    Ok(m)
}

/// g <- sym * g
pub fn apply_left(kind: GroupKind, sym: &GenSymbol, g: &mut Matrix) -> Result<()> {
    let field = g.field().clone();
    let entries = sparse_part(kind, sym, &field)?;
    let cols = g.cols();
    // new row r = row r + Σ v * (old row c); sources are read before any target changes
    let sources: Vec<Vec<Elem>> = entries.iter().map(|(_, c, _)| g.row(*c).to_vec()).collect();
    for ((r, _, v), src) in entries.iter().zip(&sources) {
        for (j, s) in src.iter().enumerate().take(cols) {
            if field.is_zero(s) {
                continue;
            }
            let cur = field.add_mul(g.get(*r, j), s, v);
            g.set(*r, j, cur);
        }
    }
    Ok(())
}

/// g <- g * sym
pub fn apply_right(kind: GroupKind, sym: &GenSymbol, g: &mut Matrix) -> Result<()> {
    let field = g.field().clone();
    let entries = sparse_part(kind, sym, &field)?;
    let rows = g.rows();
    // new col c = col c + Σ v * (old col r)
    let sources: Vec<Vec<Elem>> =
        entries.iter().map(|(r, _, _)| (0..rows).map(|i| g.get(i, *r).clone()).collect()).collect();
    for ((_, c, v), src) in entries.iter().zip(&sources) {
        for (i, s) in src.iter().enumerate() {
            if field.is_zero(s) {
                continue;
            }
            let cur = field.add_mul(g.get(i, *c), s, v);
            g.set(i, *c, cur);
        }
    }
    Ok(())
}

/// A finite sequence of generator symbols; its value is the ordered product.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<GenSymbol>);

impl Word {
    pub fn new() -> Word {
        Word(Vec::new())
    }

    pub fn symbols(&self) -> &[GenSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: GenSymbol) {
        self.0.push(s);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend(other.0.iter().cloned());
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    pub fn inverse(&self, field: &Field) -> Word {
        Word(self.0.iter().rev().map(|s| s.inverse(field)).collect())
    }

    pub fn validate(&self, kind: GroupKind) -> Result<()> {
        self.0.iter().try_for_each(|s| shape(kind, s).map(|_| ()))
    }

    pub fn evaluate(&self, kind: GroupKind, field: &Field) -> Result<Matrix> {
        let mut m = Matrix::identity(field, kind.dim());
        for s in &self.0 {
            apply_right(kind, s, &mut m)?;
        }
        Ok(m)
    }

    /// g <- eval(self) * g
    pub fn apply_left(&self, kind: GroupKind, g: &mut Matrix) -> Result<()> {
        for s in self.0.iter().rev() {
            apply_left(kind, s, g)?;
        }
        Ok(())
    }

    /// g <- g * eval(self)
    pub fn apply_right(&self, kind: GroupKind, g: &mut Matrix) -> Result<()> {
        for s in &self.0 {
            apply_right(kind, s, g)?;
        }
        Ok(())
    }

    /// One symbol per line.
    pub fn to_text(&self, field: &Field) -> String {
        self.0.iter().map(|s| s.to_text(field) + "\n").collect()
    }

    /// Reads symbols until end of input or the first line that is not a symbol.
    pub fn parse_lines<'a, I>(field: &Field, lines: &mut std::iter::Peekable<I>) -> Result<Word>
    where
        I: Iterator<Item = &'a str>,
    {
        let mut w = Word::new();
        loop {
            skip_blank(lines);
            match lines.peek() {
                Some(l) if l.trim() == "wl" || l.trim_start().starts_with("x ") => {
                    w.push(GenSymbol::parse(field, l)?);
                    lines.next();
                }
                _ => return Ok(w),
            }
        }
    }

    pub fn from_text(field: &Field, text: &str) -> Result<Word> {
        let mut lines = text.lines().peekable();
        skip_blank(&mut lines);
        if lines.peek().map(|l| l.trim()) == Some("word") {
            lines.next();
        }
        let w = Word::parse_lines(field, &mut lines)?;
        skip_blank(&mut lines);
        if let Some(rest) = lines.next() {
            return Err(Error::Parse(format!("unexpected line '{rest}' in word")));
        }
        Ok(w)
    }
}

impl From<Vec<GenSymbol>> for Word {
    fn from(v: Vec<GenSymbol>) -> Word {
        Word(v)
    }
}

impl FromIterator<GenSymbol> for Word {
    fn from_iter<T: IntoIterator<Item = GenSymbol>>(iter: T) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a GenSymbol;
    type IntoIter = std::slice::Iter<'a, GenSymbol>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSymbol::X { i, j, t } => write!(f, "x({i},{j};{t:?})"),
            GenSymbol::Wl => write!(f, "wl"),
        }
    }
}

/// x_r(t) x_{-r}(-1/t) x_r(t) for a root r = (i, j) of type E1.
fn w_e1(i: SignedIndex, j: SignedIndex, t: &Elem, field: &Field) -> Vec<GenSymbol> {
    let minv = field.neg(&field.inv(t).expect("nonzero"));
    vec![x(i, j, t.clone()), x(j, i, minv), x(i, j, t.clone())]
}

/// w_{a,-b} = (I+e_{a,-b}-e_{b,-a})(I+e_{-a,b}-e_{-b,a})(I+e_{a,-b}-e_{b,-a}) in O(2l),
/// written with the canonical i < j generators.
fn w_neg_orthogonal(a: SignedIndex, b: SignedIndex, field: &Field) -> Vec<GenSymbol> {
    let one = field.one();
    let m1 = field.neg(&one);
    if a < b {
        vec![x(a, -b, one.clone()), x(-a, b, one.clone()), x(a, -b, one)]
    } else {
        vec![x(b, -a, m1.clone()), x(-b, a, m1.clone()), x(b, -a, m1)]
    }
}

/// The row interchange w_{i,-i}, 1 <= i <= l.
pub fn special_w(kind: GroupKind, i: usize, field: &Field) -> Result<Word> {
    let l = kind.l();
    if i == 0 || i > l {
        return Err(Error::IndexOutOfRange(format!("w_{{i,-i}} with i = {i} for {kind}")));
    }
    kind.check_field(field)?;
    let s = i as SignedIndex;
    let one = field.one();
    let m1 = field.neg(&one);
    Ok(match kind {
        GroupKind::Sp(_) => vec![x(s, -s, one.clone()), x(-s, s, m1), x(s, -s, one)].into(),
        GroupKind::OOdd(_) => vec![x(0, s, m1.clone()), x(s, 0, one), x(0, s, m1)].into(),
        GroupKind::OEven(_) => {
            // w_{i,-i} = w_{i+1,-(i+1)} w_{i+1,i} w_{i+1,-i}, starting from w_{l,-l} = w_l
            let mut w = vec![GenSymbol::Wl];
            for k in (i..l).rev() {
                let a = (k + 1) as SignedIndex;
                let b = k as SignedIndex;
                w.extend(w_e1(a, b, &one, field));
                w.extend(w_neg_orthogonal(a, b, field));
            }
            w.into()
        }
    })
}

/// Parameter of a diagonal torus element diag(..., λ, ..., λ⁻¹).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusParam {
    Lambda(Elem),
    /// μ with λ = μ²; the only form orthogonal kinds accept.
    SquareRoot(Elem),
}

/// Word evaluating to diag(1,…,1,λ,1,…,1,λ⁻¹) (with 1 in the e_0 slot for odd O).
pub fn torus_word(kind: GroupKind, field: &Field, param: &TorusParam) -> Result<Word> {
    kind.check_field(field)?;
    let l = kind.l() as SignedIndex;
    let one = field.one();
    let m1 = field.neg(&one);
    let arg = match param {
        TorusParam::Lambda(v) | TorusParam::SquareRoot(v) => v,
    };
    if field.is_zero(arg) {
        return Err(Error::ZeroLambda);
    }
    match kind {
        GroupKind::Sp(_) => {
            let lambda = match param {
                TorusParam::Lambda(v) => v.clone(),
                TorusParam::SquareRoot(m) => field.mul(m, m),
            };
            // h_l(λ) = w_{l,-l}(λ) w_{l,-l}(-1), w_{l,-l}(t) = x_{l,-l}(t) x_{-l,l}(-1/t) x_{l,-l}(t)
            let mut w = w_e1(l, -l, &lambda, field);
            w.extend(w_e1(l, -l, &m1, field));
            Ok(w.into())
        }
        GroupKind::OEven(_) => {
            let TorusParam::SquareRoot(mu) = param else {
                return Err(Error::NotASquareWitness);
            };
            // h_{(l-1,-l)}(μ) sends e_{l-1}, e_l to μ e_{l-1}, μ e_l;
            // h_{(l-1,l)}(1/μ) sends e_{l-1}, e_l to e_{l-1}/μ, μ e_l.
            let i = l - 1;
            let mu_inv = field.inv(mu)?;
            let w_b = |t: &Elem| {
                let tinv = field.inv(t).expect("nonzero");
                vec![x(i, -l, t.clone()), x(-i, l, tinv), x(i, -l, t.clone())]
            };
            let mut w = w_b(mu);
            w.extend(w_b(&m1));
            w.extend(w_e1(i, l, &mu_inv, field));
            w.extend(w_e1(i, l, &m1, field));
            Ok(w.into())
        }
        GroupKind::OOdd(_) => {
            let TorusParam::SquareRoot(mu) = param else {
                return Err(Error::NotASquareWitness);
            };
            // w_{l,0}(t) = x_{0,l}(-t) x_{l,0}(1/t) x_{0,l}(-t); w_{l,0}(1) w_{l,0}(μ) = diag(1, .., μ², .., μ⁻²)
            let w_l0 = |t: &Elem| {
                let tinv = field.inv(t).expect("nonzero");
                let nt = field.neg(t);
                vec![x(0, l, nt.clone()), x(l, 0, tinv), x(0, l, nt)]
            };
            let mut w = w_l0(&one);
            w.extend(w_l0(mu));
            Ok(w.into())
        }
    }
}

/// diag(ϑ, 1, …, λ, 1, …, λ⁻¹) in array coordinates (ϑ only for odd kinds).
pub fn torus_matrix(kind: GroupKind, field: &Field, lambda: &Elem, theta: Option<&Elem>) -> Result<Matrix> {
    let mut diag = vec![field.one(); kind.dim()];
    let l = kind.l() as SignedIndex;
    diag[kind.pos(l)] = lambda.clone();
    diag[kind.pos(-l)] = field.inv(lambda)?;
    if let (true, Some(th)) = (kind.is_odd(), theta) {
        diag[0] = th.clone();
    }
    Ok(Matrix::diagonal(field, &diag))
}

/// Every admissible symbol shape (i, j) of `kind` (Wl excluded), in a fixed order.
pub fn symbol_shapes(kind: GroupKind) -> Vec<(SignedIndex, SignedIndex)> {
    let l = kind.l() as SignedIndex;
    let mut out = Vec::new();
    for i in 1..=l {
        for j in 1..=l {
            if i != j {
                out.push((i, j));
            }
        }
    }
    for i in 1..=l {
        for j in i..=l {
            if i < j || matches!(kind, GroupKind::Sp(_)) {
                out.push((i, -j));
                out.push((-i, j));
            }
        }
    }
    if kind.is_odd() {
        for i in 1..=l {
            out.push((i, 0));
            out.push((0, i));
        }
    }
    out
}
