//! Dense row-major matrices over an exact [`Field`].

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Debug, Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
    field: Field,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.field == other.field
            && self.data == other.data
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

/// An elementary row or column operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryOp {
    ScaleRow { row: usize, factor: Elem },
    /// row `target` += factor * row `source`
    AddRow { target: usize, source: usize, factor: Elem },
    SwapRows(usize, usize),
    ScaleCol { col: usize, factor: Elem },
    /// col `target` += factor * col `source`
    AddCol { target: usize, source: usize, factor: Elem },
    SwapCols(usize, usize),
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols], field: field.clone() }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect(), field: field.clone() })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Result<Matrix> {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect(),
        )
    }

    pub fn diagonal(field: &Field, diag: &[Elem]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero_entry(&self, i: usize, j: usize) -> bool {
        self.field.is_zero(self.get(i, j))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        self.field.is_one(v)
                    } else {
                        self.field.is_zero(v)
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.is_zero_entry(i, j)))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let f = &self.field;
        Matrix { data: self.data.iter().map(|v| f.mul(v, c)).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    /// Copy of the block with rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.field, nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                out.data[i * nc + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn is_zero_block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> bool {
        (r0..r0 + nr).all(|i| (c0..c0 + nc).all(|j| self.is_zero_entry(i, j)))
    }

    pub fn apply(&mut self, op: &ElementaryOp) -> Result<()> {
        let f = self.field.clone();
        let check_row = |i: usize| {
            if i >= self.rows {
                Err(Error::IndexOutOfRange(format!("row {i} of {}", self.rows)))
            } else {
                Ok(())
            }
        };
        let check_col = |j: usize| {
            if j >= self.cols {
                Err(Error::IndexOutOfRange(format!("column {j} of {}", self.cols)))
            } else {
                Ok(())
            }
        };
        match op {
            ElementaryOp::ScaleRow { row, factor } => {
                check_row(*row)?;
                if f.is_zero(factor) {
                    return Err(Error::ZeroScale);
                }
                for j in 0..self.cols {
                    let v = f.mul(self.get(*row, j), factor);
                    self.set(*row, j, v);
                }
            }
            ElementaryOp::AddRow { target, source, factor } => {
                check_row(*target)?;
                check_row(*source)?;
                self.add_row_multiple(*target, *source, factor);
            }
            ElementaryOp::SwapRows(a, b) => {
                check_row(*a)?;
                check_row(*b)?;
                for j in 0..self.cols {
                    self.data.swap(a * self.cols + j, b * self.cols + j);
                }
            }
            ElementaryOp::ScaleCol { col, factor } => {
                check_col(*col)?;
                if f.is_zero(factor) {
                    return Err(Error::ZeroScale);
                }
                for i in 0..self.rows {
                    let v = f.mul(self.get(i, *col), factor);
                    self.set(i, *col, v);
                }
            }
            ElementaryOp::AddCol { target, source, factor } => {
                check_col(*target)?;
                check_col(*source)?;
                self.add_col_multiple(*target, *source, factor);
            }
            ElementaryOp::SwapCols(a, b) => {
                check_col(*a)?;
                check_col(*b)?;
                for i in 0..self.rows {
                    self.data.swap(i * self.cols + a, i * self.cols + b);
                }
            }
        }
        Ok(())
    }

    /// row `target` += t * row `source` (indices unchecked).
    pub fn add_row_multiple(&mut self, target: usize, source: usize, t: &Elem) {
        let f = &self.field;
        if f.is_zero(t) {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if f.is_zero(s) {
                continue;
            }
            let delta = f.mul(s, t);
            let idx = target * self.cols + j;
            self.data[idx] = f.add(&self.data[idx], &delta);
        }
    }

    /// col `target` += t * col `source` (indices unchecked).
    pub fn add_col_multiple(&mut self, target: usize, source: usize, t: &Elem) {
        let f = &self.field;
        if f.is_zero(t) {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if f.is_zero(s) {
                continue;
            }
            let delta = f.mul(s, t);
            let idx = i * self.cols + target;
            self.data[idx] = f.add(&self.data[idx], &delta);
        }
    }

    /// Elementary matrix E with `op(I) = E`, so that row ops equal E*g and
    /// column ops equal g*E.
    pub fn elementary(field: &Field, n: usize, op: &ElementaryOp) -> Result<Matrix> {
        let mut e = Matrix::identity(field, n);
        e.apply(op)?;
        Ok(e)
    }

    /// Determinant by pivoted elimination over the field.
    pub fn determinant(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !m.is_zero_entry(i, k)) else {
                return Ok(f.zero());
            };
            if piv != k {
                m.apply(&ElementaryOp::SwapRows(piv, k))?;
                det = f.neg(&det);
            }
            let p = m.get(k, k).clone();
            det = f.mul(&det, &p);
            let pinv = f.inv(&p)?;
            for i in k + 1..n {
                if m.is_zero_entry(i, k) {
                    continue;
                }
                let t = f.neg(&f.mul(m.get(i, k), &pinv));
                m.add_row_multiple(i, k, &t);
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| !m.is_zero_entry(i, c)) else {
                continue;
            };
            if piv != rank {
                for j in 0..self.cols {
                    m.data.swap(piv * self.cols + j, rank * self.cols + j);
                }
            }
            let pinv = f.inv(m.get(rank, c)).expect("pivot is nonzero");
            for i in rank + 1..self.rows {
                if m.is_zero_entry(i, c) {
                    continue;
                }
                let t = f.neg(&f.mul(m.get(i, c), &pinv));
                m.add_row_multiple(i, rank, &t);
            }
            rank += 1;
        }
        rank
    }

    /// Inverse by Gauss-Jordan; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(&f, n);
        for k in 0..n {
            let piv = (k..n).find(|&i| !m.is_zero_entry(i, k))?;
            if piv != k {
                m.apply(&ElementaryOp::SwapRows(piv, k)).ok()?;
                inv.apply(&ElementaryOp::SwapRows(piv, k)).ok()?;
            }
            let pinv = f.inv(m.get(k, k)).ok()?;
            m.apply(&ElementaryOp::ScaleRow { row: k, factor: pinv.clone() }).ok()?;
            inv.apply(&ElementaryOp::ScaleRow { row: k, factor: pinv }).ok()?;
            for i in 0..n {
                if i == k || m.is_zero_entry(i, k) {
                    continue;
                }
                let t = f.neg(m.get(i, k));
                m.add_row_multiple(i, k, &t);
                inv.add_row_multiple(i, k, &t);
            }
        }
        Some(inv)
    }

    /// Text form: "matrix R C" then R lines of C element tokens.
    pub fn to_text(&self) -> String {
        let mut s = format!("matrix {} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| self.field.format_elem(v)).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses one matrix from the front of `lines`, consuming exactly its lines
    /// (blank lines and `#` comments before the header are skipped).
    pub fn parse_lines<'a, I>(field: &Field, lines: &mut std::iter::Peekable<I>) -> Result<Matrix>
    where
        I: Iterator<Item = &'a str>,
    {
        skip_blank(lines);
        let header = lines.next().ok_or_else(|| Error::Parse("missing matrix header".into()))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("matrix") {
            return Err(Error::Parse(format!("expected 'matrix R C', got '{header}'")));
        }
        let dims: Vec<usize> = parts
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension '{t}'"))))
            .collect::<Result<_>>()?;
        let [r, c] = dims[..] else {
            return Err(Error::Parse(format!("expected 'matrix R C', got '{header}'")));
        };
        let mut rows = Vec::with_capacity(r);
        for i in 0..r {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("matrix truncated at row {i}")))?;
            let row: Vec<Elem> =
                line.split_whitespace().map(|t| field.parse_elem(t)).collect::<Result<_>>()?;
            if row.len() != c {
                return Err(Error::Parse(format!("row {i} has {} entries, expected {c}", row.len())));
            }
            rows.push(row);
        }
        if r == 0 {
            return Ok(Matrix::zeros(field, 0, c));
        }
        Matrix::from_rows(field, rows)
    }

    pub fn from_text(field: &Field, text: &str) -> Result<Matrix> {
        let mut lines = text.lines().peekable();
        Matrix::parse_lines(field, &mut lines)
    }
}

pub(crate) fn skip_blank<'a, I: Iterator<Item = &'a str>>(lines: &mut std::iter::Peekable<I>) {
    while let Some(l) = lines.peek() {
        let t = l.trim();
        if t.is_empty() || t.starts_with('#') {
            lines.next();
        } else {
            break;
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| field.random_nonzero(rng)).collect())
            .collect();
        Matrix::from_rows(field, rows).unwrap()
    }

    #[test]
    fn identity_and_transpose() {
        let f = Field::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random(&f, 6, &mut rng);
        let i = Matrix::identity(&f, 6);
        assert_eq!(i.mul(&g).unwrap(), g);
        assert_eq!(g.transpose().transpose(), g);
        let h = random(&f, 6, &mut rng);
        assert_eq!(g.mul(&h).unwrap().transpose(), h.transpose().mul(&g.transpose()).unwrap());
    }

    #[test]
    fn associativity_over_extension() {
        let f = Field::extension(7, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let (a, b, c) = (random(&f, 4, &mut rng), random(&f, 4, &mut rng), random(&f, 4, &mut rng));
            assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }
    }

    #[test]
    fn mismatches() {
        let f = Field::prime(5).unwrap();
        let g = Field::prime(7).unwrap();
        let a = Matrix::identity(&f, 2);
        assert_eq!(a.mul(&Matrix::identity(&g, 2)), Err(Error::FieldMismatch));
        assert!(matches!(a.mul(&Matrix::zeros(&f, 3, 3)), Err(Error::DimensionMismatch(_))));
        assert!(matches!(Matrix::zeros(&f, 2, 3).determinant(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn elementary_updates() {
        let f = Field::prime(5).unwrap();
        let mut m = Matrix::identity(&f, 2);
        m.apply(&ElementaryOp::AddRow { target: 1, source: 0, factor: Elem::Fp(2) }).unwrap();
        assert_eq!(m, Matrix::from_i64(&f, &[&[1, 0], &[2, 1]]).unwrap());

        let before = m.clone();
        m.apply(&ElementaryOp::SwapRows(0, 1)).unwrap();
        m.apply(&ElementaryOp::SwapRows(0, 1)).unwrap();
        assert_eq!(m, before);

        assert_eq!(
            m.apply(&ElementaryOp::ScaleRow { row: 0, factor: Elem::Fp(0) }),
            Err(Error::ZeroScale)
        );
        assert!(matches!(m.apply(&ElementaryOp::SwapCols(0, 2)), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn updates_equal_elementary_products() {
        let f = Field::prime(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ops = [
            ElementaryOp::ScaleRow { row: 2, factor: Elem::Fp(7) },
            ElementaryOp::AddRow { target: 0, source: 3, factor: Elem::Fp(4) },
            ElementaryOp::SwapRows(1, 3),
            ElementaryOp::ScaleCol { col: 1, factor: Elem::Fp(9) },
            ElementaryOp::AddCol { target: 3, source: 0, factor: Elem::Fp(12) },
            ElementaryOp::SwapCols(0, 2),
        ];
        for _ in 0..20 {
            let g = random(&f, 4, &mut rng);
            for op in &ops {
                let e = Matrix::elementary(&f, 4, op).unwrap();
                let mut h = g.clone();
                h.apply(op).unwrap();
                let expected = match op {
                    ElementaryOp::ScaleRow { .. }
                    | ElementaryOp::AddRow { .. }
                    | ElementaryOp::SwapRows(..) => e.mul(&g).unwrap(),
                    _ => g.mul(&e).unwrap(),
                };
                assert_eq!(h, expected, "{op:?}");
            }
        }
    }

    #[test]
    fn determinant_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for f in [Field::prime(7).unwrap(), Field::extension(5, 2).unwrap(), Field::rationals()] {
            assert!(f.is_one(&Matrix::identity(&f, 4).determinant().unwrap()));
            for _ in 0..200 {
                let a = random(&f, 3, &mut rng);
                let b = random(&f, 3, &mut rng);
                let lhs = a.mul(&b).unwrap().determinant().unwrap();
                let rhs = f.mul(&a.determinant().unwrap(), &b.determinant().unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn inverse_and_rank() {
        let f = Field::rationals();
        let a = Matrix::from_i64(&f, &[&[2, 1], &[1, 1]]).unwrap();
        assert!(a.mul(&a.inverse().unwrap()).unwrap().is_identity());
        let s = Matrix::from_i64(&f, &[&[1, 2], &[2, 4]]).unwrap();
        assert!(s.inverse().is_none());
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn text_format_round_trip() {
        let f = Field::extension(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let g = random(&f, 3, &mut rng);
        let text = g.to_text();
        assert_eq!(Matrix::from_text(&f, &text).unwrap(), g);
        assert_eq!(Matrix::from_text(&f, &text).unwrap().to_text(), text);
        assert!(Matrix::from_text(&f, "matrix 2 2\n1 0\n").is_err());
    }
}
