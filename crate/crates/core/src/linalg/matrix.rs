use std::fmt;
use std::ops::{Index, IndexMut};

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::{check_dim, LinalgError, Subspace};
use crate::cyclo::{common_conductor, parse_literal, Cyclotomic, Dense};

/// A column vector of cyclotomic numbers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactVector(pub Vec<Cyclotomic>);

impl ExactVector {
    pub fn zeros(n: usize) -> Self {
        ExactVector(vec![Cyclotomic::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = ExactVector::zeros(n);
        v.0[i] = Cyclotomic::one();
        v
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        ExactVector(xs.iter().map(|&x| Cyclotomic::from_i64(x)).collect())
    }

    /// Parse a list of scalar literals.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self, crate::cyclo::CycloError> {
        items.iter().map(|s| parse_literal(s.as_ref())).collect::<Result<Vec<_>, _>>().map(ExactVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Cyclotomic::is_zero)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cyclotomic> {
        self.0.iter()
    }

    pub fn add(&self, o: &ExactVector) -> ExactVector {
        ExactVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &ExactVector) -> ExactVector {
        ExactVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Cyclotomic) -> ExactVector {
        ExactVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> ExactVector {
        ExactVector(self.0.iter().map(Cyclotomic::neg).collect())
    }

    pub fn conj(&self) -> ExactVector {
        ExactVector(self.0.iter().map(Cyclotomic::complex_conjugate).collect())
    }

    /// Bilinear pairing `Σ a_i b_i`.
    pub fn dot(&self, o: &ExactVector) -> Cyclotomic {
        dot_fused(self.0.iter().zip(&o.0))
    }

    /// Hermitian pairing `Σ conj(a_i) b_i`.
    pub fn hermitian(&self, o: &ExactVector) -> Cyclotomic {
        self.conj().dot(o)
    }

    /// Index of the first nonzero coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// Representative of the line through `self`: first nonzero coordinate 1.
    pub fn projective_normalize(&self) -> ExactVector {
        match self.leading() {
            None => self.clone(),
            Some(i) if self.0[i].is_one() => self.clone(),
            Some(i) => {
                let inv = self.0[i].inverse().expect("nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn to_literals(&self) -> Vec<String> {
        self.0.iter().map(Cyclotomic::format_literal).collect()
    }
}

impl Index<usize> for ExactVector {
    type Output = Cyclotomic;
    fn index(&self, i: usize) -> &Cyclotomic {
        &self.0[i]
    }
}

impl fmt::Debug for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

pub(crate) fn dot_fused<'a>(pairs: impl Iterator<Item = (&'a Cyclotomic, &'a Cyclotomic)> + Clone) -> Cyclotomic {
    let n = pairs
        .clone()
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(1u32, |acc, (a, b)| lcm(acc, lcm(a.conductor(), b.conductor())));
    let mut d = Dense::new(n);
    for (a, b) in pairs {
        d.add_product(a, b);
    }
    d.finish()
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

/// Output of [`ExactMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Cyclotomic>) -> Result<Self, LinalgError> {
        check_dim(rows * cols, data.len())?;
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Cyclotomic::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Cyclotomic) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Ok(ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, LinalgError> {
        ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Cyclotomic::from_i64(x)).collect()).collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[ExactVector]) -> Result<Self, LinalgError> {
        let c = cols.len();
        let r = cols.first().map_or(0, ExactVector::len);
        if cols.iter().any(|v| v.len() != r) {
            return Err(LinalgError::Ragged);
        }
        let mut m = ExactMatrix::zeros(r, c);
        for (j, v) in cols.iter().enumerate() {
            for i in 0..r {
                m.data[i * c + j] = v.0[i].clone();
            }
        }
        Ok(m)
    }

    pub fn block_diag(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
        let (r, c) = (a.rows + b.rows, a.cols + b.cols);
        let mut m = ExactMatrix::zeros(r, c);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    pub fn row(&self, i: usize) -> ExactVector {
        ExactVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> ExactVector {
        ExactVector((0..self.rows).map(|i| self.data[i * self.cols + j].clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<ExactVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn conductor(&self) -> u32 {
        common_conductor(&self.data)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        m
    }

    pub fn conj_transpose(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.data[i * self.cols + j].complex_conjugate();
            }
        }
        m
    }

    pub fn conj(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Cyclotomic::complex_conjugate).collect(),
        }
    }

    pub fn add(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// `self - I`
    pub fn sub_identity(&self) -> ExactMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = &m.data[i * self.cols + i] - &Cyclotomic::one();
            m.data[i * self.cols + i] = v;
        }
        m
    }

    pub fn scale(&self, c: &Cyclotomic) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, o.rows, "incompatible shapes");
        let n = lcm(self.conductor(), o.conductor());
        let mut d = Dense::new(n);
        let mut out = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for j in 0..o.cols {
                for (k, a) in row.iter().enumerate() {
                    d.add_product(a, &o.data[k * o.cols + j]);
                }
                out.push(d.finish());
            }
        }
        ExactMatrix { rows: self.rows, cols: o.cols, data: out }
    }

    pub fn mul_vec(&self, v: &ExactVector) -> ExactVector {
        assert_eq!(self.cols, v.len(), "incompatible shapes");
        let n = lcm(self.conductor(), common_conductor(&v.0));
        let mut d = Dense::new(n);
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (a, b) in row.iter().zip(&v.0) {
                d.add_product(a, b);
            }
            out.push(d.finish());
        }
        ExactVector(out)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.data.iter().enumerate().all(|(k, c)| {
                if k / self.cols == k % self.cols {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    /// Reduced row-echelon form by exact Gaussian elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inverse().expect("pivot is nonzero");
            if !inv.is_one() {
                for j in c..self.cols {
                    let v = &m[(r, j)] * &inv;
                    m[(r, j)] = v;
                }
            }
            for i in 0..self.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..self.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &(&f * &m[(r, j)]);
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Null space `{x : self x = 0}`.
    pub fn kernel(&self) -> Subspace {
        Subspace::kernel(self)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn inverse(&self) -> Result<ExactMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Cyclotomic::one();
        }
        let r = aug.rref();
        if r.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || r.rank < n {
            return Err(LinalgError::Singular);
        }
        let mut inv = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r.reduced[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn vstack(&self, o: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        check_dim(self.cols, o.cols)?;
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(ExactMatrix { rows: self.rows + o.rows, cols: self.cols, data })
    }

    pub fn to_literal_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().map(Cyclotomic::format_literal).collect())
            .collect()
    }

    pub fn from_literal_rows<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<ExactMatrix, String> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_literal(s.as_ref())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        ExactMatrix::from_rows(parsed).map_err(|e| e.to_string())
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Cyclotomic;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclotomic {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in self.to_literal_rows() {
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.format_literal())
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_literal(&s).map_err(de::Error::custom)
    }
}

impl Serialize for ExactVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ExactVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(ExactVector(Vec::<Cyclotomic>::deserialize(d)?))
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Cyclotomic>>::deserialize(d)?;
        ExactMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_zero_difference() {
        let i4 = ExactMatrix::identity(4);
        assert_eq!(i4.sub(&i4).rref().rank, 0);
        assert_eq!(i4.rank(), 4);
    }

    #[test]
    fn inverse_round_trip() {
        let i = Cyclotomic::i();
        let m = ExactMatrix::from_rows(vec![
            vec![Cyclotomic::one(), i.clone()],
            vec![i.neg(), Cyclotomic::from_i64(2)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(sing.inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn json_shape() {
        let m = ExactMatrix::from_rows(vec![vec![Cyclotomic::i(), Cyclotomic::rational(1, 2).unwrap()]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["E(4)","1/2"]]"#);
        let back: ExactMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn projective_normalization() {
        let v = ExactVector(vec![Cyclotomic::zero(), Cyclotomic::i(), Cyclotomic::one()]);
        let w = v.projective_normalize();
        assert!(w[1].is_one());
        assert_eq!(w[2], Cyclotomic::i().neg());
    }
}
