use serde::{Deserialize, Serialize};

use super::poly::inv_mod;
use crate::error::{Error, Result};

/// Dense row-major matrix over the prime field `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixQ {
    q: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MatrixQ {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> Self {
        Self {
            q,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(q: u32, size: usize) -> Self {
        let mut m = Self::zeros(q, size, size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from nested rows, reducing entries mod `q`.
    pub fn from_rows<R: AsRef<[u32]>>(q: u32, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            entries.extend(r.iter().map(|&v| v % q));
        }
        Ok(Self {
            q,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix from signed entries, mapping negatives into `[0, q)`.
    pub fn from_signed_rows<R: AsRef<[i64]>>(q: u32, rows: &[R]) -> Result<Self> {
        let unsigned: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .map(|&v| v.rem_euclid(q as i64) as u32)
                    .collect()
            })
            .collect();
        Self::from_rows(q, &unsigned)
    }

    pub fn from_columns(q: u32, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(q, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch("column length".into()));
            }
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v % q);
            }
        }
        Ok(m)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v % self.q;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.q, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::DimensionMismatch(format!(
                "field mismatch: F_{} vs F_{}",
                self.q, other.q
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let q = self.q as u64;
        let mut out = Self::zeros(self.q, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * out.cols + c;
                    out.entries[idx] =
                        ((out.entries[idx] as u64 + a * other.get(k, c) as u64) % q) as u32;
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let q = self.q as u64;
        let mut out = vec![0u64; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = (*o + a as u64 * self.get(r, c) as u64) % q;
            }
        }
        Ok(out.into_iter().map(|x| x as u32).collect())
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let q = self.q as u64;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % q)
                    as u32
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b, q| (a + b) % q)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b, q| (a + q - b) % q)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u32, u32, u32) -> u32) -> Result<Self> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("shape".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b, self.q))
            .collect();
        Ok(Self {
            entries,
            ..self.clone()
        })
    }

    pub fn scale(&self, s: u32) -> Self {
        let q = self.q as u64;
        let s = (s % self.q) as u64;
        Self {
            entries: self
                .entries
                .iter()
                .map(|&a| (a as u64 * s % q) as u32)
                .collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.q - 1)
    }

    /// Columns `[start, start + count)`.
    pub fn column_block(&self, start: usize, count: usize) -> Self {
        self.select_columns(&(start..start + count).collect::<Vec<_>>())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.q, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut out = Self::zeros(self.q, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.entries[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        out
    }

    pub fn row_block(&self, start: usize, count: usize) -> Self {
        self.select_rows(&(start..start + count).collect::<Vec<_>>())
    }

    pub fn hstack(parts: &[&MatrixQ]) -> Result<Self> {
        let first = parts.first().ok_or(Error::Empty)?;
        let rows = first.rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(first.q, rows, cols);
        let mut offset = 0;
        for p in parts {
            first.check_same_field(p)?;
            if p.rows != rows {
                return Err(Error::DimensionMismatch("hstack rows".into()));
            }
            for r in 0..rows {
                for c in 0..p.cols {
                    out.set(r, offset + c, p.get(r, c));
                }
            }
            offset += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&MatrixQ]) -> Result<Self> {
        let first = parts.first().ok_or(Error::Empty)?;
        let cols = first.cols;
        let mut entries = Vec::new();
        let mut rows = 0;
        for p in parts {
            first.check_same_field(p)?;
            if p.cols != cols {
                return Err(Error::DimensionMismatch("vstack cols".into()));
            }
            entries.extend_from_slice(&p.entries);
            rows += p.rows;
        }
        Ok(Self {
            q: first.q,
            rows,
            cols,
            entries,
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let q = self.q as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.entries.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), self.q) as u64;
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.entries[idx] = (m.entries[idx] as u64 * inv % q) as u32;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f * m.get(r, j) as u64 % q;
                    let idx = i * m.cols + j;
                    m.entries[idx] = ((m.entries[idx] as u64 + q - sub) % q) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// One solution of `self · x = b`.
    pub fn solve(&self, b: &[u32]) -> Result<Vec<u32>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let col = MatrixQ::from_columns(self.q, self.rows, &[b.to_vec()])?;
        let aug = MatrixQ::hstack(&[self, &col])?;
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols);
        }
        Ok(x)
    }

    /// One solution `X` of `self · X = rhs`, column by column.
    pub fn solve_matrix(&self, rhs: &MatrixQ) -> Result<Self> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch("right-hand side rows".into()));
        }
        let aug = MatrixQ::hstack(&[self, rhs])?;
        let (red, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = Self::zeros(self.q, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, red.get(i, self.cols + c));
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let id = Self::identity(self.q, self.rows);
        let aug = MatrixQ::hstack(&[self, &id])?;
        let (red, pivots) = aug.rref();
        if pivots.len() < self.rows || pivots[self.rows - 1] != self.rows - 1 {
            return Err(Error::Singular);
        }
        Ok(red.column_block(self.cols, self.cols))
    }

    /// Basis of the right null space, one basis vector per column.
    pub fn kernel(&self) -> Self {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(self.q, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, 1);
            for (i, &p) in pivots.iter().enumerate() {
                let v = red.get(i, f);
                basis.set(p, k, (self.q - v) % self.q);
            }
        }
        basis
    }

    /// True when `v` lies in the column space.
    pub fn column_space_contains(&self, v: &[u32]) -> bool {
        self.solve(v).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(q: u32, rows: &[&[u32]]) -> MatrixQ {
        MatrixQ::from_rows(q, rows).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(5, &[&[1, 2, 3], &[4, 0, 1]]);
        assert_eq!(a.mul(&MatrixQ::identity(5, 3)).unwrap(), a);
    }

    #[test]
    fn solve_round_trip() {
        let a = m(7, &[&[2, 1, 0], &[1, 3, 5], &[0, 6, 1]]);
        let b = vec![3, 4, 5];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.mul_vec(&b).unwrap(), x);
    }

    #[test]
    fn singular_and_inconsistent() {
        let a = m(5, &[&[1, 2], &[2, 4]]);
        assert_eq!(a.inverse(), Err(Error::Singular));
        assert_eq!(a.solve(&[1, 0]), Err(Error::Inconsistent));
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(3, &[&[1, 1, 0, 2], &[0, 1, 1, 1]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).unwrap().is_zero());
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn dimension_mismatch_reported() {
        let a = m(5, &[&[1, 2]]);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.inverse(), Err(Error::DimensionMismatch(_))));
    }
}
