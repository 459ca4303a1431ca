//! Prime fields `F_q` and their extensions `F_{q^m}` in polynomial basis.

mod matrix;
pub(crate) mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use matrix::MatrixQ;

use crate::error::{Error, Result};

/// Largest supported base prime; keeps every product sum inside `u64`.
pub const MAX_Q: u32 = 65_521;

/// The prime field `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseField {
    q: u32,
}

impl BaseField {
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_Q {
            return Err(Error::InvalidParameters(format!("q must be at most {MAX_Q}")));
        }
        if !poly::is_prime(q as u64) {
            return Err(Error::NotPrime(q as u64));
        }
        Ok(Self { q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64 % self.q as u64) % self.q as u64) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.q as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.q - a % self.q) % self.q
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a % self.q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(poly::inv_mod(a % self.q, self.q))
    }
}

/// Element of `F_{q^m}`: coordinates in the basis `1, x, …, x^{m-1}`.
///
/// Serialized as the bare coefficient array, constant term first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtElem(Vec<u32>);

impl ExtElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(u64),
}

struct Inner {
    base: BaseField,
    m: usize,
    /// monic, length m + 1
    modulus: Vec<u32>,
    /// `-c_i` for the non-leading coefficients
    neg_low: Vec<u32>,
    /// column i holds the coordinates of `(x^i)^q`
    frob: Vec<Vec<u32>>,
}

/// The extension field `F_{q^m}`; cheap to clone.
#[derive(Clone)]
pub struct ExtField {
    inner: Arc<Inner>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.q() == other.q() && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("q", &self.q())
            .field("m", &self.m())
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

/// Serialized form of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub q: u32,
    pub m: usize,
    pub modulus: Vec<u32>,
}

impl Serialize for ExtField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.descriptor().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = FieldDescriptor::deserialize(d)?;
        ExtField::from_descriptor(&desc).map_err(serde::de::Error::custom)
    }
}

fn cache() -> &'static Mutex<HashMap<(u32, usize), ExtField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), ExtField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Lexicographically least monic irreducible of degree `m`, comparing
/// `c_0, c_1, …, c_{m-1}` in that order.
fn canonical_modulus(q: u32, m: usize) -> Option<Vec<u32>> {
    if m == 1 {
        return Some(vec![0, 1]);
    }
    // c_0 = 0 means x divides the polynomial
    let mut low = vec![0u32; m];
    low[0] = 1;
    loop {
        let mut f = low.clone();
        f.push(1);
        if poly::is_irreducible(&f, q) {
            return Some(f);
        }
        let mut i = m - 1;
        loop {
            low[i] += 1;
            if low[i] < q {
                break;
            }
            low[i] = 0;
            if i == 0 {
                return None;
            }
            i -= 1;
        }
        if low[0] == 0 {
            return None;
        }
    }
}

impl ExtField {
    /// The field with the canonical modulus for `(q, m)`.
    pub fn new(q: u32, m: usize) -> Result<Self> {
        let base = BaseField::new(q)?;
        if m == 0 {
            return Err(Error::InvalidDegree(m));
        }
        if let Some(f) = cache().lock().unwrap().get(&(q, m)) {
            return Ok(f.clone());
        }
        let modulus = canonical_modulus(q, m).ok_or(Error::NoIrreducible { q, m })?;
        let field = Self::build(base, modulus);
        cache().lock().unwrap().insert((q, m), field.clone());
        Ok(field)
    }

    /// A field with an explicit monic irreducible modulus `c_0..c_m`.
    pub fn with_modulus(q: u32, modulus: &[u32]) -> Result<Self> {
        let base = BaseField::new(q)?;
        let m = modulus.len().saturating_sub(1);
        if m == 0 {
            return Err(Error::InvalidDegree(m));
        }
        if modulus[m] != 1 || modulus.iter().any(|&c| c >= q) {
            return Err(Error::Malformed("modulus must be monic with entries below q".into()));
        }
        if !poly::is_irreducible(modulus, q) {
            return Err(Error::Malformed("modulus is reducible".into()));
        }
        Ok(Self::build(base, modulus.to_vec()))
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        if desc.modulus.len() != desc.m + 1 {
            return Err(Error::Malformed("modulus length must be m + 1".into()));
        }
        let canonical = Self::new(desc.q, desc.m)?;
        if canonical.inner.modulus == desc.modulus {
            return Ok(canonical);
        }
        Self::with_modulus(desc.q, &desc.modulus)
    }

    fn build(base: BaseField, modulus: Vec<u32>) -> Self {
        let q = base.q;
        let m = modulus.len() - 1;
        let neg_low = modulus[..m].iter().map(|&c| (q - c) % q).collect();
        let mut field = Self {
            inner: Arc::new(Inner {
                base,
                m,
                modulus,
                neg_low,
                frob: Vec::new(),
            }),
        };
        let xq = field.pow(&field.x(), q as u64);
        let mut frob = Vec::with_capacity(m);
        let mut acc = field.one();
        for _ in 0..m {
            frob.push(acc.0.clone());
            acc = field.mul(&acc, &xq);
        }
        Arc::get_mut(&mut field.inner).unwrap().frob = frob;
        field
    }

    pub fn q(&self) -> u32 {
        self.inner.base.q
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    pub fn base(&self) -> BaseField {
        self.inner.base
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            q: self.q(),
            m: self.m(),
            modulus: self.inner.modulus.clone(),
        }
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem(vec![0; self.m()])
    }

    pub fn one(&self) -> ExtElem {
        self.from_base(1)
    }

    pub fn from_base(&self, c: u32) -> ExtElem {
        let mut v = vec![0; self.m()];
        v[0] = c % self.q();
        ExtElem(v)
    }

    /// The class of `x`; equals the constant `-c_0` when `m = 1`.
    pub fn x(&self) -> ExtElem {
        if self.m() == 1 {
            return self.from_base(self.inner.neg_low[0]);
        }
        let mut v = vec![0; self.m()];
        v[1] = 1;
        ExtElem(v)
    }

    /// Basis element `x^i` for `i < m`.
    pub fn basis(&self, i: usize) -> ExtElem {
        let mut v = vec![0; self.m()];
        v[i] = 1;
        ExtElem(v)
    }

    pub fn elem(&self, coeffs: &[u32]) -> Result<ExtElem> {
        let e = ExtElem(coeffs.to_vec());
        self.check(&e)?;
        Ok(e)
    }

    /// Like [`elem`](Self::elem) but reduces entries mod `q` and pads with zeros.
    pub fn elem_lossy(&self, coeffs: &[u32]) -> ExtElem {
        let mut v: Vec<u32> = coeffs.iter().take(self.m()).map(|&c| c % self.q()).collect();
        v.resize(self.m(), 0);
        ExtElem(v)
    }

    /// Element whose base-q digits (constant term first) spell `n`.
    pub fn from_index(&self, mut n: u64) -> ExtElem {
        let q = self.q() as u64;
        let v = (0..self.m())
            .map(|_| {
                let d = (n % q) as u32;
                n /= q;
                d
            })
            .collect();
        ExtElem(v)
    }

    pub fn to_index(&self, a: &ExtElem) -> u64 {
        a.0.iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.q() as u64 + d as u64)
    }

    /// Number of elements, when it fits in `u64`.
    pub fn order(&self) -> Option<u64> {
        (self.q() as u64).checked_pow(self.m() as u32)
    }

    pub fn contains(&self, a: &ExtElem) -> bool {
        a.0.len() == self.m() && a.0.iter().all(|&c| c < self.q())
    }

    pub fn check(&self, a: &ExtElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ForeignElement)
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        ExtElem((0..self.m()).map(|_| rng.gen_range(0..self.q())).collect())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let q = self.q();
        ExtElem(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % q).collect())
    }

    pub fn add_assign(&self, a: &mut ExtElem, b: &ExtElem) {
        let q = self.q();
        for (x, &y) in a.0.iter_mut().zip(&b.0) {
            *x = (*x + y) % q;
        }
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let q = self.q();
        ExtElem(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + q - y) % q).collect())
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        let q = self.q();
        ExtElem(a.0.iter().map(|&x| (q - x) % q).collect())
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, a: &ExtElem, c: u32) -> ExtElem {
        let q = self.q() as u64;
        let c = c as u64 % q;
        ExtElem(a.0.iter().map(|&x| (x as u64 * c % q) as u32).collect())
    }

    /// `a += c·b` for a base-field scalar `c`.
    pub fn axpy(&self, a: &mut ExtElem, c: u32, b: &ExtElem) {
        let q = self.q() as u64;
        let c = c as u64 % q;
        if c == 0 {
            return;
        }
        for (x, &y) in a.0.iter_mut().zip(&b.0) {
            *x = ((*x as u64 + c * y as u64) % q) as u32;
        }
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let m = self.m();
        let q = self.q() as u64;
        let inner = &self.inner;
        let mut acc = vec![0u64; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                acc[i + j] += x as u64 * y as u64;
            }
        }
        for d in (m..2 * m - 1).rev() {
            let c = acc[d] % q;
            if c == 0 {
                continue;
            }
            for (i, &n) in inner.neg_low.iter().enumerate() {
                acc[d - m + i] += c * n as u64;
            }
        }
        ExtElem(acc[..m].iter().map(|&v| (v % q) as u32).collect())
    }

    pub fn square(&self, a: &ExtElem) -> ExtElem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = poly::inv_mod_poly(&a.0, &self.inner.modulus, self.q())
            .ok_or(Error::DivisionByZero)?;
        Ok(self.elem_lossy(&inv))
    }

    pub fn div(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &ExtElem, mut e: u64) -> ExtElem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// `a^q`, applied as a linear map on coordinates.
    pub fn frobenius(&self, a: &ExtElem) -> ExtElem {
        let q = self.q() as u64;
        let m = self.m();
        let mut out = vec![0u64; m];
        for (col, &c) in self.inner.frob.iter().zip(&a.0) {
            if c == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(col) {
                *o = (*o + c as u64 * v as u64) % q;
            }
        }
        ExtElem(out.into_iter().map(|v| v as u32).collect())
    }

    /// `a^{q^i}`; the exponent is taken modulo `m`, so negative shifts
    /// are expressed as `m - i`.
    pub fn frobenius_pow(&self, a: &ExtElem, i: usize) -> ExtElem {
        let mut out = a.clone();
        for _ in 0..i % self.m() {
            out = self.frobenius(&out);
        }
        out
    }

    /// `a^{q^{-i}}`
    pub fn inv_frobenius_pow(&self, a: &ExtElem, i: usize) -> ExtElem {
        let m = self.m();
        self.frobenius_pow(a, (m - i % m) % m)
    }

    /// Checked arithmetic entry point; `b` is ignored by unary operations.
    pub fn apply(&self, op: ArithOp, a: &ExtElem, b: &ExtElem) -> Result<ExtElem> {
        self.check(a)?;
        match op {
            ArithOp::Inv => return self.inv(a),
            ArithOp::Pow(e) => return Ok(self.pow(a, e)),
            _ => {}
        }
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
            ArithOp::Inv | ArithOp::Pow(_) => unreachable!(),
        })
    }

    /// The `m × N` matrix whose column `j` holds the coordinates of `v[j]`.
    pub fn expand_vector(&self, v: &[ExtElem]) -> Result<MatrixQ> {
        if v.is_empty() {
            return Err(Error::Empty);
        }
        let mut columns = Vec::with_capacity(v.len());
        for e in v {
            self.check(e)?;
            columns.push(e.0.clone());
        }
        MatrixQ::from_columns(self.q(), self.m(), &columns)
    }

    /// Inverse of [`expand_vector`](Self::expand_vector).
    pub fn collapse_matrix(&self, mat: &MatrixQ) -> Result<Vec<ExtElem>> {
        if mat.rows() != self.m() || mat.q() != self.q() {
            return Err(Error::DimensionMismatch("expansion shape".into()));
        }
        Ok((0..mat.cols()).map(|c| ExtElem(mat.column(c))).collect())
    }

    /// Rank over `F_q`; the empty vector has rank 0.
    pub fn rank_q(&self, v: &[ExtElem]) -> Result<usize> {
        if v.is_empty() {
            return Ok(0);
        }
        Ok(self.expand_vector(v)?.rank())
    }

    /// Row vector over `F_{q^m}` times a matrix over `F_q`.
    pub fn vec_mat(&self, v: &[ExtElem], mat: &MatrixQ) -> Result<Vec<ExtElem>> {
        if v.len() != mat.rows() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                v.len(),
                mat.rows(),
                mat.cols()
            )));
        }
        let mut out = vec![self.zero(); mat.cols()];
        for (r, e) in v.iter().enumerate() {
            for (c, o) in out.iter_mut().enumerate() {
                self.axpy(o, mat.get(r, c), e);
            }
        }
        Ok(out)
    }

    /// Every element, in index order; only sensible for tiny fields.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        let n = self.order().expect("field too large to enumerate");
        (0..n).map(move |i| self.from_index(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Irreducibility by trial division against every monic polynomial
    /// of degree at most m/2.
    fn irreducible_by_trial_division(f: &[u32], q: u32) -> bool {
        let m = f.len() - 1;
        for deg in 1..=m / 2 {
            let count = (q as u64).pow(deg as u32);
            for idx in 0..count {
                let mut g: Vec<u32> = (0..deg)
                    .scan(idx, |s, _| {
                        let d = (*s % q as u64) as u32;
                        *s /= q as u64;
                        Some(d)
                    })
                    .collect();
                g.push(1);
                if poly::rem(f, &g, q).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn frozen_canonical_moduli() {
        let cases: &[(u32, usize, &[u32])] = &[
            (2, 1, &[0, 1]),
            (2, 2, &[1, 1, 1]),
            (2, 4, &[1, 0, 0, 1, 1]),
            (3, 2, &[1, 0, 1]),
            (3, 3, &[1, 0, 2, 1]),
            (5, 1, &[0, 1]),
            (5, 2, &[1, 1, 1]),
            (5, 4, &[1, 0, 1, 1, 1]),
            (7, 3, &[1, 0, 1, 1]),
            (2, 8, &[1, 0, 0, 0, 1, 1, 0, 1, 1]),
            (5, 12, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 4, 1]),
        ];
        for &(q, m, expected) in cases {
            let f = ExtField::new(q, m).unwrap();
            assert_eq!(f.modulus(), expected, "q={q} m={m}");
        }
        let f = ExtField::new(5, 36).unwrap();
        let mut expected = vec![1u32];
        expected.extend(std::iter::repeat(0).take(31));
        expected.extend([3, 1, 4, 2, 1]);
        assert_eq!(f.modulus(), expected.as_slice());
    }

    #[test]
    fn canonical_choice_is_least_by_trial_division() {
        for &(q, m) in &[(2, 2), (2, 4), (3, 3), (5, 4), (7, 3), (2, 8)] {
            let f = ExtField::new(q, m).unwrap();
            assert!(irreducible_by_trial_division(f.modulus(), q));
            // every lexicographically smaller candidate with c0 != 0 is reducible
            let target: Vec<u32> = f.modulus()[..m].to_vec();
            let total = (q as u64).pow(m as u32);
            for idx in 0..total {
                let mut digits: Vec<u32> = (0..m)
                    .scan(idx, |s, _| {
                        let d = (*s % q as u64) as u32;
                        *s /= q as u64;
                        Some(d)
                    })
                    .collect();
                // digits[0] most significant
                digits.reverse();
                if digits >= target {
                    continue;
                }
                let mut cand = digits.clone();
                cand.push(1);
                assert!(!irreducible_by_trial_division(&cand, q), "{cand:?}");
            }
        }
    }

    #[test]
    fn rabin_matches_trial_division() {
        for q in [2u32, 3, 5] {
            for m in 2..=4usize {
                let total = (q as u64).pow(m as u32);
                for idx in 0..total {
                    let mut f: Vec<u32> = (0..m)
                        .scan(idx, |s, _| {
                            let d = (*s % q as u64) as u32;
                            *s /= q as u64;
                            Some(d)
                        })
                        .collect();
                    f.push(1);
                    assert_eq!(
                        poly::is_irreducible(&f, q),
                        irreducible_by_trial_division(&f, q),
                        "{f:?} over F_{q}"
                    );
                }
            }
        }
    }

    #[test]
    fn omega_squared_in_f4() {
        let f = ExtField::new(2, 2).unwrap();
        let w = f.x();
        assert_eq!(f.mul(&w, &w), f.elem(&[1, 1]).unwrap());
        assert_eq!(f.frobenius(&w), f.elem(&[1, 1]).unwrap());
    }

    #[test]
    fn expansion_and_rank_examples() {
        let f = ExtField::new(2, 2).unwrap();
        let w = f.x();
        let w1 = f.add(&w, &f.one());
        let e = f.expand_vector(&[w.clone(), w1]).unwrap();
        assert_eq!(e.to_rows(), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(f.rank_q(&[f.one(), w.clone()]).unwrap(), 2);
        assert_eq!(f.rank_q(&[w.clone(), w.clone(), w]).unwrap(), 1);
        assert_eq!(f.rank_q(&vec![f.zero(); 5]).unwrap(), 0);
        assert_eq!(f.expand_vector(&[]), Err(Error::Empty));
    }

    #[test]
    fn field_axioms_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (q, m) in [(2, 4), (5, 12), (5, 36), (7, 3)] {
            let f = ExtField::new(q, m).unwrap();
            for _ in 0..1000 {
                let a = f.random(&mut rng);
                let b = f.random(&mut rng);
                let c = f.random(&mut rng);
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                assert!(f.add(&a, &f.neg(&a)).is_zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
                assert_eq!(f.frobenius(&a), f.pow(&a, q as u64));
            }
        }
    }

    #[test]
    fn frobenius_has_order_m() {
        let f = ExtField::new(5, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = f.random(&mut rng);
        assert_eq!(f.frobenius_pow(&a, 12), a);
        let b = f.frobenius_pow(&a, 5);
        assert_eq!(f.inv_frobenius_pow(&b, 5), a);
    }

    #[test]
    fn checked_ops_reject_bad_input() {
        let f = ExtField::new(5, 2).unwrap();
        let g = ExtField::new(5, 3).unwrap();
        let a = f.one();
        assert_eq!(
            f.apply(ArithOp::Mul, &a, &g.one()),
            Err(Error::ForeignElement)
        );
        assert_eq!(
            f.apply(ArithOp::Div, &a, &f.zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(f.apply(ArithOp::Inv, &f.zero(), &a), Err(Error::DivisionByZero));
        assert_eq!(f.apply(ArithOp::Pow(0), &a, &a).unwrap(), f.one());
        assert!(matches!(ExtField::new(4, 2), Err(Error::NotPrime(4))));
        assert!(matches!(ExtField::new(5, 0), Err(Error::InvalidDegree(0))));
    }

    #[test]
    fn descriptor_round_trip() {
        let f = ExtField::new(3, 3).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        let g: ExtField = serde_json::from_str(&json).unwrap();
        assert_eq!(f, g);
        assert!(ExtField::with_modulus(2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn oversized_prime_rejected() {
        assert!(matches!(
            ExtField::new(4_294_967_291, 2),
            Err(Error::InvalidParameters(_))
        ));
    }
}
