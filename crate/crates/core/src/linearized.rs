//! Linearized polynomials `f(x) = Σ a_i x^{q^i}` over `F_{q^m}`.

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPolynomial {
    field: ExtField,
    coeffs: Vec<ExtElem>,
}

impl LinearizedPolynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(field: &ExtField, coeffs: Vec<ExtElem>) -> Result<Self> {
        for c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_trusted(field, coeffs))
    }

    pub(crate) fn from_trusted(field: &ExtField, mut coeffs: Vec<ExtElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &ExtField) -> Self {
        Self::from_trusted(field, Vec::new())
    }

    /// The identity map `x`.
    pub fn identity(field: &ExtField) -> Self {
        Self::monomial(field, field.one(), 0)
    }

    /// `c · x^{q^i}`
    pub fn monomial(field: &ExtField, c: ExtElem, i: usize) -> Self {
        let mut coeffs = vec![field.zero(); i];
        coeffs.push(c);
        Self::from_trusted(field, coeffs)
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[ExtElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExtElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// q-degree; the zero polynomial has degree −1.
    pub fn q_degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&self.field.one())
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ForeignElement);
        }
        Ok(())
    }

    pub fn eval(&self, x: &ExtElem) -> Result<ExtElem> {
        self.field.check(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &ExtElem) -> ExtElem {
        let f = &self.field;
        let mut acc = f.zero();
        let mut power = x.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = f.frobenius(&power);
            }
            if !a.is_zero() {
                f.add_assign(&mut acc, &f.mul(a, &power));
            }
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(Self::from_trusted(f, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Self::from_trusted(&self.field, coeffs)
    }

    /// `c · f(x)`
    pub fn scale_left(&self, c: &ExtElem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(c, a)).collect();
        Self::from_trusted(&self.field, coeffs)
    }

    /// `self ∘ other`, that is `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f));
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        // b_j^{q^i} is built incrementally per i
        let mut powered: Vec<ExtElem> = other.coeffs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                for b in powered.iter_mut() {
                    *b = f.frobenius(b);
                }
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in powered.iter().enumerate() {
                f.add_assign(&mut out[i + j], &f.mul(a, b));
            }
        }
        Ok(Self::from_trusted(f, out))
    }

    /// Splits `self = divisor ∘ quotient + remainder` with
    /// `q_degree(remainder) < q_degree(divisor)`.
    pub fn left_divide(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_field(divisor)?;
        let f = &self.field;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let tv = divisor.coeffs.len() - 1;
        let lead_inv = f.inv(&divisor.coeffs[tv])?;
        let mut rem = self.clone();
        if rem.coeffs.len() <= tv {
            return Ok((Self::zero(f), rem));
        }
        let mut quot = vec![f.zero(); rem.coeffs.len() - tv];
        while rem.coeffs.len() > tv {
            let top = rem.coeffs.len() - 1;
            let shift = top - tv;
            // divisor_tv · c^{q^tv} = rem_top
            let c = f.inv_frobenius_pow(&f.mul(&rem.coeffs[top], &lead_inv), tv);
            let step = divisor.compose(&Self::monomial(f, c.clone(), shift))?;
            quot[shift] = c;
            rem = rem.sub(&step)?;
        }
        Ok((Self::from_trusted(f, quot), rem))
    }

    /// Monic polynomial of least q-degree vanishing on the `F_q`-span of `points`.
    pub fn min_subspace(field: &ExtField, points: &[ExtElem]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        let q = field.q() as u64;
        let mut m = Self::identity(field);
        for p in points {
            field.check(p)?;
            let v = m.eval_unchecked(p);
            if v.is_zero() {
                continue;
            }
            // M ← M^q − M(p)^{q−1} · M
            let c = field.pow(&v, q - 1);
            let mut shifted = vec![field.zero()];
            shifted.extend(m.coeffs.iter().map(|a| field.frobenius(a)));
            let shifted = Self::from_trusted(field, shifted);
            m = shifted.sub(&m.scale_left(&c))?;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_poly(f: &ExtField, deg: usize, rng: &mut ChaCha8Rng) -> LinearizedPolynomial {
        LinearizedPolynomial::from_trusted(f, (0..=deg).map(|_| f.random(rng)).collect())
    }

    #[test]
    fn frobenius_monomial_in_f4() {
        let f = ExtField::new(2, 2).unwrap();
        let p = LinearizedPolynomial::monomial(&f, f.one(), 1);
        assert_eq!(p.eval(&f.x()).unwrap(), f.elem(&[1, 1]).unwrap());
    }

    #[test]
    fn scalar_polynomial_scales() {
        let f = ExtField::new(5, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = f.random(&mut rng);
        let x = f.random(&mut rng);
        let p = LinearizedPolynomial::monomial(&f, a.clone(), 0);
        assert_eq!(p.eval(&x).unwrap(), f.mul(&a, &x));
    }

    #[test]
    fn compose_agrees_pointwise_on_f16() {
        let f = ExtField::new(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_poly(&f, 2, &mut rng);
            let b = random_poly(&f, 2, &mut rng);
            let c = a.compose(&b).unwrap();
            for x in f.elements() {
                let lhs = c.eval(&x).unwrap();
                let rhs = a.eval(&b.eval(&x).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let id = LinearizedPolynomial::identity(&f);
        let a = random_poly(&f, 3, &mut rng);
        assert_eq!(a.compose(&id).unwrap(), a);
        assert!(a.add(&a.neg()).unwrap().is_zero());
        assert_eq!(a.add(&a.neg()).unwrap().q_degree(), -1);
    }

    #[test]
    fn left_division_recovers_factor() {
        let f = ExtField::new(5, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let v = random_poly(&f, 3, &mut rng);
            let g = random_poly(&f, 4, &mut rng);
            let prod = v.compose(&g).unwrap();
            let (quot, rem) = prod.left_divide(&v).unwrap();
            assert_eq!(quot, g);
            assert!(rem.is_zero());
        }
    }

    #[test]
    fn min_subspace_examples() {
        let f = ExtField::new(2, 2).unwrap();
        let m0 = LinearizedPolynomial::min_subspace(&f, &[f.zero()]).unwrap();
        assert_eq!(m0, LinearizedPolynomial::identity(&f));

        let p = f.x();
        let m1 = LinearizedPolynomial::min_subspace(&f, &[p.clone()]).unwrap();
        assert_eq!(m1.q_degree(), 1);
        assert!(m1.eval(&p).unwrap().is_zero());

        let m2 = LinearizedPolynomial::min_subspace(&f, &[f.one(), p]).unwrap();
        assert_eq!(m2.q_degree(), 2);
        assert!(m2.is_monic());
        for x in f.elements() {
            assert!(m2.eval(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn min_subspace_skips_dependent_points() {
        let f = ExtField::new(3, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = f.random_nonzero(&mut rng);
        let b = f.random_nonzero(&mut rng);
        let c = f.add(&f.scale(&a, 2), &b);
        let m = LinearizedPolynomial::min_subspace(&f, &[a.clone(), b.clone(), c]).unwrap();
        assert_eq!(m.q_degree() as usize, f.rank_q(&[a.clone(), b.clone()]).unwrap());
    }
}
