use crate::error::Result;
use crate::field::{ExtElem, ExtField, MatrixQ};

/// Trusted holder of one subspace signature per node: a basis of the
/// column space of the node's certified block, expanded over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verifier {
    signatures: Vec<MatrixQ>,
}

fn basis_of(field: &ExtField, block: &[ExtElem]) -> Result<MatrixQ> {
    let expanded = field.expand_vector(block)?;
    let (_, pivots) = expanded.rref();
    Ok(expanded.select_columns(&pivots))
}

impl Verifier {
    pub fn new(field: &ExtField, blocks: &[Vec<ExtElem>]) -> Result<Self> {
        let signatures = blocks
            .iter()
            .map(|b| basis_of(field, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { signatures })
    }

    pub fn sign(&mut self, field: &ExtField, node: usize, block: &[ExtElem]) -> Result<()> {
        self.signatures[node] = basis_of(field, block)?;
        Ok(())
    }

    pub fn signature(&self, node: usize) -> &MatrixQ {
        &self.signatures[node]
    }

    /// True iff every sent symbol lies in the certified column space.
    pub fn check(&self, node: usize, sent: &[ExtElem]) -> bool {
        let sig = &self.signatures[node];
        sent.iter().all(|s| {
            if s.is_zero() {
                return true;
            }
            if sig.cols() == 0 {
                return false;
            }
            sig.column_space_contains(s.coeffs())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn honest_and_in_space_pass_outside_fails() {
        let f = ExtField::new(5, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let block: Vec<_> = (0..4).map(|_| f.random(&mut rng)).collect();
        let v = Verifier::new(&f, std::slice::from_ref(&block)).unwrap();
        let lie = MatrixQ::from_rows(5, &[[1, 2], [0, 3], [4, 4], [1, 0]]).unwrap();
        assert!(v.check(0, &f.vec_mat(&block, &lie).unwrap()));
        assert!(v.check(0, &block));
        // some basis vector of F_q^m escapes a 4-dimensional span
        let outside = (0..12)
            .map(|i| f.basis(i))
            .find(|e| !v.signature(0).column_space_contains(e.coeffs()))
            .unwrap();
        assert!(!v.check(0, &[outside]));
    }
}
