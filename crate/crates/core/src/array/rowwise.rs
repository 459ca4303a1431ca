use std::collections::BTreeMap;

use super::{ArrayCode, ArrayKind, NodeRepairPlan, RepairScheme};
use crate::error::{Error, Result};
use crate::field::{BaseField, MatrixQ};

/// `[r+δ−1, r, δ, α]` MDS array code: a systematic generalized Reed–Solomon
/// code on points `0, 1, …, r+δ−2` applied to each of the `α` rows.
pub fn mds_array_rowwise(r: usize, delta: usize, alpha: usize, q: u32) -> Result<ArrayCode> {
    let bf = BaseField::new(q)?;
    if r == 0 || delta == 0 || alpha == 0 {
        return Err(Error::InvalidParameters("r, delta and alpha must be positive".into()));
    }
    let n = r + delta - 1;
    if (q as usize) < n {
        return Err(Error::InvalidParameters(format!(
            "field too small: q = {q} < r + delta - 1 = {n}"
        )));
    }
    let mut vander = MatrixQ::zeros(q, r, n);
    for j in 0..n {
        let mut p = 1u32;
        for i in 0..r {
            vander.set(i, j, p);
            p = bf.mul(p, j as u32);
        }
    }
    let sys = vander.column_block(0, r).inverse()?.mul(&vander)?;

    let mut g = MatrixQ::zeros(q, r * alpha, n * alpha);
    for i in 0..r {
        for j in 0..n {
            for a in 0..alpha {
                g.set(i * alpha + a, j * alpha + a, sys.get(i, j));
            }
        }
    }
    let plans = (0..n)
        .map(|failed| NodeRepairPlan {
            helpers_needed: r,
            downloads: (0..n)
                .filter(|&j| j != failed)
                .map(|j| (j, MatrixQ::identity(q, alpha)))
                .collect::<BTreeMap<_, _>>(),
        })
        .collect();
    Ok(ArrayCode::from_parts(
        ArrayKind::Rowwise,
        n,
        r,
        alpha,
        delta,
        g,
        Some(RepairScheme { plans }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::k_subsets;
    use crate::field::ExtField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn example_shape() {
        let code = mds_array_rowwise(3, 3, 4, 5).unwrap();
        assert_eq!((code.n(), code.k() * code.alpha(), code.d_min(), code.alpha()), (5, 12, 3, 4));
        assert!(code.is_mds());
    }

    #[test]
    fn delta_one_is_identity() {
        let code = mds_array_rowwise(3, 1, 2, 5).unwrap();
        assert_eq!(code.generator(), &MatrixQ::identity(5, 6));
    }

    #[test]
    fn field_too_small() {
        assert!(mds_array_rowwise(3, 3, 2, 3).is_err());
    }

    #[test]
    fn every_erasure_pattern_decodes() {
        let f = ExtField::new(5, 3).unwrap();
        let code = mds_array_rowwise(3, 3, 2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x: Vec<Vec<_>> = (0..3).map(|_| (0..2).map(|_| f.random(&mut rng)).collect()).collect();
        let y = code.encode(&f, &x).unwrap();
        for s in k_subsets(5, 3) {
            let blocks: Vec<_> = s.iter().map(|&j| y[j].clone()).collect();
            assert_eq!(code.erasure_decode(&f, &s, &blocks).unwrap(), x);
        }
    }
}
