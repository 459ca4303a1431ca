use std::collections::BTreeMap;

use super::{ArrayCode, ArrayKind, NodeRepairPlan, RepairScheme};
use crate::error::{Error, Result};
use crate::field::MatrixQ;

const ALPHA: usize = 4;

/// Rows each helper reads when a systematic node fails, indexed by
/// failed node then helper.
const SYSTEMATIC_ROWS: [[[usize; 2]; 5]; 3] = [
    [[0, 0], [0, 3], [0, 3], [0, 3], [1, 2]],
    [[0, 1], [0, 0], [0, 1], [0, 1], [0, 1]],
    [[0, 2], [0, 2], [0, 0], [0, 2], [0, 2]],
];

fn a2(q: u32) -> MatrixQ {
    MatrixQ::from_rows(q, &[[0, 0, 1, 0], [0, 0, 0, 1], [2, 0, 0, 0], [0, 2, 0, 0]]).unwrap()
}

fn a3(q: u32) -> MatrixQ {
    MatrixQ::from_rows(q, &[[0, 1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 2], [0, 0, 1, 0]]).unwrap()
}

/// `α × 2` matrix picking coordinates `rows` of a block.
fn select(q: u32, rows: [usize; 2]) -> MatrixQ {
    let mut v = MatrixQ::zeros(q, ALPHA, 2);
    v.set(rows[0], 0, 1);
    v.set(rows[1], 1, 1);
    v
}

/// The `(n=5, k=3, α=4)` zigzag code with generator
/// `[[I,0,0,I,I],[0,I,0,I,A2],[0,0,I,I,A3]]`.
///
/// Systematic nodes repair from all four survivors reading two symbols
/// each. Parity nodes download full blocks from any three survivors.
pub fn zigzag_5_3(q: u32) -> Result<ArrayCode> {
    if q < 3 {
        return Err(Error::InvalidParameters(format!("zigzag code needs q >= 3, got {q}")));
    }
    crate::field::BaseField::new(q)?;
    let id = MatrixQ::identity(q, ALPHA);
    let zero = MatrixQ::zeros(q, ALPHA, ALPHA);
    let table = [
        [&id, &zero, &zero, &id, &id],
        [&zero, &id, &zero, &id, &a2(q)],
        [&zero, &zero, &id, &id, &a3(q)],
    ];
    let rows: Vec<MatrixQ> = table
        .iter()
        .map(|r| MatrixQ::hstack(r).unwrap())
        .collect();
    let g = MatrixQ::vstack(&rows.iter().collect::<Vec<_>>())?;

    let mut plans = Vec::with_capacity(5);
    for (failed, helper_rows) in SYSTEMATIC_ROWS.iter().enumerate() {
        let downloads: BTreeMap<usize, MatrixQ> = (0..5)
            .filter(|&j| j != failed)
            .map(|j| (j, select(q, helper_rows[j])))
            .collect();
        plans.push(NodeRepairPlan {
            helpers_needed: 4,
            downloads,
        });
    }
    for failed in 3..5 {
        let downloads = (0..5)
            .filter(|&j| j != failed)
            .map(|j| (j, MatrixQ::identity(q, ALPHA)))
            .collect();
        plans.push(NodeRepairPlan {
            helpers_needed: 3,
            downloads,
        });
    }
    Ok(ArrayCode::from_parts(
        ArrayKind::Zigzag,
        5,
        3,
        ALPHA,
        3,
        g,
        Some(RepairScheme { plans }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ExtField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn printed_entries() {
        let code = zigzag_5_3(5).unwrap();
        assert_eq!(code.block(1, 4).row(2), &[2, 0, 0, 0]);
        assert_eq!(code.block(2, 4).row(1), &[2, 0, 0, 0]);
        assert!(zigzag_5_3(2).is_err());
    }

    #[test]
    fn every_three_nodes_recover_the_data() {
        let code = zigzag_5_3(5).unwrap();
        assert!(code.is_mds());
        for s in super::super::k_subsets(5, 3) {
            assert_eq!(code.submatrix(&s).unwrap().rank(), 12);
        }
    }

    #[test]
    fn parity_four_is_block_sum() {
        let f = ExtField::new(5, 4).unwrap();
        let code = zigzag_5_3(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x: Vec<Vec<_>> = (0..3).map(|_| (0..4).map(|_| f.random(&mut rng)).collect()).collect();
        let y = code.encode(&f, &x).unwrap();
        for c in 0..4 {
            let s = f.add(&f.add(&x[0][c], &x[1][c]), &x[2][c]);
            assert_eq!(y[3][c], s);
        }
        assert_eq!(&y[..3], &x[..]);
        let back = code.erasure_decode(&f, &[0, 1, 3], &[y[0].clone(), y[1].clone(), y[3].clone()]).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn systematic_repair_reads_eight_symbols() {
        let f = ExtField::new(5, 12).unwrap();
        let code = zigzag_5_3(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let x: Vec<Vec<_>> = (0..3).map(|_| (0..4).map(|_| f.random(&mut rng)).collect()).collect();
        let y = code.encode(&f, &x).unwrap();
        for failed in 0..5 {
            let helpers = code.default_helpers(failed, &[0, 1, 2, 3, 4]).unwrap();
            let plan = code.resolve_repair(failed, &helpers).unwrap();
            let expected_bw = if failed < 3 { 8 } else { 12 };
            assert_eq!(plan.bandwidth(), expected_bw);
            let blocks: Vec<_> = helpers.iter().map(|&j| y[j].clone()).collect();
            assert_eq!(code.msr_repair(&f, failed, &helpers, &blocks).unwrap(), y[failed]);
        }
    }

    #[test]
    fn node_two_propagation_from_node_one() {
        let code = zigzag_5_3(5).unwrap();
        let plan = code.resolve_repair(1, &[0, 2, 3, 4]).unwrap();
        // −1 = 4 and −2⁻¹ = 2 over F_5
        let expected = MatrixQ::from_rows(5, &[[4, 0, 2, 0], [0, 4, 0, 2], [0, 0, 0, 0], [0, 0, 0, 0]]).unwrap();
        assert_eq!(plan.propagation(0), expected);
    }

    #[test]
    fn no_two_row_selection_repairs_a_parity_node() {
        let code = zigzag_5_3(5).unwrap();
        let pairs: Vec<[usize; 2]> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| [a, b]))
            .collect();
        for failed in 3..5 {
            let helpers: Vec<usize> = (0..5).filter(|&j| j != failed).collect();
            for choice in 0..pairs.len().pow(4) {
                let mut c = choice;
                let parts: Vec<MatrixQ> = helpers
                    .iter()
                    .map(|&j| {
                        let v = select(5, pairs[c % pairs.len()]);
                        c /= pairs.len();
                        code.block_column(j).mul(&v).unwrap()
                    })
                    .collect();
                let h = MatrixQ::hstack(&parts.iter().collect::<Vec<_>>()).unwrap();
                assert!(h.solve_matrix(&code.block_column(failed)).is_err());
            }
        }
    }
}
