//! Vector (array) codes over `F_q` acting blockwise on `F_{q^m}` symbols.

mod rowwise;
mod zigzag;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use rowwise::mds_array_rowwise;
pub use zigzag::zigzag_5_3;

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField, MatrixQ};

/// How one failed node is rebuilt: which helpers may contribute and the
/// `α × β_j` matrix each of them applies before sending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRepairPlan {
    pub helpers_needed: usize,
    pub downloads: BTreeMap<usize, MatrixQ>,
}

/// One plan per node, indexed by the failed node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairScheme {
    pub plans: Vec<NodeRepairPlan>,
}

/// A repair plan resolved against a concrete helper set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedRepair {
    pub failed: usize,
    pub helpers: Vec<usize>,
    /// `V_{j,i}` for each helper, same order as `helpers`
    pub send: Vec<MatrixQ>,
    /// stacked received symbols times `rebuild` gives the lost block
    pub rebuild: MatrixQ,
}

impl ResolvedRepair {
    pub fn bandwidth(&self) -> usize {
        self.send.iter().map(|v| v.cols()).sum()
    }

    /// Error transfer from helper position `h`: `V_{j,i} · R_j` (α × α).
    pub fn propagation(&self, h: usize) -> MatrixQ {
        let start: usize = self.send[..h].iter().map(|v| v.cols()).sum();
        let rj = self.rebuild.row_block(start, self.send[h].cols());
        self.send[h].mul(&rj).expect("shapes fixed at construction")
    }

    /// Rebuilds the block from the helpers' transmissions.
    pub fn combine(&self, field: &ExtField, sends: &[Vec<ExtElem>]) -> Result<Vec<ExtElem>> {
        if sends.len() != self.helpers.len() {
            return Err(Error::InadmissibleHelpers(format!(
                "expected {} transmissions, got {}",
                self.helpers.len(),
                sends.len()
            )));
        }
        let mut stacked = Vec::with_capacity(self.bandwidth());
        for (s, v) in sends.iter().zip(&self.send) {
            if s.len() != v.cols() {
                return Err(Error::DimensionMismatch("transmission length".into()));
            }
            stacked.extend(s.iter().cloned());
        }
        field.vec_mat(&stacked, &self.rebuild)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrayKind {
    Zigzag,
    Rowwise,
    Custom,
}

/// Serialized form: the `k × n` table of `α × α` blocks as nested arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayCodeDescriptor {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub alpha: usize,
    pub d_min: usize,
    pub blocks: Vec<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repair: Option<RepairScheme>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayCode {
    kind: ArrayKind,
    q: u32,
    n: usize,
    k: usize,
    alpha: usize,
    d_min: usize,
    generator: MatrixQ,
    repair: Option<RepairScheme>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

impl ArrayCode {
    pub(crate) fn from_parts(
        kind: ArrayKind,
        n: usize,
        k: usize,
        alpha: usize,
        d_min: usize,
        generator: MatrixQ,
        repair: Option<RepairScheme>,
    ) -> Self {
        Self {
            kind,
            q: generator.q(),
            n,
            k,
            alpha,
            d_min,
            generator,
            repair,
        }
    }

    /// Builds a code from an explicit block table, validating shapes, the
    /// systematic prefix, the MDS property when claimed, and the repair plans.
    pub fn from_descriptor(desc: &ArrayCodeDescriptor) -> Result<Self> {
        let (q, n, k, a) = (desc.q, desc.n, desc.k, desc.alpha);
        crate::field::BaseField::new(q)?;
        if k == 0 || k > n || a == 0 {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= k <= n and alpha >= 1, got n={n} k={k} alpha={a}"
            )));
        }
        if desc.blocks.len() != k || desc.blocks.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch("block table must be k x n".into()));
        }
        let mut g = MatrixQ::zeros(q, k * a, n * a);
        for (i, row) in desc.blocks.iter().enumerate() {
            for (j, block) in row.iter().enumerate() {
                if block.len() != a || block.iter().any(|r| r.len() != a) {
                    return Err(Error::DimensionMismatch(format!(
                        "block ({i},{j}) is not {a}x{a}"
                    )));
                }
                for (r, vals) in block.iter().enumerate() {
                    for (c, &v) in vals.iter().enumerate() {
                        if v >= q {
                            return Err(Error::Malformed(format!("entry {v} not below q")));
                        }
                        g.set(i * a + r, j * a + c, v);
                    }
                }
            }
        }
        if g.column_block(0, k * a) != MatrixQ::identity(q, k * a) {
            return Err(Error::InvalidParameters("generator is not systematic".into()));
        }
        if desc.d_min == 0 || desc.d_min > n - k + 1 {
            return Err(Error::InvalidParameters(format!("d_min {} out of range", desc.d_min)));
        }
        let code = Self::from_parts(ArrayKind::Custom, n, k, a, desc.d_min, g, desc.repair.clone());
        if desc.d_min == n - k + 1 && !code.is_mds() {
            return Err(Error::InvalidParameters("claimed MDS but a k-subset is singular".into()));
        }
        if let Some(scheme) = &code.repair {
            if scheme.plans.len() != n {
                return Err(Error::InvalidParameters("one repair plan per node required".into()));
            }
            for failed in 0..n {
                let helpers = code.default_helpers(failed, &(0..n).collect::<Vec<_>>())?;
                code.resolve_repair(failed, &helpers)?;
            }
        }
        Ok(code)
    }

    pub fn descriptor(&self) -> ArrayCodeDescriptor {
        let blocks = (0..self.k)
            .map(|i| (0..self.n).map(|j| self.block(i, j).to_rows()).collect())
            .collect();
        ArrayCodeDescriptor {
            q: self.q,
            n: self.n,
            k: self.k,
            alpha: self.alpha,
            d_min: self.d_min,
            blocks,
            repair: self.repair.clone(),
        }
    }

    pub fn kind(&self) -> ArrayKind {
        self.kind
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn d_min(&self) -> usize {
        self.d_min
    }

    pub fn generator(&self) -> &MatrixQ {
        &self.generator
    }

    pub fn repair_scheme(&self) -> Option<&RepairScheme> {
        self.repair.as_ref()
    }

    /// `A_{i,j}`
    pub fn block(&self, i: usize, j: usize) -> MatrixQ {
        self.generator
            .row_block(i * self.alpha, self.alpha)
            .column_block(j * self.alpha, self.alpha)
    }

    /// `G_j`, the `kα × α` block column of node `j`.
    pub fn block_column(&self, j: usize) -> MatrixQ {
        self.generator.column_block(j * self.alpha, self.alpha)
    }

    /// `G_S` for the listed nodes, in the given order.
    pub fn submatrix(&self, nodes: &[usize]) -> Result<MatrixQ> {
        for &j in nodes {
            if j >= self.n {
                return Err(Error::NodeOutOfRange(j));
            }
        }
        let cols: Vec<MatrixQ> = nodes.iter().map(|&j| self.block_column(j)).collect();
        MatrixQ::hstack(&cols.iter().collect::<Vec<_>>())
    }

    pub fn is_mds(&self) -> bool {
        subsets(self.n, self.k)
            .iter()
            .all(|s| self.submatrix(s).map(|m| m.rank() == self.k * self.alpha).unwrap_or(false))
    }

    fn check_field(&self, field: &ExtField) -> Result<()> {
        if field.q() != self.q {
            return Err(Error::InvalidParameters(format!(
                "symbols over F_{}^m but code is over F_{}",
                field.q(),
                self.q
            )));
        }
        Ok(())
    }

    /// `y = x G`, with `x` given as `k` blocks of `α` symbols.
    pub fn encode(&self, field: &ExtField, x: &[Vec<ExtElem>]) -> Result<Vec<Vec<ExtElem>>> {
        self.check_field(field)?;
        if x.len() != self.k || x.iter().any(|b| b.len() != self.alpha) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} blocks of {} symbols",
                self.k, self.alpha
            )));
        }
        let flat: Vec<ExtElem> = x.iter().flatten().cloned().collect();
        self.encode_flat(field, &flat)
    }

    pub(crate) fn encode_flat(&self, field: &ExtField, flat: &[ExtElem]) -> Result<Vec<Vec<ExtElem>>> {
        let y = field.vec_mat(flat, &self.generator)?;
        Ok(y.chunks(self.alpha).map(|c| c.to_vec()).collect())
    }

    /// Recovers `x` from any `k` blocks: `x = y_S · G_S⁻¹`.
    pub fn erasure_decode(
        &self,
        field: &ExtField,
        indices: &[usize],
        blocks: &[Vec<ExtElem>],
    ) -> Result<Vec<Vec<ExtElem>>> {
        self.check_field(field)?;
        if indices.len() != self.k || blocks.len() != self.k {
            return Err(Error::InsufficientNodes {
                have: indices.len().min(blocks.len()),
                need: self.k,
            });
        }
        let mut seen = indices.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.k {
            return Err(Error::Malformed("repeated node index".into()));
        }
        let inv = self.submatrix(indices)?.inverse()?;
        let flat: Vec<ExtElem> = blocks.iter().flatten().cloned().collect();
        if flat.len() != self.k * self.alpha {
            return Err(Error::DimensionMismatch("block length".into()));
        }
        let x = field.vec_mat(&flat, &inv)?;
        Ok(x.chunks(self.alpha).map(|c| c.to_vec()).collect())
    }

    fn plan(&self, failed: usize) -> Result<&NodeRepairPlan> {
        if failed >= self.n {
            return Err(Error::NodeOutOfRange(failed));
        }
        let scheme = self
            .repair
            .as_ref()
            .ok_or_else(|| Error::Unsupported("code has no repair scheme".into()))?;
        scheme
            .plans
            .get(failed)
            .ok_or_else(|| Error::InvalidParameters(format!("no repair plan for node {failed}")))
    }

    pub fn helpers_needed(&self, failed: usize) -> Result<usize> {
        Ok(self.plan(failed)?.helpers_needed)
    }

    /// The lowest-indexed helpers among `available` that the plan accepts.
    pub fn default_helpers(&self, failed: usize, available: &[usize]) -> Result<Vec<usize>> {
        let plan = self.plan(failed)?;
        let mut chosen: Vec<usize> = available
            .iter()
            .copied()
            .filter(|&j| j != failed && plan.downloads.contains_key(&j))
            .collect();
        chosen.sort_unstable();
        chosen.dedup();
        if chosen.len() < plan.helpers_needed {
            return Err(Error::InadmissibleHelpers(format!(
                "node {failed} needs {} helpers, {} available",
                plan.helpers_needed,
                chosen.len()
            )));
        }
        chosen.truncate(plan.helpers_needed);
        Ok(chosen)
    }

    /// Solves `[G_j V_{j,i}]_j · R = G_i` for the rebuild matrix.
    pub fn resolve_repair(&self, failed: usize, helpers: &[usize]) -> Result<ResolvedRepair> {
        let plan = self.plan(failed)?;
        if helpers.len() != plan.helpers_needed {
            return Err(Error::InadmissibleHelpers(format!(
                "node {failed} needs exactly {} helpers, got {}",
                plan.helpers_needed,
                helpers.len()
            )));
        }
        let mut send = Vec::with_capacity(helpers.len());
        let mut parts = Vec::with_capacity(helpers.len());
        for (pos, &j) in helpers.iter().enumerate() {
            if j == failed || helpers[..pos].contains(&j) {
                return Err(Error::InadmissibleHelpers(format!("helper {j} repeated or failed")));
            }
            let v = plan
                .downloads
                .get(&j)
                .ok_or_else(|| Error::InadmissibleHelpers(format!("node {j} cannot help {failed}")))?;
            parts.push(self.block_column(j).mul(v)?);
            send.push(v.clone());
        }
        let h = MatrixQ::hstack(&parts.iter().collect::<Vec<_>>())?;
        let rebuild = h
            .solve_matrix(&self.block_column(failed))
            .map_err(|_| Error::InadmissibleHelpers("helper set cannot rebuild the node".into()))?;
        Ok(ResolvedRepair {
            failed,
            helpers: helpers.to_vec(),
            send,
            rebuild,
        })
    }

    /// Repairs `failed` from the helpers' full blocks, each helper first
    /// projecting its block through `V_{j,failed}`.
    pub fn msr_repair(
        &self,
        field: &ExtField,
        failed: usize,
        helpers: &[usize],
        helper_blocks: &[Vec<ExtElem>],
    ) -> Result<Vec<ExtElem>> {
        self.check_field(field)?;
        let plan = self.resolve_repair(failed, helpers)?;
        if helper_blocks.len() != helpers.len() {
            return Err(Error::InadmissibleHelpers("one block per helper required".into()));
        }
        let sends = helper_blocks
            .iter()
            .zip(&plan.send)
            .map(|(b, v)| field.vec_mat(b, v))
            .collect::<Result<Vec<_>>>()?;
        plan.combine(field, &sends)
    }
}
