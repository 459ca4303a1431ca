//! Gabidulin outer codes concatenated with array inner codes.
//!
//! Every stored symbol is an evaluation of the message polynomial `f`:
//! node `j` holds `f` evaluated at [`Scheme::node_points`]`(j)`, because the
//! inner generator has entries in `F_q` and `f` is `F_q`-linear. Decoding any
//! node subset is therefore a Gabidulin decode at transformed points.

use serde::{Deserialize, Serialize};

use crate::array::{mds_array_rowwise, zigzag_5_3, ArrayCode, ArrayCodeDescriptor, ArrayKind, ResolvedRepair};
use crate::bounds;
use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField, MatrixQ};
use crate::gabidulin::{self, GabidulinCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Original,
    Repaired,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeView {
    pub index: usize,
    pub block: Vec<ExtElem>,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepairMode {
    /// Optimal-bandwidth repair through the inner code's repair scheme.
    Bandwidth,
    /// Full blocks from `r` nodes of the failed node's local group.
    Local,
    /// Verified download with outer decoding; handled by the simulator.
    NaiveVerified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub file: Vec<ExtElem>,
    /// nodes whose blocks entered the decoder
    pub used: Vec<usize>,
    /// extra blocks disagreeing with the decoded file
    pub inconsistent: Vec<usize>,
}

/// Gabidulin `[αk, M′]` outer code over an MDS array code with optimal repair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionOne {
    outer: GabidulinCode,
    inner: ArrayCode,
    t_max: usize,
}

impl ConstructionOne {
    pub fn new(field: &ExtField, inner: ArrayCode, file_len: usize, t_max: usize) -> Result<Self> {
        let n_outer = inner.alpha() * inner.k();
        if field.q() != inner.q() {
            return Err(Error::InvalidParameters("outer and inner base fields differ".into()));
        }
        if inner.d_min() != inner.n() - inner.k() + 1 {
            return Err(Error::InvalidParameters("inner code must be MDS".into()));
        }
        if inner.repair_scheme().is_none() {
            return Err(Error::InvalidParameters("inner code needs a repair scheme".into()));
        }
        let outer = GabidulinCode::with_default_points(field, n_outer, file_len)?;
        if 2 * t_max * inner.alpha() + 1 > outer.d() {
            return Err(Error::InvalidParameters(format!(
                "2*t*alpha + 1 = {} exceeds outer distance {}",
                2 * t_max * inner.alpha() + 1,
                outer.d()
            )));
        }
        Ok(Self { outer, inner, t_max })
    }

    /// File size `α(k − 2t)` that meets the static resilience bound.
    pub fn optimal_file_len(inner: &ArrayCode, t: usize) -> Result<usize> {
        if 2 * t >= inner.k() {
            return Err(Error::InfeasibleAdversary(format!("2t must be below k = {}", inner.k())));
        }
        Ok(inner.alpha() * (inner.k() - 2 * t))
    }

    pub fn outer(&self) -> &GabidulinCode {
        &self.outer
    }

    pub fn inner(&self) -> &ArrayCode {
        &self.inner
    }
}

/// Gabidulin outer code split into local groups, each encoded by a
/// `[r+δ−1, r, δ, α]` array code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTwo {
    outer: GabidulinCode,
    group_code: ArrayCode,
    n: usize,
    d_min: usize,
    t_max: usize,
}

impl ConstructionTwo {
    pub fn new(
        field: &ExtField,
        group_code: ArrayCode,
        n: usize,
        d_min: usize,
        file_len: usize,
        t_max: usize,
    ) -> Result<Self> {
        let gs = group_code.n();
        let (r, alpha) = (group_code.k(), group_code.alpha());
        let delta = gs + 1 - r;
        if field.q() != group_code.q() {
            return Err(Error::InvalidParameters("outer and group base fields differ".into()));
        }
        if n == 0 || n % gs != 0 {
            return Err(Error::InvalidParameters(format!(
                "group size {gs} must divide n = {n}"
            )));
        }
        if group_code.d_min() != delta {
            return Err(Error::InvalidParameters("group code must be MDS".into()));
        }
        if file_len < r * alpha {
            return Err(Error::InvalidParameters(format!(
                "file length {file_len} below r*alpha = {}",
                r * alpha
            )));
        }
        let n_outer = n / gs * r * alpha;
        let outer = GabidulinCode::with_default_points(field, n_outer, file_len)?;
        let needed = bounds::c2_required_distance(n, d_min, r, delta, alpha, t_max)?;
        if (outer.d() as i64) < needed {
            return Err(Error::InvalidParameters(format!(
                "outer distance {} below the required {needed}",
                outer.d()
            )));
        }
        Ok(Self {
            outer,
            group_code,
            n,
            d_min,
            t_max,
        })
    }

    /// Largest file size whose outer distance meets the decoding requirement.
    pub fn max_file_len(group_code: &ArrayCode, n: usize, d_min: usize, t: usize) -> Result<usize> {
        let gs = group_code.n();
        let (r, alpha) = (group_code.k(), group_code.alpha());
        let needed = bounds::c2_required_distance(n, d_min, r, gs + 1 - r, alpha, t)?;
        let n_outer = (n / gs * r * alpha) as i64;
        if needed > n_outer {
            return Err(Error::InfeasibleAdversary("required distance exceeds outer length".into()));
        }
        Ok((n_outer - needed + 1) as usize)
    }

    pub fn outer(&self) -> &GabidulinCode {
        &self.outer
    }

    pub fn group_code(&self) -> &ArrayCode {
        &self.group_code
    }

    pub fn group_size(&self) -> usize {
        self.group_code.n()
    }

    pub fn r(&self) -> usize {
        self.group_code.k()
    }

    pub fn delta(&self) -> usize {
        self.group_code.n() + 1 - self.group_code.k()
    }

    pub fn d_min(&self) -> usize {
        self.d_min
    }

    pub fn group_of(&self, node: usize) -> usize {
        node / self.group_size()
    }

    /// Node indices of the group containing `node`.
    pub fn group_members(&self, node: usize) -> Vec<usize> {
        let g = self.group_of(node);
        (g * self.group_size()..(g + 1) * self.group_size()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scheme {
    One(ConstructionOne),
    Two(ConstructionTwo),
}

impl Scheme {
    pub fn field(&self) -> &ExtField {
        self.outer().field()
    }

    pub fn outer(&self) -> &GabidulinCode {
        match self {
            Scheme::One(c) => &c.outer,
            Scheme::Two(c) => &c.outer,
        }
    }

    /// The array code applied to each node group (the whole system for
    /// Construction I).
    pub fn array(&self) -> &ArrayCode {
        match self {
            Scheme::One(c) => &c.inner,
            Scheme::Two(c) => &c.group_code,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Scheme::One(c) => c.inner.n(),
            Scheme::Two(c) => c.n,
        }
    }

    pub fn alpha(&self) -> usize {
        self.array().alpha()
    }

    pub fn t_max(&self) -> usize {
        match self {
            Scheme::One(c) => c.t_max,
            Scheme::Two(c) => c.t_max,
        }
    }

    pub fn file_len(&self) -> usize {
        self.outer().k()
    }

    /// Nodes a data collector contacts: `k`, or `n − d_min + 1`.
    pub fn collect_size(&self) -> usize {
        match self {
            Scheme::One(c) => c.inner.k(),
            Scheme::Two(c) => c.n - c.d_min + 1,
        }
    }

    fn check_node(&self, j: usize) -> Result<()> {
        if j >= self.n() {
            return Err(Error::NodeOutOfRange(j));
        }
        Ok(())
    }

    /// `(group offset into the outer codeword, local position)` of a node.
    fn locate(&self, j: usize) -> (usize, usize) {
        match self {
            Scheme::One(_) => (0, j),
            Scheme::Two(c) => {
                let gs = c.group_size();
                (j / gs * c.r() * self.alpha(), j % gs)
            }
        }
    }

    fn outer_slice(&self) -> usize {
        self.array().k() * self.alpha()
    }

    /// `α` evaluation points whose images under `f` are node `j`'s block.
    pub fn node_points(&self, j: usize) -> Result<Vec<ExtElem>> {
        self.check_node(j)?;
        let (off, local) = self.locate(j);
        let g = &self.outer().points()[off..off + self.outer_slice()];
        self.field().vec_mat(g, &self.array().block_column(local))
    }

    /// Transformed evaluation points `g · G_S` for the listed nodes.
    pub fn transform_eval_points(&self, nodes: &[usize]) -> Result<Vec<ExtElem>> {
        let mut out = Vec::with_capacity(nodes.len() * self.alpha());
        for &j in nodes {
            out.extend(self.node_points(j)?);
        }
        Ok(out)
    }

    pub fn encode(&self, file: &[ExtElem]) -> Result<Vec<Vec<ExtElem>>> {
        let c = self.outer().encode(file)?;
        self.encode_codeword(&c)
    }

    /// Inner-encodes an outer codeword.
    pub fn encode_codeword(&self, c: &[ExtElem]) -> Result<Vec<Vec<ExtElem>>> {
        let field = self.field();
        match self {
            Scheme::One(s) => s.inner.encode_flat(field, c),
            Scheme::Two(s) => {
                let mut out = Vec::with_capacity(s.n);
                for chunk in c.chunks(self.outer_slice()) {
                    out.extend(s.group_code.encode_flat(field, chunk)?);
                }
                Ok(out)
            }
        }
    }

    /// Blocks every node would hold if the stored file were `file`.
    pub fn blocks_for(&self, f: &crate::linearized::LinearizedPolynomial, j: usize) -> Result<Vec<ExtElem>> {
        Ok(self
            .node_points(j)?
            .iter()
            .map(|p| f.eval_unchecked(p))
            .collect())
    }

    /// Which of `nodes` feed the decoder: the `k` lowest for Construction I,
    /// the `r` lowest per group for Construction II.
    pub fn useful_nodes(&self, nodes: &[usize]) -> Vec<usize> {
        let mut sorted = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        match self {
            Scheme::One(c) => {
                sorted.truncate(c.inner.k());
                sorted
            }
            Scheme::Two(c) => {
                let mut per_group = vec![0usize; c.n / c.group_size()];
                sorted
                    .into_iter()
                    .filter(|&j| {
                        let g = c.group_of(j);
                        per_group[g] += 1;
                        per_group[g] <= c.r()
                    })
                    .collect()
            }
        }
    }

    /// Decodes from node blocks; see [`useful_nodes`](Self::useful_nodes).
    pub fn decode(&self, views: &[(usize, Vec<ExtElem>)]) -> Result<DecodeOutcome> {
        let mut nodes: Vec<usize> = views.iter().map(|(j, _)| *j).collect();
        for &j in &nodes {
            self.check_node(j)?;
        }
        nodes.sort_unstable();
        let before = nodes.len();
        nodes.dedup();
        if nodes.len() != before {
            return Err(Error::Malformed("repeated node in collection".into()));
        }
        if nodes.len() < self.collect_size() {
            return Err(Error::InsufficientNodes {
                have: nodes.len(),
                need: self.collect_size(),
            });
        }
        let used = self.useful_nodes(&nodes);
        let mut points = Vec::new();
        let mut values = Vec::new();
        for &j in &used {
            let (_, block) = views.iter().find(|(i, _)| *i == j).unwrap();
            if block.len() != self.alpha() {
                return Err(Error::DimensionMismatch(format!("node {j} block length")));
            }
            points.extend(self.node_points(j)?);
            values.extend(block.iter().cloned());
        }
        let f = gabidulin::decode_points(self.field(), self.file_len(), &points, &values)?;
        let mut inconsistent = Vec::new();
        for (j, block) in views {
            if !used.contains(j) && &self.blocks_for(&f, *j)? != block {
                inconsistent.push(*j);
            }
        }
        inconsistent.sort_unstable();
        Ok(DecodeOutcome {
            file: (0..self.file_len()).map(|i| f.coeff(i)).collect(),
            used,
            inconsistent,
        })
    }

    /// Lowest-indexed admissible helpers among `available`.
    pub fn default_helpers(&self, failed: usize, mode: RepairMode, available: &[usize]) -> Result<Vec<usize>> {
        self.check_node(failed)?;
        match (self, mode) {
            (Scheme::One(c), RepairMode::Bandwidth) => c.inner.default_helpers(failed, available),
            (Scheme::One(_), RepairMode::Local) => Err(Error::Unsupported(
                "local repair needs a grouped scheme".into(),
            )),
            (Scheme::Two(c), RepairMode::Bandwidth) => {
                let members = c.group_members(failed);
                let base = members[0];
                let local: Vec<usize> = available
                    .iter()
                    .filter(|j| members.contains(j))
                    .map(|j| j - base)
                    .collect();
                Ok(c
                    .group_code
                    .default_helpers(failed - base, &local)?
                    .into_iter()
                    .map(|j| j + base)
                    .collect())
            }
            (Scheme::Two(c), RepairMode::Local) => {
                let mut local: Vec<usize> = available
                    .iter()
                    .copied()
                    .filter(|&j| j != failed && c.group_of(j) == c.group_of(failed))
                    .collect();
                local.sort_unstable();
                local.dedup();
                if local.len() < c.r() {
                    return Err(Error::GroupUnrepairable {
                        node: failed,
                        available: local.len(),
                        needed: c.r(),
                    });
                }
                local.truncate(c.r());
                Ok(local)
            }
            (_, RepairMode::NaiveVerified) => Err(Error::Unsupported(
                "naive repair helpers are chosen by the simulator".into(),
            )),
        }
    }

    /// The repair rule for `failed` from `helpers`, in global node indices.
    pub fn resolve_repair(&self, failed: usize, helpers: &[usize], mode: RepairMode) -> Result<ResolvedRepair> {
        self.check_node(failed)?;
        for &j in helpers {
            self.check_node(j)?;
        }
        match (self, mode) {
            (Scheme::One(c), RepairMode::Bandwidth) => c.inner.resolve_repair(failed, helpers),
            (Scheme::Two(c), RepairMode::Bandwidth) => {
                let members = c.group_members(failed);
                if let Some(j) = helpers.iter().find(|j| !members.contains(j)) {
                    return Err(Error::InadmissibleHelpers(format!(
                        "node {j} is outside the group of node {failed}"
                    )));
                }
                let base = members[0];
                let local: Vec<usize> = helpers.iter().map(|j| j - base).collect();
                let mut plan = c.group_code.resolve_repair(failed - base, &local)?;
                plan.failed = failed;
                plan.helpers = helpers.to_vec();
                Ok(plan)
            }
            (Scheme::Two(c), RepairMode::Local) => c.local_plan(failed, helpers),
            (Scheme::One(_), RepairMode::Local) => Err(Error::Unsupported(
                "local repair needs a grouped scheme".into(),
            )),
            (_, RepairMode::NaiveVerified) => Err(Error::Unsupported(
                "naive repair is not a linear rebuild rule".into(),
            )),
        }
    }
}

impl ConstructionTwo {
    /// Full-block repair from `r` group members: erasure-decode the group
    /// and re-encode the lost position, folded into one rebuild matrix.
    fn local_plan(&self, failed: usize, helpers: &[usize]) -> Result<ResolvedRepair> {
        let members = self.group_members(failed);
        let mut seen = helpers.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != helpers.len() || helpers.contains(&failed) {
            return Err(Error::InadmissibleHelpers("helpers must be distinct survivors".into()));
        }
        if let Some(j) = helpers.iter().find(|j| !members.contains(j)) {
            return Err(Error::InadmissibleHelpers(format!(
                "node {j} is outside the group of node {failed}"
            )));
        }
        if helpers.len() != self.r() {
            return Err(Error::InadmissibleHelpers(format!(
                "local repair needs exactly r = {} helpers",
                self.r()
            )));
        }
        let base = members[0];
        let local: Vec<usize> = helpers.iter().map(|j| j - base).collect();
        let gs_inv = self.group_code.submatrix(&local)?.inverse()?;
        let rebuild = gs_inv.mul(&self.group_code.block_column(failed - base))?;
        let id = MatrixQ::identity(self.group_code.q(), self.group_code.alpha());
        Ok(ResolvedRepair {
            failed,
            helpers: helpers.to_vec(),
            send: vec![id; helpers.len()],
            rebuild,
        })
    }

    /// Rebuilds `failed` from full blocks of `r` group members.
    pub fn local_repair(&self, failed: usize, helpers: &[usize], blocks: &[Vec<ExtElem>]) -> Result<Vec<ExtElem>> {
        if failed >= self.n {
            return Err(Error::NodeOutOfRange(failed));
        }
        let survivors = helpers.iter().filter(|&&j| j != failed && self.group_of(j) == self.group_of(failed)).count();
        if survivors < self.r() {
            return Err(Error::GroupUnrepairable {
                node: failed,
                available: survivors,
                needed: self.r(),
            });
        }
        let plan = self.local_plan(failed, helpers)?;
        plan.combine(self.outer.field(), blocks)
    }
}

/// Inner (or per-group) array code choice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InnerSpec {
    /// the `(5,3)` zigzag code with `α = 4`
    Zigzag,
    Rowwise {
        r: usize,
        delta: usize,
        alpha: usize,
    },
    Custom {
        code: ArrayCodeDescriptor,
    },
}

impl InnerSpec {
    pub fn build(&self, q: u32) -> Result<ArrayCode> {
        match self {
            InnerSpec::Zigzag => zigzag_5_3(q),
            InnerSpec::Rowwise { r, delta, alpha } => mds_array_rowwise(*r, *delta, *alpha, q),
            InnerSpec::Custom { code } => {
                if code.q != q {
                    return Err(Error::InvalidParameters("inner code base field differs".into()));
                }
                ArrayCode::from_descriptor(code)
            }
        }
    }

    fn of(code: &ArrayCode) -> Self {
        match code.kind() {
            ArrayKind::Zigzag => InnerSpec::Zigzag,
            ArrayKind::Rowwise => InnerSpec::Rowwise {
                r: code.k(),
                delta: code.n() - code.k() + 1,
                alpha: code.alpha(),
            },
            ArrayKind::Custom => InnerSpec::Custom {
                code: code.descriptor(),
            },
        }
    }
}

/// Everything needed to rebuild a [`Scheme`]. Omitted optional fields take
/// the canonical modulus and the largest file length the adversary budget
/// allows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "snake_case")]
pub enum SchemeDescriptor {
    One {
        q: u32,
        m: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u32>>,
        inner: InnerSpec,
        t: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        file_len: Option<usize>,
    },
    Two {
        q: u32,
        m: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u32>>,
        inner: InnerSpec,
        n: usize,
        d_min: usize,
        t: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        file_len: Option<usize>,
    },
}

fn field_for(q: u32, m: usize, modulus: &Option<Vec<u32>>) -> Result<ExtField> {
    match modulus {
        None => ExtField::new(q, m),
        Some(p) => {
            if p.len() != m + 1 {
                return Err(Error::InvalidParameters(format!("modulus must have {} coefficients", m + 1)));
            }
            ExtField::with_modulus(q, p)
        }
    }
}

impl Scheme {
    pub fn from_descriptor(desc: &SchemeDescriptor) -> Result<Self> {
        match desc {
            SchemeDescriptor::One {
                q,
                m,
                modulus,
                inner,
                t,
                file_len,
            } => {
                let field = field_for(*q, *m, modulus)?;
                let inner = inner.build(*q)?;
                let len = match file_len {
                    Some(l) => *l,
                    None => ConstructionOne::optimal_file_len(&inner, *t)?,
                };
                Ok(Scheme::One(ConstructionOne::new(&field, inner, len, *t)?))
            }
            SchemeDescriptor::Two {
                q,
                m,
                modulus,
                inner,
                n,
                d_min,
                t,
                file_len,
            } => {
                let field = field_for(*q, *m, modulus)?;
                let group = inner.build(*q)?;
                let len = match file_len {
                    Some(l) => *l,
                    None => ConstructionTwo::max_file_len(&group, *n, *d_min, *t)?,
                };
                Ok(Scheme::Two(ConstructionTwo::new(&field, group, *n, *d_min, len, *t)?))
            }
        }
    }

    /// Fully pinned descriptor: modulus and file length are always present.
    pub fn descriptor(&self) -> SchemeDescriptor {
        let f = self.field();
        let (q, m, modulus) = (f.q(), f.m(), Some(f.modulus().to_vec()));
        match self {
            Scheme::One(c) => SchemeDescriptor::One {
                q,
                m,
                modulus,
                inner: InnerSpec::of(&c.inner),
                t: c.t_max,
                file_len: Some(c.outer.k()),
            },
            Scheme::Two(c) => SchemeDescriptor::Two {
                q,
                m,
                modulus,
                inner: InnerSpec::of(&c.group_code),
                n: c.n,
                d_min: c.d_min,
                t: c.t_max,
                file_len: Some(c.outer.k()),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::{k_subsets, mds_array_rowwise, zigzag_5_3};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn example_one() -> Scheme {
        let f = ExtField::new(5, 12).unwrap();
        Scheme::One(ConstructionOne::new(&f, zigzag_5_3(5).unwrap(), 4, 1).unwrap())
    }

    fn example_three(group: ArrayCode) -> Scheme {
        let f = ExtField::new(5, 36).unwrap();
        Scheme::Two(ConstructionTwo::new(&f, group, 15, 5, 20, 1).unwrap())
    }

    #[test]
    fn systematic_nodes_hold_codeword() {
        let s = example_one();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = s.field().clone();
        let file: Vec<_> = (0..4).map(|_| f.random(&mut rng)).collect();
        let c = s.outer().encode(&file).unwrap();
        let nodes = s.encode(&file).unwrap();
        for i in 0..3 {
            assert_eq!(nodes[i], c[4 * i..4 * i + 4]);
        }
        assert_eq!(ConstructionOne::optimal_file_len(s.array(), 1).unwrap(), 4);
    }

    #[test]
    fn transformed_points_for_nodes_one_two_four() {
        let s = example_one();
        let f = s.field();
        let g = s.outer().points();
        let pts = s.transform_eval_points(&[0, 1, 3]).unwrap();
        assert_eq!(&pts[..8], &g[..8]);
        for c in 0..4 {
            let sum = f.add(&f.add(&g[c], &g[c + 4]), &g[c + 8]);
            assert_eq!(pts[8 + c], sum);
        }
        for sub in k_subsets(5, 3) {
            let p = s.transform_eval_points(&sub).unwrap();
            assert_eq!(f.rank_q(&p).unwrap(), 12);
        }
        assert_eq!(s.transform_eval_points(&[0, 1, 2]).unwrap(), g);
    }

    #[test]
    fn node_blocks_are_evaluations() {
        let s = example_three(zigzag_5_3(5).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = s.field().clone();
        let file: Vec<_> = (0..20).map(|_| f.random(&mut rng)).collect();
        let poly = s.outer().message_poly(&file).unwrap();
        let nodes = s.encode(&file).unwrap();
        assert_eq!(nodes.len(), 15);
        for (j, b) in nodes.iter().enumerate() {
            assert_eq!(&s.blocks_for(&poly, j).unwrap(), b);
        }
    }

    #[test]
    fn example_three_group_propagation() {
        let s = example_three(zigzag_5_3(5).unwrap());
        let plan = s.resolve_repair(1, &[0, 2, 4], RepairMode::Local).unwrap();
        // rows (0,0,0,−2⁻¹), (0,0,−1,0), (0,−2,0,0), (−1,0,0,0) over F_5
        let expected = MatrixQ::from_rows(5, &[[0, 0, 0, 2], [0, 0, 4, 0], [0, 3, 0, 0], [4, 0, 0, 0]]).unwrap();
        assert_eq!(plan.propagation(1), expected);
    }

    #[test]
    fn local_repair_exact_and_confined() {
        let s = example_three(mds_array_rowwise(3, 3, 4, 5).unwrap());
        let Scheme::Two(c2) = &s else { unreachable!() };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = s.field().clone();
        let file: Vec<_> = (0..20).map(|_| f.random(&mut rng)).collect();
        let nodes = s.encode(&file).unwrap();
        let helpers = s.default_helpers(7, RepairMode::Local, &(0..15).collect::<Vec<_>>()).unwrap();
        assert!(helpers.iter().all(|&j| (5..10).contains(&j)));
        let blocks: Vec<_> = helpers.iter().map(|&j| nodes[j].clone()).collect();
        assert_eq!(c2.local_repair(7, &helpers, &blocks).unwrap(), nodes[7]);
        assert!(matches!(
            c2.local_repair(7, &[5, 6], &blocks[..2]),
            Err(Error::GroupUnrepairable { .. })
        ));
    }

    #[test]
    fn any_eleven_nodes_decode_error_free() {
        let s = example_three(mds_array_rowwise(3, 3, 4, 5).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = s.field().clone();
        let file: Vec<_> = (0..20).map(|_| f.random(&mut rng)).collect();
        let nodes = s.encode(&file).unwrap();
        // every pattern of four missing nodes, sampled
        for missing in k_subsets(15, 4).into_iter().step_by(97) {
            let views: Vec<_> = (0..15)
                .filter(|j| !missing.contains(j))
                .map(|j| (j, nodes[j].clone()))
                .collect();
            let out = s.decode(&views).unwrap();
            assert_eq!(out.file, file);
            assert!(out.inconsistent.is_empty());
        }
    }

    #[test]
    fn distance_requirement_enforced() {
        let f = ExtField::new(5, 36).unwrap();
        let group = mds_array_rowwise(3, 3, 4, 5).unwrap();
        assert!(ConstructionTwo::new(&f, group.clone(), 15, 5, 21, 1).is_err());
        assert_eq!(ConstructionTwo::max_file_len(&group, 15, 5, 1).unwrap(), 20);
        let g = ExtField::new(5, 12).unwrap();
        assert!(ConstructionOne::new(&g, zigzag_5_3(5).unwrap(), 5, 1).is_err());
    }
}
