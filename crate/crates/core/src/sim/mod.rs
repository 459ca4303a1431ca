//! Seeded discrete-event simulator of a storage system under attack.

pub mod adversary;
pub mod verifier;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use adversary::{Adversary, AdversarySpec, Registry, RequestKind, Strategy};
pub use verifier::Verifier;

use crate::concat::{NodeView, Provenance, RepairMode, Scheme};
use crate::error::{Error, Result};
use crate::field::{ExtElem, MatrixQ};
use crate::gabidulin;
use crate::linearized::LinearizedPolynomial;

/// One scripted action; node indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Event {
    Corrupt {
        node: usize,
        adversary: AdversarySpec,
    },
    /// Fails `node` and rebuilds it.
    Repair {
        node: usize,
        #[serde(default)]
        helpers: Option<Vec<usize>>,
        mode: RepairMode,
    },
    Collect {
        nodes: Vec<usize>,
        #[serde(default)]
        verified: Option<bool>,
    },
    Verify {
        node: usize,
    },
}

impl Event {
    /// Same event with node indices shifted by `delta` (for 1-based display).
    pub fn shifted(&self, delta: isize) -> Self {
        let s = |j: usize| (j as isize + delta) as usize;
        match self.clone() {
            Event::Corrupt { node, adversary } => Event::Corrupt { node: s(node), adversary },
            Event::Repair { node, helpers, mode } => Event::Repair {
                node: s(node),
                helpers: helpers.map(|h| h.into_iter().map(s).collect()),
                mode,
            },
            Event::Collect { nodes, verified } => Event::Collect {
                nodes: nodes.into_iter().map(s).collect(),
                verified,
            },
            Event::Verify { node } => Event::Verify { node: s(node) },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Success,
    WrongFile,
    DecodeFailure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepairPath {
    /// linear rebuild from the helpers' transmissions
    Direct,
    /// outer decode of the verified transmissions
    DecodeSends,
    /// outer decode of verified full blocks
    DecodeBlocks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Corrupted {
        node: usize,
    },
    Repaired {
        node: usize,
        mode: RepairMode,
        path: RepairPath,
        helpers: Vec<usize>,
        /// symbols downloaded, including rejected transmissions
        downloaded: usize,
        rejected: Vec<usize>,
        /// other nodes rewritten from the decoded file
        restored: Vec<usize>,
    },
    Collected {
        verdict: Verdict,
        used: Vec<usize>,
        erased: Vec<usize>,
        zero_filled: bool,
        in_tolerance: bool,
    },
    Verified {
        node: usize,
        pass: bool,
    },
    Failed {
        error: String,
    },
}

impl Outcome {
    pub fn shifted(&self, delta: isize) -> Self {
        let s = |j: usize| (j as isize + delta) as usize;
        let sv = |v: Vec<usize>| v.into_iter().map(s).collect::<Vec<_>>();
        match self.clone() {
            Outcome::Corrupted { node } => Outcome::Corrupted { node: s(node) },
            Outcome::Repaired {
                node,
                mode,
                path,
                helpers,
                downloaded,
                rejected,
                restored,
            } => Outcome::Repaired {
                node: s(node),
                mode,
                path,
                helpers: sv(helpers),
                downloaded,
                rejected: sv(rejected),
                restored: sv(restored),
            },
            Outcome::Collected {
                verdict,
                used,
                erased,
                zero_filled,
                in_tolerance,
            } => Outcome::Collected {
                verdict,
                used: sv(used),
                erased: sv(erased),
                zero_filled,
                in_tolerance,
            },
            Outcome::Verified { node, pass } => Outcome::Verified { node: s(node), pass },
            o @ Outcome::Failed { .. } => o,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub seq: usize,
    pub event: Event,
    pub outcome: Outcome,
    pub aggregate_rank: usize,
}

#[derive(Clone, Debug)]
pub struct SystemState {
    scheme: Scheme,
    file: Vec<ExtElem>,
    nodes: Vec<NodeView>,
    truth: Vec<Vec<ExtElem>>,
    verifier: Verifier,
    adversaries: Registry,
    verification: bool,
    log: Vec<EventRecord>,
    rng: ChaCha8Rng,
    requests: Vec<u64>,
    guarantee_voided: bool,
}

impl SystemState {
    pub fn new(scheme: Scheme, file: Vec<ExtElem>, seed: u64, verification: bool) -> Result<Self> {
        let blocks = scheme.encode(&file)?;
        let field = scheme.field().clone();
        let nodes = blocks
            .iter()
            .enumerate()
            .map(|(index, b)| NodeView {
                index,
                block: b.clone(),
                provenance: Provenance::Original,
            })
            .collect();
        let verifier = Verifier::new(&field, &blocks)?;
        let n = scheme.n();
        let t = scheme.t_max();
        Ok(Self {
            scheme,
            file,
            nodes,
            truth: blocks,
            verifier,
            adversaries: Registry::new(t),
            verification,
            log: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            requests: vec![0; n],
            guarantee_voided: false,
        })
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn file(&self) -> &[ExtElem] {
        &self.file
    }

    pub fn nodes(&self) -> &[NodeView] {
        &self.nodes
    }

    pub fn truth(&self) -> &[Vec<ExtElem>] {
        &self.truth
    }

    pub fn log(&self) -> &[EventRecord] {
        &self.log
    }

    pub fn verification(&self) -> bool {
        self.verification
    }

    pub fn adversaries(&self) -> &Registry {
        &self.adversaries
    }

    /// False once a compromised node has lied without being checked.
    pub fn within_tolerance(&self) -> bool {
        !self.guarantee_voided
    }

    fn check_node(&self, j: usize) -> Result<()> {
        if j >= self.nodes.len() {
            return Err(Error::NodeOutOfRange(j));
        }
        Ok(())
    }

    /// Rank over `F_q` of the stored-minus-true difference across all nodes.
    pub fn aggregate_error_rank(&self) -> usize {
        let field = self.scheme.field();
        let diff: Vec<ExtElem> = self
            .nodes
            .iter()
            .zip(&self.truth)
            .flat_map(|(v, t)| v.block.iter().zip(t).map(|(a, b)| field.sub(a, b)))
            .collect();
        field.rank_q(&diff).unwrap_or(0)
    }

    /// Checks transmissions claimed to come from `node` against its signature.
    pub fn verifier_check(&self, node: usize, sent: &[ExtElem]) -> Result<bool> {
        self.check_node(node)?;
        Ok(self.verifier.check(node, sent))
    }

    pub fn corrupt(&mut self, node: usize, spec: &AdversarySpec) -> Result<()> {
        self.check_node(node)?;
        let field = self.scheme.field().clone();
        let alpha = self.scheme.alpha();
        let adv = match spec {
            AdversarySpec::Static { error } => {
                let error = match error {
                    Some(e) => {
                        if e.len() != alpha {
                            return Err(Error::DimensionMismatch(format!(
                                "error block must have {alpha} symbols"
                            )));
                        }
                        for x in e {
                            field.check(x)?;
                        }
                        e.clone()
                    }
                    None => (0..alpha).map(|_| field.random(&mut self.rng)).collect(),
                };
                Adversary::Static { error }
            }
            AdversarySpec::Dynamic { strategy, seed } => Adversary::Dynamic {
                strategy: *strategy,
                seed: *seed,
            },
        };
        self.adversaries.register(node, adv.clone())?;
        if let Adversary::Static { error } = adv {
            let block = &mut self.nodes[node].block;
            for (b, e) in block.iter_mut().zip(&error) {
                field.add_assign(b, e);
            }
        }
        Ok(())
    }

    /// What `node` sends when asked for `block · send`.
    fn request(&mut self, node: usize, kind: RequestKind, send: &MatrixQ, checked: bool) -> Result<Vec<ExtElem>> {
        let field = self.scheme.field().clone();
        let honest = field.vec_mat(&self.nodes[node].block, send)?;
        let Some((strategy, seed)) = self.adversaries.dynamic(node) else {
            return Ok(honest);
        };
        let counter = self.requests[node];
        self.requests[node] += 1;
        let resp = adversary::respond(
            &field,
            strategy,
            seed,
            node,
            counter,
            kind,
            &self.nodes[node].block,
            send,
        )?;
        if !checked && resp != honest {
            self.guarantee_voided = true;
        }
        Ok(resp)
    }

    fn store(&mut self, node: usize, block: Vec<ExtElem>) -> Result<()> {
        let field = self.scheme.field().clone();
        self.verifier.sign(&field, node, &block)?;
        self.nodes[node].block = block;
        self.nodes[node].provenance = Provenance::Repaired;
        Ok(())
    }

    fn others(&self, failed: usize) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&j| j != failed).collect()
    }

    pub fn repair(&mut self, failed: usize, helpers: Option<&[usize]>, mode: RepairMode) -> Result<Outcome> {
        self.check_node(failed)?;
        if let Some(h) = helpers {
            for &j in h {
                self.check_node(j)?;
            }
        }
        match mode {
            RepairMode::Bandwidth => self.repair_bandwidth(failed, helpers),
            RepairMode::Local => self.repair_local(failed, helpers, Vec::new(), 0),
            RepairMode::NaiveVerified => self.repair_naive(failed, helpers),
        }
    }

    fn repair_bandwidth(&mut self, failed: usize, helpers: Option<&[usize]>) -> Result<Outcome> {
        let helpers = match helpers {
            Some(h) => h.to_vec(),
            None => self
                .scheme
                .default_helpers(failed, RepairMode::Bandwidth, &self.others(failed))?,
        };
        let plan = self.scheme.resolve_repair(failed, &helpers, RepairMode::Bandwidth)?;
        let mut sends = Vec::with_capacity(helpers.len());
        let mut rejected = Vec::new();
        for (&h, v) in helpers.iter().zip(&plan.send) {
            let resp = self.request(h, RequestKind::RepairSend, v, self.verification)?;
            if self.verification && !self.verifier.check(h, &resp) {
                rejected.push(h);
            }
            sends.push(resp);
        }
        let downloaded = plan.bandwidth();
        if !rejected.is_empty() {
            return match self.scheme {
                Scheme::One(_) => self.naive_blocks(failed, RepairMode::Bandwidth, rejected, downloaded),
                Scheme::Two(_) => self.repair_local(failed, None, rejected, downloaded),
            };
        }
        let block = plan.combine(self.scheme.field(), &sends)?;
        self.store(failed, block)?;
        Ok(Outcome::Repaired {
            node: failed,
            mode: RepairMode::Bandwidth,
            path: RepairPath::Direct,
            helpers,
            downloaded,
            rejected,
            restored: Vec::new(),
        })
    }

    /// Full-block group repair; under verification, rejected helpers are
    /// replaced by the next group survivors.
    fn repair_local(
        &mut self,
        failed: usize,
        helpers: Option<&[usize]>,
        mut rejected: Vec<usize>,
        mut downloaded: usize,
    ) -> Result<Outcome> {
        let Scheme::Two(c2) = &self.scheme else {
            return Err(Error::Unsupported("local repair needs a grouped scheme".into()));
        };
        let r = c2.r();
        let alpha = c2.group_code().alpha();
        let members: Vec<usize> = c2.group_members(failed).into_iter().filter(|&j| j != failed).collect();
        if let Some(h) = helpers {
            if let Some(j) = h.iter().find(|j| !members.contains(j)) {
                return Err(Error::InadmissibleHelpers(format!(
                    "node {j} is outside the group of node {failed}"
                )));
            }
        }
        let mut order: Vec<usize> = helpers.map(|h| h.to_vec()).unwrap_or_default();
        if self.verification || helpers.is_none() {
            let rest: Vec<usize> = members.iter().copied().filter(|j| !order.contains(j)).collect();
            order.extend(rest);
        }
        order.retain(|j| !rejected.contains(j));
        let id = MatrixQ::identity(self.scheme.field().q(), alpha);
        let mut chosen = Vec::new();
        let mut blocks = Vec::new();
        for h in order {
            if chosen.len() == r {
                break;
            }
            let resp = self.request(h, RequestKind::FullBlock, &id, self.verification)?;
            downloaded += alpha;
            if self.verification && !self.verifier.check(h, &resp) {
                rejected.push(h);
                continue;
            }
            chosen.push(h);
            blocks.push(resp);
        }
        if chosen.len() < r {
            return Err(Error::GroupUnrepairable {
                node: failed,
                available: chosen.len(),
                needed: r,
            });
        }
        let plan = self.scheme.resolve_repair(failed, &chosen, RepairMode::Local)?;
        let block = plan.combine(self.scheme.field(), &blocks)?;
        self.store(failed, block)?;
        Ok(Outcome::Repaired {
            node: failed,
            mode: RepairMode::Local,
            path: RepairPath::Direct,
            helpers: chosen,
            downloaded,
            rejected,
            restored: Vec::new(),
        })
    }

    fn repair_naive(&mut self, failed: usize, helpers: Option<&[usize]>) -> Result<Outcome> {
        let Scheme::One(_) = &self.scheme else {
            return Err(Error::Unsupported(
                "verified naive repair is defined for the ungrouped construction".into(),
            ));
        };
        let field = self.scheme.field().clone();
        let helpers = match helpers {
            Some(h) => h.to_vec(),
            None => self
                .scheme
                .default_helpers(failed, RepairMode::Bandwidth, &self.others(failed))?,
        };
        let plan = self.scheme.resolve_repair(failed, &helpers, RepairMode::Bandwidth)?;
        let mut rejected = Vec::new();
        let mut points = Vec::new();
        let mut values = Vec::new();
        for (&h, v) in helpers.iter().zip(&plan.send) {
            let resp = self.request(h, RequestKind::RepairSend, v, true)?;
            if !self.verifier.check(h, &resp) {
                rejected.push(h);
                continue;
            }
            points.extend(field.vec_mat(&self.scheme.node_points(h)?, v)?);
            values.extend(resp);
        }
        let downloaded = plan.bandwidth();
        if rejected.is_empty() {
            let (points, values) = independent_subset(&self.scheme, &points, &values);
            let beta = plan.send.iter().map(|v| v.cols()).max().unwrap_or(0);
            let m_file = self.scheme.file_len();
            if 2 * self.scheme.t_max() * beta + m_file <= points.len() {
                if let Ok(f) = gabidulin::decode_points(&field, m_file, &points, &values) {
                    let block = self.scheme.blocks_for(&f, failed)?;
                    self.store(failed, block)?;
                    return Ok(Outcome::Repaired {
                        node: failed,
                        mode: RepairMode::NaiveVerified,
                        path: RepairPath::DecodeSends,
                        helpers,
                        downloaded,
                        rejected,
                        restored: Vec::new(),
                    });
                }
            }
        }
        self.naive_blocks(failed, RepairMode::NaiveVerified, rejected, downloaded)
    }

    /// Downloads verified full blocks from the lowest-indexed passing nodes,
    /// decodes the file and rewrites `failed` plus every rejected node.
    fn naive_blocks(
        &mut self,
        failed: usize,
        mode: RepairMode,
        mut rejected: Vec<usize>,
        mut downloaded: usize,
    ) -> Result<Outcome> {
        let field = self.scheme.field().clone();
        let k = self.scheme.collect_size();
        let alpha = self.scheme.alpha();
        let id = MatrixQ::identity(field.q(), alpha);
        let mut views: Vec<(usize, Vec<ExtElem>)> = Vec::new();
        for h in self.others(failed) {
            if views.len() + rejected.len() >= k {
                break;
            }
            if rejected.contains(&h) {
                continue;
            }
            let resp = self.request(h, RequestKind::FullBlock, &id, true)?;
            downloaded += alpha;
            if self.verifier.check(h, &resp) {
                views.push((h, resp));
            } else {
                rejected.push(h);
            }
        }
        if views.len() + rejected.len() < k {
            return Err(Error::RepairFailure(format!(
                "only {} verified blocks available",
                views.len()
            )));
        }
        let f = self
            .decode_with_fallback(&views, &rejected)
            .map_err(|_| Error::RepairFailure("outer decoding overloaded".into()))?
            .0;
        let helpers: Vec<usize> = views.iter().map(|(j, _)| *j).collect();
        let mut restored = Vec::new();
        for j in std::iter::once(failed).chain(rejected.iter().copied()) {
            let block = self.scheme.blocks_for(&f, j)?;
            if j != failed {
                if self.nodes[j].block == block {
                    continue;
                }
                restored.push(j);
            }
            self.store(j, block)?;
        }
        Ok(Outcome::Repaired {
            node: failed,
            mode,
            path: RepairPath::DecodeBlocks,
            helpers,
            downloaded,
            rejected,
            restored,
        })
    }

    /// Decodes from `views`; if that fails and some nodes were erased,
    /// retries with their coordinates set to zero. Returns the polynomial
    /// and whether the retry was needed.
    fn decode_with_fallback(
        &self,
        views: &[(usize, Vec<ExtElem>)],
        erased: &[usize],
    ) -> Result<(LinearizedPolynomial, bool, Vec<usize>)> {
        match self.decode_views(views) {
            Ok((f, used)) => Ok((f, false, used)),
            Err(e) if erased.is_empty() => Err(e),
            Err(_) => {
                let zero = vec![self.scheme.field().zero(); self.scheme.alpha()];
                let mut all = views.to_vec();
                all.extend(erased.iter().map(|&j| (j, zero.clone())));
                let (f, used) = self.decode_views(&all)?;
                Ok((f, true, used))
            }
        }
    }

    fn decode_views(&self, views: &[(usize, Vec<ExtElem>)]) -> Result<(LinearizedPolynomial, Vec<usize>)> {
        let nodes: Vec<usize> = views.iter().map(|(j, _)| *j).collect();
        let used = self.scheme.useful_nodes(&nodes);
        let mut points = Vec::new();
        let mut values = Vec::new();
        for &j in &used {
            let (_, b) = views.iter().find(|(i, _)| *i == j).unwrap();
            points.extend(self.scheme.node_points(j)?);
            values.extend(b.iter().cloned());
        }
        let f = gabidulin::decode_points(self.scheme.field(), self.scheme.file_len(), &points, &values)?;
        Ok((f, used))
    }

    /// Data collection from `nodes`; with verification, nodes whose blocks
    /// fail the check are treated as erasures.
    pub fn collect(&mut self, nodes: &[usize], verified: Option<bool>) -> Result<Outcome> {
        let verified = verified.unwrap_or(self.verification);
        let mut nodes = nodes.to_vec();
        for &j in &nodes {
            self.check_node(j)?;
        }
        nodes.sort_unstable();
        nodes.dedup();
        let need = self.scheme.collect_size();
        if nodes.len() < need {
            return Err(Error::InsufficientNodes {
                have: nodes.len(),
                need,
            });
        }
        let field = self.scheme.field().clone();
        let id = MatrixQ::identity(field.q(), self.scheme.alpha());
        let mut views = Vec::new();
        let mut erased = Vec::new();
        for &j in &nodes {
            let resp = self.request(j, RequestKind::FullBlock, &id, verified)?;
            if verified && !self.verifier.check(j, &resp) {
                erased.push(j);
            } else {
                views.push((j, resp));
            }
        }
        let in_tolerance = self.within_tolerance();
        let (verdict, used, zero_filled) = match self.decode_with_fallback(&views, &erased) {
            Ok((f, zero_filled, used)) => {
                let file: Vec<ExtElem> = (0..self.scheme.file_len()).map(|i| f.coeff(i)).collect();
                let verdict = if file == self.file {
                    Verdict::Success
                } else {
                    Verdict::WrongFile
                };
                (verdict, used, zero_filled)
            }
            Err(_) => (Verdict::DecodeFailure, Vec::new(), false),
        };
        Ok(Outcome::Collected {
            verdict,
            used,
            erased,
            zero_filled,
            in_tolerance,
        })
    }

    fn verify(&mut self, node: usize) -> Result<Outcome> {
        self.check_node(node)?;
        let id = MatrixQ::identity(self.scheme.field().q(), self.scheme.alpha());
        let resp = self.request(node, RequestKind::FullBlock, &id, true)?;
        Ok(Outcome::Verified {
            node,
            pass: self.verifier.check(node, &resp),
        })
    }

    /// Runs one event, appends it to the log and returns the record.
    pub fn apply(&mut self, event: Event) -> &EventRecord {
        let result = match &event {
            Event::Corrupt { node, adversary } => {
                self.corrupt(*node, adversary).map(|_| Outcome::Corrupted { node: *node })
            }
            Event::Repair { node, helpers, mode } => self.repair(*node, helpers.as_deref(), *mode),
            Event::Collect { nodes, verified } => self.collect(nodes, *verified),
            Event::Verify { node } => self.verify(*node),
        };
        let outcome = result.unwrap_or_else(|e| Outcome::Failed { error: e.to_string() });
        let record = EventRecord {
            seq: self.log.len(),
            event,
            outcome,
            aggregate_rank: self.aggregate_error_rank(),
        };
        self.log.push(record);
        self.log.last().unwrap()
    }
}

/// Greedy `F_q`-independent subset of the points, with aligned values.
fn independent_subset(scheme: &Scheme, points: &[ExtElem], values: &[ExtElem]) -> (Vec<ExtElem>, Vec<ExtElem>) {
    let field = scheme.field();
    let mut pts: Vec<ExtElem> = Vec::new();
    let mut vals = Vec::new();
    for (p, v) in points.iter().zip(values) {
        pts.push(p.clone());
        if field.rank_q(&pts).unwrap_or(0) == pts.len() {
            vals.push(v.clone());
        } else {
            pts.pop();
        }
    }
    (pts, vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::zigzag_5_3;
    use crate::concat::ConstructionOne;
    use crate::field::ExtField;

    fn state(seed: u64, verification: bool) -> SystemState {
        let f = ExtField::new(5, 12).unwrap();
        let scheme = Scheme::One(ConstructionOne::new(&f, zigzag_5_3(5).unwrap(), 4, 1).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let file = (0..4).map(|_| f.random(&mut rng)).collect();
        SystemState::new(scheme, file, seed, verification).unwrap()
    }

    #[test]
    fn static_corruption_propagates_by_b21() {
        let mut s = state(1, false);
        let f = s.scheme().field().clone();
        let e: Vec<_> = (0..4).map(|i| f.basis(i)).collect();
        s.corrupt(0, &AdversarySpec::Static { error: Some(e.clone()) }).unwrap();
        assert_eq!(s.nodes()[0].block[0], f.add(&s.truth()[0][0], &e[0]));
        s.repair(1, None, RepairMode::Bandwidth).unwrap();
        // node 2 error = (−e1, −e2, −2⁻¹e1, −2⁻¹e2)
        let half = f.from_base(3);
        let expected = [
            f.neg(&e[0]),
            f.neg(&e[1]),
            f.neg(&f.mul(&half, &e[0])),
            f.neg(&f.mul(&half, &e[1])),
        ];
        for c in 0..4 {
            assert_eq!(f.sub(&s.nodes()[1].block[c], &s.truth()[1][c]), expected[c]);
        }
        assert!(s.aggregate_error_rank() <= 4);
        for sub in crate::array::k_subsets(5, 3) {
            let Outcome::Collected { verdict, .. } = s.collect(&sub, None).unwrap() else {
                panic!()
            };
            assert_eq!(verdict, Verdict::Success);
        }
    }

    #[test]
    fn replay_is_deterministic() {
        let script = vec![
            Event::Corrupt {
                node: 2,
                adversary: AdversarySpec::Dynamic { strategy: Strategy::Mixed, seed: 5 },
            },
            Event::Repair { node: 0, helpers: None, mode: RepairMode::Bandwidth },
            Event::Collect { nodes: vec![0, 1, 2], verified: None },
        ];
        let run = || {
            let mut s = state(3, true);
            for e in script.clone() {
                s.apply(e);
            }
            s.log().to_vec()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn naive_repair_restores_truth_under_junk() {
        let mut s = state(4, true);
        s.corrupt(3, &AdversarySpec::Dynamic { strategy: Strategy::Junk, seed: 1 }).unwrap();
        for node in [0, 1, 2, 4] {
            s.repair(node, None, RepairMode::NaiveVerified).unwrap();
            assert_eq!(s.nodes()[node].block, s.truth()[node]);
        }
    }

    #[test]
    fn adversary_limit_and_out_of_range() {
        let mut s = state(5, false);
        let spec = AdversarySpec::Static { error: None };
        s.corrupt(0, &spec).unwrap();
        assert_eq!(s.corrupt(0, &spec), Err(Error::DoubleCorruption(0)));
        assert_eq!(s.corrupt(1, &spec), Err(Error::AdversaryLimit { t: 1 }));
        assert_eq!(s.corrupt(9, &spec), Err(Error::NodeOutOfRange(9)));
        let rec = s.apply(Event::Collect { nodes: vec![0, 1], verified: None });
        assert!(matches!(rec.outcome, Outcome::Failed { .. }));
    }
}
