use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField, MatrixQ};

/// What a dynamically compromised node does each time it is asked for data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Honest,
    /// `y_j · V̂` for a fresh random `V̂` over `F_q`; passes verification.
    InSpace,
    /// fresh uniformly random symbols
    Junk,
    /// one of the three above, chosen per request
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RequestKind {
    RepairSend,
    FullBlock,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum AdversarySpec {
    /// Adds `error` to the stored block once; `None` draws it from the
    /// simulator's generator.
    Static {
        #[serde(default)]
        error: Option<Vec<ExtElem>>,
    },
    Dynamic {
        strategy: Strategy,
        #[serde(default)]
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Adversary {
    Static { error: Vec<ExtElem> },
    Dynamic { strategy: Strategy, seed: u64 },
}

/// The compromised nodes, at most `t` of them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    t: usize,
    entries: BTreeMap<usize, Adversary>,
}

impl Registry {
    pub fn new(t: usize) -> Self {
        Self {
            t,
            entries: BTreeMap::new(),
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn get(&self, node: usize) -> Option<&Adversary> {
        self.entries.get(&node)
    }

    pub fn compromised(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn dynamic(&self, node: usize) -> Option<(Strategy, u64)> {
        match self.entries.get(&node) {
            Some(Adversary::Dynamic { strategy, seed }) => Some((*strategy, *seed)),
            _ => None,
        }
    }

    pub fn register(&mut self, node: usize, adv: Adversary) -> Result<()> {
        if matches!(self.entries.get(&node), Some(Adversary::Static { .. })) {
            return Err(Error::DoubleCorruption(node));
        }
        if !self.entries.contains_key(&node) && self.entries.len() >= self.t {
            return Err(Error::AdversaryLimit { t: self.t });
        }
        self.entries.insert(node, adv);
        Ok(())
    }
}

fn mix(mut x: u64) -> u64 {
    // splitmix64 finalizer
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn request_rng(seed: u64, node: usize, counter: u64, kind: RequestKind) -> ChaCha8Rng {
    let s = mix(mix(mix(seed) ^ node as u64) ^ counter) ^ kind as u64;
    ChaCha8Rng::seed_from_u64(s)
}

/// The response of a dynamic node to one request. `block` is what the node
/// stores and `send` the matrix an honest node would apply.
pub fn respond(
    field: &ExtField,
    strategy: Strategy,
    seed: u64,
    node: usize,
    counter: u64,
    kind: RequestKind,
    block: &[ExtElem],
    send: &MatrixQ,
) -> Result<Vec<ExtElem>> {
    let mut rng = request_rng(seed, node, counter, kind);
    let strategy = match strategy {
        Strategy::Mixed => match rng.gen_range(0..3) {
            0 => Strategy::Honest,
            1 => Strategy::InSpace,
            _ => Strategy::Junk,
        },
        s => s,
    };
    match strategy {
        Strategy::Honest => field.vec_mat(block, send),
        Strategy::InSpace => {
            let mut v = MatrixQ::zeros(field.q(), send.rows(), send.cols());
            for r in 0..v.rows() {
                for c in 0..v.cols() {
                    v.set(r, c, rng.gen_range(0..field.q()));
                }
            }
            field.vec_mat(block, &v)
        }
        Strategy::Junk => Ok((0..send.cols()).map(|_| field.random(&mut rng)).collect()),
        Strategy::Mixed => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_limits() {
        let f = ExtField::new(5, 4).unwrap();
        let mut reg = Registry::new(1);
        reg.register(0, Adversary::Static { error: vec![f.one(); 4] }).unwrap();
        assert_eq!(
            reg.register(0, Adversary::Static { error: vec![f.one(); 4] }),
            Err(Error::DoubleCorruption(0))
        );
        assert_eq!(
            reg.register(1, Adversary::Dynamic { strategy: Strategy::Junk, seed: 0 }),
            Err(Error::AdversaryLimit { t: 1 })
        );
    }

    #[test]
    fn responses_replay_and_grow_in_rank() {
        let f = ExtField::new(5, 12).unwrap();
        let block: Vec<_> = (0..4).map(|i| f.basis(i)).collect();
        let id = MatrixQ::identity(5, 4);
        let a = respond(&f, Strategy::Junk, 9, 2, 0, RequestKind::FullBlock, &block, &id).unwrap();
        let b = respond(&f, Strategy::Junk, 9, 2, 0, RequestKind::FullBlock, &block, &id).unwrap();
        assert_eq!(a, b);
        let mut all = Vec::new();
        for c in 0..3 {
            all.extend(respond(&f, Strategy::Junk, 9, 2, c, RequestKind::FullBlock, &block, &id).unwrap());
        }
        assert!(f.rank_q(&all).unwrap() > 4);
    }
}
