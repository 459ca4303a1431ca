//! Scenario files: a pinned scheme, a payload, a seed and a 1-based event
//! script, run on a fresh [`SystemState`].

use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundParams, BoundsReport};
use crate::concat::{RepairMode, Scheme, SchemeDescriptor};
use crate::error::{Error, Result};
use crate::field::ExtElem;
use crate::payload;
use crate::sim::{AdversarySpec, Event, EventRecord, Outcome, SystemState, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FileSpec {
    /// bytes mapped to one stripe
    Hex(String),
    Symbols(Vec<ExtElem>),
}

/// Optional assertions checked after the run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expect {
    /// verdict of each collect event, in order
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<Verdict>>,
    /// upper bound on the aggregate error rank after the last event
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_rank_at_most: Option<usize>,
    /// some event must push the aggregate error rank above this
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub peak_rank_above: Option<usize>,
    /// events allowed (and required) to end in an error outcome
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_events: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub scheme: SchemeDescriptor,
    /// random symbols drawn from the seed when absent
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<FileSpec>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub verification: bool,
    /// node indices are 1-based
    pub events: Vec<Event>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub met: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub scheme: SchemeDescriptor,
    pub seed: u64,
    pub verification: bool,
    /// the untouched encoding decodes from minimal node sets
    pub round_trip: bool,
    /// node indices are 1-based
    pub events: Vec<EventRecord>,
    /// aggregate error rank before the first event and after each one
    pub rank_trace: Vec<usize>,
    pub verdicts: Vec<Verdict>,
    pub within_tolerance: bool,
    pub bounds: BoundsReport,
    pub checks: Vec<Check>,
    pub success: bool,
    pub elapsed_ms: f64,
}

impl ScenarioConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Builds the scheme and the file, and checks every event against the
    /// scheme before anything runs. Returns 0-based events.
    pub fn prepare(&self) -> Result<(Scheme, Vec<ExtElem>, Vec<Event>)> {
        let scheme = Scheme::from_descriptor(&self.scheme)?;
        let field = scheme.field();
        let file = match &self.file {
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x6669_6c65);
                (0..scheme.file_len()).map(|_| field.random(&mut rng)).collect()
            }
            Some(FileSpec::Symbols(s)) => {
                if s.len() != scheme.file_len() {
                    return Err(Error::DimensionMismatch(format!(
                        "file has {} symbols, the scheme takes {}",
                        s.len(),
                        scheme.file_len()
                    )));
                }
                for x in s {
                    field.check(x)?;
                }
                s.clone()
            }
            Some(FileSpec::Hex(h)) => {
                let bytes = decode_hex(h)?;
                let mut stripes = payload::bytes_to_stripes(field, scheme.file_len(), &bytes)?;
                if stripes.len() != 1 {
                    return Err(Error::InvalidParameters(format!(
                        "hex payload of {} bytes exceeds one stripe",
                        bytes.len()
                    )));
                }
                stripes.pop().unwrap()
            }
        };
        let events = self
            .events
            .iter()
            .enumerate()
            .map(|(i, e)| validate_event(&scheme, e).map_err(|err| Error::Malformed(format!("event {}: {err}", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let mut statics = BTreeSet::new();
        let mut compromised = BTreeSet::new();
        for (i, e) in events.iter().enumerate() {
            if let Event::Corrupt { node, adversary } = e {
                if matches!(adversary, AdversarySpec::Static { .. }) && !statics.insert(*node) {
                    return Err(Error::Malformed(format!("event {}: {}", i + 1, Error::DoubleCorruption(*node + 1))));
                }
                compromised.insert(*node);
                if compromised.len() > scheme.t_max() {
                    return Err(Error::Malformed(format!(
                        "event {}: {}",
                        i + 1,
                        Error::AdversaryLimit { t: scheme.t_max() }
                    )));
                }
            }
        }
        Ok((scheme, file, events))
    }

    pub fn run(&self) -> Result<Report> {
        let start = Instant::now();
        let (scheme, file, events) = self.prepare()?;
        let round_trip = round_trip(&scheme, &file)?;
        let bounds = bounds::evaluate_all(&bound_params(&scheme));
        let mut state = SystemState::new(scheme, file, self.seed, self.verification)?;
        let mut rank_trace = vec![state.aggregate_error_rank()];
        for e in events {
            rank_trace.push(state.apply(e).aggregate_rank);
        }
        let records: Vec<EventRecord> = state
            .log()
            .iter()
            .map(|r| EventRecord {
                seq: r.seq + 1,
                event: r.event.shifted(1),
                outcome: r.outcome.shifted(1),
                aggregate_rank: r.aggregate_rank,
            })
            .collect();
        let verdicts: Vec<Verdict> = records
            .iter()
            .filter_map(|r| match r.outcome {
                Outcome::Collected { verdict, .. } => Some(verdict),
                _ => None,
            })
            .collect();
        let failed = records
            .iter()
            .filter(|r| matches!(r.outcome, Outcome::Failed { .. }))
            .count();
        let mut checks = vec![Check {
            name: "round_trip".into(),
            met: round_trip,
            detail: "every minimal node set decodes the fresh encoding".into(),
        }];
        let bad_collects: Vec<usize> = records
            .iter()
            .filter(|r| {
                matches!(
                    r.outcome,
                    Outcome::Collected {
                        verdict,
                        in_tolerance: true,
                        ..
                    } if verdict != Verdict::Success
                )
            })
            .map(|r| r.seq)
            .collect();
        checks.push(Check {
            name: "in_tolerance_collects".into(),
            met: bad_collects.is_empty(),
            detail: format!("failed in-tolerance collect events: {bad_collects:?}"),
        });
        let expect = self.expect.clone().unwrap_or_default();
        let allowed = expect.failed_events.unwrap_or(0);
        checks.push(Check {
            name: "failed_events".into(),
            met: failed == allowed,
            detail: format!("{failed} events ended in an error, {allowed} expected"),
        });
        if let Some(v) = &expect.verdicts {
            checks.push(Check {
                name: "verdicts".into(),
                met: *v == verdicts,
                detail: format!("expected {v:?}, got {verdicts:?}"),
            });
        }
        let last = *rank_trace.last().unwrap();
        if let Some(max) = expect.final_rank_at_most {
            checks.push(Check {
                name: "final_rank_at_most".into(),
                met: last <= max,
                detail: format!("final aggregate rank {last}, limit {max}"),
            });
        }
        if let Some(floor) = expect.peak_rank_above {
            let peak = rank_trace.iter().copied().max().unwrap_or(0);
            checks.push(Check {
                name: "peak_rank_above".into(),
                met: peak > floor,
                detail: format!("peak aggregate rank {peak}, must exceed {floor}"),
            });
        }
        let success = checks.iter().all(|c| c.met);
        Ok(Report {
            name: self.name.clone(),
            scheme: state.scheme().descriptor(),
            seed: self.seed,
            verification: self.verification,
            round_trip,
            events: records,
            rank_trace,
            verdicts,
            within_tolerance: state.within_tolerance(),
            bounds,
            checks,
            success,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        })
    }
}

fn decode_hex(h: &str) -> Result<Vec<u8>> {
    let h: String = h.chars().filter(|c| !c.is_whitespace()).collect();
    if h.len() % 2 != 0 {
        return Err(Error::Malformed("odd-length hex payload".into()));
    }
    (0..h.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&h[i..i + 2], 16).map_err(|e| Error::Malformed(format!("hex payload: {e}"))))
        .collect()
}

fn one_based(j: usize, n: usize) -> Result<usize> {
    if j == 0 || j > n {
        return Err(Error::NodeOutOfRange(j));
    }
    Ok(j - 1)
}

/// Checks a 1-based event against `scheme` and returns it 0-based.
pub fn validate_event(scheme: &Scheme, e: &Event) -> Result<Event> {
    let n = scheme.n();
    let shifted = match e {
        Event::Corrupt { node, adversary } => {
            let node = one_based(*node, n)?;
            if let AdversarySpec::Static { error: Some(err) } = adversary {
                if err.len() != scheme.alpha() {
                    return Err(Error::DimensionMismatch(format!(
                        "error block must have {} symbols",
                        scheme.alpha()
                    )));
                }
                for x in err {
                    scheme.field().check(x)?;
                }
            }
            Event::Corrupt {
                node,
                adversary: adversary.clone(),
            }
        }
        Event::Repair { node, helpers, mode } => {
            let node = one_based(*node, n)?;
            let helpers = match helpers {
                None => None,
                Some(h) => {
                    let h = h.iter().map(|&j| one_based(j, n)).collect::<Result<Vec<_>>>()?;
                    if h.contains(&node) {
                        return Err(Error::InadmissibleHelpers("a node cannot help its own repair".into()));
                    }
                    Some(h)
                }
            };
            match (scheme, mode) {
                (Scheme::One(_), RepairMode::Local) => {
                    return Err(Error::Unsupported("local repair needs a grouped scheme".into()))
                }
                (Scheme::Two(_), RepairMode::NaiveVerified) => {
                    return Err(Error::Unsupported(
                        "verified naive repair is defined for the ungrouped construction".into(),
                    ))
                }
                _ => {}
            }
            Event::Repair {
                node,
                helpers,
                mode: *mode,
            }
        }
        Event::Collect { nodes, verified } => {
            let nodes = nodes.iter().map(|&j| one_based(j, n)).collect::<Result<BTreeSet<_>>>()?;
            if nodes.len() < scheme.collect_size() {
                return Err(Error::InsufficientNodes {
                    have: nodes.len(),
                    need: scheme.collect_size(),
                });
            }
            Event::Collect {
                nodes: nodes.into_iter().collect(),
                verified: *verified,
            }
        }
        Event::Verify { node } => Event::Verify {
            node: one_based(*node, n)?,
        },
    };
    Ok(shifted)
}

/// Decodes the fresh encoding from every minimal node set (Construction I),
/// or from the lowest `n − d_min + 1` nodes and from all nodes.
fn round_trip(scheme: &Scheme, file: &[ExtElem]) -> Result<bool> {
    let blocks = scheme.encode(file)?;
    let sets: Vec<Vec<usize>> = match scheme {
        Scheme::One(c) => crate::array::k_subsets(scheme.n(), c.inner().k()),
        Scheme::Two(_) => vec![(0..scheme.collect_size()).collect(), (0..scheme.n()).collect()],
    };
    for s in sets {
        let views: Vec<_> = s.iter().map(|&j| (j, blocks[j].clone())).collect();
        if scheme.decode(&views)?.file != file {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bound inputs implied by a scheme.
pub fn bound_params(scheme: &Scheme) -> BoundParams {
    let alpha = scheme.alpha();
    let t = Some(scheme.t_max());
    match scheme {
        Scheme::One(c) => {
            let inner = c.inner();
            let others: Vec<usize> = (1..inner.n()).collect();
            let (d, beta) = match inner
                .default_helpers(0, &others)
                .and_then(|h| inner.resolve_repair(0, &h))
            {
                Ok(plan) => (
                    Some(plan.helpers.len()),
                    plan.send.iter().map(|v| v.cols()).max(),
                ),
                Err(_) => (None, None),
            };
            BoundParams {
                n: Some(inner.n()),
                k: Some(inner.k()),
                d,
                alpha: Some(alpha),
                beta,
                t,
                file_size: Some(scheme.file_len()),
                d_min: Some(inner.d_min()),
                ..Default::default()
            }
        }
        Scheme::Two(c) => BoundParams {
            n: Some(scheme.n()),
            alpha: Some(alpha),
            r: Some(c.r()),
            delta: Some(c.delta()),
            t,
            file_size: Some(scheme.file_len()),
            d_min: Some(c.d_min()),
            ..Default::default()
        },
    }
}
