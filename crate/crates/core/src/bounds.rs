//! Closed-form resilience-capacity and minimum-distance bounds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn div_ceil(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidParameters(format!("{name} must be positive")));
    }
    Ok(())
}

/// `Σ_{i=2t+1}^{k} min{(d−i+1)β, α}`
pub fn regen_resilience_bound(alpha: usize, beta: usize, d: usize, k: usize, t: usize) -> Result<i64> {
    if 2 * t >= k {
        return Err(Error::InfeasibleAdversary(format!("2t = {} must be below k = {k}", 2 * t)));
    }
    if k > d {
        return Err(Error::InvalidParameters(format!("k = {k} exceeds d = {d}")));
    }
    Ok((2 * t + 1..=k)
        .map(|i| ((d - i + 1) * beta).min(alpha) as i64)
        .sum())
}

/// `n − ⌈M/α⌉ + 1 − (⌈M/(rα)⌉ − 1)(δ − 1)`
pub fn lrc_dmin_bound(n: usize, m: usize, r: usize, delta: usize, alpha: usize) -> Result<i64> {
    for (name, v) in [("n", n), ("M", m), ("r", r), ("delta", delta), ("alpha", alpha)] {
        positive(name, v)?;
    }
    Ok(n as i64 - div_ceil(m, alpha) as i64 + 1
        - (div_ceil(m, r * alpha) as i64 - 1) * (delta as i64 - 1))
}

/// `(ρ, h)` for a data collector reading `n − d_min + 1` nodes.
pub fn rho_h(n: usize, d_min: usize, r: usize, delta: usize) -> Result<(usize, usize)> {
    positive("r", r)?;
    positive("delta", delta)?;
    if d_min == 0 || d_min > n {
        return Err(Error::InvalidParameters(format!("d_min = {d_min} must lie in 1..=n")));
    }
    let reach = n - d_min + 1;
    let group = r + delta - 1;
    let rho = reach / group;
    Ok((rho, reach - rho * group))
}

fn check_lrc_adversary(rho: usize, h: usize, r: usize, t: usize) -> Result<()> {
    if 2 * t >= rho * r + h.min(r) {
        return Err(Error::InfeasibleAdversary(format!(
            "2t = {} must be below rho*r + min(h, r) = {}",
            2 * t,
            rho * r + h.min(r)
        )));
    }
    Ok(())
}

/// `(ρr − 2t)α + min{hα, rα}`
pub fn lrc_resilience_bound(
    n: usize,
    d_min: usize,
    r: usize,
    delta: usize,
    alpha: usize,
    t: usize,
) -> Result<i64> {
    let (rho, h) = rho_h(n, d_min, r, delta)?;
    check_lrc_adversary(rho, h, r, t)?;
    Ok(((rho * r) as i64 - 2 * t as i64) * alpha as i64 + (h.min(r) * alpha) as i64)
}

/// Least outer distance `D` letting any `n − d_min + 1` nodes decode
/// against `t` static adversaries; never below 1.
pub fn c2_required_distance(
    n: usize,
    d_min: usize,
    r: usize,
    delta: usize,
    alpha: usize,
    t: usize,
) -> Result<i64> {
    let (rho, h) = rho_h(n, d_min, r, delta)?;
    let group = r + delta - 1;
    if n % group != 0 {
        return Err(Error::InvalidParameters(format!(
            "group size r + delta - 1 = {group} does not divide n = {n}"
        )));
    }
    let missing = (n / group - rho) * r * alpha;
    let d = (2 * t * alpha + missing) as i64 - (h.min(r) * alpha) as i64 + 1;
    Ok(d.max(1))
}

fn check_local_regen(r: usize, delta: usize, d: usize) -> Result<()> {
    if !(r + delta - 1 > d && d > r) {
        return Err(Error::InvalidParameters(format!(
            "need r + delta - 1 > d > r, got r={r} delta={delta} d={d}"
        )));
    }
    Ok(())
}

/// `(ρ − 2⌊t/d⌋)rα + (min{h, r} − 2 min{γ, r})α` with `γ = t − ⌊t/d⌋d`.
#[allow(clippy::too_many_arguments)]
pub fn msr_lrc_bound(
    n: usize,
    d_min: usize,
    r: usize,
    delta: usize,
    alpha: usize,
    _beta: usize,
    d: usize,
    t: usize,
) -> Result<i64> {
    check_local_regen(r, delta, d)?;
    let (rho, h) = rho_h(n, d_min, r, delta)?;
    check_lrc_adversary(rho, h, r, t)?;
    let full = (t / d) as i64;
    let gamma = t - (t / d) * d;
    let (rho, r, alpha) = (rho as i64, r as i64, alpha as i64);
    Ok((rho - 2 * full) * r * alpha
        + (h.min(r as usize) as i64 - 2 * gamma.min(r as usize) as i64) * alpha)
}

/// `r α − r(r−1)β/2`
pub fn b_mbr(r: usize, alpha: usize, beta: usize) -> i64 {
    (r * alpha) as i64 - (r * (r.saturating_sub(1)) / 2 * beta) as i64
}

/// `Σ_{i=from}^{to} (d−i+1)β`, empty when `from > to`.
fn mbr_tail(from: usize, to: usize, d: usize, beta: usize) -> i64 {
    (from..=to).map(|i| ((d + 1 - i) * beta) as i64).sum()
}

/// Both MBR-LRC terms; the second is `None` when no parameter tuple is admissible.
#[allow(clippy::too_many_arguments)]
pub fn mbr_lrc_terms(
    n: usize,
    d_min: usize,
    r: usize,
    delta: usize,
    alpha: usize,
    beta: usize,
    d: usize,
    t: usize,
) -> Result<(i64, Option<i64>)> {
    check_local_regen(r, delta, d)?;
    let (rho, h) = rho_h(n, d_min, r, delta)?;
    check_lrc_adversary(rho, h, r, t)?;
    let full = (t / d) as i64;
    let gamma = t - (t / d) * d;
    let term1 = (rho as i64 - 2 * full) * b_mbr(r, alpha, beta)
        - 2 * mbr_tail(1, gamma.min(r), d, beta)
        + mbr_tail(1, h.min(r), d, beta);

    let mut term2: Option<i64> = None;
    for rho_t in 0..=rho {
        for s in 0..=d / 2 {
            for s_t in 0..=d / 2 {
                let used = rho_t * s + (rho - rho_t) * s_t;
                if used > t {
                    continue;
                }
                let s_h = t - used;
                if 2 * s_h > h.min(r) {
                    continue;
                }
                let v = rho_t as i64 * mbr_tail(2 * s + 1, d, d, beta)
                    + (rho - rho_t) as i64 * mbr_tail(2 * s_t + 1, d, d, beta)
                    + mbr_tail(2 * s_h + 1, h.min(d), d, beta);
                term2 = Some(term2.map_or(v, |best| best.min(v)));
            }
        }
    }
    Ok((term1, term2))
}

/// `min{term I, term II}`, term II minimized over every admissible tuple.
#[allow(clippy::too_many_arguments)]
pub fn mbr_lrc_bound(
    n: usize,
    d_min: usize,
    r: usize,
    delta: usize,
    alpha: usize,
    beta: usize,
    d: usize,
    t: usize,
) -> Result<i64> {
    let (t1, t2) = mbr_lrc_terms(n, d_min, r, delta, alpha, beta, d, t)?;
    Ok(t2.map_or(t1, |v| v.min(t1)))
}

/// `α + (k − 2t − 1)β`
pub fn naive_dynamic_bound(alpha: usize, beta: usize, k: usize, t: usize) -> Result<i64> {
    if k < 2 * t + 1 {
        return Err(Error::InfeasibleAdversary(format!("k = {k} must be at least 2t + 1")));
    }
    Ok((alpha + (k - 2 * t - 1) * beta) as i64)
}

/// Parameters for evaluating every applicable bound at once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    pub r: Option<usize>,
    pub delta: Option<usize>,
    pub t: Option<usize>,
    /// file size for the minimum-distance bound
    pub file_size: Option<usize>,
    pub d_min: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub inputs: BoundParams,
    pub bounds: BTreeMap<String, i64>,
    pub errors: BTreeMap<String, String>,
}

/// Evaluates every bound whose inputs are present; failed preconditions are
/// reported per bound rather than aborting the rest.
pub fn evaluate_all(p: &BoundParams) -> BoundsReport {
    let mut report = BoundsReport {
        inputs: p.clone(),
        ..Default::default()
    };
    let mut record = |name: &str, v: Option<Result<i64>>| match v {
        Some(Ok(v)) => {
            report.bounds.insert(name.into(), v);
        }
        Some(Err(e)) => {
            report.errors.insert(name.into(), e.to_string());
        }
        None => {}
    };
    let t = p.t.unwrap_or(0);
    record(
        "regen_resilience_bound",
        (|| Some(regen_resilience_bound(p.alpha?, p.beta?, p.d?, p.k?, t)))(),
    );
    record(
        "naive_dynamic_bound",
        (|| Some(naive_dynamic_bound(p.alpha?, p.beta?, p.k?, t)))(),
    );
    record(
        "lrc_dmin_bound",
        (|| Some(lrc_dmin_bound(p.n?, p.file_size?, p.r?, p.delta?, p.alpha?)))(),
    );
    record(
        "lrc_resilience_bound",
        (|| Some(lrc_resilience_bound(p.n?, p.d_min?, p.r?, p.delta?, p.alpha?, t)))(),
    );
    record(
        "c2_required_D",
        (|| Some(c2_required_distance(p.n?, p.d_min?, p.r?, p.delta?, p.alpha?, t)))(),
    );
    record(
        "msr_lrc_bound",
        (|| Some(msr_lrc_bound(p.n?, p.d_min?, p.r?, p.delta?, p.alpha?, p.beta?, p.d?, t)))(),
    );
    record(
        "mbr_lrc_bound",
        (|| Some(mbr_lrc_bound(p.n?, p.d_min?, p.r?, p.delta?, p.alpha?, p.beta?, p.d?, t)))(),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regen_values() {
        assert_eq!(regen_resilience_bound(4, 2, 4, 3, 1).unwrap(), 4);
        assert_eq!(regen_resilience_bound(6, 2, 5, 4, 1).unwrap(), 10);
        assert_eq!(regen_resilience_bound(4, 2, 4, 3, 0).unwrap(), 12);
        assert!(matches!(
            regen_resilience_bound(4, 2, 4, 2, 1),
            Err(Error::InfeasibleAdversary(_))
        ));
    }

    #[test]
    fn lrc_values() {
        assert_eq!(lrc_dmin_bound(15, 28, 3, 3, 4).unwrap(), 5);
        assert_eq!(lrc_dmin_bound(15, 36, 3, 3, 4).unwrap(), 3);
        assert_eq!(lrc_dmin_bound(15, 28, 3, 1, 4).unwrap(), 15 - 7 + 1);
        assert_eq!(lrc_resilience_bound(15, 5, 3, 3, 4, 1).unwrap(), 20);
        assert_eq!(lrc_resilience_bound(15, 5, 3, 3, 4, 2).unwrap(), 12);
        assert_eq!(lrc_resilience_bound(15, 6, 3, 3, 4, 0).unwrap(), 24);
    }

    #[test]
    fn required_distance_values() {
        assert_eq!(c2_required_distance(15, 5, 3, 3, 4, 1).unwrap(), 17);
        assert_eq!(c2_required_distance(10, 3, 3, 3, 2, 1).unwrap(), 5);
        assert_eq!(c2_required_distance(15, 1, 3, 3, 4, 0).unwrap(), 1);
        assert!(c2_required_distance(14, 5, 3, 3, 4, 1).is_err());
    }

    #[test]
    fn msr_lrc_values() {
        assert_eq!(msr_lrc_bound(15, 5, 3, 3, 4, 2, 4, 1).unwrap(), 20);
        assert_eq!(msr_lrc_bound(15, 5, 3, 3, 4, 2, 4, 0).unwrap(), 28);
        for t in 0..3 {
            assert_eq!(
                msr_lrc_bound(15, 5, 3, 3, 4, 2, 4, t).unwrap(),
                lrc_resilience_bound(15, 5, 3, 3, 4, t).unwrap()
            );
        }
        assert!(msr_lrc_bound(15, 5, 3, 3, 4, 2, 3, 1).is_err());
    }

    #[test]
    fn mbr_lrc_values() {
        assert_eq!(b_mbr(3, 4, 1), 9);
        let (t1, t2) = mbr_lrc_terms(15, 5, 3, 3, 4, 1, 4, 1).unwrap();
        assert_eq!((t1, t2), (14, Some(17)));
        assert_eq!(mbr_lrc_bound(15, 5, 3, 3, 4, 1, 4, 1).unwrap(), 14);
        // at t = 0 the first term is ρ·B_MBR + Σ_{i≤min(h,r)} (d−i+1)β
        assert_eq!(mbr_lrc_bound(15, 5, 3, 3, 4, 1, 4, 0).unwrap(), 2 * 9 + 4);
    }

    #[test]
    fn naive_values() {
        assert_eq!(naive_dynamic_bound(4, 2, 3, 1).unwrap(), 4);
        assert_eq!(naive_dynamic_bound(6, 2, 5, 1).unwrap(), 10);
        assert!(naive_dynamic_bound(4, 2, 2, 1).is_err());
    }

    #[test]
    fn evaluate_all_reports_errors_per_bound() {
        let p = BoundParams {
            n: Some(15),
            d_min: Some(5),
            r: Some(3),
            delta: Some(3),
            alpha: Some(4),
            t: Some(1),
            file_size: Some(28),
            ..Default::default()
        };
        let rep = evaluate_all(&p);
        assert_eq!(rep.bounds["lrc_dmin_bound"], 5);
        assert_eq!(rep.bounds["lrc_resilience_bound"], 20);
        assert_eq!(rep.bounds["c2_required_D"], 17);
        assert!(!rep.bounds.contains_key("regen_resilience_bound"));
    }
}
