//! Gabidulin codes: evaluation codes of linearized polynomials.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField};
use crate::linearized::LinearizedPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GabidulinRepr", into = "GabidulinRepr")]
pub struct GabidulinCode {
    field: ExtField,
    k: usize,
    points: Vec<ExtElem>,
}

#[derive(Serialize, Deserialize)]
struct GabidulinRepr {
    field: ExtField,
    k: usize,
    points: Vec<ExtElem>,
}

impl TryFrom<GabidulinRepr> for GabidulinCode {
    type Error = Error;

    fn try_from(r: GabidulinRepr) -> Result<Self> {
        GabidulinCode::new(&r.field, r.k, r.points)
    }
}

impl From<GabidulinCode> for GabidulinRepr {
    fn from(c: GabidulinCode) -> Self {
        GabidulinRepr {
            field: c.field,
            k: c.k,
            points: c.points,
        }
    }
}

/// The polynomial basis images `1, x, …, x^{n-1}`.
pub fn default_points(field: &ExtField, n: usize) -> Result<Vec<ExtElem>> {
    if n > field.m() {
        return Err(Error::InvalidParameters(format!(
            "{n} points need m >= {n}, have m = {}",
            field.m()
        )));
    }
    Ok((0..n).map(|i| field.basis(i)).collect())
}

impl GabidulinCode {
    pub fn new(field: &ExtField, k: usize, points: Vec<ExtElem>) -> Result<Self> {
        let n = points.len();
        if k == 0 || k > n || n > field.m() {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= K <= N <= m, got K={k}, N={n}, m={}",
                field.m()
            )));
        }
        if field.rank_q(&points)? != n {
            return Err(Error::InvalidPoints);
        }
        Ok(Self {
            field: field.clone(),
            k,
            points,
        })
    }

    pub fn with_default_points(field: &ExtField, n: usize, k: usize) -> Result<Self> {
        Self::new(field, k, default_points(field, n)?)
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum rank distance `N − K + 1`.
    pub fn d(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn points(&self) -> &[ExtElem] {
        &self.points
    }

    pub fn message_poly(&self, msg: &[ExtElem]) -> Result<LinearizedPolynomial> {
        if msg.len() != self.k {
            return Err(Error::Malformed(format!(
                "message has {} symbols, code dimension is {}",
                msg.len(),
                self.k
            )));
        }
        LinearizedPolynomial::new(&self.field, msg.to_vec())
    }

    pub fn encode(&self, msg: &[ExtElem]) -> Result<Vec<ExtElem>> {
        let f = self.message_poly(msg)?;
        Ok(self.points.iter().map(|g| f.eval_unchecked(g)).collect())
    }

    /// Decodes a received word where `None` marks an erased coordinate.
    pub fn decode(&self, received: &[Option<ExtElem>]) -> Result<Vec<ExtElem>> {
        if received.len() != self.n() {
            return Err(Error::Malformed(format!(
                "received word has {} symbols, code length is {}",
                received.len(),
                self.n()
            )));
        }
        let (positions, values): (Vec<usize>, Vec<ExtElem>) = received
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.clone().map(|v| (i, v)))
            .unzip();
        self.decode_subset(&positions, &values, None)
    }

    /// Decodes from the listed coordinates only; the rest count as erasures.
    ///
    /// With `override_points`, the values are read as evaluations at those
    /// points instead of at the code's own points.
    pub fn decode_subset(
        &self,
        positions: &[usize],
        values: &[ExtElem],
        override_points: Option<&[ExtElem]>,
    ) -> Result<Vec<ExtElem>> {
        if positions.len() != values.len() {
            return Err(Error::Malformed("positions and values differ in length".into()));
        }
        let points: Vec<ExtElem> = match override_points {
            Some(p) => {
                if p.len() != positions.len() {
                    return Err(Error::Malformed(
                        "override points must align with positions".into(),
                    ));
                }
                p.to_vec()
            }
            None => {
                let mut seen = vec![false; self.n()];
                for &i in positions {
                    if i >= self.n() {
                        return Err(Error::Malformed(format!("position {i} out of range")));
                    }
                    if std::mem::replace(&mut seen[i], true) {
                        return Err(Error::Malformed(format!("position {i} repeated")));
                    }
                }
                positions.iter().map(|&i| self.points[i].clone()).collect()
            }
        };
        for v in values {
            self.field.check(v)?;
        }
        if points.len() < self.k {
            return Err(Error::TooManyErasures {
                erased: self.n().saturating_sub(points.len()),
                k: self.k,
            });
        }
        if self.field.rank_q(&points)? != points.len() {
            return Err(Error::InvalidPoints);
        }
        let f = decode_points(&self.field, self.k, &points, values)?;
        Ok((0..self.k).map(|i| f.coeff(i)).collect())
    }
}

/// Recovers the message polynomial of q-degree below `k` from values at
/// `F_q`-independent points, correcting any error of rank at most
/// `⌊(len − k)/2⌋`.
pub fn decode_points(
    field: &ExtField,
    k: usize,
    points: &[ExtElem],
    values: &[ExtElem],
) -> Result<LinearizedPolynomial> {
    let n = points.len();
    if n < k {
        return Err(Error::TooManyErasures { erased: 0, k });
    }
    let tau = (n - k) / 2;
    let nv = tau + 1;
    let nn = tau + k;
    // row i: Σ_j v_j y_i^{q^j} − Σ_l n_l g_i^{q^l} = 0
    let mut rows: Vec<Vec<ExtElem>> = Vec::with_capacity(n);
    for (g, y) in points.iter().zip(values) {
        let mut row = Vec::with_capacity(nv + nn);
        let mut p = y.clone();
        for j in 0..nv {
            if j > 0 {
                p = field.frobenius(&p);
            }
            row.push(p.clone());
        }
        let mut p = g.clone();
        for l in 0..nn {
            if l > 0 {
                p = field.frobenius(&p);
            }
            row.push(field.neg(&p));
        }
        rows.push(row);
    }
    let sol = kernel_vector(field, rows, nv + nn).ok_or(Error::DecodeFailure)?;
    let v = LinearizedPolynomial::from_trusted(field, sol[..nv].to_vec());
    let num = LinearizedPolynomial::from_trusted(field, sol[nv..].to_vec());
    if v.is_zero() {
        return Err(Error::DecodeFailure);
    }
    let (f, rem) = num.left_divide(&v)?;
    if !rem.is_zero() || f.q_degree() >= k as isize {
        return Err(Error::DecodeFailure);
    }
    let err: Vec<ExtElem> = points
        .iter()
        .zip(values)
        .map(|(g, y)| field.sub(y, &f.eval_unchecked(g)))
        .collect();
    if field.rank_q(&err)? > tau {
        return Err(Error::DecodeFailure);
    }
    Ok(f)
}

/// Some nonzero vector in the right kernel of `rows`, if one exists.
fn kernel_vector(field: &ExtField, mut rows: Vec<Vec<ExtElem>>, cols: usize) -> Option<Vec<ExtElem>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = field.inv(&rows[r][c]).ok()?;
        for j in c..cols {
            rows[r][j] = field.mul(&rows[r][j], &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = field.sub(&row[j], &field.mul(&factor, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut sol = vec![field.zero(); cols];
    sol[free] = field.one();
    for (i, &p) in pivots.iter().enumerate() {
        if p < free {
            sol[p] = field.neg(&rows[i][free]);
        }
    }
    Some(sol)
}
