//! Byte payloads as outer-code files, and the JSON node-file format.
//!
//! A stripe of `B` bytes is read as the little-endian integer
//! `x = Σ b_i 256^i`, written in base `q` as `x = Σ d_j q^j`, and cut into
//! `M′` symbols of `m` digits each: symbol `s` has coefficient vector
//! `(d_{sm}, …, d_{sm+m−1})` in the polynomial basis. `B` is the largest
//! integer with `256^B ≤ q^{mM′}`; missing high digits are zero.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::concat::{Scheme, SchemeDescriptor};
use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField};

/// Bytes carried by one stripe of `symbols` elements of `F_{q^m}`.
pub fn bytes_per_stripe(q: u32, m: usize, symbols: usize) -> usize {
    let cap = BigUint::from(q).pow((m * symbols) as u32);
    ((cap.bits() - 1) / 8) as usize
}

fn digit(x: &BigUint, q: u32) -> u32 {
    (x % q).to_u32_digits().first().copied().unwrap_or(0)
}

/// Splits `bytes` into stripes of `symbols` field elements. An empty
/// payload still yields one all-zero stripe.
pub fn bytes_to_stripes(field: &ExtField, symbols: usize, bytes: &[u8]) -> Result<Vec<Vec<ExtElem>>> {
    let (q, m) = (field.q(), field.m());
    let bps = bytes_per_stripe(q, m, symbols);
    if bps == 0 {
        return Err(Error::InvalidParameters("stripe too small to hold a byte".into()));
    }
    let chunks: Vec<&[u8]> = if bytes.is_empty() {
        vec![&[]]
    } else {
        bytes.chunks(bps).collect()
    };
    chunks
        .into_iter()
        .map(|chunk| {
            let mut x = BigUint::from_bytes_le(chunk);
            (0..symbols)
                .map(|_| {
                    let coeffs: Vec<u32> = (0..m)
                        .map(|_| {
                            let d = digit(&x, q);
                            x /= q;
                            d
                        })
                        .collect();
                    field.elem(&coeffs)
                })
                .collect()
        })
        .collect()
}

/// Inverse of [`bytes_to_stripes`]; `len` is the original payload length.
pub fn stripes_to_bytes(field: &ExtField, stripes: &[Vec<ExtElem>], len: usize) -> Result<Vec<u8>> {
    let q = field.q();
    let symbols = stripes.first().map_or(0, |s| s.len());
    let bps = bytes_per_stripe(q, field.m(), symbols);
    let mut out = Vec::with_capacity(stripes.len() * bps);
    for stripe in stripes {
        if stripe.len() != symbols {
            return Err(Error::DimensionMismatch("stripes of unequal length".into()));
        }
        let mut x = BigUint::from(0u32);
        for s in stripe.iter().rev() {
            field.check(s)?;
            for &c in s.coeffs().iter().rev() {
                x = x * q + c;
            }
        }
        if x.bits() > 8 * bps as u64 {
            return Err(Error::Malformed("stripe value exceeds its byte capacity".into()));
        }
        let mut b = x.to_bytes_le();
        b.resize(bps, 0);
        out.extend(b);
    }
    if out.len() < len {
        return Err(Error::Malformed(format!(
            "payload length {len} exceeds the {} bytes held",
            out.len()
        )));
    }
    out.truncate(len);
    Ok(out)
}

/// Encoded payload: one entry per node (`null` when absent), each holding
/// that node's block for every stripe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeFile {
    pub scheme: SchemeDescriptor,
    pub payload_len: usize,
    pub nodes: Vec<Option<Vec<Vec<ExtElem>>>>,
}

impl NodeFile {
    pub fn encode(scheme: &Scheme, payload: &[u8]) -> Result<Self> {
        let stripes = bytes_to_stripes(scheme.field(), scheme.file_len(), payload)?;
        let mut nodes = vec![Vec::with_capacity(stripes.len()); scheme.n()];
        for s in &stripes {
            for (j, b) in scheme.encode(s)?.into_iter().enumerate() {
                nodes[j].push(b);
            }
        }
        Ok(Self {
            scheme: scheme.descriptor(),
            payload_len: payload.len(),
            nodes: nodes.into_iter().map(Some).collect(),
        })
    }

    /// Keeps only the listed (0-based) nodes.
    pub fn retain(&mut self, keep: &[usize]) {
        for (j, n) in self.nodes.iter_mut().enumerate() {
            if !keep.contains(&j) {
                *n = None;
            }
        }
    }

    /// Decodes every stripe from the nodes present.
    pub fn decode(&self) -> Result<Vec<u8>> {
        let scheme = Scheme::from_descriptor(&self.scheme)?;
        if self.nodes.len() != scheme.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} node entries for {} nodes",
                self.nodes.len(),
                scheme.n()
            )));
        }
        let present: Vec<(usize, &Vec<Vec<ExtElem>>)> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(j, n)| n.as_ref().map(|b| (j, b)))
            .collect();
        let count = present.first().map_or(0, |(_, b)| b.len());
        if present.iter().any(|(_, b)| b.len() != count) {
            return Err(Error::Malformed("nodes disagree on the stripe count".into()));
        }
        let mut stripes = Vec::with_capacity(count);
        for s in 0..count {
            let views: Vec<(usize, Vec<ExtElem>)> = present.iter().map(|(j, b)| (*j, b[s].clone())).collect();
            stripes.push(scheme.decode(&views)?.file);
        }
        if count == 0 {
            return Err(Error::InsufficientNodes {
                have: 0,
                need: scheme.collect_size(),
            });
        }
        stripes_to_bytes(scheme.field(), &stripes, self.payload_len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stripe_capacity() {
        // 5^48 ≈ 2^111.45
        assert_eq!(bytes_per_stripe(5, 12, 4), 13);
        assert_eq!(bytes_per_stripe(2, 8, 1), 1);
        assert_eq!(bytes_per_stripe(2, 4, 1), 0);
    }

    #[test]
    fn digits_are_little_endian_base_q() {
        let f = ExtField::new(5, 2).unwrap();
        // 0x07 = 7 = 2 + 1·5
        let s = bytes_to_stripes(&f, 2, &[7]).unwrap();
        assert_eq!(s, vec![vec![f.elem(&[2, 1]).unwrap(), f.zero()]]);
        assert_eq!(stripes_to_bytes(&f, &s, 1).unwrap(), vec![7]);
    }

    #[test]
    fn round_trip_many_stripes() {
        let f = ExtField::new(5, 12).unwrap();
        let data: Vec<u8> = (0..100u32).map(|i| (i * 37 % 256) as u8).collect();
        let s = bytes_to_stripes(&f, 4, &data).unwrap();
        assert_eq!(s.len(), 8);
        assert_eq!(stripes_to_bytes(&f, &s, data.len()).unwrap(), data);
        let s = bytes_to_stripes(&f, 4, &[]).unwrap();
        assert_eq!(stripes_to_bytes(&f, &s, 0).unwrap(), Vec::<u8>::new());
    }

    #[test]
    fn overfull_stripe_rejected() {
        let f = ExtField::new(5, 2).unwrap();
        let top = f.elem(&[4, 4]).unwrap();
        assert!(stripes_to_bytes(&f, &[vec![top.clone(), top]], 1).is_err());
    }
}
