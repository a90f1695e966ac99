//! Strictly increasing index sequences and the shift tuples that drive the
//! Pieri rule.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strictly increasing sequence `1 <= i_1 < ... < i_k` of length `k >= 1`.
///
/// The ambient rank `n` is not stored: sequences with entries beyond `n`
/// are legitimate intermediate values (they reduce modulo the monic
/// polynomial), so range checks happen where a bound is known.
///
/// Ordering is by length, then weight, then lexicographically, which is the
/// basis order used for wedge bases and operator matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSeq(Vec<usize>);

impl IndexSeq {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let shown = || join(&entries);
        if entries.is_empty() {
            return Err(Error::InvalidIndex(shown(), "empty".into()));
        }
        if entries[0] == 0 {
            return Err(Error::InvalidIndex(shown(), "entries start at 1".into()));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(shown(), "entries must be strictly increasing".into()));
        }
        Ok(IndexSeq(entries))
    }

    /// `(1, 2, ..., k)`.
    pub fn identity(k: usize) -> Self {
        assert!(k > 0);
        IndexSeq((1..=k).collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> usize {
        *self.0.last().unwrap()
    }

    /// `sum_j (i_j - j)`.
    pub fn weight(&self) -> usize {
        self.0.iter().enumerate().map(|(j, &i)| i - (j + 1)).sum()
    }

    pub fn fits(&self, n: usize) -> bool {
        self.last() <= n
    }

    pub fn check_in(&self, k: usize, n: usize) -> Result<()> {
        if self.len() != k {
            return Err(Error::WrongLength { index: self.to_string(), len: self.len(), k });
        }
        if !self.fits(n) {
            return Err(Error::IndexOutOfRange { index: self.to_string(), n });
        }
        Ok(())
    }

    /// `I + H`; `H` must come from [`pieri_support`] for this sequence.
    pub fn shifted(&self, h: &[usize]) -> IndexSeq {
        debug_assert_eq!(h.len(), self.len());
        IndexSeq(self.0.iter().zip(h).map(|(i, d)| i + d).collect())
    }

    /// The partition `(i_k - k, ..., i_1 - 1)`, largest part first.
    pub fn partition(&self) -> Vec<usize> {
        self.0.iter().enumerate().rev().map(|(j, &i)| i - (j + 1)).collect()
    }

    /// Inverse of [`IndexSeq::partition`] for a length-`k` sequence;
    /// `parts` is weakly decreasing with at most `k` entries.
    pub fn from_partition(parts: &[usize], k: usize) -> Self {
        assert!(parts.len() <= k);
        let mut entries = vec![0; k];
        for (j, slot) in entries.iter_mut().enumerate() {
            let part = parts.get(k - 1 - j).copied().unwrap_or(0);
            *slot = part + j + 1;
        }
        IndexSeq(entries)
    }
}

impl Ord for IndexSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for IndexSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<usize>> for IndexSeq {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        IndexSeq::new(v)
    }
}

impl From<IndexSeq> for Vec<usize> {
    fn from(i: IndexSeq) -> Self {
        i.0
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for IndexSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl FromStr for IndexSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidIndex(s.to_string(), format!("bad entry `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        IndexSeq::new(entries)
    }
}

/// All of `I^k_n` in basis order.
pub fn index_sets(k: usize, n: usize) -> Vec<IndexSeq> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(IndexSeq(cur.clone()));
        // next k-subset in lex order
        let mut j = k;
        while j > 0 && cur[j - 1] == n - k + j {
            j -= 1;
        }
        if j == 0 {
            break;
        }
        cur[j - 1] += 1;
        for t in j..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
    out.sort();
    out
}

/// The shift tuples `P(I, h)`: all `H` with `sum H = h` and
/// `i_j + h_j < i_{j+1}` for `j < k`. The last entry is unconstrained.
pub fn pieri_support(index: &IndexSeq, h: usize) -> Vec<Vec<usize>> {
    fn go(entries: &[usize], j: usize, remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j + 1 == entries.len() {
            cur.push(remaining);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        let cap = (entries[j + 1] - entries[j] - 1).min(remaining);
        for step in 0..=cap {
            cur.push(step);
            go(entries, j + 1, remaining - step, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(index.entries(), 0, h, &mut Vec::with_capacity(index.len()), &mut out);
    out
}

/// Every weak composition of `total` into `parts` nonnegative parts.
pub fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=total {
            cur.push(first);
            go(total - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    } else if total == 0 {
        out.push(Vec::new());
    }
    out
}

/// A 0/1 string of length `n` with a zero exactly at the positions of an
/// index sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitstring(Vec<bool>);

impl Bitstring {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|b| !**b).count()
    }

    /// Position-`j` bit (1-based).
    pub fn bit(&self, j: usize) -> bool {
        self.0[j - 1]
    }

    /// All strings obtained by turning one adjacent `01` into `10`.
    pub fn adjacent_moves(&self) -> Vec<Bitstring> {
        (0..self.0.len().saturating_sub(1))
            .filter(|&i| !self.0[i] && self.0[i + 1])
            .map(|i| {
                let mut b = self.0.clone();
                b.swap(i, i + 1);
                Bitstring(b)
            })
            .collect()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidBitstring(s.into(), format!("bad character `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let b = Bitstring(bits);
        if b.zeros() == 0 {
            return Err(Error::InvalidBitstring(s.into(), "needs at least one zero".into()));
        }
        Ok(b)
    }
}

pub fn to_bitstring(index: &IndexSeq, n: usize) -> Result<Bitstring> {
    if !index.fits(n) {
        return Err(Error::IndexOutOfRange { index: index.to_string(), n });
    }
    let mut bits = vec![true; n];
    for &i in index.entries() {
        bits[i - 1] = false;
    }
    Ok(Bitstring(bits))
}

pub fn from_bitstring(b: &Bitstring) -> IndexSeq {
    let entries: Vec<usize> = b.0.iter().enumerate().filter(|(_, bit)| !**bit).map(|(j, _)| j + 1).collect();
    IndexSeq::new(entries).expect("bitstring has at least one zero")
}
