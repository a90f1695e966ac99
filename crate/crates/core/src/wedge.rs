//! Elements of `∧^k M(p)` in the `epsilon` or `mu` basis.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::IndexSeq;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::polyring::{Poly, VarSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Epsilon,
    Mu,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::Epsilon => "e",
            Basis::Mu => "mu",
        }
    }
}

/// A finitely supported map from index sequences to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeElement {
    basis: Basis,
    k: usize,
    terms: BTreeMap<IndexSeq, Poly>,
}

impl WedgeElement {
    pub fn zero(basis: Basis, k: usize) -> Self {
        WedgeElement { basis, k, terms: BTreeMap::new() }
    }

    /// The basis wedge `∧^I` with coefficient 1.
    pub fn basis_vector(basis: Basis, index: IndexSeq, spec: VarSpec) -> Self {
        let mut w = Self::zero(basis, index.len());
        w.terms.insert(index, Poly::one(spec));
        w
    }

    pub fn from_terms(basis: Basis, k: usize, terms: impl IntoIterator<Item = (IndexSeq, Poly)>) -> Self {
        let mut w = Self::zero(basis, k);
        for (i, c) in terms {
            w.add_term(i, &c);
        }
        w
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSeq, &Poly)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<IndexSeq, Poly> {
        self.terms
    }

    pub fn coeff(&self, index: &IndexSeq) -> Option<&Poly> {
        self.terms.get(index)
    }

    pub fn add_term(&mut self, index: IndexSeq, coeff: &Poly) {
        assert_eq!(index.len(), self.k, "wedge degree mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &WedgeElement) -> Result<WedgeElement> {
        self.same_basis(other)?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WedgeElement) -> Result<WedgeElement> {
        self.same_basis(other)?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Poly) -> WedgeElement {
        let mut out = WedgeElement::zero(self.basis, self.k);
        for (i, x) in &self.terms {
            out.add_term(i.clone(), &(x * c));
        }
        out
    }

    fn same_basis(&self, other: &WedgeElement) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch { expected: self.basis, got: other.basis });
        }
        Ok(())
    }

    pub fn expect_basis(&self, basis: Basis) -> Result<()> {
        if self.basis != basis {
            return Err(Error::BasisMismatch { expected: basis, got: self.basis });
        }
        Ok(())
    }

    /// True when every term `a ∧^I` has `deg(a) + wt(I) = w`.
    pub fn is_homogeneous_of_weight(&self, w: usize) -> bool {
        self.terms.iter().all(|(i, c)| i.weight() <= w && c.is_homogeneous_of((w - i.weight()) as u32))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&WedgeJson::from(self)).expect("serializable")
    }

    /// Parses the JSON form and checks every index against `ctx`.
    pub fn from_json(s: &str, ctx: &Context) -> Result<WedgeElement> {
        let raw: WedgeJson = serde_json::from_str(s)?;
        raw.into_element(ctx)
    }
}

impl fmt::Display for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (i, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let wedge = wedge_symbol(self.basis, i);
            if c.is_one() {
                f.write_str(&wedge)?;
            } else if c.num_terms() == 1 && c.constant_value().is_none() {
                write!(f, "{c}*{wedge}")?;
            } else {
                write!(f, "({c})*{wedge}")?;
            }
        }
        Ok(())
    }
}

pub fn wedge_symbol(basis: Basis, index: &IndexSeq) -> String {
    index.entries().iter().map(|i| format!("{}{i}", basis.symbol())).collect::<Vec<_>>().join("^")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub index: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WedgeJson {
    pub basis: Basis,
    pub terms: Vec<TermJson>,
}

impl From<&WedgeElement> for WedgeJson {
    fn from(w: &WedgeElement) -> Self {
        WedgeJson {
            basis: w.basis,
            terms: w
                .terms
                .iter()
                .map(|(i, c)| TermJson { index: i.entries().to_vec(), coeff: c.to_string() })
                .collect(),
        }
    }
}

impl WedgeJson {
    pub fn into_element(self, ctx: &Context) -> Result<WedgeElement> {
        let mut w = WedgeElement::zero(self.basis, ctx.k());
        for t in self.terms {
            let index = IndexSeq::new(t.index)?;
            ctx.check_index(&index)?;
            w.add_term(index, &Poly::parse(&t.coeff, ctx.spec())?);
        }
        Ok(w)
    }
}

/// A sparse vector of `M(p)`: pairs `(basis position 1..n, coefficient)`.
pub type Factor = Vec<(usize, Poly)>;

/// Adds `coeff * (f_1 ∧ ... ∧ f_k)` to `out`, expanding multilinearly.
/// Repeated basis vectors annihilate a term; the surviving index lists are
/// sorted with the sign of the sorting permutation.
pub(crate) fn expand_wedge(factors: &[Factor], coeff: &Poly, out: &mut WedgeElement) {
    fn go(factors: &[Factor], depth: usize, chosen: &mut Vec<usize>, acc: &Poly, out: &mut WedgeElement) {
        if depth == factors.len() {
            let mut idx = chosen.clone();
            let odd = sort_with_parity(&mut idx);
            let index = IndexSeq::new(idx).expect("distinct positive entries");
            if odd {
                out.add_term(index, &-acc);
            } else {
                out.add_term(index, acc);
            }
            return;
        }
        for (pos, c) in &factors[depth] {
            if chosen.contains(pos) || c.is_zero() {
                continue;
            }
            let next = if c.is_one() { acc.clone() } else { acc * c };
            chosen.push(*pos);
            go(factors, depth + 1, chosen, &next, out);
            chosen.pop();
        }
    }
    if coeff.is_zero() {
        return;
    }
    go(factors, 0, &mut Vec::with_capacity(factors.len()), coeff, out);
}

/// Bubble sort returning whether an odd number of swaps was made.
fn sort_with_parity(v: &mut [usize]) -> bool {
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    odd
}
