//! Square matrices over the base ring, indexed by `I^k_n` in basis order.
//! Column `J` holds the image of the basis wedge `∧^J`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::IndexSeq;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::polyring::{Poly, VarSpec};
use crate::wedge::{Basis, WedgeElement};

#[derive(Clone, PartialEq, Eq)]
pub struct SchubertOp {
    basis: Basis,
    spec: VarSpec,
    indices: Vec<IndexSeq>,
    // row-major, dim * dim
    entries: Vec<Poly>,
}

impl SchubertOp {
    pub fn zero(ctx: &Context, basis: Basis) -> Self {
        let dim = ctx.dim();
        SchubertOp {
            basis,
            spec: ctx.spec(),
            indices: ctx.basis().to_vec(),
            entries: vec![ctx.zero(); dim * dim],
        }
    }

    pub fn identity(ctx: &Context, basis: Basis) -> Self {
        let mut op = Self::zero(ctx, basis);
        let dim = op.dim();
        for i in 0..dim {
            op.entries[i * dim + i] = ctx.one();
        }
        op
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(ctx: &Context, basis: Basis, columns: Vec<WedgeElement>) -> Self {
        let mut op = Self::zero(ctx, basis);
        let dim = op.dim();
        assert_eq!(columns.len(), dim);
        for (j, col) in columns.into_iter().enumerate() {
            for (index, c) in col.into_terms() {
                let i = ctx.position(&index).expect("column lies in I^k_n");
                op.entries[i * dim + j] = c;
            }
        }
        op
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn spec(&self) -> VarSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[IndexSeq] {
        &self.indices
    }

    pub fn get(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row * self.dim() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Poly) {
        let dim = self.dim();
        self.entries[row * dim + col] = value;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn diagonal(&self) -> Vec<Poly> {
        (0..self.dim()).map(|i| self.get(i, i).clone()).collect()
    }

    pub(crate) fn map_entries(&self, spec: VarSpec, f: impl Fn(&Poly) -> Poly) -> SchubertOp {
        SchubertOp {
            basis: self.basis,
            spec,
            indices: self.indices.clone(),
            entries: self.entries.iter().map(|p| if p.is_zero() { Poly::zero(spec) } else { f(p) }).collect(),
        }
    }

    fn compatible(&self, other: &SchubertOp) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch { expected: self.basis, got: other.basis });
        }
        if self.spec != other.spec {
            return Err(Error::VarSpecMismatch(self.spec, other.spec));
        }
        assert_eq!(self.indices, other.indices, "operators on different exterior powers");
        Ok(())
    }

    pub fn mul(&self, other: &SchubertOp) -> Result<SchubertOp> {
        self.compatible(other)?;
        let dim = self.dim();
        let mut out = vec![Poly::zero(self.spec); dim * dim];
        for i in 0..dim {
            for l in 0..dim {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..dim {
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    out[i * dim + j] += &(a * b);
                }
            }
        }
        Ok(SchubertOp { entries: out, ..self.clone() })
    }

    pub fn add(&self, other: &SchubertOp) -> Result<SchubertOp> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x += y;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SchubertOp) -> Result<SchubertOp> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x -= y;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Poly) -> SchubertOp {
        let mut out = self.clone();
        for x in out.entries.iter_mut() {
            if !x.is_zero() {
                *x = &*x * c;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|i| {
            (0..dim).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn commutes_with(&self, other: &SchubertOp) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Image of the `j`-th basis wedge.
    pub fn column(&self, j: usize) -> WedgeElement {
        let k = self.indices[0].len();
        WedgeElement::from_terms(
            self.basis,
            k,
            (0..self.dim()).map(|i| (self.indices[i].clone(), self.get(i, j).clone())),
        )
    }

    pub fn column_of(&self, index: &IndexSeq) -> Option<WedgeElement> {
        self.indices.iter().position(|i| i == index).map(|j| self.column(j))
    }

    pub fn apply(&self, w: &WedgeElement) -> Result<WedgeElement> {
        w.expect_basis(self.basis)?;
        let mut out = WedgeElement::zero(self.basis, w.k());
        for (index, c) in w.terms() {
            let j = self.indices.iter().position(|i| i == index).ok_or_else(|| Error::IndexOutOfRange {
                index: index.to_string(),
                n: self.indices.last().map_or(0, |i| i.last()),
            })?;
            for i in 0..self.dim() {
                let x = self.get(i, j);
                if !x.is_zero() {
                    out.add_term(self.indices[i].clone(), &(x * c));
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&OperatorJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str, ctx: &Context) -> Result<SchubertOp> {
        let raw: OperatorJson = serde_json::from_str(s)?;
        raw.into_op(ctx)
    }

    /// Rows of display strings, for the text and LaTeX emitters.
    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

impl fmt::Debug for SchubertOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SchubertOp[{:?}]", self.basis)?;
        write!(f, "{self}")
    }
}

/// Aligned plain-text table with row and column labels.
impl fmt::Display for SchubertOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        let labels: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        let label_w = labels.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.dim())
            .map(|j| rows.iter().map(|r| r[j].len()).chain(std::iter::once(labels[j].len())).max().unwrap())
            .collect();
        write!(f, "{:label_w$} |", "")?;
        for (l, w) in labels.iter().zip(&widths) {
            write!(f, " {l:>w$}")?;
        }
        writeln!(f)?;
        for (label, row) in labels.iter().zip(&rows) {
            write!(f, "{label:>label_w$} |")?;
            for (x, w) in row.iter().zip(&widths) {
                write!(f, " {x:>w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorJson {
    pub basis: Basis,
    pub indices: Vec<Vec<usize>>,
    pub entries: Vec<Vec<String>>,
}

impl From<&SchubertOp> for OperatorJson {
    fn from(op: &SchubertOp) -> Self {
        OperatorJson {
            basis: op.basis,
            indices: op.indices.iter().map(|i| i.entries().to_vec()).collect(),
            entries: op.rows(),
        }
    }
}

impl OperatorJson {
    pub fn into_op(self, ctx: &Context) -> Result<SchubertOp> {
        let indices = self.indices.into_iter().map(IndexSeq::new).collect::<Result<Vec<_>>>()?;
        if indices != ctx.basis() {
            return Err(Error::Json(format!(
                "index list does not match the ordered basis of I^{}_{}",
                ctx.k(),
                ctx.n()
            )));
        }
        let dim = indices.len();
        if self.entries.len() != dim || self.entries.iter().any(|r| r.len() != dim) {
            return Err(Error::Json(format!("expected a {dim}x{dim} array")));
        }
        let entries =
            self.entries.iter().flatten().map(|s| Poly::parse(s, ctx.spec())).collect::<Result<Vec<_>>>()?;
        Ok(SchubertOp { basis: self.basis, spec: ctx.spec(), indices, entries })
    }
}

/// A labeled family of operators on one exterior power, as stored in the
/// fixture files: `{"n", "k", "mode", "note", "operators": {"1,3": {...}}}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSet {
    pub n: usize,
    pub k: usize,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub operators: BTreeMap<String, OperatorJson>,
}

impl OperatorSet {
    pub fn from_json(s: &str) -> Result<OperatorSet> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn context(&self) -> Result<Context> {
        let mode = self.mode.parse().map_err(Error::Json)?;
        Context::new(self.n, self.k, mode)
    }

    /// Parses every operator against `ctx`, keyed and ordered by index.
    pub fn operators(self, ctx: &Context) -> Result<BTreeMap<IndexSeq, SchubertOp>> {
        self.operators
            .into_iter()
            .map(|(name, raw)| Ok((name.parse::<IndexSeq>()?, raw.into_op(ctx)?)))
            .collect()
    }
}
