//! Schur-determinant operators, the Poincaré isomorphism, structure
//! constants and the relations of the presentation of `A*(∧^k M(p))`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::combinatorics::{pieri_support, IndexSeq};
use crate::context::Context;
use crate::derivation::{d_matrix, Rule};
use crate::error::Result;
use crate::operator::SchubertOp;
use crate::polyring::Poly;
use crate::torus;
use crate::wedge::{Basis, WedgeElement};

/// `det(D_{s_b - a})` for `1 <= a, b <= len(s)`, with `D_0 = 1` and
/// `D_j = 0` for `j < 0`, expanded over permutations. The `D_h` commute, so
/// the order of factors inside a product does not matter.
pub fn schur_determinant(seq: &[usize], rule: Rule, ctx: &Context) -> Arc<SchubertOp> {
    let key = (rule, seq.to_vec());
    if let Some(op) = ctx.cached_schur(&key) {
        return op;
    }
    if let Some(generic) = ctx.universal() {
        let op = ctx.specialize_op(&schur_determinant(seq, rule, generic));
        return ctx.store_schur(key, op);
    }
    ctx.store_schur(key, schur_determinant_direct(seq, rule, ctx))
}

/// The same determinant, multiplied out in the coefficient ring of `ctx`.
pub(crate) fn schur_determinant_direct(seq: &[usize], rule: Rule, ctx: &Context) -> SchubertOp {
    struct Walk<'a> {
        seq: &'a [usize],
        rule: Rule,
        ctx: &'a Context,
        used: Vec<bool>,
        sum: SchubertOp,
    }

    impl Walk<'_> {
        fn go(&mut self, row: usize, odd: bool, acc: Option<SchubertOp>) {
            let m = self.seq.len();
            if row == m {
                let term = acc.unwrap_or_else(|| SchubertOp::identity(self.ctx, Basis::Epsilon));
                self.sum = if odd { self.sum.sub(&term) } else { self.sum.add(&term) }.expect("same ring");
                return;
            }
            for col in 0..m {
                if self.used[col] {
                    continue;
                }
                // row index is 1-based in D_{s_b - a}
                let Some(h) = self.seq[col].checked_sub(row + 1) else {
                    continue;
                };
                let inversions = self.used[col + 1..].iter().filter(|u| **u).count();
                let next = match (h, &acc) {
                    (0, _) => acc.clone(),
                    (h, None) => Some((*d_matrix(h, self.rule, self.ctx)).clone()),
                    (h, Some(a)) => Some(a.mul(&d_matrix(h, self.rule, self.ctx)).expect("same ring")),
                };
                self.used[col] = true;
                self.go(row + 1, odd ^ (inversions % 2 == 1), next);
                self.used[col] = false;
            }
        }
    }

    let mut walk =
        Walk { seq, rule, ctx, used: vec![false; seq.len()], sum: SchubertOp::zero(ctx, Basis::Epsilon) };
    walk.go(0, false, None);
    walk.sum
}

/// `Δ_I(D)` on `∧^k M(p)`. Entries of `I` may exceed `n`.
pub fn schur_op(index: &IndexSeq, ctx: &Context) -> Arc<SchubertOp> {
    schur_determinant(index.entries(), Rule::Pieri, ctx)
}

/// `Π_k(P(D)) = P(D)(∧^{1..k})`, the image of the first basis wedge.
pub fn poincare(op: &SchubertOp) -> WedgeElement {
    op.column(0)
}

/// `Π_k^{-1}(∧^I epsilon) = Δ_I(D)`.
pub fn poincare_inv(index: &IndexSeq, ctx: &Context) -> Result<Arc<SchubertOp>> {
    ctx.check_index(index)?;
    Ok(schur_op(index, ctx))
}

/// Structure constants `C^K_{IJ}`: the coefficients of `σ_I · σ_J` in the
/// Schubert basis attached to `basis` (`Δ_K(D)` for epsilon, `G_K(D)` for mu).
pub fn multiply(i: &IndexSeq, j: &IndexSeq, basis: Basis, ctx: &Context) -> Result<BTreeMap<IndexSeq, Poly>> {
    ctx.check_index(i)?;
    ctx.check_index(j)?;
    let col = ctx.position(j).expect("checked above");
    let product = match basis {
        Basis::Epsilon => schur_op(i, ctx).column(col),
        Basis::Mu => torus::operator_matrix_mu(i, ctx)?.column(col),
    };
    Ok(product.into_terms())
}

/// `Σ_{H ∈ P(I,h)} Δ_{I+H}(D)`, the right-hand side of the operator Pieri
/// identity `D_h Δ_I(D) = Σ Δ_{I+H}(D)`.
pub fn pieri_operator_sum(index: &IndexSeq, h: usize, ctx: &Context) -> SchubertOp {
    pieri_support(index, h).into_iter().fold(SchubertOp::zero(ctx, Basis::Epsilon), |acc, shift| {
        acc.add(&schur_op(&index.shifted(&shift), ctx)).expect("same ring")
    })
}

/// The `k` operators `D̃_{n-k+j}(D_k, p)`, `j = 1..k`, which vanish on
/// `∧^k M(p)`.
///
/// `D̃_i` are the coefficients of the inverse of
/// `1 - Δ_{(2)}(D) t + Δ_{(2,3)}(D) t^2 - ... ± Δ_{(2..k+1)}(D) t^k`,
/// so that `D̃_i(D_1) = D_1^i` when `k = 1`.
pub fn presentation_relations(ctx: &Context) -> Vec<SchubertOp> {
    relations_with(ctx, Rule::Pieri, true)
}

/// The same relations with every `D_h` built by `rule`.
pub fn presentation_relations_with(ctx: &Context, rule: Rule) -> Vec<SchubertOp> {
    relations_with(ctx, rule, true)
}

pub(crate) fn relations_with(ctx: &Context, rule: Rule, alternating: bool) -> Vec<SchubertOp> {
    match ctx.universal() {
        Some(generic) => {
            relations_with(generic, rule, alternating).iter().map(|op| ctx.specialize_op(op)).collect()
        }
        None => relations_direct(ctx, rule, alternating),
    }
}

fn relations_direct(ctx: &Context, rule: Rule, alternating: bool) -> Vec<SchubertOp> {
    let (n, k) = (ctx.n(), ctx.k());
    // elementary[j - 1] = Δ_{(2, ..., j+1)}(D)
    let elementary: Vec<Arc<SchubertOp>> =
        (1..=k).map(|j| schur_determinant(&(2..=j + 1).collect::<Vec<_>>(), rule, ctx)).collect();
    let mut inverse = vec![SchubertOp::identity(ctx, Basis::Epsilon)];
    for m in 1..=n {
        let mut next = SchubertOp::zero(ctx, Basis::Epsilon);
        for j in 1..=m.min(k) {
            let term = elementary[j - 1].mul(&inverse[m - j]).expect("same ring");
            // coefficient of t^j in the series is s_j E_j; inverse_m = -Σ s_j E_j inverse_{m-j}
            let subtract = !alternating || j % 2 == 0;
            next = if subtract { next.sub(&term) } else { next.add(&term) }.expect("same ring");
        }
        inverse.push(next);
    }
    (1..=k)
        .map(|j| {
            let top = n - k + j;
            (0..=top).fold(SchubertOp::zero(ctx, Basis::Epsilon), |acc, i| {
                let c = ctx.coeff(i);
                if c.is_zero() {
                    acc
                } else {
                    acc.add(&inverse[top - i].scale(&c)).expect("same ring")
                }
            })
        })
        .collect()
}
