//! The canonical derivation `D = (D_0, D_1, ...)` on `∧ M(p)`.
//!
//! Two independent routes compute `D_h` on a wedge of basis vectors: the
//! Pieri rule, which only visits the shift tuples of [`pieri_support`], and
//! the raw Leibniz expansion over every weak composition of `h`. Both reduce
//! indices beyond `n` through [`Context::epsilon`].

use crate::combinatorics::{pieri_support, weak_compositions, IndexSeq};
use crate::context::Context;
use crate::error::Result;
use crate::operator::SchubertOp;
use crate::polyring::Poly;
use crate::wedge::{expand_wedge, Basis, Factor, WedgeElement};

/// Which route builds a `D_h` matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Pieri,
    Leibniz,
}

/// `epsilon^m` as a degree-1 wedge element over `epsilon^1..epsilon^n`.
pub fn reduce_epsilon(m: usize, ctx: &Context) -> Result<WedgeElement> {
    let coords = ctx.epsilon(m)?;
    Ok(WedgeElement::from_terms(
        Basis::Epsilon,
        1,
        coords.iter().enumerate().map(|(i, c)| (IndexSeq::new(vec![i + 1]).unwrap(), c.clone())),
    ))
}

fn factor_of(ctx: &Context, m: usize) -> Result<Factor> {
    if m <= ctx.n() {
        return Ok(vec![(m, ctx.one())]);
    }
    Ok(ctx
        .epsilon(m)?
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i + 1, c.clone()))
        .collect())
}

/// Adds `coeff * epsilon^{j_1} ∧ ... ∧ epsilon^{j_k}` to `out` for an
/// arbitrary (possibly unsorted, possibly out-of-range) index list.
fn push_wedge(ctx: &Context, raw: &[usize], coeff: &Poly, out: &mut WedgeElement) -> Result<()> {
    let factors = raw.iter().map(|&m| factor_of(ctx, m)).collect::<Result<Vec<_>>>()?;
    expand_wedge(&factors, coeff, out);
    Ok(())
}

/// `D_h` through the Pieri rule.
pub fn d_pieri(h: usize, w: &WedgeElement, ctx: &Context) -> Result<WedgeElement> {
    w.expect_basis(Basis::Epsilon)?;
    let mut out = WedgeElement::zero(Basis::Epsilon, w.k());
    for (index, coeff) in w.terms() {
        for shift in pieri_support(index, h) {
            push_wedge(ctx, index.shifted(&shift).entries(), coeff, &mut out)?;
        }
    }
    Ok(out)
}

/// `D_h` through the Leibniz rule
/// `D_h(a_1 ∧ ... ∧ a_k) = sum over h_1 + ... + h_k = h of D_{h_1} a_1 ∧ ... ∧ D_{h_k} a_k`
/// with `D_h epsilon^i = epsilon^{i+h}`.
pub fn leibniz_oracle(h: usize, w: &WedgeElement, ctx: &Context) -> Result<WedgeElement> {
    w.expect_basis(Basis::Epsilon)?;
    let mut out = WedgeElement::zero(Basis::Epsilon, w.k());
    let comps = weak_compositions(h, w.k());
    for (index, coeff) in w.terms() {
        for comp in &comps {
            let raw: Vec<usize> = index.entries().iter().zip(comp).map(|(i, d)| i + d).collect();
            push_wedge(ctx, &raw, coeff, &mut out)?;
        }
    }
    Ok(out)
}

pub fn apply(rule: Rule, h: usize, w: &WedgeElement, ctx: &Context) -> Result<WedgeElement> {
    match rule {
        Rule::Pieri => d_pieri(h, w, ctx),
        Rule::Leibniz => leibniz_oracle(h, w, ctx),
    }
}

/// Matrix of `D_h` on `∧^k M(p)` in the epsilon basis, memoized per context.
pub fn d_matrix(h: usize, rule: Rule, ctx: &Context) -> std::sync::Arc<SchubertOp> {
    if let Some(op) = ctx.cached_d_matrix((rule, h)) {
        return op;
    }
    let op = if h == 0 {
        SchubertOp::identity(ctx, Basis::Epsilon)
    } else {
        let columns = ctx
            .basis()
            .iter()
            .map(|j| {
                let w = WedgeElement::basis_vector(Basis::Epsilon, j.clone(), ctx.spec());
                apply(rule, h, &w, ctx).expect("basis wedges are in the epsilon basis")
            })
            .collect();
        SchubertOp::from_columns(ctx, Basis::Epsilon, columns)
    };
    ctx.store_d_matrix((rule, h), op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::index_sets;
    use crate::context::{make_context, Mode};

    fn seq(s: &str) -> IndexSeq {
        s.parse().unwrap()
    }

    fn basis(ctx: &Context, s: &str) -> WedgeElement {
        WedgeElement::basis_vector(Basis::Epsilon, seq(s), ctx.spec())
    }

    #[test]
    fn pieri_examples() {
        let ctx = make_context(4, 2, Mode::Classical).unwrap();
        let w = basis(&ctx, "1,3");
        assert_eq!(d_pieri(0, &w, &ctx).unwrap(), w);
        assert_eq!(d_pieri(1, &basis(&ctx, "1,2"), &ctx).unwrap(), basis(&ctx, "1,3"));
        assert_eq!(d_pieri(2, &w, &ctx).unwrap(), basis(&ctx, "2,4"));
        assert_eq!(leibniz_oracle(1, &basis(&ctx, "1,2"), &ctx).unwrap(), basis(&ctx, "1,3"));
    }

    #[test]
    fn pieri_rejects_mu_basis() {
        let ctx = make_context(3, 1, Mode::Torus).unwrap();
        let w = WedgeElement::basis_vector(Basis::Mu, seq("1"), ctx.spec());
        assert!(d_pieri(1, &w, &ctx).is_err());
        assert!(leibniz_oracle(1, &w, &ctx).is_err());
    }

    #[test]
    fn reduce_epsilon_examples() {
        let ctx = make_context(2, 1, Mode::Torus).unwrap();
        let e3 = reduce_epsilon(3, &ctx).unwrap();
        let y2 = Poly::parse("y2 - y1", ctx.spec()).unwrap();
        assert_eq!(e3, WedgeElement::from_terms(Basis::Epsilon, 1, [(seq("2"), y2)]));
        assert_eq!(reduce_epsilon(2, &ctx).unwrap(), basis(&ctx, "2"));
        assert!(reduce_epsilon(0, &ctx).is_err());
    }

    #[test]
    fn derivations_respect_weight() {
        for mode in [Mode::Classical, Mode::Generic, Mode::Torus] {
            let ctx = make_context(4, 2, mode).unwrap();
            for j in index_sets(2, 4) {
                for h in 0..=6 {
                    let out = leibniz_oracle(h, &basis(&ctx, &j.to_string()), &ctx).unwrap();
                    assert!(out.is_homogeneous_of_weight(j.weight() + h), "{mode} {j} {h}");
                }
            }
        }
    }

    #[test]
    fn d_matrix_memoized() {
        let ctx = make_context(3, 2, Mode::Torus).unwrap();
        let a = d_matrix(2, Rule::Pieri, &ctx);
        let b = d_matrix(2, Rule::Pieri, &ctx);
        assert!(std::sync::Arc::ptr_eq(&a, &b));
        assert!(d_matrix(0, Rule::Leibniz, &ctx).is_identity());
    }
}
