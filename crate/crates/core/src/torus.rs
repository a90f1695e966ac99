//! The diagonal torus case `p = X (X - Y_2) ... (X - Y_n)`.
//!
//! Here `M(p)` carries a second basis `mu^i = X p_{i-1} mod p` built from
//! the factorial polynomials `p_i = (X - Y_1) ... (X - Y_i)`, `Y_1 = 0`. In
//! this basis the derivation has closed forms with complete homogeneous
//! symmetric coefficients, and the operators `G_I(D) = Π_k^{-1}(∧^I mu)`
//! are the equivariant Schubert classes, whose diagonals satisfy the GKM
//! conditions.
//!
//! Indices beyond `n` never appear in the mu basis: `mu^m = 0` for `m > n`
//! since `p_{m-1}` is then a multiple of `p`. Closed forms drop such terms.

use std::fmt;

use crate::combinatorics::{from_bitstring, pieri_support, to_bitstring, IndexSeq};
use crate::context::{shifted_weight, Context, Mode};
use crate::derivation::{d_pieri, Rule};
use crate::error::{Error, Result};
use crate::operator::SchubertOp;
use crate::polyring::{complete_h, Poly, VarSpec};
use crate::schubert::schur_determinant;
use crate::wedge::{expand_wedge, Basis, Factor, WedgeElement};

fn require_torus(ctx: &Context) -> Result<()> {
    if ctx.mode() != Mode::Torus {
        return Err(Error::NotTorus);
    }
    Ok(())
}

/// Change of basis between `epsilon` and `mu` on `M(p)`.
#[derive(Debug, Clone)]
pub struct MuBasis {
    // to_eps[i - 1] = epsilon coordinates of mu^i
    to_eps: Vec<Vec<Poly>>,
    // from_eps[i - 1] = mu coordinates of epsilon^i
    from_eps: Vec<Vec<Poly>>,
}

pub fn mu_from_eps(ctx: &Context) -> Result<MuBasis> {
    MuBasis::new(ctx)
}

impl MuBasis {
    pub fn new(ctx: &Context) -> Result<Self> {
        require_torus(ctx)?;
        let n = ctx.n();
        let spec = ctx.spec();
        // factorial[d] = coefficient of X^d in p_{i-1}
        let mut factorial = vec![Poly::one(spec)];
        let mut to_eps = Vec::with_capacity(n);
        for i in 1..=n {
            let mut col = vec![Poly::zero(spec); n];
            for (d, c) in factorial.iter().enumerate() {
                col[d] = c.clone();
            }
            to_eps.push(col);
            let y = shifted_weight(spec, i);
            let mut next = vec![Poly::zero(spec); factorial.len() + 1];
            for (d, c) in factorial.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= &(&y * c);
            }
            factorial = next;
        }
        // mu^i = epsilon^i + lower terms, solve upwards
        let mut from_eps: Vec<Vec<Poly>> = Vec::with_capacity(n);
        for i in 1..=n {
            let mut col = vec![Poly::zero(spec); n];
            col[i - 1] = Poly::one(spec);
            for d in 0..i - 1 {
                let c = &to_eps[i - 1][d];
                if c.is_zero() {
                    continue;
                }
                for (slot, x) in col.iter_mut().zip(&from_eps[d]) {
                    *slot -= &(c * x);
                }
            }
            from_eps.push(col);
        }
        Ok(MuBasis { to_eps, from_eps })
    }

    /// Epsilon coordinates of `mu^i`.
    pub fn mu_in_eps(&self, i: usize) -> &[Poly] {
        &self.to_eps[i - 1]
    }

    /// Mu coordinates of `epsilon^i`.
    pub fn eps_in_mu(&self, i: usize) -> &[Poly] {
        &self.from_eps[i - 1]
    }

    fn factor(coords: &[Poly]) -> Factor {
        coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i + 1, c.clone())).collect()
    }

    /// Rewrites `w` in `target`, expanding each wedge factor.
    pub fn convert(&self, w: &WedgeElement, target: Basis) -> WedgeElement {
        if w.basis() == target {
            return w.clone();
        }
        let table = match target {
            Basis::Epsilon => &self.to_eps,
            Basis::Mu => &self.from_eps,
        };
        let mut out = WedgeElement::zero(target, w.k());
        for (index, c) in w.terms() {
            let factors: Vec<Factor> = index.entries().iter().map(|&i| Self::factor(&table[i - 1])).collect();
            expand_wedge(&factors, c, &mut out);
        }
        out
    }
}

fn mu_vector(ctx: &Context, index: IndexSeq) -> WedgeElement {
    WedgeElement::basis_vector(Basis::Mu, index, ctx.spec())
}

fn single(i: usize) -> IndexSeq {
    IndexSeq::new(vec![i]).unwrap()
}

fn check_rank_one(j: usize, ctx: &Context) -> Result<()> {
    if !(1..=ctx.n()).contains(&j) {
        return Err(Error::IndexOutOfRange { index: j.to_string(), n: ctx.n() });
    }
    Ok(())
}

/// `D_1 mu^j = mu^{j+1} + Y_j mu^j`.
pub fn d1_mu(j: usize, ctx: &Context) -> Result<WedgeElement> {
    di_mu(1, j, ctx)
}

/// `D_i mu^j = Σ_{l=0..i} h_{i-l}(Y_j, ..., Y_{j+l}) mu^{j+l}`, terms with
/// `j + l > n` vanishing.
pub fn di_mu(i: usize, j: usize, ctx: &Context) -> Result<WedgeElement> {
    require_torus(ctx)?;
    check_rank_one(j, ctx)?;
    let spec = ctx.spec();
    let mut out = WedgeElement::zero(Basis::Mu, 1);
    for l in 0..=i.min(ctx.n() - j) {
        let args: Vec<Poly> = (j..=j + l).map(|t| shifted_weight(spec, t)).collect();
        out.add_term(single(j + l), &complete_h(spec, i - l, &args));
    }
    Ok(out)
}

/// `D_l(∧^I mu)` by the equivariant Pieri rule:
/// `Σ_{u=0..l} Σ_{M ∈ P(I, l-u)} h_u(Y_{i_1..i_1+m_1}, ..., Y_{i_k..i_k+m_k}) ∧^{I+M} mu`,
/// dropping every term with an index above `n`.
pub fn equivariant_pieri(l: usize, index: &IndexSeq, ctx: &Context) -> Result<WedgeElement> {
    require_torus(ctx)?;
    index.check_in(index.len(), ctx.n())?;
    let spec = ctx.spec();
    let mut out = WedgeElement::zero(Basis::Mu, index.len());
    for u in 0..=l {
        for shift in pieri_support(index, l - u) {
            let target = index.shifted(&shift);
            if !target.fits(ctx.n()) {
                continue;
            }
            let args: Vec<Poly> = index
                .entries()
                .iter()
                .zip(&shift)
                .flat_map(|(&i, &m)| (i..=i + m).map(|t| shifted_weight(spec, t)))
                .collect();
            out.add_term(target, &complete_h(spec, u, &args));
        }
    }
    Ok(out)
}

/// `D_l` on a mu-basis element by converting to epsilon, applying the
/// Pieri rule with reduction, and converting back.
pub fn eps_path(l: usize, w: &WedgeElement, mu: &MuBasis, ctx: &Context) -> Result<WedgeElement> {
    w.expect_basis(Basis::Mu)?;
    let image = d_pieri(l, &mu.convert(w, Basis::Epsilon), ctx)?;
    Ok(mu.convert(&image, Basis::Mu))
}

/// `(D_1 - Y_1 - ... - Y_k)(∧^I mu)`.
pub fn divisorial_pieri(index: &IndexSeq, ctx: &Context) -> Result<WedgeElement> {
    let spec = ctx.spec();
    let shift = (1..=index.len()).fold(Poly::zero(spec), |acc, r| acc + shifted_weight(spec, r));
    let d1 = equivariant_pieri(1, index, ctx)?;
    let diag = mu_vector(ctx, index.clone()).scale(&shift);
    d1.sub(&diag)
}

/// Right-hand side of the divisor rule stated on 0/1 strings: a unit term
/// for every string obtained from `λ = a_I` by one `01 -> 10` move, plus
/// `Σ_r (y_{i_r} - y_r)` on `λ` itself.
pub fn divisor_rule(index: &IndexSeq, n: usize, spec: VarSpec) -> Result<WedgeElement> {
    let lambda = to_bitstring(index, n)?;
    let mut out = WedgeElement::zero(Basis::Mu, index.len());
    for moved in lambda.adjacent_moves() {
        out.add_term(from_bitstring(&moved), &Poly::one(spec));
    }
    let diag = index
        .entries()
        .iter()
        .enumerate()
        .fold(Poly::zero(spec), |acc, (r, &i)| acc + Poly::var(spec, i) - Poly::var(spec, r + 1));
    out.add_term(index.clone(), &diag);
    Ok(out)
}

/// A class on `P^{n-1}` given by its restrictions to the `n` fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmClass {
    pub components: Vec<Poly>,
}

impl GkmClass {
    /// Every pair of fixed points of `P^{n-1}` is joined by an edge of
    /// weight `y_j - y_h`.
    pub fn satisfies_gkm(&self) -> bool {
        let n = self.components.len();
        let spec = self.components[0].spec();
        (1..=n).all(|j| {
            (j + 1..=n).all(|h| {
                let diff = &self.components[j - 1] - &self.components[h - 1];
                let weight = Poly::var(spec, j) - Poly::var(spec, h);
                Poly::divides(&weight, &diff).unwrap()
            })
        })
    }
}

/// `S_i` with `S_i^j = Π_{h=1..i} (y_j - y_h)`; `S_0` is the unit class.
pub fn projective_gkm_class(i: usize, n: usize) -> Result<GkmClass> {
    if i >= n {
        return Err(Error::ClassIndex { i, n });
    }
    let spec = VarSpec::torus(n);
    let components = (1..=n)
        .map(|j| (1..=i).fold(Poly::one(spec), |acc, h| acc * (Poly::var(spec, j) - Poly::var(spec, h))))
        .collect();
    Ok(GkmClass { components })
}

/// Checks `S_i = p_i(S_1)` for `0 <= i < n` and `p(S_1) = 0`, fixed point by
/// fixed point.
pub fn gkm_identities(n: usize) -> bool {
    let spec = VarSpec::torus(n);
    let s1 = projective_gkm_class(1, n).unwrap();
    let factorial_at = |i: usize, j: usize| {
        (1..=i).fold(Poly::one(spec), |acc, h| acc * (&s1.components[j - 1] - &shifted_weight(spec, h)))
    };
    let ladder = (0..n).all(|i| {
        let si = projective_gkm_class(i, n).unwrap();
        si.satisfies_gkm() && (1..=n).all(|j| factorial_at(i, j) == si.components[j - 1])
    });
    ladder && (1..=n).all(|j| factorial_at(n, j).is_zero())
}

/// `G_I(D) = Π_k^{-1}(∧^I mu)` as a matrix in the epsilon basis.
pub fn mu_class_eps(index: &IndexSeq, rule: Rule, ctx: &Context) -> Result<SchubertOp> {
    require_torus(ctx)?;
    ctx.check_index(index)?;
    let mu = MuBasis::new(ctx)?;
    let in_eps = mu.convert(&mu_vector(ctx, index.clone()), Basis::Epsilon);
    let mut op = SchubertOp::zero(ctx, Basis::Epsilon);
    for (k_index, c) in in_eps.terms() {
        let delta = schur_determinant(k_index.entries(), rule, ctx);
        op = op.add(&delta.scale(c))?;
    }
    Ok(op)
}

/// Rewrites an epsilon-basis operator in the mu basis.
pub fn conjugate_to_mu(op: &SchubertOp, mu: &MuBasis, ctx: &Context) -> Result<SchubertOp> {
    let columns = ctx
        .basis()
        .iter()
        .map(|j| {
            let v = mu.convert(&mu_vector(ctx, j.clone()), Basis::Epsilon);
            Ok(mu.convert(&op.apply(&v)?, Basis::Mu))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SchubertOp::from_columns(ctx, Basis::Mu, columns))
}

/// Matrix of `G_I(D)` in the ordered basis `∧^k mu`.
pub fn operator_matrix_mu(index: &IndexSeq, ctx: &Context) -> Result<SchubertOp> {
    operator_matrix_mu_with(index, Rule::Pieri, ctx)
}

pub fn operator_matrix_mu_with(index: &IndexSeq, rule: Rule, ctx: &Context) -> Result<SchubertOp> {
    let mu = MuBasis::new(ctx)?;
    conjugate_to_mu(&mu_class_eps(index, rule, ctx)?, &mu, ctx)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmEdge {
    pub from: IndexSeq,
    pub to: IndexSeq,
    /// The entry of `from` replaced by `b` in `to`.
    pub a: usize,
    pub b: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmReport {
    pub edges: Vec<GkmEdge>,
}

impl GkmReport {
    pub fn all_passed(&self) -> bool {
        self.edges.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &GkmEdge> {
        self.edges.iter().filter(|e| !e.passed)
    }
}

impl fmt::Display for GkmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            writeln!(
                f,
                "{} -- {}  (y{} - y{})  {}",
                e.from,
                e.to,
                e.a,
                e.b,
                if e.passed { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Checks the diagonal of `op` along every edge of the fixed-point graph of
/// `G(k, n)`: index sets differing in one entry `a -> b` must have diagonal
/// entries congruent modulo `y_a - y_b`.
pub fn gkm_check_diagonal(op: &SchubertOp, ctx: &Context) -> Result<GkmReport> {
    require_torus(ctx)?;
    let spec = ctx.spec();
    let diag = op.diagonal();
    let idx = op.indices();
    let mut edges = Vec::new();
    for p in 0..idx.len() {
        for q in p + 1..idx.len() {
            let only_p: Vec<usize> =
                idx[p].entries().iter().copied().filter(|x| !idx[q].entries().contains(x)).collect();
            if only_p.len() != 1 {
                continue;
            }
            let a = only_p[0];
            let b = *idx[q].entries().iter().find(|x| !idx[p].entries().contains(x)).unwrap();
            let weight = Poly::var(spec, a) - Poly::var(spec, b);
            let passed = Poly::divides(&weight, &(&diag[p] - &diag[q]))?;
            edges.push(GkmEdge { from: idx[p].clone(), to: idx[q].clone(), a, b, passed });
        }
    }
    Ok(GkmReport { edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::make_context;

    fn seq(s: &str) -> IndexSeq {
        s.parse().unwrap()
    }

    fn torus(n: usize, k: usize) -> Context {
        make_context(n, k, Mode::Torus).unwrap()
    }

    fn poly(ctx: &Context, s: &str) -> Poly {
        Poly::parse(s, ctx.spec()).unwrap()
    }

    fn mu1(ctx: &Context, i: usize) -> WedgeElement {
        mu_vector(ctx, single(i))
    }

    fn eps1(ctx: &Context, i: usize) -> WedgeElement {
        WedgeElement::basis_vector(Basis::Epsilon, single(i), ctx.spec())
    }

    #[test]
    fn basis_change_examples() {
        let ctx = torus(4, 1);
        let mu = mu_from_eps(&ctx).unwrap();
        assert_eq!(mu.convert(&mu1(&ctx, 1), Basis::Epsilon), eps1(&ctx, 1));
        assert_eq!(mu.convert(&mu1(&ctx, 2), Basis::Epsilon), eps1(&ctx, 2));
        let expected = eps1(&ctx, 3).sub(&eps1(&ctx, 2).scale(&poly(&ctx, "Y2"))).unwrap();
        assert_eq!(mu.convert(&mu1(&ctx, 3), Basis::Epsilon), expected);
        for i in 1..=4 {
            let there = mu.convert(&mu1(&ctx, i), Basis::Epsilon);
            assert_eq!(mu.convert(&there, Basis::Mu), mu1(&ctx, i));
        }
        assert!(mu_from_eps(&make_context(4, 1, Mode::Generic).unwrap()).is_err());
    }

    #[test]
    fn rank_one_derivation() {
        let ctx = torus(4, 1);
        let expected = mu1(&ctx, 3).add(&mu1(&ctx, 2).scale(&poly(&ctx, "Y2"))).unwrap();
        assert_eq!(d1_mu(2, &ctx).unwrap(), expected);
        assert_eq!(d1_mu(1, &ctx).unwrap(), mu1(&ctx, 2));
        assert_eq!(d1_mu(4, &ctx).unwrap(), mu1(&ctx, 4).scale(&poly(&ctx, "Y4")));
        assert_eq!(di_mu(0, 3, &ctx).unwrap(), mu1(&ctx, 3));
        let expected = mu1(&ctx, 3).add(&mu1(&ctx, 2).scale(&poly(&ctx, "Y2"))).unwrap();
        assert_eq!(di_mu(2, 1, &ctx).unwrap(), expected);
        assert!(di_mu(1, 5, &ctx).is_err());
        assert!(di_mu(1, 0, &ctx).is_err());
    }

    #[test]
    fn mu_n_plus_one_vanishes() {
        let ctx = torus(4, 1);
        let mu = MuBasis::new(&ctx).unwrap();
        // D_1 mu^4 in the epsilon picture
        let via_eps = eps_path(1, &mu1(&ctx, 4), &mu, &ctx).unwrap();
        assert_eq!(via_eps, mu1(&ctx, 4).scale(&poly(&ctx, "Y4")));
    }

    #[test]
    fn pieri_low_degree() {
        let ctx = torus(4, 2);
        let i = seq("1,3");
        assert_eq!(equivariant_pieri(0, &i, &ctx).unwrap(), mu_vector(&ctx, i.clone()));
        let d1 = equivariant_pieri(1, &i, &ctx).unwrap();
        let expected = WedgeElement::from_terms(
            Basis::Mu,
            2,
            [(seq("2,3"), ctx.one()), (seq("1,4"), ctx.one()), (seq("1,3"), poly(&ctx, "Y1 + Y3"))],
        );
        assert_eq!(d1, expected);
    }

    #[test]
    fn divisor_examples() {
        let ctx = torus(4, 2);
        let got = divisorial_pieri(&seq("1,3"), &ctx).unwrap();
        let expected = WedgeElement::from_terms(
            Basis::Mu,
            2,
            [(seq("1,4"), ctx.one()), (seq("2,3"), ctx.one()), (seq("1,3"), poly(&ctx, "y3 - y2"))],
        );
        assert_eq!(got, expected);
        assert_eq!(divisor_rule(&seq("1,3"), 4, ctx.spec()).unwrap(), expected);
        let bottom = divisorial_pieri(&seq("1,2"), &ctx).unwrap();
        assert!(bottom.coeff(&seq("1,2")).is_none());
    }

    #[test]
    fn projective_classes() {
        let s = projective_gkm_class(0, 3).unwrap();
        assert!(s.components.iter().all(Poly::is_one));
        let s1 = projective_gkm_class(1, 3).unwrap();
        let spec = VarSpec::torus(3);
        assert!(s1.components[0].is_zero());
        assert_eq!(s1.components[1], Poly::parse("y2 - y1", spec).unwrap());
        assert_eq!(s1.components[2], Poly::parse("y3 - y1", spec).unwrap());
        let s2 = projective_gkm_class(2, 4).unwrap();
        assert!(s2.components[..2].iter().all(Poly::is_zero));
        assert!(projective_gkm_class(3, 3).is_err());
        assert!(gkm_identities(3));
    }

    #[test]
    fn gkm_report_examples() {
        let ctx = torus(4, 2);
        let id = SchubertOp::identity(&ctx, Basis::Mu);
        let report = gkm_check_diagonal(&id, &ctx).unwrap();
        // G(2,4) has 6 fixed points and 12 edges
        assert_eq!(report.edges.len(), 12);
        assert!(report.all_passed());

        let mut last = SchubertOp::zero(&ctx, Basis::Mu);
        last.set(5, 5, ctx.one());
        let report = gkm_check_diagonal(&last, &ctx).unwrap();
        let failed: Vec<_> = report.failures().collect();
        assert_eq!(failed.len(), 4);
        assert!(failed.iter().all(|e| e.to == seq("3,4")));

        let g13 = operator_matrix_mu(&seq("1,3"), &ctx).unwrap();
        let report = gkm_check_diagonal(&g13, &ctx).unwrap();
        let edge = report.edges.iter().find(|e| e.from == seq("1,3") && e.to == seq("1,4")).unwrap();
        assert_eq!((edge.a, edge.b), (3, 4));
        assert!(report.all_passed());
    }

    #[test]
    fn g13_worked_column() {
        let ctx = torus(4, 2);
        let g13 = operator_matrix_mu(&seq("1,3"), &ctx).unwrap();
        assert!(operator_matrix_mu(&seq("1,2"), &ctx).unwrap().is_identity());
        let expected = WedgeElement::from_terms(
            Basis::Mu,
            2,
            [(seq("2,3"), ctx.one()), (seq("1,4"), ctx.one()), (seq("1,3"), poly(&ctx, "Y3 - Y2"))],
        );
        assert_eq!(g13.column_of(&seq("1,3")).unwrap(), expected);
        let diag: Vec<Poly> =
            ["0", "Y3 - Y2", "Y4 - Y2", "Y3", "Y4", "Y4 + Y3 - Y2"].iter().map(|s| poly(&ctx, s)).collect();
        assert_eq!(g13.diagonal(), diag);
    }

    #[test]
    fn non_torus_rejected() {
        let ctx = make_context(4, 2, Mode::Classical).unwrap();
        assert_eq!(equivariant_pieri(1, &seq("1,2"), &ctx), Err(Error::NotTorus));
        assert!(operator_matrix_mu(&seq("1,2"), &ctx).is_err());
        let id = SchubertOp::identity(&ctx, Basis::Mu);
        assert!(gkm_check_diagonal(&id, &ctx).is_err());
    }
}
