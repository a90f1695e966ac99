//! Slow reference computations used to cross-check the operator engine.
//!
//! Classical structure constants come from multiplying Schur polynomials
//! written as bialternants `det(x_i^{λ_j + N - j}) / det(x_i^{N - j})` and
//! peeling off Schur polynomials by their lex-leading monomial. Nothing here
//! touches the derivation code; only [`crate::polyring`] and
//! [`crate::combinatorics`] are shared.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::combinatorics::IndexSeq;
use crate::error::{Error, Result};
use crate::polyring::{Exponents, Poly, VarSpec};

/// A symmetric polynomial in the auxiliary variables `x1..xN`.
pub type SymPoly = Poly;

/// `det(x_i^{e_j})` over `N!` permutations.
fn alternant(spec: VarSpec, exps: &[u32]) -> Poly {
    let n = exps.len();
    let mut out = Poly::zero(spec);
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut e = vec![0u32; n];
        for (row, &col) in p.iter().enumerate() {
            e[row] = exps[col];
        }
        let inversions =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        out += &Poly::monomial(spec, e, BigInt::from(sign));
    });
    out
}

fn permutations(v: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permutations(v, start + 1, f);
        v.swap(start, i);
    }
}

fn leading(p: &Poly) -> Option<(&Exponents, &BigInt)> {
    // plain lex with x1 most significant
    p.terms().max_by(|a, b| a.0.cmp(b.0))
}

/// Exact quotient `num / den` by multivariate long division in lex order.
fn div_exact(num: &Poly, den: &Poly) -> Result<Poly> {
    let spec = num.spec();
    let (de, dc) = leading(den).ok_or(Error::ZeroDivisor)?;
    let (de, dc) = (de.clone(), dc.clone());
    let mut rem = num.clone();
    let mut quot = Poly::zero(spec);
    while let Some((re, rc)) = leading(&rem) {
        let (q, r) = rc.div_rem(&dc);
        if !r.is_zero() || re.iter().zip(&de).any(|(a, b)| a < b) {
            return Err(Error::InexactDivision(format!("({num}) / ({den})")));
        }
        let e: Exponents = re.iter().zip(&de).map(|(a, b)| a - b).collect();
        let t = Poly::monomial(spec, e, q);
        rem -= &(&t * den);
        quot += &t;
    }
    Ok(quot)
}

/// The Schur polynomial of the partition `(i_k - k, ..., i_1 - 1)` in `vars`
/// auxiliary variables.
pub fn schur_sym(index: &IndexSeq, vars: usize) -> Result<SymPoly> {
    let k = index.len();
    if k > vars {
        return Err(Error::WrongLength { index: index.to_string(), len: k, k: vars });
    }
    let spec = VarSpec::aux(vars);
    let mut parts = index.partition();
    parts.resize(vars, 0);
    let shifted: Vec<u32> = parts.iter().enumerate().map(|(j, &l)| (l + vars - 1 - j) as u32).collect();
    let staircase: Vec<u32> = (0..vars).map(|j| (vars - 1 - j) as u32).collect();
    div_exact(&alternant(spec, &shifted), &alternant(spec, &staircase))
}

/// Classical Littlewood-Richardson coefficients `c^K_{IJ}` for `K` in
/// `I^k_n`, obtained by expanding `s_I s_J` in `k` variables.
pub fn lr_constants(i: &IndexSeq, j: &IndexSeq, k: usize, n: usize) -> Result<BTreeMap<IndexSeq, BigInt>> {
    i.check_in(k, n)?;
    j.check_in(k, n)?;
    let mut rem = schur_sym(i, k)? * schur_sym(j, k)?;
    let mut out = BTreeMap::new();
    while let Some((e, c)) = leading(&rem) {
        let (e, c) = (e.clone(), c.clone());
        if e.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InexactDivision(format!(
                "leading exponent {e:?} of a symmetric remainder is not a partition"
            )));
        }
        let parts: Vec<usize> = e.iter().map(|&x| x as usize).collect();
        let kk = IndexSeq::from_partition(&parts, k);
        rem -= &schur_sym(&kk, k)?.scale(&c);
        if parts[0] <= n - k {
            out.insert(kk, c);
        }
    }
    Ok(out)
}
