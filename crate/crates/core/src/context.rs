//! The ambient data `(n, k, p)` every computation runs against.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use crate::combinatorics::{index_sets, IndexSeq};
use crate::derivation::Rule;
use crate::error::{Error, Result};
use crate::operator::SchubertOp;
use crate::polyring::{elementary_e, Exponents, Poly, VarSpec};

/// How the coefficients `c_1..c_n` of the monic polynomial
/// `p = X^n + c_1 X^{n-1} + ... + c_n` are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `p = X^n`: ordinary cohomology.
    Classical,
    /// Each `c_i` is a free variable of degree `i`.
    Generic,
    /// `p = X (X - Y_2) ... (X - Y_n)` with `Y_j = y_j - y_1`: the diagonal
    /// torus acting on `C^n`.
    Torus,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Classical => "classical",
            Mode::Generic => "generic",
            Mode::Torus => "torus",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "classical" => Ok(Mode::Classical),
            "generic" => Ok(Mode::Generic),
            "torus" => Ok(Mode::Torus),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

type OpCache = HashMap<(Rule, Vec<usize>), Arc<SchubertOp>>;

/// Immutable once built, apart from internal memo tables guarded by locks.
pub struct Context {
    n: usize,
    k: usize,
    mode: Mode,
    spec: VarSpec,
    coeffs: Vec<Poly>,
    basis: Vec<IndexSeq>,
    positions: HashMap<IndexSeq, usize>,
    // reductions[m - 1] = coordinates of epsilon^m in epsilon^1..epsilon^n
    reductions: RwLock<Vec<Arc<Vec<Poly>>>>,
    d_matrices: RwLock<HashMap<(Rule, usize), Arc<SchubertOp>>>,
    schur_ops: RwLock<OpCache>,
    // torus only: the generic context over Z[c_1..c_n] and the values of
    // c-monomials under c_i -> (-1)^i e_i(Y)
    universal: OnceLock<Box<Context>>,
    monomials: RwLock<HashMap<Exponents, Poly>>,
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Context")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("mode", &self.mode)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

pub fn make_context(n: usize, k: usize, mode: Mode) -> Result<Context> {
    Context::new(n, k, mode)
}

impl Context {
    pub fn new(n: usize, k: usize, mode: Mode) -> Result<Self> {
        if n == 0 || k == 0 || k > n {
            return Err(Error::InvalidDimensions { n, k });
        }
        let (spec, coeffs) = match mode {
            Mode::Classical => {
                let spec = VarSpec::generic(n);
                (spec, vec![Poly::zero(spec); n])
            }
            Mode::Generic => {
                let spec = VarSpec::generic(n);
                (spec, (1..=n).map(|i| Poly::var(spec, i)).collect())
            }
            Mode::Torus => {
                let spec = VarSpec::torus(n);
                let ys: Vec<Poly> = (1..=n).map(|j| shifted_weight(spec, j)).collect();
                let coeffs = (1..=n)
                    .map(|i| {
                        let e = elementary_e(spec, i, &ys);
                        if i % 2 == 1 {
                            -e
                        } else {
                            e
                        }
                    })
                    .collect();
                (spec, coeffs)
            }
        };
        let basis = index_sets(k, n);
        let positions = basis.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let reductions = (1..=n)
            .map(|m| {
                let mut v = vec![Poly::zero(spec); n];
                v[m - 1] = Poly::one(spec);
                Arc::new(v)
            })
            .collect();
        Ok(Context {
            n,
            k,
            mode,
            spec,
            coeffs,
            basis,
            positions,
            reductions: RwLock::new(reductions),
            d_matrices: RwLock::default(),
            schur_ops: RwLock::default(),
            universal: OnceLock::new(),
            monomials: RwLock::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn spec(&self) -> VarSpec {
        self.spec
    }

    /// `c_1..c_n`.
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// `c_i`, with `c_0 = 1` and `c_i = 0` for `i > n`.
    pub fn coeff(&self, i: usize) -> Poly {
        match i {
            0 => Poly::one(self.spec),
            i if i <= self.n => self.coeffs[i - 1].clone(),
            _ => Poly::zero(self.spec),
        }
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.spec)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.spec)
    }

    /// `I^k_n` in degree-then-lexicographic order.
    pub fn basis(&self) -> &[IndexSeq] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, index: &IndexSeq) -> Option<usize> {
        self.positions.get(index).copied()
    }

    pub fn check_index(&self, index: &IndexSeq) -> Result<()> {
        index.check_in(self.k, self.n)
    }

    /// Coordinates of `epsilon^m` in the basis `epsilon^1..epsilon^n`, using
    /// `X^m = -(c_1 X^{m-1} + ... + c_n X^{m-n})` modulo `p` for `m > n`.
    pub fn epsilon(&self, m: usize) -> Result<Arc<Vec<Poly>>> {
        if m == 0 {
            return Err(Error::ZeroExponent);
        }
        if let Some(v) = self.reductions.read().unwrap().get(m - 1) {
            return Ok(Arc::clone(v));
        }
        let mut table = self.reductions.write().unwrap();
        while table.len() < m {
            let next = table.len() + 1;
            let mut v = vec![self.zero(); self.n];
            for i in 1..=self.n {
                let c = &self.coeffs[i - 1];
                if c.is_zero() {
                    continue;
                }
                for (slot, x) in v.iter_mut().zip(table[next - i - 1].iter()) {
                    if !x.is_zero() {
                        *slot -= &(c * x);
                    }
                }
            }
            table.push(Arc::new(v));
        }
        Ok(Arc::clone(&table[m - 1]))
    }

    /// The generic context of the same shape, for modes whose coefficients
    /// are a specialization of `c_1..c_n` worth going through. Matrix-level
    /// constructions are polynomial in the `c_i`, so they can be built there
    /// and pushed forward with [`Context::specialize_op`].
    pub(crate) fn universal(&self) -> Option<&Context> {
        if self.mode != Mode::Torus {
            return None;
        }
        Some(
            self.universal
                .get_or_init(|| Box::new(Context::new(self.n, self.k, Mode::Generic).expect("same shape"))),
        )
    }

    /// Image of a polynomial in `c_1..c_n` under `c_i -> coeff(i)`.
    pub(crate) fn specialize(&self, p: &Poly) -> Poly {
        let mut out = self.zero();
        for (e, c) in p.terms() {
            out += &self.monomial_value(e).scale(c);
        }
        out
    }

    fn monomial_value(&self, e: &[u32]) -> Poly {
        if let Some(v) = self.monomials.read().unwrap().get(e) {
            return v.clone();
        }
        let value = match e.iter().position(|&x| x > 0) {
            None => self.one(),
            Some(i) => {
                let mut lower = e.to_vec();
                lower[i] -= 1;
                &self.monomial_value(&lower) * &self.coeffs[i]
            }
        };
        self.monomials.write().unwrap().insert(e.to_vec(), value.clone());
        value
    }

    pub(crate) fn specialize_op(&self, op: &SchubertOp) -> SchubertOp {
        op.map_entries(self.spec, |p| self.specialize(p))
    }

    pub(crate) fn cached_d_matrix(&self, key: (Rule, usize)) -> Option<Arc<SchubertOp>> {
        self.d_matrices.read().unwrap().get(&key).cloned()
    }

    pub(crate) fn store_d_matrix(&self, key: (Rule, usize), op: SchubertOp) -> Arc<SchubertOp> {
        let mut table = self.d_matrices.write().unwrap();
        Arc::clone(table.entry(key).or_insert_with(|| Arc::new(op)))
    }

    pub(crate) fn cached_schur(&self, key: &(Rule, Vec<usize>)) -> Option<Arc<SchubertOp>> {
        self.schur_ops.read().unwrap().get(key).cloned()
    }

    pub(crate) fn store_schur(&self, key: (Rule, Vec<usize>), op: SchubertOp) -> Arc<SchubertOp> {
        let mut table = self.schur_ops.write().unwrap();
        Arc::clone(table.entry(key).or_insert_with(|| Arc::new(op)))
    }
}

/// `Y_j = y_j - y_1` over the torus variables; `Y_1 = 0`.
pub fn shifted_weight(spec: VarSpec, j: usize) -> Poly {
    Poly::var(spec, j) - Poly::var(spec, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_modes() {
        let ctx = make_context(4, 2, Mode::Classical).unwrap();
        assert!(ctx.coeffs().iter().all(Poly::is_zero));

        let ctx = make_context(2, 1, Mode::Torus).unwrap();
        let s = ctx.spec();
        assert_eq!(ctx.coeffs()[0], Poly::parse("y1 - y2", s).unwrap());
        assert!(ctx.coeffs()[1].is_zero());

        let ctx = make_context(4, 2, Mode::Torus).unwrap();
        let s = ctx.spec();
        // X (X - Y2)(X - Y3)(X - Y4)
        let y = |j| shifted_weight(s, j);
        assert_eq!(ctx.coeff(1), -(y(2) + y(3) + y(4)));
        assert_eq!(ctx.coeff(2), y(2) * y(3) + y(2) * y(4) + y(3) * y(4));
        assert_eq!(ctx.coeff(3), -(y(2) * y(3) * y(4)));
        assert!(ctx.coeff(4).is_zero());

        let ctx = make_context(3, 3, Mode::Generic).unwrap();
        for i in 1..=3 {
            assert!(ctx.coeff(i).is_homogeneous_of(i as u32));
        }
    }

    #[test]
    fn invalid_dimensions() {
        assert!(make_context(3, 4, Mode::Torus).is_err());
        assert!(make_context(0, 0, Mode::Classical).is_err());
        assert!(make_context(3, 0, Mode::Classical).is_err());
    }

    #[test]
    fn reduction() {
        let ctx = make_context(4, 2, Mode::Classical).unwrap();
        assert!(ctx.epsilon(0).is_err());
        let e3 = ctx.epsilon(3).unwrap();
        assert!(e3[2].is_one() && e3.iter().filter(|p| !p.is_zero()).count() == 1);
        for m in 5..12 {
            assert!(ctx.epsilon(m).unwrap().iter().all(Poly::is_zero));
        }

        // X^3 = Y2 X^2 modulo X^2 - Y2 X
        let ctx = make_context(2, 1, Mode::Torus).unwrap();
        let e3 = ctx.epsilon(3).unwrap();
        assert!(e3[0].is_zero());
        assert_eq!(e3[1], shifted_weight(ctx.spec(), 2));

        // generic: X^{n+1} = -c1 X^n - ... - cn X
        let ctx = make_context(3, 1, Mode::Generic).unwrap();
        let e4 = ctx.epsilon(4).unwrap();
        for (i, c) in e4.iter().enumerate() {
            assert_eq!(c, &-ctx.coeff(3 - i));
        }
    }
}
