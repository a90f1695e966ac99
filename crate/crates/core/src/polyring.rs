//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! A [`Poly`] is a map from exponent vectors to nonzero [`BigInt`]s together
//! with the [`VarSpec`] naming its variables. Two variable families are used
//! by the Grassmannian code: the torus weights `y1..yn` (all of degree 1) and
//! the generic coefficients `c1..cn` of the monic polynomial (`ci` has degree
//! `i`). A third family `x1..xN` backs the symmetric-function oracle.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// `y1..yn`, every variable of degree 1.
    Torus,
    /// `c1..cn`, `ci` of degree `i`.
    Generic,
    /// `x1..xN`, auxiliary degree-1 variables.
    Aux,
}

impl VarKind {
    fn letter(self) -> char {
        match self {
            VarKind::Torus => 'y',
            VarKind::Generic => 'c',
            VarKind::Aux => 'x',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarSpec {
    kind: VarKind,
    count: usize,
}

impl VarSpec {
    pub fn new(kind: VarKind, count: usize) -> Self {
        assert!(count > 0, "a variable set needs at least one variable");
        VarSpec { kind, count }
    }

    pub fn torus(count: usize) -> Self {
        Self::new(VarKind::Torus, count)
    }

    pub fn generic(count: usize) -> Self {
        Self::new(VarKind::Generic, count)
    }

    pub fn aux(count: usize) -> Self {
        Self::new(VarKind::Aux, count)
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Degree of the `i`-th variable (1-based).
    pub fn degree(&self, i: usize) -> u32 {
        match self.kind {
            VarKind::Generic => i as u32,
            VarKind::Torus | VarKind::Aux => 1,
        }
    }

    pub fn name(&self, i: usize) -> String {
        format!("{}{}", self.kind.letter(), i)
    }
}

impl fmt::Display for VarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.kind.letter();
        write!(f, "{c}1..{c}{}", self.count)
    }
}

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    spec: VarSpec,
    terms: BTreeMap<Exponents, BigInt>,
}

impl Poly {
    pub fn zero(spec: VarSpec) -> Self {
        Poly { spec, terms: BTreeMap::new() }
    }

    pub fn one(spec: VarSpec) -> Self {
        Self::constant(spec, 1)
    }

    pub fn constant(spec: VarSpec, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(spec);
        if !c.is_zero() {
            p.terms.insert(vec![0; spec.count], c);
        }
        p
    }

    /// The `i`-th variable, 1-based.
    pub fn var(spec: VarSpec, i: usize) -> Self {
        assert!((1..=spec.count).contains(&i), "variable index {i} outside {spec}");
        let mut e = vec![0; spec.count];
        e[i - 1] = 1;
        Self::monomial(spec, e, BigInt::one())
    }

    pub fn monomial(spec: VarSpec, exponents: Exponents, coeff: BigInt) -> Self {
        assert_eq!(exponents.len(), spec.count);
        let mut p = Self::zero(spec);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn from_terms(spec: VarSpec, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut p = Self::zero(spec);
        for (e, c) in terms {
            assert_eq!(e.len(), spec.count);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn spec(&self) -> VarSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    fn monomial_degree(&self, e: &[u32]) -> u32 {
        e.iter().enumerate().map(|(i, &x)| x * self.spec.degree(i + 1)).sum()
    }

    /// Weighted total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.monomial_degree(e)).max()
    }

    /// True when every term has weighted degree `d`. The zero polynomial is
    /// homogeneous of every degree.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| self.monomial_degree(e) == d)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.is_homogeneous_of(d),
        }
    }

    fn check_spec(&self, other: &Poly) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::VarSpecMismatch(self.spec, other.spec))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        let mut out = Poly::zero(self.spec);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.spec);
        }
        Poly { spec: self.spec, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.spec);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Substitutes the 1-based variable `i` by `value`.
    pub fn substitute(&self, i: usize, value: &Poly) -> Result<Poly> {
        self.check_spec(value)?;
        let mut by_power: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = std::mem::take(&mut rest[i - 1]);
            by_power.entry(k).or_insert_with(|| Poly::zero(self.spec)).add_term(rest, c.clone());
        }
        let mut out = Poly::zero(self.spec);
        let mut power = Poly::one(self.spec);
        let mut at = 0;
        for (k, part) in by_power {
            while at < k {
                power = &power * value;
                at += 1;
            }
            out += &(&part * &power);
        }
        Ok(out)
    }

    /// Renames variable `from` to `to` (both 1-based): the substitution
    /// `v_from := v_to`.
    pub fn identify_vars(&self, from: usize, to: usize) -> Poly {
        let mut out = Poly::zero(self.spec);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            let x = std::mem::take(&mut e[from - 1]);
            e[to - 1] += x;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Exact divisibility test. `d` must be a nonzero integer or `±(v_a - v_b)`.
    pub fn divides(d: &Poly, p: &Poly) -> Result<bool> {
        d.check_spec(p)?;
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if let Some(c) = d.constant_value() {
            return Ok(p.terms.values().all(|x| x.is_multiple_of(&c)));
        }
        let (a, b) = d.variable_difference().ok_or_else(|| Error::UnsupportedDivisor(d.to_string()))?;
        Ok(p.identify_vars(a, b).is_zero())
    }

    /// `Some((a, b))` when `self = ±(v_a - v_b)`.
    fn variable_difference(&self) -> Option<(usize, usize)> {
        if self.terms.len() != 2 {
            return None;
        }
        let mut vars = Vec::with_capacity(2);
        let mut signs = Vec::with_capacity(2);
        for (e, c) in &self.terms {
            if !c.abs().is_one() || e.iter().sum::<u32>() != 1 {
                return None;
            }
            vars.push(e.iter().position(|&x| x == 1)? + 1);
            signs.push(c.is_positive());
        }
        (signs[0] != signs[1]).then(|| (vars[0], vars[1]))
    }

    /// Terms sorted by the canonical display order: higher weighted degree
    /// first, ties broken lexicographically from the highest variable down
    /// (`y1 < y2 < ...`).
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &BigInt)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| self.term_order(b, a));
        ts
    }

    fn term_order(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.monomial_degree(a).cmp(&self.monomial_degree(b)).then_with(|| a.iter().rev().cmp(b.iter().rev()))
    }

    pub fn parse(s: &str, spec: VarSpec) -> Result<Poly> {
        let mut p = Parser { src: s.as_bytes(), pos: 0, spec };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

/// `h_m(vars)`, with `h_0 = 1`.
pub fn complete_h(spec: VarSpec, m: usize, vars: &[Poly]) -> Poly {
    // table[d] holds h_d of the variables consumed so far
    let mut table: Vec<Poly> =
        (0..=m).map(|d| if d == 0 { Poly::one(spec) } else { Poly::zero(spec) }).collect();
    for v in vars {
        for d in 1..=m {
            let add = &table[d - 1] * v;
            table[d] += &add;
        }
    }
    table.swap_remove(m)
}

/// `e_m(vars)`; zero when `m` exceeds the number of arguments.
pub fn elementary_e(spec: VarSpec, m: usize, vars: &[Poly]) -> Poly {
    if m > vars.len() {
        return Poly::zero(spec);
    }
    let mut table: Vec<Poly> =
        (0..=m).map(|d| if d == 0 { Poly::one(spec) } else { Poly::zero(spec) }).collect();
    for v in vars {
        for d in (1..=m).rev() {
            let add = &table[d - 1] * v;
            table[d] += &add;
        }
    }
    table.swap_remove(m)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    let name = self.spec.name(i + 1);
                    if x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics when the operands live over different variable sets;
            /// use the `checked_*` form to get an error instead.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.check_spec(rhs).unwrap_or_else(|e| panic!("{e}"));
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.check_spec(rhs).unwrap_or_else(|e| panic!("{e}"));
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { spec: self.spec, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Recursive-descent parser. Besides the canonical form it accepts
/// parentheses, implicit multiplication and, over the torus variables,
/// `Yi` as shorthand for `yi - y1`.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    spec: VarSpec,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::PolyParse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.spec);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {}
                _ => return Ok(acc),
            }
            let f = self.factor()?;
            acc = &acc * &f;
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.number()?;
            let k: u32 = k.try_into().map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Poly> {
        let spec = self.spec;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(spec, self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let letter = c;
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'_') {
                    self.pos += 1;
                }
                let idx = self.number()?;
                let idx: usize = idx
                    .try_into()
                    .ok()
                    .filter(|i| (1..=spec.count()).contains(i))
                    .ok_or_else(|| self.err(&format!("variable index outside {spec}")))?;
                let shifted = letter == b'Y' && spec.kind() == VarKind::Torus;
                if shifted {
                    return Ok(Poly::var(spec, idx) - Poly::var(spec, 1));
                }
                if letter as char != spec.kind().letter() {
                    return Err(self.err(&format!("variable `{}` not in {spec}", letter as char)));
                }
                Ok(Poly::var(spec, idx))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(i: usize) -> Poly {
        Poly::var(VarSpec::torus(4), i)
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s, VarSpec::torus(4)).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert!(((y(2) - y(1)) + (y(1) - y(2))).is_zero());
        assert_eq!(y(2) + y(2), p("2*y2"));
        assert_eq!(&y(2) * &y(3) + &y(3) * &y(2), p("2*y2*y3"));
    }

    #[test]
    fn multiplication_examples() {
        let one = Poly::one(VarSpec::torus(4));
        assert_eq!(&(y(2) - y(1)) * &one, y(2) - y(1));
        let prod = (y(3) - y(1)) * (y(3) - y(2));
        assert_eq!(prod.to_string(), "y3^2 - y2*y3 - y1*y3 + y1*y2");
        assert!((Poly::zero(VarSpec::torus(4)) * y(3)).is_zero());
    }

    #[test]
    fn mismatched_specs_are_rejected() {
        let a = Poly::var(VarSpec::torus(3), 1);
        let b = Poly::var(VarSpec::generic(3), 1);
        assert!(matches!(a.checked_add(&b), Err(Error::VarSpecMismatch(..))));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn display_format() {
        assert_eq!(p("2*y2*y3 - y1^2 + 1").to_string(), "2*y2*y3 - y1^2 + 1");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-y1").to_string(), "-y1");
        assert_eq!(p("1 - y1").to_string(), "-y1 + 1");
        let c = Poly::parse("c2 + c1^2", VarSpec::generic(3)).unwrap();
        // equal weighted degree, c2 ranks above c1
        assert_eq!(c.to_string(), "c2 + c1^2");
    }

    #[test]
    fn parser_extensions() {
        assert_eq!(p("Y3 - Y2"), p("y3 - y2"));
        assert_eq!(p("(Y4-Y2)(Y4-Y3)"), p("(y4 - y2)*(y4 - y3)"));
        assert_eq!(p("  y_2   *y3 "), p("y2*y3"));
        assert!(Poly::parse("y5", VarSpec::torus(4)).is_err());
        assert!(Poly::parse("c1", VarSpec::torus(4)).is_err());
        assert!(Poly::parse("y1 +", VarSpec::torus(4)).is_err());
        assert!(Poly::parse("(y1", VarSpec::torus(4)).is_err());
    }

    #[test]
    fn symmetric_function_examples() {
        let s = VarSpec::torus(7);
        let big_y = |i: usize| Poly::var(s, i) - Poly::var(s, 1);
        assert!(complete_h(s, 0, &[big_y(2)]).is_one());
        assert!(complete_h(s, 0, &[]).is_one());
        let args: Vec<Poly> = [2, 3, 5, 6, 7].into_iter().map(big_y).collect();
        let expected = Poly::parse("y2+y3+y5+y6+y7-5*y1", s).unwrap();
        assert_eq!(complete_h(s, 1, &args), expected);

        let a = Poly::var(s, 1);
        let b = Poly::var(s, 2);
        assert_eq!(complete_h(s, 2, &[a.clone(), b.clone()]), &a * &a + &a * &b + &b * &b);
        assert_eq!(elementary_e(s, 1, &[big_y(2), big_y(3)]), big_y(2) + big_y(3));
        assert!(elementary_e(s, 0, std::slice::from_ref(&a)).is_one());
        assert!(elementary_e(s, 3, &[a, b]).is_zero());
    }

    #[test]
    fn divisibility_examples() {
        let big_y = |i: usize| y(i) - y(1);
        assert!(Poly::divides(&(y(3) - y(4)), &(big_y(3) - big_y(4))).unwrap());
        assert!(!Poly::divides(&(y(2) - y(3)), &(y(2) - y(1))).unwrap());
        assert!(Poly::divides(&(y(2) - y(3)), &Poly::zero(VarSpec::torus(4))).unwrap());
        assert_eq!(Poly::divides(&Poly::zero(VarSpec::torus(4)), &y(1)), Err(Error::ZeroDivisor));
        assert!(Poly::divides(&Poly::constant(VarSpec::torus(4), 2), &p("4*y1 + 2")).unwrap());
        assert!(matches!(Poly::divides(&(y(1) + y(2)), &y(1)), Err(Error::UnsupportedDivisor(_))));
    }

    #[test]
    fn newton_duality() {
        for size in 1..=4 {
            let s = VarSpec::aux(size);
            let vars: Vec<Poly> = (1..=size).map(|i| Poly::var(s, i)).collect();
            for m in 1..=2 * size {
                let mut acc = Poly::zero(s);
                for i in 0..=m {
                    let t = elementary_e(s, i, &vars) * complete_h(s, m - i, &vars);
                    if i % 2 == 0 {
                        acc += &t;
                    } else {
                        acc -= &t;
                    }
                }
                assert!(acc.is_zero(), "m = {m}, |v| = {size}");
            }
        }
    }

    #[test]
    fn substitution() {
        let q = p("y1^2*y2 + 3*y1 - 1");
        assert_eq!(q.substitute(1, &p("y3 + 1")).unwrap(), p("(y3+1)^2*y2 + 3*y3 + 2"));
        let g = Poly::parse("c1*c2 + c3", VarSpec::generic(3)).unwrap();
        let zero = Poly::zero(VarSpec::generic(3));
        assert!(g.substitute(1, &zero).unwrap().substitute(3, &zero).unwrap().is_zero());
    }

    fn arb_poly(spec: VarSpec) -> impl Strategy<Value = Poly> {
        let n = spec.count();
        prop::collection::vec((prop::collection::vec(0u32..3, n), -5i64..6), 0..5)
            .prop_map(move |ts| Poly::from_terms(spec, ts.into_iter().map(|(e, c)| (e, c.into()))))
    }

    fn arb_homogeneous(spec: VarSpec, d: u32) -> impl Strategy<Value = Poly> {
        let n = spec.count();
        prop::collection::vec((prop::collection::vec(0u32..=d, n), -5i64..6), 0..5).prop_map(move |ts| {
            Poly::from_terms(
                spec,
                ts.into_iter().filter_map(|(mut e, c)| {
                    // rescale into degree d by topping up the last variable
                    let w: u32 = e.iter().enumerate().map(|(i, x)| x * spec.degree(i + 1)).sum();
                    if w > d {
                        return None;
                    }
                    let last = spec.degree(n);
                    if !(d - w).is_multiple_of(last) {
                        return None;
                    }
                    e[n - 1] += (d - w) / last;
                    Some((e, c.into()))
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(VarSpec::torus(3)), b in arb_poly(VarSpec::torus(3)), c in arb_poly(VarSpec::torus(3))) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn canonical_strings_round_trip(a in arb_poly(VarSpec::torus(3))) {
            let s = a.to_string();
            let back = Poly::parse(&s, VarSpec::torus(3)).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), s);
        }

        #[test]
        fn generic_strings_round_trip(a in arb_poly(VarSpec::generic(3))) {
            let back = Poly::parse(&a.to_string(), VarSpec::generic(3)).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn graded_products(
            (d1, d2, a, b) in (0u32..4, 0u32..4, any::<bool>()).prop_flat_map(|(d1, d2, torus)| {
                let spec = if torus { VarSpec::torus(3) } else { VarSpec::generic(3) };
                (Just(d1), Just(d2), arb_homogeneous(spec, d1), arb_homogeneous(spec, d2))
            })
        ) {
            prop_assert!(a.is_homogeneous_of(d1) && b.is_homogeneous_of(d2));
            let prod = &a * &b;
            prop_assert!(prod.is_homogeneous_of(d1 + d2));
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!(prod.degree(), Some(d1 + d2));
            }
        }
    }
}
