//! Exact sparse Laurent polynomials and truncated formal character series.
//!
//! Coefficients are arbitrary-precision integers: the self-dual basis
//! recursion can exceed machine words and exactness is non-negotiable here.
//! Values are immutable and all operations are pure, so everything is safe
//! to use concurrently.
//!
//! Canonical text rendering: polynomials as `c*v^k` terms sorted by
//! exponent, series as lines `alpha=[a1,a2,...] poly=...`. The rendering
//! round-trips through [`LaurentPoly::parse`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rootdata::Coweight;
use crate::{Error, Result};

/// The formal variable of a Laurent polynomial. `t` and `v` are bridged by
/// explicit substitution, and all Poincare series are computed in `q` with
/// `t = q^2` so that half-integer powers of `t` never arise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    V,
    T,
    Q,
}

impl Var {
    pub fn letter(self) -> char {
        match self {
            Var::V => 'v',
            Var::T => 't',
            Var::Q => 'q',
        }
    }
}

/// Sparse Laurent polynomial: exponent to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    var: Var,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: Var) -> Self {
        LaurentPoly::monomial(var, 0, BigInt::one())
    }

    pub fn monomial(var: Var, exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let c: BigInt = coeff.into();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { var, terms }
    }

    pub fn constant(var: Var, c: impl Into<BigInt>) -> Self {
        LaurentPoly::monomial(var, 0, c)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient_at(0).is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate `(exponent, coefficient)` in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient_at(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn check_var(&self, other: &LaurentPoly, op: &str) -> Result<()> {
        if self.var != other.var {
            return Err(Error::Usage(format!(
                "variable tag mismatch in {op}: {} vs {}",
                self.var.letter(),
                other.var.letter()
            )));
        }
        Ok(())
    }

    fn insert(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_var(other, "add")?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert(e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_var(other, "sub")?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert(e, -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.var);
        for (&e, c) in &self.terms {
            out.terms.insert(e, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_var(other, "mul")?;
        let mut out = LaurentPoly::zero(self.var);
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.insert(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.var);
        }
        let mut out = LaurentPoly::zero(self.var);
        for (&e, k) in &self.terms {
            out.terms.insert(e, k * c);
        }
        out
    }

    pub fn mul_monomial(&self, exp: i64, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.var);
        }
        let mut out = LaurentPoly::zero(self.var);
        for (&e, k) in &self.terms {
            out.terms.insert(e + exp, k * c);
        }
        out
    }

    /// The bar involution: variable to its inverse (exponent negation).
    pub fn bar(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.var);
        for (&e, c) in &self.terms {
            out.terms.insert(-e, c.clone());
        }
        out
    }

    /// Substitution of the square: sends `sum c_k x^k` to `sum c_k y^{2k}`
    /// in the target variable.
    pub fn substitute_square(&self, target: Var) -> LaurentPoly {
        let mut out = LaurentPoly::zero(target);
        for (&e, c) in &self.terms {
            out.terms.insert(2 * e, c.clone());
        }
        out
    }

    /// Relabel the formal variable without touching exponents.
    pub fn with_var(&self, target: Var) -> LaurentPoly {
        let mut out = LaurentPoly::zero(target);
        out.terms = self.terms.clone();
        out
    }

    /// Exact evaluation at 1: the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// True when all exponents lie in one parity class.
    pub fn single_parity(&self) -> bool {
        let mut classes = self.terms.keys().map(|e| e.rem_euclid(2));
        match classes.next() {
            None => true,
            Some(first) => classes.all(|p| p == first),
        }
    }

    /// True when every exponent is congruent to `anchor` mod 2.
    pub fn parity_matches(&self, anchor: i64) -> bool {
        self.terms
            .keys()
            .all(|e| e.rem_euclid(2) == anchor.rem_euclid(2))
    }

    /// Palindromic: invariant under exponent negation.
    pub fn is_palindromic(&self) -> bool {
        *self == self.bar()
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Parse the canonical rendering, e.g. `v^-1 + 3*v^2 - 2`.
    pub fn parse(s: &str, var: Var) -> Result<LaurentPoly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(LaurentPoly::zero(var));
        }
        let bad = || Error::Usage(format!("cannot parse polynomial {s:?}"));
        // Split into signed terms; a sign right after '^' binds to the exponent.
        let mut pieces: Vec<(i64, String)> = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        for (idx, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !cur.ends_with('^') {
                if idx != 0 {
                    if cur.is_empty() {
                        return Err(bad());
                    }
                    pieces.push((sign, std::mem::take(&mut cur)));
                }
                sign = if ch == '+' { 1 } else { -1 };
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad());
        }
        pieces.push((sign, cur));
        let mut out = LaurentPoly::zero(var);
        for (sign, term) in pieces {
            let (coeff_str, var_str) = match term.find(var.letter()) {
                None => (term.as_str(), None),
                Some(pos) => {
                    let (c, v) = term.split_at(pos);
                    (c.trim_end_matches('*'), Some(v))
                }
            };
            let coeff: BigInt = if coeff_str.is_empty() {
                BigInt::one()
            } else {
                coeff_str.parse().map_err(|_| bad())?
            };
            let exp: i64 = match var_str {
                None => 0,
                Some(v) => {
                    let rest = &v[1..];
                    if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse()
                            .map_err(|_| bad())?
                    }
                }
            };
            let signed = if sign < 0 { -coeff } else { coeff };
            out.insert(exp, signed);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let letter = self.var.letter();
        for (idx, (&e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{letter}")?,
                (1, false) => write!(f, "{mag}*{letter}")?,
                (_, true) => write!(f, "{letter}^{e}")?,
                (_, false) => write!(f, "{mag}*{letter}^{e}")?,
            }
        }
        Ok(())
    }
}

/// A truncated formal cocharacter series: a sparse map from coweights
/// `0 <= alpha <= bound` (componentwise) to Laurent polynomials. The `base`
/// coweight records an overall exponential prefactor such as `e^{2rho}`;
/// exponents passed to [`coefficient_at`](Self::coefficient_at) are relative
/// to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSeries {
    var: Var,
    bound: Coweight,
    base: Coweight,
    terms: BTreeMap<Coweight, LaurentPoly>,
}

impl CharacterSeries {
    pub fn zero(var: Var, bound: Coweight) -> Self {
        assert!(bound.is_natural());
        CharacterSeries {
            var,
            bound,
            base: Coweight::zero(bound.rank()),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: Var, bound: Coweight) -> Self {
        let mut s = CharacterSeries::zero(var, bound);
        s.terms
            .insert(Coweight::zero(bound.rank()), LaurentPoly::one(var));
        s
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn bound(&self) -> Coweight {
        self.bound
    }

    pub fn base_shift(&self) -> Coweight {
        self.base
    }

    pub fn with_base_shift(mut self, base: Coweight) -> Self {
        self.base = base;
        self
    }

    fn in_range(&self, alpha: &Coweight) -> bool {
        alpha.is_natural() && alpha.leq(&self.bound)
    }

    /// Insert (adding) a term at `alpha`; exponents beyond the bound are
    /// discarded, which is exactly the truncation ideal.
    pub fn insert(&mut self, alpha: Coweight, poly: LaurentPoly) {
        assert_eq!(poly.var(), self.var);
        if !self.in_range(&alpha) || poly.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(e) => {
                e.insert(poly);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&poly).expect("same var");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// The coefficient polynomial at exponent `base + alpha`.
    pub fn coefficient_at(&self, alpha: &Coweight) -> Result<LaurentPoly> {
        if !self.in_range(alpha) {
            return Err(Error::OutOfRange(format!(
                "coefficient at {alpha} requested, truncation bound {}",
                self.bound
            )));
        }
        Ok(self
            .terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.var)))
    }

    /// Iterate `(alpha, poly)` in graded-lex order on `alpha`.
    pub fn iter(&self) -> impl Iterator<Item = (&Coweight, &LaurentPoly)> {
        self.terms.iter()
    }

    fn check_compatible(&self, other: &CharacterSeries, op: &str) -> Result<()> {
        if self.var != other.var {
            return Err(Error::Usage(format!(
                "variable tag mismatch in series {op}"
            )));
        }
        if self.bound != other.bound {
            return Err(Error::Usage(format!(
                "truncation bound mismatch in series {op}: {} vs {}",
                self.bound, other.bound
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &CharacterSeries) -> Result<CharacterSeries> {
        self.check_compatible(other, "add")?;
        if self.base != other.base {
            return Err(Error::Usage(
                "base shift mismatch in series add".to_string(),
            ));
        }
        let mut out = self.clone();
        for (alpha, poly) in &other.terms {
            out.insert(*alpha, poly.clone());
        }
        Ok(out)
    }

    /// Product by convolution of supports, discarding terms beyond the
    /// truncation bound. Base shifts add.
    pub fn mul(&self, other: &CharacterSeries) -> Result<CharacterSeries> {
        self.check_compatible(other, "mul")?;
        let mut out = CharacterSeries::zero(self.var, self.bound);
        out.base = self.base.add(&other.base);
        for (a1, p1) in &self.terms {
            for (a2, p2) in &other.terms {
                let a = a1.add(a2);
                if out.in_range(&a) {
                    out.insert(a, p1.mul(p2)?);
                }
            }
        }
        Ok(out)
    }

    pub fn scale_poly(&self, c: &LaurentPoly) -> Result<CharacterSeries> {
        let mut out = CharacterSeries::zero(self.var, self.bound);
        out.base = self.base;
        for (a, p) in &self.terms {
            out.insert(*a, p.mul(c)?);
        }
        Ok(out)
    }

    /// The geometric-series inverse of `1 - c*e^theta` within the
    /// truncation: `sum_k c^k e^{k theta}`. Requires a nonzero natural
    /// `theta`, which makes the sum finite.
    pub fn invert_one_minus_term(
        var: Var,
        bound: Coweight,
        theta: Coweight,
        c: &LaurentPoly,
    ) -> Result<CharacterSeries> {
        if !theta.is_natural() || theta.is_zero() {
            return Err(Error::Domain(format!(
                "geometric inversion needs a nonzero natural exponent, got {theta}"
            )));
        }
        if c.var() != var {
            return Err(Error::Usage("variable tag mismatch in inversion".into()));
        }
        let mut out = CharacterSeries::zero(var, bound);
        let mut alpha = Coweight::zero(bound.rank());
        let mut power = LaurentPoly::one(var);
        loop {
            out.insert(alpha, power.clone());
            alpha = alpha.add(&theta);
            if !alpha.leq(&bound) {
                break;
            }
            power = power.mul(c)?;
        }
        Ok(out)
    }

    /// Map every coefficient polynomial.
    pub fn map_polys(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> CharacterSeries {
        let mut out = CharacterSeries::zero(self.var, self.bound);
        out.base = self.base;
        for (a, p) in &self.terms {
            out.insert(*a, f(p));
        }
        out
    }

    /// Canonical line rendering: `alpha=[a1,a2] poly=...` per term.
    pub fn render_lines(&self) -> String {
        let mut s = String::new();
        for (a, p) in &self.terms {
            s.push_str(&format!("alpha={a} poly={p}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tp(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, Var::T).unwrap()
    }

    fn vp(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, Var::V).unwrap()
    }

    #[test]
    fn poly_examples() {
        // bar(v + 3v^-2) = v^-1 + 3v^2
        assert_eq!(vp("v + 3*v^-2").bar(), vp("v^-1 + 3*v^2"));
        // substitute_square(t^-1 + t^-2) = v^-2 + v^-4
        assert_eq!(
            tp("t^-1 + t^-2").substitute_square(Var::V),
            vp("v^-2 + v^-4")
        );
        // (v^-1 - v)^2 = v^-2 - 2 + v^2
        let p = vp("v^-1 - v");
        assert_eq!(p.mul(&p).unwrap(), vp("v^-2 - 2 + v^2"));
        // mismatched tags are a usage error
        assert!(vp("v").add(&tp("t")).is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "1", "-1", "v^-2 - 2 + v^2", "3*v^5 + v - 7"] {
            let p = vp(s);
            assert_eq!(LaurentPoly::parse(&p.to_string(), Var::V).unwrap(), p);
        }
        assert!(LaurentPoly::parse("v^", Var::V).is_err());
        assert!(LaurentPoly::parse("++", Var::V).is_err());
    }

    #[test]
    fn series_examples() {
        let bound = Coweight::from_coeffs(&[3]);
        let theta = Coweight::from_coeffs(&[1]);
        // invert(1 - t^-1 e^theta) truncated at 3*theta
        let inv =
            CharacterSeries::invert_one_minus_term(Var::T, bound, theta, &tp("t^-1")).unwrap();
        for (k, want) in ["1", "t^-1", "t^-2", "t^-3"].iter().enumerate() {
            assert_eq!(
                inv.coefficient_at(&Coweight::from_coeffs(&[k as i64])).unwrap(),
                tp(want)
            );
        }
        assert!(inv.coefficient_at(&Coweight::from_coeffs(&[4])).is_err());

        // product of units is the unit
        let one = CharacterSeries::one(Var::T, bound);
        assert_eq!(one.mul(&one).unwrap(), one);

        // two-sided inverse within the truncation ideal
        let mut one_minus = CharacterSeries::one(Var::T, bound);
        one_minus.insert(theta, tp("-t^-1"));
        assert_eq!(one_minus.mul(&inv).unwrap(), one);
        assert_eq!(inv.mul(&one_minus).unwrap(), one);
    }

    proptest! {
        #[test]
        fn ring_axioms(
            a in proptest::collection::vec((-6i64..6, -4i64..4), 0..5),
            b in proptest::collection::vec((-6i64..6, -4i64..4), 0..5),
            c in proptest::collection::vec((-6i64..6, -4i64..4), 0..5),
        ) {
            let mk = |v: &[(i64, i64)]| {
                let mut p = LaurentPoly::zero(Var::V);
                for &(e, k) in v {
                    p = p.add(&LaurentPoly::monomial(Var::V, e, k)).unwrap();
                }
                p
            };
            let (pa, pb, pc) = (mk(&a), mk(&b), mk(&c));
            // associativity and distributivity, exactly
            prop_assert_eq!(
                pa.mul(&pb).unwrap().mul(&pc).unwrap(),
                pa.mul(&pb.mul(&pc).unwrap()).unwrap()
            );
            prop_assert_eq!(
                pa.mul(&pb.add(&pc).unwrap()).unwrap(),
                pa.mul(&pb).unwrap().add(&pa.mul(&pc).unwrap()).unwrap()
            );
            // bar is a multiplicative involution
            prop_assert_eq!(pa.bar().bar(), pa.clone());
            prop_assert_eq!(
                pa.mul(&pb).unwrap().bar(),
                pa.bar().mul(&pb.bar()).unwrap()
            );
            // display round-trip
            prop_assert_eq!(LaurentPoly::parse(&pa.to_string(), Var::V).unwrap(), pa);
        }
    }
}
