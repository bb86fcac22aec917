//! Partitions of a coweight into positive coroots and their q-analogue.
//!
//! A partition of `alpha` is a multiset of positive coroots summing to
//! `alpha`; the graded count `sum_kappa t^{-|kappa|}` specializes at `t = 1`
//! to the plain partition count. Enumeration is by bounded multiplicity
//! vectors over the coroot table with componentwise pruning, which is
//! exponential in `|alpha|` but ample at the scales this crate targets.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::exactalg::{CharacterSeries, LaurentPoly, Var};
use crate::rootdata::{Coweight, RootDatumTables};
use crate::{Error, Result};

/// A multiset of positive coroots, stored as a non-increasing list of
/// indices into the coroot table. Two partitions are equal iff the
/// multisets agree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KostantPartition {
    parts: Vec<usize>,
}

impl KostantPartition {
    pub fn empty() -> Self {
        KostantPartition { parts: Vec::new() }
    }

    /// Coroot-table indices of the parts, non-increasing.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|kappa|`: the number of parts.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// The sum of the parts.
    pub fn total(&self, rd: &RootDatumTables) -> Coweight {
        let mut acc = Coweight::zero(rd.rank());
        for &k in &self.parts {
            acc = acc.add(&rd.pos_coroots()[k]);
        }
        acc
    }
}

/// Partition enumeration and the q-Kostant partition function, with a
/// synchronized memo table keyed by the target coweight.
pub struct Kostant<'a> {
    rd: &'a RootDatumTables,
    memo: Mutex<HashMap<Coweight, LaurentPoly>>,
}

impl<'a> Kostant<'a> {
    pub fn new(rd: &'a RootDatumTables) -> Self {
        Kostant {
            rd,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn tables(&self) -> &'a RootDatumTables {
        self.rd
    }

    fn check_natural(&self, alpha: &Coweight) -> Result<()> {
        if alpha.rank() != self.rd.rank() {
            return Err(Error::Usage(format!(
                "coweight rank {} does not match root datum rank {}",
                alpha.rank(),
                self.rd.rank()
            )));
        }
        if !alpha.is_natural() {
            return Err(Error::Domain(format!(
                "coweight {alpha} has a negative coefficient"
            )));
        }
        Ok(())
    }

    /// All partitions of `alpha` into positive coroots, duplicate-free, in a
    /// deterministic order: depth-first over the coroot table with the
    /// multiplicity of the first coroot decreasing.
    pub fn enumerate_partitions(&self, alpha: &Coweight) -> Result<Vec<KostantPartition>> {
        self.check_natural(alpha)?;
        let coroots = self.rd.pos_coroots();
        let mut out = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        fn rec(
            coroots: &[Coweight],
            k: usize,
            remaining: Coweight,
            stack: &mut Vec<usize>,
            out: &mut Vec<KostantPartition>,
        ) {
            if remaining.is_zero() {
                let mut parts = stack.clone();
                parts.reverse();
                out.push(KostantPartition { parts });
                return;
            }
            if k == coroots.len() {
                return;
            }
            // Maximal multiplicity of coroot k that fits componentwise.
            let mut max_mult = i64::MAX;
            for (r, &c) in coroots[k].coeffs().iter().enumerate() {
                if c > 0 {
                    max_mult = max_mult.min(remaining.coeff(r) / c);
                }
            }
            debug_assert!(max_mult < i64::MAX);
            for m in (0..=max_mult).rev() {
                let rest = remaining.sub(&coroots[k].scale(m));
                if !rest.is_natural() {
                    continue;
                }
                for _ in 0..m {
                    stack.push(k);
                }
                rec(coroots, k + 1, rest, stack, out);
                for _ in 0..m {
                    stack.pop();
                }
            }
        }
        rec(coroots, 0, *alpha, &mut stack, &mut out);
        Ok(out)
    }

    /// The q-analogue `sum_kappa t^{-|kappa|}` over partitions of `alpha`.
    pub fn kostant_poly(&self, alpha: &Coweight) -> Result<LaurentPoly> {
        self.check_natural(alpha)?;
        if let Some(p) = self.memo.lock().unwrap().get(alpha) {
            return Ok(p.clone());
        }
        let mut poly = LaurentPoly::zero(Var::T);
        for kappa in self.enumerate_partitions(alpha)? {
            poly = poly.add(&LaurentPoly::monomial(
                Var::T,
                -(kappa.num_parts() as i64),
                1,
            ))?;
        }
        self.memo.lock().unwrap().insert(*alpha, poly.clone());
        Ok(poly)
    }

    /// The plain partition count: the q-analogue evaluated at `t = 1`. This
    /// also equals the graded dimension of the degree-`alpha` piece of the
    /// local Ext-algebra and the number of irreducible components of the
    /// corresponding central-fiber intersection.
    pub fn kostant_number(&self, alpha: &Coweight) -> Result<BigInt> {
        Ok(self.kostant_poly(alpha)?.eval_at_one())
    }

    /// The generating series `sum_{alpha <= bound} K^alpha(t) e^alpha`.
    pub fn kostant_series(&self, bound: &Coweight) -> Result<CharacterSeries> {
        self.check_natural(bound)?;
        let mut out = CharacterSeries::zero(Var::T, *bound);
        for alpha in iterate_box(bound) {
            out.insert(alpha, self.kostant_poly(&alpha)?);
        }
        Ok(out)
    }

    /// The product form `prod_theta 1/(1 - t^-1 e^theta)` over positive
    /// coroots, truncated. Equal to [`kostant_series`](Self::kostant_series)
    /// on every truncation; the two sides are computed independently so the
    /// identity is a real check.
    pub fn kostant_series_product_form(&self, bound: &Coweight) -> Result<CharacterSeries> {
        self.check_natural(bound)?;
        let tinv = LaurentPoly::monomial(Var::T, -1, 1);
        let mut acc = CharacterSeries::one(Var::T, *bound);
        for theta in self.rd.pos_coroots() {
            let factor =
                CharacterSeries::invert_one_minus_term(Var::T, *bound, *theta, &tinv)?;
            acc = acc.mul(&factor)?;
        }
        Ok(acc)
    }

    /// Dimensions of the normalized diagonal strata: each partition `kappa`
    /// contributes an affine space of dimension `|kappa|`.
    pub fn diagonal_stratum_dims(
        &self,
        alpha: &Coweight,
    ) -> Result<Vec<(KostantPartition, usize)>> {
        Ok(self
            .enumerate_partitions(alpha)?
            .into_iter()
            .map(|k| {
                let d = k.num_parts();
                (k, d)
            })
            .collect())
    }
}

/// All natural coweights `0 <= alpha <= bound` componentwise, in graded-lex
/// order.
pub fn iterate_box(bound: &Coweight) -> Vec<Coweight> {
    let rank = bound.rank();
    let mut out = vec![Coweight::zero(rank)];
    for r in 0..rank {
        let mut next = Vec::new();
        for base in &out {
            for c in 0..=bound.coeff(r) {
                let mut v = *base;
                v = v.add(&Coweight::simple(rank, r + 1).scale(c));
                next.push(v);
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, CartanType};

    fn tp(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, Var::T).unwrap()
    }

    #[test]
    fn partition_enumeration() {
        let a2 = build_root_datum(CartanType::A2);
        let ks = Kostant::new(&a2);

        // alpha = 0: exactly the empty partition.
        let zero = Coweight::zero(2);
        assert_eq!(ks.enumerate_partitions(&zero).unwrap(), vec![KostantPartition::empty()]);

        // alpha = theta: {theta} and {a1, a2}.
        let theta = Coweight::from_coeffs(&[1, 1]);
        let parts = ks.enumerate_partitions(&theta).unwrap();
        assert_eq!(parts.len(), 2);
        for kappa in &parts {
            assert_eq!(kappa.total(&a2), theta);
        }
        let mut sizes: Vec<usize> = parts.iter().map(|k| k.num_parts()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);

        // negative input is a domain error
        assert!(ks.enumerate_partitions(&Coweight::from_coeffs(&[-1, 0])).is_err());

        // A1: n*alpha has exactly one partition with n parts.
        let a1 = build_root_datum(CartanType::A1);
        let ks1 = Kostant::new(&a1);
        for n in 0..8i64 {
            let parts = ks1.enumerate_partitions(&Coweight::from_coeffs(&[n])).unwrap();
            assert_eq!(parts.len(), 1);
            assert_eq!(parts[0].num_parts() as i64, n);
        }
    }

    #[test]
    fn poly_and_count_examples() {
        let a2 = build_root_datum(CartanType::A2);
        let ks = Kostant::new(&a2);
        assert_eq!(ks.kostant_poly(&Coweight::from_coeffs(&[1, 1])).unwrap(), tp("t^-1 + t^-2"));
        assert_eq!(ks.kostant_poly(&Coweight::zero(2)).unwrap(), tp("1"));
        assert_eq!(
            ks.kostant_number(&Coweight::from_coeffs(&[1, 1])).unwrap(),
            BigInt::from(2)
        );
        // 2a1 + a2: {a1,a1,a2}, {a1,theta}
        assert_eq!(
            ks.kostant_number(&Coweight::from_coeffs(&[2, 1])).unwrap(),
            BigInt::from(2)
        );
        assert!(ks.kostant_number(&Coweight::from_coeffs(&[0, -2])).is_err());

        let a1 = build_root_datum(CartanType::A1);
        let ks1 = Kostant::new(&a1);
        assert_eq!(ks1.kostant_poly(&Coweight::from_coeffs(&[5])).unwrap(), tp("t^-5"));
    }

    #[test]
    fn series_equals_product_form() {
        // A1 explicit small case first.
        let a1 = build_root_datum(CartanType::A1);
        let ks1 = Kostant::new(&a1);
        let bound = Coweight::from_coeffs(&[3]);
        let series = ks1.kostant_series(&bound).unwrap();
        for (n, want) in ["1", "t^-1", "t^-2", "t^-3"].iter().enumerate() {
            assert_eq!(
                series.coefficient_at(&Coweight::from_coeffs(&[n as i64])).unwrap(),
                tp(want)
            );
        }
        assert_eq!(series, ks1.kostant_series_product_form(&bound).unwrap());

        // truncation 0 is the unit series
        let unit_bound = Coweight::zero(2);
        let a2 = build_root_datum(CartanType::A2);
        let ks2 = Kostant::new(&a2);
        assert_eq!(
            ks2.kostant_series(&unit_bound).unwrap(),
            CharacterSeries::one(Var::T, unit_bound)
        );

        // A2 at bound 2*theta, both sides computed independently.
        let bound2 = Coweight::from_coeffs(&[2, 2]);
        assert_eq!(
            ks2.kostant_series(&bound2).unwrap(),
            ks2.kostant_series_product_form(&bound2).unwrap()
        );
    }

    #[test]
    fn diagonal_strata() {
        let a2 = build_root_datum(CartanType::A2);
        let ks = Kostant::new(&a2);
        let zero = Coweight::zero(2);
        assert_eq!(
            ks.diagonal_stratum_dims(&zero).unwrap(),
            vec![(KostantPartition::empty(), 0)]
        );

        let theta = Coweight::from_coeffs(&[1, 1]);
        let dims = ks.diagonal_stratum_dims(&theta).unwrap();
        let mut values: Vec<usize> = dims.iter().map(|(_, d)| *d).collect();
        values.sort();
        assert_eq!(values, vec![1, 2]);
        // The multiset of dimensions is the (negated) exponent multiset of
        // the q-analogue.
        let poly = ks.kostant_poly(&theta).unwrap();
        for (_, d) in &dims {
            assert!(poly.coefficient_at(-(*d as i64)) > BigInt::from(0));
        }

        // partition count == enumeration length
        for coeffs in [[0, 0], [1, 0], [2, 1], [3, 2], [2, 2]] {
            let alpha = Coweight::from_coeffs(&coeffs);
            assert_eq!(
                ks.kostant_number(&alpha).unwrap(),
                BigInt::from(ks.enumerate_partitions(&alpha).unwrap().len())
            );
        }
    }
}
