use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};

use super::{StratError, StratifiedComplex};
use crate::linalg::{q, Rational};

/// A general perversity: an arbitrary integer on each singular stratum, keyed by label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perversity {
    values: BTreeMap<String, i64>,
}

/// Stratum-wise comparison of two perversities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerversityOrder {
    Equal,
    Less,
    Greater,
    Incomparable,
}

/// `[[x]]`: the greatest integer strictly less than `x`.
fn strict_floor(x: &Rational) -> i64 {
    (x.ceil().to_integer() - num_bigint::BigInt::from(1)).to_i64().expect("bracket value fits in i64")
}

/// The weight formula: for `l = cod(Y) − 1` and weight `c > 0`,
/// `0` when `l = 0`, `l/2 + [[1/(2c)]]` for even `l`, `(l−1)/2 + [[1/2 + 1/(2c)]]` for odd `l`.
pub fn weight_perversity_value(l: usize, c: &Rational) -> i64 {
    let l = l as i64;
    let half_inv = (q(2) * c).recip();
    if l == 0 {
        0
    } else if l % 2 == 0 {
        l / 2 + strict_floor(&half_inv)
    } else {
        (l - 1) / 2 + strict_floor(&(Rational::new(1.into(), 2.into()) + half_inv))
    }
}

impl Perversity {
    /// Checks that `values` covers exactly the singular strata of `x`.
    pub fn new(x: &StratifiedComplex, values: BTreeMap<String, i64>) -> Result<Self, StratError> {
        for s in x.strata() {
            if !values.contains_key(&s.label) {
                return Err(StratError::MissingStratum { label: s.label.clone() });
            }
        }
        if let Some(extra) = values.keys().find(|k| x.stratum_index(k).is_none()) {
            return Err(StratError::ExtraStratum { label: extra.clone() });
        }
        Ok(Self { values })
    }

    fn from_fn(x: &StratifiedComplex, f: impl Fn(usize) -> i64) -> Self {
        Self { values: x.strata().iter().map(|s| (s.label.clone(), f(s.codim))).collect() }
    }

    pub fn zero(x: &StratifiedComplex) -> Self {
        Self::from_fn(x, |_| 0)
    }

    /// `t(Y) = cod(Y) − 2`.
    pub fn top(x: &StratifiedComplex) -> Self {
        Self::from_fn(x, |c| c as i64 - 2)
    }

    /// `⌊(cod − 2)/2⌋`.
    pub fn lower_middle(x: &StratifiedComplex) -> Self {
        Self::from_fn(x, |c| (c as i64 - 2).div_euclid(2))
    }

    /// `⌊(cod − 1)/2⌋`.
    pub fn upper_middle(x: &StratifiedComplex) -> Self {
        Self::from_fn(x, |c| (c as i64 - 1).div_euclid(2))
    }

    /// `p_g` from positive weights `c_Y`, one per stratum.
    pub fn from_weights(x: &StratifiedComplex, weights: &[(String, Rational)]) -> Result<Self, StratError> {
        let mut values = BTreeMap::new();
        for s in x.strata() {
            let c = weights
                .iter()
                .find(|(l, _)| *l == s.label)
                .map(|(_, c)| c)
                .ok_or_else(|| StratError::MissingStratum { label: s.label.clone() })?;
            if !c.is_positive() || c.is_zero() {
                return Err(StratError::NonPositiveWeight { label: s.label.clone() });
            }
            values.insert(s.label.clone(), weight_perversity_value(s.codim - 1, c));
        }
        if let Some((extra, _)) = weights.iter().find(|(l, _)| x.stratum_index(l).is_none()) {
            return Err(StratError::ExtraStratum { label: extra.clone() });
        }
        Ok(Self { values })
    }

    /// `q = t − p`.
    pub fn dual(&self, x: &StratifiedComplex) -> Self {
        Self {
            values: x.strata().iter().map(|s| (s.label.clone(), s.codim as i64 - 2 - self.values[&s.label])).collect(),
        }
    }

    pub fn value(&self, label: &str) -> Option<i64> {
        self.values.get(label).copied()
    }

    pub fn values(&self) -> &BTreeMap<String, i64> {
        &self.values
    }

    pub fn compare(&self, other: &Perversity) -> PerversityOrder {
        let (mut le, mut ge) = (true, true);
        for (k, v) in &self.values {
            let w = other.values.get(k).copied().unwrap_or(*v);
            le &= *v <= w;
            ge &= *v >= w;
        }
        match (le, ge) {
            (true, true) => PerversityOrder::Equal,
            (true, false) => PerversityOrder::Less,
            (false, true) => PerversityOrder::Greater,
            (false, false) => PerversityOrder::Incomparable,
        }
    }

    pub fn le(&self, other: &Perversity) -> bool {
        matches!(self.compare(other), PerversityOrder::Equal | PerversityOrder::Less)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qq;

    #[test]
    fn bracket_is_strict() {
        assert_eq!(strict_floor(&q(1)), 0);
        assert_eq!(strict_floor(&qq(1, 2)), 0);
        assert_eq!(strict_floor(&qq(3, 2)), 1);
        assert_eq!(strict_floor(&q(2)), 1);
        assert_eq!(strict_floor(&qq(-1, 2)), -1);
    }

    #[test]
    fn weight_formula_branches() {
        assert_eq!(weight_perversity_value(0, &q(5)), 0);
        assert_eq!(weight_perversity_value(2, &q(1)), 1);
        assert_eq!(weight_perversity_value(1, &qq(1, 4)), 2);
        assert_eq!(weight_perversity_value(3, &qq(1, 2)), 2);
    }
}
