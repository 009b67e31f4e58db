use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::perm::PointSet;

/// Exact rational used for every formula value.
pub type Rational = BigRational;

pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rational {
    Rational::new(numer.into(), denom.into())
}

pub fn int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Le,
    Ge,
    Subset,
}

impl Relation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Subset => "subset",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An observed integer compared against an exact formula value.
///
/// For [`Relation::Subset`] the observed value is the size of the smaller
/// set, the formula is the size of the larger one, and `pass` records the
/// actual containment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountCheck {
    pub label: String,
    pub observed: BigInt,
    pub formula: Rational,
    pub relation: Relation,
    pub pass: bool,
}

impl CountCheck {
    pub fn compare(
        label: impl Into<String>,
        observed: impl Into<BigInt>,
        relation: Relation,
        formula: Rational,
    ) -> Self {
        let observed = observed.into();
        let lhs = Rational::from_integer(observed.clone());
        let pass = match relation {
            Relation::Eq => lhs == formula,
            Relation::Le => lhs <= formula,
            Relation::Ge => lhs >= formula,
            Relation::Subset => panic!("use CountCheck::subset for containment"),
        };
        CountCheck {
            label: label.into(),
            observed,
            formula,
            relation,
            pass,
        }
    }

    pub fn eq(label: impl Into<String>, observed: impl Into<BigInt>, formula: Rational) -> Self {
        Self::compare(label, observed, Relation::Eq, formula)
    }

    pub fn le(label: impl Into<String>, observed: impl Into<BigInt>, bound: Rational) -> Self {
        Self::compare(label, observed, Relation::Le, bound)
    }

    pub fn ge(label: impl Into<String>, observed: impl Into<BigInt>, bound: Rational) -> Self {
        Self::compare(label, observed, Relation::Ge, bound)
    }

    pub fn subset(label: impl Into<String>, lhs: &PointSet, rhs: &PointSet) -> Self {
        Self::containment(label, lhs.len(), rhs.len(), lhs.is_subset(rhs))
    }

    /// Containment decided by the caller on sets other than point sets.
    pub fn containment(
        label: impl Into<String>,
        lhs_size: usize,
        rhs_size: usize,
        contained: bool,
    ) -> Self {
        CountCheck {
            label: label.into(),
            observed: BigInt::from(lhs_size),
            formula: int(rhs_size),
            relation: Relation::Subset,
            pass: contained,
        }
    }
}

impl fmt::Display for CountCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} {} {}",
            if self.pass { "pass" } else { "FAIL" },
            self.label,
            self.observed,
            self.relation,
            self.formula
        )
    }
}

pub fn all_pass(checks: &[CountCheck]) -> bool {
    checks.iter().all(|c| c.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(CountCheck::eq("a", 2, ratio(6, 3)).pass);
        assert!(!CountCheck::eq("a", 2, ratio(5, 2)).pass);
        assert!(CountCheck::le("b", 11, ratio(166, 5)).pass);
        assert!(!CountCheck::ge("c", 3, ratio(7, 2)).pass);
        let s = PointSet::from_points(4, [1]).unwrap();
        let t = PointSet::from_points(4, [1, 2]).unwrap();
        let c = CountCheck::subset("d", &s, &t);
        assert!(c.pass);
        assert_eq!(c.observed, BigInt::from(1));
        assert!(!CountCheck::subset("e", &t, &s).pass);
        assert_eq!(ratio(6, 4).to_string(), "3/2");
    }
}
