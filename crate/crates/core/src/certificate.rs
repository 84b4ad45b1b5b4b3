//! Serializable proof objects. Each condition carries a machine-checkable
//! premise; `verify` rechecks every premise and regenerates the whole
//! certificate from its subject for an exact comparison.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field;
use crate::local::{self, DiagonalForm};
use crate::poly::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    /// No nonzero solution over extensions of `Q_p` of a given ramification.
    StaircaseLocal,
    /// No points over `Q_p^ab`, hence none over `Q^ab`.
    NoAbelianPoints,
    /// `N(X) = t Z^d` has no points over `Q((t))^ab`.
    NormEquation,
}

/// A checkable numeric fact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Premise {
    Valuations {
        prime: u64,
        #[serde(with = "crate::json::big_ints")]
        coefficients: Vec<BigInt>,
        valuations: Vec<u32>,
    },
    FullStaircase {
        degree: u32,
        valuations: Vec<u32>,
    },
    DistinctResidues {
        degree: u32,
        valuations: Vec<u32>,
        ramification: u64,
    },
    RamificationCoprime {
        degree: u64,
        prime: u64,
    },
    CycleTypes {
        polynomial: IntPoly,
        evidence: Vec<(u64, Vec<u32>)>,
    },
    SymmetricCriteria {
        degree: u32,
        cycle_types: Vec<Vec<u32>>,
    },
    NotDivisible {
        divisor: i64,
        value: i64,
    },
}

impl Premise {
    pub fn check(&self) -> Result<bool> {
        Ok(match self {
            Premise::Valuations {
                prime,
                coefficients,
                valuations,
            } => {
                let got: Result<Vec<u32>> = coefficients
                    .iter()
                    .map(|c| arith::valuation(c, *prime))
                    .collect();
                &got? == valuations
            }
            Premise::FullStaircase { degree, valuations } => {
                local::is_full_staircase(valuations, *degree)
            }
            Premise::DistinctResidues {
                degree,
                valuations,
                ramification,
            } => local::distinct_residues(valuations, *degree, *ramification),
            Premise::RamificationCoprime { degree, prime } => {
                arith::is_prime_u64(*prime) && arith::abelian_ramification_obstruction(*degree, *prime)
            }
            Premise::CycleTypes {
                polynomial,
                evidence,
            } => {
                let disc = polynomial.discriminant()?;
                for (p, parts) in evidence {
                    if (&disc % BigInt::from(*p)) == BigInt::from(0) {
                        return Ok(false);
                    }
                    if field::cycle_type(polynomial, *p)?.0 != *parts {
                        return Ok(false);
                    }
                }
                true
            }
            Premise::SymmetricCriteria {
                degree,
                cycle_types,
            } => crate::appendix::symmetric_criteria_met(*degree, cycle_types),
            Premise::NotDivisible { divisor, value } => *divisor != 0 && value % divisor != 0,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub statement: String,
    pub verified: bool,
    pub premise: Premise,
}

impl Condition {
    /// Builds a condition, recording whether its premise checks out now.
    pub fn new(name: &str, statement: String, premise: Premise) -> Self {
        let verified = premise.check().unwrap_or(false);
        Condition {
            name: name.to_string(),
            statement,
            verified,
            premise,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<DiagonalForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<IntPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ramification: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs_valuation: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan_bound: Option<u64>,
    pub conditions: Vec<Condition>,
    pub lemma_chain: Vec<String>,
}

impl Certificate {
    pub(crate) fn empty(kind: CertificateKind) -> Self {
        Certificate {
            kind,
            form: None,
            polynomial: None,
            prime: None,
            ramification: None,
            profile: None,
            rhs_valuation: None,
            scan_bound: None,
            conditions: Vec::new(),
            lemma_chain: Vec::new(),
        }
    }

    fn missing(&self, what: &str) -> Error {
        Error::Verification(format!("{:?} certificate lacks {what}", self.kind))
    }

    fn regenerate(&self) -> Result<Option<Certificate>> {
        match self.kind {
            CertificateKind::NoAbelianPoints => {
                let form = self.form.as_ref().ok_or_else(|| self.missing("form"))?;
                let p = self.prime.ok_or_else(|| self.missing("prime"))?;
                local::certify_no_abelian_points(form, p)
            }
            CertificateKind::StaircaseLocal => {
                let form = self.form.as_ref().ok_or_else(|| self.missing("form"))?;
                let p = self.prime.ok_or_else(|| self.missing("prime"))?;
                let e = self.ramification.ok_or_else(|| self.missing("ramification"))?;
                local::certify_staircase_local(form, p, e)
            }
            CertificateKind::NormEquation => {
                let f = self.polynomial.as_ref().ok_or_else(|| self.missing("polynomial"))?;
                let m = self.rhs_valuation.ok_or_else(|| self.missing("rhs_valuation"))?;
                let bound = self.scan_bound.ok_or_else(|| self.missing("scan_bound"))?;
                crate::appendix::norm_equation_certificate(f, m, bound)
            }
        }
    }

    /// Rechecks every premise, then regenerates the certificate from its
    /// subject and requires an exact match.
    pub fn verify(&self) -> Result<()> {
        for c in &self.conditions {
            if !c.verified {
                return Err(Error::Verification(format!("condition {} is not verified", c.name)));
            }
            if !c.premise.check()? {
                return Err(Error::Verification(format!("premise of {} fails", c.name)));
            }
        }
        match self.regenerate()? {
            Some(fresh) if &fresh == self => Ok(()),
            Some(_) => Err(Error::Verification(
                "certificate differs from the regenerated one".into(),
            )),
            None => Err(Error::Verification(
                "the method no longer issues this certificate".into(),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
