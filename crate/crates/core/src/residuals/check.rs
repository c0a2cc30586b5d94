use super::coefficients::{build_coefficients_with, ResidualOptions};
use super::evaluate::{residual, Mode};
use super::kind::{HelixClass, OdeKind};
use crate::alt::AltField;
use crate::classify::{classify, ClassificationReport, Verdict};
use crate::error::{Error, Result};
use crate::frenet::FrenetField;

/// Settings for [`characterization_check_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    /// Normalized residual below which a reduced equation counts as satisfied.
    pub residual_tol: f64,
    /// Constancy tolerance handed to the classifier.
    pub classify_tol: f64,
    pub mode: Mode,
    pub floors: ResidualOptions,
}

impl CheckOptions {
    /// Both tolerances set to `tol`, exact substitution, default floors.
    pub fn new(tol: f64) -> Self {
        Self {
            residual_tol: tol,
            classify_tol: tol,
            mode: Mode::ExactSubstitution,
            floors: ResidualOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KindOutcome {
    /// Coefficients are singular on every sample.
    Skipped { reason: String },
    Checked {
        max_raw: f64,
        max_normalized: f64,
        valid_samples: usize,
        /// Normalized residual within tolerance.
        small: bool,
        verdict: Verdict,
        /// `small` matches whether the verdict holds.
        agrees: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct KindCheck {
    pub kind: OdeKind,
    pub outcome: KindOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterizationReport {
    pub options: CheckOptions,
    pub classification: ClassificationReport,
    pub kinds: Vec<KindCheck>,
}

impl CharacterizationReport {
    /// Every checked kind agrees with its verdict.
    pub fn all_agree(&self) -> bool {
        self.kinds.iter().all(|k| match k.outcome {
            KindOutcome::Checked { agrees, .. } => agrees,
            KindOutcome::Skipped { .. } => true,
        })
    }

    pub fn get(&self, kind: OdeKind) -> Option<&KindOutcome> {
        self.kinds.iter().find(|k| k.kind == kind).map(|k| &k.outcome)
    }
}

/// Evaluates every reduced equation and compares its smallness with the
/// classifier verdict it characterizes.
pub fn characterization_check(field: &FrenetField, alt: &AltField, tol: f64) -> Result<CharacterizationReport> {
    characterization_check_with(field, alt, &CheckOptions::new(tol))
}

pub fn characterization_check_with(
    field: &FrenetField,
    alt: &AltField,
    opts: &CheckOptions,
) -> Result<CharacterizationReport> {
    if !(opts.residual_tol > 0.0) {
        return Err(Error::InvalidTolerance(opts.residual_tol));
    }
    let classification = classify(field, alt, opts.classify_tol)?;
    let mut kinds = Vec::new();
    for kind in OdeKind::ALL.into_iter().filter(|k| k.is_reduced()) {
        let verdict = match kind.characterizes() {
            Some(HelixClass::Xi1) => classification.xi1_helix.verdict,
            _ => classification.slant_helix.verdict,
        };
        let outcome = match build_coefficients_with(kind, field, alt, &opts.floors) {
            Err(Error::AllSamplesDegenerate { .. }) => KindOutcome::Skipped {
                reason: "coefficients singular on every sample".to_string(),
            },
            Err(e) => return Err(e),
            Ok(coeffs) => {
                let r = residual(kind, &coeffs, kind.target(), opts.mode, field, alt)?;
                let small = r.max_normalized() <= opts.residual_tol;
                KindOutcome::Checked {
                    max_raw: r.max(),
                    max_normalized: r.max_normalized(),
                    valid_samples: r.valid_count(),
                    small,
                    verdict,
                    agrees: small == verdict.holds(),
                }
            }
        };
        kinds.push(KindCheck { kind, outcome });
    }
    Ok(CharacterizationReport {
        options: *opts,
        classification,
        kinds,
    })
}
