//! Laurent series over number fields, norm forms, Galois groups, tame
//! symbols and the `S_4` action on `K_4`.

pub mod galois;
pub mod k4;
pub mod laurent;
pub mod norm;
pub mod number_field;

pub use galois::{
    is_abelian_extension, quartic_galois_group, sn_certificate, symmetric_criteria_met,
    GaloisVerdict, QuarticGroup, Verdict,
};
pub use k4::{k4_s4_report, K4Report};
pub use laurent::{LaurentSeries, DEFAULT_TRUNCATION};
pub use norm::{norm_equation_certificate, tame_symbol, ResidueField, TameSymbolReport};
pub use number_field::{norm_form_eval, MPoly, NfElement, NormRing, NumberField};
