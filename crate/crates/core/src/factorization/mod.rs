//! Chain factorizations through stages of filtered presentations, and the
//! canonical-diagram checks around them.

mod analysis;
mod chain;
mod presentation;

pub use analysis::{
    inserter_canonical_analysis, verify_membership_criterion, AnalysisSummary, CanonicalAnalysis, Membership,
};
pub use chain::{
    equifier_factorize, inserter_factorize, verify_equifier_certificate, verify_inserter_certificate, CaseKind,
    CertificateRecord, FactorizationCertificate, LiftProblem,
};
pub use presentation::FilteredPresentation;
