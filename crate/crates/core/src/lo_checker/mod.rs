//! Non-left-orderability checks: sign-deduction certificates, finite order
//! by coset enumeration, torsion, and a bounded positive-cone search.

mod certificate;
mod cone;
mod coset;

use serde::{Deserialize, Serialize};

use crate::presentation::AbelianInvariants;

pub use certificate::{
    certify_cycle_non_lo, mixed_sign_vertices, CertificateError, Contradiction, Fact, Hypothesis,
    Justification, NonLOCertificate, Sign,
};
pub use cone::{
    positive_cone_search, ConeResult, FreeGroupOracle, PositiveConeWitness, SignCase, WordOracle,
};
pub use coset::{todd_coxeter, CosetTable, Enumeration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "NonLO_Certified")]
    NonLoCertified,
    #[serde(rename = "NonLO_FiniteGroup")]
    NonLoFiniteGroup,
    #[serde(rename = "NonLO_Torsion")]
    NonLoTorsion,
    #[serde(rename = "NonLO_CitedTheorem")]
    NonLoCitedTheorem,
    Inconclusive,
}

impl Verdict {
    pub fn is_non_lo(self) -> bool {
        self != Verdict::Inconclusive
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NonLoCertified => "NonLO_Certified",
            Verdict::NonLoFiniteGroup => "NonLO_FiniteGroup",
            Verdict::NonLoTorsion => "NonLO_Torsion",
            Verdict::NonLoCitedTheorem => "NonLO_CitedTheorem",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// What is known about the group beyond its abelianization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnownStructure {
    Unknown,
    /// The group is cyclic (lens space covers).
    Cyclic,
    /// A free product of cyclic groups (connected sums of lens spaces).
    FreeProductOfCyclics,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionVerdict {
    pub verdict: Verdict,
    pub reason: String,
}

/// Left-orderable groups are torsion-free and nontrivial. Abelian torsion
/// only lifts to the group when its structure is known.
pub fn torsion_non_lo(inv: &AbelianInvariants, known: KnownStructure) -> TorsionVerdict {
    let v = |verdict, reason: String| TorsionVerdict { verdict, reason };
    match known {
        KnownStructure::Unknown => v(Verdict::Inconclusive, "group structure unknown".into()),
        _ if inv.free_rank == 0 && inv.torsion.is_empty() => {
            v(Verdict::NonLoTorsion, "trivial group".into())
        }
        KnownStructure::Cyclic if !inv.torsion.is_empty() => v(
            Verdict::NonLoTorsion,
            format!("finite cyclic of order {}", inv.torsion[0]),
        ),
        KnownStructure::FreeProductOfCyclics if !inv.torsion.is_empty() => v(
            Verdict::NonLoTorsion,
            format!(
                "free product with a finite cyclic factor (abelian torsion {:?})",
                inv.torsion
            ),
        ),
        _ => v(Verdict::Inconclusive, "torsion-free abelianization".into()),
    }
}
