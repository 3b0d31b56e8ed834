//! Arrow polynomial of oriented virtual knots and links.
//!
//! A diagram is a set of four-slot sites (classical or virtual) joined by
//! directed edges. [`compute`] runs the state sum and derives the K-degree
//! set together with lower bounds on virtual crossing number and genus.

pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod codec;
pub mod diagram;
pub mod moves;
pub mod ring;
pub mod state;

pub use analysis::KDegreeProfile;
pub use codec::{parse_gauss, parse_pd, parse_polynomial, render_polynomial, CodecError, Report};
pub use diagram::{build_diagram, Diagram, DiagramError};
pub use ring::{normalize, substitute_flat, ArrowMonomial, ArrowPolynomial};
pub use state::{arrow_bracket, StateError, DEFAULT_MAX_CROSSINGS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub writhe: i32,
    pub unnormalized: ArrowPolynomial,
    pub normalized: ArrowPolynomial,
    pub profile: KDegreeProfile,
    pub state_count: u64,
}

pub fn compute(d: &Diagram, max_crossings: usize) -> Result<Invariants, StateError> {
    let sum = state::arrow_bracket_with(d, max_crossings)?;
    let writhe = d.writhe();
    let normalized = normalize(&sum.polynomial, writhe);
    Ok(Invariants {
        writhe,
        profile: KDegreeProfile::of(&normalized),
        unnormalized: sum.polynomial,
        normalized,
        state_count: sum.state_count,
    })
}
