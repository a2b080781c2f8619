//! Linear abelian extensions `F(P, Q)` of finite abelian groups by finite
//! loops: construction, verification of inverse properties, and the
//! cardinality condition for strongly linear inverse-property extensions.

pub mod abelian;
pub mod cardinality;
pub mod cli;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod extension;
pub mod io;
pub mod loops;
pub mod search;
pub mod verify;

pub use abelian::{AbelianGroup, Automorphism, AutomorphismGroup};
pub use cardinality::{enumerate_feasible, feasible_cardinality, CardinalityCertificate};
pub use constructions::{
    construct_ip_cocycle, construct_lip_cocycle, construct_pq, construct_rip_cocycle, gamma_orbit,
    sigma_set, ChoiceSource, Chooser, GammaElement, OrbitDecomposition, OrbitMode, ScriptedChoices,
    SigmaSet,
};
pub use error::{Error, Result};
pub use extension::{ExtensionLoop, InverseCoincidenceData, LoopCocycle};
pub use loops::{analyze_properties, FiniteLoop, LoopPropertyReport};
pub use verify::{verify_cocycle, verify_loop, Property, VerificationReport};
