//! Finitely presented groups: words, edge-path presentations, induced
//! homomorphisms, a budgeted membership oracle, coset enumeration, and
//! covering complexes.

pub mod covering;
pub mod membership;
pub mod presentation;
pub mod snf;
pub mod tietze;
pub mod todd_coxeter;
pub mod word;

pub use membership::{membership, Budget, Certificate, MembershipVerdict, NormalSubgroup, Verdict};
pub use presentation::{edge_path_group, induced_hom, EdgePathGroup, GroupPresentation, Homomorphism};
pub use todd_coxeter::{todd_coxeter, CosetTable};
pub use word::Word;
