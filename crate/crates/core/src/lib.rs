//! Finite p-group engine with a Beauville-structure toolkit.
//!
//! The crate is organized in four layers:
//!
//! 1. **Presentation and collection** ([`presentation`], [`collect`],
//!    [`word`]): power-commutator presentations with per-generator prime
//!    relative orders, and collection from the left into normal forms.
//! 2. **Group tables** ([`group`], [`fingerprint`], [`quotient`],
//!    [`product`]): dense multiplication tables with conjugacy classes,
//!    Frattini coordinates, isomorphism fingerprints, central quotients and
//!    direct products.
//! 3. **Beauville machinery** ([`sigma`], [`verify`], [`search`],
//!    [`census`]): Σ-sets with two independent computation routes,
//!    structure verification, complete generating-pair search,
//!    non-existence certification, and family censuses.
//! 4. **Catalog** ([`catalog`]): named presentation families with
//!    parameters, plus closed-form classification counts.

pub mod catalog;
pub mod census;
pub mod collect;
pub mod config;
pub mod error;
pub mod fingerprint;
pub mod group;
pub mod numtheory;
pub mod presentation;
pub mod product;
pub mod quotient;
pub mod search;
pub mod sigma;
pub mod verdict;
pub mod verify;
pub mod word;

pub use error::{AnalysisError, BeauvilleError, CatalogError, PcError};
pub use fingerprint::Fingerprint;
pub use group::{Element, Group};
pub use presentation::{PcPresentation, Rule};
pub use verdict::{Certificate, Pair, Reason, Structure, Verdict};
