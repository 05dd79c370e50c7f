//! Exact computations for Temperley-Lieb algebras: diagrams, standard
//! (link-state) modules, their Gram forms and radicals, homomorphisms between
//! standard modules, non-split extensions, the infinite family, and the XXZ
//! spin-chain realisation.

pub mod diagrams;
pub mod homs;
pub mod error;
pub mod linalg;
pub mod linkstates;
pub mod modp;
pub mod projectives;
pub mod scalars;
pub mod spinchain;
pub mod suites;
pub mod tlinfinity;

pub use error::{Result, TlError};
pub use scalars::{QMode, Scalar};
