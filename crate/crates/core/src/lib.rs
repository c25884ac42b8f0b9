//! Exact computation with Lie superalgebras, their enveloping algebras, the
//! torus smash product Hopf superalgebra, and radial parts of Casimir operators.


pub mod complex;
pub mod error;
pub mod json;
pub mod laurent;
pub mod lie;
pub mod pbw;
pub mod polynomial;
pub mod radial;

pub mod sampling;
pub mod scalar;
pub mod smash;
pub mod supermatrix;
pub mod torus;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use lie::{build_gl, AlgebraDefinition, GlAlgebra, LieSuperalgebra, Parity, QuadraticForm, RootSystem};
pub use pbw::{EnvelopingAlgebra, PbwElement, PbwMonomial};
pub use polynomial::Polynomial;
pub use scalar::GaussianRational;
pub use smash::{SmashAlgebra, SmashElement, TorusElement};
pub use supermatrix::{Matrix, SuperMatrix};
pub use torus::TorusRational;
