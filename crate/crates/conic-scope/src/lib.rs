//! conic-scope: feasibility-type classification of semidefinite programs.
//!
//! A linear matrix inequality A0 + x1 A1 + ... + xn An >= 0 cuts the cone
//! of positive semidefinite matrices with an affine space, and the
//! intersection comes in four shades: strongly or weakly feasible, weakly
//! or strongly infeasible. The toolkit here decides the shade by
//! homogenizing the problem into the product cone Sym^d x R_+ and running
//! facial reduction on the result:
//!
//! - the homogeneous intersection is trivial exactly for the robustly
//!   ("stably") infeasible programs, which admit one-step certificates
//!   with interior dual functionals and, over rational data, exact
//!   rational certificates;
//! - otherwise the reduction walks down the face lattice and either finds
//!   a dehomogenizable point (feasible, with a witness) or lands on a face
//!   at infinity, producing an iterative infeasibility certificate that a
//!   polynomial-time verifier checks from kernels alone;
//! - an independent route decides plain feasibility through a lifted LMI
//!   whose solution cone collapses to a ray exactly in the infeasible
//!   case, and the two verdicts are cross-checked.
//!
//! Modules follow the pipeline: [`symmat`] (dense symmetric algebra, float
//! and exact rational), [`model`] (pencils, implicit form, parsing),
//! [`homogenize`] (liftings and hull representations), [`oracle`] (the
//! interior-point engine, separation, exact LP Farkas), [`facial`]
//! (reduction and classification), [`certify`] (verification,
//! rationalization, perturbation probe), [`corpus`] (reference instances).

pub mod cone;
pub mod certify;
pub mod corpus;
pub mod facial;
pub mod homogenize;
pub(crate) mod linalg;
pub mod model;
pub mod oracle;
pub mod report;
pub mod symmat;

pub use facial::{classify, ClassifyConfig, FeasibilityReport, FeasibilityType};
pub use model::{parse_problem, InputFormat, Parsed, Pencil};
