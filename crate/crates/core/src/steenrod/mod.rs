//! Monomial bases and comultiplication for the dual motivic Steenrod
//! algebra at an odd prime, over the ground rings `F_l[tau]` (base C) and
//! `F_l[theta]` (base R).
//!
//! At an odd prime the dual algebra A is the tensor product of a polynomial
//! part P on the xi_i and an exterior part E on the tau_i over the ground
//! ring; all three are supported, with exact bidegree bookkeeping and
//! homological sign conventions (the ground generator tau sits in bidegree
//! (0,-1), theta in (0,-2)).

mod basis;
mod coproduct;
mod ground;
mod monomial;
mod tensor;

pub use basis::{AlgebraKind, DualAlgebra, EnumBounds};
pub use coproduct::cotor_e_coaction;
pub use ground::{BaseField, GroundRing};
pub use monomial::{Monomial, TauSet};
pub use tensor::{TensorExpression, TriTensor};
