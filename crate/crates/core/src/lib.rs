//! Exact and numerical certificates for the sharp constant of the
//! embedding of `W^{N,1}(R^N)` into `L^inf(R^N)`.
//!
//! The crate computes the constant `l_N^m` governing `|grad^m log|x||`
//! by two independent routes (exact symbolic tensor calculus and a closed
//! combinatorial formula), certifies symbolically that `log|x|` is
//! annihilated away from the origin by the associated order-2N operator,
//! and verifies numerically the weak fundamental-solution identity, the
//! embedding inequality with its best constant `K_N`, and the sharpness
//! of that constant along a logarithmic extremizing family.

pub mod chain_rule;
pub mod constants;
pub mod cutoff;
pub mod jet;
pub mod profile;
pub mod quadrature;
pub mod multi_index;
pub mod orthogonal;
pub mod poly;
pub mod radial;
pub mod verify;
pub mod rational;
pub mod tensor;
