//! Exact computations for affine toric varieties and their root subgroups.
//!
//! The crate works entirely over arbitrary-precision integers and rationals:
//!
//! * [`lattice`]: vectors in the dual lattices `M` and `N`, the pairing, small
//!   integer matrices.
//! * [`cone`]: strongly convex rational polyhedral cones and their duals.
//! * [`roots`]: Demazure roots, enumeration and grouping by distinguished ray.
//! * [`lnd`]: the semigroup algebra `K[σ∨ ∩ M]`, homogeneous locally nilpotent
//!   derivations and the additive-group actions they exponentiate to.
//! * [`cyclic_quotient`]: the toric surfaces `X_{d,e} = A² / G_{d,e}`.
//! * [`identify`]: kernel-order fingerprints and recovery of a cone from its
//!   roots.
//! * [`torsion`]: finite-order tests in `GL_n(Z)` and monomial automorphisms.
//!
//! Box scans and sweeps run on rayon when the `parallel` feature is enabled
//! (the default); see [`Strategy`].

pub mod cone;
pub mod cyclic_quotient;
mod error;
mod exec;
pub mod identify;
pub mod lattice;
mod linalg;
pub mod lnd;
pub mod roots;
mod serde_int;
pub mod torsion;

pub use cone::{dual_contains, dual_rays_2d, hilbert_basis_2d, make_cone, Cone};
pub use cyclic_quotient::{
    canonical_form, eprime_a, invariant_member, iso_test, monoid_matches_cone, QuotientWitness,
    SurfaceDE,
};
pub use error::{Error, Result};
pub use exec::Strategy;
pub use identify::{
    fingerprint, kernel_order, reconstruct_cone, reconstruct_round_trip, recover_de, Fingerprint,
};
pub use lattice::{det2, pairing, primitive, IntMatrix, LatticeTag, LatticeVector};
pub use lnd::{
    commutes, delta_apply, exp_lnd, nilpotency_index, poly_mul, torus_act, Derivation, LaurentPoly,
    TorusPoint,
};
pub use roots::{enumerate_roots, group_by_ray, is_root, roots_of_xde, Root, RootFamilies};
pub use torsion::{finite_order, is_algebraic_monomial, order_mod_p, MonomialAut};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
