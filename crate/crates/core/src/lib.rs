//! Equivariant Lefschetz invariants of cellular self-maps of finite G-CW
//! complexes, for finite groups `G`, in exact integer arithmetic.
//!
//! A complex is given by its reduced cellular chain data over the orbit
//! category: typed cells and differential entries that are integer
//! combinations of G-maps between orbits. From a cellular self-map the crate
//! computes the equivariant Lefschetz number in the tom Dieck group, both
//! from alternating Hattori-Stallings traces and from the quotient maps on
//! orbit-type strata. The components `ℓ_H` in `ℤCo(W(H))` refine it.

pub mod complexes;
pub mod group;
pub mod invariants;
pub mod inventory;
pub mod io;
pub mod laws;
pub mod orbit;
pub mod par;
pub mod rings;
pub mod traces;
