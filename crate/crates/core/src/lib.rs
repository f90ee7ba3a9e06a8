//! Exact decision procedure for triples of geometric permutations in
//! three dimensions.
//!
//! A triple of permutations is a geometric permutation triple when some
//! family of pairwise disjoint convex sets has three line transversals
//! meeting the sets in those orders. Up to reversals, such a family can be
//! taken to be triangles with one vertex on each of three fixed skew lines,
//! and the question becomes a sign condition on the `3n` vertex
//! coordinates. The [`decider`] answers it by a search over orders of
//! lifted coordinates and returns exact rational certificates, which the
//! [`geometry`] module checks independently.

pub mod decider;
pub mod geometry;
pub mod harness;
pub mod lifting;
pub mod model;
pub mod orientations;
