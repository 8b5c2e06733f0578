//! Executable finite topology: preorders and their Alexandroff spaces,
//! decomposition spaces, face posets of rational hyperplane arrangements,
//! hom-set stratifications of finite categories, and order-complex homology.

pub mod order;
pub mod topology;
pub mod decomposition;
pub mod arrangement;
pub mod linalg;
pub mod homset;
pub mod homology;
pub mod random;
pub mod io;
pub mod report;
pub mod suites;
pub mod commands;
pub mod corpus;
