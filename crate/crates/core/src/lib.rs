pub mod betti;
pub mod bundle;
pub mod catalog;
pub mod chow;
pub mod cli;
pub mod error;
pub mod hn;
pub mod input;
pub mod quiver;
pub mod sod;
pub mod teleman;
