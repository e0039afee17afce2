//! Matroids, realization-space presentations and their analysis.

pub mod catalog;
pub mod config;
pub mod error;
pub mod fixtures;
pub mod matroid;
pub mod planner;
pub mod presentation;
pub mod reduction;
pub mod smoothness;
pub mod subset;
pub mod tropical;

pub use config::Config;
pub use error::{CoreError, Result};
pub use matroid::{linear_matroid, Flat, Matroid, MatroidJson, StructureFlags};
pub use subset::{OrderTag, Subset, SubsetEnumeration};
