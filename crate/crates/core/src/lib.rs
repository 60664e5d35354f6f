//! Exact polynomial algebra and the local geometry of vertical singular germs.

pub mod carousel;
pub mod germ;
pub mod graph;
pub mod metrics;
pub mod pipeline;
pub mod poly;
pub mod puiseux;
pub mod report;
