//! Command-line front end for `carousel-core`: JSON scene documents, SVG
//! rendering and campaign reports.

pub mod annotate;
pub mod cli;
pub mod document;
pub mod render;
