//! Scenario harness for the transit-anon planners: JSON configs, parallel
//! runs, CSV output, rendering and scenario generation.

pub mod config;
pub mod gen;
pub mod render;
pub mod run;
