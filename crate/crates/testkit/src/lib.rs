//! Brute-force oracles and random input generators used by the test suites.
//!
//! Everything here is deliberately naive: straight enumeration with no
//! shortcuts, kept independent of the engine code paths it checks.

pub mod gen;
pub mod oracle;
