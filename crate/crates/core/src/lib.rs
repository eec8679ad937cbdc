//! Exact symbolic verification toolkit for q-Serre and Serre–Lusztig type
//! relations in quantum groups and quasi-split ıquantum groups.

pub mod cartan;
pub mod cli;
pub mod drinfeld;
pub mod exprdsl;
pub mod iqg;
pub mod qidentities;
pub mod qscalar;
pub mod report;
pub mod udot;

/// Options shared by every verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Worker threads used to evaluate independent cases (1 = sequential).
    pub jobs: usize,
    /// Evaluate a deliberately corrupted variant of the suite's defining formula.
    pub mutate: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { jobs: 1, mutate: false }
    }
}

impl SuiteOptions {
    pub fn mutated() -> Self {
        SuiteOptions { jobs: 1, mutate: true }
    }
}
