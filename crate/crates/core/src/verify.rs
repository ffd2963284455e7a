//! Verification harnesses (property and oracle suites).
