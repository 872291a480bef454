pub mod circuit;
pub mod classify;
pub mod mu;
pub mod report;
pub mod state;
