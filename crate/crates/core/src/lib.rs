pub mod aut;
pub mod catalog;
pub mod census;
pub mod error;
pub mod formulas;
pub mod gamma;
pub mod group;
pub mod modp;
pub mod report;
