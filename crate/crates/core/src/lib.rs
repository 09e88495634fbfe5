pub mod analysis;
pub mod backlund;
pub mod cli;
pub mod exactfield;
pub mod latex;
pub mod system;
pub mod weyl;
