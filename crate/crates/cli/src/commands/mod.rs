pub mod check;
pub mod export;
pub mod figures;
pub mod run;
pub mod sweep;
