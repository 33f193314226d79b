pub mod algebra;
pub mod cli;
pub mod exact_core;
pub mod fundamental_r;
pub mod fusion;
pub mod representations;
pub mod residual;
pub mod spinorial_r;
pub mod yangian_l;
