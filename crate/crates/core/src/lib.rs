//! Exact computations with measuring coalgebras and comodules, global
//! categories of modules and comodules, fibred adjunctions over finite
//! categories, and Hopf-module structures.

pub mod algcore;
pub mod exactlin;
pub mod fibcat;
pub mod hopf;
pub mod measuring;
pub mod modcomod;
