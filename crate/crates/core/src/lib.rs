//! Generation, solution and vetting of the polynomial varieties whose
//! suitable integer points are standard integral table algebras with
//! integral multiplicities.

pub mod exactpoly;
pub mod feasibility;
pub mod solver;
pub mod spectra;
pub mod structcheck;
pub mod varietygen;
pub mod workbench;
