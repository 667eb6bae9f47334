//! Multiobjective problem semantics: instances, the Pareto order, solution
//! classes, scalarization and structural validation.

pub mod dominance;
pub mod instance;
pub mod io;
pub mod pareto;
pub mod supported;
pub mod validate;

pub use dominance::{dominance, Dominance};
pub use instance::{Linearization, McoInstance, ObjectiveVector};
pub use pareto::{
    equalizing_weights, equivalent, pareto_front, pareto_front_of, scalarize, trivial_solutions,
    weak_equivalence_witness,
};
pub use supported::{classify, supported_solutions, SolutionClassification, SupportMethod};
pub use validate::{
    validate, Collision, CollisionCheck, NormalCheck, NormalWitness, ValidationReport,
    WellFormedCheck,
};
