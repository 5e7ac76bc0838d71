//! Cop and robber policies and the game engine that runs them.

pub mod engine;
pub mod moves;
pub mod nine_cop;
pub mod path_control;
pub mod patrol;
pub mod robbers;
pub mod solver_cop;
pub mod two_cop;

pub use engine::{run_game, verify_trace, CopPolicy, GameError, Outcome, Phase, PolicyError, RobberPolicy, Trace, TraceEntry, View};
pub use moves::{classify_displacement, classify_move, potential_audit, MoveType, MoveTypes, PotentialReport};
pub use nine_cop::{NineCop, TerritorySnapshot};
pub use path_control::{PathControlCop, PathController};
pub use patrol::{audit_crossings, crosses_path, CrossingStats, PatrolCops, PatrolTriple};
pub use robbers::{Greedy, RandomWalk, SolverRobber};
pub use solver_cop::SolverCop;
pub use two_cop::{Response, Stage, StageEvent, StrategyConstants, TwoCop};
