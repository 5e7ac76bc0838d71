//! Ground-truth decision procedures: pitfalls and dismantling, ordered
//! dismantling towards a center, and the exact k-cop game.

pub mod center;
pub mod dismantle;
pub mod game;

pub use center::{center_order_dismantle, center_pitfall_check, nb_set, CenterCheck};
pub use dismantle::{dismantle, find_pitfall, verify_dismantling, DismantleResult};
pub use game::{
    cop_number, cop_number_with_budget, solve_game, solve_game_with_budget, CopNumber, GameState,
    Mover, SolveError, SolveTable, DEFAULT_STATE_BUDGET,
};
