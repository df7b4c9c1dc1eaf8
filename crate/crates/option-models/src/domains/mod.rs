//! Benchmark domains: Tower of Hanoi and the Nine Rooms gridworld.

pub mod graph;
mod hanoi;
mod nine_rooms;

pub use hanoi::{
    hanoi_goal_index, hanoi_mdp, hanoi_start_index, hanoi_subgoals, HanoiState,
    DEFAULT_HANOI_SUBGOAL_K, HANOI_MAX_DISCS, HANOI_MOVES,
};
pub use nine_rooms::{
    doorways, move_open, nine_rooms_mdp, nine_rooms_mdp_at, nine_rooms_subgoals,
    nine_rooms_width, render_maze, DoorwaySpec, GoalCorner, GridState,
    DEFAULT_NINE_ROOMS_SUBGOAL_K, NINE_ROOMS_GAMMA, NINE_ROOMS_MAX_LEVEL,
};
