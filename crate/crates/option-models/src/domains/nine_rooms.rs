//! The hierarchical Nine Rooms gridworld.
//!
//! A level-1 instance is an open 3x3 grid. A level-N instance arranges nine
//! level-(N-1) instances in a 3x3 pattern; neighbouring instances are
//! separated by walls with a centered doorway of width 3^(N-2) (the middle
//! third of the shared wall). Walls live on cell edges, so the grid always
//! has exactly 9^N cells. A single corner cell is the goal: it pays reward
//! 1 for the action taken there and then exits.

use crate::algebra::{TransRow, ValueModel};
use crate::error::{Error, Result};
use crate::mdp::{Mdp, MdpAction, SubgoalSpec};

/// Default proportionality constant for doorway subgoal values.
pub const DEFAULT_NINE_ROOMS_SUBGOAL_K: f64 = 1e3;

pub const NINE_ROOMS_MAX_LEVEL: usize = 4;
pub const NINE_ROOMS_GAMMA: f64 = 0.9;

/// Movement actions in declaration order: north, east, south, west.
pub const GRID_MOVES: [(i32, i32); 4] = [(0, -1), (1, 0), (0, 1), (-1, 0)];
pub const GRID_MOVE_IDS: [&str; 4] = ["N", "E", "S", "W"];

/// A cell in the level-N grid; `x` grows eastward, `y` southward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridState {
    pub x: u32,
    pub y: u32,
}

impl GridState {
    pub fn index(&self, width: usize) -> usize {
        self.y as usize * width + self.x as usize
    }
}

/// Which corner holds the goal cell. The benchmark uses the north-west
/// corner; the others are exposed for exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GoalCorner {
    #[default]
    NorthWest,
    NorthEast,
    SouthWest,
    SouthEast,
}

impl GoalCorner {
    pub fn cell(&self, width: usize) -> GridState {
        let last = (width - 1) as u32;
        match self {
            GoalCorner::NorthWest => GridState { x: 0, y: 0 },
            GoalCorner::NorthEast => GridState { x: last, y: 0 },
            GoalCorner::SouthWest => GridState { x: 0, y: last },
            GoalCorner::SouthEast => GridState { x: last, y: last },
        }
    }
}

pub fn nine_rooms_width(level: usize) -> usize {
    3usize.pow(level as u32)
}

fn three_adic_valuation(mut v: usize) -> u32 {
    let mut out = 0;
    while v % 3 == 0 {
        v /= 3;
        out += 1;
    }
    out
}

/// Whether the edge crossing grid line `line` (between coordinates
/// `line - 1` and `line`) at cross-coordinate `cross` is open.
///
/// Lines not divisible by 3 sit inside a 3x3 room and carry no wall. A line
/// with 3-adic valuation `v >= 1` is a level-(v+1) wall; its doorway is the
/// middle third of each 3^v-aligned segment.
fn edge_open(line: usize, cross: usize) -> bool {
    let v = three_adic_valuation(line);
    if v == 0 {
        return true;
    }
    let seg = 3usize.pow(v);
    let third = seg / 3;
    let offset = cross % seg;
    (third..2 * third).contains(&offset)
}

/// True when a move from `(x, y)` by `(dx, dy)` stays on the grid and does
/// not cross a wall.
pub fn move_open(width: usize, x: usize, y: usize, dx: i32, dy: i32) -> bool {
    let nx = x as i64 + dx as i64;
    let ny = y as i64 + dy as i64;
    if nx < 0 || ny < 0 || nx >= width as i64 || ny >= width as i64 {
        return false;
    }
    if dx != 0 {
        let line = x.max(nx as usize);
        edge_open(line, y)
    } else {
        let line = y.max(ny as usize);
        edge_open(line, x)
    }
}

/// Builds the level-N Nine Rooms MDP with the goal in the given corner.
/// With `stochastic`, moves succeed with probability `1 - p` and otherwise
/// stay in place.
pub fn nine_rooms_mdp_at(
    level: usize,
    stochastic: bool,
    p: f64,
    corner: GoalCorner,
) -> Result<Mdp> {
    if level == 0 || level > NINE_ROOMS_MAX_LEVEL {
        return Err(Error::InvalidDomain(format!(
            "level {level} outside 1..={NINE_ROOMS_MAX_LEVEL}"
        )));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidDomain(format!("slip probability {p} outside [0, 1)")));
    }
    let width = nine_rooms_width(level);
    let n = width * width;
    let gamma = NINE_ROOMS_GAMMA;
    let goal = corner.cell(width).index(width);

    let mut actions: Vec<MdpAction> = GRID_MOVE_IDS
        .iter()
        .map(|id| MdpAction {
            id: (*id).into(),
            reward: vec![0.0; n],
            trans: vec![TransRow::Empty; n],
            available: vec![false; n],
        })
        .collect();

    for y in 0..width {
        for x in 0..width {
            let s = y * width + x;
            for (a, &(dx, dy)) in GRID_MOVES.iter().enumerate() {
                if !move_open(width, x, y, dx, dy) {
                    continue;
                }
                actions[a].available[s] = true;
                if s == goal {
                    continue;
                }
                let target =
                    ((y as i64 + dy as i64) as usize) * width + (x as i64 + dx as i64) as usize;
                if !stochastic {
                    actions[a].trans[s] = TransRow::One(target as u32, gamma);
                } else {
                    let mut pairs = vec![
                        (s as u32, gamma * p),
                        (target as u32, gamma * (1.0 - p)),
                    ];
                    pairs.sort_unstable_by_key(|&(j, _)| j);
                    actions[a].trans[s] = TransRow::from_sorted_pairs(&pairs);
                }
            }
        }
    }
    // Reward 1 for any action taken in the goal cell, which then exits.
    for act in actions.iter_mut() {
        act.reward[goal] = 1.0;
    }

    Mdp::new(n, gamma, vec![goal], actions)
}

pub fn nine_rooms_mdp(level: usize, stochastic: bool, p: f64) -> Result<Mdp> {
    nine_rooms_mdp_at(level, stochastic, p, GoalCorner::NorthWest)
}

/// One doorway pattern: all cells (across every level-`level` instance) on
/// the lower-coordinate side of the `index`-th doorway, plus the initiation
/// cells of the two sub-instances it connects.
#[derive(Clone, Debug)]
pub struct DoorwaySpec {
    pub level: usize,
    /// 1-based doorway index within [1, 12].
    pub index: usize,
    pub cells: Vec<GridState>,
    pub initiation: Vec<GridState>,
}

/// Enumerates the 12 doorway patterns of one hierarchy level across the
/// whole level-N grid. Indices 1..=6 are vertical walls (west-side cells),
/// 7..=12 horizontal walls (north-side cells).
pub fn doorways(grid_level: usize, level: usize) -> Result<Vec<DoorwaySpec>> {
    if level < 2 || level > grid_level {
        return Err(Error::InvalidDomain(format!(
            "doorway level {level} outside 2..={grid_level}"
        )));
    }
    let width = nine_rooms_width(grid_level);
    let sub = 3usize.pow(level as u32 - 1); // sub-instance side
    let inst = 3 * sub; // level instance side
    let third = sub / 3;
    let mut out = Vec::with_capacity(12);
    for j in 0..12 {
        let vertical = j < 6;
        let k = 1 + (j % 6) / 3; // which internal wall line (1 or 2)
        let m = j % 3; // which segment along the wall
        let mut cells = Vec::new();
        let mut initiation = Vec::new();
        let instances = width / inst;
        for iy in 0..instances {
            for ix in 0..instances {
                let (ox, oy) = (ix * inst, iy * inst);
                if vertical {
                    let x = ox + k * sub - 1;
                    for y in oy + m * sub + third..oy + m * sub + 2 * third {
                        cells.push(GridState {
                            x: x as u32,
                            y: y as u32,
                        });
                    }
                    for (bx, by) in [
                        (ox + (k - 1) * sub, oy + m * sub),
                        (ox + k * sub, oy + m * sub),
                    ] {
                        push_block(&mut initiation, bx, by, sub);
                    }
                } else {
                    let y = oy + k * sub - 1;
                    for x in ox + m * sub + third..ox + m * sub + 2 * third {
                        cells.push(GridState {
                            x: x as u32,
                            y: y as u32,
                        });
                    }
                    for (bx, by) in [
                        (ox + m * sub, oy + (k - 1) * sub),
                        (ox + m * sub, oy + k * sub),
                    ] {
                        push_block(&mut initiation, bx, by, sub);
                    }
                }
            }
        }
        out.push(DoorwaySpec {
            level,
            index: j + 1,
            cells,
            initiation,
        });
    }
    Ok(out)
}

fn push_block(cells: &mut Vec<GridState>, ox: usize, oy: usize, side: usize) {
    for y in oy..oy + side {
        for x in ox..ox + side {
            cells.push(GridState {
                x: x as u32,
                y: y as u32,
            });
        }
    }
}

/// The 12(N - 1) doorway subgoal value models with their initiation sets.
pub fn nine_rooms_subgoals(level: usize, k: f64) -> Result<Vec<SubgoalSpec>> {
    if level < 2 {
        return Err(Error::InvalidDomain(
            "doorway subgoals need level >= 2".into(),
        ));
    }
    if level > NINE_ROOMS_MAX_LEVEL {
        return Err(Error::InvalidDomain(format!(
            "level {level} outside 2..={NINE_ROOMS_MAX_LEVEL}"
        )));
    }
    if k <= 0.0 {
        return Err(Error::InvalidDomain(format!("subgoal constant {k} must be positive")));
    }
    let width = nine_rooms_width(level);
    let n = width * width;
    let mut out = Vec::with_capacity(12 * (level - 1));
    for l in 2..=level {
        for spec in doorways(level, l)? {
            let mut reward = vec![0.0; n];
            for c in &spec.cells {
                reward[c.index(width)] = k;
            }
            let initiation = spec.initiation.iter().map(|c| c.index(width)).collect();
            out.push(
                SubgoalSpec::new(
                    format!("doorway(l{l},j{})", spec.index),
                    ValueModel::new(reward),
                )
                .with_initiation(initiation),
            );
        }
    }
    Ok(out)
}

/// Renders the maze as text: walls, doorways and the goal cell.
pub fn render_maze(level: usize, corner: GoalCorner) -> Result<String> {
    if level == 0 || level > NINE_ROOMS_MAX_LEVEL {
        return Err(Error::InvalidDomain(format!(
            "level {level} outside 1..={NINE_ROOMS_MAX_LEVEL}"
        )));
    }
    let width = nine_rooms_width(level);
    let goal = corner.cell(width);
    let mut out = String::new();
    for y in 0..=width {
        // Horizontal edges above row y.
        for x in 0..width {
            let open = y > 0 && y < width && edge_open(y, x);
            out.push('+');
            out.push_str(if open { "  " } else { "--" });
        }
        out.push_str("+\n");
        if y == width {
            break;
        }
        // Cell row with vertical edges.
        for x in 0..width {
            let open = x > 0 && edge_open(x, y);
            out.push(if open { ' ' } else { '|' });
            if goal.x as usize == x && goal.y as usize == y {
                out.push_str("G ");
            } else {
                out.push_str("  ");
            }
        }
        out.push_str("|\n");
    }
    Ok(out)
}
