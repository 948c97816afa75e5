use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use super::{Cell, Occupancy};

/// Errors raised while loading a map.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("map is empty")]
    Empty,
    #[error("row {line} has width {found}, expected {expected}")]
    NonRectangular {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid character {ch:?} at line {line}, column {column}")]
    InvalidChar { ch: char, line: usize, column: usize },
    #[error("missing start cell 'S'")]
    MissingStart,
    #[error("missing goal cell 'G'")]
    MissingGoal,
    #[error("more than one start cell 'S'")]
    DuplicateStart,
    #[error("more than one goal cell 'G'")]
    DuplicateGoal,
    #[error("boundary cell {0} is not a wall")]
    OpenBoundary(Cell),
    #[error("goal is unreachable from start")]
    NoPath,
    #[error("unknown builtin environment {0:?} (expected small_corridor, large_corridor or labyrinth)")]
    UnknownEnv(String),
}

/// Rectangular occupancy grid with a start and a goal cell.
///
/// Coordinates are `(col, row)` with row 0 at the bottom. The ASCII form lists
/// the top row first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMap {
    name: String,
    width: usize,
    height: usize,
    cells: Vec<Occupancy>,
    start: Cell,
    goal: Cell,
}

impl GridMap {
    /// Parses the `#`/`.`/`S`/`G` ASCII format and validates the map.
    pub fn parse(text: &str) -> Result<Self, MapError> {
        let mut lines: Vec<&str> = text.lines().map(str::trim_end).collect();
        while lines.first().is_some_and(|l| l.is_empty()) {
            lines.remove(0);
        }
        while lines.last().is_some_and(|l| l.is_empty()) {
            lines.pop();
        }
        if lines.is_empty() {
            return Err(MapError::Empty);
        }

        let width = lines[0].chars().count();
        let height = lines.len();
        let mut cells = vec![Occupancy::Wall; width * height];
        let mut start = None;
        let mut goal = None;

        for (line_ix, line) in lines.iter().enumerate() {
            let found = line.chars().count();
            if found != width {
                return Err(MapError::NonRectangular {
                    line: line_ix + 1,
                    expected: width,
                    found,
                });
            }
            let row = (height - 1 - line_ix) as i32;
            for (col, ch) in line.chars().enumerate() {
                let cell = Cell::new(col as i32, row);
                let occupancy = match ch {
                    '#' => Occupancy::Wall,
                    '.' => Occupancy::Free,
                    'S' => {
                        if start.replace(cell).is_some() {
                            return Err(MapError::DuplicateStart);
                        }
                        Occupancy::Free
                    }
                    'G' => {
                        if goal.replace(cell).is_some() {
                            return Err(MapError::DuplicateGoal);
                        }
                        Occupancy::Free
                    }
                    _ => {
                        return Err(MapError::InvalidChar {
                            ch,
                            line: line_ix + 1,
                            column: col + 1,
                        })
                    }
                };
                cells[row as usize * width + col] = occupancy;
            }
        }

        let map = GridMap {
            name: "custom".to_string(),
            width,
            height,
            cells,
            start: start.ok_or(MapError::MissingStart)?,
            goal: goal.ok_or(MapError::MissingGoal)?,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<(), MapError> {
        for row in 0..self.height as i32 {
            for col in 0..self.width as i32 {
                let boundary = row == 0
                    || col == 0
                    || row == self.height as i32 - 1
                    || col == self.width as i32 - 1;
                let cell = Cell::new(col, row);
                if boundary && self.is_free(cell) {
                    return Err(MapError::OpenBoundary(cell));
                }
            }
        }
        if self.distances_from(self.start)[self.index(self.goal)].is_none() {
            return Err(MapError::NoPath);
        }
        Ok(())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn start(&self) -> Cell {
        self.start
    }

    pub fn goal(&self) -> Cell {
        self.goal
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.col >= 0
            && cell.row >= 0
            && (cell.col as usize) < self.width
            && (cell.row as usize) < self.height
    }

    fn index(&self, cell: Cell) -> usize {
        cell.row as usize * self.width + cell.col as usize
    }

    /// Occupancy of `cell`; anything outside the grid reads as wall.
    pub fn occupancy(&self, cell: Cell) -> Occupancy {
        if self.contains(cell) {
            self.cells[self.index(cell)]
        } else {
            Occupancy::Wall
        }
    }

    pub fn is_free(&self, cell: Cell) -> bool {
        self.occupancy(cell) == Occupancy::Free
    }

    /// Free cells in row-major order, bottom row first.
    pub fn free_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height as i32)
            .flat_map(move |row| (0..self.width as i32).map(move |col| Cell::new(col, row)))
            .filter(|&c| self.is_free(c))
    }

    /// BFS move counts from `from` to every cell (row-major, `None` if unreachable or wall).
    pub(crate) fn distances_from(&self, from: Cell) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.cells.len()];
        if !self.is_free(from) {
            return dist;
        }
        let mut queue = VecDeque::new();
        dist[self.index(from)] = Some(0);
        queue.push_back(from);
        while let Some(cell) = queue.pop_front() {
            let d = dist[self.index(cell)].unwrap_or_default();
            for next in cell.neighbors() {
                if self.is_free(next) && dist[self.index(next)].is_none() {
                    dist[self.index(next)] = Some(d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    pub(crate) fn distance_lookup(&self, table: &[Option<usize>], to: Cell) -> Option<usize> {
        if self.contains(to) {
            table[self.index(to)]
        } else {
            None
        }
    }

    /// Renders the map back into its ASCII form, top row first, LF-terminated.
    pub fn to_ascii(&self) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for row in (0..self.height as i32).rev() {
            for col in 0..self.width as i32 {
                let cell = Cell::new(col, row);
                out.push(if cell == self.start {
                    'S'
                } else if cell == self.goal {
                    'G'
                } else if self.is_free(cell) {
                    '.'
                } else {
                    '#'
                });
            }
            out.push('\n');
        }
        out
    }
}

impl FromStr for GridMap {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GridMap::parse(s)
    }
}

impl fmt::Display for GridMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

/// The three environments used in the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinEnv {
    SmallCorridor,
    LargeCorridor,
    Labyrinth,
}

impl BuiltinEnv {
    pub const ALL: [BuiltinEnv; 3] = [
        BuiltinEnv::SmallCorridor,
        BuiltinEnv::LargeCorridor,
        BuiltinEnv::Labyrinth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinEnv::SmallCorridor => "small_corridor",
            BuiltinEnv::LargeCorridor => "large_corridor",
            BuiltinEnv::Labyrinth => "labyrinth",
        }
    }

    pub fn ascii(self) -> String {
        match self {
            BuiltinEnv::SmallCorridor => SMALL_CORRIDOR.to_string(),
            BuiltinEnv::LargeCorridor => LARGE_CORRIDOR.to_string(),
            BuiltinEnv::Labyrinth => labyrinth_ascii(),
        }
    }

    pub fn map(self) -> GridMap {
        GridMap::parse(&self.ascii())
            .expect("builtin maps are valid")
            .with_name(self.name())
    }
}

impl FromStr for BuiltinEnv {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinEnv::ALL
            .into_iter()
            .find(|env| env.name() == s)
            .ok_or_else(|| MapError::UnknownEnv(s.to_string()))
    }
}

impl fmt::Display for BuiltinEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Looks up a builtin environment by name.
pub fn builtin_env(name: &str) -> Result<GridMap, MapError> {
    Ok(name.parse::<BuiltinEnv>()?.map())
}

const SMALL_CORRIDOR: &str = "\
#######
#...###
#S#..G#
#######
";

const LARGE_CORRIDOR: &str = "\
###########
#...#...###
#S#...#..G#
###########
";

/// 15x15 ring with sixteen 2x2 wall blocks; corridors run along rows and
/// columns 1, 4, 7, 10 and 13.
fn labyrinth_ascii() -> String {
    const SIZE: i32 = 15;
    const BLOCKS: [i32; 4] = [2, 5, 8, 11];
    let in_block = |v: i32| BLOCKS.iter().any(|&b| v == b || v == b + 1);
    let mut out = String::new();
    for row in (0..SIZE).rev() {
        for col in 0..SIZE {
            let border = row == 0 || col == 0 || row == SIZE - 1 || col == SIZE - 1;
            out.push(match (col, row) {
                (4, 4) => 'S',
                (10, 10) => 'G',
                _ if border || (in_block(col) && in_block(row)) => '#',
                _ => '.',
            });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_goal_is_rejected() {
        assert_eq!(GridMap::parse("###\n#S#\n###"), Err(MapError::MissingGoal));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(GridMap::parse(""), Err(MapError::Empty));
        assert_eq!(GridMap::parse("###\n#G#\n###"), Err(MapError::MissingStart));
        assert!(matches!(
            GridMap::parse("####\n#SG\n####"),
            Err(MapError::NonRectangular { line: 2, .. })
        ));
        assert_eq!(
            GridMap::parse("#####\n#SSG#\n#####"),
            Err(MapError::DuplicateStart)
        );
        assert_eq!(
            GridMap::parse("#####\n#SGG#\n#####"),
            Err(MapError::DuplicateGoal)
        );
        assert_eq!(
            GridMap::parse("#####\n#S#G#\n#####"),
            Err(MapError::NoPath)
        );
        assert_eq!(
            GridMap::parse("####\n.SG#\n####"),
            Err(MapError::OpenBoundary(Cell::new(0, 1)))
        );
        assert!(matches!(
            GridMap::parse("####\n#SX#\n####"),
            Err(MapError::InvalidChar { ch: 'X', .. })
        ));
    }

    #[test]
    fn crlf_and_trailing_whitespace_accepted() {
        let map = GridMap::parse("####  \r\n#SG#\r\n####\r\n\r\n").unwrap();
        assert_eq!(map.width(), 4);
        assert_eq!(map.start(), Cell::new(1, 1));
        assert_eq!(map.goal(), Cell::new(2, 1));
    }

    #[test]
    fn small_corridor_geometry() {
        let map = BuiltinEnv::SmallCorridor.map();
        let free: Vec<Cell> = map.free_cells().collect();
        let mut expected = vec![
            Cell::new(1, 1),
            Cell::new(1, 2),
            Cell::new(2, 2),
            Cell::new(3, 1),
            Cell::new(3, 2),
            Cell::new(4, 1),
            Cell::new(5, 1),
        ];
        expected.sort_by_key(|c| (c.row, c.col));
        assert_eq!(free, expected);
        assert_eq!(map.start(), Cell::new(1, 1));
        assert_eq!(map.goal(), Cell::new(5, 1));
        assert_eq!((map.width(), map.height()), (7, 4));
    }

    #[test]
    fn large_corridor_geometry() {
        let map = BuiltinEnv::LargeCorridor.map();
        assert_eq!(map.goal(), Cell::new(9, 1));
        assert_eq!(map.free_cells().count(), 13);
        assert_eq!((map.width(), map.height()), (11, 4));
    }

    #[test]
    fn labyrinth_geometry() {
        let map = BuiltinEnv::Labyrinth.map();
        assert_eq!((map.width(), map.height()), (15, 15));
        assert_eq!(map.width() * map.height(), 225);
        assert_eq!(map.start(), Cell::new(4, 4));
        assert_eq!(map.goal(), Cell::new(10, 10));
        // 13x13 interior minus sixteen 2x2 blocks
        assert_eq!(map.free_cells().count(), 169 - 64);
        for x in [2, 5, 8, 11] {
            for y in [2, 5, 8, 11] {
                for (dx, dy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                    assert!(!map.is_free(Cell::new(x + dx, y + dy)));
                }
            }
        }
        for line in [1, 4, 7, 10, 13] {
            for v in 1..14 {
                assert!(map.is_free(Cell::new(line, v)));
                assert!(map.is_free(Cell::new(v, line)));
            }
        }
    }

    #[test]
    fn ascii_round_trip() {
        for env in BuiltinEnv::ALL {
            let map = env.map();
            assert_eq!(map.to_ascii(), env.ascii());
            assert_eq!(GridMap::parse(&map.to_ascii()).unwrap().with_name(env.name()), map);
        }
    }

    #[test]
    fn unknown_builtin() {
        assert_eq!(
            builtin_env("maze"),
            Err(MapError::UnknownEnv("maze".to_string()))
        );
        assert_eq!(builtin_env("labyrinth").unwrap().name(), "labyrinth");
    }
}
