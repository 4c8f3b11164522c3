"""Grid-world lake crossing: Discrete observations and actions, stochastic.

The agent walks a grid of start (S), frozen (F), hole (H), and goal (G)
cells.  Holes and the goal are terminal; reaching the goal pays 1.0, all
other transitions pay 0.0.  On slippery ice the executed move is the
intended direction or either perpendicular one, each with probability 1/3.
Moves into a wall leave the agent in place.
"""

from __future__ import annotations

from typing import Optional

from ..env import Env, Metadata
from ..errors import InvalidAction
from ..spaces import Discrete

LEFT, DOWN, RIGHT, UP = 0, 1, 2, 3

DEFAULT_MAP = (
    "SFFF",
    "FHFH",
    "FFFH",
    "HFFG",
)


def slip_directions(action: int) -> tuple[int, int, int]:
    """The three equally likely executed directions for an intended action."""
    return ((action - 1) % 4, action, (action + 1) % 4)


def move(desc: tuple[str, ...], position: int, direction: int) -> int:
    """Apply one deterministic move on the grid; walls block."""
    rows, cols = len(desc), len(desc[0])
    row, col = divmod(position, cols)
    if direction == LEFT:
        col = max(col - 1, 0)
    elif direction == DOWN:
        row = min(row + 1, rows - 1)
    elif direction == RIGHT:
        col = min(col + 1, cols - 1)
    elif direction == UP:
        row = max(row - 1, 0)
    return row * cols + col


def _validate_desc(desc) -> tuple[str, ...]:
    desc = tuple(str(row) for row in desc)
    if not desc or not desc[0]:
        raise ValueError("map must be a non-empty grid of rows")
    if any(len(row) != len(desc[0]) for row in desc):
        raise ValueError("map rows must all have the same length")
    cells = "".join(desc)
    if any(ch not in "SFHG" for ch in cells):
        raise ValueError("map cells must be one of S, F, H, G")
    if cells.count("S") != 1:
        raise ValueError("map must contain exactly one start cell")
    return desc


class FrozenLakeEnv(Env):
    metadata = Metadata(render_modes=("human", "ansi"), render_fps=4)

    def __init__(
        self,
        render_mode: Optional[str] = None,
        desc: Optional[tuple[str, ...]] = None,
        is_slippery: bool = True,
    ):
        super().__init__(render_mode)
        self.desc = _validate_desc(desc if desc is not None else DEFAULT_MAP)
        self.is_slippery = bool(is_slippery)
        self.ncells = len(self.desc) * len(self.desc[0])
        self.start = "".join(self.desc).index("S")
        self.observation_space = Discrete(self.ncells)
        self.action_space = Discrete(4)
        self.position = self.start

    def _cell(self, position: int) -> str:
        cols = len(self.desc[0])
        return self.desc[position // cols][position % cols]

    def reset(self, *, seed=None, options=None):
        self._reset_preamble(seed)
        self.position = self.start
        if options and "start_state" in options:
            start_state = int(options["start_state"])
            if not 0 <= start_state < self.ncells:
                raise ValueError(f"start_state must be in [0, {self.ncells}), got {start_state}")
            self.position = start_state
        return self.position, {"prob": 1.0}

    def step(self, action):
        self._ensure_open()
        if not self.action_space.contains(action):
            raise InvalidAction(f"lake actions are 0..3, got {action!r}")
        action = int(action)
        if self.is_slippery:
            direction = slip_directions(action)[self.rng.below(3)]
            prob = 1.0 / 3.0
        else:
            direction = action
            prob = 1.0
        self.position = move(self.desc, self.position, direction)
        cell = self._cell(self.position)
        terminated = cell in "GH"
        reward = 1.0 if cell == "G" else 0.0
        return self.position, reward, terminated, False, {"prob": prob}

    def _render_text(self):
        cols = len(self.desc[0])
        row, col = divmod(self.position, cols)
        lines = []
        for r, cells in enumerate(self.desc):
            if r == row:
                cells = cells[:col] + "[" + cells[col] + "]" + cells[col + 1 :]
            lines.append(cells)
        return "\n".join(lines) + "\n"
