"""The environment contract: reset, step, render, close, metadata, spec.

step() returns the five-tuple ``(observation, reward, terminated, truncated,
info)``: the reward earned by the transition, a flag for reaching a terminal
state of the dynamics, and a separate flag for externally imposed episode
ends (time limits).  Both flags are true together only when a terminal state
coincides exactly with the step limit.

An environment instance is single-owner: callers serialize all access.  The
render mode is fixed at construction; "human" mode pushes output to a
pluggable frame sink instead of opening a window, so the kernel carries no
display dependency.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .errors import EnvClosed, RenderModeUnset, ResetNeeded
from .seeding import Rng, entropy_seed

RENDER_MODES = ("human", "rgb_array", "ansi")
_VISUAL_MODES = ("human", "rgb_array")

# (observation, reward, terminated, truncated, info)
StepResult = tuple[Any, float, bool, bool, dict]
# (observation, info)
ResetResult = tuple[Any, dict]


@dataclass(frozen=True)
class Metadata:
    """Static environment facts: supported render modes and framerate."""

    render_modes: tuple[str, ...] = ()
    render_fps: Optional[int] = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for mode in self.render_modes:
            if mode not in RENDER_MODES:
                raise ValueError(f"unknown render mode {mode!r}")
        if any(m in _VISUAL_MODES for m in self.render_modes):
            if self.render_fps is None or self.render_fps < 1:
                raise ValueError("render_fps must be >= 1 when a visual mode is supported")


def write_ppm(path, frame: np.ndarray) -> None:
    """Write one RGB frame (H x W x 3, uint8, row-major) as binary PPM."""
    frame = np.ascontiguousarray(frame, dtype=np.uint8)
    height, width = frame.shape[:2]
    with open(path, "wb") as handle:
        handle.write(f"P6\n{width} {height}\n255\n".encode("ascii"))
        handle.write(frame.tobytes())


class FrameSink:
    """Destination for "human"-mode output, paced at the declared framerate."""

    def __init__(self):
        self._next_emit = None

    def emit(self, payload, fps: Optional[int]) -> None:
        self._pace(fps)
        self._write(payload)

    def _pace(self, fps):
        if fps:
            now = time.monotonic()
            if self._next_emit is not None and self._next_emit > now:
                time.sleep(self._next_emit - now)
            self._next_emit = max(self._next_emit or now, now) + 1.0 / fps

    def _write(self, payload):
        raise NotImplementedError


class TerminalSink(FrameSink):
    """Prints text renderings to a stream (default stdout)."""

    def __init__(self, stream=None):
        super().__init__()
        self._stream = stream if stream is not None else sys.stdout

    def _write(self, payload):
        print(payload, file=self._stream)


class FrameDirectorySink(FrameSink):
    """Writes numbered PPM files into a directory."""

    def __init__(self, directory):
        super().__init__()
        from pathlib import Path

        self._directory = Path(directory)
        self._directory.mkdir(parents=True, exist_ok=True)
        self._count = 0

    def _write(self, payload):
        write_ppm(self._directory / f"frame_{self._count:06d}.ppm", payload)
        self._count += 1


class Env:
    """Base class all environments implement.

    Subclasses set ``observation_space`` and ``action_space`` in their
    constructor (immutable afterwards), provide :meth:`reset` and
    :meth:`step`, and implement ``_render_frame`` / ``_render_text`` for
    the modes their metadata advertises.
    """

    metadata: Metadata = Metadata()
    spec = None

    def __init__(self, render_mode: Optional[str] = None):
        if render_mode is not None and render_mode not in self.metadata.render_modes:
            raise ValueError(
                f"render mode {render_mode!r} not supported; "
                f"available: {list(self.metadata.render_modes)}"
            )
        self.render_mode = render_mode
        self.frame_sink: Optional[FrameSink] = None
        self._rng: Optional[Rng] = None
        self._closed = False

    # -- randomness ---------------------------------------------------------

    @property
    def rng(self) -> Rng:
        """The episode RNG; lazily seeded from the wall clock if never seeded."""
        if self._rng is None:
            self._rng = Rng(entropy_seed())
        return self._rng

    def _reset_preamble(self, seed: Optional[int]) -> None:
        """Shared reset entry: closed check, then reseed if a seed was given."""
        self._ensure_open()
        if seed is not None:
            self._rng = Rng(seed)

    def _ensure_open(self) -> None:
        if self._closed:
            raise EnvClosed(f"{type(self).__name__} has been closed")

    # -- core contract ------------------------------------------------------

    def reset(self, *, seed: Optional[int] = None, options: Optional[dict] = None) -> ResetResult:
        raise NotImplementedError

    def step(self, action) -> StepResult:
        raise NotImplementedError

    def render(self):
        """Render per the mode fixed at construction.

        rgb_array returns an H x W x 3 uint8 frame; ansi returns a string;
        human pushes to the frame sink (terminal for text-capable
        environments, a PPM file writer otherwise) and returns None.
        """
        if self.render_mode is None:
            raise RenderModeUnset("render() requires a render mode set at construction")
        if self.render_mode == "rgb_array":
            return self._render_frame()
        if self.render_mode == "ansi":
            return self._render_text()
        text_capable = "ansi" in self.metadata.render_modes
        if self.frame_sink is None:
            self.frame_sink = TerminalSink() if text_capable else FrameDirectorySink("frames")
        payload = self._render_text() if text_capable else self._render_frame()
        self.frame_sink.emit(payload, self.metadata.render_fps)
        return None

    def close(self) -> None:
        """Release resources; idempotent.  Later reset/step raise EnvClosed."""
        self._closed = True

    # -- rendering hooks ------------------------------------------------------

    def _render_frame(self) -> np.ndarray:
        raise NotImplementedError(f"{type(self).__name__} does not render frames")

    def _render_text(self) -> str:
        raise NotImplementedError(f"{type(self).__name__} does not render text")

    # -- conveniences ---------------------------------------------------------

    @property
    def unwrapped(self) -> "Env":
        return self

    def _require_episode(self, state) -> None:
        if state is None:
            raise ResetNeeded("reset() must be called before this operation")

    def __repr__(self):
        return f"<{type(self).__name__}>"
