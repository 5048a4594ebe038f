"""Semi-totalistic cellular automaton on a bounded lattice with frozen wall cells.

The update rule is the classic two-state birth/survival scheme over the
8-cell Moore neighborhood.  Cells marked *frozen* never change state but
still count toward their neighbors' live-neighbor totals, which is how
channel walls confine growing patterns.  Everything outside the lattice
is permanently dead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np


class RuleParseError(ValueError):
    """Raised for malformed rule strings; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class RuleBS:
    """Birth/survival neighbor-count sets, each a subset of 0..8."""

    birth: frozenset[int]
    survival: frozenset[int]

    def __post_init__(self):
        for name, counts in (("birth", self.birth), ("survival", self.survival)):
            bad = [c for c in counts if not 0 <= c <= 8]
            if bad:
                raise ValueError(f"{name} counts must be in 0..8, got {sorted(bad)}")

    def __str__(self) -> str:
        b = "".join(str(d) for d in sorted(self.birth))
        s = "".join(str(d) for d in sorted(self.survival))
        return f"B{b}/S{s}"


def parse_rule(text: str) -> RuleBS:
    """Parse a rule string of the form ``B<digits>/S<digits>`` (digits 0..8).

    Duplicate digits collapse; both digit runs may be empty.
    """
    if not text:
        raise RuleParseError("empty rule string", 0)
    if text[0] != "B":
        raise RuleParseError(f"expected 'B', found {text[0]!r}", 0)

    def scan_digits(start: int, stop_char: Optional[str]) -> tuple[set[int], int]:
        digits: set[int] = set()
        i = start
        while i < len(text):
            ch = text[i]
            if stop_char is not None and ch == stop_char:
                break
            if not ch.isdigit():
                raise RuleParseError(f"unexpected character {ch!r}", i)
            if ch == "9":
                raise RuleParseError("neighbor counts range over 0..8, '9' is not valid", i)
            digits.add(int(ch))
            i += 1
        return digits, i

    birth, i = scan_digits(1, "/")
    if i >= len(text):
        raise RuleParseError("missing '/S' separator", len(text))
    i += 1  # consume '/'
    if i >= len(text) or text[i] != "S":
        raise RuleParseError("expected 'S' after '/'", i)
    survival, i = scan_digits(i + 1, None)
    return RuleBS(birth=frozenset(birth), survival=frozenset(survival))


class Lattice:
    """Immutable 2D binary lattice with a frozen-cell mask.

    ``state`` and ``frozen`` are ``(height, width)`` arrays indexed
    ``[y, x]``.  Instances are safe to share between threads.
    """

    __slots__ = ("width", "height", "state", "frozen")

    def __init__(self, state: np.ndarray, frozen: Optional[np.ndarray] = None):
        state = np.asarray(state, dtype=np.uint8)
        if state.ndim != 2:
            raise ValueError("lattice state must be 2-dimensional")
        if frozen is None:
            frozen = np.zeros(state.shape, dtype=bool)
        else:
            frozen = np.asarray(frozen, dtype=bool)
            if frozen.shape != state.shape:
                raise ValueError("frozen mask shape must match state shape")
        state = state.copy()
        frozen = frozen.copy()
        state[state > 1] = 1
        state.setflags(write=False)
        frozen.setflags(write=False)
        self.height, self.width = state.shape
        self.state = state
        self.frozen = frozen

    @classmethod
    def empty(cls, width: int, height: int) -> "Lattice":
        return cls(np.zeros((height, width), dtype=np.uint8))

    def with_cells(self, cells: Iterable[tuple[int, int]], value: int = 1) -> "Lattice":
        """Return a copy with the given (x, y) cells set to ``value``."""
        state = self.state.copy()
        for x, y in cells:
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ValueError(f"cell ({x}, {y}) outside {self.width}x{self.height} lattice")
            state[y, x] = value
        return Lattice(state, self.frozen)

    def with_frozen_rect(self, x: int, y: int, w: int, h: int, alive: bool) -> "Lattice":
        """Return a copy with a rectangle frozen at the given state."""
        state = self.state.copy()
        frozen = self.frozen.copy()
        state[y : y + h, x : x + w] = 1 if alive else 0
        frozen[y : y + h, x : x + w] = True
        return Lattice(state, frozen)

    def population(self) -> int:
        """Number of live non-frozen cells."""
        return int((self.state & ~self.frozen).sum())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and np.array_equal(self.state, other.state)
            and np.array_equal(self.frozen, other.frozen)
        )

    def __hash__(self):
        return hash((self.state.tobytes(), self.frozen.tobytes()))


def _neighbor_counts(state: np.ndarray) -> np.ndarray:
    padded = np.zeros((state.shape[0] + 2, state.shape[1] + 2), dtype=np.int16)
    padded[1:-1, 1:-1] = state
    counts = np.zeros(state.shape, dtype=np.int16)
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            if dx == 0 and dy == 0:
                continue
            counts += padded[1 + dy : 1 + dy + state.shape[0], 1 + dx : 1 + dx + state.shape[1]]
    return counts


def step(lattice: Lattice, rule: RuleBS) -> Lattice:
    """Advance every non-frozen cell one synchronous update."""
    counts = _neighbor_counts(lattice.state)
    birth_lut = np.zeros(9, dtype=bool)
    surv_lut = np.zeros(9, dtype=bool)
    birth_lut[list(rule.birth)] = True
    surv_lut[list(rule.survival)] = True

    alive = lattice.state.astype(bool)
    new = np.where(alive, surv_lut[counts], birth_lut[counts]).astype(np.uint8)
    new[lattice.frozen] = lattice.state[lattice.frozen]
    return Lattice(new, lattice.frozen)


def run(
    lattice: Lattice,
    rule: RuleBS,
    steps: int,
    on_step: Optional[Callable[[int, Lattice], None]] = None,
) -> Lattice:
    """Iterate ``step`` the given number of times.

    ``on_step(t, lattice)`` is invoked after each update with the 1-based
    step index.
    """
    if steps < 0:
        raise ValueError("step count must be non-negative")
    current = lattice
    for t in range(1, steps + 1):
        current = step(current, rule)
        if on_step is not None:
            on_step(t, current)
    return current


B2_S2345 = RuleBS(birth=frozenset({2}), survival=frozenset({2, 3, 4, 5}))
