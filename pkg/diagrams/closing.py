"""Closing forks by a bounded join search.

The successor of the normal-order step is rewritten with normal-order
steps and with transformations at surface positions; the successor of
the transformation step is rewritten with normal-order steps only. A
closure is a pair of rewrite sequences, one from each successor, ending
in the same meta-term up to LC. Among the closures within the depth
bound the one with the fewest steps wins, ties go to the first one
found. Forks without such a closure are searched once more with
transformation steps allowed on the right as well.
"""
import logging
from dataclasses import dataclass
from typing import Any, Literal

from beartype import beartype

from diagrams.rewriting import Direction, MetaStep, Mode, rewrite_successors
from overlaps import Fork
from term_core import Sort, Term, bv, canonical, rename, to_text, variables

logger = logging.getLogger("logger")

Shape = Literal["degenerate", "triangle", "square", "generalized"]

DEFAULT_MAX_DEPTH = 4
# per side, per fork
DEFAULT_MAX_STATES = 20000

# normal-order steps come first so that they win ties
_LEFT_MODES: tuple[Mode, ...] = ("no", "iS")
_RIGHT_MODES: tuple[Mode, ...] = ("no",)
_RIGHT_FALLBACK: tuple[Mode, ...] = ("no", "iS")

RENAMING = "bound-variable renaming"


@beartype
def classify_shape(left: tuple[MetaStep, ...], right: tuple[MetaStep, ...]) -> Shape:
    if not left and not right:
        return "degenerate"
    if not left or not right:
        return "triangle"
    # the normal-order successor keeps reducing down to the join
    if all(s.mode == "no" for s in left):
        return "triangle"
    if len(right) == 1:
        return "square"
    return "generalized"


@dataclass(frozen=True)
class Diagram:
    """A closed fork.

    Attributes:
        fork: the fork that was closed.
        left_completion: steps from the normal-order successor.
        right_completion: steps from the transformation successor.
        join: the common meta-term both completions reach.
    """

    fork: Fork
    left_completion: tuple[MetaStep, ...]
    right_completion: tuple[MetaStep, ...]
    join: Term

    @property
    def shape(self) -> Shape:
        return classify_shape(self.left_completion, self.right_completion)

    @property
    def multiplicities(self) -> tuple[int, int]:
        return len(self.left_completion), len(self.right_completion)

    def to_json(self, fork_id: str | None = None) -> dict[str, Any]:
        return {
            "fork_id": fork_id,
            "fork": self.fork.to_json(),
            "left_steps": [s.to_json() for s in self.left_completion],
            "right_steps": [s.to_json() for s in self.right_completion],
            "shape": self.shape,
            "join": to_text(self.join),
        }


@dataclass(frozen=True)
class Unclosed:
    """A fork without a closure, with the reason found for it"""

    fork: Fork
    reason: str

    def to_json(self) -> dict[str, Any]:
        return {**self.fork.to_json(), "reason": self.reason}


class _Frontier:
    """Breadth-first levels from one successor; every meta-term keeps the
    first path that reached it"""

    def __init__(
        self, start: Term, direction: Direction, modes: tuple[Mode, ...], max_states: int
    ) -> None:
        start = canonical(start)
        self.direction = direction
        self.modes = modes
        self.max_states = max_states
        self.paths: dict[Term, tuple[MetaStep, ...]] = {start: ()}
        self.levels: list[list[Term]] = [[start]]
        self.exhausted = False

    def level(self, depth: int) -> list[Term]:
        while len(self.levels) <= depth and not self.exhausted:
            self._expand()
        return self.levels[depth] if depth < len(self.levels) else []

    def _expand(self) -> None:
        nxt: list[Term] = []
        for t in self.levels[-1]:
            for mode in self.modes:
                for step in rewrite_successors(t, mode, self.direction):
                    if step.after in self.paths:
                        continue
                    if len(self.paths) >= self.max_states:
                        logger.debug(f"[Closing] state limit reached {self.direction}")
                        self.exhausted = True
                        break
                    self.paths[step.after] = self.paths[t] + (step,)
                    nxt.append(step.after)
        self.levels.append(nxt)
        if not nxt:
            self.exhausted = True


def _tie_break(left: tuple[MetaStep, ...], right: tuple[MetaStep, ...]) -> tuple[int, int]:
    return (
        sum(1 for s in right if s.mode == "iS"),
        sum(1 for s in left if s.mode == "no"),
    )


def _frontiers(
    fork: Fork, right_modes: tuple[Mode, ...], max_states: int
) -> tuple[_Frontier, _Frontier]:
    return (
        _Frontier(fork.left[1], "from-left", _LEFT_MODES, max_states),
        _Frontier(fork.right[2], "from-right", right_modes, max_states),
    )


def _join(
    fork: Fork, right_modes: tuple[Mode, ...], max_depth: int, max_states: int
) -> Diagram | None:
    left, right = _frontiers(fork, right_modes, max_states)
    for total in range(max_depth + 1):
        best: tuple[tuple[int, int], Term] | None = None
        for a in range(total + 1):
            right_level = set(right.level(total - a))
            for t in left.level(a):
                if t not in right_level:
                    continue
                key = _tie_break(left.paths[t], right.paths[t])
                if best is None or key < best[0]:
                    best = (key, t)
        if best is not None:
            join = best[1]
            logger.debug(f"[Closing] {fork.transformation} x {fork.no_rule} at {total}")
            return Diagram(fork, left.paths[join], right.paths[join], join)
    return None


@beartype
def close_fork(
    fork: Fork, max_depth: int = DEFAULT_MAX_DEPTH, max_states: int = DEFAULT_MAX_STATES
) -> Diagram | None:
    """Shortest closure with at most max_depth steps in total, or None.

    The right completion uses normal-order steps whenever such a
    closure exists within the bound.
    """
    found = _join(fork, _RIGHT_MODES, max_depth, max_states)
    if found is None:
        found = _join(fork, _RIGHT_FALLBACK, max_depth, max_states)
    return found


def without_bound_names(t: Term) -> Term:
    """t with every non-chain bound variable renamed to one placeholder"""
    placeholder = bv("_")
    names = {x: placeholder for x in variables(t) if x.sort == Sort.BV and not x.is_chain}
    return canonical(rename(t, names, {}, {}))


@beartype
def diagnose(
    fork: Fork, max_depth: int = DEFAULT_MAX_DEPTH, max_states: int = DEFAULT_MAX_STATES
) -> Unclosed:
    """Why fork has no closure within max_depth steps in total.

    Each frontier is expanded to max_depth on its own; a meeting point
    there means a longer join, and a meeting point up to the names of
    bound variables means the join needs a renaming.
    """
    left, right = _frontiers(fork, _RIGHT_FALLBACK, max_states)
    exact: set[Term] = set()
    for depth in range(max_depth + 1):
        exact.update(right.level(depth))
    erased = {without_bound_names(t) for t in exact}
    left_terms = [t for depth in range(max_depth + 1) for t in left.level(depth)]
    if any(t in exact for t in left_terms):
        return Unclosed(fork, f"join needs more than {max_depth} steps")
    if any(without_bound_names(t) in erased for t in left_terms):
        return Unclosed(fork, RENAMING)
    return Unclosed(fork, f"no join within depth {max_depth}")
