"""Typed AST for the string-diagram language, with typechecking.

Diagrams are terms, not pictures: Seq composes stages in listed order
(first listed applied first) and Par juxtaposes wires left to right.
Typechecking computes wire counts only; wire dimensions are fixed later
by the observable the term is evaluated against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from ..errors import UnboundBoxError, WireCountError
from .observables import PhaseElement


@dataclass(frozen=True)
class Id:
    wires: int

    def __post_init__(self):
        if self.wires < 0:
            raise ValueError(f"id needs a nonnegative wire count, "
                             f"got {self.wires}")


@dataclass(frozen=True)
class Spider:
    inputs: int
    outputs: int
    phase: PhaseElement | None = None

    def __post_init__(self):
        if self.inputs < 0 or self.outputs < 0:
            raise ValueError("spider legs must be nonnegative")


@dataclass(frozen=True)
class Cup:
    """The preparation sum_k |kk>, a map from no wires to two."""


@dataclass(frozen=True)
class Cap:
    """Dagger of Cup: two wires to none."""


@dataclass(frozen=True)
class Swap:
    """Transposition of two adjacent wires."""


@dataclass(frozen=True)
class Box:
    name: str


@dataclass(frozen=True)
class Ket:
    digits: str

    def __post_init__(self):
        if not self.digits or not self.digits.isdigit():
            raise ValueError(f"ket needs a nonempty digit string, "
                             f"got {self.digits!r}")


@dataclass(frozen=True)
class Seq:
    stages: tuple["DiagramTerm", ...]

    def __post_init__(self):
        if not self.stages:
            raise ValueError("empty sequential composition")
        object.__setattr__(self, "stages", tuple(self.stages))


@dataclass(frozen=True)
class Par:
    factors: tuple["DiagramTerm", ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("empty parallel composition")
        object.__setattr__(self, "factors", tuple(self.factors))


DiagramTerm = Union[Id, Spider, Cup, Cap, Swap, Box, Ket, Seq, Par]

BoxSignatures = Mapping[str, object]


def _box_signature(name: str, boxes: BoxSignatures | None) -> tuple[int, int]:
    if boxes is None or name not in boxes:
        raise UnboundBoxError(f"box {name!r} is not bound")
    sig = boxes[name]
    if isinstance(sig, tuple):
        ins, outs = sig
        return int(ins), int(outs)
    # anything map-like with wire dims, e.g. a LinearMap binding
    return len(sig.in_dims), len(sig.out_dims)


def typecheck(term: DiagramTerm,
              boxes: BoxSignatures | None = None) -> tuple[int, int]:
    """Wire counts (inputs, outputs) of a term, bottom-up.

    ``boxes`` maps box names to (in_wires, out_wires) pairs or to bound
    LinearMaps.  Raises WireCountError on a Seq stage mismatch and
    UnboundBoxError for unknown boxes.
    """
    if isinstance(term, Id):
        return term.wires, term.wires
    if isinstance(term, Spider):
        return term.inputs, term.outputs
    if isinstance(term, Cup):
        return 0, 2
    if isinstance(term, Cap):
        return 2, 0
    if isinstance(term, Swap):
        return 2, 2
    if isinstance(term, Box):
        return _box_signature(term.name, boxes)
    if isinstance(term, Ket):
        return 0, len(term.digits)
    if isinstance(term, Seq):
        ins, current = typecheck(term.stages[0], boxes)
        for i, stage in enumerate(term.stages[1:], start=1):
            sin, sout = typecheck(stage, boxes)
            if sin != current:
                raise WireCountError(
                    f"stage {i} consumes {sin} wires but stage {i - 1} "
                    f"produces {current}",
                    stage=i, produced=current, consumed=sin)
            current = sout
        return ins, current
    if isinstance(term, Par):
        ins = outs = 0
        for factor in term.factors:
            fin, fout = typecheck(factor, boxes)
            ins += fin
            outs += fout
        return ins, outs
    raise TypeError(f"not a diagram term: {term!r}")


def pretty(term: DiagramTerm) -> str:
    """Render a term back to concrete syntax; reparses to an equal AST.

    Spider phases are printable only in the qubit convention (0, alpha);
    other phase vectors have no concrete syntax.
    """
    return _render_seq(term)


def _render_seq(term: DiagramTerm) -> str:
    if isinstance(term, Seq):
        return " ; ".join(_render_par(s) for s in term.stages)
    return _render_par(term)


def _render_par(term: DiagramTerm) -> str:
    if isinstance(term, Seq):
        return f"({_render_seq(term)})"
    if isinstance(term, Par):
        return " * ".join(_render_atom(f) for f in term.factors)
    return _render_atom(term)


def _render_atom(term: DiagramTerm) -> str:
    if isinstance(term, (Seq, Par)):
        return f"({_render_seq(term)})"
    if isinstance(term, Id):
        return f"id({term.wires})"
    if isinstance(term, Spider):
        if term.phase is None:
            return f"spider({term.inputs},{term.outputs})"
        if term.phase.dim != 2:
            raise ValueError(
                f"phase over {term.phase.dim} points has no concrete syntax")
        return f"spider({term.inputs},{term.outputs},{term.phase.phases[1]!r})"
    if isinstance(term, Cup):
        return "cup"
    if isinstance(term, Cap):
        return "cap"
    if isinstance(term, Swap):
        return "swap"
    if isinstance(term, Box):
        return f"box({term.name})"
    if isinstance(term, Ket):
        return f"ket({term.digits})"
    raise TypeError(f"not a diagram term: {term!r}")
