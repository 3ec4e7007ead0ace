"""Dense complex linear algebra on small multi-qudit spaces.

Values are immutable wrappers around numpy arrays.  Wire order is
big-endian: the leftmost wire is the most significant digit of a basis
index, matching ket-string notation (|01> is index 1 on two qubits).
All operations are pure; nothing here mutates shared state.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionLimitError,
    NormalizationError,
    ShapeMismatchError,
)

# Probability / payoff comparisons use PROB_TOL; algebraic identities on
# doubles (unitarity, adjoints, Frobenius laws) use ALGEBRA_TOL.
PROB_TOL = 1e-9
ALGEBRA_TOL = 1e-12

DEFAULT_DIMENSION_LIMIT = 4096

_dimension_limit = DEFAULT_DIMENSION_LIMIT


def dimension_limit() -> int:
    """Current cap on the total dimension of any constructed space."""
    return _dimension_limit


def set_dimension_limit(limit: int) -> None:
    """Change the total-dimension cap (applies to values built afterwards)."""
    if limit < 1:
        raise ValueError(f"dimension limit must be positive, got {limit}")
    global _dimension_limit
    _dimension_limit = int(limit)


def _check_dims(dims, what: str) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ValueError(f"{what} must be positive integers, got {dims}")
    total = math.prod(dims)
    if total > _dimension_limit:
        raise DimensionLimitError(
            f"{what} give total dimension {total}, above the configured "
            f"limit {_dimension_limit}")
    return dims


def _as_complex(entries, what: str) -> np.ndarray:
    arr = np.asarray(entries, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} must be finite (no NaN/Inf)")
    return arr


def outcome_labels(dims) -> list[str]:
    """Basis index strings for the given wire dimensions, in index order.

    One digit per wire for dims up to 10, comma-separated otherwise.
    """
    sep = "" if all(d <= 10 for d in dims) else ","
    return [sep.join(str(i) for i in idx)
            for idx in itertools.product(*(range(d) for d in dims))]


@dataclass(frozen=True)
class LinearMap:
    """A linear map between tensor products of finite-dimensional wires.

    ``array`` has shape (rows, cols) = (prod(out_dims), prod(in_dims)) and
    row-major big-endian entry order.  Either dims tuple may be empty,
    denoting the 1-dimensional scalar space.
    """

    array: np.ndarray = field(repr=False)
    in_dims: tuple[int, ...]
    out_dims: tuple[int, ...]

    def __post_init__(self):
        in_dims = _check_dims(self.in_dims, "in_dims")
        out_dims = _check_dims(self.out_dims, "out_dims")
        arr = _as_complex(self.array, "entries")
        expect = (math.prod(out_dims), math.prod(in_dims))
        if arr.shape != expect:
            raise ShapeMismatchError(
                f"entries have shape {arr.shape}, expected {expect} from "
                f"out_dims {out_dims} x in_dims {in_dims}")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)
        object.__setattr__(self, "in_dims", in_dims)
        object.__setattr__(self, "out_dims", out_dims)

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @property
    def entries(self) -> np.ndarray:
        """Row-major flattened view of the matrix."""
        return self.array.reshape(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.in_dims == other.in_dims
                and self.out_dims == other.out_dims
                and np.array_equal(self.array, other.array))

    def __repr__(self) -> str:
        return (f"LinearMap({self.rows}x{self.cols}, "
                f"in_dims={self.in_dims}, out_dims={self.out_dims})")

    def dagger(self) -> "LinearMap":
        """Conjugate transpose, with in/out wire dimensions swapped."""
        return LinearMap(self.array.conj().T, self.out_dims, self.in_dims)

    def tensor(self, other: "LinearMap") -> "LinearMap":
        return tensor(self, other)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return compose(self, other)

    def apply(self, state: "StateVector") -> "StateVector":
        """Apply to a state; the state's dims must equal in_dims."""
        if state.dims != self.in_dims:
            raise ShapeMismatchError(
                f"cannot apply map with in_dims {self.in_dims} to state "
                f"with dims {state.dims}")
        return StateVector(self.array @ state.amplitudes, self.out_dims)

    def to_state(self) -> "StateVector":
        """Reinterpret a map from the scalar space as a state vector."""
        if self.cols != 1:
            raise ShapeMismatchError(
                f"map with in_dims {self.in_dims} is not a state preparation")
        return StateVector(self.array[:, 0], self.out_dims)

    def allclose(self, other: "LinearMap", tol: float = ALGEBRA_TOL) -> bool:
        return (self.in_dims == other.in_dims
                and self.out_dims == other.out_dims
                and bool(np.allclose(self.array, other.array,
                                     rtol=0.0, atol=tol)))

    def is_unitary(self, tol: float = PROB_TOL) -> bool:
        if self.rows != self.cols:
            return False
        prod = self.array.conj().T @ self.array
        return bool(np.allclose(prod, np.eye(self.rows), rtol=0.0, atol=tol))


@dataclass(frozen=True)
class StateVector:
    """State on a tensor product of wires; amplitudes in big-endian order."""

    amplitudes: np.ndarray = field(repr=False)
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = _check_dims(self.dims, "dims")
        amps = _as_complex(self.amplitudes, "amplitudes").reshape(-1)
        if amps.shape != (math.prod(dims),):
            raise ShapeMismatchError(
                f"{amps.shape[0]} amplitudes do not fill dims {dims}")
        amps = np.ascontiguousarray(amps)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return (self.dims == other.dims
                and np.array_equal(self.amplitudes, other.amplitudes))

    def __repr__(self) -> str:
        return f"StateVector(dims={self.dims})"

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def squared_norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def is_normalized(self, tol: float = PROB_TOL) -> bool:
        return abs(self.squared_norm - 1.0) <= tol

    def normalized(self) -> "StateVector":
        n = self.norm
        if n == 0.0:
            raise NormalizationError("cannot normalize the zero vector", 0.0)
        return StateVector(self.amplitudes / n, self.dims)

    def scaled(self, factor: complex) -> "StateVector":
        return StateVector(self.amplitudes * factor, self.dims)

    def tensor(self, other: "StateVector") -> "StateVector":
        dims = _check_dims(self.dims + other.dims, "combined dims")
        return StateVector(np.kron(self.amplitudes, other.amplitudes), dims)

    def allclose(self, other: "StateVector", tol: float = ALGEBRA_TOL) -> bool:
        return (self.dims == other.dims
                and bool(np.allclose(self.amplitudes, other.amplitudes,
                                     rtol=0.0, atol=tol)))


def tensor(a: LinearMap, b: LinearMap) -> LinearMap:
    """Kronecker product; the left factor is the most significant wire."""
    in_dims = _check_dims(a.in_dims + b.in_dims, "combined in_dims")
    out_dims = _check_dims(a.out_dims + b.out_dims, "combined out_dims")
    return LinearMap(np.kron(a.array, b.array), in_dims, out_dims)


def compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """Matrix product f.g (g applied first); wire dims must match."""
    if f.in_dims != g.out_dims:
        raise ShapeMismatchError(
            f"cannot compose: f expects in_dims {f.in_dims} but g produces "
            f"out_dims {g.out_dims} (f is {f.rows}x{f.cols}, "
            f"g is {g.rows}x{g.cols})")
    return LinearMap(f.array @ g.array, g.in_dims, f.out_dims)


def dagger(a: LinearMap) -> LinearMap:
    return a.dagger()


def identity(dims) -> LinearMap:
    """Identity map; ``dims`` is a wire-dimension tuple (may be empty)."""
    dims = tuple(dims)
    n = math.prod(dims) if dims else 1
    return LinearMap(np.eye(n, dtype=complex), dims, dims)


def from_matrix(rows, in_dims=None, out_dims=None) -> LinearMap:
    """Build a LinearMap from a square or rectangular nested sequence.

    Dims default to a single wire per side of the given size.
    """
    arr = _as_complex(rows, "entries")
    if arr.ndim != 2:
        raise ShapeMismatchError(f"expected a matrix, got ndim={arr.ndim}")
    if out_dims is None:
        out_dims = (arr.shape[0],)
    if in_dims is None:
        in_dims = (arr.shape[1],)
    return LinearMap(arr, tuple(in_dims), tuple(out_dims))


def basis_state(index: int, dims) -> StateVector:
    dims = tuple(dims)
    amps = np.zeros(math.prod(dims) if dims else 1, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps, dims)


def ket(digits: str, dim: int = 2) -> StateVector:
    """Computational basis state from a digit string, one digit per wire."""
    if not digits or not digits.isdigit():
        raise ValueError(f"ket label must be a nonempty digit string, "
                         f"got {digits!r}")
    values = [int(c) for c in digits]
    if any(v >= dim for v in values):
        raise ValueError(f"ket digit out of range for dimension {dim}: "
                         f"{digits!r}")
    index = 0
    for v in values:
        index = index * dim + v
    return basis_state(index, (dim,) * len(values))


def born_probabilities(state: StateVector,
                       tol: float = PROB_TOL) -> dict[str, float]:
    """Measurement distribution |a_k|^2 keyed by basis index strings."""
    total = state.squared_norm
    if abs(total - 1.0) > tol:
        raise NormalizationError(
            f"state is not normalized: sum |a_k|^2 = {total!r}", total)
    probs = np.abs(state.amplitudes) ** 2
    return dict(zip(outcome_labels(state.dims), (float(p) for p in probs)))


def states_phase_equal(a: StateVector, b: StateVector,
                       tol: float = PROB_TOL) -> bool:
    """Equality up to a unit complex scalar.

    The phase is fixed by aligning the first amplitude whose modulus
    exceeds ``tol`` in either vector.
    """
    if a.dims != b.dims:
        return False
    va, vb = a.amplitudes, b.amplitudes
    pivot = None
    for i in range(va.shape[0]):
        if abs(va[i]) > tol or abs(vb[i]) > tol:
            pivot = i
            break
    if pivot is None:
        return True  # both effectively zero
    if abs(va[pivot]) <= tol or abs(vb[pivot]) <= tol:
        return False
    phase = va[pivot] / vb[pivot]
    phase /= abs(phase)
    return bool(np.allclose(va, phase * vb, rtol=0.0, atol=tol))


# Named single-qubit operators used throughout the games layer.
def _gate(rows) -> LinearMap:
    return LinearMap(np.array(rows, dtype=complex), (2,), (2,))


IDENTITY_1Q = _gate([[1, 0], [0, 1]])
PAULI_X = _gate([[0, 1], [1, 0]])
PAULI_Z = _gate([[1, 0], [0, -1]])
HADAMARD = _gate([[1 / math.sqrt(2), 1 / math.sqrt(2)],
                  [1 / math.sqrt(2), -1 / math.sqrt(2)]])

BUILTIN_GATES: dict[str, LinearMap] = {
    "I": IDENTITY_1Q,
    "X": PAULI_X,
    "Z": PAULI_Z,
    "H": HADAMARD,
}
