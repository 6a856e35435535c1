"""Exact monomial-matrix arithmetic and gamma-matrix generators.

Every operator in the Clifford factor of the models is a signed-phase
permutation matrix: one nonzero entry per row and column, with value a power
of i.  Such a matrix is stored as a permutation plus a per-row phase
exponent, which makes products, adjoints and equality O(dim) exact integer
work even at dimension 2**15.  Dense complex matrices appear only as test
oracles, never here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

# value of i**k for k = 0..3
PHASES = (1, 1j, -1, -1j)

_PHASE_EXPONENT = {1: 0, 1j: 1, -1: 2, -1j: 3, -1 + 0j: 2, 1 + 0j: 0}


def phase_exponent(scalar: complex) -> int:
    """Exponent k with scalar == i**k; raises for non-unit scalars."""
    try:
        return _PHASE_EXPONENT[scalar]
    except KeyError:
        raise ValueError(f"{scalar!r} is not a power of i") from None


@dataclass(frozen=True, eq=False)
class MonomialOperator:
    """Signed-phase permutation matrix.

    Row r has its sole nonzero entry in column ``perm[r]`` with value
    i**phase[r].  Instances are immutable; all operations return fresh
    values.
    """

    perm: np.ndarray  # int32 bijection of 0..dim-1
    phase: np.ndarray  # int8 exponents mod 4

    def __post_init__(self) -> None:
        perm = np.asarray(self.perm, dtype=np.int32)
        phase = np.asarray(self.phase, dtype=np.int8)
        if perm.shape != phase.shape or perm.ndim != 1:
            raise ValueError("perm and phase must be 1-d arrays of equal length")
        perm.setflags(write=False)
        phase.setflags(write=False)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "phase", phase)

    @classmethod
    def identity(cls, dim: int) -> "MonomialOperator":
        return cls(np.arange(dim, dtype=np.int32), np.zeros(dim, dtype=np.int8))

    @property
    def dim(self) -> int:
        return len(self.perm)

    def assert_valid(self) -> None:
        if not np.array_equal(np.sort(self.perm), np.arange(self.dim)):
            raise ValueError("perm is not a bijection")

    def __matmul__(self, other: "MonomialOperator") -> "MonomialOperator":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return MonomialOperator(
            other.perm[self.perm],
            (self.phase + other.phase[self.perm]) % 4,
        )

    def adjoint(self) -> "MonomialOperator":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.dim, dtype=np.int32)
        ph = np.empty_like(self.phase)
        ph[self.perm] = (-self.phase) % 4
        return MonomialOperator(inv, ph)

    def scale(self, exponent: int) -> "MonomialOperator":
        """Multiply by i**exponent."""
        return MonomialOperator(self.perm, (self.phase + exponent) % 4)

    def __mul__(self, scalar: complex) -> "MonomialOperator":
        return self.scale(phase_exponent(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "MonomialOperator":
        return self.scale(2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialOperator):
            return NotImplemented
        return np.array_equal(self.perm, other.perm) and np.array_equal(
            self.phase, other.phase
        )

    def kron(self, other: "MonomialOperator") -> "MonomialOperator":
        d2 = other.dim
        perm = (self.perm[:, None] * d2 + other.perm[None, :]).ravel()
        phase = ((self.phase[:, None] + other.phase[None, :]) % 4).ravel()
        return MonomialOperator(perm.astype(np.int32), phase.astype(np.int8))

    def is_hermitian(self) -> bool:
        return self == self.adjoint()

    def scalar_of_identity(self) -> complex | None:
        """The scalar c with self == c * identity, if any."""
        if not np.array_equal(self.perm, np.arange(self.dim)):
            return None
        if not np.all(self.phase == self.phase[0]):
            return None
        return PHASES[int(self.phase[0])]

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        out[np.arange(self.dim), self.perm] = np.asarray(PHASES)[self.phase]
        return out

    def triples(self) -> list[tuple[int, int, int]]:
        """Debug serialization: (row, col, phase exponent), row-major."""
        return [(r, int(self.perm[r]), int(self.phase[r])) for r in range(self.dim)]

    def __repr__(self) -> str:
        return f"MonomialOperator(dim={self.dim})"


def _pauli(k: int) -> MonomialOperator:
    perm, phase = {
        0: ([0, 1], [0, 0]),  # identity
        1: ([1, 0], [0, 0]),  # sigma_1
        2: ([1, 0], [3, 1]),  # sigma_2
        3: ([0, 1], [0, 2]),  # sigma_3
    }[k]
    return MonomialOperator(np.array(perm, dtype=np.int32), np.array(phase, dtype=np.int8))


def _pauli_chain(codes: list[int]) -> MonomialOperator:
    return reduce(lambda x, y: x.kron(y), (_pauli(c) for c in codes))


def gamma(j: int, m: int) -> MonomialOperator:
    """Generator j of the 2m-generator Clifford algebra, dimension 2**m.

    gamma_1 is a pure sigma_1 tensor chain; for j >= 2 a sigma_3 factor sits
    after m-j+1 leading sigma_1 factors.
    """
    if not 1 <= j <= m:
        raise ValueError(f"index {j} out of range 1..{m}")
    if j == 1:
        return _pauli_chain([1] * m)
    return _pauli_chain([1] * (m - j + 1) + [3] + [0] * (j - 2))


def gamma_tilde(j: int, m: int) -> MonomialOperator:
    """Generator j+m of the same algebra: sigma_2 after m-j sigma_1 factors.

    Has its nonzero entries at the same positions as gamma(j, m).
    """
    if not 1 <= j <= m:
        raise ValueError(f"index {j} out of range 1..{m}")
    return _pauli_chain([1] * (m - j) + [2] + [0] * (j - 1))


def big_gamma(j: int, m: int) -> MonomialOperator:
    """i * gamma_j * gamma_tilde_j: diagonal, hermitian, squares to identity."""
    return (gamma(j, m) @ gamma_tilde(j, m)).scale(1)


def mul(x: MonomialOperator, y: MonomialOperator) -> MonomialOperator:
    """Exact product; phases composed mod 4."""
    return x @ y


def proportional(x: MonomialOperator, y: MonomialOperator) -> complex | None:
    """The scalar i**k with x == i**k * y, or None if no such scalar exists."""
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")
    if not np.array_equal(x.perm, y.perm):
        return None
    diff = (x.phase - y.phase) % 4
    if not np.all(diff == diff[0]):
        return None
    return PHASES[int(diff[0])]


def commutes(x: MonomialOperator, y: MonomialOperator) -> bool:
    return x @ y == y @ x


def anticommutes(x: MonomialOperator, y: MonomialOperator) -> bool:
    return x @ y == -(y @ x)
