"""The 2x2 supersymmetric building block, formal and numeric.

The formal layer is a free word algebra over the ladder alphabet {A, Ad}:
no rewriting, no normal ordering, equality is letter-by-letter.  The block
identities (the square of the supercharge block equals the Hamiltonian
block, and both graded-commute correctly with the involution block) hold as
exact word-matrix identities, so every algebraic claim downstream is
independent of any concrete realization of the ladder pair.

The numeric layer substitutes concrete matrices for the letters: a truncated
harmonic Fock space (superpotential fixed to x, exact integer spectrum) or a
finite-difference grid with a user superpotential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

LOWER = "A"
RAISE = "Ad"

Word = tuple[str, ...]

# relative singular-value threshold for numeric kernel detection
KERNEL_REL_TOL = 1e-8


class WordSum:
    """Formal Gaussian-integer combination of free words over {A, Ad}."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Word, complex] | None = None):
        self._terms = {w: c for w, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> "WordSum":
        return cls()

    @classmethod
    def unit(cls, coeff: complex = 1) -> "WordSum":
        return cls({(): coeff})

    @classmethod
    def letter(cls, name: str) -> "WordSum":
        if name not in (LOWER, RAISE):
            raise ValueError(f"unknown letter {name!r}")
        return cls({(name,): 1})

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "WordSum") -> "WordSum":
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return WordSum(out)

    def __neg__(self) -> "WordSum":
        return WordSum({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "WordSum") -> "WordSum":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, WordSum):
            out: dict[Word, complex] = {}
            for w1, c1 in self._terms.items():
                for w2, c2 in other._terms.items():
                    w = w1 + w2
                    out[w] = out.get(w, 0) + c1 * c2
            return WordSum(out)
        return WordSum({w: c * other for w, c in self._terms.items()})

    def __rmul__(self, scalar) -> "WordSum":
        return self * scalar

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WordSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def adjoint(self) -> "WordSum":
        swap = {LOWER: RAISE, RAISE: LOWER}
        return WordSum(
            {
                tuple(swap[x] for x in reversed(w)): complex(c).conjugate()
                for w, c in self._terms.items()
            }
        )

    def proportional(self, other: "WordSum") -> complex | None:
        """Scalar s with self == s * other, if one exists (other nonzero)."""
        if other.is_zero():
            return None
        if set(self._terms) != set(other._terms):
            return None
        ratios = {self._terms[w] / other._terms[w] for w in self._terms}
        if len(ratios) != 1:
            return None
        return ratios.pop()

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for w, c in sorted(self._terms.items()):
            word = "*".join(w) if w else "1"
            bits.append(f"({c})*{word}" if c != 1 else word)
        return " + ".join(bits)


class SqmBlock:
    """2x2 matrix with WordSum entries; ordinary matrix algebra."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(tuple(row) for row in entries)
        if len(self.entries) != 2 or any(len(r) != 2 for r in self.entries):
            raise ValueError("block must be 2x2")

    @classmethod
    def zero(cls) -> "SqmBlock":
        z = WordSum.zero()
        return cls([[z, z], [z, z]])

    @classmethod
    def identity(cls) -> "SqmBlock":
        z = WordSum.zero()
        one = WordSum.unit()
        return cls([[one, z], [z, one]])

    def __matmul__(self, other: "SqmBlock") -> "SqmBlock":
        e, f = self.entries, other.entries
        return SqmBlock(
            [
                [e[i][0] * f[0][j] + e[i][1] * f[1][j] for j in range(2)]
                for i in range(2)
            ]
        )

    def __add__(self, other: "SqmBlock") -> "SqmBlock":
        return SqmBlock(
            [[self.entries[i][j] + other.entries[i][j] for j in range(2)] for i in range(2)]
        )

    def __sub__(self, other: "SqmBlock") -> "SqmBlock":
        return self + (-other)

    def __neg__(self) -> "SqmBlock":
        return SqmBlock([[-e for e in row] for row in self.entries])

    def __mul__(self, scalar) -> "SqmBlock":
        return SqmBlock([[e * scalar for e in row] for row in self.entries])

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SqmBlock):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def adjoint(self) -> "SqmBlock":
        e = self.entries
        return SqmBlock([[e[j][i].adjoint() for j in range(2)] for i in range(2)])

    def is_diagonal(self) -> bool:
        return self.entries[0][1].is_zero() and self.entries[1][0].is_zero()

    def is_antidiagonal(self) -> bool:
        return self.entries[0][0].is_zero() and self.entries[1][1].is_zero()

    def proportional(self, other: "SqmBlock") -> complex | None:
        """Scalar s with self == s * other, if one exists (other nonzero)."""
        s: complex | None = None
        for i in range(2):
            for j in range(2):
                a, b = self.entries[i][j], other.entries[i][j]
                if b.is_zero():
                    if not a.is_zero():
                        return None
                    continue
                r = a.proportional(b)
                if r is None or (s is not None and r != s):
                    return None
                s = r
        return s

    def __repr__(self) -> str:
        e = self.entries
        return f"[[{e[0][0]!r}, {e[0][1]!r}], [{e[1][0]!r}, {e[1][1]!r}]]"


def canonical_blocks() -> tuple[SqmBlock, SqmBlock, SqmBlock]:
    """The supercharge, Hamiltonian and involution blocks (Q, H, S).

    Q is antidiagonal with the raising letter on top, H is the diagonal of
    the two letter orderings, S is diag(1, -1).  Q @ Q == H holds as a free
    word-matrix identity, as do {Q, S} == 0 and [H, S] == 0.
    """
    z = WordSum.zero()
    a = WordSum.letter(LOWER)
    ad = WordSum.letter(RAISE)
    q = SqmBlock([[z, ad], [a, z]])
    h = SqmBlock([[ad * a, z], [z, a * ad]])
    s = SqmBlock([[WordSum.unit(1), z], [z, WordSum.unit(-1)]])
    return q, h, s


# ---------------------------------------------------------------------------
# numeric realizations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FockRealization:
    """Truncated harmonic Fock space, superpotential fixed to W(x) = x.

    The lowering letter acts as the standard annihilation operator on levels
    0..cutoff.  Words are realized by walking levels with exact integer
    radicands, so balanced words (such as both diagonal entries of the
    Hamiltonian block) come out as exact integers; matrix elements are the
    untruncated ones, restricted to levels <= cutoff.
    """

    cutoff: int

    def __post_init__(self) -> None:
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")

    @property
    def dim(self) -> int:
        return self.cutoff + 1

    def lowering_matrix(self) -> np.ndarray:
        n = self.dim
        out = np.zeros((n, n))
        for k in range(1, n):
            out[k - 1, k] = math.sqrt(k)
        return out

    def raising_matrix(self) -> np.ndarray:
        return self.lowering_matrix().T

    def _word_matrix(self, word: Word) -> np.ndarray:
        out = np.zeros((self.dim, self.dim))
        for k in range(self.dim):
            lvl, rad = k, 1
            for letter in reversed(word):
                if letter == LOWER:
                    if lvl == 0:
                        rad = 0
                        break
                    rad *= lvl
                    lvl -= 1
                else:
                    lvl += 1
                    rad *= lvl
            if rad == 0 or lvl >= self.dim:
                continue
            r = math.isqrt(rad)
            out[lvl, k] = float(r) if r * r == rad else math.sqrt(rad)
        return out

    def realize_entry(self, ws: WordSum) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for word, coeff in ws.items():
            out += coeff * self._word_matrix(word)
        return out

    def kernel_pair(self) -> tuple[list[np.ndarray], list[np.ndarray]]:
        # Restrict to the domain spanned by levels below the cutoff: the
        # raising operator only fails to be injective at the truncation edge,
        # and that artifact must not count as a zero mode.
        out: list[list[np.ndarray]] = []
        for mat in (self.lowering_matrix(), self.raising_matrix()):
            sub = mat[:, : self.cutoff]
            vecs = _svd_kernel(sub)
            out.append([np.concatenate([v, [0.0]]) for v in vecs])
        return out[0], out[1]

    def describe(self) -> str:
        return f"fock(cutoff={self.cutoff}, W=x)"


@dataclass(frozen=True)
class GridRealization:
    """Finite-difference realization on a symmetric Dirichlet grid.

    The momentum is the central-difference stencil; the lowering matrix is
    (derivative + superpotential)/sqrt(2) and the raising matrix is its
    numeric adjoint.
    """

    points: int
    spacing: float
    w_values: np.ndarray
    w_prime_values: np.ndarray | None = None
    label: str = "W"

    def __post_init__(self) -> None:
        if self.points < 3:
            raise ValueError(f"need at least 3 grid points, got {self.points}")
        if self.spacing <= 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        w = np.asarray(self.w_values, dtype=float)
        if w.shape != (self.points,):
            raise ValueError("w_values must have one value per grid point")
        if not np.all(np.isfinite(w)):
            raise ValueError("superpotential values must be finite")
        w.setflags(write=False)
        object.__setattr__(self, "w_values", w)
        if self.w_prime_values is not None:
            wp = np.asarray(self.w_prime_values, dtype=float)
            if wp.shape != (self.points,) or not np.all(np.isfinite(wp)):
                raise ValueError("w_prime_values must be finite, one per point")
            wp.setflags(write=False)
            object.__setattr__(self, "w_prime_values", wp)

    @classmethod
    def from_function(
        cls,
        points: int,
        spacing: float,
        w: Callable[[np.ndarray], np.ndarray],
        w_prime: Callable[[np.ndarray], np.ndarray] | None = None,
        label: str = "W",
    ) -> "GridRealization":
        x = (np.arange(points) - (points - 1) / 2) * spacing
        return cls(
            points,
            spacing,
            np.asarray(w(x), dtype=float),
            None if w_prime is None else np.asarray(w_prime(x), dtype=float),
            label,
        )

    @property
    def dim(self) -> int:
        return self.points

    @property
    def x(self) -> np.ndarray:
        return (np.arange(self.points) - (self.points - 1) / 2) * self.spacing

    def _derivative(self) -> np.ndarray:
        d = np.zeros((self.points, self.points))
        inv = 1.0 / (2.0 * self.spacing)
        for j in range(self.points - 1):
            d[j, j + 1] = inv
            d[j + 1, j] = -inv
        return d

    def lowering_matrix(self) -> np.ndarray:
        return (self._derivative() + np.diag(self.w_values)) / math.sqrt(2)

    def raising_matrix(self) -> np.ndarray:
        return (-self._derivative() + np.diag(self.w_values)) / math.sqrt(2)

    def realize_entry(self, ws: WordSum) -> np.ndarray:
        mats = {LOWER: self.lowering_matrix(), RAISE: self.raising_matrix()}
        out = np.zeros((self.points, self.points), dtype=np.complex128)
        eye = np.eye(self.points)
        for word, coeff in ws.items():
            m = eye
            for letter in word:
                m = m @ mats[letter]
            out += coeff * m
        return out

    def w_prime(self) -> np.ndarray:
        if self.w_prime_values is not None:
            return self.w_prime_values
        # central difference of the tabulated superpotential, one-sided ends
        wp = np.gradient(self.w_values, self.spacing)
        return wp

    def stencil_hamiltonian(self) -> np.ndarray:
        """Direct discretization of the Hamiltonian block, 2*points total.

        Upper block (p^2 + W^2 - W')/2, lower block (p^2 + W^2 + W')/2, with
        the standard 3-point second-derivative stencil.
        """
        p = self.points
        h2 = self.spacing * self.spacing
        lap = np.zeros((p, p))
        for j in range(p):
            lap[j, j] = -2.0 / h2
            if j > 0:
                lap[j, j - 1] = 1.0 / h2
            if j < p - 1:
                lap[j, j + 1] = 1.0 / h2
        base = 0.5 * (-lap + np.diag(self.w_values**2))
        wp = 0.5 * np.diag(self.w_prime())
        out = np.zeros((2 * p, 2 * p))
        out[:p, :p] = base - wp
        out[p:, p:] = base + wp
        return out

    def kernel_pair(self) -> tuple[list[np.ndarray], list[np.ndarray]]:
        ka = [v for v in _svd_kernel(self.lowering_matrix()) if _is_smooth(v)]
        kd = [v for v in _svd_kernel(self.raising_matrix()) if _is_smooth(v)]
        return ka, kd

    def raw_kernel_pair(self) -> tuple[list[np.ndarray], list[np.ndarray]]:
        """Kernels without the checkerboard-artifact filter."""
        return (
            _svd_kernel(self.lowering_matrix()),
            _svd_kernel(self.raising_matrix()),
        )

    def describe(self) -> str:
        return f"grid(points={self.points}, spacing={self.spacing:g}, W={self.label})"


NumericRealization = FockRealization | GridRealization


def realize(block: SqmBlock, realization: NumericRealization) -> np.ndarray:
    """Substitute numeric ladder matrices into a formal block.

    Block index is the outer tensor slot: the result is 2*dim dimensional
    with the (i, j) word-sum entries realized as dim x dim sub-blocks.
    """
    d = realization.dim
    out = np.zeros((2 * d, 2 * d), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            out[i * d : (i + 1) * d, j * d : (j + 1) * d] = realization.realize_entry(
                block.entries[i][j]
            )
    return out


def ground_state_pair(
    realization: NumericRealization,
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Numeric kernels of the lowering and raising matrices.

    Returns (kernel of A, kernel of Ad) as lists of unit vectors.  Empty
    kernels are valid results; the nonempty side tells which chirality of
    zero-energy state the realization supports.
    """
    return realization.kernel_pair()


def _svd_kernel(mat: np.ndarray) -> list[np.ndarray]:
    _, s, vh = np.linalg.svd(mat)
    tol = KERNEL_REL_TOL * (s[0] if len(s) else 0.0)
    out = []
    for i in range(vh.shape[0]):
        sv = s[i] if i < len(s) else 0.0  # rows past len(s) are exact nulls
        if sv <= tol:
            out.append(vh[i].conj())
    return out


def _is_smooth(v: np.ndarray) -> bool:
    # Central differences admit checkerboard (grid-frequency) kernel vectors
    # that converge weakly to zero, not to a continuum function; they are
    # discretization artifacts, excluded just like the Fock truncation edge.
    d = float(np.sum(np.abs(v[1:] - v[:-1]) ** 2))
    s = float(np.sum(np.abs(v[1:] + v[:-1]) ** 2))
    return s > d
