"""Exact verification engine for built models.

All algebraic checks are exact: Clifford factors are compared through
monomial integer arithmetic and ladder blocks through free word sums, so a
passing check has zero residual by construction, not small residual.  Rank
questions are decided over exact Gaussian-rational arithmetic.  Floating
point appears only where spectra are genuinely numeric.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .clifford import PHASES, MonomialOperator, phase_exponent, proportional
from .grading import DegreeVector, bracket_kind, bracket_sign, dot
from .models import GradedOperator, Model
from .sqm_block import (
    FockRealization,
    NumericRealization,
    SqmBlock,
    ground_state_pair,
    realize,
)

MAX_SPECTRUM_DIM = 1 << 20
MAX_CLOSURE_SIZE = 1 << 18

FOCK_CLUSTER_TOL = 1e-9
GRID_CLUSTER_TOL = 1e-6


class ClosureSizeError(RuntimeError):
    """Operator closure exceeded the configured size guard."""


# ---------------------------------------------------------------------------
# sums of tensor operators and their exact zero test
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorTerm:
    mono: MonomialOperator
    block: SqmBlock


class TensorSum:
    """Formal sum of (monomial x block) tensor operators.

    Supports one question, asked exactly: is the sum the zero operator?
    Rows of the Clifford factors are grouped by their column-collision
    pattern and phase signature, so the number of symbolic block checks is
    tiny regardless of dimension.
    """

    def __init__(self, terms: Iterable[TensorTerm]):
        self.terms = [t for t in terms if not t.block.is_zero()]
        dims = {t.mono.dim for t in self.terms}
        if len(dims) > 1:
            raise ValueError(f"mixed clifford dimensions in tensor sum: {sorted(dims)}")

    def residual(self) -> str | None:
        """None if the sum is exactly zero, else a short description."""
        if not self.terms:
            return None
        k = len(self.terms)
        if k == 1:
            return f"single nonzero term {self.terms[0].block!r}"
        if k == 2:
            return self._residual_pair()
        dim = self.terms[0].mono.dim
        perms = [t.mono.perm for t in self.terms]
        phases = [t.mono.phase for t in self.terms]

        # code[t] = first term index whose column agrees with term t, rowwise
        code = np.empty((k, dim), dtype=np.int8)
        for t in range(k):
            code[t] = t
            for tp in range(t):
                hit = (perms[tp] == perms[t]) & (code[t] == t)
                code[t][hit] = tp

        if (k**k) * (4**k) < (1 << 62):
            sig = np.zeros(dim, dtype=np.int64)
            for t in range(k):
                sig *= k
                sig += code[t]
            for t in range(k):
                sig *= 4
                sig += phases[t]
            _, reps = np.unique(sig, return_index=True)
        else:
            pack = np.concatenate([code, np.stack(phases)]).T
            _, reps = np.unique(pack, axis=0, return_index=True)

        for r in reps:
            groups: dict[int, list[int]] = {}
            for t in range(k):
                groups.setdefault(int(code[t, r]), []).append(t)
            for members in groups.values():
                total = SqmBlock.zero()
                for t in members:
                    total = total + self.terms[t].block * PHASES[int(phases[t][r])]
                if not total.is_zero():
                    return (
                        f"nonzero residual block {total!r} on clifford rows like {int(r)}"
                    )
        return None

    def _residual_pair(self) -> str | None:
        # two terms: either their supports split somewhere (nonzero residual
        # for sure, both blocks being nonzero) or the rowwise condition
        # i**p1 * B1 + i**p2 * B2 = 0 depends only on the phase difference
        t1, t2 = self.terms
        if not np.array_equal(t1.mono.perm, t2.mono.perm):
            return "supports of the two terms do not coincide"
        delta = (t1.mono.phase.astype(np.int16) - t2.mono.phase) % 4
        for d in np.unique(delta):
            total = t1.block * PHASES[int(d)] + t2.block
            if not total.is_zero():
                return f"nonzero residual block {total!r} at phase offset {int(d)}"
        return None

    def is_zero(self) -> bool:
        return self.residual() is None


def graded_bracket_terms(u: GradedOperator, v: GradedOperator) -> list[TensorTerm]:
    """The two tensor terms of the graded bracket of u and v."""
    s = bracket_sign(u.degree, v.degree)
    return [
        TensorTerm(u.clifford @ v.clifford, u.block @ v.block),
        TensorTerm(v.clifford @ u.clifford, (v.block @ u.block) * (-s)),
    ]


# ---------------------------------------------------------------------------
# relation reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairCheck:
    left: str
    right: str
    kind: str
    ok: bool
    residual: str | None = None


@dataclass(frozen=True)
class RelationReport:
    model: str
    check: str
    pair_results: tuple[PairCheck, ...] = ()
    centrality_results: tuple[PairCheck, ...] = ()

    @property
    def overall(self) -> bool:
        return all(p.ok for p in self.pair_results) and all(
            p.ok for p in self.centrality_results
        )

    def failures(self) -> list[PairCheck]:
        return [p for p in (*self.pair_results, *self.centrality_results) if not p.ok]

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "check": self.check,
            "overall": self.overall,
            "pair_results": [asdict(p) for p in self.pair_results],
            "centrality_results": [asdict(p) for p in self.centrality_results],
        }

    def to_markdown(self) -> str:
        rows = [*self.pair_results, *self.centrality_results]
        lines = [
            f"## {self.check} — {self.model}",
            "",
            f"overall: **{'PASS' if self.overall else 'FAIL'}** "
            f"({sum(p.ok for p in rows)}/{len(rows)} checks)",
            "",
        ]
        bad = self.failures()
        if bad:
            lines += ["| left | right | bracket | residual |", "|---|---|---|---|"]
            lines += [f"| {p.left} | {p.right} | {p.kind} | {p.residual} |" for p in bad]
        return "\n".join(lines)


def _run_checks(
    jobs: int, tasks: Sequence[tuple], worker: Callable[[tuple], PairCheck]
) -> tuple[PairCheck, ...]:
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return tuple(pool.map(worker, tasks))
    return tuple(map(worker, tasks))


def check_defining_relations(model: Model, jobs: int = 1) -> RelationReport:
    """Exact check of the graded bracket of every ordered supercharge pair.

    The bracket of a supercharge with itself must be exactly twice the
    Hamiltonian (the same-degree central element is zero by convention);
    distinct pairs must close on the stored central element with the
    degree-dependent phase.  Both orientations of each pair are checked,
    which exercises the antisymmetry convention of the derived accessor.
    """
    degrees = model.odd_degrees

    def worker(pair: tuple[DegreeVector, DegreeVector]) -> PairCheck:
        a, b = pair
        qa, qb = model.supercharge(a), model.supercharge(b)
        terms = graded_bracket_terms(qa, qb)
        if a == b:
            ham = model.hamiltonian
            terms.append(TensorTerm(ham.clifford, ham.block * (-2)))
        else:
            z = model.central(a, b)
            coeff = -2 * PHASES[(1 - dot(a, b)) % 4]
            terms.append(TensorTerm(z.clifford, z.block * coeff))
        res = TensorSum(terms).residual()
        return PairCheck(f"Q[{a}]", f"Q[{b}]", bracket_kind(a, b), res is None, res)

    tasks = [(a, b) for a in degrees for b in degrees]
    return RelationReport(
        model.spec.selector, "defining-relations", pair_results=_run_checks(jobs, tasks, worker)
    )


def _formal_swap_exponent(b1: SqmBlock, b2: SqmBlock) -> int | None:
    """Exponent e with b2 @ b1 == i**e * (b1 @ b2) as free word matrices.

    None when the products vanish or are not proportional; callers then use
    the generic tensor-sum path.
    """
    p12 = b1 @ b2
    p21 = b2 @ b1
    if p12.is_zero() or p21.is_zero():
        return None
    s = p21.proportional(p12)
    if s is None or s not in (1, 1j, -1, -1j, 1 + 0j, -1 + 0j):
        return None
    return phase_exponent(s)


def _batched_vanishing(
    rows: Sequence[GradedOperator], cols: Sequence[GradedOperator], start_from_row: bool
) -> np.ndarray | None:
    """Boolean matrix: does the graded bracket of rows[i] with cols[j] vanish?

    Exact but fast: when the ladder blocks of a pair commute up to a phase,
    the bracket collapses to one monomial comparison with a phase offset,
    vectorized over all column operators at once.  Returns None when any
    pair falls outside that reduction (callers then go pairwise).
    When ``start_from_row`` is set, only j > i entries are computed.
    """
    if not rows or not cols:
        return np.zeros((len(rows), len(cols)), dtype=bool)
    blocks: list[SqmBlock] = []
    block_index: dict[int, int] = {}

    def form_of(op: GradedOperator) -> int:
        for fi, blk in enumerate(blocks):
            if op.block.proportional(blk) is not None:
                return fi
        blocks.append(op.block)
        return len(blocks) - 1

    row_form = [form_of(u) for u in rows]
    col_form = [form_of(v) for v in cols]
    swap: dict[tuple[int, int], int] = {}
    for f in set(row_form):
        for g in set(col_form):
            e = _formal_swap_exponent(blocks[f], blocks[g])
            if e is None:
                return None
            swap[(f, g)] = e

    dim = rows[0].clifford.dim
    pm = np.stack([v.clifford.perm for v in cols])
    ph = np.stack([v.clifford.phase for v in cols]).astype(np.int16)
    row_bits = np.stack([np.array(u.degree.bits, dtype=np.int16) for u in rows])
    col_bits = np.stack([np.array(v.degree.bits, dtype=np.int16) for v in cols])
    dots = (row_bits @ col_bits.T) & 1

    ok = np.zeros((len(rows), len(cols)), dtype=bool)
    for i, u in enumerate(rows):
        j0 = i + 1 if start_from_row else 0
        if j0 >= len(cols):
            continue
        perm_u = u.clifford.perm
        ph_u = u.clifford.phase.astype(np.int16)
        offs = np.array(
            [(2 * dots[i, j] + swap[(row_form[i], col_form[j])]) % 4 for j in range(j0, len(cols))],
            dtype=np.int16,
        )
        pm_v = pm[j0:]
        ph_v = ph[j0:]
        perm_match = (pm_v[:, perm_u] == np.take(perm_u, pm_v)).all(axis=1)
        delta = ph_u[None, :] + ph_v[:, perm_u] - ph_v - np.take(ph_u, pm_v)
        phase_match = ((delta - offs[:, None]) % 4 == 0).all(axis=1)
        ok[i, j0:] = perm_match & phase_match
    return ok


def check_centrality(model: Model, jobs: int = 1) -> RelationReport:
    """Exact vanishing of every bracket involving the Hamiltonian or a
    central element: [H, Q], [H, Z], bracket(Z, Q), bracket(Z, Z').

    Hamiltonian and central-vs-supercharge brackets get one entry per pair;
    the central-vs-central sweep is quadratic in the central count, so its
    results are aggregated into one entry per left element.
    """

    def worker(task: tuple[GradedOperator, GradedOperator]) -> PairCheck:
        u, v = task
        res = TensorSum(graded_bracket_terms(u, v)).residual()
        return PairCheck(
            u.label(), v.label(), bracket_kind(u.degree, v.degree), res is None, res
        )

    ham = model.hamiltonian
    charges = list(model.supercharges.values())
    centrals = list(model.centrals.values())
    results: list[PairCheck] = []
    tasks = [(ham, q) for q in charges] + [(ham, z) for z in centrals]
    results += _run_checks(jobs, tasks, worker)

    zq = _batched_vanishing(centrals, charges, start_from_row=False)
    if zq is None:
        results += _run_checks(jobs, [(z, q) for z in centrals for q in charges], worker)
    else:
        for i, z in enumerate(centrals):
            for j, q in enumerate(charges):
                good = bool(zq[i, j])
                res = None if good else worker((z, q)).residual
                results.append(
                    PairCheck(z.label(), q.label(), bracket_kind(z.degree, q.degree), good, res)
                )

    zz = _batched_vanishing(centrals, centrals, start_from_row=True)
    if zz is None:
        pairs = [
            (centrals[i], centrals[j])
            for i in range(len(centrals))
            for j in range(i + 1, len(centrals))
        ]
        results += _run_checks(jobs, pairs, worker)
    else:
        for i, z in enumerate(centrals[:-1]):
            row = zz[i, i + 1 :]
            if row.all():
                results.append(
                    PairCheck(z.label(), f"{len(row)} later central elements", "graded", True)
                )
            else:
                for j in np.flatnonzero(~row):
                    bad = centrals[i + 1 + int(j)]
                    results.append(worker((z, bad)))
    return RelationReport(
        model.spec.selector, "centrality", centrality_results=tuple(results)
    )


# ---------------------------------------------------------------------------
# exact rank of central subspaces
# ---------------------------------------------------------------------------


def _gaussian_rank(rows: list[tuple[complex, ...]]) -> int:
    """Exact rank over the Gaussian rationals of small constraint matrices."""
    work = [
        [(Fraction(int(z.real)), Fraction(int(z.imag))) for z in row] for row in rows
    ]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(rank, len(work)) if work[r][col] != (0, 0)), None
        )
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pre, pim = work[rank][col]
        norm = pre * pre + pim * pim
        for r in range(len(work)):
            if r == rank or work[r][col] == (0, 0):
                continue
            are, aim = work[r][col]
            # factor = a / p over Q(i)
            fre = (are * pre + aim * pim) / norm
            fim = (aim * pre - are * pim) / norm
            work[r] = [
                (
                    bre - (fre * cre - fim * cim),
                    bim - (fre * cim + fim * cre),
                )
                for (bre, bim), (cre, cim) in zip(work[r], work[rank])
            ]
        rank += 1
        if rank == len(work):
            break
    return rank


def monomial_set_rank(monos: Sequence[MonomialOperator]) -> int:
    """Exact rank of the span of a set of monomial operators.

    A vanishing combination must vanish entrywise; grouping matrix rows by
    column collisions and phases yields a small exact constraint system for
    the coefficients, whose rank equals the rank of the span.
    """
    k = len(monos)
    if k == 0:
        return 0
    if k == 1:
        return 1
    dim = monos[0].dim
    # A term owning any uncontested matrix position cannot take part in a
    # vanishing combination; split such terms off and recurse on the
    # contested remainder, which is tiny for all model families.
    keys = np.empty((k, dim), dtype=np.int64)
    rows = np.arange(dim, dtype=np.int64) * dim
    for t, m in enumerate(monos):
        keys[t] = rows + m.perm
    flat = keys.ravel()
    uniq, counts = np.unique(flat, return_counts=True)
    per_key = counts[np.searchsorted(uniq, flat)].reshape(k, dim)
    private = np.any(per_key == 1, axis=1)
    if private.all():
        return k
    if private.any():
        rest = [m for t, m in enumerate(monos) if not private[t]]
        return int(private.sum()) + monomial_set_rank(rest)

    perms = np.stack([m.perm for m in monos])
    phases = np.stack([m.phase for m in monos]).astype(np.int64)
    code = np.empty_like(perms, dtype=np.int64)
    for t in range(k):
        code[t] = t
        for tp in range(t):
            hit = (perms[tp] == perms[t]) & (code[t] == t)
            code[t][hit] = tp

    constraints: set[tuple[complex, ...]] = set()
    pack = np.concatenate([code, phases]).T
    _, reps = np.unique(pack, axis=0, return_index=True)
    for r in reps:
        groups: dict[int, list[int]] = {}
        for t in range(k):
            groups.setdefault(int(code[t, r]), []).append(t)
        for members in groups.values():
            row = [0j] * k
            for t in members:
                row[t] = PHASES[int(phases[t, r])]
            constraints.add(tuple(row))
    return _gaussian_rank(sorted(constraints, key=str))


@dataclass(frozen=True)
class DegreeRankEntry:
    degree: str
    elements: tuple[str, ...]
    rank: int
    classes: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class RankReport:
    model: str
    entries: tuple[DegreeRankEntry, ...]
    total_count: int
    total_rank: int | None
    all_independent: bool | None

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "entries": [asdict(e) for e in self.entries],
            "total_count": self.total_count,
            "total_rank": self.total_rank,
            "all_independent": self.all_independent,
        }

    def to_markdown(self) -> str:
        lines = [
            f"## central-rank — {self.model}",
            "",
            "| degree | elements | rank | proportionality classes |",
            "|---|---|---|---|",
        ]
        for e in self.entries:
            classes = "; ".join("{" + ", ".join(c) + "}" for c in e.classes)
            lines.append(
                f"| {e.degree} | {len(e.elements)} | {e.rank} | {classes} |"
            )
        if self.total_rank is not None:
            lines += [
                "",
                f"total: rank {self.total_rank} of {self.total_count} central elements"
                f" ({'all independent' if self.all_independent else 'dependencies present'})",
            ]
        return "\n".join(lines)


def _fold_block_scalars(
    ops: Sequence[GradedOperator], base: SqmBlock
) -> list[MonomialOperator] | None:
    """Scale clifford factors so all blocks equal ``base``; None if blocks differ."""
    out = []
    for z in ops:
        s = z.block.proportional(base)
        if s is None:
            return None
        out.append(z.clifford.scale(phase_exponent(s)))
    return out


def central_rank(model: Model) -> RankReport:
    """Group central elements by degree and rank each span exactly.

    Within a degree group all ladder blocks share one form, so block
    scalars fold into the Clifford factors and the rank question reduces to
    exact monomial linear algebra.  A model-wide rank is also computed when
    every block shares the same form (all product families).
    """
    groups: dict[DegreeVector, list[GradedOperator]] = {}
    for z in model.centrals.values():
        groups.setdefault(z.degree, []).append(z)

    entries = []
    for degree, zs in groups.items():
        monos = _fold_block_scalars(zs, zs[0].block)
        if monos is None:
            raise NotImplementedError(
                f"central elements of degree {degree} have non-proportional blocks"
            )
        labels = [z.label() for z in zs]
        # proportionality classes by exact pairwise comparison
        class_of = list(range(len(monos)))
        for i in range(len(monos)):
            if class_of[i] != i:
                continue
            for j in range(i + 1, len(monos)):
                if class_of[j] == j and proportional(monos[i], monos[j]) is not None:
                    class_of[j] = i
        classes: dict[int, list[str]] = {}
        for j, c in enumerate(class_of):
            classes.setdefault(c, []).append(labels[j])
        entries.append(
            DegreeRankEntry(
                str(degree),
                tuple(labels),
                monomial_set_rank(monos),
                tuple(tuple(c) for c in classes.values()),
            )
        )

    all_z = list(model.centrals.values())
    total_rank = None
    all_independent = None
    if all_z:
        folded = _fold_block_scalars(all_z, all_z[0].block)
        if folded is not None:
            total_rank = monomial_set_rank(folded)
            all_independent = total_rank == len(all_z)
    return RankReport(
        model.spec.selector, tuple(entries), len(all_z), total_rank, all_independent
    )


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenCluster:
    value: float
    multiplicity: int


@dataclass(frozen=True)
class SpectrumReport:
    model: str
    realization: str
    tolerance: float
    total_dim: int
    clusters: tuple[EigenCluster, ...]
    excluded: tuple[EigenCluster, ...]
    zero_modes: int
    artifact_modes: int
    expected_zero: int
    expected_excited: int
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d

    def to_markdown(self) -> str:
        lines = [
            f"## spectrum — {self.model} on {self.realization}",
            "",
            f"zero modes: {self.zero_modes}"
            + (f" (+{self.artifact_modes} discretization artifacts excluded)" if self.artifact_modes else ""),
            f"expected: zero multiplicity {self.expected_zero}, excited multiplicity {self.expected_excited}",
            "",
            "| energy | multiplicity |",
            "|---|---|",
        ]
        lines += [f"| {c.value:.9g} | {c.multiplicity} |" for c in self.clusters]
        if self.excluded:
            lines += ["", "truncation-excluded clusters: " + ", ".join(
                f"{c.value:.6g} (x{c.multiplicity})" for c in self.excluded
            )]
        lines += ["", f"result: **{'PASS' if self.ok else 'FAIL'}**"]
        lines += [f"- {p}" for p in self.problems]
        return "\n".join(lines)


def _cluster(values: np.ndarray, tol: float) -> list[EigenCluster]:
    clusters: list[EigenCluster] = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > tol * max(1.0, abs(values[i])):
            chunk = values[start:i]
            clusters.append(EigenCluster(float(np.mean(chunk)), len(chunk)))
            start = i
    return clusters


def spectrum(model: Model, realization: NumericRealization) -> SpectrumReport:
    """Assemble the numeric Hamiltonian, cluster eigenvalues, count modes.

    The expected pattern for every family is the one its ground-state and
    degeneracy statements specialize to on these realizations: the zero
    cluster is absent or clifford-dim fold, every reported excited cluster
    is (2 x clifford dim) fold.  Fock clusters must sit on integers; levels
    at or above the cutoff are truncation-affected and excluded.
    """
    cliffdim = model.clifford_dim
    total = cliffdim * 2 * realization.dim
    if total > MAX_SPECTRUM_DIM:
        raise ValueError(
            f"numeric dimension {total} exceeds guard {MAX_SPECTRUM_DIM}; "
            "reduce the cutoff or grid size"
        )
    is_fock = isinstance(realization, FockRealization)
    tol = FOCK_CLUSTER_TOL if is_fock else GRID_CLUSTER_TOL

    hnum = np.kron(
        model.hamiltonian.clifford.to_dense(),
        realize(model.hamiltonian.block, realization),
    )
    evals = np.linalg.eigvalsh(hnum)
    all_clusters = _cluster(evals, tol)

    kernel_a, kernel_ad = ground_state_pair(realization)
    physical = len(kernel_a) + len(kernel_ad)
    artifact_modes = 0
    if not is_fock:
        raw_a, raw_ad = realization.raw_kernel_pair()
        artifact_modes = cliffdim * (len(raw_a) + len(raw_ad) - physical)
    zero_modes = cliffdim * physical

    clusters, excluded = [], []
    if is_fock:
        # levels at or above the cutoff are truncation-affected
        edge = realization.cutoff - 0.5
    else:
        # the upper part of the lattice band is not discretization-faithful
        edge = 0.25 * float(evals[-1])
    for c in all_clusters:
        (excluded if c.value > edge else clusters).append(c)

    expected_zero = cliffdim if physical else 0
    expected_excited = 2 * cliffdim
    # Central differences pair every nonzero eigenvalue of one diagonal block
    # with an exactly equal doubler eigenvalue of the other (checkerboard
    # symmetry composed with the singular-value pairing), so raw grid
    # multiplicities carry an exact factor 2 of discretization artifacts.
    lattice_copies = 1 if is_fock else 2
    problems: list[str] = []
    if physical > 1:
        problems.append(
            f"both ladder kernels nonempty ({len(kernel_a)}, {len(kernel_ad)}); "
            "zero modes should come from one chirality only"
        )
    for c in clusters:
        if abs(c.value) <= tol:
            want = expected_zero + artifact_modes
            if c.multiplicity != want:
                problems.append(
                    f"zero cluster multiplicity {c.multiplicity}, expected {want}"
                )
        else:
            if c.multiplicity != expected_excited * lattice_copies:
                problems.append(
                    f"cluster at {c.value:.6g} has multiplicity {c.multiplicity}, "
                    f"expected {expected_excited * lattice_copies}"
                )
            if is_fock and abs(c.value - round(c.value)) > tol:
                problems.append(f"cluster at {c.value!r} is not integer-valued")
    if expected_zero and not any(abs(c.value) <= tol for c in clusters):
        problems.append("expected a zero cluster but found none")

    return SpectrumReport(
        model.spec.selector,
        realization.describe(),
        tol,
        total,
        tuple(clusters),
        tuple(excluded),
        zero_modes,
        artifact_modes,
        expected_zero,
        expected_excited,
        tuple(problems),
    )


# ---------------------------------------------------------------------------
# orbits and operator closure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitReport:
    model: str
    num_nodes: int
    component_sizes: tuple[int, ...]

    @property
    def num_components(self) -> int:
        return len(self.component_sizes)

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "num_nodes": self.num_nodes,
            "num_components": self.num_components,
            "component_sizes": list(self.component_sizes),
        }

    def to_markdown(self) -> str:
        sizes = ", ".join(str(s) for s in self.component_sizes)
        return (
            f"## orbits — {self.model}\n\n"
            f"{self.num_components} component(s) over {self.num_nodes} tensor-basis lines: sizes [{sizes}]"
        )


def orbit_decomposition(model: Model) -> OrbitReport:
    """Connected components of the tensor-basis lines under the supercharges.

    Every supercharge maps a basis line to a single basis line (monomial
    Clifford factor, antidiagonal block), so reducibility questions about a
    fixed eigenspace become connectivity questions on an index graph.
    """
    cliffdim = model.clifford_dim
    n_nodes = 2 * cliffdim
    parent = list(range(n_nodes))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    for q in model.supercharges.values():
        if not q.block.is_antidiagonal():
            raise ValueError(f"{q.label()} has a non-antidiagonal block")
        perm = q.clifford.perm
        for r in range(cliffdim):
            c = int(perm[r])
            union(2 * r, 2 * c + 1)
            union(2 * r + 1, 2 * c)

    sizes: dict[int, int] = {}
    for i in range(n_nodes):
        sizes[find(i)] = sizes.get(find(i), 0) + 1
    return OrbitReport(
        model.spec.selector, n_nodes, tuple(sorted(sizes.values(), reverse=True))
    )


def _block_pattern(block: SqmBlock) -> tuple[int, int]:
    """Quotient-group class of a single-word 2x2 block, modulo phase.

    First bit: antidiagonal.  Second bit: relative sign of the two nonzero
    entries.  Multiplication of such blocks XORs the bits, which is all the
    closure count needs once overall phases are dropped.
    """
    e = block.entries
    if block.is_antidiagonal():
        anti, pair = 1, (e[0][1], e[1][0])
    elif block.is_diagonal():
        anti, pair = 0, (e[0][0], e[1][1])
    else:
        raise ValueError(f"block is neither diagonal nor antidiagonal: {block!r}")
    coeffs = []
    for ws in pair:
        terms = list(ws.items())
        if len(terms) != 1:
            raise ValueError(f"block entry {ws!r} is not a single word")
        coeffs.append(terms[0][1])
    ratio = coeffs[0] / coeffs[1]
    if ratio == 1:
        return (anti, 0)
    if ratio == -1:
        return (anti, 1)
    raise ValueError(f"block entries have non-real ratio {ratio!r}")


def _closure_key(mono: MonomialOperator, pattern: tuple[int, int]) -> bytes:
    rel = ((mono.phase - mono.phase[0]) % 4).astype(np.int8)
    h = hashlib.blake2b(digest_size=16)
    h.update(mono.perm.tobytes())
    h.update(rel.tobytes())
    return h.digest() + bytes(pattern)


def count_generated_operators(model: Model, limit: int = MAX_CLOSURE_SIZE) -> int:
    """Size of the supercharge-generated operator set, counted up to scalars.

    Elements are classes (Clifford factor up to phase, block pattern in the
    four-element quotient of the block group); products are taken until the
    set closes.  Raises ClosureSizeError beyond ``limit`` elements.
    """
    gens = [
        (q.clifford, _block_pattern(q.block)) for q in model.supercharges.values()
    ]
    ident = (MonomialOperator.identity(model.clifford_dim), (0, 0))
    seen = {_closure_key(*ident)}
    frontier = [ident]
    while frontier:
        new: list[tuple[MonomialOperator, tuple[int, int]]] = []
        for mono, pat in frontier:
            for gm, gp in gens:
                cand = (mono @ gm, (pat[0] ^ gp[0], pat[1] ^ gp[1]))
                key = _closure_key(*cand)
                if key not in seen:
                    seen.add(key)
                    new.append(cand)
                    if len(seen) > limit:
                        raise ClosureSizeError(
                            f"operator closure exceeded {limit} elements for "
                            f"{model.spec.selector}"
                        )
        frontier = new
    return len(seen)


def report_to_json(report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True)
