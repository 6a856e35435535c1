import math

import numpy as np
import pytest

from graded_sqm.sqm_block import (
    LOWER,
    RAISE,
    FockRealization,
    GridRealization,
    SqmBlock,
    WordSum,
    canonical_blocks,
    ground_state_pair,
    realize,
)


class TestWordSum:
    def test_words_are_free(self):
        a = WordSum.letter(LOWER)
        ad = WordSum.letter(RAISE)
        assert a * ad != ad * a
        assert (a * ad) - (a * ad) == WordSum.zero()

    def test_scalars_and_sums(self):
        a = WordSum.letter(LOWER)
        s = 2 * a + a * 1j
        assert s == a * (2 + 1j)
        assert (s - s).is_zero()

    def test_adjoint_reverses_and_swaps(self):
        a = WordSum.letter(LOWER)
        ad = WordSum.letter(RAISE)
        w = (a * a * ad) * 1j
        assert w.adjoint() == (a * ad * ad) * (-1j)
        assert w.adjoint().adjoint() == w

    def test_proportional(self):
        a = WordSum.letter(LOWER)
        ad = WordSum.letter(RAISE)
        w = a * ad + 2 * ad
        assert w.proportional(w * (-1j)) == 1j
        assert w.proportional(a * ad) is None


class TestCanonicalBlocks:
    def test_square_of_charge_is_hamiltonian(self):
        q, h, s = canonical_blocks()
        assert q @ q == h

    def test_involution_relations(self):
        q, h, s = canonical_blocks()
        assert (q @ s + s @ q).is_zero()
        assert (h @ s - s @ h).is_zero()
        assert s @ s == SqmBlock.identity()

    def test_formal_hermiticity(self):
        q, h, s = canonical_blocks()
        assert q.adjoint() == q
        assert h.adjoint() == h
        assert s.adjoint() == s
        iqs = (q @ s) * 1j
        assert iqs.adjoint() == iqs
        assert iqs @ iqs == h

    def test_diagonal_patterns(self):
        q, h, s = canonical_blocks()
        assert q.is_antidiagonal()
        assert h.is_diagonal()
        assert s.is_diagonal()


def fock_dense_oracle(cutoff, word):
    """Independent oracle: dense ladder matrices at a padded dimension,
    truncated back after the product."""
    pad = cutoff + 1 + len(word)
    low = np.zeros((pad, pad))
    for k in range(1, pad):
        low[k - 1, k] = math.sqrt(k)
    mats = {LOWER: low, RAISE: low.T}
    out = np.eye(pad)
    for letter in word:
        out = out @ mats[letter]
    return out[: cutoff + 1, : cutoff + 1]


class TestFockRealization:
    def test_hamiltonian_diagonal_exact(self):
        q, h, s = canonical_blocks()
        got = realize(h, FockRealization(4))
        want = np.diag([0, 1, 2, 3, 4, 1, 2, 3, 4, 5]).astype(complex)
        assert np.array_equal(got, want)

    def test_entry_against_padded_dense_oracle(self):
        r = FockRealization(5)
        for word in [(RAISE, LOWER), (LOWER, RAISE), (LOWER,), (RAISE, RAISE, LOWER)]:
            got = r.realize_entry(WordSum({word: 1}))
            assert got == pytest.approx(fock_dense_oracle(5, word), abs=1e-12)

    def test_involution_realization(self):
        _, _, s = canonical_blocks()
        got = realize(s, FockRealization(3))
        assert np.array_equal(got, np.diag([1, 1, 1, 1, -1, -1, -1, -1]).astype(complex))

    def test_charge_square_at_cutoff_one(self):
        # 4x4 case is exact: all ladder entries are 0 or 1; agreement holds
        # on the level-0 rows and columns of both blocks, the truncation
        # edge (top level of the lower block) differs by construction
        q, h, _ = canonical_blocks()
        r = FockRealization(1)
        sq = realize(q, r) @ realize(q, r)
        hn = realize(h, r)
        assert np.array_equal(sq, np.diag([0, 1, 1, 0]).astype(complex))
        assert np.array_equal(hn, np.diag([0, 1, 1, 2]).astype(complex))
        below = np.ix_([0, 2], [0, 2])
        assert np.array_equal(sq[below], hn[below])

    def test_charge_square_below_cutoff(self):
        q, h, _ = canonical_blocks()
        r = FockRealization(6)
        qn = realize(q, r)
        hn = realize(h, r)
        # on levels below the cutoff the square matches the Hamiltonian
        # (up to float rounding in sqrt(k)**2)
        sub = [k for k in range(6)] + [7 + k for k in range(6)]
        assert (qn @ qn)[np.ix_(sub, sub)] == pytest.approx(hn[np.ix_(sub, sub)], abs=1e-12)
        # the truncation edge (top level of the lower block) differs
        assert abs((qn @ qn)[13, 13] - hn[13, 13]) > 1

    def test_charge_hermitian(self):
        q, _, _ = canonical_blocks()
        qn = realize(q, FockRealization(5))
        assert np.array_equal(qn, qn.conj().T)

    def test_ground_states(self):
        ka, kd = ground_state_pair(FockRealization(6))
        assert (len(ka), len(kd)) == (1, 0)
        vac = np.zeros(7)
        vac[0] = 1.0
        assert abs(abs(np.dot(ka[0], vac)) - 1.0) < 1e-12

    def test_cutoff_guard(self):
        with pytest.raises(ValueError):
            FockRealization(0)


def make_grid(points=201, spacing=0.05, w=lambda x: x, wp=lambda x: np.ones_like(x)):
    return GridRealization.from_function(points, spacing, w, wp)


class TestGridRealization:
    def test_finite_w_guard(self):
        with pytest.raises(ValueError):
            GridRealization(5, 0.1, np.array([0.0, 1.0, np.inf, 1.0, 0.0]))
        with pytest.raises(ValueError):
            GridRealization(5, -0.1, np.zeros(5))

    def test_charge_hermitian(self):
        q, _, _ = canonical_blocks()
        qn = realize(q, make_grid(51))
        assert np.allclose(qn, qn.conj().T, atol=0)

    def test_ground_states_harmonic(self):
        r = make_grid()
        ka, kd = ground_state_pair(r)
        assert (len(ka), len(kd)) == (1, 0)
        ref = np.exp(-r.x**2 / 2)
        ref /= np.linalg.norm(ref)
        assert abs(np.dot(ka[0], ref)) > 0.999

    def test_ground_states_sign_flipped(self):
        # flipping the superpotential sign moves the kernel to the raising side
        r = make_grid(w=lambda x: -x, wp=lambda x: -np.ones_like(x))
        ka, kd = ground_state_pair(r)
        assert (len(ka), len(kd)) == (0, 1)
        ref = np.exp(-r.x**2 / 2)
        ref /= np.linalg.norm(ref)
        assert abs(np.dot(kd[0], ref)) > 0.999

    def test_ground_states_cubic(self):
        r = make_grid(w=lambda x: x**3, wp=lambda x: 3 * x**2)
        ka, kd = ground_state_pair(r)
        assert (len(ka), len(kd)) == (1, 0)
        ref = np.exp(-r.x**4 / 4)
        ref /= np.linalg.norm(ref)
        assert abs(np.dot(ka[0], ref)) > 0.999

    def test_raw_kernels_carry_checkerboard_artifact(self):
        r = make_grid()
        raw_a, raw_ad = r.raw_kernel_pair()
        # one physical mode plus one grid-frequency artifact overall
        assert (len(raw_a), len(raw_ad)) == (1, 1)

    def test_charge_square_converges_to_stencil(self):
        q, _, _ = canonical_blocks()
        errs = []
        for points, spacing in ((201, 10.0 / 200), (401, 10.0 / 400)):
            r = GridRealization.from_function(
                points, spacing, lambda x: x**3, lambda x: 3 * x**2
            )
            qn = realize(q, r)
            diff = qn @ qn - r.stencil_hamiltonian()
            x = r.x
            f = np.exp(-(x**2))
            smooth = np.concatenate([f, f])
            err = np.abs(diff @ smooth)
            p = points
            interior = np.concatenate(
                [np.arange(p // 4, 3 * p // 4), p + np.arange(p // 4, 3 * p // 4)]
            )
            errs.append(err[interior].max())
        ratio = errs[0] / errs[1]
        # central differences: second-order stencil
        assert 3.0 < ratio < 5.0

    def test_w_prime_fallback(self):
        x = (np.arange(101) - 50) * 0.1
        r = GridRealization(101, 0.1, x**2)
        got = r.w_prime()
        # central differences are exact on quadratics away from the ends
        assert got[1:-1] == pytest.approx(2 * x[1:-1], abs=1e-9)
        assert got == pytest.approx(2 * x, abs=0.11)
