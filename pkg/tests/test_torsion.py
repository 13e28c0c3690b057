"""Involutions, the index set, torsion polynomials, and reductions."""

import random

import pytest

from charlocus import (
    GradedPoly,
    InputError,
    Permutation,
    SchurIndex,
    Z,
    decompose_S_ell,
    index_set_J,
    involution_P,
    involution_R,
    mod2_reduce,
    parse_class,
    psi_embedding,
    q_class,
    real_reduce,
    schur_z,
    schur_z2,
    torsion_polynomial,
    universal_pontryagin_class,
    universal_sw_class,
    verify_615,
    w_ring,
    w_sigma,
)
from charlocus.torsion import all_permutations


def perm(*images):
    return Permutation(tuple(images))


class TestInvolutionR:
    def test_identity_fixed(self):
        for ell in range(1, 6):
            e = Permutation.identity(ell)
            assert involution_R(e) == e

    def test_transposition_ell3(self):
        # R((12)) = tau (12) tau = (23) in S_3, computed by hand
        s = perm(2, 1, 3)
        assert involution_R(s) == perm(1, 3, 2)

    def test_involution_random(self):
        rng = random.Random(3)
        for _ in range(200):
            ell = rng.randint(1, 7)
            images = list(range(1, ell + 1))
            rng.shuffle(images)
            s = Permutation(tuple(images))
            assert involution_R(involution_R(s)) == s


class TestInvolutionP:
    def test_identity_fixed(self):
        e = Permutation.identity(4)
        assert involution_P(e) == e

    def test_swap_ell2(self):
        s = perm(2, 1)
        assert involution_P(s) == s

    def test_involution_random(self):
        rng = random.Random(5)
        for _ in range(200):
            ell = rng.choice([2, 4, 6])
            images = list(range(1, ell + 1))
            rng.shuffle(images)
            s = Permutation(tuple(images))
            assert involution_P(involution_P(s)) == s

    def test_odd_rejected(self):
        with pytest.raises(InputError):
            involution_P(perm(1, 2, 3))


class TestPsiEmbedding:
    def test_identity(self):
        assert psi_embedding(Permutation.identity(2)) == Permutation.identity(4)

    def test_swap(self):
        # (12) in S_2 doubles to (13)(24) in S_4
        assert psi_embedding(perm(2, 1)) == perm(3, 4, 1, 2)

    @pytest.mark.parametrize("ell", [2, 4, 6, 8])
    def test_image_characterization(self, ell):
        # the image is exactly the P-fixed parity-preserving permutations
        image = {psi_embedding(eta) for eta in all_permutations(ell // 2)}
        predicate = {
            s for s in all_permutations(ell)
            if involution_P(s) == s and all(s(i) % 2 == i % 2 for i in range(1, ell + 1))
        }
        assert image == predicate


class TestIndexSet:
    def test_j1(self):
        assert index_set_J(1) == (Permutation.identity(1),)

    def test_j2(self):
        assert index_set_J(2) == (perm(2, 1),)

    def test_j3(self):
        js = index_set_J(3)
        assert len(js) == 4
        assert set(js) == {perm(1, 2, 3), perm(2, 3, 1), perm(3, 1, 2), perm(3, 2, 1)}


class TestDecomposition:
    def test_ell2(self):
        split = decompose_S_ell(2)
        assert split.psi_image == (Permutation.identity(2),)
        assert split.j_set == (perm(2, 1),)
        assert split.k_r == ()
        assert split.k_p == ()

    def test_ell4_counts(self):
        split = decompose_S_ell(4)
        assert sum(len(p) for p in split.all_parts()) == 24

    @pytest.mark.parametrize("ell", [2, 4, 6])
    def test_partition_and_fixed_point_freeness(self, ell):
        split = decompose_S_ell(ell)
        parts = split.all_parts()
        union = set().union(*map(set, parts))
        assert len(union) == sum(len(p) for p in parts)  # pairwise disjoint
        assert union == set(all_permutations(ell))       # exhaustive
        for s in split.k_r:
            r = involution_R(s)
            assert r != s and r in set(split.k_r)
        for s in split.k_p:
            p = involution_P(s)
            assert p != s and p in set(split.k_p)

    def test_odd_or_large_rejected(self):
        with pytest.raises(InputError):
            decompose_S_ell(3)
        with pytest.raises(InputError):
            decompose_S_ell(12)


class TestProofCombinatorics:
    @pytest.mark.parametrize("ell", [1, 2, 3, 4, 5, 6])
    def test_w_invariant_under_R(self, ell):
        for r in (ell % 2 + 1, ell % 2 + 3):
            ring = w_ring(r + ell - 1, cap=ell * (r + ell))
            for s in all_permutations(ell):
                assert w_sigma(involution_R(s), r, ring) == w_sigma(s, r, ring)

    @pytest.mark.parametrize("ell", [2, 4, 6, 8])
    def test_R_and_P_commute(self, ell):
        for s in all_permutations(ell):
            assert involution_R(involution_P(s)) == involution_P(involution_R(s))

    @pytest.mark.parametrize("ell", [2, 4, 6])
    def test_leftover_sums_vanish(self, ell):
        split = decompose_S_ell(ell)
        r = ell  # any shift of the right parity works here
        ring = w_ring(r + ell, cap=2 * ell * r)
        for part in (split.k_r, split.k_p):
            total = GradedPoly.zero(ring)
            for s in part:
                total = total + w_sigma(s, r, ring)
            assert total.is_zero()


class TestSubsetCharacterization:
    """The index set can equally be described by entry subsets of the
    shifted matrix: one entry per row and column, symmetric under
    reflection in the antidiagonal, and (even ell) off the parity
    pattern.  Both routes must produce the same permutations and the same
    polynomial."""

    @staticmethod
    def _entry_set(s):
        return frozenset((i, s(i)) for i in range(1, s.size + 1))

    @staticmethod
    def _antidiagonal_reflection(cells, ell):
        return frozenset((ell + 1 - j, ell + 1 - i) for i, j in cells)

    @pytest.mark.parametrize("ell", [1, 2, 3, 4, 5, 6])
    def test_symmetric_subsets_are_the_index_set(self, ell):
        chosen = []
        for s in all_permutations(ell):
            cells = self._entry_set(s)
            if cells != self._antidiagonal_reflection(cells, ell):
                continue
            if ell % 2 == 0 and not any((i - j) % 2 for i, j in cells):
                continue
            chosen.append(s)
        assert tuple(chosen) == index_set_J(ell)

    def test_reflected_entry_set_is_R(self):
        rng = random.Random(29)
        for _ in range(100):
            ell = rng.randint(1, 7)
            images = list(range(1, ell + 1))
            rng.shuffle(images)
            s = Permutation(tuple(images))
            reflected = self._antidiagonal_reflection(self._entry_set(s), ell)
            assert reflected == self._entry_set(involution_R(s))

    @pytest.mark.parametrize("ell,r", [(1, 3), (2, 2), (3, 3), (4, 4), (5, 5)])
    def test_subset_route_rebuilds_the_polynomial(self, ell, r):
        # independent reconstruction: per chosen subset, multiply the matrix
        # entries w_(r+i-j) directly and reduce mod 2 in w-variables
        t = torsion_polynomial(ell, r)
        ring = mod2_reduce(t).presentation
        total = GradedPoly.zero(ring)
        for s in all_permutations(ell):
            cells = self._entry_set(s)
            if cells != self._antidiagonal_reflection(cells, ell):
                continue
            if ell % 2 == 0 and not any((i - j) % 2 for i, j in cells):
                continue
            term = GradedPoly.one(ring)
            for i, j in sorted(cells):
                k = r + i - j
                if k < 0:
                    term = GradedPoly.zero(ring)
                    break
                if k > 0:
                    term = term * GradedPoly.gen(ring, f"w{k}")
            total = total + term
        assert total == mod2_reduce(t)


class TestAntidiagonalSplit:
    """Index multiset structure behind the even-multiplicity guarantee:
    entries off the antidiagonal pair up with equal value, and antidiagonal
    entries carry odd value (so only odd W symbols survive unsquared)."""

    @pytest.mark.parametrize("ell,r", [(2, 2), (3, 3), (4, 4), (5, 5), (6, 6), (3, 1)])
    def test_unpaired_indices_are_odd(self, ell, r):
        for s in index_set_J(ell):
            diagonal = [i for i in range(1, ell + 1) if i + s(i) == ell + 1]
            assert len(diagonal) % 2 == ell % 2
            for i in diagonal:
                assert (r + i - s(i)) % 2 == 1
            off = [i for i in range(1, ell + 1) if i + s(i) != ell + 1]
            partner = {i: ell + 1 - s(i) for i in off}
            for i in off:
                j = partner[i]
                assert j != i and j in partner
                assert r + i - s(i) == r + j - s(j)


class TestTorsionPolynomial:
    def test_single_row(self):
        for r in (1, 3, 5):
            t = torsion_polynomial(1, r)
            ring = t.torsion_part.presentation
            assert t.free_part.is_zero()
            assert t.torsion_part == GradedPoly.gen(ring, f"W{r}")

    @pytest.mark.parametrize("r", [2, 4, 6, 8])
    def test_two_rows(self, r):
        t = torsion_polynomial(2, r)
        ring = t.torsion_part.presentation
        if r == 2:
            expected = parse_class("W1*W3", ring)
        else:
            expected = parse_class(f"W{r-1}*W{r+1}", ring)
        assert t.torsion_part == expected

    def test_three_three(self):
        t = torsion_polynomial(3, 3)
        ring = t.torsion_part.presentation
        assert t.torsion_part == parse_class("p1*W5 + p2*W1 + W3^3 + W1*W3*W5", ring)

    def test_out_of_range_convention(self):
        # negative indices kill the term, index zero contributes 1
        t = torsion_polynomial(3, 1)
        ring = t.torsion_part.presentation
        assert t.torsion_part == parse_class("W1^3 + W3", ring)

    def test_parity_rejected(self):
        with pytest.raises(InputError):
            torsion_polynomial(2, 3)
        with pytest.raises(InputError):
            torsion_polynomial(3, -1)

    def test_homogeneity_and_odd_factor(self):
        for ell in range(1, 6):
            for r in range(ell % 2 or 2, 8, 2):
                t = torsion_polynomial(ell, r)
                ring = t.torsion_part.presentation
                w_slots = [i for i, g in enumerate(ring.generators)
                           if g.name.startswith("W")]
                for mono, _ in t.torsion_part.terms:
                    assert ring.degree_of(mono) == ell * r
                    odd_count = sum(mono[i] for i in w_slots)
                    assert odd_count >= 1
                    # odd ell -> odd number of odd-W factors; even -> even
                    assert odd_count % 2 == ell % 2


class TestQClass:
    @pytest.mark.parametrize("r", [2, 4, 6, 8])
    def test_ell2(self, r):
        q = q_class(2, r)
        r0 = r // 2
        assert q.free_part == GradedPoly.gen(q.free_part.presentation, f"p{r0}", field=Z)
        assert q.torsion_part == parse_class(
            f"W{r-1}*W{r+1}" if r > 2 else "W1*W3", q.torsion_part.presentation)

    def test_ell3(self):
        q = q_class(3, 3)
        assert q.free_part.is_zero()
        assert q.torsion_part == parse_class(
            "p1*W5 + p2*W1 + W3^3 + W1*W3*W5", q.torsion_part.presentation)

    def test_ell4(self):
        q = q_class(4, 4)
        assert q.free_part == parse_class("p2^2 + -1*p1*p3", q.free_part.presentation,
                                          field=Z)
        expected = parse_class(
            "p1*W5*W7 + p2*W3*W5 + p2*W1*W7 + p3*W1*W3"
            " + W1*W3*W5*W7 + W1*W5^3 + W3^3*W7 + W3^2*W5^2",
            q.torsion_part.presentation)
        assert q.torsion_part == expected

    def test_ell1_is_single_class(self):
        for r in (1, 3, 5, 7):
            q = q_class(1, r)
            assert q.free_part.is_zero()
            assert q.torsion_part == GradedPoly.gen(
                q.torsion_part.presentation, f"W{r}")

    def test_parity_rejected(self):
        with pytest.raises(InputError):
            q_class(4, 3)


class TestReductions:
    def test_mod2_of_q22(self):
        reduced = mod2_reduce(q_class(2, 2))
        ring = reduced.presentation
        assert reduced == parse_class("w2^2 + w1*w3", ring)
        assert reduced == schur_z2(universal_sw_class(ring), SchurIndex(2, 2))

    def test_mod2_of_zero(self):
        t = torsion_polynomial(2, 0)
        assert t.torsion_part.is_zero()
        assert mod2_reduce(t).is_zero()

    def test_mod2_of_q33_is_schur(self):
        reduced = mod2_reduce(q_class(3, 3))
        ring = reduced.presentation
        assert reduced == schur_z2(universal_sw_class(ring), SchurIndex(3, 3))

    def test_real_kills_odd(self):
        for ell, r in ((1, 3), (3, 3), (5, 5)):
            assert real_reduce(q_class(ell, r)).is_zero()

    def test_real_of_q22(self):
        q = q_class(2, 2)
        assert real_reduce(q) == GradedPoly.gen(q.free_part.presentation, "p1", field=Z)

    def test_real_of_q44(self):
        q = q_class(4, 4)
        assert real_reduce(q) == parse_class("p2^2 + -1*p1*p3",
                                             q.free_part.presentation, field=Z)


class TestVerify615:
    def test_small_pass(self):
        rep = verify_615(2, 2)
        assert rep.passed
        assert {(row.ell, row.r) for row in rep.rows} == {(1, 1), (2, 2)}

    def test_full_acceptance_window(self):
        rep = verify_615(5, 9)
        assert rep.passed
        assert len(rep.rows) == 23

    def test_real_side_matches_schur(self):
        q = q_class(4, 8)
        p_total = universal_pontryagin_class(q.free_part.presentation)
        assert real_reduce(q) == schur_z(p_total, SchurIndex(2, 4))

    def test_max_ell_guard(self):
        with pytest.raises(InputError):
            verify_615(7, 3)
