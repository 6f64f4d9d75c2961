import pytest

from upto import compute_strata
from upto.gallery import GalleryVerdict, build_T, verify_gallery


class TestBuildT:
    def test_zero(self):
        t = build_T(0)
        assert t.n == 0
        assert t.lts.n_states == 1
        assert t.lts.n_transitions == 0

    def test_one(self):
        lts = build_T(1).lts
        assert lts.n_states == 2
        assert list(lts.triples()) == [(1, "t", 0)]

    def test_two(self, t2):
        assert list(t2.triples()) == [(1, "t", 0), (2, "t", 0), (2, "t", 1)]

    def test_state_i_has_i_transitions_and_acyclic(self):
        lts = build_T(6).lts
        for i in range(7):
            assert len(lts.transitions[i]) == i
            assert all(target < i for (_, target) in lts.transitions[i])

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            build_T(-1)


class TestVerifyGallery:
    def test_small_instances(self):
        # hand instances of the membership law
        seq1 = compute_strata(build_T(1).lts)
        assert (0, 1) in seq1.stratum(0)
        assert (0, 1) not in seq1.stratum(1)

        seq2 = compute_strata(build_T(2).lts)
        assert (1, 2) in seq2.stratum(1)
        assert (1, 2) not in seq2.stratum(2)

    @pytest.mark.parametrize("n", range(9))
    def test_law_holds_up_to_eight(self, n):
        verdict = verify_gallery(n)
        assert verdict.passed, verdict.discrepancy
        assert verdict.checked > 0

    @pytest.mark.parametrize("n", range(9))
    def test_convergence_index_is_n(self, n):
        assert compute_strata(build_T(n).lts).epsilon == n

    @pytest.mark.parametrize("n", range(9))
    def test_consecutive_strata_differ_one_level_up(self, n):
        seq = compute_strata(build_T(n + 1).lts)
        assert seq.stratum(n) != seq.stratum(n + 1)

    def test_verdict_invariant(self):
        with pytest.raises(ValueError):
            GalleryVerdict(passed=True, checked=1, discrepancy="boom")
