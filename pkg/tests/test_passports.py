import pytest

from belyi.passports import (
    PartitionGuardError,
    RamificationType,
    enumerate_partitions,
    family_upper_bound,
    lower_bound_from_genus,
    parse_lambda,
    ramification_type,
    rh_genus,
    types_with_genus,
)


class TestPartitions:
    def test_one(self):
        assert [p.parts for p in enumerate_partitions(1)] == [(1,)]

    def test_four(self):
        assert [p.parts for p in enumerate_partitions(4)] == [
            (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_count_seven(self):
        # independent oracle: count partitions by brute-force composition dedup
        brute = set()

        def rec(remaining, cap, prefix):
            if remaining == 0:
                brute.add(tuple(prefix))
                return
            for part in range(1, min(cap, remaining) + 1):
                rec(remaining - part, part, prefix + [part])

        rec(7, 7, [])
        parts = enumerate_partitions(7)
        assert len(parts) == len(brute) == 15
        assert {p.parts for p in parts} == {tuple(sorted(b, reverse=True)) for b in brute}

    def test_reverse_lexicographic_order(self):
        for d in range(1, 12):
            seq = [p.parts for p in enumerate_partitions(d)]
            assert seq == sorted(seq, reverse=True)
            assert len(seq) == len(set(seq))

    def test_guard(self):
        with pytest.raises(PartitionGuardError):
            enumerate_partitions(41)


class TestRhGenus:
    def test_seven_totally_ramified(self):
        assert rh_genus(ramification_type(7, (7,), (7,), (7,))) == 3

    def test_degree_two(self):
        assert rh_genus(ramification_type(2, (2,), (1, 1), (2,))) == 0

    def test_parity_failure(self):
        assert rh_genus(ramification_type(7, (6, 1), (7,), (7,))) is None

    def test_negative_genus_rejected(self):
        # d=2 with all three split: 2 - 6 = -4 < -2
        assert rh_genus(ramification_type(2, (1, 1), (1, 1), (1, 1))) is None


class TestTypesWithGenus:
    def test_unique_type_degree7_genus3(self):
        types = types_with_genus(7, 3)
        assert len(types) == 1
        assert types[0] == ramification_type(7, (7,), (7,), (7,))

    def test_degree1(self):
        assert types_with_genus(1, 0) == [ramification_type(1, (1,), (1,), (1,))]

    def test_degree3_genus1(self):
        assert types_with_genus(3, 1) == [ramification_type(3, (3,), (3,), (3,))]

    def test_roundtrip_all_small(self):
        for d in range(1, 8):
            for g in range(0, 4):
                for lam in types_with_genus(d, g):
                    assert rh_genus(lam) == g

    def test_totally_ramified_maximizes_genus(self):
        # fewest parts means largest genus: nothing beats (d-1)//2, and the
        # totally ramified type attains it whenever its parity is right
        for d in range(2, 11):
            cap = (d - 1) // 2
            best = -1
            for lam0 in enumerate_partitions(d):
                for lam1 in enumerate_partitions(d):
                    for lam_inf in enumerate_partitions(d):
                        lam = RamificationType(d, lam0, lam1, lam_inf)
                        g = rh_genus(lam)
                        if g is not None:
                            best = max(best, g)
                            assert g <= cap
            if d % 2 == 1:
                top = rh_genus(ramification_type(d, (d,), (d,), (d,)))
                assert top == cap == best


class TestBounds:
    def test_lower_bound(self):
        assert lower_bound_from_genus(3) == 7
        assert lower_bound_from_genus(0) == 1
        assert lower_bound_from_genus(1) == 3

    def test_sharpness_for_odd_degree(self):
        # the totally ramified type of odd degree d has genus (d-1)/2 and
        # the genus bound then gives back exactly d
        for d in range(1, 16, 2):
            g = rh_genus(ramification_type(d, (d,), (d,), (d,)))
            assert lower_bound_from_genus(g) == d

    def test_family_fermat(self):
        assert family_upper_bound("fermat", 4) == 16
        assert family_upper_bound("fermat", 1) == 1

    def test_family_cyclic(self):
        assert family_upper_bound("cyclic_superelliptic", 7) == 7
        with pytest.raises(ValueError):
            family_upper_bound("cyclic_superelliptic", 6)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            family_upper_bound("elliptic", 3)


class TestParsing:
    def test_parse(self):
        lam = parse_lambda("2,1/2,1/3", 3)
        assert lam.lambda0.parts == (2, 1)
        assert lam.lambda_inf.parts == (3,)

    def test_str(self):
        lam = ramification_type(7, (7,), (7,), (7,))
        assert str(lam) == "7: [7][7][7]"

    def test_bad_sum(self):
        with pytest.raises(ValueError):
            parse_lambda("2,2/3/3", 3)
        with pytest.raises(ValueError):
            parse_lambda("3/3", 3)
