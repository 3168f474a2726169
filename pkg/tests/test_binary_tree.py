import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from batchgcd import (
    OpCounter,
    Status,
    aggregate_divisors,
    build_gcd_tree,
    diff_report_vs_expected,
    diff_reports,
    enumerate_factors,
    expected_factor_map,
    generate_dataset,
    generate_primes,
    pairwise_gcd_all,
    resolve_full_modulus,
    run_binary_tree_batch_gcd,
    run_remainder_tree_batch_gcd,
)

_POOL = generate_primes(12, 16, seed=77)


def semiprime_sets(min_size=2, max_size=12):
    """Sets of semiprimes over a small prime pool, so sharing is common."""

    @st.composite
    def build(draw):
        count = draw(st.integers(min_value=min_size, max_value=max_size))
        moduli = []
        for _ in range(count):
            p = draw(st.sampled_from(_POOL))
            q = draw(st.sampled_from([x for x in _POOL if x != p]))
            moduli.append(p * q)
        return moduli

    return build()


class TestBuildGcdTree:
    def test_known_three_moduli(self):
        tree = build_gcd_tree([15, 21, 77])
        assert tree.levels == [[15, 21, 77], [315, 77]]
        assert tree.pair_gcds == [[3], [7]]
        assert tree.stored_gcds() == [3, 7]

    def test_shared_content_can_surface_at_the_top(self):
        tree = build_gcd_tree([6, 10, 15])
        assert tree.pair_gcds == [[2], [15]]

    def test_root_product_never_formed(self):
        values = [15, 21, 77, 221, 33]
        tree = build_gcd_tree(values)
        assert len(tree.levels[-1]) == 2
        assert all(len(level) >= 2 for level in tree.levels)
        full_product = math.prod(values)
        assert all(n != full_product for level in tree.levels for n in level)

    def test_coprime_pairings_store_ones(self):
        tree = build_gcd_tree([2, 3, 5])
        assert tree.levels == [[2, 3, 5], [6, 5]]
        assert tree.pair_gcds == [[1], [1]]

    @pytest.mark.parametrize("count", [2, 3, 8, 9, 31, 64, 100])
    def test_stores_exactly_count_minus_one_gcds(self, count):
        counter = OpCounter()
        tree = build_gcd_tree(list(range(3, 3 + 2 * count, 2)), counter=counter)
        assert len(tree.stored_gcds()) == count - 1
        assert counter.tree_gcds == count - 1
        assert counter.enumeration_gcds == 0

    def test_rejects_fewer_than_two(self):
        with pytest.raises(ValueError):
            build_gcd_tree([15])
        with pytest.raises(ValueError):
            build_gcd_tree([])


class TestAggregateDivisors:
    def test_known_values(self):
        assert aggregate_divisors(build_gcd_tree([15, 21, 77])) == 21
        assert aggregate_divisors(build_gcd_tree([6, 10, 15])) == 30

    def test_coprime_set_gives_one(self):
        assert aggregate_divisors(build_gcd_tree([2, 3, 5, 7])) == 1

    def test_skip_leaf_divisors_drops_leaf_level(self):
        tree = build_gcd_tree([15, 21, 77])
        assert aggregate_divisors(tree, skip_leaf_divisors=True) == 7


class TestEnumerateFactors:
    def test_known_values(self):
        report = enumerate_factors([15, 21, 77], 21)
        assert [e.status for e in report.entries] == [
            Status.FACTORED,
            Status.UNRESOLVED,
            Status.FACTORED,
        ]
        assert report.entries[0].factors == (3,)
        assert report.entries[2].factors == (7,)
        assert report.divisor_product == 21

    def test_counts_one_gcd_per_modulus(self):
        counter = OpCounter()
        enumerate_factors([15, 21, 77, 10], 21, counter=counter)
        assert counter.enumeration_gcds == 4


class TestResolveFullModulus:
    def test_known_case(self):
        assert resolve_full_modulus(1, [15, 21, 77], [3, 7]) == [3, 7]

    def test_rejects_non_divisors_and_trivial(self):
        assert resolve_full_modulus(1, [15, 21, 77], [1, 5, 21, 35]) == []

    def test_empty_recovered(self):
        assert resolve_full_modulus(0, [6, 10, 15], []) == []


class TestRunBinaryTree:
    def test_known_pipeline(self):
        report = run_binary_tree_batch_gcd([15, 21, 77])
        assert report.divisor_product == 21
        assert report.factor_map() == {
            0: frozenset({3}),
            1: frozenset({3, 7}),
            2: frozenset({7}),
        }
        assert report.duplicates == []

    def test_shared_content_only_among_full_moduli(self):
        # every prime is shared and no modulus gets a proper divisor from
        # enumeration, so resolution falls back to pairwise GCDs
        report = run_binary_tree_batch_gcd([6, 10, 15])
        assert report.factor_map() == {
            0: frozenset({2, 3}),
            1: frozenset({2, 5}),
            2: frozenset({3, 5}),
        }
        assert report.unresolved_duplicate_pairs() == []

    def test_coprime_set_short_circuits(self):
        counter = OpCounter()
        report = run_binary_tree_batch_gcd([15, 77, 221, 437], counter=counter)
        assert report.divisor_product == 1
        assert all(e.status is Status.COPRIME for e in report.entries)
        assert counter.tree_gcds == 3
        assert counter.enumeration_gcds == 0

    def test_factored_entries_are_sorted_and_consistent(self):
        report = run_binary_tree_batch_gcd([6, 10, 15, 77])
        for entry in report.entries:
            if entry.status is Status.FACTORED:
                assert entry.factors == tuple(sorted(entry.factors))
                assert len(entry.factors) >= 1
            else:
                assert entry.factors == ()

    def test_prime_shared_by_three_moduli(self, prime_pool):
        p, a, b, c, d = prime_pool[:5]
        moduli = [p * a, p * b, p * c, d * prime_pool[5]]
        report = run_binary_tree_batch_gcd(moduli)
        for idx in range(3):
            assert report.factor_map()[idx] == frozenset({p})
        assert 3 not in report.factor_map()

    def test_gcd_count_audit(self):
        for count in (8, 9, 33):
            modulus_set, _ = generate_dataset(count, 32, 2, seed=count)
            counter = OpCounter()
            run_binary_tree_batch_gcd(modulus_set, counter=counter)
            assert counter.tree_gcds == count - 1
            assert counter.enumeration_gcds == count
            assert counter.resolution_gcds == 0
            assert counter.total == 2 * count - 1

    def test_duplicate_pair_stays_unresolved(self, prime_pool):
        p, q, r, s = prime_pool[:4]
        moduli = [p * q, p * q, r * s]
        report = run_binary_tree_batch_gcd(moduli)
        assert report.unresolved_duplicate_pairs() == [(0, 1)]
        assert report.entries[0].status is Status.UNRESOLVED
        assert report.entries[0].factors == ()
        assert report.entries[2].status is Status.COPRIME

    def test_duplicate_pair_with_external_share_is_factored(self, prime_pool):
        p, q, r = prime_pool[:3]
        moduli = [p * q, p * q, p * r]
        report = run_binary_tree_batch_gcd(moduli)
        assert report.factor_map() == {
            0: frozenset({p, q}),
            1: frozenset({p, q}),
            2: frozenset({p}),
        }
        assert report.unresolved_duplicate_pairs() == []

    def test_duplicate_resolved_through_cofactor_chain(self):
        # 3081164929 = 49331 * 62459; the dup's prime 49331 only becomes
        # known once 1803689353 = 49331 * 36563 is completed via its own
        # cofactor, so resolution has to feed discoveries back on itself
        moduli = [3081164929, 3081164929, 1803689353, 1767930739]
        report = run_binary_tree_batch_gcd(moduli)
        assert report.factor_map() == {
            0: frozenset({49331, 62459}),
            1: frozenset({49331, 62459}),
            2: frozenset({49331, 36563}),
            3: frozenset({36563}),
        }
        assert report.unresolved_duplicate_pairs() == []

    def test_chain_of_shared_primes_resolves_fully(self, prime_pool):
        p, q, r, s, t = prime_pool[:5]
        moduli = [p * q, p * q, q * r, r * s, s * t]
        report = run_binary_tree_batch_gcd(moduli)
        assert report.factor_map() == {
            0: frozenset({p, q}),
            1: frozenset({p, q}),
            2: frozenset({q, r}),
            3: frozenset({r, s}),
            4: frozenset({s}),
        }
        assert report.unresolved_duplicate_pairs() == []


@given(semiprime_sets())
def test_matches_oracle_on_arbitrary_semiprime_sets(moduli):
    expected = expected_factor_map(pairwise_gcd_all(moduli), moduli)
    report = run_binary_tree_batch_gcd(moduli)
    assert diff_report_vs_expected(report, expected) == []
    # the divisor product is 1 exactly when the whole set is mutually coprime
    assert (report.divisor_product == 1) == all(
        e.status is Status.COPRIME for e in report.entries
    )


@given(semiprime_sets())
def test_leaf_divisor_option_changes_nothing(moduli):
    plain = run_binary_tree_batch_gcd(moduli)
    skipping = run_binary_tree_batch_gcd(moduli, skip_leaf_divisors=True)
    assert diff_reports(plain, skipping) == []


@given(semiprime_sets())
def test_agrees_with_remainder_tree(moduli):
    binary = run_binary_tree_batch_gcd(moduli)
    remainder = run_remainder_tree_batch_gcd(moduli)
    assert diff_reports(binary, remainder, ("binary-tree", "remainder-tree")) == []
