import math

import numpy as np
import pytest

from mergegram import (
    Cube,
    Diagram,
    DistanceMatrix,
    PointCloud,
    compute_mst,
    diagram_add,
    diagram_equals,
    diagram_subtract,
    generate_cloud,
    mergegram_from_dendrogram,
    mergegram_from_mst,
    pd0_from_dendrogram,
    pd0_from_mergegram,
    pd0_from_mst,
    sl_dendrogram,
)

from test_dendrogram import THREE_POINT_DENDROGRAM
from test_mst import FIVE_POINT_MATRIX

INF = math.inf

LINE_5 = PointCloud([0, 4, 6, 9, 10])

# Mergegram of {0,4,6,9,10}: nine dots counted with multiplicity.
LINE_5_MERGEGRAM = Diagram(
    [
        (0.0, 0.5, 2),
        (0.0, 1.0, 2),
        (0.5, 1.5, 1),
        (1.0, 1.5, 1),
        (0.0, 2.0, 1),
        (1.5, 2.0, 1),
        (2.0, INF, 1),
    ]
)

LINE_5_PD0 = Diagram([(0.0, 0.5), (0.0, 1.0), (0.0, 1.5), (0.0, 2.0), (0.0, INF)])


class TestDiagramType:
    def test_multiset_accumulation(self):
        d = Diagram([(0, 1), (0, 1), (0, 2, 3)])
        assert d.multiplicity(0, 1) == 2
        assert d.multiplicity(0, 2) == 3
        assert d.total_multiplicity == 5
        assert d.n_dots == 2

    def test_equality_is_multiset_equality(self):
        assert Diagram([(0, 1), (0, 1)]) == Diagram([(0, 1, 2)])
        assert Diagram([(0, 1)]) != Diagram([(0, 1, 2)])

    def test_invalid_dots_rejected(self):
        with pytest.raises(ValueError):
            Diagram([(-1.0, 0.5)])
        with pytest.raises(ValueError):
            Diagram([(1.0, 0.5)])
        with pytest.raises(ValueError):
            Diagram([(0.0, 1.0, 0)])
        with pytest.raises(ValueError):
            Diagram([(INF, INF)])

    def test_iteration_is_sorted(self):
        d = Diagram([(1, 2), (0, INF), (0, 1)])
        assert [(b, dd) for b, dd, _ in d] == [(0, 1), (0, INF), (1, 2)]

    def test_finite_and_infinite_views(self):
        d = Diagram([(0, 1, 2), (3, INF)])
        assert d.finite_dots().tolist() == [[0, 1], [0, 1]]
        assert d.infinite_births().tolist() == [3]


class TestMultisetOps:
    def test_add(self):
        assert diagram_add(Diagram([(0, 1)]), Diagram([(0, 1), (1, 2)])) == Diagram(
            [(0, 1, 2), (1, 2)]
        )

    def test_subtract_self_is_empty(self):
        d = LINE_5_MERGEGRAM
        assert diagram_subtract(d, d) == Diagram()

    def test_subtract_multiplicity(self):
        assert diagram_subtract(Diagram([(0, 1, 2)]), Diagram([(0, 1)])) == Diagram([(0, 1)])

    def test_subtract_underflow(self):
        with pytest.raises(ValueError, match="underflow"):
            diagram_subtract(Diagram([(0, 1)]), Diagram([(0, 2)]))

    def test_subtract_with_tolerance(self):
        d1 = Diagram([(0.0, 1.0), (0.0, 2.0)])
        d2 = Diagram([(1e-12, 1.0 + 1e-12)])
        assert diagram_subtract(d1, d2, tol=1e-9) == Diagram([(0.0, 2.0)])

    def test_equals_with_tolerance(self):
        d1 = Diagram([(0.0, 1.0), (2.0, INF)])
        d2 = Diagram([(1e-12, 1.0 - 1e-12), (2.0 + 1e-12, INF)])
        assert diagram_equals(d1, d2, tol=1e-9)
        assert not diagram_equals(d1, d2)
        assert not diagram_equals(d1, Diagram([(0.0, 1.0), (2.0, 3.0)]), tol=1e-9)

    def test_worked_multiset_difference(self):
        # deaths of the 9-dot mergegram minus its nonzero births
        deaths = Diagram([(0.0, d, m) for _, d, m in LINE_5_MERGEGRAM if d < INF])
        deaths = diagram_add(deaths, Diagram([(0.0, INF)]))
        births = Diagram([(0.0, 0.5), (0.0, 1.0), (0.0, 1.5), (0.0, 2.0)])
        assert diagram_subtract(deaths, births) == LINE_5_PD0


class TestMergegramFromMst:
    def test_line_five_points(self):
        assert mergegram_from_mst(compute_mst(LINE_5)) == LINE_5_MERGEGRAM

    def test_witness_pair(self):
        a = mergegram_from_mst(compute_mst(PointCloud([0, 1, 3, 7])))
        b = mergegram_from_mst(compute_mst(PointCloud([0, 1, 5, 7])))
        assert a == Diagram(
            [(0.0, 0.5, 2), (0.0, 1.0), (0.5, 1.0), (0.0, 2.0), (1.0, 2.0), (2.0, INF)]
        )
        assert b == Diagram(
            [(0.0, 0.5, 2), (0.0, 1.0, 2), (0.5, 2.0), (1.0, 2.0), (2.0, INF)]
        )

    def test_single_point(self):
        assert mergegram_from_mst(compute_mst(PointCloud([[5.0]]))) == Diagram([(0.0, INF)])

    def test_scale_factor_one(self):
        d = mergegram_from_mst(compute_mst(PointCloud([0, 1])), scale_factor=1.0)
        assert d == Diagram([(0.0, 1.0, 2), (1.0, INF)])

    def test_zero_life_dots_dropped_by_default(self):
        d = mergegram_from_mst(compute_mst(PointCloud([0, 1, 2])))
        assert d == Diagram([(0.0, 0.5, 3), (0.5, INF)])

    def test_zero_life_dots_kept_on_request(self):
        d = mergegram_from_mst(compute_mst(PointCloud([0, 1, 2])), drop_zero_life=False)
        assert d == Diagram([(0.0, 0.5, 3), (0.5, 0.5), (0.5, INF)])

    def test_retained_multiplicity_accounting(self):
        # with zero-life dots kept: 2(n-1) finite dots, deaths twice per length
        for seed in range(3):
            cloud = generate_cloud(12, 2, Cube(0, 1), seed=seed)
            mst = compute_mst(cloud)
            d = mergegram_from_mst(mst, drop_zero_life=False)
            finite = d.finite_dots()
            assert len(finite) == 2 * (cloud.n - 1)
            assert len(d.infinite_births()) == 1
            deaths = sorted(finite[:, 1])
            expected = sorted(np.repeat([0.5 * length for length in mst.lengths()], 2))
            assert deaths == pytest.approx(expected, abs=0)


class TestMergegramFromDendrogram:
    def test_three_point_dendrogram(self):
        assert mergegram_from_dendrogram(THREE_POINT_DENDROGRAM) == Diagram(
            [(0.0, 1.0, 2), (0.0, 2.0), (1.0, 2.0), (2.0, INF)]
        )

    def test_five_point_matrix(self):
        dend = sl_dendrogram(compute_mst(DistanceMatrix(FIVE_POINT_MATRIX)))
        assert mergegram_from_dendrogram(dend) == Diagram(
            [
                (0.0, 1.5, 2),
                (0.0, 2.0, 2),
                (0.0, 3.0),
                (1.5, 2.5),
                (2.0, 2.5),
                (2.5, 3.0),
                (3.0, INF),
            ]
        )

    def test_one_leaf(self):
        from mergegram import Dendrogram

        assert mergegram_from_dendrogram(Dendrogram(1, ())) == Diagram([(0.0, INF)])

    def test_agrees_with_algorithmic_path(self):
        for seed in range(8):
            cloud = generate_cloud(30, 3, Cube(0, 1), seed=seed)
            mst = compute_mst(cloud)
            assert mergegram_from_dendrogram(sl_dendrogram(mst)) == mergegram_from_mst(mst)

    def test_agrees_with_algorithmic_path_under_ties(self):
        # integer grid has many tied edges
        grid = PointCloud([[x, y] for x in range(4) for y in range(3)])
        mst = compute_mst(grid)
        assert mergegram_from_dendrogram(sl_dendrogram(mst)) == mergegram_from_mst(mst)

    def test_agrees_with_algorithmic_path_with_duplicates(self):
        cloud = PointCloud([0.0, 0.0, 1.0, 1.0, 5.0])
        mst = compute_mst(cloud)
        assert mergegram_from_dendrogram(sl_dendrogram(mst)) == mergegram_from_mst(mst)


class TestPd0:
    def test_line_five_points_from_mst(self):
        assert pd0_from_mst(compute_mst(LINE_5)) == LINE_5_PD0

    def test_repeated_lengths_counted_with_multiplicity(self):
        assert pd0_from_mst(compute_mst(PointCloud([0, 1, 2]))) == Diagram(
            [(0.0, 0.5, 2), (0.0, INF)]
        )

    def test_single_point_from_mst(self):
        assert pd0_from_mst(compute_mst(PointCloud([[1.0]]))) == Diagram([(0.0, INF)])

    def test_three_point_dendrogram(self):
        assert pd0_from_dendrogram(THREE_POINT_DENDROGRAM) == Diagram(
            [(0.0, 1.0), (0.0, 2.0), (0.0, INF)]
        )

    def test_dendrogram_path_equals_mst_path(self):
        mst = compute_mst(LINE_5)
        assert pd0_from_dendrogram(sl_dendrogram(mst)) == pd0_from_mst(mst)

    def test_k_way_merge_multiplicity(self):
        dend = sl_dendrogram(compute_mst(PointCloud([0, 1, 2])))
        assert pd0_from_dendrogram(dend) == Diagram([(0.0, 0.5, 2), (0.0, INF)])


class TestPd0FromMergegram:
    def test_line_five_points(self):
        assert pd0_from_mergegram(LINE_5_MERGEGRAM) == LINE_5_PD0

    def test_witness_pair_has_equal_pd0s_but_different_mergegrams(self):
        a = mergegram_from_mst(compute_mst(PointCloud([0, 1, 3, 7])))
        b = mergegram_from_mst(compute_mst(PointCloud([0, 1, 5, 7])))
        assert a != b
        pd = Diagram([(0.0, 0.5), (0.0, 1.0), (0.0, 2.0), (0.0, INF)])
        assert pd0_from_mergegram(a) == pd
        assert pd0_from_mergegram(b) == pd

    def test_single_infinite_dot(self):
        assert pd0_from_mergegram(Diagram([(0.0, INF)])) == Diagram([(0.0, INF)])

    def test_invalid_mergegram_rejected(self):
        with pytest.raises(ValueError, match="not a valid mergegram"):
            pd0_from_mergegram(Diagram([(1.0, 2.0), (2.0, INF)]))

    def test_trivial_dots_ignored(self):
        # literal algorithm on {0, 0, 1} at scale factor 1: the zero-life
        # dots (0,0) contribute nothing, the death at 1 cancels one birth
        mg = Diagram([(0.0, 0.0, 2), (0.0, 1.0, 2), (1.0, INF)])
        assert pd0_from_mergegram(mg) == Diagram([(0.0, 1.0), (0.0, INF)])


class TestPipelineConsistency:
    def test_exact_identity_on_random_clouds(self):
        rng = np.random.default_rng(99)
        for _ in range(40):
            n = int(rng.integers(2, 60))
            dim = int(rng.integers(1, 6))
            cloud = PointCloud(rng.uniform(0, 1, size=(n, dim)))
            mst = compute_mst(cloud)
            via_mg = pd0_from_mergegram(mergegram_from_mst(mst))
            via_mst = pd0_from_mst(mst)
            via_dend = pd0_from_dendrogram(sl_dendrogram(mst))
            assert via_mg == via_mst  # exact float equality
            assert via_dend == via_mst

    def test_exact_identity_with_zero_life_dots_kept(self):
        grid = PointCloud([[x, y] for x in range(3) for y in range(3)])
        mst = compute_mst(grid)
        via_mg = pd0_from_mergegram(mergegram_from_mst(mst, drop_zero_life=False))
        assert via_mg == pd0_from_mst(mst)

    def test_exact_identity_with_duplicates(self):
        cloud = PointCloud([0.0, 0.0, 0.0, 2.0, 5.0])
        mst = compute_mst(cloud)
        assert pd0_from_mergegram(mergegram_from_mst(mst)) == pd0_from_mst(mst)
        assert pd0_from_dendrogram(sl_dendrogram(mst)) == pd0_from_mst(mst)


class TestIsometryInvariance:
    def test_mergegram_invariant(self):
        from mergegram import apply_isometry, random_rotation

        for seed in range(5):
            dim = 2 + seed % 3
            cloud = generate_cloud(20, dim, Cube(0, 100), seed=seed)
            moved = apply_isometry(
                cloud, random_rotation(dim, seed=seed + 7), np.full(dim, 3.25)
            )
            a = mergegram_from_mst(compute_mst(cloud))
            b = mergegram_from_mst(compute_mst(moved))
            assert diagram_equals(a, b, tol=1e-9)

    def test_mergegram_invariant_under_relabeling(self):
        rng = np.random.default_rng(123)
        cloud = generate_cloud(25, 3, Cube(0, 1), seed=9)
        base = mergegram_from_mst(compute_mst(cloud))
        for _ in range(3):
            perm = rng.permutation(cloud.n)
            assert mergegram_from_mst(compute_mst(PointCloud(cloud.points[perm]))) == base
