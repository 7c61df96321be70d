import unittest

import numpy as np

from rangesieve.errors import ConfigError, MetricError
from rangesieve.models.stats import BootstrapConfig
from rangesieve.utils.stats_util import (_blocks, bootstrap_ci, bootstrap_cis, bootstrap_means, mean_of,
                                         permutation_test)


class MeanOfCase(unittest.TestCase):

    def test_constant_is_exact(self):
        self.assertEqual(mean_of([0.1] * 7), 0.1)
        self.assertEqual(mean_of([-0.3] * 3), -0.3)

    def test_compensated(self):
        self.assertEqual(mean_of([1e16, 1.0, -1e16, 1.0]), 0.5)

    def test_empty(self):
        with self.assertRaises(MetricError):
            mean_of([])


class BootstrapCase(unittest.TestCase):

    def test_constant_sample_is_degenerate(self):
        self.assertEqual(bootstrap_ci([0.37] * 25, BootstrapConfig(seed=1, replicates=500)), (0.37, 0.37))

    def test_same_seed_same_interval(self):
        values = list(np.random.default_rng(8).normal(size=40))
        cfg = BootstrapConfig(seed=11, replicates=2500)
        self.assertEqual(bootstrap_ci(values, cfg), bootstrap_ci(values, cfg))

    def test_interval_ordered_and_within_sample(self):
        values = list(np.random.default_rng(9).uniform(size=30))
        lo, hi = bootstrap_ci(values, BootstrapConfig(seed=2, replicates=1000))
        self.assertLessEqual(min(values), lo)
        self.assertLessEqual(lo, hi)
        self.assertLessEqual(hi, max(values))

    def test_paired_columns(self):
        values = list(np.random.default_rng(10).uniform(size=30))
        cfg = BootstrapConfig(seed=3, replicates=800)
        first, second = bootstrap_cis([values, values], cfg)
        self.assertEqual(first, second)
        single = bootstrap_ci(values, cfg)
        self.assertAlmostEqual(first[0], single[0], delta=1e-12)
        self.assertAlmostEqual(first[1], single[1], delta=1e-12)

    def test_blocks(self):
        self.assertEqual(_blocks(2500), [(0, 1000), (1, 1000), (2, 500)])
        self.assertEqual(bootstrap_means([0.0, 1.0], BootstrapConfig(seed=0, replicates=2500)).shape, (2500,))

    def test_coverage(self):
        covered = 0
        repetitions = 200
        for repetition in range(repetitions):
            sample = np.random.default_rng([77, repetition]).normal(0.0, 1.0, size=1000)
            lo, hi = bootstrap_ci(sample, BootstrapConfig(seed=repetition, replicates=500))
            covered += lo <= 0.0 <= hi
        self.assertGreaterEqual(covered, 0.9 * repetitions)

    def test_empty(self):
        with self.assertRaises(MetricError):
            bootstrap_ci([], BootstrapConfig(seed=0))

    def test_config_validation(self):
        with self.assertRaises(ConfigError):
            BootstrapConfig(seed=0, replicates=0)
        with self.assertRaises(ConfigError):
            BootstrapConfig(seed=0, level=1.0)
        with self.assertRaises(ConfigError):
            BootstrapConfig(seed=-1)


class PermutationTestCase(unittest.TestCase):

    def test_identical_samples(self):
        a = [0.1, 0.4, 0.35, 0.8, 0.2, 0.6]
        self.assertGreaterEqual(permutation_test(a, list(a), 10000, 0), 0.5)

    def test_separated_samples(self):
        p = permutation_test([0.0] * 5, [10.0] * 5, 10000, 0)
        # 2 of the 252 splits are as extreme as observed
        self.assertAlmostEqual(p, 2.0 / 252.0, delta=0.003)

    def test_exact_enumeration_is_opt_in(self):
        a, b = [0.0] * 5, [10.0] * 5
        exact = permutation_test(a, b, 10000, 0, exact=True)
        self.assertAlmostEqual(exact, 2.0 / 252.0, places=15)
        self.assertLessEqual(exact, 0.01)
        self.assertEqual(permutation_test(a, b, 100, 0, exact=True), permutation_test(a, b, 100, 0))

    def test_smoothed_share_of_replicates(self):
        a, b = [0.0, 1.0], [5.0, 6.0]
        for replicates in (10, 999, 10000):
            p = permutation_test(a, b, replicates, 3)
            count = p * (1 + replicates) - 1
            self.assertAlmostEqual(count, round(count), places=6)
            self.assertGreaterEqual(p, 1.0 / (1 + replicates))
        self.assertEqual(permutation_test(a, b, 10000, 3, exact=True), 1.0 / 3.0)

    def test_swap_symmetry(self):
        rng = np.random.default_rng(21)
        a, b = list(rng.normal(0, 1, 7)), list(rng.normal(0.5, 1, 9))
        self.assertEqual(permutation_test(a, b, 1000, 5), permutation_test(b, a, 1000, 5))
        self.assertEqual(permutation_test(a, b, 20000, 5), permutation_test(b, a, 20000, 5))

    def test_same_seed_same_p(self):
        rng = np.random.default_rng(22)
        a, b = list(rng.normal(0, 1, 30)), list(rng.normal(0.3, 1, 30))
        p = permutation_test(a, b, 2000, 9)
        self.assertEqual(p, permutation_test(a, b, 2000, 9))
        self.assertTrue(1.0 / 2001.0 <= p <= 1.0)

    def test_errors(self):
        with self.assertRaises(MetricError):
            permutation_test([], [1.0])
        with self.assertRaises(MetricError):
            permutation_test([1.0], [2.0], replicates=0)


if __name__ == '__main__':
    unittest.main()
