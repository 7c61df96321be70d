import unittest

import numpy as np

from rangesieve.errors import ConditionNotFound, MetricError
from rangesieve.utils.metrics_util import (annotator_agreement, instance_ambiguity, instance_disagreement,
                                           overlap_matrix, overlap_ratio, score_instance, score_table, table_means)
from rangesieve.utils.output_util import csv_bytes
from rangesieve.utils.report_util import SCORE_COLUMNS, score_records
from test.rangesieve.fixtures import annotations, make_dataset, random_ranges


def naive_scores(ranges):
    """Double-loop transcription of the ambiguity and disagreement definitions"""
    n = len(ranges)
    widths = [u - l for l, u in ranges]
    agreements = []
    for i in range(n):
        li, ui = ranges[i]
        total = 0.0
        for j in range(n):
            if j == i:
                continue
            lj, uj = ranges[j]
            overlap = max(min(ui, uj) - max(li, lj), 0.0) / (ui - li)
            total += overlap - (uj - lj)
        agreements.append(total)
    return sum(widths) / n, -sum(agreements) / n


class OverlapRatioCase(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(overlap_ratio((0.2, 0.6), (0.2, 0.6)), 1.0)
        self.assertEqual(overlap_ratio((0.0, 0.3), (0.5, 0.8)), 0.0)
        self.assertEqual(overlap_ratio((0.0, 0.5), (0.25, 0.75)), 0.5)

    def test_asymmetric(self):
        self.assertEqual(overlap_ratio((0.0, 1.0), (0.0, 0.5)), 0.5)
        self.assertEqual(overlap_ratio((0.0, 0.5), (0.0, 1.0)), 1.0)

    def test_zero_width_is_containment(self):
        self.assertEqual(overlap_ratio((0.4, 0.4), (0.2, 0.6)), 1.0)
        self.assertEqual(overlap_ratio((0.4, 0.4), (0.4, 0.4)), 1.0)
        self.assertEqual(overlap_ratio((0.7, 0.7), (0.2, 0.6)), 0.0)

    def test_accepts_annotations(self):
        a, b = annotations('x', [(0.0, 0.5), (0.25, 0.75)])
        self.assertEqual(overlap_ratio(a, b), 0.5)

    def test_matrix_matches_pairwise(self):
        ranges = random_ranges(np.random.default_rng(5), 6) + [(0.3, 0.3)]
        matrix = overlap_matrix([l for l, _ in ranges], [u for _, u in ranges])
        for i, a in enumerate(ranges):
            for j, b in enumerate(ranges):
                self.assertEqual(matrix[i, j], overlap_ratio(a, b))

    def test_expected_overlap_of_random_point(self):
        # a uniformly placed point against a peer with sorted-uniform endpoints: E[overlap] = E[width]
        rng = np.random.default_rng(1234)
        points = rng.uniform(0.0, 1.0, size=100000)
        peers = random_ranges(rng, 100000)
        terms = [overlap_ratio((x, x), peer) - (peer[1] - peer[0]) for x, peer in zip(points, peers)]
        self.assertLessEqual(abs(np.mean(terms)), 0.02)

    def test_expected_overlap_of_random_ranges(self):
        # both ranges from sorted uniform draws: the bounded scale biases the mean to 7/18 - 1/3
        rng = np.random.default_rng(4321)
        ranges = random_ranges(rng, 100000)
        peers = random_ranges(rng, 100000)
        terms = [overlap_ratio(a, b) - (b[1] - b[0]) for a, b in zip(ranges, peers)]
        self.assertAlmostEqual(np.mean(terms), 1.0 / 18.0, delta=0.01)


class InstanceScoresCase(unittest.TestCase):

    def test_ambiguity_examples(self):
        self.assertEqual(instance_ambiguity(annotations('x', [(0.3, 0.3), (0.6, 0.6)])), 0.0)
        self.assertEqual(instance_ambiguity(annotations('x', [(0.0, 0.7)])), 0.7)
        self.assertAlmostEqual(instance_ambiguity(annotations('x', [(0.0, 0.2), (0.5, 0.9)])), 0.3, places=15)

    def test_ambiguity_needs_input(self):
        with self.assertRaises(MetricError):
            instance_ambiguity([])

    def test_disagreement_examples(self):
        self.assertAlmostEqual(instance_disagreement(annotations('x', [(0.2, 0.4), (0.2, 0.4)])), -0.8, places=15)
        self.assertAlmostEqual(instance_disagreement(annotations('x', [(0.0, 0.1), (0.9, 1.0)])), 0.1, places=15)
        self.assertEqual(instance_disagreement(annotations('x', [(0.0, 0.5), (0.25, 0.75)])), 0.0)

    def test_disagreement_needs_peers(self):
        with self.assertRaises(MetricError):
            instance_disagreement(annotations('x', [(0.1, 0.2)]))

    def test_annotator_agreement(self):
        ranges = annotations('x', [(0.0, 0.5), (0.25, 0.75), (0.6, 1.0)])
        # a1: (0.5 - 0.5) + (0.0 - 0.4)
        self.assertAlmostEqual(annotator_agreement('a1', ranges), -0.4, places=15)
        with self.assertRaises(MetricError):
            annotator_agreement('a9', ranges)
        with self.assertRaises(MetricError):
            annotator_agreement('a1', ranges[:1])

    def test_mixed_instances_rejected(self):
        with self.assertRaises(MetricError):
            instance_ambiguity(annotations('x', [(0.1, 0.2)]) + annotations('y', [(0.1, 0.2)]))

    def test_closed_forms(self):
        for n in (2, 3, 5, 25):
            for w in (0.0, 0.2, 0.5, 1.0):
                scores = score_instance(annotations('x', [(0.0, w)] * n))
                self.assertEqual(scores.ambiguity, w)
                self.assertEqual(scores.disagreement, -(n - 1) * (1.0 - w))

    def test_matches_naive_transcription(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            ranges = random_ranges(rng, int(rng.integers(3, 9)))
            expected_ambiguity, expected_disagreement = naive_scores(ranges)
            scores = score_instance(annotations('x', ranges))
            self.assertAlmostEqual(scores.ambiguity, expected_ambiguity, delta=1e-12)
            self.assertAlmostEqual(scores.disagreement, expected_disagreement, delta=1e-12)

    def test_annotator_order_does_not_matter(self):
        rng = np.random.default_rng(99)
        ranges = random_ranges(rng, 7)
        forward = score_instance(annotations('x', ranges))
        backward = score_instance(annotations('x', ranges[::-1]))
        self.assertEqual(forward.ambiguity, backward.ambiguity)
        self.assertEqual(forward.disagreement, backward.disagreement)

    def test_translation_invariance(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            n = int(rng.integers(2, 9))
            ranges = [(lo * 0.5, hi * 0.5) for lo, hi in random_ranges(rng, n)]
            shift = float(rng.uniform(0.0, 0.5))
            original = score_instance(annotations('x', ranges))
            shifted = score_instance(annotations('x', [(lo + shift, hi + shift) for lo, hi in ranges]))
            self.assertAlmostEqual(shifted.ambiguity, original.ambiguity, delta=1e-12)
            self.assertAlmostEqual(shifted.disagreement, original.disagreement, delta=1e-9)

    def test_widening_a_range_never_lowers_ambiguity(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            ranges = random_ranges(rng, int(rng.integers(1, 9)))
            before = instance_ambiguity(annotations('x', ranges))
            k = int(rng.integers(0, len(ranges)))
            lo, hi = ranges[k]
            ranges[k] = (max(0.0, lo - float(rng.uniform(0, 0.2))), min(1.0, hi + float(rng.uniform(0, 0.2))))
            self.assertGreaterEqual(instance_ambiguity(annotations('x', ranges)), before)

    def test_disagreement_bounds(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n = int(rng.integers(2, 10))
            scores = score_instance(annotations('x', random_ranges(rng, n)))
            self.assertLessEqual(abs(scores.disagreement), n - 1)
            self.assertTrue(0.0 <= scores.ambiguity <= 1.0)


class ScoreTableCase(unittest.TestCase):

    # Setup
    def setUp(self):
        rng = np.random.default_rng(17)
        self.ids = ["i{}".format(k) for k in range(1, 51)]
        self.dataset = make_dataset({
            'baseline': {i: random_ranges(rng, 4) for i in self.ids},
            'context': {},
            'deliberation': {i: random_ranges(rng, 1 if i == 'i7' else 3) for i in self.ids},
        }, instance_ids=self.ids)

    # Tests
    def test_one_row_per_instance(self):
        table = score_table(self.dataset, 'baseline')
        self.assertEqual(len(table), 50)
        self.assertEqual(table.instance_ids, self.ids)
        self.assertEqual(table.warnings, ())

    def test_empty_condition(self):
        with self.assertLogs('rangesieve.utils.metrics_util', 'WARNING'):
            table = score_table(self.dataset, 'context')
        self.assertEqual(len(table), 0)
        self.assertEqual(len(table.warnings), 50)

    def test_underannotated_instance_excluded(self):
        table = score_table(self.dataset, 'deliberation')
        self.assertEqual(len(table), 49)
        self.assertNotIn('i7', table.instance_ids)
        self.assertIn("'i7'", table.warnings[0])

    def test_unknown_condition(self):
        with self.assertRaises(ConditionNotFound) as ctx:
            score_table(self.dataset, 'feedback')
        self.assertEqual(ctx.exception.status_code, 404)

    def test_serialized_table_is_stable(self):
        first = csv_bytes(score_records(score_table(self.dataset, 'baseline')), SCORE_COLUMNS)
        second = csv_bytes(score_records(score_table(self.dataset, 'baseline')), SCORE_COLUMNS)
        self.assertEqual(first, second)

    def test_means(self):
        table = score_table(self.dataset, 'baseline')
        mean_ambiguity, mean_disagreement = table_means(table)
        self.assertAlmostEqual(mean_ambiguity, np.mean(table.ambiguities()), delta=1e-12)
        self.assertAlmostEqual(mean_disagreement, np.mean(table.disagreements()), delta=1e-12)


if __name__ == '__main__':
    unittest.main()
