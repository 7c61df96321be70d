import math
import unittest
from fractions import Fraction

import numpy as np

from rangesieve.errors import MetricError
from rangesieve.models.assignment import Decision, NO_CUTOFF, SieveCutoffs
from rangesieve.models.scores import InstanceScores, ScoreTable
from rangesieve.utils.policy_util import (assign_interventions, decide, decision_counts, derive_cutoffs,
                                          quantile_cutoff, selection_size, sieve)


def make_table(ambiguities, disagreements):
    rows = tuple(InstanceScores(instance_id="i{}".format(k + 1), ambiguity=float(a), disagreement=float(d),
                                annotator_count=3)
                 for k, (a, d) in enumerate(zip(ambiguities, disagreements)))
    return ScoreTable(condition='baseline', rows=rows)


def brute_force(table, fraction):
    """Sorts each metric, takes the k-th largest as threshold, ambiguity first"""
    n = len(table)
    k = math.ceil(Fraction(str(fraction)) * n)
    if k == 0:
        return set(), set()
    a_threshold = sorted(table.ambiguities(), reverse=True)[k - 1]
    d_threshold = sorted(table.disagreements(), reverse=True)[k - 1]
    context = {r.instance_id for r in table.rows if r.ambiguity >= a_threshold}
    deliberation = {r.instance_id for r in table.rows
                    if r.instance_id not in context and r.disagreement >= d_threshold}
    return context, deliberation


class QuantileCutoffCase(unittest.TestCase):

    def test_kth_largest(self):
        scores = [float(k) for k in range(50)]
        np.random.default_rng(0).shuffle(scores)
        self.assertEqual(quantile_cutoff(scores, 0.1), 45.0)

    def test_fraction_zero_is_sentinel(self):
        self.assertEqual(quantile_cutoff([0.3, 0.9, 0.1], 0.0), NO_CUTOFF)
        self.assertTrue(math.isinf(NO_CUTOFF))

    def test_all_equal_all_qualify(self):
        scores = [0.25] * 40
        cutoff = quantile_cutoff(scores, 0.1)
        self.assertEqual(sum(1 for s in scores if s >= cutoff), 40)

    def test_errors(self):
        with self.assertRaises(MetricError):
            quantile_cutoff([], 0.1)
        with self.assertRaises(MetricError):
            quantile_cutoff([0.1, 0.2], 1.5)
        with self.assertRaises(MetricError):
            quantile_cutoff([0.1, 0.2], -0.1)

    def test_selection_size(self):
        self.assertEqual(selection_size(0.07, 100), 7)
        self.assertEqual(selection_size(0.1, 50), 5)
        self.assertEqual(selection_size(0.05, 50), 3)
        self.assertEqual(selection_size(1.0, 13), 13)
        self.assertEqual(selection_size(0.0, 13), 0)

    def test_tiny_fraction_selects_one(self):
        self.assertEqual(selection_size(5e-11, 10), 1)
        self.assertEqual(selection_size(np.float64(1e-12), 3), 1)
        self.assertEqual(quantile_cutoff([float(k) for k in range(10)], 5e-11), 9.0)
        _, assignments = sieve(make_table([0.1, 0.4, 0.2], [0.0, 0.0, 0.0]), 1e-15)
        self.assertEqual(decision_counts(assignments)[Decision.CONTEXT], 1)


class DecideCase(unittest.TestCase):

    # Setup
    def setUp(self):
        self.cutoffs = SieveCutoffs(fraction=0.1, ambiguity_cutoff=0.5, disagreement_cutoff=-1.0)

    # Tests
    def test_ambiguity_has_priority(self):
        self.assertIs(decide(0.6, -0.5, self.cutoffs), Decision.CONTEXT)

    def test_disagreement(self):
        self.assertIs(decide(0.4, -0.5, self.cutoffs), Decision.DELIBERATION)

    def test_neither(self):
        self.assertIs(decide(0.4, -2.0, self.cutoffs), Decision.NONE)

    def test_at_cutoff_qualifies(self):
        self.assertIs(decide(0.5, -3.0, self.cutoffs), Decision.CONTEXT)
        self.assertIs(decide(0.1, -1.0, self.cutoffs), Decision.DELIBERATION)

    def test_decision_conditions(self):
        self.assertEqual(Decision.CONTEXT.condition, 'context')
        self.assertEqual(Decision.DELIBERATION.condition, 'deliberation')
        self.assertEqual(Decision.NONE.condition, 'baseline')


class AssignInterventionsCase(unittest.TestCase):

    def test_matches_brute_force_and_nests(self):
        rng = np.random.default_rng(42)
        for n in (10, 50, 200):
            for trial in range(5):
                table = make_table(rng.uniform(0, 1, n), rng.uniform(-5, 1, n))
                previous = set()
                for fraction in (0.0, 0.05, 0.1, 0.25):
                    cutoffs = derive_cutoffs(table, fraction)
                    assignments = assign_interventions(table, cutoffs)
                    context = {a.instance_id for a in assignments if a.decision is Decision.CONTEXT}
                    deliberation = {a.instance_id for a in assignments if a.decision is Decision.DELIBERATION}
                    self.assertEqual((context, deliberation), brute_force(table, fraction))
                    if fraction > 0:
                        self.assertGreaterEqual(len(context), math.ceil(Fraction(str(fraction)) * n))
                    else:
                        self.assertEqual(context | deliberation, set())
                    self.assertTrue(previous <= context | deliberation)
                    previous = context | deliberation

    def test_ties_expand_selection(self):
        table = make_table([0.5] * 6 + [0.1] * 4, [0.0] * 10)
        cutoffs, assignments = sieve(table, 0.1)
        counts = decision_counts(assignments)
        self.assertEqual(cutoffs.ambiguity_cutoff, 0.5)
        self.assertEqual(counts[Decision.CONTEXT], 6)
        self.assertEqual(counts[Decision.DELIBERATION], 4)
        self.assertEqual(counts[Decision.NONE], 0)

    def test_cutoffs_use_all_rows(self):
        # the disagreement cutoff is not recomputed over the instances left after Context
        table = make_table([0.9, 0.8, 0.1, 0.2], [5.0, 4.0, 1.0, 0.0])
        cutoffs, assignments = sieve(table, 0.5)
        self.assertEqual(cutoffs.disagreement_cutoff, 4.0)
        self.assertEqual([a.decision for a in assignments], [Decision.CONTEXT, Decision.CONTEXT,
                                                              Decision.NONE, Decision.NONE])

    def test_separate_disagreement_fraction(self):
        table = make_table([0.9, 0.1, 0.2, 0.3], [0.0, 3.0, 2.0, 1.0])
        cutoffs, assignments = sieve(table, 0.25, disagreement_fraction=0.5)
        self.assertEqual(cutoffs.effective_disagreement_fraction, 0.5)
        self.assertEqual([a.decision for a in assignments], [Decision.CONTEXT, Decision.DELIBERATION,
                                                              Decision.DELIBERATION, Decision.NONE])

    def test_disagreement_only_sieve(self):
        table = make_table([0.9, 0.1, 0.2, 0.3], [0.0, 3.0, 2.0, 1.0])
        cutoffs, assignments = sieve(table, 0.0, disagreement_fraction=0.5)
        self.assertEqual(cutoffs.ambiguity_cutoff, NO_CUTOFF)
        self.assertEqual(cutoffs.disagreement_cutoff, 2.0)
        self.assertEqual([a.decision for a in assignments], [Decision.NONE, Decision.DELIBERATION,
                                                              Decision.DELIBERATION, Decision.NONE])

    def test_rescaled_ambiguities_keep_the_context_set(self):
        rng = np.random.default_rng(8)
        ambiguities, disagreements = rng.uniform(0, 1, 60), rng.uniform(-4, 0, 60)
        _, reference = sieve(make_table(ambiguities, disagreements), 0.1)
        for factor in (0.25, 3.0, 1e-3):
            _, scaled = sieve(make_table(ambiguities * factor, disagreements), 0.1)
            self.assertEqual([a.decision for a in scaled], [a.decision for a in reference])

    def test_empty_table(self):
        cutoffs = derive_cutoffs(ScoreTable(condition='baseline'), 0.1)
        self.assertEqual(cutoffs.ambiguity_cutoff, NO_CUTOFF)
        self.assertEqual(cutoffs.disagreement_cutoff, NO_CUTOFF)
        self.assertEqual(assign_interventions(ScoreTable(condition='baseline'), cutoffs), [])


if __name__ == '__main__':
    unittest.main()
