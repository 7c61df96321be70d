import os
import tempfile
import unittest

from rangesieve.models.scores import InstanceScores, ScoreTable
from rangesieve.utils.output_util import atomic_write_bytes, csv_bytes
from rangesieve.utils.report_util import (SCORE_COLUMNS, SWEEP_COLUMNS, load_score_table, score_records,
                                          sweep_long_records)


class ReadBackCase(unittest.TestCase):

    # Setup
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, records, columns):
        path = os.path.join(self.tmp.name, name)
        atomic_write_bytes(path, csv_bytes(records, columns))
        return path

    # Tests
    def test_score_table_reads_back_exactly(self):
        rows = (InstanceScores('i1', 0.31711266349832579, -3.1355327000000001, 5),
                InstanceScores('i2', 0.1 + 0.2, -(1 / 3), 4),
                InstanceScores('i10', 2 / 7, -0.7000000000000001, 6))
        table = ScoreTable(condition='baseline', rows=rows)
        path = self.write('baseline.csv', score_records(table), SCORE_COLUMNS)
        again = load_score_table(path, 'baseline')
        self.assertEqual(again.rows, rows)

    def test_sweep_fractions_read_back_exactly(self):
        fractions = [0.0, 0.05, 0.1, 0.15, 0.2, 0.25]
        records = [{'fraction': f, 'mean_ambiguity': 0.3 - f / 3, 'ambiguity_ci_lo': 0.1, 'ambiguity_ci_hi': 0.5,
                    'mean_disagreement': -1.7, 'disagreement_ci_lo': -2.1, 'disagreement_ci_hi': -1.3,
                    'affected_count': int(f * 100)} for f in fractions]
        path = self.write('sweep.csv', records, SWEEP_COLUMNS)
        long = sweep_long_records({'targeted': path})
        self.assertEqual([r['fraction'] for r in long if r['metric'] == 'ambiguity'], fractions)
        self.assertEqual([r['mean'] for r in long if r['metric'] == 'ambiguity'],
                         [0.3 - f / 3 for f in fractions])


if __name__ == '__main__':
    unittest.main()
