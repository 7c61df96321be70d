import os
import tempfile
import unittest

from rangesieve import settings
from rangesieve.utils.manifest_util import (build_manifest, file_digest, manifest_path, read_manifest, stale_inputs,
                                            write_manifest)


class ManifestCase(unittest.TestCase):

    # Setup
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.input = os.path.join(self.tmp.name, 'crowd.json')
        self.output = os.path.join(self.tmp.name, 'scores.csv')
        for path, text in ((self.input, '{"scale": {}}'), (self.output, 'instance\n')):
            with open(path, 'w') as handle:
                handle.write(text)

    def tearDown(self):
        self.tmp.cleanup()

    # Tests
    def test_written_manifest_reads_back(self):
        manifest = build_manifest('score', {'condition': 'baseline'}, [self.input], None,
                                  ['score', self.input, '-o', self.output], {self.output: file_digest(self.output)})
        path = write_manifest(manifest, self.output)
        self.assertEqual(path, manifest_path(self.output))
        self.assertTrue(path.endswith(settings.MANIFEST_SUFFIX))
        self.assertEqual(read_manifest(path), manifest)
        self.assertEqual(manifest.version, settings.VERSION)

    def test_digest(self):
        self.assertTrue(file_digest(self.input).startswith('sha256:'))
        self.assertEqual(file_digest(self.input), file_digest(self.input))
        self.assertNotEqual(file_digest(self.input), file_digest(self.output))

    def test_stale_inputs(self):
        manifest = build_manifest('score', {}, [self.input], 4, [])
        self.assertEqual(stale_inputs(manifest), [])
        with open(self.input, 'w') as handle:
            handle.write('{}')
        self.assertEqual(stale_inputs(manifest), [self.input])
        os.remove(self.input)
        self.assertEqual(stale_inputs(manifest), [self.input])


if __name__ == '__main__':
    unittest.main()
