# cardest. GNU GPL-3.0 (see LICENSE file)
import os
import tempfile
import unittest
from pathlib import Path

import numpy as np

from cardest import samplers as s
from cardest.bounds import Precision
from cardest.classes import run
from cardest.errors import ParameterDomainError, SourceError
from cardest.harness import chi_square_uniformity
from cardest.utils.functions import _paths


class TestRng(unittest.TestCase):
    def test_SeedValidation(self):
        """Test seeds are 64-bit unsigned integers"""
        for base_seed in (-1, 2**64, 1.5, True):
            with self.assertRaises(ParameterDomainError, msg=f"base_seed={base_seed!r} accepted"):
                s.RngSeed(base_seed)
        s.RngSeed(2**64 - 1, stream_id=2**64 - 1)

    def test_SpawnEquivalence(self):
        """Test RngSeed(b, i) is the i-th child of SeedSequence(b)"""
        child = np.random.SeedSequence(5).spawn(4)[3]
        expected = np.random.Generator(np.random.PCG64(child)).integers(0, 2**32, size=16)
        actual = s.RngSeed(5, 3).generator().integers(0, 2**32, size=16)
        self.assertTrue(np.array_equal(expected, actual), "stream derivation changed")
        self.assertEqual(s.RngSeed(5, 3).as_json(), {"base_seed": 5, "stream_id": 3})

    def test_AsGenerator(self):
        """Test every accepted seed kind"""
        rng = np.random.default_rng(1)
        self.assertIs(s.as_generator(rng), rng)
        self.assertEqual(s.as_generator(7).integers(0, 10**9), s.RngSeed(7).generator().integers(0, 10**9))
        self.assertIsInstance(s.as_generator(None), np.random.Generator)
        with self.assertRaises(TypeError):
            s.as_generator("seed")


class TestSynthetic(unittest.TestCase):
    def test_Singleton(self):
        """Test n=1 always draws the same id"""
        source = s.synthetic_source(1, seed=0)
        self.assertEqual({source.draw() for _ in range(100)}, {0})

    def test_KnownCardinality(self):
        """Test known_cardinality is n"""
        self.assertEqual(s.synthetic_source(10**6, seed=0).known_cardinality, 10**6)

    def test_EmptySet(self):
        """Test n=0 and other invalid sizes are rejected"""
        for n in (0, -1, 2.0, True):
            with self.assertRaises(ParameterDomainError, msg=f"n={n!r} accepted"):
                s.synthetic_source(n)

    def test_SeededDeterminism(self):
        """Test identical seeds give identical sequences across block boundaries"""
        a = s.synthetic_source(1000, seed=s.RngSeed(9, 4))
        b = s.synthetic_source(1000, seed=s.RngSeed(9, 4))
        draws = 3 * s.BLOCK_SIZE + 17
        self.assertEqual([a.draw() for _ in range(draws)], [b.draw() for _ in range(draws)])

        other = s.synthetic_source(1000, seed=s.RngSeed(9, 5))
        again = s.synthetic_source(1000, seed=s.RngSeed(9, 4))
        self.assertNotEqual([other.draw() for _ in range(100)], [again.draw() for _ in range(100)])

    def test_StreamCorrelation(self):
        """Test neighbouring streams are not correlated"""
        draws = 20_000
        a = s.synthetic_source(1000, seed=s.RngSeed(123, 0))
        b = s.synthetic_source(1000, seed=s.RngSeed(123, 1))
        x = np.array([a.draw() for _ in range(draws)], dtype=float)
        y = np.array([b.draw() for _ in range(draws)], dtype=float)
        self.assertLess(abs(np.corrcoef(x, y)[0, 1]), 0.05)

    def test_SixSidedFrequencies(self):
        """Test each of 6 ids shows up 10000±400 times in 60000 draws"""
        counts = s.draw_counts(s.synthetic_source(6, seed=s.RngSeed(2024)), 60_000)
        self.assertEqual(set(counts), set(range(6)))
        for element, count in counts.items():
            self.assertLess(abs(count - 10_000), 400, f"id {element} drawn {count} times")

    def test_ChiSquareUniformity(self):
        """Test chi-square goodness of fit at alpha=0.001 for n in {2, 6, 100}"""
        for n in (2, 6, 100):
            statistic, p_value = chi_square_uniformity(s.synthetic_source(n, seed=s.RngSeed(2024, n)), 100_000)
            self.assertGreater(p_value, 0.001, f"n={n}: chi2={statistic:.2f} p={p_value:.2g}")
        with self.assertRaises(ParameterDomainError):
            chi_square_uniformity(s.synthetic_source(1, seed=0), 10)


class TestFileSource(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def _write(self, name, text):
        path = self.dir / name
        path.write_text(text, encoding="utf8")
        return path

    def test_RessourcesExists(self):
        """Test bundled files exist"""
        self.assertTrue(os.path.exists(_paths.example_lines), "Missing data/examples/lines.txt")
        self.assertTrue(os.path.exists(_paths.canonical_grid), "Missing data/grids/canonical.csv")

    def test_PositionIdentity(self):
        """Test position identity counts lines, trailing newline or not"""
        for text in ("a\nb\nc\n", "a\nb\nc"):
            source = s.file_source(self._write("three.txt", text), identity="position", seed=0)
            self.assertEqual(source.known_cardinality, 3)
            self.assertTrue({source.draw() for _ in range(200)} <= {0, 1, 2})

    def test_DuplicateContent(self):
        """Test duplicate lines warn under content identity"""
        path = self._write("dup.txt", "a\nb\nb\n")
        with self.assertWarns(UserWarning):
            source = s.file_source(path, identity=s.Identity.CONTENT, seed=0)
        self.assertEqual(source.known_cardinality, 2)
        self.assertEqual(source.duplicates, 1)
        self.assertTrue({source.draw() for _ in range(200)} <= {"a", "b"})

        # position identity treats both b lines as distinct elements
        self.assertEqual(s.file_source(path, seed=0).known_cardinality, 3)

    def test_EmptyFile(self):
        """Test an empty file cannot be sampled"""
        with self.assertRaises(SourceError):
            s.file_source(self._write("empty.txt", ""))

    def test_MissingFile(self):
        """Test I/O failures propagate as OSError"""
        with self.assertRaises(OSError):
            s.file_source(self.dir / "missing.txt")

    def test_UnknownIdentity(self):
        """Test identity must be position or content"""
        with self.assertRaises(ParameterDomainError):
            s.file_source(self._write("one.txt", "a\n"), identity="hash")

    def test_DistinctLinesEstimate(self):
        """Test 1000 distinct lines under content identity estimate within 30% on most seeds"""
        path = self._write("thousand.txt", "".join(f"line {i}\n" for i in range(1000)))
        p = Precision(0.3, 0.2)
        inside = 0
        for seed in range(30):
            estimate = run(p, s.file_source(path, identity="content", seed=s.RngSeed(seed)))
            inside += 700 < estimate.value < 1300
        self.assertGreaterEqual(inside, 24, f"only {inside}/30 estimates within 30%")


class TestCallableSource(unittest.TestCase):
    def test_CallableSource(self):
        """Test a callable wraps into a source"""
        rng = np.random.default_rng(3)
        source = s.callable_source(lambda: int(rng.integers(0, 50)), known_cardinality=50)
        self.assertEqual(source.known_cardinality, 50)
        self.assertTrue(0 <= source.draw() < 50)
        self.assertGreater(chi_square_uniformity(source, 20_000)[1], 0.001)
        with self.assertRaises(TypeError):
            s.callable_source(3)
        with self.assertRaises(ParameterDomainError):
            s.callable_source(lambda: 0, known_cardinality=0)


if __name__ == "__main__":
    unittest.main()
