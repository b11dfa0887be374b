import os
import random
import unittest

from api.conway import nullity_potential_equivalence
from api.invariants import ColoringView, constant_regions, grid_scan, signature
from api.library import load_all, load_bundled
from api.model import reverse_color
from api.obstructions import slice_obstruction
from api.torus import TorusPoint, grid_points
from api.verify import Verifier


class GridAcceptance(unittest.TestCase):
    """TestCase Class
    Closed forms and consistency checks over whole q = 12 grids
    """

    @classmethod
    def setUpClass(self):
        self.clasp2 = load_bundled("clasp2")
        self.trefoil = load_bundled("trefoil")
        self.clasp2_scan = grid_scan(self.clasp2, 12)

    def test_clasp2_grid(self):
        # -Re((1 - w1)(1 - w2)) = 4 sin(a/2) sin(b/2) cos((a + b)/2)
        self.assertEqual(len(self.clasp2_scan.rows), 121)
        for row in self.clasp2_scan.rows:
            total = sum(row.ks)
            if total in (6, 18):
                expected = (0, 1)
            elif total < 6 or total > 18:
                expected = (1, 0)
            else:
                expected = (-1, 0)
            with self.subTest(point=str(row.point)):
                self.assertTrue(row.result.exact)
                self.assertEqual((row.result.sigma, row.result.eta), expected)

    def test_nullity_matches_vanishing_potential(self):
        for model in (self.clasp2, self.trefoil):
            for _, point in grid_points(model.mu, 12):
                with self.subTest(model=model.name, point=str(point)):
                    self.assertTrue(nullity_potential_equivalence(model, point))

    def test_local_moves_across_grid(self):
        verifier = Verifier([self.clasp2, load_bundled("hopf2")], 12)
        result = verifier.local_move_consistency(self.clasp2, load_bundled("hopf2"))
        self.assertTrue(result.passed, result.detail)


class MergedColorings(unittest.TestCase):
    """TestCase Class
    Fully merged colorings at random exact points
    """

    @classmethod
    def setUpClass(self):
        rng = random.Random(20)
        self.points = []
        while len(self.points) < 20:
            q = rng.randint(2, 30)
            self.points.append(TorusPoint.exact((rng.randint(1, q - 1), q)))
        self.hopf2 = ColoringView(load_bundled("hopf2"), [1, 1])
        self.fox = ColoringView(load_bundled("fox"), [1, 1, 1])

    def test_hopf_link(self):
        for point in self.points:
            with self.subTest(point=str(point)):
                self.assertEqual(signature(self.hopf2, point).sigma, -1)

    def test_fox_link(self):
        for point in self.points:
            with self.subTest(point=str(point)):
                self.assertEqual(signature(self.fox, point).sigma, 0)


class OrientationReversal(unittest.TestCase):
    """TestCase Class
    Reversing one color inverts the matching coordinate
    """

    @classmethod
    def setUpClass(self):
        self.clasp2 = load_bundled("clasp2")

    def test_clasp2_second_color(self):
        reversed_model = reverse_color(self.clasp2, 2)
        point = TorusPoint.parse("1/12,1/12")
        self.assertEqual(signature(self.clasp2, point).sigma, 1)
        self.assertEqual(signature(reversed_model, point).sigma, -1)
        self.assertEqual(signature(reversed_model, point).sigma,
                         signature(self.clasp2, point.inverted(1)).sigma)

    def test_suite_on_bundled_models(self):
        models = [load_bundled(name) for name in ("clasp2", "trefoil", "fox")]
        verifier = Verifier(models, 6)
        for model in models:
            with self.subTest(model=model.name):
                result = verifier.orientation_reversal(model)
                self.assertEqual(result.name, "orientation-reversal[{}]".format(model.name))
                self.assertTrue(result.passed, result.detail)


class PiecewiseConstancy(unittest.TestCase):
    """TestCase Class
    sigma is constant between the zero lines of clasp2 on the q = 60 grid
    """

    @classmethod
    def setUpClass(self):
        self.clasp2 = load_bundled("clasp2")
        self.regions = constant_regions(grid_scan(self.clasp2, 60))

    def test_three_regions(self):
        # zero locus k1 + k2 in {30, 90}
        self.assertEqual([set(r.sigmas) for r in self.regions], [{1}, {-1}, {1}])
        self.assertEqual(sum(len(r.cells) for r in self.regions), 59 * 59 - 29 - 29)

    def test_suite(self):
        result = Verifier([self.clasp2], 8).piecewise_constancy(self.clasp2)
        self.assertTrue(result.passed, result.detail)


class FoxObstruction(unittest.TestCase):
    """TestCase Class
    Witnesses for the Fox link up to conductor 4
    """

    def test_witnesses(self):
        report = slice_obstruction(load_bundled("fox"), 4)
        self.assertTrue(report.witnesses)
        self.assertTrue(all(w.point.conductor <= 4 for w in report.witnesses))


@unittest.skipIf(os.environ.get("CLASP_QUICK"), "full-size property suites over every bundled model")
class FullVerify(unittest.TestCase):
    """TestCase Class
    Every suite over every bundled model at q = 8 with the clasp.ini case counts
    """

    @classmethod
    def setUpClass(self):
        self.results = Verifier(load_all(), 8).run()

    def test_all_pass(self):
        failures = [result.line() for result in self.results if not result.passed]
        self.assertEqual(failures, [])

    def test_suite_coverage(self):
        names = {result.name for result in self.results}
        for name in ("piecewise-constancy[clasp2]", "orientation-reversal[fox]", "obstruction-parity[trefoil]",
                     "laurent-ring", "laurent-det"):
            self.assertIn(name, names)


if __name__ == '__main__':
    unittest.main()
