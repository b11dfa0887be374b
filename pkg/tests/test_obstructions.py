import json
import unittest
from fractions import Fraction

from api.errors import DomainError, InapplicableError
from api.invariants import ColoringView, signature
from api.library import load_bundled
from api.obstructions import (SurfaceBudget, SurgeryData, casson_gordon, casson_gordon_invariants, closed_surface_ok,
                              concordance_domain, mod2_congruence_holds, murasugi_tristram_ok,
                              slice_genus_lower_bound, slice_obstruction)
from api.torus import TorusPoint


class SliceObstruction(unittest.TestCase):
    """TestCase Class
    Witness scans over prime-power points
    """

    @classmethod
    def setUpClass(self):
        self.trefoil = load_bundled("trefoil")
        self.fox = load_bundled("fox")

    def test_trefoil(self):
        report = slice_obstruction(self.trefoil, 2)
        self.assertEqual(report.to_json(), [{"point": "1/2", "sigma": -2, "eta": 0, "violated": "sigma-nonzero"}])
        self.assertFalse(report.linking_nonzero)
        self.assertEqual(report.points_checked, 1)

    def test_fox(self):
        report = slice_obstruction(self.fox, 2)
        self.assertEqual([w.violated for w in report.witnesses], ["sigma-nonzero", "eta-too-small"])
        self.assertTrue(report.linking_nonzero)
        self.assertEqual(len(json.loads(report.dumps())), 2)

    def test_fox_as_knot(self):
        report = slice_obstruction(ColoringView(self.fox, [1, 1, 1]), 8)
        self.assertEqual(report.witnesses, [])

    def test_max_q(self):
        with self.assertRaises(DomainError):
            slice_obstruction(self.trefoil, 1)

    def test_concordance_domain(self):
        self.assertTrue(concordance_domain(TorusPoint.parse("1/4,3/4")))
        self.assertFalse(concordance_domain(TorusPoint.parse("1/6")))


class GenusBounds(unittest.TestCase):
    """TestCase Class
    Slice genus bound and the Murasugi-Tristram inequality
    """

    def test_trefoil_bound(self):
        points = [TorusPoint.parse("1/2"), TorusPoint.parse("1/6")]
        self.assertEqual(slice_genus_lower_bound(load_bundled("trefoil"), points), 2)

    def test_linked_colors(self):
        with self.assertRaises(InapplicableError):
            slice_genus_lower_bound(load_bundled("fox"), [TorusPoint.parse("1/2,1/2,1/2")])

    def test_murasugi_tristram(self):
        self.assertTrue(murasugi_tristram_ok(-2, 0, 1, SurfaceBudget(beta1=2)))
        self.assertFalse(murasugi_tristram_ok(-2, 0, 1, SurfaceBudget(beta1=1)))
        with self.assertRaises(DomainError):
            SurfaceBudget(beta1=-1)

    def test_closed_surface_genus(self):
        self.assertTrue(closed_surface_ok(-2, 0, 1, SurfaceBudget(beta1=0, genus=2)))
        self.assertFalse(closed_surface_ok(-2, 0, 1, SurfaceBudget(beta1=0, genus=1)))
        # eta below mu - 1 raises the genus needed
        self.assertFalse(closed_surface_ok(-1, 0, 2, SurfaceBudget(beta1=0, genus=1)))
        self.assertTrue(closed_surface_ok(-1, 0, 2, SurfaceBudget(beta1=0, genus=2)))
        with self.assertRaises(DomainError):
            SurfaceBudget(beta1=0, genus=-1)

    def test_bound_meets_closed_surface_inequality(self):
        trefoil = load_bundled("trefoil")
        points = [TorusPoint.parse(text) for text in ("1/2", "1/3", "1/4", "3/4")]
        genus = slice_genus_lower_bound(trefoil, points)
        for point in points:
            result = signature(trefoil, point)
            self.assertTrue(closed_surface_ok(result.sigma, result.eta, 1, SurfaceBudget(beta1=0, genus=genus)))
        self.assertFalse(closed_surface_ok(-2, 0, 1, SurfaceBudget(beta1=0, genus=genus - 1)))

    def test_mod2_congruence(self):
        self.assertTrue(mod2_congruence_holds(load_bundled("trefoil"), -2, 0))
        self.assertFalse(mod2_congruence_holds(load_bundled("trefoil"), -1, 0))


class CassonGordon(unittest.TestCase):
    """TestCase Class
    Surgery formula for sigma(M, chi)
    """

    def test_single_component(self):
        self.assertEqual(casson_gordon(SurgeryData(1, ((2,),), 2, (1,)), 0), 0)
        self.assertEqual(casson_gordon(SurgeryData(1, ((1,),), 2, (1,)), 0), Fraction(-1, 2))

    def test_zero_framing(self):
        self.assertEqual(casson_gordon(SurgeryData(1, ((0,),), 5, (2,)), -3), -3)

    def test_hopf_link(self):
        data = SurgeryData(2, ((0, 1), (1, 0)), 3, (1, 1))
        self.assertEqual(casson_gordon_invariants(data, load_bundled("hopf2")), (Fraction(-1, 9), 0))

    def test_bad_data(self):
        with self.assertRaises(DomainError):
            SurgeryData(1, ((0,),), 4, (2,))
        with self.assertRaises(DomainError):
            SurgeryData(2, ((0, 1), (2, 0)), 3, (1, 1))


if __name__ == '__main__':
    unittest.main()
