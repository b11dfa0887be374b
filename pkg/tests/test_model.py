import os
import random
import tempfile
import unittest
from dataclasses import replace
from fractions import Fraction

from api.cyclotomic import CyclotomicElement
from api.errors import DimensionError, DomainError, SchemaError
from api.hermitian import HermitianMatrix
from api.invariants import signature
from api.library import bundled_path, load_all, load_bundled, names
from api.model import (HermitianMoveSpec, apply_hermitian_move, connected_sum, disjoint_sum,
                       enlarge_family, from_json, load, mirror, reverse_color, save, sign_vectors, validate)
from api.torus import TorusPoint

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


class BundledModels(unittest.TestCase):
    """TestCase Class
    Loading and validating the example library
    """

    @classmethod
    def setUpClass(self):
        self.models = load_all()

    def test_names(self):
        self.assertEqual(names(), ["unknot", "hopf1", "hopf2", "trefoil", "clasp2", "threecolor", "fox"])

    def test_all_valid(self):
        for model in self.models:
            with self.subTest(model=model.name):
                self.assertEqual(validate(model), [])

    def test_model_name_is_file_stem(self):
        self.assertEqual([m.name for m in self.models], names())

    def test_unknown_name(self):
        with self.assertRaises(DomainError):
            bundled_path("figure-eight")

    def test_sign_vector_order(self):
        self.assertEqual(sign_vectors(2), ["++", "+-", "-+", "--"])


class ModelFiles(unittest.TestCase):
    """TestCase Class
    JSON schema errors and invariant violations
    """

    def test_broken_transpose(self):
        model = load(os.path.join(DATA_DIR, "broken_transpose.json"))
        violations = validate(model)
        self.assertEqual(len(violations), 1)
        self.assertTrue(violations[0].startswith("transpose symmetry"))

    def test_missing_sign_vector(self):
        with self.assertRaises(SchemaError) as caught:
            load(os.path.join(DATA_DIR, "missing_sign.json"))
        self.assertEqual(caught.exception.path, "$.seifert['--']")

    def test_wrong_entry_type(self):
        with self.assertRaises(SchemaError) as caught:
            from_json({"mu": 1, "nu": 1, "colors": [1], "linking_matrix": [[0]], "beta0_S": 1,
                       "clasp_count": 0, "seifert": {"+": [["a"]], "-": [[0]]}})
        self.assertEqual(caught.exception.path, "$.seifert['+'][0][0]")

    def test_missing_key(self):
        with self.assertRaises(SchemaError) as caught:
            from_json({"mu": 1})
        self.assertEqual(caught.exception.path, "$.nu")

    def test_save_and_load(self):
        model = load_bundled("fox")
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "copy.json")
            save(model, path)
            copy = load(path)
            with open(path, encoding="utf-8") as handle:
                self.assertTrue(handle.read().endswith("}\n"))
        self.assertEqual(copy, model)
        self.assertEqual(copy.name, "copy")

    def test_clasp_parity(self):
        model = load_bundled("hopf2")
        odd = replace(model, clasp_count=2)
        self.assertTrue(any(v.startswith("clasp parity") for v in validate(odd)))


class ModelOperations(unittest.TestCase):
    """TestCase Class
    Mirror, reversal and sums on Seifert families
    """

    @classmethod
    def setUpClass(self):
        self.trefoil = load_bundled("trefoil")
        self.hopf2 = load_bundled("hopf2")
        self.clasp2 = load_bundled("clasp2")
        self.half = TorusPoint.parse("1/2")

    def test_mirror(self):
        mirrored = mirror(self.trefoil)
        self.assertEqual(validate(mirrored), [])
        self.assertEqual(signature(mirrored, self.half).sigma, 2)

    def test_reverse_color(self):
        reversed_model = reverse_color(self.clasp2, 2)
        self.assertEqual(validate(reversed_model), [])
        self.assertEqual(reversed_model.linking_matrix, ((0, -2), (-2, 0)))
        with self.assertRaises(DomainError):
            reverse_color(self.clasp2, 3)

    def test_connected_sum(self):
        total = connected_sum(self.trefoil, self.trefoil, 1, 1)
        self.assertEqual(validate(total), [])
        self.assertEqual((total.mu, total.n), (1, 4))
        self.assertEqual(signature(total, self.half).sigma, -4)

    def test_connected_sum_of_colored_links(self):
        total = connected_sum(self.clasp2, self.hopf2, 2, 1)
        self.assertEqual(validate(total), [])
        self.assertEqual((total.mu, total.nu), (3, 3))
        self.assertEqual(total.colors, (1, 2, 3))

    def test_disjoint_sum(self):
        total = disjoint_sum(self.trefoil, self.trefoil)
        self.assertEqual(validate(total), [])
        self.assertEqual((total.mu, total.beta0_S), (2, 2))
        result = signature(total, TorusPoint.parse("1/2,1/2"))
        self.assertEqual((result.sigma, result.eta), (-4, 1))

    def test_bad_shared_color(self):
        with self.assertRaises(DomainError):
            connected_sum(self.trefoil, self.clasp2, 2, 1)


class EnlargementMoves(unittest.TestCase):
    """TestCase Class
    Elementary enlargements preserve signature and nullity
    """

    @classmethod
    def setUpClass(self):
        i = CyclotomicElement.imaginary_unit()
        self.h = HermitianMatrix([[-2, 1 - i], [1 + i, -2]])
        self.spec = HermitianMoveSpec("enlargement", xi=(1 + i, 3), lam=Fraction(5, 2), alpha=2 * i)

    def test_enlargement_keeps_inertia(self):
        bigger = apply_hermitian_move(self.h, self.spec)
        self.assertEqual(bigger.size, 4)
        self.assertEqual(bigger.signature_nullity(), self.h.signature_nullity())

    def test_reduction_undoes_enlargement(self):
        bigger = apply_hermitian_move(self.h, self.spec)
        self.assertEqual(apply_hermitian_move(bigger, HermitianMoveSpec("reduction")), self.h)

    def test_reduction_needs_block_shape(self):
        with self.assertRaises(DomainError):
            apply_hermitian_move(self.h, HermitianMoveSpec("reduction"))

    def test_xi_length(self):
        with self.assertRaises(DimensionError):
            apply_hermitian_move(self.h, HermitianMoveSpec("enlargement", xi=(1,)))

    def test_alpha_nonzero(self):
        with self.assertRaises(DomainError):
            HermitianMoveSpec("enlargement", xi=(0, 0), alpha=0)

    def test_family_enlargement(self):
        rng = random.Random(7)
        for name, colors, point in (("trefoil", [1], "1/3"), ("clasp2", [1, 2], "1/3,2/5"),
                                    ("fox", [3], "1/2,1/4,3/4")):
            with self.subTest(model=name):
                model = load_bundled(name)
                enlarged = enlarge_family(model, colors, rng)
                self.assertEqual(validate(enlarged), [])
                self.assertEqual(enlarged.n, model.n + 2)
                omega = TorusPoint.parse(point)
                before, after = signature(model, omega), signature(enlarged, omega)
                self.assertEqual((after.sigma, after.eta), (before.sigma, before.eta))


if __name__ == '__main__':
    unittest.main()
