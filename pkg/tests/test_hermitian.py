import unittest

from api.cyclotomic import CyclotomicElement
from api.errors import DimensionError, DomainError, IndeterminateError
from api.hermitian import HermitianMatrix, eigen_oracle, signature_nullity


class ExactInertia(unittest.TestCase):
    """TestCase Class
    Signature and nullity by sign-scaled elimination over Q(zeta_q)
    """

    @classmethod
    def setUpClass(self):
        i = CyclotomicElement.imaginary_unit()
        # H(i) of the trefoil
        self.trefoil = HermitianMatrix([[-2, 1 - i], [1 + i, -2]])
        self.cases = {
            "diagonal": (HermitianMatrix.from_integers([[1, 0, 0], [0, -1, 0], [0, 0, 0]]), (0, 1)),
            "hyperbolic": (HermitianMatrix.from_integers([[0, 1], [1, 0]]), (0, 0)),
            "zero": (HermitianMatrix.from_integers([[0, 0], [0, 0]]), (0, 2)),
            "rank_one": (HermitianMatrix.from_integers([[1, 1], [1, 1]]), (1, 1)),
            "complex_pair": (HermitianMatrix([[0, i, 0], [-i, 0, 0], [0, 0, 3]]), (1, 0)),
            "trefoil": (self.trefoil, (-2, 0)),
            "empty": (HermitianMatrix([]), (0, 0)),
        }

    def test_known_inertia(self):
        for name, (h, expected) in self.cases.items():
            with self.subTest(name=name):
                self.assertEqual(signature_nullity(h), expected)

    def test_oracle_agrees(self):
        for name, (h, expected) in self.cases.items():
            with self.subTest(name=name):
                self.assertEqual(eigen_oracle(h), expected)

    def test_determinant(self):
        self.assertEqual(self.trefoil.determinant(), 2)
        self.assertEqual(HermitianMatrix.from_integers([[1, 1], [1, 1]]).determinant(), 0)

    def test_bordered(self):
        grown = HermitianMatrix.from_integers([[1]]).bordered([0], -1)
        self.assertEqual(grown.signature_nullity(), (0, 0))
        self.assertEqual(grown.size, 2)

    def test_not_hermitian(self):
        with self.assertRaises(DomainError):
            HermitianMatrix.from_integers([[1, 2], [3, 1]])

    def test_not_square(self):
        with self.assertRaises(DimensionError):
            HermitianMatrix.from_integers([[1, 2]])

    def test_conductor(self):
        self.assertEqual(self.trefoil.conductor, 4)


class ApproximateInertia(unittest.TestCase):
    """TestCase Class
    numpy eigenvalues with a relative tolerance and guard band
    """

    def test_clear_eigenvalues(self):
        h = HermitianMatrix.from_complex([[1, 0], [0, -1]])
        self.assertEqual(h.signature_nullity(), (0, 0))

    def test_zero_eigenvalue(self):
        h = HermitianMatrix.from_complex([[1, 1], [1, 1]])
        self.assertEqual(h.signature_nullity(1e-9), (1, 1))

    def test_guard_band(self):
        h = HermitianMatrix.from_complex([[1, 0], [0, 1e-9]])
        with self.assertRaises(IndeterminateError):
            h.signature_nullity(1e-9)

    def test_complex_entries(self):
        h = HermitianMatrix.from_complex([[2, 1j], [-1j, 2]])
        self.assertEqual(h.signature_nullity(), (2, 0))


if __name__ == '__main__':
    unittest.main()
