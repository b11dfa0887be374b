import unittest

from api.errors import DimensionError, DomainError
from api.laurent import (LaurentFraction, LaurentMatrix, LaurentPoly, bar_involution, det_expansion,
                         difference, normalize_unit)


class LaurentPolyText(unittest.TestCase):
    """TestCase Class
    Printing and parsing of Laurent polynomials
    """

    def test_print_descending_lex(self):
        self.assertEqual(str(LaurentPoly.parse("1 - t + t^2")), "t^2 - t + 1")

    def test_print_multivariable(self):
        self.assertEqual(str(LaurentPoly.parse("1 + t1*t2", 2)), "t1*t2 + 1")

    def test_print_half_powers(self):
        p = LaurentPoly.half_variable(1, 0, 1) - LaurentPoly.half_variable(1, 0, -1)
        self.assertEqual(str(p), "t^(1/2) - t^(-1/2)")

    def test_parse_round_trip(self):
        for text, num_vars in (("2 - 3*t1^-1*t2^2", 2), ("t^(1/2) - t^(-1/2)", 1),
                               ("-t1*t2*t3 + 1", 3), ("5", 1), ("t^-2 + 4*t^3", 1)):
            p = LaurentPoly.parse(text, num_vars)
            self.assertEqual(LaurentPoly.parse(str(p), num_vars), p)

    def test_zero_prints_zero(self):
        self.assertEqual(str(LaurentPoly.zero(2)), "0")

    def test_parse_rejects_extra_variable(self):
        with self.assertRaises(DomainError):
            LaurentPoly.parse("t2", 1)

    def test_parse_rejects_garbage(self):
        with self.assertRaises(DomainError):
            LaurentPoly.parse("x + 1")


class LaurentPolyArithmetic(unittest.TestCase):
    """TestCase Class
    Ring operations, units and exact division
    """

    @classmethod
    def setUpClass(self):
        self.t = LaurentPoly.variable(1, 0)

    def test_difference_of_squares(self):
        self.assertEqual((self.t - 1) * (self.t + 1), LaurentPoly.parse("t^2 - 1"))

    def test_unit_inverse(self):
        self.assertEqual(self.t ** -2 * self.t ** 2, LaurentPoly.one(1))

    def test_non_unit_inverse(self):
        with self.assertRaises(ArithmeticError):
            (self.t + 1) ** -1

    def test_exact_division(self):
        self.assertEqual(LaurentPoly.parse("t^2 - 1").exquo(self.t - 1), self.t + 1)

    def test_inexact_division(self):
        with self.assertRaises(ArithmeticError):
            LaurentPoly.parse("t^2 + 1").exquo(self.t - 1)

    def test_multivariable_division_with_negative_exponents(self):
        divisor = LaurentPoly.parse("t1*t2^-1 - 2*t2", 2)
        quotient = LaurentPoly.parse("t1^-2 + 3*t1*t2^(1/2)", 2)
        self.assertEqual((divisor * quotient).exquo(divisor), quotient)
        with self.assertRaises(ArithmeticError):
            LaurentPoly.parse("t1 + t2", 2).exquo(divisor)

    def test_polynomial_part_has_no_monomial_factor(self):
        p = LaurentPoly.parse("t^-2 + t^3")
        self.assertEqual(p.shift_exponents, (-4,))
        self.assertEqual(p.polynomial.degrees(), (10,))
        self.assertEqual(p, LaurentPoly.parse("t^3 + t^-2").shift([4]).shift([-4]))

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            self.t.exquo(LaurentPoly.zero(1))

    def test_bar_involution(self):
        p = LaurentPoly.parse("t1*t2^-1 + 3", 2)
        self.assertEqual(bar_involution(p), LaurentPoly.parse("t1^-1*t2 + 3", 2))
        self.assertEqual(p.bar().bar(), p)

    def test_normalize_unit(self):
        p = LaurentPoly.parse("-t^-1 + t^-2 - t^-3")
        self.assertEqual(str(normalize_unit(p)), "t^2 - t + 1")

    def test_normalize_half_unit(self):
        p = LaurentPoly.half_variable(1, 0, 1) - LaurentPoly.half_variable(1, 0, -1)
        self.assertEqual(str(normalize_unit(p)), "t - 1")

    def test_substitute_roots_needs_integral_exponents(self):
        with self.assertRaises(DomainError):
            LaurentPoly.half_variable(1, 0, 1).substitute_roots()

    def test_substitutions_are_inverse(self):
        p = LaurentPoly.parse("t^2 - 1 + t^-2")
        self.assertEqual(p.substitute_roots().substitute_squares(), p)

    def test_mixed_variable_counts(self):
        with self.assertRaises(DimensionError):
            LaurentPoly.one(1) + LaurentPoly.one(2)


class LaurentMatrixDeterminant(unittest.TestCase):
    """TestCase Class
    DomainMatrix determinant against cofactor expansion
    """

    def test_two_by_two(self):
        t = LaurentPoly.variable(1, 0)
        m = LaurentMatrix.from_rows([[t, LaurentPoly.one(1)], [LaurentPoly.one(1), t]], 1)
        self.assertEqual(m.det(), LaurentPoly.parse("t^2 - 1"))

    def test_trefoil_alexander(self):
        t = LaurentPoly.variable(1, 0)
        plus = LaurentMatrix.from_integers([[-1, 0], [1, -1]], 1)
        minus = LaurentMatrix.from_integers([[-1, 1], [0, -1]], 1)
        self.assertEqual((plus - minus * t).det(), LaurentPoly.parse("t^2 - t + 1"))

    def test_negative_exponents_match_expansion(self):
        rows = [["t1^-1 + t2", "2", "t1*t2^-2"],
                ["0", "t2^-1 - 1", "3*t1"],
                ["t1^2", "-t1^-1*t2", "1 + t1"]]
        m = LaurentMatrix.from_rows([[LaurentPoly.parse(e, 2) for e in row] for row in rows], 2)
        self.assertEqual(m.det(), det_expansion(m))

    def test_zero_column(self):
        m = LaurentMatrix.from_integers([[0, 1], [0, 2]], 1)
        self.assertTrue(m.det().is_zero())

    def test_empty_matrix(self):
        self.assertEqual(LaurentMatrix.zeros(0, 0, 2).det(), LaurentPoly.one(2))

    def test_non_square(self):
        with self.assertRaises(DimensionError):
            LaurentMatrix.zeros(2, 3, 1).det()

    def test_transpose_determinant(self):
        m = LaurentMatrix.from_rows([[LaurentPoly.parse("t + 2"), LaurentPoly.parse("t^-1")],
                                     [LaurentPoly.parse("3"), LaurentPoly.parse("t^2 - t")]], 1)
        self.assertEqual(m.transpose().det(), m.det())


class LaurentFractionEquality(unittest.TestCase):
    """TestCase Class
    Fractions with factored denominators
    """

    def test_cross_multiplication(self):
        left = LaurentFraction(LaurentPoly.parse("t^2 - t^-2"), [1])
        self.assertEqual(left, LaurentPoly.parse("t + t^-1"))

    def test_denominator(self):
        self.assertEqual(str(LaurentFraction(LaurentPoly.one(1), [1]).denominator), "t - t^-1")
        self.assertEqual(difference(2, 1), LaurentPoly.parse("t2 - t2^-1", 2))

    def test_invalid_powers(self):
        with self.assertRaises(DomainError):
            LaurentFraction(LaurentPoly.one(2), [1])


if __name__ == '__main__':
    unittest.main()
