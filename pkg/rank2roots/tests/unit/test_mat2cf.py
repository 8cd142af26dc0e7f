import pytest
from hamcrest import assert_that, equal_to, is_
from hypothesis import given as hypothesis_given
from hypothesis import strategies as st

from rank2roots.mat2cf.core import ConvergentPair, Mat2, OrderResult
from rank2roots.mat2cf.service import (
    convergents,
    convergents_negative,
    eta,
    eta_inverse,
    eta_product,
    matrix_order,
    tau,
)
from rank2roots.oracle.service import naive_order
from rank2roots.shared.exceptions import InputValidationError, NotUnimodularError
from rank2roots.tests.givenpy import given, then, when

small_entries = st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=4)


def prepare_matrix(matrix: Mat2):
    def step(context):
        context.matrix = matrix

    return step


class TestMat2:
    def test_product_and_inverse_are_exact(self):
        with given([prepare_matrix(Mat2(2, 1, 1, 1))]) as context:
            with when("multiplying the matrix by its inverse"):
                product = context.matrix @ context.matrix.inverse()

            with then("the identity comes back"):
                assert_that(product.is_identity(), is_(True))
                assert_that(context.matrix.det, equal_to(1))
                assert_that(context.matrix.trace, equal_to(3))

    def test_inverse_of_singular_matrix_raises(self):
        with given([prepare_matrix(Mat2(2, 0, 0, 1))]) as context:
            with then("only unimodular matrices are invertible"):
                with pytest.raises(NotUnimodularError) as exc_info:
                    context.matrix.inverse()
                assert_that(exc_info.value.details["determinant"], equal_to(2))

    def test_powers_of_eta_one(self):
        with given([prepare_matrix(eta(1))]) as context:
            with then("the third power is minus the identity and the sixth the identity"):
                assert_that((context.matrix**3).is_minus_identity(), is_(True))
                assert_that((context.matrix**6).is_identity(), is_(True))
                assert_that(context.matrix**-1, equal_to(eta_inverse(1)))

    def test_apply_and_columns(self):
        matrix = Mat2.from_rows(((1, 2), (3, 4)))
        assert_that(matrix.apply((1, 0)), equal_to(matrix.first_column))
        assert_that(matrix.apply((0, 1)), equal_to(matrix.second_column))
        assert_that(matrix.to_rows(), equal_to([[1, 2], [3, 4]]))
        assert_that(str(matrix), equal_to("[[1,2],[3,4]]"))


class TestEta:
    @hypothesis_given(st.integers(min_value=-50, max_value=50))
    def test_tau_conjugates_eta_to_its_inverse(self, i):
        assert_that(tau() @ eta(i) @ tau(), equal_to(eta_inverse(i)))
        assert_that((eta(i) @ eta_inverse(i)).is_identity(), is_(True))

    @hypothesis_given(st.lists(st.integers(min_value=-6, max_value=6), max_size=8))
    def test_product_matches_plain_multiplication(self, seq):
        expected = Mat2.identity()
        for c in seq:
            expected = expected @ eta(c)
        assert_that(eta_product(seq), equal_to(expected))

    def test_product_of_triple_ones_is_minus_identity(self):
        assert_that(eta_product((1, 1, 1)).is_minus_identity(), is_(True))
        assert_that(eta_product(()).is_identity(), is_(True))

    @hypothesis_given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
    def test_closed_form_of_three_factors(self, a, b, c):
        expected = Mat2(a * b * c - a - c, 1 - a * b, b * c - 1, -b)
        assert_that(eta_product((a, b, c)), equal_to(expected))


class TestMatrixOrder:
    @pytest.mark.parametrize(
        "matrix, order",
        [
            (Mat2.identity(), 1),
            (-Mat2.identity(), 2),
            (eta(1), 6),
            (eta(0), 4),
            (eta(-1), 3),
            (eta_product((1, 1)), 3),
            (tau(), 2),
            (Mat2(1, 1, 0, -1), 2),
        ],
    )
    def test_finite_orders(self, matrix, order):
        assert_that(matrix_order(matrix), equal_to(OrderResult.finite(order)))

    @pytest.mark.parametrize("matrix", [eta(2), eta(3), eta(-2), Mat2(1, 1, 0, 1), Mat2(1, 1, 1, 0)])
    def test_infinite_orders(self, matrix):
        result = matrix_order(matrix)
        assert_that(result.is_finite, is_(False))
        assert_that(str(result), equal_to("Infinite"))

    def test_non_unimodular_matrix_raises(self):
        with pytest.raises(NotUnimodularError):
            matrix_order(Mat2(2, 0, 0, 2))

    @hypothesis_given(small_entries, st.booleans())
    def test_classification_agrees_with_repeated_multiplication(self, seq, twisted):
        matrix = eta_product(seq)
        if twisted:
            matrix = tau() @ matrix
        assert_that(matrix_order(matrix), equal_to(naive_order(matrix)))


class TestConvergents:
    def test_fibonacci_convergents(self):
        with when("expanding 1 + 1/(1 + 1/(1 + ...))"):
            pairs = convergents(1, [(1, 1), (1, 1), (1, 1)], 3)

        with then("numerators and denominators are Fibonacci numbers"):
            assert_that(
                pairs,
                equal_to([ConvergentPair(1, 1), ConvergentPair(2, 1), ConvergentPair(3, 2), ConvergentPair(5, 3)]),
            )

    def test_negative_numerators(self):
        pairs = convergents_negative(2, [2, 2], 2)
        assert_that([(p.A, p.B) for p in pairs], equal_to([(2, 1), (3, 2), (4, 3)]))

    def test_count_out_of_range_raises(self):
        with pytest.raises(InputValidationError):
            convergents(1, [(1, 1)], 2)
        with pytest.raises(InputValidationError):
            convergents_negative(1, [1], -1)

    @hypothesis_given(st.lists(st.integers(min_value=-7, max_value=7), min_size=2, max_size=9))
    def test_eta_product_columns_are_convergents(self, seq):
        with when("computing the product and the convergents of the same sequence"):
            n = len(seq)
            product = eta_product(seq)
            pairs = convergents_negative(seq[0], seq[1:], n - 1)

        with then("the product is [[A_{n-1}, -A_{n-2}], [B_{n-1}, -B_{n-2}]]"):
            assert_that(product.first_column, equal_to((pairs[n - 1].A, pairs[n - 1].B)))
            assert_that(product.second_column, equal_to((-pairs[n - 2].A, -pairs[n - 2].B)))
