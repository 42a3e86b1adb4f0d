from fractions import Fraction

from hypothesis import strategies as st

from sdtool.linalg import Matrix
from sdtool.multiform import MultiForm
from sdtool.commuting import monomial_exponents

small_ints = st.integers(-4, 4)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


def matrices(n, elements=small_ints):
    return st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix)


@st.composite
def invertible_matrices(draw, n, elements=small_ints):
    m = draw(matrices(n, elements))
    if m.det() == 0:
        # Shift along the diagonal until invertible; always terminates for a finite spectrum.
        k = 1
        while (m + Matrix.scalar(n, k)).det() == 0:
            k += 1
        m = m + Matrix.scalar(n, k)
    return m


@st.composite
def multiforms(draw, d, degree, coefs=rationals):
    exps = list(monomial_exponents(d, degree))
    values = draw(st.lists(coefs, min_size=len(exps), max_size=len(exps)))
    return MultiForm(d, degree, zip(exps, values))
