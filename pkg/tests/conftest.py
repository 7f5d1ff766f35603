from fractions import Fraction

import pytest

from awlattice.exact import QContext


@pytest.fixture
def ctx():
    return QContext(Fraction(2))


def F(x, y=1):
    return Fraction(x, y)
