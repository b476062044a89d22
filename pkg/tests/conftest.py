import pytest
from hypothesis import strategies as st

from duorth import ParamSampler, Polynomial, Rational


def rationals(max_num: int = 30, max_den: int = 12):
    return st.builds(
        Rational,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def polynomials(max_degree: int = 8):
    return st.lists(rationals(), min_size=0, max_size=max_degree + 1).map(Polynomial)


@pytest.fixture
def sampler():
    return ParamSampler(20240817)
