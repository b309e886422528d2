from fractions import Fraction

from hypothesis import strategies as st

small_fraction = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


def rational_lists(min_size=1, max_size=12):
    return st.lists(small_fraction, min_size=min_size, max_size=max_size)
