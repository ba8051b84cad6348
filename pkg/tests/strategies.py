"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from snfpowers.exactmat import IntMatrix


def matrices(min_size=1, max_size=4, bound=9):
    """Square integer matrices with entries in [-bound, bound]."""
    def build(m):
        return st.lists(st.lists(st.integers(-bound, bound), min_size=m, max_size=m),
                        min_size=m, max_size=m).map(IntMatrix.from_rows)
    return st.integers(min_size, max_size).flatmap(build)
