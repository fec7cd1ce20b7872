"""Shared hypothesis strategies and helpers for the test suite."""

from fractions import Fraction

from hypothesis import strategies as st

from online_mssc.core import Request


def budget_grid(pos: int) -> list[Fraction]:
    """Budgets 0, pos/4, ..., 5*pos/4: everything reachable stays below 3/2 * pos."""
    return [Fraction(k * pos, 4) for k in range(6)]


@st.composite
def request_streams(draw, max_n: int = 10, max_r: int = 4, max_m: int = 30):
    """Hypothesis strategy: (n, r, initial order, list of requests)."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    r = draw(st.integers(min_value=1, max_value=min(max_r, n)))
    order = draw(st.permutations(list(range(n))))
    requests = draw(
        st.lists(
            st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1, max_size=r),
            max_size=max_m,
        )
    )
    return n, r, list(order), [sorted(req) for req in requests]


def to_requests(raw: list[list[int]]) -> list[Request]:
    return [Request.of(ids) for ids in raw]
