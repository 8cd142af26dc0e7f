from hypothesis import strategies as st

from rank2roots.aplus.models import BASE_SEQUENCE
from rank2roots.aplus.service import expand


@st.composite
def aplus_sequences(draw, max_length=10):
    """Members of A+ grown from (1, 1, 1) by random expansions."""
    s = BASE_SEQUENCE
    for _ in range(draw(st.integers(min_value=0, max_value=max_length - 3))):
        s = expand(s, draw(st.integers(min_value=0, max_value=len(s) - 1)))
    return s


def sequences(min_size, max_size, max_entry=5, even=False):
    """Nonnegative sequences; ``even`` keeps only even lengths."""
    strategy = st.lists(st.integers(min_value=0, max_value=max_entry), min_size=min_size, max_size=max_size)
    if even:
        strategy = strategy.filter(lambda s: len(s) % 2 == 0)
    return strategy.map(tuple)
