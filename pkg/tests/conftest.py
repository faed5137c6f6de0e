import sys
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from sumset_structure import normalize  # noqa: E402


@st.composite
def generator_sets(draw, max_l=16, min_n=3):
    """Normalized sets, drawn as raw integer lists and pushed through normalize."""
    l = draw(st.integers(min_value=max(2, min_n - 1), max_value=max_l))
    interior = draw(st.sets(st.integers(1, l - 1), min_size=min_n - 2, max_size=l - 1)) if l > 1 else set()
    raw = sorted({0, l} | interior)
    return normalize(raw)
