import numpy as np
from hypothesis import strategies as st

finite = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False)
complex_numbers = st.builds(complex, finite, finite)
ranks = st.integers(min_value=1, max_value=4)


@st.composite
def spin_tensors(draw, rank=None):
    from spincasimir.spinor_core import SpinTensor

    m = draw(ranks) if rank is None else rank
    comps = draw(st.lists(complex_numbers, min_size=m + 1, max_size=m + 1))
    return SpinTensor(np.array(comps))


@st.composite
def wavevectors(draw, min_norm=0.1, max_norm=5.0):
    v = np.array(draw(st.lists(finite, min_size=3, max_size=3)))
    n = np.linalg.norm(v)
    if n < 1e-3:
        v, n = np.array([0.3, -0.4, 0.5]), np.linalg.norm([0.3, -0.4, 0.5])
    scale = draw(st.floats(min_value=min_norm, max_value=max_norm))
    return v / n * scale


@st.composite
def unit_vectors(draw):
    return draw(wavevectors(1.0, 1.0))
