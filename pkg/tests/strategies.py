"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from qutritsynth.ring import EisensteinInt

small_ints = st.integers(min_value=-10**6, max_value=10**6)
eisenstein = st.builds(EisensteinInt, small_ints, small_ints)
tiny_eisenstein = st.builds(
    EisensteinInt, st.integers(min_value=-50, max_value=50), st.integers(min_value=-50, max_value=50)
)
