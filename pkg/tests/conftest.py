import os

from hypothesis import HealthCheck, settings, strategies as st

from pcurves.ffpoly import FieldSpec, Poly

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (3, 2), (2, 3), (5, 2), (3, 3)]


@st.composite
def fields(draw, odd=False):
    choices = [f for f in SMALL_FIELDS if not (odd and f[0] == 2)]
    p, n = draw(st.sampled_from(choices))
    return FieldSpec(p, n)


def elements(spec):
    return st.integers(0, spec.q - 1).map(spec.from_code)


def polys(spec, max_degree=6):
    return st.lists(st.integers(0, spec.q - 1), max_size=max_degree + 1).map(
        lambda cs: Poly.from_codes(spec, cs))


def monic_polys(spec, degree):
    return st.lists(st.integers(0, spec.q - 1), min_size=degree, max_size=degree).map(
        lambda cs: Poly.from_codes(spec, cs + [1]))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
