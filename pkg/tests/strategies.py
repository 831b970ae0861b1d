from fractions import Fraction

from hypothesis import strategies as st

from ambiguity_engine import CredalSet, TfcPreference, Vector


def rationals(lo=-256, hi=256, den=64):
    return st.integers(lo, hi).map(lambda k: Fraction(k, den))


@st.composite
def priors(draw, n):
    w = draw(st.lists(st.integers(0, 12), min_size=n, max_size=n).filter(lambda w: sum(w) > 0))
    s = sum(w)
    return tuple(Fraction(a, s) for a in w)


@st.composite
def credal_sets(draw, n=None, max_vertices=5):
    if n is None:
        n = draw(st.sampled_from((2, 3, 4)))
    verts = draw(st.lists(priors(n), min_size=1, max_size=max_vertices))
    return CredalSet(verts)


def acts(n):
    return st.lists(rationals(), min_size=n, max_size=n).map(Vector)


@st.composite
def set_and_act(draw):
    s = draw(credal_sets())
    return s, draw(acts(s.dim))


@st.composite
def tfc_prefs(draw, n=None):
    C = draw(credal_sets(n))
    w = draw(st.lists(st.integers(0, 4), min_size=len(C.vertices), max_size=len(C.vertices)).filter(lambda w: sum(w) > 0))
    s = sum(w)
    shared = [sum(Fraction(wi, s) * v[i] for wi, v in zip(w, C.vertices)) for i in range(C.dim)]
    extra = draw(st.lists(priors(C.dim), max_size=3))
    return TfcPreference(C, [shared] + extra)
