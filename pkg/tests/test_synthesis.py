import math

import numpy as np
import pytest

from coherent_imaging.chebyshev import ProfileParams, Region, beta, envelope_region, p_broad, p_narrow, peak_widths
from coherent_imaging.su2 import compose, effective_angle, is_xy_axis, transition_prob
from coherent_imaging.synthesis import (
    SequenceSpec,
    chi3,
    inner_delta,
    nest,
    synth,
    synth_broadband,
    synth_for_length,
    toggle_to_narrowband,
)

from conftest import DELTAS


def unitary_profile(seq, theta):
    return transition_prob(compose(seq, theta))


def test_chi3_limits():
    assert chi3(1.0) == 0.0
    assert chi3(1e-300) == pytest.approx(2 * math.pi / 3, abs=1e-12)
    assert 0 <= chi3(0.5) < 2 * math.pi / 3


def test_chi3_value_and_oracle(theta_grid):
    c = chi3(0.01)
    assert c == pytest.approx(2.043, abs=5e-4)
    p = unitary_profile((c, 0.0, c), theta_grid)
    np.testing.assert_allclose(p, p_broad(theta_grid, ProfileParams(3, 0.01)), atol=1e-10)


def test_nest_examples():
    assert nest((1, 2), (10, 20)) == (11, 21, 12, 22)
    assert nest((0,), (3, 4, 5)) == (3, 4, 5)
    c, d = 0.7, 0.2
    assert nest((c, 0, c), (d, 0, d)) == pytest.approx((c + d, c, c + d, d, 0, d, c + d, c, c + d))
    with pytest.raises(ValueError):
        nest((), (1,))


def test_toggle_examples():
    assert toggle_to_narrowband((0.0,) * 9) == (0.0,) * 9
    c = 0.9
    assert toggle_to_narrowband((c, 0.0, c)) == pytest.approx((-c, -2 * c, -3 * c))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("db", DELTAS)
def test_oracle_equivalence(n, db, theta_grid):
    params = ProfileParams(3**n, db)
    bb = synth(SequenceSpec(n, db, "broadband"))
    nb = synth(SequenceSpec(n, db, "narrowband"))
    assert len(bb) == len(nb) == 3**n
    assert bb.is_palindrome()
    assert np.max(np.abs(unitary_profile(bb, theta_grid) - p_broad(theta_grid, params))) < 1e-9
    assert np.max(np.abs(unitary_profile(nb, theta_grid) - p_narrow(theta_grid, params))) < 1e-9


@pytest.mark.parametrize("db", [0.01, 0.3])
def test_broadband_effective_rotation(db):
    seq = synth_broadband(SequenceSpec(1, db, "broadband"))
    params = ProfileParams(3, db)
    for th in np.linspace(0.05, 2 * np.pi - 0.05, 41):
        U = compose(seq, th)
        assert is_xy_axis(U)
        assert math.cos(effective_angle(U) / 2) ** 2 == pytest.approx(1 - p_broad(th, params), abs=1e-12)


@pytest.mark.parametrize("db", DELTAS)
def test_inner_parameter_recursion(db):
    d = db
    for k in range(1, 7):
        d = inner_delta(d)
        closed = 1.0 / math.cosh(math.acosh(1.0 / db) / 3**k)
        assert d == pytest.approx(closed, rel=1e-12)
        assert d == pytest.approx(1.0 / beta(3**k, db), rel=1e-12)


def test_synth_examples():
    nb = synth(SequenceSpec(1, 0.01, "narrowband"))
    assert transition_prob(compose(nb, math.pi)) == pytest.approx(1.0, abs=1e-12)
    bb = synth(SequenceSpec(2, 0.01, "broadband"))
    assert len(bb) == 9
    # broadband: identity at theta = 0, full inversion at theta = pi
    assert transition_prob(compose(bb, 0.0)) == pytest.approx(0.0, abs=1e-14)
    assert transition_prob(compose(bb, math.pi)) == pytest.approx(1.0, abs=1e-12)
    assert nb.design_delta_b == 0.01 and nb.label == "narrowband"


def test_synth_81_envelope():
    db = 0.01
    seq = synth(SequenceSpec(4, db, "narrowband"))
    theta = np.arange(0, 2 * np.pi, 1e-3)
    p = transition_prob(compose(seq, theta))
    w = peak_widths(ProfileParams(81, db), math.sqrt(0.5))
    outer = np.array([envelope_region(t, w) is Region.OUTER for t in theta])
    assert np.all(p[outer] <= db**2 + 1e-10)


def test_synth_27_broadband_sidelobes():
    db = math.sqrt(7 / 20)
    seq = synth(SequenceSpec(3, db, "broadband"))
    theta = np.arange(0, 2 * np.pi, 1e-3)
    q = 1 - transition_prob(compose(seq, theta))
    w = peak_widths(ProfileParams(27, db), math.sqrt(13 / 20))
    # 1 - p_broad(theta) is the narrowband profile shifted to theta = 0
    outer = np.array([envelope_region(t + math.pi, w) is Region.OUTER for t in theta])
    assert np.all(q[outer] <= db**2 + 1e-10)


def test_spec_validation_and_lengths():
    with pytest.raises(ValueError):
        SequenceSpec(0, 0.1)
    with pytest.raises(ValueError):
        SequenceSpec(2, 1.0)
    with pytest.raises(ValueError):
        synth_for_length(5, 0.1)
    assert len(synth_for_length(1, 0.1)) == 1
    assert len(synth_for_length(243, 0.1)) == 243
