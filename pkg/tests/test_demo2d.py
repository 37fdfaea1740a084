import math

import numpy as np
import pytest

from coherent_imaging.beam import theta_prime_max, GaussianBeam
from coherent_imaging.chebyshev import Region, envelope_region, peak_widths
from coherent_imaging.demo2d import (
    GridSpec,
    RadialBeam2D,
    three_beam_layout,
    grid_argmax,
    log_profile_grid,
    radial_theta,
    ring_query,
)

GRID = GridSpec()
DB = 1e-2


@pytest.fixture(scope="module")
def field():
    return log_profile_grid(three_beam_layout(DB), GRID)


def test_grid_default_resolution():
    assert GRID.cell == pytest.approx(0.01)
    assert log_profile_grid(three_beam_layout(), GridSpec(nx=5, ny=7)).shape == (7, 5)


def test_rings_pass_through_origin():
    for b in three_beam_layout(DB):
        assert radial_theta(b, 0.0, 0.0) == pytest.approx(math.pi, rel=1e-14)
        assert ring_query(b, (0.0, 0.0)) == pytest.approx(1.0, abs=1e-12)


def test_beam_center_regions():
    # the S_27 main lobe is narrow enough that the center lands in the sidelobes;
    # the S_3 main lobe (half-width ~2.46 rad) still covers theta = sqrt(e) pi
    for b in three_beam_layout(DB):
        theta = radial_theta(b, *b.center)
        region = envelope_region(theta, peak_widths(b.params, 0.5))
        if b.sequence_n == 3:
            assert region is Region.OUTER
            assert ring_query(b, b.center) <= DB**2 * (1 + 1e-9)
        else:
            assert region is Region.TRANSITION
            assert DB**2 < ring_query(b, b.center) < 1


def test_argmax_at_origin(field):
    x, y, v = grid_argmax(field, GRID)
    assert math.hypot(x, y) <= GRID.cell
    assert v == pytest.approx(0.0, abs=1e-9)


def test_global_max_is_unique(field):
    top = field.max()
    assert np.count_nonzero(field >= top - 1e-12) == 1


def test_secondary_maxima_bounded(field):
    # away from the common intersection at least one beam sits in its sidelobes
    xs, ys = GRID.axes()
    X, Y = np.meshgrid(xs, ys)
    far = np.hypot(X, Y) > 0.3
    assert field[far].max() <= math.log(DB**2) + 1e-9


def test_floor_keeps_field_finite():
    f = log_profile_grid([RadialBeam2D((0, 0), 1, DB)], GridSpec(nx=41, ny=41))
    assert np.all(np.isfinite(f))


def test_single_beam_radial_symmetry():
    b = RadialBeam2D((0.3, -0.2), 2, DB)
    rng = np.random.default_rng(0)
    for r in rng.uniform(0, 2.5, 20):
        angles = rng.uniform(0, 2 * math.pi, 8)
        vals = [ring_query(b, (0.3 + r * math.cos(a), -0.2 + r * math.sin(a))) for a in angles]
        np.testing.assert_allclose(vals, vals[0], rtol=1e-9, atol=1e-15)


def _rotate(p, a):
    c, s = math.cos(a), math.sin(a)
    return (c * p[0] - s * p[1], s * p[0] + c * p[1])


def test_rotation_invariance():
    rng = np.random.default_rng(1)
    beams = three_beam_layout(DB)
    for _ in range(10):
        obj = tuple(rng.uniform(-1, 1, 2))
        a = rng.uniform(0, 2 * math.pi)
        rot = [RadialBeam2D(_rotate(b.center, a), b.sequence_n, b.delta_b) for b in beams]
        v0 = sum(math.log(max(ring_query(b, obj), 1e-300)) for b in beams)
        v1 = sum(math.log(max(ring_query(b, _rotate(obj, a)), 1e-300)) for b in rot)
        assert v1 == pytest.approx(v0, abs=1e-9)


def _annulus_width(n):
    # radial extent of the main lobe (p >= delta_b^2) around r = sqrt 2
    b = RadialBeam2D((0.0, 0.0), n, DB)
    r = np.linspace(math.sqrt(2) - 0.8, math.sqrt(2) + 0.8, 400001)
    p = np.array([ring_query(b, (ri, 0.0)) for ri in r[::50]])
    coarse = r[::50][p >= DB**2 * (1 - 1e-9)]
    # refine on the contiguous block containing sqrt 2
    mid = np.argmin(abs(coarse - math.sqrt(2)))
    lo = hi = mid
    step = r[50] - r[0]
    while lo > 0 and coarse[lo] - coarse[lo - 1] < 1.5 * step:
        lo -= 1
    while hi < len(coarse) - 1 and coarse[hi + 1] - coarse[hi] < 1.5 * step:
        hi += 1
    return coarse[hi] - coarse[lo]


def test_annulus_shrinks_with_length():
    w = [_annulus_width(n) for n in (2, 3, 4)]
    assert w[0] / w[1] == pytest.approx(3, rel=0.02)
    assert w[1] / w[2] == pytest.approx(3, rel=0.02)


def test_annulus_matches_linearized_width():
    tp = theta_prime_max(GaussianBeam())
    for n in (3, 4):
        pred = 2 * peak_widths(RadialBeam2D((0, 0), n, DB).params, 0.5).theta_b / tp
        assert _annulus_width(n) == pytest.approx(pred, rel=0.02)


def test_empty_beams_rejected():
    with pytest.raises(ValueError):
        log_profile_grid([])
    with pytest.raises(ValueError):
        RadialBeam2D((0, 0), 1, lam=0)
