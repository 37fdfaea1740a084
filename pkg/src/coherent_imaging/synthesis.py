"""Closed-form phases for the Chebyshev sequences of length 3**n.

The broadband family is built by nesting the three-pulse palindrome
``(chi, 0, chi)`` inside itself with a rescaled sidelobe parameter at every
level; the narrowband family follows from a toggling-frame rewrite.
"""
from dataclasses import dataclass
import math

from .chebyshev import beta
from .su2 import BROADBAND, NARROWBAND, PulseSequence

__all__ = [
    "SequenceSpec",
    "chi3",
    "nest",
    "inner_delta",
    "synth_broadband",
    "toggle_to_narrowband",
    "synth",
    "synth_for_length",
]


@dataclass(frozen=True)
class SequenceSpec:
    n: int
    delta_b: float
    variant: str = NARROWBAND

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"nesting depth must be a positive integer, got {self.n}")
        if not 0.0 < self.delta_b < 1.0:
            raise ValueError(f"delta_b must lie in (0, 1), got {self.delta_b}")
        if self.variant not in (NARROWBAND, BROADBAND):
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def L(self):
        return 3**self.n


def chi3(delta_b):
    """Phase of the outer pulses of the broadband palindrome (chi, 0, chi)."""
    b = beta(3, delta_b)
    return 2.0 * math.atan(math.tan(math.pi / 3.0) * math.sqrt(max(0.0, 1.0 - b**-2)))


def nest(outer, inner):
    """(a1, a2, ...) o (b1, b2, ...) = (a1+b1, a1+b2, ..., a2+b1, ...)."""
    if not outer or not inner:
        raise ValueError("nest needs two nonempty phase lists")
    return tuple(a + b for a in outer for b in inner)


def inner_delta(delta_b):
    """Sidelobe parameter handed to the next nesting level: 1 / beta_3(delta_b)."""
    return 1.0 / beta(3, delta_b)


def _broadband_phases(n, delta_b):
    c = chi3(delta_b)
    scaffold = (c, 0.0, c)
    if n == 1:
        return scaffold
    return nest(scaffold, _broadband_phases(n - 1, inner_delta(delta_b)))


def synth_broadband(spec):
    return PulseSequence(_broadband_phases(spec.n, spec.delta_b), BROADBAND, spec.delta_b)


def toggle_to_narrowband(broadband_phases):
    """phi_k = (-1)^k chi_k + 2 * sum_{h<k} (-1)^h chi_h, with k starting at 1."""
    out = []
    running = 0.0
    for k, chi in enumerate(broadband_phases, start=1):
        signed = -chi if k % 2 else chi
        out.append(signed + 2.0 * running)
        running += signed
    return tuple(out)


def synth(spec):
    bb = synth_broadband(spec)
    if spec.variant == BROADBAND:
        return bb
    return PulseSequence(toggle_to_narrowband(bb.phases), NARROWBAND, spec.delta_b)


def synth_for_length(L, delta_b, variant=NARROWBAND):
    """Convenience wrapper taking the pulse count instead of the nesting depth."""
    if L == 1:
        return PulseSequence((0.0,), variant, delta_b)
    n = round(math.log(L, 3))
    if 3**n != L:
        raise ValueError(f"only lengths 3**n are synthesizable, got {L}")
    return synth(SequenceSpec(n, delta_b, variant))
