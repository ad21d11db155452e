"""Seeded random draws shared by the verify suites and the test corpus.

Entries come from a small integer box so determinants stay tame and any
failure reproduces from the seed alone.  Degenerate draws are rejected
and retried; running out of retries is a hard error, not a skip.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import mat_rank
from .jet import Distribution
from .mae import (BoillatForm, RankError, TrivialEquation, TwoForm,
                  build_ED, build_E_omega, kernel_in_c1)

BOX = (-2, 2)
MAX_DRAWS = 400


def rng_for(tag: str, seed: int) -> random.Random:
    """One stream per (tag, seed) pair; tags keep suites independent."""
    return random.Random(f"{tag}-{seed}")


def _entry(rng) -> Fraction:
    return Fraction(rng.randint(*BOX))


def random_distribution(rng, vertical_rank: int = 1) -> Distribution:
    """A rank-3 constant span with the requested vertical rank.

    Rank 1 draws two horizontal generators in solved form plus one nonzero
    vertical; rank 2 draws one horizontal generator and two independent
    verticals.  Either way the span has rank 3 by construction.
    """
    if vertical_rank == 1:
        for _ in range(MAX_DRAWS):
            vert = tuple(_entry(rng) for _ in range(3))
            if not any(vert):
                continue
            g1 = (1, 0) + tuple(_entry(rng) for _ in range(3))
            g2 = (0, 1) + tuple(_entry(rng) for _ in range(3))
            return Distribution.make(g1, g2, (0, 0) + vert)
    elif vertical_rank == 2:
        for _ in range(MAX_DRAWS):
            h = tuple(_entry(rng) for _ in range(5))
            if h[0] == 0 and h[1] == 0:
                continue
            v1 = (0, 0) + tuple(_entry(rng) for _ in range(3))
            v2 = (0, 0) + tuple(_entry(rng) for _ in range(3))
            if mat_rank([list(v1[2:]), list(v2[2:])]) != 2:
                continue
            return Distribution.make(h, v1, v2)
    else:
        raise ValueError(f"vertical rank {vertical_rank} is not 1 or 2")
    raise RuntimeError("exhausted the draw budget for a distribution")


def random_boillat(rng) -> BoillatForm:
    """A normal form whose rebuilt polynomial has a nonzero symbol."""
    for _ in range(MAX_DRAWS):
        a = tuple(_entry(rng) for _ in range(3))
        b = tuple(_entry(rng) for _ in range(4))
        c = _entry(rng)
        if not (any(a) or any(b)):
            continue
        return BoillatForm(a, b, c)
    raise RuntimeError("exhausted the draw budget for a normal form")


def random_covector_pair(rng) -> tuple:
    """Two 8-component covectors with a healthy wedge.

    Degenerate draws (kernel of the wrong rank, or a trivial rebuilt
    equation on either route) are rejected.
    """
    for _ in range(MAX_DRAWS):
        r1 = tuple(_entry(rng) for _ in range(8))
        r2 = tuple(_entry(rng) for _ in range(8))
        try:
            span = kernel_in_c1(r1, r2)
            build_ED(span)
            build_E_omega(TwoForm.from_wedge(r1, r2))
        except (RankError, TrivialEquation):
            continue
        return r1, r2
    raise RuntimeError("exhausted the draw budget for a covector pair")
