"""Brute-force references for tests.

These are deliberately naive and capped in size.  Nothing on a selection
path may call them.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .data import EmpiricalMeasure1D
from .exceptions import OracleError

MAX_ASSIGNMENT_N = 8
MAX_DENOMINATOR = 10_000


def exact_ot_assignment(x, y) -> float:
    """Minimum mean Euclidean matching cost over all ``n!`` permutations.

    For uniform marginals of equal size an optimal coupling is a
    permutation, so this is the exact W1 between the two sample sets.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if y.ndim == 1:
        y = y[:, None]
    n = x.shape[0]
    if y.shape[0] != n:
        raise OracleError(f"assignment oracle needs equal sample counts, got {n} and {y.shape[0]}")
    if n > MAX_ASSIGNMENT_N:
        raise OracleError(f"n={n} exceeds the enumeration cap of {MAX_ASSIGNMENT_N}")
    if x.shape[1] != y.shape[1]:
        raise OracleError("dimension mismatch")
    dist = [[math.sqrt(sum((x[i, k] - y[j, k]) ** 2 for k in range(x.shape[1])))
             for j in range(n)] for i in range(n)]
    best = math.inf
    for perm in itertools.permutations(range(n)):
        best = min(best, math.fsum(dist[i][perm[i]] for i in range(n)))
    return best / n


def _as_fractions(weights) -> list[Fraction]:
    out = []
    for w in weights:
        fr = Fraction(float(w)).limit_denominator(MAX_DENOMINATOR)
        if fr <= 0 or abs(float(fr) - float(w)) > 1e-12:
            raise OracleError(f"weight {w!r} is not a rational with denominator <= {MAX_DENOMINATOR}")
        out.append(fr)
    return out


def replicate_to_uniform(p: EmpiricalMeasure1D, q: EmpiricalMeasure1D):
    """Blow both measures up to uniform measures with a common atom count.

    Each atom is repeated ``weight * L`` times, with ``L`` the least common
    multiple of all weight denominators.
    """
    fp, fq = _as_fractions(p.weights), _as_fractions(q.weights)
    if sum(fp) != 1 or sum(fq) != 1:
        raise OracleError("rationalized weights do not sum to exactly 1")
    lcm = 1
    for fr in fp + fq:
        lcm = lcm * fr.denominator // math.gcd(lcm, fr.denominator)
    if lcm > MAX_DENOMINATOR:
        raise OracleError(f"common denominator {lcm} exceeds {MAX_DENOMINATOR}")

    def blow_up(m, fracs):
        counts = [int(fr * lcm) for fr in fracs]
        return EmpiricalMeasure1D(np.repeat(m.values, counts))

    return blow_up(p, fp), blow_up(q, fq)
