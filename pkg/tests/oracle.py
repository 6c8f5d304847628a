"""Brute-force reference implementations.

Plain dictionaries and loops over labelled cells; shares no code with the
package beyond reading ``dist.cells()``.
"""

import math
from collections import defaultdict


def cells(dist):
    return [(labels, p) for labels, p in dist.cells()]


def marginal(dist, axes):
    out = defaultdict(float)
    for labels, p in cells(dist):
        out[tuple(labels[i] for i in axes)] += p
    return out


def entropy(dist, axes=None):
    axes = range(dist.n_axes) if axes is None else axes
    return -sum(p * math.log(p) for p in marginal(dist, list(axes)).values() if p > 0)


def npi(dist, blocks):
    margs = [marginal(dist, list(b)) for b in blocks]
    total = 0.0
    for labels, p in cells(dist):
        if p == 0:
            continue
        m = 1.0
        for b, marg in zip(blocks, margs):
            m *= marg[tuple(labels[i] for i in b)]
        total += p * math.log(p / m)
    return total


def tc(dist):
    return npi(dist, [[i] for i in range(dist.n_axes)])


def mi(dist, a, b):
    joint = marginal(dist, list(a) + list(b))
    pa, pb = marginal(dist, list(a)), marginal(dist, list(b))
    na = len(a)
    return sum(
        p * math.log(p / (pa[k[:na]] * pb[k[na:]])) for k, p in joint.items() if p > 0
    )


def cmi(dist, a, b, z):
    """``sum p(a,b,z) log p(a,b,z) p(z) / (p(a,z) p(b,z))``."""
    a, b, z = list(a), list(b), list(z)
    pabz = marginal(dist, a + b + z)
    paz, pbz, pz = marginal(dist, a + z), marginal(dist, b + z), marginal(dist, z)
    na, nb = len(a), len(b)
    total = 0.0
    for k, p in pabz.items():
        if p <= 0:
            continue
        ka, kb, kz = k[:na], k[na:na + nb], k[na + nb:]
        total += p * math.log(p * pz[kz] / (paz[ka + kz] * pbz[kb + kz]))
    return total
