"""Weight multiplicities, characters, and dimensions of irreducible modules.

Multiplicities come from the Freudenthal recursion run on the dominant slice
only; full characters are produced by expanding Weyl orbits of the dominant
weights.  The recursion is kept integral by pairing weights against roots in
simple-root coordinates through the symmetrizer; the one division per weight
is checked to be exact.

Characters of product shapes are combined factor-wise; the torus coordinates
of a highest weight ride along unchanged (a central torus acts by a single
character on the whole module).
"""

from __future__ import annotations

from functools import lru_cache

from .rootsys import (
    GroupShape,
    RootSystemData,
    SimpleLieType,
    build_root_system,
    dominant_representative,
)

__all__ = [
    "dominant_character",
    "dominant_character_shape",
    "full_character",
    "iter_character",
    "orbit_iter",
    "dimension",
    "char_tensor",
    "char_exterior",
]


def _dominant_slice(rs: RootSystemData, lam):
    """All dominant weights <= lam (difference in the positive root cone).

    Generated by repeatedly subtracting positive roots and keeping dominant
    weights; covers of the dominance order on dominant weights differ by a
    positive root, so this reaches the whole slice.
    """
    seen = {lam}
    frontier = [lam]
    n = rs.rank
    pos_fund = rs.positive_roots_fund
    while frontier:
        nxt = []
        for w in frontier:
            for f in pos_fund:
                y = tuple(w[k] - f[k] for k in range(n))
                if y not in seen and all(c >= 0 for c in y):
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@lru_cache(maxsize=None)
def dominant_character(t: SimpleLieType, lam: tuple) -> dict:
    """Multiplicities of the dominant weights of the irreducible module R(lam).

    Freudenthal recursion, processed by decreasing coheight so every referenced
    multiplicity is already known.  Do not mutate the returned dict (cached).
    """
    lam = tuple(lam)
    if any(c < 0 for c in lam):
        raise ValueError(f"non-dominant highest weight {lam} for {t}")
    rs = build_root_system(t)
    n = rs.rank
    d = rs.symmetrizer
    slice_ = _dominant_slice(rs, lam)
    coh = rs.coheights
    order = sorted(slice_, key=lambda w: (-sum(coh[k] * w[k] for k in range(n)), w))
    mult = {}
    pos = rs.positive_roots
    pos_fund = rs.positive_roots_fund
    norms = rs.root_norms
    two_rho = tuple([2] * n)
    for w in order:
        if w == lam:
            mult[w] = 1
            continue
        total = 0
        for b, bf, nb in zip(pos, pos_fund, norms):
            # pairing (w + k*b, b) = (w, b) + k*(b, b), all integers;
            # the alpha-string through w has no internal gaps, so stop at the
            # first vanishing multiplicity
            wb = rs.pair_weight_root(w, b)
            k = 1
            while True:
                y = tuple(w[j] + k * bf[j] for j in range(n))
                rep, _ = dominant_representative(rs, y)
                m = mult.get(rep)
                if m is None:
                    break
                total += m * (wb + k * nb)
                k += 1
        # denominator ((lam+rho)^2 - (w+rho)^2) = (lam + w + 2rho, lam - w)
        diff = tuple(lam[j] - w[j] for j in range(n))
        r = rs.fund_to_root(diff)
        assert all(x.denominator == 1 for x in r), "weight outside root lattice"
        s = tuple(lam[j] + w[j] + two_rho[j] for j in range(n))
        den = sum(int(r[k]) * d[k] * s[k] for k in range(n))
        assert den > 0
        num = 2 * total
        assert num % den == 0, f"Freudenthal division not exact at {w}"
        mult[w] = num // den
        assert mult[w] > 0
    return mult


def orbit_iter(rs: RootSystemData, mu):
    """Iterate the Weyl orbit of a dominant weight without a global seen-set.

    Each non-dominant orbit point has a unique canonical parent (reflect at
    the smallest negative coordinate); walking only edges that invert that
    parent map visits every point exactly once.
    """
    n = rs.rank
    stack = [tuple(mu)]
    while stack:
        x = stack.pop()
        yield x
        for i in range(n):
            if x[i] > 0:
                y = rs.reflect(x, i)
                # y[i] = -x[i] < 0; accept only if i is y's first negative
                ok = True
                for j in range(i):
                    if y[j] < 0:
                        ok = False
                        break
                if ok:
                    stack.append(y)


def _factor_char(t: SimpleLieType, lam) -> dict:
    rs = build_root_system(t)
    out = {}
    for mu, m in dominant_character(t, tuple(lam)).items():
        for w in orbit_iter(rs, mu):
            out[w] = m
    return out


def gl_degree_data(shape: GroupShape, lam):
    """Per-weight torus data for a GL-lattice (hat) shape.

    For the basis where pi_i is the i-th wedge-power weight and chi the
    determinant, the determinant coordinate of an individual weight w in the
    character of R(lam) is (deg(lam) - wdeg(w)) / n with
    wdeg(a) = sum k*a_k over the A-factor.  Returns (wdeg coefficient vector,
    deg(lam), n).
    """
    (fi, ti, n) = shape.gl_blocks[0]
    t = shape.factors[fi]
    assert t.family == "A" and t.rank == n - 1 and len(shape.gl_blocks) == 1
    coeffs = tuple(range(1, n))
    deg = sum(k * c for k, c in zip(coeffs, lam[: n - 1])) + n * lam[shape.ss_dim + ti]
    return coeffs, deg, n


def full_character(shape: GroupShape, lam) -> dict:
    """Full weight multiset of R(lam) as a dict over shape coordinates."""
    return dict(iter_character(shape, lam))


def iter_character(shape: GroupShape, lam):
    """Stream (weight, multiplicity) pairs of R(lam) orbit by orbit.

    Used in the restriction hot path; avoids materializing the product when
    the shape is a single simple factor (the only large case in practice).
    For GL-lattice shapes the torus coordinate is computed per weight.
    """
    lam = tuple(lam)
    if not shape.is_dominant(lam):
        raise ValueError(f"non-dominant highest weight {lam}")
    parts, torus = shape.split(lam)
    if shape.gl_blocks:
        coeffs, deg, n = gl_degree_data(shape, lam)
        t = shape.factors[0]
        rs = build_root_system(t)
        for mu, m in dominant_character(t, parts[0]).items():
            for w in orbit_iter(rs, mu):
                c = deg - sum(k * x for k, x in zip(coeffs, w))
                assert c % n == 0
                yield w + (c // n,), m
        return
    if not shape.factors:
        yield torus, 1
        return
    if len(shape.factors) == 1:
        t = shape.factors[0]
        rs = build_root_system(t)
        for mu, m in dominant_character(t, parts[0]).items():
            for w in orbit_iter(rs, mu):
                yield w + torus, m
        return
    acc = [(tuple(), 1)]
    for t, p in zip(shape.factors, parts):
        fc = _factor_char(t, p)
        acc = [(w + v, m * k) for w, m in acc for v, k in fc.items()]
    for w, m in acc:
        yield w + torus, m


def dominant_character_shape(shape: GroupShape, lam) -> dict:
    """Dominant-weight multiplicities of R(lam) over a product shape."""
    lam = tuple(lam)
    parts, torus = shape.split(lam)
    acc = [(tuple(), 1)]
    for t, p in zip(shape.factors, parts):
        dc = dominant_character(t, p)
        acc = [(w + v, m * k) for w, m in acc for v, k in dc.items()]
    return {w + torus: m for w, m in acc}


def _factor_dimension(t: SimpleLieType, lam) -> int:
    rs = build_root_system(t)
    n = rs.rank
    lam_rho = tuple(lam[k] + 1 for k in range(n))
    num = 1
    den = 1
    for b in rs.positive_roots:
        num *= rs.pair_weight_root(lam_rho, b)
        den *= rs.pair_weight_root(rs.rho, b)
    assert num % den == 0
    return num // den


def dimension(shape: GroupShape, lam) -> int:
    """Dimension of R(lam) by the Weyl dimension formula, product over factors."""
    lam = tuple(lam)
    if not shape.is_dominant(lam):
        raise ValueError(f"non-dominant highest weight {lam}")
    parts, _ = shape.split(lam)
    out = 1
    for t, p in zip(shape.factors, parts):
        out *= _factor_dimension(t, p)
    return out


def char_tensor(c1: dict, c2: dict) -> dict:
    """Product of two characters given as weight->multiplicity dicts."""
    out = {}
    for w, m in c1.items():
        for v, k in c2.items():
            key = tuple(a + b for a, b in zip(w, v))
            out[key] = out.get(key, 0) + m * k
    return out


def char_exterior(char: dict, k: int) -> dict:
    """Character of the k-th exterior power of a module with the given character."""
    items = []
    for w, m in sorted(char.items()):
        items.extend([w] * m)
    levels = [dict() for _ in range(k + 1)]
    zero = tuple([0] * (len(items[0]) if items else 0))
    levels[0][zero] = 1
    done = 0
    for w in items:
        for j in range(min(k, done + 1), 0, -1):
            lower = levels[j - 1]
            tgt = levels[j]
            for v, m in lower.items():
                key = tuple(a + b for a, b in zip(v, w))
                tgt[key] = tgt.get(key, 0) + m
        done += 1
    return levels[k]
