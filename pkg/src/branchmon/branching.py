"""Decomposition of restricted irreducible modules into irreducible constituents.

The branching algorithm restricts the full weight multiset of R_G(lambda)
through the embedding's character map and then strips highest weights: pick
the maximal remaining dominant H-weight, record its coefficient as a
multiplicity, subtract that many copies of its dominant character, repeat.

Only H-dominant entries are ever tracked: the multiplicity of a dominant
weight in an H-character is read off directly, and dominant characters of the
candidates suffice for the subtraction.  The G side is expanded orbit by orbit
and pushed through the restriction matrix in numpy batches.

A negative intermediate coefficient means the restriction matrix is not a
valid torus embedding for any Borel pair; this surfaces as CatalogError
rather than being clamped.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chars import dimension, dominant_character_shape, full_character, char_tensor, orbit_iter
from .embed import CatalogError, EmbeddingDescriptor, np_matrix
from .rootsys import build_root_system

__all__ = [
    "BranchingResult",
    "branch",
    "multiplicity",
    "restricted_dominant_character",
    "restricted_character",
    "verify_identity",
]


@dataclass(frozen=True)
class BranchingResult:
    descriptor: EmbeddingDescriptor
    lam: tuple
    constituents: dict  # dominant H-weight -> multiplicity >= 1

    def dimension_check(self) -> bool:
        got = sum(
            m * dimension(self.descriptor.h_shape, mu)
            for mu, m in self.constituents.items()
        )
        return got == dimension(self.descriptor.g_shape, self.lam)

    def sorted_items(self):
        h = self.descriptor.h_shape
        return sorted(
            self.constituents.items(),
            key=lambda kv: (-h.coheight(kv[0]), kv[0]),
        )


_BATCH = 4096


def restricted_dominant_character(d: EmbeddingDescriptor, lam) -> dict:
    """H-dominant part of the restricted character of R_G(lam)."""
    g = d.g_shape
    h = d.h_shape
    lam = tuple(lam)
    if not g.is_dominant(lam):
        raise ValueError(f"non-dominant weight {lam}")
    mat = np_matrix(d)
    ss = h.ss_dim
    out: dict = {}
    parts, torus = g.split(lam)
    if not g.factors:
        mu = d.restrict(lam)
        return {mu: 1}
    t = g.factors[0]
    rs = build_root_system(t)
    from .chars import dominant_character, gl_degree_data  # local import: cycle-free

    fund_mat = mat[: t.rank, :]
    torus_np = None
    gl = None
    if g.gl_blocks:
        coeffs, deg, n = gl_degree_data(g, lam)
        gl = (np.array(coeffs, dtype=np.int64), deg, n, mat[t.rank, :])
    elif torus:
        torus_np = np.array(torus, dtype=np.int64) @ mat[t.rank :, :]
    buf = []

    def flush(mult):
        if not buf:
            return
        arr = np.array(buf, dtype=np.int64)
        buf.clear()
        imgs = arr @ fund_mat
        if gl is not None:
            coeffs, deg, n, det_row = gl
            cs = deg - arr @ coeffs
            assert not np.any(cs % n), "weight degree outside the GL lattice"
            imgs = imgs + np.outer(cs // n, det_row)
        elif torus_np is not None:
            imgs = imgs + torus_np
        dom = np.all(imgs[:, :ss] >= 0, axis=1) if ss else np.ones(len(imgs), bool)
        for row in imgs[dom]:
            key = tuple(int(x) for x in row)
            out[key] = out.get(key, 0) + mult

    for nu, m in dominant_character(t, parts[0]).items():
        for w in orbit_iter(rs, nu):
            buf.append(w)
            if len(buf) >= _BATCH:
                flush(m)
        flush(m)
    return out


def restricted_character(d: EmbeddingDescriptor, lam) -> dict:
    """Full restricted character of R_G(lam) as an H-coordinate multiset."""
    out: dict = {}
    for w, m in full_character(d.g_shape, tuple(lam)).items():
        key = d.restrict(w)
        out[key] = out.get(key, 0) + m
    return out


@lru_cache(maxsize=None)
def _branch_cached(d: EmbeddingDescriptor, lam: tuple):
    rem = restricted_dominant_character(d, lam)
    h = d.h_shape
    found = {}
    # maximal under (coheight, lex) is maximal under dominance restricted to
    # the support of any single character, so stripping is well defined
    while rem:
        mu = max(rem, key=lambda w: (h.coheight(w), w))
        m = rem[mu]
        if m < 0:
            raise CatalogError(
                f"negative multiplicity {m} at {mu} while branching {lam} "
                f"through {d.case_id}: inconsistent restriction matrix"
            )
        found[mu] = m
        for w, k in dominant_character_shape(h, mu).items():
            new = rem.get(w, 0) - m * k
            if new:
                rem[w] = new
            else:
                rem.pop(w, None)
    return found


def branch(d: EmbeddingDescriptor, lam) -> BranchingResult:
    """Decompose R_G(lam) restricted through d into irreducible H-constituents."""
    found = _branch_cached(d, tuple(lam))
    return BranchingResult(d, tuple(lam), dict(found))


def multiplicity(d: EmbeddingDescriptor, lam, mu) -> int:
    """The multiplicity of R_H(mu) in R_G(lam) restricted through d."""
    mu = tuple(mu)
    if not d.h_shape.is_dominant(mu):
        raise ValueError(f"non-dominant H weight {mu}")
    return branch(d, lam).constituents.get(mu, 0)


def _side_multiset(d: EmbeddingDescriptor, terms) -> dict:
    """Restricted-character multiset of a formal combination of G-modules.

    Each term is (coeff, (lam1, lam2, ...)); tensor factors are combined by
    character multiplication before restriction.
    """
    total: dict = {}
    for coeff, lams in terms:
        if coeff < 0:
            raise ValueError("identity sides must be nonnegative combinations")
        char = None
        for lam in lams:
            c = full_character(d.g_shape, tuple(lam))
            char = c if char is None else char_tensor(char, c)
        if char is None:
            char = {tuple([0] * d.g_shape.dim): 1}
        for w, m in char.items():
            key = d.restrict(w)
            total[key] = total.get(key, 0) + coeff * m
    return total


def verify_identity(d: EmbeddingDescriptor, lhs, rhs) -> bool:
    """Check that two formal combinations of G-modules restrict identically.

    Sides are lists of (coeff, (lam, ...)) terms; equality of the restricted
    character multisets is equivalent to equality of the branched constituent
    multisets, since both sides are genuine characters.
    """
    return _side_multiset(d, lhs) == _side_multiset(d, rhs)
