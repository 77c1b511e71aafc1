"""Restricted branching monoids: enumeration, generators, freeness certificates.

An element is a pair (lam, mu) of coordinate tuples with positive branching
multiplicity and lam supported on the chosen node set I.  Enumeration walks
all lam with coefficient sum up to a bound D, certification extracts the
indecomposable elements and counts factorizations of every enumerated element
over them: the monoid restricted to the window is free precisely when every
count is one.

When I = {1} for G = SL_n the monoid is canonically the weight monoid of the
dual defining module as a spherical module (scalars extended); this package
only documents that correspondence, it does not compute weight monoids of
spherical modules independently.

Non-spherical triples are first-class: a multiplicity of two or more
short-circuits certification but the witness and the partial enumeration are
still reported.
"""

from __future__ import annotations

from dataclasses import dataclass

from .branching import branch
from .embed import EmbeddingDescriptor

__all__ = [
    "GammaEnumeration",
    "MonoidCertificate",
    "enumerate_gamma",
    "indecomposables",
    "certify",
    "sumset_W",
    "gamma_dual_image",
]


@dataclass(frozen=True)
class GammaEnumeration:
    elements: frozenset  # of (lam, mu) coordinate-tuple pairs
    max_multiplicity: int
    witness: tuple | None  # (lam, mu, m) with m >= 2 when not multiplicity free


@dataclass
class MonoidCertificate:
    case_id: str
    I: tuple
    bound: int
    elements: frozenset
    generators: frozenset
    free: bool
    multiplicity_free: bool
    witness: tuple | None
    rank: int
    rank_expected: int | None = None
    rank_match: bool | None = None
    generators_match: bool | None = None
    covariance_used: bool = False
    failure: str | None = None

    @property
    def passed(self) -> bool:
        checks = [self.multiplicity_free, self.free]
        if self.rank_expected is not None:
            checks.append(bool(self.rank_match))
        if self.generators_match is not None:
            checks.append(bool(self.generators_match))
        return all(checks)

    def to_dict(self, d: EmbeddingDescriptor | None = None) -> dict:
        def sorted_pairs(pairs):
            return [
                {"lam": list(l), "mu": list(m)}
                for l, m in sorted(pairs, key=lambda e: (sum(e[0]), e[0], e[1]))
            ]

        out = {
            "case_id": self.case_id,
            "I": sorted(self.I),
            "bound": self.bound,
            "n_elements": len(self.elements),
            "generators": sorted_pairs(self.generators),
            "free": self.free,
            "multiplicity_free": self.multiplicity_free,
            "rank": self.rank,
        }
        if self.witness is not None:
            out["witness"] = {
                "lam": list(self.witness[0]),
                "mu": list(self.witness[1]),
                "multiplicity": self.witness[2],
            }
        if self.rank_expected is not None:
            out["rank_expected"] = self.rank_expected
            out["rank_match"] = bool(self.rank_match)
        if self.generators_match is not None:
            out["generators_match"] = bool(self.generators_match)
            out["covariance_used"] = self.covariance_used
        if self.failure:
            out["failure"] = self.failure
        out["pass"] = self.passed
        return out


def _lambda_values(d: EmbeddingDescriptor, I, bound):
    """All lam supported on I (1-based node indices) with coefficient sum <= bound."""
    I = sorted(set(I))
    rank = d.g_shape.factors[0].rank
    for i in I:
        if not 1 <= i <= rank:
            raise ValueError(f"node {i} outside 1..{rank}")
    dim = d.g_shape.dim
    for total in range(bound + 1):
        for combo in _compositions(total, len(I)):
            lam = [0] * dim
            for i, c in zip(I, combo):
                lam[i - 1] = c
            yield tuple(lam)


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_gamma(d: EmbeddingDescriptor, I, bound: int) -> GammaEnumeration:
    """All monoid elements with lam supported on I and coefficient sum <= bound."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if not I:
        raise ValueError("I must be nonempty")
    elements = set()
    max_mult = 0
    witness = None
    for lam in _lambda_values(d, I, bound):
        res = branch(d, lam)
        for mu, m in res.constituents.items():
            elements.add((lam, mu))
            if m > max_mult:
                max_mult = m
                if m >= 2 and witness is None:
                    witness = (lam, mu, m)
    return GammaEnumeration(frozenset(elements), max_mult, witness)


def indecomposables(elements, bound: int | None = None) -> frozenset:
    """Elements admitting no decomposition into two nonzero elements.

    The zero element is excluded.  Elements with lam = 0 other than (0; 0)
    cannot occur, so both summands of any decomposition have nonzero lam and
    it suffices to scan summands of strictly smaller lam-degree.  When given,
    ``bound`` asserts the closure window the caller claims to have enumerated.
    """
    elems = set(map(tuple, elements))
    if bound is not None and any(sum(e[0]) > bound for e in elems):
        raise ValueError(f"elements exceed the stated lam-degree bound {bound}")
    nonzero = [e for e in elems if any(e[0])]
    by_degree = sorted(nonzero, key=lambda e: sum(e[0]))
    out = set()
    for e in by_degree:
        lam, mu = e
        deg = sum(lam)
        decomposable = False
        for e1 in by_degree:
            l1, m1 = e1
            d1 = sum(l1)
            if d1 >= deg:
                break
            if any(a > b for a, b in zip(l1, lam)):
                continue
            rest = (
                tuple(a - b for a, b in zip(lam, l1)),
                tuple(a - b for a, b in zip(mu, m1)),
            )
            if any(rest[0]) and rest in elems:
                decomposable = True
                break
        if not decomposable:
            out.add(e)
    return frozenset(out)


def _count_factorizations(vec, gens, memo):
    """Number of ways to write vec as a nonnegative combination of gens."""

    def rec(idx, v):
        if not any(v[0]) and not any(v[1]):
            return 1
        if idx == len(gens):
            return 0
        key = (idx, v)
        hit = memo.get(key)
        if hit is not None:
            return hit
        gl, gm = gens[idx]
        total = 0
        k = 0
        lam, mu = v
        while all(a >= 0 for a in lam):
            total += rec(idx + 1, (lam, mu))
            k += 1
            lam = tuple(a - b for a, b in zip(lam, gl))
            mu = tuple(a - b for a, b in zip(mu, gm))
        memo[key] = total
        return total

    return rec(0, vec)


def _match_generators(d, got, expected):
    """Set equality up to the descriptor's recorded label covariances."""
    exp = frozenset((tuple(l), tuple(m)) for l, m in expected)
    if got == exp:
        return True, False
    for perm in d.covariance_group():
        if all(p == i for i, p in enumerate(perm)):
            continue
        mapped = frozenset((l, tuple(m[perm[k]] for k in range(len(m)))) for l, m in exp)
        if got == mapped:
            return True, True
    return False, False


def certify(
    d: EmbeddingDescriptor,
    I,
    bound: int,
    expected_generators=None,
    expected_rank: int | None = None,
) -> MonoidCertificate:
    """Enumerate, extract generators, certify unique factorization, compare.

    Freeness verdict: every enumerated element factors over the generator set
    in exactly one way (the empty factorization for (0;0)).  Failure of
    multiplicity-freeness short-circuits with the witness recorded.
    """
    if expected_generators is not None:
        max_h = max((sum(l) for l, _ in expected_generators), default=1)
        if bound < 2 * max_h:
            raise ValueError(
                f"bound {bound} too small to certify against expected generators "
                f"(need >= {2 * max_h})"
            )
    I = tuple(sorted(set(I)))
    enum = enumerate_gamma(d, I, bound)
    mult_free = enum.max_multiplicity <= 1
    gens = indecomposables(enum.elements, bound)
    cert = MonoidCertificate(
        case_id=d.case_id,
        I=I,
        bound=bound,
        elements=enum.elements,
        generators=gens,
        free=False,
        multiplicity_free=mult_free,
        witness=enum.witness,
        rank=len(gens),
    )
    if not mult_free:
        cert.failure = "not multiplicity free"
        return cert
    glist = sorted(gens, key=lambda e: (sum(e[0]), e[0], e[1]))
    memo: dict = {}
    free = True
    for e in sorted(enum.elements):
        n = _count_factorizations(e, glist, memo)
        if n != 1:
            free = False
            cert.failure = f"element {e} has {n} factorizations"
            break
    cert.free = free
    if expected_rank is not None:
        cert.rank_expected = expected_rank
        cert.rank_match = len(gens) == expected_rank
    if expected_generators is not None:
        ok, used_cov = _match_generators(d, gens, expected_generators)
        cert.generators_match = ok
        cert.covariance_used = used_cov
        if not ok and cert.failure is None:
            cert.failure = "generator sets differ"
    return cert


def sumset_W(d: EmbeddingDescriptor, i: int, j: int) -> set:
    """The sumset M(i) + M(j) of constituent sets of the two fundamental branchings.

    Every element of the sumset occurs in branch(pi_i + pi_j); this containment
    is asserted (it follows from the monoid property).
    """
    mi = set(branch(d, d.g_fundamental(i)).constituents)
    mj = set(branch(d, d.g_fundamental(j)).constituents)
    out = {tuple(a + b for a, b in zip(x, y)) for x in mi for y in mj}
    lam = tuple(a + b for a, b in zip(d.g_fundamental(i), d.g_fundamental(j)))
    big = set(branch(d, lam).constituents)
    missing = out - big
    assert not missing, f"sumset elements missing from branch(pi_{i}+pi_{j}): {missing}"
    return out


def gamma_dual_image(d: EmbeddingDescriptor, elements):
    """Image of a set of monoid elements under duality, normalized to torus-free lam.

    For hat-convention descriptors the GL-dual of lam = sum a_i pi_i has
    determinant coordinate -sum(a_i); adding that many copies of the
    determinant row on both sides brings lam back into the enumeration window
    while staying inside the monoid.
    """
    g, h = d.g_shape, d.h_shape
    hat = bool(g.torus_rank)
    det_row = d.matrix[-1] if hat else None
    out = set()
    for lam, mu in elements:
        ls = g.dual(lam)
        ms = h.dual(mu)
        if hat:
            k = -ls[-1]
            ls = ls[:-1] + (0,)
            ms = tuple(a + k * b for a, b in zip(ms, det_row))
        out.add((ls, ms))
    return frozenset(out)
