"""Exact combinatorial data of simple root systems and Weyl-group operations.

Conventions (fixed once, used everywhere):

* Simple roots and fundamental weights follow the Bourbaki numbering.  The
  library API is 1-based wherever a node index appears (``fundamental(1)`` is
  the first fundamental weight); coordinate tuples are 0-based Python tuples.
* Weights are stored in fundamental-weight coordinates as integer tuples.
* The Cartan matrix convention is ``C[i][j] = 2(a_i, a_j)/(a_i, a_i)``, so the
  fundamental coordinates of the simple root ``a_j`` form column ``j`` of C.
* The Weyl-invariant form is normalized so short roots have squared length 2;
  the symmetrizer ``d`` (diag(d)@C symmetric) then consists of small positive
  integers and all weight/root pairings used in the Freudenthal recursion are
  integers.
* All arithmetic is exact: Python ints plus Fraction for the Cartan inverse
  and the invariant form.

Everything here is immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "SimpleLieType",
    "RootSystemData",
    "GroupShape",
    "build_root_system",
    "inner_product",
    "dominant_representative",
    "weyl_orbit",
    "weyl_elements_with_sign",
    "dual_weight",
    "weyl_order",
]

_POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}

_WEYL_ORDER = {
    "A": lambda n: _fact(n + 1),
    "B": lambda n: 2**n * _fact(n),
    "C": lambda n: 2**n * _fact(n),
    "D": lambda n: 2 ** (n - 1) * _fact(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}


def _fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


@dataclass(frozen=True, order=True)
class SimpleLieType:
    """A simple type ``family + rank``, e.g. A3, D4, E7."""

    family: str
    rank: int

    def __post_init__(self):
        fam, rank = self.family, self.rank
        ok = (
            (fam == "A" and rank >= 1)
            or (fam == "B" and rank >= 2)
            or (fam == "C" and rank >= 2)
            or (fam == "D" and rank >= 3)
            or (fam == "E" and rank in (6, 7, 8))
            or (fam == "F" and rank == 4)
            or (fam == "G" and rank == 2)
        )
        if not ok:
            raise ValueError(f"invalid simple type {fam}{rank}")

    @classmethod
    def parse(cls, s: str) -> "SimpleLieType":
        s = s.strip()
        if not s or s[0].upper() not in "ABCDEFG" or not s[1:].isdigit():
            raise ValueError(f"cannot parse simple type {s!r}")
        return cls(s[0].upper(), int(s[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def weyl_order(self) -> int:
        return _WEYL_ORDER[self.family](self.rank)


def _cartan_matrix(t: SimpleLieType):
    n = t.rank
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2

    def bond(i, j, cij=-1, cji=-1):  # 0-based
        C[i][j] = cij
        C[j][i] = cji

    fam = t.family
    if fam in "ABC":
        for i in range(n - 1):
            bond(i, i + 1)
        if fam == "B" and n >= 2:
            # last simple root short: C[n-1][n-2] = -2
            C[n - 1][n - 2] = -2
        if fam == "C" and n >= 2:
            # last simple root long
            C[n - 2][n - 1] = -2
    elif fam == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif fam == "E":
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
        if n >= 7:
            edges.append((6, 7))
        if n == 8:
            edges.append((7, 8))
        for a, b in edges:
            bond(a - 1, b - 1)
    elif fam == "F":
        C = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    elif fam == "G":
        C = [[2, -3], [-1, 2]]
    return tuple(tuple(row) for row in C)


def _symmetrizer(t: SimpleLieType):
    n = t.rank
    fam = t.family
    if fam == "B":
        return tuple([2] * (n - 1) + [1])
    if fam == "C":
        return tuple([1] * (n - 1) + [2])
    if fam == "F":
        return (2, 2, 1, 1)
    if fam == "G":
        return (1, 3)
    return tuple([1] * n)


def _invert_fraction_matrix(C):
    n = len(C)
    aug = [[Fraction(C[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class RootSystemData:
    """Cartan matrix, symmetrizer, positive roots and derived data of one simple type.

    ``positive_roots`` are in simple-root coordinates (so the simple roots are
    the unit vectors); ``positive_roots_fund`` are the same roots in
    fundamental coordinates.  ``coheights[i]`` is the pairing of the i-th
    fundamental weight with the sum of all positive coroots, the grading used
    to order weights by height.
    """

    type: SimpleLieType
    cartan: tuple
    symmetrizer: tuple
    cartan_inverse: tuple
    positive_roots: tuple
    positive_roots_fund: tuple
    rho: tuple
    coheights: tuple
    # squared length of each positive root, aligned with positive_roots
    root_norms: tuple = field(repr=False, default=())

    @property
    def rank(self):
        return self.type.rank

    def simple_root_fund(self, i):
        """Fundamental coordinates of the i-th (0-based) simple root: column i of C."""
        return tuple(self.cartan[j][i] for j in range(self.rank))

    def reflect(self, w, i):
        """Apply the i-th (0-based) simple reflection to fundamental coordinates."""
        wi = w[i]
        if wi == 0:
            return w
        col = self.simple_root_fund(i)
        return tuple(w[j] - wi * col[j] for j in range(self.rank))

    def fund_to_root(self, w):
        """Exact simple-root coordinates of a weight; Fractions unless in the root lattice."""
        n = self.rank
        return tuple(
            sum(self.cartan_inverse[i][j] * w[j] for j in range(n)) for i in range(n)
        )

    def pair_weight_root(self, w, beta_root):
        """(w, beta) for w in fundamental coords, beta in simple-root coords. Integer."""
        d = self.symmetrizer
        return sum(b * d[k] * w[k] for k, b in enumerate(beta_root) if b)


def _positive_roots(t: SimpleLieType, cartan):
    """Closure construction: grow root strings upward from the simple roots."""
    n = t.rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    known = set(simple)
    # fund coords tracked alongside to read off <beta, a_i^vee>
    fund = {simple[i]: tuple(cartan[j][i] for j in range(n)) for i in range(n)}
    level = list(simple)
    while level:
        nxt = []
        for beta in level:
            fb = fund[beta]
            for i in range(n):
                # q = how far the root string continues downward from beta;
                # beta + a_i is a root iff q - <beta, a_i^vee> >= 1
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in known:
                        q += 1
                    else:
                        break
                if q - fb[i] >= 1:
                    up = list(beta)
                    up[i] += 1
                    cand = tuple(up)
                    if cand not in known:
                        known.add(cand)
                        fund[cand] = tuple(
                            fb[j] + cartan[j][i] for j in range(n)
                        )
                        nxt.append(cand)
        level = nxt
    roots = sorted(known, key=lambda b: (sum(b), b))
    return tuple(roots), tuple(fund[b] for b in roots)


@lru_cache(maxsize=None)
def build_root_system(t: SimpleLieType) -> RootSystemData:
    """Build (and cache) the full root-system data for one simple type."""
    cartan = _cartan_matrix(t)
    d = _symmetrizer(t)
    # diag(d) @ C must be symmetric
    n = t.rank
    for i in range(n):
        for j in range(n):
            assert d[i] * cartan[i][j] == d[j] * cartan[j][i], f"symmetrizer broken for {t}"
    cinv = _invert_fraction_matrix(cartan)
    pos, pos_fund = _positive_roots(t, cartan)
    expected = _POSITIVE_ROOT_COUNT[t.family](t.rank)
    assert len(pos) == expected, f"{t}: found {len(pos)} positive roots, expected {expected}"
    rho = tuple([1] * n)
    # sum of positive roots must equal 2*rho
    acc = [0] * n
    for f in pos_fund:
        for j in range(n):
            acc[j] += f[j]
    assert tuple(acc) == tuple(2 for _ in range(n)), f"{t}: positive roots do not sum to 2rho"
    norms = []
    coh = [Fraction(0)] * n
    for b, f in zip(pos, pos_fund):
        nb = sum(b[k] * d[k] * f[k] for k in range(n))
        norms.append(nb)
        for i in range(n):
            if b[i]:
                coh[i] += Fraction(2 * d[i] * b[i], nb)
    coheights = []
    for c in coh:
        assert c.denominator == 1
        coheights.append(int(c))
    return RootSystemData(
        type=t,
        cartan=cartan,
        symmetrizer=d,
        cartan_inverse=cinv,
        positive_roots=pos,
        positive_roots_fund=pos_fund,
        rho=rho,
        coheights=tuple(coheights),
        root_norms=tuple(norms),
    )


def inner_product(rs: RootSystemData, v, w) -> Fraction:
    """Weyl-invariant form on weights in fundamental coordinates (short roots squared 2)."""
    n = rs.rank
    if len(v) != n or len(w) != n:
        raise ValueError("dimension mismatch")
    d = rs.symmetrizer
    cinv = rs.cartan_inverse
    total = Fraction(0)
    for i in range(n):
        if v[i]:
            row = cinv[i]
            total += d[i] * v[i] * sum(row[j] * w[j] for j in range(n) if w[j])
    return total


def dominant_representative(rs: RootSystemData, w):
    """Fold a weight into the dominant chamber.

    Returns ``(dominant, parity)`` where parity is (-1)^length of the Weyl
    element used.  For weights on chamber walls the parity of one particular
    folding is returned (stabilizer reflections make it non-unique there).
    """
    w = tuple(w)
    parity = 1
    n = rs.rank
    while True:
        for i in range(n):
            if w[i] < 0:
                w = rs.reflect(w, i)
                parity = -parity
                break
        else:
            return w, parity


def weyl_orbit(rs: RootSystemData, w) -> set:
    """Full Weyl orbit of a dominant weight."""
    w = tuple(w)
    if any(c < 0 for c in w):
        raise ValueError("weyl_orbit requires a dominant weight")
    seen = {w}
    frontier = [w]
    n = rs.rank
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(n):
                y = rs.reflect(x, i)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


_WEYL_ENUM_LIMIT = 2_000_000


@lru_cache(maxsize=None)
def weyl_elements_with_sign(t: SimpleLieType):
    """All Weyl group elements as matrices on fundamental coordinates, with signs.

    Returns a tuple of (matrix, sign) pairs; matrix rows are the images of the
    coordinate basis, so w acts on a weight by vector-matrix product.  Guarded
    by group order; intended for the small ranks used by oracles.
    """
    if t.weyl_order > _WEYL_ENUM_LIMIT:
        raise ValueError(f"Weyl group of {t} too large to enumerate")
    rs = build_root_system(t)
    n = t.rank
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    gens = []
    for i in range(n):
        col = rs.simple_root_fund(i)
        # (s_i w)[k] = w[k] - w[i]*col[k]; as a matrix acting on row vectors
        # the only modified row is row i
        m = [[int(j == k) for k in range(n)] for j in range(n)]
        for k in range(n):
            m[i][k] -= col[k]
        gens.append(tuple(tuple(r) for r in m))

    def mul(a, b):
        # (w @ a) @ b; compose matrices acting on row vectors
        return tuple(
            tuple(sum(a[j][l] * b[l][k] for l in range(n)) for k in range(n))
            for j in range(n)
        )

    elems = {ident: 1}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            s = elems[m]
            for g in gens:
                prod = mul(m, g)
                if prod not in elems:
                    elems[prod] = -s
                    nxt.append(prod)
        frontier = nxt
    assert len(elems) == t.weyl_order
    return tuple(elems.items())


def weyl_order(shape: "GroupShape") -> int:
    out = 1
    for f in shape.factors:
        out *= f.weyl_order
    return out


_DUAL_PERM_CACHE = {}


def _dual_permutation(t: SimpleLieType):
    """The -w0 diagram involution of a simple type, as a coordinate permutation."""
    key = t
    if key in _DUAL_PERM_CACHE:
        return _DUAL_PERM_CACHE[key]
    n = t.rank
    perm = list(range(n))
    if t.family == "A":
        perm = list(reversed(perm))
    elif t.family == "D" and n % 2 == 1:
        perm[n - 2], perm[n - 1] = perm[n - 1], perm[n - 2]
    elif t.family == "E" and n == 6:
        perm = [5, 1, 4, 3, 2, 0]
    _DUAL_PERM_CACHE[key] = tuple(perm)
    return _DUAL_PERM_CACHE[key]


@dataclass(frozen=True)
class GroupShape:
    """Shape of a connected reductive group: simple factors plus a central torus.

    Weight coordinates are the concatenation of per-factor fundamental
    coordinates followed by ``torus_rank`` torus character coordinates.

    ``gl_blocks`` marks a shape whose coordinates are a GL-lattice basis under
    the hat convention (an A-type factor glued to a torus coordinate), as
    triples ``(factor_index, torus_coord_index, block_dim)``.  Two things
    change for such a shape: -w0 acts on the block by
    ``(a, c) -> (reversed(a), -c - sum(a))``, and the torus coordinate of a
    weight in an irreducible character varies per weight (see chars module).
    """

    factors: tuple
    torus_rank: int = 0
    gl_blocks: tuple = ()

    def __post_init__(self):
        assert all(isinstance(f, SimpleLieType) for f in self.factors)
        assert self.torus_rank >= 0

    @property
    def ss_dim(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def dim(self) -> int:
        return self.ss_dim + self.torus_rank

    @property
    def offsets(self):
        offs = []
        o = 0
        for f in self.factors:
            offs.append(o)
            o += f.rank
        return tuple(offs)

    def zero(self):
        return tuple([0] * self.dim)

    def split(self, w):
        """Split a coordinate tuple into per-factor tuples plus torus tuple."""
        parts = []
        o = 0
        for f in self.factors:
            parts.append(tuple(w[o : o + f.rank]))
            o += f.rank
        return parts, tuple(w[o:])

    def join(self, parts, torus=()):
        out = []
        for p in parts:
            out.extend(p)
        out.extend(torus)
        assert len(out) == self.dim
        return tuple(out)

    def is_dominant(self, w) -> bool:
        return all(c >= 0 for c in w[: self.ss_dim])

    def dominant_rep(self, w):
        """Per-factor fold to the dominant chamber; returns (weight, parity)."""
        parts, torus = self.split(w)
        parity = 1
        folded = []
        for f, p in zip(self.factors, parts):
            rep, s = dominant_representative(build_root_system(f), p)
            folded.append(rep)
            parity *= s
        return self.join(folded, torus), parity

    def coheight(self, w) -> int:
        """Pairing with the sum of positive coroots; torus coordinates ignored."""
        total = 0
        o = 0
        for f in self.factors:
            coh = build_root_system(f).coheights
            for k in range(f.rank):
                total += coh[k] * w[o + k]
            o += f.rank
        return total

    def rho(self):
        return tuple([1] * self.ss_dim + [0] * self.torus_rank)

    def dual(self, w):
        """Highest weight of the dual module (-w0 per factor, torus negated)."""
        parts, torus = self.split(w)
        out = []
        for f, p in zip(self.factors, parts):
            perm = _dual_permutation(f)
            out.append(tuple(p[perm[k]] for k in range(f.rank)))
        torus = list(-c for c in torus)
        for fi, ti, _dim in self.gl_blocks:
            if fi is not None:
                a = parts[fi]
                perm = _dual_permutation(self.factors[fi])
                out[fi] = tuple(a[perm[k]] for k in range(len(a)))
                torus[ti] = -w[self.ss_dim + ti] - sum(a)
        return self.join(out, tuple(torus))

    def describe(self) -> str:
        fs = "x".join(str(f) for f in self.factors) if self.factors else "1"
        if self.torus_rank:
            fs += f" + T^{self.torus_rank}"
        return fs


def dual_weight(shape: GroupShape, w):
    """Module-level alias for :meth:`GroupShape.dual` (dominant in, dominant out)."""
    if not shape.is_dominant(w):
        raise ValueError("dual_weight requires a dominant weight")
    return shape.dual(w)
