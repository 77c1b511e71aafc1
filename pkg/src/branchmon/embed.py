"""Embeddings H ⊂ G as integer restriction matrices on character lattices.

Every classical embedding is specified internally by where the tautological
torus coordinates of G land among H's torus coordinates (epsilon scaffolding);
the matrix in fundamental bases is then derived by exact rational change of
basis and checked to be integral.  Exceptional embeddings carry their matrices
verbatim in the catalog data file.

Hat convention: SL_n cases are computed inside GL_n.  The G shape then has one
torus coordinate (the determinant character chi) and the basis weight pi_i
means the highest weight of the i-th wedge power of the defining module, so
all matrix entries stay integral.  On the H side each diagonal block
contributes one character chi_b; for an SL_m block chi_b carries the full
polynomial degree of the block, matching how central characters appear in the
published generator formulas.

Conceptual blocks: an H side is described by blocks ('sl'|'sp'|'so', size).
Small orthogonal groups are realized by isomorphic standard types
(SO_3 -> A1, SO_4 -> A1+A1, SO_5 -> B2, SO_6 -> D3); the per-block
fundamental-weight lookup hides this from callers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import numpy as np

from .rootsys import GroupShape, SimpleLieType

__all__ = [
    "EmbeddingDescriptor",
    "ConceptualBlock",
    "CatalogError",
    "levi_block_embedding",
    "classical_block_embedding",
    "symmetric_embedding",
    "so_in_sl",
    "sp_in_sl",
    "spsp_in_sp",
    "spinspin_in_spin",
    "exceptional_embedding",
    "spin7_in_sl8",
    "identity_embedding",
    "embedding_from_case",
    "dual_case",
    "load_embedding_catalog",
    "project_to_sl",
]


class CatalogError(ValueError):
    """Raised for invalid or inconsistent embedding specifications."""


@dataclass(frozen=True)
class ConceptualBlock:
    """One factor of H as named in the published formulas.

    ``coords`` are the absolute fundamental-coordinate indices owned by the
    block; ``chi`` is the absolute index of the block character (None when the
    embedding carries no central torus).  ``subkind`` records how the block is
    realized: 'A','B','C','D','D2' (Spin_4), 'A1v' (Spin_3), 'none' (trivial),
    'torus' (SO_2).
    """

    kind: str
    size: int
    coords: tuple
    chi: int | None
    subkind: str

    def fundamental(self, k: int, dim: int):
        """Coordinate vector of the block's k-th fundamental weight (1-based).

        Follows the table conventions: index 0 is the zero weight, and for an
        SL_m block index m is the zero weight as well.  Out-of-range indices
        raise, so a typo in a stored formula cannot silently evaluate.
        """
        vec = [0] * dim
        if k == 0:
            return vec
        if self.kind == "sl":
            if k == self.size:
                return vec
            if not 1 <= k < self.size:
                raise CatalogError(f"pi_{k} out of range for SL_{self.size} block")
            vec[self.coords[k - 1]] = 1
            return vec
        if self.kind == "sp":
            half = self.size // 2
            if not 1 <= k <= half:
                raise CatalogError(f"pi_{k} out of range for Sp_{self.size} block")
            vec[self.coords[k - 1]] = 1
            return vec
        if self.kind == "so":
            half = self.size // 2
            if not 1 <= k <= half:
                raise CatalogError(f"pi_{k} out of range for Spin_{self.size} block")
            vec[self.coords[k - 1]] = 1
            return vec
        # 'plain': an exceptional factor, fundamental weights are unit coordinates
        if not 1 <= k <= len(self.coords):
            raise CatalogError(f"pi_{k} out of range for {self.subkind} block")
        vec[self.coords[k - 1]] = 1
        return vec

    def vector_weight(self, dim: int):
        """Highest weight of the tautological (vector) module of the block."""
        if self.kind in ("sl", "sp"):
            return self.fundamental(1, dim)
        if self.subkind == "A1v":  # SO_3: vector is twice the spin weight
            vec = [0] * dim
            vec[self.coords[0]] = 2
            return vec
        if self.subkind == "D2":  # SO_4: vector couples the two half-spins
            vec = [0] * dim
            vec[self.coords[0]] = 1
            vec[self.coords[1]] = 1
            return vec
        if self.subkind in ("B", "D"):
            return self.fundamental(1, dim)
        raise CatalogError(f"no vector weight for block {self.kind}_{self.size}")


@dataclass(frozen=True)
class EmbeddingDescriptor:
    """An embedding H ⊂ G as a restriction map on character lattices.

    ``matrix`` row i is the image of the i-th G coordinate basis weight in H
    coordinates.  Immutable and hashable; used as a cache key downstream.
    """

    case_id: str
    g_shape: GroupShape
    h_shape: GroupShape
    matrix: tuple
    params: tuple = ()
    blocks: tuple = ()
    covariances: tuple = ()

    def __post_init__(self):
        assert len(self.matrix) == self.g_shape.dim
        for row in self.matrix:
            assert len(row) == self.h_shape.dim
            assert all(isinstance(x, int) for x in row)

    def restrict(self, w):
        """Image of a G weight in H coordinates."""
        m = self.matrix
        out = [0] * self.h_shape.dim
        for i, c in enumerate(w):
            if c:
                row = m[i]
                for j in range(len(out)):
                    out[j] += c * row[j]
        return tuple(out)

    def g_fundamental(self, i: int):
        """G weight pi_i (1-based node index) as a coordinate tuple."""
        r = self.g_shape.factors[0].rank
        if not 1 <= i <= r:
            raise CatalogError(f"pi_{i} out of range for {self.g_shape.describe()}")
        return tuple(int(k == i - 1) for k in range(self.g_shape.dim))

    def chi(self, b: int, coeff: int = 1):
        """H weight coeff*chi_b (1-based block index) as a coordinate vector."""
        blk = self.blocks[b - 1]
        if blk.chi is None:
            raise CatalogError(f"block {b} of {self.case_id} has no torus character")
        vec = [0] * self.h_shape.dim
        vec[blk.chi] = coeff
        return vec

    def covariance_group(self):
        """All coordinate permutations generated by the recorded label covariances."""
        dim = self.h_shape.dim
        ident = tuple(range(dim))
        group = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                for c in self.covariances:
                    h = tuple(g[c[k]] for k in range(dim))
                    if h not in group:
                        group.add(h)
                        nxt.append(h)
            frontier = nxt
        return sorted(group)

    def describe(self) -> str:
        ps = ", ".join(f"{k}={v}" for k, v in self.params)
        ps = f" [{ps}]" if ps else ""
        return f"{self.case_id}{ps}: {self.h_shape.describe()} in {self.g_shape.describe()}"


@lru_cache(maxsize=None)
def np_matrix(d: EmbeddingDescriptor):
    return np.array(d.matrix, dtype=np.int64)


# ---------------------------------------------------------------------------
# H-side assembly


class _HSide:
    """Accumulates conceptual blocks and exposes epsilon-coordinate images."""

    def __init__(self, with_chi: bool):
        self.factors = []
        self.blocks = []
        self.gl_blocks = []
        self.covariances_spots = []  # (kind, coord pair) resolved later
        self.with_chi = with_chi
        self._chi_count = 0
        self._extra_torus = 0  # SO_2 blocks own a torus coordinate

    def add_block(self, kind: str, size: int):
        offset = sum(f.rank for f in self.factors)
        fidx = len(self.factors)
        subkind = "none"
        coords = ()
        if kind == "sl":
            if size >= 2:
                self.factors.append(SimpleLieType("A", size - 1))
                coords = tuple(range(offset, offset + size - 1))
                subkind = "A"
        elif kind == "sp":
            if size < 2 or size % 2:
                raise CatalogError(f"invalid symplectic block size {size}")
            half = size // 2
            self.factors.append(SimpleLieType("C", half) if half >= 2 else SimpleLieType("A", 1))
            coords = tuple(range(offset, offset + half))
            subkind = "C"
        elif kind == "so":
            if size == 1:
                pass
            elif size == 2:
                subkind = "torus"
            elif size == 3:
                self.factors.append(SimpleLieType("A", 1))
                coords = (offset,)
                subkind = "A1v"
            elif size == 4:
                self.factors.extend([SimpleLieType("A", 1), SimpleLieType("A", 1)])
                coords = (offset, offset + 1)
                subkind = "D2"
                self.covariances_spots.append((offset, offset + 1))
            elif size == 5:
                self.factors.append(SimpleLieType("B", 2))
                coords = (offset, offset + 1)
                subkind = "B"
            else:
                half = size // 2
                if size % 2:
                    self.factors.append(SimpleLieType("B", half))
                    subkind = "B"
                else:
                    self.factors.append(SimpleLieType("D", half))
                    subkind = "D"
                    self.covariances_spots.append((offset + half - 2, offset + half - 1))
                coords = tuple(range(offset, offset + half))
        else:
            raise CatalogError(f"unknown block kind {kind}")
        self.blocks.append([kind, size, coords, None, subkind])
        return len(self.blocks) - 1

    def layout(self) -> int:
        """Assign torus coordinate indices; must run before epsilon images are built.

        Chi coordinates follow the factor coordinates, one per block under the
        hat convention; an SO_2 block owns a torus coordinate either way.
        """
        ss = sum(f.rank for f in self.factors)
        torus = 0
        if self.with_chi:
            for b in self.blocks:
                b[3] = ss + torus
                torus += 1
        for b in self.blocks:
            if b[4] == "torus" and b[3] is None:
                b[3] = ss + torus
                torus += 1
        self._torus = torus
        return ss + torus

    def finish(self):
        ss = sum(f.rank for f in self.factors)
        torus = self._torus
        blocks = []
        for kind, size, coords, chi, subkind in self.blocks:
            blocks.append(ConceptualBlock(kind, size, coords, chi, subkind))
        # H-side chi coordinates are block degrees: constant on each irreducible
        # and negated under duality, so no gl_blocks metadata is needed here
        shape = GroupShape(tuple(self.factors), torus)
        covs = []
        for a, b in self.covariances_spots:
            perm = list(range(shape.dim))
            perm[a], perm[b] = perm[b], perm[a]
            covs.append(tuple(perm))
        return shape, tuple(blocks), tuple(covs)

    # epsilon images -------------------------------------------------------

    def sl_eps(self, bi: int, l: int, dim: int):
        """SL_m block: honest epsilon_l of the special linear torus (l = 1..m)."""
        kind, size, coords, chi, subkind = self.blocks[bi]
        vec = [Fraction(0)] * dim
        if size == 1:
            return vec
        if not 1 <= l <= size:
            raise CatalogError("epsilon index out of range")
        if l <= size - 1:
            vec[coords[l - 1]] += 1
        if l >= 2:
            vec[coords[l - 2]] -= 1
        return vec

    def sp_xi(self, bi: int, j: int, dim: int):
        """Sp_2m block: xi_j of the symplectic torus (j = 1..m)."""
        kind, size, coords, chi, subkind = self.blocks[bi]
        half = size // 2
        vec = [Fraction(0)] * dim
        assert 1 <= j <= half
        vec[coords[j - 1]] += 1
        if j >= 2:
            vec[coords[j - 2]] -= 1
        return vec

    def so_xi(self, bi: int, j: int, dim: int):
        """SO_m block: xi_j of the orthogonal torus (j = 1..floor(m/2))."""
        kind, size, coords, chi, subkind = self.blocks[bi]
        vec = [Fraction(0)] * dim
        if subkind == "torus":
            # Spin_2 double cover: the torus coordinate is the half-character,
            # so the SO_2 coordinate xi lands on 2 and spin weights stay integral
            vec[self.blocks[bi][3]] += 2
            return vec
        if subkind == "A1v":  # SO_3 as A1: xi_1 = 2*pi_1 (vector weight doubles the spin)
            assert j == 1
            vec[coords[0]] += 2
            return vec
        if subkind == "D2":  # SO_4: a1 = xi1+xi2, a2 = xi1-xi2
            assert j in (1, 2)
            vec[coords[0]] += 1
            vec[coords[1]] += 1 if j == 1 else -1
            return vec
        half = size // 2
        assert 1 <= j <= half
        if size % 2:  # B_half: eps_j = pi_j - pi_{j-1} (j<half), eps_half = 2pi_half - pi_{half-1}
            if j < half:
                vec[coords[j - 1]] += 1
            else:
                vec[coords[half - 1]] += 2
            if j >= 2:
                vec[coords[j - 2]] -= 1
        else:  # D_half (half >= 3): xi_{h-1} = pi_{h-1}+pi_h-pi_{h-2}, xi_h = pi_h-pi_{h-1}
            if j <= half - 2:
                vec[coords[j - 1]] += 1
            elif j == half - 1:
                vec[coords[half - 2]] += 1
                vec[coords[half - 1]] += 1
            else:  # j == half
                vec[coords[half - 2]] -= 1
                vec[coords[half - 1]] += 1
            if 2 <= j <= half - 1:
                vec[coords[j - 2]] -= 1
        return vec

    def add_chi(self, vec, bi: int):
        chi = self.blocks[bi][3]
        if chi is not None and self.with_chi:
            vec[chi] += 1
        return vec


def _g_rows_from_eps(g_type: SimpleLieType, eps_images, hat_row=None):
    """Fundamental-basis restriction rows from epsilon images.

    ``eps_images[j]`` is the image (Fraction vector) of the j-th tautological
    torus coordinate of G.  Returns integer rows; raises if the change of
    basis does not land in the integral lattice.
    """
    n = g_type.rank
    fam = g_type.family
    rows = []

    def acc(upper):
        s = [Fraction(0)] * len(eps_images[0])
        for j in range(upper):
            for k, x in enumerate(eps_images[j]):
                s[k] += x
        return s

    if fam == "A":
        # rank n means SL_{n+1}: n fundamental rows from n+1 epsilon images
        assert len(eps_images) == n + 1
        for i in range(1, n + 1):
            rows.append(acc(i))
        if hat_row is not None:
            rows.append(acc(n + 1))  # determinant character
        else:
            total = acc(n + 1)
            if any(x != 0 for x in total):
                raise CatalogError("epsilon images do not vanish on the SL trace")
    elif fam == "C":
        for i in range(1, n + 1):
            rows.append(acc(i))
    elif fam == "B":
        for i in range(1, n):
            rows.append(acc(i))
        half = [x / 2 for x in acc(n)]
        rows.append(half)
    elif fam == "D":
        for i in range(1, n - 1):
            rows.append(acc(i))
        s = acc(n - 1)
        last = eps_images[n - 1]
        rows.append([(a - b) / 2 for a, b in zip(s, last)])
        rows.append([(a + b) / 2 for a, b in zip(s, last)])
    else:
        raise CatalogError(f"unsupported classical family {fam}")

    out = []
    for row in rows:
        ints = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise CatalogError("restriction matrix not integral")
            ints.append(int(x))
        out.append(tuple(ints))
    return tuple(out)


def _finalize(case_id, g_type, hat, eps_images, hs: _HSide, params):
    h_shape, blocks, covs = hs.finish()
    n = g_type.rank
    if g_type.family == "A":
        rows = _g_rows_from_eps(g_type, eps_images, hat_row=True if hat else None)
        if hat:
            fund_rows = rows[:n]
            det_row = rows[n]
            matrix = fund_rows + (det_row,)
            g_shape = GroupShape((g_type,), 1, gl_blocks=((0, 0, n + 1),))
        else:
            matrix = rows[:n]
            g_shape = GroupShape((g_type,))
    else:
        matrix = _g_rows_from_eps(g_type, eps_images)
        g_shape = GroupShape((g_type,))
    zero = tuple([0] * h_shape.dim)
    d = EmbeddingDescriptor(
        case_id=case_id,
        g_shape=g_shape,
        h_shape=h_shape,
        matrix=matrix,
        params=tuple(sorted(params.items())),
        blocks=blocks,
        covariances=covs,
    )
    assert d.restrict(tuple([0] * g_shape.dim)) == zero
    return d


# ---------------------------------------------------------------------------
# constructors


def levi_block_embedding(n: int, block_dims) -> EmbeddingDescriptor:
    """Block-diagonal Levi subgroup of SL_n, computed inside GL_n (hat convention)."""
    dims = list(block_dims)
    if n < 2 or any(a < 1 for a in dims) or sum(dims) != n:
        raise CatalogError(f"invalid Levi block dimensions {dims} for n={n}")
    hs = _HSide(with_chi=True)
    for a in dims:
        hs.add_block("sl", a)
    dim = hs.layout()
    eps = []
    for bi, a in enumerate(dims):
        for l in range(1, a + 1):
            v = hs.sl_eps(bi, l, dim)
            eps.append(hs.add_chi(v, bi))
    return _finalize(
        f"levi:{'+'.join(map(str, dims))}",
        SimpleLieType("A", n - 1),
        True,
        eps,
        hs,
        {"n": n, "blocks": tuple(dims)},
    )


def classical_block_embedding(n: int, blocks) -> EmbeddingDescriptor:
    """Block-diagonal subgroup of SL_n with Sp and SL blocks (hat convention).

    ``blocks`` is a list of (kind, size) with kind in {'Sp','SL'}; Sp sizes are
    even and at least 4.  The symplectic form on each Sp block has ones on the
    antidiagonal, so the standard Borel of SL_n induces Borels of the blocks.
    """
    spec = [(str(k), int(s)) for k, s in blocks]
    if sum(s for _, s in spec) != n:
        raise CatalogError("block sizes must sum to n")
    hs = _HSide(with_chi=True)
    for kind, size in spec:
        if kind == "Sp":
            if size < 4 or size % 2:
                raise CatalogError(f"invalid Sp block size {size}")
            hs.add_block("sp", size)
        elif kind == "SL":
            hs.add_block("sl", size)
        else:
            raise CatalogError(f"unknown block kind {kind}")
    dim = hs.layout()
    eps = []
    for bi, (kind, size) in enumerate(spec):
        for l in range(1, size + 1):
            if kind == "SL":
                v = hs.sl_eps(bi, l, dim)
            else:
                half = size // 2
                if l <= half:
                    v = hs.sp_xi(bi, l, dim)
                else:
                    v = [-x for x in hs.sp_xi(bi, size + 1 - l, dim)]
            eps.append(hs.add_chi(v, bi))
    label = "+".join(f"{k}{s}" for k, s in spec)
    return _finalize(
        f"blocks:{label}",
        SimpleLieType("A", n - 1),
        True,
        eps,
        hs,
        {"n": n, "blocks": tuple(spec)},
    )


def so_in_sl(n: int) -> EmbeddingDescriptor:
    """SO_n ⊂ SL_n (symmetric-form stabilizer, split torus)."""
    if n < 3:
        raise CatalogError("so_in_sl requires n >= 3")
    hs = _HSide(with_chi=False)
    hs.add_block("so", n)
    dim = hs.layout()
    half = n // 2
    eps = []
    for j in range(1, n + 1):
        if j <= half:
            eps.append(hs.so_xi(0, j, dim))
        elif n % 2 and j == half + 1:
            eps.append([Fraction(0)] * dim)
        else:
            eps.append([-x for x in hs.so_xi(0, n + 1 - j, dim)])
    return _finalize(f"so_in_sl:{n}", SimpleLieType("A", n - 1), False, eps, hs, {"n": n})


def sp_in_sl(two_n: int) -> EmbeddingDescriptor:
    """Sp_2n ⊂ SL_2n (antidiagonal symplectic form)."""
    if two_n < 4 or two_n % 2:
        raise CatalogError("sp_in_sl requires an even size >= 4")
    hs = _HSide(with_chi=False)
    hs.add_block("sp", two_n)
    dim = hs.layout()
    half = two_n // 2
    eps = []
    for j in range(1, two_n + 1):
        if j <= half:
            eps.append(hs.sp_xi(0, j, dim))
        else:
            eps.append([-x for x in hs.sp_xi(0, two_n + 1 - j, dim)])
    return _finalize(f"sp_in_sl:{two_n}", SimpleLieType("A", two_n - 1), False, eps, hs, {"n": half})


def symmetric_embedding(kind: str, **params) -> EmbeddingDescriptor:
    """Dispatcher over the symmetric-subgroup constructors.

    ``kind`` is one of ``so_in_sl`` (n), ``sp_in_sl`` (n, giving Sp_2n in
    SL_2n), ``spsp_in_sp`` (p, q), ``spinspin_in_spin`` (p, q).
    """
    if kind == "so_in_sl":
        return so_in_sl(params["n"])
    if kind == "sp_in_sl":
        return sp_in_sl(2 * params["n"])
    if kind == "spsp_in_sp":
        return spsp_in_sp(params["p"], params["q"])
    if kind == "spinspin_in_spin":
        return spinspin_in_spin(params["p"], params["q"])
    raise CatalogError(f"unknown symmetric embedding kind {kind!r}")


def spsp_in_sp(p: int, q: int) -> EmbeddingDescriptor:
    """Sp_2p x Sp_2q ⊂ Sp_2(p+q), block-diagonal."""
    if p < 1 or q < 1:
        raise CatalogError("spsp_in_sp requires p, q >= 1")
    n = p + q
    hs = _HSide(with_chi=False)
    hs.add_block("sp", 2 * p)
    hs.add_block("sp", 2 * q)
    dim = hs.layout()
    eps = []
    for j in range(1, n + 1):
        if j <= p:
            eps.append(hs.sp_xi(0, j, dim))
        else:
            eps.append(hs.sp_xi(1, j - p, dim))
    return _finalize(f"sp_spsp:{p},{q}", SimpleLieType("C", n), False, eps, hs, {"p": p, "q": q})


def spinspin_in_spin(p: int, q: int) -> EmbeddingDescriptor:
    """Spin_p · Spin_q ⊂ Spin_{p+q}, the preimage of SO_p x SO_q."""
    if p < 1 or q < 1 or p + q < 5:
        raise CatalogError("spinspin_in_spin requires p + q >= 5")
    m = p + q
    hs = _HSide(with_chi=False)
    hs.add_block("so", p)
    hs.add_block("so", q)
    dim = hs.layout()
    hp, hq = p // 2, q // 2
    n = m // 2
    eps = []
    for j in range(1, n + 1):
        if j <= hp:
            eps.append(hs.so_xi(0, j, dim))
        elif j <= hp + hq:
            eps.append(hs.so_xi(1, j - hp, dim))
        else:
            # both p and q odd: one leftover coordinate restricts to zero
            eps.append([Fraction(0)] * dim)
    g_type = SimpleLieType("B", n) if m % 2 else SimpleLieType("D", n)
    return _finalize(f"spin_spin:{p},{q}", g_type, False, eps, hs, {"p": p, "q": q})


_EXCEPTIONAL_SHAPES = {
    "f4_b4": ("F4", ["B4"]),
    "e6_c4": ("E6", ["C4"]),
    "e6_a5a1": ("E6", ["A5", "A1"]),
    "e6_f4": ("E6", ["F4"]),
    "e7_a7": ("E7", ["A7"]),
    "e7_d6a1": ("E7", ["D6", "A1"]),
}


def exceptional_embedding(case: str) -> EmbeddingDescriptor:
    """One of the fixed symmetric embeddings into F4/E6/E7; matrix from the catalog."""
    cat = load_embedding_catalog()
    rec = next((r for r in cat["records"] if r["case_id"] == case), None)
    if rec is None or "matrix" not in rec:
        raise CatalogError(f"unknown exceptional case {case!r}")
    g_name, h_names = _EXCEPTIONAL_SHAPES[case]
    g_type = SimpleLieType.parse(g_name)
    h_factors = tuple(SimpleLieType.parse(s) for s in h_names)
    h_shape = GroupShape(h_factors)
    blocks = []
    o = 0
    for f in h_factors:
        if f.family in ("A", "B", "C", "D"):
            kind = {"A": "sl", "B": "so", "C": "sp", "D": "so"}[f.family]
            size = {"A": f.rank + 1, "B": 2 * f.rank + 1, "C": 2 * f.rank, "D": 2 * f.rank}[f.family]
        else:
            kind, size = "plain", f.rank
        blocks.append(
            ConceptualBlock(kind, size, tuple(range(o, o + f.rank)), None, f.family)
        )
        o += f.rank
    matrix = tuple(tuple(int(x) for x in row) for row in rec["matrix"])
    return EmbeddingDescriptor(
        case_id=case,
        g_shape=GroupShape((g_type,)),
        h_shape=h_shape,
        matrix=matrix,
        blocks=tuple(blocks),
    )


def _perm_matrix(perm, dim):
    """Row i = image of basis vector i under coordinate permutation."""
    return [[Fraction(int(perm[i] == j)) for j in range(dim)] for i in range(dim)]


def spin7_in_sl8() -> EmbeddingDescriptor:
    """Spin_7 ⊂ SL_8 through the spinor module.

    Composition: restrict SL_8 characters to the split SO_8 torus, apply the
    triality graph automorphism of D4 exchanging nodes 1 and 4, then restrict
    D4 to B3 along the vector-stabilizer inclusion.
    """
    d_so8 = so_in_sl(8)  # SL8 -> D4 rows (8 x 4)
    tri = [3, 1, 2, 0]  # node permutation 1<->4 on fundamental coordinates
    d4 = SimpleLieType("D", 4)
    b3 = SimpleLieType("B", 3)
    # D4 -> B3: xi_j -> xi_j (j<=3), xi_4 -> 0
    hs = _HSide(with_chi=False)
    hs.add_block("so", 7)
    dim = hs.layout()
    eps = [hs.so_xi(0, j, dim) for j in range(1, 4)]
    eps.append([Fraction(0)] * dim)
    d4_to_b3 = _g_rows_from_eps(d4, eps)
    rows = []
    for row in d_so8.matrix:
        tri_row = tuple(row[tri[k]] for k in range(4))
        out = [0] * 3
        for i, c in enumerate(tri_row):
            if c:
                for j in range(3):
                    out[j] += c * d4_to_b3[i][j]
        rows.append(tuple(out))
    blk = ConceptualBlock("so", 7, (0, 1, 2), None, "B")
    return EmbeddingDescriptor(
        case_id="sl_spin",
        g_shape=GroupShape((SimpleLieType("A", 7),)),
        h_shape=GroupShape((b3,)),
        matrix=tuple(rows),
        blocks=(blk,),
    )


def identity_embedding(g_type: SimpleLieType) -> EmbeddingDescriptor:
    """G ⊂ G; branch through it is the identity decomposition."""
    shape = GroupShape((g_type,))
    n = shape.dim
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    if g_type.family in ("A", "B", "C", "D"):
        kind = {"A": "sl", "B": "so", "C": "sp", "D": "so"}[g_type.family]
        size = {
            "A": g_type.rank + 1,
            "B": 2 * g_type.rank + 1,
            "C": 2 * g_type.rank,
            "D": 2 * g_type.rank,
        }[g_type.family]
    else:
        kind, size = "plain", g_type.rank
    blk = ConceptualBlock(kind, size, tuple(range(g_type.rank)), None, g_type.family)
    return EmbeddingDescriptor(
        case_id=f"identity:{g_type}",
        g_shape=shape,
        h_shape=shape,
        matrix=ident,
        blocks=(blk,),
    )


def dual_case(d: EmbeddingDescriptor, I):
    """The dual triple: same descriptor, I mapped through G's -w0 involution."""
    t = d.g_shape.factors[0]
    n = t.rank
    if t.family == "A":
        istar = {n + 1 - i for i in I}
    elif t.family == "E" and n == 6:
        m = {1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4}
        istar = {m[i] for i in I}
    elif t.family == "D" and n % 2:
        m = {n - 1: n, n: n - 1}
        istar = {m.get(i, i) for i in I}
    else:
        istar = set(I)
    return d, frozenset(istar)


# ---------------------------------------------------------------------------
# catalog


@lru_cache(maxsize=None)
def load_embedding_catalog() -> dict:
    text = resources.files("branchmon.data").joinpath("embeddings_v1.json").read_text()
    data = json.loads(text)
    if data.get("schema_version") != 1:
        raise CatalogError("unsupported embedding catalog schema version")
    return data


def embedding_from_case(case_id: str, **params) -> EmbeddingDescriptor:
    """Build a catalog embedding by case id, e.g. 'sl_sp' with n=3."""
    if case_id.startswith("identity:"):
        return identity_embedding(SimpleLieType.parse(case_id.split(":", 1)[1]))
    cat = load_embedding_catalog()
    rec = next((r for r in cat["records"] if r["case_id"] == case_id), None)
    if rec is None:
        raise CatalogError(f"unknown embedding case {case_id!r}")
    ctor = rec["constructor"]
    if ctor == "exceptional":
        return exceptional_embedding(case_id)
    if ctor == "spin7_in_sl8":
        return spin7_in_sl8()
    need = rec.get("params", [])
    missing = [k for k in need if k not in params]
    if missing:
        raise CatalogError(f"{case_id} requires parameters {missing}")
    p = {k: int(params[k]) for k in need}
    if ctor == "so_in_sl":
        return so_in_sl(p["n"])
    if ctor == "sp_in_sl":
        return sp_in_sl(2 * p["n"])
    if ctor == "spsp_in_sp":
        return spsp_in_sp(p["p"], p["q"])
    if ctor == "spinspin_in_spin":
        return spinspin_in_spin(p["p"], p["q"])
    if ctor == "levi":
        return levi_block_embedding(p["n"], params["blocks"])
    if ctor == "classical_blocks":
        return classical_block_embedding(p["n"], params["blocks"])
    raise CatalogError(f"unknown constructor {ctor!r}")


def project_to_sl(d: EmbeddingDescriptor, mu):
    """Normalize an H weight modulo the SL relation sum(dim V_b * chi_b) = 0.

    Only meaningful for hat-convention descriptors.  The representative with
    the last block character reduced into [0, dim V_t) is returned.  Provided
    for inspection; table verification works in hat coordinates throughout.
    """
    if not d.blocks or d.blocks[-1].chi is None:
        raise CatalogError("project_to_sl requires a hat-convention descriptor")
    rel = [0] * d.h_shape.dim
    for blk in d.blocks:
        rel[blk.chi] += blk.size
    last = d.blocks[-1]
    c = mu[last.chi]
    k = c // last.size
    return tuple(x - k * r for x, r in zip(mu, rel))
