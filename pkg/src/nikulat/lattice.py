"""Integral lattices with exact Gram-matrix arithmetic.

A lattice is a free Z-module of finite rank together with a nondegenerate
integer-valued symmetric bilinear form, stored as a Gram matrix.  Everything
here is a pure function on immutable values; no floats appear anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod

from . import intmat
from .intmat import IntVector, Matrix

#: (block label, coordinate offset, block rank) bookkeeping for direct sums.
Block = tuple[str, int, int]


class LatticeError(ValueError):
    """Domain-level failure: bad vector, mismatched lattice, degenerate form."""


# Negated Cartan matrix of E8.  Node ordering: 1-2-3-4-5-6-7 is a path and
# node 8 attaches to node 5, so roots 1,3 are non-adjacent and 4,6 are
# non-adjacent.  This exact matrix is part of the package's wire contract.
E8_NEG_GRAM: Matrix = (
    (-2, 1, 0, 0, 0, 0, 0, 0),
    (1, -2, 1, 0, 0, 0, 0, 0),
    (0, 1, -2, 1, 0, 0, 0, 0),
    (0, 0, 1, -2, 1, 0, 0, 0),
    (0, 0, 0, 1, -2, 1, 0, 1),
    (0, 0, 0, 0, 1, -2, 1, 0),
    (0, 0, 0, 0, 0, 1, -2, 0),
    (0, 0, 0, 0, 1, 0, 0, -2),
)


@dataclass(frozen=True)
class Lattice:
    """A nondegenerate integral lattice presented by a Gram matrix."""

    label: str
    gram: Matrix
    blocks: tuple[Block, ...] = ()

    def __post_init__(self) -> None:
        gram = intmat.freeze(self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if len(gram[0]) != n:
            raise LatticeError(f"Gram matrix of {self.label!r} is not square")
        if gram != intmat.transpose(gram):
            raise LatticeError(f"Gram matrix of {self.label!r} is not symmetric")
        if intmat.det(gram) == 0:
            raise LatticeError(f"Gram matrix of {self.label!r} is degenerate")
        if not self.blocks:
            object.__setattr__(self, "blocks", ((self.label, 0, n),))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return intmat.det(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def vector(self, coords) -> LatticeVector:
        return LatticeVector(self, tuple(int(c) for c in coords))

    def basis_vector(self, i: int) -> LatticeVector:
        if not 0 <= i < self.rank:
            raise LatticeError(f"basis index {i} out of range for rank {self.rank}")
        return self.vector(tuple(int(j == i) for j in range(self.rank)))

    def zero(self) -> LatticeVector:
        return self.vector((0,) * self.rank)

    def block_slice(self, label_or_index) -> slice:
        """Coordinate slice of a direct summand, by position or block label."""
        if isinstance(label_or_index, int):
            _, off, size = self.blocks[label_or_index]
            return slice(off, off + size)
        for name, off, size in self.blocks:
            if name == label_or_index:
                return slice(off, off + size)
        raise LatticeError(f"no block {label_or_index!r} in {self.label!r}")

    def __repr__(self) -> str:
        return f"Lattice({self.label!r}, rank={self.rank})"


@dataclass(frozen=True)
class LatticeVector:
    """An element of a lattice, given by integer coordinates in its basis."""

    lattice: Lattice
    coords: IntVector

    def __post_init__(self) -> None:
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.lattice.rank:
            raise LatticeError(
                f"vector of length {len(coords)} in lattice of rank {self.lattice.rank}"
            )

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: LatticeVector) -> LatticeVector:
        _same_lattice(self, other)
        return LatticeVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: LatticeVector) -> LatticeVector:
        _same_lattice(self, other)
        return LatticeVector(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> LatticeVector:
        return LatticeVector(self.lattice, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> LatticeVector:
        return LatticeVector(self.lattice, tuple(k * a for a in self.coords))

    def __repr__(self) -> str:
        return f"{self.lattice.label}{list(self.coords)}"


def _same_lattice(v: LatticeVector, w: LatticeVector) -> None:
    if v.lattice != w.lattice:
        raise LatticeError(
            f"vectors live in different lattices: {v.lattice.label!r} vs {w.lattice.label!r}"
        )


def standard_lattice(kind: str, param: int | None = None) -> Lattice:
    """One of the standard building blocks: U, E8_neg, or rank1(k).

    U is the hyperbolic plane with Gram [[0,1],[1,0]]; E8_neg is the negated
    E8 Cartan matrix under the fixed node ordering documented on
    ``E8_NEG_GRAM``; rank1(k) is the rank-one lattice whose generator has
    self-pairing k.
    """
    if kind == "U":
        return Lattice("U", ((0, 1), (1, 0)))
    if kind == "E8_neg":
        return Lattice("E8(-1)", E8_NEG_GRAM)
    if kind == "rank1":
        if param is None or param == 0:
            raise LatticeError("rank1 lattice needs a nonzero self-pairing")
        return Lattice(f"<{param}>", ((int(param),),))
    raise LatticeError(f"unknown standard lattice kind {kind!r}")


def rescale(lat: Lattice, n: int) -> Lattice:
    """The lattice L(n): same module, bilinear form multiplied by n."""
    if n == 0:
        raise LatticeError("cannot rescale a form by 0")
    gram = tuple(tuple(n * x for x in row) for row in lat.gram)
    label = f"{lat.label}({n})"
    blocks = lat.blocks
    if blocks == ((lat.label, 0, lat.rank),):
        blocks = ((label, 0, lat.rank),)
    return Lattice(label, gram, blocks)


def direct_sum(parts: list[Lattice] | tuple[Lattice, ...], label: str | None = None) -> Lattice:
    """Orthogonal direct sum with block-diagonal Gram and block offsets kept."""
    if not parts:
        raise LatticeError("direct sum of an empty list")
    if len(parts) == 1 and label is None:
        return parts[0]
    total = sum(p.rank for p in parts)
    rows: list[list[int]] = [[0] * total for _ in range(total)]
    blocks: list[Block] = []
    off = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                rows[off + i][off + j] = p.gram[i][j]
        for name, boff, bsize in p.blocks:
            blocks.append((name, off + boff, bsize))
        off += p.rank
    if label is None:
        label = "+".join(p.label for p in parts)
    return Lattice(label, tuple(tuple(r) for r in rows), tuple(blocks))


def pair(v: LatticeVector, w: LatticeVector) -> int:
    """The bilinear pairing (v, w), exactly."""
    _same_lattice(v, w)
    gw = intmat.matvec(v.lattice.gram, w.coords)
    return sum(a * b for a, b in zip(v.coords, gw))


def square(v: LatticeVector) -> int:
    """The self-pairing (v, v)."""
    return pair(v, v)


def divisibility(v: LatticeVector) -> int:
    """Positive generator of the pairing ideal (v, L), taken in v's full ambient lattice."""
    if v.is_zero():
        raise LatticeError("divisibility of the zero vector is undefined")
    return gcd(*intmat.matvec(v.lattice.gram, v.coords))


def is_primitive(v: LatticeVector) -> bool:
    """True iff v is not a nontrivial integer multiple of a lattice vector."""
    if v.is_zero():
        raise LatticeError("primitivity of the zero vector is undefined")
    return gcd(*v.coords) == 1


def smith_normal_form(m) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form (left, D, right) of an integer matrix; see intmat."""
    return intmat.smith_normal_form(intmat.freeze(m))


def discriminant_group(lat: Lattice) -> list[int]:
    """Invariant factors (>1) of the discriminant group L*/L = coker(gram)."""
    diag = intmat.smith_decomposition(lat.gram).diagonal()
    if any(d == 0 for d in diag):
        raise LatticeError(f"lattice {lat.label!r} is degenerate")
    return [d for d in diag if d > 1]


@dataclass(frozen=True)
class SublatticeReport:
    """How a finitely generated sublattice sits inside its saturation."""

    generators: tuple[LatticeVector, ...]
    saturation_basis: tuple[LatticeVector, ...]
    index_invariant_factors: tuple[int, ...]
    total_index: int

    def __post_init__(self) -> None:
        if self.total_index != prod(self.index_invariant_factors, start=1):
            raise LatticeError("total_index must be the product of the invariant factors")


def saturate(lat: Lattice, gens: list[LatticeVector] | tuple[LatticeVector, ...]) -> SublatticeReport:
    """Saturation of the sublattice spanned by ``gens``.

    The saturation is the intersection of the rational span with the ambient
    lattice.  With the Smith decomposition L @ M @ R = D of the coordinate
    matrix M (generators as columns), the saturation is spanned by the first
    k columns of L^-1 and the quotient saturation/sublattice has invariant
    factors the diagonal of D.
    """
    if not gens:
        raise LatticeError("saturate needs at least one generator")
    for g in gens:
        if g.lattice != lat:
            raise LatticeError("generator does not live in the given lattice")
    k = len(gens)
    m = intmat.freeze([[g.coords[i] for g in gens] for i in range(lat.rank)])
    dec = intmat.smith_decomposition(m)
    diag = dec.diagonal()
    if len(diag) < k or any(d == 0 for d in diag):
        raise LatticeError("generators are linearly dependent over Q")
    basis = tuple(
        lat.vector(tuple(dec.left_inv[i][j] for i in range(lat.rank))) for j in range(k)
    )
    factors = tuple(d for d in diag if d > 1)
    return SublatticeReport(
        generators=tuple(gens),
        saturation_basis=basis,
        index_invariant_factors=factors,
        total_index=prod(diag, start=1),
    )


@dataclass(frozen=True)
class EmbeddingMap:
    """A Z-linear injection of lattices; column j is the image of basis vector j."""

    domain: Lattice
    codomain: Lattice
    matrix: Matrix

    def __post_init__(self) -> None:
        matrix = intmat.freeze(self.matrix)
        object.__setattr__(self, "matrix", matrix)
        if len(matrix) != self.codomain.rank or len(matrix[0]) != self.domain.rank:
            raise LatticeError(
                f"embedding matrix must be {self.codomain.rank}x{self.domain.rank}"
            )

    def __call__(self, v: LatticeVector) -> LatticeVector:
        if v.lattice.gram != self.domain.gram:
            raise LatticeError(
                f"vector lattice {v.lattice.label!r} does not match domain {self.domain.label!r}"
            )
        return self.codomain.vector(intmat.matvec(self.matrix, v.coords))

    def column_vectors(self) -> tuple[LatticeVector, ...]:
        return tuple(
            self.codomain.vector(tuple(self.matrix[i][j] for i in range(self.codomain.rank)))
            for j in range(self.domain.rank)
        )


@dataclass(frozen=True)
class EmbeddingReport:
    isometric: bool
    primitive: bool
    saturation_index: int
    index_invariant_factors: tuple[int, ...]


def check_embedding(emb: EmbeddingMap) -> EmbeddingReport:
    """Whether an embedding conserves the form and whether its image is saturated."""
    mt = intmat.transpose(emb.matrix)
    pulled_back = intmat.matmul(intmat.matmul(mt, emb.codomain.gram), emb.matrix)
    isometric = pulled_back == emb.domain.gram
    report = saturate(emb.codomain, list(emb.column_vectors()))
    return EmbeddingReport(
        isometric=isometric,
        primitive=report.total_index == 1,
        saturation_index=report.total_index,
        index_invariant_factors=report.index_invariant_factors,
    )
