"""The concrete rank-23/15/16 lattices, their named vectors, and the classifiers.

Fixed conventions (part of this package's contract):

* E8(-1) uses the negated Cartan matrix under the node ordering documented in
  :data:`nikulat.lattice.E8_NEG_GRAM` (path 1-2-3-4-5-6-7, node 8 on node 5).
* ``LY`` = U(2)^3 + E8(-1) + <-2>^2 with blocks at offsets 0, 2, 4, 6, 14, 15.
* ``LX`` = U^3 + E8(-1)^2 + <-2> with blocks at offsets 0, 2, 4, 6, 14, 22.
* ``Lfix`` = U^3 + E8(-2) + <-2> with blocks at offsets 0, 2, 4, 6, 14.
* L(i) = u1 + i*u2 in the FIRST U(2) block; e1 = eps1; e2 = eps1 + eps3;
  ew = eps4 + eps6; deltaY = gamma1 + gamma2; SigmaY = gamma1 - gamma2;
  w = L(1) + ew + gamma1.

With this ordering eps1,eps3 and eps4,eps6 are non-adjacent, which forces
e2^2 = ew^2 = -4 and (e2, ew) = 1; a chain ordering with eps1,eps3 adjacent
would give e2^2 = -2 instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator

from . import intmat
from .intmat import IntVector, Matrix
from .isometry import Isometry, reflection
from .lattice import (
    E8_NEG_GRAM,
    EmbeddingMap,
    Lattice,
    LatticeError,
    LatticeVector,
    direct_sum,
    discriminant_group,
    divisibility,
    is_primitive,
    pair,
    rescale,
    square,
    standard_lattice,
)

ORBIT_CASES = (
    "Star1",
    "Case2",
    "Case3",
    "Case4",
    "Case5",
    "Case6",
    "Case7",
    "Case8",
    "Case9",
    "Unmatched",
)

#: block name -> coordinate offset in LY
Y_BLOCKS = {"U1": 0, "U2": 2, "U3": 4, "E8": 6, "G1": 14, "G2": 15}
Y_BLOCK_SIZES = {"U1": 2, "U2": 2, "U3": 2, "E8": 8, "G1": 1, "G2": 1}

X_BLOCKS = {"U1": 0, "U2": 2, "U3": 4, "E8A": 6, "E8B": 14, "D": 22}
FIX_BLOCKS = {"U1": 0, "U2": 2, "U3": 4, "E8": 6, "D": 14}
FIX_BLOCK_SIZES = {"U1": 2, "U2": 2, "U3": 2, "E8": 8, "D": 1}


@dataclass(frozen=True)
class NamedModel:
    lambda_X: Lattice
    lambda_fix: Lattice
    lambda_Y: Lattice


@dataclass(frozen=True)
class NamedVectors:
    """The vectors of LY that the classifiers and the audit talk about."""

    u: tuple[LatticeVector, ...]  # u1..u6, bases of the three U(2) blocks
    eps: tuple[LatticeVector, ...]  # eps1..eps8, simple roots of E8(-1)
    e1: LatticeVector
    e2: LatticeVector
    ew: LatticeVector
    gamma1: LatticeVector
    gamma2: LatticeVector
    deltaY: LatticeVector
    SigmaY: LatticeVector
    w: LatticeVector

    def L(self, i: int) -> LatticeVector:
        """L(i) = u1 + i*u2, a primitive class of square 4i in the first U(2)."""
        return self.u[0] + i * self.u[1]

    def by_name(self) -> dict[str, LatticeVector]:
        names = {f"u{k + 1}": v for k, v in enumerate(self.u)}
        names.update({f"eps{k + 1}": v for k, v in enumerate(self.eps)})
        names.update(
            e1=self.e1,
            e2=self.e2,
            ew=self.ew,
            w=self.w,
            gamma1=self.gamma1,
            gamma2=self.gamma2,
            deltaY=self.deltaY,
            SigmaY=self.SigmaY,
        )
        return names


@lru_cache(maxsize=1)
def build_model() -> tuple[NamedModel, NamedVectors]:
    """Construct the three lattices and the named vectors, checking every pin."""
    u_plane = standard_lattice("U")
    u2_plane = rescale(u_plane, 2)
    e8 = standard_lattice("E8_neg")
    minus2 = standard_lattice("rank1", -2)

    lambda_X = direct_sum([u_plane] * 3 + [e8, e8, minus2], label="LX")
    lambda_fix = direct_sum([u_plane] * 3 + [rescale(e8, 2), minus2], label="Lfix")
    lambda_Y = direct_sum([u2_plane] * 3 + [e8, minus2, minus2], label="LY")

    b = lambda_Y.basis_vector
    u = tuple(b(i) for i in range(6))
    eps = tuple(b(6 + i) for i in range(8))
    gamma1, gamma2 = b(14), b(15)
    vectors = NamedVectors(
        u=u,
        eps=eps,
        e1=eps[0],
        e2=eps[0] + eps[2],
        ew=eps[3] + eps[5],
        gamma1=gamma1,
        gamma2=gamma2,
        deltaY=gamma1 + gamma2,
        SigmaY=gamma1 - gamma2,
        w=u[0] + u[1] + eps[3] + eps[5] + gamma1,
    )

    # build-time pins; a failure here is a construction bug, not user error
    for i in range(4):
        li = vectors.L(i)
        assert square(li) == 4 * i and is_primitive(li) and divisibility(li) == 2
    assert square(vectors.e1) == -2
    assert square(vectors.e2) == -4 and square(vectors.ew) == -4
    assert pair(vectors.e2, vectors.ew) == 1
    assert square(vectors.deltaY) == -4 and square(vectors.SigmaY) == -4
    assert pair(vectors.deltaY, vectors.SigmaY) == 0
    assert square(vectors.w) == -2
    assert vectors.w == vectors.L(1) + vectors.ew + vectors.gamma1
    assert discriminant_group(lambda_Y) == [2] * 8

    return NamedModel(lambda_X, lambda_fix, lambda_Y), vectors


def lattice_registry() -> dict[str, Lattice]:
    """Built-in lattices addressable by label in vector files."""
    model, _ = build_model()
    return {"LX": model.lambda_X, "Lfix": model.lambda_fix, "LY": model.lambda_Y}


# ---------------------------------------------------------------------------
# the involution on LX and its fixed sublattice


def sigma_star(v: LatticeVector) -> LatticeVector:
    """The involution of LX exchanging the two E8(-1) blocks."""
    model, _ = build_model()
    if v.lattice != model.lambda_X:
        raise LatticeError("sigma_star acts on LX only")
    c = v.coords
    swapped = c[:6] + c[14:22] + c[6:14] + c[22:]
    return model.lambda_X.vector(swapped)


def sigma_star_isometry() -> Isometry:
    model, _ = build_model()
    n = model.lambda_X.rank
    perm = list(range(n))
    for i in range(8):
        perm[6 + i], perm[14 + i] = perm[14 + i], perm[6 + i]
    matrix = tuple(tuple(int(perm[i] == j) for j in range(n)) for i in range(n))
    return Isometry(model.lambda_X, matrix)


def sigma_invariant_basis() -> tuple[LatticeVector, ...]:
    """A basis of the sigma_star-invariant sublattice of LX (rank 15).

    Ordered to match Lfix: the U^3 basis, the diagonal E8 classes
    eps_i + sigma(eps_i) (whose squares double), and the <-2> generator.
    """
    model, _ = build_model()
    b = model.lambda_X.basis_vector
    basis = [b(i) for i in range(6)]
    basis += [b(6 + i) + b(14 + i) for i in range(8)]
    basis.append(b(22))
    return tuple(basis)


# ---------------------------------------------------------------------------
# the doubling embedding eta : Lfix(2) -> LY


def eta_as_written_matrix() -> Matrix:
    """Columns: U^3 coordinates copied, E8 coordinates doubled, <-2> duplicated."""
    rows = [[0] * 15 for _ in range(16)]
    for k in range(6):
        rows[k][k] = 1
    for j in range(8):
        rows[6 + j][6 + j] = 2
    rows[14][14] = 1
    rows[15][14] = 1
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def eta_embedding(variant: str = "as-written") -> EmbeddingMap:
    """The registered eta variants as embeddings Lfix(2) -> LY."""
    if variant != "as-written":
        raise LatticeError(f"unknown eta variant {variant!r}")
    model, _ = build_model()
    return EmbeddingMap(rescale(model.lambda_fix, 2), model.lambda_Y, eta_as_written_matrix())


def eta_from_matrix(matrix) -> EmbeddingMap:
    """A user-supplied eta candidate; accepted even when not isometric (flagged downstream)."""
    model, _ = build_model()
    return EmbeddingMap(rescale(model.lambda_fix, 2), model.lambda_Y, intmat.freeze(matrix))


def eta(variant: str, v: LatticeVector) -> LatticeVector:
    """Apply a registered eta variant to a vector of Lfix (or Lfix(2)).

    The underlying module of Lfix and Lfix(2) is the same, so coordinates are
    accepted from either presentation.
    """
    emb = eta_embedding(variant)
    model, _ = build_model()
    if v.lattice.gram not in (model.lambda_fix.gram, emb.domain.gram):
        raise LatticeError("eta applies to vectors of Lfix")
    return emb(emb.domain.vector(v.coords))


# ---------------------------------------------------------------------------
# profiles and the decision table


def _require_in_LY(v: LatticeVector) -> None:
    model, _ = build_model()
    if v.lattice != model.lambda_Y:
        raise LatticeError("expected a vector of LY")


def _parts(v: LatticeVector) -> tuple[IntVector, IntVector, int, int]:
    c = v.coords
    return c[0:6], c[6:14], c[14], c[15]


@dataclass(frozen=True)
class StarBreakdown:
    """Truth value of condition (*) together with its three clauses."""

    u_part_not_divisible_by_2: bool
    e8_part_divisible_by_2: bool
    gamma_part_in_delta_sigma_span: bool

    @property
    def holds(self) -> bool:
        return (
            self.u_part_not_divisible_by_2
            and self.e8_part_divisible_by_2
            and self.gamma_part_in_delta_sigma_span
        )


def star_condition(v: LatticeVector) -> StarBreakdown:
    """Condition (*): U-part not divisible by 2, E8-part divisible by 2, and
    gamma-part (k, m) inside the span of deltaY, SigmaY (i.e. k = m mod 2)."""
    _require_in_LY(v)
    if v.is_zero():
        raise LatticeError("condition (*) is undefined for the zero vector")
    u_part, e8_part, k, m = _parts(v)
    return StarBreakdown(
        u_part_not_divisible_by_2=any(c % 2 for c in u_part),
        e8_part_divisible_by_2=all(c % 2 == 0 for c in e8_part),
        gamma_part_in_delta_sigma_span=(k - m) % 2 == 0,
    )


def _e8_square(e8_part: IntVector) -> int:
    return sum(
        e8_part[i] * E8_NEG_GRAM[i][j] * e8_part[j] for i in range(8) for j in range(8)
    )


@dataclass(frozen=True)
class VectorProfile:
    """Every numerical invariant the decision table consults, computed exactly."""

    q: int
    div: int
    primitive: bool
    u_part_div_by_2: bool
    e8_part: IntVector
    e8_part_div_by_2: bool
    q_e8_mod4: int
    gamma_coords: tuple[int, int]
    gamma_in_delta_sigma_span: bool
    pair_sigma_mod4: int


def vector_profile(v: LatticeVector) -> VectorProfile:
    _require_in_LY(v)
    if v.is_zero():
        raise LatticeError("profile of the zero vector is undefined")
    _, vectors = build_model()
    u_part, e8_part, k, m = _parts(v)
    return VectorProfile(
        q=square(v),
        div=divisibility(v),
        primitive=is_primitive(v),
        u_part_div_by_2=all(c % 2 == 0 for c in u_part),
        e8_part=e8_part,
        e8_part_div_by_2=all(c % 2 == 0 for c in e8_part),
        q_e8_mod4=_e8_square(e8_part) % 4,
        gamma_coords=(k, m),
        gamma_in_delta_sigma_span=(k - m) % 2 == 0,
        pair_sigma_mod4=pair(v, vectors.SigmaY) % 4,
    )


@dataclass(frozen=True)
class OrbitClass:
    """Outcome of the monodromy-orbit decision table."""

    case: str
    i: int
    representative: LatticeVector
    representative_expr: str
    note: str = ""

    def __post_init__(self) -> None:
        if self.case not in ORBIT_CASES:
            raise LatticeError(f"unknown case {self.case!r}")


def _row_matches(profile: VectorProfile) -> list[tuple[str, int]]:
    """All non-(*) rows whose signature fits the profile; at most one by design.

    The residue separating rows 2/3 and guaranteeing row 7 is the image of the
    E8-part in E8(-1)/4E8(-1): for a divisibility-2 vector the E8-part is
    already divisible by 2, so a residue mod 2E8 would vanish identically and
    rows 3 and 7 could never fire.  Mod 4E8 (all coordinates divisible by 4)
    is the reading under which every printed representative satisfies its own
    row, and it is the one implemented.
    """
    q, div = profile.q, profile.div
    e8_mod4_zero = all(c % 4 == 0 for c in profile.e8_part)
    matches: list[tuple[str, int]] = []
    if div == 2:
        if (q + 4) % 16 == 0:
            i = (q + 4) // 16
            matches.append(("Case2" if e8_mod4_zero else "Case3", i))
        if (q + 12) % 16 == 0 and not e8_mod4_zero:
            matches.append(("Case7", (q + 12) // 16))
        if (q + 2) % 4 == 0 and e8_mod4_zero:
            matches.append(("Case4", (q + 2) // 4))
    elif div == 1:
        if (q + 2) % 4 == 0:
            i = (q + 2) // 4
            matches.append(("Case5" if profile.q_e8_mod4 == 0 else "Case6", i))
        if q % 4 == 0:
            if profile.q_e8_mod4 == 2:
                matches.append(("Case8", q // 4 + 1))
            else:
                matches.append(("Case9", q // 4))
    return matches


def case_representative(case: str, i: int) -> tuple[LatticeVector, str]:
    """The printed representative of a table row, with its expression string."""
    _, nv = build_model()
    reps = {
        "Star1": (lambda: nv.L(i), f"L({i})"),
        "Case2": (lambda: 2 * nv.L(i) - nv.deltaY, f"2*L({i})-deltaY"),
        "Case3": (lambda: 2 * nv.L(i + 1) + 2 * nv.e2 - nv.deltaY, f"2*L({i + 1})+2*e2-deltaY"),
        "Case4": (lambda: nv.L(i) - nv.gamma1, f"L({i})-gamma1"),
        "Case5": (lambda: nv.L(i + 1) + nv.e2 - nv.gamma1, f"L({i + 1})+e2-gamma1"),
        "Case6": (lambda: nv.L(i) + nv.e1, f"L({i})+e1"),
        "Case7": (lambda: 2 * nv.L(i) + 2 * nv.e1 - nv.deltaY, f"2*L({i})+2*e1-deltaY"),
        "Case8": (lambda: nv.L(i) + nv.e1 - nv.gamma1, f"L({i})+e1-gamma1"),
        "Case9": (lambda: nv.L(i + 1) + nv.e2, f"L({i + 1})+e2"),
    }
    if case not in reps:
        raise LatticeError(f"no representative for case {case!r}")
    build, expr = reps[case]
    return build(), expr


def classify_orbit(v: LatticeVector) -> OrbitClass:
    """Locate a primitive vector of LY in the monodromy-orbit decision table.

    Condition (*) is tested first; otherwise the eight remaining rows are
    matched on (div, q-congruence, E8-residue).  The row signatures are
    mutually exclusive, which is asserted on every input, and a vector
    matching no row is reported as Unmatched rather than guessed at.
    """
    _require_in_LY(v)
    if v.is_zero():
        raise LatticeError("cannot classify the zero vector")
    if not is_primitive(v):
        raise LatticeError("vector not primitive")
    profile = vector_profile(v)
    star = star_condition(v)
    if star.holds:
        if profile.q % 4 != 0:
            raise LatticeError(f"(*) vector with q = {profile.q} not divisible by 4")
        case, i = "Star1", profile.q // 4
    else:
        matches = _row_matches(profile)
        if len(matches) > 1:
            raise LatticeError(f"table rows are not exclusive on {v}: {matches}")
        if not matches:
            return OrbitClass(
                case="Unmatched",
                i=0,
                representative=v,
                representative_expr="(input)",
                note=f"no printed row matches profile {profile}",
            )
        case, i = matches[0]
    rep, expr = case_representative(case, i)
    if square(rep) != profile.q or divisibility(rep) != profile.div:
        raise LatticeError(
            f"representative {expr} fails invariant match for case {case}, i={i}"
        )
    note = "" if i >= 0 else "parameter i is negative: outside the table's stated range i in N"
    return OrbitClass(case=case, i=i, representative=rep, representative_expr=expr, note=note)


@dataclass(frozen=True)
class FibrationType:
    """Type A/B verdict for a primitive isotropic class, with its metadata."""

    type_label: str  # "A" or "B"
    orbit_representative: LatticeVector
    representative_expr: str
    polarisation_type: tuple[int, int]
    pair_sigma_mod4: int
    sigma_pairing_forces_type_a: bool


def classify_isotropic_type(v: LatticeVector) -> FibrationType:
    """Type A (div 1, fiber polarisation (1,2)) or B (div 2, polarisation (1,1)).

    Also reports (v, SigmaY) mod 4; the value 2 forces type A, since every
    divisibility-2 isotropic vector pairs with SigmaY to a multiple of 4.
    """
    _require_in_LY(v)
    if v.is_zero() or not is_primitive(v):
        raise LatticeError("type classification needs a primitive nonzero vector")
    if square(v) != 0:
        raise LatticeError(f"vector is not isotropic: q = {square(v)}")
    _, nv = build_model()
    div = divisibility(v)
    sigma_mod4 = pair(v, nv.SigmaY) % 4
    if div == 1:
        result = FibrationType(
            type_label="A",
            orbit_representative=nv.L(1) + nv.e2,
            representative_expr="L(1)+e2",
            polarisation_type=(1, 2),
            pair_sigma_mod4=sigma_mod4,
            sigma_pairing_forces_type_a=sigma_mod4 == 2,
        )
    elif div == 2:
        result = FibrationType(
            type_label="B",
            orbit_representative=nv.L(0),
            representative_expr="L(0)",
            polarisation_type=(1, 1),
            pair_sigma_mod4=sigma_mod4,
            sigma_pairing_forces_type_a=sigma_mod4 == 2,
        )
    else:
        raise RuntimeError(
            f"internal consistency error: primitive vector with divisibility {div}"
        )
    if result.sigma_pairing_forces_type_a and result.type_label != "A":
        raise RuntimeError("internal consistency error: (v,SigmaY) = 2 mod 4 with type B")
    return result


# ---------------------------------------------------------------------------
# bounded enumeration


@dataclass(frozen=True)
class EnumerationWindow:
    """A sub-collection of LY blocks and a coordinate bound."""

    blocks: tuple[str, ...]
    bound: int

    def __post_init__(self) -> None:
        if not self.blocks:
            raise LatticeError("enumeration window selects no blocks")
        for name in self.blocks:
            if name not in Y_BLOCKS:
                raise LatticeError(f"unknown LY block {name!r}")
        if self.bound < 1:
            raise LatticeError("coordinate bound must be >= 1")


DEFAULT_WINDOW = EnumerationWindow(("U1", "E8", "G1", "G2"), 1)
SECOND_WINDOW = EnumerationWindow(("U1", "U2", "G1", "G2"), 2)


def _block_table(lattice: Lattice, offset: int, size: int, bound: int):
    """All coordinate tuples of one block with |c| <= bound, lex order, with squares."""
    gram = tuple(tuple(lattice.gram[offset + i][offset + j] for j in range(size)) for i in range(size))
    values = range(-bound, bound + 1)
    table = []
    coords = [0] * size

    def rec(i: int) -> None:
        if i == size:
            t = tuple(coords)
            q = sum(t[a] * gram[a][b] * t[b] for a in range(size) for b in range(size))
            table.append((t, q))
            return
        for v in values:
            coords[i] = v
            rec(i + 1)

    rec(0)
    return table


def enumerate_with_square(
    lattice: Lattice,
    block_offsets: dict[str, int],
    block_sizes: dict[str, int],
    blocks: tuple[str, ...],
    bound: int,
    target: int,
    primitive_only: bool = True,
) -> Iterator[LatticeVector]:
    """All vectors supported on ``blocks`` with |coords| <= bound and the given square.

    Deterministic lexicographic order on full coordinate tuples.  Branches are
    pruned with per-block achievable ranges, so the negative-definite blocks
    cut the search long before full expansion.
    """
    ordered = sorted(set(blocks), key=lambda name: block_offsets[name])
    tables = [
        _block_table(lattice, block_offsets[name], block_sizes[name], bound) for name in ordered
    ]
    mins = [min(q for _, q in t) for t in tables]
    maxs = [max(q for _, q in t) for t in tables]
    suffix_min = [0] * (len(tables) + 1)
    suffix_max = [0] * (len(tables) + 1)
    for idx in range(len(tables) - 1, -1, -1):
        suffix_min[idx] = suffix_min[idx + 1] + mins[idx]
        suffix_max[idx] = suffix_max[idx + 1] + maxs[idx]

    rank = lattice.rank
    chosen: list[IntVector] = []

    def rec(idx: int, acc: int) -> Iterator[LatticeVector]:
        if idx == len(tables):
            if acc == target:
                full = [0] * rank
                for name, block_coords in zip(ordered, chosen):
                    off = block_offsets[name]
                    full[off : off + len(block_coords)] = block_coords
                if any(full) and (not primitive_only or gcd(*full) == 1):
                    yield lattice.vector(full)
            return
        lo = target - acc - suffix_max[idx + 1]
        hi = target - acc - suffix_min[idx + 1]
        for block_coords, q in tables[idx]:
            if lo <= q <= hi:
                chosen.append(block_coords)
                yield from rec(idx + 1, acc + q)
                chosen.pop()

    yield from rec(0, 0)


def enumerate_primitive_isotropic(window: EnumerationWindow) -> Iterator[LatticeVector]:
    """Primitive isotropic vectors of LY supported on the window's blocks."""
    model, _ = build_model()
    yield from enumerate_with_square(
        model.lambda_Y, Y_BLOCKS, Y_BLOCK_SIZES, window.blocks, window.bound, target=0
    )


def minus_two_vectors(window: EnumerationWindow) -> Iterator[LatticeVector]:
    """Vectors of square -2 (reflection roots) supported on the window's blocks."""
    model, _ = build_model()
    yield from enumerate_with_square(
        model.lambda_Y,
        Y_BLOCKS,
        Y_BLOCK_SIZES,
        window.blocks,
        window.bound,
        target=-2,
        primitive_only=False,
    )


# ---------------------------------------------------------------------------
# default reflection generators for orbit search


@lru_cache(maxsize=1)
def default_generator_table() -> tuple[tuple[str, LatticeVector], ...]:
    """The documented default roots, twenty in all.

    All eight simple roots and both gamma generators; the six roots
    ``wJC = uA + uB + ew + gammaC`` with (uA, uB) running over the three U(2)
    blocks and gammaC over the two <-2> generators (w11 is the root called w
    elsewhere); and four mixers joining the first U(2) block to the E8 and
    gamma coordinates.  This set is rich enough to carry L(1)+e2 to
    L(1)+e1-gamma1 inside the coordinate box |c| <= 5.
    """
    _, nv = build_model()
    named: list[tuple[str, LatticeVector]] = []
    named += [(f"eps{k + 1}", nv.eps[k]) for k in range(8)]
    named += [("gamma1", nv.gamma1), ("gamma2", nv.gamma2)]
    for blk, (a, b) in enumerate([(nv.u[0], nv.u[1]), (nv.u[2], nv.u[3]), (nv.u[4], nv.u[5])]):
        named.append((f"w{blk + 1}1", a + b + nv.ew + nv.gamma1))
        named.append((f"w{blk + 1}2", a + b + nv.ew + nv.gamma2))
    named += [("u1+eps1", nv.u[0] + nv.e1), ("u2+eps1", nv.u[1] + nv.e1)]
    named += [("u1+gamma1", nv.u[0] + nv.gamma1), ("u2+gamma1", nv.u[1] + nv.gamma1)]
    for name, root in named:
        assert square(root) == -2, name
    return tuple(named)


def default_generators() -> tuple[Isometry, ...]:
    return tuple(reflection(root) for _, root in default_generator_table())


def default_generator_names() -> tuple[str, ...]:
    return tuple(name for name, _ in default_generator_table())
