"""Reflections, isometry checks, orbit exploration, witness search."""

import itertools
import random

import pytest

from nikulat import (
    LatticeError,
    OrbitBudget,
    compose,
    divisibility,
    identity_isometry,
    is_isometry,
    is_primitive,
    orbit_explore,
    pair,
    reflection,
    rescale,
    same_orbit_witness,
    square,
    standard_lattice,
)
from nikulat.isometry import Isometry
from nikulat.model import (
    EnumerationWindow,
    build_model,
    default_generator_names,
    default_generators,
    minus_two_vectors,
    sigma_star_isometry,
)


@pytest.fixture(scope="module")
def setup():
    model, nv = build_model()
    return model, nv


# --- reflections ----------------------------------------------------------------


def test_reflection_negates_root(setup):
    _, nv = setup
    assert reflection(nv.w)(nv.w) == -1 * nv.w


def test_reflection_chain_value(setup):
    _, nv = setup
    start = nv.L(1) + nv.e2
    assert reflection(nv.w)(start) == start + 5 * nv.w


def test_reflection_fixes_orthogonal(setup):
    _, nv = setup
    assert reflection(nv.gamma1)(nv.gamma2) == nv.gamma2


def test_reflection_rejects_other_squares(setup):
    _, nv = setup
    with pytest.raises(LatticeError):
        reflection(nv.e2)  # square -4


def test_reflection_is_involution_and_isometry(setup):
    model, nv = setup
    rng = random.Random(3)
    roots = [nv.w, nv.gamma1, nv.e1, nv.u[0] + nv.e1]
    for root in roots:
        r = reflection(root)
        assert compose(r, r).matrix == identity_isometry(model.lambda_Y).matrix
        assert r.determinant() == -1
        for _ in range(20):
            v = model.lambda_Y.vector([rng.randint(-9, 9) for _ in range(16)])
            if v.is_zero():
                continue
            assert square(r(v)) == square(v)
            assert divisibility(r(v)) == divisibility(v)
            assert is_primitive(r(v)) == is_primitive(v)


def test_compose(setup):
    model, nv = setup
    rw = reflection(nv.w)
    ident = identity_isometry(model.lambda_Y)
    assert compose(ident, rw).matrix == rw.matrix
    both = compose(reflection(nv.gamma1), reflection(nv.gamma2))
    v = model.lambda_Y.vector([1, 2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 3, -1])
    assert both(v).coords[14:] == (-3, 1)
    assert both(v).coords[:14] == v.coords[:14]


def test_compose_lattice_mismatch(setup):
    model, nv = setup
    u = standard_lattice("U")
    other = identity_isometry(u)
    with pytest.raises(LatticeError):
        compose(identity_isometry(model.lambda_Y), other)


# --- is_isometry -----------------------------------------------------------------


def test_is_isometry_identity(setup):
    model, _ = setup
    from nikulat.intmat import identity

    assert is_isometry(model.lambda_Y, identity(16))


def test_is_isometry_sigma_swap(setup):
    model, _ = setup
    iso = sigma_star_isometry()
    assert is_isometry(model.lambda_X, iso.matrix)


def test_is_isometry_scaling_fails(setup):
    model, _ = setup
    m = tuple(tuple(2 * int(i == j) for j in range(16)) for i in range(16))
    assert not is_isometry(model.lambda_Y, m)


def test_is_isometry_wrong_shape(setup):
    model, _ = setup
    with pytest.raises(LatticeError):
        is_isometry(model.lambda_Y, ((1, 0), (0, 1)))


def test_isometry_constructor_validates(setup):
    model, _ = setup
    bad = tuple(tuple(2 * int(i == j) for j in range(16)) for i in range(16))
    with pytest.raises(LatticeError):
        Isometry(model.lambda_Y, bad)


# --- orbit exploration -------------------------------------------------------------


def test_orbit_sign_flip(setup):
    _, nv = setup
    orbit = orbit_explore(nv.gamma1, [reflection(nv.gamma1)], OrbitBudget(2, 100, 4))
    assert set(orbit.members) == {nv.gamma1.coords, (-1 * nv.gamma1).coords}
    assert orbit.exhausted


def test_orbit_contains_reflection_image(setup):
    _, nv = setup
    start = nv.L(1) + nv.e2
    orbit = orbit_explore(start, [reflection(nv.w)], OrbitBudget(30, 1000, 4))
    assert (start + 5 * nv.w).coords in set(orbit.members)


def test_orbit_invariant_purity(setup):
    model, nv = setup
    window = EnumerationWindow(("E8", "G1", "G2"), 1)
    gens = [reflection(r) for r in itertools.islice(minus_two_vectors(window), 40)]
    orbit = orbit_explore(nv.L(0), gens, OrbitBudget(1, 5000, 3))
    for v in orbit.vectors():
        assert divisibility(v) == 2
        assert square(v) == 0


def test_orbit_permutation_invariance(setup):
    _, nv = setup
    gens = list(default_generators())
    budget = OrbitBudget(2, 4000, 3)
    first = orbit_explore(nv.L(0), gens, budget)
    rng = random.Random(11)
    for _ in range(3):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert orbit_explore(nv.L(0), shuffled, budget).members == first.members


def test_orbit_truncation_is_flagged(setup):
    _, nv = setup
    orbit = orbit_explore(nv.L(1) + nv.e2, default_generators(), OrbitBudget(4, 50, 6))
    assert not orbit.exhausted
    assert len(orbit) <= 50


def test_orbit_rejects_zero_seed(setup):
    model, _ = setup
    with pytest.raises(LatticeError):
        orbit_explore(model.lambda_Y.zero(), default_generators())


def test_orbit_rank2_brute_force_cross_check():
    """On <-2>^2, the two basis reflections generate the sign-flip group;
    brute force over all |coords| <= 3 is the oracle."""
    minus2 = standard_lattice("rank1", -2)
    lat = rescale(minus2, 1)
    from nikulat.lattice import direct_sum

    plane = direct_sum([minus2, minus2])
    g1, g2 = plane.basis_vector(0), plane.basis_vector(1)
    gens = [reflection(g1), reflection(g2)]
    for a in range(-3, 4):
        for b in range(-3, 4):
            if a == 0 and b == 0:
                continue
            seed = plane.vector((a, b))
            expected = {(sa * a, sb * b) for sa in (1, -1) for sb in (1, -1)}
            orbit = orbit_explore(seed, gens, OrbitBudget(3, 100, 5))
            assert set(orbit.members) == expected
            assert orbit.exhausted


# --- witness search ------------------------------------------------------------------


def test_witness_trivial(setup):
    _, nv = setup
    assert same_orbit_witness(nv.L(0), nv.L(0), default_generators()) == []


def test_witness_one_step(setup):
    _, nv = setup
    gens = default_generators()
    names = default_generator_names()
    word = same_orbit_witness(nv.gamma1, -1 * nv.gamma1, gens, OrbitBudget(2, 1000, 3))
    assert word is not None
    assert names[word[0]] == "gamma1" and len(word) == 1


def test_witness_differing_invariants_is_none(setup):
    _, nv = setup
    # div 2 vs div 1: provably distinct orbits, no search needed
    word = same_orbit_witness(nv.L(0), nv.L(1) + nv.e2, default_generators())
    assert word is None


def test_witness_word_applies(setup):
    _, nv = setup
    gens = default_generators()
    start = nv.L(1) + nv.e2
    target = reflection(nv.w)(start)
    word = same_orbit_witness(start, target, gens, OrbitBudget(8, 200000, 4))
    assert word is not None
    cur = start
    for j in word:
        cur = gens[j](cur)
    assert cur == target


def test_cases_8_and_9_frozen_witness_word(setup):
    """A 16-step word in the default generators carrying L(1)+e2 to
    L(1)+e1-gamma1, found by the bidirectional search at coordinate bound 5.
    Re-applying it verifies that the two isotropic divisibility-1 cases merge
    under (-2)-reflections alone."""
    _, nv = setup
    gens = default_generators()
    names = list(default_generator_names())
    word_names = [
        "w21", "eps3", "eps2", "eps7", "eps6", "w21", "u2+gamma1", "u2+eps1",
        "eps7", "eps3", "eps4", "w11", "u1+eps1", "eps3", "w21", "eps2",
    ]
    cur = nv.L(1) + nv.e2
    peak = 0
    for name in word_names:
        cur = gens[names.index(name)](cur)
        peak = max(peak, max(abs(c) for c in cur.coords))
    assert cur == nv.L(1) + nv.e1 - nv.gamma1
    assert peak <= 5
