"""The vector-expression grammar."""

import pytest

from nikulat import ExpressionError, format_vector, parse_vector
from nikulat.model import build_model


@pytest.fixture(scope="module")
def nv():
    _, vectors = build_model()
    return vectors


@pytest.mark.parametrize(
    "text, builder",
    [
        ("L(1)+e2", lambda nv: nv.L(1) + nv.e2),
        ("2*L(1)-deltaY", lambda nv: 2 * nv.L(1) - nv.deltaY),
        ("gamma1-gamma2", lambda nv: nv.gamma1 - nv.gamma2),
        ("w", lambda nv: nv.w),
        ("L(-2)", lambda nv: nv.L(-2)),
        ("-gamma1", lambda nv: -1 * nv.gamma1),
        ("  L( 3 ) + 4 * eps8 ", lambda nv: nv.L(3) + 4 * nv.eps[7]),
        ("u1+u2+eps4+eps6+gamma1", lambda nv: nv.w),
        ("SigmaY", lambda nv: nv.SigmaY),
        ("-2*e1+ew", lambda nv: -2 * nv.e1 + nv.ew),
        ("L(1)-L(1)", lambda nv: 0 * nv.L(0)),
    ],
)
def test_parse(nv, text, builder):
    assert parse_vector(text) == builder(nv)


@pytest.mark.parametrize(
    "bad",
    [
        "",
        "   ",
        "L",          # missing argument
        "L(1",        # missing close paren
        "L()",
        "e2(3)",      # argument on a constant name
        "q7",         # unknown name
        "2L(1)",      # missing '*'
        "L(1)++e2",
        "L(1)+",
        "e2 e2",
        "3*",
        "$",
    ],
)
def test_parse_errors(bad):
    with pytest.raises(ExpressionError):
        parse_vector(bad)


def test_format_round_trip(nv):
    for v in [nv.w, 2 * nv.L(1) - nv.deltaY, nv.L(0), -3 * nv.e2 + nv.gamma2]:
        assert parse_vector(format_vector(v)) == v


def test_format_zero(nv):
    assert format_vector(0 * nv.L(0)) == "0"


def test_format_rejects_other_lattices():
    from nikulat import standard_lattice

    with pytest.raises(ExpressionError):
        format_vector(standard_lattice("U").basis_vector(0))
