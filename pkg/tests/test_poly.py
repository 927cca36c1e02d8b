import pytest

from symgrowth.poly import Poly, PolyError, PolyMatrix, monomials, parse_poly


def test_monomials_grlex_order():
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert monomials(3, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert monomials(0, 0) == ((),)
    assert monomials(0, 1) == ()
    assert len(monomials(3, 4)) == 15


def test_arithmetic():
    p = 7
    x = Poly.variable(2, p, 0)
    y = Poly.variable(2, p, 1)
    f = x * x + y.scale(3)
    assert f.coeff((2, 0)) == 1
    assert f.coeff((0, 1)) == 3
    assert (f - f).is_zero()
    assert (x * y) == (y * x)
    assert f.degree() == 2
    assert not f.is_homogeneous()
    assert f.homogeneous_part(2) == x * x


def test_parse_basic():
    names = ("x", "y")
    f = parse_poly("x^2 - 2xy + y^2", names, 7)
    assert f.coeff((2, 0)) == 1
    assert f.coeff((1, 1)) == 5
    assert f.coeff((0, 2)) == 1


def test_parse_juxtaposition_and_star():
    names = ("x", "y")
    assert parse_poly("3x*y", names, 5) == parse_poly("3xy", names, 5)
    assert parse_poly("x x", names, 5) == parse_poly("x^2", names, 5)


def test_parse_constant_and_zero():
    f = parse_poly("0", ("x",), 7)
    assert f.is_zero()
    g = parse_poly("5", ("x",), 7)
    assert g.constant_coeff() == 5


def test_parse_longest_name_match():
    names = ("x", "xy")
    f = parse_poly("xy", names, 7)
    assert f.coeff((0, 1)) == 1


def test_parse_errors():
    with pytest.raises(PolyError):
        parse_poly("x +", ("x",), 7)
    with pytest.raises(PolyError):
        parse_poly("z", ("x",), 7)
    with pytest.raises(PolyError):
        parse_poly("", ("x",), 7)


def test_render_roundtrip():
    names = ("u", "v")
    f = parse_poly("u^2v - 3v^3 + 2", names, 11)
    assert parse_poly(f.render(names), names, 11) == f


def test_polymatrix_mul():
    p = 7
    x = Poly.variable(1, p, 0)
    m = PolyMatrix(1, p, [[x]])
    sq = m * m
    assert sq.entry(0, 0) == x * x
    z = PolyMatrix.zero(1, p, 2, 0)
    w = PolyMatrix.zero(1, p, 0, 3)
    prod = z * w
    assert prod.nrows == 2 and prod.ncols == 3
    assert prod.is_zero()


def test_polymatrix_constant_matrix():
    p = 5
    x = Poly.variable(1, p, 0)
    one = Poly.one(1, p)
    m = PolyMatrix(1, p, [[x + one, x]])
    cm = m.constant_matrix()
    assert list(cm.row(0)) == [1, 0]
    assert m.has_constant_terms()
