from fractions import Fraction
from math import factorial

import pytest

import wreathlab as w
from wreathlab import Coset, PermGroup, Permutation, parse_cycles
from wreathlab.constructions import (
    AtomNode,
    CosetNode,
    EvenWrNode,
    ProductNode,
    WreathElement,
    WreathNode,
    bi_product,
    elaborate,
    parse_group_expr,
)
from wreathlab.errors import (
    DegreeOverflow,
    ExpressionError,
    NotPrime,
    WreathlabError,
)


def test_named_group_orders():
    assert w.trivial(3).order == 1
    assert w.symmetric(5).order == 120
    assert w.alternating(5).order == 60
    assert w.cyclic(7).order == 7
    assert w.agl1(7).order == 42


def test_alternating_is_even():
    for n in (3, 4, 5):
        assert all(g.sign() == 1 for g in w.alternating(n).elements())
        assert w.alternating(n).order == factorial(n) // 2


def test_agl1_requires_prime():
    with pytest.raises(NotPrime):
        w.agl1(4)
    with pytest.raises(NotPrime):
        w.agl1(1)


def test_agl1_sharply_two_transitive():
    for p in (3, 5, 7):
        G = w.agl1(p)
        assert G.order == p * (p - 1)
        assert G.sharp_transitivity_degree() == 2


def test_wreath_orders():
    # |A wr B| = |A|^n * |B|
    assert w.wreath_imprimitive(w.symmetric(3), w.cyclic(2)).order == 36 * 2
    assert w.wreath_power(w.symmetric(2), w.cyclic(2)).order == 4 * 2
    assert w.wreath_power(w.symmetric(3), w.symmetric(3)).order == 6 ** 3 * 6


def test_wreath_degrees():
    assert w.wreath_imprimitive(w.symmetric(3), w.cyclic(4)).degree == 12
    assert w.wreath_power(w.symmetric(3), w.cyclic(4)).degree == 81


def test_wreath_rejects_tiny_base():
    with pytest.raises(WreathlabError):
        w.wreath_imprimitive(w.trivial(1), w.cyclic(2))


def test_wreath_degree_cap():
    with pytest.raises(DegreeOverflow):
        w.wreath_power(w.symmetric(10), w.cyclic(10))


def test_wreath_with_intransitive_top():
    """Base copies outside the top's orbit of 0 still get generated."""
    top = PermGroup(3, [parse_cycles("(2 3)", 3)])  # fixes coordinate 0
    G = w.wreath_imprimitive(w.symmetric(2), top)
    assert G.order == 2 ** 3 * 2


def test_wreath_element_multiplication():
    a = parse_cycles("(1 2)", 2)
    e = Permutation.identity(2)
    b = parse_cycles("(1 2)", 2)
    x = WreathElement((a, e), b)
    y = WreathElement((e, a), Permutation.identity(2))
    prod = x * y
    img_prod = prod.image_imprimitive()
    assert img_prod == x.image_imprimitive() * y.image_imprimitive()
    # same check under the power action
    assert (x * y).image_power() == x.image_power() * y.image_power()


def test_image_maps_are_homomorphisms():
    """Random-ish products: mapping to either action commutes with *."""
    s3 = list(w.symmetric(3).elements())
    c2 = list(w.cyclic(2).elements())
    pairs = [
        (WreathElement((s3[1], s3[4]), c2[1]), WreathElement((s3[2], s3[0]), c2[0])),
        (WreathElement((s3[5], s3[3]), c2[1]), WreathElement((s3[4], s3[4]), c2[1])),
    ]
    for x, y in pairs:
        assert (x * y).image_imprimitive() == \
            x.image_imprimitive() * y.image_imprimitive()
        assert (x * y).image_power() == x.image_power() * y.image_power()


def test_power_action_fixed_points_via_bi_product():
    """A function point is fixed exactly when each cycle's ordered base
    product fixes the value at the cycle's starting coordinate."""
    A = w.symmetric(3)
    b = parse_cycles("(1 2)", 2)
    alpha = (parse_cycles("(1 2 3)", 3), parse_cycles("(1 3 2)", 3))
    elem = WreathElement(alpha, b)
    g = elem.image_power()
    prod0 = bi_product(alpha, b, 0)
    want = sum(1 for x in range(3) if prod0(x) == x) ** 1  # one cycle of b
    assert g.fixed_point_count() == want


def test_bi_product_bad_index():
    with pytest.raises(WreathlabError):
        bi_product((Permutation.identity(2),), Permutation.identity(1), 5)


def test_direct_products():
    GI = w.direct_product_intransitive([w.symmetric(2), w.symmetric(3)])
    assert GI.degree == 5 and GI.order == 12
    assert len(GI.orbits()) == 2
    GP = w.direct_product_product([w.symmetric(2), w.symmetric(3)])
    assert GP.degree == 6 and GP.order == 12
    assert GP.is_transitive()


def test_even_base_wreath():
    G = w.even_base_wreath(3, w.cyclic(2), "power")
    # half of S_3 wr C_2
    assert G.order == 36 * 2 // 2
    full = w.wreath_power(w.symmetric(3), w.cyclic(2))
    assert all(g in full for g in G.generators)
    GI = w.even_base_wreath(3, w.cyclic(2), "imprimitive")
    assert GI.order == 36
    assert GI.degree == 6


def test_even_base_wreath_contains_only_even_products():
    """Every element's base part must have an even sign product; checked
    via the imprimitive image, whose sign equals the base sign product
    when the top permutation is even and m is odd."""
    G = w.even_base_wreath(3, w.cyclic(3), "imprimitive")
    assert G.order == 6 ** 3 * 3 // 2
    for g in G.elements():
        assert g.sign() == 1  # m=3 odd, top 3-cycles even: sign = base product


def test_base_coset():
    A = w.symmetric(2)
    b = parse_cycles("(1 2)", 2)
    tau = (Permutation.identity(2), Permutation.identity(2))
    coset = w.base_coset(A, tau, b, "power")
    assert isinstance(coset, Coset)
    assert coset.size == 4
    # derangement proportion of the coset is 1 - (1 - 1/2)^1 = 1/2
    assert w.delta_k(coset, 0) == Fraction(1, 2)


class TestExprParser:
    def test_atoms(self):
        assert parse_group_expr("S(4)") == AtomNode("S", 4)
        assert parse_group_expr(" C( 12 ) ") == AtomNode("C", 12)
        assert elaborate(parse_group_expr("AGL1(5)")).order == 20

    def test_gens(self):
        G = elaborate(parse_group_expr("gens(4; (1 2), (1 2 3 4))"))
        assert G.order == 24

    def test_nested(self):
        node = parse_group_expr("wrP(S(2),C(2))")
        assert node == WreathNode("power", AtomNode("S", 2), AtomNode("C", 2))
        assert elaborate(node).order == 8

    def test_products(self):
        node = parse_group_expr("prodI(S(2),S(2),S(2))")
        assert isinstance(node, ProductNode) and len(node.factors) == 3
        assert elaborate(node).order == 8
        assert elaborate(parse_group_expr("prodP(S(2),S(3))")).degree == 6

    def test_even_wr(self):
        node = parse_group_expr("evenWr(4,C(2),power)")
        assert node == EvenWrNode(4, AtomNode("C", 2), "power")
        assert elaborate(node).order == 24 ** 2 * 2 // 2

    def test_coset(self):
        node = parse_group_expr("coset(A(3),(1 2))")
        assert isinstance(node, CosetNode)
        obj = elaborate(node)
        assert isinstance(obj, Coset) and obj.size == 3

    def test_parse_errors(self):
        for bad in ("S(", "wrI(S(2))", "Q(3)", "S(2) junk", "prodI(S(2))",
                    "gens(3)", "evenWr(3,C(2),weird)"):
            with pytest.raises(ExpressionError):
                parse_group_expr(bad)

    def test_no_nested_cosets(self):
        with pytest.raises(ExpressionError):
            elaborate(parse_group_expr("wrI(coset(A(3),(1 2)),C(2))"))

    def test_elaborate_error_carries_position(self):
        with pytest.raises(ExpressionError) as ei:
            elaborate(parse_group_expr("wrI(S(1),C(2))"))
        assert "root" in str(ei.value)
