"""Small quiver builders shared by the test modules."""

from fractions import Fraction

from quivermute.quiver import Arrow, BoundQuiver, canonical_quiver, make_lincomb

F = Fraction


def quiver(vertices, arrow_triples, relations=(), **meta):
    arrows = [Arrow(i, s, t) for (i, s, t) in arrow_triples]
    return canonical_quiver(vertices, arrows, relations, **meta)


def rel(bq_source, bq_target, *terms):
    return make_lincomb(bq_source, bq_target, [(F(c), tuple(p)) for c, p in terms])


def a2():
    return quiver("12", [("a", "1", "2")], name="a2")


def a3(with_ba_relation=False):
    rels = [rel("1", "3", (1, ["a", "b"]))] if with_ba_relation else []
    return quiver("123", [("a", "1", "2"), ("b", "2", "3")], rels, name="a3")


def raw_quiver(vertices, arrow_triples, relations=(), **meta):
    arrows = tuple(Arrow(i, s, t) for (i, s, t) in arrow_triples)
    return BoundQuiver(tuple(vertices), arrows, tuple(relations), **meta)
