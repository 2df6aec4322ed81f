"""The two shipped fixtures.

a3-auslander: the AR quiver of the linear A3 path algebra with its mesh
relations, derived by the Hom-space oracle in tests/test_fixtures.py
(Hom spaces between the six indecomposables; mesh relations as
multiplication kernels) and frozen here. Vertex and arrow names follow
the 6-vertex layout with top row 1 -> 2 -> 3.

d4-mckay: the dual tau-slice quiver of the D4 McKay example, transcribed
relation by relation. Two transcription decisions: the summed relation
runs over i = 2..5 (the printed i = 1 term names arrows the quiver does
not have) and only the t = 0 copies of the gamma families exist inside a
three-column slice; the loop arrows gamma_(1,t) are included since the
ambient figure draws them.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

from .quiver import Arrow, BoundQuiver, canonical_quiver, make_lincomb

F = Fraction
ONE = F(1)


def a3_mesh_quiver() -> BoundQuiver:
    """A3 Auslander fixture: AR quiver plus mesh relations (the tau-slice side)."""
    arrows = [
        Arrow("a", "1", "2"),
        Arrow("b", "2", "3"),
        Arrow("c", "2", "4"),
        Arrow("d", "3", "5"),
        Arrow("e", "4", "5"),
        Arrow("f", "5", "6"),
    ]
    relations = [
        make_lincomb("1", "3", [(ONE, ("a", "b"))]),
        make_lincomb("2", "5", [(ONE, ("b", "d")), (-ONE, ("c", "e"))]),
        make_lincomb("3", "6", [(ONE, ("d", "f"))]),
    ]
    return canonical_quiver("123456", arrows, relations, name="a3-auslander", declared_n=2)


def d4_dual_slice_quiver() -> BoundQuiver:
    """D4 McKay fixture: the dual tau-slice quiver with the printed relations."""
    vertices = [f"{i}.{t}" for i in range(1, 6) for t in range(3)]
    arrows = []
    for t in (0, 1):
        for i in range(2, 6):
            arrows.append(Arrow(f"a{i}_{t}", f"1.{t}", f"{i}.{t + 1}"))
            arrows.append(Arrow(f"b{i}_{t}", f"{i}.{t}", f"1.{t + 1}"))
        for i in range(1, 6):
            arrows.append(Arrow(f"g{i}_{t}", f"{i}.{t}", f"{i}.{t + 1}"))

    relations = []
    # sum over i of beta_(i,1) alpha_(i,0), transcribed over i = 2..5
    relations.append(
        make_lincomb("1.0", "1.2", [(ONE, (f"a{i}_0", f"b{i}_1")) for i in range(2, 6)])
    )
    for i in range(2, 6):
        # gamma_(1,1) beta_(i,0) + beta_(i,1) gamma_(i,0)
        relations.append(
            make_lincomb(f"{i}.0", "1.2", [(ONE, (f"b{i}_0", "g1_1")), (ONE, (f"g{i}_0", f"b{i}_1"))])
        )
        # alpha_(i,1) beta_(i,0)
        relations.append(make_lincomb(f"{i}.0", f"{i}.2", [(ONE, (f"b{i}_0", f"a{i}_1"))]))
        # gamma_(i,1) alpha_(i,0) + alpha_(i,1) gamma_(1,0)
        relations.append(
            make_lincomb("1.0", f"{i}.2", [(ONE, (f"a{i}_0", f"g{i}_1")), (ONE, ("g1_0", f"a{i}_1"))])
        )
    return canonical_quiver(vertices, arrows, relations, name="d4-mckay", declared_n=2)


def a2_quiver() -> BoundQuiver:
    """Single arrow, no relations; the guard fixture for the trivial extension."""
    return canonical_quiver("12", [Arrow("a", "1", "2")], name="a2")


def fixture_text(name: str) -> str:
    """The shipped JSON for a fixture ('a3-auslander' or 'd4-mckay')."""
    return resources.files(__package__).joinpath("fixtures", f"{name}.json").read_text()


def load_fixture(name: str) -> BoundQuiver:
    from .files import parse

    return parse(fixture_text(name))
