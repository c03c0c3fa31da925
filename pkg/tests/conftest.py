"""Shared fixture algebras.

FIX-A   two vertices, parallel arrows a,b: 1->2, no relations, N=2
FIX-A3  like FIX-A with a third parallel arrow c
FIX-B   chain 1->2->3 with arrows a,b: 1->2 and c,d,e: 2->3, N=3
FIX-C   arrows a,c: 1->2 and b: 2->3 with relation b*a, N=3
FIX-D   one vertex with a loop a, N=3
FIX-E   oriented cycle a: 1->2, b: 2->1, N=2
"""

import pytest

from unisvar.fields import QQ, PrimeField
from unisvar.quiver import AlgebraElement, Quiver
from unisvar.rewriting import ReductionSystem


def build_fix_a(field=QQ):
    quiver = Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    return ReductionSystem(quiver, [], 2, field)


def build_fix_a3(field=QQ):
    quiver = Quiver(
        ["1", "2"], [("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")]
    )
    return ReductionSystem(quiver, [], 2, field)


def build_fix_b(field=QQ):
    quiver = Quiver(
        ["1", "2", "3"],
        [
            ("a", "1", "2"),
            ("b", "1", "2"),
            ("c", "2", "3"),
            ("d", "2", "3"),
            ("e", "2", "3"),
        ],
    )
    return ReductionSystem(quiver, [], 3, field)


def build_fix_c(field=QQ):
    quiver = Quiver(
        ["1", "2", "3"],
        [("a", "1", "2"), ("c", "1", "2"), ("b", "2", "3")],
    )
    relation = AlgebraElement.from_path(field, quiver.path(("a", "b")))
    return ReductionSystem(quiver, [relation], 3, field)


def build_fix_d(field=QQ):
    quiver = Quiver(["1"], [("a", "1", "1")])
    return ReductionSystem(quiver, [], 3, field)


def build_fix_e(field=QQ):
    quiver = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    return ReductionSystem(quiver, [], 2, field)


def build_fix_f(field=QQ):
    # Commutativity-style relation b*a = d*c; the varieties of the length-2
    # masts are curved (k k' = 1), unlike the relation-free fixtures.
    quiver = Quiver(
        ["1", "2", "3"],
        [("a", "1", "2"), ("c", "1", "2"), ("b", "2", "3"), ("d", "2", "3")],
    )
    relation = AlgebraElement(
        field,
        {
            quiver.path(("a", "b")): field.one,
            quiver.path(("c", "d")): field.neg(field.one),
        },
    )
    return ReductionSystem(quiver, [relation], 3, field)


FIXTURES = {
    "A": build_fix_a,
    "A3": build_fix_a3,
    "B": build_fix_b,
    "C": build_fix_c,
    "D": build_fix_d,
    "E": build_fix_e,
    "F": build_fix_f,
}

FIXTURE_BODIES = {
    "A": "NILBOUND 2\nVERTEX 1 2\nARROW a 1 2\nARROW b 1 2\n",
    "A3": "NILBOUND 2\nVERTEX 1 2\nARROW a 1 2\nARROW b 1 2\nARROW c 1 2\n",
    "B": (
        "NILBOUND 3\nVERTEX 1 2 3\n"
        "ARROW a 1 2\nARROW b 1 2\n"
        "ARROW c 2 3\nARROW d 2 3\nARROW e 2 3\n"
    ),
    "C": (
        "NILBOUND 3\nVERTEX 1 2 3\n"
        "ARROW a 1 2\nARROW c 1 2\nARROW b 2 3\nREL b*a\n"
    ),
    "D": "NILBOUND 3\nVERTEX 1\nARROW a 1 1\n",
    "E": "NILBOUND 2\nVERTEX 1 2\nARROW a 1 2\nARROW b 2 1\n",
    "F": (
        "NILBOUND 3\nVERTEX 1 2 3\n"
        "ARROW a 1 2\nARROW c 1 2\nARROW b 2 3\nARROW d 2 3\n"
        "REL b*a - d*c\n"
    ),
}


def fixture_text(name, field="Q"):
    """The quiver document of a fixture, over Q or GF q ('GF 2')."""
    return f"FIELD {field}\n" + FIXTURE_BODIES[name]


def all_series(sys):
    """Every realizable vertex sequence of length < N, as SimpleSequences."""
    from unisvar.uniserial import SimpleSequence

    out = []
    level = [(v,) for v in sys.quiver.vertices]
    out.extend(level)
    for _ in range(sys.nilbound - 1):
        level = [
            seq + (arrow.target,)
            for seq in level
            for arrow in sys.quiver.arrows_from(seq[-1])
        ]
        out.extend(dict.fromkeys(level))
    return [SimpleSequence(seq) for seq in dict.fromkeys(out)]


@pytest.fixture
def fix_a():
    return build_fix_a()


@pytest.fixture
def fix_a3():
    return build_fix_a3()


@pytest.fixture
def fix_b():
    return build_fix_b()


@pytest.fixture
def fix_c():
    return build_fix_c()


@pytest.fixture
def fix_d():
    return build_fix_d()


@pytest.fixture
def fix_e():
    return build_fix_e()


@pytest.fixture
def fix_f():
    return build_fix_f()


@pytest.fixture(params=[2, 3], ids=["gf2", "gf3"])
def small_prime_field(request):
    return PrimeField(request.param)
