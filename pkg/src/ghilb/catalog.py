"""Fixed test catalog of finite algebras and their presentations as quotients of F."""
from dataclasses import dataclass
from fractions import Fraction

from .algebra import FiniteAlgebra
from .norm import AlgebraMap
from .rings import QQ, PolyRing


@dataclass
class CatalogEntry:
    name: str
    algebra: FiniteAlgebra
    phi: AlgebraMap
    discriminant: object  # expected value, hand-derived
    etale: bool

    @property
    def source(self):
        return self.phi.source


def _qs():
    return PolyRing(QQ, ["s"])


def _entry(name, E, names, images, disc, etale):
    F = PolyRing(QQ, names)
    return CatalogEntry(name, E, AlgebraMap(F, E, images), disc, etale)


def _local_uv():
    """Q[u,v]/(u^2, uv, v^2) with basis 1, u, v."""
    table = {(0, 0): [1, 0, 0], (0, 1): [0, 1, 0], (0, 2): [0, 0, 1]}
    return FiniteAlgebra.from_table(QQ, 3, table, [1, 0, 0], names=["1", "u", "v"])


def algebra_catalog():
    """The core five, as listed with their discriminants (basis 1, t, ... or idempotents)."""
    S = _qs()
    s = S.gen(0)
    return [
        _entry("Q[t]/(t^2)", FiniteAlgebra.monogenic(QQ, [0, 0]), ["t"], [[0, 1]], 0, False),
        _entry("Q[t]/(t^2-1)", FiniteAlgebra.monogenic(QQ, [-1, 0]), ["t"], [[0, 1]], 4, True),
        _entry("Q[t]/(t^3)", FiniteAlgebra.monogenic(QQ, [0, 0, 0]), ["t"], [[0, 1, 0]], 0, False),
        _entry("QxQ", FiniteAlgebra.split(QQ, 2), ["t"], [[0, 1]], 1, True),
        _entry(
            "Q[s][t]/(t^2-s)",
            FiniteAlgebra.monogenic(S, [-s, S.zero]),
            ["t"],
            [[S.zero, S.one]],
            4 * s,
            False,
        ),
    ]


def extended_catalog():
    """Core catalog plus Q[t]/(t^2+1), a Q[s]-family with discriminant s^2, and Q[u,v]-quotients."""
    S = _qs()
    s = S.gen(0)
    dual_times_q = FiniteAlgebra.product(FiniteAlgebra.monogenic(QQ, [0, 0]), FiniteAlgebra.split(QQ, 1))
    extra = [
        _entry("Q[t]/(t^2+1)", FiniteAlgebra.monogenic(QQ, [1, 0]), ["t"], [[0, 1]], -4, True),
        _entry(
            "Q[s][t]/(t^2-s*t)",
            FiniteAlgebra.monogenic(S, [S.zero, -s]),
            ["t"],
            [[S.zero, S.one]],
            s * s,
            False,
        ),
        _entry("Q[u,v]/(u^2,v)", FiniteAlgebra.monogenic(QQ, [0, 0]), ["u", "v"], [[0, 1], [0, 0]], 0, False),
        _entry("Q[u,v] at (0,2),(1,3)", FiniteAlgebra.split(QQ, 2), ["u", "v"], [[0, 1], [2, 3]], 1, True),
        _entry("Q[u,v]/(u^2,uv,v^2)", _local_uv(), ["u", "v"], [[0, 1, 0], [0, 0, 1]], 0, False),
        _entry(
            "Q[u,v] at (0,0),(1,0),(0,1)",
            FiniteAlgebra.split(QQ, 3),
            ["u", "v"],
            [[0, 1, 0], [0, 0, 1]],
            1,
            True,
        ),
        _entry(
            "Q[u,v] -> Q[e]/(e^2) x Q",
            dual_times_q,
            ["u", "v"],
            [[0, 1, 1], [0, 0, 1]],
            0,
            False,
        ),
        _entry(
            "Q[t] at 1/2, -1, 3",
            FiniteAlgebra.split(QQ, 3),
            ["t"],
            [[Fraction(1, 2), -1, 3]],
            1,
            True,
        ),
    ]
    return algebra_catalog() + extra


def residue_data(name):
    """Residue maps (functional, multiplicity) of the split/local catalog members."""
    table = {
        "QxQ": [([1, 0], 1), ([0, 1], 1)],
        "Q[t]/(t^2)": [([1, 0], 2)],
        "Q[t]/(t^3)": [([1, 0, 0], 3)],
        "Q[u,v]/(u^2,uv,v^2)": [([1, 0, 0], 3)],
        "Q[u,v] at (0,0),(1,0),(0,1)": [([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1)],
        "Q[u,v] -> Q[e]/(e^2) x Q": [([1, 0, 0], 2), ([0, 0, 1], 1)],
    }
    return table.get(name)
