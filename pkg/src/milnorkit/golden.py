"""Reference diagrams with hand-checked invariants.

Every entry was checked for validity (including planarity) and for its
linking numbers and writhes; the Milnor values in ``EXPECTED_MU`` are
the ones the test suite freezes.
"""

from __future__ import annotations

from .linkdiag import LinkDiagram, parse_pd

GOLDEN_PD: dict[str, str] = {
    "unknot": "O[1]",
    "unknot-kink": "X[1,1,2,2]",
    "unknot-two-kinks": "X[2,2,3,1]+;X[3,4,4,1]-",
    "trefoil": "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]",
    "unlink2": "O[1];O[2]",
    "unlink3": "O[1];O[2];O[3]",
    "hopf": "X[1,3,2,4];X[3,1,4,2]",
    # positive Hopf link with an extra Reidemeister II pair
    "hopf4": "X[1,6,2,5]+;X[6,3,7,2]+;X[7,3,8,4]-;X[8,1,5,4]+",
    "whitehead": "X[6,1,7,2];X[10,7,5,8];X[4,5,1,6];X[2,10,3,9];X[8,4,9,3]",
    "borromean": "X[1,8,2,7]+;X[11,2,12,3]-;X[3,5,4,6]-;X[9,1,10,4]+;X[6,10,7,11]-;X[8,9,5,12]+",
    # same link type, component numbering pinned with an order term
    "borromean-cyclic": "order[1,6,9];X[7,1,8,2]-;X[2,12,3,11]+;X[5,4,6,3]+;X[4,9,1,10]-;X[10,7,11,6]+;X[12,8,9,5]-",
}

# (max length, nonzero mu values): every other index up to that length is 0
EXPECTED_MU: dict[str, tuple[int, dict[str, int]]] = {
    "unlink2": (4, {}),
    "unlink3": (4, {}),
    "hopf": (4, {"12": 1, "21": 1}),
    "hopf4": (4, {"12": 1, "21": 1}),
    "whitehead": (4, {"1122": -1, "1221": -1, "2112": -1, "2211": -1, "1212": 2, "2121": 2}),
    "borromean": (3, {"123": -1, "132": 1, "213": 1, "231": -1, "312": -1, "321": 1}),
    "borromean-cyclic": (3, {"123": -1, "132": 1, "213": 1, "231": -1, "312": -1, "321": 1}),
}


def golden(name: str) -> LinkDiagram:
    return parse_pd(GOLDEN_PD[name])


def golden_names() -> list[str]:
    return list(GOLDEN_PD)
