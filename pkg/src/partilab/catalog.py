"""Named graphs and a small expression language for cographs.

Grammar (``*`` binds tighter than ``+``)::

    expr   := term ('+' term)*         disjoint union
    term   := factor ('*' factor)*     join
    factor := [INT] (atom | '(' expr ')')
    atom   := 'K' INT | 'P' INT | 'C' INT

An integer prefix means that many disjoint copies, so ``2K3`` is two
disjoint triangles.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cotree import Join, Union
from .graph import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    join,
    make_graph,
    path_graph,
)


class CatalogError(ValueError):
    pass


class ParseError(CatalogError):
    def __init__(self, message: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


class ZeroCount(ParseError):
    pass


class UnknownName(CatalogError, KeyError):
    pass


@dataclass(frozen=True)
class Atom:
    kind: str  # "K", "P" or "C"
    size: int


ExprAst = Atom | Union | Join

_TOKEN = re.compile(r"\s*(?:(\d+)|([KPC])|([+*()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", m.group(1), start))
        elif m.group(2):
            toks.append(("atom", m.group(2), start))
        else:
            toks.append((m.group(3), m.group(3), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> ExprAst:
        parts = [self.term()]
        while self.peek()[0] == "+":
            self.i += 1
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def term(self) -> ExprAst:
        parts = [self.factor()]
        while self.peek()[0] == "*":
            self.i += 1
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else Join(tuple(parts))

    def factor(self) -> ExprAst:
        count = 1
        tok = self.peek()
        if tok[0] == "int":
            self.i += 1
            count = int(tok[1])
            if count == 0:
                raise ZeroCount("zero multiplicity", tok[2])
        tok = self.peek()
        if tok[0] == "(":
            self.i += 1
            inner = self.expr()
            self.take(")")
        elif tok[0] == "atom":
            self.i += 1
            size_tok = self.take("int")
            size = int(size_tok[1])
            if size == 0:
                raise ZeroCount(f"{tok[1]}0 has no vertices", size_tok[2])
            if tok[1] == "C" and size < 3:
                raise ParseError(f"cycle C{size} needs at least 3 vertices", size_tok[2])
            inner = Atom(tok[1], size)
        else:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected atom or '(', found {what}", tok[2])
        return inner if count == 1 else Union((inner,) * count)


def parse_expr(text: str) -> ExprAst:
    p = _Parser(text)
    ast = p.expr()
    p.take("end")
    return ast


def eval_expr(ast: ExprAst | str) -> Graph:
    """Build the graph; vertices are numbered left to right."""
    if isinstance(ast, str):
        ast = parse_expr(ast)
    if isinstance(ast, Atom):
        return {"K": complete_graph, "P": path_graph, "C": cycle_graph}[ast.kind](ast.size)
    combine = join if isinstance(ast, Join) else disjoint_union
    g = eval_expr(ast.children[0])
    for child in ast.children[1:]:
        g = combine(g, eval_expr(child))
    return g


def format_expr(ast: ExprAst) -> str:
    if isinstance(ast, Atom):
        return f"{ast.kind}{ast.size}"
    sep = " * " if isinstance(ast, Join) else " + "
    inner = sep.join(
        f"({format_expr(c)})" if isinstance(c, (Union, Join)) else format_expr(c) for c in ast.children
    )
    return inner


# ---------------------------------------------------------------- formulas

BASIC = {
    "diamond": "K2 * 2K1",
    "paw": "K1 * (K1 + K2)",
    "butterfly": "K1 * 2K2",
    "claw": "K1 * 3K1",
}

FAMILIES = {
    # Lemma targets
    "F1": "P3 + K3",
    "F2": "K2 * 2K1",
    "F3": "K1 * (K1 + K2)",
    "Q1": "P3 + K2",
    "Q2": "K1 * 2K2",
    "S1": "P3 + K3",
    "S2": "K1 * 2K2",
    "S3": "K2 + K1 * (K1 + K2)",
    "S4": "K2 + K2 * 2K1",
    "W1": "2K3 + P3",
    "W2": "K3 + K2 * 2K1",
    "W3": "K3 + K1 * (K1 + K2)",
    "W4": "K1 * 2K3",
    # bi-threshold obstructions
    "B1": "K1 * 2K2",
    "B2": "C4 * K1",
    "B3": "2K1 * (K2 + K1)",
    "B4": "K2 + K2 * 2K1",
    "B5": "K3 + P3",
    "B6": "K2 + K1 * (K1 + K2)",
    # monopolar obstructions
    "J1": "C4 * K1",
    "J2": "K1 * (P3 + K2)",
    "J3": "K2 * 2K2",
    "J4": "(K2 + K1) * (K2 + K1)",
    # (1,2) obstructions; their complements obstruct (2,1)
    "I1": "2K1 * 2K1 * 2K1",
    "I2": "2K2 * 2K1",
    "I3": "2K3",
    # monopolar-nearly-split obstructions
    "R1": "2K1 * 2K1 * 2K1",
    "R2": "2K2 * (K2 + K1)",
    "R3": "2K1 * (P3 + K2)",
    "R4": "K1 * (2K1 * 2K2)",
    "R5": "K2 * 2K3",
    "R6": "K1 * (P3 + 2K3)",
    "R7": "K1 * (K3 + P3 * K1)",
    "R8": "K1 * (K3 + K1 * (K1 + K2))",
    # partitionable-cograph obstructions
    "H1": "2K1 * 2K1 * 2K1 * K1",
    "H2": "P3 * K1 * 2K2",
    "H3": "2K1 * (K2 + K1) * (K2 + K1)",
    "H4": "P3 * (K2 + P3)",
    "H5": "(K2 + K1) * K1 * 2K2",
    "H6": "(K2 + K1) * (K3 + P3)",
    "H7": "(K2 + K1) * (K2 + P3 * K1)",
    "H8": "(K2 + K1) * (K2 + K1 * (K2 + K1))",
    "H9": "K1 * (K3 + C4 * K1)",
    "H10": "K1 * (K3 + K1 * (P3 + K2))",
    "H11": "K1 * (K3 + K2 * 2K2)",
    "H12": "K1 * (K3 + (K2 + K1) * (K2 + K1))",
    "H13": "K2 * (P3 + 2K3)",
    "H14": "K2 * (K3 + P3 * K1)",
    "H15": "K2 * (K3 + K1 * (K1 + K2))",
    "H16": "(K3 + K2) * (K3 + K1)",
    "H17": "K3 * 2K3",
}

H_NAMES = [f"H{i}" for i in range(1, 18)]
B_NAMES = [f"B{i}" for i in range(1, 7)]
J_NAMES = [f"J{i}" for i in range(1, 5)]
R_NAMES = [f"R{i}" for i in range(1, 9)]
I_NAMES = ["I1", "I2", "I3"]
CO_I_NAMES = ["coI1", "coI2", "coI3"]

# Two-terminal gadgets: endpoints are always vertices 0 (x) and 1 (y).
_GADGET_EDGES = {
    # K2,2,2; x and y are adjacent, taken from different parts.
    "octahedron": (6, [(0, 1), (0, 2), (0, 4), (0, 5), (1, 2), (1, 3), (1, 5),
                       (2, 3), (2, 4), (3, 4), (3, 5), (4, 5)]),
    # x=0, y=1, path order x a b c d y with a..d = 2..5: the square of that
    # path plus the edge xy.
    "p62_component": (6, [(0, 1), (0, 2), (0, 3), (2, 3), (2, 4), (3, 4),
                          (4, 1), (4, 5), (3, 5), (5, 1)]),
    # x=0, y=1, inner triangle 2,3,4, outer 5,6,7 (outer j sees inner j, j+1),
    # x and y both complete to the outer vertices.
    "sun_component": (8, [(2, 3), (3, 4), (2, 4), (5, 2), (5, 3), (6, 3), (6, 4),
                          (7, 4), (7, 2), (0, 5), (0, 6), (0, 7), (1, 5), (1, 6),
                          (1, 7), (0, 1)]),
    # x=0, y=1, z1..z4 = 2..5, v1..v3 = 6..8.
    "bullfree_component": (9, [(0, 1), (0, 2), (0, 3), (2, 3), (1, 4), (1, 5), (4, 5),
                               (6, 7), (6, 8), (7, 8)]
                           + [(z, v) for z in range(2, 6) for v in range(6, 9)]),
}


def _two_wheel() -> tuple[int, list[tuple[int, int]]]:
    # Two wheels, each a hub over a 5-cycle rim; rims l1..l5 and r1..r5.
    # Cross edges l2-r5 and l5-r2; x = l5, y = r2.
    # ids: x=l5 0, y=r2 1, left hub 2, l1..l4 3..6, right hub 7, r1 8, r3..r5 9..11
    left = {"h": 2, 1: 3, 2: 4, 3: 5, 4: 6, 5: 0}
    right = {"h": 7, 1: 8, 2: 1, 3: 9, 4: 10, 5: 11}
    edges = []
    for side in (left, right):
        for k in range(1, 6):
            edges.append((side["h"], side[k]))
            edges.append((side[k], side[k % 5 + 1]))
    edges += [(left[2], right[5]), (left[5], right[2])]
    return 12, edges


_GADGET_EDGES["two_wheel"] = _two_wheel()

NEGATOR_NAMES = ["octahedron", "p62_component", "two_wheel", "sun_component", "bullfree_component"]


@dataclass(frozen=True)
class DashedSkeleton:
    """Skeleton whose dashed edges stand for two-terminal negator copies."""

    n: int
    plain: tuple[tuple[int, int], ...]
    dashed: tuple[tuple[int, int, str], ...]
    endpoints: tuple[int, ...]

    def __post_init__(self):
        p = {frozenset(e) for e in self.plain}
        d = {frozenset(e[:2]) for e in self.dashed}
        if p & d:
            raise CatalogError("dashed and plain edge sets overlap")

    def drawing(self) -> Graph:
        """The skeleton with dashed edges drawn as ordinary edges."""
        return make_graph(self.n, list(self.plain) + [(u, v) for u, v, _ in self.dashed])


# Strong negator from a triangle: triangle a b c, hub d, endpoints x y;
# dashed edges carry blue negators.  ids: x=0, y=1, a=2, b=3, c=4, d=5.
STRONG_TRIANGLE = DashedSkeleton(
    6, ((2, 3), (3, 4), (2, 4), (5, 0), (5, 1)),
    ((2, 5, "blue"), (3, 5, "blue"), (4, 5, "blue"), (0, 1, "blue")),
    (0, 1),
)
# Strong negator from a square a-x-y-b of red negators.  ids: x=0, y=1, a=2, b=3.
STRONG_SQUARE = DashedSkeleton(
    4, (), ((2, 0, "red"), (0, 1, "red"), (1, 3, "red"), (3, 2, "red")), (0, 1),
)
# Literal gadget: endpoints e1..e3 = 0..2, inner triangle i1..i3 = 3..5,
# middle m1..m3 = 6..8; strong negators i_a-m_a and m_a-e_a, plain m_a-i_b.
LITERAL_GADGET = DashedSkeleton(
    9,
    ((3, 4), (4, 5), (3, 5)) + tuple((6 + a, 3 + b) for a in range(3) for b in range(3) if a != b),
    tuple((3 + a, 6 + a, "strong") for a in range(3)) + tuple((6 + a, a, "strong") for a in range(3)),
    (0, 1, 2),
)
# Propagator gadget: endpoints u v w = 0..2, partners u' v' w' = 3..5.
PROPAGATOR_GADGET = DashedSkeleton(
    6,
    ((3, 1), (3, 4), (3, 2), (3, 5), (4, 2), (5, 1)),
    ((0, 3, "strong"), (1, 4, "strong"), (2, 5, "strong")),
    (0, 1, 2),
)

SKELETONS = {
    "strong_triangle_skeleton": STRONG_TRIANGLE,
    "strong_square_skeleton": STRONG_SQUARE,
    "literal_gadget_skeleton": LITERAL_GADGET,
    "propagator_gadget_skeleton": PROPAGATOR_GADGET,
}

_BULL = (5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)])

_ALIASES = {
    "p62": "p62_component",
    "sun": "sun_component",
    "bullfree": "bullfree_component",
    "two-wheel": "two_wheel",
    "literal": "literal_gadget_skeleton",
    "propagator": "propagator_gadget_skeleton",
}


def gadget_endpoints(name: str) -> tuple[int, ...]:
    name = _ALIASES.get(name, name)
    if name in _GADGET_EDGES:
        return (0, 1)
    if name in SKELETONS:
        return SKELETONS[name].endpoints
    raise UnknownName(name)


def catalog_names() -> list[str]:
    return (
        sorted(BASIC) + ["bull"] + NEGATOR_NAMES + sorted(SKELETONS)
        + list(FAMILIES) + CO_I_NAMES
    )


def named(name: str) -> Graph:
    """Frozen graph for ``name``.

    Besides the fixed catalog this accepts ``co<name>`` for complements,
    ``wheel<k>`` for the k-wheel (hub over a (k-1)-cycle), and any
    expression in the cograph language such as ``3K2`` or ``P5``.
    """
    key = _ALIASES.get(name, name)
    if key in FAMILIES:
        return eval_expr(FAMILIES[key])
    if key in BASIC:
        return eval_expr(BASIC[key])
    if key == "bull":
        return make_graph(*_BULL)
    if key in _GADGET_EDGES:
        return make_graph(*_GADGET_EDGES[key])
    if key in SKELETONS:
        return SKELETONS[key].drawing()
    m = re.fullmatch(r"wheel\(?(\d+)\)?", key)
    if m:
        k = int(m.group(1))
        if k < 4:
            raise UnknownName(f"{name}: a wheel needs at least 4 vertices")
        return join(cycle_graph(k - 1), complete_graph(1))
    if key.startswith("co") and len(key) > 2:
        try:
            return complement(named(key[2:]))
        except UnknownName:
            pass
    try:
        return eval_expr(parse_expr(key))
    except ParseError:
        raise UnknownName(name) from None
