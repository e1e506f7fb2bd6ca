"""Negator gadgets, truth-assignment ladders and the 3SAT / 1-in-3 reductions.

Every reduction is assembled as one skeleton graph whose dashed edges are
then replaced by negator copies in a single ``expand_dashed`` pass.  The
skeleton vertices (ladder rungs, clause-gadget vertices) therefore keep the
low ids and the negator internals follow, which is also the branching
order the DPLL engine benefits from.
"""

from __future__ import annotations

import re
from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product

from .catalog import (
    LITERAL_GADGET,
    PROPAGATOR_GADGET,
    STRONG_SQUARE,
    STRONG_TRIANGLE,
    DashedSkeleton,
    named,
)
from .graph import (
    Graph,
    bits,
    disjoint_union,
    find_induced_cycles_up_to,
    identify_vertices,
    induced_paths,
    is_independent,
    make_graph,
)
from .sat import CnfFormula, DimacsError, brute_force_sat, parse_dimacs
from .solver import BLUE, RED, Color, Partition, decide_partition, verify_partition


class ReductionError(ValueError):
    pass


class UnknownKind(ReductionError):
    pass


class NotThreeSat(ReductionError):
    pass


class DuplicateVariableInClause(ReductionError):
    pass


class InvalidInstance(ReductionError):
    pass


class VariantMismatch(ReductionError):
    pass


class TooLarge(ReductionError):
    pass


class NegativeLiteralIn1in3(DimacsError):
    pass


# ---------------------------------------------------------------- negators

BASE_NEGATORS = {
    "octahedron": "octahedron",
    "p62": "p62_component",
    "two_wheel": "two_wheel",
    "sun": "sun_component",
    "bullfree": "bullfree_component",
}
BLUE_BASES = ("octahedron", "p62", "two_wheel")
RED_BASES = ("sun", "bullfree")


@dataclass(frozen=True)
class NegatorInstance:
    graph: Graph
    x: int
    y: int
    kind: str

    def __post_init__(self):
        if self.x == self.y or not (0 <= self.x < self.graph.n and 0 <= self.y < self.graph.n):
            raise ReductionError(f"bad endpoints ({self.x}, {self.y}) for {self.kind}")


def _parse_kind(kind: str) -> tuple[str, str | None]:
    m = re.fullmatch(r"([a-z0-9_]+)(?:\(([a-z0-9_]+)\))?", kind.replace("-", "_"))
    if not m:
        raise UnknownKind(kind)
    head = {"strong_tri": "strong_triangle", "strong_sq": "strong_square"}.get(m.group(1), m.group(1))
    return head, m.group(2)


def instantiate_negator(kind: str, base: str | None = None) -> NegatorInstance:
    """Fresh negator of ``kind``; strong kinds accept ``base`` or ``kind(base)``."""
    head, inner = _parse_kind(kind)
    base = base or inner
    if head in BASE_NEGATORS:
        if base is not None:
            raise UnknownKind(f"{kind} takes no base")
        return NegatorInstance(named(BASE_NEGATORS[head]), 0, 1, head)
    if head == "strong_triangle":
        base = base or "p62"
        if base not in BLUE_BASES:
            raise UnknownKind(f"strong_triangle needs a blue negator base, got {base}")
        g, mapping = expand_dashed(STRONG_TRIANGLE, {"blue": instantiate_negator(base)})
        return NegatorInstance(g, mapping[0], mapping[1], f"strong_triangle({base})")
    if head == "strong_square":
        base = base or "sun"
        if base not in RED_BASES:
            raise UnknownKind(f"strong_square needs a red negator base, got {base}")
        g, mapping = expand_dashed(STRONG_SQUARE, {"red": instantiate_negator(base)})
        return NegatorInstance(g, mapping[0], mapping[1], f"strong_square({base})")
    raise UnknownKind(kind)


def expand_dashed(sk: DashedSkeleton, negators: Mapping[str, NegatorInstance]) -> tuple[Graph, list[int]]:
    """Replace each dashed edge by a fresh copy of the negator for its tag.

    Returns the expanded graph and the skeleton-id -> new-id map (skeleton
    vertices keep their ids because each is the smallest of its class).
    """
    g = make_graph(sk.n, sk.plain)
    classes: list[list[int]] = [[v] for v in range(sk.n)]
    for u, v, tag in sk.dashed:
        try:
            neg = negators[tag]
        except KeyError:
            raise UnknownKind(f"no negator for dashed tag {tag!r}") from None
        offset = g.n
        g = disjoint_union(g, neg.graph)
        classes[u].append(offset + neg.x)
        classes[v].append(offset + neg.y)
    merged, mapping = identify_vertices(g, [c for c in classes if len(c) > 1])
    return merged, mapping[: sk.n]


@dataclass
class NegatorReport:
    kind: str
    color: Color
    both_forbidden: bool
    at_most_one_feasible: bool
    isolated_blue_feasible: dict[tuple[str, str], bool]

    @property
    def passed(self) -> bool:
        return self.both_forbidden and self.at_most_one_feasible and all(self.isolated_blue_feasible.values())


def verify_negator(inst: NegatorInstance, color: Color) -> NegatorReport:
    """Check the negator conditions for ``color`` by exact solving.

    (a) both endpoints ``color`` is infeasible; (b) some colouring with at
    most one endpoint ``color`` exists; (c) for both mixed endpoint
    patterns there is a colouring whose blue endpoint has no blue
    neighbour, which is what lets copies share endpoints in a ladder.
    """
    g, x, y = inst.graph, inst.x, inst.y
    other = BLUE if color is RED else RED
    both = decide_partition(g, {x: color, y: color}) is None
    some = any(
        decide_partition(g, {x: cx, y: cy}) is not None
        for cx, cy in ((color, other), (other, color), (other, other))
    )
    isolated = {}
    for cx, cy in ((RED, BLUE), (BLUE, RED)):
        blue_end = y if cy is BLUE else x
        force = {x: cx, y: cy}
        for w in bits(g.adj[blue_end]):
            force.setdefault(w, RED)
        ok = force[x] is cx and force[y] is cy
        isolated[(str(cx), str(cy))] = ok and decide_partition(g, force) is not None
    return NegatorReport(inst.kind, color, both, some, isolated)


# ---------------------------------------------------------------- skeleton assembly


class _Skeleton:
    def __init__(self):
        self.n = 0
        self.plain: list[tuple[int, int]] = []
        self.dashed: list[tuple[int, int, str]] = []

    def new(self, k: int = 1) -> list[int]:
        ids = list(range(self.n, self.n + k))
        self.n += k
        return ids

    def ladder(self, m: int, rung_tag: str, rail_tag: str) -> list[tuple[int, int]]:
        """Add a ladder skeleton; returns the (u_j, v_j) pairs."""
        pairs = []
        for j in range(m):
            u, v = self.new(2)
            pairs.append((u, v))
            self.dashed.append((u, v, rung_tag))
            if j:
                pu, pv = pairs[j - 1]
                self.dashed.append((pu, u, rail_tag))
                self.dashed.append((pv, v, rail_tag))
        return pairs

    def gadget(self, sk: DashedSkeleton, ends: Sequence[int]) -> list[int]:
        ids = [-1] * sk.n
        for e, v in zip(sk.endpoints, ends):
            ids[e] = v
        for i in range(sk.n):
            if ids[i] < 0:
                ids[i] = self.new()[0]
        self.plain.extend((ids[a], ids[b]) for a, b in sk.plain)
        self.dashed.extend((ids[a], ids[b], tag) for a, b, tag in sk.dashed)
        return ids

    def freeze(self) -> DashedSkeleton:
        return DashedSkeleton(self.n, tuple(self.plain), tuple(self.dashed), ())


def _rung_ends(pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    # Colours alternate along both rails and across rungs, so taking u on odd
    # rungs and v on even rungs puts every x_j in one colour class.
    return [(u, v) if j % 2 == 0 else (v, u) for j, (u, v) in enumerate(pairs)]


@dataclass
class Ladder:
    graph: Graph
    rungs: list[tuple[int, int]]  # (x_j, y_j), j = 1..m in order
    rung_kind: str
    rail_kind: str
    skeleton_n: int


def build_ladder(m: int, rung_kind: str = "sun", rail_kind: str | None = None) -> Ladder:
    if m < 1:
        raise ReductionError("a ladder needs at least one rung")
    rail_kind = rail_kind or rung_kind
    sk = _Skeleton()
    pairs = sk.ladder(m, "rung", "rail")
    g, mapping = expand_dashed(
        sk.freeze(), {"rung": instantiate_negator(rung_kind), "rail": instantiate_negator(rail_kind)}
    )
    rungs = [(mapping[x], mapping[y]) for x, y in _rung_ends(pairs)]
    return Ladder(g, rungs, rung_kind, rail_kind, sk.n)


# ---------------------------------------------------------------- reductions

VARIANT_NEGATOR = {
    "generic": "strong_triangle(p62)",
    "planar_shape": "strong_triangle(p62)",
    "k4free": "sun",
    "bullfree": "bullfree",
    "holes": "strong_triangle(p62)",
    "perfect": "strong_triangle(p62)",
}


def parse_variant(text: str) -> tuple[str, int | None]:
    """``generic``, ``planar-shape``, ``k4free``, ``bullfree``, ``holes:K`` or ``perfect``."""
    t = text.strip().lower().replace("-", "_")
    m = re.fullmatch(r"holes[:(]?(\d+)\)?", t)
    if m:
        k = int(m.group(1))
        if k < 5:
            raise ReductionError("holes:K needs K >= 5")
        return "holes", k
    if t in VARIANT_NEGATOR and t != "holes":
        return t, None
    raise ReductionError(f"unknown variant {text!r}")


@dataclass(frozen=True)
class OneInThreeInstance:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for c in self.clauses:
            if len(c) != 3:
                raise InvalidInstance(f"clause {c} does not have three literals")
            if any(not 1 <= v <= self.num_vars for v in c):
                raise InvalidInstance(f"clause {c} has a variable outside 1..{self.num_vars}")
            if len(set(c)) != 3:
                raise InvalidInstance(f"clause {c} repeats a variable")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(sum(assignment[v - 1] for v in c) == 1 for c in self.clauses)


@dataclass
class ReductionOutput:
    graph: Graph
    variant: str
    holes_k: int | None
    negator: str
    # var -> [(rung j, x_j, y_j)], rungs numbered from 1
    tacs: dict[int, list[tuple[int, int, int]]]
    # var -> [(skeleton vertex, same colour as the x_j?)]
    tac_parity: dict[int, list[tuple[int, bool]]]
    # clause index (from 1) -> stc / literal-gadget endpoint vertices
    clauses: dict[int, tuple[int, ...]]
    # perfect variant only: clause -> propagator-gadget endpoint vertices
    propagators: dict[int, tuple[int, ...]] = field(default_factory=dict)
    # var -> every vertex of that variable's ladder
    tac_vertices: dict[int, list[int]] = field(default_factory=dict)

    @property
    def variant_label(self) -> str:
        return f"holes:{self.holes_k}" if self.variant == "holes" else self.variant

    def sidecar(self) -> str:
        """Mapping file; vertex ids are 1-based like the edge-list format."""
        lines = [f"c variant {self.variant_label} negator {self.negator}"]
        for var in sorted(self.tacs):
            for j, x, y in self.tacs[var]:
                lines.append(f"var {var} rung {j} x {x + 1} y {y + 1}")
        for c in sorted(self.clauses):
            lines.append(f"clause {c} stc " + " ".join(str(v + 1) for v in self.clauses[c]))
        for c in sorted(self.propagators):
            lines.append(f"clause {c} propagator " + " ".join(str(v + 1) for v in self.propagators[c]))
        return "\n".join(lines) + "\n"


def _check_3sat(f: CnfFormula) -> None:
    for i, c in enumerate(f.clauses, 1):
        if len(c) != 3:
            raise NotThreeSat(f"clause {i} has {len(c)} literals")
        if len({abs(l) for l in c}) != 3:
            raise DuplicateVariableInClause(f"clause {i} mentions a variable twice: {c}")


def _finish(sk: _Skeleton, negator: str, ladders: dict[int, list[tuple[int, int]]]) -> tuple[Graph, dict, dict, dict]:
    neg = instantiate_negator(negator)
    frozen = sk.freeze()
    g, mapping = expand_dashed(frozen, {"rung": neg, "rail": neg, "strong": neg})
    tacs, parity, members = {}, {}, {}
    # Internal vertices of each dashed copy follow in dashed-edge order.
    owner: list[int | None] = [None] * g.n
    skeleton_owner = {}
    for var, pairs in ladders.items():
        for u, v in pairs:
            skeleton_owner[u] = skeleton_owner[v] = var
    nxt = frozen.n
    internal = neg.graph.n - 2
    for u, v, _tag in frozen.dashed:
        var = skeleton_owner.get(u)
        if var is not None and skeleton_owner.get(v) == var:
            for w in range(nxt, nxt + internal):
                owner[w] = var
        nxt += internal
    for var, pairs in ladders.items():
        ends = _rung_ends(pairs)
        tacs[var] = [(j + 1, mapping[x], mapping[y]) for j, (x, y) in enumerate(ends)]
        par = []
        for x, y in ends:
            par.append((mapping[x], True))
            par.append((mapping[y], False))
        parity[var] = par
        members[var] = sorted([p for p, _ in par] + [w for w in range(g.n) if owner[w] == var])
    return g, tacs, parity, members


def reduce_3sat(f: CnfFormula, variant: str = "generic", negator: str | None = None) -> ReductionOutput:
    """Graph that is partitionable iff ``f`` is satisfiable."""
    name, k = parse_variant(variant)
    if name == "perfect":
        raise VariantMismatch("the perfect variant reduces from Positive 1-in-3-SAT; use reduce_1in3")
    _check_3sat(f)
    negator = negator or VARIANT_NEGATOR[name]
    variables = sorted({abs(l) for c in f.clauses for l in c})
    m = len(f.clauses)
    stride = k or 1
    sk = _Skeleton()
    ladders = {var: sk.ladder(max(m * stride, 1), "rung", "rail") for var in variables}
    ends = {var: _rung_ends(pairs) for var, pairs in ladders.items()}
    stc = {}
    for j, clause in enumerate(f.clauses, 1):
        rung = j * stride - 1
        vs = tuple(ends[abs(l)][rung][0 if l > 0 else 1] for l in clause)
        # literal order -> (end, middle, end) of the P3
        sk.plain.extend([(vs[0], vs[1]), (vs[1], vs[2])])
        stc[j] = vs
    g, tacs, parity, members = _finish(sk, negator, ladders)
    return ReductionOutput(g, name, k, negator, tacs, parity, stc, tac_vertices=members)


def reduce_1in3(inst: OneInThreeInstance, negator: str = "strong_triangle(p62)") -> ReductionOutput:
    """Perfect-graph reduction: partitionable iff ``inst`` has a 1-in-3 model."""
    variables = sorted({v for c in inst.clauses for v in c})
    m = len(inst.clauses)
    sk = _Skeleton()
    ladders = {var: sk.ladder(max(m, 1), "rung", "rail") for var in variables}
    ends = {var: _rung_ends(pairs) for var, pairs in ladders.items()}
    seen = {var: 0 for var in variables}
    literal, prop = {}, {}
    for j, clause in enumerate(inst.clauses, 1):
        xs, ys = [], []
        for var in clause:
            x, y = ends[var][seen[var]]
            seen[var] += 1
            xs.append(x)
            ys.append(y)
        sk.gadget(LITERAL_GADGET, xs)
        sk.gadget(PROPAGATOR_GADGET, ys)
        literal[j] = tuple(xs)
        prop[j] = tuple(ys)
    g, tacs, parity, members = _finish(sk, negator, ladders)
    return ReductionOutput(g, "perfect", None, negator, tacs, parity, literal, prop, members)


def parse_1in3(text: str) -> OneInThreeInstance:
    f = parse_dimacs(text)
    for i, c in enumerate(f.clauses, 1):
        if any(l < 0 for l in c):
            raise NegativeLiteralIn1in3(f"clause {i} has a negative literal")
    try:
        return OneInThreeInstance(f.num_vars, tuple(tuple(c) for c in f.clauses))
    except InvalidInstance as exc:
        raise DimacsError(str(exc)) from None


# ---------------------------------------------------------------- perfect-variant gadgets


def gadget_graph(which: str, negator: str = "strong_triangle(p62)") -> tuple[Graph, tuple[int, ...]]:
    sk = {"literal": LITERAL_GADGET, "propagator": PROPAGATOR_GADGET}[which]
    g, mapping = expand_dashed(sk, {"strong": instantiate_negator(negator)})
    return g, tuple(mapping[e] for e in sk.endpoints)


@dataclass
class GadgetCountReport:
    name: str
    partitionable: bool
    feasible: dict[str, bool]  # endpoint pattern such as "RBB" -> feasible?

    def blue_counts(self) -> set[int]:
        return {p.count("B") for p, ok in self.feasible.items() if ok}


def endpoint_pattern_table(g: Graph, ends: Sequence[int]) -> dict[str, bool]:
    table = {}
    for pattern in product((RED, BLUE), repeat=len(ends)):
        key = "".join(c.value for c in pattern)
        table[key] = decide_partition(g, dict(zip(ends, pattern))) is not None
    return table


def verify_gadget_endpoint_counts() -> dict[str, GadgetCountReport]:
    out = {}
    for which in ("literal", "propagator"):
        g, ends = gadget_graph(which)
        out[which] = GadgetCountReport(which, decide_partition(g) is not None, endpoint_pattern_table(g, ends))
    return out


# ---------------------------------------------------------------- verification

MAX_VERIFY_VARS = 8


@dataclass
class ReductionReport:
    variant: str
    formula_satisfiable: bool
    graph_partitionable: bool
    lifted_partition_valid: bool | None
    vertices: int

    @property
    def agree(self) -> bool:
        return self.formula_satisfiable == self.graph_partitionable and self.lifted_partition_valid is not False


def brute_force_1in3(inst: OneInThreeInstance) -> list[bool] | None:
    n = inst.num_vars
    for code in range(1 << n):
        a = [bool(code >> (n - 1 - i) & 1) for i in range(n)]
        if inst.satisfied_by(a):
            return a
    return None


def lift_assignment(out: ReductionOutput, model: Sequence[bool]) -> Partition | None:
    """Colour true literals red and false ones blue, then complete by solving."""
    force = {}
    for var, par in out.tac_parity.items():
        x_color = RED if model[var - 1] else BLUE
        y_color = BLUE if x_color is RED else RED
        for v, same in par:
            force[v] = x_color if same else y_color
    return decide_partition(out.graph, force)


def verify_reduction(
    inp: CnfFormula | OneInThreeInstance, variant: str = "generic", negator: str | None = None
) -> ReductionReport:
    name, _k = parse_variant(variant)
    if isinstance(inp, OneInThreeInstance) or name == "perfect":
        if not isinstance(inp, OneInThreeInstance):
            raise VariantMismatch("the perfect variant takes a Positive 1-in-3-SAT instance")
        if inp.num_vars > MAX_VERIFY_VARS:
            raise TooLarge(f"at most {MAX_VERIFY_VARS} variables for brute force")
        model = brute_force_1in3(inp)
        out = reduce_1in3(inp, negator or VARIANT_NEGATOR["perfect"])
    else:
        if inp.num_vars > MAX_VERIFY_VARS:
            raise TooLarge(f"at most {MAX_VERIFY_VARS} variables for brute force")
        model = brute_force_sat(inp)
        out = reduce_3sat(inp, variant, negator)
    p = decide_partition(out.graph)
    lifted = None
    if model is not None:
        q = lift_assignment(out, model)
        lifted = q is not None and verify_partition(out.graph, q)[0]
    return ReductionReport(out.variant_label, model is not None, p is not None, lifted, out.graph.n)


# ---------------------------------------------------------------- structure


@dataclass
class StructureReport:
    variant: str
    checks: dict[str, bool]
    details: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


MAX_ODD_HOLE = 11


def _distances_from(g: Graph, s: int) -> list[int]:
    dist = [-1] * g.n
    dist[s] = 0
    q = deque([s])
    while q:
        v = q.popleft()
        for w in bits(g.adj[v]):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def attachment_distance(out: ReductionOutput) -> int | None:
    """Smallest distance between two clause attachments of the same ladder."""
    attach: dict[int, set[int]] = {}
    tac_of = {}
    for var, par in out.tac_parity.items():
        for v, _ in par:
            tac_of[v] = var
    groups = list(out.clauses.values()) + list(out.propagators.values())
    for vs in groups:
        for v in vs:
            attach.setdefault(tac_of[v], set()).add(v)
    best = None
    for vs in attach.values():
        vs = sorted(vs)
        for i, s in enumerate(vs[:-1]):
            dist = _distances_from(out.graph, s)
            for t in vs[i + 1:]:
                if best is None or dist[t] < best:
                    best = dist[t]
    return best


def even_endpoint_paths(g: Graph, ends: Sequence[int]) -> tuple[bool, int]:
    """Do all induced paths between distinct endpoints have even length?"""
    count = 0
    for i, s in enumerate(ends):
        for t in ends[i + 1:]:
            for path in induced_paths(g, s, t):
                count += 1
                if (len(path) - 1) % 2:
                    return False, count
    return True, count


def check_structure(out: ReductionOutput, variant: str | None = None, max_cycle: int = MAX_ODD_HOLE) -> StructureReport:
    from .classifier import contains_induced

    if variant is not None:
        name, k = parse_variant(variant)
        if name != out.variant or (k is not None and k != out.holes_k):
            raise VariantMismatch(f"output is {out.variant_label}, not {variant}")
    g = out.graph
    checks: dict[str, bool] = {}
    details: dict[str, object] = {}
    for var, rungs in out.tacs.items():
        xs = [x for _, x, _ in rungs]
        ys = [y for _, _, y in rungs]
        checks.setdefault("tac_sides_independent", True)
        if not (is_independent(g, xs) and is_independent(g, ys)):
            checks["tac_sides_independent"] = False
    if out.variant == "k4free":
        checks["k4_free"] = contains_induced(g, named("K4")) is None
    elif out.variant == "bullfree":
        checks["bull_free"] = contains_induced(g, named("bull")) is None
    elif out.variant == "holes":
        k = out.holes_k
        cycles = find_induced_cycles_up_to(g, k, min_len=5)
        checks[f"no_holes_5_to_{k}"] = not cycles
        if cycles:
            details["hole"] = cycles[0]
        d = attachment_distance(out)
        details["attachment_distance"] = d
        checks["attachment_distance_at_least_k"] = d is None or d >= k
    elif out.variant == "perfect":
        odd = [c for c in find_induced_cycles_up_to(g, max_cycle, min_len=5) if len(c) % 2]
        checks[f"no_odd_hole_up_to_{max_cycle}"] = not odd
        if odd:
            details["odd_hole"] = odd[0]
        for k in (7, 9):
            checks[f"no_antihole_{k}"] = contains_induced(g, named(f"coC{k}")) is None
        for which in ("literal", "propagator"):
            gg, ends = gadget_graph(which, out.negator)
            ok, count = even_endpoint_paths(gg, ends)
            checks[f"{which}_endpoint_paths_even"] = ok
            details[f"{which}_endpoint_paths"] = count
    return StructureReport(out.variant_label, checks, details)

