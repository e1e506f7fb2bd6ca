"""CNF formulas, DIMACS I/O and a deterministic DPLL engine.

The engine does unit propagation and chronological branching on the
lowest-numbered unassigned variable, true phase first.  After every
decision the residual formula is split into variable-disjoint components
which are solved independently, smallest first.  Reduction graphs are long
chains of small gadgets; without the split a failure near the end of the
chain would re-enumerate the internal colourings of every gadget before it.
No clauses are learned.
"""

from __future__ import annotations

import sys
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field


class DimacsError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} outside 1..{self.num_vars}")

    @classmethod
    def of(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> "CnfFormula":
        return cls(num_vars, tuple(tuple(c) for c in clauses))

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable ``i + 1``."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


@dataclass
class SolveStats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0


@dataclass
class SolveResult:
    model: list[bool] | None
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def sat(self) -> bool:
        return self.model is not None


class _Dpll:
    def __init__(self, f: CnfFormula):
        self.n = f.num_vars
        self.clauses = f.clauses
        self.value: list[int] = [0] * (self.n + 1)  # 0 unassigned, 1 true, -1 false
        self.trail: list[int] = []
        self.occ: dict[int, list[int]] = {}
        for ci, clause in enumerate(self.clauses):
            for lit in clause:
                self.occ.setdefault(lit, []).append(ci)
        self.stats = SolveStats()
        self.parent: list[int] = [-1] * (self.n + 1)

    def lit_value(self, lit: int) -> int:
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def assign(self, lit: int) -> bool:
        """Make ``lit`` true and propagate.  False on conflict."""
        value = self.value
        if self.lit_value(lit) == 1:
            return True
        if self.lit_value(lit) == -1:
            self.stats.conflicts += 1
            return False
        queue = [lit]
        while queue:
            lit = queue.pop()
            cur = value[abs(lit)]
            want = 1 if lit > 0 else -1
            if cur == want:
                continue
            if cur == -want:
                self.stats.conflicts += 1
                return False
            value[abs(lit)] = want
            self.trail.append(abs(lit))
            for ci in self.occ.get(-lit, ()):
                unassigned = 0
                last = 0
                for l in self.clauses[ci]:
                    v = value[abs(l)]
                    if v == 0:
                        unassigned += 1
                        last = l
                    elif (v == 1) == (l > 0):
                        break
                else:
                    if unassigned == 0:
                        self.stats.conflicts += 1
                        return False
                    if unassigned == 1:
                        self.stats.propagations += 1
                        queue.append(last)
        return True

    def undo(self, mark: int) -> None:
        value, trail = self.value, self.trail
        while len(trail) > mark:
            value[trail.pop()] = 0

    def residual_components(self, clause_ids: Iterable[int]) -> list[list[int]]:
        """Group the open clauses by shared unassigned variables."""
        value, clauses, parent = self.value, self.clauses, self.parent
        touched = []

        def find(x: int) -> int:
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        open_clauses = []
        for ci in clause_ids:
            free = []
            for l in clauses[ci]:
                v = value[l if l > 0 else -l]
                if v == 0:
                    free.append(l if l > 0 else -l)
                elif (v > 0) == (l > 0):
                    break
            else:
                open_clauses.append((ci, free))
                r0 = free[0]
                if parent[r0] < 0:
                    parent[r0] = r0
                    touched.append(r0)
                r0 = find(r0)
                for x in free[1:]:
                    if parent[x] < 0:
                        parent[x] = x
                        touched.append(x)
                    r = find(x)
                    if r != r0:
                        if r < r0:
                            r, r0 = r0, r
                        parent[r] = r0
        groups: dict[int, list[int]] = {}
        for ci, free in open_clauses:
            groups.setdefault(find(free[0]), []).append(ci)
        for x in touched:
            parent[x] = -1
        return sorted(groups.values(), key=lambda g: (len(g), g[0]))

    def branch_var(self, clause_ids: list[int]) -> int:
        value = self.value
        best = self.n + 1
        for ci in clause_ids:
            for l in self.clauses[ci]:
                x = abs(l)
                if x < best and value[x] == 0:
                    best = x
        return best

    def solve_component(self, clause_ids: list[int]) -> bool:
        x = self.branch_var(clause_ids)
        for lit in (x, -x):
            mark = len(self.trail)
            self.stats.decisions += 1
            if self.assign(lit):
                if all(self.solve_component(c) for c in self.residual_components(clause_ids)):
                    return True
            self.undo(mark)
        return False

    def run(self, assumptions: Sequence[int]) -> list[bool] | None:
        if any(len(c) == 0 for c in self.clauses):
            return None
        for ci, clause in enumerate(self.clauses):
            if len(clause) == 1 and not self.assign(clause[0]):
                return None
        for lit in assumptions:
            if lit == 0 or abs(lit) > self.n:
                raise ValueError(f"assumption literal {lit} outside 1..{self.n}")
            if not self.assign(lit):
                return None
        comps = self.residual_components(range(len(self.clauses)))
        if not all(self.solve_component(c) for c in comps):
            return None
        # Variables left free by every clause default to true.
        return [self.value[x] != -1 for x in range(1, self.n + 1)]


def dpll(f: CnfFormula, assumptions: Sequence[int] = ()) -> SolveResult:
    # One Python frame pair per decision level.
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * f.num_vars + 1000))
    solver = _Dpll(f)
    model = solver.run(list(assumptions))
    if model is not None:
        assert f.evaluate(model), "DPLL returned a non-model"
        for lit in assumptions:
            assert model[abs(lit) - 1] == (lit > 0)
    return SolveResult(model, solver.stats)


def brute_force_sat(f: CnfFormula) -> list[bool] | None:
    """First model in lexicographic order (false < true), or None."""
    n = f.num_vars
    for code in range(1 << n):
        model = [bool(code >> (n - 1 - i) & 1) for i in range(n)]
        if f.evaluate(model):
            return model
    return None


# ---------------------------------------------------------------- DIMACS


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise DimacsError("second problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError("expected 'p cnf <vars> <clauses>'", lineno)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError("non-integer header field", lineno) from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError("negative header field", lineno)
            continue
        if num_vars is None:
            raise DimacsError("clause before problem line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            elif abs(lit) > num_vars:
                raise DimacsError(f"literal {lit} outside 1..{num_vars}", lineno)
            else:
                pending.append(lit)
    if num_vars is None:
        raise DimacsError("missing problem line")
    if pending:
        raise DimacsError("last clause not terminated by 0")
    if len(clauses) != num_clauses:
        raise DimacsError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def write_dimacs(f: CnfFormula, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    lines.extend(" ".join(map(str, c)) + " 0" for c in f.clauses)
    return "\n".join(lines) + "\n"
