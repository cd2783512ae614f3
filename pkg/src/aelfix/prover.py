"""Two-valued satisfiability and entailment.

A small self-contained decision procedure: definitional clause-form
conversion followed by DPLL with unit propagation.  Keeping the solver
in-tree makes entailment-call accounting exact and runs reproducible; a
different solver can be plugged into :class:`Prover`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .semantics import Alphabet, WorldSet, ensure_explicit_cap
from .syntax import (And, Atom, Const, Formula, Impl, K, Neg, Or, as_theory,
                     theory_atoms)
from .values import TruthValue3


@dataclass(frozen=True)
class ClauseSet:
    """A conjunction of disjunctions of literals.

    Literals are signed 1-based variable indices; ``var_names`` maps the
    index back to a name, with the first ``original_count`` entries being
    input atoms and the rest definitional auxiliaries.  Tautological
    clauses are dropped at construction time; auxiliaries never appear in
    projected models.
    """

    clauses: tuple[frozenset[int], ...]
    var_names: tuple[str, ...]
    original_count: int

    @property
    def original_atoms(self) -> tuple[str, ...]:
        return self.var_names[:self.original_count]


class _ClauseBuilder:
    def __init__(self) -> None:
        self.names: list[str] = []
        self.index: dict[str, int] = {}
        self.clauses: list[frozenset[int]] = []
        self.aux_count = 0

    def var(self, name: str) -> int:
        v = self.index.get(name)
        if v is None:
            self.names.append(name)
            v = self.index[name] = len(self.names)
        return v

    def fresh(self) -> int:
        self.aux_count += 1
        return self.var(f"#{self.aux_count}")

    def emit(self, clause: frozenset[int]) -> None:
        if any(-lit in clause for lit in clause):
            return  # tautology
        self.clauses.append(clause)


def _nnf(formula: Formula, negated: bool) -> Formula:
    """Negation normal form with constant folding; rejects K and $u."""
    if isinstance(f := formula, Atom):
        return Neg(f) if negated else f
    if isinstance(f, Const):
        if f.value is TruthValue3.UNKNOWN:
            raise ValueError("$u is not a two-valued formula")
        value = f.value.inverse() if negated else f.value
        return Const(value)
    if isinstance(f, Neg):
        return _nnf(f.sub, not negated)
    if isinstance(f, And):
        a, b = _nnf(f.left, negated), _nnf(f.right, negated)
        return Or(a, b) if negated else And(a, b)
    if isinstance(f, Or):
        a, b = _nnf(f.left, negated), _nnf(f.right, negated)
        return And(a, b) if negated else Or(a, b)
    if isinstance(f, Impl):
        a, b = _nnf(f.antecedent, not negated), _nnf(f.consequent, negated)
        return And(a, b) if negated else Or(a, b)
    if isinstance(f, K):
        raise ValueError("clause conversion is defined on K-free formulas only")
    raise TypeError(f"not a formula: {formula!r}")


def _cnf(formula: Formula, b: _ClauseBuilder) -> list[frozenset[int]] | None:
    """CNF of an NNF formula; ``None`` stands for the valid formula.

    Disjunctions distribute while that stays small and otherwise get a
    definitional variable, so flat inputs come out verbatim.
    """
    if isinstance(f := formula, Atom):
        return [frozenset((b.var(f.name),))]
    if isinstance(f, Neg):
        assert isinstance(f.sub, Atom)
        return [frozenset((-b.var(f.sub.name),))]
    if isinstance(f, Const):
        return None if f.value is TruthValue3.TRUE else [frozenset()]
    if isinstance(f, And):
        left, right = _cnf(f.left, b), _cnf(f.right, b)
        if left is None:
            return right
        if right is None:
            return left
        return left + right
    if isinstance(f, Or):
        left, right = _cnf(f.left, b), _cnf(f.right, b)
        if left is None or right is None:
            return None
        if not left:
            return right
        if not right:
            return left
        if len(left) * len(right) <= len(left) + len(right):
            out = [c | d for c in left for d in right]
            return [c for c in out if not any(-lit in c for lit in c)] or None
        # Define the right disjunct: d -> right, then left ∨ d clause-wise.
        d = b.fresh()
        for c in right:
            b.emit(c | {-d})
        return [c | {d} for c in left]
    raise TypeError(f"unexpected node in NNF: {formula!r}")


def to_clauses(formulas: Formula | Iterable[Formula],
               extra_atoms: Iterable[str] = ()) -> ClauseSet:
    """Equisatisfiable clause set; models projected to the original atoms
    coincide with the models of the input."""
    b = _ClauseBuilder()
    for name in extra_atoms:
        b.var(name)
    theory = as_theory(formulas)
    for name in theory_atoms(theory):
        b.var(name)
    original = len(b.names)
    for f in theory:
        clauses = _cnf(_nnf(f, False), b)
        if clauses is not None:
            for c in clauses:
                b.emit(c)
    return ClauseSet(tuple(b.clauses), tuple(b.names), original)


def satisfiable(clause_set: ClauseSet) -> bool:
    """DPLL with unit propagation."""
    return _dpll([set(c) for c in clause_set.clauses])


def _dpll(clauses: list[set[int]]) -> bool:

    def propagate(cls: list[set[int]]) -> list[set[int]] | None:
        while True:
            unit = None
            for c in cls:
                if not c:
                    return None
                if len(c) == 1:
                    unit = next(iter(c))
                    break
            if unit is None:
                return cls
            nxt = []
            for c in cls:
                if unit in c:
                    continue
                if -unit in c:
                    c = c - {-unit}
                nxt.append(c)
            cls = nxt

    def solve(cls: list[set[int]]) -> bool:
        cls = propagate(cls)
        if cls is None:
            return False
        if not cls:
            return True
        lit = next(iter(min(cls, key=len)))
        for choice in (lit, -lit):
            branch = []
            ok = True
            for c in cls:
                if choice in c:
                    continue
                reduced = c - {-choice}
                if not reduced:
                    ok = False
                    break
                branch.append(set(reduced))
            if ok and solve(branch):
                return True
        return False

    return solve(clauses)


def _classical_table(formula: Formula, alphabet: Alphabet) -> int:
    """Truth table of a K-free, $u-free formula as a world mask."""
    full = alphabet.full_mask
    if isinstance(f := formula, Atom):
        return alphabet.atom_mask(f.name)
    if isinstance(f, Const):
        if f.value is TruthValue3.UNKNOWN:
            raise ValueError("$u is not a two-valued formula")
        return full if f.value is TruthValue3.TRUE else 0
    if isinstance(f, Neg):
        return full ^ _classical_table(f.sub, alphabet)
    if isinstance(f, And):
        return _classical_table(f.left, alphabet) & _classical_table(f.right, alphabet)
    if isinstance(f, Or):
        return _classical_table(f.left, alphabet) | _classical_table(f.right, alphabet)
    if isinstance(f, Impl):
        return ((full ^ _classical_table(f.antecedent, alphabet))
                | _classical_table(f.consequent, alphabet))
    if isinstance(f, K):
        raise ValueError("model enumeration is defined on K-free formulas only")
    raise TypeError(f"not a formula: {formula!r}")


@dataclass
class Prover:
    """Entailment engine with an atomically incremented call counter.

    ``solver`` decides clause-set satisfiability and defaults to the
    in-tree DPLL; swap it to delegate to an external engine.
    """

    solver: Callable[[ClauseSet], bool] = satisfiable
    entailment_calls: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def entails(self, premises: Formula | Iterable[Formula], conclusion: Formula) -> bool:
        """Whether the premises entail the conclusion; one counted call."""
        with self._lock:
            self.entailment_calls += 1
        refutation = (*as_theory(premises), Neg(conclusion))
        return not self.solver(to_clauses(refutation))

    def satisfiable(self, formulas: Formula | Iterable[Formula]) -> bool:
        return self.solver(to_clauses(formulas))

    def reset(self) -> None:
        with self._lock:
            self.entailment_calls = 0


default_prover = Prover()


def entails(premises: Formula | Iterable[Formula], conclusion: Formula,
            prover: Prover | None = None) -> bool:
    return (prover or default_prover).entails(premises, conclusion)


def models(formulas: Formula | Iterable[Formula], alphabet: Alphabet) -> WorldSet:
    """Exact model set over ``alphabet`` by exhaustive evaluation."""
    ensure_explicit_cap(alphabet)
    mask = alphabet.full_mask
    for f in as_theory(formulas):
        mask &= _classical_table(f, alphabet)
    return WorldSet(alphabet, mask)


def to_dimacs(clause_set: ClauseSet) -> str:
    """DIMACS rendering, with a comment line per variable name."""
    lines = [f"c {i} {name}" for i, name in enumerate(clause_set.var_names, start=1)]
    lines.append(f"p cnf {len(clause_set.var_names)} {len(clause_set.clauses)}")
    for clause in clause_set.clauses:
        lines.append(" ".join(str(lit) for lit in sorted(clause, key=abs)) + " 0")
    return "\n".join(lines) + "\n"
