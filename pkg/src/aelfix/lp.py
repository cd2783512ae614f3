"""Embeddings of normal logic programs into the modal language, and
independent oracles for the semantics they are expected to reproduce.

The oracles (alternating fixpoint for well-founded, three-valued
single-step iteration for Fitting-Kunen, candidate enumeration for stable
and supported models) share no code with the belief-pair machinery, so the
correspondence tests are genuine cross-checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapExceededError
from .semantics import Alphabet, BeliefPair, WorldSet, modal_value
from .syntax import (And, Atom, Clause, Formula, Impl, K, LogicProgram, Neg,
                     TRUE_C)
from .values import TruthValue3


# ------------------------------------------------------------------
# Embeddings and projection
# ------------------------------------------------------------------

def _conjoin(parts: list[Formula]) -> Formula:
    if not parts:
        return TRUE_C
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def ael1(program: LogicProgram) -> tuple[Formula, ...]:
    """Clause-wise translation keeping positive body atoms objective:
    ``b1 & ... & bk & ~K(c1) & ... & ~K(cm) -> a``."""
    out = []
    for c in program.clauses:
        parts: list[Formula] = [Atom(b) for b in c.pos_body]
        parts += [Neg(K(Atom(n))) for n in c.neg_body]
        out.append(Impl(_conjoin(parts), Atom(c.head)))
    return tuple(out)


def ael2(program: LogicProgram) -> tuple[Formula, ...]:
    """Clause-wise translation wrapping positive body atoms in belief:
    ``K(b1) & ... & K(bk) & ~K(c1) & ... & ~K(cm) -> a``."""
    out = []
    for c in program.clauses:
        parts: list[Formula] = [K(Atom(b)) for b in c.pos_body]
        parts += [Neg(K(Atom(n))) for n in c.neg_body]
        out.append(Impl(_conjoin(parts), Atom(c.head)))
    return tuple(out)


def program_alphabet(program: LogicProgram) -> Alphabet:
    return Alphabet(program.atoms)


@dataclass(frozen=True)
class ThreeValuedInterpretation:
    """A total three-valued assignment over a fixed atom tuple."""

    atoms: tuple[str, ...]
    values: tuple[TruthValue3, ...]

    def __post_init__(self) -> None:
        if len(self.atoms) != len(self.values):
            raise ValueError("atom/value length mismatch")

    @classmethod
    def from_mapping(cls, atoms: Iterable[str],
                     mapping: dict[str, TruthValue3]) -> "ThreeValuedInterpretation":
        atoms = tuple(atoms)
        return cls(atoms, tuple(mapping[a] for a in atoms))

    @classmethod
    def from_true_atoms(cls, atoms: Iterable[str],
                        true_atoms: Iterable[str]) -> "ThreeValuedInterpretation":
        """Two-valued special case: listed atoms true, the rest false."""
        atoms = tuple(atoms)
        true_set = set(true_atoms)
        return cls(atoms, tuple(TruthValue3.from_bool(a in true_set) for a in atoms))

    def value(self, name: str) -> TruthValue3:
        return self.values[self.atoms.index(name)]

    def items(self) -> Iterator[tuple[str, TruthValue3]]:
        return zip(self.atoms, self.values)

    def leq_knowledge(self, other: "ThreeValuedInterpretation") -> bool:
        return (self.atoms == other.atoms
                and all(a.leq_knowledge(b) for a, b in zip(self.values, other.values)))

    def __str__(self) -> str:
        return "\n".join(f"{a}={v.symbol}" for a, v in self.items())


def projection(pair: BeliefPair, atoms: Iterable[str]) -> ThreeValuedInterpretation:
    """Atom-wise belief values of a pair, as a three-valued interpretation."""
    memo: dict = {}
    atoms = tuple(atoms)
    return ThreeValuedInterpretation(
        atoms, tuple(modal_value(pair, Atom(a), memo) for a in atoms))


# ------------------------------------------------------------------
# Oracle: well-founded semantics via the alternating fixpoint
# ------------------------------------------------------------------

def _least_model(clauses: list[tuple[str, tuple[str, ...]]]) -> frozenset[str]:
    """Least model of a definite program, by saturation."""
    true: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, body in clauses:
            if head not in true and all(b in true for b in body):
                true.add(head)
                changed = True
    return frozenset(true)


def _reduct_model(program: LogicProgram, context: frozenset[str]) -> frozenset[str]:
    """Least model of the reduct: drop clauses blocked by the context,
    strip the surviving negative literals."""
    clauses = [(c.head, c.pos_body) for c in program.clauses
               if not set(c.neg_body) & context]
    return _least_model(clauses)


def well_founded(program: LogicProgram) -> ThreeValuedInterpretation:
    """Well-founded model via the alternating fixpoint.

    The squared reduct operator is monotone; its least fixpoint collects
    the true atoms and one more application bounds the non-false ones.
    """
    true: frozenset[str] = frozenset()
    while True:
        nxt = _reduct_model(program, _reduct_model(program, true))
        if nxt == true:
            break
        true = nxt
    possible = _reduct_model(program, true)
    values = {a: TruthValue3.TRUE if a in true
              else TruthValue3.UNKNOWN if a in possible
              else TruthValue3.FALSE
              for a in program.atoms}
    return ThreeValuedInterpretation.from_mapping(program.atoms, values)


# ------------------------------------------------------------------
# Oracle: Fitting-Kunen semantics via the three-valued step operator
# ------------------------------------------------------------------

def _clause_body_value(clause: Clause, values: dict[str, TruthValue3]) -> TruthValue3:
    body = TruthValue3.TRUE
    for b in clause.pos_body:
        body = min(body, values[b])
    for n in clause.neg_body:
        body = min(body, values[n].inverse())
    return body


def _fitting_step(program: LogicProgram,
                  values: dict[str, TruthValue3]) -> dict[str, TruthValue3]:
    out: dict[str, TruthValue3] = {}
    for a in program.atoms:
        clauses = program.clauses_for(a)
        if not clauses:
            out[a] = TruthValue3.FALSE
            continue
        out[a] = max(_clause_body_value(c, values) for c in clauses)
    return out


def fitting_kunen(program: LogicProgram) -> ThreeValuedInterpretation:
    """Least fixpoint, in the knowledge ordering, of the three-valued
    single-step operator, iterated from the all-unknown assignment."""
    values = {a: TruthValue3.UNKNOWN for a in program.atoms}
    for _ in range(2 * len(program.atoms) + 1):
        nxt = _fitting_step(program, values)
        if nxt == values:
            return ThreeValuedInterpretation.from_mapping(program.atoms, values)
        values = nxt
    raise RuntimeError("step operator failed to stabilize")  # unreachable


def three_valued_supported_models(
        program: LogicProgram, cap: int = 10) -> tuple[ThreeValuedInterpretation, ...]:
    """All fixpoints of the three-valued single-step operator."""
    atoms = program.atoms
    if len(atoms) > cap:
        raise CapExceededError(f"{len(atoms)} atoms exceed the cap of {cap}")
    found = []
    for combo in itertools.product(tuple(TruthValue3), repeat=len(atoms)):
        values = dict(zip(atoms, combo))
        if _fitting_step(program, values) == values:
            found.append(ThreeValuedInterpretation(atoms, combo))
    return tuple(found)


# ------------------------------------------------------------------
# Oracles: stable, supported, and three-valued stable models
# ------------------------------------------------------------------

def stable_models(program: LogicProgram, cap: int = 16) -> WorldSet:
    """Candidates that reproduce themselves as least model of their reduct."""
    atoms = program.atoms
    if len(atoms) > cap:
        raise CapExceededError(f"{len(atoms)} atoms exceed the cap of {cap}")
    alphabet = Alphabet(atoms)
    mask = 0
    for index in range(alphabet.world_count):
        candidate = frozenset(a for j, a in enumerate(atoms) if index >> j & 1)
        if _reduct_model(program, candidate) == candidate:
            mask |= 1 << index
    return WorldSet(alphabet, mask)


def supported_models(program: LogicProgram, cap: int = 16) -> WorldSet:
    """Candidates where each true atom has a clause with a true body and
    no false atom has one."""
    atoms = program.atoms
    if len(atoms) > cap:
        raise CapExceededError(f"{len(atoms)} atoms exceed the cap of {cap}")
    alphabet = Alphabet(atoms)
    mask = 0
    for index in range(alphabet.world_count):
        candidate = {a for j, a in enumerate(atoms) if index >> j & 1}
        derived = {c.head for c in program.clauses
                   if set(c.pos_body) <= candidate and not set(c.neg_body) & candidate}
        if derived == candidate:
            mask |= 1 << index
    return WorldSet(alphabet, mask)


def _least_three_valued_model(
        clauses: list[tuple[str, tuple[str, ...], TruthValue3]],
        atoms: tuple[str, ...]) -> dict[str, TruthValue3]:
    """Least model, in the truth ordering, of a negation-free program whose
    clauses carry a constant factor from the dissolved negative literals."""
    values = {a: TruthValue3.FALSE for a in atoms}
    while True:
        nxt = {a: TruthValue3.FALSE for a in atoms}
        for head, body, constant in clauses:
            v = constant
            for b in body:
                v = min(v, values[b])
            nxt[head] = max(nxt[head], v)
        if nxt == values:
            return values
        values = nxt


def three_valued_stable_models(
        program: LogicProgram, cap: int = 10) -> tuple[ThreeValuedInterpretation, ...]:
    """Assignments that reproduce themselves as least three-valued model of
    the program with negative literals replaced by their inverted values."""
    atoms = program.atoms
    if len(atoms) > cap:
        raise CapExceededError(f"{len(atoms)} atoms exceed the cap of {cap}")
    found = []
    for combo in itertools.product(tuple(TruthValue3), repeat=len(atoms)):
        values = dict(zip(atoms, combo))
        clauses = [(c.head, c.pos_body,
                    min((values[n].inverse() for n in c.neg_body),
                        default=TruthValue3.TRUE))
                   for c in program.clauses]
        if _least_three_valued_model(clauses, atoms) == values:
            found.append(ThreeValuedInterpretation(atoms, combo))
    return tuple(found)
