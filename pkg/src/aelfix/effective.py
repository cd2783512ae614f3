"""Compact fixpoint computation on theory representations.

A belief pair reachable by derivation steps can be represented by a
K-free theory over the constants ``$t``, ``$f``, ``$u``: the models of its
weakest two-valued reading form the upper component, those of the
strongest reading the lower one.  Belief literals are then decided by two
entailment queries instead of world enumeration, which removes the
explicit-set cap from the least-fixpoint computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InternalInvariantError
from .prover import Prover, models
from .semantics import Alphabet, BeliefPair, modal_value
from .syntax import (Const, Formula, K, as_theory, is_objective, lower_form,
                     replace_top_modal, top_modal_literals, upper_form)
from .values import TruthValue3


@dataclass(frozen=True)
class ThreeFolTheory:
    """A finite K-free theory over atoms plus the three truth constants."""

    formulas: tuple[Formula, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "formulas", as_theory(self.formulas))
        for f in self.formulas:
            if not is_objective(f):
                raise ValueError(f"belief operator not allowed here: {f}")

    @classmethod
    def unknown_seed(cls) -> "ThreeFolTheory":
        """The representation of the least belief pair."""
        return cls((Const(TruthValue3.UNKNOWN),))

    def upper_forms(self) -> tuple[Formula, ...]:
        return tuple(upper_form(f) for f in self.formulas)

    def lower_forms(self) -> tuple[Formula, ...]:
        return tuple(lower_form(f) for f in self.formulas)

    def __iter__(self):
        return iter(self.formulas)

    def __len__(self) -> int:
        return len(self.formulas)

    def __str__(self) -> str:
        return "{" + ", ".join(str(f) for f in self.formulas) + "}"


def rep_modal_value(rep: ThreeFolTheory, formula: Formula,
                    prover: Prover | None = None,
                    memo: dict | None = None) -> TruthValue3:
    """Truth value of believing ``formula`` under the represented pair.

    An objective formula is believed when the weakest reading of the
    representation proves its strongest reading, and disbelieved when the
    strongest reading fails to prove its weakest one; those two cases
    cannot overlap.  Nested belief literals are first replaced, innermost
    first, by the constants of their own values.
    """
    prover = prover or Prover()
    if memo is None:
        memo = {}
    cached = memo.get(formula)
    if cached is not None:
        return cached

    if is_objective(formula):
        body = formula
    else:
        body = replace_top_modal(
            formula, lambda k: Const(rep_modal_value(rep, k.sub, prover, memo)))
    believed = prover.entails(rep.upper_forms(), lower_form(body))
    not_refuted = prover.entails(rep.lower_forms(), upper_form(body))
    if believed and not not_refuted:
        raise InternalInvariantError(
            f"belief value of {formula} is both true and false under {rep}")
    if believed:
        value = TruthValue3.TRUE
    elif not not_refuted:
        value = TruthValue3.FALSE
    else:
        value = TruthValue3.UNKNOWN
    memo[formula] = value
    return value


def instantiate(theory: Formula | Iterable[Formula], rep: ThreeFolTheory,
                prover: Prover | None = None,
                memo: dict | None = None) -> ThreeFolTheory:
    """Replace every unnested belief literal by the constant of its value
    under ``rep``; values are shared across the whole theory."""
    prover = prover or Prover()
    if memo is None:
        memo = {}
    resolved = tuple(
        replace_top_modal(f, lambda k: Const(rep_modal_value(rep, k.sub, prover, memo)))
        for f in as_theory(theory))
    return ThreeFolTheory(resolved)


def instantiate_pair(theory: Formula | Iterable[Formula],
                     pair: BeliefPair) -> ThreeFolTheory:
    """Same substitution, driven by an explicit belief pair."""
    memo: dict = {}
    resolved = tuple(
        replace_top_modal(f, lambda k: Const(modal_value(pair, k.sub, memo)))
        for f in as_theory(theory))
    return ThreeFolTheory(resolved)


def derive_rep(theory: Formula | Iterable[Formula], rep: ThreeFolTheory,
               prover: Prover | None = None) -> ThreeFolTheory:
    """One derivation step on representations."""
    return instantiate(theory, rep, prover)


@dataclass(frozen=True)
class RepFixpointRun:
    """Iteration record of the compact least-fixpoint computation.

    ``value_rows`` holds one row per evaluated representation, including
    the final row that confirmed stabilization, so a run takes
    ``iterations`` substitution steps and ``iterations + 1`` evaluations.
    """

    theory: tuple[Formula, ...]
    theories: tuple[ThreeFolTheory, ...]
    literals: tuple[K, ...]
    value_rows: tuple[tuple[TruthValue3, ...], ...]
    entailment_calls: int

    @property
    def fixpoint(self) -> ThreeFolTheory:
        return self.theories[-1]

    @property
    def iterations(self) -> int:
        return len(self.theories) - 1


def least_fixpoint_rep(theory: Formula | Iterable[Formula],
                       prover: Prover | None = None) -> RepFixpointRun:
    """Iterate the compact derivation step from the unknown seed.

    Stops when the value vector of the unnested belief literals repeats;
    a decided literal keeps its value from then on, which bounds the run
    by one more than the number of literals and makes the total entailment
    work polynomial in the theory size.
    """
    theory = as_theory(theory)
    prover = prover or Prover()
    start_calls = prover.entailment_calls
    literals = top_modal_literals(theory)

    rep = ThreeFolTheory.unknown_seed()
    theories = [rep]
    rows: list[tuple[TruthValue3, ...]] = []
    while True:
        memo: dict = {}
        row = tuple(rep_modal_value(rep, lit.sub, prover, memo) for lit in literals)
        rows.append(row)
        if len(rows) >= 2:
            previous = rows[-2]
            for lit, before, after in zip(literals, previous, row):
                if before.is_decided() and before is not after:
                    raise InternalInvariantError(
                        f"decided literal {lit} changed value across iterations")
            if row == previous:
                break
        if len(theories) > len(literals) + 1:
            raise InternalInvariantError("fixpoint iteration exceeded its bound")
        values = dict(zip(literals, row))
        rep = ThreeFolTheory(tuple(
            replace_top_modal(f, lambda k: Const(values[k])) for f in theory))
        theories.append(rep)
    return RepFixpointRun(theory, tuple(theories), literals, tuple(rows),
                          prover.entailment_calls - start_calls)


def concretize(rep: ThreeFolTheory, alphabet: Alphabet) -> BeliefPair:
    """The belief pair a representation stands for: models of its weakest
    reading above, models of its strongest reading below."""
    upper = models(rep.upper_forms(), alphabet)
    lower = models(rep.lower_forms(), alphabet)
    if not lower.issubset(upper):
        raise InternalInvariantError(
            f"representation {rep} concretizes to an invalid pair")
    return BeliefPair(upper, lower)
