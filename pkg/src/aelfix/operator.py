"""The derivation operator on belief pairs and its least fixpoint.

One derivation step keeps, in the upper component, the worlds that do not
falsify any axiom and, in the lower component, the worlds that verify all
of them.  The step is monotone in the precision ordering, so iterating
from the least pair converges; complete fixpoints coincide with the
autoepistemic models and the least fixpoint approximates skeptical
reasoning over all of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import CapExceededError, InternalInvariantError
from .semantics import (Alphabet, BeliefPair, WorldSet, classical_mask,
                        ensure_explicit_cap, formula_masks, modal_value)
from .syntax import (Const, Formula, K, as_theory, replace_top_modal,
                     theory_atoms, top_modal_literals)
from .values import TruthValue3

ENUMERATION_ATOM_CAP = 4  # candidate structures grow as 2^(2^n)


def theory_alphabet(formulas: Iterable[Formula],
                    extra: Iterable[str] = ()) -> Alphabet:
    """Alphabet of all atoms occurring in the theory, in occurrence order."""
    names = dict.fromkeys(theory_atoms(as_theory(formulas)))
    for name in extra:
        names.setdefault(name)
    return Alphabet(tuple(names))


def derive(theory: Formula | Iterable[Formula], pair: BeliefPair) -> BeliefPair:
    """One derivation step: (worlds not falsifying, worlds verifying)."""
    alphabet = pair.alphabet
    memo: dict = {}
    upper = lower = alphabet.full_mask
    for f in as_theory(theory):
        t_mask, f_mask = formula_masks(pair, f, memo)
        upper &= ~f_mask
        lower &= t_mask
    return BeliefPair(WorldSet(alphabet, upper & alphabet.full_mask),
                      WorldSet(alphabet, lower))


@dataclass(frozen=True)
class FixpointTrace:
    """The iteration record of the least-fixpoint computation.

    ``pairs`` runs from the least belief pair to the fixpoint and is
    strictly increasing in precision; ``literal_values`` holds, for each
    pair, the truth values of the unnested belief literals of the theory,
    and ``newly_decided`` the literals that turned two-valued at each step.
    """

    theory: tuple[Formula, ...]
    pairs: tuple[BeliefPair, ...]
    literals: tuple[K, ...]
    literal_values: tuple[tuple[TruthValue3, ...], ...]
    newly_decided: tuple[frozenset[K], ...]

    @property
    def fixpoint(self) -> BeliefPair:
        return self.pairs[-1]

    @property
    def iterations(self) -> int:
        return len(self.pairs) - 1

    @property
    def alphabet(self) -> Alphabet:
        return self.fixpoint.alphabet


def least_fixpoint(theory: Formula | Iterable[Formula],
                   alphabet: Alphabet | None = None,
                   cap: int | None = None) -> FixpointTrace:
    """Iterate the derivation step from the least belief pair until stable."""
    theory = as_theory(theory)
    if alphabet is None:
        alphabet = theory_alphabet(theory)
    ensure_explicit_cap(alphabet, cap)
    literals = top_modal_literals(theory)

    def values_at(pair: BeliefPair) -> tuple[TruthValue3, ...]:
        memo: dict = {}
        return tuple(modal_value(pair, lit.sub, memo) for lit in literals)

    pair = BeliefPair.bottom(alphabet)
    pairs = [pair]
    rows = [values_at(pair)]
    newly: list[frozenset[K]] = []
    while True:
        nxt = derive(theory, pair)
        if nxt == pair:
            break
        if not pair.leq_p(nxt):
            raise InternalInvariantError("derivation step left the increasing chain")
        row = values_at(nxt)
        previous = rows[-1]
        for lit, before, after in zip(literals, previous, row):
            if before.is_decided() and before is not after:
                raise InternalInvariantError(
                    f"decided literal {lit} changed value across iterations")
        newly.append(frozenset(
            lit for lit, before, after in zip(literals, previous, row)
            if not before.is_decided() and after.is_decided()))
        pairs.append(nxt)
        rows.append(row)
        pair = nxt
        if len(pairs) > len(literals) + 2:
            raise InternalInvariantError("fixpoint iteration exceeded its bound")
    return FixpointTrace(theory, tuple(pairs), literals, tuple(rows), tuple(newly))


def is_autoepistemic_model(theory: Formula | Iterable[Formula],
                           worlds: WorldSet) -> bool:
    """Check the defining equation: the structure equals the set of worlds
    satisfying the theory under it."""
    memo: dict = {}
    satisfied = worlds.alphabet.full_mask
    for f in as_theory(theory):
        satisfied &= classical_mask(worlds, f, memo)
    return satisfied == worlds.mask


def autoepistemic_models(theory: Formula | Iterable[Formula],
                         alphabet: Alphabet | None = None,
                         cap: int = ENUMERATION_ATOM_CAP,
                         ) -> list[tuple[WorldSet, bool]]:
    """All structures satisfying the model equation, by brute force.

    Each result carries the (always matching) flag telling whether the
    corresponding complete pair is a fixpoint of the derivation step; the
    agreement of the two characterizations is asserted.
    """
    theory = as_theory(theory)
    if alphabet is None:
        alphabet = theory_alphabet(theory)
    if len(alphabet) > cap:
        raise CapExceededError(
            f"{len(alphabet)} atoms exceed the enumeration cap of {cap}")
    found: list[tuple[WorldSet, bool]] = []
    for mask in range(1 << alphabet.world_count):
        worlds = WorldSet(alphabet, mask)
        is_model = is_autoepistemic_model(theory, worlds)
        complete = BeliefPair.complete(worlds)
        is_fixpoint = derive(theory, complete) == complete
        if is_model is not is_fixpoint:
            raise InternalInvariantError(
                "model equation and complete-fixpoint check disagree "
                f"on W={worlds}")
        if is_model:
            found.append((worlds, is_fixpoint))
    return found


def complete_fixpoints(theory: Formula | Iterable[Formula],
                       alphabet: Alphabet | None = None,
                       max_literals: int = 16) -> list[BeliefPair]:
    """All complete fixpoints of the derivation step.

    Guess a two-valued assignment for every unnested belief literal,
    reduce the theory to an objective one, take its models as the
    candidate structure and keep it when the guess reproduces itself.
    Runs in 2^literals instead of 2^(2^atoms).
    """
    theory = as_theory(theory)
    if alphabet is None:
        alphabet = theory_alphabet(theory)
    ensure_explicit_cap(alphabet)
    literals = top_modal_literals(theory)
    if len(literals) > max_literals:
        raise CapExceededError(
            f"{len(literals)} belief literals exceed the cap of {max_literals}")

    found: list[BeliefPair] = []
    seen: set[int] = set()
    for bits in range(1 << len(literals)):
        guess = {lit: TruthValue3.from_bool(bool(bits >> i & 1))
                 for i, lit in enumerate(literals)}
        reduced = tuple(replace_top_modal(f, lambda k: Const(guess[k]))
                        for f in theory)
        worlds_mask = alphabet.full_mask
        memo: dict = {}
        dummy = WorldSet(alphabet, 0)  # reduced theory is objective
        for f in reduced:
            worlds_mask &= classical_mask(dummy, f, memo)
        worlds = WorldSet(alphabet, worlds_mask)
        check: dict = {}
        if all(modal_value(BeliefPair.complete(worlds), lit.sub, check) is value
               for lit, value in guess.items()):
            if worlds_mask not in seen:
                seen.add(worlds_mask)
                pair = BeliefPair.complete(worlds)
                if derive(theory, pair) != pair:
                    raise InternalInvariantError(
                        "vector-consistent structure is not a fixpoint")
                found.append(pair)
    found.sort(key=lambda p: p.upper.mask)
    return found


def skeptical_value(theory: Formula | Iterable[Formula], formula: Formula,
                    alphabet: Alphabet | None = None) -> TruthValue3:
    """The least fixpoint's verdict on believing ``formula``.

    True guarantees membership in every consistent stable expansion of the
    theory, false guarantees membership in none; unknown makes no claim.
    """
    theory = as_theory(theory)
    if alphabet is None:
        alphabet = theory_alphabet(theory, extra=theory_atoms((formula,)))
    trace = least_fixpoint(theory, alphabet)
    return modal_value(trace.fixpoint, formula)
