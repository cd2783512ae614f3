"""Shared generators and independent oracles for the test suite.

The oracles here are deliberately naive set-and-dict implementations with
no code shared with the engine's bit-mask evaluation, so agreement between
the two is meaningful evidence.
"""

from __future__ import annotations

import random
from typing import Iterable

from aelfix import (Alphabet, And, Atom, BeliefPair, Clause, Const, Formula,
                    Impl, K, LogicProgram, Neg, Or, WorldSet, as_theory,
                    replace_top_modal, satisfiable, to_clauses)
from aelfix.values import TruthValue3

TV = TruthValue3


# ------------------------------------------------------------------
# Independent evaluators (interpretations as frozensets of true atoms)
# ------------------------------------------------------------------

def all_interps(atoms: Iterable[str]) -> list[frozenset[str]]:
    atoms = list(atoms)
    out = [frozenset()]
    for a in atoms:
        out = out + [i | {a} for i in out]
    return out


def moore_eval(worlds: frozenset[frozenset[str]], interp: frozenset[str],
               formula: Formula) -> bool:
    """Two-valued possible-world evaluation, quantifying belief over all
    member worlds."""
    if isinstance(f := formula, Atom):
        return f.name in interp
    if isinstance(f, Const):
        if f.value is TV.UNKNOWN:
            raise ValueError("$u in a two-valued context")
        return f.value is TV.TRUE
    if isinstance(f, Neg):
        return not moore_eval(worlds, interp, f.sub)
    if isinstance(f, And):
        return moore_eval(worlds, interp, f.left) and moore_eval(worlds, interp, f.right)
    if isinstance(f, Or):
        return moore_eval(worlds, interp, f.left) or moore_eval(worlds, interp, f.right)
    if isinstance(f, Impl):
        return (not moore_eval(worlds, interp, f.antecedent)
                or moore_eval(worlds, interp, f.consequent))
    if isinstance(f, K):
        return all(moore_eval(worlds, j, f.sub) for j in worlds)
    raise TypeError(formula)


def kleene_eval(upper: frozenset[frozenset[str]], lower: frozenset[frozenset[str]],
                interp: frozenset[str], formula: Formula) -> TruthValue3:
    """Three-valued evaluation under a belief pair given as two world sets."""
    if isinstance(f := formula, Atom):
        return TV.from_bool(f.name in interp)
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Neg):
        return kleene_eval(upper, lower, interp, f.sub).inverse()
    if isinstance(f, And):
        return min(kleene_eval(upper, lower, interp, f.left),
                   kleene_eval(upper, lower, interp, f.right))
    if isinstance(f, Or):
        return max(kleene_eval(upper, lower, interp, f.left),
                   kleene_eval(upper, lower, interp, f.right))
    if isinstance(f, Impl):
        return max(kleene_eval(upper, lower, interp, f.consequent),
                   kleene_eval(upper, lower, interp, f.antecedent).inverse())
    if isinstance(f, K):
        if all(kleene_eval(upper, lower, j, f.sub) is TV.TRUE for j in upper):
            return TV.TRUE
        if any(kleene_eval(upper, lower, j, f.sub) is TV.FALSE for j in lower):
            return TV.FALSE
        return TV.UNKNOWN
    raise TypeError(formula)


def brute_autoepistemic_models(theory: Iterable[Formula],
                               atoms: Iterable[str]) -> list[frozenset[frozenset[str]]]:
    """All structures satisfying the model equation, via the naive
    evaluator: W = {I : every axiom holds at (W, I)}."""
    theory = as_theory(theory)
    interps = all_interps(atoms)
    found = []
    for bits in range(1 << len(interps)):
        worlds = frozenset(i for j, i in enumerate(interps) if bits >> j & 1)
        satisfied = frozenset(
            i for i in interps
            if all(moore_eval(worlds, i, f) for f in theory))
        if satisfied == worlds:
            found.append(worlds)
    return found


# ------------------------------------------------------------------
# Conversions between oracle and engine representations
# ------------------------------------------------------------------

def worldset_to_sets(ws: WorldSet) -> frozenset[frozenset[str]]:
    return frozenset(i.true_atoms() for i in ws)


def sets_to_worldset(alphabet: Alphabet,
                     worlds: Iterable[frozenset[str]]) -> WorldSet:
    return alphabet.world_set([alphabet.interpretation_of(w) for w in worlds])


def pair_to_sets(pair: BeliefPair) -> tuple[frozenset, frozenset]:
    return worldset_to_sets(pair.upper), worldset_to_sets(pair.lower)


# ------------------------------------------------------------------
# Random generators
# ------------------------------------------------------------------

def random_formula(rng: random.Random, atoms: list[str], depth: int,
                   modal_budget: int, allow_unknown: bool = False) -> Formula:
    leaf_choices = ["atom"] * 6 + ["const"]
    if depth <= 0:
        kind = rng.choice(leaf_choices)
    else:
        kinds = ["atom", "const", "neg", "and", "or", "impl"]
        if modal_budget > 0:
            kinds += ["k", "k"]
        kind = rng.choice(kinds)
    if kind == "atom":
        return Atom(rng.choice(atoms))
    if kind == "const":
        pool = [TV.TRUE, TV.FALSE] + ([TV.UNKNOWN] if allow_unknown else [])
        return Const(rng.choice(pool))
    if kind == "neg":
        return Neg(random_formula(rng, atoms, depth - 1, modal_budget, allow_unknown))
    if kind == "k":
        return K(random_formula(rng, atoms, depth - 1, modal_budget - 1, allow_unknown))
    left = random_formula(rng, atoms, depth - 1, modal_budget, allow_unknown)
    right = random_formula(rng, atoms, depth - 1, modal_budget, allow_unknown)
    return {"and": And, "or": Or, "impl": Impl}[kind](left, right)


def random_theory(rng: random.Random, atoms: list[str], max_formulas: int,
                  depth: int = 2, modal_budget: int = 2) -> tuple[Formula, ...]:
    count = rng.randint(1, max_formulas)
    return as_theory(random_formula(rng, atoms, depth, modal_budget)
                     for _ in range(count))


def propositionally_consistent(theory: Iterable[Formula]) -> bool:
    """Satisfiability with every unnested belief literal read as a fresh
    propositional atom."""
    fresh: dict[K, Atom] = {}

    def skeleton(f: Formula) -> Formula:
        return replace_top_modal(
            f, lambda k: fresh.setdefault(k, Atom(f"kaux{len(fresh)}")))

    return satisfiable(to_clauses([skeleton(f) for f in as_theory(theory)]))


def consistent_random_theory(rng: random.Random, atoms: list[str],
                             max_formulas: int, depth: int = 2,
                             modal_budget: int = 2) -> tuple[Formula, ...]:
    while True:
        theory = random_theory(rng, atoms, max_formulas, depth, modal_budget)
        if propositionally_consistent(theory):
            return theory


def random_pair(rng: random.Random, alphabet: Alphabet) -> BeliefPair:
    wc = alphabet.world_count
    upper = rng.getrandbits(wc)
    lower = upper & rng.getrandbits(wc)
    return BeliefPair(WorldSet(alphabet, upper), WorldSet(alphabet, lower))


def comparable_pairs(rng: random.Random,
                     alphabet: Alphabet) -> tuple[BeliefPair, BeliefPair]:
    """A random pair (B1, B2) with B1 below B2 in the precision order."""
    wc = alphabet.world_count
    s1 = rng.getrandbits(wc)
    s2 = s1 | rng.getrandbits(wc)
    p2 = s2 | rng.getrandbits(wc)
    p1 = p2 | rng.getrandbits(wc)
    b1 = BeliefPair(WorldSet(alphabet, p1), WorldSet(alphabet, s1))
    b2 = BeliefPair(WorldSet(alphabet, p2), WorldSet(alphabet, s2))
    assert b1.leq_p(b2)
    return b1, b2


def random_program(rng: random.Random, atoms: list[str],
                   max_clauses: int) -> LogicProgram:
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        head = rng.choice(atoms)
        pos = rng.sample(atoms, rng.randint(0, min(2, len(atoms))))
        rest = [a for a in atoms if a not in pos]
        neg = rng.sample(rest, rng.randint(0, min(2, len(rest)))) if rest else []
        clauses.append(Clause(head, tuple(pos), tuple(neg)))
    return LogicProgram(tuple(clauses))


def random_stratified_theory(rng: random.Random,
                             atoms: list[str]) -> tuple[Formula, ...]:
    """Layered theories: belief literals only mention strictly earlier
    atoms, objective bodies only earlier atoms, heads are positive atoms.

    Every such theory is propositionally consistent (the all-true
    interpretation satisfies each implication-with-atom-head).
    """
    formulas: list[Formula] = []
    for i, head in enumerate(atoms):
        if rng.random() < 0.25:
            continue  # leave the atom undefined
        for _ in range(rng.randint(1, 2)):
            parts: list[Formula] = []
            earlier = atoms[:i]
            for b in rng.sample(earlier, min(len(earlier), rng.randint(0, 2))):
                parts.append(Atom(b))
            if earlier:
                for _ in range(rng.randint(0, 2)):
                    body = random_formula(rng, earlier, depth=1, modal_budget=0)
                    lit: Formula = K(body)
                    if rng.random() < 0.5:
                        lit = Neg(lit)
                    parts.append(lit)
            antecedent: Formula = Const(TV.TRUE)
            for p in parts:
                antecedent = And(antecedent, p) if antecedent != Const(TV.TRUE) else p
            formulas.append(Impl(antecedent, Atom(head)))
    if not formulas:
        formulas.append(Atom(atoms[0]))
    return as_theory(formulas)
