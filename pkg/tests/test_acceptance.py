"""Acceptance suite.

One test per criterion, each printing a single PASS/FAIL line (run with
``pytest -s`` to see them as they happen).  Corpus runs are memoized at
module level so the complexity-accounting criterion inspects exactly the
compact-engine runs performed by the engine-equivalence and
logic-programming criteria.
"""

import itertools
import random
import time

from aelfix import (Alphabet, And, Atom, BeliefPair, Const, Impl, Neg, Or,
                    WorldSet, ael1, ael2, complete_fixpoints, concretize,
                    derive, entails, evaluate, fitting_kunen, least_fixpoint,
                    least_fixpoint_rep, models, parse_program, parse_theory,
                    projection, satisfiable, skeptical_value, stable_models,
                    supported_models, theory_alphabet, theory_contains,
                    theory_size, to_clauses, top_modal_literals, well_founded,
                    ThreeValuedInterpretation, FALSE_C, TRUE_C)
from aelfix.values import TruthValue3 as TV

from aelfix import autoepistemic_models

from helpers import (brute_autoepistemic_models, comparable_pairs,
                     consistent_random_theory, random_formula, random_program,
                     random_stratified_theory, random_theory, sets_to_worldset,
                     worldset_to_sets)


def verdict(number: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} -- {detail}")
    assert ok, f"criterion {number}: {detail}"


# ------------------------------------------------------------------
# 1. Golden trace for the one-axiom theory
# ------------------------------------------------------------------

def test_criterion_1_golden_trace():
    started = time.monotonic()
    theory = parse_theory("K(p) -> q")
    alphabet = Alphabet(("p", "q"))
    trace = least_fixpoint(theory, alphabet)

    bottom = BeliefPair.bottom(alphabet)
    middle = BeliefPair(
        alphabet.all_worlds(),
        alphabet.world_set([alphabet.interpretation_of(["p", "q"]),
                            alphabet.interpretation_of(["q"])]))
    top = BeliefPair.complete(alphabet.all_worlds())
    trace_ok = trace.pairs == (bottom, middle, top)
    fixpoint_ok = derive(theory, trace.fixpoint) == trace.fixpoint

    found = [w for w, _ in autoepistemic_models(theory, alphabet)]
    unique_ok = found == [alphabet.all_worlds()]

    elapsed = time.monotonic() - started
    ok = trace_ok and fixpoint_ok and unique_ok and elapsed < 1.0
    verdict(1, ok, f"trace exact={trace_ok} fixpoint={fixpoint_ok} "
                   f"unique-model={unique_ok} elapsed={elapsed:.3f}s (<1s)")


# ------------------------------------------------------------------
# 2. Engine equivalence corpus (memoized; also feeds criterion 8)
# ------------------------------------------------------------------

_C2 = None


def criterion2_corpus():
    global _C2
    if _C2 is None:
        rng = random.Random(20260810)
        failures = []
        stats = []
        started = time.monotonic()
        for case in range(500):
            atoms = ["p", "q", "r"][:rng.randint(1, 3)]
            theory = random_theory(rng, atoms, max_formulas=5,
                                   depth=3, modal_budget=2)
            alphabet = Alphabet(tuple(atoms))
            trace = least_fixpoint(theory, alphabet)
            run = least_fixpoint_rep(theory)
            if concretize(run.fixpoint, alphabet) != trace.fixpoint:
                failures.append((case, "fixpoints differ"))
            for k, rep in enumerate(run.theories):
                expected = trace.pairs[min(k, len(trace.pairs) - 1)]
                if concretize(rep, alphabet) != expected:
                    failures.append((case, f"trace mismatch at step {k}"))
            stats.append((len(top_modal_literals(theory)), theory_size(theory),
                          run.iterations, run.entailment_calls))
        _C2 = (failures, stats, time.monotonic() - started)
    return _C2


def test_criterion_2_engine_equivalence():
    failures, stats, elapsed = criterion2_corpus()
    ok = not failures and elapsed < 60.0
    verdict(2, ok, f"500 theories, {len(failures)} mismatches, "
                   f"elapsed={elapsed:.1f}s (<60s)")


# ------------------------------------------------------------------
# 3. Model-equation vs complete-fixpoint equivalence (memoized for 4)
# ------------------------------------------------------------------

_C3 = None


def criterion3_corpus():
    global _C3
    if _C3 is None:
        rng = random.Random(19980711)
        failures = []
        corpus = []
        started = time.monotonic()
        for case in range(200):
            atoms = ["p", "q", "r"][:rng.randint(1, 3)]
            theory = random_theory(rng, atoms, max_formulas=4,
                                   depth=2, modal_budget=2)
            alphabet = Alphabet(tuple(atoms))
            oracle = {frozenset(w) for w in brute_autoepistemic_models(theory, atoms)}
            fixpoints = set()
            for mask in range(1 << alphabet.world_count):
                pair = BeliefPair.complete(WorldSet(alphabet, mask))
                if derive(theory, pair) == pair:
                    fixpoints.add(worldset_to_sets(pair.upper))
            if oracle != fixpoints:
                failures.append(case)
            corpus.append((theory, alphabet, oracle))
        _C3 = (failures, corpus, time.monotonic() - started)
    return _C3


def test_criterion_3_model_fixpoint_equivalence():
    failures, corpus, elapsed = criterion3_corpus()
    ok = not failures and elapsed < 120.0
    verdict(3, ok, f"200 theories x 256 candidate structures, "
                   f"{len(failures)} disagreements, elapsed={elapsed:.1f}s (<120s)")


# ------------------------------------------------------------------
# 4. Skeptical soundness over the same corpus
# ------------------------------------------------------------------

def test_criterion_4_skeptical_soundness():
    _, corpus, _ = criterion3_corpus()
    rng = random.Random(424242)
    started = time.monotonic()
    violations = 0
    checked = 0
    for theory, alphabet, oracle_models in corpus:
        model_sets = [sets_to_worldset(alphabet, w) for w in oracle_models]
        for _ in range(5):
            f = random_formula(rng, list(alphabet.atoms), depth=2, modal_budget=1)
            value = skeptical_value(theory, f, alphabet)
            checked += 1
            if value is TV.TRUE and not all(theory_contains(w, f) for w in model_sets):
                violations += 1
            if value is TV.FALSE and any(theory_contains(w, f) for w in model_sets):
                violations += 1
    elapsed = time.monotonic() - started
    verdict(4, violations == 0,
            f"{checked} sampled queries, {violations} violations, "
            f"elapsed={elapsed:.1f}s")


# ------------------------------------------------------------------
# 5. Monotonicity property suites
# ------------------------------------------------------------------

def test_criterion_5_monotonicity_suites():
    rng = random.Random(55555)
    started = time.monotonic()
    violations = 0
    for _ in range(10_000):
        atoms = ["p", "q", "r"][:rng.randint(1, 3)]
        alphabet = Alphabet(tuple(atoms))
        theory = consistent_random_theory(rng, atoms, max_formulas=3,
                                          depth=2, modal_budget=2)
        low, high = comparable_pairs(rng, alphabet)
        interp = alphabet.interpretation_of(
            [a for a in atoms if rng.random() < 0.5])
        f = random_formula(rng, atoms, depth=3, modal_budget=3)

        if not evaluate(low, interp, f).leq_knowledge(evaluate(high, interp, f)):
            violations += 1
        out_low, out_high = derive(theory, low), derive(theory, high)
        if not out_low.leq_p(out_high):
            violations += 1
        if not (out_low.lower.issubset(out_low.upper)
                and out_high.lower.issubset(out_high.upper)):
            violations += 1
        complete = BeliefPair.complete(
            WorldSet(alphabet, rng.getrandbits(alphabet.world_count)))
        if not derive(theory, complete).is_complete:
            violations += 1
    elapsed = time.monotonic() - started
    verdict(5, violations == 0,
            f"10000 instances, {violations} violations, elapsed={elapsed:.1f}s")


# ------------------------------------------------------------------
# 6. Stratified theories reach complete fixpoints
# ------------------------------------------------------------------

def test_criterion_6_stratified_completeness():
    rng = random.Random(66666)
    started = time.monotonic()
    incomplete = 0
    for _ in range(100):
        atoms = ["a", "b", "c", "d", "e"][:rng.randint(2, 5)]
        theory = random_stratified_theory(rng, atoms)
        trace = least_fixpoint(theory, Alphabet(tuple(atoms)))
        if not trace.fixpoint.is_complete:
            incomplete += 1
    elapsed = time.monotonic() - started
    verdict(6, incomplete == 0,
            f"100 stratified theories, {incomplete} incomplete fixpoints, "
            f"elapsed={elapsed:.1f}s")


# ------------------------------------------------------------------
# 7. Logic-program correspondences (memoized; also feeds criterion 8)
# ------------------------------------------------------------------

_C7 = None


def criterion7_corpus():
    global _C7
    if _C7 is None:
        rng = random.Random(77777)
        failures = []
        stats = []
        started = time.monotonic()

        programs = [parse_program("p :- p."), parse_program("p :- not p.")]
        programs += [random_program(rng, ["a", "b", "c", "d", "e", "f", "g", "h"]
                                    [:rng.randint(1, 8)], max_clauses=12)
                     for _ in range(300)]

        for case, program in enumerate(programs):
            for embed, least_oracle, complete_oracle in (
                    (ael1, well_founded, stable_models),
                    (ael2, fitting_kunen, supported_models)):
                theory = embed(program)
                alphabet = theory_alphabet(theory, extra=program.atoms)
                trace = least_fixpoint(theory, alphabet)
                if projection(trace.fixpoint, program.atoms) != least_oracle(program):
                    failures.append((case, embed.__name__, "least fixpoint"))
                got = {projection(p, program.atoms)
                       for p in complete_fixpoints(theory, alphabet)}
                expected = {ThreeValuedInterpretation.from_true_atoms(
                                program.atoms, m.true_atoms())
                            for m in complete_oracle(program)}
                if got != expected:
                    failures.append((case, embed.__name__, "complete fixpoints"))
                run = least_fixpoint_rep(theory)
                if concretize(run.fixpoint, alphabet) != trace.fixpoint:
                    failures.append((case, embed.__name__, "engine disagreement"))
                stats.append((len(top_modal_literals(theory)), theory_size(theory),
                              run.iterations, run.entailment_calls))

        # The two differentiating fixtures, pinned to hand-derived values.
        loop, negloop = programs[0], programs[1]
        if well_founded(loop) != ThreeValuedInterpretation(("p",), (TV.FALSE,)):
            failures.append(("fixture", "p :- p.", "wfs"))
        if fitting_kunen(loop) != ThreeValuedInterpretation(("p",), (TV.UNKNOWN,)):
            failures.append(("fixture", "p :- p.", "fk"))
        if well_founded(negloop) != ThreeValuedInterpretation(("p",), (TV.UNKNOWN,)):
            failures.append(("fixture", "p :- not p.", "wfs"))
        if fitting_kunen(negloop) != ThreeValuedInterpretation(("p",), (TV.UNKNOWN,)):
            failures.append(("fixture", "p :- not p.", "fk"))

        _C7 = (failures, stats, time.monotonic() - started)
    return _C7


def test_criterion_7_lp_correspondences():
    failures, stats, elapsed = criterion7_corpus()
    ok = not failures and elapsed < 300.0
    verdict(7, ok, f"302 programs x 2 embeddings, {len(failures)} mismatches, "
                   f"elapsed={elapsed:.1f}s (<300s)")


# ------------------------------------------------------------------
# 8. Complexity accounting over the runs of criteria 2 and 7
# ------------------------------------------------------------------

def test_criterion_8_complexity_accounting():
    _, stats2, _ = criterion2_corpus()
    _, stats7, _ = criterion7_corpus()
    stats = stats2 + stats7
    iteration_violations = 0
    call_violations = 0
    max_ratio = 0.0
    for literal_count, size, iterations, calls in stats:
        if iterations > literal_count + 1:
            iteration_violations += 1
        budget = 2 * (literal_count + 1) * literal_count * size
        if calls > budget:
            call_violations += 1
        if budget:
            max_ratio = max(max_ratio, calls / budget)
    ok = iteration_violations == 0 and call_violations == 0
    verdict(8, ok, f"{len(stats)} compact runs, "
                   f"{iteration_violations} iteration and {call_violations} call "
                   f"budget violations, max call ratio {max_ratio:.3f}")


# ------------------------------------------------------------------
# 9. Prover against the truth-table oracle
# ------------------------------------------------------------------

def _table(formula, atoms):
    full = (1 << (1 << len(atoms))) - 1
    if isinstance(formula, Atom):
        j = atoms.index(formula.name)
        return sum(1 << i for i in range(1 << len(atoms)) if i >> j & 1)
    if isinstance(formula, Const):
        return full if formula.value is TV.TRUE else 0
    if isinstance(formula, Neg):
        return full ^ _table(formula.sub, atoms)
    if isinstance(formula, And):
        return _table(formula.left, atoms) & _table(formula.right, atoms)
    if isinstance(formula, Or):
        return _table(formula.left, atoms) | _table(formula.right, atoms)
    if isinstance(formula, Impl):
        return (full ^ _table(formula.antecedent, atoms)) | _table(formula.consequent, atoms)
    raise TypeError(formula)


def _enumerate(leaves, max_connectives):
    by_count = [list(leaves)]
    for c in range(1, max_connectives + 1):
        level = [Neg(f) for f in by_count[c - 1]]
        for i in range(c):
            for left in by_count[i]:
                for right in by_count[c - 1 - i]:
                    level += [And(left, right), Or(left, right), Impl(left, right)]
        by_count.append(level)
    return [f for level in by_count for f in level]


def test_criterion_9_prover_correctness():
    started = time.monotonic()
    disagreements = 0
    checked = 0

    # Exhaustive: every AST with up to 2 connectives over 4 atoms + constants.
    atoms4 = ["a", "b", "c", "d"]
    full4 = (1 << 16) - 1
    for f in _enumerate([Atom(x) for x in atoms4] + [TRUE_C, FALSE_C], 2):
        t = _table(f, atoms4)
        checked += 1
        if satisfiable(to_clauses(f)) is not (t != 0):
            disagreements += 1
        if entails([], f) is not (t == full4):
            disagreements += 1

    # Exhaustive: every AST with up to 4 connectives (depth up to 4) over 2 atoms.
    atoms2 = ["a", "b"]
    full2 = (1 << 4) - 1
    for f in _enumerate([Atom(x) for x in atoms2], 4):
        t = _table(f, atoms2)
        checked += 1
        if satisfiable(to_clauses(f)) is not (t != 0):
            disagreements += 1
        if entails([], f) is not (t == full2):
            disagreements += 1

    # Exhaustive entailment pairs over the small pool.
    pool = _enumerate([Atom(x) for x in atoms2] + [TRUE_C, FALSE_C], 1)
    for premise, conclusion in itertools.product(pool, pool):
        checked += 1
        expected = _table(premise, atoms2) & ~_table(conclusion, atoms2) == 0
        if entails([premise], conclusion) is not expected:
            disagreements += 1

    # Randomized depth-4 sweep over the full 4-atom alphabet.
    rng = random.Random(99999)
    alphabet4 = Alphabet(tuple(atoms4))
    for _ in range(2_000):
        f = random_formula(rng, atoms4, depth=4, modal_budget=0)
        t = _table(f, atoms4)
        checked += 1
        if satisfiable(to_clauses(f)) is not (t != 0):
            disagreements += 1
        if entails([], f) is not (t == full4):
            disagreements += 1
        if models([f], alphabet4).mask != t:
            disagreements += 1

    elapsed = time.monotonic() - started
    verdict(9, disagreements == 0,
            f"{checked} formulas/pairs, {disagreements} disagreements, "
            f"elapsed={elapsed:.1f}s")
