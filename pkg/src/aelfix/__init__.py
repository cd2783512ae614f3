"""Three-valued fixpoint reasoning engine for propositional autoepistemic logic.

The package provides belief-pair evaluation, the derivation operator with
its least fixpoint, an entailment-backed compact engine that scales past
explicit world sets, brute-force autoepistemic model enumeration, and
logic-program embeddings validated against independent oracles.
"""

from .effective import (RepFixpointRun, ThreeFolTheory, concretize, derive_rep,
                        instantiate, instantiate_pair, least_fixpoint_rep,
                        rep_modal_value)
from .errors import (CapExceededError, InternalInvariantError, ParseError,
                     UndeclaredAtomError)
from .lp import (ThreeValuedInterpretation, ael1, ael2, fitting_kunen,
                 program_alphabet, projection, stable_models, supported_models,
                 three_valued_stable_models, three_valued_supported_models,
                 well_founded)
from .operator import (FixpointTrace, autoepistemic_models, complete_fixpoints,
                       derive, is_autoepistemic_model, least_fixpoint,
                       skeptical_value, theory_alphabet)
from .prover import (ClauseSet, Prover, default_prover, entails, models,
                     satisfiable, to_clauses, to_dimacs)
from .semantics import (Alphabet, BeliefPair, Interpretation, WorldSet,
                        evaluate, evaluate_classical, leq_p, modal_value,
                        theory_contains)
from .syntax import (And, Atom, Clause, Const, Formula, Impl, K, LogicProgram,
                     Neg, Or, FALSE_C, TRUE_C, UNKNOWN_C, as_theory, atoms_of,
                     format_modal, is_objective, lower_form, modal_depth,
                     node_count, parse_modal, parse_program, parse_theory,
                     replace_top_modal, simplify, theory_atoms, theory_size,
                     top_modal_literals, upper_form)
from .values import TruthValue3

__version__ = "0.1.0"
