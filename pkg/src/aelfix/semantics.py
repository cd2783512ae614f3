"""Interpretations, possible-world structures, belief pairs, and evaluation.

Sets of interpretations are bit masks over the 2^n worlds of an n-atom
alphabet: world ``i`` has atom ``j`` true iff bit ``j`` of ``i`` is set,
and a world set is the integer whose bit ``i`` marks membership of world
``i``.  Kleene evaluation then runs over all worlds at once with a handful
of integer operations per formula node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapExceededError, UndeclaredAtomError
from .syntax import And, Atom, Const, Formula, Impl, K, Neg, Or
from .values import TruthValue3

# Explicit world sets get materialized as 2^n-bit masks; beyond this many
# atoms the compact representation engine is the intended path.
EXPLICIT_ATOM_CAP = 16

_MASK_CACHE: dict[tuple[str, ...], tuple[int, ...]] = {}


def _atom_masks(atoms: tuple[str, ...]) -> tuple[int, ...]:
    masks = _MASK_CACHE.get(atoms)
    if masks is None:
        built: list[int] = []
        size = 1
        for _ in atoms:
            # Doubling the world space: existing patterns repeat, the new
            # atom is true exactly on the upper half.
            built = [m | (m << size) for m in built]
            built.append(((1 << size) - 1) << size)
            size <<= 1
        masks = _MASK_CACHE[atoms] = tuple(built)
    return masks


@dataclass(frozen=True, slots=True)
class Alphabet:
    """A declared, ordered, finite set of atom names."""

    atoms: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError("duplicate atoms in alphabet")

    def __len__(self) -> int:
        return len(self.atoms)

    def __contains__(self, name: str) -> bool:
        return name in self.atoms

    @property
    def world_count(self) -> int:
        return 1 << len(self.atoms)

    @property
    def full_mask(self) -> int:
        return (1 << self.world_count) - 1

    def index(self, name: str) -> int:
        try:
            return self.atoms.index(name)
        except ValueError:
            raise UndeclaredAtomError(name) from None

    def atom_mask(self, name: str) -> int:
        return _atom_masks(self.atoms)[self.index(name)]

    def interpretation_of(self, true_atoms: Iterable[str]) -> "Interpretation":
        index = 0
        for name in true_atoms:
            index |= 1 << self.index(name)
        return Interpretation(self, index)

    def interpretations(self) -> Iterator["Interpretation"]:
        for index in range(self.world_count):
            yield Interpretation(self, index)

    def all_worlds(self) -> "WorldSet":
        return WorldSet(self, self.full_mask)

    def no_worlds(self) -> "WorldSet":
        return WorldSet(self, 0)

    def world_set(self, interps: Iterable["Interpretation"]) -> "WorldSet":
        mask = 0
        for i in interps:
            if i.alphabet != self:
                raise ValueError("interpretation from a different alphabet")
            mask |= 1 << i.index
        return WorldSet(self, mask)


def ensure_explicit_cap(alphabet: Alphabet, cap: int | None = None) -> None:
    limit = EXPLICIT_ATOM_CAP if cap is None else cap
    if len(alphabet) > limit:
        raise CapExceededError(
            f"{len(alphabet)} atoms exceed the explicit-set cap of {limit}")


@dataclass(frozen=True, slots=True)
class Interpretation:
    """A total two-valued assignment, packed into the bits of ``index``."""

    alphabet: Alphabet
    index: int

    def value(self, name: str) -> bool:
        return bool(self.index >> self.alphabet.index(name) & 1)

    def true_atoms(self) -> frozenset[str]:
        return frozenset(a for j, a in enumerate(self.alphabet.atoms)
                         if self.index >> j & 1)

    def __str__(self) -> str:
        if not self.alphabet.atoms:
            return "·"
        return "".join(a if self.index >> j & 1 else "¬" + a
                       for j, a in enumerate(self.alphabet.atoms))


@dataclass(frozen=True, slots=True)
class WorldSet:
    """A set of interpretations over one alphabet, stored as a bit mask."""

    alphabet: Alphabet
    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask <= self.alphabet.full_mask:
            raise ValueError("world-set mask out of range for alphabet")

    def __contains__(self, interp: Interpretation) -> bool:
        return interp.alphabet == self.alphabet and bool(self.mask >> interp.index & 1)

    def __iter__(self) -> Iterator[Interpretation]:
        for index in range(self.alphabet.world_count):
            if self.mask >> index & 1:
                yield Interpretation(self.alphabet, index)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def _check(self, other: "WorldSet") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError("world sets over different alphabets")

    def __and__(self, other: "WorldSet") -> "WorldSet":
        self._check(other)
        return WorldSet(self.alphabet, self.mask & other.mask)

    def __or__(self, other: "WorldSet") -> "WorldSet":
        self._check(other)
        return WorldSet(self.alphabet, self.mask | other.mask)

    def __sub__(self, other: "WorldSet") -> "WorldSet":
        self._check(other)
        return WorldSet(self.alphabet, self.mask & ~other.mask)

    def complement(self) -> "WorldSet":
        return WorldSet(self.alphabet, self.alphabet.full_mask & ~self.mask)

    def issubset(self, other: "WorldSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __str__(self) -> str:
        return "{" + ", ".join(str(i) for i in self) + "}"


@dataclass(frozen=True, slots=True)
class BeliefPair:
    """An upper and a lower approximation of a possible-world structure.

    ``upper`` holds the worlds not yet ruled out, ``lower`` the worlds
    known to belong; ``lower`` is always a subset of ``upper``.
    """

    upper: WorldSet
    lower: WorldSet

    def __post_init__(self) -> None:
        if self.upper.alphabet != self.lower.alphabet:
            raise ValueError("belief pair components over different alphabets")
        if not self.lower.issubset(self.upper):
            raise ValueError("lower component must be a subset of the upper one")

    @classmethod
    def bottom(cls, alphabet: Alphabet) -> "BeliefPair":
        """The least informative pair: every world possible, none known."""
        return cls(alphabet.all_worlds(), alphabet.no_worlds())

    @classmethod
    def complete(cls, worlds: WorldSet) -> "BeliefPair":
        return cls(worlds, worlds)

    @property
    def alphabet(self) -> Alphabet:
        return self.upper.alphabet

    @property
    def is_complete(self) -> bool:
        return self.upper.mask == self.lower.mask

    def leq_p(self, other: "BeliefPair") -> bool:
        """Precision ordering: the upper set shrinks, the lower one grows."""
        if self.alphabet != other.alphabet:
            raise ValueError("belief pairs over different alphabets")
        return (other.upper.mask & ~self.upper.mask == 0
                and self.lower.mask & ~other.lower.mask == 0)

    def __str__(self) -> str:
        return f"P={self.upper} S={self.lower}"


def leq_p(first: BeliefPair, second: BeliefPair) -> bool:
    return first.leq_p(second)


# ------------------------------------------------------------------
# Three-valued evaluation under a belief pair
# ------------------------------------------------------------------

def formula_masks(pair: BeliefPair, formula: Formula,
                  memo: dict | None = None) -> tuple[int, int]:
    """Evaluate ``formula`` in every world at once.

    Returns the mask of worlds where it is true and the mask where it is
    false; unknown is the remainder.  Belief subformulas contribute a
    world-independent constant obtained from ``modal_value``.
    """
    if memo is None:
        memo = {}
    key = ("masks", formula)
    cached = memo.get(key)
    if cached is not None:
        return cached

    alphabet = pair.alphabet
    full = alphabet.full_mask
    if isinstance(f := formula, Atom):
        t = alphabet.atom_mask(f.name)
        result = (t, full ^ t)
    elif isinstance(f, Const):
        result = {TruthValue3.TRUE: (full, 0),
                  TruthValue3.FALSE: (0, full),
                  TruthValue3.UNKNOWN: (0, 0)}[f.value]
    elif isinstance(f, Neg):
        t, fa = formula_masks(pair, f.sub, memo)
        result = (fa, t)
    elif isinstance(f, And):
        t1, f1 = formula_masks(pair, f.left, memo)
        t2, f2 = formula_masks(pair, f.right, memo)
        result = (t1 & t2, f1 | f2)
    elif isinstance(f, Or):
        t1, f1 = formula_masks(pair, f.left, memo)
        t2, f2 = formula_masks(pair, f.right, memo)
        result = (t1 | t2, f1 & f2)
    elif isinstance(f, Impl):
        # max(consequent, inverse(antecedent)), the Kleene implication
        ta, fa = formula_masks(pair, f.antecedent, memo)
        tc, fc = formula_masks(pair, f.consequent, memo)
        result = (tc | fa, fc & ta)
    elif isinstance(f, K):
        v = modal_value(pair, f.sub, memo)
        result = {TruthValue3.TRUE: (full, 0),
                  TruthValue3.FALSE: (0, full),
                  TruthValue3.UNKNOWN: (0, 0)}[v]
    else:
        raise TypeError(f"not a formula: {formula!r}")

    memo[key] = result
    return result


def modal_value(pair: BeliefPair, formula: Formula,
                memo: dict | None = None) -> TruthValue3:
    """Truth value of believing ``formula`` under ``pair``.

    True when the formula holds in every world still considered possible,
    false when some world known to belong refutes it, unknown otherwise.
    Independent of any single interpretation.
    """
    if memo is None:
        memo = {}
    key = ("modal", formula)
    cached = memo.get(key)
    if cached is not None:
        return cached

    t_mask, f_mask = formula_masks(pair, formula, memo)
    if pair.upper.mask & ~t_mask == 0:
        value = TruthValue3.TRUE
    elif pair.lower.mask & f_mask != 0:
        value = TruthValue3.FALSE
    else:
        value = TruthValue3.UNKNOWN

    memo[key] = value
    return value


def evaluate(pair: BeliefPair, interp: Interpretation, formula: Formula) -> TruthValue3:
    """Three-valued truth of ``formula`` at ``interp`` under ``pair``."""
    if interp.alphabet != pair.alphabet:
        raise ValueError("interpretation and belief pair over different alphabets")
    t_mask, f_mask = formula_masks(pair, formula)
    bit = 1 << interp.index
    if t_mask & bit:
        return TruthValue3.TRUE
    if f_mask & bit:
        return TruthValue3.FALSE
    return TruthValue3.UNKNOWN


# ------------------------------------------------------------------
# Two-valued evaluation over a single possible-world structure
# ------------------------------------------------------------------

def classical_mask(worlds: WorldSet, formula: Formula,
                   memo: dict | None = None) -> int:
    """Mask of worlds satisfying ``formula`` under the two-valued reading,
    with belief quantifying universally over ``worlds``."""
    if memo is None:
        memo = {}
    cached = memo.get(formula)
    if cached is not None:
        return cached

    alphabet = worlds.alphabet
    full = alphabet.full_mask
    if isinstance(f := formula, Atom):
        result = alphabet.atom_mask(f.name)
    elif isinstance(f, Const):
        if f.value is TruthValue3.UNKNOWN:
            raise ValueError("$u has no two-valued reading")
        result = full if f.value is TruthValue3.TRUE else 0
    elif isinstance(f, Neg):
        result = full ^ classical_mask(worlds, f.sub, memo)
    elif isinstance(f, And):
        result = classical_mask(worlds, f.left, memo) & classical_mask(worlds, f.right, memo)
    elif isinstance(f, Or):
        result = classical_mask(worlds, f.left, memo) | classical_mask(worlds, f.right, memo)
    elif isinstance(f, Impl):
        result = ((full ^ classical_mask(worlds, f.antecedent, memo))
                  | classical_mask(worlds, f.consequent, memo))
    elif isinstance(f, K):
        sub = classical_mask(worlds, f.sub, memo)
        result = full if worlds.mask & ~sub == 0 else 0
    else:
        raise TypeError(f"not a formula: {formula!r}")

    memo[formula] = result
    return result


def evaluate_classical(worlds: WorldSet, interp: Interpretation, formula: Formula) -> bool:
    """Two-valued truth of ``formula`` at ``interp`` over ``worlds``."""
    if interp.alphabet != worlds.alphabet:
        raise ValueError("interpretation and world set over different alphabets")
    return bool(classical_mask(worlds, formula) >> interp.index & 1)


def theory_contains(worlds: WorldSet, formula: Formula) -> bool:
    """Whether ``formula`` belongs to the belief set of ``worlds``, i.e.
    holds at every member world."""
    return worlds.mask & ~classical_mask(worlds, formula) == 0
