"""Three-valued truth values and the two orderings the engine relies on."""

from __future__ import annotations

import enum


class TruthValue3(enum.IntEnum):
    """A Kleene truth value.

    The integer value doubles as the position in the truth ordering
    (false < unknown < true), so ``min``/``max`` compute the strong-Kleene
    conjunction/disjunction directly.
    """

    FALSE = 0
    UNKNOWN = 1
    TRUE = 2

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    def inverse(self) -> "TruthValue3":
        """Negation: true and false swap, unknown is its own inverse."""
        return TruthValue3(2 - self.value)

    def leq_truth(self, other: "TruthValue3") -> bool:
        """Truth ordering: false <= unknown <= true."""
        return self.value <= other.value

    def leq_knowledge(self, other: "TruthValue3") -> bool:
        """Knowledge ordering: unknown below both true and false, which
        are incomparable with each other."""
        return self is TruthValue3.UNKNOWN or self is other

    def is_decided(self) -> bool:
        return self is not TruthValue3.UNKNOWN

    @classmethod
    def from_symbol(cls, symbol: str) -> "TruthValue3":
        try:
            return _FROM_SYMBOL[symbol]
        except KeyError:
            raise ValueError(f"not a truth value symbol: {symbol!r}") from None

    @classmethod
    def from_bool(cls, flag: bool) -> "TruthValue3":
        return TruthValue3.TRUE if flag else TruthValue3.FALSE

    def __str__(self) -> str:
        return self.symbol


_SYMBOLS = {
    TruthValue3.FALSE: "f",
    TruthValue3.UNKNOWN: "u",
    TruthValue3.TRUE: "t",
}
_FROM_SYMBOL = {s: v for v, s in _SYMBOLS.items()}
