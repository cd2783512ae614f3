"""Formula and program syntax.

One AST serves both the modal language and its K-free fragment extended
with the constants ``$t``, ``$f``, ``$u``; the latter is what the compact
fixpoint engine manipulates.  All nodes are immutable and compare
structurally, so formulas can be used as dictionary keys and deduplicated
cheaply.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .errors import ParseError, UndeclaredAtomError
from .values import TruthValue3


class Formula:
    """Base class for formula nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_modal(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: TruthValue3


@dataclass(frozen=True, slots=True)
class Neg(Formula):
    sub: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Impl(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True, slots=True)
class K(Formula):
    sub: Formula


TRUE_C = Const(TruthValue3.TRUE)
FALSE_C = Const(TruthValue3.FALSE)
UNKNOWN_C = Const(TruthValue3.UNKNOWN)


# ------------------------------------------------------------------
# Structural queries
# ------------------------------------------------------------------

def atoms_of(formula: Formula) -> tuple[str, ...]:
    """Atom names in order of first occurrence."""
    seen: dict[str, None] = {}

    def walk(f: Formula) -> None:
        if isinstance(f, Atom):
            seen.setdefault(f.name)
        elif isinstance(f, Neg):
            walk(f.sub)
        elif isinstance(f, (And, Or)):
            walk(f.left)
            walk(f.right)
        elif isinstance(f, Impl):
            walk(f.antecedent)
            walk(f.consequent)
        elif isinstance(f, K):
            walk(f.sub)

    walk(formula)
    return tuple(seen)


def theory_atoms(formulas: Iterable[Formula]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for f in formulas:
        for name in atoms_of(f):
            seen.setdefault(name)
    return tuple(seen)


def modal_depth(formula: Formula) -> int:
    """Maximum nesting of the belief operator; 0 for objective formulas."""
    if isinstance(f := formula, (Atom, Const)):
        return 0
    if isinstance(f, Neg):
        return modal_depth(f.sub)
    if isinstance(f, (And, Or)):
        return max(modal_depth(f.left), modal_depth(f.right))
    if isinstance(f, Impl):
        return max(modal_depth(f.antecedent), modal_depth(f.consequent))
    if isinstance(f, K):
        return 1 + modal_depth(f.sub)
    raise TypeError(f"not a formula: {formula!r}")


def is_objective(formula: Formula) -> bool:
    return modal_depth(formula) == 0


def node_count(formula: Formula) -> int:
    if isinstance(f := formula, (Atom, Const)):
        return 1
    if isinstance(f, (Neg, K)):
        return 1 + node_count(f.sub)
    if isinstance(f, (And, Or)):
        return 1 + node_count(f.left) + node_count(f.right)
    if isinstance(f, Impl):
        return 1 + node_count(f.antecedent) + node_count(f.consequent)
    raise TypeError(f"not a formula: {formula!r}")


def theory_size(formulas: Iterable[Formula]) -> int:
    """Total node count of a theory; the size measure used in the
    entailment-call budget."""
    return sum(node_count(f) for f in formulas)


def as_theory(formulas: Formula | Iterable[Formula]) -> tuple[Formula, ...]:
    """Normalize to a duplicate-free tuple, preserving first occurrence."""
    if isinstance(formulas, Formula):
        formulas = (formulas,)
    return tuple(dict.fromkeys(formulas))


def top_modal_literals(formulas: Formula | Iterable[Formula]) -> tuple[K, ...]:
    """The K-subformulas not nested inside another K, deduplicated
    structurally, in order of first occurrence."""
    seen: dict[K, None] = {}

    def walk(f: Formula) -> None:
        if isinstance(f, K):
            seen.setdefault(f)
        elif isinstance(f, Neg):
            walk(f.sub)
        elif isinstance(f, (And, Or)):
            walk(f.left)
            walk(f.right)
        elif isinstance(f, Impl):
            walk(f.antecedent)
            walk(f.consequent)

    for f in as_theory(formulas):
        walk(f)
    return tuple(seen)


def replace_top_modal(formula: Formula, resolve: Callable[[K], Formula]) -> Formula:
    """Rewrite every K-subformula not nested inside another K via ``resolve``."""
    if isinstance(f := formula, K):
        return resolve(f)
    if isinstance(f, (Atom, Const)):
        return f
    if isinstance(f, Neg):
        return Neg(replace_top_modal(f.sub, resolve))
    if isinstance(f, And):
        return And(replace_top_modal(f.left, resolve), replace_top_modal(f.right, resolve))
    if isinstance(f, Or):
        return Or(replace_top_modal(f.left, resolve), replace_top_modal(f.right, resolve))
    if isinstance(f, Impl):
        return Impl(replace_top_modal(f.antecedent, resolve),
                    replace_top_modal(f.consequent, resolve))
    raise TypeError(f"not a formula: {formula!r}")


# ------------------------------------------------------------------
# Polarity substitution of the unknown constant
# ------------------------------------------------------------------

def _subst_unknown(formula: Formula, pos: Const, neg: Const, positive: bool) -> Formula:
    if isinstance(f := formula, Atom):
        return f
    if isinstance(f, Const):
        if f.value is TruthValue3.UNKNOWN:
            return pos if positive else neg
        return f
    if isinstance(f, Neg):
        return Neg(_subst_unknown(f.sub, pos, neg, not positive))
    if isinstance(f, And):
        return And(_subst_unknown(f.left, pos, neg, positive),
                   _subst_unknown(f.right, pos, neg, positive))
    if isinstance(f, Or):
        return Or(_subst_unknown(f.left, pos, neg, positive),
                  _subst_unknown(f.right, pos, neg, positive))
    if isinstance(f, Impl):
        # The antecedent position flips polarity; the consequent keeps it.
        return Impl(_subst_unknown(f.antecedent, pos, neg, not positive),
                    _subst_unknown(f.consequent, pos, neg, positive))
    if isinstance(f, K):
        raise ValueError("polarity substitution is defined on K-free formulas only")
    raise TypeError(f"not a formula: {formula!r}")


def upper_form(formula: Formula) -> Formula:
    """Replace ``$u`` by ``$t`` at positive and ``$f`` at negative
    occurrences: the weakest two-valued reading.  Its models are the upper
    bound of the world sets the formula describes."""
    return _subst_unknown(formula, TRUE_C, FALSE_C, True)


def lower_form(formula: Formula) -> Formula:
    """Replace ``$u`` by ``$f`` at positive and ``$t`` at negative
    occurrences: the strongest two-valued reading (lower bound)."""
    return _subst_unknown(formula, FALSE_C, TRUE_C, True)


# ------------------------------------------------------------------
# Constant folding
# ------------------------------------------------------------------

def simplify(formula: Formula) -> Formula:
    """Fold constants where the Kleene tables decide the value.

    Keeps atoms and undecidable structure intact; in particular a fact
    encoded as ``$t -> a`` collapses to ``a``.
    """
    if isinstance(f := formula, (Atom, Const)):
        return f
    if isinstance(f, Neg):
        s = simplify(f.sub)
        if isinstance(s, Const):
            return Const(s.value.inverse())
        if isinstance(s, Neg):
            return s.sub
        return Neg(s)
    if isinstance(f, And):
        a, b = simplify(f.left), simplify(f.right)
        if isinstance(a, Const) and isinstance(b, Const):
            return Const(min(a.value, b.value))
        for x, y in ((a, b), (b, a)):
            if x == FALSE_C:
                return FALSE_C
            if x == TRUE_C:
                return y
        return And(a, b)
    if isinstance(f, Or):
        a, b = simplify(f.left), simplify(f.right)
        if isinstance(a, Const) and isinstance(b, Const):
            return Const(max(a.value, b.value))
        for x, y in ((a, b), (b, a)):
            if x == TRUE_C:
                return TRUE_C
            if x == FALSE_C:
                return y
        return Or(a, b)
    if isinstance(f, Impl):
        a, b = simplify(f.antecedent), simplify(f.consequent)
        if isinstance(a, Const) and isinstance(b, Const):
            return Const(max(b.value, a.value.inverse()))
        if a == TRUE_C:
            return b
        if a == FALSE_C or b == TRUE_C:
            return TRUE_C
        return Impl(a, b)
    if isinstance(f, K):
        return K(simplify(f.sub))
    raise TypeError(f"not a formula: {formula!r}")


# ------------------------------------------------------------------
# Printing
# ------------------------------------------------------------------

_PREC_IMPL, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4


def format_modal(formula: Formula) -> str:
    """Render with minimal parentheses; ``parse_modal`` inverts this."""

    def fmt(f: Formula, floor: int) -> str:
        if isinstance(f, Atom):
            return f.name
        if isinstance(f, Const):
            return "$" + f.value.symbol
        if isinstance(f, K):
            return f"K({fmt(f.sub, _PREC_IMPL)})"
        if isinstance(f, Neg):
            return _wrap("~" + fmt(f.sub, _PREC_UNARY), _PREC_UNARY, floor)
        if isinstance(f, And):
            # Left-associative: the right child needs parens at equal level.
            text = f"{fmt(f.left, _PREC_AND)} & {fmt(f.right, _PREC_AND + 1)}"
            return _wrap(text, _PREC_AND, floor)
        if isinstance(f, Or):
            text = f"{fmt(f.left, _PREC_OR)} | {fmt(f.right, _PREC_OR + 1)}"
            return _wrap(text, _PREC_OR, floor)
        if isinstance(f, Impl):
            # Right-associative: the left child needs parens at equal level.
            text = f"{fmt(f.antecedent, _PREC_IMPL + 1)} -> {fmt(f.consequent, _PREC_IMPL)}"
            return _wrap(text, _PREC_IMPL, floor)
        raise TypeError(f"not a formula: {f!r}")

    def _wrap(text: str, prec: int, floor: int) -> str:
        return f"({text})" if prec < floor else text

    return fmt(formula, _PREC_IMPL)


# ------------------------------------------------------------------
# Tokenizer and parser for the modal grammar
# ------------------------------------------------------------------

_ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")

_TOKEN_SPEC = [
    ("ATOM", _ATOM_RE),
    ("K", re.compile(r"K")),
    ("IMPL", re.compile(r"->")),
    ("NOT", re.compile(r"~")),
    ("AND", re.compile(r"&")),
    ("OR", re.compile(r"\|")),
    ("LPAREN", re.compile(r"\(")),
    ("RPAREN", re.compile(r"\)")),
    ("CONST", re.compile(r"\$[tfu]")),
]


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> Iterator[list[_Token]]:
    """Yield the token list of each input line; comments and blanks drop out."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens: list[_Token] = []
        pos = 0
        while pos < len(line):
            ch = line[pos]
            if ch in " \t\r":
                pos += 1
                continue
            for kind, pattern in _TOKEN_SPEC:
                m = pattern.match(line, pos)
                if m:
                    tokens.append(_Token(kind, m.group(), lineno, pos + 1))
                    pos = m.end()
                    break
            else:
                raise ParseError(f"unexpected character {ch!r}", lineno, pos + 1)
        if tokens:
            yield tokens


class _FormulaParser:
    """Recursive-descent parser.

    Precedence ``~``/``K`` over ``&`` over ``|`` over ``->``; implication
    associates to the right, the other binaries to the left.
    """

    def __init__(self, tokens: list[_Token], declared: frozenset[str] | None):
        self.tokens = tokens
        self.pos = 0
        self.declared = declared

    def parse(self) -> Formula:
        formula = self._impl()
        if self.pos < len(self.tokens):
            t = self.tokens[self.pos]
            raise ParseError(f"unexpected {t.text!r}", t.line, t.col)
        return formula

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self, kind: str) -> _Token:
        t = self._peek()
        if t is None:
            last = self.tokens[-1]
            raise ParseError(f"unexpected end of formula, expected {kind}",
                             last.line, last.col + len(last.text))
        if t.kind != kind:
            raise ParseError(f"expected {kind}, found {t.text!r}", t.line, t.col)
        self.pos += 1
        return t

    def _impl(self) -> Formula:
        left = self._or()
        if (t := self._peek()) and t.kind == "IMPL":
            self.pos += 1
            return Impl(left, self._impl())
        return left

    def _or(self) -> Formula:
        f = self._and()
        while (t := self._peek()) and t.kind == "OR":
            self.pos += 1
            f = Or(f, self._and())
        return f

    def _and(self) -> Formula:
        f = self._unary()
        while (t := self._peek()) and t.kind == "AND":
            self.pos += 1
            f = And(f, self._unary())
        return f

    def _unary(self) -> Formula:
        t = self._peek()
        if t is None:
            last = self.tokens[-1]
            raise ParseError("unexpected end of formula",
                             last.line, last.col + len(last.text))
        if t.kind == "NOT":
            self.pos += 1
            return Neg(self._unary())
        if t.kind == "K":
            self.pos += 1
            self._take("LPAREN")
            sub = self._impl()
            self._take("RPAREN")
            return K(sub)
        if t.kind == "LPAREN":
            self.pos += 1
            sub = self._impl()
            self._take("RPAREN")
            return sub
        if t.kind == "ATOM":
            self.pos += 1
            if self.declared is not None and t.text not in self.declared:
                raise UndeclaredAtomError(t.text, t.line, t.col)
            return Atom(t.text)
        if t.kind == "CONST":
            self.pos += 1
            return Const(TruthValue3.from_symbol(t.text[1]))
        raise ParseError(f"unexpected {t.text!r}", t.line, t.col)


def parse_modal(text: str, atoms: Iterable[str] | None = None) -> Formula:
    """Parse a single formula.

    When ``atoms`` is given it acts as a declared alphabet and any other
    atom name is rejected.
    """
    declared = frozenset(atoms) if atoms is not None else None
    lines = list(_tokenize(text))
    if not lines:
        raise ParseError("empty input, expected a formula", 1, 1)
    if len(lines) > 1:
        t = lines[1][0]
        raise ParseError("expected a single formula", t.line, t.col)
    return _FormulaParser(lines[0], declared).parse()


def parse_theory(text: str, atoms: Iterable[str] | None = None) -> tuple[Formula, ...]:
    """Parse one formula per line; ``#`` starts a comment."""
    declared = frozenset(atoms) if atoms is not None else None
    return as_theory(_FormulaParser(tokens, declared).parse()
                     for tokens in _tokenize(text))


# ------------------------------------------------------------------
# Normal logic programs
# ------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Clause:
    """``head :- pos_body, not neg_body.`` with an empty body for facts."""

    head: str
    pos_body: tuple[str, ...] = ()
    neg_body: tuple[str, ...] = ()

    def __str__(self) -> str:
        body = [*self.pos_body, *("not " + c for c in self.neg_body)]
        if not body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(body)}."


@dataclass(frozen=True, slots=True)
class LogicProgram:
    clauses: tuple[Clause, ...]

    @property
    def atoms(self) -> tuple[str, ...]:
        """All atoms, heads and bodies, in order of first occurrence."""
        seen: dict[str, None] = {}
        for c in self.clauses:
            seen.setdefault(c.head)
            for a in c.pos_body:
                seen.setdefault(a)
            for a in c.neg_body:
                seen.setdefault(a)
        return tuple(seen)

    def clauses_for(self, head: str) -> tuple[Clause, ...]:
        return tuple(c for c in self.clauses if c.head == head)

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.clauses)


_PROGRAM_TOKEN_SPEC = [
    ("ATOM", _ATOM_RE),
    ("IF", re.compile(r":-")),
    ("COMMA", re.compile(r",")),
    ("DOT", re.compile(r"\.")),
]


def _tokenize_program(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            ch = line[pos]
            if ch in " \t\r":
                pos += 1
                continue
            for kind, pattern in _PROGRAM_TOKEN_SPEC:
                m = pattern.match(line, pos)
                if m:
                    word = m.group()
                    if kind == "ATOM" and word == "not":
                        kind = "NOT"
                    tokens.append(_Token(kind, word, lineno, pos + 1))
                    pos = m.end()
                    break
            else:
                raise ParseError(f"unexpected character {ch!r}", lineno, pos + 1)
    return tokens


def parse_program(text: str) -> LogicProgram:
    """Parse clauses ``a :- b1, ..., not c1, ... .`` and facts ``a.``"""
    tokens = _tokenize_program(text)
    clauses: list[Clause] = []
    pos = 0

    def take(kind: str, what: str) -> _Token:
        nonlocal pos
        if pos >= len(tokens):
            if tokens:
                last = tokens[-1]
                raise ParseError(f"unexpected end of program, expected {what}",
                                 last.line, last.col + len(last.text))
            raise ParseError(f"unexpected end of program, expected {what}", 1, 1)
        t = tokens[pos]
        if t.kind != kind:
            raise ParseError(f"expected {what}, found {t.text!r}", t.line, t.col)
        pos += 1
        return t

    while pos < len(tokens):
        if tokens[pos].kind == "NOT":
            t = tokens[pos]
            raise ParseError("'not' cannot appear in a clause head", t.line, t.col)
        head = take("ATOM", "a clause head").text
        pos_body: list[str] = []
        neg_body: list[str] = []
        if pos < len(tokens) and tokens[pos].kind == "IF":
            pos += 1
            while True:
                if pos < len(tokens) and tokens[pos].kind == "NOT":
                    pos += 1
                    neg_body.append(take("ATOM", "an atom after 'not'").text)
                else:
                    pos_body.append(take("ATOM", "a body atom").text)
                if pos < len(tokens) and tokens[pos].kind == "COMMA":
                    pos += 1
                    continue
                break
        take("DOT", "'.'")
        clauses.append(Clause(head, tuple(pos_body), tuple(neg_body)))
    return LogicProgram(tuple(clauses))
