"""A small text language for operator relations (``.pst`` files).

::

    # trilinear relation, parabose signs
    let N = ad(1) a(1)
    check [a(1), [ad(1), a(1)]+]- == 2 a(1)
    check [a(1,1), ad(1,2)]+ == 0
    vacuum a(1) ad(1) == 3

Grammar::

    program := (stmt terminator)*            terminator: newline or ";"
    stmt    := "let" IDENT "=" expr | "check" expr "==" expr | "vacuum" expr "==" ["-"] rational
    expr    := ["-"] term (("+" | "-") term)*
    term    := factor+                       juxtaposition is the product
    factor  := rational [power] | power
    power   := atom ["^" INT]
    atom    := "a(" INT ["," INT] ")" | "ad(" INT ["," INT] ")" | "K" | "Kd"
             | "[" expr "," expr "]" ("-" | "+") | "(" expr ")" | IDENT

``a(k)`` is the generator of the context (the coproduct generator for a
combined representation); ``a(k, alpha)`` is a Green component.  A bare
rational is that multiple of the identity.  Newlines inside brackets or
parentheses do not end a statement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .algebra import (FAIL, IDENTITY, Bracket, EvaluationError, Expr, Gen, Product, ScalarMul, Sum,
                      VerificationResult, check_relation, vacuum_eigencheck)
from .exact import MINUS, PLUS, Rational, fstr
from .fock import A, AD, K, KD, Representation

KEYWORDS = {"let", "check", "vacuum"}
GENERATORS = {"a": A, "ad": AD, "K": K, "Kd": KD}


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected=()):
        self.line, self.col = line, col
        self.expected = tuple(sorted(set(expected)))
        self.message = message
        suffix = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{col}: {message}{suffix}")


class NameBindingError(ParseError):
    pass


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class LetBinding:
    name: str
    expr: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CheckRelation:
    lhs: Expr
    rhs: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class VacuumCheck:
    expr: Expr
    expected: Rational
    line: int = field(default=0, compare=False)


Statement = Union[LetBinding, CheckRelation, VacuumCheck]


@dataclass(frozen=True)
class Program:
    statements: Tuple[Statement, ...]


# -- lexer -------------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, NL, EOF or the punctuation itself
    text: str
    line: int
    col: int


_PUNCT = set("()[],+-^/=;")


def tokenize(text: str) -> List[Token]:
    toks: List[Token] = []
    line, col, i, depth = 1, 1, 0, 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            if depth == 0:
                toks.append(Token("NL", "\\n", line, col))
            i += 1
            line, col = line + 1, 1
            continue
        if c in " \t\r\f\v":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start = col
        if c.isdigit() and c.isascii():
            j = i
            while j < n and text[j].isdigit() and text[j].isascii():
                j += 1
            toks.append(Token("INT", text[i:j], line, start))
            col += j - i
            i = j
            continue
        if (c.isalpha() or c == "_") and c.isascii():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_") and text[j].isascii():
                j += 1
            toks.append(Token("NAME", text[i:j], line, start))
            col += j - i
            i = j
            continue
        if c == "=" and text[i + 1:i + 2] == "=":
            toks.append(Token("==", "==", line, start))
            i += 2
            col += 2
            continue
        if c in _PUNCT:
            if c == ";":
                toks.append(Token("NL", ";", line, start))
            else:
                toks.append(Token(c, c, line, start))
                if c in "([":
                    depth += 1
                elif c in ")]":
                    depth = max(0, depth - 1)
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, start)
    toks.append(Token("EOF", "", line, col))
    return toks


# -- parser ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0
        self.bound: Dict[str, Expr] = {}

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def error(self, message: str, expected=(), tok: Optional[Token] = None) -> ParseError:
        t = tok or self.tok
        return ParseError(message, t.line, t.col, expected)

    def expect(self, kind: str, what: Optional[str] = None) -> Token:
        if self.tok.kind != kind:
            raise self.error(f"unexpected {self._show(self.tok)}", [what or repr(kind)])
        return self.advance()

    @staticmethod
    def _show(t: Token) -> str:
        if t.kind == "EOF":
            return "end of input"
        if t.kind == "NL":
            return "end of statement"
        return repr(t.text)

    def _is_name(self, *names: str) -> bool:
        return self.tok.kind == "NAME" and self.tok.text in names

    # program / statements

    def program(self) -> Program:
        stmts = []
        while True:
            while self.tok.kind == "NL":
                self.advance()
            if self.tok.kind == "EOF":
                return Program(tuple(stmts))
            stmts.append(self.statement())
            if self.tok.kind not in ("NL", "EOF"):
                raise self.error(f"unexpected {self._show(self.tok)} after statement",
                                 ["newline", "';'", "end of input", "'+'", "'-'"])

    def statement(self) -> Statement:
        t = self.tok
        if self._is_name("let"):
            self.advance()
            name_tok = self.tok
            if name_tok.kind != "NAME":
                raise self.error(f"unexpected {self._show(name_tok)}", ["identifier"])
            if name_tok.text in KEYWORDS or name_tok.text in GENERATORS:
                raise self.error(f"{name_tok.text!r} is reserved", ["identifier"])
            if name_tok.text in self.bound:
                raise NameBindingError(f"name {name_tok.text!r} is already bound", name_tok.line, name_tok.col)
            self.advance()
            self.expect("=", "'='")
            expr = self.expr()
            self.bound[name_tok.text] = expr
            return LetBinding(name_tok.text, expr, t.line)
        if self._is_name("check"):
            self.advance()
            lhs = self.expr()
            self.expect("==", "'=='")
            return CheckRelation(lhs, self.expr(), t.line)
        if self._is_name("vacuum"):
            self.advance()
            expr = self.expr()
            self.expect("==", "'=='")
            neg = self.tok.kind == "-"
            if neg:
                self.advance()
            if self.tok.kind != "INT":
                raise self.error(f"unexpected {self._show(self.tok)}", ["rational"])
            q = self.rational()
            return VacuumCheck(expr, -q if neg else q, t.line)
        raise self.error(f"unexpected {self._show(t)}", ["'let'", "'check'", "'vacuum'"])

    # expressions

    def expr(self) -> Expr:
        terms: List[Expr] = []
        neg = self.tok.kind == "-"
        if neg:
            self.advance()
        first = self.term()
        terms.append(ScalarMul(Rational(-1), first) if neg else first)
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            t = self.term()
            terms.append(t if op == "+" else ScalarMul(Rational(-1), t))
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    _FACTOR_START = ("INT", "NAME", "(", "[")

    def _starts_factor(self) -> bool:
        t = self.tok
        if t.kind == "NAME":
            return t.text not in KEYWORDS
        return t.kind in self._FACTOR_START

    def term(self) -> Expr:
        if not self._starts_factor():
            raise self.error(f"unexpected {self._show(self.tok)}",
                             ["rational", "'a('", "'ad('", "'K'", "'Kd'", "'['", "'('", "identifier"])
        factors = [self.factor()]
        while self._starts_factor():
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Expr:
        if self.tok.kind == "INT":
            q = self.rational()
            if self._starts_factor() and self.tok.kind != "INT":
                return ScalarMul(q, self.power())
            return ScalarMul(q, IDENTITY)
        return self.power()

    def rational(self) -> Rational:
        num = self.expect("INT", "integer")
        if self.tok.kind == "/":
            self.advance()
            den = self.expect("INT", "integer")
            if int(den.text) == 0:
                raise ParseError("zero denominator", den.line, den.col)
            return Rational(int(num.text), int(den.text))
        return Rational(int(num.text))

    def power(self) -> Expr:
        base = self.atom()
        if self.tok.kind == "^":
            self.advance()
            t = self.expect("INT", "positive integer exponent")
            n = int(t.text)
            if n < 1:
                raise ParseError("exponent must be at least 1", t.line, t.col)
            return base if n == 1 else Product((base,) * n)
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "NAME":
            if t.text in ("a", "ad"):
                self.advance()
                self.expect("(", "'('")
                mode = int(self.expect("INT", "mode index").text)
                alpha = None
                if self.tok.kind == ",":
                    self.advance()
                    alpha = int(self.expect("INT", "set index").text)
                self.expect(")", "')'")
                return Gen(GENERATORS[t.text], mode, alpha)
            if t.text in ("K", "Kd"):
                self.advance()
                return Gen(GENERATORS[t.text])
            if t.text in KEYWORDS:
                raise self.error(f"keyword {t.text!r} cannot appear in an expression")
            if t.text not in self.bound:
                raise NameBindingError(f"unbound name {t.text!r}", t.line, t.col)
            self.advance()
            return Var(t.text)
        if t.kind == "[":
            self.advance()
            left = self.expr()
            self.expect(",", "','")
            right = self.expr()
            self.expect("]", "']'")
            if self.tok.kind not in ("+", "-"):
                raise self.error(f"unexpected {self._show(self.tok)}: bracket needs a sign suffix",
                                 ["'+'", "'-'"])
            sign = self.advance().kind
            return Bracket(left, right, PLUS if sign == "+" else MINUS)
        if t.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")", "')'")
            return inner
        raise self.error(f"unexpected {self._show(t)}",
                         ["'a('", "'ad('", "'K'", "'Kd'", "'['", "'('", "identifier"])


def parse_program(text: Union[str, bytes]) -> Program:
    """Parse ``.pst`` source; raises :class:`ParseError` with ``line:col`` on bad input."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = bytes(text)[:exc.start]
            line = prefix.count(b"\n") + 1
            col = exc.start - (prefix.rfind(b"\n") + 1) + 1
            raise ParseError("input is not valid UTF-8", line, col) from None
    parser = _Parser(text)
    try:
        return parser.program()
    except RecursionError:
        raise parser.error("expression nested too deeply") from None


def parse_expr(text: str, bound: Optional[Dict[str, Expr]] = None) -> Expr:
    p = _Parser(text)
    p.bound = dict(bound or {})
    e = p.expr()
    while p.tok.kind == "NL":
        p.advance()
    if p.tok.kind != "EOF":
        raise p.error(f"unexpected {p._show(p.tok)}", ["end of input"])
    return e


def load(path) -> Program:
    return parse_program(Path(path).read_bytes())


# -- printer --------------------------------------------------------------------------------


def _split_neg(e: Expr) -> Optional[Expr]:
    """Positive part of a negatively scaled expression, else None."""
    if isinstance(e, ScalarMul) and e.coeff < 0:
        return e.child if e.coeff == -1 else ScalarMul(-e.coeff, e.child)
    return None


def print_expr(e: Expr) -> str:
    if isinstance(e, Sum):
        if not e.children:
            return "0"
        if len(e.children) == 1:
            return "(" + print_expr(e.children[0]) + ")"
        first, *rest = e.children
        pos = _split_neg(first)
        out = print_term(first) if pos is None else "-" + print_term(pos)
        for c in rest:
            pos = _split_neg(c)
            out += " + " + print_term(c) if pos is None else " - " + print_term(pos)
        return out
    pos = _split_neg(e)
    return print_term(e) if pos is None else "-" + print_term(pos)


def _power_of(e: Expr) -> Optional[Tuple[Expr, int]]:
    if isinstance(e, Product) and len(e.children) >= 2 and all(c == e.children[0] for c in e.children):
        return e.children[0], len(e.children)
    return None


def print_term(e: Expr) -> str:
    if isinstance(e, Product) and len(e.children) >= 2 and _power_of(e) is None:
        return " ".join(print_factor(c) for c in e.children)
    return print_factor(e)


def print_factor(e: Expr) -> str:
    if isinstance(e, ScalarMul) and e.coeff >= 0:
        if e.child == IDENTITY:
            return fstr(e.coeff)
        return fstr(e.coeff) + " " + print_power(e.child)
    return print_power(e)


def print_power(e: Expr) -> str:
    pw = _power_of(e)
    if pw is not None:
        return f"{print_atom(pw[0])}^{pw[1]}"
    return print_atom(e)


def print_atom(e: Expr) -> str:
    if isinstance(e, Gen):
        if e.species in (K, KD):
            return e.species
        inner = f"{e.mode}" if e.set is None else f"{e.mode}, {e.set}"
        return f"{e.species}({inner})"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Bracket):
        return f"[{print_expr(e.left)}, {print_expr(e.right)}]{e.sign}"
    if e == IDENTITY:
        return "1"
    return "(" + print_expr(e) + ")"


def print_statement(s: Statement) -> str:
    if isinstance(s, LetBinding):
        return f"let {s.name} = {print_expr(s.expr)}"
    if isinstance(s, CheckRelation):
        return f"check {print_expr(s.lhs)} == {print_expr(s.rhs)}"
    if isinstance(s, VacuumCheck):
        return f"vacuum {print_expr(s.expr)} == {fstr(s.expected)}"
    raise TypeError(s)


def print_program(p: Program) -> str:
    return "".join(print_statement(s) + "\n" for s in p.statements)


# -- execution --------------------------------------------------------------------------------


def substitute(e: Expr, env: Dict[str, Expr]) -> Expr:
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, ScalarMul):
        return ScalarMul(e.coeff, substitute(e.child, env))
    if isinstance(e, Sum):
        return Sum(tuple(substitute(c, env) for c in e.children))
    if isinstance(e, Product):
        return Product(tuple(substitute(c, env) for c in e.children))
    if isinstance(e, Bracket):
        return Bracket(substitute(e.left, env), substitute(e.right, env), e.sign)
    return e


def run_program(program: Program, ctx: Representation):
    """Check every ``check``/``vacuum`` statement in order against ``ctx``."""
    from .suites import Report

    report = Report({"statistics": ctx.statistics.value, "n_modes": ctx.n_modes, "dim": ctx.dim,
                     "order": ctx.order_p, "statements": len(program.statements)})
    env: Dict[str, Expr] = {}
    cache: dict = {}
    for s in program.statements:
        if isinstance(s, LetBinding):
            env[s.name] = substitute(s.expr, env)
            continue
        name = f"line {s.line}: {print_statement(s)}"
        try:
            if isinstance(s, CheckRelation):
                res = check_relation(substitute(s.lhs, env), substitute(s.rhs, env), ctx, name=name,
                                     family="relation-file", cache=cache)
            else:
                res = vacuum_eigencheck(substitute(s.expr, env), ctx, s.expected, name=name,
                                        family="relation-file")
        except EvaluationError as exc:
            res = VerificationResult(name, FAIL, 0, family="relation-file", message=str(exc))
        report.results.append(res)
    return report
