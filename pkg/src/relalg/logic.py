"""First-order formulas over the relation algebra signature.

Terms are built from variables, the constants 0, 1, 1' and the
operations complement, converse, join and composition (meet is sugar).
Formulas are equalities of terms closed under negation, conjunction,
disjunction and quantification; <= and < are sugar.  Evaluation is
Tarskian over a finite complex algebra, with quantifiers ranging over
all elements and memoization keyed by each subformula's free variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import Algebra


# --- terms -----------------------------------------------------------------


class Term:
    free_vars: frozenset


@dataclass(frozen=True)
class Var(Term):
    name: str

    @property
    def free_vars(self):
        return frozenset([self.name])


@dataclass(frozen=True)
class Const(Term):
    symbol: str  # "0" | "1" | "1'"

    def __post_init__(self):
        if self.symbol not in ("0", "1", "1'"):
            raise ValueError(f"unknown constant {self.symbol!r}")

    @property
    def free_vars(self):
        return frozenset()


@dataclass(frozen=True)
class Neg(Term):
    arg: Term

    @property
    def free_vars(self):
        return self.arg.free_vars


@dataclass(frozen=True)
class Conv(Term):
    arg: Term

    @property
    def free_vars(self):
        return self.arg.free_vars


@dataclass(frozen=True)
class Join(Term):
    left: Term
    right: Term

    @property
    def free_vars(self):
        return self.left.free_vars | self.right.free_vars


@dataclass(frozen=True)
class Comp(Term):
    left: Term
    right: Term

    @property
    def free_vars(self):
        return self.left.free_vars | self.right.free_vars


def meet(u: Term, v: Term) -> Term:
    return Neg(Join(Neg(u), Neg(v)))


# --- formulas ----------------------------------------------------------------


class Formula:
    pass


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term

    @property
    def free_vars(self):
        return self.left.free_vars | self.right.free_vars

    @property
    def qdepth(self):
        return 0


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    @property
    def free_vars(self):
        return self.arg.free_vars

    @property
    def qdepth(self):
        return self.arg.qdepth


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    @property
    def free_vars(self):
        return self.left.free_vars | self.right.free_vars

    @property
    def qdepth(self):
        return max(self.left.qdepth, self.right.qdepth)


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    @property
    def free_vars(self):
        return self.left.free_vars | self.right.free_vars

    @property
    def qdepth(self):
        return max(self.left.qdepth, self.right.qdepth)


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula

    @property
    def free_vars(self):
        return self.body.free_vars - {self.var}

    @property
    def qdepth(self):
        return self.body.qdepth + 1


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula

    @property
    def free_vars(self):
        return self.body.free_vars - {self.var}

    @property
    def qdepth(self):
        return self.body.qdepth + 1


def leq(u: Term, v: Term) -> Formula:
    return Eq(Join(u, v), v)


def lt(u: Term, v: Term) -> Formula:
    return And(leq(u, v), Not(Eq(u, v)))


def quantifier_depth(f: Formula) -> int:
    return f.qdepth


# --- evaluation ---------------------------------------------------------------


class UnboundVariableError(KeyError):
    pass


def _compile_term(t: Term, alg: Algebra):
    """Turn a term into a closure dict-env -> element mask."""
    if isinstance(t, Var):
        name = t.name
        return lambda env: env[name]
    if isinstance(t, Const):
        val = {"0": 0, "1": alg.one, "1'": alg.identity_mask}[t.symbol]
        return lambda env: val
    if isinstance(t, Neg):
        arg = _compile_term(t.arg, alg)
        top = alg.one
        return lambda env: top ^ arg(env)
    if isinstance(t, Conv):
        arg = _compile_term(t.arg, alg)
        conv = alg.converse
        return lambda env: conv(arg(env))
    if isinstance(t, Join):
        left, right = _compile_term(t.left, alg), _compile_term(t.right, alg)
        return lambda env: left(env) | right(env)
    if isinstance(t, Comp):
        left, right = _compile_term(t.left, alg), _compile_term(t.right, alg)
        comp = alg.compose
        return lambda env: comp(left(env), right(env))
    raise TypeError(f"not a term: {t!r}")


def _compile(f: Formula, alg: Algebra):
    """Turn a formula into a closure dict-env -> bool.

    Each quantifier node carries a private memo table keyed by the
    values of its free variables; that is the only caching needed,
    since every repeat evaluation of an inner node happens under some
    quantifier whose memo already collapses it.  This is what makes
    deeply nested bounded quantifiers tractable on algebras with
    thousands of elements.
    """
    if isinstance(f, Eq):
        left, right = _compile_term(f.left, alg), _compile_term(f.right, alg)
        return lambda env: left(env) == right(env)
    if isinstance(f, Not):
        arg = _compile(f.arg, alg)
        return lambda env: not arg(env)
    if isinstance(f, And):
        left, right = _compile(f.left, alg), _compile(f.right, alg)
        return lambda env: left(env) and right(env)
    if isinstance(f, Or):
        left, right = _compile(f.left, alg), _compile(f.right, alg)
        return lambda env: left(env) or right(env)
    if isinstance(f, (Exists, Forall)):
        body = _compile(f.body, alg)
        var = f.var
        fvs = tuple(sorted(f.free_vars))
        want = isinstance(f, Exists)
        size = alg.size
        memo: dict = {}

        def fn(env):
            key = tuple(env[v] for v in fvs)
            got = memo.get(key)
            if got is None:
                old = env.get(var, _MISSING)
                got = not want
                for val in range(size):
                    env[var] = val
                    if body(env) == want:
                        got = want
                        break
                if old is _MISSING:
                    del env[var]
                else:
                    env[var] = old
                memo[key] = got
            return got

        return fn
    raise TypeError(f"not a formula: {f!r}")


def _check_bound(free_vars, env: dict) -> None:
    missing = free_vars - env.keys()
    if missing:
        raise UnboundVariableError(sorted(missing)[0])


def eval_term(t: Term, alg: Algebra, env: Optional[dict] = None) -> int:
    env = dict(env) if env else {}
    _check_bound(t.free_vars, env)
    return _compile_term(t, alg)(env)


def evaluate(f: Formula, alg: Algebra, env: Optional[dict] = None) -> bool:
    """Evaluate a formula; its free variables must all be bound by env."""
    env = dict(env) if env else {}
    _check_bound(f.free_vars, env)
    return _compile(f, alg)(env)


_MISSING = object()


# --- the cardinality formulas -------------------------------------------------


def build_phi_k(k: int) -> Formula:
    """Formula in one free variable x: "x is above at least k atoms".

    Built by the recursion phi_{k+1}(x) = exists y (y < x and phi_k(y))
    with the two variables x and y alternating, so only two variable
    names occur no matter how large k is.  Quantifier depth is k - 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")

    def phi(j: int, free: str, bound: str) -> Formula:
        if j == 1:
            return Not(Eq(Var(free), Const("0")))
        return Exists(bound, And(lt(Var(bound), Var(free)), phi(j - 1, bound, free)))

    return phi(k, "x", "y")


def cardinality_sentence(k: int) -> Formula:
    """Sentence true in a complex algebra iff it has at least k atoms."""
    return Exists("x", build_phi_k(k))


def count_atoms_oracle(alg: Algebra, k: int) -> bool:
    """Independent popcount oracle for the cardinality sentence."""
    return any(bin(x).count("1") >= k for x in range(alg.size))


# --- textual syntax ------------------------------------------------------------

# grammar (whitespace-insensitive):
#   formula := ('E'|'A') IDENT '.' formula | disj
#   disj    := conj ('|' conj)*
#   conj    := unit ('&' unit)*
#   unit    := '~' unit | '(' formula ')' | term ('='|'<='|'<') term
#   term    := joint;  joint := meett ('+' meett)*
#   meett   := compt ('.' compt)*;  compt := prim (';' prim)*
#   prim    := '-' prim | atom '^'* ;  atom := '0'|'1'|'id'|IDENT|'(' term ')'


class ParseError(ValueError):
    pass


_SYMBOLS = ("<=", "(", ")", "-", "^", "+", ".", ";", "=", "<", "~", "&", "|")


def _tokenize(text: str) -> list[str]:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                toks.append(sym)
                i += len(sym)
                break
        else:
            if ch.isalnum() or ch == "_" or ch == "'":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                    j += 1
                toks.append(text[i:j])
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}")
    return toks


class _Parser:
    def __init__(self, toks: list[str]):
        self.toks = toks
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if expect is not None and tok != expect:
            raise ParseError(f"expected {expect!r}, found {tok!r}")
        self.i += 1
        return tok

    # formulas
    def formula(self) -> Formula:
        tok = self.peek()
        if tok in ("E", "A"):
            self.take()
            var = self.take()
            if not var.isidentifier():
                raise ParseError(f"bad variable name {var!r}")
            self.take(".")
            body = self.formula()
            return Exists(var, body) if tok == "E" else Forall(var, body)
        return self.disj()

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unit()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unit())
        return f

    def unit(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unit())
        if tok == "(":
            # could open a parenthesised formula or the left term
            mark = self.i
            try:
                self.take("(")
                f = self.formula()
                self.take(")")
                return f
            except ParseError:
                self.i = mark
        left = self.term()
        op = self.take()
        if op not in ("=", "<=", "<"):
            raise ParseError(f"expected comparison, found {op!r}")
        right = self.term()
        if op == "=":
            return Eq(left, right)
        if op == "<=":
            return leq(left, right)
        return lt(left, right)

    # terms
    def term(self) -> Term:
        t = self.meett()
        while self.peek() == "+":
            self.take()
            t = Join(t, self.meett())
        return t

    def meett(self) -> Term:
        t = self.compt()
        while self.peek() == ".":
            self.take()
            t = meet(t, self.compt())
        return t

    def compt(self) -> Term:
        t = self.prim()
        while self.peek() == ";":
            self.take()
            t = Comp(t, self.prim())
        return t

    def prim(self) -> Term:
        tok = self.peek()
        if tok == "-":
            self.take()
            return Neg(self.prim())
        if tok == "(":
            self.take()
            t = self.term()
            self.take(")")
        elif tok == "0":
            self.take()
            t = Const("0")
        elif tok == "1":
            self.take()
            t = Const("1")
        elif tok == "id":
            self.take()
            t = Const("1'")
        elif tok is not None and tok.isidentifier():
            self.take()
            t = Var(tok)
        else:
            raise ParseError(f"expected a term, found {tok!r}")
        while self.peek() == "^":
            self.take()
            t = Conv(t)
        return t


def parse_formula(text: str) -> Formula:
    p = _Parser(_tokenize(text))
    f = p.formula()
    if p.peek() is not None:
        raise ParseError(f"trailing input at {p.peek()!r}")
    return f
