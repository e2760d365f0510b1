"""Workspace documents: lexer, parser, name resolution and canonical printer.

A document is a sequence of top-level statements, one per line (or separated
by ``;``).  Inside braces, brackets and parentheses newlines are ignored.

    seed 7
    quiver Q { vertices 2; arrow c1: 1 -> 2; arrow b1: 2 -> 1 deg -1; }
    relations I on Q { c1*b1 = 0; b1*c1 - 2*b1*c1 = 0; } trunc 4
    algebra A = quotient(Q, I)
    family F = rfamily(n=3, m=2, k=1, seed=7)
    algebra B = twist(A1, A2, over=S, tau=v) nabla { c2 -> c1; }
    matrix M = [[0, -1], [1, 0]]
    gldim A bound 6

Path products are written right to left: ``c1*b1`` is b1 followed by c1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "DSLError", "Name", "Call", "QuiverDef", "RelationsDef", "AlgebraDef", "FamilyDef",
    "MatrixDef", "Command", "Document", "parse", "print_doc", "COMMANDS",
]

COMMANDS = (
    "validate", "dims", "radical", "gldim", "resolve", "chi", "quadform", "exceptional",
    "gamma", "factor-sl", "realize", "cohomology", "verify-twist", "report-all", "export",
)

# which kinds of definition each command accepts as target
COMMAND_TARGETS = {
    "validate": ("algebra", "family"), "dims": ("algebra", "family"),
    "radical": ("algebra", "family"), "gldim": ("algebra", "family"),
    "resolve": ("algebra", "family"), "chi": ("algebra", "family"),
    "quadform": ("algebra", "family"), "exceptional": ("algebra", "family"),
    "gamma": ("family",), "factor-sl": ("matrix",), "realize": ("matrix",),
    "cohomology": ("algebra", "family"), "verify-twist": ("algebra",),
    "report-all": ("algebra", "family", "matrix"), "export": ("algebra", "family"),
}

ALGEBRA_FUNCS = {"quotient", "green", "kronecker", "efamily", "semisimple", "opposite",
                 "realize", "twist", "rfamily", "kk"}
FAMILY_FUNCS = {"rfamily", "kk"}


class DSLError(Exception):
    """Parse-stage error: syntax, unresolved reference or type mismatch."""

    def __init__(self, message: str, line: int = 0, col: int = 0, kind: str = "syntax"):
        self.message, self.line, self.col, self.kind = message, line, col, kind
        loc = f"line {line}, column {col}: " if line else ""
        super().__init__(f"{kind} error: {loc}{message}")


# --------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Name:
    id: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple = ()
    kwargs: tuple = ()                  # ((key, value), ...)
    nabla: tuple | None = None          # ((label, terms), ...)
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def kw(self, key, default=None):
        for k, v in self.kwargs:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class QuiverDef:
    name: str
    vertices: int
    arrows: tuple                       # ((label, source, target, degree), ...), 1-based vertices
    kind = "quiver"


@dataclass(frozen=True)
class RelationsDef:
    name: str
    quiver: Name
    relations: tuple                    # tuple of terms; terms = ((Fraction, "c1*b1"), ...)
    trunc: int | None = None
    kind = "relations"


@dataclass(frozen=True)
class AlgebraDef:
    name: str
    expr: Call
    kind = "algebra"


@dataclass(frozen=True)
class FamilyDef:
    name: str
    expr: Call
    kind = "family"


@dataclass(frozen=True)
class MatrixDef:
    name: str
    rows: tuple
    kind = "matrix"


@dataclass(frozen=True)
class Command:
    name: str
    target: Name
    args: tuple = ()                    # e.g. ("S1",) for resolve
    options: tuple = ()                 # (("bound", 6),)
    line: int = field(default=0, compare=False)

    def option(self, key, default=None):
        for k, v in self.options:
            if k == key:
                return v
        return default


@dataclass
class Document:
    definitions: list = field(default_factory=list)
    commands: list = field(default_factory=list)
    seed: int | None = None

    def __eq__(self, other):
        return isinstance(other, Document) and (self.definitions, self.commands, self.seed) == \
            (other.definitions, other.commands, other.seed)

    def lookup(self, name: str):
        for d in self.definitions:
            if d.name == name:
                return d
        return None


# --------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<comment>\#[^\n]*) | (?P<nl>\n)
  | (?P<cmd>(?:factor-sl|verify-twist|report-all)(?![A-Za-z0-9_']))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*) | (?P<int>[0-9]+)
  | (?P<arrow>->) | (?P<sym>[{}()\[\];:,=*/+\-])
""", re.VERBOSE)


@dataclass
class Token:
    type: str
    value: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            out.append(Token("nl", "\n", line, pos - start + 1))
            line, start = line + 1, m.end()
        elif kind == "cmd":
            out.append(Token("ident", m.group(), line, pos - start + 1))
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# --------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.depth = 0

    # token helpers; newlines are skipped inside brackets
    def peek(self) -> Token:
        while self.depth and self.toks[self.i].type == "nl":
            self.i += 1
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg: str, t: Token | None = None):
        t = t or self.peek()
        where = "end of input" if t.type == "eof" else ("end of line" if t.type == "nl" else repr(t.value))
        raise DSLError(f"{msg} (found {where})", t.line, t.col)

    def accept(self, value: str) -> Token | None:
        t = self.peek()
        if t.value == value and t.type in ("sym", "arrow", "ident"):
            self.i += 1
            if value in "([{":
                self.depth += 1
            elif value in ")]}":
                self.depth -= 1
            return t
        return None

    def expect(self, value: str) -> Token:
        t = self.accept(value)
        if t is None:
            self.error(f"expected {value!r}")
        return t

    def ident(self, what: str = "a name") -> Token:
        t = self.peek()
        if t.type != "ident":
            self.error(f"expected {what}")
        self.i += 1
        return t

    def integer(self) -> int:
        neg = self.accept("-") is not None
        t = self.peek()
        if t.type != "int":
            self.error("expected an integer")
        self.i += 1
        return -int(t.value) if neg else int(t.value)

    def end_statement(self):
        t = self.peek()
        if t.type in ("nl", "eof"):
            if t.type == "nl":
                self.i += 1
            return
        if self.accept(";"):
            return
        self.error("expected end of statement")

    # grammar
    def document(self) -> Document:
        doc = Document()
        seen: dict[str, Token] = {}
        while True:
            t = self.peek()
            if t.type == "eof":
                break
            if t.type == "nl" or t.value == ";":
                self.i += 1
                continue
            if t.type != "ident":
                self.error("expected a statement")
            kw = t.value
            if kw == "seed":
                self.i += 1
                doc.seed = self.integer()
            elif kw in ("quiver", "relations", "algebra", "family", "matrix"):
                self.i += 1
                nt = self.ident("a definition name")
                if nt.value in seen:
                    raise DSLError(f"name {nt.value!r} already defined on line {seen[nt.value].line}",
                                   nt.line, nt.col, "reference")
                seen[nt.value] = nt
                doc.definitions.append(getattr(self, "def_" + kw)(nt.value))
            elif kw in COMMANDS:
                doc.commands.append(self.command())
            else:
                self.error("unknown statement")
            self.end_statement()
        return doc

    def def_quiver(self, name):
        self.expect("{")
        vertices, arrows = None, []
        while not self.accept("}"):
            t = self.ident("'vertices' or 'arrow'")
            if t.value == "vertices":
                vertices = self.integer()
            elif t.value == "arrow":
                lab = self.ident("an arrow label").value
                self.expect(":")
                s = self.integer()
                self.expect("->")
                e = self.integer()
                d = 0
                if self.accept("deg"):
                    d = self.integer()
                arrows.append((lab, s, e, d))
            else:
                self.error("expected 'vertices' or 'arrow'", t)
            if not self.accept(";") and self.peek().value != "}":
                self.error("expected ';'")
        if vertices is None:
            raise DSLError(f"quiver {name} has no 'vertices' line", *self._pos(), "syntax")
        return QuiverDef(name, vertices, tuple(arrows))

    def _pos(self):
        t = self.toks[max(self.i - 1, 0)]
        return t.line, t.col

    def def_relations(self, name):
        self.expect("on")
        qt = self.ident("a quiver name")
        self.expect("{")
        rels = []
        while not self.accept("}"):
            lhs = self.terms()
            self.expect("=")
            rhs = self.terms()
            rels.append(_combine(lhs, [(-c, p) for c, p in rhs]))
            if not self.accept(";") and self.peek().value != "}":
                self.error("expected ';'")
        trunc = None
        if self.accept("trunc"):
            trunc = self.integer()
        return RelationsDef(name, Name(qt.value, qt.line, qt.col), tuple(rels), trunc)

    def number(self) -> Fraction | None:
        t = self.peek()
        if t.type != "int":
            return None
        self.i += 1
        q = Fraction(int(t.value))
        if self.accept("/"):
            d = self.peek()
            if d.type != "int" or int(d.value) == 0:
                self.error("expected a non-zero denominator")
            self.i += 1
            q /= int(d.value)
        return q

    def terms(self) -> list:
        """Linear combination of paths: [sign] [coef *] p1*p2*...; ``0`` alone is empty."""
        out = []
        first = True
        while True:
            sign = 1
            if self.accept("-"):
                sign = -1
            elif not first and not self.accept("+"):
                break
            elif first:
                self.accept("+")
            first = False
            coef = self.number()
            if coef is not None:
                if not self.accept("*"):
                    if coef == 0 and sign == 1 and not out:
                        return []
                    self.error("expected '*' after a coefficient")
            else:
                coef = Fraction(1)
            parts = [self.ident("a path").value]
            while self.accept("*"):
                parts.append(self.ident("an arrow label").value)
            out.append((sign * coef, "*".join(parts)))
            t = self.peek()
            if t.value not in ("+", "-"):
                break
        return out

    def value(self):
        t = self.peek()
        if t.value == "[":
            self.expect("[")
            items = []
            while not self.accept("]"):
                items.append(self.value())
                if not self.accept(",") and self.peek().value != "]":
                    self.error("expected ',' or ']'")
            return tuple(items)
        if t.type == "ident":
            self.i += 1
            return Name(t.value, t.line, t.col)
        neg = self.accept("-") is not None
        q = self.number()
        if q is None:
            self.error("expected a value")
        q = -q if neg else q
        return int(q) if q.denominator == 1 else q

    def call(self) -> Call:
        ft = self.ident("a constructor")
        self.expect("(")
        args, kwargs = [], []
        while not self.accept(")"):
            t = self.peek()
            if t.type == "eof":
                self.error("expected ')'")
            nxt = self.toks[self.i + 1]
            if t.type == "ident" and nxt.value == "=":
                self.i += 2
                kwargs.append((t.value, self.value()))
            else:
                if kwargs:
                    self.error("positional argument after keyword argument")
                args.append(self.value())
            if not self.accept(",") and self.peek().value != ")":
                self.error("expected ',' or ')'")
        nabla = None
        if self.accept("nabla"):
            self.expect("{")
            nab = []
            while not self.accept("}"):
                lab = self.ident("a label of the second factor").value
                self.expect("->")
                nab.append((lab, tuple(self.terms())))
                if not self.accept(";") and self.peek().value != "}":
                    self.error("expected ';'")
            nabla = tuple(nab)
        return Call(ft.value, tuple(args), tuple(kwargs), nabla, ft.line, ft.col)

    def def_algebra(self, name):
        self.expect("=")
        return AlgebraDef(name, self.call())

    def def_family(self, name):
        self.expect("=")
        return FamilyDef(name, self.call())

    def def_matrix(self, name):
        self.expect("=")
        t = self.peek()
        rows = self.value()
        if not isinstance(rows, tuple) or not rows or not all(
                isinstance(r, tuple) and all(isinstance(x, int) for x in r) for r in rows):
            raise DSLError("a matrix is a bracketed list of integer rows", t.line, t.col)
        if len({len(r) for r in rows}) != 1:
            raise DSLError("matrix rows have different lengths", t.line, t.col)
        return MatrixDef(name, rows)

    def command(self) -> Command:
        ct = self.next()
        target = self.ident("a target name")
        args, opts = [], []
        while self.peek().type == "ident":
            t = self.next()
            if t.value == "bound":
                opts.append(("bound", self.integer()))
            else:
                args.append(t.value)
        return Command(ct.value, Name(target.value, target.line, target.col), tuple(args),
                       tuple(opts), ct.line)


def _combine(a: list, b: list) -> tuple:
    acc: dict[str, Fraction] = {}
    for c, p in list(a) + list(b):
        acc[p] = acc.get(p, Fraction(0)) + c
    return tuple((c, p) for p, c in acc.items() if c)


# --------------------------------------------------------------------------
# resolution of names and kinds

def _ref(doc: Document, n, kinds: tuple, what: str):
    if not isinstance(n, Name):
        raise DSLError(f"{what} must be a name", getattr(n, "line", 0), getattr(n, "col", 0), "type")
    d = doc.lookup(n.id)
    if d is None:
        raise DSLError(f"unresolved reference {n.id!r}", n.line, n.col, "reference")
    if d.kind not in kinds:
        raise DSLError(f"{n.id!r} is a {d.kind}, expected {' or '.join(kinds)}", n.line, n.col, "type")
    return d


def _check(doc: Document):
    defined: set[str] = set()
    for d in doc.definitions:
        if isinstance(d, QuiverDef):
            labels = set()
            for lab, s, e, _ in d.arrows:
                if not (1 <= s <= d.vertices and 1 <= e <= d.vertices):
                    raise DSLError(f"arrow {lab} of quiver {d.name} has an endpoint out of range", kind="type")
                if lab in labels:
                    raise DSLError(f"duplicate arrow {lab} in quiver {d.name}", kind="reference")
                labels.add(lab)
        elif isinstance(d, RelationsDef):
            q = _ref(doc, d.quiver, ("quiver",), "the quiver of a relation set")
            labels = {a[0] for a in q.arrows}
            for rel in d.relations:
                for _, p in rel:
                    for a in p.split("*"):
                        if a not in labels and not re.fullmatch(r"e[0-9]+", a):
                            raise DSLError(f"relation uses {a!r}, which is not an arrow of {q.name}",
                                           d.quiver.line, d.quiver.col, "reference")
        elif isinstance(d, (AlgebraDef, FamilyDef)):
            _check_call(doc, d, defined)
        defined.add(d.name)
    for c in doc.commands:
        _ref(doc, c.target, COMMAND_TARGETS[c.name], f"the target of {c.name}")
        if c.name == "resolve" and (len(c.args) != 1 or not re.fullmatch(r"[SP][0-9]+", c.args[0])):
            raise DSLError("resolve needs a module S<i> or P<i>", c.target.line, c.target.col, "syntax")
        if c.name != "resolve" and c.args:
            raise DSLError(f"unexpected argument {c.args[0]!r} to {c.name}", c.target.line, c.target.col)


def _check_call(doc: Document, d, defined: set):
    e = d.expr
    funcs = FAMILY_FUNCS if d.kind == "family" else ALGEBRA_FUNCS
    if e.func not in funcs:
        raise DSLError(f"unknown {d.kind} constructor {e.func!r}", e.line, e.col, "reference")
    refs = list(e.args) + [v for k, v in e.kwargs if not (e.func == "twist" and k in ("over", "tau"))]
    for v in refs:
        if isinstance(v, Name):
            _ref(doc, v, ("quiver", "relations", "algebra", "family", "matrix"), "an argument")
            if v.id not in defined:
                raise DSLError(f"{v.id!r} is used before its definition", v.line, v.col, "reference")
    if e.nabla is not None and e.func != "twist":
        raise DSLError("nabla is only allowed on twist(...)", e.line, e.col, "type")
    if e.func == "quotient":
        if not 1 <= len(e.args) <= 2:
            raise DSLError("quotient takes a quiver and optionally a relation set", e.line, e.col, "type")
        q = _ref(doc, e.args[0], ("quiver",), "the first argument of quotient")
        if len(e.args) == 2:
            r = _ref(doc, e.args[1], ("relations",), "the second argument of quotient")
            if r.quiver.id != q.name:
                raise DSLError(f"relations {r.name} are on {r.quiver.id}, not {q.name}",
                               e.args[1].line, e.args[1].col, "type")
    elif e.func == "twist":
        if len(e.args) != 2:
            raise DSLError("twist takes two algebras", e.line, e.col, "type")
        facs = [_ref(doc, a, ("algebra", "family"), "a factor of twist") for a in e.args]
        over, tau = e.kw("over", Name("S")), e.kw("tau", Name("v"))
        if not isinstance(over, Name) or over.id != "S":
            raise DSLError("only over=S (the semisimple part) is supported", e.line, e.col, "type")
        if not isinstance(tau, Name) or tau.id != "v":
            raise DSLError("only tau=v (the canonical twisting map) is supported", e.line, e.col, "type")
        if e.nabla is not None and not any(_may_be_graded(doc, f) for f in facs):
            raise DSLError("nabla needs a graded (DG) factor; both factors are concentrated in degree 0",
                           e.line, e.col, "type")
    elif e.func in ("opposite",):
        if len(e.args) != 1:
            raise DSLError(f"{e.func} takes one algebra", e.line, e.col, "type")
        _ref(doc, e.args[0], ("algebra", "family"), f"the argument of {e.func}")
    elif e.func == "realize":
        if len(e.args) != 1:
            raise DSLError("realize takes one matrix", e.line, e.col, "type")
        _ref(doc, e.args[0], ("matrix",), "the argument of realize")


def _may_be_graded(doc: Document, d) -> bool:
    """False only when the definition is certainly concentrated in degree 0."""
    if d.kind == "family":
        return False
    e = d.expr
    if e.func == "quotient":
        q = doc.lookup(e.args[0].id)
        return any(a[3] for a in q.arrows)
    if e.func in ("green", "semisimple", "rfamily", "kk"):
        return False
    if e.func == "kronecker":
        return any(e.kw("deg", ()) or ())
    if e.func == "twist":
        return e.nabla is not None or any(_may_be_graded(doc, doc.lookup(a.id)) for a in e.args)
    if e.func == "opposite":
        return _may_be_graded(doc, doc.lookup(e.args[0].id))
    return True


def parse(text: str) -> Document:
    """Parse and resolve a workspace document; raises DSLError with a location."""
    doc = _Parser(text).document()
    _check(doc)
    return doc


# --------------------------------------------------------------------------
# canonical printer

def _fmt_value(v) -> str:
    if isinstance(v, Name):
        return v.id
    if isinstance(v, tuple):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    return str(v)


def _fmt_terms(terms) -> str:
    if not terms:
        return "0"
    out = []
    for i, (c, p) in enumerate(terms):
        a = abs(c)
        body = p if a == 1 else f"{_fmt_value(a)}*{p}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def _fmt_call(e: Call) -> str:
    parts = [_fmt_value(a) for a in e.args] + [f"{k}={_fmt_value(v)}" for k, v in e.kwargs]
    s = f"{e.func}({', '.join(parts)})"
    if e.nabla is not None:
        s += " nabla { " + "".join(f"{lab} -> {_fmt_terms(t)}; " for lab, t in e.nabla) + "}"
    return s


def print_doc(doc: Document) -> str:
    lines = []
    if doc.seed is not None:
        lines.append(f"seed {doc.seed}")
    for d in doc.definitions:
        if isinstance(d, QuiverDef):
            body = f"vertices {d.vertices}; " + "".join(
                f"arrow {lab}: {s} -> {e}{f' deg {g}' if g else ''}; " for lab, s, e, g in d.arrows)
            lines.append(f"quiver {d.name} {{ {body}}}")
        elif isinstance(d, RelationsDef):
            body = "".join(f"{_fmt_terms(r)} = 0; " for r in d.relations)
            tail = f" trunc {d.trunc}" if d.trunc is not None else ""
            lines.append(f"relations {d.name} on {d.quiver.id} {{ {body}}}{tail}")
        elif isinstance(d, MatrixDef):
            lines.append(f"matrix {d.name} = {_fmt_value(d.rows)}")
        else:
            lines.append(f"{d.kind} {d.name} = {_fmt_call(d.expr)}")
    for c in doc.commands:
        extra = "".join(f" {a}" for a in c.args) + "".join(f" {k} {v}" for k, v in c.options)
        lines.append(f"{c.name} {c.target.id}{extra}")
    return "\n".join(lines) + ("\n" if lines else "")
