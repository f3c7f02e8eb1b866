"""S-expression concrete syntax for W and BC terms.

W:   0 | 1 | (add) | (sub) | (cond) | (parity) | (pred) | (proj m n i)
     | (comp h (g1 ...) (g2 ...)) | (si g h0 h1)
     | (k N) | (succ0) | (succ1) | (pred-shift) | (cond-d) | (mul)
BC:  0 | (s0) | (s1) | (pr) | (bcond) | (proj m n i)
     | (comp h (g1 ...) (g2 ...)) | (srec g h0 h1)

``;`` starts a comment.  Sugar heads expand into core terms, so printing a parsed
term yields core syntax only.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bc as B
from . import terms as W
from .errors import ParseError
from .terms import Basic, Proj, SComp, Term


@dataclass
class _Atom:
    text: str
    line: int
    col: int


@dataclass
class _List:
    items: list
    line: int
    col: int


def _read(src: str):
    stack: list[_List] = []
    top: list = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == ";":
            while i < n and src[i] != "\n":
                i += 1
            continue
        if ch == "(":
            stack.append(_List([], line, col))
            i, col = i + 1, col + 1
            continue
        if ch == ")":
            if not stack:
                raise ParseError("unbalanced ')'", line, col)
            done = stack.pop()
            (stack[-1].items if stack else top).append(done)
            i, col = i + 1, col + 1
            continue
        j = i
        while j < n and not src[j].isspace() and src[j] not in "();":
            j += 1
        atom = _Atom(src[i:j], line, col)
        (stack[-1].items if stack else top).append(atom)
        col += j - i
        i = j
    if stack:
        s = stack[-1]
        raise ParseError("unclosed '('", s.line, s.col)
    return top


def _int(node, what: str) -> int:
    if not isinstance(node, _Atom):
        raise ParseError(f"expected integer {what}", node.line, node.col)
    try:
        return int(node.text)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {node.text!r}", node.line, node.col) from None


class _Builder:
    def __init__(self, dialect: str):
        self.dialect = dialect
        if dialect == "W":
            self.basics = W.BASICS
            self.recursion, self.rec_cls = "si", W.SI
        else:
            self.basics = B.BC_BASICS
            self.recursion, self.rec_cls = "srec", B.SRec

    def term(self, node) -> Term:
        if isinstance(node, _Atom):
            if node.text in ("0", "1") and node.text in self.basics:
                return self.basics[node.text]()
            raise ParseError(f"unexpected atom {node.text!r}", node.line, node.col)
        if not node.items:
            raise ParseError("empty form", node.line, node.col)
        head, args = node.items[0], node.items[1:]
        if not isinstance(head, _Atom):
            raise ParseError("form head must be a symbol", head.line, head.col)
        name = head.text

        def expect(k: int):
            if len(args) != k:
                raise ParseError(f"'{name}' takes {k} operand(s), got {len(args)}", node.line, node.col)

        if name in self.basics and name not in ("0", "1"):
            expect(0)
            return self.basics[name]()
        if name == "proj":
            expect(3)
            m, n, i = (_int(a, "in proj") for a in args)
            try:
                return Proj(m, n, i)
            except ValueError as e:
                raise ParseError(str(e), node.line, node.col) from None
        if name == "comp":
            expect(3)
            h = self.term(args[0])
            return SComp(h, self.term_list(args[1]), self.term_list(args[2]))
        if name == self.recursion:
            expect(3)
            return self.rec_cls(*(self.term(a) for a in args))
        if self.dialect == "W":
            if name == "k":
                expect(1)
                return W.int_const(_int(args[0], "constant"))
            if name in W.DERIVED:
                expect(0)
                return W.DERIVED[name]()
        raise ParseError(f"unknown head symbol {name!r}", head.line, head.col)

    def term_list(self, node) -> tuple[Term, ...]:
        if not isinstance(node, _List):
            raise ParseError("expected a parenthesized argument list", node.line, node.col)
        return tuple(self.term(a) for a in node.items)


def _parse(src: str, dialect: str) -> Term:
    forms = _read(src)
    if len(forms) != 1:
        if not forms:
            raise ParseError("no term found", 1, 1)
        extra = forms[1]
        raise ParseError("expected exactly one term", extra.line, extra.col)
    return _Builder(dialect).term(forms[0])


def parse(src: str) -> Term:
    """Parse one W term."""
    return _parse(src, "W")


def parse_bc(src: str) -> Term:
    """Parse one BC term."""
    return _parse(src, "BC")


def pretty_print(t: Term, indent: int | None = None) -> str:
    """Core-syntax rendering; ``indent`` spreads composite forms over several lines."""
    return _pp(t, indent, 0)


def _pp(t: Term, indent: int | None, level: int) -> str:
    if isinstance(t, Basic):
        return t.HEAD if t.HEAD in ("0", "1") else f"({t.HEAD})"
    if isinstance(t, Proj):
        return f"(proj {t.m} {t.n} {t.i})"
    if isinstance(t, SComp):
        parts = [
            _pp(t.h, indent, level + 1),
            "(" + " ".join(_pp(a, indent, level + 2) for a in t.normals) + ")",
            "(" + " ".join(_pp(a, indent, level + 2) for a in t.safes) + ")",
        ]
        return _form("comp", parts, indent, level)
    if isinstance(t, W.SI) or isinstance(t, B.SRec):
        head = "si" if isinstance(t, W.SI) else "srec"
        parts = [_pp(c, indent, level + 1) for c in (t.g, t.h0, t.h1)]
        return _form(head, parts, indent, level)
    raise TypeError(f"cannot print {type(t).__name__}")


def _form(head: str, parts: list[str], indent: int | None, level: int) -> str:
    flat = f"({head} " + " ".join(parts) + ")"
    if indent is None or len(flat) <= 72:
        return flat
    pad = "\n" + " " * (indent * (level + 1))
    return f"({head}" + "".join(pad + p for p in parts) + ")"
