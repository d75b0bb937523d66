"""Text, JSON and LaTeX forms of every value.

Grammars::

    tree     := "(" deco node ")"
    node     := ["~"] deco | ["~"] "(" node node+ ")"
    forest   := "1" | tree ("*" tree)*
    polygon  := "[" side ("," side)+ "]"          side := deco | "_" | "~" deco
    cycle    := "[" coord ("," coord)* "]" ["{" deco ("<=" deco)* "}"]
    coord    := "1-" mono | "1+" mono | mono
    mono     := ["-"] factor (("*" | "/") factor)*  factor := number | name ["^" int]
    barword  := "[" letter ("|" letter)* "]"       letter := polygon ("^" polygon)*
    symbol   := "I(" deco ";" [deco ("," deco)*] ";" deco ")"

In cycles, the names ``t, u, v, w`` (optionally followed by digits) are
parameters and ``s1, s2, ...`` are topological variables of the chain.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .algebra import LinComb, Wedge
from .bar import BarWord, EnhancedLetter
from .cycles import Coordinate, Cycle, Monomial, ONE_MINUS, PLAIN, cycle_normalize
from .iterint import IMonomial, ISymbol
from .polygons import Polygon, Side, side, validate_polygon
from .trees import Forest, Node, Tree

PARAM_RE = re.compile(r"^[tuvw]\d*$")
_TOKEN = re.compile(r"\s*([()~\[\],|;^*{}]|<=|[^\s()~\[\],|;^*{}<]+)")


class ParseError(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Stream:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ParseError(f"expected {expect or 'a token'}, found {tok!r}")
        self.i += 1
        return tok

    def done(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r}")


# --- trees ------------------------------------------------------------------------

def parse_tree(text: str) -> Tree:
    s = _Stream(text)
    t = _tree(s)
    s.done()
    return t


def _tree(s: _Stream) -> Tree:
    s.take("(")
    root = s.take()
    child = _node(s)
    s.take(")")
    return Tree(root, child)


def _node(s: _Stream) -> Node:
    second = False
    if s.peek() == "~":
        s.take()
        second = True
    if s.peek() == "(":
        s.take()
        kids = []
        while s.peek() != ")":
            kids.append(_node(s))
        s.take(")")
        if len(kids) < 2:
            raise ParseError("internal vertices need at least two children")
        return Node(None, tuple(kids), second)
    tok = s.take()
    if tok in "()[]|;^*":
        raise ParseError(f"unexpected {tok!r}")
    return Node(tok, (), second)


def parse_forest(text: str) -> Forest:
    if text.strip() == "1":
        return Forest()
    s = _Stream(text)
    trees = [_tree(s)]
    while s.peek() == "*":
        s.take()
        trees.append(_tree(s))
    s.done()
    return Forest(tuple(trees))


# --- polygons and bar words ---------------------------------------------------------

def parse_polygon(text: str) -> Polygon:
    s = _Stream(text)
    p = _polygon(s)
    s.done()
    return validate_polygon(p)


def _polygon(s: _Stream) -> Polygon:
    s.take("[")
    sides = [_side(s)]
    while s.peek() == ",":
        s.take()
        sides.append(_side(s))
    s.take("]")
    return Polygon(tuple(sides))


def _side(s: _Stream) -> Side:
    if s.peek() == "~":
        s.take()
        return side("~" + s.take())
    return side(s.take())


def parse_bar_word(text: str) -> BarWord:
    if text.strip() == "1":
        return BarWord()
    s = _Stream(text)
    s.take("[")
    letters = [_letter(s)]
    while s.peek() == "|":
        s.take()
        letters.append(_letter(s))
    s.take("]")
    s.done()
    return BarWord(tuple(letters))


def parse_bar(text: str) -> LinComb:
    """Bar word literal as a signed element; letters may be given in any order."""
    if text.strip() == "1":
        return LinComb.single(BarWord())
    s = _Stream(text)
    s.take("[")
    letters, sign = [], 1
    while True:
        x, c = _letter(s, strict=False)
        letters.append(x)
        sign *= c
        if s.peek() != "|":
            break
        s.take()
    s.take("]")
    s.done()
    return LinComb.single(BarWord(tuple(letters)), sign) if sign else LinComb()


def _letter(s: _Stream, strict: bool = True):
    polys = [_polygon(s)]
    while s.peek() == "^":
        s.take()
        polys.append(_polygon(s))
    if polys[0].enhanced:
        w, sign = Wedge.build(polys[1:])
        x = EnhancedLetter(polys[0], w)
    else:
        x, sign = Wedge.build(polys)
    if strict:
        if sign != 1:
            raise ParseError("letter is not in canonical order")
        return x
    return x, sign


# --- iterated-integral symbols --------------------------------------------------------

def parse_isymbol(text: str) -> ISymbol:
    m = re.fullmatch(r"\s*I\s*\(([^;]*);([^;]*);([^;)]*)\)\s*", text)
    if not m:
        raise ParseError(f"not a symbol: {text!r}")
    a0, mid, end = (g.strip() for g in m.groups())
    middle = tuple(x.strip() for x in mid.split(",")) if mid.strip() else ()
    if not a0 or not end or any(not x for x in middle):
        raise ParseError(f"empty entry in {text!r}")
    return ISymbol(a0, middle, end)


# --- cycles ---------------------------------------------------------------------------

_MONO_TOKEN = re.compile(r"\s*([*/^]|-?\d+|[A-Za-z_][A-Za-z0-9_]*)")


def parse_monomial(text: str) -> Monomial:
    try:
        return _monomial(text)
    except (IndexError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad monomial {text!r}") from exc


def _monomial(text: str) -> Monomial:
    text = text.strip()
    if not text:
        raise ParseError("empty monomial")
    neg = text.startswith("-")
    if neg:
        text = text[1:]
    toks = []
    pos = 0
    while pos < len(text):
        m = _MONO_TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad monomial {text!r}")
        toks.append(m.group(1))
        pos = m.end()
    coeff = Fraction(-1 if neg else 1)
    exps: dict[str, int] = {}
    op = "*"
    i = 0
    while i < len(toks):
        tok = toks[i]
        i += 1
        power = 1
        if i < len(toks) and toks[i] == "^":
            power = int(toks[i + 1])
            i += 2
        sgn = 1 if op == "*" else -1
        if re.fullmatch(r"-?\d+", tok):
            coeff *= Fraction(int(tok)) ** (sgn * power)
        else:
            exps[tok] = exps.get(tok, 0) + sgn * power
        if i < len(toks):
            op = toks[i]
            if op not in "*/":
                raise ParseError(f"bad monomial {text!r}")
            i += 1
    return Monomial.make(coeff, exps)


def parse_coordinate(text: str) -> Coordinate:
    t = text.strip()
    if t.startswith("1-"):
        return Coordinate(ONE_MINUS, parse_monomial(t[2:]))
    if t.startswith("1+"):
        m = parse_monomial(t[2:])
        return Coordinate(ONE_MINUS, Monomial(-m.coeff, m.exps))
    return Coordinate(PLAIN, parse_monomial(t))


def parse_cycle(text: str) -> LinComb:
    """Parse a cycle literal into its canonical signed element."""
    m = re.fullmatch(r"\s*\[(.*)\]\s*(\{(.*)\})?\s*", text, re.S)
    if not m:
        raise ParseError(f"not a cycle: {text!r}")
    body = m.group(1).strip()
    coords = [parse_coordinate(x) for x in body.split(",")] if body else []
    chain = tuple(x.strip() for x in m.group(3).split("<=")) if m.group(3) else ()
    atoms = set().union(*(c.mono.atoms() for c in coords)) if coords else set()
    params = [a for a in atoms if PARAM_RE.match(a)]
    return cycle_normalize(coords, params, 1, chain)


# --- rendering ------------------------------------------------------------------------

def render_text(x: Any) -> str:
    if isinstance(x, LinComb):
        if not x:
            return "0"
        out = []
        for b, c in x:
            term = render_text(b)
            if c == 1:
                out.append(("+ ", term))
            elif c == -1:
                out.append(("- ", term))
            else:
                out.append(("- " if c < 0 else "+ ", f"{abs(c)}*{term}"))
        first = out[0]
        text = ("-" if first[0] == "- " else "") + first[1]
        return text + "".join(f" {s}{t}" for s, t in out[1:])
    if isinstance(x, tuple):
        return " (x) ".join(render_text(y) for y in x)
    return x.key() if hasattr(x, "key") else str(x)


def render_latex(x: Any) -> str:
    if isinstance(x, LinComb):
        if not x:
            return "0"
        parts = []
        for b, c in x:
            coeff = "" if abs(c) == 1 else (f"\\tfrac{{{abs(c).numerator}}}{{{abs(c).denominator}}}"
                                             if c.denominator != 1 else str(abs(c)))
            parts.append(("-" if c < 0 else "+", coeff + render_latex(b)))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return text + "".join(f" {s} {t}" for s, t in parts[1:])
    if isinstance(x, tuple):
        return r" \otimes ".join(render_latex(y) for y in x)
    if isinstance(x, Cycle):
        body = ", ".join(c.text() for c in x.coords)
        out = rf"\left[{body}\right]"
        if x.chain:
            out += r"_{" + r" \le ".join(x.chain) + "}"
        return out
    if isinstance(x, BarWord):
        return "[" + "|".join(render_latex(l) for l in x.letters) + "]" if x.letters else "1"
    if isinstance(x, (Wedge, EnhancedLetter)):
        return x.key().replace(" ^ ", r" \wedge ")
    if isinstance(x, Forest):
        return x.key().replace(" * ", r" \star ")
    return x.key()


def to_json(x: Any) -> dict:
    if isinstance(x, LinComb):
        return {"kind": "lincomb", "data": {"terms": [
            {"coeff": f"{c.numerator}/{c.denominator}", "basis": to_json(b)} for b, c in x]}}
    if isinstance(x, tuple):
        return {"kind": "tensor", "data": [to_json(y) for y in x]}
    if isinstance(x, Tree):
        return {"kind": "tree", "data": {"root": x.root, "child": _node_json(x.child)}}
    if isinstance(x, Forest):
        return {"kind": "forest", "data": {"trees": [to_json(t)["data"] for t in x.trees]}}
    if isinstance(x, Polygon):
        return {"kind": "polygon", "data": {"sides": [{"kind": s.kind, "atom": s.atom} for s in x.sides]}}
    if isinstance(x, Wedge):
        return {"kind": "wedge", "data": {"factors": [to_json(f) for f in x.factors]}}
    if isinstance(x, EnhancedLetter):
        return {"kind": "enhanced_letter", "data": {"head": to_json(x.head), "tail": to_json(x.tail)}}
    if isinstance(x, BarWord):
        return {"kind": "bar_word", "data": {"letters": [to_json(l) for l in x.letters]}}
    if isinstance(x, ISymbol):
        return {"kind": "isymbol", "data": {"a0": x.a0, "middle": list(x.middle), "end": x.end}}
    if isinstance(x, IMonomial):
        return {"kind": "imonomial", "data": {"factors": [to_json(f) for f in x.factors]}}
    if isinstance(x, Cycle):
        return {"kind": "cycle", "data": {
            "coords": [{"form": c.form, "coeff": f"{c.mono.coeff.numerator}/{c.mono.coeff.denominator}",
                        "exponents": dict(c.mono.exps)} for c in x.coords],
            "params": list(x.params), "chain": list(x.chain)}}
    raise TypeError(f"no JSON form for {type(x).__name__}")


def _node_json(n: Node) -> dict:
    return {"deco": n.deco, "second": n.second, "children": [_node_json(c) for c in n.children]}


def _node_from(d: dict) -> Node:
    return Node(d["deco"], tuple(_node_from(c) for c in d["children"]), d["second"])


def from_json(obj: dict | str) -> Any:
    if isinstance(obj, str):
        obj = json.loads(obj)
    kind, data = obj["kind"], obj["data"]
    if kind == "lincomb":
        return LinComb((from_json(t["basis"]), Fraction(t["coeff"])) for t in data["terms"])
    if kind == "tensor":
        return tuple(from_json(y) for y in data)
    if kind == "tree":
        return Tree(data["root"], _node_from(data["child"]))
    if kind == "forest":
        return Forest(tuple(Tree(t["root"], _node_from(t["child"])) for t in data["trees"]))
    if kind == "polygon":
        return Polygon(tuple(Side(s["kind"], s["atom"]) for s in data["sides"]))
    if kind == "wedge":
        return Wedge(tuple(from_json(f) for f in data["factors"]))
    if kind == "enhanced_letter":
        return EnhancedLetter(from_json(data["head"]), from_json(data["tail"]))
    if kind == "bar_word":
        return BarWord(tuple(from_json(l) for l in data["letters"]))
    if kind == "isymbol":
        return ISymbol(data["a0"], tuple(data["middle"]), data["end"])
    if kind == "imonomial":
        return IMonomial(tuple(from_json(f) for f in data["factors"]))
    if kind == "cycle":
        coords = tuple(Coordinate(c["form"], Monomial.make(Fraction(c["coeff"]), c["exponents"]))
                       for c in data["coords"])
        return Cycle(coords, tuple(data["params"]), tuple(data["chain"]))
    raise ParseError(f"unknown kind {kind!r}")


def dumps(x: Any) -> str:
    return json.dumps(to_json(x), sort_keys=True)
