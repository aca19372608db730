"""Parser, compiler and canonical printer for set expressions and map files.

Expression grammar (``.atomset`` files)::

    expr       := inter ('|' inter)*
    inter      := unary ('&' unary)*
    unary      := '~' unary | postfix
    postfix    := primary ['over' atoms]
    primary    := basis | empty | rel | comp | '(' expr ')'
    basis      := 'basis' '(' '+' atoms '-' atoms ',' NAT ')'
    empty      := 'empty' '(' NAT ')'
    comp       := '{' '(' [IDENT (',' IDENT)*] ')' '|' formula '}'
                | '{' IDENT ':' NAT '|' mformula '}'
    rel        := 'rel' '(' NAT ',' NAT ')' '{' [orbit (';' orbit)*] '}'
    orbit      := 'ps' '=' atoms 'pt' '=' atoms 'm' '=' NAT
    atoms      := '{' [IDENT (',' IDENT)*] '}'
    formula    := conj ('|' conj)*
    conj       := neg ('&' neg)*
    neg        := '!' neg | '~' neg | lit
    lit        := 'true' | 'false' | '(' formula ')' | IDENT ('=' | '!=') IDENT
    mformula   := same shape, with  lit := ... | IDENT ('in' | 'notin') IDENT

Inside a tuple comprehension an identifier is a bound variable if listed
in the head, otherwise a parameter atom.  In a subset comprehension the
left of ``in``/``notin`` is a parameter and the right must be the bound
set variable.  ``over {..}`` re-expresses a set over a larger context; on
a relation literal it fixes the context the orbit traces are read against
(without it, the context is the atoms the orbits mention).

Map files (``.atommap``), one item per line, ``#`` starts a comment::

    map P={a,b} rank=2
    rule p={a} k=2 -> out={b} fresh=yes
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional

from atomset.atoms import NAME_RE, STAR_NAME, Atom, Support, atom
from atomset.errors import ParseError, PreconditionError
from atomset.functions import DefinableMap, make_rule
from atomset.relations import PairOrbit, Relation, rel_rebase
from atomset.subset_algebra import (
    KSubsetSet,
    PQBasis,
    all_traces,
    kss_complement,
    kss_empty,
    kss_intersect,
    kss_rebase,
    kss_union,
    pq_to_kss,
)
from atomset.tuple_algebra import (
    Fresh,
    TupleSet,
    ts_complement,
    ts_from_predicate,
    ts_intersect,
    ts_rebase,
    ts_union,
)

KEYWORDS = {"basis", "empty", "rel", "over", "in", "notin", "true", "false", STAR_NAME}

TOKEN_RE = re.compile(
    r"""
     (?P<ws>[ \t\r\n]+|\#[^\n]*)
    |(?P<arrow>->)
    |(?P<neq>!=)
    |(?P<nat>\d+)
    |(?P<ident>[A-Za-z][A-Za-z0-9_]*)
    |(?P<punct>[{}(),|&~!=+\-;:])
    """,
    re.X,
)


class CompileError(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, first_line: int = 1) -> list[Token]:
    out = []
    pos = 0
    line, line_start = first_line, 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tk = "punct" if kind in ("arrow", "neq") else kind
            out.append(Token(tk, m.group(), line, m.start() - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = m.start() + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# -- AST -------------------------------------------------------------------

Pos = tuple  # (line, col)


@dataclass(frozen=True)
class BasisLit:
    p: tuple
    q: tuple
    k: int
    pos: Pos


@dataclass(frozen=True)
class EmptyLit:
    k: int
    pos: Pos


@dataclass(frozen=True)
class TupleComp:
    vars: tuple
    formula: object
    pos: Pos


@dataclass(frozen=True)
class SubsetComp:
    var: str
    k: int
    formula: object
    pos: Pos


@dataclass(frozen=True)
class RelLit:
    n1: int
    n2: int
    orbits: tuple  # ((ps, pt, m, pos), ...)
    pos: Pos


@dataclass(frozen=True)
class SetOp:
    op: str  # "|" or "&"
    left: object
    right: object
    pos: Pos


@dataclass(frozen=True)
class Complement:
    operand: object
    pos: Pos


@dataclass(frozen=True)
class Over:
    operand: object
    atoms: tuple
    pos: Pos


# formula nodes


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Eq:
    left: str
    right: str
    negated: bool
    pos: Pos


@dataclass(frozen=True)
class Member:
    atom: str
    var: str
    negated: bool
    pos: Pos


@dataclass(frozen=True)
class Not:
    operand: object


@dataclass(frozen=True)
class And:
    items: tuple


@dataclass(frozen=True)
class Or:
    items: tuple


@dataclass(frozen=True)
class RuleLine:
    p: tuple
    k: int
    out: tuple
    fresh: bool
    pos: Pos


@dataclass(frozen=True)
class MapFile:
    P: tuple
    rank: int
    rules: tuple
    pos: Pos


# -- parser ----------------------------------------------------------------


class Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0
        self.bound: set = set()  # variables of the enclosing tuple comprehension

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def pos(self) -> Pos:
        return (self.tok.line, self.tok.col)

    def error(self, msg, tok: Optional[Token] = None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("punct", "ident") and t.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def nat(self) -> int:
        if self.tok.kind != "nat":
            raise self.error(f"expected a natural number, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return int(t.text)

    def ident(self, what="identifier") -> Token:
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            raise self.error(f"expected {what}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def atom_name(self) -> str:
        t = self.ident("an atom name")
        if not NAME_RE.match(t.text):
            raise self.error(f"invalid atom name {t.text!r}", t)
        return t.text

    def atom_set(self) -> tuple:
        self.expect("{")
        names = []
        if not self.at("}"):
            names.append(self.atom_name())
            while self.accept(","):
                names.append(self.atom_name())
        self.expect("}")
        return tuple(names)

    def done(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r} after end of expression")

    # set expressions

    def expr(self):
        left = self.inter()
        while self.at("|"):
            pos = self.pos()
            self.i += 1
            left = SetOp("|", left, self.inter(), pos)
        return left

    def inter(self):
        left = self.unary()
        while self.at("&"):
            pos = self.pos()
            self.i += 1
            left = SetOp("&", left, self.unary(), pos)
        return left

    def unary(self):
        if self.at("~"):
            pos = self.pos()
            self.i += 1
            return Complement(self.unary(), pos)
        return self.postfix()

    def postfix(self):
        node = self.primary()
        if self.at("over"):
            pos = self.pos()
            self.i += 1
            node = Over(node, self.atom_set(), pos)
        return node

    def primary(self):
        pos = self.pos()
        if self.accept("basis"):
            self.expect("(")
            self.expect("+")
            p = self.atom_set()
            self.expect("-")
            q = self.atom_set()
            self.expect(",")
            k = self.nat()
            self.expect(")")
            return BasisLit(p, q, k, pos)
        if self.accept("empty"):
            self.expect("(")
            k = self.nat()
            self.expect(")")
            return EmptyLit(k, pos)
        if self.accept("rel"):
            return self.relation(pos)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if self.accept("{"):
            if self.at("("):
                node = self.tuple_comp(pos)
            else:
                node = self.subset_comp(pos)
            self.expect("}")
            return node
        raise self.error(f"expected a set expression, found {self.tok.text or 'end of input'!r}")

    def relation(self, pos):
        self.expect("(")
        n1 = self.nat()
        self.expect(",")
        n2 = self.nat()
        self.expect(")")
        self.expect("{")
        orbits = []
        if not self.at("}"):
            orbits.append(self.orbit())
            while self.accept(";"):
                orbits.append(self.orbit())
        self.expect("}")
        return RelLit(n1, n2, tuple(orbits), pos)

    def orbit(self):
        pos = self.pos()
        self.expect("ps")
        self.expect("=")
        ps = self.atom_set()
        self.expect("pt")
        self.expect("=")
        pt = self.atom_set()
        self.expect("m")
        self.expect("=")
        m = self.nat()
        return (ps, pt, m, pos)

    def tuple_comp(self, pos):
        self.expect("(")
        names = []
        if not self.at(")"):
            names.append(self.ident("a variable").text)
            while self.accept(","):
                names.append(self.ident("a variable").text)
        self.expect(")")
        if len(set(names)) != len(names):
            raise ParseError("duplicate variable in comprehension head", *pos)
        self.expect("|")
        self.bound = set(names)
        try:
            return TupleComp(tuple(names), self.formula(self.eq_literal), pos)
        finally:
            self.bound = set()

    def subset_comp(self, pos):
        var = self.ident("a set variable").text
        self.expect(":")
        k = self.nat()
        self.expect("|")
        return SubsetComp(var, k, self.formula(self.member_literal), pos)

    # formulas

    def formula(self, literal):
        items = [self.conj(literal)]
        while self.accept("|"):
            items.append(self.conj(literal))
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conj(self, literal):
        items = [self.neg(literal)]
        while self.accept("&"):
            items.append(self.neg(literal))
        return items[0] if len(items) == 1 else And(tuple(items))

    def neg(self, literal):
        if self.accept("!") or self.accept("~"):
            return Not(self.neg(literal))
        if self.accept("true"):
            return Const(True)
        if self.accept("false"):
            return Const(False)
        if self.accept("("):
            f = self.formula(literal)
            self.expect(")")
            return f
        return literal()

    def term(self) -> str:
        t = self.ident("a variable or atom")
        if t.text not in self.bound and not NAME_RE.match(t.text):
            raise self.error(f"invalid atom name {t.text!r}", t)
        return t.text

    def eq_literal(self):
        pos = self.pos()
        left = self.term()
        if self.accept("="):
            negated = False
        elif self.accept("!="):
            negated = True
        else:
            raise self.error(f"expected '=' or '!=', found {self.tok.text or 'end of input'!r}")
        right = self.term()
        return Eq(left, right, negated, pos)

    def member_literal(self):
        name = self.atom_name()
        if self.accept("in"):
            negated = False
        elif self.accept("notin"):
            negated = True
        else:
            raise self.error(f"expected 'in' or 'notin', found {self.tok.text or 'end of input'!r}")
        var_tok = self.ident("the set variable")
        return Member(name, var_tok.text, negated, (var_tok.line, var_tok.col))


def parse(text: str):
    """Parse a set expression into an AST."""
    p = Parser(tokenize(text))
    node = p.expr()
    p.done()
    return node


def parse_atom_set(text: str) -> Support:
    p = Parser(tokenize(text))
    names = p.atom_set()
    p.done()
    return Support(atom(n) for n in names)


def parse_map_file(text: str) -> MapFile:
    header = None
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = tokenize(raw, first_line=lineno)
        if toks[0].kind == "eof":
            continue
        p = Parser(toks)
        pos = p.pos()
        if header is None:
            p.expect("map")
            p.expect("P")
            p.expect("=")
            P = p.atom_set()
            p.expect("rank")
            p.expect("=")
            rank = p.nat()
            p.done()
            header = (P, rank, pos)
            continue
        p.expect("rule")
        p.expect("p")
        p.expect("=")
        ps = p.atom_set()
        p.expect("k")
        p.expect("=")
        k = p.nat()
        p.expect("->")
        p.expect("out")
        p.expect("=")
        out = p.atom_set()
        p.expect("fresh")
        p.expect("=")
        if p.accept("yes"):
            fresh = True
        elif p.accept("no"):
            fresh = False
        else:
            raise p.error("expected 'yes' or 'no'")
        p.done()
        rules.append(RuleLine(ps, k, out, fresh, pos))
    if header is None:
        raise ParseError("empty map file: expected a 'map P={..} rank=N' header", 1, 1)
    return MapFile(header[0], header[1], tuple(rules), header[2])


# -- evaluation and compilation ---------------------------------------------


def eval_formula(node, lookup: Callable[[str], object], member: Callable[[str, str], bool] = None) -> bool:
    """Evaluate a formula; ``lookup`` resolves identifiers, ``member`` decides `a in s`."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Eq):
        same = lookup(node.left) == lookup(node.right)
        return not same if node.negated else same
    if isinstance(node, Member):
        inside = member(node.atom, node.var)
        return not inside if node.negated else inside
    if isinstance(node, Not):
        return not eval_formula(node.operand, lookup, member)
    if isinstance(node, And):
        return all(eval_formula(x, lookup, member) for x in node.items)
    if isinstance(node, Or):
        return any(eval_formula(x, lookup, member) for x in node.items)
    raise TypeError(f"not a formula node: {node!r}")


def formula_names(node) -> set:
    if isinstance(node, Eq):
        return {node.left, node.right}
    if isinstance(node, Member):
        return {node.atom}
    if isinstance(node, Not):
        return formula_names(node.operand)
    if isinstance(node, (And, Or)):
        out = set()
        for x in node.items:
            out |= formula_names(x)
        return out
    return set()


def _member_nodes(node):
    if isinstance(node, Member):
        yield node
    elif isinstance(node, Not):
        yield from _member_nodes(node.operand)
    elif isinstance(node, (And, Or)):
        for x in node.items:
            yield from _member_nodes(x)


def _atom_at(name: str, pos) -> Atom:
    if name in KEYWORDS:
        raise CompileError(f"{name!r} is reserved", *pos)
    if not NAME_RE.match(name):
        raise CompileError(f"invalid atom name {name!r}", *pos)
    return atom(name)


def _support_at(names, pos) -> Support:
    return Support(_atom_at(n, pos) for n in names)


def _as_kss(obj):
    return pq_to_kss(obj) if isinstance(obj, PQBasis) else obj


def _kind(obj) -> str:
    if isinstance(obj, TupleSet):
        return f"tuple set of arity {obj.arity}"
    if isinstance(obj, (PQBasis, KSubsetSet)):
        return f"family of {obj.k}-sets"
    return type(obj).__name__


def compile_expr(node):
    """Compile an expression AST to a TupleSet, PQBasis, KSubsetSet or Relation."""
    if isinstance(node, BasisLit):
        return PQBasis(_support_at(node.p, node.pos), _support_at(node.q, node.pos), node.k)
    if isinstance(node, EmptyLit):
        return kss_empty(node.k)
    if isinstance(node, TupleComp):
        return _compile_tuple_comp(node)
    if isinstance(node, SubsetComp):
        return _compile_subset_comp(node)
    if isinstance(node, RelLit):
        return _compile_relation(node)
    if isinstance(node, Complement):
        x = compile_expr(node.operand)
        if isinstance(x, TupleSet):
            return ts_complement(x)
        if isinstance(x, (PQBasis, KSubsetSet)):
            return kss_complement(_as_kss(x))
        raise CompileError(f"cannot complement a {_kind(x)}", *node.pos)
    if isinstance(node, SetOp):
        x, y = compile_expr(node.left), compile_expr(node.right)
        if isinstance(x, TupleSet) and isinstance(y, TupleSet):
            if x.arity != y.arity:
                raise CompileError(f"arity mismatch: {x.arity} vs {y.arity}", *node.pos)
            return ts_union(x, y) if node.op == "|" else ts_intersect(x, y)
        if isinstance(x, (PQBasis, KSubsetSet)) and isinstance(y, (PQBasis, KSubsetSet)):
            x, y = _as_kss(x), _as_kss(y)
            if x.k != y.k:
                raise CompileError(f"arity mismatch: {x.k}-sets vs {y.k}-sets", *node.pos)
            return kss_union(x, y) if node.op == "|" else kss_intersect(x, y)
        raise CompileError(f"cannot combine a {_kind(x)} with a {_kind(y)}", *node.pos)
    if isinstance(node, Over):
        S = _support_at(node.atoms, node.pos)
        if isinstance(node.operand, RelLit):
            # orbit traces are read against the whole context, so pin it
            return _compile_relation(node.operand, S)
        x = compile_expr(node.operand)
        try:
            if isinstance(x, TupleSet):
                return ts_rebase(x, S | x.context)
            if isinstance(x, (PQBasis, KSubsetSet)):
                x = _as_kss(x)
                return kss_rebase(x, S | x.context)
            return rel_rebase(x, S | x.context)
        except PreconditionError as e:
            raise CompileError(str(e), *node.pos) from None
    raise TypeError(f"not an expression node: {node!r}")


def _compile_tuple_comp(node: TupleComp) -> TupleSet:
    k = len(node.vars)
    params = sorted(formula_names(node.formula) - set(node.vars))
    context = Support(_atom_at(n, node.pos) for n in params)
    index = {v: i for i, v in enumerate(node.vars)}

    def pred(tup):
        def lookup(name):
            return tup[index[name]] if name in index else atom(name)

        return eval_formula(node.formula, lookup)

    return ts_from_predicate(k, context, pred)


def _compile_subset_comp(node: SubsetComp) -> KSubsetSet:
    for m in _member_nodes(node.formula):
        if m.var != node.var:
            raise CompileError(f"unknown identifier {m.var!r} (the set variable is {node.var!r})", *m.pos)
    context = Support(_atom_at(n, node.pos) for n in formula_names(node.formula))
    H = []
    for p, q in all_traces(context, node.k):
        if eval_formula(node.formula, None, lambda a, _v, p=p: atom(a) in p):
            H.append((p, q))
    return KSubsetSet(node.k, context, frozenset(H))


def _compile_relation(node: RelLit, context: Support = Support()) -> Relation:
    parsed = []
    for ps, pt, m, pos in node.orbits:
        ps_, pt_ = _support_at(ps, pos), _support_at(pt, pos)
        parsed.append((ps_, pt_, m, pos))
        context = context | ps_ | pt_
    orbits = set()
    for ps, pt, m, pos in parsed:
        try:
            orbits.add(PairOrbit(node.n1, node.n2, context, ps, pt, m))
        except PreconditionError as e:
            raise CompileError(str(e), *pos) from None
    return Relation(node.n1, node.n2, context, frozenset(orbits))


def compile_map(mf: MapFile) -> DefinableMap:
    P = _support_at(mf.P, mf.pos)
    rules = []
    seen = set()
    for line in mf.rules:
        p, out = _support_at(line.p, line.pos), _support_at(line.out, line.pos)
        for a in list(p) + list(out):
            if a not in P:
                raise CompileError(f"unknown identifier {a.name!r}: not a declared parameter of P={fmt_atoms(P)}", *line.pos)
        if line.k > mf.rank:
            raise CompileError(f"rank-bound violation: k={line.k} exceeds rank={mf.rank}", *line.pos)
        rule = make_rule(p, line.k, out, line.fresh)
        if rule.output_descriptor[1] > mf.rank:
            raise CompileError(
                f"rank-bound violation: output size {rule.output_descriptor[1]} exceeds rank={mf.rank}",
                *line.pos,
            )
        if rule.descriptor in seen:
            raise CompileError(f"duplicate rule for p={fmt_atoms(p)} k={line.k}", *line.pos)
        seen.add(rule.descriptor)
        rules.append(rule)
    try:
        return DefinableMap.of(P, mf.rank, rules)
    except PreconditionError as e:
        raise CompileError(str(e), *mf.pos) from None


def compile_text(text: str):
    return compile_expr(parse(text))


def load_map(text: str) -> DefinableMap:
    return compile_map(parse_map_file(text))


# -- printing --------------------------------------------------------------


def fmt_atoms(xs) -> str:
    return "{" + ",".join(a.name for a in sorted(xs)) + "}"


def _var_names(k: int, taken: set) -> list[str]:
    candidates = []
    if k <= 3:
        candidates.append(["x", "y", "z"][:k])
    for stem in ("x", "v", "w", "var"):
        candidates.append([f"{stem}{i}" for i in range(1, k + 1)])
    for names in candidates:
        if not (set(names) & taken) and not (set(names) & KEYWORDS):
            return names
    i = 0
    while True:
        names = [f"x{i}_{j}" for j in range(1, k + 1)]
        if not set(names) & taken:
            return names
        i += 1


def _cell_literals(pattern, context, names) -> list[str]:
    lits = []
    first_of: dict[int, int] = {}
    for i, lab in enumerate(pattern):
        if isinstance(lab, Fresh):
            if lab.j in first_of:
                lits.append(f"{names[i]} = {names[first_of[lab.j]]}")
                continue
            lits.extend(f"{names[i]} != {c.name}" for c in context)
            lits.extend(f"{names[i]} != {names[j]}" for j in first_of.values())
            first_of[lab.j] = i
        else:
            lits.append(f"{names[i]} = {lab.name}")
    return lits


def _disjunction(clauses: list[list[str]], empty: str = "false") -> str:
    if not clauses:
        return empty
    parts = []
    for lits in clauses:
        body = " & ".join(lits) if lits else "true"
        parts.append(f"({body})" if len(clauses) > 1 and len(lits) > 1 else body)
    return " | ".join(parts)


def _with_over(text: str, context: Support, mentioned: set) -> str:
    if set(context) == mentioned:
        return text
    return f"{text} over {fmt_atoms(context)}"


def print_tupleset(X: TupleSet) -> str:
    names = _var_names(X.arity, {a.name for a in X.context})
    clauses = [_cell_literals(c.pattern, X.context, names) for c in X.sorted_cells()]
    mentioned = set()
    for c in X.cells:
        mentioned |= set(c.params)
        if c.n_fresh:
            mentioned |= set(X.context)
    text = "{ (" + ", ".join(names) + ") | " + _disjunction(clauses) + " }"
    return _with_over(text, X.context, mentioned)


def print_kss(C: KSubsetSet) -> str:
    if not C.H:
        return _with_over(f"empty({C.k})", C.context, set())
    clauses = []
    for p, q in C.components():
        lits = [f"{a.name} in s" if a in p else f"{a.name} notin s" for a in C.context]
        clauses.append(lits)
    return f"{{ s : {C.k} | {_disjunction(clauses)} }}"


def print_relation(R: Relation) -> str:
    orbits = "; ".join(
        f"ps={fmt_atoms(o.ps)} pt={fmt_atoms(o.pt)} m={o.m}" for o in R.sorted_orbits()
    )
    body = f"{{ {orbits} }}" if orbits else "{}"
    mentioned = set()
    for o in R.orbits:
        mentioned |= set(o.ps) | set(o.pt)
    return _with_over(f"rel({R.n1},{R.n2}) {body}", R.context, mentioned)


def print_map(f: DefinableMap) -> str:
    lines = [f"map P={fmt_atoms(f.P)} rank={f.rank}"]
    for r in f.rules:
        fresh = "yes" if r.fresh else "no"
        lines.append(f"rule p={fmt_atoms(r.p)} k={r.k} -> out={fmt_atoms(r.out)} fresh={fresh}")
    return "\n".join(lines) + "\n"


def print_obj(obj) -> str:
    """Canonical text for any symbolic object."""
    if isinstance(obj, PQBasis):
        return f"basis(+{fmt_atoms(obj.p)} -{fmt_atoms(obj.q)}, {obj.k})"
    if isinstance(obj, KSubsetSet):
        return print_kss(obj)
    if isinstance(obj, TupleSet):
        return print_tupleset(obj)
    if isinstance(obj, Relation):
        return print_relation(obj)
    if isinstance(obj, DefinableMap):
        return print_map(obj)
    raise TypeError(f"cannot print {type(obj).__name__}")


def round_trip(obj):
    """compile(parse(print(obj)))."""
    text = print_obj(obj)
    if isinstance(obj, DefinableMap):
        return load_map(text)
    return compile_text(text)
