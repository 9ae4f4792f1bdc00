"""Sentence parser and printer; JSON signature and model files."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

import jsonschema

from .errors import CapabilityError, ModelValidationError, SchemaError, SentenceError
from .kripke import FolModel, Frame, KripkeModel, validate_model
from .sentences import (
    QUANT_NOM, QUANT_VAR, And, At, Atom, Box, Dia, ExistsNom, ExistsVar,
    ForallNom, ForallVar, Implies, Nom, Not, Or, PolyBox, PolyDia, Prop,
    Sentence, Term, _check_layers, check_allowed, check_sentence, layer,
)
from .signature import (
    LogicId, Signature, check_signature, layer_of, modalities_of, nominals_of, profile,
)

# --- lexer -----------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op>->|<>|\[\]|[!&|@().,<>\[\]])(?P<tag>\^[01])?
  | (?P<id>[A-Za-z][A-Za-z0-9_]*(?:\^[01])?)
""", re.VERBOSE)

KEYWORDS = {"nom", "exists", "forall"}


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "id", "kw" or "end"
    text: str
    pos: int
    tag: int | None = None


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SentenceError(f"unexpected character {text[pos]!r}", pos)
        if m.group("op"):
            tag = m.group("tag")
            out.append(Token("op", m.group("op"), pos, int(tag[1]) if tag else None))
        elif m.group("id"):
            word = m.group("id")
            base, _, t = word.partition("^")
            if base in KEYWORDS:
                out.append(Token("kw", base, pos, int(t) if t else None))
            else:
                out.append(Token("id", word, pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# --- parser ------------------------------------------------------------------------

class _Parser:
    def __init__(self, logic: LogicId, sig: Signature | None, text: str) -> None:
        self.logic = logic
        self.sig = sig
        self.prof = profile(logic)
        self.toks = tokenize(text)
        self.i = 0
        self.hhpl = logic is LogicId.HHPL
        # arities seen so far when no signature is given
        self.seen: dict[tuple[str, str], int] = {}

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.tok
        if t.text != text or t.kind not in ("op", "kw"):
            found = repr(t.text) if t.kind != "end" else "end of input"
            raise SentenceError(f"expected {text!r}, found {found}", t.pos)
        return self.take()

    def ident(self, what: str) -> Token:
        t = self.tok
        if t.kind != "id":
            found = repr(t.text) if t.kind != "end" else "end of input"
            raise SentenceError(f"expected {what}, found {found}", t.pos)
        return self.take()

    # checks
    def allowed(self, node: Sentence, pos: int) -> Sentence:
        check_allowed(self.logic, node, pos)
        return node

    def tag(self, t: Token) -> int | None:
        if t.tag is not None and not self.hhpl:
            raise SentenceError("layer tags are only meaningful in HHPL", t.pos)
        return t.tag

    def layered(self, node: Sentence, tok: Token) -> Sentence:
        """Fill in an inferred HHPL layer and check the explicit one."""
        if not self.hhpl:
            return node
        if hasattr(node, "layer") and node.layer is None:
            node = replace(node, layer=layer(node))
        try:
            _check_layers(node)
        except SentenceError as e:
            raise SentenceError(str(e), tok.pos) from None
        return node

    def arity(self, kind: str, name: str, n: int, pos: int) -> None:
        if self.sig is None:
            prev = self.seen.setdefault((kind, name), n)
            if prev != n:
                raise SentenceError(f"{kind} {name!r} used with {prev} and {n} arguments", pos)
            return
        table = {"modality": modalities_of(self.logic, self.sig),
                 "predicate": self.sig.preds, "function": self.sig.funcs}[kind]
        if name not in table:
            raise SentenceError(f"unknown {kind} {name!r}", pos)
        if table[name] != n:
            raise SentenceError(f"{kind} {name!r} expects {table[name]} arguments, got {n}", pos)

    def fresh(self, name: str, pos: int, scope: frozenset) -> None:
        if name in scope or (self.sig is not None and self.sig.declares(name)):
            raise SentenceError(f"bound symbol {name!r} is not fresh", pos)
        if self.hhpl and layer_of(name) is None:
            raise SentenceError(f"HHPL nominal variable {name!r} needs a layer tag", pos)
        if not self.hhpl and layer_of(name) is not None:
            raise SentenceError("layer tags are only meaningful in HHPL", pos)

    def nominal(self, tok: Token, scope: frozenset) -> str:
        name = tok.text
        if name in scope or self.sig is None:
            return name
        if name not in nominals_of(self.logic, self.sig):
            raise SentenceError(f"unknown nominal {name!r}", tok.pos)
        return name

    # grammar
    def parse(self) -> Sentence:
        s = self.implication(frozenset())
        if self.tok.kind != "end":
            raise SentenceError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return s

    def implication(self, scope) -> Sentence:
        left = self.disjunction(scope)
        if self.tok.kind == "op" and self.tok.text == "->":
            op = self.take()
            right = self.implication(scope)
            return self.layered(self.allowed(Implies(left, right, self.tag(op)), op.pos), op)
        return left

    def disjunction(self, scope) -> Sentence:
        left = self.conjunction(scope)
        while self.tok.kind == "op" and self.tok.text == "|":
            op = self.take()
            right = self.conjunction(scope)
            left = self.layered(self.allowed(Or(left, right, self.tag(op)), op.pos), op)
        return left

    def conjunction(self, scope) -> Sentence:
        left = self.unary(scope)
        while self.tok.kind == "op" and self.tok.text == "&":
            op = self.take()
            right = self.unary(scope)
            left = self.layered(self.allowed(And(left, right, self.tag(op)), op.pos), op)
        return left

    def unary(self, scope) -> Sentence:
        t = self.tok
        if t.kind == "op":
            if t.text == "!":
                self.take()
                return self.layered(self.allowed(Not(self.unary(scope), self.tag(t)), t.pos), t)
            if t.text in ("<>", "[]"):
                self.take()
                node = (Dia if t.text == "<>" else Box)(self.unary(scope), self.tag(t))
                return self.layered(self.allowed(node, t.pos), t)
            if t.text in ("<", "["):
                return self.polyadic(scope)
            if t.text == "@":
                self.take()
                self.allowed(At("", Prop("")), t.pos)
                name = self.nominal(self.ident("a nominal after '@'"), scope)
                node = At(name, self.unary(scope))
                return self.layered(node, t) if self.hhpl else node
            if t.text == "(":
                self.take()
                s = self.implication(scope)
                self.expect(")")
                return s
        if t.kind == "kw":
            if t.text == "nom":
                self.take()
                self.allowed(Nom(""), t.pos)
                return Nom(self.nominal(self.ident("a nominal after 'nom'"), scope))
            return self.quantifier(scope)
        if t.kind == "id":
            return self.atom(scope)
        found = repr(t.text) if t.kind != "end" else "end of input"
        raise SentenceError(f"expected a sentence, found {found}", t.pos)

    def polyadic(self, scope) -> Sentence:
        open_ = self.take()
        close = ">" if open_.text == "<" else "]"
        node_type = PolyDia if open_.text == "<" else PolyBox
        self.allowed(node_type("", ()), open_.pos)
        name = self.ident("a modality name")
        self.expect(close)
        self.expect("(")
        args: list[Sentence] = []
        if not (self.tok.kind == "op" and self.tok.text == ")"):
            args.append(self.implication(scope))
            while self.tok.kind == "op" and self.tok.text == ",":
                self.take()
                args.append(self.implication(scope))
        self.expect(")")
        self.arity("modality", name.text, len(args), name.pos)
        return node_type(name.text, tuple(args))

    def quantifier(self, scope) -> Sentence:
        kw = self.take()
        exists = kw.text == "exists"
        if self.prof.kripke and self.prof.hybrid:
            node_type = ExistsNom if exists else ForallNom
        else:
            node_type = ExistsVar if exists else ForallVar
        probe = node_type("", Prop("")) if node_type in QUANT_VAR else node_type("", Prop(""), None)
        self.allowed(probe, kw.pos)
        if kw.tag is not None and not self.hhpl:
            raise SentenceError("layer tags are only meaningful in HHPL", kw.pos)
        var = self.ident("a variable name")
        self.fresh(var.text, var.pos, scope)
        self.expect(".")
        body = self.implication(scope | {var.text})
        if node_type in QUANT_VAR:
            return node_type(var.text, body)
        return self.layered(node_type(var.text, body, kw.tag), kw)

    def terms(self, scope) -> tuple[Term, ...]:
        self.expect("(")
        out = [self.term(scope)]
        while self.tok.kind == "op" and self.tok.text == ",":
            self.take()
            out.append(self.term(scope))
        self.expect(")")
        return tuple(out)

    def term(self, scope) -> Term:
        name = self.ident("a term")
        args = ()
        if self.tok.kind == "op" and self.tok.text == "(":
            args = self.terms(scope)
        if not args and (name.text in scope or (self.sig is not None and not self.prof.kripke
                                                  and name.text in self.sig.vars)):
            return Term(name.text)
        self.arity("function", name.text, len(args), name.pos)
        return Term(name.text, args)

    def atom(self, scope) -> Sentence:
        name = self.ident("an atom")
        if self.prof.base == "fol":
            args = ()
            if self.tok.kind == "op" and self.tok.text == "(":
                args = self.terms(scope)
            self.arity("predicate", name.text, len(args), name.pos)
            return Atom(name.text, args)
        if self.tok.kind == "op" and self.tok.text == "(":
            raise CapabilityError(f"first-order atom is not available in {self.logic.value}", name.pos)
        if self.sig is not None and name.text not in self.sig.props:
            raise SentenceError(f"unknown propositional symbol {name.text!r}", name.pos)
        return Prop(name.text)


def parse_sentence(logic: LogicId | str, sig: Signature | None, text: str) -> Sentence:
    """Parse ``text``; with ``sig=None`` symbols are accepted without declaration."""
    logic = LogicId.parse(logic)
    s = _Parser(logic, sig, text).parse()
    if sig is not None:
        check_sentence(logic, sig, s)
    return s


# --- printer --------------------------------------------------------------------------

def _tag(s: Sentence) -> str:
    t = getattr(s, "layer", None)
    return "" if t is None else f"^{t}"


def render_term(t: Term) -> str:
    if not t.args:
        return t.func
    return f"{t.func}({', '.join(render_term(a) for a in t.args)})"


def render_sentence(s: Sentence) -> str:
    """Canonical fully parenthesised text."""
    r = render_sentence
    if isinstance(s, Prop):
        return s.name
    if isinstance(s, Atom):
        return s.pred if not s.args else f"{s.pred}({', '.join(render_term(t) for t in s.args)})"
    if isinstance(s, Not):
        return f"(!{_tag(s)} {r(s.arg)})"
    if isinstance(s, (And, Or, Implies)):
        op = {And: "&", Or: "|", Implies: "->"}[type(s)]
        return f"({r(s.left)} {op}{_tag(s)} {r(s.right)})"
    if isinstance(s, Dia):
        return f"(<>{_tag(s)} {r(s.arg)})"
    if isinstance(s, Box):
        return f"([]{_tag(s)} {r(s.arg)})"
    if isinstance(s, PolyDia):
        return f"(<{s.modality}>({', '.join(r(a) for a in s.args)}))"
    if isinstance(s, PolyBox):
        return f"([{s.modality}]({', '.join(r(a) for a in s.args)}))"
    if isinstance(s, Nom):
        return f"(nom {s.name})"
    if isinstance(s, At):
        return f"(@ {s.nominal} {r(s.arg)})"
    if isinstance(s, QUANT_VAR):
        kw = "exists" if isinstance(s, ExistsVar) else "forall"
        return f"({kw} {s.var} . {r(s.body)})"
    if isinstance(s, QUANT_NOM):
        kw = "exists" if isinstance(s, ExistsNom) else "forall"
        return f"({kw}{_tag(s)} {s.nominal} . {r(s.body)})"
    raise TypeError(f"not a sentence: {s!r}")


# --- JSON files --------------------------------------------------------------------------

_NAME = {"type": "string", "pattern": r"^[A-Za-z][A-Za-z0-9_]*(\^[01])?$"}
_ID = {"type": ["string", "integer"]}
_ARITIES = {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0},
            "propertyNames": _NAME}

SIGNATURE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "props": {"type": "array", "items": _NAME, "uniqueItems": True},
        "nominals": {"type": "array", "items": _NAME, "uniqueItems": True},
        "modalities": _ARITIES,
        "funcs": _ARITIES,
        "preds": _ARITIES,
        "vars": {"type": "array", "items": _NAME, "uniqueItems": True},
    },
}

FOL_SCHEMA = {
    "type": "object",
    "required": ["carrier"],
    "additionalProperties": False,
    "properties": {
        "carrier": {"type": "array", "items": _ID, "minItems": 1, "uniqueItems": True},
        "funcs": {"type": "object", "additionalProperties": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [{"type": "array", "items": _ID}, _ID],
                      "minItems": 2, "maxItems": 2},
        }},
        "preds": {"type": "object", "additionalProperties": {
            "type": "array", "items": {"type": "array", "items": _ID},
        }},
    },
}


def _kripke_schema(base: dict) -> dict:
    return {
        "type": "object",
        "required": ["worlds", "valuation"],
        "additionalProperties": False,
        "properties": {
            "worlds": {"type": "array", "items": _ID, "minItems": 1, "uniqueItems": True},
            "relations": {"type": "object", "additionalProperties": {
                "type": "array", "items": {"type": "array", "items": _ID, "minItems": 1},
            }},
            "nominals": {"type": "object", "additionalProperties": _ID},
            "valuation": {"type": "object", "additionalProperties": base},
        },
    }


PROP_BASE = {"type": "array", "items": _NAME, "uniqueItems": True}
MODEL_SCHEMAS = {
    "prop": _kripke_schema(PROP_BASE),
    "fol": _kripke_schema(FOL_SCHEMA),
    "hpl": _kripke_schema(_kripke_schema(PROP_BASE)),
    "ofol": FOL_SCHEMA,
}


def model_schema(logic: LogicId | str) -> dict:
    prof = profile(logic)
    return MODEL_SCHEMAS[prof.base if prof.kripke else "ofol"]


def _path(err: jsonschema.ValidationError) -> str:
    out = "$"
    for p in err.absolute_path:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _schema_check(data: Any, schema: dict) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        raise SchemaError([f"{_path(e)}: {e.message}" for e in errors])


def signature_from_json(data: Any) -> Signature:
    _schema_check(data, SIGNATURE_SCHEMA)
    return Signature(
        props=data.get("props", ()), nominals=data.get("nominals", ()),
        modalities=data.get("modalities", {}), funcs=data.get("funcs", {}),
        preds=data.get("preds", {}), vars=data.get("vars", ()),
    )


def _fol_from_json(d: dict, path: str, errors: list[str]) -> FolModel:
    carrier = [str(c) for c in d["carrier"]]
    funcs = {}
    for f, rows in d.get("funcs", {}).items():
        table = {}
        for k, (args, val) in enumerate(rows):
            key = tuple(str(a) for a in args)
            for a in (*key, str(val)):
                if a not in carrier:
                    errors.append(f"{path}.funcs.{f}[{k}]: unknown element {a!r}")
            table[key] = str(val)
        funcs[f] = table
    preds = {}
    for p, rows in d.get("preds", {}).items():
        for k, t in enumerate(rows):
            for a in t:
                if str(a) not in carrier:
                    errors.append(f"{path}.preds.{p}[{k}]: unknown element {str(a)!r}")
        preds[p] = [tuple(str(a) for a in t) for t in rows]
    return FolModel(carrier, funcs, preds)


def _kripke_from_json(d: dict, base: str, path: str, errors: list[str]) -> KripkeModel:
    worlds = [str(w) for w in d["worlds"]]
    known = set(worlds)
    relations = {}
    for lam, rows in d.get("relations", {}).items():
        for k, t in enumerate(rows):
            bad = [str(w) for w in t if str(w) not in known]
            if bad:
                errors.append(f"{path}.relations.{lam}[{k}]: tuple {[str(w) for w in t]} "
                              f"references unknown world {bad[0]!r}")
        relations[lam] = [tuple(str(w) for w in t) for t in rows]
    nominals = {}
    for i, w in d.get("nominals", {}).items():
        if str(w) not in known:
            errors.append(f"{path}.nominals.{i}: unknown world {str(w)!r}")
        nominals[i] = str(w)
    valuation = {}
    for w, b in d["valuation"].items():
        if w not in known:
            errors.append(f"{path}.valuation.{w}: unknown world {w!r}")
        sub = f"{path}.valuation.{w}"
        if base == "prop":
            valuation[w] = frozenset(b)
        elif base == "fol":
            valuation[w] = _fol_from_json(b, sub, errors)
        else:
            valuation[w] = _kripke_from_json(b, "prop", sub, errors)
    return KripkeModel(Frame(worlds, relations, nominals), valuation)


def model_from_json(logic: LogicId | str, sig: Signature, data: Any):
    """Build and validate a model from its JSON form."""
    logic = LogicId.parse(logic)
    prof = profile(logic)
    _schema_check(data, model_schema(logic))
    errors: list[str] = []
    if prof.kripke:
        model = _kripke_from_json(data, prof.base, "$", errors)
    else:
        model = _fol_from_json(data, "$", errors)
    if errors:
        raise SchemaError(errors)
    check_signature(logic, sig)
    violations = validate_model(logic, sig, model)
    if violations:
        raise ModelValidationError(violations)
    return model


def _fol_to_json(m: FolModel) -> dict:
    return {
        "carrier": list(m.carrier),
        "funcs": {f: [[list(args), v] for args, v in sorted(t.items())] for f, t in sorted(m.funcs.items())},
        "preds": {p: [list(t) for t in sorted(rel)] for p, rel in sorted(m.preds.items())},
    }


def model_to_json(model) -> dict:
    if isinstance(model, FolModel):
        return _fol_to_json(model)
    out: dict = {
        "worlds": list(model.worlds),
        "relations": {lam: [list(t) for t in sorted(ts)] for lam, ts in sorted(model.frame.relations.items())},
    }
    if model.frame.nominals:
        out["nominals"] = dict(sorted(model.frame.nominals.items()))
    val = {}
    for w in model.worlds:
        b = model.valuation[w]
        if isinstance(b, FolModel):
            val[w] = _fol_to_json(b)
        elif isinstance(b, KripkeModel):
            val[w] = model_to_json(b)
        else:
            val[w] = sorted(b)
    out["valuation"] = val
    return out


def load_signature(path: str | Path) -> Signature:
    return signature_from_json(_read(path))


def save_signature(sig: Signature, path: str | Path) -> None:
    Path(path).write_text(json.dumps(sig.to_json(), indent=2) + "\n")


def load_model(logic: LogicId | str, sig: Signature, path: str | Path):
    return model_from_json(logic, sig, _read(path))


def save_model(model, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_json(model), indent=2) + "\n")


def _read(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from None
