"""Sentence trees shared by every logic instance.

Nodes are frozen dataclasses, so sentences hash and compare structurally.
Boolean, modal and quantifier nodes carry a ``layer`` that is only used by
HHPL (0 = inner hybridisation layer, 1 = outer); it is ``None`` everywhere
else.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Union

from ._frozen import memo_hash
from .errors import CapabilityError, SentenceError
from .signature import (
    LogicId,
    Signature,
    layer_of,
    modalities_of,
    nominals_of,
    profile,
)


@dataclass(frozen=True)
class Term:
    func: str
    args: tuple[Term, ...] = ()


class Sentence:
    __slots__ = ()


@dataclass(frozen=True)
class Prop(Sentence):
    name: str


@dataclass(frozen=True)
class Atom(Sentence):
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Not(Sentence):
    arg: Sentence
    layer: int | None = None


@dataclass(frozen=True)
class And(Sentence):
    left: Sentence
    right: Sentence
    layer: int | None = None


@dataclass(frozen=True)
class Or(Sentence):
    left: Sentence
    right: Sentence
    layer: int | None = None


@dataclass(frozen=True)
class Implies(Sentence):
    left: Sentence
    right: Sentence
    layer: int | None = None


@dataclass(frozen=True)
class Dia(Sentence):
    arg: Sentence
    layer: int | None = None


@dataclass(frozen=True)
class Box(Sentence):
    arg: Sentence
    layer: int | None = None


@dataclass(frozen=True)
class PolyDia(Sentence):
    modality: str
    args: tuple[Sentence, ...]


@dataclass(frozen=True)
class PolyBox(Sentence):
    modality: str
    args: tuple[Sentence, ...]


@dataclass(frozen=True)
class Nom(Sentence):
    name: str


@dataclass(frozen=True)
class At(Sentence):
    nominal: str
    arg: Sentence


@dataclass(frozen=True)
class ExistsVar(Sentence):
    var: str
    body: Sentence


@dataclass(frozen=True)
class ForallVar(Sentence):
    var: str
    body: Sentence


@dataclass(frozen=True)
class ExistsNom(Sentence):
    nominal: str
    body: Sentence
    layer: int | None = None


@dataclass(frozen=True)
class ForallNom(Sentence):
    nominal: str
    body: Sentence
    layer: int | None = None


Binary = Union[And, Or, Implies]
BINARY = (And, Or, Implies)
QUANT_VAR = (ExistsVar, ForallVar)
QUANT_NOM = (ExistsNom, ForallNom)
LAYERED = (Not, And, Or, Implies, Dia, Box, ExistsNom, ForallNom)


for _cls in (Term, Prop, Atom, Not, And, Or, Implies, Dia, Box, PolyDia, PolyBox, Nom, At,
             ExistsVar, ForallVar, ExistsNom, ForallNom):
    memo_hash(_cls)  # sentences are rehashed constantly as memo keys


def children(s: Sentence) -> tuple[Sentence, ...]:
    if isinstance(s, (Not, Dia, Box, At)):
        return (s.arg,)
    if isinstance(s, BINARY):
        return (s.left, s.right)
    if isinstance(s, (PolyDia, PolyBox)):
        return s.args
    if isinstance(s, QUANT_VAR + QUANT_NOM):
        return (s.body,)
    return ()


def depth(s: Sentence) -> int:
    """Nesting depth of connectives; atoms and nominal sentences have depth 0."""
    kids = children(s)
    return 0 if not kids else 1 + max(depth(k) for k in kids)


def walk(s: Sentence) -> Iterator[Sentence]:
    yield s
    for k in children(s):
        yield from walk(k)


def term_symbols(t: Term) -> Iterator[str]:
    yield t.func
    for a in t.args:
        yield from term_symbols(a)


def layer(s: Sentence) -> int:
    """HHPL layer of a sentence (0 for pure inner-layer sentences)."""
    if isinstance(s, Prop):
        return 0
    if isinstance(s, Nom):
        return layer_of(s.name) or 0
    if isinstance(s, At):
        return max(layer_of(s.nominal) or 0, layer(s.arg))
    tag = getattr(s, "layer", None)
    if tag is not None:
        return tag
    kids = [layer(k) for k in children(s)]
    if isinstance(s, QUANT_NOM):
        kids.append(layer_of(s.nominal) or 0)
    return max(kids, default=0)


def rebuild(s: Sentence, kids: tuple[Sentence, ...]) -> Sentence:
    """Copy of ``s`` with its immediate subsentences replaced."""
    if isinstance(s, Not):
        return Not(kids[0], s.layer)
    if isinstance(s, Dia):
        return Dia(kids[0], s.layer)
    if isinstance(s, Box):
        return Box(kids[0], s.layer)
    if isinstance(s, At):
        return At(s.nominal, kids[0])
    if isinstance(s, BINARY):
        return type(s)(kids[0], kids[1], s.layer)
    if isinstance(s, (PolyDia, PolyBox)):
        return type(s)(s.modality, tuple(kids))
    if isinstance(s, QUANT_VAR):
        return type(s)(s.var, kids[0])
    if isinstance(s, QUANT_NOM):
        return type(s)(s.nominal, kids[0], s.layer)
    return s


# --- well-formedness -------------------------------------------------------

def _allowed(logic: LogicId, s: Sentence) -> bool:
    prof = profile(logic)
    if isinstance(s, Prop):
        return prof.base in ("prop", "hpl")
    if isinstance(s, Atom):
        return prof.base == "fol"
    if isinstance(s, (Not, And, Or, Implies)):
        return True
    if isinstance(s, (Dia, Box)):
        return prof.kripke and not prof.polyadic
    if isinstance(s, (PolyDia, PolyBox)):
        return prof.polyadic
    if isinstance(s, (Nom, At)):
        return prof.hybrid
    if isinstance(s, QUANT_VAR):
        return prof.first_order
    if isinstance(s, QUANT_NOM):
        return prof.hybrid and prof.kripke
    return False


NODE_NAMES = {
    Prop: "propositional atom", Atom: "first-order atom", Not: "negation",
    And: "conjunction", Or: "disjunction", Implies: "implication",
    Dia: "<>", Box: "[]", PolyDia: "polyadic possibility",
    PolyBox: "polyadic necessity", Nom: "nominal sentence", At: "@",
    ExistsVar: "first-order quantifier", ForallVar: "first-order quantifier",
    ExistsNom: "nominal quantifier", ForallNom: "nominal quantifier",
}


def check_allowed(logic: LogicId, s: Sentence, position: int | None = None) -> None:
    if not _allowed(logic, s):
        raise CapabilityError(
            f"{NODE_NAMES[type(s)]} is not available in {logic.value}", position
        )


def check_term(logic: LogicId, sig: Signature, t: Term, bound: frozenset[str]) -> None:
    prof = profile(logic)
    if not t.args and (t.func in bound or (not prof.kripke and t.func in sig.vars)):
        return
    if t.func not in sig.funcs:
        raise SentenceError(f"unknown function symbol {t.func!r}")
    if sig.funcs[t.func] != len(t.args):
        raise SentenceError(
            f"function {t.func!r} expects {sig.funcs[t.func]} arguments, got {len(t.args)}"
        )
    for a in t.args:
        check_term(logic, sig, a, bound)


def check_sentence(logic: LogicId | str, sig: Signature, s: Sentence) -> None:
    """Raise ``SentenceError`` unless ``s`` is a well-formed sentence over ``sig``."""
    logic = LogicId.parse(logic)
    _check(logic, sig, s, frozenset(), frozenset())


def _fresh(sig: Signature, name: str, bound_vars, bound_noms) -> None:
    if sig.declares(name) or name in bound_vars or name in bound_noms:
        raise SentenceError(f"bound symbol {name!r} is not fresh")


def _check(logic, sig, s, bvars: frozenset[str], bnoms: frozenset[str]) -> None:
    check_allowed(logic, s)
    prof = profile(logic)
    hhpl = logic is LogicId.HHPL
    if isinstance(s, LAYERED):
        if hhpl and s.layer not in (0, 1):
            raise SentenceError(f"HHPL {NODE_NAMES[type(s)]} needs a layer tag")
        if not hhpl and s.layer is not None:
            raise SentenceError("layer tags are only meaningful in HHPL")
    if isinstance(s, Prop):
        if s.name not in sig.props:
            raise SentenceError(f"unknown propositional symbol {s.name!r}")
    elif isinstance(s, Atom):
        if s.pred not in sig.preds:
            raise SentenceError(f"unknown predicate {s.pred!r}")
        if sig.preds[s.pred] != len(s.args):
            raise SentenceError(
                f"predicate {s.pred!r} expects {sig.preds[s.pred]} arguments, got {len(s.args)}"
            )
        for t in s.args:
            check_term(logic, sig, t, bvars)
    elif isinstance(s, (PolyDia, PolyBox)):
        mods = modalities_of(logic, sig)
        if s.modality not in mods:
            raise SentenceError(f"unknown modality {s.modality!r}")
        if mods[s.modality] != len(s.args):
            raise SentenceError(
                f"modality {s.modality!r} takes {mods[s.modality]} arguments, got {len(s.args)}"
            )
    elif isinstance(s, (Nom, At)):
        name = s.name if isinstance(s, Nom) else s.nominal
        noms = nominals_of(logic, sig)
        if name not in noms and name not in bnoms and not (
            not prof.kripke and name in bvars
        ):
            raise SentenceError(f"unknown nominal {name!r}")
    elif isinstance(s, QUANT_VAR):
        _fresh(sig, s.var, bvars, bnoms)
        _check(logic, sig, s.body, bvars | {s.var}, bnoms)
        return
    elif isinstance(s, QUANT_NOM):
        _fresh(sig, s.nominal, bvars, bnoms)
        if hhpl and layer_of(s.nominal) is None:
            raise SentenceError(f"HHPL nominal variable {s.nominal!r} needs a layer tag")
        if not hhpl and layer_of(s.nominal) is not None:
            raise SentenceError("layer tags are only meaningful in HHPL")
        _check(logic, sig, s.body, bvars, bnoms | {s.nominal})
        if hhpl:
            _check_layers(s)
        return
    for k in children(s):
        _check(logic, sig, k, bvars, bnoms)
    if hhpl:
        _check_layers(s)


def _check_layers(s: Sentence) -> None:
    if isinstance(s, At):
        lay = layer_of(s.nominal)
        if lay == 0 and layer(s.arg) != 0:
            raise SentenceError(f"@ {s.nominal} applied to a layer-1 sentence")
        return
    tag = getattr(s, "layer", None)
    if tag is None:
        return
    for k in children(s):
        if layer(k) > tag:
            raise SentenceError(
                f"layer-{tag} {NODE_NAMES[type(s)]} applied to a layer-1 sentence"
            )
    if isinstance(s, QUANT_NOM) and (layer_of(s.nominal) or 0) > tag:
        raise SentenceError(f"layer-{tag} quantifier over layer-1 nominal {s.nominal!r}")


# --- symbol maps -----------------------------------------------------------

def map_term(t: Term, f: Callable[[str], str]) -> Term:
    return Term(f(t.func), tuple(map_term(a, f) for a in t.args))


def free_symbols(s: Sentence) -> set[str]:
    """Signature symbols mentioned by ``s`` (bound names excluded)."""
    out: set[str] = set()
    _collect(s, frozenset(), out)
    return out


def _collect(s: Sentence, bound: frozenset[str], out: set[str]) -> None:
    def add(name: str) -> None:
        if name not in bound:
            out.add(name)

    if isinstance(s, Prop):
        add(s.name)
    elif isinstance(s, Atom):
        add(s.pred)
        for t in s.args:
            for n in term_symbols(t):
                add(n)
    elif isinstance(s, (PolyDia, PolyBox)):
        add(s.modality)
    elif isinstance(s, Nom):
        add(s.name)
    elif isinstance(s, At):
        add(s.nominal)
    if isinstance(s, QUANT_VAR):
        _collect(s.body, bound | {s.var}, out)
        return
    if isinstance(s, QUANT_NOM):
        _collect(s.body, bound | {s.nominal}, out)
        return
    for k in children(s):
        _collect(k, bound, out)


def bound_names(s: Sentence) -> set[str]:
    return {
        n.var if isinstance(n, QUANT_VAR) else n.nominal
        for n in walk(s)
        if isinstance(n, QUANT_VAR + QUANT_NOM)
    }
