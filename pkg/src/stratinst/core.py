"""Stratified satisfaction, signature-change actions, local/global institutions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from ._frozen import FrozenMap
from .errors import BoundsError, ModelValidationError, StateError
from .kripke import FolModel, Frame, KripkeModel, validate_model, valuations
from .logics import evaluator
from .sentences import (
    QUANT_NOM, QUANT_VAR, At, Atom, Nom, PolyBox, PolyDia, Prop, Sentence,
    Term, check_sentence, children, rebuild,
)
from .signature import (
    DIAMOND, LogicId, Profile, Signature, SignatureMorphism, check_signature, layer_of, profile,
)


@lru_cache(maxsize=1024)
def _checked(logic: LogicId, sig: Signature, model) -> None:
    check_signature(logic, sig)
    v = validate_model(logic, sig, model)
    if v:
        raise ModelValidationError(v)


def stratification(logic: LogicId | str, sig: Signature, model) -> frozenset:
    """The state set of ``model``: its worlds, or the valuations of X for OFOL logics."""
    logic = LogicId.parse(logic)
    _checked(logic, sig, model)
    return evaluator(logic, sig, model).all


def satisfies(logic: LogicId | str, sig: Signature, model, state, sentence: Sentence) -> bool:
    logic = LogicId.parse(logic)
    _checked(logic, sig, model)
    check_sentence(logic, sig, sentence)
    ev = evaluator(logic, sig, model)
    if state not in ev.all:
        raise StateError(f"{state!r} is not a state of the model")
    return ev.holds(state, sentence)


def satisfies_global(logic: LogicId | str, sig: Signature, model, sentence: Sentence) -> bool:
    logic = LogicId.parse(logic)
    _checked(logic, sig, model)
    check_sentence(logic, sig, sentence)
    ev = evaluator(logic, sig, model)
    return ev.truth(sentence) == ev.all


def truth_set(logic: LogicId | str, sig: Signature, model, sentence: Sentence) -> frozenset:
    """All states satisfying ``sentence``."""
    logic = LogicId.parse(logic)
    _checked(logic, sig, model)
    check_sentence(logic, sig, sentence)
    return evaluator(logic, sig, model).truth(sentence)


@dataclass(frozen=True)
class PointedModel:
    """A model with a designated state; the models of the local institution."""

    logic: LogicId
    sig: Signature
    model: object
    state: object

    def __post_init__(self) -> None:
        object.__setattr__(self, "logic", LogicId.parse(self.logic))
        if self.state not in stratification(self.logic, self.sig, self.model):
            raise StateError(f"{self.state!r} is not a state of the model")

    def satisfies(self, sentence: Sentence) -> bool:
        return satisfies(self.logic, self.sig, self.model, self.state, sentence)


# --- signature morphisms acting on sentences and models -------------------------

def _fresh_name(name: str, taken: set[str]) -> str:
    base, tag = (name[:-2], name[-2:]) if layer_of(name) is not None else (name, "")
    for n in itertools.count(1):
        cand = f"{base}_{n}{tag}"
        if cand not in taken:
            return cand
    raise AssertionError  # pragma: no cover


def translate_sentence(phi: SignatureMorphism, sentence: Sentence) -> Sentence:
    """Replace every signature symbol by its image under ``phi``.

    Quantified names are kept, except that a name colliding with a target
    symbol is renamed apart so the translation stays capture-free.
    """
    taken = set(phi.target.symbols())
    return _translate(phi, sentence, FrozenMap(), taken)


def _translate(phi, s, bound: FrozenMap, taken: set[str]) -> Sentence:
    def sym(name: str) -> str:
        return bound[name] if name in bound else phi(name)

    def term(t: Term) -> Term:
        return Term(sym(t.func), tuple(term(a) for a in t.args))

    if isinstance(s, Prop):
        return Prop(phi(s.name))
    if isinstance(s, Atom):
        return Atom(phi(s.pred), tuple(term(t) for t in s.args))
    if isinstance(s, Nom):
        return Nom(sym(s.name))
    if isinstance(s, At):
        return At(sym(s.nominal), _translate(phi, s.arg, bound, taken))
    if isinstance(s, (PolyDia, PolyBox)):
        return type(s)(phi(s.modality), tuple(_translate(phi, a, bound, taken) for a in s.args))
    if isinstance(s, QUANT_VAR + QUANT_NOM):
        name = s.var if isinstance(s, QUANT_VAR) else s.nominal
        new = name if name not in taken else _fresh_name(name, taken | set(bound.values()))
        body = _translate(phi, s.body, bound.set(name, new), taken | {new})
        if isinstance(s, QUANT_VAR):
            return type(s)(new, body)
        return type(s)(new, body, s.layer)
    return rebuild(s, tuple(_translate(phi, k, bound, taken) for k in children(s)))


def _reduct_fol(phi: SignatureMorphism, m: FolModel) -> FolModel:
    src = phi.source
    return FolModel(
        m.carrier,
        {f: m.funcs[phi(f)] for f in src.funcs},
        {p: m.preds[phi(p)] for p in src.preds},
    )


def reduct_model(phi: SignatureMorphism, model):
    """The reduct of a ``phi.target``-model to ``phi.source``."""
    src = phi.source
    if isinstance(model, FolModel):
        return _reduct_fol(phi, model)
    frame = model.frame
    rels = {lam: frame.relations[phi(lam)] for lam in src.modalities}
    if DIAMOND in frame.relations and DIAMOND not in src.modalities:
        rels[DIAMOND] = frame.relations[DIAMOND]
    noms = {i: frame.nominals[phi(i)] for i in src.nominals if phi(i) in frame.nominals}
    new_frame = Frame(model.worlds, rels, noms)

    def base(b):
        if isinstance(b, FolModel):
            return _reduct_fol(phi, b)
        if isinstance(b, KripkeModel):
            return reduct_model(phi, b)
        return {p for p in src.props if phi(p) in b}

    return KripkeModel(new_frame, {w: base(b) for w, b in model.valuation.items()})


def state_map(phi: SignatureMorphism, model, state):
    """Map a state of ``model`` to the corresponding state of its reduct."""
    if isinstance(model, FolModel):
        return tuple((x, a) for x, a in state if x in phi.source.vars)
    return state


@dataclass(frozen=True)
class SatCondReport:
    states: int
    mismatches: tuple = ()  # (state, reduct side, translated side)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def __bool__(self) -> bool:
        return self.passed


def check_satisfaction_condition(
    logic: LogicId | str, phi: SignatureMorphism, model, sentence: Sentence
) -> SatCondReport:
    """Compare both sides of the satisfaction condition at every state of ``model``."""
    logic = LogicId.parse(logic)
    reduct = reduct_model(phi, model)
    translated = translate_sentence(phi, sentence)
    src_truth = truth_set(logic, phi.source, reduct, sentence)
    tgt_truth = truth_set(logic, phi.target, model, translated)
    bad = []
    states = sorted(stratification(logic, phi.target, model))
    for w in states:
        lhs = state_map(phi, model, w) in src_truth
        rhs = w in tgt_truth
        if lhs != rhs:
            bad.append((w, lhs, rhs))
    return SatCondReport(len(states), tuple(bad))


# --- bounded entailment -----------------------------------------------------------

@dataclass(frozen=True)
class Entailment:
    """Result of a bounded entailment check.

    ``holds`` is relative to the bounds; ``counterexample`` is a
    ``(model, state)`` pair (``state`` is ``None`` in global mode).
    """

    holds: bool
    mode: str
    models_checked: int
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def entails(
    logic: LogicId | str,
    sig: Signature,
    hypotheses: Iterable[Sentence],
    goal: Sentence,
    mode: str = "local",
    max_worlds: int = 2,
    max_carrier: int = 2,
    limit: int = 200_000,
) -> Entailment:
    from .generate import enumerate_models

    logic = LogicId.parse(logic)
    if mode not in ("local", "global"):
        raise ValueError(f"mode must be 'local' or 'global', not {mode!r}")
    if max_worlds < 1 or max_carrier < 1:
        raise BoundsError("entailment bounds must be at least 1")
    check_signature(logic, sig)
    hyps = list(hypotheses)
    for s in hyps + [goal]:
        check_sentence(logic, sig, s)
    count = 0
    for model in enumerate_models(logic, sig, max_worlds, max_carrier, limit=limit):
        count += 1
        ev = evaluator(logic, sig, model)
        if mode == "local":
            good = ev.all.intersection(*(ev.truth(h) for h in hyps))
            bad = good - ev.truth(goal)
            if bad:
                return Entailment(False, mode, count, (model, min(bad)))
        elif all(ev.truth(h) == ev.all for h in hyps) and ev.truth(goal) != ev.all:
            return Entailment(False, mode, count, (model, None))
    return Entailment(True, mode, count)


# --- capabilities -----------------------------------------------------------------

@dataclass(frozen=True)
class Capabilities:
    """Which external connectives, quantifiers, modalities and hybrid features a logic has."""

    name: str
    conj: bool = True
    disj: bool = True
    neg: bool = True
    impl: bool = True
    forall_var: bool = False
    exists_var: bool = False
    forall_nom: bool = False
    exists_nom: bool = False
    possibility: bool = False
    necessity: bool = False
    nominal: bool = False
    at: bool = False
    unary_modal: bool = False  # a single ◇/□ pair rather than polyadic ⟨λ⟩/[λ]
    layers: int = 1  # nominal layers

    def row(self) -> tuple[str, ...]:
        """Table cells, in the order of ``COLUMNS``."""
        tick = "✓"

        def quant(sym: str, var: bool, nom: bool) -> str:
            if self.layers == 2 and nom:
                return f"({sym}i⁰), ({sym}i¹)"
            parts = ([f"({sym}x)"] if var else []) + ([f"({sym}i)"] if nom else [])
            return ", ".join(parts)

        def modal(sym: str, present: bool) -> str:
            return (sym if self.unary_modal else tick) if present else ""

        def hybrid(two: str, present: bool) -> str:
            return (two if self.layers == 2 else tick) if present else ""

        return (
            tick if self.conj else "",
            tick if self.disj else "",
            tick if self.neg else "",
            tick if self.impl else "",
            quant("∀", self.forall_var, self.forall_nom),
            quant("∃", self.exists_var, self.exists_nom),
            modal("◇", self.possibility),
            modal("□", self.necessity),
            hybrid("⟨i⁰⟩, ⟨i¹⟩", self.nominal),
            hybrid("@i⁰, @i¹", self.at),
        )


COLUMNS = ("∧", "∨", "¬", "⇒", "(∀χ)", "(∃χ)", "⟨λ⟩", "[λ]", "⟨i⟩", "@i")


def _capabilities(name: str, prof: Profile, layers: int = 1) -> Capabilities:
    modal = prof.kripke or prof.polyadic
    return Capabilities(
        name,
        forall_var=prof.first_order, exists_var=prof.first_order,
        forall_nom=prof.hybrid, exists_nom=prof.hybrid,
        possibility=modal, necessity=modal,
        nominal=prof.hybrid, at=prof.hybrid,
        unary_modal=prof.kripke and not prof.polyadic,
        layers=layers,
    )


def capabilities(logic: LogicId | str) -> Capabilities:
    logic = LogicId.parse(logic)
    return _capabilities(logic.value, profile(logic), 2 if logic is LogicId.HHPL else 1)


# Kripke first-order hybrids that only appear in the overview table; they have
# no evaluator here.
TABLE_ONLY = {
    "HFOL": Profile(kripke=True, base="fol", hybrid=True, first_order=True),
    "MMFOL": Profile(kripke=True, base="fol", polyadic=True, first_order=True),
    "MHFOL": Profile(kripke=True, base="fol", polyadic=True, hybrid=True, first_order=True),
}
TABLE_ORDER = (
    "MPL", "MFOL", "HPL", "HFOL", "MMPL", "MHPL", "MMFOL", "MHFOL",
    "HHPL", "OFOL", "MOFOL", "HOFOL", "HMOFOL",
)


def capability_table() -> list[tuple[str, ...]]:
    """One row per logic of the overview table: name followed by the ``COLUMNS`` cells."""
    rows = []
    for name in TABLE_ORDER:
        caps = _capabilities(name, TABLE_ONLY[name]) if name in TABLE_ONLY else capabilities(name)
        rows.append((name, *caps.row()))
    return rows


def states_of(logic: LogicId | str, sig: Signature, model) -> tuple:
    """Stratification in a deterministic order."""
    logic = LogicId.parse(logic)
    if profile(logic).kripke:
        return tuple(model.worlds)
    return tuple(valuations(model.carrier, sig.vars))
