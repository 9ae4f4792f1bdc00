"""Satisfaction evaluators for every logic instance.

Evaluation is set-based: ``Evaluator.truth`` returns the set of states at
which a sentence holds, memoised per (sentence, environment).  The
environment binds quantified names: a carrier element for a first-order
variable, a world for a nominal variable.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from ._frozen import FrozenMap
from .errors import SignatureError
from .kripke import FolModel, KripkeModel, Valuation, valuations
from .signature import DIAMOND, LogicId, Signature, layer_of, profile
from .sentences import (
    And, At, Atom, Box, Dia, ExistsNom, ExistsVar, ForallNom, ForallVar,
    Implies, Nom, Not, Or, PolyBox, PolyDia, Prop, Sentence, Term, layer,
)

EMPTY = FrozenMap()


# --- powers ------------------------------------------------------------------

@dataclass(frozen=True)
class PowerModel:
    """The X-power of a finite first-order model; elements are valuations."""

    base: FolModel
    exponent: frozenset[str]
    carrier: tuple[Valuation, ...]
    funcs: FrozenMap
    preds: FrozenMap

    def as_fol(self) -> FolModel:
        """Same structure with elements rendered as ``x=a,y=b`` strings."""
        from .kripke import valuation_str as s

        return FolModel(
            [s(a) for a in self.carrier],
            {f: {tuple(s(a) for a in args): s(v) for args, v in t.items()}
             for f, t in self.funcs.items()},
            {p: {tuple(s(a) for a in t) for t in rel} for p, rel in self.preds.items()},
        )


def power_model(base: FolModel, X) -> PowerModel:
    xs = sorted(X)
    if not xs:
        raise SignatureError("the exponent of a power must be nonempty")
    carrier = tuple(valuations(base.carrier, xs))
    funcs = {}
    for f, table in base.funcs.items():
        n = len(next(iter(table))) if table else 0
        funcs[f] = FrozenMap({
            args: tuple((x, table[tuple(dict(a)[x] for a in args)]) for x in xs)
            for args in itertools.product(carrier, repeat=n)
        })
    preds = {}
    for p, rel in base.preds.items():
        # pick one base tuple per coordinate x, then read the tuple columns off
        tuples = set()
        for choice in itertools.product(sorted(rel), repeat=len(xs)):
            n = len(choice[0])
            tuples.add(tuple(tuple((x, choice[j][k]) for j, x in enumerate(xs)) for k in range(n)))
        preds[p] = frozenset(tuples)
    return PowerModel(base, frozenset(xs), carrier, FrozenMap(funcs), FrozenMap(preds))


@lru_cache(maxsize=256)
def _power(base: FolModel, X: frozenset[str]) -> PowerModel:
    return power_model(base, X)


# --- evaluator -----------------------------------------------------------------

class Evaluator:
    """Truth sets of sentences in one model of one logic."""

    def __init__(self, logic: LogicId, sig: Signature, model) -> None:
        self.logic = LogicId.parse(logic)
        self.sig = sig
        self.model = model
        self.prof = profile(self.logic)
        if self.prof.kripke:
            self.states: tuple = model.worlds
        else:
            self.states = tuple(valuations(model.carrier, sig.vars))
        self.all = frozenset(self.states)
        self._memo: dict = {}
        self._succ: dict = {}
        self._inner: dict = {}

    def holds(self, state, s: Sentence, env: FrozenMap = EMPTY) -> bool:
        return state in self.truth(s, env)

    def truth(self, s: Sentence, env: FrozenMap = EMPTY) -> frozenset:
        key = (s, env)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = frozenset(self._eval(s, env))
        return hit

    # relations -----------------------------------------------------------

    def successors(self, modality: str) -> dict:
        """state -> list of argument tuples along ``modality``."""
        got = self._succ.get(modality)
        if got is None:
            if self.prof.kripke:
                rel = self.model.frame.relations.get(modality, frozenset())
            else:
                rel = _power(self.model, self.sig.vars).preds.get(modality, frozenset())
            got = defaultdict(list)
            for t in rel:
                got[t[0]].append(t[1:])
            self._succ[modality] = got
        return got

    def nominal_state(self, name: str, env: FrozenMap):
        if self.prof.kripke:
            return env[name] if name in env else self.model.frame.nominals[name]
        a = env[name] if name in env else self.model.constant(name)
        return tuple((x, a) for x in sorted(self.sig.vars))

    # dispatch --------------------------------------------------------------

    def _eval(self, s: Sentence, env: FrozenMap):
        if self.logic is LogicId.HHPL and layer(s) == 0:
            return self._inner_global(s, env)
        T = self.truth
        if isinstance(s, Not):
            return self.all - T(s.arg, env)
        if isinstance(s, And):
            return T(s.left, env) & T(s.right, env)
        if isinstance(s, Or):
            return T(s.left, env) | T(s.right, env)
        if isinstance(s, Implies):
            return (self.all - T(s.left, env)) | T(s.right, env)
        if isinstance(s, (Dia, Box)):
            s = (PolyDia if isinstance(s, Dia) else PolyBox)(DIAMOND, (s.arg,))
        if isinstance(s, PolyDia):
            args = [T(a, env) for a in s.args]
            succ = self.successors(s.modality)
            return {
                w for w in self.states
                if any(all(v in a for v, a in zip(t, args)) for t in succ.get(w, ()))
            }
        if isinstance(s, PolyBox):
            args = [T(a, env) for a in s.args]
            succ = self.successors(s.modality)
            return {
                w for w in self.states
                if all(any(v in a for v, a in zip(t, args)) for t in succ.get(w, ()))
            }
        if isinstance(s, Nom):
            return {self.nominal_state(s.name, env)}
        if isinstance(s, At):
            return self.all if self.nominal_state(s.nominal, env) in T(s.arg, env) else ()
        if isinstance(s, (ExistsVar, ForallVar, ExistsNom, ForallNom)):
            name = s.var if isinstance(s, (ExistsVar, ForallVar)) else s.nominal
            parts = [T(s.body, env.set(name, v)) for v in self.domain(name)]
            if isinstance(s, (ExistsVar, ExistsNom)):
                return frozenset().union(*parts)
            return self.all.intersection(*parts)
        if isinstance(s, Prop):
            return {w for w in self.states if s.name in self.model.valuation[w]}
        if isinstance(s, Atom):
            return self._atom(s, env)
        raise TypeError(f"not a sentence: {s!r}")

    def domain(self, name: str) -> tuple:
        """Range of a quantified name."""
        if not self.prof.kripke:
            return self.model.carrier
        if self.prof.base == "fol":
            return self.model.valuation[self.states[0]].carrier
        if self.logic is LogicId.HHPL and layer_of(name) == 0:
            return self.model.valuation[self.states[0]].worlds
        return self.states

    def _atom(self, s: Atom, env: FrozenMap):
        if self.prof.kripke:
            out = set()
            for w in self.states:
                m = self.model.valuation[w]
                if tuple(_term(m, t, env) for t in s.args) in m.preds[s.pred]:
                    out.add(w)
            return out
        rel = self.model.preds[s.pred]
        out = set()
        for v in self.states:
            e = dict(env)
            e.update(v)
            if tuple(_term(self.model, t, e) for t in s.args) in rel:
                out.add(v)
        return out

    def _inner_global(self, s: Sentence, env: FrozenMap):
        inner_env = FrozenMap({k: v for k, v in env.items() if layer_of(k) == 0})
        out = set()
        for u in self.states:
            ev = self._inner.get(u)
            if ev is None:
                ev = self._inner[u] = Evaluator(LogicId.HPL, self.sig.inner(), self.model.valuation[u])
            if ev.truth(s, inner_env) == ev.all:
                out.add(u)
        return out


def _term(m: FolModel, t: Term, env) -> str:
    if not t.args and t.func in env:
        return env[t.func]
    return m.funcs[t.func][tuple(_term(m, a, env) for a in t.args)]


@lru_cache(maxsize=512)
def evaluator(logic: LogicId, sig: Signature, model) -> Evaluator:
    """Shared evaluator per (logic, signature, model); models are immutable."""
    return Evaluator(logic, sig, model)


def evaluate(logic: LogicId | str, sig: Signature, model, state, s: Sentence) -> bool:
    """Unchecked evaluation; ``core.satisfies`` adds validation."""
    return evaluator(LogicId.parse(logic), sig, model).holds(state, s)


# --- expansions ----------------------------------------------------------------

@dataclass(frozen=True)
class ExpansionSpec:
    """Add one fresh symbol to ``sig`` (a variable or a nominal) and expand ``model``."""

    sig: Signature
    model: object
    symbol: str
    kind: str = "var"  # "var" or "nominal"

    def __post_init__(self) -> None:
        if self.kind not in ("var", "nominal"):
            raise ValueError(f"unknown expansion kind {self.kind!r}")
        if self.sig.declares(self.symbol):
            raise SignatureError(f"expansion symbol {self.symbol!r} is not fresh")

    def signature(self, logic: LogicId | str) -> Signature:
        prof = profile(logic)
        if self.kind == "nominal" and prof.kripke:
            return self.sig.add_nominal(self.symbol)
        return self.sig.add_constant(self.symbol)


def enumerate_expansions(logic: LogicId | str, spec: ExpansionSpec) -> Iterator:
    """One expanded model per interpretation of the new symbol."""
    logic = LogicId.parse(logic)
    prof = profile(logic)
    m, x = spec.model, spec.symbol
    if not prof.kripke:
        for a in m.carrier:
            yield m.with_constant(x, a)
        return
    if spec.kind == "var":
        carrier = m.valuation[m.worlds[0]].carrier
        for a in carrier:
            yield KripkeModel(m.frame, {w: b.with_constant(x, a) for w, b in m.valuation.items()})
        return
    if logic is LogicId.HHPL and layer_of(x) == 0:
        first = m.valuation[m.worlds[0]]
        for v in first.worlds:
            yield KripkeModel(m.frame, {
                w: KripkeModel(b.frame.with_nominal(x, v), b.valuation)
                for w, b in m.valuation.items()
            })
        return
    for w in m.worlds:
        yield KripkeModel(m.frame.with_nominal(x, w), m.valuation)
