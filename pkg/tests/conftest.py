from __future__ import annotations

import itertools

import pytest

from stratinst import FolModel, KripkeModel, Signature
from stratinst.sentences import (
    And, At, Atom, Box, Dia, ExistsNom, ExistsVar, ForallNom, ForallVar, Implies, Nom, Not,
    Or, PolyBox, PolyDia, Prop,
)
from stratinst.signature import DIAMOND


@pytest.fixture
def pq():
    return Signature(props={"p", "q"})


@pytest.fixture
def k1():
    """Worlds 0 -> 1, p true only at 1."""
    return KripkeModel.build(["0", "1"], [("0", "1")], {"0": set(), "1": {"p"}})


@pytest.fixture
def hpl_sig():
    return Signature(props={"p"}, nominals={"i"})


@pytest.fixture
def k2():
    """Worlds a -> b, nominal i names b, p true at b."""
    return KripkeModel.build(["a", "b"], [("a", "b")], {"a": set(), "b": {"p"}}, {"i": "b"})


@pytest.fixture
def ofol_sig():
    return Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x"})


@pytest.fixture
def ofol_model():
    return FolModel(["0", "1"], {"c": {(): "0"}}, {"q": [("1",)]})


# --- reference evaluator --------------------------------------------------------------
# A deliberately naive, state-at-a-time reading of the satisfaction clauses,
# written without reference to the library's set-based evaluator.

def _fol_term(m: FolModel, t, env: dict, state: dict) -> str:
    if not t.args and t.func in env:
        return env[t.func]
    if not t.args and t.func in state:
        return state[t.func]
    return m.funcs[t.func][tuple(_fol_term(m, a, env, state) for a in t.args)]


def naive_kripke(model: KripkeModel, w: str, s, env=None) -> bool:
    """MPL, MMPL, HPL, MHPL and MFOL."""
    env = env or {}
    rec = lambda v, t, e=env: naive_kripke(model, v, t, e)  # noqa: E731
    frame = model.frame

    def named(i):
        return env[i] if i in env else frame.nominals[i]

    if isinstance(s, Prop):
        return s.name in model.valuation[w]
    if isinstance(s, Atom):
        m = model.valuation[w]
        return tuple(_fol_term(m, t, env, {}) for t in s.args) in m.preds[s.pred]
    if isinstance(s, Not):
        return not rec(w, s.arg)
    if isinstance(s, And):
        return rec(w, s.left) and rec(w, s.right)
    if isinstance(s, Or):
        return rec(w, s.left) or rec(w, s.right)
    if isinstance(s, Implies):
        return (not rec(w, s.left)) or rec(w, s.right)
    if isinstance(s, Dia):
        return any(rec(v, s.arg) for (u, v) in frame.relations[DIAMOND] if u == w)
    if isinstance(s, Box):
        return all(rec(v, s.arg) for (u, v) in frame.relations[DIAMOND] if u == w)
    if isinstance(s, PolyDia):
        return any(t[0] == w and all(rec(v, a) for v, a in zip(t[1:], s.args))
                   for t in frame.relations[s.modality])
    if isinstance(s, PolyBox):
        return all(any(rec(v, a) for v, a in zip(t[1:], s.args))
                   for t in frame.relations[s.modality] if t[0] == w)
    if isinstance(s, Nom):
        return w == named(s.name)
    if isinstance(s, At):
        return rec(named(s.nominal), s.arg)
    if isinstance(s, (ExistsNom, ForallNom)):
        found = (rec(w, s.body, {**env, s.nominal: v}) for v in model.worlds)
        return any(found) if isinstance(s, ExistsNom) else all(found)
    if isinstance(s, (ExistsVar, ForallVar)):
        carrier = model.valuation[model.worlds[0]].carrier
        found = (rec(w, s.body, {**env, s.var: a}) for a in carrier)
        return any(found) if isinstance(s, ExistsVar) else all(found)
    raise TypeError(s)


def naive_ofol(sig: Signature, m: FolModel, state: dict, s, env=None) -> bool:
    """OFOL, MOFOL, HOFOL and HMOFOL; ``state`` maps each variable of X to an element."""
    env = env or {}
    xs = sorted(sig.vars)
    rec = lambda st, t, e=env: naive_ofol(sig, m, st, t, e)  # noqa: E731

    def const_state(name):
        a = env[name] if name in env else m.funcs[name][()]
        return {x: a for x in xs}

    if isinstance(s, Atom):
        return tuple(_fol_term(m, t, env, state) for t in s.args) in m.preds[s.pred]
    if isinstance(s, Not):
        return not rec(state, s.arg)
    if isinstance(s, And):
        return rec(state, s.left) and rec(state, s.right)
    if isinstance(s, Or):
        return rec(state, s.left) or rec(state, s.right)
    if isinstance(s, Implies):
        return (not rec(state, s.left)) or rec(state, s.right)
    if isinstance(s, (ExistsVar, ForallVar)):
        found = (rec(state, s.body, {**env, s.var: a}) for a in m.carrier)
        return any(found) if isinstance(s, ExistsVar) else all(found)
    if isinstance(s, Nom):
        return state == const_state(s.name)
    if isinstance(s, At):
        return rec(const_state(s.nominal), s.arg)
    if isinstance(s, (PolyDia, PolyBox)):
        rel = m.preds[s.modality]
        n = len(s.args)
        all_states = [dict(zip(xs, vals)) for vals in itertools.product(m.carrier, repeat=len(xs))]
        succ = [
            seq for seq in itertools.product(all_states, repeat=n)
            if all((state[x], *(v[x] for v in seq)) in rel for x in xs)
        ]
        if isinstance(s, PolyDia):
            return any(all(rec(v, a) for v, a in zip(seq, s.args)) for seq in succ)
        return all(any(rec(v, a) for v, a in zip(seq, s.args)) for seq in succ)
    raise TypeError(s)
