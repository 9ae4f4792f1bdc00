"""Model, sentence and morphism generators used by the verifiers and tests.

Everything here is deterministic given its ``random.Random`` instance, and the
exhaustive enumerators yield in a fixed order.
"""
from __future__ import annotations

import itertools
import random
from typing import Iterator

from .errors import BoundsError
from .kripke import FolModel, Frame, KripkeModel
from .sentences import (
    And, At, Atom, Box, Dia, ExistsNom, ExistsVar, ForallNom, ForallVar,
    Implies, Nom, Not, Or, PolyBox, PolyDia, Prop, Sentence, Term, layer,
)
from .signature import (
    DIAMOND, LogicId, Signature, SignatureMorphism, layer_of, modalities_of,
    nominals_of, profile,
)

MINIMAL: dict[LogicId, Signature] = {
    LogicId.MPL: Signature(props={"p"}),
    LogicId.MPLt: Signature(props={"p"}),
    LogicId.MPLs4: Signature(props={"p"}),
    LogicId.MPLs5: Signature(props={"p"}),
    LogicId.MMPL: Signature(props={"p"}, modalities={"l": 2}),
    LogicId.HPL: Signature(props={"p"}, nominals={"i"}),
    LogicId.MHPL: Signature(props={"p"}, nominals={"i"}, modalities={"l": 2}),
    LogicId.MFOL: Signature(funcs={"c": 0}, preds={"q": 1}),
    LogicId.HHPL: Signature(props={"p"}, nominals={"i^0", "j^1"}),
    LogicId.OFOL: Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x"}),
    LogicId.MOFOL: Signature(preds={"q": 1, "r": 2}, vars={"x"}),
    LogicId.HOFOL: Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x"}),
    LogicId.HMOFOL: Signature(funcs={"c": 0}, preds={"r": 2}, vars={"x"}),
}

# Richer signatures for random sweeps: functions, several symbols, arity-1 and
# arity-2 modalities.
RICH: dict[LogicId, Signature] = {
    LogicId.MPL: Signature(props={"p", "q"}),
    LogicId.MPLt: Signature(props={"p", "q"}),
    LogicId.MPLs4: Signature(props={"p", "q"}),
    LogicId.MPLs5: Signature(props={"p", "q"}),
    LogicId.MMPL: Signature(props={"p", "q"}, modalities={"a": 1, "l": 2}),
    LogicId.HPL: Signature(props={"p", "q"}, nominals={"i", "j"}),
    LogicId.MHPL: Signature(props={"p", "q"}, nominals={"i"}, modalities={"a": 1, "l": 2}),
    LogicId.MFOL: Signature(funcs={"c": 0, "f": 1}, preds={"q": 1, "e": 2}),
    LogicId.HHPL: Signature(props={"p", "q"}, nominals={"i^0", "j^1"}),
    LogicId.OFOL: Signature(funcs={"c": 0, "f": 1}, preds={"q": 1, "e": 2}, vars={"x", "y"}),
    LogicId.MOFOL: Signature(funcs={"c": 0}, preds={"q": 1, "r": 2}, vars={"x"}),
    LogicId.HOFOL: Signature(funcs={"c": 0, "d": 0}, preds={"q": 1}, vars={"x", "y"}),
    LogicId.HMOFOL: Signature(funcs={"c": 0}, preds={"q": 1, "r": 2}, vars={"x"}),
}

VAR_NAMES = ("u", "v")
NOM_NAMES = ("k", "m")


def minimal_signature(logic: LogicId | str) -> Signature:
    return MINIMAL[LogicId.parse(logic)]


def rich_signature(logic: LogicId | str) -> Signature:
    return RICH[LogicId.parse(logic)]


# --- models ----------------------------------------------------------------------

def world_names(n: int) -> list[str]:
    return [str(k) for k in range(n)]


def _subsets(items: list) -> Iterator[frozenset]:
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def closure(rel: set, worlds, frame_class: str | None) -> frozenset:
    """Smallest relation of ``frame_class`` containing ``rel``."""
    rel = set(rel)
    if frame_class in ("reflexive", "preorder", "equivalence"):
        rel |= {(w, w) for w in worlds}
    if frame_class == "equivalence":
        rel |= {(b, a) for a, b in rel}
    if frame_class in ("preorder", "equivalence"):
        changed = True
        while changed:
            extra = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
            rel |= extra
            changed = bool(extra)
    return frozenset(rel)


def _frame_class_ok(rel: frozenset, worlds, frame_class: str | None) -> bool:
    return frame_class is None or closure(rel, worlds, frame_class) == rel


def _fol_structures(sig: Signature, carrier: list[str], funcs=None) -> list[tuple[dict, dict]]:
    """All (funcs, preds) interpretations over ``carrier``."""
    funcs = sig.funcs if funcs is None else funcs
    f_choices = []
    for f, n in sorted(funcs.items()):
        args = list(itertools.product(carrier, repeat=n))
        f_choices.append([(f, dict(zip(args, vals)))
                          for vals in itertools.product(carrier, repeat=len(args))])
    p_choices = []
    for p, n in sorted(sig.preds.items()):
        tuples = list(itertools.product(carrier, repeat=n))
        p_choices.append([(p, s) for s in _subsets(tuples)])
    out = []
    for fs in itertools.product(*f_choices):
        for ps in itertools.product(*p_choices):
            out.append((dict(fs), dict(ps)))
    return out


def _count_fol(sig: Signature, c: int, funcs=None) -> int:
    funcs = sig.funcs if funcs is None else funcs
    total = 1
    for n in funcs.values():
        total *= c ** (c ** n)
    for n in sig.preds.values():
        total *= 2 ** (c ** n)
    return total


def count_models(logic: LogicId | str, sig: Signature, max_worlds: int, max_carrier: int) -> int:
    """Upper bound on the number of models ``enumerate_models`` yields."""
    logic = LogicId.parse(logic)
    prof = profile(logic)
    if not prof.kripke:
        return sum(_count_fol(sig, c) for c in range(1, max_carrier + 1))
    mods = modalities_of(logic, sig)
    total = 0
    for n in range(1, max_worlds + 1):
        frames = 1
        for a in mods.values():
            frames *= 2 ** (n ** (a + 1))
        outer_noms = [i for i in sig.nominals if logic is not LogicId.HHPL or layer_of(i) == 1]
        frames *= n ** len(outer_noms)
        if prof.base == "prop":
            total += frames * (2 ** len(sig.props)) ** n
        elif prof.base == "fol":
            consts = {f: 0 for f in sig.constants}
            rest = {f: k for f, k in sig.funcs.items() if k > 0}
            for c in range(1, max_carrier + 1):
                per_world = _count_fol(sig, c, rest)
                total += frames * _count_fol(Signature(), c, consts) * per_world ** n
        else:
            inner = sig.inner()
            for m in range(1, max_worlds + 1):
                per = 2 ** (m * m) * (2 ** len(inner.props)) ** m
                total += frames * m ** len(inner.nominals) * per ** n
    return total


def enumerate_models(
    logic: LogicId | str,
    sig: Signature,
    max_worlds: int,
    max_carrier: int,
    limit: int = 200_000,
) -> Iterator:
    """Every model with at most ``max_worlds`` worlds and carriers of size at most ``max_carrier``."""
    logic = LogicId.parse(logic)
    if max_worlds < 1 or max_carrier < 1:
        raise BoundsError("model bounds must be at least 1")
    total = count_models(logic, sig, max_worlds, max_carrier)
    if total > limit:
        raise BoundsError(
            f"{total} models within bounds exceeds the enumeration limit {limit}"
        )
    prof = profile(logic)
    if not prof.kripke:
        for c in range(1, max_carrier + 1):
            carrier = world_names(c)
            for fs, ps in _fol_structures(sig, carrier):
                yield FolModel(carrier, fs, ps)
        return
    for n in range(1, max_worlds + 1):
        ws = world_names(n)
        for frame in _frames(logic, sig, ws):
            yield from _with_bases(logic, sig, frame, max_worlds, max_carrier)


def _frames(logic: LogicId, sig: Signature, ws: list[str]) -> Iterator[Frame]:
    prof = profile(logic)
    mods = sorted(modalities_of(logic, sig).items())
    rel_choices = []
    for lam, a in mods:
        tuples = list(itertools.product(ws, repeat=a + 1))
        opts = [s for s in _subsets(tuples)
                if lam != DIAMOND or _frame_class_ok(s, ws, prof.frame_class)]
        rel_choices.append([(lam, s) for s in opts])
    noms = sorted(i for i in sig.nominals if logic is not LogicId.HHPL or layer_of(i) == 1)
    for rels in itertools.product(*rel_choices):
        for assign in itertools.product(ws, repeat=len(noms)):
            yield Frame(ws, dict(rels), dict(zip(noms, assign)))


def _with_bases(logic, sig, frame, max_worlds, max_carrier) -> Iterator[KripkeModel]:
    prof = profile(logic)
    ws = frame.worlds
    if prof.base == "prop":
        for vals in itertools.product(list(_subsets(sorted(sig.props))), repeat=len(ws)):
            yield KripkeModel(frame, dict(zip(ws, vals)))
    elif prof.base == "fol":
        consts = {f: 0 for f in sig.constants}
        rest = {f: k for f, k in sig.funcs.items() if k > 0}
        for c in range(1, max_carrier + 1):
            carrier = world_names(c)
            shared = _fol_structures(Signature(), carrier, consts)
            local = _fol_structures(sig, carrier, rest)
            for cf, _ in shared:
                for combo in itertools.product(local, repeat=len(ws)):
                    yield KripkeModel(frame, {
                        w: FolModel(carrier, {**cf, **fs}, ps)
                        for w, (fs, ps) in zip(ws, combo)
                    })
    else:
        inner = sig.inner()
        for m in range(1, max_worlds + 1):
            iws = world_names(m)
            noms = sorted(inner.nominals)
            for assign in itertools.product(iws, repeat=len(noms)):
                inner_models = [
                    KripkeModel(Frame(iws, {DIAMOND: r}, dict(zip(noms, assign))), dict(zip(iws, vals)))
                    for r in _subsets(list(itertools.product(iws, repeat=2)))
                    for vals in itertools.product(list(_subsets(sorted(inner.props))), repeat=m)
                ]
                for combo in itertools.product(inner_models, repeat=len(ws)):
                    yield KripkeModel(frame, dict(zip(ws, combo)))


def _random_subset(rng: random.Random, items, p: float = 0.4) -> frozenset:
    return frozenset(t for t in items if rng.random() < p)


def _random_fol(rng, sig: Signature, carrier: list[str], funcs=None, fixed=None) -> FolModel:
    funcs = sig.funcs if funcs is None else funcs
    fs = dict(fixed or {})
    for f, n in sorted(funcs.items()):
        fs[f] = {args: rng.choice(carrier) for args in itertools.product(carrier, repeat=n)}
    ps = {p: _random_subset(rng, itertools.product(carrier, repeat=n))
          for p, n in sorted(sig.preds.items())}
    return FolModel(carrier, fs, ps)


def random_model(
    rng: random.Random, logic: LogicId | str, sig: Signature, max_worlds: int = 3, max_carrier: int = 2,
):
    logic = LogicId.parse(logic)
    prof = profile(logic)
    if not prof.kripke:
        return _random_fol(rng, sig, world_names(rng.randint(1, max_carrier)))
    ws = world_names(rng.randint(1, max_worlds))
    rels = {}
    for lam, a in sorted(modalities_of(logic, sig).items()):
        r = _random_subset(rng, itertools.product(ws, repeat=a + 1), 0.35)
        if lam == DIAMOND:
            r = closure(r, ws, prof.frame_class)
        rels[lam] = r
    noms = sorted(i for i in sig.nominals if logic is not LogicId.HHPL or layer_of(i) == 1)
    frame = Frame(ws, rels, {i: rng.choice(ws) for i in noms})
    if prof.base == "prop":
        return KripkeModel(frame, {w: _random_subset(rng, sorted(sig.props), 0.5) for w in ws})
    if prof.base == "fol":
        carrier = world_names(rng.randint(1, max_carrier))
        consts = {c: {(): rng.choice(carrier)} for c in sorted(sig.constants)}
        rest = {f: k for f, k in sig.funcs.items() if k > 0}
        return KripkeModel(frame, {w: _random_fol(rng, sig, carrier, rest, consts) for w in ws})
    inner = sig.inner()
    iws = world_names(rng.randint(1, max_worlds))
    inoms = {i: rng.choice(iws) for i in sorted(inner.nominals)}
    return KripkeModel(frame, {
        w: KripkeModel(
            Frame(iws, {DIAMOND: _random_subset(rng, itertools.product(iws, repeat=2), 0.35)}, inoms),
            {v: _random_subset(rng, sorted(inner.props), 0.5) for v in iws},
        )
        for w in ws
    })


# --- sentences ---------------------------------------------------------------------

def _terms(logic: LogicId, sig: Signature, scope: tuple[str, ...], depth: int = 0) -> list[Term]:
    prof = profile(logic)
    base = [Term(c) for c in sorted(sig.constants)]
    if not prof.kripke:
        base += [Term(x) for x in sorted(sig.vars)]
    base += [Term(v) for v in scope if v in VAR_NAMES]
    if depth == 0:
        return base
    out = list(base)
    for f, n in sorted(sig.funcs.items()):
        if n > 0:
            out += [Term(f, args) for args in itertools.product(base, repeat=n)]
    return out


def atoms(logic: LogicId | str, sig: Signature, scope: tuple[str, ...] = ()) -> list[Sentence]:
    """Depth-0 sentences over ``sig`` with the quantified names in ``scope``."""
    logic = LogicId.parse(logic)
    prof = profile(logic)
    out: list[Sentence] = []
    if prof.base in ("prop", "hpl"):
        out += [Prop(p) for p in sorted(sig.props)]
    if prof.base == "fol":
        terms = _terms(logic, sig, scope)
        for p, n in sorted(sig.preds.items()):
            out += [Atom(p, args) for args in itertools.product(terms, repeat=n)]
    out += [Nom(i) for i in _nominals(logic, sig, scope)]
    return out


def _nominals(logic: LogicId, sig: Signature, scope) -> list[str]:
    prof = profile(logic)
    if not prof.hybrid:
        return []
    names = sorted(nominals_of(logic, sig))
    if prof.kripke:
        return names + [k for k in scope if k.split("^")[0] in NOM_NAMES]
    return names + [k for k in scope if k in VAR_NAMES or k in NOM_NAMES]


def _binders(logic: LogicId, scope) -> list[tuple[str, str]]:
    """(kind, name) of quantifiers still available in ``scope``."""
    prof = profile(logic)
    out = []
    if prof.first_order:
        out += [("var", VAR_NAMES[0])]
    if prof.hybrid:
        if logic is LogicId.HHPL:
            out += [("nom", NOM_NAMES[0] + "^0"), ("nom", NOM_NAMES[1] + "^1")]
        elif prof.kripke:
            out += [("nom", NOM_NAMES[0])]
        else:
            out += [("var", NOM_NAMES[0])]
    return [(k, n) for k, n in out if n not in scope]


def _layer_tags(logic: LogicId, *kids: Sentence) -> list[int | None]:
    if logic is not LogicId.HHPL:
        return [None]
    lo = max((layer(k) for k in kids), default=0)
    return list(range(lo, 2))


def canonical_sentences(
    logic: LogicId | str,
    sig: Signature,
    depth: int,
    positive: bool = False,
    scope: tuple[str, ...] = (),
    _memo: dict | None = None,
) -> list[Sentence]:
    """Every sentence of depth at most ``depth``, in a fixed order.

    Commutative connectives are generated once per unordered pair.  With
    ``positive`` only atoms, conjunction, possibility, nominals, @ and the
    existential quantifiers are used.
    """
    logic = LogicId.parse(logic)
    memo = {} if _memo is None else _memo
    key = (depth, positive, scope)
    if key in memo:
        return memo[key]
    prof = profile(logic)
    out: list[Sentence] = list(atoms(logic, sig, scope))
    if depth > 0:
        prev = canonical_sentences(logic, sig, depth - 1, positive, scope, memo)
        seen = set(out)

        def add(s: Sentence) -> None:
            if s not in seen:
                seen.add(s)
                out.append(s)

        for s in prev:
            add(s)
        for a in prev:
            for t in _layer_tags(logic, a):
                if not positive:
                    add(Not(a, t))
                if prof.kripke and not prof.polyadic:
                    add(Dia(a, t))
                    if not positive:
                        add(Box(a, t))
        for ia, a in enumerate(prev):
            for ib, b in enumerate(prev):
                for t in _layer_tags(logic, a, b):
                    if ia <= ib:
                        add(And(a, b, t))
                        if not positive:
                            add(Or(a, b, t))
                    if not positive:
                        add(Implies(a, b, t))
        for lam, n in sorted(modalities_of(logic, sig).items()):
            if not prof.polyadic:
                continue
            for args in itertools.product(prev, repeat=n):
                add(PolyDia(lam, args))
                if not positive:
                    add(PolyBox(lam, args))
        for i in _nominals(logic, sig, scope):
            for a in prev:
                if logic is LogicId.HHPL and layer_of(i) == 0 and layer(a) != 0:
                    continue
                add(At(i, a))
        for kind, name in _binders(logic, scope):
            body = canonical_sentences(logic, sig, depth - 1, positive, scope + (name,), memo)
            for b in body:
                if kind == "var":
                    add(ExistsVar(name, b))
                    if not positive:
                        add(ForallVar(name, b))
                    continue
                for t in _layer_tags(logic, b, Nom(name)):
                    add(ExistsNom(name, b, t))
                    if not positive:
                        add(ForallNom(name, b, t))
    memo[key] = out
    return out


def random_sentence(
    rng: random.Random,
    logic: LogicId | str,
    sig: Signature,
    depth: int,
    scope: tuple[str, ...] = (),
) -> Sentence:
    """A random sentence of depth at most ``depth``."""
    logic = LogicId.parse(logic)
    prof = profile(logic)
    if depth <= 0 or rng.random() < 0.2:
        pool = list(atoms(logic, sig, scope))
        if prof.base == "fol":
            terms = _terms(logic, sig, scope, depth=1)
            pool += [Atom(p, tuple(rng.choice(terms) for _ in range(n)))
                     for p, n in sorted(sig.preds.items())]
        return rng.choice(pool)
    options = ["not", "and", "or", "implies"]
    if prof.kripke and not prof.polyadic:
        options += ["dia", "box"]
    mods = sorted(modalities_of(logic, sig).items()) if prof.polyadic else []
    if mods:
        options += ["polydia", "polybox"]
    noms = _nominals(logic, sig, scope)
    if noms:
        options += ["at"]
    binders = _binders(logic, scope)
    if binders:
        options += ["exists", "forall"]
    op = rng.choice(options)
    sub = lambda sc=scope: random_sentence(rng, logic, sig, depth - 1, sc)  # noqa: E731

    def tag(*kids: Sentence) -> int | None:
        return rng.choice(_layer_tags(logic, *kids))

    if op == "not":
        a = sub()
        return Not(a, tag(a))
    if op in ("and", "or", "implies"):
        a, b = sub(), sub()
        return {"and": And, "or": Or, "implies": Implies}[op](a, b, tag(a, b))
    if op in ("dia", "box"):
        a = sub()
        return (Dia if op == "dia" else Box)(a, tag(a))
    if op in ("polydia", "polybox"):
        lam, n = rng.choice(mods)
        return (PolyDia if op == "polydia" else PolyBox)(lam, tuple(sub() for _ in range(n)))
    if op == "at":
        i = rng.choice(noms)
        a = sub()
        while logic is LogicId.HHPL and layer_of(i) == 0 and layer(a) != 0:
            a = sub()
        return At(i, a)
    kind, name = rng.choice(binders)
    body = sub(scope + (name,))
    if kind == "var":
        return (ExistsVar if op == "exists" else ForallVar)(name, body)
    return (ExistsNom if op == "exists" else ForallNom)(name, body, tag(body, Nom(name)))


# --- morphisms and isomorphisms ---------------------------------------------------------

def random_morphism(
    rng: random.Random, logic: LogicId | str, sig: Signature, extend_vars: bool = True
) -> SignatureMorphism:
    """A signature morphism out of ``sig``; may identify symbols and add new ones.

    OFOL-family targets extend the variable block, sometimes with a name that
    the random sentence generator also uses for quantified variables.
    """
    logic = LogicId.parse(logic)
    mapping: dict[str, str] = {}
    props, noms = set(), set()
    mods: dict[str, int] = {}
    funcs: dict[str, int] = {}
    preds: dict[str, int] = {}

    def pick(name: str, pool: list[str]) -> str:
        return rng.choice(pool) if pool and rng.random() < 0.3 else name + "t"

    for p in sorted(sig.props):
        mapping[p] = pick(p, sorted(props))
        props.add(mapping[p])
    if rng.random() < 0.5 and sig.props:
        props.add("pnew")
    for i in sorted(sig.nominals):
        lay = layer_of(i)
        base = i.split("^")[0]
        same = sorted(n for n in noms if layer_of(n) == lay)
        img = rng.choice(same) if same and rng.random() < 0.3 else base + "t" + (f"^{lay}" if lay is not None else "")
        mapping[i] = img
        noms.add(img)
    for table, out in ((sig.modalities, mods), (sig.funcs, funcs), (sig.preds, preds)):
        for s, n in sorted(table.items()):
            same = sorted(k for k, a in out.items() if a == n)
            img = pick(s, same)
            mapping[s] = img
            out[img] = n
    vars_ = set(sig.vars)
    if vars_ and rng.random() < 0.6 and extend_vars:
        vars_.add(rng.choice(["z", VAR_NAMES[0]]))
    target = Signature(props, noms, mods, funcs, preds, vars_)
    return SignatureMorphism(sig, target, mapping)


def random_iso(rng: random.Random, logic: LogicId | str, model) -> dict:
    """Random bijections for ``apply_iso``: keyword arguments ready to splat."""
    logic = LogicId.parse(logic)
    prof = profile(logic)

    def perm(items, prefix: str) -> dict[str, str]:
        items = list(items)
        fresh = [f"{prefix}{k}" for k in range(len(items))] if rng.random() < 0.5 else list(items)
        rng.shuffle(fresh)
        return dict(zip(items, fresh))

    if not prof.kripke:
        return {"carrier_bijection": perm(model.carrier, "e")}
    out = {"world_bijection": perm(model.worlds, "w")}
    first = model.valuation[model.worlds[0]]
    if prof.base == "fol":
        out["carrier_bijection"] = perm(first.carrier, "e")
    elif prof.base == "hpl":
        out["inner_bijection"] = perm(first.worlds, "v")
    return out
