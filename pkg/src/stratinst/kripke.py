"""Concrete model data: Kripke frames, finite first-order models, homomorphisms."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Union

from ._frozen import FrozenMap, memo_hash
from .errors import HomomorphismError, LogicMismatchError
from .signature import DIAMOND, LogicId, Signature, layer_of, modalities_of, profile

Valuation = tuple[tuple[str, str], ...]


def _tuples(rel) -> frozenset[tuple[str, ...]]:
    return frozenset(tuple(str(x) for x in t) for t in rel)


@memo_hash
@dataclass(frozen=True)
class FolModel:
    """Finite first-order structure; also an OFOL model and an MFOL world."""

    carrier: tuple[str, ...]
    funcs: FrozenMap = field(default_factory=FrozenMap)
    preds: FrozenMap = field(default_factory=FrozenMap)

    def __post_init__(self) -> None:
        object.__setattr__(self, "carrier", tuple(sorted(str(c) for c in self.carrier)))
        object.__setattr__(self, "funcs", FrozenMap({
            f: FrozenMap({tuple(str(a) for a in args): str(v) for args, v in dict(table).items()})
            for f, table in dict(self.funcs).items()
        }))
        object.__setattr__(self, "preds", FrozenMap({
            p: _tuples(rel) for p, rel in dict(self.preds).items()
        }))

    def apply(self, func: str, args: tuple[str, ...]) -> str:
        return self.funcs[func][args]

    def constant(self, name: str) -> str:
        return self.funcs[name][()]

    def with_constant(self, name: str, value: str) -> FolModel:
        return FolModel(self.carrier, self.funcs.set(name, {(): value}), self.preds)


@memo_hash
@dataclass(frozen=True)
class Frame:
    worlds: tuple[str, ...]
    relations: FrozenMap = field(default_factory=FrozenMap)
    nominals: FrozenMap = field(default_factory=FrozenMap)

    def __post_init__(self) -> None:
        object.__setattr__(self, "worlds", tuple(sorted(str(w) for w in self.worlds)))
        object.__setattr__(self, "relations", FrozenMap({
            r: _tuples(ts) for r, ts in dict(self.relations).items()
        }))
        object.__setattr__(self, "nominals", FrozenMap({
            str(i): str(w) for i, w in dict(self.nominals).items()
        }))

    def with_nominal(self, name: str, world: str) -> Frame:
        return Frame(self.worlds, self.relations, self.nominals.set(name, world))


Base = Union[frozenset, FolModel, "KripkeModel"]


@memo_hash
@dataclass(frozen=True)
class KripkeModel:
    """A frame plus a per-world base value.

    The base value is a set of true propositional symbols (MPL family), a
    ``FolModel`` (MFOL) or an inner HPL ``KripkeModel`` (HHPL).
    """

    frame: Frame
    valuation: FrozenMap = field(default_factory=FrozenMap)

    def __post_init__(self) -> None:
        val = {}
        for w, b in dict(self.valuation).items():
            if not isinstance(b, (FolModel, KripkeModel)):
                b = frozenset(str(p) for p in b)
            val[str(w)] = b
        object.__setattr__(self, "valuation", FrozenMap(val))

    @property
    def worlds(self) -> tuple[str, ...]:
        return self.frame.worlds

    @classmethod
    def build(
        cls,
        worlds,
        relations: Mapping | None = None,
        valuation: Mapping | None = None,
        nominals: Mapping | None = None,
    ) -> KripkeModel:
        """Convenience constructor; ``relations`` defaults to an empty ``lambda``."""
        if relations is None:
            relations = {DIAMOND: ()}
        elif not isinstance(relations, Mapping):
            relations = {DIAMOND: relations}
        return cls(Frame(worlds, relations, nominals or {}), valuation or {})


Model = Union[KripkeModel, FolModel]


@dataclass(frozen=True)
class ModelHom:
    """World map plus, where the logic needs them, a carrier map or inner homs."""

    world_map: FrozenMap | None = None
    carrier_map: FrozenMap | None = None
    inner: FrozenMap | None = None

    def __post_init__(self) -> None:
        for name in ("world_map", "carrier_map", "inner"):
            v = getattr(self, name)
            if v is not None and not isinstance(v, FrozenMap):
                object.__setattr__(self, name, FrozenMap(v))


# --- states ----------------------------------------------------------------

def valuations(carrier, variables) -> list[Valuation]:
    xs = sorted(variables)
    return [tuple(zip(xs, combo)) for combo in itertools.product(sorted(carrier), repeat=len(xs))]


def valuation_str(v: Valuation) -> str:
    return ",".join(f"{x}={a}" for x, a in v)


def parse_valuation(text: str) -> Valuation:
    pairs = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        x, _, a = part.partition("=")
        if not _:
            raise ValueError(f"expected x=value, got {part!r}")
        pairs.append((x.strip(), a.strip()))
    return tuple(sorted(pairs))


def state_image(logic: LogicId | str, hom: ModelHom, state):
    """The state-level map of a homomorphism applied to one state."""
    if profile(logic).kripke:
        return hom.world_map[state]
    return tuple((x, hom.carrier_map[a]) for x, a in state)


# --- validation --------------------------------------------------------------

def _expect(logic: LogicId, model) -> None:
    kind = KripkeModel if profile(logic).kripke else FolModel
    if not isinstance(model, kind):
        raise LogicMismatchError(
            f"{logic.value} expects a {kind.__name__}, got {type(model).__name__}"
        )


def fol_violations(sig: Signature, m: FolModel, where: str = "") -> list[str]:
    out: list[str] = []
    pre = f"{where}: " if where else ""
    carrier = set(m.carrier)
    if not carrier:
        out.append(f"{pre}carrier is empty")
    if len(carrier) != len(m.carrier):
        out.append(f"{pre}carrier has duplicate elements")
    for f in sorted(set(sig.funcs) - set(m.funcs)):
        out.append(f"{pre}function {f!r} is not interpreted")
    for f in sorted(set(m.funcs) - set(sig.funcs)):
        out.append(f"{pre}function {f!r} is not in the signature")
    for p in sorted(set(sig.preds) - set(m.preds)):
        out.append(f"{pre}predicate {p!r} is not interpreted")
    for p in sorted(set(m.preds) - set(sig.preds)):
        out.append(f"{pre}predicate {p!r} is not in the signature")
    for f, table in sorted(m.funcs.items()):
        if f not in sig.funcs:
            continue
        n = sig.funcs[f]
        for args in itertools.product(sorted(carrier), repeat=n):
            if args not in table:
                out.append(f"{pre}function {f!r} undefined at {args}")
        for args, v in sorted(table.items()):
            if len(args) != n or not set(args) <= carrier:
                out.append(f"{pre}function {f!r} has a bad argument tuple {args}")
            if v not in carrier:
                out.append(f"{pre}function {f!r} maps {args} outside the carrier ({v!r})")
    for p, rel in sorted(m.preds.items()):
        if p not in sig.preds:
            continue
        for t in sorted(rel):
            if len(t) != sig.preds[p]:
                out.append(f"{pre}predicate {p!r} tuple {t} has the wrong length")
            elif not set(t) <= carrier:
                out.append(f"{pre}predicate {p!r} tuple {t} leaves the carrier")
    return out


def frame_class_violations(frame: Frame, frame_class: str) -> list[str]:
    rel = frame.relations.get(DIAMOND, frozenset())
    ws = frame.worlds
    out = []
    if frame_class in ("reflexive", "preorder", "equivalence"):
        out += [f"reflexivity: ({w},{w}) missing" for w in ws if (w, w) not in rel]
    if frame_class in ("preorder", "equivalence"):
        for (a, b), (c, d) in itertools.product(sorted(rel), repeat=2):
            if b == c and (a, d) not in rel:
                out.append(f"transitivity: ({a},{d}) missing")
    if frame_class == "equivalence":
        out += [f"symmetry: ({b},{a}) missing" for a, b in sorted(rel) if (b, a) not in rel]
    if frame_class not in (None, "reflexive", "preorder", "equivalence"):
        out.append(f"unknown frame class {frame_class!r}")
    return sorted(set(out), key=out.index)


def _frame_violations(
    frame: Frame, modalities: Mapping[str, int], nominals, where: str = ""
) -> list[str]:
    out: list[str] = []
    pre = f"{where}" if where else ""
    worlds = set(frame.worlds)
    if not worlds:
        out.append(f"{pre}world set is empty")
    if len(worlds) != len(frame.worlds):
        out.append(f"{pre}duplicate worlds")
    for lam in sorted(set(modalities) - set(frame.relations)):
        out.append(f"{pre}relation {lam!r} missing")
    for lam in sorted(set(frame.relations) - set(modalities)):
        out.append(f"{pre}relation {lam!r} is not a modality of the signature")
    for lam, ts in sorted(frame.relations.items()):
        if lam not in modalities:
            continue
        for t in sorted(ts):
            if len(t) != modalities[lam] + 1:
                out.append(f"{pre}relation {lam!r} tuple {t} should have length {modalities[lam] + 1}")
            for w in t:
                if w not in worlds:
                    out.append(f"{pre}relation {lam!r} tuple {t} references unknown world {w!r}")
    for i in sorted(set(nominals) - set(frame.nominals)):
        out.append(f"{pre}nominal {i!r} is not interpreted")
    for i in sorted(set(frame.nominals) - set(nominals)):
        out.append(f"{pre}nominal {i!r} is not in the signature")
    for i, w in sorted(frame.nominals.items()):
        if w not in worlds:
            out.append(f"{pre}nominal {i!r} names unknown world {w!r}")
    return out


def validate_model(
    logic: LogicId | str, sig: Signature, model, frame_class: str | None = None
) -> list[str]:
    """All invariant violations of ``model`` as a ``sig``-model; empty when valid."""
    logic = LogicId.parse(logic)
    prof = profile(logic)
    try:
        _expect(logic, model)
    except LogicMismatchError as e:
        return [str(e)]
    if not prof.kripke:
        return fol_violations(sig, model)
    frame_class = frame_class or prof.frame_class
    out: list[str] = []
    outer_noms = sig.nominals if logic is not LogicId.HHPL else {
        n for n in sig.nominals if layer_of(n) == 1
    }
    out += _frame_violations(model.frame, modalities_of(logic, sig), outer_noms)
    if frame_class:
        out += frame_class_violations(model.frame, frame_class)
    worlds = set(model.worlds)
    for w in sorted(worlds - set(model.valuation)):
        out.append(f"world {w!r} has no base assignment")
    for w in sorted(set(model.valuation) - worlds):
        out.append(f"assignment for unknown world {w!r}")
    bases = [(w, model.valuation[w]) for w in sorted(worlds & set(model.valuation))]
    if prof.base == "prop":
        for w, b in bases:
            if not isinstance(b, frozenset):
                out.append(f"world {w!r}: expected a set of propositional symbols")
            elif not b <= sig.props:
                out.append(f"world {w!r}: unknown symbols {sorted(b - sig.props)}")
    elif prof.base == "fol":
        for w, b in bases:
            if not isinstance(b, FolModel):
                out.append(f"world {w!r}: expected a first-order model")
                continue
            out += fol_violations(sig, b, f"world {w!r}")
        fols = [b for _, b in bases if isinstance(b, FolModel)]
        if fols:
            ref = fols[0]
            for w, b in bases[1:]:
                if not isinstance(b, FolModel):
                    continue
                if set(b.carrier) != set(ref.carrier):
                    out.append(f"sharing: world {w!r} has a different carrier")
                for c in sorted(sig.constants):
                    if c in b.funcs and c in ref.funcs and b.funcs[c] != ref.funcs[c]:
                        out.append(f"sharing: constant {c!r} differs at world {w!r}")
    else:  # inner HPL models
        inner_sig = sig.inner()
        inners = []
        for w, b in bases:
            if not isinstance(b, KripkeModel):
                out.append(f"world {w!r}: expected an inner HPL model")
                continue
            inners.append((w, b))
            out += [f"world {w!r}: {v}" for v in validate_model(LogicId.HPL, inner_sig, b)]
        if inners:
            ref = inners[0][1]
            for w, b in inners[1:]:
                if set(b.worlds) != set(ref.worlds):
                    out.append(f"sharing: world {w!r} has a different inner world set")
                if b.frame.nominals != ref.frame.nominals:
                    out.append(f"sharing: world {w!r} interprets inner nominals differently")
    return out


def validate_hom(
    logic: LogicId | str, sig: Signature, hom: ModelHom, source, target
) -> list[str]:
    """Violations of the homomorphism conditions for ``hom: source -> target``."""
    logic = LogicId.parse(logic)
    prof = profile(logic)
    if not prof.kripke:
        return _fol_hom_violations(sig, hom.carrier_map, source, target)
    out: list[str] = []
    h = hom.world_map or FrozenMap()
    tw = set(target.worlds)
    for w in source.worlds:
        if w not in h:
            out.append(f"world map undefined at {w!r}")
        elif h[w] not in tw:
            out.append(f"world map sends {w!r} to unknown world {h[w]!r}")
    if out:
        return out
    for lam, ts in sorted(source.frame.relations.items()):
        trel = target.frame.relations.get(lam, frozenset())
        for t in sorted(ts):
            img = tuple(h[w] for w in t)
            if img not in trel:
                out.append(f"relation {lam!r}: image {img} of {t} is missing")
    for i, w in sorted(source.frame.nominals.items()):
        if target.frame.nominals.get(i) != h[w]:
            out.append(f"nominal {i!r}: h({w}) = {h[w]} but target names {target.frame.nominals.get(i)}")
    for w in source.worlds:
        b, c = source.valuation[w], target.valuation[h[w]]
        if prof.base == "prop":
            if not b <= c:
                out.append(f"valuation at {w!r}: {sorted(b - c)} lost under h")
        elif prof.base == "fol":
            out += [f"world {w!r}: {v}" for v in _fol_hom_violations(sig, hom.carrier_map, b, c)]
        else:
            inner = (hom.inner or FrozenMap()).get(w)
            if inner is None:
                out.append(f"inner homomorphism missing at {w!r}")
            else:
                out += [f"world {w!r}: {v}" for v in validate_hom(LogicId.HPL, sig.inner(), inner, b, c)]
    return out


def _fol_hom_violations(sig: Signature, cmap, m: FolModel, n: FolModel) -> list[str]:
    out: list[str] = []
    cmap = cmap or FrozenMap()
    nc = set(n.carrier)
    for a in m.carrier:
        if a not in cmap:
            out.append(f"carrier map undefined at {a!r}")
        elif cmap[a] not in nc:
            out.append(f"carrier map sends {a!r} outside the target")
    if out:
        return out
    for f, table in sorted(m.funcs.items()):
        for args, v in sorted(table.items()):
            img = tuple(cmap[a] for a in args)
            if n.funcs.get(f, {}).get(img) != cmap[v]:
                out.append(f"function {f!r} does not commute at {args}")
    for p, rel in sorted(m.preds.items()):
        for t in sorted(rel):
            img = tuple(cmap[a] for a in t)
            if img not in n.preds.get(p, frozenset()):
                out.append(f"predicate {p!r}: image {img} of {t} is missing")
    return out


# --- renaming ----------------------------------------------------------------

def _check_bijection(mapping: Mapping[str, str], domain, what: str) -> None:
    if set(mapping) != set(domain):
        raise HomomorphismError(f"{what} bijection is not total on {sorted(domain)}")
    if len(set(mapping.values())) != len(mapping):
        raise HomomorphismError(f"{what} map is not injective")


def rename_fol(m: FolModel, c: Mapping[str, str]) -> FolModel:
    return FolModel(
        [c[a] for a in m.carrier],
        {f: {tuple(c[a] for a in args): c[v] for args, v in t.items()} for f, t in m.funcs.items()},
        {p: {tuple(c[a] for a in t) for t in rel} for p, rel in m.preds.items()},
    )


def rename_kripke(k: KripkeModel, h: Mapping[str, str], base=lambda b: b) -> KripkeModel:
    return KripkeModel(
        Frame(
            [h[w] for w in k.worlds],
            {lam: {tuple(h[w] for w in t) for t in ts} for lam, ts in k.frame.relations.items()},
            {i: h[w] for i, w in k.frame.nominals.items()},
        ),
        {h[w]: base(b) for w, b in k.valuation.items()},
    )


def apply_iso(
    logic: LogicId | str,
    sig: Signature,
    model,
    world_bijection: Mapping[str, str] | None = None,
    carrier_bijection: Mapping[str, str] | None = None,
    inner_bijection: Mapping[str, str] | None = None,
):
    """Rename worlds / carrier elements (and HHPL inner worlds) bijectively."""
    logic = LogicId.parse(logic)
    prof = profile(logic)
    _expect(logic, model)
    if not prof.kripke:
        c = carrier_bijection or {a: a for a in model.carrier}
        _check_bijection(c, model.carrier, "carrier")
        return rename_fol(model, c)
    h = world_bijection or {w: w for w in model.worlds}
    _check_bijection(h, model.worlds, "world")
    if prof.base == "prop":
        return rename_kripke(model, h)
    if prof.base == "fol":
        first = model.valuation[model.worlds[0]]
        c = carrier_bijection or {a: a for a in first.carrier}
        _check_bijection(c, first.carrier, "carrier")
        return rename_kripke(model, h, lambda b: rename_fol(b, c))
    first = model.valuation[model.worlds[0]]
    g = inner_bijection or {v: v for v in first.worlds}
    _check_bijection(g, first.worlds, "inner world")
    return rename_kripke(model, h, lambda b: rename_kripke(b, g))


def iso_hom(
    logic: LogicId | str,
    model,
    world_bijection: Mapping[str, str] | None = None,
    carrier_bijection: Mapping[str, str] | None = None,
    inner_bijection: Mapping[str, str] | None = None,
) -> ModelHom:
    """The homomorphism ``model -> apply_iso(model, ...)`` as a ``ModelHom``."""
    prof = profile(logic)
    if not prof.kripke:
        return ModelHom(carrier_map=carrier_bijection or {a: a for a in model.carrier})
    h = world_bijection or {w: w for w in model.worlds}
    if prof.base == "prop":
        return ModelHom(world_map=h)
    first = model.valuation[model.worlds[0]]
    if prof.base == "fol":
        return ModelHom(world_map=h, carrier_map=carrier_bijection or {a: a for a in first.carrier})
    g = inner_bijection or {v: v for v in first.worlds}
    return ModelHom(world_map=h, inner={w: ModelHom(world_map=g) for w in model.worlds})


def compose_homs(logic: LogicId | str, f: ModelHom, g: ModelHom) -> ModelHom:
    """Diagrammatic composite ``f;g``."""
    def comp(a, b):
        if a is None or b is None:
            return None
        return {k: b[v] for k, v in a.items()}

    inner = None
    if f.inner is not None and g.inner is not None:
        inner = {w: compose_homs(LogicId.HPL, f.inner[w], g.inner[f.world_map[w]]) for w in f.inner}
    return ModelHom(comp(f.world_map, g.world_map), comp(f.carrier_map, g.carrier_map), inner)
