"""Filters over finite index sets, direct products and filtered products.

Over a finite index set every filter is the upward closure of its least
member ``J_min``, so the filtered product is the direct product over
``J_min``; the maps from each ``M_J`` into it forget the components outside
``J_min``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

from ._frozen import FrozenMap
from .errors import BoundsError, FilterError, ProductError
from .kripke import (
    FolModel, Frame, KripkeModel, ModelHom, state_image, validate_hom,
    validate_model,
)
from .signature import LogicId, Signature, profile

Index = Hashable


# --- filters -------------------------------------------------------------------

@dataclass(frozen=True)
class FilterRep:
    """A proper filter over a finite index set, stored with all its members."""

    index: frozenset
    members: frozenset

    def __post_init__(self) -> None:
        idx = frozenset(self.index)
        mem = frozenset(frozenset(m) for m in self.members)
        object.__setattr__(self, "index", idx)
        object.__setattr__(self, "members", mem)
        if not idx:
            raise FilterError("the index set must be nonempty")
        if idx not in mem:
            raise FilterError("a filter contains its index set")
        if frozenset() in mem:
            raise FilterError("the empty set makes the filter improper")
        for m in mem:
            if not m <= idx:
                raise FilterError(f"member {sorted(m)} is not a subset of the index set")
        for a, b in itertools.combinations(mem, 2):
            if a & b not in mem:
                raise FilterError("members are not closed under intersection")
        for m in mem:
            for extra in _subsets(idx - m):
                if m | extra not in mem:
                    raise FilterError("members are not closed upwards")

    @property
    def j_min(self) -> frozenset:
        return frozenset.intersection(*self.members)

    def sorted_members(self) -> list[tuple]:
        return sorted((tuple(sorted(m)) for m in self.members), key=lambda t: (len(t), t))

    def __str__(self) -> str:
        return ";".join("{" + ",".join(map(str, m)) + "}" for m in self.sorted_members())


def _subsets(s: Iterable) -> Iterable[frozenset]:
    items = sorted(s)
    for r in range(len(items) + 1):
        for c in itertools.combinations(items, r):
            yield frozenset(c)


def principal(index: Iterable, j_min: Iterable) -> FilterRep:
    idx, j = frozenset(index), frozenset(j_min)
    if not j or not j <= idx:
        raise FilterError("the generating set must be a nonempty subset of the index set")
    return FilterRep(idx, {j | extra for extra in _subsets(idx - j)})


def make_filter(index: Iterable, generators: Iterable[Iterable]) -> FilterRep:
    """The least filter over ``index`` containing every generator."""
    idx = frozenset(index)
    gens = [frozenset(g) for g in generators]
    for g in gens:
        if not g:
            raise FilterError("generators must be nonempty")
        if not g <= idx:
            raise FilterError(f"generator {sorted(g)} is not a subset of the index set")
    j = frozenset.intersection(idx, *gens)
    if not j:
        raise FilterError("the generators have empty intersection, so the filter is improper")
    return principal(idx, j)


def reduce_filter(F: FilterRep, sub: Iterable) -> FilterRep:
    """The reduction ``{sub ∩ X : X ∈ F}`` of ``F`` to ``sub ⊆ I``."""
    sub = frozenset(sub)
    if not sub or not sub <= F.index:
        raise FilterError("the reduction set must be a nonempty subset of the index set")
    members = {sub & m for m in F.members}
    if frozenset() in members:
        raise FilterError("the reduction contains the empty set")
    return FilterRep(sub, members)


def is_ultrafilter(F: FilterRep) -> bool:
    return all((x in F.members) != ((F.index - x) in F.members) for x in _subsets(F.index))


DEFAULT_BUDGET = 4


def _budget(index: frozenset, budget: int) -> None:
    if len(index) > budget:
        raise BoundsError(f"index set of size {len(index)} exceeds the budget {budget}")


def enumerate_filters(index: Iterable, budget: int = DEFAULT_BUDGET) -> list[FilterRep]:
    idx = frozenset(index)
    _budget(idx, budget)
    return [principal(idx, j) for j in _subsets(idx) if j]


def enumerate_ultrafilters(index: Iterable, budget: int = DEFAULT_BUDGET) -> list[FilterRep]:
    idx = frozenset(index)
    _budget(idx, budget)
    return [principal(idx, {i}) for i in sorted(idx)]


def parse_filter(text: str, index: Iterable) -> FilterRep:
    """Read ``"{1,2};{1,2,3}"``; the members are closed upwards."""
    idx = frozenset(index)
    by_name = {str(i): i for i in idx}
    gens = []
    for part in filter(None, (p.strip() for p in text.split(";"))):
        if not (part.startswith("{") and part.endswith("}")):
            raise FilterError(f"expected a set literal like {{1,2}}, got {part!r}")
        names = [n.strip() for n in part[1:-1].split(",") if n.strip()]
        unknown = [n for n in names if n not in by_name]
        if unknown:
            raise FilterError(f"unknown indices {unknown} in {part}")
        gens.append({by_name[n] for n in names})
    return make_filter(idx, gens)


# --- products -------------------------------------------------------------------

def tuple_name(parts: Sequence[str]) -> str:
    return "(" + ",".join(parts) + ")"


def _fol_product(models: Sequence[FolModel]) -> tuple[FolModel, dict[str, tuple]]:
    elems = list(itertools.product(*(m.carrier for m in models)))
    name = {e: tuple_name(e) for e in elems}
    funcs = {}
    for f in models[0].funcs:
        n = len(next(iter(models[0].funcs[f])))
        table = {}
        for args in itertools.product(elems, repeat=n):
            val = tuple(m.funcs[f][tuple(a[k] for a in args)] for k, m in enumerate(models))
            table[tuple(name[a] for a in args)] = name[val]
        funcs[f] = table
    preds = {}
    for p in models[0].preds:
        rels = [sorted(m.preds[p]) for m in models]
        preds[p] = {tuple(tuple_name(c) for c in zip(*combo)) for combo in itertools.product(*rels)}
    return FolModel(list(name.values()), funcs, preds), {v: k for k, v in name.items()}


def _kripke_product(logic: LogicId, sig: Signature, models: Sequence[KripkeModel]):
    prof = profile(logic)
    combos = list(itertools.product(*(m.worlds for m in models)))
    name = {c: tuple_name(c) for c in combos}
    relations = {}
    for lam in models[0].frame.relations:
        rels = [sorted(m.frame.relations[lam]) for m in models]
        relations[lam] = {
            tuple(tuple_name(c) for c in zip(*combo)) for combo in itertools.product(*rels)
        }
    nominals = {
        i: tuple_name(tuple(m.frame.nominals[i] for m in models))
        for i in models[0].frame.nominals
    }
    carrier_parts = None
    inner_parts = None
    valuation = {}
    for c in combos:
        bases = [m.valuation[w] for m, w in zip(models, c)]
        if prof.base == "prop":
            valuation[name[c]] = frozenset.intersection(*bases)
        elif prof.base == "fol":
            valuation[name[c]], carrier_parts = _fol_product(bases)
        else:
            inner, inner_parts = _kripke_product(LogicId.HPL, sig.inner(), bases)
            valuation[name[c]] = inner
    model = KripkeModel(Frame(list(name.values()), relations, nominals), valuation)
    parts = {v: k for k, v in name.items()}
    if prof.base == "fol":
        return model, (parts, carrier_parts)
    if prof.base == "hpl":
        return model, (parts, inner_parts[0])
    return model, (parts, None)


def product_model(logic: LogicId | str, sig: Signature, models: Sequence):
    """Canonical direct product; returns (model, component tables).

    The tables send product worlds (and carrier elements / inner worlds)
    back to their component tuples.
    """
    logic = LogicId.parse(logic)
    if not models:
        raise ProductError("cannot take the product of an empty family")
    if profile(logic).kripke:
        return _kripke_product(logic, sig, models)
    model, parts = _fol_product(models)
    return model, (None, parts)


@dataclass
class ProductResult:
    """A filtered product together with its colimit maps and projections."""

    logic: LogicId
    sig: Signature
    filter: FilterRep
    family: FrozenMap  # index -> factor model
    model: object  # M_F
    j_min: tuple
    products: dict = field(default_factory=dict)  # J (sorted tuple) -> M_J
    projections: dict = field(default_factory=dict)  # (J, i) -> ModelHom
    _tables: dict = field(default_factory=dict, repr=False)

    @cached_property
    def members(self) -> list[tuple]:
        return self.filter.sorted_members()

    def states(self, J: tuple | None = None) -> tuple:
        """States of ``M_J`` (of ``M_F`` when ``J`` is omitted), in a fixed order."""
        from .core import states_of

        m = self.model if J is None else self.products[tuple(sorted(J))]
        return states_of(self.logic, self.sig, m)

    def components(self, J: tuple, state) -> dict:
        """The factor states ``(k_j)_{j∈J}`` of a state of ``M_J``."""
        J = tuple(sorted(J))
        worlds, elems = self._tables[J]
        if profile(self.logic).kripke:
            parts = worlds[state]
            return {j: parts[n] for n, j in enumerate(J)}
        return {
            j: tuple((x, elems[a][n]) for x, a in state) for n, j in enumerate(J)
        }

    def compose(self, J: tuple, comps: Mapping) -> object:
        """The state of ``M_J`` with the given factor states."""
        J = tuple(sorted(J))
        if profile(self.logic).kripke:
            return tuple_name(tuple(comps[j] for j in J))
        xs = [x for x, _ in comps[J[0]]]
        return tuple(
            (x, tuple_name(tuple(dict(comps[j])[x] for j in J))) for x in xs
        )

    def colimit(self, J: tuple, state) -> object:
        """``⟦μ_J⟧``: forget the components outside ``J_min``."""
        comps = self.components(J, state)
        return self.compose(self.j_min, {j: comps[j] for j in self.j_min})

    def preimage(self, J: tuple, state) -> list:
        """States ``k`` of ``M_J`` with ``⟦μ_J⟧(k) = state``."""
        return [k for k in self.states(J) if self.colimit(J, k) == state]

    def restrict(self, J: tuple, sub: tuple, state) -> object:
        """State-level projection ``M_J -> M_sub`` for ``sub ⊆ J``."""
        comps = self.components(J, state)
        return self.compose(sub, {j: comps[j] for j in sub})

    def with_model(self, model) -> ProductResult:
        """Same maps, different apex (used for fault injection)."""
        out = ProductResult(
            self.logic, self.sig, self.filter, self.family, model, self.j_min,
            dict(self.products), dict(self.projections), dict(self._tables),
        )
        out.products[self.j_min] = model
        return out


def _projection(logic: LogicId, J: tuple, i, tables) -> ModelHom:
    worlds, elems = tables
    n = J.index(i)
    prof = profile(logic)
    if not prof.kripke:
        return ModelHom(carrier_map={a: parts[n] for a, parts in elems.items()})
    world_map = {w: parts[n] for w, parts in worlds.items()}
    if prof.base == "fol":
        return ModelHom(world_map, carrier_map={a: parts[n] for a, parts in elems.items()})
    if prof.base == "hpl":
        inner = ModelHom({v: parts[n] for v, parts in elems[0].items()})
        return ModelHom(world_map, inner={w: inner for w in worlds})
    return ModelHom(world_map)


def filtered_product(
    logic: LogicId | str, sig: Signature, F: FilterRep, family: Mapping[Index, object]
) -> ProductResult:
    """The ``F``-filtered product of ``family`` (indexed by ``F.index``)."""
    logic = LogicId.parse(logic)
    if frozenset(family) != F.index:
        raise ProductError(
            f"family indexed by {sorted(family)} but the filter is over {sorted(F.index)}"
        )
    result = ProductResult(logic, sig, F, FrozenMap(family), None, tuple(sorted(F.j_min)))
    for J in result.members:
        model, tables = product_model(logic, sig, [family[j] for j in J])
        if profile(logic).base == "hpl":
            # inner product worlds are the same at every outer world
            tables = (tables[0], (tables[1],))
        result.products[J] = model
        result._tables[J] = tables
        for i in J:
            result.projections[(J, i)] = _projection(logic, J, i, tables)
    result.model = result.products[result.j_min]
    return result


def direct_product(logic: LogicId | str, sig: Signature, family: Sequence) -> ProductResult:
    """The product of a list of models, indexed ``1..n``."""
    idx = range(1, len(family) + 1)
    if not family:
        raise ProductError("cannot take the product of an empty family")
    return filtered_product(logic, sig, principal(idx, idx), dict(zip(idx, family)))


@dataclass(frozen=True)
class PointedProduct:
    model: object
    state: object
    result: ProductResult
    start: object  # the state w_I of M_I


def pointed_filtered_product(
    logic: LogicId | str, sig: Signature, F: FilterRep, family: Mapping[Index, tuple]
) -> PointedProduct:
    """``(M_F, ⟦μ_I⟧(w_I))`` for a family of pointed models ``i -> (M_i, w_i)``."""
    from .core import stratification

    logic = LogicId.parse(logic)
    for i, (m, w) in family.items():
        if w not in stratification(logic, sig, m):
            raise ProductError(f"state {w!r} is not a state of factor {i}")
    result = filtered_product(logic, sig, F, {i: m for i, (m, _) in family.items()})
    full = tuple(sorted(F.index))
    w_full = result.compose(full, {i: w for i, (_, w) in family.items()})
    return PointedProduct(result.model, result.colimit(full, w_full), result, w_full)


# --- invariants ----------------------------------------------------------------------

def product_violations(result: ProductResult) -> list[str]:
    """Structural checks on a constructed product.

    Covers projection homomorphisms, agreement of state-level projections
    with the hom-level ones, the state bijection with the product of factor
    states, and colimit compatibility along every inclusion of members.
    """
    from .core import states_of

    logic, sig = result.logic, result.sig
    out: list[str] = []
    for J in result.members:
        mj = result.products[J]
        for v in validate_model(logic, sig, mj):
            out.append(f"M_{{{','.join(map(str, J))}}}: {v}")
        factor_states = [states_of(logic, sig, result.family[j]) for j in J]
        seen = set()
        for k in result.states(J):
            comps = result.components(J, k)
            seen.add(tuple(comps[j] for j in J))
            if result.compose(J, comps) != k:
                out.append(f"state {k!r} of M_{J} does not round-trip through its components")
        if seen != set(itertools.product(*factor_states)):
            out.append(f"states of M_{J} are not in bijection with the product of factor states")
        for i in J:
            hom = result.projections[(J, i)]
            for v in validate_hom(logic, sig, hom, mj, result.family[i]):
                out.append(f"projection p_{J},{i}: {v}")
            for k in result.states(J):
                if state_image(logic, hom, k) != result.components(J, k)[i]:
                    out.append(f"projection p_{J},{i} disagrees with the state components at {k!r}")
    for J in result.members:
        for sub in result.members:
            if set(sub) <= set(J):
                for k in result.states(J):
                    if result.colimit(sub, result.restrict(J, sub, k)) != result.colimit(J, k):
                        out.append(f"colimit maps incompatible along {sub} ⊆ {J} at {k!r}")
    apex = set(result.states())
    for J in result.members:
        for k in result.states(J):
            if result.colimit(J, k) not in apex:
                out.append(f"⟦μ_{J}⟧({k!r}) is not a state of the filtered product")
    return out
