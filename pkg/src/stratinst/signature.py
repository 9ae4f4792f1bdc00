"""Logic identifiers, signatures and signature morphisms."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from ._frozen import FrozenMap, memo_hash
from .errors import LogicMismatchError, SignatureError

# Relation key of the single accessibility relation behind <> and [].
DIAMOND = "lambda"

RESERVED = frozenset({"nom", "exists", "forall"})
NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*(\^[01])?$")


class LogicId(str, Enum):
    MPL = "MPL"
    MPLt = "MPLt"
    MPLs4 = "MPLs4"
    MPLs5 = "MPLs5"
    MMPL = "MMPL"
    HPL = "HPL"
    MHPL = "MHPL"
    MFOL = "MFOL"
    HHPL = "HHPL"
    OFOL = "OFOL"
    MOFOL = "MOFOL"
    HOFOL = "HOFOL"
    HMOFOL = "HMOFOL"

    @classmethod
    def parse(cls, text: str | LogicId) -> LogicId:
        if isinstance(text, LogicId):
            return text
        for member in cls:
            if member.value.lower() == str(text).lower():
                return member
        raise LogicMismatchError(f"unknown logic {text!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Profile:
    """Structural traits of a logic instance that the evaluators dispatch on."""

    kripke: bool
    base: str  # "prop", "fol" or "hpl"
    polyadic: bool = False
    hybrid: bool = False
    first_order: bool = False
    frame_class: str | None = None


PROFILES: dict[LogicId, Profile] = {
    LogicId.MPL: Profile(kripke=True, base="prop"),
    LogicId.MPLt: Profile(kripke=True, base="prop", frame_class="reflexive"),
    LogicId.MPLs4: Profile(kripke=True, base="prop", frame_class="preorder"),
    LogicId.MPLs5: Profile(kripke=True, base="prop", frame_class="equivalence"),
    LogicId.MMPL: Profile(kripke=True, base="prop", polyadic=True),
    LogicId.HPL: Profile(kripke=True, base="prop", hybrid=True),
    LogicId.MHPL: Profile(kripke=True, base="prop", polyadic=True, hybrid=True),
    LogicId.MFOL: Profile(kripke=True, base="fol", first_order=True),
    LogicId.HHPL: Profile(kripke=True, base="hpl", hybrid=True),
    LogicId.OFOL: Profile(kripke=False, base="fol", first_order=True),
    LogicId.MOFOL: Profile(kripke=False, base="fol", polyadic=True, first_order=True),
    LogicId.HOFOL: Profile(kripke=False, base="fol", hybrid=True, first_order=True),
    LogicId.HMOFOL: Profile(
        kripke=False, base="fol", polyadic=True, hybrid=True, first_order=True
    ),
}


def profile(logic: LogicId | str) -> Profile:
    return PROFILES[LogicId.parse(logic)]


def layer_of(name: str) -> int | None:
    """Layer suffix of an HHPL symbol (``i^0`` -> 0), ``None`` when untagged."""
    if len(name) > 2 and name[-2] == "^":
        return int(name[-1])
    return None


def _arities(value: Mapping[str, int] | Iterable[tuple[str, int]] | None) -> FrozenMap:
    if value is None:
        return FrozenMap()
    return FrozenMap({str(k): int(v) for k, v in dict(value).items()})


@memo_hash
@dataclass(frozen=True)
class Signature:
    props: frozenset[str] = frozenset()
    nominals: frozenset[str] = frozenset()
    modalities: FrozenMap = field(default_factory=FrozenMap)
    funcs: FrozenMap = field(default_factory=FrozenMap)
    preds: FrozenMap = field(default_factory=FrozenMap)
    vars: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "props", frozenset(self.props))
        object.__setattr__(self, "nominals", frozenset(self.nominals))
        object.__setattr__(self, "vars", frozenset(self.vars))
        object.__setattr__(self, "modalities", _arities(self.modalities))
        object.__setattr__(self, "funcs", _arities(self.funcs))
        object.__setattr__(self, "preds", _arities(self.preds))

    @property
    def constants(self) -> frozenset[str]:
        return frozenset(f for f, n in self.funcs.items() if n == 0)

    def symbols(self) -> dict[str, str]:
        """Every declared name mapped to its component."""
        out: dict[str, str] = {}
        for kind, names in (
            ("prop", self.props),
            ("nominal", self.nominals),
            ("modality", self.modalities),
            ("func", self.funcs),
            ("pred", self.preds),
            ("var", self.vars),
        ):
            for n in names:
                out.setdefault(n, kind)
        return out

    def declares(self, name: str) -> bool:
        return (
            name in self.props
            or name in self.nominals
            or name in self.modalities
            or name in self.funcs
            or name in self.preds
            or name in self.vars
        )

    def add_constant(self, name: str) -> Signature:
        return Signature(
            self.props, self.nominals, self.modalities,
            self.funcs.set(name, 0), self.preds, self.vars,
        )

    def add_nominal(self, name: str) -> Signature:
        return Signature(
            self.props, self.nominals | {name}, self.modalities,
            self.funcs, self.preds, self.vars,
        )

    def inner(self) -> Signature:
        """The layer-0 HPL signature under an HHPL signature."""
        return Signature(
            props=self.props,
            nominals=frozenset(n for n in self.nominals if layer_of(n) == 0),
        )

    def to_json(self) -> dict:
        out: dict = {}
        if self.props:
            out["props"] = sorted(self.props)
        if self.nominals:
            out["nominals"] = sorted(self.nominals)
        if self.modalities:
            out["modalities"] = dict(sorted(self.modalities.items()))
        if self.funcs:
            out["funcs"] = dict(sorted(self.funcs.items()))
        if self.preds:
            out["preds"] = dict(sorted(self.preds.items()))
        if self.vars:
            out["vars"] = sorted(self.vars)
        return out


def modalities_of(logic: LogicId, sig: Signature) -> dict[str, int]:
    """Modality name -> number of sentence arguments."""
    prof = profile(logic)
    if not prof.polyadic:
        return {DIAMOND: 1} if prof.kripke else {}
    if prof.kripke:
        return dict(sig.modalities)
    return {p: n - 1 for p, n in sig.preds.items() if n >= 1}


def nominals_of(logic: LogicId, sig: Signature) -> frozenset[str]:
    prof = profile(logic)
    if not prof.hybrid:
        return frozenset()
    if prof.kripke:
        return sig.nominals
    return sig.constants


def signature_violations(logic: LogicId | str, sig: Signature) -> list[str]:
    logic = LogicId.parse(logic)
    prof = PROFILES[logic]
    out: list[str] = []
    seen: dict[str, str] = {}
    for kind, names in (
        ("props", sig.props),
        ("nominals", sig.nominals),
        ("modalities", sig.modalities),
        ("funcs", sig.funcs),
        ("preds", sig.preds),
        ("vars", sig.vars),
    ):
        for n in sorted(names):
            if not NAME_RE.match(n) or n.split("^")[0] in RESERVED:
                out.append(f"{kind}: bad symbol name {n!r}")
            if n in seen:
                out.append(f"{kind}: symbol {n!r} already declared in {seen[n]}")
            seen.setdefault(n, kind)
    for kind, table in (("modalities", sig.modalities), ("funcs", sig.funcs), ("preds", sig.preds)):
        for n, a in table.items():
            if a < 0:
                out.append(f"{kind}: negative arity for {n!r}")

    allowed = {"props"}
    if prof.kripke:
        if prof.base == "fol":
            allowed = {"funcs", "preds"}
        if prof.hybrid:
            allowed.add("nominals")
        if prof.polyadic:
            allowed.add("modalities")
    else:
        allowed = {"funcs", "preds", "vars"}
    present = {
        k for k, v in (
            ("props", sig.props), ("nominals", sig.nominals),
            ("modalities", sig.modalities), ("funcs", sig.funcs),
            ("preds", sig.preds), ("vars", sig.vars),
        ) if v
    }
    for k in sorted(present - allowed):
        out.append(f"{k}: not part of {logic.value} signatures")

    for n in sorted(seen):
        lay = layer_of(n)
        if logic is LogicId.HHPL:
            if seen[n] == "nominals" and lay is None:
                out.append(f"nominals: HHPL nominal {n!r} needs a ^0 or ^1 layer tag")
            if seen[n] != "nominals" and lay is not None:
                out.append(f"{seen[n]}: only nominals carry layer tags ({n!r})")
        elif lay is not None:
            out.append(f"{seen[n]}: layer tag on {n!r} outside HHPL")
    if not prof.kripke and not sig.vars:
        out.append("vars: the variable block must be nonempty")
    return out


def check_signature(logic: LogicId | str, sig: Signature) -> None:
    v = signature_violations(logic, sig)
    if v:
        raise SignatureError("; ".join(v))


@dataclass(frozen=True)
class SignatureMorphism:
    """Symbol-wise map between two signatures of the same logic.

    ``mapping`` covers every non-variable source symbol; variables of the
    block X are carried by inclusion and never appear in it.
    """

    source: Signature
    target: Signature
    mapping: FrozenMap = field(default_factory=FrozenMap)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", FrozenMap(self.mapping))

    def __call__(self, name: str) -> str:
        if name in self.source.vars:
            return name
        return self.mapping[name]

    @classmethod
    def identity(cls, sig: Signature) -> SignatureMorphism:
        names = [n for n in sig.symbols() if n not in sig.vars]
        return cls(sig, sig, FrozenMap({n: n for n in names}))

    def then(self, other: SignatureMorphism) -> SignatureMorphism:
        """Diagrammatic composition: apply ``self`` first, then ``other``."""
        return SignatureMorphism(
            self.source, other.target,
            FrozenMap({k: other(v) for k, v in self.mapping.items()}),
        )

    def violations(self, logic: LogicId | str) -> list[str]:
        logic = LogicId.parse(logic)
        src, tgt = self.source, self.target
        out = [f"source {m}" for m in signature_violations(logic, src)]
        out += [f"target {m}" for m in signature_violations(logic, tgt)]
        tsyms = tgt.symbols()
        for name, kind in sorted(src.symbols().items()):
            if kind == "var":
                if name not in tgt.vars:
                    out.append(f"variable {name!r} missing from the target block")
                continue
            if name not in self.mapping:
                out.append(f"{kind} {name!r} is not mapped")
                continue
            image = self.mapping[name]
            if tsyms.get(image) != kind:
                out.append(f"{kind} {name!r} mapped to {image!r}, which is not a target {kind}")
                continue
            table = {"modality": "modalities", "func": "funcs", "pred": "preds"}.get(kind)
            if table and getattr(src, table)[name] != getattr(tgt, table)[image]:
                out.append(f"{kind} {name!r} -> {image!r} changes arity")
            if kind == "nominal" and layer_of(name) != layer_of(image):
                out.append(f"nominal {name!r} -> {image!r} changes layer")
        for name in sorted(set(self.mapping) - set(src.symbols())):
            out.append(f"mapping mentions unknown source symbol {name!r}")
        return out
