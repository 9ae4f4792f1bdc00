"""Exhaustive and seeded verifiers for the semantic laws and preservation results."""
from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field, replace
from typing import Iterable, Sequence

from .core import (
    check_satisfaction_condition, states_of, stratification, translate_sentence,
)
from .errors import CapabilityError
from .generate import (
    canonical_sentences, count_models, enumerate_models, minimal_signature,
    random_iso, random_model, random_morphism, random_sentence, rich_signature,
)
from .kripke import FolModel, KripkeModel, apply_iso, iso_hom, state_image, valuation_str
from .logics import EMPTY, ExpansionSpec, enumerate_expansions, evaluator, power_model
from .products import (
    FilterRep, ProductResult, enumerate_filters, enumerate_ultrafilters,
    filtered_product, product_violations,
)
from .sentences import (
    QUANT_NOM, QUANT_VAR, And, At, Box, Dia, ExistsNom, ExistsVar, ForallNom,
    ForallVar, Implies, Nom, Not, Or, PolyBox, PolyDia, Sentence, children, layer,
)
from .signature import (
    DIAMOND, LogicId, Signature, SignatureMorphism, layer_of, modalities_of, nominals_of, profile,
)
from .syntax import render_sentence

MCOMPACT_NOTE = (
    "m-compactness concerns infinite sentence sets and is not checked directly; "
    "this run certifies its premise instead: every generated sentence is "
    "preserved by ultraproducts and ultrafactors."
)


# --- preservation -------------------------------------------------------------------

def _truths(logic: LogicId, sig: Signature, result: ProductResult, s: Sentence):
    evs = result.__dict__.get("_evaluators")
    if evs is None:
        evs = result._evaluators = (
            [(j, evaluator(logic, sig, m)) for j, m in result.family.items()],
            evaluator(logic, sig, result.model),
        )
    factors = {j: ev.truth(s) for j, ev in evs[0]}
    return factors, evs[1].truth(s)


def _fibres(result: ProductResult) -> dict:
    """For each state w of M_F: the (J, factor states of k) with ⟦μ_J⟧(k) = w."""
    cached = getattr(result, "_fibre_cache", None)
    if cached is not None:
        return cached
    out: dict = {w: [] for w in result.states()}
    for J in result.members:
        for k in result.states(J):
            comps = result.components(J, k)
            out.setdefault(result.colimit(J, k), []).append(tuple((j, comps[j]) for j in J))
    result._fibre_cache = out
    return out


def _large(fibres, factors) -> bool:
    return any(all(kj in factors[j] for j, kj in comps) for comps in fibres)


def product_failures(result: ProductResult, s: Sentence) -> list:
    """States of M_F at which preservation by F-products fails for ``s``."""
    factors, apex = _truths(result.logic, result.sig, result, s)
    return [w for w, fib in _fibres(result).items() if _large(fib, factors) and w not in apex]


def factor_failures(result: ProductResult, s: Sentence) -> list:
    factors, apex = _truths(result.logic, result.sig, result, s)
    return [w for w, fib in _fibres(result).items() if w in apex and not _large(fib, factors)]


def preserved_by_products(
    logic: LogicId | str, sig: Signature, s: Sentence, F: FilterRep, family
) -> bool:
    return not product_failures(filtered_product(logic, sig, F, family), s)


def preserved_by_factors(
    logic: LogicId | str, sig: Signature, s: Sentence, F: FilterRep, family
) -> bool:
    return not factor_failures(filtered_product(logic, sig, F, family), s)


# --- extractions -----------------------------------------------------------------------

@dataclass(frozen=True)
class RelModel:
    """A relational structure: a universe and named relations."""

    universe: frozenset
    relations: dict


@dataclass(frozen=True)
class SetcModel:
    """A set with named constants."""

    universe: frozenset
    constants: dict


FRAME_LOGICS = {
    LogicId.MPL, LogicId.MPLt, LogicId.MPLs4, LogicId.MPLs5, LogicId.MFOL, LogicId.HPL,
    LogicId.HHPL, LogicId.MMPL, LogicId.MHPL, LogicId.MOFOL, LogicId.HMOFOL,
}
NOMINAL_LOGICS = {LogicId.HPL, LogicId.MHPL, LogicId.HHPL, LogicId.HOFOL, LogicId.HMOFOL}


def extract_frame(logic: LogicId | str, sig: Signature, model) -> RelModel:
    logic = LogicId.parse(logic)
    if logic not in FRAME_LOGICS:
        raise CapabilityError(f"{logic.value} has no frame extraction")
    states = stratification(logic, sig, model)
    if profile(logic).kripke:
        rels = {lam: model.frame.relations[lam] for lam in modalities_of(logic, sig)}
    else:
        power = power_model(model, sig.vars)
        rels = {p: power.preds[p] for p in modalities_of(logic, sig)}
    return RelModel(states, rels)


def extract_nominals(logic: LogicId | str, sig: Signature, model, layer: int = 1) -> SetcModel:
    """Nominal extraction; for HHPL ``layer=0`` reads the shared inner nominals."""
    logic = LogicId.parse(logic)
    if logic not in NOMINAL_LOGICS:
        raise CapabilityError(f"{logic.value} has no nominal extraction")
    states = stratification(logic, sig, model)
    if logic is LogicId.HHPL:
        if layer == 0:
            inner = model.valuation[model.worlds[0]]
            return SetcModel(frozenset(inner.worlds), dict(inner.frame.nominals))
        return SetcModel(states, dict(model.frame.nominals))
    if profile(logic).kripke:
        return SetcModel(states, dict(model.frame.nominals))
    xs = sorted(sig.vars)
    return SetcModel(states, {
        c: tuple((x, model.constant(c)) for x in xs) for c in sorted(nominals_of(logic, sig))
    })


# --- reports -------------------------------------------------------------------------

@dataclass
class Violation:
    case: int
    logic: str
    what: str
    inputs: dict
    expected: object
    actual: object
    repro: str


@dataclass
class SuiteReport:
    suite: str
    seed: int
    logics: list
    cases: int = 0
    checks: int = 0
    violations: list = field(default_factory=list)
    elapsed: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: SuiteReport) -> None:
        self.cases += other.cases
        self.checks += other.checks
        self.violations += other.violations
        for n in other.notes:
            if n not in self.notes:
                self.notes.append(n)

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "logics": self.logics,
            "cases": self.cases,
            "checks": self.checks,
            "violations": [asdict(v) for v in self.violations],
            "notes": self.notes,
        }
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out

    def to_text(self, timing: bool = False, limit: int = 20) -> str:
        lines = [
            f"suite {self.suite}: {len(self.violations)} violation(s) in {self.cases} case(s), "
            f"{self.checks} check(s); logics {', '.join(self.logics)}; seed {self.seed}"
        ]
        for v in self.violations[:limit]:
            lines.append(f"  [{v.logic} case {v.case}] {v.what}: expected {v.expected}, got {v.actual}")
            for k, val in v.inputs.items():
                lines.append(f"      {k}: {val}")
            lines.append(f"      repro: {v.repro}")
        if len(self.violations) > limit:
            lines.append(f"  ... {len(self.violations) - limit} more")
        lines += [f"note: {n}" for n in self.notes]
        if timing:
            lines.append(f"elapsed: {self.elapsed:.2f}s")
        return "\n".join(lines)


@dataclass(frozen=True)
class SuiteConfig:
    """Bounds and seeding for one suite run.

    ``budget`` is the number of cases per logic (model families for ``los``,
    random instances for ``satcond``/``iso``, models for ``laws``).
    ``case`` restricts a run to a single case index for replaying a report.
    """

    logics: tuple = tuple(LogicId)
    seed: int = 0
    budget: int | None = None
    depth: int | None = None
    max_worlds: int | None = None
    max_carrier: int = 2
    max_index: int = 3
    case: int | None = None
    fault: bool = False
    extend_all_vars: bool = False  # satcond: variable-extending morphisms for every OFOL-family logic
    filters: str = "both"  # los: "ultra", "general" or "both"

    def __post_init__(self) -> None:
        object.__setattr__(self, "logics", tuple(LogicId.parse(x) for x in self.logics))
        for name in ("budget", "depth", "max_worlds"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.max_carrier < 1 or self.max_index < 1:
            raise ValueError("bounds must be at least 1")

    def cases(self, default: int) -> Iterable[int]:
        if self.case is not None:
            return [self.case]
        return range(self.budget or default)


def _repro(suite: str, logic: LogicId, cfg: SuiteConfig, case: int | None) -> str:
    parts = [f"stratinst verify --suite {suite} --logic {logic.value} --seed {cfg.seed}"]
    if case is not None:
        parts.append(f"--case {case}")
    if cfg.budget is not None and case is None:
        parts.append(f"--budget {cfg.budget}")
    if cfg.depth is not None:
        parts.append(f"--depth {cfg.depth}")
    if cfg.max_worlds is not None:
        parts.append(f"--max-worlds {cfg.max_worlds}")
    if cfg.fault:
        parts.append("--inject-fault")
    if cfg.extend_all_vars:
        parts.append("--extend-all-vars")
    return " ".join(parts)


def _rng(suite: str, logic: LogicId, seed: int, case: int) -> random.Random:
    return random.Random(f"{suite}:{logic.value}:{seed}:{case}")


def _state_str(state) -> str:
    return state if isinstance(state, str) else valuation_str(state)


def _model_str(model) -> str:
    from .syntax import model_to_json

    return json.dumps(model_to_json(model), sort_keys=True)


def _run(suite: str, cfg: SuiteConfig, per_logic) -> SuiteReport:
    start = time.perf_counter()
    report = SuiteReport(suite, cfg.seed, [x.value for x in cfg.logics])
    for logic in cfg.logics:
        report.merge(per_logic(logic))
    report.elapsed = time.perf_counter() - start
    return report


# --- Łoś -------------------------------------------------------------------------------

def inject_fault(result: ProductResult) -> ProductResult:
    """Toggle one tuple of a relation of the filtered product (a deliberate corruption)."""
    m = result.model
    if isinstance(m, KripkeModel):
        lam = sorted(m.frame.relations)[0]
        rel = m.frame.relations[lam]
        arity = len(next(iter(rel))) if rel else _relation_arity(result, lam)
        t = (m.worlds[0],) * arity
        frame = replace(m.frame, relations=m.frame.relations.set(lam, rel ^ {t}))
        return result.with_model(KripkeModel(frame, m.valuation))
    p = sorted(m.preds, key=lambda q: (-result.sig.preds[q], q))[0]
    t = (m.carrier[0],) * result.sig.preds[p]
    return result.with_model(FolModel(m.carrier, m.funcs, m.preds.set(p, m.preds[p] ^ {t})))


def _relation_arity(result: ProductResult, lam: str) -> int:
    return modalities_of(result.logic, result.sig)[lam] + 1


def _los_family(cfg: SuiteConfig, logic: LogicId, sig: Signature, case: int) -> dict:
    rng = _rng("los", logic, cfg.seed, case)
    n = 1 + case % cfg.max_index
    worlds = cfg.max_worlds or 2
    return {i: random_model(rng, logic, sig, worlds, cfg.max_carrier) for i in range(1, n + 1)}


def _los_logic(cfg: SuiteConfig, logic: LogicId) -> SuiteReport:
    sig = minimal_signature(logic)
    depth = cfg.depth or 2
    report = SuiteReport("los", cfg.seed, [logic.value])
    memo: dict = {}
    full = canonical_sentences(logic, sig, depth, _memo=memo) if cfg.filters != "general" else []
    positive = canonical_sentences(logic, sig, depth, positive=True) if cfg.filters != "ultra" else []
    default = 7 * cfg.max_index
    for case in cfg.cases(default):
        family = _los_family(cfg, logic, sig, case)
        index = sorted(family)
        plans = []
        if cfg.filters != "general":
            plans += [("ultrafilter", F, full) for F in enumerate_ultrafilters(index)]
        if cfg.filters != "ultra" and len(index) == cfg.max_index:
            plans += [("filter", F, positive) for F in enumerate_filters(index)]
        report.cases += 1
        repro = _repro("los", logic, cfg, case)

        def flag(what, F, s, state, expected, actual) -> None:
            report.violations.append(Violation(
                case, logic.value, what,
                {"filter": str(F), "sentence": render_sentence(s) if s is not None else "",
                 "state": _state_str(state) if state is not None else "",
                 "family": [_model_str(family[i]) for i in index]},
                expected, actual, repro,
            ))

        for kind, F, sentences in plans:
            result = filtered_product(logic, sig, F, family)
            if cfg.fault:
                result = inject_fault(result)
            for v in product_violations(result):
                report.checks += 1
                flag(f"product structure: {v}", F, None, None, "valid", "invalid")
            ultra = kind == "ultrafilter"
            for s in sentences:
                report.checks += 1
                bad_p = product_failures(result, s)
                bad_f = factor_failures(result, s)
                for w in bad_p:
                    flag(f"not preserved by {kind} products", F, s, w, True, False)
                for w in bad_f:
                    flag(f"not preserved by {kind} factors", F, s, w, False, True)
                neg = Not(s, layer(s) if logic is LogicId.HHPL else None)
                if ultra and not bad_f:
                    # ¬ρ preserved by products whenever ρ is preserved by factors
                    for w in product_failures(result, neg):
                        flag("negation of a factor-preserved sentence not preserved by ultraproducts",
                             F, s, w, True, False)
    report.notes.append(MCOMPACT_NOTE)
    return report


def run_los_suite(config: SuiteConfig = SuiteConfig()) -> SuiteReport:
    """Łoś preservation over ultrafilters (all sentences) and general filters (positive fragment)."""
    return _run("los", config, lambda logic: _los_logic(config, logic))


# --- satisfaction condition and isomorphism invariance ---------------------------------------

# ⟨π⟩ and nominals read the X-power of the model, so their truth at a valuation
# of X' ⊋ X also constrains the new variables and the satisfaction condition
# fails; only plain OFOL is swept with variable-extending morphisms by default.
X_POWER_NOTE = (
    "{logic}: morphisms keep the variable block fixed; with X ⊊ X' the power-model "
    "modalities and nominals break the satisfaction condition (rerun with --extend-all-vars)"
)


def _satcond_logic(cfg: SuiteConfig, logic: LogicId) -> SuiteReport:
    report = SuiteReport("satcond", cfg.seed, [logic.value])
    sig = rich_signature(logic)
    depth = cfg.depth or 3
    prof = profile(logic)
    extend = logic is LogicId.OFOL or cfg.extend_all_vars
    if not prof.kripke and not extend:
        report.notes.append(X_POWER_NOTE.format(logic=logic.value))
    for case in cfg.cases(200):
        rng = _rng("satcond", logic, cfg.seed, case)
        if case % 10 == 0:
            phi = SignatureMorphism.identity(sig)
        else:
            phi = random_morphism(rng, logic, sig, extend_vars=extend)
        model = random_model(rng, logic, phi.target, cfg.max_worlds or 3, cfg.max_carrier)
        s = random_sentence(rng, logic, sig, depth)
        rep = check_satisfaction_condition(logic, phi, model, s)
        report.cases += 1
        report.checks += rep.states
        for w, lhs, rhs in rep.mismatches:
            report.violations.append(Violation(
                case, logic.value, "satisfaction condition fails",
                {"sentence": render_sentence(s), "translated": render_sentence(translate_sentence(phi, s)),
                 "morphism": dict(phi.mapping), "state": _state_str(w), "model": _model_str(model)},
                lhs, rhs, _repro("satcond", logic, cfg, case),
            ))
    return report


def run_satcond_suite(config: SuiteConfig = SuiteConfig()) -> SuiteReport:
    return _run("satcond", config, lambda logic: _satcond_logic(config, logic))


def _iso_logic(cfg: SuiteConfig, logic: LogicId) -> SuiteReport:
    report = SuiteReport("iso", cfg.seed, [logic.value])
    sig = rich_signature(logic)
    depth = cfg.depth or 3
    for case in cfg.cases(200):
        rng = _rng("iso", logic, cfg.seed, case)
        model = random_model(rng, logic, sig, cfg.max_worlds or 3, cfg.max_carrier)
        bij = random_iso(rng, logic, model)
        if case % 10 == 0:
            bij = {}
        image = apply_iso(logic, sig, model, **bij)
        hom = iso_hom(logic, model, **bij)
        s = random_sentence(rng, logic, sig, depth)
        src = evaluator(logic, sig, model).truth(s)
        tgt = evaluator(logic, sig, image).truth(s)
        report.cases += 1
        for w in states_of(logic, sig, model):
            report.checks += 1
            a, b = w in src, state_image(logic, hom, w) in tgt
            if a != b:
                report.violations.append(Violation(
                    case, logic.value, "satisfaction not invariant under isomorphism",
                    {"sentence": render_sentence(s), "state": _state_str(w),
                     "bijections": bij, "model": _model_str(model)},
                    a, b, _repro("iso", logic, cfg, case),
                ))
    return report


def run_iso_suite(config: SuiteConfig = SuiteConfig()) -> SuiteReport:
    return _run("iso", config, lambda logic: _iso_logic(config, logic))


# --- connective laws ---------------------------------------------------------------------------

def _neg(logic: LogicId, s: Sentence, tag: int | None = None) -> Sentence:
    if logic is LogicId.HHPL:
        return Not(s, layer(s) if tag is None else max(tag, layer(s)))
    return Not(s)


def dual_form(logic: LogicId, s: Sentence) -> Sentence | None:
    """The sentence the duality laws equate with ``s``, if ``s`` is a derived form."""
    if isinstance(s, Or):
        t = s.layer
        return _neg(logic, And(_neg(logic, s.left, t), _neg(logic, s.right, t), t), t)
    if isinstance(s, Implies):
        return Or(_neg(logic, s.left, s.layer), s.right, s.layer)
    if isinstance(s, ForallVar):
        return Not(ExistsVar(s.var, Not(s.body)))
    if isinstance(s, ForallNom):
        t = s.layer
        return _neg(logic, ExistsNom(s.nominal, _neg(logic, s.body, t), t), t)
    if isinstance(s, Box):
        t = s.layer
        return _neg(logic, Dia(_neg(logic, s.arg, t), t), t)
    if isinstance(s, PolyBox):
        return Not(PolyDia(s.modality, tuple(Not(a) for a in s.args)))
    return None


def definitional_clause(logic: LogicId, sig: Signature, model, s: Sentence, env=EMPTY) -> frozenset | None:
    """Truth set of ``s`` rebuilt from its parts through the extractions and expansions.

    Returns ``None`` for atoms and for HHPL layer-0 sentences (evaluated inside
    the inner models).
    """
    ev = evaluator(logic, sig, model)
    if logic is LogicId.HHPL and layer(s) == 0:
        return None
    T = lambda x: ev.truth(x, env)  # noqa: E731
    states = ev.all
    if isinstance(s, Not):
        return frozenset(w for w in states if w not in T(s.arg))
    if isinstance(s, And):
        return frozenset(w for w in states if w in T(s.left) and w in T(s.right))
    if isinstance(s, Or):
        return frozenset(w for w in states if w in T(s.left) or w in T(s.right))
    if isinstance(s, Implies):
        return frozenset(w for w in states if w not in T(s.left) or w in T(s.right))
    if isinstance(s, (Dia, Box, PolyDia, PolyBox)):
        lam = DIAMOND if isinstance(s, (Dia, Box)) else s.modality
        args = (s.arg,) if isinstance(s, (Dia, Box)) else s.args
        rel = extract_frame(logic, sig, model).relations[lam]
        truths = [T(a) for a in args]
        out = set()
        for w in states:
            tuples = [t[1:] for t in rel if t[0] == w]
            if isinstance(s, (Dia, PolyDia)):
                ok = any(all(v in tr for v, tr in zip(t, truths)) for t in tuples)
            else:
                ok = all(any(v in tr for v, tr in zip(t, truths)) for t in tuples)
            if ok:
                out.add(w)
        return frozenset(out)
    if isinstance(s, (Nom, At)) and not env:
        name = s.name if isinstance(s, Nom) else s.nominal
        lay = layer_of(name) if logic is LogicId.HHPL else 1
        point = extract_nominals(logic, sig, model, lay or 0).constants.get(name)
        if point is None:
            return None
        if isinstance(s, Nom):
            return frozenset(w for w in states if w == point)
        return states if point in T(s.arg) else frozenset()
    if isinstance(s, QUANT_VAR + QUANT_NOM) and not env:
        name = s.var if isinstance(s, QUANT_VAR) else s.nominal
        kind = "var" if isinstance(s, QUANT_VAR) else "nominal"
        spec = ExpansionSpec(sig, model, name, kind)
        sig2 = spec.signature(logic)
        parts = [evaluator(logic, sig2, m2).truth(s.body) for m2 in enumerate_expansions(logic, spec)]
        if isinstance(s, (ExistsVar, ExistsNom)):
            return frozenset(w for w in states if any(w in p for p in parts))
        return frozenset(w for w in states if all(w in p for p in parts))
    return None


LAWS_EXHAUSTIVE = 5000  # enumerate every model when there are at most this many
LAWS_SAMPLES = 200


def _laws_models(cfg: SuiteConfig, logic: LogicId, sig: Signature) -> tuple[list, bool]:
    """Every model within bounds when affordable, else seeded random models."""
    worlds = cfg.max_worlds or 3
    limit = cfg.budget or LAWS_EXHAUSTIVE
    if cfg.case is None and count_models(logic, sig, worlds, cfg.max_carrier) <= limit:
        return list(enumerate_models(logic, sig, worlds, cfg.max_carrier, limit=limit)), True
    models = [random_model(_rng("laws", logic, cfg.seed, c), logic, sig, worlds, cfg.max_carrier)
              for c in cfg.cases(LAWS_SAMPLES)]
    return models, False


def _laws_logic(cfg: SuiteConfig, logic: LogicId) -> SuiteReport:
    report = SuiteReport("laws", cfg.seed, [logic.value])
    sig = minimal_signature(logic)
    depth = cfg.depth or 2
    sentences = canonical_sentences(logic, sig, depth)
    laws = [(s, d) for s in sentences if (d := dual_form(logic, s)) is not None]
    clauses = [s for s in sentences if children(s)]
    models, exhaustive = _laws_models(cfg, logic, sig)
    for n, model in enumerate(models):
        case = cfg.case if cfg.case is not None else n
        ev = evaluator(logic, sig, model)
        report.cases += 1
        # enumerated models are replayed by rerunning the whole enumeration
        repro = _repro("laws", logic, cfg, None if exhaustive else case)

        def flag(what, s, expected, actual) -> None:
            report.violations.append(Violation(
                case, logic.value, what,
                {"sentence": render_sentence(s), "model": _model_str(model)},
                sorted(map(_state_str, expected)), sorted(map(_state_str, actual)), repro,
            ))

        for s, d in laws:
            report.checks += 1
            if ev.truth(s) != ev.truth(d):
                flag(f"duality law fails against {render_sentence(d)}", s, ev.truth(d), ev.truth(s))
        for s in clauses:
            want = definitional_clause(logic, sig, model, s)
            if want is None:
                continue
            report.checks += 1
            if ev.truth(s) != want:
                flag("evaluator disagrees with the definitional clause", s, want, ev.truth(s))
    how = "all models within bounds" if exhaustive else "seeded random models"
    report.notes.append(f"{logic.value}: {len(models)} {how}")
    return report


def check_connective_laws(
    logic: LogicId | str, sig: Signature, models: Sequence, depth: int = 2
) -> SuiteReport:
    """Duality laws and definitional clauses on the given models."""
    logic = LogicId.parse(logic)
    start = time.perf_counter()
    report = SuiteReport("laws", 0, [logic.value])
    sentences = canonical_sentences(logic, sig, depth)
    laws = [(s, d) for s in sentences if (d := dual_form(logic, s)) is not None]
    for case, model in enumerate(models):
        stratification(logic, sig, model)  # validates
        ev = evaluator(logic, sig, model)
        report.cases += 1
        for s, d in laws:
            report.checks += 1
            if ev.truth(s) != ev.truth(d):
                report.violations.append(Violation(
                    case, logic.value, "duality law fails",
                    {"sentence": render_sentence(s), "dual": render_sentence(d)},
                    sorted(map(_state_str, ev.truth(d))), sorted(map(_state_str, ev.truth(s))), "",
                ))
        for s in sentences:
            want = definitional_clause(logic, sig, model, s) if children(s) else None
            if want is None:
                continue
            report.checks += 1
            if ev.truth(s) != want:
                report.violations.append(Violation(
                    case, logic.value, "evaluator disagrees with the definitional clause",
                    {"sentence": render_sentence(s)},
                    sorted(map(_state_str, want)), sorted(map(_state_str, ev.truth(s))), "",
                ))
    report.elapsed = time.perf_counter() - start
    return report


def run_laws_suite(config: SuiteConfig = SuiteConfig()) -> SuiteReport:
    return _run("laws", config, lambda logic: _laws_logic(config, logic))


SUITES = {
    "los": run_los_suite,
    "satcond": run_satcond_suite,
    "laws": run_laws_suite,
    "iso": run_iso_suite,
}
