import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratinst import KripkeModel, Signature, parse_sentence, principal, satisfies_global
from stratinst.core import entails, stratification
from stratinst.errors import CapabilityError
from stratinst.generate import minimal_signature, random_model, random_sentence
from stratinst.products import enumerate_filters, filtered_product, make_filter
from stratinst.sentences import And
from stratinst.signature import LogicId
from stratinst.verify import (
    MCOMPACT_NOTE, SuiteConfig, check_connective_laws, extract_frame, extract_nominals,
    factor_failures, inject_fault, preserved_by_factors, preserved_by_products,
    product_failures, run_iso_suite, run_laws_suite, run_los_suite, run_satcond_suite,
)


# --- extractions ----------------------------------------------------------------------

def test_frame_of_k1(pq, k1):
    fr = extract_frame("MPL", pq, k1)
    assert fr.universe == {"0", "1"}
    assert fr.relations["lambda"] == {("0", "1")}


def test_nominals_of_k2(hpl_sig, k2):
    nm = extract_nominals("HPL", hpl_sig, k2)
    assert nm.universe == {"a", "b"} and nm.constants == {"i": "b"}


def test_mofol_frame_is_the_power_relation():
    sig = Signature(preds={"r": 2}, vars={"x"})
    from stratinst import FolModel
    m = FolModel(["0", "1"], {}, {"r": [("0", "1")]})
    fr = extract_frame("MOFOL", sig, m)
    assert fr.universe == stratification("MOFOL", sig, m)
    assert fr.relations["r"] == {((("x", "0"),), (("x", "1"),))}


def test_extraction_rejected_where_absent(pq, k1, ofol_sig, ofol_model):
    with pytest.raises(CapabilityError):
        extract_frame("OFOL", ofol_sig, ofol_model)
    with pytest.raises(CapabilityError):
        extract_nominals("MPL", pq, k1)


@settings(max_examples=60, deadline=None)
@given(logic=st.sampled_from([LogicId.MPL, LogicId.HPL, LogicId.MMPL, LogicId.MOFOL, LogicId.HOFOL]),
       seed=st.integers(0, 10**9))
def test_extracted_universe_is_the_stratification(logic, seed):
    sig = minimal_signature(logic)
    m = random_model(random.Random(seed), logic, sig, 3, 2)
    states = stratification(logic, sig, m)
    if logic is not LogicId.HOFOL:
        assert extract_frame(logic, sig, m).universe == states
    if logic in (LogicId.HPL, LogicId.HOFOL):
        assert extract_nominals(logic, sig, m).universe == states


# --- preservation ------------------------------------------------------------------------

def test_diamond_with_trivial_filter(pq, k1):
    I = {1, 2}
    s = parse_sentence("MPL", pq, "<> p")
    assert preserved_by_products("MPL", pq, s, make_filter(I, [I]), {1: k1, 2: k1})


def test_box_under_principal_ultrafilter(pq, k1):
    k3 = KripkeModel.build(["x"], [("x", "x")], {"x": {"p"}})
    s = parse_sentence("MPL", pq, "[] p")
    assert preserved_by_factors("MPL", pq, s, principal({1, 2}, {1}), {1: k1, 2: k3})


def test_disagreeing_factors(pq, k1):
    other = KripkeModel.build(["0", "1"], [("0", "1")], {"0": {"q"}, "1": {"p", "q"}})
    s = parse_sentence("MPL", pq, "p & q")
    F = make_filter({1, 2}, [{1, 2}])
    assert preserved_by_products("MPL", pq, s, F, {1: k1, 2: other})


def test_nominal_preserved_by_trivial_filter(hpl_sig, k2):
    s = parse_sentence("HPL", hpl_sig, "nom i")
    F = make_filter({1, 2}, [{1, 2}])
    assert preserved_by_products("HPL", hpl_sig, s, F, {1: k2, 2: k2})
    assert preserved_by_factors("HPL", hpl_sig, s, F, {1: k2, 2: k2})


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_negation_under_ultrafilters(seed):
    # whenever ρ is preserved by ultrafactors, ¬ρ is preserved by ultraproducts
    rng = random.Random(seed)
    logic = rng.choice([LogicId.MPL, LogicId.HPL, LogicId.OFOL])
    sig = minimal_signature(logic)
    family = {i: random_model(rng, logic, sig, 2, 2) for i in (1, 2)}
    s = random_sentence(rng, logic, sig, 2)
    from stratinst.sentences import Not
    for F in enumerate_filters([1, 2]):
        if len(F.members) != 2:
            continue
        r = filtered_product(logic, sig, F, family)
        if not factor_failures(r, s):
            assert not product_failures(r, Not(s))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_outcomes_depend_only_on_meaning(seed):
    rng = random.Random(seed)
    sig = minimal_signature("MPL")
    family = {i: random_model(rng, "MPL", sig, 2, 1) for i in (1, 2, 3)}
    s = random_sentence(rng, "MPL", sig, 2)
    twin = And(s, s)
    for F in enumerate_filters([1, 2, 3]):
        r = filtered_product("MPL", sig, F, family)
        assert product_failures(r, s) == product_failures(r, twin)
        assert factor_failures(r, s) == factor_failures(r, twin)


# --- connective laws --------------------------------------------------------------------

def test_laws_on_k1(pq, k1):
    rep = check_connective_laws("MPL", pq, [k1])
    assert rep.passed and rep.checks > 0


def test_mmpl_binary_duality():
    sig = Signature(props={"p"}, modalities={"l": 2})
    m = KripkeModel.build(
        ["0", "1", "2"], {"l": [("0", "1", "2"), ("1", "2", "2"), ("2", "0", "0")]},
        {"0": {"p"}, "1": set(), "2": {"p"}},
    )
    rep = check_connective_laws("MMPL", sig, [m])
    assert rep.passed and rep.checks > 0


def test_global_conjunction_law(pq, k1):
    a, b = parse_sentence("MPL", pq, "!q"), parse_sentence("MPL", pq, "<> p | p")
    both = satisfies_global("MPL", pq, k1, And(a, b))
    assert both == (satisfies_global("MPL", pq, k1, a) and satisfies_global("MPL", pq, k1, b))


# --- local implies global ---------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(logic=st.sampled_from([LogicId.MPL, LogicId.HPL, LogicId.OFOL]), seed=st.integers(0, 10**9))
def test_local_entailment_implies_global(logic, seed):
    rng = random.Random(seed)
    sig = minimal_signature(logic)
    hyps = [random_sentence(rng, logic, sig, 2) for _ in range(rng.randint(0, 2))]
    goal = random_sentence(rng, logic, sig, 2)
    if entails(logic, sig, hyps, goal, mode="local"):
        assert entails(logic, sig, hyps, goal, mode="global")


# --- suites ------------------------------------------------------------------------------

def test_los_mpl_small():
    rep = run_los_suite(SuiteConfig(logics=("MPL",), budget=6))
    assert rep.passed and rep.cases == 6 and rep.checks > 0
    assert MCOMPACT_NOTE in rep.notes


def test_los_hpl_small():
    rep = run_los_suite(SuiteConfig(logics=("HPL",), budget=3))
    assert rep.passed


def test_fault_injection_is_flagged():
    rep = run_los_suite(SuiteConfig(logics=("MPL",), budget=3, fault=True))
    assert not rep.passed
    v = rep.violations[0]
    assert "--inject-fault" in v.repro and "--case" in v.repro


def test_inject_fault_breaks_structure(pq, k1):
    from stratinst.products import product_violations
    r = filtered_product("MPL", pq, make_filter({1, 2}, [{1, 2}]), {1: k1, 2: k1})
    assert product_violations(r) == []
    assert product_violations(inject_fault(r))


def test_satcond_small():
    rep = run_satcond_suite(SuiteConfig(logics=("MPL", "OFOL", "HPL"), budget=30))
    assert rep.passed and rep.cases == 90


def test_satcond_extension_flag_exposes_power_logics():
    rep = run_satcond_suite(SuiteConfig(logics=("HOFOL",), budget=60, extend_all_vars=True))
    assert not rep.passed
    assert "--extend-all-vars" in rep.violations[0].repro
    quiet = run_satcond_suite(SuiteConfig(logics=("HOFOL",), budget=60))
    assert quiet.passed and quiet.notes


def test_iso_small():
    rep = run_iso_suite(SuiteConfig(logics=tuple(LogicId), budget=15))
    assert rep.passed and rep.cases == 15 * len(LogicId)


def test_laws_small():
    rep = run_laws_suite(SuiteConfig(logics=("MPL", "OFOL"), budget=20))
    assert rep.passed


def test_replay_single_case():
    cfg = SuiteConfig(logics=("MPL",), budget=3, fault=True)
    full = run_los_suite(cfg)
    v = full.violations[0]
    again = run_los_suite(SuiteConfig(logics=("MPL",), case=v.case, fault=True))
    assert again.violations[0].inputs == v.inputs


def test_reports_are_deterministic():
    a = run_iso_suite(SuiteConfig(logics=("HPL",), budget=10, seed=7)).to_json()
    b = run_iso_suite(SuiteConfig(logics=("HPL",), budget=10, seed=7)).to_json()
    a.pop("elapsed_seconds"), b.pop("elapsed_seconds")
    assert a == b


def test_config_bounds():
    with pytest.raises(ValueError):
        SuiteConfig(budget=0)
