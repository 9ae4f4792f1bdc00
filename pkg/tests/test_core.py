import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratinst import (
    KripkeModel, Signature, SignatureMorphism, check_satisfaction_condition, entails,
    parse_sentence, reduct_model, satisfies, satisfies_global, stratification,
    translate_sentence,
)
from stratinst.core import PointedModel, capabilities, capability_table, state_map
from stratinst.errors import ModelValidationError, StateError
from stratinst.generate import random_model, random_sentence, rich_signature
from stratinst.kripke import FolModel
from stratinst.sentences import ExistsVar, Nom, Prop
from stratinst.signature import LogicId

from conftest import naive_kripke, naive_ofol


def test_stratification_is_world_set(pq, k1):
    assert stratification("MPL", pq, k1) == {"0", "1"}


def test_ofol_stratification_enumerates_valuations(ofol_model):
    one = Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x"})
    two = Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x", "y"})
    assert stratification("OFOL", one, ofol_model) == {(("x", "0"),), (("x", "1"),)}
    assert len(stratification("OFOL", two, ofol_model)) == 4


def test_k1_diamond(pq, k1):
    dp = parse_sentence("MPL", pq, "<> p")
    assert satisfies("MPL", pq, k1, "0", dp)
    assert not satisfies("MPL", pq, k1, "1", dp)


def test_contradiction_fails_everywhere(pq, k1):
    s = parse_sentence("MPL", pq, "p & !p")
    assert not any(satisfies("MPL", pq, k1, w, s) for w in "01")


def test_k2_at_jumps_to_named_world(hpl_sig, k2):
    assert satisfies("HPL", hpl_sig, k2, "a", parse_sentence("HPL", hpl_sig, "@ i p"))


def test_ofol_atom_at_valuation(ofol_sig, ofol_model):
    assert satisfies("OFOL", ofol_sig, ofol_model, (("x", "1"),), parse_sentence("OFOL", ofol_sig, "q(x)"))
    assert not satisfies("OFOL", ofol_sig, ofol_model, (("x", "0"),), parse_sentence("OFOL", ofol_sig, "q(x)"))


def test_unknown_state_rejected(pq, k1):
    with pytest.raises(StateError):
        satisfies("MPL", pq, k1, "7", Prop("p"))


def test_invalid_model_rejected(pq):
    bad = KripkeModel.build(["0"], [("0", "9")], {"0": set()})
    with pytest.raises(ModelValidationError):
        satisfies("MPL", pq, bad, "0", Prop("p"))


def test_global_satisfaction(pq, k1):
    assert satisfies_global("MPL", pq, k1, parse_sentence("MPL", pq, "!q"))
    assert not satisfies_global("MPL", pq, k1, Prop("p"))
    assert satisfies_global("MPL", pq, k1, parse_sentence("MPL", pq, "p | !p"))


def test_pointed_model(pq, k1):
    assert PointedModel("MPL", pq, k1, "0").satisfies(parse_sentence("MPL", pq, "<> p"))
    with pytest.raises(StateError):
        PointedModel("MPL", pq, k1, "x")


# --- signature morphisms ---------------------------------------------------------------

@pytest.fixture
def p_to_q():
    return SignatureMorphism(Signature(props={"p"}), Signature(props={"p", "q"}), {"p": "q"})


def test_translate_replaces_symbols(p_to_q):
    assert translate_sentence(p_to_q, parse_sentence("MPL", None, "<> p")) == parse_sentence("MPL", None, "<> q")


def test_translate_identity():
    sig = Signature(props={"p", "q"})
    s = parse_sentence("MPL", sig, "p -> [] q")
    assert translate_sentence(SignatureMorphism.identity(sig), s) == s


def test_translate_renames_captured_binder():
    # the bound variable z would be captured by the new target symbol z
    src = Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x"})
    tgt = Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x", "z"})
    s = parse_sentence("OFOL", src, "exists z . q(z)")
    out = translate_sentence(SignatureMorphism(src, tgt, {"c": "c", "q": "q"}), s)
    assert isinstance(out, ExistsVar) and out.var not in tgt.symbols()


def test_reduct_reads_back_through_morphism(p_to_q):
    m = KripkeModel.build(["0"], [], {"0": {"q"}})
    assert reduct_model(p_to_q, m).valuation["0"] == {"p"}


def test_reduct_along_identity_is_identity(pq, k1):
    assert reduct_model(SignatureMorphism.identity(pq), k1) == k1


def test_ofol_state_map_restricts():
    src = Signature(preds={"q": 1}, vars={"x"})
    tgt = Signature(preds={"q": 1}, vars={"x", "y"})
    phi = SignatureMorphism(src, tgt, {"q": "q"})
    m = FolModel(["0", "1"], {}, {"q": []})
    assert state_map(phi, m, (("x", "0"), ("y", "1"))) == (("x", "0"),)


def test_ofol_state_map_is_onto():
    src = Signature(preds={"q": 1}, vars={"x"})
    tgt = Signature(preds={"q": 1}, vars={"x", "y"})
    phi = SignatureMorphism(src, tgt, {"q": "q"})
    m = FolModel(["0", "1"], {}, {"q": []})
    images = {state_map(phi, m, w) for w in stratification("OFOL", tgt, m)}
    assert images == stratification("OFOL", src, reduct_model(phi, m))


def test_satisfaction_condition_instance(p_to_q):
    m = KripkeModel.build(["0", "1"], [("0", "1")], {"0": {"p"}, "1": {"q"}})
    assert check_satisfaction_condition("MPL", p_to_q, m, parse_sentence("MPL", None, "<> p"))


def test_satisfaction_condition_ofol_extension():
    src = Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x"})
    tgt = Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x", "y"})
    phi = SignatureMorphism(src, tgt, {"c": "c", "q": "q"})
    m = FolModel(["0", "1"], {"c": {(): "1"}}, {"q": [("1",)]})
    rep = check_satisfaction_condition("OFOL", phi, m, parse_sentence("OFOL", src, "q(x) & exists u . !q(u)"))
    assert rep.passed and rep.states == 4


def test_hofol_nominal_breaks_under_variable_extension():
    # ⟨c⟩ at a valuation of {x, y} asks for the constant valuation on both
    # variables; the reduct only sees x
    src = Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x"})
    tgt = Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x", "y"})
    phi = SignatureMorphism(src, tgt, {"c": "c", "q": "q"})
    m = FolModel(["0", "1"], {"c": {(): "0"}}, {"q": []})
    rep = check_satisfaction_condition("HOFOL", phi, m, Nom("c"))
    assert not rep.passed
    assert ((("x", "0"), ("y", "1")), True, False) in rep.mismatches


def test_mofol_modality_breaks_under_variable_extension():
    src = Signature(preds={"q": 1, "r": 2}, vars={"x"})
    tgt = Signature(preds={"q": 1, "r": 2}, vars={"x", "y"})
    phi = SignatureMorphism(src, tgt, {"q": "q", "r": "r"})
    m = FolModel(["0", "1"], {}, {"q": [("0",)], "r": []})
    rep = check_satisfaction_condition("MOFOL", phi, m, parse_sentence("MOFOL", src, "<q>()"))
    assert not rep.passed


# --- entailment --------------------------------------------------------------------------

def test_entailment_trivial():
    sig = Signature(props={"p"})
    assert entails("MPL", sig, [Prop("p")], Prop("p"))


def test_entailment_counterexample_is_k1_shape(k1):
    sig = Signature(props={"p"})
    r = entails("MPL", sig, [parse_sentence("MPL", sig, "<> p")], Prop("p"))
    assert not r
    model, w = r.counterexample
    assert satisfies("MPL", sig, model, w, parse_sentence("MPL", sig, "<> p & !p"))
    assert (model, w) == (k1, "0")


def test_global_entailment_is_weaker_than_local():
    # p |= [] p holds globally but not locally
    sig = Signature(props={"p"})
    hyp, goal = Prop("p"), parse_sentence("MPL", sig, "[] p")
    assert not entails("MPL", sig, [hyp], goal, mode="local")
    assert entails("MPL", sig, [hyp], goal, mode="global")


def test_entailment_mode_checked():
    with pytest.raises(ValueError):
        entails("MPL", Signature(props={"p"}), [], Prop("p"), mode="both")


# --- capabilities --------------------------------------------------------------------------

def test_capabilities_mpl():
    c = capabilities("MPL")
    assert (c.conj, c.disj, c.neg, c.impl, c.possibility, c.necessity) == (True,) * 6
    assert not (c.forall_var or c.forall_nom or c.nominal or c.at)


def test_capabilities_ofol():
    c = capabilities("OFOL")
    assert c.forall_var and c.exists_var
    assert not (c.possibility or c.necessity or c.nominal or c.at)


def test_capabilities_hmofol_all_set():
    c = capabilities("HMOFOL")
    assert all([c.conj, c.disj, c.neg, c.impl, c.forall_var, c.exists_var, c.forall_nom,
                c.exists_nom, c.possibility, c.necessity, c.nominal, c.at])


def test_capability_table_has_thirteen_rows():
    rows = capability_table()
    assert len(rows) == 13 and all(len(r) == 11 for r in rows)


# --- evaluator against a naive reference -------------------------------------------------

KRIPKE = [LogicId.MPL, LogicId.MPLs5, LogicId.MMPL, LogicId.HPL, LogicId.MHPL, LogicId.MFOL]
OPEN = [LogicId.OFOL, LogicId.MOFOL, LogicId.HOFOL, LogicId.HMOFOL]


@settings(max_examples=150, deadline=None)
@given(logic=st.sampled_from(KRIPKE), seed=st.integers(0, 10**9))
def test_kripke_evaluator_matches_reference(logic, seed):
    rng = random.Random(seed)
    sig = rich_signature(logic)
    model = random_model(rng, logic, sig, 3, 2)
    s = random_sentence(rng, logic, sig, 3)
    for w in model.worlds:
        assert satisfies(logic, sig, model, w, s) == naive_kripke(model, w, s)


@settings(max_examples=150, deadline=None)
@given(logic=st.sampled_from(OPEN), seed=st.integers(0, 10**9))
def test_open_fol_evaluator_matches_reference(logic, seed):
    rng = random.Random(seed)
    sig = rich_signature(logic)
    model = random_model(rng, logic, sig, 1, 2)
    s = random_sentence(rng, logic, sig, 3)
    for w in stratification(logic, sig, model):
        assert satisfies(logic, sig, model, w, s) == naive_ofol(sig, model, dict(w), s)


@settings(max_examples=80, deadline=None)
@given(logic=st.sampled_from(list(LogicId)), seed=st.integers(0, 10**9))
def test_state_maps_are_onto(logic, seed):
    from stratinst.generate import random_morphism
    rng = random.Random(seed)
    sig = rich_signature(logic)
    phi = random_morphism(rng, logic, sig)
    m = random_model(rng, logic, phi.target, 2, 2)
    images = {state_map(phi, m, w) for w in stratification(logic, phi.target, m)}
    assert images == stratification(logic, sig, reduct_model(phi, m))
