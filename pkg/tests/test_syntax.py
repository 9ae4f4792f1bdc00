import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratinst import Signature, load_model, parse_sentence, render_sentence, save_model
from stratinst.errors import CapabilityError, ModelValidationError, SchemaError, SentenceError
from stratinst.generate import random_model, random_sentence, rich_signature
from stratinst.sentences import And, At, Dia, Implies, Not, Or, PolyDia, Prop
from stratinst.signature import LogicId
from stratinst.syntax import load_signature, model_from_json, model_to_json, save_signature, tokenize


def test_grammar_mapping():
    assert parse_sentence("MPL", None, "<> (p & !q)") == Dia(And(Prop("p"), Not(Prop("q"))))


def test_polyadic_under_at():
    sig = Signature(props={"p", "q"}, nominals={"i"}, modalities={"l": 2})
    s = parse_sentence("MHPL", sig, "@ i <l>(p, q)")
    assert s == At("i", PolyDia("l", (Prop("p"), Prop("q"))))


def test_precedence_and_associativity():
    s = parse_sentence("MPL", None, "a | b & c -> d -> e")
    assert s == Implies(Or(Prop("a"), And(Prop("b"), Prop("c"))), Implies(Prop("d"), Prop("e")))
    assert parse_sentence("MPL", None, "a & b & c") == And(And(Prop("a"), Prop("b")), Prop("c"))


def test_quantifier_scope_extends_right():
    s = parse_sentence("OFOL", None, "exists u . q(u) & r(u)")
    assert render_sentence(s) == "(exists u . (q(u) & r(u)))"


def test_mpl_rejects_quantifier():
    with pytest.raises(CapabilityError) as e:
        parse_sentence("MPL", Signature(props={"p"}), "exists i . p")
    assert e.value.position == 0


def test_unknown_symbol_position():
    with pytest.raises(SentenceError) as e:
        parse_sentence("MPL", Signature(props={"p"}), "p & zz")
    assert e.value.position == 4


def test_arity_mismatch():
    sig = Signature(props={"p"}, modalities={"l": 2})
    with pytest.raises(SentenceError):
        parse_sentence("MMPL", sig, "<l>(p)")


def test_binder_must_be_fresh():
    sig = Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x"})
    with pytest.raises(SentenceError):
        parse_sentence("OFOL", sig, "exists x . q(x)")


def test_hhpl_layer_check():
    sig = Signature(props={"p"}, nominals={"i^0", "j^1"})
    with pytest.raises(SentenceError):
        parse_sentence("HHPL", sig, "<>^0 nom j^1")
    assert render_sentence(parse_sentence("HHPL", sig, "<> nom j^1")) == "(<>^1 (nom j^1))"


def test_layer_tag_outside_hhpl():
    with pytest.raises(SentenceError):
        parse_sentence("MPL", None, "<>^1 p")


def test_trailing_garbage():
    with pytest.raises(SentenceError):
        parse_sentence("MPL", None, "p q")


def test_bad_character():
    with pytest.raises(SentenceError) as e:
        tokenize("p $ q")
    assert e.value.position == 2


def test_render_examples():
    assert render_sentence(Dia(Prop("p"))) == "(<> p)"
    assert render_sentence(parse_sentence("MPL", None, "p & !q")) == "(p & (! q))"


# --- round trips ---------------------------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(logic=st.sampled_from(list(LogicId)), seed=st.integers(0, 10**9), depth=st.integers(0, 4))
def test_parse_render_round_trip(logic, seed, depth):
    sig = rich_signature(logic)
    s = random_sentence(random.Random(seed), logic, sig, depth)
    text = render_sentence(s)
    assert parse_sentence(logic, sig, text) == s
    assert render_sentence(parse_sentence(logic, sig, text)) == text


@settings(max_examples=100, deadline=None)
@given(logic=st.sampled_from(list(LogicId)), seed=st.integers(0, 10**9))
def test_model_json_round_trip(logic, seed):
    sig = rich_signature(logic)
    m = random_model(random.Random(seed), logic, sig, 3, 2)
    data = json.loads(json.dumps(model_to_json(m)))
    assert model_from_json(logic, sig, data) == m


def test_k1_file_round_trip(tmp_path, pq, k1):
    save_model(k1, tmp_path / "k1.json")
    save_signature(pq, tmp_path / "s.json")
    sig = load_signature(tmp_path / "s.json")
    assert sig == pq
    assert load_model("MPL", sig, tmp_path / "k1.json") == k1


def test_unknown_world_is_named(pq):
    data = {"worlds": ["0"], "relations": {"lambda": [["0", "9"]]}, "valuation": {"0": []}}
    with pytest.raises(SchemaError) as e:
        model_from_json("MPL", pq, data)
    assert "['0', '9']" in str(e.value) and "'9'" in str(e.value)


def test_schema_errors_carry_paths(pq):
    with pytest.raises(SchemaError) as e:
        model_from_json("MPL", pq, {"worlds": [], "valuation": {}, "extra": 1})
    msg = str(e.value)
    assert "$.worlds" in msg and "extra" in msg


def test_semantic_violation_after_schema(pq):
    data = {"worlds": ["0"], "valuation": {"0": ["zz"]}}
    with pytest.raises(ModelValidationError):
        model_from_json("MPL", pq, data)


def test_bad_json_file(tmp_path, pq):
    path = tmp_path / "m.json"
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        load_model("MPL", pq, path)


def test_signature_schema():
    with pytest.raises(SchemaError):
        from stratinst.syntax import signature_from_json
        signature_from_json({"props": ["p", "p"]})
