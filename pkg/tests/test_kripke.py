import pytest

from stratinst import FolModel, KripkeModel, ModelHom, Signature, validate_hom, validate_model
from stratinst.kripke import (
    apply_iso, compose_homs, iso_hom, parse_valuation, state_image, valuation_str, valuations,
)
from stratinst.errors import HomomorphismError


def test_k1_is_valid(pq, k1):
    assert validate_model("MPL", pq, k1) == []


def test_reflexivity_violation_names_the_pair(pq, k1):
    v = validate_model("MPL", pq, k1, frame_class="reflexive")
    assert any("(0,0) missing" in msg for msg in v)


def test_frame_class_from_logic(pq, k1):
    assert validate_model("MPLt", pq, k1)
    refl = KripkeModel.build(["0", "1"], [("0", "0"), ("1", "1"), ("0", "1")], {"0": set(), "1": set()})
    assert validate_model("MPLt", pq, refl) == []
    assert any("symmetry" in m for m in validate_model("MPLs5", pq, refl))


def test_unknown_world_in_relation(pq):
    bad = KripkeModel.build(["0"], [("0", "1")], {"0": set()})
    assert validate_model("MPL", pq, bad)


def test_undeclared_proposition(pq):
    bad = KripkeModel.build(["0"], [], {"0": {"zz"}})
    assert validate_model("MPL", pq, bad)


def test_mfol_sharing_violation():
    sig = Signature(funcs={"c": 0}, preds={"q": 1})
    w0 = FolModel(["0", "1"], {"c": {(): "0"}}, {"q": []})
    w1 = FolModel(["0", "1"], {"c": {(): "1"}}, {"q": []})
    m = KripkeModel.build(["a", "b"], [], {"a": w0, "b": w1})
    assert any("shar" in msg for msg in validate_model("MFOL", sig, m))


def test_partial_function_table():
    sig = Signature(funcs={"f": 1}, preds={}, vars={"x"})
    m = FolModel(["0", "1"], {"f": {("0",): "1"}}, {})
    assert validate_model("OFOL", sig, m)


def test_identity_hom(pq, k1):
    assert validate_hom("MPL", pq, ModelHom({"0": "0", "1": "1"}), k1, k1) == []


def test_collapsing_hom_breaks_relation(pq, k1):
    target = KripkeModel.build(["z"], [], {"z": {"p"}})
    v = validate_hom("MPL", pq, ModelHom({"0": "z", "1": "z"}), k1, target)
    assert any("lambda" in msg for msg in v)


def test_hom_must_preserve_propositions(pq, k1):
    target = KripkeModel.build(["0", "1"], [("0", "1")], {"0": set(), "1": set()})
    assert validate_hom("MPL", pq, ModelHom({"0": "0", "1": "1"}), k1, target)


def test_fol_hom():
    sig = Signature(funcs={"c": 0}, preds={"q": 1}, vars={"x"})
    a = FolModel(["0", "1"], {"c": {(): "0"}}, {"q": [("1",)]})
    b = FolModel(["u"], {"c": {(): "u"}}, {"q": [("u",)]})
    assert validate_hom("OFOL", sig, ModelHom(carrier_map={"0": "u", "1": "u"}), a, b) == []
    c = FolModel(["u"], {"c": {(): "u"}}, {"q": []})
    assert validate_hom("OFOL", sig, ModelHom(carrier_map={"0": "u", "1": "u"}), a, c)


def test_iso_identity_is_identity(pq, k1):
    assert apply_iso("MPL", pq, k1, {"0": "0", "1": "1"}) == k1


def test_swap_k1(pq, k1):
    swapped = apply_iso("MPL", pq, k1, {"0": "1", "1": "0"})
    assert swapped.frame.relations["lambda"] == {("1", "0")}
    assert swapped.valuation["0"] == {"p"} and swapped.valuation["1"] == set()


def test_iso_round_trip(pq, k1):
    there = apply_iso("MPL", pq, k1, {"0": "a", "1": "b"})
    assert apply_iso("MPL", pq, there, {"a": "0", "b": "1"}) == k1


def test_iso_must_be_bijective(pq, k1):
    with pytest.raises(HomomorphismError):
        apply_iso("MPL", pq, k1, {"0": "a", "1": "a"})


def test_iso_hom_validates(pq, k1):
    h = iso_hom("MPL", k1, {"0": "a", "1": "b"})
    assert validate_hom("MPL", pq, h, k1, apply_iso("MPL", pq, k1, {"0": "a", "1": "b"})) == []


def test_compose_homs():
    f = ModelHom({"0": "a", "1": "b"})
    g = ModelHom({"a": "x", "b": "x"})
    assert compose_homs("MPL", f, g).world_map == {"0": "x", "1": "x"}


def test_valuations_and_strings():
    vs = valuations(["0", "1"], ["y", "x"])
    assert len(vs) == 4 and vs[0] == (("x", "0"), ("y", "0"))
    assert valuation_str((("x", "0"), ("y", "1"))) == "x=0,y=1"
    assert parse_valuation("y=1, x=0") == (("x", "0"), ("y", "1"))


def test_state_image_for_ofol():
    h = ModelHom(carrier_map={"0": "u", "1": "v"})
    assert state_image("OFOL", h, (("x", "1"),)) == (("x", "v"),)
    assert state_image("MPL", ModelHom({"0": "a"}), "0") == "a"
