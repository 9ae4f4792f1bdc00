"""Workbench for stratified institutions over small finite models.

Typical use::

    from stratinst import LogicId, Signature, parse_sentence, satisfies
"""
from .core import (
    Capabilities, Entailment, PointedModel, SatCondReport, capabilities, capability_table,
    check_satisfaction_condition, entails, reduct_model, satisfies, satisfies_global,
    stratification, translate_sentence, truth_set,
)
from .errors import (
    BoundsError, CapabilityError, FilterError, HomomorphismError, LogicMismatchError,
    ModelValidationError, ProductError, SchemaError, SentenceError, SignatureError,
    StateError, StratError,
)
from .kripke import FolModel, Frame, KripkeModel, ModelHom, validate_hom, validate_model
from .logics import ExpansionSpec, enumerate_expansions, evaluate, power_model
from .products import (
    FilterRep, direct_product, enumerate_filters, enumerate_ultrafilters, filtered_product,
    make_filter, parse_filter, principal, reduce_filter,
)
from .sentences import (
    And, At, Atom, Box, Dia, ExistsNom, ExistsVar, ForallNom, ForallVar, Implies, Nom,
    Not, Or, PolyBox, PolyDia, Prop, Sentence, Term,
)
from .signature import DIAMOND, LogicId, Signature, SignatureMorphism
from .syntax import (
    load_model, load_signature, model_from_json, model_to_json, parse_sentence,
    render_sentence, save_model, save_signature,
)

__version__ = "0.1.0"
