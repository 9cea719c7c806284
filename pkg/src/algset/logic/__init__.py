"""Formula language and Kripke-Joyal evaluation."""

from algset.logic.classical import ClassicalModel, classical_truth_set
from algset.logic.generate import formula_corpus, random_formula
from algset.logic.parser import Document, Signature, parse, parse_document, show, tokenize
from algset.logic.schemas import (
    HEADROOM,
    SAMPLE_PARAMETERS,
    SCHEMAS,
    AxiomSchemaId,
    SchemaInstance,
    instantiate_schema,
    schema_instance,
)
from algset.logic.semantics import Environment, Evaluator, evaluate, holds, kripke_joyal_eval
from algset.logic.syntax import (
    And,
    BExists,
    BForall,
    Bi,
    Bottom,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Mem,
    Not,
    Or,
    Rel,
    Top,
    free_vars,
    is_bounded,
    relativize,
    substitute,
)

__all__ = [
    "And", "AxiomSchemaId", "BExists", "BForall", "Bi", "Bottom", "ClassicalModel", "Document",
    "Environment", "Eq", "Evaluator", "Exists", "Forall", "Formula", "HEADROOM", "Iff", "Implies",
    "Mem", "Not", "Or", "Rel", "SAMPLE_PARAMETERS", "SCHEMAS", "SchemaInstance", "Signature", "Top",
    "classical_truth_set", "evaluate", "formula_corpus", "free_vars", "holds", "instantiate_schema",
    "is_bounded", "kripke_joyal_eval", "parse", "parse_document", "random_formula", "relativize",
    "schema_instance", "show", "substitute", "tokenize",
]
