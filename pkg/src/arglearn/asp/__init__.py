"""A small normal-logic-program engine: parsing, grounding and answer sets."""
from .grounding import GroundRules, ground, instantiate, least_model, reduct
from .solver import answer_sets, first_answer_set, iter_answer_sets, minimal_answer_sets, solve
from .syntax import BOTTOM, Atom, Literal, Program, Rule, heuristic_text, parse_atoms, parse_program

__all__ = [
    "Atom", "BOTTOM", "GroundRules", "Literal", "Program", "Rule",
    "answer_sets", "first_answer_set", "ground", "heuristic_text", "instantiate", "iter_answer_sets",
    "least_model", "minimal_answer_sets", "parse_atoms", "parse_program", "reduct", "solve",
]
