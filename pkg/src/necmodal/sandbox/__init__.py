"""Finite-stage simulation of the staged arithmetical constructions."""

from .claims import ClaimReport, ClaimResult, assert_trace_claims
from .interpretation import Interpretation, interpretation_for
from .library import CountermodelLibrary, LibraryEntry, LibraryExhausted
from .predicates import OutputIndex, PrValue, Truth, eval_pr
from .prefix import PrefixTheory
from .scenario import (Scenario, ScenarioError, load_scenario, parse_sexpr, scenario_from_json,
                       to_sexpr, trace_to_json)
from .sformula import (SBOT, Alpha, AlphaAll, And, Atom, Beta, BetaAll, Imp, Lambda, Marker,
                       MarkerKind, Neg, Or, PrKind, PrLit, SFormula, sdecode, star, xi, xi_index)
from .staged import (JSet, JTrigger, PhiTrigger, PhiWitness, StagedTrace, TheoryStream, check_phi,
                     compute_j, run, run_staged, run_staged_simple, tautology_stream, x_set)

__all__ = [name for name in dir() if not name.startswith("_")]
