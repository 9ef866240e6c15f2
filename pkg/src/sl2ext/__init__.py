"""Exact verification workbench for extensions of induced SL2 modules
over finite field towers.

Everything is computed with exact arithmetic: coefficient scalars are
rationals, cyclotomic integers over Q, or prime-field residues; field
tower elements live in one ambient finite field; module vectors are
finitely supported combinations of Bruhat-cell labels.  The `verify`
registry maps each finitely checkable statement to a reproducible
PASS/FAIL/SKIPPED report, and the CLI drives full runs.
"""

from .charmod import TorusCharacter, nu_character
from .coeff import CyclotomicField, PrimeField, RationalField, field_from_spec
from .grp import bruhat, check_big_cell_rewrite, identity, torus, unip, weyl
from .indmod import InducedModule
from .tower import BudgetError, Tower
from .towerext import CenterMismatchError, DirectSystem, nonsplit_certificate
from .verify import CheckSpec, Context, REGISTRY_IDS, Report, RunConfig, run_all, run_lemma

__all__ = [
    "BudgetError",
    "CenterMismatchError",
    "CheckSpec",
    "Context",
    "CyclotomicField",
    "DirectSystem",
    "InducedModule",
    "PrimeField",
    "RationalField",
    "REGISTRY_IDS",
    "Report",
    "RunConfig",
    "Tower",
    "TorusCharacter",
    "bruhat",
    "check_big_cell_rewrite",
    "field_from_spec",
    "identity",
    "nonsplit_certificate",
    "nu_character",
    "run_all",
    "run_lemma",
    "torus",
    "unip",
    "weyl",
]

__version__ = "0.1.0"
