"""Exact representation rings, twisted induction and completions at torsion points."""

from __future__ import annotations

__version__ = "0.1.0"

from .cyclotomic import Cyclotomic, zeta
from .laurent import LaurentPoly, parse_laurent, weyl_act
from .rootdatum import (
    PRESETS,
    RootDatum,
    SubDatum,
    TorsionPoint,
    WeylElement,
    datum_from_preset,
    full_subdatum,
    levi_subdatum,
    orbit_and_stabilizer,
    torus_subdatum,
    weyl_elements,
)
from .reptheory import VirtualCharacter, hom_pairing, invariant_dim, decompose_irreducibles, weyl_character
from .induction import induce, pushforward_fixed_points, restrict
from .completion import (
    central_invertibility_check,
    chern_character,
    crt_decomposition_check,
    graded_iso_report,
    indres_completion_check,
    jet,
    tau_point,
    todd_class,
    twist,
)
from .report import GradedReport, VerificationReport
from .suites import SUITES, SuiteConfig, run_suite
