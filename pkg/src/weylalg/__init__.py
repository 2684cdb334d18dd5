"""Executable level-k unimodular function hierarchies on semigroups."""

from weylalg.bicyclic import (BicyclicElement, BicyclicF1, BicyclicF2, bc_mul, f1_eval, f2_eval,
                              f2_cocycle_partners, idempotent_collapse, lemma5_check)
from weylalg.certify import (DistalityCertificate, NotInF1Error, SampledFunction, certify,
                             distality_probe, recover_f1, verify_certificate)
from weylalg.ergodic import (birkhoff_average, equidistribution_report, rational_average_closed_form,
                             star_discrepancy, weyl_kernel)
from weylalg.finsgp import (F1Solution, FiniteSemigroup, NonAssociativeError, character_span_dimension,
                            characters, idempotent_fixed_check, solve_f1, solve_fk)
from weylalg.phase import PhasePolynomial, cocycle_quotient, evaluate, multiply, shift
from weylalg.rings import Character, RingPolynomial, RingSpec, certify_ring, cocycle_reduce
from weylalg.torus import EXACT, FLOAT, ModeError, TorusPoint, torus_mul, torus_pow

__all__ = [
    "BicyclicElement", "BicyclicF1", "BicyclicF2", "bc_mul", "f1_eval", "f2_eval",
    "f2_cocycle_partners", "idempotent_collapse", "lemma5_check",
    "DistalityCertificate", "NotInF1Error", "SampledFunction", "certify", "distality_probe",
    "recover_f1", "verify_certificate",
    "birkhoff_average", "equidistribution_report", "rational_average_closed_form",
    "star_discrepancy", "weyl_kernel",
    "F1Solution", "FiniteSemigroup", "NonAssociativeError", "character_span_dimension",
    "characters", "idempotent_fixed_check", "solve_f1", "solve_fk",
    "PhasePolynomial", "cocycle_quotient", "evaluate", "multiply", "shift",
    "Character", "RingPolynomial", "RingSpec", "certify_ring", "cocycle_reduce",
    "EXACT", "FLOAT", "ModeError", "TorusPoint", "torus_mul", "torus_pow",
]
