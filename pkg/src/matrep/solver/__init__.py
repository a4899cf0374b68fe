from .brute import brute_force_solve, brute_force_up_to
from .elimination import eliminate_variable, elimination_solve
from .types import CertificateReport, RepMatrix, SolutionPoint
from .certificate import default_subsystems, nullstellensatz_certificate, verify_certificate
from .represent import compute_c, compute_f, find_representation, verify_representation
from .scan import CONSISTENT, INCONCLUSIVE, INCONSISTENT, find_point, solve_in_field, witness_prime_scan

__all__ = [
    "CONSISTENT", "INCONCLUSIVE", "INCONSISTENT", "CertificateReport", "RepMatrix", "SolutionPoint",
    "brute_force_solve", "brute_force_up_to", "compute_c", "compute_f", "default_subsystems",
    "eliminate_variable", "elimination_solve", "find_point", "find_representation",
    "nullstellensatz_certificate", "solve_in_field", "verify_certificate", "verify_representation",
    "witness_prime_scan",
]
