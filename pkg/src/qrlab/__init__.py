"""Legendre symbols, the character sums S_n(t), and numerical checks of quadratic reciprocity."""

__version__ = "0.1.0"

from .charsum import (  # noqa: E402
    EXACT,
    CharSumVector,
    Exact,
    Modular,
    OrbitStats,
    charsum_brute,
    charsum_brute_vector,
    charsum_closed,
    charsum_s2,
    charsum_vector,
    convolve,
    orbit_decompose,
    s1_vector,
    sq1_mod_q_orbit,
)
from .legendre import (  # noqa: E402
    LegendreValue,
    legendre,
    legendre_brute,
    legendre_euler,
    legendre_reciprocity,
)
from .modular import OddPrime, Residue, make_odd_prime, mod_inv, mod_pow  # noqa: E402
from .proofcheck import (  # noqa: E402
    ProofReport,
    ProofStep,
    StepId,
    run_suite,
    verify_congruences,
    verify_recurrence_chain,
    verify_reciprocity,
    verify_s2_identities,
    verify_scaling_and_zero,
)
