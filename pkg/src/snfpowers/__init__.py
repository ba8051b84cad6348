"""Smith normal forms of integer matrix powers and the eventual periodicity of
their quotient sequence."""

from .exactmat import IntMatrix, compound, content_gcd, mat_mul, mat_pow, mat_valuation
from .ntkit import INFINITY
from .seqlab import FiniteSeq, PeriodReport, Status, detect_period
from .smith import SmithForm, determinantal_divisors, smith_form, snf_from_divisors

__version__ = "0.1.0"
