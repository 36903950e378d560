"""k-regular partition numbers, their Jensen polynomials, and hyperbolicity checks."""

__version__ = "0.1.0"

from .partitions import (Method, RegularPartitionTable, compute_table_dp, compute_table_pentagonal,
                         enumerate_pk, pentagonal_series, unrestricted_p, unrestricted_table)
from .polynomials import (ExactPolynomial, FloatPolynomial, hermite_poly, jensen_poly,
                          renormalized_jensen, sup_distance)
from .hyperbolicity import (HankelReport, TuranVerdict, hankel_minors, is_hyperbolic_hermite,
                            is_hyperbolic_sturm, newton_sums, sturm_real_root_count, turan_order2,
                            turan_order3)
from .asymptotics import (AsymptoticParams, A_k, bessel_I1, delta_k, hagis_estimate,
                          log_quotient_residual)
from .survey import ConvergenceReport, ThresholdReport, convergence_scan, threshold_scan, turan_scan
