"""Means of logarithmic Cauchy quotient type.

A numerical library for the family of k-variable means obtained as
quotients (f(x_1)+...+f(x_k)) / f(x_1...x_k) of the generator
f(x) = c log(x) / x**(1/(k-1)): closed-form evaluation and extensions,
the generator/quotient machinery with proportionality and equality tests,
fundamental-domain solutions of the scaling equation f(x) = (x/k) f(x**k),
characterisation probes (difference-equation residual, concavity,
boundedness, contraction), and Gauss-type iteration of mean pairs.
"""

from .domains import Domain, MeanPoint, MeanReport, mean_report
from .errors import (ArityError, DomainError, EvaluationError,
                     InterpolationError, LogCauchyError, ParameterError,
                     RangeError, TableFormatError, TransformError)
from .means import (extended_mean, geometric_mean, involutory_conjugate,
                    complementary_mean, log_cauchy_mean,
                    probe_mean_properties, MeanPropertyReport)
from .generators import (EqualityReport, Generator, QuotientSpec, Sign,
                         affine_generator, canonical_generator, offset,
                         parse_generator_spec, powerlog_generator,
                         proportionality_constant, quotient_equal,
                         quotient_eval, scaled)
from .tiling import (TabulatedFunction, TiledExtension, continuity_defect,
                     extend, extend_at_log, load_table, log_extend_at_log,
                     reflexivity_residual, table_generator, tile_index,
                     tile_index_log)
from .analysis import (BoundednessProbe, ConcavityReport, PhiProbeResult,
                       PsiContractionReport, TransformedGenerator,
                       concavity_probe, contraction_factor, h_transform,
                       jensen_residual, krull_residual, phi_probe,
                       psi_contraction_check)
from .dynamics import (InvariantMeanEstimate, IterationStep, IterationTrace,
                       MEAN_CATALOG, catalog_mean, estimate_invariant_mean,
                       invariance_residual, iterate_pair)

__version__ = "0.1.0"
