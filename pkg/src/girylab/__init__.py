"""girylab: exact computation with probability monads on finite
measurable spaces.

Everything is rational arithmetic end to end: finite sigma-algebras as
bitsets with their atom partitions, atomwise probability measures, the
monad structure (Dirac unit, mixture flattening, Kleisli kernels), the
bijection between measures and affine weakly averaging functionals and
the monad transported across it, codensity-style naturality checking
against affine maps of cubes and vanishing sequences, exact convex-hull
feasibility, and the finite/cofinite limit functional separating finite
from countable additivity.
"""

from .errors import (ActionSquareError, GirylabError, IngestionError,
                     InvariantError, NotMeasurableError, RejectionError,
                     SpaceMismatchError)
from .rational import format_rational, parse_rational
from .spaces import (FinSpace, IFunction, MeasMap, atom_indicator, atoms,
                     characteristic, generate_sigma, is_measurable)
from .measures import (IntervalMeasure, Measure, StepFunction,
                       change_of_variables_check, integrate, integrate_approx,
                       integrate_approx_bounds, integrate_step, measure_of,
                       pushforward)
from .monad import (Kernel, MetaMeasure, bind, dirac, flatten,
                    kleisli_compose, n_step, trajectory)
from .duality import (Functional, FunctionalMixture, LimitWitness,
                      evaluation_at, is_affine, max_functional,
                      mix_functionals, pushforward_functional,
                      respects_limits, square_functional, to_functional,
                      to_measure)
from .codensity import (AffineMap, CodensityElement, SequenceAffineMap,
                        VanishingSequence, check_naturality,
                        check_vanishing_component, functional_from_action,
                        lift, sample_affine)
from .hull import extend_to_convex, hull_membership
from .counterexample import (EventualFn, FinCofSet, cofinite_measure,
                             countable_additivity_violation, limit_functional,
                             sup_continuity_check)
from .harness import Report, SuiteConfig, run_suite
from .verdicts import Verdict

__version__ = "0.1.0"
