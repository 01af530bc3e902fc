"""Concept-combination membership analysis toolkit.

Classicality tests and C/D/K typing of membership triples, two-sector
interference-model fitting, concept-state reconstruction, a from-scratch
LSA engine with a threshold membership model, and a comparison pipeline
producing correlation reports and type-transition graphs.
"""

from .analysis import (ComparisonResult, PairCorrelations, TransitionGraph,
                       compare_pipeline, pearson, transition_graph)
from .classicality import (ClassicalityReport, ExemplarType, KolmogorovWitness,
                           classify, delta_d, k_d, kolmogorov_oracle)
from .dataset import (ConceptPair, Corpus, Document, MembershipParseError,
                      MembershipTriple, MembershipValidationError, parse_corpus,
                      parse_membership_csv, parse_pairs_csv, sample_path, tokenize,
                      write_membership_csv)
from .fock_model import (DegenerateInterferenceError, FeasibleRegion, FitStrategy,
                         FixedM2, FixedTheta, FockFit, MinSector2,
                         NotRepresentableError, audit_published_example,
                         feasible_region, fit, interference_term, predict_disjunction)
from .lsa import (SemanticSpace, SvdMethod, TermDocumentMatrix, WeightScheme,
                  build_matrix, build_space, concept_vector, load_space, save_space,
                  similarity, svd_factors, truncated_svd, weight)
from .pipeline import ReportResult, SimilarityRecord, run_report
from .state_reconstruction import (ConceptState, ReconstructionResult,
                                   collapse_probabilities, reconstruct_pair)
from .threshold_model import ThresholdParams, membership

__version__ = "0.1.0"
