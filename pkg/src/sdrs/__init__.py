"""Rate splitting and successive decoding for multi-receiver channels."""
from .prob import (Channel, JointDist, MixFunction, ProbVec, ValidationError, broken_typewriter,
                   bsc, compose, conditional_mutual_information, entropy, identity_channel,
                   mix_joint, msb_channel, mutual_information)
from .ratesplit import (DecodeVerdict, RatePair, SplitAnalysis, SplitSpec, example1_report,
                        make_split, min_split, split_quantities, successive_decodable,
                        sweep_epsilon)
from .interference import (GaussianIC, PowerSplit, RateQuadruple, RateRegion, gaussian_capacity,
                           hk_strong_region, region_compare, sdrs_constraints, sdrs_region,
                           strong_interference_check)

__version__ = "0.1.0"
