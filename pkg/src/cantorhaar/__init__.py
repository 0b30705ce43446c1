"""Haar measure on mixed-radix Cantor groups, checked exactly against Lebesgue measure."""
from .clopen import (
    ClopenInterval,
    ClopenSet,
    coarsen,
    from_paper_endpoints,
    partition_atoms,
    refine,
    same_set,
    set_complement,
    set_difference,
    set_intersect,
    set_union,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Tower,
    abelianize_tower,
    haar_finite,
    kernel_size,
    uniform_pushforward_check,
    validate_group,
    validate_hom,
    validate_tower,
)
from .iso import ConversionResult, Status, digits_of_rational, iso_point, iso_stream
from .measure import (
    PushforwardReport,
    check_openmap,
    check_pushforward_interval,
    exhaustive_pushforward,
    haar_measure,
    lebesgue_of_image,
    level_consistency,
    phi_image,
)
from .radix import (
    CoCompactPoint,
    DigitProvider,
    LevelPoint,
    Order,
    RadixSystem,
    Undecided,
    embed,
    lex_compare,
    phi,
    phi_cocompact,
    phi_enclosure,
    predecessor,
    project,
    psi_gap_embed,
    radix_at,
    rank,
    successor,
    unrank,
)
from .sampling import SamplerConfig, empirical_vs_exact, ks_statistic, run_uniformity_test, sample_digits

__version__ = "0.1.0"
