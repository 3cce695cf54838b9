"""Poset pinball games and exact equivariant restriction bases."""

from .billey import (
    RestrictionClass,
    RootPolynomial,
    TPolynomial,
    billey_restrict,
    gkm_divisibility_check,
    parse_t_polynomial,
    schubert_class,
    specialize_to_t,
)
from .coxeter import GroupElement, RootSystem, WeylGroup, make_weyl
from .errors import DomainError
from .flowup import (
    CandidateBasis,
    RestrictionVector,
    construct_flowup_basis,
    find_triangular_order,
    is_flowup,
    is_poset_upper_triangular,
    is_total_order_upper_triangular,
    linearly_independent,
    verify_matching_basis,
    verify_pinball_basis,
)
from .hessenberg import (
    HessenbergSpace,
    from_hessenberg_function,
    hessenberg_betti,
    hessenberg_fixed_points,
    peterson_degree,
    peterson_fixed_points,
    peterson_rolldown,
    peterson_space,
    springer_fixed_points,
    subregular_rolldown,
)
from .pinball import (
    GameConfig,
    Outcome,
    PinballState,
    apply_move,
    enumerate_outcomes,
    finalize_current,
    legal_moves,
    new_game,
    outcome_to_transcript,
    play,
    replay_transcript,
)
from .poset import ElementSubset, GradedPoset, build_poset
from .reproduce import reproduce, reproduce_or_raise
from .springer_rep import character, character_table, gp_character, kk_act_on_class, kk_matrix

__all__ = [name for name in dir() if not name.startswith("_")]
