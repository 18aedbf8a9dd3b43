from toromaps.maps.homology import basis_cycles
from toromaps.orientations.biorientation import (
    Biorientation,
    Orientation,
    RightmostWalk,
    check_S_quad,
    gamma,
    gamma_bar,
    is_balanced_biorientation,
    is_in_Od,
    is_S_quad,
    rightmost_walk,
    walk_counts,
)
from toromaps.orientations.flow import alpha_orientation
from toromaps.orientations.mobiles import Bimobile, Kind, phi_plus
from toromaps.orientations.schnyder import (
    balance_basis,
    is_minimal,
    is_schnyder,
    minimalize,
    rebalance,
    schnyder_demands,
    sigma_inverse,
    sigma_transfer,
)

__all__ = [
    "Bimobile",
    "Biorientation",
    "Kind",
    "Orientation",
    "RightmostWalk",
    "alpha_orientation",
    "balance_basis",
    "basis_cycles",
    "check_S_quad",
    "gamma",
    "gamma_bar",
    "is_S_quad",
    "is_balanced_biorientation",
    "is_in_Od",
    "is_minimal",
    "is_schnyder",
    "minimalize",
    "phi_plus",
    "rebalance",
    "rightmost_walk",
    "schnyder_demands",
    "sigma_inverse",
    "sigma_transfer",
    "walk_counts",
]
