from .arena import ADAM, EVE, Arena, Edge, GameError, arena_from_json, arena_to_json, attractor, attractor_edges
from .dsum import solve_discounted_value
from .energy import INF as ENERGY_INF
from .energy import solve_energy
from .finite_duration import solve_finite_duration_value
from .meanpayoff import mean_payoff_at_least, solve_mean_payoff_value
from .parity import solve_buchi, solve_parity
from .product import arena_value, lasso_product_arena, product_game_automaton
from .safety import solve_reachability, solve_safety
from .streett import reduce_streett_to_parity, solve_streett

__all__ = [
    "ADAM", "EVE", "Arena", "Edge", "GameError", "ENERGY_INF",
    "arena_from_json", "arena_to_json", "attractor", "attractor_edges",
    "arena_value", "lasso_product_arena", "product_game_automaton",
    "mean_payoff_at_least", "solve_mean_payoff_value",
    "reduce_streett_to_parity", "solve_streett",
    "solve_buchi", "solve_discounted_value", "solve_energy",
    "solve_finite_duration_value", "solve_parity",
    "solve_reachability", "solve_safety",
]
