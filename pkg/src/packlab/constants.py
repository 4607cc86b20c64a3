"""Recorded values for hypercubes Q_1..Q_9, used for cross-checks only.

``None`` marks an unknown exact value.  Intervals are ``(lower, upper)``.
"""

TABLE_CITATION = "recorded invariant table of Q_n, n < 10"

GAMMA = {1: 1, 2: 2, 3: 2, 4: 4, 5: 7, 6: 12, 7: 16, 8: 32, 9: 62}
GAMMA_T = {1: 2, 2: 2, 3: 4, 4: 4, 5: 8, 6: 14, 7: 24, 8: 32, 9: 64}
RHO_2 = {1: 1, 2: 1, 3: 2, 4: 2, 5: 4, 6: 8, 7: 16, 8: (17, 30), 9: None}
RHO_O = {1: 2, 2: 2, 3: 2, 4: 4, 5: 4, 6: 8, 7: 16, 8: 32, 9: (34, 60)}

# rho_2(Q_8) <= 30: a 2-packing with more than 30 vertices puts 16 in one Q_7
# half, which is then a perfect code dominating the other half within distance 2.
RHO_2_Q8_UPPER = 30
RHO_2_Q8_UPPER_CITATION = "counting argument on the two Q_7 halves of Q_8"

# rho_o(Q_9) = 2 rho_2(Q_8) for the bipartite Q_8, hence 34 <= rho_o(Q_9) <= 60.
RHO_O_Q9_UPPER = 60
RHO_O_Q9_UPPER_CITATION = "rho_o(Q_9) = 2 rho_2(Q_8) <= 2 * 30"

CITED_DOMINATION = "values cited from earlier work on domination in hypercubes"

TABLE = {
    "gamma": GAMMA,
    "gamma-t": GAMMA_T,
    "rho2": RHO_2,
    "rho-o": RHO_O,
}


def interval(invariant: str, n: int) -> tuple[int, int] | None:
    """Recorded ``(lower, upper)`` for a cell, or None if nothing is recorded."""
    value = TABLE[invariant][n]
    if value is None:
        return None
    if isinstance(value, tuple):
        return value
    return value, value
