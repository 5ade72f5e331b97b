"""Regenerate the region golden files from the boundedness statements.

Written independently of treemax.theory: every condition is transcribed
directly from the statements and evaluated in integer arithmetic on grid
indices (1/p = i/G, 1/q = j/G, gamma = a/b).

    python tests/golden/make_golden.py
"""

from fractions import Fraction
from pathlib import Path

GRID = 200
GAMMAS = ["1/4", "1/2", "3/5", "3/4", "1", "3/2"]
HERE = Path(__file__).parent


def status(a, b, i, j, G):
    # gamma = a/b, 1/p = i/G, 1/q = j/G; scale every comparison by b*G
    x, y, g, one = i * b, j * b, a * G, b * G
    p_le_q = y <= x
    if a > b:
        return "B" if p_le_q else "U"
    if a == b:
        return "B" if p_le_q and j != G else "U"
    crit = one - g  # 1 - gamma
    # bounded: p <= q, q > 1/gamma, p < 1/(1-gamma); or p = 1/(1-gamma), q = inf
    if (p_le_q and y < g and x > crit) or (x == crit and j == 0):
        return "B"
    # open: p = 1/(1-gamma), 0 < 1/q < min(gamma, 1-gamma)
    if x == crit and 0 < y < min(g, crit):
        return "?"
    return "U"


def rows(gamma, G=GRID):
    f = Fraction(gamma)
    return ["".join(status(f.numerator, f.denominator, i, j, G) for i in range(G + 1)) for j in range(G + 1)]


def path_for(gamma):
    return HERE / f"region_gamma_{gamma.replace('/', '_')}.csv"


def main():
    for gamma in GAMMAS:
        lines = ["inv_q_index,statuses"] + [f"{j},{r}" for j, r in enumerate(rows(gamma))]
        path_for(gamma).write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
