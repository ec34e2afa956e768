#!/usr/bin/env python3
"""Log the convergence behaviour of the walk iteration on K4 embeddings.

For each embedding class the script runs the simulator with a single unit
inflow, records the step-to-step residual ratio, and compares it with the
spectral radius of the internal one-step map.  The decay is geometric, but
its ratio is governed by that spectral radius, which sits well above the
island amplitude |a| (about 0.95 for the Hadamard-type coin on K4).
"""

import numpy as np

from surfwalk.covering_blowup import attach_hedgehog, blow_up, double_cover
from surfwalk.enumeration import enumerate_embeddings
from surfwalk.graph_core import complete_graph
from surfwalk.walk_dynamics import Coin, WaveState, step


def internal_matrix(bg, coin):
    n = bg.size
    dim = 3 * n
    zero = np.zeros(n, dtype=complex)
    mat = np.zeros((dim, dim), dtype=complex)
    for j in range(dim):
        v = np.zeros(dim, dtype=complex)
        v[j] = 1.0
        state = WaveState(
            island_in=v[:n].copy(),
            island_plus=v[n : 2 * n].copy(),
            bridge=v[2 * n :].copy(),
            inflow=zero,
            outflow=zero,
        )
        out = step(state, bg, coin)
        mat[:, j] = np.concatenate([out.island_in, out.island_plus, out.bridge])
    return mat


def main():
    coin = Coin.hadamard_type()
    print(f"coin |a| = {abs(coin.a):.6f}")
    for cls in enumerate_embeddings(complete_graph(4)):
        bg = attach_hedgehog(blow_up(double_cover(cls.representative)))
        radius = np.abs(np.linalg.eigvals(internal_matrix(bg, coin))).max()

        inflow = np.zeros(bg.size, dtype=complex)
        inflow[0] = 1.0
        state = WaveState.zero(bg, inflow)
        prev = None
        ratios = []
        for t in range(1, 360):
            new = step(state, bg, coin)
            res = max(
                np.abs(new.island_in - state.island_in).max(),
                np.abs(new.island_plus - state.island_plus).max(),
                np.abs(new.bridge - state.bridge).max(),
            )
            if prev and res > 0 and t > 100:
                ratios.append(res / prev)
            prev = res
            state = new
        # geometric mean over the asymptotic window, clear of underflow
        tail = float(np.exp(np.mean(np.log(ratios))))
        print(
            f"{cls.label:16}  spectral radius {radius:.6f}   "
            f"observed residual ratio {tail:.6f}"
        )


if __name__ == "__main__":
    main()
