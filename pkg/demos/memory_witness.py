"""Information flowing back from the mode: a trace-distance witness.

With the hopping switched off the system-mode coupling is pure dephasing:
the reduced states |+> and |-> lose their distinguishability as the mode
picks up which-path information, and regain it every drive period when that
information returns.  Any increase of the trace distance under a memoryless
(Markovian) reduced dynamics is impossible, so the revival is a direct
witness of memory.
"""

import numpy as np

from vibrex import (
    PhononSpec,
    coherent_state,
    nonmarkov_witness,
    trace_distance_series,
)

G = 1.0      # rad/ps
OMEGA = 0.5  # rad/ps
ALPHA = 2.0
N_MAX = 60


def superposition_density(sign):
    v = np.array([1.0, sign * 1.0], dtype=complex) / np.sqrt(2.0)
    return np.outer(v, v.conj())


def main():
    rho_plus = superposition_density(+1)
    rho_minus = superposition_density(-1)
    times = np.arange(0.0, 15.0 + 1e-9, 0.5)

    spec = PhononSpec(omega=OMEGA, g=G, n_max=N_MAX)
    series = trace_distance_series(
        0.0, 0.0, spec, rho_plus, rho_minus,
        coherent_state(ALPHA, N_MAX), times,
    )

    period = 2.0 * np.pi / OMEGA
    print("Reduced trace distance between |+> and |-> initial states")
    print(f"g = {G}, omega = {OMEGA}, alpha = {ALPHA} (drive period "
          f"{period:.2f} ps)")
    print()
    print(f"{'t (ps)':>8} {'D(t)':>10}  ")
    for t, d in zip(times, series):
        bar = "#" * int(round(40 * d))
        print(f"{t:8.1f} {d:10.6f}  {bar}")

    witness = nonmarkov_witness(
        0.0, 0.0, spec, rho_plus, rho_minus,
        coherent_state(ALPHA, N_MAX), times,
    )
    print()
    print(f"witness (largest single-step increase of D): {witness:.6f}")

    spec_off = PhononSpec(omega=OMEGA, g=0.0, n_max=N_MAX)
    witness_off = nonmarkov_witness(
        0.0, 0.0, spec_off, rho_plus, rho_minus,
        coherent_state(ALPHA, N_MAX), times,
    )
    print(f"control with g = 0 (mode decoupled):        {witness_off:.2e}")
    print()
    print("The distance collapses as which-path information leaks into the")
    print("mode and revives fully at multiples of the drive period.")


if __name__ == "__main__":
    main()
