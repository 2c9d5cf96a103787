#!/usr/bin/env python3
"""
Example usage of nondisturb as a library.

Run all examples with ``python example.py`` or one of them with
``python example.py 3``.
"""
import sys

import numpy as np

from catalog import build_noncommuting_pair, build_qutrit_triple, build_two_time_scenario, nilpotent_map
from compat import classify
from freeops import monotonicity_suite
from measurement import pvm_from_observable
from mrmeasure import mr_pair, mr_triple
from qmat import PAULI_X, PAULI_Z, commutator_norm
from sequence import aot_check, nsit_check, prob_table
from utils.config import SeesawConfig


def example_two_time():
    """Example: NSIT defect of sigma_z followed by sigma_x."""
    print("=" * 70)
    print("Example 1: Two-time scenario")
    print("=" * 70)

    for initial in ("x", "z"):
        table = prob_table(build_two_time_scenario(initial))
        worst = max(c.defect for c in nsit_check(table))
        aot_ok = all(c.satisfied for c in aot_check(table))
        print(f"initial |+{initial}>: max NSIT defect {worst:.3f}, arrow of time holds: {aot_ok}")

    table = prob_table(build_two_time_scenario("x", measure_prepare=True))
    print(f"measure-and-prepare: max NSIT defect {max(c.defect for c in nsit_check(table)):.3f}\n")


def example_qubit_pair():
    """Example: Compatibility hierarchy for sigma_z and sigma_x."""
    print("=" * 70)
    print("Example 2: Qubit compatibility")
    print("=" * 70)

    z, x = pvm_from_observable(PAULI_Z), pvm_from_observable(PAULI_X)
    report = classify(z, x)
    print(f"commuting: {report.commuting}")
    print(f"D_Z(X) = {report.forward.value:.4f}, D_X(Z) = {report.backward.value:.4f}")
    print(f"jointly measurable: {report.jointly_measurable}")
    print(f"MR(Z, X) = {mr_pair(z, x).total:.4f}\n")


def example_noncommuting_nondisturbing():
    """Example: A and A' disturb neither way although they do not commute."""
    print("=" * 70)
    print("Example 3: Nondisturbing pair that does not commute (d = 5)")
    print("=" * 70)

    a, merged = build_noncommuting_pair(5)
    report = classify(a, merged, with_first_kind=False)
    print(f"max commutator norm: {report.max_commutator_norm:.4f}")
    print(f"D_A(A') = {report.forward.value:.2e}, D_A'(A) = {report.backward.value:.2e}\n")


def example_qutrit_triple():
    """Example: Pairwise nondisturbing qutrit triple."""
    print("=" * 70)
    print("Example 4: Qutrit triple")
    print("=" * 70)

    triple = build_qutrit_triple()
    rng = np.random.default_rng(7)
    x = rng.normal(size=(3, 3))
    deviation = np.max(np.abs(triple.channel.adjoint(x) - nilpotent_map(x)))
    print(f"total channel matches the nilpotent map: deviation {deviation:.1e}")
    print(f"commutator norm of A_1 and C_1: {commutator_norm(triple.a.elements[0].data, triple.c.elements[0].data):.4f}")

    report = mr_triple(triple.a, triple.b, triple.c, SeesawConfig(restarts=2, max_iters=50))
    for order in report.orders:
        print(f"  {'->'.join(order.order)}: {order.value:.4f}")
    print(f"MR(A, B, C) <= {report.total:.4f}\n")


def example_free_operations():
    """Example: Post-processing never increases the measure."""
    print("=" * 70)
    print("Example 5: Free operations")
    print("=" * 70)

    stats = monotonicity_suite("post_processing", trials=5, seed=1)
    print(f"post-processing: {len(stats.records) - len(stats.failures)}/{stats.trials} trials ok, "
          f"min margin {stats.min_margin:.2e}\n")


EXAMPLES = [
    ("Two-time scenario", example_two_time),
    ("Qubit compatibility", example_qubit_pair),
    ("Nondisturbing noncommuting pair", example_noncommuting_nondisturbing),
    ("Qutrit triple", example_qutrit_triple),
    ("Free operations", example_free_operations),
]


def main():
    """Run the selected examples."""
    if len(sys.argv) > 1:
        choice = sys.argv[1]
        if not choice.isdigit() or not 1 <= int(choice) <= len(EXAMPLES):
            print(f"Choose an example between 1 and {len(EXAMPLES)}:")
            for i, (name, _) in enumerate(EXAMPLES, 1):
                print(f"  {i}. {name}")
            sys.exit(2)
        EXAMPLES[int(choice) - 1][1]()
        return

    for name, func in EXAMPLES:
        try:
            func()
        except Exception as e:
            print(f"Error in example '{name}': {e}")


if __name__ == "__main__":
    main()
