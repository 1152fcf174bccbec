"""Shared enumeration helpers for the test suite."""

from itertools import product

from fockrep.fock import FockState
from fockrep.partitions import ChargedPartition, partitions_of


def small_basis(s, max_energy, window):
    """All s-colour states with total energy <= max_energy, |c_l| <= window."""
    out = []
    charges = list(product(range(-window, window + 1), repeat=s))
    for total in range(max_energy + 1):
        for split in product(range(total + 1), repeat=s):
            if sum(split) != total:
                continue
            shape_choices = [partitions_of(n) for n in split]
            for shapes in product(*shape_choices):
                for cvec in charges:
                    out.append(
                        FockState(
                            tuple(
                                ChargedPartition(c, lam)
                                for c, lam in zip(cvec, shapes)
                            )
                        )
                    )
    return out
