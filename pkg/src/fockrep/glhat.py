"""Algebraic action of affine gl_r on coloured fermionic Fock space.

The setup fixes a partition (r_1, ..., r_s) of r with r_1 <= ... <= r_s.
Chevalley indices k = 0, ..., r-1 decompose uniquely as
k = r_1 + ... + r_(l-1) + k' with 0 <= k' <= r_l - 1, and the generators
act by locally finite sums of wedge/contract pairs:

    E_k = sum_i psi_l(k' + i r_l) psi*_l(k' + i r_l + 1)      (k' != 0)
    F_k = sum_i psi_l(k' + i r_l + 1) psi*_l(k' + i r_l)
    E_k = sum_i psi_(l-1)((i+1) r_(l-1)) psi*_l(i r_l + 1)    (k' = 0, l != 1)
    F_k = sum_i psi_l(i r_l + 1) psi*_(l-1)((i+1) r_(l-1))
    E_0 = sum_i psi_s(i r_s) psi*_1(i r_1 + 1)
    F_0 = sum_i psi_1(i r_1 + 1) psi*_s(i r_s)

with H_k = [E_k, F_k] and loops I (x) t^n acting as sum_l alpha_l(n r_l).
Each sum is truncated to the finite window of indices that can act
nontrivially on a given basis state.
"""

from __future__ import annotations

from math import gcd
from typing import NamedTuple

from .fock import (
    FockState,
    FockVector,
    LinearOperator,
    SumOp,
    alpha,
    contract,
    wedge,
)


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


class RSetup:
    """A partition (r_1 <= ... <= r_s) of r, with the derived periods.

    R' is the lcm of the parts; R equals R' when R'(1/r_i + 1/r_j) is
    even for all pairs i, j and 2R' otherwise.
    """

    __slots__ = ("parts", "r", "s", "R_prime", "R")

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"setup parts must be positive integers: {parts}")
        if any(parts[i] > parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"setup parts must be weakly increasing: {parts}")
        self.parts = parts
        self.r = sum(parts)
        self.s = len(parts)
        self.R_prime = _lcm(parts)
        even = all(
            (self.R_prime // ri + self.R_prime // rj) % 2 == 0
            for ri in parts
            for rj in parts
        )
        self.R = self.R_prime if even else 2 * self.R_prime

    def __eq__(self, other):
        return isinstance(other, RSetup) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"RSetup({list(self.parts)})"

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


class ChevalleyIndex(NamedTuple):
    """Decomposition k = r_1 + ... + r_(l-1) + k' with 0 <= k' < r_l."""

    k: int
    l: int
    k_prime: int


def decompose_index(setup: RSetup, k: int) -> ChevalleyIndex:
    if not 0 <= k < setup.r:
        raise ValueError(f"Chevalley index {k} out of range for r={setup.r}")
    prefix = 0
    for l, part in enumerate(setup.parts, start=1):
        if k < prefix + part:
            return ChevalleyIndex(k, l, k - prefix)
        prefix += part
    raise AssertionError("unreachable")


def compose_index(setup: RSetup, l: int, k_prime: int) -> int:
    if not 1 <= l <= setup.s or not 0 <= k_prime < setup.parts[l - 1]:
        raise ValueError(f"bad colour-local index ({l}, {k_prime})")
    return sum(setup.parts[: l - 1]) + k_prime


def cartan_matrix(m: int):
    """Generalized Cartan matrix of affine type A_(m-1).

    m >= 3 is the circulant with 2 on the diagonal and -1 next to it;
    m = 2 is [[2,-2],[-2,2]]; m = 1 degenerates to [[0]], which makes
    the colour-level H_0 the identity.
    """
    if m < 1:
        raise ValueError("matrix size must be positive")
    if m == 1:
        return ((0,),)
    if m == 2:
        return ((2, -2), (-2, 2))
    rows = []
    for i in range(m):
        row = [0] * m
        row[i] = 2
        row[(i + 1) % m] = -1
        row[(i - 1) % m] = -1
        rows.append(tuple(row))
    return tuple(rows)


class PsiPairSum(LinearOperator):
    """sum_i psi_u(a0 + i*da) psi*_v(b0 + i*db), the contraction acting first.

    For a basis state only finitely many i survive: the contracted index
    must not exceed the largest occupied index of colour v, and the
    wedged index must not fall into the frozen tail of colour u.
    """

    def __init__(self, u: int, a0: int, da: int, v: int, b0: int, db: int):
        assert da > 0 and db > 0
        self.u, self.a0, self.da = u, a0, da
        self.v, self.b0, self.db = v, b0, db

    def apply_state(self, st: FockState) -> FockVector:
        cu = st.colours[self.u - 1]
        cv = st.colours[self.v - 1]
        lo_unocc = cu.charge - len(cu.shape.rows) + 1
        hi_occ = cv.charge + (cv.shape.rows[0] if cv.shape.rows else 0)
        i_min = -((self.a0 - lo_unocc) // self.da)  # ceil((lo - a0)/da)
        i_max = (hi_occ - self.b0) // self.db
        out = FockVector()
        for i in range(i_min, i_max + 1):
            first = contract(self.v, self.b0 + i * self.db, st)
            if first.is_zero:
                continue
            second = wedge(self.u, self.a0 + i * self.da, first.state)
            if second.is_zero:
                continue
            out.iadd_term(second.state, first.sign * second.sign)
        return out

    def __repr__(self):
        return (
            f"sum_i psi_{self.u}({self.a0}+{self.da}i) "
            f"psi*_{self.v}({self.b0}+{self.db}i)"
        )


class CommutatorOp(LinearOperator):
    def __init__(self, a: LinearOperator, b: LinearOperator):
        self.a = a
        self.b = b

    def apply_state(self, st: FockState) -> FockVector:
        v = FockVector.unit(st)
        return self.a.apply(self.b.apply(v)) - self.b.apply(self.a.apply(v))


def _require_chevalley(setup: RSetup):
    if setup.r < 2:
        raise ValueError(
            "the Chevalley family degenerates for r = 1; only loops and "
            "oscillator components are exposed"
        )


def rho_E(setup: RSetup, k: int) -> LinearOperator:
    _require_chevalley(setup)
    _, l, kp = decompose_index(setup, k)
    parts = setup.parts
    if kp != 0:
        rl = parts[l - 1]
        return PsiPairSum(l, kp, rl, l, kp + 1, rl)
    if l != 1:
        return PsiPairSum(l - 1, parts[l - 2], parts[l - 2], l, 1, parts[l - 1])
    return PsiPairSum(setup.s, 0, parts[-1], 1, 1, parts[0])


def rho_F(setup: RSetup, k: int) -> LinearOperator:
    _require_chevalley(setup)
    _, l, kp = decompose_index(setup, k)
    parts = setup.parts
    if kp != 0:
        rl = parts[l - 1]
        return PsiPairSum(l, kp + 1, rl, l, kp, rl)
    if l != 1:
        return PsiPairSum(l, 1, parts[l - 1], l - 1, parts[l - 2], parts[l - 2])
    return PsiPairSum(1, 1, parts[0], setup.s, 0, parts[-1])


def rho_H(setup: RSetup, k: int) -> LinearOperator:
    return CommutatorOp(rho_E(setup, k), rho_F(setup, k))


def rho_loop(setup: RSetup, n: int) -> LinearOperator:
    """I (x) t^n acting as sum_l alpha_l(n r_l); n = 0 gives the total charge."""
    return SumOp(alpha(l, n * setup.parts[l - 1]) for l in range(1, setup.s + 1))
