"""Operators built from equivariant data at torus fixed points.

A fixed point is a tuple of charged partitions.  Its tangent Euler
classes are hook products,

    e(T_I^+) = prod_l prod_(b in lam_l) h(b) (R/r_l) eps,
    e(T_I^-) = (-1)^(total boxes) e(T_I^+),

and the bundle joining the (c, n) and (d, m) blocks restricts at a pair
(I, J) to the Chern roots

    (d_l - c_l - h_(lamI_l, lamJ_l)(x)) (R/r_l) eps   for x in lamI_l,
    (d_l - c_l + h_(lamJ_l, lamI_l)(y)) (R/r_l) eps   for y in lamJ_l.

Matrix coefficients divide an elementary symmetric polynomial of these
roots (at the closed-form top-nonvanishing index) by e(T_I^-) e(T_J^+);
every coefficient must come out with eps-degree zero, which is checked
on every evaluation rather than assumed.  Only the eps-line is ever
needed: the framing weights never survive into a coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .fock import (
    FockState,
    FockVector,
    LinearOperator,
    ScaledOp,
    SumOp,
    colour_sign,
)
from .glhat import RSetup, cartan_matrix, decompose_index
from .partitions import ChargedPartition, Partition, partitions_of, relative_hook


class InternalGradingError(Exception):
    """A matrix coefficient came out with nonzero eps-degree."""


class AssertionMismatch(Exception):
    """A Chern class above the closed-form top-nonvanishing index was nonzero."""


class EpsMonomial(NamedTuple):
    """An exact multiple of a power of eps."""

    coeff: Fraction
    degree: int

    def __mul__(self, other: "EpsMonomial") -> "EpsMonomial":
        if not self.coeff or not other.coeff:
            return EPS_ZERO
        return EpsMonomial(self.coeff * other.coeff, self.degree + other.degree)

    def divide(self, other: "EpsMonomial") -> "EpsMonomial":
        if not other.coeff:
            raise ZeroDivisionError("division by the zero class")
        if not self.coeff:
            return EPS_ZERO
        return EpsMonomial(self.coeff / other.coeff, self.degree - other.degree)

    def as_scalar(self) -> Fraction:
        if self.coeff and self.degree != 0:
            raise InternalGradingError(
                f"coefficient has eps-degree {self.degree}, expected 0"
            )
        return self.coeff


EPS_ZERO = EpsMonomial(Fraction(0), 0)
EPS_ONE = EpsMonomial(Fraction(1), 0)


@lru_cache(maxsize=None)
def _hook_product(rows: tuple) -> int:
    lam = Partition(rows)
    prod = 1
    for b in lam.boxes():
        prod *= relative_hook(lam, lam, b)
    return prod


def tangent_euler(setup: RSetup, st: FockState, sign: int = 1) -> EpsMonomial:
    """Euler class of T^+ (sign=+1) or T^- (sign=-1) at a fixed point."""
    coeff = Fraction(1)
    degree = 0
    for l, cp in enumerate(st.colours, start=1):
        size = cp.shape.size
        scale = Fraction(setup.R, setup.parts[l - 1])
        coeff *= _hook_product(cp.shape.rows) * scale**size
        degree += size
    if sign < 0 and degree % 2:
        coeff = -coeff
    return EpsMonomial(coeff, degree)


def chern_roots(setup: RSetup, I: FockState, J: FockState, d_minus_c) -> list:
    """Chern roots (eps-coefficients) of the joining bundle's fibre at (I, J)."""
    roots = []
    for l in range(1, setup.s + 1):
        lam_i = I.colours[l - 1].shape
        lam_j = J.colours[l - 1].shape
        dmc = d_minus_c[l - 1]
        scale = Fraction(setup.R, setup.parts[l - 1])
        for x in lam_i.boxes():
            roots.append((dmc - relative_hook(lam_i, lam_j, x)) * scale)
        for y in lam_j.boxes():
            roots.append((dmc + relative_hook(lam_j, lam_i, y)) * scale)
    return roots


def elementary_symmetric(roots) -> list:
    """All e_0, ..., e_n of the multiset, by incremental convolution."""
    es = [Fraction(1)]
    for x in roots:
        es.append(Fraction(0))
        for k in range(len(es) - 1, 0, -1):
            es[k] += x * es[k - 1]
    return es


def top_nonvanishing(roots) -> tuple:
    """Largest k with e_k(roots) != 0, together with that class.

    e_0 = 1 for the empty multiset, so the index is always defined.
    """
    es = elementary_symmetric(roots)
    for k in range(len(es) - 1, -1, -1):
        if es[k]:
            return k, EpsMonomial(es[k], k)
    raise AssertionError("e_0 is always 1")


@lru_cache(maxsize=None)
def _pair_ratio(parts, shapes_i, shapes_j, dmc, drop) -> Fraction:
    """The charge-independent core of a matrix coefficient.

    Evaluates e_(total - drop) of the joining roots over e(T_I^-) e(T_J^+),
    where drop is the gap between the bundle rank and the closed-form
    top-nonvanishing Chern index (1 for the energy-shifting oscillators,
    0 otherwise).  Raises AssertionMismatch if any class above the
    closed-form index survives at the fibre, and InternalGradingError if
    the eps-degrees fail to cancel.
    """
    setup = RSetup(parts)
    I = FockState(
        tuple(ChargedPartition(0, Partition(rows)) for rows in shapes_i)
    )
    J = FockState(
        tuple(ChargedPartition(0, Partition(rows)) for rows in shapes_j)
    )
    roots = chern_roots(setup, I, J, dmc)
    es = elementary_symmetric(roots)
    total = len(roots)
    for k in range(total - drop + 1, total + 1):
        if es[k]:
            raise AssertionMismatch(
                f"c_{k} nonzero above the closed-form index {total - drop} "
                f"for shapes {shapes_i} -> {shapes_j}, d-c={dmc}"
            )
    numerator = EpsMonomial(es[total - drop], total - drop)
    # the gamma factor restricting to eps accounts for the dropped degree
    numerator = numerator * EpsMonomial(Fraction(1), drop)
    denominator = tangent_euler(setup, I, -1) * tangent_euler(setup, J, +1)
    return numerator.divide(denominator).as_scalar()


class GeoOperator(LinearOperator):
    """Rule (I, J) -> coefficient of [J] in (operator applied to [I]).

    Subclasses declare the charge shift and the target energy vector;
    coefficient() gates on those gradings and is exact on arbitrary
    pairs, while apply_state() enumerates only the colours the operator
    moves (all other target shapes give vanishing Euler data, which the
    full-block verification checks separately).
    """

    def __init__(self, setup: RSetup):
        self.setup = setup

    def charge_shift(self):
        return (0,) * self.setup.s

    def target_energies(self, I: FockState):
        """Target energy vector, or None when the operator kills the block."""
        raise NotImplementedError

    def coefficient(self, I: FockState, J: FockState) -> Fraction:
        raise NotImplementedError

    def _gate(self, I: FockState, J: FockState) -> bool:
        shift = self.charge_shift()
        if tuple(
            c + d for c, d in zip(I.charges(), shift)
        ) != J.charges():
            return False
        m = self.target_energies(I)
        return m is not None and J.energies() == m

    def _targets(self, I: FockState, moved_colours):
        """All states matching the declared gradings that differ from I
        only in the given colours."""
        m = self.target_energies(I)
        if m is None:
            return
        shift = self.charge_shift()
        charges = tuple(c + d for c, d in zip(I.charges(), shift))

        def rec(l, colours):
            if l > self.setup.s:
                yield FockState(colours)
                return
            if l in moved_colours:
                for lam in partitions_of(m[l - 1]):
                    yield from rec(
                        l + 1, colours + (ChargedPartition(charges[l - 1], lam),)
                    )
            else:
                cp = I.colours[l - 1]
                if m[l - 1] != cp.energy or charges[l - 1] != cp.charge:
                    return
                yield from rec(l + 1, colours + (cp,))

        yield from rec(1, ())

    def _moved_colours(self):
        raise NotImplementedError

    def apply_state(self, I: FockState) -> FockVector:
        out = FockVector()
        for J in self._targets(I, self._moved_colours()):
            out.iadd_term(J, self.coefficient(I, J))
        return out


class GeoP(GeoOperator):
    """Geometric oscillator component for one colour.

    For k != 0 the coefficient is +-(R/r_l) eps c_tnv of the joining
    bundle over the tangent Euler classes, the sign positive for k < 0;
    k = 0 acts as multiplication by the colour's charge.
    """

    def __init__(self, setup: RSetup, l: int, k: int):
        super().__init__(setup)
        self.l = l
        self.k = k

    def target_energies(self, I: FockState):
        if self.k == 0:
            return I.energies()
        m = list(I.energies())
        m[self.l - 1] -= self.k
        return tuple(m) if m[self.l - 1] >= 0 else None

    def _moved_colours(self):
        return () if self.k == 0 else (self.l,)

    def coefficient(self, I: FockState, J: FockState) -> Fraction:
        if not self._gate(I, J):
            return Fraction(0)
        if self.k == 0:
            return Fraction(I.charges()[self.l - 1]) if I == J else Fraction(0)
        ratio = _pair_ratio(
            self.setup.parts,
            tuple(cp.shape.rows for cp in I.colours),
            tuple(cp.shape.rows for cp in J.colours),
            (0,) * self.setup.s,
            1,
        )
        sigma = 1 if self.k < 0 else -1
        return sigma * Fraction(self.setup.R, self.setup.parts[self.l - 1]) * ratio

    def __repr__(self):
        return f"GeoP_{self.l}({self.k})"


class GeoPsi(GeoOperator):
    """Geometric wedging operator: full Euler class of the charge +1 bundle."""

    def __init__(self, setup: RSetup, l: int, k: int):
        super().__init__(setup)
        self.l = l
        self.k = k

    def charge_shift(self):
        return tuple(1 if i == self.l else 0 for i in range(1, self.setup.s + 1))

    def target_energies(self, I: FockState):
        m = list(I.energies())
        m[self.l - 1] += self.k - I.charges()[self.l - 1] - 1
        return tuple(m) if m[self.l - 1] >= 0 else None

    def _moved_colours(self):
        return (self.l,)

    def _dmc(self):
        return tuple(1 if i == self.l else 0 for i in range(1, self.setup.s + 1))

    def coefficient(self, I: FockState, J: FockState) -> Fraction:
        if not self._gate(I, J):
            return Fraction(0)
        ratio = _pair_ratio(
            self.setup.parts,
            tuple(cp.shape.rows for cp in I.colours),
            tuple(cp.shape.rows for cp in J.colours),
            self._dmc(),
            0,
        )
        return colour_sign(I, self.l) * ratio

    def __repr__(self):
        return f"GeoPsi_{self.l}({self.k})"


class GeoPsiStar(GeoPsi):
    """Geometric contracting operator: charge -1 companion of GeoPsi."""

    def charge_shift(self):
        return tuple(-1 if i == self.l else 0 for i in range(1, self.setup.s + 1))

    def target_energies(self, I: FockState):
        m = list(I.energies())
        m[self.l - 1] -= self.k - I.charges()[self.l - 1]
        return tuple(m) if m[self.l - 1] >= 0 else None

    def _dmc(self):
        return tuple(-1 if i == self.l else 0 for i in range(1, self.setup.s + 1))

    def __repr__(self):
        return f"GeoPsiStar_{self.l}({self.k})"


def _dimension_vectors(st: FockState, setup: RSetup):
    return tuple(
        tuple(cp.residue_counts(setup.parts[l - 1]))
        for l, cp in enumerate(st.colours, start=1)
    )


class GeoFDiag(GeoOperator):
    """Adds one box of the given residue class to one colour.

    Gated by the quiver dimension vectors: the target must sit in the
    component whose vector grew by one in class k'.  On that component
    the coefficient is the one-box oscillator coefficient.
    """

    def __init__(self, setup: RSetup, l: int, k_prime: int):
        super().__init__(setup)
        if not 0 <= k_prime < setup.parts[l - 1]:
            raise ValueError(f"residue class {k_prime} out of range for colour {l}")
        self.l = l
        self.k_prime = k_prime
        self._p = GeoP(setup, l, -1)

    def target_energies(self, I: FockState):
        m = list(I.energies())
        m[self.l - 1] += 1
        return tuple(m)

    def _moved_colours(self):
        return (self.l,)

    def _component_gate(self, I: FockState, J: FockState) -> bool:
        vi = _dimension_vectors(I, self.setup)
        vj = _dimension_vectors(J, self.setup)
        for l in range(1, self.setup.s + 1):
            want = list(vi[l - 1])
            if l == self.l:
                want[self.k_prime] += 1
            if list(vj[l - 1]) != want:
                return False
        return True

    def coefficient(self, I: FockState, J: FockState) -> Fraction:
        if not self._gate(I, J) or not self._component_gate(I, J):
            return Fraction(0)
        return self._p.coefficient(I, J)

    def __repr__(self):
        return f"GeoF^{self.l}_{self.k_prime}"


class GeoEDiag(GeoFDiag):
    """Removes one box of the given residue class from one colour."""

    def __init__(self, setup: RSetup, l: int, k_prime: int):
        super().__init__(setup, l, k_prime)
        self._p = GeoP(setup, l, 1)

    def target_energies(self, I: FockState):
        m = list(I.energies())
        m[self.l - 1] -= 1
        return tuple(m) if m[self.l - 1] >= 0 else None

    def _component_gate(self, I: FockState, J: FockState) -> bool:
        vi = _dimension_vectors(I, self.setup)
        vj = _dimension_vectors(J, self.setup)
        for l in range(1, self.setup.s + 1):
            want = list(vi[l - 1])
            if l == self.l:
                want[self.k_prime] -= 1
            if list(vj[l - 1]) != want:
                return False
        return True

    def __repr__(self):
        return f"GeoE^{self.l}_{self.k_prime}"


class GeoHDiag(GeoOperator):
    """Diagonal with eigenvalue delta(charge class, k') - sum_j a_(k'j) v_j."""

    def __init__(self, setup: RSetup, l: int, k_prime: int):
        super().__init__(setup)
        rl = setup.parts[l - 1]
        if not 0 <= k_prime < rl:
            raise ValueError(f"residue class {k_prime} out of range for colour {l}")
        self.l = l
        self.k_prime = k_prime
        self._cartan = cartan_matrix(rl)

    def target_energies(self, I: FockState):
        return I.energies()

    def _moved_colours(self):
        return ()

    def eigenvalue(self, I: FockState) -> Fraction:
        cp = I.colours[self.l - 1]
        rl = self.setup.parts[self.l - 1]
        v = cp.residue_counts(rl)
        delta = 1 if (cp.charge - self.k_prime) % rl == 0 else 0
        return Fraction(
            delta - sum(self._cartan[self.k_prime][j] * v[j] for j in range(rl))
        )

    def coefficient(self, I: FockState, J: FockState) -> Fraction:
        if I != J:
            return Fraction(0)
        return self.eigenvalue(I)

    def apply_state(self, I: FockState) -> FockVector:
        out = FockVector()
        out.iadd_term(I, self.eigenvalue(I))
        return out

    def __repr__(self):
        return f"GeoH^{self.l}_{self.k_prime}"


class GeoBilinearSum(LinearOperator):
    """sum_k Psi_u(a0 + k da) Psi*_v(b0 + k db) with geometric Clifford factors.

    The scan window per state comes from the wedge/contract locality of
    the factors (indices beyond the occupied range of colour v or inside
    the frozen tail of colour u act by zero); the Clifford equivalence
    backing this is verified independently against the fermionic side.
    """

    def __init__(self, setup: RSetup, u: int, a0: int, da: int, v: int, b0: int, db: int):
        assert da > 0 and db > 0
        self.setup = setup
        self.u, self.a0, self.da = u, a0, da
        self.v, self.b0, self.db = v, b0, db

    def apply_state(self, st: FockState) -> FockVector:
        cu = st.colours[self.u - 1]
        cv = st.colours[self.v - 1]
        lo_unocc = cu.charge - len(cu.shape.rows) + 1
        hi_occ = cv.charge + (cv.shape.rows[0] if cv.shape.rows else 0)
        k_min = -((self.a0 - lo_unocc) // self.da)
        k_max = (hi_occ - self.b0) // self.db
        out = FockVector()
        for k in range(k_min, k_max + 1):
            inner = GeoPsiStar(self.setup, self.v, self.b0 + k * self.db).apply_state(st)
            if inner.is_zero:
                continue
            outer = GeoPsi(self.setup, self.u, self.a0 + k * self.da).apply(inner)
            out.iadd_scaled(outer, 1)
        return out

    def coefficient(self, I: FockState, J: FockState) -> Fraction:
        return self.apply_state(I).get(J, Fraction(0))


def geo_E_offdiag(setup: RSetup, i: int) -> GeoBilinearSum:
    """Off-diagonal raising operator for the colour pair (i, i+1); i = 0 wraps."""
    parts = setup.parts
    if i == 0:
        return GeoBilinearSum(setup, setup.s, 0, parts[-1], 1, 1, parts[0])
    if not 1 <= i < setup.s:
        raise ValueError(f"off-diagonal index {i} needs 1 <= i < s")
    return GeoBilinearSum(setup, i, parts[i - 1], parts[i - 1], i + 1, 1, parts[i])


def geo_F_offdiag(setup: RSetup, i: int) -> GeoBilinearSum:
    """Off-diagonal lowering operator for the colour pair (i, i+1); i = 0 wraps."""
    parts = setup.parts
    if i == 0:
        return GeoBilinearSum(setup, 1, 1, parts[0], setup.s, 0, parts[-1])
    if not 1 <= i < setup.s:
        raise ValueError(f"off-diagonal index {i} needs 1 <= i < s")
    return GeoBilinearSum(
        setup, i + 1, 1 - parts[i], parts[i], i, parts[i - 1], parts[i - 1]
    )


class GeoCommutator(LinearOperator):
    def __init__(self, a: LinearOperator, b: LinearOperator):
        self.a = a
        self.b = b

    def apply_state(self, st: FockState) -> FockVector:
        v = FockVector.unit(st)
        return self.a.apply(self.b.apply(v)) - self.b.apply(self.a.apply(v))

    def coefficient(self, I: FockState, J: FockState) -> Fraction:
        return self.apply_state(I).get(J, Fraction(0))


def geo_H_offdiag(setup: RSetup, i: int) -> GeoCommutator:
    return GeoCommutator(geo_E_offdiag(setup, i), geo_F_offdiag(setup, i))


def geo_E(setup: RSetup, k: int) -> LinearOperator:
    """Chevalley raising operator for a global index 0 <= k < r."""
    _, l, kp = decompose_index(setup, k)
    if kp != 0:
        return GeoEDiag(setup, l, kp)
    if l != 1:
        return geo_E_offdiag(setup, l - 1)
    return geo_E_offdiag(setup, 0)


def geo_F(setup: RSetup, k: int) -> LinearOperator:
    _, l, kp = decompose_index(setup, k)
    if kp != 0:
        return GeoFDiag(setup, l, kp)
    if l != 1:
        return geo_F_offdiag(setup, l - 1)
    return geo_F_offdiag(setup, 0)


def geo_H(setup: RSetup, k: int) -> LinearOperator:
    _, l, kp = decompose_index(setup, k)
    if kp != 0:
        return GeoHDiag(setup, l, kp)
    if l != 1:
        return geo_H_offdiag(setup, l - 1)
    return geo_H_offdiag(setup, 0)


def geo_loop(setup: RSetup, n: int) -> LinearOperator:
    """I (x) t^n as |n| sum_l r_l P_l(n r_l); n = 0 gives the total charge."""
    if n == 0:
        return SumOp(GeoP(setup, l, 0) for l in range(1, setup.s + 1))
    return SumOp(
        ScaledOp(abs(n) * setup.parts[l - 1], GeoP(setup, l, n * setup.parts[l - 1]))
        for l in range(1, setup.s + 1)
    )


def assemble_glr(setup: RSetup):
    """The full Chevalley family {E_k, F_k, H_k} plus the loop factory.

    Needs r >= 2; for r = 1 only loops and oscillators exist.
    """
    if setup.r < 2:
        raise ValueError(
            "the Chevalley family degenerates for r = 1; use geo_loop and GeoP"
        )
    family = {}
    for k in range(setup.r):
        family[("E", k)] = geo_E(setup, k)
        family[("F", k)] = geo_F(setup, k)
        family[("H", k)] = geo_H(setup, k)
    return family
