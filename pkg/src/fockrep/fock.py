"""Coloured fermionic Fock space.

Basis states are s-tuples of charged partitions, one per colour; each
colour stands for a semi-infinite monomial i_1 > i_2 > ... with
i_k = lambda_k + c - k + 1.  The wedging operator psi_l(i) inserts the
index i into colour l (sign (-1)^k when k entries lie above it) and the
contracting operator psi*_l(i) removes it (sign (-1)^(k-1) from position
k).  Both also pick up the colour twist (-1)^(c_1 + ... + c_(l-1))
computed from the charges of the state *before* the operator acts.

Vectors are finite sparse maps from states to exact rationals.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import NamedTuple, Optional

from .partitions import ChargedPartition, Partition, parse_charged


class FockState:
    """An s-tuple of charged partitions; a fermionic basis vector."""

    __slots__ = ("colours", "_hash")

    def __init__(self, colours):
        self.colours = tuple(colours)
        self._hash = hash(tuple((cp.charge, cp.shape.rows) for cp in self.colours))

    @property
    def s(self) -> int:
        return len(self.colours)

    def charges(self):
        return tuple(cp.charge for cp in self.colours)

    def energies(self):
        return tuple(cp.energy for cp in self.colours)

    @property
    def total_charge(self) -> int:
        return sum(cp.charge for cp in self.colours)

    @property
    def total_energy(self) -> int:
        return sum(cp.energy for cp in self.colours)

    def replace_colour(self, l: int, cp: ChargedPartition) -> "FockState":
        cs = self.colours
        return FockState(cs[: l - 1] + (cp,) + cs[l:])

    def sort_key(self):
        return (
            tuple(cp.charge for cp in self.colours),
            tuple(cp.shape.rows for cp in self.colours),
        )

    def __eq__(self, other):
        return isinstance(other, FockState) and self.colours == other.colours

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FockState({self.colours!r})"

    def __str__(self):
        return " | ".join(str(cp) for cp in self.colours)


def parse_state(text: str, s: Optional[int] = None) -> FockState:
    """Parse a literal like "0:[2,1] | -1:[]"; "vacuum" needs s given."""
    text = text.strip()
    if text == "vacuum":
        if s is None:
            raise ValueError("'vacuum' literal needs the number of colours")
        return vacuum(s)
    parts = [parse_charged(chunk) for chunk in text.split("|")]
    st = FockState(parts)
    if s is not None and st.s != s:
        raise ValueError(f"state has {st.s} colours, setup expects {s}")
    return st


def vacuum(setup) -> FockState:
    """The vacuum |0>^(x s): every colour is charge 0 with empty shape."""
    s = setup if isinstance(setup, int) else setup.s
    empty = ChargedPartition(0, Partition())
    return FockState((empty,) * s)


class SignedState(NamedTuple):
    """A +-1 sign and a state; state None encodes annihilation."""

    sign: int
    state: Optional[FockState]

    @property
    def is_zero(self) -> bool:
        return self.state is None


ZERO_SIGNED = SignedState(1, None)


def _wedge_colour(cp: ChargedPartition, i: int):
    """Insert index i into one colour; None if occupied.

    Returns (internal sign, new charged partition).  The new shape comes
    from decrementing the rows above the insertion point and starting a
    new row of length i - c + k - 1.
    """
    c, rows = cp.charge, cp.shape.rows
    d = i - c
    length = len(rows)
    if d <= -length:
        return None
    count = 0
    for k in range(length):
        key = rows[k] - k
        if key > d:
            count += 1
        elif key == d:
            return None
        else:
            break
    v = d + count - 1
    head = tuple(r - 1 for r in rows[:count])
    new_rows = head + (v,) + rows[count:] if v > 0 else head
    sign = -1 if count % 2 else 1
    return sign, ChargedPartition(c + 1, Partition(new_rows))


def _contract_colour(cp: ChargedPartition, i: int):
    """Remove index i from one colour; None if absent."""
    c, rows = cp.charge, cp.shape.rows
    d = i - c
    length = len(rows)
    if d <= -length:
        k = 1 - d
        new_rows = tuple(r + 1 for r in rows) + (1,) * (k - 1 - length)
        sign = -1 if (k - 1) % 2 else 1
        return sign, ChargedPartition(c - 1, Partition(new_rows))
    for j in range(length):
        key = rows[j] - j
        if key == d:
            new_rows = tuple(r + 1 for r in rows[:j]) + rows[j + 1 :]
            sign = -1 if j % 2 else 1
            return sign, ChargedPartition(c - 1, Partition(new_rows))
        if key < d:
            return None
    return None


def colour_sign(st: FockState, l: int) -> int:
    """The twist (-1)^(c_1 + ... + c_(l-1)) read off the state's charges."""
    e = 0
    for cp in st.colours[: l - 1]:
        e += cp.charge
    return -1 if e % 2 else 1


def wedge(l: int, i: int, st: FockState) -> SignedState:
    """psi_l(i) applied to a basis state."""
    res = _wedge_colour(st.colours[l - 1], i)
    if res is None:
        return ZERO_SIGNED
    sign, cp = res
    return SignedState(sign * colour_sign(st, l), st.replace_colour(l, cp))


def contract(l: int, i: int, st: FockState) -> SignedState:
    """psi*_l(i) applied to a basis state."""
    res = _contract_colour(st.colours[l - 1], i)
    if res is None:
        return ZERO_SIGNED
    sign, cp = res
    return SignedState(sign * colour_sign(st, l), st.replace_colour(l, cp))


class FockVector(dict):
    """Sparse map FockState -> Fraction; zero coefficients never stored."""

    def __init__(self, data=()):
        super().__init__()
        items = data.items() if isinstance(data, dict) else data
        for state, coeff in items:
            self.iadd_term(state, coeff)

    def iadd_term(self, state: FockState, coeff) -> None:
        if not coeff:
            return
        coeff = Fraction(coeff)
        total = self.get(state, 0) + coeff
        if total:
            self[state] = total
        else:
            del self[state]

    def iadd_scaled(self, other: "FockVector", scalar) -> None:
        if scalar:
            for state, coeff in other.items():
                self.iadd_term(state, coeff * scalar)

    def __add__(self, other):
        out = FockVector(self)
        out.iadd_scaled(other, 1)
        return out

    def __sub__(self, other):
        out = FockVector(self)
        out.iadd_scaled(other, -1)
        return out

    def __mul__(self, scalar):
        if not scalar:
            return FockVector()
        return FockVector((st, c * scalar) for st, c in self.items())

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    @property
    def is_zero(self) -> bool:
        return not self

    def items_sorted(self):
        return sorted(self.items(), key=lambda kv: kv[0].sort_key())

    def restrict_charges(self, charges) -> "FockVector":
        charges = tuple(charges)
        return FockVector((st, c) for st, c in self.items() if st.charges() == charges)

    def restrict_total_charge(self, c: int) -> "FockVector":
        return FockVector((st, x) for st, x in self.items() if st.total_charge == c)

    def restrict_energies(self, energies) -> "FockVector":
        energies = tuple(energies)
        return FockVector((st, c) for st, c in self.items() if st.energies() == energies)

    def to_json_obj(self):
        return {
            "terms": [
                {"state": str(st), "coeff": str(coeff)} for st, coeff in self.items_sorted()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj, s: Optional[int] = None) -> "FockVector":
        return cls(
            (parse_state(term["state"], s), Fraction(term["coeff"])) for term in obj["terms"]
        )

    @classmethod
    def from_json(cls, text: str, s: Optional[int] = None) -> "FockVector":
        return cls.from_json_obj(json.loads(text), s)

    @classmethod
    def unit(cls, st: FockState) -> "FockVector":
        return cls(((st, Fraction(1)),))


def apply_linear(op, v: FockVector) -> FockVector:
    """Extend a state-level operator linearly to a vector."""
    out = FockVector()
    for st, coeff in v.items():
        out.iadd_scaled(op.apply_state(st), coeff)
    return out


class LinearOperator:
    """Base class: subclasses provide apply_state(state) -> FockVector."""

    def apply_state(self, st: FockState) -> FockVector:
        raise NotImplementedError

    def apply(self, v: FockVector) -> FockVector:
        return apply_linear(self, v)


class CliffordOp(LinearOperator):
    """psi_l(i) (kind "w") or psi*_l(i) (kind "c") as a linear operator."""

    def __init__(self, kind: str, l: int, i: int):
        assert kind in ("w", "c")
        self.kind = kind
        self.l = l
        self.i = i

    def apply_state(self, st: FockState) -> FockVector:
        res = wedge(self.l, self.i, st) if self.kind == "w" else contract(self.l, self.i, st)
        if res.is_zero:
            return FockVector()
        return FockVector(((res.state, Fraction(res.sign)),))

    def __repr__(self):
        name = "psi" if self.kind == "w" else "psi*"
        return f"{name}_{self.l}({self.i})"


def psi(l: int, i: int) -> CliffordOp:
    return CliffordOp("w", l, i)


def psi_star(l: int, i: int) -> CliffordOp:
    return CliffordOp("c", l, i)


class NormalOrderedPair(LinearOperator):
    """:psi_l(i) psi*_k(j):, which is psi_l(i) psi*_k(j) for j > 0 and
    -psi*_k(j) psi_l(i) for j <= 0."""

    def __init__(self, l: int, k: int, i: int, j: int):
        self.l = l
        self.k = k
        self.i = i
        self.j = j

    def apply_state(self, st: FockState) -> FockVector:
        l, k, i, j = self.l, self.k, self.i, self.j
        if j > 0:
            first = contract(k, j, st)
            if first.is_zero:
                return FockVector()
            second = wedge(l, i, first.state)
            overall = 1
        else:
            first = wedge(l, i, st)
            if first.is_zero:
                return FockVector()
            second = contract(k, j, first.state)
            overall = -1
        if second.is_zero:
            return FockVector()
        return FockVector(((second.state, Fraction(overall * first.sign * second.sign)),))


def normal_ordered_pair(l: int, k: int, i: int, j: int) -> NormalOrderedPair:
    return NormalOrderedPair(l, k, i, j)


def _colour_window(cp: ChargedPartition):
    """(lowest possibly-unoccupied index, highest possibly-occupied index)."""
    c, rows = cp.charge, cp.shape.rows
    return c - len(rows) + 1, c + (rows[0] if rows else 0)


class AlphaOp(LinearOperator):
    """Fermionic oscillator component alpha_l(m) = sum_j :psi_l(j-m) psi*_l(j):.

    On a basis state only finitely many j contribute: the contracted
    index j must be occupied and the wedged index j - m unoccupied, which
    confines j to an explicit window.  alpha_l(0) is the charge operator.
    """

    def __init__(self, l: int, m: int):
        self.l = l
        self.m = m

    def apply_state(self, st: FockState) -> FockVector:
        l, m = self.l, self.m
        cp = st.colours[l - 1]
        out = FockVector()
        if m == 0:
            out.iadd_term(st, Fraction(cp.charge))
            return out
        lo_unocc, hi_occ = _colour_window(cp)
        for j in range(lo_unocc + m, hi_occ + 1):
            first = contract(l, j, st)
            if first.is_zero:
                continue
            second = wedge(l, j - m, first.state)
            if second.is_zero:
                continue
            out.iadd_term(second.state, Fraction(first.sign * second.sign))
        return out

    def __repr__(self):
        return f"alpha_{self.l}({self.m})"


def alpha(l: int, m: int) -> AlphaOp:
    return AlphaOp(l, m)


class ScaledOp(LinearOperator):
    def __init__(self, scalar, op: LinearOperator):
        self.scalar = Fraction(scalar)
        self.op = op

    def apply_state(self, st: FockState) -> FockVector:
        return self.op.apply_state(st) * self.scalar


class SumOp(LinearOperator):
    def __init__(self, ops):
        self.ops = tuple(ops)

    def apply_state(self, st: FockState) -> FockVector:
        out = FockVector()
        for op in self.ops:
            out.iadd_scaled(op.apply_state(st), 1)
        return out


class ComposedOp(LinearOperator):
    """Operator product: the rightmost factor acts first."""

    def __init__(self, ops):
        self.ops = tuple(ops)

    def apply_state(self, st: FockState) -> FockVector:
        v = FockVector.unit(st)
        for op in reversed(self.ops):
            v = op.apply(v)
            if v.is_zero:
                break
        return v


def commutator_apply(a: LinearOperator, b: LinearOperator, v: FockVector) -> FockVector:
    return a.apply(b.apply(v)) - b.apply(a.apply(v))


def anticommutator_apply(a: LinearOperator, b: LinearOperator, v: FockVector) -> FockVector:
    return a.apply(b.apply(v)) + b.apply(a.apply(v))
