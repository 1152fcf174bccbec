"""Coloured bosonic Fock space in the power-sum basis.

A basis monomial assigns to each colour a charge c (the q-exponent) and
a partition mu encoding the product p_{mu_1} p_{mu_2} ....  The
oscillator acts by

    P(n)  = d/dp_n          (n > 0),
    P(-n) = (1/n) p_n       (n > 0),
    P(0)  = multiplication by the charge.

Schur functions are expanded through symmetric group characters,

    s_lambda = sum_mu chi^lambda(mu) / z_mu * p_mu,
    p_mu     = sum_lambda chi^lambda(mu) * s_lambda,

with chi computed by the border-strip (Murnaghan-Nakayama) recursion on
beta-sets.  Mapping s_lambda q^c to the charged partition (c, lambda)
colourwise gives the correspondence with the fermionic side.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional

from .fock import FockState, FockVector
from .partitions import ChargedPartition, Partition, parse_partition, partitions_of


@lru_cache(maxsize=None)
def char_value(lam_rows: tuple, mu_rows: tuple) -> int:
    """Symmetric group character chi^lambda(mu), both arguments row tuples.

    Strips border strips of length mu_1 by replacing a beta-number b with
    b - mu_1; the height of the strip is the number of beta-numbers
    jumped over.
    """
    if sum(lam_rows) != sum(mu_rows):
        raise ValueError("character needs |lambda| == |mu|")
    if not mu_rows:
        return 1
    t = mu_rows[0]
    rest = mu_rows[1:]
    length = len(lam_rows)
    beta = [lam_rows[j] + (length - 1 - j) for j in range(length)]
    beta_set = set(beta)
    total = 0
    for pos, b in enumerate(beta):
        nb = b - t
        if nb < 0 or nb in beta_set:
            continue
        crossed = sum(1 for x in beta if nb < x < b)
        new_beta = sorted((beta_set - {b}) | {nb}, reverse=True)
        new_rows = tuple(x - (length - 1 - j) for j, x in enumerate(new_beta))
        while new_rows and new_rows[-1] == 0:
            new_rows = new_rows[:-1]
        term = char_value(new_rows, rest)
        total += -term if crossed % 2 else term
    return total


def z_factor(mu_rows: tuple) -> int:
    """Centralizer order z_mu = prod_k k^{m_k} m_k!."""
    z = 1
    mult = {}
    for part in mu_rows:
        mult[part] = mult.get(part, 0) + 1
    for part, m in mult.items():
        z *= part**m * factorial(m)
    return z


def schur_to_powersum(lam: Partition) -> dict:
    """Expansion of s_lambda as {mu_rows: Fraction} in the p-basis."""
    out = {}
    for mu in partitions_of(lam.size):
        chi = char_value(lam.rows, mu.rows)
        if chi:
            out[mu.rows] = Fraction(chi, z_factor(mu.rows))
    return out


def powersum_to_schur(coeffs: dict) -> dict:
    """Inverse expansion: {mu_rows: coeff} -> {lam_rows: coeff}.

    The input must be homogeneous; mixed degrees are handled per graded
    piece by the callers.
    """
    out = {}
    degrees = {sum(mu) for mu in coeffs}
    for degree in degrees:
        block = {mu: c for mu, c in coeffs.items() if sum(mu) == degree}
        for lam in partitions_of(degree):
            total = Fraction(0)
            for mu, c in block.items():
                chi = char_value(lam.rows, mu)
                if chi:
                    total += c * chi
            if total:
                out[lam.rows] = out.get(lam.rows, Fraction(0)) + total
    return {k: v for k, v in out.items() if v}


class PowerMonomial:
    """An s-tuple of (charge, power-sum partition) pairs."""

    __slots__ = ("colours", "_hash")

    def __init__(self, colours):
        cols = []
        for charge, mu in colours:
            mu = mu if isinstance(mu, Partition) else Partition(mu)
            cols.append((int(charge), mu))
        self.colours = tuple(cols)
        self._hash = hash(tuple((c, mu.rows) for c, mu in self.colours))

    @property
    def s(self) -> int:
        return len(self.colours)

    def charges(self):
        return tuple(c for c, _ in self.colours)

    def degrees(self):
        return tuple(mu.size for _, mu in self.colours)

    def replace_colour(self, l: int, charge: int, mu: Partition) -> "PowerMonomial":
        cols = self.colours
        return PowerMonomial(cols[: l - 1] + ((charge, mu),) + cols[l:])

    def sort_key(self):
        return (
            tuple(c for c, _ in self.colours),
            tuple(mu.rows for _, mu in self.colours),
        )

    def __eq__(self, other):
        return isinstance(other, PowerMonomial) and self.colours == other.colours

    def __hash__(self):
        return self._hash

    def __str__(self):
        return " | ".join(f"q^{c} * p{mu}" for c, mu in self.colours)

    def __repr__(self):
        return f"PowerMonomial({self.colours!r})"


def parse_monomial(text: str, s: Optional[int] = None) -> PowerMonomial:
    """Parse a literal like "q^0 * p[2,1]" or "q^1 * p[] | q^0 * p[3]"."""
    colours = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        qpart, sep, ppart = chunk.partition("*")
        qpart = qpart.strip()
        ppart = ppart.strip()
        if not sep or not qpart.startswith("q^") or not ppart.startswith("p"):
            raise ValueError(f"bad power monomial literal: {chunk!r}")
        charge = int(qpart[2:])
        mu = parse_partition(ppart[1:])
        colours.append((charge, mu))
    mon = PowerMonomial(colours)
    if s is not None and mon.s != s:
        raise ValueError(f"monomial has {mon.s} colours, setup expects {s}")
    return mon


class BosonVector(dict):
    """Sparse map PowerMonomial -> Fraction; zero coefficients never stored."""

    def __init__(self, data=()):
        super().__init__()
        items = data.items() if isinstance(data, dict) else data
        for mon, coeff in items:
            self.iadd_term(mon, coeff)

    def iadd_term(self, mon: PowerMonomial, coeff) -> None:
        if not coeff:
            return
        coeff = Fraction(coeff)
        total = self.get(mon, 0) + coeff
        if total:
            self[mon] = total
        else:
            del self[mon]

    def iadd_scaled(self, other: "BosonVector", scalar) -> None:
        if scalar:
            for mon, coeff in other.items():
                self.iadd_term(mon, coeff * scalar)

    def __add__(self, other):
        out = BosonVector(self)
        out.iadd_scaled(other, 1)
        return out

    def __sub__(self, other):
        out = BosonVector(self)
        out.iadd_scaled(other, -1)
        return out

    def __mul__(self, scalar):
        if not scalar:
            return BosonVector()
        return BosonVector((m, c * scalar) for m, c in self.items())

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not self

    def items_sorted(self):
        return sorted(self.items(), key=lambda kv: kv[0].sort_key())

    def to_json_obj(self):
        return {
            "terms": [
                {"monomial": str(m), "coeff": str(c)} for m, c in self.items_sorted()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj, s: Optional[int] = None) -> "BosonVector":
        return cls(
            (parse_monomial(t["monomial"], s), Fraction(t["coeff"])) for t in obj["terms"]
        )

    @classmethod
    def from_json(cls, text: str, s: Optional[int] = None) -> "BosonVector":
        return cls.from_json_obj(json.loads(text), s)

    @classmethod
    def unit(cls, mon: PowerMonomial) -> "BosonVector":
        return cls(((mon, Fraction(1)),))


def P_action(l: int, n: int, v: BosonVector) -> BosonVector:
    """Oscillator generator P_l(n) on a bosonic vector."""
    out = BosonVector()
    for mon, coeff in v.items():
        charge, mu = mon.colours[l - 1]
        if n == 0:
            out.iadd_term(mon, coeff * charge)
        elif n > 0:
            mult = sum(1 for part in mu.rows if part == n)
            if mult:
                rows = list(mu.rows)
                rows.remove(n)
                out.iadd_term(
                    mon.replace_colour(l, charge, Partition(rows)), coeff * mult
                )
        else:
            part = -n
            rows = sorted(mu.rows + (part,), reverse=True)
            out.iadd_term(
                mon.replace_colour(l, charge, Partition(rows)), coeff * Fraction(1, part)
            )
    return out


def bf_to_fermion(v: BosonVector) -> FockVector:
    """Boson-fermion correspondence: s_lambda q^c  ->  (c, lambda) colourwise."""
    out = FockVector()
    for mon, coeff in v.items():
        expansions = []
        for charge, mu in mon.colours:
            expansions.append(
                [(charge, lam, c) for lam, c in powersum_to_schur({mu.rows: Fraction(1)}).items()]
            )
        _tensor_into_fock(out, expansions, coeff)
    return out


def _tensor_into_fock(out: FockVector, expansions, coeff) -> None:
    def rec(i, colours, acc):
        if i == len(expansions):
            out.iadd_term(FockState(colours), acc)
            return
        for charge, lam_rows, c in expansions[i]:
            rec(i + 1, colours + (ChargedPartition(charge, Partition(lam_rows)),), acc * c)

    rec(0, (), coeff)


def bf_to_boson(w: FockVector) -> BosonVector:
    """Inverse correspondence: (c, lambda)  ->  s_lambda q^c colourwise."""
    out = BosonVector()
    for st, coeff in w.items():
        expansions = []
        for cp in st.colours:
            expansions.append(
                [
                    (cp.charge, mu_rows, c)
                    for mu_rows, c in schur_to_powersum(cp.shape).items()
                ]
            )
        _tensor_into_boson(out, expansions, coeff)
    return out


def _tensor_into_boson(out: BosonVector, expansions, coeff) -> None:
    def rec(i, colours, acc):
        if i == len(expansions):
            out.iadd_term(PowerMonomial(colours), acc)
            return
        for charge, mu_rows, c in expansions[i]:
            rec(i + 1, colours + ((charge, Partition(mu_rows)),), acc * c)

    rec(0, (), coeff)
