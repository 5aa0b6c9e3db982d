"""Recursive measures on infinite binary sequences, given by exact cylinder masses."""
from __future__ import annotations

from fractions import Fraction

from core.errors import ZeroMassError
from services.bitcore import strings_of_length


class RecursiveMeasure:
    """mu(Gamma_x) for every finite x, with mu(Gamma_eps) = 1 and additivity over x0, x1."""

    name = "measure"

    def cylinder_mass(self, x: str) -> Fraction:
        raise NotImplementedError

    def conditional_zero(self, x: str) -> Fraction:
        """mu(0 | x) = mu(x0) / mu(x)."""
        mass = self.cylinder_mass(x)
        if mass == 0:
            raise ZeroMassError(f"{self.name}: cylinder {x[:32]!r} has measure zero")
        return self.cylinder_mass(x + "0") / mass

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class BernoulliMeasure(RecursiveMeasure):
    """Independent bits, each 1 with probability p."""

    def __init__(self, p: Fraction):
        p = Fraction(p)
        if not 0 <= p <= 1:
            raise ValueError("p must lie in [0, 1]")
        self.p = p
        self.name = f"bernoulli({p})"

    def cylinder_mass(self, x: str) -> Fraction:
        ones = x.count("1")
        return self.p**ones * (1 - self.p) ** (len(x) - ones)

    def conditional_zero(self, x: str) -> Fraction:
        # the cylinder is null only for a degenerate coin that saw its impossible bit
        if (self.p == 1 and "0" in x) or (self.p == 0 and "1" in x):
            raise ZeroMassError(f"{self.name}: cylinder {x[:32]!r} has measure zero")
        return 1 - self.p


class UniformMeasure(BernoulliMeasure):
    """Lebesgue measure lambda(Gamma_x) = 2**-l(x)."""

    def __init__(self):
        super().__init__(Fraction(1, 2))
        self.name = "lambda"

    def cylinder_mass(self, x: str) -> Fraction:
        return Fraction(1, 1 << len(x))


class PointMassMeasure(RecursiveMeasure):
    """All mass on the single sequence bit^infinity."""

    def __init__(self, bit: str = "0"):
        if bit not in ("0", "1"):
            raise ValueError("bit must be '0' or '1'")
        self.bit = bit
        self.name = f"point({bit}^inf)"

    def cylinder_mass(self, x: str) -> Fraction:
        return Fraction(1) if x.count(self.bit) == len(x) else Fraction(0)


def check_additivity(measure: RecursiveMeasure, max_len: int) -> bool:
    """mu(Gamma_eps) = 1 and mu(x) = mu(x0) + mu(x1) for every x up to max_len."""
    if measure.cylinder_mass("") != 1:
        return False
    return all(
        measure.cylinder_mass(x) == measure.cylinder_mass(x + "0") + measure.cylinder_mass(x + "1")
        for length in range(max_len + 1)
        for x in strings_of_length(length)
    )


def parse_measure(text: str) -> RecursiveMeasure:
    """``lambda``, ``bernoulli:P`` (P a fraction such as 3/4) or ``point:B``."""
    name, _, argument = text.strip().partition(":")
    if name == "lambda" and not argument:
        return UniformMeasure()
    if name == "bernoulli" and argument:
        return BernoulliMeasure(Fraction(argument))
    if name == "point":
        return PointMassMeasure(argument or "0")
    raise ValueError(f"unknown measure {text!r}; expected lambda, bernoulli:P or point:B")
