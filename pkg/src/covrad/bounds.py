"""Lower-bound certificates for multicovering radii.

Four families are evaluated, each sweeping a parameter ``s`` (permutations)
or ``x`` (matchings) and certifying ``cr_m >= n - s + 1`` (resp. ``n - x + 1``):

``union-perm``  ``|G| < C(n!, m) / (C((n-s)!, m) C(n, s))``
``lll-perm``    ``N_G(a, b) <= k_max`` with ``N = (n!/(n-s)!)^m``
``union-pm``    ``|M| < C(beta, m) / (C(beta_x, m) C(n, x))``
``lll-pm``      edge frequency ``<= k_max`` with ``N = W(n, x)^m``

Both local-lemma families share ``k_max = (N/e - 1) / divisor``, which is the
condition ``e p (d + 1) <= 1`` with ``p = 1/N`` and ``d = k * divisor``. All
arithmetic is exact over the rationals except the one division by e, which
uses a rational upper bound on e so that ``k_max`` can only be understated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import mpmath

from covrad.combinatorics import E_UPPER, binomial, factorial, pairings
from covrad.errors import DomainError
from covrad.matchings import MatchingCode, beta, beta_x, edge_frequency
from covrad.perms import max_frequency

UNBOUNDED = "unbounded"
NONE = "none"

FAMILIES = ("union-perm", "lll-perm", "union-pm", "lll-pm")
PERM_FAMILIES = ("union-perm", "lll-perm")
PM_FAMILIES = ("union-pm", "lll-pm")

Threshold = Union[Fraction, str]


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def _check_perm(n: int, m: int, s: int) -> None:
    _require(n >= 1, f"n must be >= 1, got {n}")
    _require(m >= 1, f"m must be >= 1, got {m}")
    _require(1 <= s <= n, f"s must satisfy 1 <= s <= n={n}, got {s}")


def _check_pm(n: int, m: int, x: int) -> None:
    _require(n >= 1, f"n must be >= 1, got {n}")
    _require(m >= 1, f"m must be >= 1, got {m}")
    _require(1 <= x <= n, f"x must satisfy 1 <= x <= n={n}, got {x}")


def union_perm_threshold(n: int, m: int, s: int) -> Threshold:
    """Exact bound T with ``|G| < T  =>  cr_m(G) >= n - s + 1``.

    Returns ``"unbounded"`` when fewer than m permutations can share s fixed
    values, since then no m-set can agree with a member on s positions.
    """
    _check_perm(n, m, s)
    agree = binomial(factorial(n - s), m)
    if agree == 0:
        return UNBOUNDED
    return Fraction(binomial(factorial(n), m), agree * binomial(n, s))


def union_pm_threshold(n: int, m: int, x: int) -> Threshold:
    """Matching analogue of :func:`union_perm_threshold` with beta and beta_x."""
    _check_pm(n, m, x)
    agree = binomial(beta_x(n, x), m)
    if agree == 0:
        return UNBOUNDED
    return Fraction(binomial(beta(n), m), agree * binomial(n, x))


def perm_degree_factor(n: int, s: int) -> int:
    """Dependency degree per unit of frequency: ``s (2n - s) C(n-1, s-1)``."""
    return s * (2 * n - s) * binomial(n - 1, s - 1)


def pm_degree_factor(n: int, x: int) -> int:
    """Dependency degree per unit of edge frequency: ``2x (2n - 1) C(n-1, x-1)``."""
    return 2 * x * (2 * n - 1) * binomial(n - 1, x - 1)


def w_count(n: int, x: int) -> int:
    """Number of ways to split the 2x vertices of an x-matching into singletons
    and pairs, with 2q singletons and r pairs subject to ``2q + r <= n``.

    Summed over the pair count r from ``max(0, 2x - n)`` to x.
    """
    _require(1 <= x <= n, f"x must satisfy 1 <= x <= n={n}, got {x}")
    return sum(binomial(2 * x, 2 * r) * pairings(2 * r) for r in range(max(0, 2 * x - n), x + 1))


def lll_perm_kmax(n: int, m: int, s: int, e: Fraction = E_UPPER) -> Fraction:
    """``(N/e - 1) / (s (2n - s) C(n-1, s-1))`` with ``N = (n!/(n-s)!)^m``."""
    _check_perm(n, m, s)
    big_n = (factorial(n) // factorial(n - s)) ** m
    return (big_n / e - 1) / perm_degree_factor(n, s)


def lll_pm_kmax(n: int, m: int, x: int, e: Fraction = E_UPPER) -> Fraction:
    """``(N/e - 1) / (2x (2n - 1) C(n-1, x-1))`` with ``N = w_count(n, x)^m``."""
    _check_pm(n, m, x)
    big_n = w_count(n, x) ** m
    return (big_n / e - 1) / pm_degree_factor(n, x)


def lll_perm_threshold(n: int, m: int, s: int) -> Threshold:
    """Certified frequency ceiling, or ``"none"`` when it is below 1."""
    kmax = lll_perm_kmax(n, m, s)
    return kmax if kmax >= 1 else NONE


def lll_pm_threshold(n: int, m: int, x: int) -> Threshold:
    kmax = lll_pm_kmax(n, m, x)
    return kmax if kmax >= 1 else NONE


def lll_perm_rhs_printed(n: int, m: int, s: int, dps: int = 50) -> mpmath.mpf:
    """The permutation ceiling in its factored textbook shape, in floating point.

    ``(n-s)!/((n-1)!(2n-s)) * (s-1)!/s * [n!/(n-s)!]^m * (1/e - [(n-s)!/n!]^m)``
    """
    _check_perm(n, m, s)
    with mpmath.workdps(dps):
        f = mpmath.factorial
        ratio = f(n) / f(n - s)
        return (f(n - s) / (f(n - 1) * (2 * n - s))) * (f(s - 1) / s) * ratio**m * (1 / mpmath.e - ratio ** (-m))


def lll_pm_rhs_printed(n: int, m: int, x: int, dps: int = 50) -> mpmath.mpf:
    """The matching ceiling in factored shape, in floating point.

    ``1/(2x(2n-1)C(n-1,x-1)) * Sigma^m * (1/e - Sigma^-m)`` where Sigma is the
    partition count summed term by term with mpmath.
    """
    _check_pm(n, m, x)
    with mpmath.workdps(dps):
        sigma = mpmath.mpf(0)
        for r in range(max(0, 2 * x - n), x + 1):
            sigma += mpmath.binomial(2 * x, 2 * r) * mpmath.factorial(2 * r) / (mpmath.factorial(r) * 2**r)
        lead = 1 / (2 * x * (2 * n - 1) * mpmath.binomial(n - 1, x - 1))
        return lead * sigma**m * (1 / mpmath.e - sigma ** (-m))


def threshold(family: str, n: int, m: int, param: int) -> Threshold:
    if family == "union-perm":
        return union_perm_threshold(n, m, param)
    if family == "lll-perm":
        return lll_perm_threshold(n, m, param)
    if family == "union-pm":
        return union_pm_threshold(n, m, param)
    if family == "lll-pm":
        return lll_pm_threshold(n, m, param)
    raise DomainError(f"unknown bound family {family!r}; expected one of {', '.join(FAMILIES)}")


def _threshold_str(t: Threshold) -> str:
    return t if isinstance(t, str) else str(t)


@dataclass(frozen=True)
class BoundReport:
    """One evaluated certificate.

    ``value`` is the code parameter tested against the threshold: the code
    size for union families, the maximum (edge) frequency for local-lemma
    families.
    """

    family: str
    n: int
    m: int
    param: int
    value: int
    threshold: Threshold
    satisfied: bool
    implied_bound: int | None

    @property
    def param_name(self) -> str:
        return "s" if self.family in PERM_FAMILIES else "x"

    @property
    def value_name(self) -> str:
        return "size" if self.family.startswith("union") else "k"

    def to_dict(self) -> dict:
        t = self.threshold
        return {
            "family": self.family,
            "n": self.n,
            "m": self.m,
            self.param_name: self.param,
            self.value_name: self.value,
            "threshold": _threshold_str(t),
            "threshold_float": None if isinstance(t, str) else float(t),
            "satisfied": self.satisfied,
            "implied_bound": NONE if self.implied_bound is None else self.implied_bound,
        }

    @classmethod
    def from_dict(cls, data: dict) -> BoundReport:
        family = data["family"]
        pname = "s" if family in PERM_FAMILIES else "x"
        vname = "size" if family.startswith("union") else "k"
        t = data["threshold"]
        ib = data["implied_bound"]
        return cls(
            family=family,
            n=data["n"],
            m=data["m"],
            param=data[pname],
            value=data[vname],
            threshold=t if t in (UNBOUNDED, NONE) else Fraction(t),
            satisfied=data["satisfied"],
            implied_bound=None if ib == NONE else ib,
        )


def evaluate(family: str, n: int, m: int, param: int, value: int) -> BoundReport:
    """Test a code parameter against one family's threshold.

    Union families need ``value < threshold``; local-lemma families need
    ``value <= threshold``.
    """
    if value < 1:
        raise DomainError(f"code size / frequency must be >= 1, got {value}")
    t = threshold(family, n, m, param)
    if t == UNBOUNDED:
        ok = True
    elif t == NONE:
        ok = False
    elif family.startswith("union"):
        ok = value < t
    else:
        ok = value <= t
    return BoundReport(family, n, m, param, value, t, ok, n - param + 1 if ok else None)


@dataclass
class BoundSweep:
    reports: list[BoundReport] = field(default_factory=list)

    @property
    def best(self) -> int:
        """Strongest certified lower bound, 0 when nothing is certified."""
        return max((r.implied_bound for r in self.reports if r.satisfied), default=0)

    def to_dict(self) -> dict:
        return {"reports": [r.to_dict() for r in self.reports], "best_certified_lower_bound": self.best}


def best_bound(structure: str, n: int, m: int, size: int | None = None, k: int | None = None) -> BoundSweep:
    """Evaluate every applicable family over every s (or x) in 1..n.

    Union families run when ``size`` is given, local-lemma families when the
    frequency ``k`` is given.
    """
    if structure in ("perm", "permutation"):
        families = PERM_FAMILIES
    elif structure in ("pm", "matching"):
        families = PM_FAMILIES
    else:
        raise DomainError(f"unknown structure {structure!r}")
    sweep = BoundSweep()
    for fam in families:
        value = size if fam.startswith("union") else k
        if value is None:
            continue
        for param in range(1, n + 1):
            sweep.reports.append(evaluate(fam, n, m, param, value))
    return sweep


def code_bounds(code, m: int) -> BoundSweep:
    """All certificates for a concrete code, from its size and maximum frequency."""
    if isinstance(code, MatchingCode):
        return best_bound("matching", code.n, m, size=len(code), k=edge_frequency(code)[1])
    return best_bound("perm", code.n, m, size=len(code), k=max_frequency(code))
