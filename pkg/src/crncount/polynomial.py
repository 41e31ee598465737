"""Exact sparse multivariate polynomials over sign-annotated indeterminates.

Indeterminates are concentrations, reaction rate constants, or abstract
kinetic partial derivatives; each carries a declared sign (+1, -1, or 0
for "strict sign exists but unknown").  Coefficients are arbitrary
precision integers, monomials are kept in a fixed canonical order, and
all operations are pure, so polynomials are safe to share concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

CONCENTRATION = 0
RATE_CONSTANT = 1
KINETIC_PARTIAL = 2

SIGN_UNKNOWN = 0

DEFAULT_MAX_DETERMINANT_DIM = 16


class DeterminantSizeError(ValueError):
    """Matrix dimension exceeds the configured expansion cap."""


@dataclass(frozen=True, order=True)
class Indeterminate:
    """A single symbol: kind, identifying key, declared sign, display name.

    The total order (kind, then key) fixes the canonical monomial form:
    concentrations come first, then rate constants, then kinetic partials.
    """

    kind: int
    key: tuple
    sign: int = 1
    name: str = field(compare=False, default="")

    def __repr__(self):
        return self.name or f"Indeterminate({self.kind}, {self.key})"


def concentration(index: int, name: str) -> Indeterminate:
    return Indeterminate(CONCENTRATION, (index,), 1, f"c[{name}]")


def rate_constant(reaction_label: str) -> Indeterminate:
    return Indeterminate(RATE_CONSTANT, (reaction_label,), 1, f"k[{reaction_label}]")


def kinetic_partial(reaction_label: str, species_index: int, species_name: str, sign: int) -> Indeterminate:
    if sign not in (-1, 0, 1):
        raise ValueError(f"declared sign must be -1, 0, or +1, got {sign}")
    return Indeterminate(KINETIC_PARTIAL, (reaction_label, species_index), sign, f"K[{reaction_label};{species_name}]")


# A monomial is a tuple of (indeterminate, exponent) pairs, sorted by
# indeterminate, exponents >= 1.  The empty tuple is the monomial 1.
Monomial = Tuple[Tuple[Indeterminate, int], ...]

ONE: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        xa, ea = a[i]
        xb, eb = b[j]
        if xa == xb:
            out.append((xa, ea + eb))
            i += 1
            j += 1
        elif xa < xb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if monomial a divides monomial b."""
    exps = dict(b)
    for x, e in a:
        if exps.get(x, 0) < e:
            return False
    return True


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """b / a, assuming a divides b."""
    exps = dict(b)
    for x, e in a:
        exps[x] -= e
    return tuple(sorted((x, e) for x, e in exps.items() if e > 0))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    eb = dict(b)
    return tuple((x, min(e, eb[x])) for x, e in a if x in eb and min(e, eb[x]) > 0)


def mono_restrict(m: Monomial, kind: int) -> Monomial:
    return tuple((x, e) for x, e in m if x.kind == kind)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_sign(m: Monomial) -> int:
    """Pointwise sign of the monomial on its declared domain, 0 if unknown."""
    sign = 1
    for x, e in m:
        if x.sign == SIGN_UNKNOWN:
            return SIGN_UNKNOWN
        if x.sign < 0 and e % 2:
            sign = -sign
    return sign


def mono_format(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(x.name if e == 1 else f"{x.name}^{e}" for x, e in m)


class Polynomial:
    """Immutable sparse polynomial: map from canonical monomial to nonzero int."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        self.terms: Dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c != 0}

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def constant(c: int) -> "Polynomial":
        return Polynomial({ONE: c} if c else {})

    @staticmethod
    def variable(x: Indeterminate) -> "Polynomial":
        return Polynomial({((x, 1),): 1})

    @staticmethod
    def term(coeff: int, mono: Monomial) -> "Polynomial":
        return Polynomial({mono: coeff} if coeff else {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        p = Polynomial.__new__(Polynomial)
        p.terms = out
        return p

    def __neg__(self) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            p = Polynomial.__new__(Polynomial)
            p.terms = {m: c * other for m, c in self.terms.items()} if other else {}
            return p
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        p = Polynomial.__new__(Polynomial)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def indeterminates(self) -> List[Indeterminate]:
        seen = set()
        for m in self.terms:
            for x, _ in m:
                seen.add(x)
        return sorted(seen)

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda item: item[0])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(f"{c}" if not m else f"{c}*{mono_format(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def render_terms(self) -> List[str]:
        """One text rendering per term, in canonical monomial order."""
        out = []
        for m, c in self.sorted_terms():
            out.append(f"{c}" if not m else f"{c}*{mono_format(m)}")
        return out


def differentiate(p: Polynomial, x: Indeterminate) -> Polynomial:
    """Formal partial derivative of p with respect to x."""
    out: Dict[Monomial, int] = {}
    for m, c in p.terms.items():
        for i, (xi, e) in enumerate(m):
            if xi == x:
                dm = m[:i] + ((xi, e - 1),) + m[i + 1 :] if e > 1 else m[:i] + m[i + 1 :]
                s = out.get(dm, 0) + c * e
                if s:
                    out[dm] = s
                else:
                    out.pop(dm, None)
                break
    return Polynomial(out)


def substitute(p: Polynomial, assignments: Mapping[Indeterminate, object]) -> Polynomial:
    """Exactly replace indeterminates by integers or polynomials."""
    subs = {x: (Polynomial.constant(v) if isinstance(v, int) else v) for x, v in assignments.items()}
    result = Polynomial.zero()
    for m, c in p.terms.items():
        factor = Polynomial.constant(c)
        for x, e in m:
            if x in subs:
                factor = factor * (subs[x] ** e)
            else:
                factor = factor * Polynomial.term(1, ((x, e),))
        result = result + factor
    return result


def evaluate(p: Polynomial, values: Mapping[Indeterminate, float]) -> float:
    """Numerically evaluate p; every indeterminate present must be bound."""
    total = 0.0
    for m, c in p.terms.items():
        v = float(c)
        for x, e in m:
            v *= values[x] ** e
        total += v
    return total


def determinant_expand(matrix: Sequence[Sequence[Polynomial]], max_dim: int = DEFAULT_MAX_DETERMINANT_DIM) -> Polynomial:
    """Fully expanded determinant of a square polynomial matrix.

    Laplace expansion with dynamic programming over column subsets
    (2^n states), exact integer arithmetic throughout.

    Raises:
        ValueError: on a non-square or empty matrix.
        DeterminantSizeError: when the dimension exceeds ``max_dim``.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square with n >= 1")
    if n > max_dim:
        raise DeterminantSizeError(f"matrix dimension {n} exceeds expansion cap {max_dim}")

    # Rows with fewer nonzero entries first keeps intermediate minors small.
    row_terms = [[row[j].terms for j in range(n)] for row in matrix]
    order = sorted(range(n), key=lambda i: sum(1 for t in row_terms[i] if t))
    parity = _permutation_sign(order)

    # level[mask] = raw term map of the minor using the first k ordered rows
    # and the columns in mask.
    level: Dict[int, Dict[Monomial, int]] = {0: {ONE: 1}}
    for k, i in enumerate(order):
        nxt: Dict[int, Dict[Monomial, int]] = {}
        for mask, minor in level.items():
            below = 0
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    below += 1
                    continue
                entry = row_terms[i][j]
                if not entry:
                    continue
                # Choosing column j at row k adds one inversion per already
                # chosen column above j; mask has k chosen columns in total.
                sign = -1 if (k + below) & 1 else 1
                acc = nxt.setdefault(mask | bit, {})
                for m1, c1 in entry.items():
                    c1s = c1 * sign
                    for m2, c2 in minor.items():
                        m = mono_mul(m1, m2)
                        s = acc.get(m, 0) + c1s * c2
                        if s:
                            acc[m] = s
                        else:
                            del acc[m]
        level = {mask: terms for mask, terms in nxt.items() if terms}
    full = (1 << n) - 1
    det = Polynomial(level.get(full, {}))
    return det * parity if parity < 0 else det


def _permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
