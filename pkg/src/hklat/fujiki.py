"""Exact Fujiki-relation expansion.

The implemented identity is  integral(alpha^{2n}) = c * q(alpha)^n.  Writing
alpha = sum_i t_i D_i and expanding q(alpha)^n as a polynomial in the t_i
gives every top intersection number

    D_0^{e_0} ... D_k^{e_k}
        = (prod_i e_i!) / (2n)! * c * [t^e] q(sum t_i D_i)^n.

All arithmetic is over Fraction; no floating point.  Unknown Gram entries are
carried as extra polynomial variables and recovered by exact coefficient
matching plus divisor-based rational-root extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import InconsistencyError, ResourceError, UsageError

# polynomial: exponent tuple -> Fraction, zero coefficients dropped
Poly = dict[tuple[int, ...], Fraction]


def _poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for e, c in q.items():
        c2 = out.get(e, Fraction(0)) + c
        if c2:
            out[e] = c2
        else:
            out.pop(e, None)
    return out


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            c = out.get(e, Fraction(0)) + c1 * c2
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def _poly_pow(p: Poly, n: int, nvars: int) -> Poly:
    out: Poly = {(0,) * nvars: Fraction(1)}
    for _ in range(n):
        out = _poly_mul(out, p)
    return out


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise UsageError(f"expected an exact rational, got {x!r}")


@dataclass(frozen=True)
class BBForm:
    """Beauville-Bogomolov data: Gram matrix, half-dimension n, Fujiki constant c."""

    rank: int
    gram: tuple[tuple[Fraction, ...], ...]
    n: int
    c: Fraction

    def __post_init__(self):
        gram = tuple(
            tuple(_as_fraction(x) for x in row) for row in self.gram
        )
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "c", _as_fraction(self.c))
        if self.rank < 1:
            raise UsageError("rank must be positive")
        if len(gram) != self.rank or any(len(r) != self.rank for r in gram):
            raise UsageError(f"gram must be {self.rank}x{self.rank}")
        for i in range(self.rank):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise UsageError("gram matrix must be symmetric")
        if self.n < 1:
            raise UsageError("half-dimension n must be positive")
        if self.c <= 0:
            raise UsageError("Fujiki constant must be positive")


OG10_N = 5
OG10_FUJIKI_CONSTANT = Fraction(945)


def og10_l_theta_form(q_theta=Fraction(-2)) -> BBForm:
    """The <L, Theta> form of the intermediate Jacobian fibration."""
    return BBForm(
        2,
        ((Fraction(0), Fraction(1)), (Fraction(1), _as_fraction(q_theta))),
        OG10_N,
        OG10_FUJIKI_CONSTANT,
    )


def _check_exponents(form: BBForm, exponents) -> tuple[int, ...]:
    e = tuple(int(x) for x in exponents)
    if len(e) != form.rank:
        raise UsageError(
            f"expected {form.rank} exponents, got {len(e)}"
        )
    if any(x < 0 for x in e):
        raise UsageError("exponents must be nonnegative")
    if sum(e) != 2 * form.n:
        raise UsageError(
            f"exponents must sum to 2n = {2 * form.n}, got {sum(e)}"
        )
    return e


def _q_poly(form: BBForm) -> Poly:
    r = form.rank
    q: Poly = {}
    for i in range(r):
        for j in range(i, r):
            coeff = form.gram[i][j] if i == j else 2 * form.gram[i][j]
            if not coeff:
                continue
            e = tuple(
                (2 if k == i == j else 1 if k in (i, j) else 0) for k in range(r)
            )
            q = _poly_add(q, {e: coeff})
    return q


def _multinomial_factor(form: BBForm, e: tuple[int, ...]) -> Fraction:
    num = 1
    for x in e:
        num *= factorial(x)
    return Fraction(num, factorial(2 * form.n))


def top_intersection(form: BBForm, exponents) -> Fraction:
    """D_0^{e_0} ... D_{r-1}^{e_{r-1}} from the Fujiki relation."""
    e = _check_exponents(form, exponents)
    qn = _poly_pow(_q_poly(form), form.n, form.rank)
    coeff = qn.get(e, Fraction(0))
    return form.c * coeff * _multinomial_factor(form, e)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


@dataclass(frozen=True)
class IntersectionTable:
    entries: dict

    def to_json(self) -> dict:
        out = {}
        for e, v in self.entries.items():
            key = ",".join(str(x) for x in e)
            out[key] = str(v.numerator) if v.denominator == 1 else str(v)
        return out


def full_table(form: BBForm, require_integral: bool = False) -> IntersectionTable:
    """All top intersection numbers, indexed by exponent tuples summing to 2n."""
    if form.rank > 4:
        raise ResourceError("full tables are guarded to rank <= 4")
    qn = _poly_pow(_q_poly(form), form.n, form.rank)
    mono = _multinomial_factor
    entries = {}
    for e in _compositions(2 * form.n, form.rank):
        v = form.c * qn.get(e, Fraction(0)) * mono(form, e)
        if require_integral and v.denominator != 1:
            raise InconsistencyError(
                f"intersection number for exponents {e} is non-integral: {v}"
            )
        entries[e] = v
    return IntersectionTable(entries)


# ---------------------------------------------------------------------------
# solving for unknown Gram entries


def _rational_roots(coeffs: dict[int, Fraction]):
    """All rational roots of sum coeffs[k] x^k, plus the residual degree.

    Roots are found by divisor search on the primitive integer polynomial;
    the residual degree counts the non-rational part left after deflation.
    """
    coeffs = {k: v for k, v in coeffs.items() if v}
    if not coeffs:
        return None, 0  # identically zero
    deg = max(coeffs)
    if deg == 0:
        return [], 0  # nonzero constant: no roots
    den = 1
    for v in coeffs.values():
        den = den * v.denominator // _gcd(den, v.denominator)
    ic = {k: int(v * den) for k, v in coeffs.items()}
    roots = []
    # strip x^k factor
    low = min(ic)
    if low > 0:
        roots.append(Fraction(0))
        ic = {k - low: v for k, v in ic.items()}
        deg -= low
    if deg == 0:
        return roots, 0
    a0 = abs(ic.get(0, 0))
    an = abs(ic[max(ic)])
    candidates = set()
    for p in _divisors(a0):
        for q in _divisors(an):
            candidates.add(Fraction(p, q))
            candidates.add(Fraction(-p, q))
    poly = [ic.get(k, 0) for k in range(deg + 1)]
    for cand in sorted(candidates):
        while _eval_poly(poly, cand) == 0:
            roots.append(cand)
            poly = _deflate(poly, cand)
            if len(poly) == 1:
                break
        if len(poly) == 1:
            break
    return sorted(set(roots)), len(poly) - 1


def _gcd(a: int, b: int) -> int:
    from math import gcd as g

    return g(a, b)


def _divisors(n: int):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            if k != n // k:
                out.append(n // k)
        k += 1
    return out


def _eval_poly(poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _deflate(poly, root: Fraction):
    # synthetic division by (x - root); assumes exact divisibility
    out = [Fraction(0)] * (len(poly) - 1)
    carry = Fraction(0)
    for k in range(len(poly) - 1, 0, -1):
        carry = poly[k] + carry
        out[k - 1] = carry
        carry = carry * root
    return out


@dataclass(frozen=True)
class GramSolveResult:
    solutions: tuple[dict, ...]  # name -> Fraction, one dict per solution
    undetermined: tuple[str, ...]
    residuals: tuple[str, ...]

    def to_json(self) -> dict:
        def render(v: Fraction) -> str:
            return str(v.numerator) if v.denominator == 1 else str(v)

        return {
            "solutions": [
                {k: render(v) for k, v in sol.items()} for sol in self.solutions
            ],
            "undetermined": list(self.undetermined),
            "residuals": list(self.residuals),
        }


def _substitute(eq: Poly, idx: int, value: Fraction) -> Poly:
    out: Poly = {}
    for e, c in eq.items():
        c2 = c * value ** e[idx]
        e2 = e[:idx] + (0,) + e[idx + 1 :]
        acc = out.get(e2, Fraction(0)) + c2
        if acc:
            out[e2] = acc
        else:
            out.pop(e2, None)
    return out


def solve_gram(rank: int, entries, n: int, c, constraints) -> GramSolveResult:
    """Recover unknown Gram entries from known top intersection numbers.

    ``entries`` is a rank x rank array whose cells are exact rationals or
    strings naming an unknown; symmetric cells must agree.  ``constraints``
    is a list of (exponents, value) pairs.  Returns every rational solution;
    non-rational root content is reported in ``residuals``.
    """
    c = _as_fraction(c)
    if rank < 1 or n < 1 or c <= 0:
        raise UsageError("rank and n must be positive and c > 0")
    names: list[str] = []
    for i in range(rank):
        for j in range(rank):
            cell = entries[i][j]
            if entries[j][i] != cell:
                raise UsageError(f"gram template is not symmetric at ({i},{j})")
            if isinstance(cell, str) and not _is_rational_literal(cell):
                if cell not in names:
                    names.append(cell)
    if len(names) > 2:
        raise UsageError("at most 2 unknown entries are supported")
    k = len(names)
    nvars = rank + k

    def cell_poly(i, j) -> Poly:
        cell = entries[i][j]
        if isinstance(cell, str) and not _is_rational_literal(cell):
            e = [0] * nvars
            e[rank + names.index(cell)] = 1
            return {tuple(e): Fraction(1)}
        v = _as_fraction(cell)
        return {(0,) * nvars: v} if v else {}

    q: Poly = {}
    for i in range(rank):
        for j in range(i, rank):
            cp = cell_poly(i, j)
            if not cp:
                continue
            factor = Fraction(1) if i == j else Fraction(2)
            te = [0] * nvars
            te[i] += 1
            te[j] += 1
            term = {
                tuple(x + y for x, y in zip(tuple(te), e)): factor * cf
                for e, cf in cp.items()
            }
            q = _poly_add(q, term)
    qn = _poly_pow(q, n, nvars)

    equations: list[Poly] = []
    for exponents, value in constraints:
        e = tuple(int(x) for x in exponents)
        if len(e) != rank or sum(e) != 2 * n or any(x < 0 for x in e):
            raise UsageError(f"bad constraint exponents {e}: must sum to 2n = {2 * n}")
        value = _as_fraction(value)
        num = 1
        for x in e:
            num *= factorial(x)
        factor = c * Fraction(num, factorial(2 * n))
        eq: Poly = {}
        for full_e, cf in qn.items():
            if full_e[:rank] == e:
                eq[full_e[rank:]] = cf * factor
        const = eq.get((0,) * k, Fraction(0)) - value
        if const:
            eq[(0,) * k] = const
        else:
            eq.pop((0,) * k, None)
        equations.append(eq)

    solutions: list[dict] = []
    residuals: list[str] = []
    appearing = set()
    for eq in equations:
        for e in eq:
            for idx, x in enumerate(e):
                if x:
                    appearing.add(idx)

    def dfs(eqs: list[Poly], assignment: dict):
        eqs = [e for e in eqs if e]
        for eq in eqs:
            if list(eq) == [(0,) * k]:
                residuals.append(_render_eq(eq, names))
                return
        if not eqs:
            sol = {names[i]: v for i, v in sorted(assignment.items())}
            if sol not in solutions:
                solutions.append(sol)
            return
        for eq in eqs:
            used = {i for e in eq for i, x in enumerate(e) if x}
            if len(used) == 1:
                idx = used.pop()
                coeffs = {e[idx]: cf for e, cf in eq.items()}
                roots, residual_deg = _rational_roots(coeffs)
                if roots is None:
                    continue  # identically satisfied
                if residual_deg > 0:
                    residuals.append(_render_eq(eq, names))
                if not roots:
                    return
                rest = [e2 for e2 in eqs if e2 is not eq]
                for root in roots:
                    sub = [_substitute(e2, idx, root) for e2 in rest]
                    dfs(sub, {**assignment, idx: root})
                return
        raise UsageError(
            "cannot isolate unknowns "
            + ", ".join(names[i] for i in sorted(appearing))
            + ": constraints are jointly multivariate"
        )

    dfs(equations, {})
    undetermined = tuple(
        names[i] for i in range(k) if i not in appearing
    )
    return GramSolveResult(
        solutions=tuple(solutions),
        undetermined=undetermined,
        residuals=tuple(dict.fromkeys(residuals)),
    )


def _is_rational_literal(s: str) -> bool:
    try:
        Fraction(s)
        return True
    except (ValueError, ZeroDivisionError):
        return False


def _render_eq(eq: Poly, names: list[str]) -> str:
    terms = []
    for e, cf in sorted(eq.items(), reverse=True):
        mono = "*".join(
            f"{names[i]}^{x}" if x > 1 else names[i]
            for i, x in enumerate(e)
            if x
        )
        terms.append(f"{cf}*{mono}" if mono else str(cf))
    return " + ".join(terms) + " = 0"
