"""Exact integer linear constraint systems with floor-division variables.

Variables are positional: ids below ``ndim`` are tuple dimensions, ids from
``ndim`` upward are floor-division variables, each carrying an explicit
definition q = floor(expr / d) over dimensions and earlier divs.  Every
existential variable is functionally determined by the dimensions, which is
what makes complementation (and hence exact subtraction) possible without
quantifier reasoning.

Projection is exact: equality-determined variables are substituted away,
everything else goes through Fourier-Motzkin elimination with the integer
corrections (dark shadow plus splinter cases) that keep the result an exact
integer projection rather than a rational approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class LinExpr:
    """const + sum(coeff * var) with integer coefficients, immutable."""

    __slots__ = ("const", "coeffs")

    def __init__(self, const: int = 0, coeffs: dict[int, int] | None = None):
        object.__setattr__(self, "const", const)
        object.__setattr__(
            self, "coeffs", {v: c for v, c in (coeffs or {}).items() if c != 0}
        )

    def __setattr__(self, name, value):
        raise AttributeError("LinExpr is immutable")

    @staticmethod
    def var(v: int, coeff: int = 1) -> "LinExpr":
        return LinExpr(0, {v: coeff})

    def coeff(self, v: int) -> int:
        return self.coeffs.get(v, 0)

    def vars(self) -> set[int]:
        return set(self.coeffs)

    def is_const(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LinExpr | int") -> "LinExpr":
        if isinstance(other, int):
            return LinExpr(self.const + other, self.coeffs)
        coeffs = dict(self.coeffs)
        for v, c in other.coeffs.items():
            coeffs[v] = coeffs.get(v, 0) + c
        return LinExpr(self.const + other.const, coeffs)

    def __sub__(self, other: "LinExpr | int") -> "LinExpr":
        if isinstance(other, int):
            return LinExpr(self.const - other, self.coeffs)
        return self + (-other)

    def __neg__(self) -> "LinExpr":
        return LinExpr(-self.const, {v: -c for v, c in self.coeffs.items()})

    def scale(self, k: int) -> "LinExpr":
        if k == 0:
            return LinExpr(0)
        return LinExpr(self.const * k, {v: c * k for v, c in self.coeffs.items()})

    def drop(self, v: int) -> "LinExpr":
        coeffs = dict(self.coeffs)
        coeffs.pop(v, None)
        return LinExpr(self.const, coeffs)

    def subst(self, v: int, repl: "LinExpr") -> "LinExpr":
        c = self.coeffs.get(v, 0)
        if c == 0:
            return self
        return self.drop(v) + repl.scale(c)

    def rename(self, mapping: dict[int, int]) -> "LinExpr":
        return LinExpr(
            self.const, {mapping.get(v, v): c for v, c in self.coeffs.items()}
        )

    def eval(self, values: dict[int, int]) -> int:
        return self.const + sum(c * values[v] for v, c in self.coeffs.items())

    def content(self) -> int:
        """gcd of the variable coefficients (0 for constant expressions)."""
        g = 0
        for c in self.coeffs.values():
            g = gcd(g, abs(c))
        return g

    def key(self) -> tuple:
        return (self.const, tuple(sorted(self.coeffs.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, LinExpr) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        parts = []
        for v, c in sorted(self.coeffs.items()):
            parts.append(f"{c:+d}*x{v}")
        parts.append(f"{self.const:+d}")
        return "".join(parts)


@dataclass(frozen=True)
class DivDef:
    """q = floor(expr / div); expr references only lower variable ids."""

    expr: LinExpr
    div: int

    def key(self) -> tuple:
        return (self.expr.key(), self.div)


def _canonical_div(expr: LinExpr, div: int) -> tuple[LinExpr, int, int]:
    """Reduce a div definition; returns (expr, div, shift).

    floor((f + k*d)/d) = floor(f/d) + k, and common factors of all
    coefficients and the divisor cancel.
    """
    g = gcd(expr.content(), gcd(abs(expr.const), div))
    if g > 1:
        expr = LinExpr(expr.const // g, {v: c // g for v, c in expr.coeffs.items()})
        div //= g
    shift = expr.const // div
    if shift:
        expr = expr - shift * div
    return expr, div, shift


class System:
    """Mutable builder for a conjunction of constraints plus div definitions.

    eqs hold expressions equal to zero, ineqs expressions >= 0.
    """

    def __init__(self, ndim: int):
        self.ndim = ndim
        self.divs: list[DivDef | None] = []  # None marks a removed div slot
        self.eqs: list[LinExpr] = []
        self.ineqs: list[LinExpr] = []
        self.false = False

    def copy(self) -> "System":
        s = System(self.ndim)
        s.divs = list(self.divs)
        s.eqs = list(self.eqs)
        s.ineqs = list(self.ineqs)
        s.false = self.false
        return s

    def nvar(self) -> int:
        return self.ndim + len(self.divs)

    def div_id(self, idx: int) -> int:
        return self.ndim + idx

    def div_of(self, var: int) -> DivDef | None:
        if var < self.ndim:
            return None
        return self.divs[var - self.ndim]

    def add_loose(self) -> int:
        """Allocate a plain existential variable (no definition).

        Only used transiently during elimination; every loose variable must be
        eliminated before the system becomes a BasicSet again.
        """
        self.divs.append(None)
        return self.div_id(len(self.divs) - 1)

    def add_div(self, expr: LinExpr, div: int) -> LinExpr:
        """Register floor(expr/div); returns it as an expression (var + shift)."""
        if div <= 0:
            raise ValueError("divisor must be positive")
        if expr.is_const():
            return LinExpr(expr.const // div)
        expr, div, shift = _canonical_div(expr, div)
        key = (expr.key(), div)
        for i, d in enumerate(self.divs):
            if d is not None and d.key() == key:
                return LinExpr.var(self.div_id(i)) + shift
        self.divs.append(DivDef(expr, div))
        return LinExpr.var(self.div_id(len(self.divs) - 1)) + shift

    def div_bound_ineqs(self, var: int) -> list[LinExpr]:
        """Defining inequalities d*q <= f <= d*q + d - 1 for div variable var."""
        d = self.div_of(var)
        assert d is not None
        q = LinExpr.var(var)
        return [d.expr - q.scale(d.div), q.scale(d.div) + (d.div - 1) - d.expr]

    def add_eq(self, e: LinExpr) -> None:
        if self.false:
            return
        g = e.content()
        if g == 0:
            if e.const != 0:
                self.false = True
            return
        if e.const % g != 0:
            self.false = True
            return
        if g > 1:
            e = LinExpr(e.const // g, {v: c // g for v, c in e.coeffs.items()})
        # sign-normalize on the smallest variable
        vmin = min(e.coeffs)
        if e.coeffs[vmin] < 0:
            e = -e
        self.eqs.append(e)

    def add_ineq(self, e: LinExpr) -> None:
        if self.false:
            return
        g = e.content()
        if g == 0:
            if e.const < 0:
                self.false = True
            return
        if g > 1:
            # a/g integral, so a + c >= 0 tightens to a/g + floor(c/g) >= 0
            e = LinExpr(e.const // g, {v: c // g for v, c in e.coeffs.items()})
        self.ineqs.append(e)

    def subst_var(self, var: int, repl: LinExpr) -> None:
        """Replace var everywhere; var must not occur in repl."""
        assert var not in repl.coeffs
        eqs, ineqs = self.eqs, self.ineqs
        self.eqs, self.ineqs = [], []
        for e in eqs:
            self.add_eq(e.subst(var, repl))
        for e in ineqs:
            self.add_ineq(e.subst(var, repl))
        for i, d in enumerate(self.divs):
            if d is not None and var in d.expr.coeffs:
                self.divs[i] = DivDef(d.expr.subst(var, repl), d.div)

    def vars_used(self) -> set[int]:
        used: set[int] = set()
        for e in self.eqs:
            used |= e.vars()
        for e in self.ineqs:
            used |= e.vars()
        changed = True
        while changed:
            changed = False
            for i, d in enumerate(self.divs):
                if d is None:
                    continue
                v = self.div_id(i)
                if v in used and not d.expr.vars() <= used:
                    used |= d.expr.vars()
                    changed = True
        return used


# ---------------------------------------------------------------------------
# BasicSet: immutable normalized conjunction


class BasicSet:
    """Conjunction of integer linear constraints over ndim dimensions.

    Existential variables are all floor-divisions with explicit definitions;
    their ids follow the dimension ids.
    """

    __slots__ = ("ndim", "divs", "eqs", "ineqs", "_false", "_empty")

    def __init__(
        self,
        ndim: int,
        divs: tuple[DivDef, ...] = (),
        eqs: tuple[LinExpr, ...] = (),
        ineqs: tuple[LinExpr, ...] = (),
        false: bool = False,
    ):
        self.ndim = ndim
        self.divs = divs
        self.eqs = eqs
        self.ineqs = ineqs
        self._false = false
        self._empty: bool | None = True if false else None

    @staticmethod
    def universe(ndim: int) -> "BasicSet":
        return BasicSet(ndim)

    @staticmethod
    def empty(ndim: int) -> "BasicSet":
        return BasicSet(ndim, false=True)

    @staticmethod
    def from_system(sys: System) -> "BasicSet":
        if sys.false:
            return BasicSet.empty(sys.ndim)
        sys = _compact_divs(sys)
        eqs, ineqs, false = _normalize_constraints(sys)
        if false:
            return BasicSet.empty(sys.ndim)
        return BasicSet(sys.ndim, tuple(d for d in sys.divs), eqs, ineqs)

    def to_system(self) -> System:
        s = System(self.ndim)
        s.divs = list(self.divs)
        s.eqs = list(self.eqs)
        s.ineqs = list(self.ineqs)
        s.false = self._false
        return s

    @property
    def is_false(self) -> bool:
        return self._false

    def key(self) -> tuple:
        if self._false:
            return (self.ndim, "false")
        return (
            self.ndim,
            tuple(d.key() for d in self.divs),
            tuple(sorted(e.key() for e in self.eqs)),
            tuple(sorted(e.key() for e in self.ineqs)),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, BasicSet) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        if self._false:
            return f"BasicSet({self.ndim}, false)"
        return (
            f"BasicSet({self.ndim}, divs={list(self.divs)}, "
            f"eqs={list(self.eqs)}, ineqs={list(self.ineqs)})"
        )

    # -- point tests --------------------------------------------------------

    def div_values(self, point: tuple[int, ...]) -> dict[int, int] | None:
        values = {i: point[i] for i in range(self.ndim)}
        for i, d in enumerate(self.divs):
            num = d.expr.eval(values)
            values[self.ndim + i] = num // d.div
        return values

    def contains(self, point: tuple[int, ...]) -> bool:
        if self._false:
            return False
        values = self.div_values(point)
        return all(e.eval(values) == 0 for e in self.eqs) and all(
            e.eval(values) >= 0 for e in self.ineqs
        )

    # -- algebra -------------------------------------------------------------

    def intersect(self, other: "BasicSet") -> "BasicSet":
        assert self.ndim == other.ndim
        if self._false or other._false:
            return BasicSet.empty(self.ndim)
        sys, mapped = _merge_into(self.to_system(), other)
        for e in mapped.eqs:
            sys.add_eq(e)
        for e in mapped.ineqs:
            sys.add_ineq(e)
        return BasicSet.from_system(sys)

    def with_constraints(
        self, eqs: list[LinExpr] = (), ineqs: list[LinExpr] = ()
    ) -> "BasicSet":
        sys = self.to_system()
        for e in eqs:
            sys.add_eq(e)
        for e in ineqs:
            sys.add_ineq(e)
        return BasicSet.from_system(sys)

    def subtract(self, other: "BasicSet") -> list["BasicSet"]:
        """self minus other, as pairwise-disjoint basic sets."""
        assert self.ndim == other.ndim
        if self._false:
            return []
        if other._false:
            return [self]
        sys, mapped = _merge_into(self.to_system(), other)
        pieces: list[BasicSet] = []
        acc = sys
        for e in mapped.eqs:
            for neg in (e - 1, -e - 1):
                branch = acc.copy()
                branch.add_ineq(neg)
                piece = BasicSet.from_system(branch)
                if not piece.is_empty():
                    pieces.append(piece)
            acc.add_eq(e)
        for e in mapped.ineqs:
            branch = acc.copy()
            branch.add_ineq(-e - 1)
            piece = BasicSet.from_system(branch)
            if not piece.is_empty():
                pieces.append(piece)
            acc.add_ineq(e)
        return pieces

    def project(self, keep: list[int]) -> list["BasicSet"]:
        """Exact projection onto the given dims, reordered as requested."""
        kill = [v for v in range(self.ndim) if v not in keep]
        pieces = eliminate(self, kill)
        order = {old: new for new, old in enumerate(keep)}
        return [p.reorder_dims(order, len(keep)) for p in pieces]

    def reorder_dims(self, mapping: dict[int, int], new_ndim: int) -> "BasicSet":
        """Renumber dims via mapping (old dim -> new dim); divs follow."""
        if self._false:
            return BasicSet.empty(new_ndim)
        full = dict(mapping)
        for i in range(len(self.divs)):
            full[self.ndim + i] = new_ndim + i
        divs = tuple(DivDef(d.expr.rename(full), d.div) for d in self.divs)
        return BasicSet(
            new_ndim,
            divs,
            tuple(e.rename(full) for e in self.eqs),
            tuple(e.rename(full) for e in self.ineqs),
        )

    def lift(self, new_ndim: int, offset: int = 0) -> "BasicSet":
        """Embed into a wider space, shifting dims by offset."""
        assert self.ndim + offset <= new_ndim
        return self.reorder_dims(
            {v: v + offset for v in range(self.ndim)}, new_ndim
        )

    # -- emptiness -----------------------------------------------------------

    def is_empty(self) -> bool:
        if self._empty is None:
            self._empty = self._compute_empty()
        return self._empty

    def _compute_empty(self) -> bool:
        if self._false:
            return True
        if not self.eqs and not self.ineqs:
            return False
        box = interval_hull(self)
        if box is None:
            return True
        pieces = eliminate(self, list(range(self.ndim)), compact=False)
        return not pieces

    def bounds_box(self) -> list[tuple[int | None, int | None]] | None:
        """Per-dim lower/upper bounds from interval propagation (may be None)."""
        box = interval_hull(self)
        if box is None:
            return None
        return box[: self.ndim]


def _merge_into(sys: System, other: BasicSet) -> tuple[System, System]:
    """Merge other's divs into sys; returns (sys, other's constraints rewritten)."""
    repl: dict[int, LinExpr] = {}

    def rewrite(e: LinExpr) -> LinExpr:
        out = LinExpr(e.const)
        for v, c in e.coeffs.items():
            out = out + (repl[v].scale(c) if v in repl else LinExpr.var(v, c))
        return out

    for i, d in enumerate(other.divs):
        expr = rewrite(d.expr)
        repl[other.ndim + i] = sys.add_div(expr, d.div)
    remapped = System(sys.ndim)
    remapped.eqs = [rewrite(e) for e in other.eqs]
    remapped.ineqs = [rewrite(e) for e in other.ineqs]
    return sys, remapped


def _normalize_constraints(
    sys: System,
) -> tuple[tuple[LinExpr, ...], tuple[LinExpr, ...], bool]:
    """Dedupe, fold opposite inequality pairs into equalities, detect falsity."""
    eqs: dict[tuple, LinExpr] = {}
    for e in sys.eqs:
        eqs[e.key()] = e
    by_coeffs: dict[tuple, int] = {}
    for e in sys.ineqs:
        ck = tuple(sorted(e.coeffs.items()))
        if ck in by_coeffs:
            by_coeffs[ck] = min(by_coeffs[ck], e.const)
        else:
            by_coeffs[ck] = e.const
    ineqs: list[LinExpr] = []
    seen: set[tuple] = set()
    for ck, const in by_coeffs.items():
        if ck in seen:
            continue
        neg_ck = tuple(sorted((v, -c) for v, c in ck))
        if neg_ck in by_coeffs:
            nconst = by_coeffs[neg_ck]
            if const + nconst < 0:
                return (), (), True
            if const + nconst == 0:
                e = LinExpr(const, dict(ck))
                vmin = min(e.coeffs)
                if e.coeffs[vmin] < 0:
                    e = -e
                eqs[e.key()] = e
                seen.add(ck)
                seen.add(neg_ck)
                continue
        ineqs.append(LinExpr(const, dict(ck)))
        seen.add(ck)
    # drop inequalities directly implied by an equality with the same coeffs
    eq_keys = set()
    for e in eqs.values():
        eq_keys.add((tuple(sorted(e.coeffs.items())), e.const))
        ne = -e
        eq_keys.add((tuple(sorted(ne.coeffs.items())), ne.const))
    kept = []
    for e in ineqs:
        k = (tuple(sorted(e.coeffs.items())), e.const)
        if k in eq_keys:
            continue
        kept.append(e)
    return tuple(eqs.values()), tuple(kept), False


def _compact_divs(sys: System) -> System:
    """Drop unused div slots and renumber; keeps definition order."""
    used = sys.vars_used()
    for i, d in enumerate(sys.divs):
        assert d is not None or sys.div_id(i) not in used, "dangling div"
    keep = [
        i
        for i, d in enumerate(sys.divs)
        if d is not None and sys.div_id(i) in used
    ]
    if len(keep) == len(sys.divs):
        return sys
    mapping = {sys.div_id(old): sys.ndim + new for new, old in enumerate(keep)}
    out = System(sys.ndim)
    out.false = sys.false
    out.divs = [
        DivDef(sys.divs[i].expr.rename(mapping), sys.divs[i].div) for i in keep
    ]
    out.eqs = [e.rename(mapping) for e in sys.eqs]
    out.ineqs = [e.rename(mapping) for e in sys.ineqs]
    return out


# ---------------------------------------------------------------------------
# Exact elimination (equality substitution + omega-style Fourier-Motzkin)


class EliminationError(RuntimeError):
    """Raised when exact projection exceeds its work budget."""


def eliminate(
    bset: BasicSet, kill: list[int], compact: bool = True
) -> list[BasicSet]:
    """Project away the given variable ids (dims and/or divs), exactly.

    Returns a union of basic sets (possibly overlapping) over the remaining
    variables.  When ``compact`` is set the surviving dims are renumbered
    densely in their original order.
    """
    if bset.is_false:
        return []
    if not kill:
        return [bset]
    work = [(bset.to_system(), set(kill))]
    done: list[System] = []
    guard = 0
    while work:
        guard += 1
        if guard > 50000:
            raise EliminationError("elimination work budget exceeded")
        sys, pending = work.pop()
        if sys.false:
            continue
        # Retained divs whose definition mentions a pending var are themselves
        # existential over doomed variables: materialize their defining
        # inequalities and schedule them for elimination too.  This keeps
        # later substitutions from ever writing into a div definition that
        # mentions the substituted variable.
        changed = True
        while changed:
            changed = False
            for i, d in enumerate(sys.divs):
                if d is None:
                    continue
                v = sys.div_id(i)
                if v in pending:
                    continue
                if d.expr.vars() & pending:
                    pending.add(v)
                    changed = True
        for i, d in enumerate(sys.divs):
            if d is not None and sys.div_id(i) in pending:
                for b in sys.div_bound_ineqs(sys.div_id(i)):
                    sys.add_ineq(b)
                sys.divs[i] = None
        pending = {v for v in pending if _occurs(sys, v)}
        if not pending:
            done.append(sys)
            continue
        y = _pick_kill_var(sys, pending)
        for branch, eliminated in _eliminate_step(sys, y, pending):
            work.append((branch, pending - {eliminated}))
    out: list[BasicSet] = []
    for sys in done:
        if compact:
            sys = _compact_killed_dims(sys, kill)
        b = BasicSet.from_system(sys)
        if not b.is_false:
            out.append(b)
    return out


def _occurs(sys: System, v: int) -> bool:
    return (
        any(e.coeff(v) for e in sys.eqs)
        or any(e.coeff(v) for e in sys.ineqs)
        or any(d is not None and d.expr.coeff(v) for d in sys.divs)
    )


def _pick_kill_var(sys: System, pending: set[int]) -> int:
    best, best_rank = None, None
    for y in pending:
        eq_c = None
        for e in sys.eqs:
            c = abs(e.coeff(y))
            if c and (eq_c is None or c < eq_c):
                eq_c = c
        if eq_c == 1:
            return y
        if eq_c is not None:
            rank = (1, eq_c)
        else:
            lo = sum(1 for e in sys.ineqs if e.coeff(y) > 0)
            hi = sum(1 for e in sys.ineqs if e.coeff(y) < 0)
            rank = (2, lo * hi)
        if best_rank is None or rank < best_rank:
            best, best_rank = y, rank
    return best


def _smod(a: int, m: int) -> int:
    """Symmetric residue of a modulo m, in (-m/2, m/2]."""
    r = a % m
    if 2 * r > m:
        r -= m
    return r


def _eliminate_step(
    sys: System, y: int, pending: set[int]
) -> list[tuple[System, int | None]]:
    """One elimination move targeting y; returns (branch, eliminated var)."""
    if sys.false:
        return []
    best = None
    for e in sys.eqs:
        c = abs(e.coeff(y))
        if c and (best is None or c < abs(best.coeff(y))):
            best = e
    if best is not None:
        return _eliminate_equality(sys, y, best, pending)
    lowers = []  # (c, rest): c*y >= -rest
    uppers = []  # (c, rest): c*y <= rest
    others = []
    for e in sys.ineqs:
        c = e.coeff(y)
        if c > 0:
            lowers.append((c, e.drop(y)))
        elif c < 0:
            uppers.append((-c, e.drop(y)))
        else:
            others.append(e)
    if not lowers or not uppers:
        sys.ineqs = others
        return [(sys, y)]
    exact = all(lc == 1 or uc == 1 for lc, _ in lowers for uc, _ in uppers)
    base = sys.copy()
    base.ineqs = list(others)
    for lc, le in lowers:
        for uc, ue in uppers:
            # lc*y >= -le and uc*y <= ue combine to uc*le + lc*ue >= 0
            shadow = le.scale(uc) + ue.scale(lc)
            if not exact:
                shadow = shadow - (lc - 1) * (uc - 1)  # dark shadow
            base.add_ineq(shadow)
    if exact:
        return [(base, y)]
    branches: list[tuple[System, int | None]] = [(base, y)]
    cmax = max(uc for uc, _ in uppers)
    for lc, le in lowers:
        top = (lc * cmax - cmax - lc) // cmax
        for k in range(top + 1):
            # splinter: any integer point between the real and dark shadows
            # satisfies lc*y = -le + k for some lower bound and small k
            br = sys.copy()
            target = -le + k
            if lc == 1:
                br.subst_var(y, target)
                branches.append((br, y))
            else:
                br.add_eq(LinExpr.var(y, lc) - target)
                branches.append((br, None))  # y handled by the equality path
    return branches


def _eliminate_equality(
    sys: System, y: int, eq: LinExpr, pending: set[int]
) -> list[tuple[System, int | None]]:
    """Remove y using an equality that contains it, exactly.

    Unit coefficients substitute directly.  A lone pending variable with a
    larger coefficient turns into a divisibility witness div over retained
    variables.  When several pending variables are entangled with coefficient
    magnitude >= 2, one round of the symmetric-modulo reduction shrinks the
    coefficients; repeated rounds provably reach a unit coefficient.
    """
    c = eq.coeff(y)
    rest = eq.drop(y)
    if c < 0:
        c, rest = -c, -rest
    f = -rest  # c*y = f
    if c == 1:
        sys.eqs.remove(eq)
        sys.subst_var(y, f)
        return [(sys, y)]
    # another pending variable in this equality may have a unit coefficient
    for v in eq.coeffs:
        if v in pending and abs(eq.coeff(v)) == 1:
            cv = eq.coeff(v)
            repl = eq.drop(v) if cv < 0 else -(eq.drop(v))
            sys.eqs.remove(eq)
            sys.subst_var(v, repl)
            return [(sys, v)]
    if not (f.vars() & pending):
        # c*y = f over retained variables: rewrite other occurrences of y by
        # scaling (a*y + g -> a*f + c*g), keep the divisibility c | f as a
        # witnessed div over retained variables.
        sys.eqs.remove(eq)
        eqs, ineqs = sys.eqs, sys.ineqs
        sys.eqs, sys.ineqs = [], []
        for e in eqs:
            a = e.coeff(y)
            sys.add_eq(f.scale(a) + e.drop(y).scale(c) if a else e)
        for e in ineqs:
            a = e.coeff(y)
            sys.add_ineq(f.scale(a) + e.drop(y).scale(c) if a else e)
        q = sys.add_div(f, c)
        sys.add_eq(f - q.scale(c))
        return [(sys, y)]
    # symmetric-modulo reduction (Pugh): introduce a fresh existential sigma
    # and substitute away the pending variable with the smallest coefficient
    xk, ak = None, None
    for v, a in eq.coeffs.items():
        if v in pending and (ak is None or abs(a) < abs(ak)):
            xk, ak = v, a
    m = abs(ak) + 1
    sigma = sys.add_loose()
    pending.add(sigma)
    star = LinExpr.var(sigma, -m)
    star = star + LinExpr(
        _smod(eq.const, m), {v: _smod(a, m) for v, a in eq.coeffs.items()}
    )
    # star has coefficient -sign(ak) on xk; solve star = 0 for xk
    ck = star.coeff(xk)
    assert abs(ck) == 1
    repl = star.drop(xk) if ck < 0 else -(star.drop(xk))
    sys.subst_var(xk, repl)
    return [(sys, xk)]


def _compact_killed_dims(sys: System, kill: list[int]) -> System:
    killed_dims = sorted(v for v in kill if v < sys.ndim)
    if not killed_dims:
        return sys
    remaining = [v for v in range(sys.ndim) if v not in killed_dims]
    new_ndim = len(remaining)
    mapping = {old: new for new, old in enumerate(remaining)}
    for i in range(len(sys.divs)):
        mapping[sys.ndim + i] = new_ndim + i
    out = System(new_ndim)
    out.false = sys.false
    out.divs = [
        None if d is None else DivDef(d.expr.rename(mapping), d.div)
        for d in sys.divs
    ]
    out.eqs = [e.rename(mapping) for e in sys.eqs]
    out.ineqs = [e.rename(mapping) for e in sys.ineqs]
    return out


# ---------------------------------------------------------------------------
# Interval propagation (cheap bounds; used for fast emptiness and enumeration)


def interval_hull(
    bset: BasicSet, rounds: int = 8
) -> list[tuple[int | None, int | None]] | None:
    """Per-variable integer bounds implied one constraint at a time.

    Returns None when propagation proves emptiness.  Bounds may stay open
    (None) for under-constrained variables.
    """
    n = bset.ndim + len(bset.divs)
    lo: list[int | None] = [None] * n
    hi: list[int | None] = [None] * n
    constraints: list[tuple[LinExpr, bool]] = [(e, True) for e in bset.eqs]
    constraints += [(e, False) for e in bset.ineqs]
    for i, d in enumerate(bset.divs):
        v = bset.ndim + i
        q = LinExpr.var(v)
        constraints.append((d.expr - q.scale(d.div), False))
        constraints.append((q.scale(d.div) + (d.div - 1) - d.expr, False))
    for _ in range(rounds):
        changed = False
        for e, is_eq in constraints:
            exprs = (e, -e) if is_eq else (e,)
            for expr in exprs:
                # expr >= 0: for each var, c*v >= -(rest bounds)
                for v, c in expr.coeffs.items():
                    rest_lo = expr.const
                    rest_hi = expr.const
                    ok = True
                    for w, cw in expr.coeffs.items():
                        if w == v:
                            continue
                        wlo, whi = lo[w], hi[w]
                        a = cw * wlo if wlo is not None else None
                        b = cw * whi if whi is not None else None
                        if cw < 0:
                            a, b = b, a
                        if rest_lo is not None:
                            rest_lo = rest_lo + a if a is not None else None
                        if rest_hi is not None:
                            rest_hi = rest_hi + b if b is not None else None
                        if rest_lo is None and rest_hi is None:
                            ok = False
                            break
                    if not ok:
                        continue
                    # c*v + rest >= 0 and rest <= rest_hi bound v from one side
                    if rest_hi is not None:
                        if c > 0:
                            bnd = _ceil_div(-rest_hi, c)
                            if lo[v] is None or bnd > lo[v]:
                                lo[v] = bnd
                                changed = True
                        else:
                            bnd = _floor_div(-rest_hi, c)
                            if hi[v] is None or bnd < hi[v]:
                                hi[v] = bnd
                                changed = True
            if any(
                lo[v] is not None and hi[v] is not None and lo[v] > hi[v]
                for v in range(n)
            ):
                return None
        if not changed:
            break
    for v in range(n):
        if lo[v] is not None and hi[v] is not None and lo[v] > hi[v]:
            return None
    return list(zip(lo, hi))


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _floor_div(a: int, b: int) -> int:
    return a // b


# ---------------------------------------------------------------------------
# Enumeration


def enumerate_basic(bset: BasicSet):
    """Yield all integer points (tuples over dims) in lexicographic order."""
    if bset.is_false:
        return
    box = interval_hull(bset)
    if box is None:
        return
    for v in range(bset.ndim):
        lo, hi = box[v]
        if lo is None or hi is None:
            raise ValueError(f"unbounded dimension {v} in enumeration")
    point: list[int] = [0] * bset.ndim
    yield from _enum_rec(bset, box, point, 0)


def _enum_rec(bset: BasicSet, box, point: list[int], depth: int):
    if depth == bset.ndim:
        if bset.contains(tuple(point)):
            yield tuple(point)
        return
    lo, hi = box[depth]
    # refine with constraints whose other dims are already fixed and whose
    # div references are computable from the fixed prefix
    for e, is_eq in [(e, True) for e in bset.eqs] + [(e, False) for e in bset.ineqs]:
        exprs = (e, -e) if is_eq else (e,)
        for expr in exprs:
            c = expr.coeff(depth)
            if c == 0:
                continue
            rest = expr.const
            ok = True
            for w, cw in expr.coeffs.items():
                if w == depth:
                    continue
                val = _resolved_value(bset, point, depth, w)
                if val is None:
                    ok = False
                    break
                rest += cw * val
            if not ok:
                continue
            if c > 0:
                b = _ceil_div(-rest, c)
                if b > lo:
                    lo = b
            else:
                b = _floor_div(-rest, c)
                if b < hi:
                    hi = b
    for val in range(lo, hi + 1):
        point[depth] = val
        yield from _enum_rec(bset, box, point, depth + 1)


def _resolved_value(
    bset: BasicSet, point: list[int], depth: int, var: int
) -> int | None:
    """Value of var given dims[0:depth] fixed; None if not determined yet."""
    if var < bset.ndim:
        return point[var] if var < depth else None
    d = bset.divs[var - bset.ndim]
    total = d.expr.const
    for w, cw in d.expr.coeffs.items():
        val = _resolved_value(bset, point, depth, w)
        if val is None:
            return None
        total += cw * val
    return total // d.div
