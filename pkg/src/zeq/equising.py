"""Surface germs in 3-space: multiplicity sequences and equisingular families.

The multiplicity sequence of a reduced surface germ V = f^-1(0) is the
4-tuple

    (mult_0 V,  mult_0 D,  i0,  mult_0 D^{i0})

where D is the discriminant germ of the projection along z computed in
nested-transverse coordinates, i0 is the index of the first generalized
discriminant of D (prepared in y) that is not identically zero, and the
last entry is the multiplicity of that chain entry in x.

Families f(x, y, z, t) are decided by the same machinery with the
parameters riding along in the coefficient ring: the family is
equisingular when the first nonvanishing generalized discriminant of the
prepared discriminant is equimultiple along the parameter axis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .curvefam import (
    CurveFamilyReport,
    decide_curve_family,
    equimultiple_along_params,
    generic_order,
    germ_discriminant_poly,
    section_order,
    section_univariate,
)
from .disc import discriminant_series, generalized_discriminants
from .errors import (
    INFINITE,
    NotRegularError,
    PolyError,
    PrecisionExhaustedError,
    TrialsExhaustedError,
    ZeroToPrecision,
)
from .mpoly import MPoly, matrix_inverse, substitute_linear
from .polygcd import gcd, is_squarefree_univariate, modular_gcd_bivariate, squarefree_part
from .series import TruncSeries
from .weier import (
    NeedsMorePrecision,
    PrecisionBudget,
    regularity,
    weierstrass,
    with_adequate_precision,
)

GEOM = ("x", "y", "z")

__all__ = [
    "SurfaceGerm", "CoordChange", "MultiplicitySequence", "NuTransverseReport",
    "EquisingReport", "local_discriminant", "check_nu_transverse",
    "search_nu_transverse", "multiplicity_sequence", "multiplicity_sequence_detailed",
    "equimultiple_along_params", "family_zariski_equisingular", "nu_transverse_ze",
    "nu_star_constant", "theorem1_harness", "coordinate_invariance_test",
    "semicontinuity_sample", "tilt_family",
]


# ----------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class SurfaceGerm:
    """A polynomial surface germ f(x,y,z)=0, possibly with family parameters."""

    f: MPoly
    params: tuple[str, ...]
    reduced_flag: bool
    original: MPoly

    @classmethod
    def make(cls, f: MPoly, params: Sequence[str] = (), reduce: bool = False) -> "SurfaceGerm":
        params = tuple(params)
        if f.is_zero():
            raise PolyError("the zero polynomial does not define a germ")
        for p in params:
            if p in GEOM:
                raise PolyError(f"parameter {p!r} clashes with a geometric variable")
        variables = GEOM + params
        extra = [v for v in f.vars if v not in variables]
        if extra:
            raise PolyError(f"undeclared variables {extra}; declare them as parameters")
        f = f.extend(variables)
        geom_idx = [f.vars.index(v) for v in GEOM]
        for expo in f.terms:
            if all(expo[i] == 0 for i in geom_idx):
                raise PolyError("germ does not pass through the origin for all parameters")
        original = f
        reduced = False
        if reduce:
            f = squarefree_part(f)
            reduced = True
        return cls(f, params, reduced, original)

    def reduced(self) -> "SurfaceGerm":
        if self.reduced_flag:
            return self
        return SurfaceGerm(squarefree_part(self.f), self.params, True, self.original)

    def fiber(self, values: Optional[dict] = None) -> MPoly:
        """Specialize the parameters (default all 0); geometric variables remain."""
        if not self.params:
            return self.f
        point = {t: 0 for t in self.params}
        if values:
            point.update(values)
        return self.f.substitute_values(point).drop_unused(keep=GEOM).extend(GEOM)


@dataclass(frozen=True)
class CoordChange:
    """Invertible linear change acting on the geometric variables."""

    matrix: tuple[tuple[Fraction, ...], ...]
    seed: int
    trial: int

    @classmethod
    def identity(cls, seed: int = 0) -> "CoordChange":
        rows = tuple(tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3))
        return cls(rows, seed, 0)

    def apply(self, f: MPoly) -> MPoly:
        return substitute_linear(f, self.matrix, GEOM)

    def inverse(self) -> "CoordChange":
        inv = matrix_inverse(self.matrix)
        return CoordChange(tuple(tuple(row) for row in inv), self.seed, -self.trial)

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3))

    def as_lists(self) -> list[list[str]]:
        return [[str(c) for c in row] for row in self.matrix]


@dataclass(frozen=True)
class MultiplicitySequence:
    m_v: int
    m_delta: int
    i0: int
    m_d: int
    smooth_discriminant: bool = False

    def __post_init__(self):
        if self.m_v < 1 or self.i0 < 1:
            raise PolyError("invalid multiplicity sequence")
        if self.smooth_discriminant and (self.m_delta, self.i0, self.m_d) != (0, 1, 0):
            raise PolyError("smooth convention violated")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.m_v, self.m_delta, self.i0, self.m_d)


@dataclass
class NuTransverseReport:
    cond1: bool
    cond2: Optional[bool]
    cond3: Optional[bool]
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.cond1 and self.cond2 and self.cond3)


@dataclass
class EquisingReport:
    decision: str                    # "yes" | "no" | "blocked"
    mode: str
    j0: Optional[int] = None
    i0: Optional[int] = None
    generic_mult: Optional[int] = None
    special_mult: Optional[int] = None
    unit_discriminant: bool = False
    special_vanishes: bool = False
    coord_change: Optional[CoordChange] = None
    precision_used: Optional[int] = None
    seed: Optional[int] = None
    reason: str = ""
    pre_transverse: Optional[bool] = None

    @property
    def is_yes(self) -> bool:
        return self.decision == "yes"


# ----------------------------------------------------------------------
# small helpers


def _rng(seed: int, salt: str) -> random.Random:
    return random.Random(f"{seed}:{salt}")


def _fresh_name(base: str, taken: Sequence[str]) -> str:
    if base not in taken:
        return base
    k = 2
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def tilt_family(f: MPoly, bname: str) -> MPoly:
    """Substitute y -> y + b*z: the pencil of projections through the z-axis."""
    variables = tuple(dict.fromkeys([*f.vars, bname]))
    y = MPoly.var(variables, "y")
    b = MPoly.var(variables, bname)
    z = MPoly.var(variables, "z")
    return f.extend(variables).compose({"y": y + b * z})


def _geom_section(p: MPoly, keep: str, params: Sequence[str]) -> MPoly:
    """Set all geometric variables except ``keep`` to zero; parameters stay."""
    point = {v: 0 for v in p.vars if v != keep and v not in params}
    return p.substitute_values(point)


def _generic_section_order(p: MPoly, keep: str, params: Sequence[str]):
    """Order in ``keep`` of the section, with parameter coefficients symbolic."""
    sec = _geom_section(p, keep, params)
    if sec.is_zero():
        return INFINITE
    return generic_order(sec, [keep], params)


# ----------------------------------------------------------------------
# local discriminant (faithful truncated-series operation)


def local_discriminant(g: SurfaceGerm, precision: Optional[int] = None) -> TruncSeries:
    """Discriminant in z of the Weierstrass factor of f, as a germ series.

    Requires f reduced and regular in z; the result lives over (x, y) and
    the parameters.  The degree-1 case returns the constant 1 (unit).
    """
    f = g.f
    d = regularity(f, "z")
    if d is None:
        raise NotRegularError("z")
    base = tuple(w for w in f.vars if w != "z")
    if precision is None:
        precision = PrecisionBudget.for_poly(f, "z").current
    if d <= 1:
        return TruncSeries.const(base, 1, precision)
    wd = weierstrass(f, "z", precision)
    coeffs = [TruncSeries(c, precision) for c in wd.w.coefficient_list()]
    return discriminant_series(coeffs)


# ----------------------------------------------------------------------
# coordinate search


def _draw_change(rng: random.Random, trial: int, phase: str) -> CoordChange:
    level = 1 + trial // 4
    def small() -> Fraction:
        num = rng.randint(-2 - level, 2 + level)
        den = rng.randint(1, 1 + level)
        return Fraction(num, den)

    def small_nonzero() -> Fraction:
        c = small()
        while c == 0:
            c = small()
        return c

    rows = [[Fraction(1), Fraction(0), Fraction(0)],
            [Fraction(0), Fraction(1), Fraction(0)],
            [Fraction(0), Fraction(0), Fraction(1)]]
    if phase == "plane":
        # mix x and y, shear z by x and y: keeps the z-degree of the germ
        rows[0][1] = small_nonzero()
        if rng.random() < 0.5:
            rows[1][0] = small()
        rows[2][0] = small()
        rows[2][1] = small()
        if rows[0][0] * rows[1][1] == rows[0][1] * rows[1][0]:
            rows[1][0] = Fraction(0)
    elif phase == "shear":
        rows[0][2] = small_nonzero()
        rows[1][2] = small()
        rows[0][1] = small()
        rows[2][0] = small()
        rows[2][1] = small()
    else:  # dense
        for i in range(3):
            for j in range(3):
                if i != j:
                    rows[i][j] = small()
    return rows


def _matrix_invertible(rows) -> bool:
    a, b, c = rows[0]
    d, e, f = rows[1]
    g, h, i = rows[2]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return det != 0


def _draw_ladder(seed: int, max_trials: int, cond1_at_identity: bool):
    """Deterministic stream of near-identity coordinate changes.

    Plane mixes and z-row shears come first (they keep the z-degree of
    the germ small), then shears feeding z into x and y, then dense
    matrices; when the tangent cone already contains the z-axis the
    z-moving phases start immediately.
    """
    rng = _rng(seed, "coords")
    produced = 0
    trial = 0
    while produced < max_trials:
        if trial == 0:
            yield CoordChange.identity(seed)
            produced += 1
            trial += 1
            continue
        if not cond1_at_identity:
            phase = "shear" if trial % 3 != 0 else "dense"
        elif trial <= 8:
            phase = "plane"
        elif trial <= 16:
            phase = "shear"
        else:
            phase = "dense"
        rows = _draw_change(rng, trial, phase)
        trial += 1
        if not _matrix_invertible(rows):
            continue
        yield CoordChange(tuple(tuple(r) for r in rows), seed, trial - 1)
        produced += 1


def search_nu_transverse(
    g: SurfaceGerm,
    seed: int,
    max_trials: int = 32,
    require: Sequence[str] = ("cond1", "cond2", "cond3"),
) -> tuple[CoordChange, NuTransverseReport]:
    """First seeded near-identity change whose report passes the requested
    conditions; deterministic for a fixed seed."""
    g = g if g.reduced_flag else g.reduced()
    stats = {"cond1": 0, "cond2": 0, "cond3": 0, "error": 0}
    fiber0 = g.fiber()
    lf = fiber0.lowest_form()
    cond1_at_identity = lf.evaluate({"x": 0, "y": 0, "z": 1}) != 0

    gated_passes = 0
    for change in _draw_ladder(seed, max_trials, cond1_at_identity):
        moved = SurfaceGerm(change.apply(g.f), g.params, g.reduced_flag, g.original)
        try:
            report = check_nu_transverse(moved, needed=require)
        except (PolyError, NotRegularError, PrecisionExhaustedError):
            stats["error"] += 1
            continue
        ok = True
        for cond in require:
            value = getattr(report, cond)
            if not value:
                stats[cond] += 1
                ok = False
                break
        if ok:
            return change, report
        # the size gate is structural: once several systems pass everything
        # except a gated pencil check, further draws cannot do better
        if ("cond3" in require and report.cond1 and report.cond2
                and report.cond3 is None and "pencil" in report.witnesses
                and "size gate" in str(report.witnesses.get("pencil", ""))):
            gated_passes += 1
            if gated_passes >= 3:
                stats["cond3_gated"] = gated_passes
                raise TrialsExhaustedError(max_trials, stats)
    raise TrialsExhaustedError(max_trials, stats)


def check_nu_transverse(g: SurfaceGerm, needed: Sequence[str] = ("cond1", "cond2", "cond3")) -> NuTransverseReport:
    """The three nested-transversality conditions for the parameter-0 fiber.

    cond1: the z-axis avoids the tangent cone; cond2: the y-axis is
    transverse to the discriminant curve; cond3: the pencil of tilted
    projections gives an equisingular family of discriminant curves.
    """
    g = g if g.reduced_flag else g.reduced()
    fiber = g.fiber()
    if fiber.is_zero():
        return NuTransverseReport(False, None, None, {"note": "zero special fiber"})
    fiber = squarefree_part(fiber)
    witnesses: dict = {}

    lf = fiber.lowest_form()
    cond1 = lf.evaluate({"x": 0, "y": 0, "z": 1}) != 0
    witnesses["tangent_cone_value"] = str(lf.evaluate({"x": 0, "y": 0, "z": 1}))
    if not cond1:
        return NuTransverseReport(False, None, None, witnesses)

    d = regularity(fiber, "z")
    witnesses["z_order"] = d
    if d is not None and d <= 1:
        # unit discriminant: the remaining conditions hold vacuously
        witnesses["unit_discriminant"] = True
        return NuTransverseReport(True, True, True, witnesses)
    if fiber.degree_in("z") > RESULTANT_DEGREE_GATE:
        witnesses["gated"] = fiber.degree_in("z")
        return NuTransverseReport(True, None, None, witnesses)

    ord_d, ord_y_d, disc_data = _disc_orders(fiber)
    cond2 = isinstance(ord_y_d, int) and ord_y_d == ord_d
    witnesses["disc_order"] = ord_d if isinstance(ord_d, int) else None
    witnesses["disc_order_in_y"] = ord_y_d if isinstance(ord_y_d, int) else None
    if not cond2 or ("cond3" not in needed):
        return NuTransverseReport(True, cond2, None, witnesses)

    cond3_report = _pencil_family_decision(fiber, disc_data)
    witnesses["pencil"] = cond3_report.reason
    cond3: Optional[bool] = cond3_report.decision == "yes"
    if cond3_report.decision == "blocked":
        cond3 = None  # undetermined, counts as not verified
    return NuTransverseReport(True, cond2, cond3, witnesses)


def _disc_orders(fiber: MPoly):
    """(total order, y-axis order) of the discriminant germ of a reduced fiber."""
    gd = germ_discriminant_poly(fiber, "z")
    if gd.unit_discriminant:
        return 0, 0, gd
    if gd.clean:
        return gd.poly.order_at_origin(), section_order(gd.poly, "y"), gd
    budget = PrecisionBudget.for_poly(fiber, "z")

    def task(n: int):
        series = local_discriminant(SurfaceGerm.make(fiber), n)
        if series.is_zero_to_precision():
            raise NeedsMorePrecision("discriminant germ")
        o = series.order_at_origin()
        oy = series.order_in_var("y")
        if isinstance(oy, ZeroToPrecision) and isinstance(o, int) and oy.precision <= 2 * o:
            raise NeedsMorePrecision("discriminant order along the y-axis")
        return o, (oy if isinstance(oy, int) else INFINITE)

    (o, oy), _ = with_adequate_precision(task, budget)
    return o, oy, gd


TILT_DEGREE_GATE = 6   # z-degree beyond which the global tilted resultant is not attempted
RESULTANT_DEGREE_GATE = 6  # z-degree beyond which a drawn system is not analyzed further


def _pencil_family_decision(fiber: MPoly, disc_data) -> CurveFamilyReport:
    """Condition (3): the tilted-projection discriminants form an
    equisingular one-parameter family of curve germs."""
    bname = _fresh_name("b", fiber.vars)
    tilted = tilt_family(fiber, bname)
    if tilted.degree_in("z") > TILT_DEGREE_GATE:
        return CurveFamilyReport(
            decision="blocked",
            reason="tilted family exceeds the exact-kernel size gate",
            route="gated",
        )
    return _discriminant_family_decision(tilted, [bname], p_special_hint=disc_data)


def _discriminant_family_decision(family: MPoly, params: Sequence[str],
                                  p_special_hint=None,
                                  rng: Optional[random.Random] = None,
                                  budget: Optional[PrecisionBudget] = None) -> CurveFamilyReport:
    """Shared core: discriminant of a (possibly tilted) family in z, then
    the plane-curve family decision over the given parameters."""
    rng = rng or random.Random(0xC0DE)
    if family.degree_in("z") > RESULTANT_DEGREE_GATE:
        return CurveFamilyReport(decision="blocked",
                                 reason="family exceeds the exact-kernel size gate",
                                 route="gated")
    try:
        gd = germ_discriminant_poly(family, "z")
    except NotRegularError:
        return CurveFamilyReport(decision="blocked", reason="family not regular in z", route="structure")
    if gd.unit_discriminant:
        return CurveFamilyReport(decision="yes", reason="unit discriminant", i0=1,
                                 generic_mult=0, special_mult=0,
                                 unit_discriminant=True, route="unit")

    def series_at(n: int) -> TruncSeries:
        moved = family.extend(tuple(dict.fromkeys([*GEOM, *family.vars])))
        dz = regularity(moved, "z")
        if dz is None:
            raise NotRegularError("z")
        wd = weierstrass(moved, "z", n)
        coeffs = [TruncSeries(c, n) for c in wd.w.coefficient_list()]
        return discriminant_series(coeffs)

    p_special = None
    if not gd.clean:
        try:
            p_special = _clean_special_fiber(family, params, p_special_hint)
        except PolyError:
            from .curvefam import _series_kernel
            return _series_kernel("y", "x", list(params), rng, budget, series_at)

    return decide_curve_family(
        gd.poly, "y", "x", list(params),
        clean=gd.clean, p_special=p_special, series_at=series_at,
        rng=rng, budget=budget,
    )


def _clean_special_fiber(family: MPoly, params: Sequence[str], hint) -> MPoly:
    """Clean polynomial representative of the discriminant of the
    all-parameters-at-zero fiber (zero when that fiber is non-reduced)."""
    if hint is not None and getattr(hint, "clean", False):
        return hint.poly
    fiber = family.substitute_values({t: 0 for t in params if t in family.vars})
    fiber = fiber.drop_unused(keep=GEOM).extend(GEOM)
    if fiber.is_zero():
        return MPoly.zero(("x", "y"))
    res = None
    try:
        gd0 = germ_discriminant_poly(fiber, "z")
        if gd0.clean:
            return gd0.poly
        res = gd0.poly
    except PolyError:
        # repeated factors in z: the fiber discriminant vanishes identically
        return MPoly.zero(("x", "y"))
    except NotRegularError:
        return MPoly.zero(("x", "y"))
    # junky fiber representative: fall back to the reduced fiber's series order data
    raise PolyError("no clean special-fiber discriminant available")


# ----------------------------------------------------------------------
# multiplicity sequence


class MuSequenceData:
    """Lazy multiplicity-sequence entries of a reduced germ in fixed coordinates."""

    def __init__(self, f: MPoly, rng: random.Random, budget: Optional[PrecisionBudget] = None):
        self.f = f
        self.rng = rng
        self.budget = budget or PrecisionBudget.for_poly(f, "z")
        self.precision_used: Optional[int] = None
        self._cache: dict = {}

    def m_v(self) -> int:
        if "m_v" not in self._cache:
            o = self.f.order_at_origin()
            if not isinstance(o, int):
                raise PolyError("zero germ")
            self._cache["m_v"] = o
        return self._cache["m_v"]

    def smooth(self) -> bool:
        d = regularity(self.f, "z")
        if d is None:
            raise NotRegularError("z")
        return d <= 1

    def _disc(self):
        if "disc" not in self._cache:
            self._cache["disc"] = germ_discriminant_poly(self.f, "z")
        return self._cache["disc"]

    def m_delta(self) -> int:
        if "m_delta" not in self._cache:
            if self.smooth():
                self._cache["m_delta"] = 0
            else:
                gd = self._disc()
                if gd.clean:
                    o = gd.poly.order_at_origin()
                else:
                    o = self._series_orders()[0]
                if not isinstance(o, int):
                    raise PolyError("discriminant germ vanished")
                self._cache["m_delta"] = o
        return self._cache["m_delta"]

    def i0(self) -> int:
        self._level2()
        return self._cache["i0"]

    def m_d(self) -> int:
        self._level2(need_order=True)
        return self._cache["m_d"]

    def _series_orders(self):
        def task(n: int):
            series = local_discriminant(SurfaceGerm.make(self.f), n)
            if series.is_zero_to_precision():
                raise NeedsMorePrecision("discriminant germ")
            return series.order_at_origin(), series

        (o, series), used = with_adequate_precision(task, self.budget)
        self.precision_used = used
        self._cache["disc_series"] = series
        return o, series

    def _level2(self, need_order: bool = False) -> None:
        if "i0" in self._cache and (not need_order or "m_d" in self._cache):
            return
        if self.smooth():
            self._cache["i0"] = 1
            self._cache["m_d"] = 0
            return
        gd = self._disc()
        if gd.clean:
            self._level2_poly(gd.poly, need_order)
        else:
            self._level2_series(need_order)

    def _level2_poly(self, p: MPoly, need_order: bool) -> None:
        e = section_order(p, "y")
        if e is INFINITE:
            raise NotRegularError("y", "discriminant not regular in y (coordinates not transverse)")
        h = modular_gcd_bivariate(p, p.derivative("y"), "y", "x", self.rng)
        if h.is_constant():
            excess = 0
            q = p
        else:
            excess = section_order(h, "y")
            if excess is INFINITE:
                raise PolyError("gcd section vanished")
            q = p.exact_div(h)
        self._cache["i0"] = 1 + excess
        s = e - excess
        if s < 1:
            raise PolyError("inconsistent germ excess")
        if not need_order:
            return
        if s == 1:
            self._cache["m_d"] = 0
            return
        sec = section_univariate(q, "y")
        s_fiber = next(k for k, c in enumerate(sec) if c != 0)
        ubar = sec[s_fiber:]
        no_drop = q.degree_in("y") == len(sec) - 1
        if s_fiber == s and no_drop and is_squarefree_univariate(ubar):
            from .disc import resultant
            r = resultant(q, q.derivative("y"), "y")
            o = r.order_at_origin()
            if not isinstance(o, int):
                raise PolyError("reduced discriminant vanished")
            self._cache["m_d"] = o
            return
        # series read of the reduced discriminant order
        def task(n: int):
            wd = weierstrass(q, "y", n)
            coeffs = [TruncSeries(c, n) for c in wd.w.coefficient_list()]
            ds = discriminant_series(coeffs)
            o = ds.order_at_origin()
            if isinstance(o, ZeroToPrecision):
                raise NeedsMorePrecision("order of the reduced discriminant")
            return o

        o, used = with_adequate_precision(task, self.budget)
        self.precision_used = used
        self._cache["m_d"] = o

    def _level2_series(self, need_order: bool) -> None:
        def task(n: int):
            series = self._cache.get("disc_series")
            if series is None or series.precision < n:
                series = local_discriminant(SurfaceGerm.make(self.f), n)
                self._cache["disc_series"] = series
            if series.is_zero_to_precision():
                raise NeedsMorePrecision("discriminant germ")
            body = series.body
            e = body.order_in_var("y") if "y" in body.vars else None
            if not isinstance(e, int):
                raise NeedsMorePrecision("regularity of the discriminant in the curve variable")
            base_prec = max(2, series.precision - e)
            wd = weierstrass(body, "y", base_prec)
            if wd.w.degree == 0:
                return 1, 0
            chain = generalized_discriminants(wd.w)
            entry = chain.entry(chain.first_nonzero)
            o = entry.order_at_origin() if isinstance(entry, TruncSeries) else entry.order_at_origin()
            if isinstance(o, ZeroToPrecision):
                raise NeedsMorePrecision("order of the first nonzero chain entry")
            return chain.first_nonzero, o

        (i0, m_d), used = with_adequate_precision(task, self.budget)
        self.precision_used = used
        self._cache["i0"] = i0
        self._cache["m_d"] = m_d

    def sequence(self) -> MultiplicitySequence:
        if self.smooth():
            return MultiplicitySequence(self.m_v(), 0, 1, 0, smooth_discriminant=True)
        return MultiplicitySequence(self.m_v(), self.m_delta(), self.i0(), self.m_d())


def multiplicity_sequence_detailed(
    g: SurfaceGerm, seed: int = 1, max_trials: int = 32,
    require_pencil: bool = True,
) -> tuple[MultiplicitySequence, CoordChange, Optional[int]]:
    """multiplicity_sequence plus the truncation order actually consumed."""
    if g.params:
        raise PolyError("multiplicity_sequence expects a single germ; specialize the family first")
    g = g.reduced()
    require = ("cond1", "cond2", "cond3") if require_pencil else ("cond1", "cond2")
    m_v = g.f.order_at_origin()
    if m_v == 1:
        # smooth point: any cond1 system exhibits the unit discriminant
        change, _ = search_nu_transverse(g, seed, max_trials, require=("cond1",))
        return MultiplicitySequence(1, 0, 1, 0, smooth_discriminant=True), change, None
    change, _ = search_nu_transverse(g, seed, max_trials, require=require)
    moved = change.apply(g.f)
    data = MuSequenceData(moved, _rng(seed, "musq"))
    seq = data.sequence()
    return seq, change, data.precision_used


def multiplicity_sequence(g: SurfaceGerm, seed: int = 1, max_trials: int = 32,
                          require_pencil: bool = True) -> tuple[MultiplicitySequence, CoordChange]:
    """The multiplicity sequence of a surface germ, found coordinates included.

    The input is reduced automatically; coordinates are searched with the
    seeded generator until the nested-transversality report passes.
    """
    seq, change, _ = multiplicity_sequence_detailed(g, seed, max_trials, require_pencil)
    return seq, change


def coordinate_invariance_test(g: SurfaceGerm, seeds: Sequence[int]) -> bool:
    """Identical multiplicity sequences across independently seeded systems."""
    tuples = []
    for s in seeds:
        seq, _ = multiplicity_sequence(g, seed=s)
        tuples.append(seq.as_tuple())
    return all(t == tuples[0] for t in tuples)


# ----------------------------------------------------------------------
# family decisions


def family_zariski_equisingular(g: SurfaceGerm, seed: int = 1,
                                change: Optional[CoordChange] = None,
                                reduce: bool = True,
                                max_trials: int = 32) -> EquisingReport:
    """Equisingularity of the family with respect to the parameters.

    The criteria: the first nonvanishing generalized discriminant of the
    prepared f is regular in y, and the first nonvanishing generalized
    discriminant of that discriminant is equimultiple along the
    parameters.  With an explicit ``change`` the decision is taken in
    exactly those coordinates and regularity failures block; otherwise
    seeded near-identity changes are drawn until the regularity
    conditions hold.  Reduction is on by default; with ``reduce=False``
    the first chain level is reported at its true index, the decision
    being unchanged because the first nonzero chain entry is a constant
    multiple of the reduced discriminant.
    """
    if not g.params:
        raise PolyError("family decision needs at least one parameter")
    rng = _rng(seed, "family")
    if change is not None:
        return _family_ze_in_coords(g, change.apply(g.f), rng, reduce, change, seed)
    fiber0 = g.fiber()
    if fiber0.is_zero():
        return EquisingReport("no", "ze", seed=seed, special_vanishes=True,
                              reason="special fiber vanishes identically")
    lf = squarefree_part(fiber0).lowest_form()
    cond1_id = lf.evaluate({"x": 0, "y": 0, "z": 1}) != 0
    last = None
    for cand in _draw_ladder(seed, max_trials, cond1_id):
        last = _family_ze_in_coords(g, cand.apply(g.f), rng, reduce, cand, seed)
        if last.decision != "blocked":
            return last
    return last if last is not None else EquisingReport(
        "blocked", "ze", seed=seed, reason="no admissible coordinates found")


def _family_ze_in_coords(g: SurfaceGerm, f: MPoly, rng: random.Random,
                         reduce: bool, change: Optional[CoordChange],
                         seed: int) -> EquisingReport:
    j0 = 1
    if not reduce:
        j0 = 1 + _germ_excess_in_z(f, rng)
    fred = squarefree_part(f)
    d = regularity(fred, "z")
    if d is None:
        return EquisingReport("blocked", "ze", j0=j0, coord_change=change, seed=seed,
                              reason="family not regular in z in these coordinates")
    report = _discriminant_family_decision(fred, list(g.params), rng=rng)
    return _wrap_report(report, "ze", j0, change, seed)


def _germ_excess_in_z(f: MPoly, rng: random.Random) -> int:
    h = gcd(f, f.derivative("z"), rng)
    if h.is_constant():
        return 0
    o = section_order(h, "z")
    return o if isinstance(o, int) else 0


def _wrap_report(report: CurveFamilyReport, mode: str, j0: int,
                 change: Optional[CoordChange], seed: int,
                 pre: Optional[bool] = None) -> EquisingReport:
    return EquisingReport(
        decision=report.decision,
        mode=mode,
        j0=j0,
        i0=report.i0,
        generic_mult=report.generic_mult,
        special_mult=report.special_mult,
        unit_discriminant=report.unit_discriminant,
        special_vanishes=report.special_vanishes,
        coord_change=change,
        precision_used=report.precision_used,
        seed=seed,
        reason=report.reason,
        pre_transverse=pre,
    )


def nu_transverse_ze(g: SurfaceGerm, seed: int = 1,
                     change: Optional[CoordChange] = None) -> EquisingReport:
    """Equisingularity of the tilted-projection discriminant family.

    The coordinate system must be nested-transverse for the parameter-0
    fiber; the decision then adjoins the tilt parameter b and asks the
    plane-curve family question for the parameters (b, t).  When the
    transversality pre-check fails the family is not nested-transverse
    equisingular with respect to these coordinates, which is reported as
    a "no" with the failing condition.
    """
    if not g.params:
        raise PolyError("family decision needs at least one parameter")
    if change is None:
        fiber0 = squarefree_part(g.fiber())
        fiber_germ = SurfaceGerm.make(fiber0)
        try:
            change, _ = search_nu_transverse(fiber_germ, seed)
        except TrialsExhaustedError:
            change, _ = search_nu_transverse(fiber_germ, seed, require=("cond1", "cond2"))
    f = change.apply(g.f)
    rng = _rng(seed, "nutze")
    fred = squarefree_part(f)
    moved = SurfaceGerm(fred, g.params, True, g.original)
    pre = check_nu_transverse(moved)

    # The b = 0 slice of the tilted-family question is the plain parameter
    # family; equimultiplicity along all of (b, t) restricts to the slice,
    # so a failing slice settles the joint question without the tilt.
    slice_report = _family_ze_in_coords(g, f, rng, True, change, seed)
    if slice_report.decision == "no":
        report = _wrap_report(
            CurveFamilyReport(
                decision="no",
                reason="discriminant family already fails equimultiplicity along "
                       "the untilted parameter slice: " + slice_report.reason,
                i0=slice_report.i0,
                special_vanishes=slice_report.special_vanishes,
                route="slice",
            ),
            "nutze", 1, change, seed, pre=pre.passed,
        )
        return report

    bname = _fresh_name("b", fred.vars)
    tilted = tilt_family(fred, bname)
    if tilted.degree_in("z") > TILT_DEGREE_GATE:
        joint = CurveFamilyReport(
            decision="blocked",
            reason="tilted family exceeds the exact-kernel size gate",
            route="gated",
        )
    else:
        joint = _discriminant_family_decision(tilted, [bname, *g.params], rng=rng)
    report = _wrap_report(joint, "nutze", 1, change, seed, pre=pre.passed)
    if pre.cond3 is None and report.decision == "yes":
        report.reason += " (fiber pencil condition not verified at this size)"
    if not pre.passed and pre.cond3 is not None:
        report.decision = "no"
        failing = "cond1" if not pre.cond1 else ("cond2" if not pre.cond2 else "cond3")
        report.reason = (f"fiber coordinates are not nested-transverse ({failing} fails); "
                         f"joint tilted-family check: {joint.decision} ({joint.reason})")
    return report


def nu_star_constant(g: SurfaceGerm, seed: int = 1) -> tuple[bool, tuple, tuple]:
    """Constancy of the multiplicity sequence along the parameters.

    Returns (constant, generic tuple, special tuple); undecided trailing
    entries (never needed for the verdict) are None.  Genericity in the
    parameters is symbolic: a coefficient counts as nonzero when it is a
    nonzero polynomial in the parameters.
    """
    if not g.params:
        raise PolyError("family decision needs at least one parameter")
    fred = squarefree_part(g.f)
    fam = SurfaceGerm(fred, g.params, True, g.original)
    fiber0 = squarefree_part(fam.fiber())
    fiber_germ = SurfaceGerm.make(fiber0)

    try:
        change, _ = search_nu_transverse(fiber_germ, seed)
    except TrialsExhaustedError:
        # pencil condition unattainable in the searched systems: fall back
        # to axis-transverse coordinates (orders are still well defined)
        change, _ = search_nu_transverse(fiber_germ, seed, require=("cond1", "cond2"))

    moved_fam = change.apply(fred)
    moved_fiber = squarefree_part(change.apply(fiber0))
    params = list(g.params)
    special = MuSequenceData(moved_fiber, _rng(seed, "special"))
    generic = _GenericMuData(moved_fam, params, _rng(seed, "generic"))

    special_entries: list[Optional[int]] = [None] * 4
    generic_entries: list[Optional[int]] = [None] * 4
    if special.smooth():
        special_entries = [1, 0, 1, 0]
    if generic._generic_smooth():
        generic_entries = [1, 0, 1, 0]
    getters = [
        (lambda: special.m_v(), lambda: generic.m_v()),
        (lambda: special.m_delta(), lambda: generic.m_delta()),
        (lambda: special.i0(), lambda: generic.i0()),
        (lambda: special.m_d(), lambda: generic.m_d()),
    ]
    constant = True
    for k, (sp_get, ge_get) in enumerate(getters):
        sp_val = special_entries[k] if special_entries[k] is not None else sp_get()
        ge_val = generic_entries[k] if generic_entries[k] is not None else ge_get()
        special_entries[k] = sp_val
        generic_entries[k] = ge_val
        if ge_val is None:
            raise PrecisionExhaustedError(f"generic multiplicity-sequence entry {k + 1}", 0)
        if sp_val != ge_val:
            constant = False
            break
    return constant, tuple(generic_entries), tuple(special_entries)


class _GenericMuData:
    """Symbolic-in-parameters multiplicity sequence entries of a family."""

    def __init__(self, f: MPoly, params: list[str], rng: random.Random):
        self.f = f
        self.params = params
        self.rng = rng
        self._cache: dict = {}

    def m_v(self) -> int:
        o = generic_order(self.f, GEOM, self.params)
        if not isinstance(o, int):
            raise PolyError("zero family")
        return o

    def _generic_smooth(self) -> bool:
        return self.m_v() == 1

    def _disc(self):
        if "disc" not in self._cache:
            self._cache["disc"] = germ_discriminant_poly(self.f, "z")
        return self._cache["disc"]

    def m_delta(self) -> Optional[int]:
        if self._generic_smooth():
            return 0
        gd = self._disc()
        if not gd.clean:
            return None
        o = generic_order(gd.poly, ("x", "y"), self.params)
        return o if isinstance(o, int) else None

    def i0(self) -> Optional[int]:
        if self._generic_smooth():
            return 1
        gd = self._disc()
        if not gd.clean:
            return None
        p = gd.poly
        h = gcd(p, p.derivative("y"), self.rng)
        if h.is_constant():
            return 1
        sec = _geom_section(h, "y", self.params)
        if sec.is_zero():
            return None
        excess = generic_order(sec, ["y"], self.params)
        return 1 + excess if isinstance(excess, int) else None

    def m_d(self) -> Optional[int]:
        if self._generic_smooth():
            return 0
        gd = self._disc()
        if not gd.clean:
            return None
        p = gd.poly
        h = gcd(p, p.derivative("y"), self.rng)
        q = p if h.is_constant() else p.exact_div(h)
        i0 = self.i0()
        if i0 is None:
            return None
        e_gen = _generic_section_order(p, "y", self.params)
        if not isinstance(e_gen, int):
            return None
        s = e_gen - (i0 - 1)
        if s == 1:
            return 0
        # generic fiber far-root certificate, symbolically in the parameters
        sec = _geom_section(q, "y", self.params)
        if sec.is_zero():
            return None
        from .disc import resultant
        r = resultant(q, q.derivative("y"), "y")
        o = generic_order(r, ["x"], self.params)
        # sound only when the reduced family has tame far structure; verify
        # by checking the degree profile of q against the generic section
        s_gen = generic_order(sec, ["y"], self.params)
        no_drop = q.degree_in("y") == sec.degree_in("y")
        if no_drop and s_gen == s:
            return o if isinstance(o, int) else None
        return None


def theorem1_harness(g: SurfaceGerm, seeds: Sequence[int]) -> dict:
    """Run the three equivalent family criteria per seed and compare.

    Returns {"consistent": bool, "decision": str|None, "runs": [...]}.
    """
    runs = []
    consistent = True
    overall: Optional[str] = None
    for seed in seeds:
        fiber0 = squarefree_part(g.fiber())
        fiber_germ = SurfaceGerm.make(fiber0)
        try:
            change, _ = search_nu_transverse(fiber_germ, seed)
        except TrialsExhaustedError:
            change, _ = search_nu_transverse(fiber_germ, seed, require=("cond1", "cond2"))
        r_nutze = nu_transverse_ze(g, seed=seed, change=change)
        r_ze = family_zariski_equisingular(g, seed=seed, change=change)
        constant, gen_t, spe_t = nu_star_constant(g, seed=seed)
        decisions = {
            "nutze": r_nutze.decision,
            "ze": r_ze.decision,
            "nustar": "yes" if constant else "no",
        }
        runs.append({
            "seed": seed,
            "decisions": decisions,
            "generic_mu_seq": list(gen_t),
            "special_mu_seq": list(spe_t),
            "ze_reason": r_ze.reason,
            "nutze_reason": r_nutze.reason,
        })
        values = set(decisions.values())
        if len(values) != 1:
            consistent = False
        else:
            d = values.pop()
            if overall is None:
                overall = d
            elif overall != d:
                consistent = False
    return {"consistent": consistent, "decision": overall if consistent else None, "runs": runs}


def semicontinuity_sample(g: SurfaceGerm, sample_points: Sequence, seed: int = 1) -> bool:
    """Lexicographic upper semicontinuity at rational parameter samples.

    Each sample is a mapping param -> Fraction (or a single value for
    one-parameter families).  Checks nu*(V_sample) <= nu*(V_0)
    lexicographically, computing entries lazily from the left.
    """
    fred = squarefree_part(g.f)
    fam = SurfaceGerm(fred, g.params, True, g.original)
    base = _lazy_mu(squarefree_part(fam.fiber()), seed)
    for point in sample_points:
        if not isinstance(point, dict):
            if len(g.params) != 1:
                raise PolyError("sample must name every parameter")
            point = {g.params[0]: point}
        fiber = fam.fiber({k: Fraction(v) for k, v in point.items()})
        if fiber.is_zero():
            raise PolyError("sample specialization is the zero polynomial")
        fiber = squarefree_part(fiber)
        sample = _lazy_mu(fiber, seed)
        if not _lex_le(sample, base):
            return False
    return True


class _LazyMuView:
    def __init__(self, data: MuSequenceData, smooth: bool):
        self.data = data
        self._smooth = smooth

    def entry(self, k: int) -> int:
        if self._smooth:
            return (1, 0, 1, 0)[k]
        if k == 0:
            return self.data.m_v()
        if k == 1:
            return self.data.m_delta()
        if k == 2:
            return self.data.i0()
        return self.data.m_d()


def _lazy_mu(fiber: MPoly, seed: int) -> _LazyMuView:
    germ = SurfaceGerm.make(fiber)
    if fiber.order_at_origin() == 1:
        return _LazyMuView(None, True)  # type: ignore[arg-type]
    try:
        change, _ = search_nu_transverse(germ, seed)
    except TrialsExhaustedError:
        change, _ = search_nu_transverse(germ, seed, require=("cond1", "cond2"))
    moved = squarefree_part(change.apply(fiber))
    return _LazyMuView(MuSequenceData(moved, _rng(seed, "semicont")), False)


def _lex_le(a: _LazyMuView, b: _LazyMuView) -> bool:
    for k in range(4):
        av = a.entry(k)
        bv = b.entry(k)
        if av < bv:
            return True
        if av > bv:
            return False
    return True
