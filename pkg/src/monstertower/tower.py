"""Nash-lifting engine through the monster tower charts.

A curve germ (x(t), y(t)) is lifted one level at a time.  At each level the
two active coordinates (r, n) are compared by the valuations of their
t-derivatives:

* ordinary choice (chart letter ``o``), taken when val(dr) <= val(dn):
  the new coordinate is dn/dr, r stays retained and n is deactivated;
* inverted choice (chart letter ``i``), forced when val(dr) > val(dn):
  the new coordinate is dr/dn, n becomes retained and r is deactivated.

The inverted choice is exactly an encounter with the divisor at infinity of
the new level, so the code-word symbol there is V.  An ordinary step whose
new coordinate vanishes at t=0 while a V/T chain is alive continues the
chain with a T; everything else is an R.  Coordinates are named with the
calculus convention x, y, y', x', x'', ... in the chart family that retains
x first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    ConstantParameterization,
    IndeterminateValuation,
    InsufficientPrecision,
    IntegrationMismatch,
    MaxLevelExceeded,
    NonPrimitiveParameterization,
    ParseError,
)
from .invariants import VerticalOrders
from .series import DEFAULT_PRECISION, TruncatedSeries, parse_series
from .words import RvtWord

DEFAULT_MAX_LEVEL = 64


@dataclass(frozen=True)
class CoordName:
    base: str   # "x" or "y"
    order: int  # number of primes

    def bump(self) -> "CoordName":
        return CoordName(self.base, self.order + 1)

    def __str__(self) -> str:
        if self.order == 0:
            return self.base
        if self.order <= 2:
            return self.base + "'" * self.order
        return f"{self.base}^({self.order})"


@dataclass(frozen=True)
class CurveGerm:
    """Parameterized germ on the base surface; x and y are stored recentered
    (zero constant term) with the base point kept separately."""

    x: TruncatedSeries
    y: TruncatedSeries
    base_point: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    def __post_init__(self):
        if self.x.valuation_or_none() is None and self.y.valuation_or_none() is None:
            raise ConstantParameterization("both coordinates are constant")

    @staticmethod
    def from_series(x: TruncatedSeries, y: TruncatedSeries) -> "CurveGerm":
        x0, x_tail = x.recenter()
        y0, y_tail = y.recenter()
        return CurveGerm(x_tail, y_tail, (x0, y0))

    def check_primitive(self) -> None:
        d = 0
        for e in self.x.support:
            d = gcd(d, e)
        for e in self.y.support:
            d = gcd(d, e)
        if d > 1:
            raise NonPrimitiveParameterization(
                f"all exponents share the factor {d}; reparameterization would "
                "leave the rational field, so the germ is rejected"
            )

    def __str__(self) -> str:
        return f"x={self.x}, y={self.y}"


@dataclass(frozen=True)
class LiftStep:
    level: int
    chart_letter: str              # "o" or "i"
    retained: TruncatedSeries
    new_coord: TruncatedSeries
    retained_name: str
    new_name: str
    deactivated: str               # name of the coordinate that went passive
    symbol: str                    # R, V, or T
    chain_origin: int | None       # level of the divisor whose chain is alive


@dataclass(frozen=True)
class LiftTrace:
    steps: tuple[LiftStep, ...]
    regularization_level: int | None
    word: RvtWord                             # one symbol per step
    chart_path: str
    data_point: tuple[Fraction, ...]          # x0, y0, then new-coordinate values
    base_point: tuple[Fraction, Fraction]

    def order_profile(self) -> tuple[int | None, ...]:
        """Valuations of x, y and every new coordinate, in creation order.
        None marks a coordinate that is zero to its stored precision."""
        out: list[int | None] = [None, None]
        out.extend(s.new_coord.valuation_or_none() for s in self.steps)
        return tuple(out)

    def to_json_dict(self) -> dict:
        return {
            "engine": "nash",
            "base_point": [str(c) for c in self.base_point],
            "levels": [
                {
                    "level": s.level,
                    "chart": s.chart_letter,
                    "symbol": s.symbol,
                    "new_coordinate": s.new_name,
                    "retained_coordinate": s.retained_name,
                    "deactivated_coordinate": s.deactivated,
                    "valuation": s.new_coord.valuation_or_none(),
                    "constant_term": str(s.new_coord.constant_term()),
                    "chain_origin": s.chain_origin,
                }
                for s in self.steps
            ],
            "word": self.word.symbols,
            "chart_path": self.chart_path,
            "regularization_level": self.regularization_level,
            "data_point": [str(c) for c in self.data_point],
        }


def lift_once(
    retained: TruncatedSeries,
    new_coord: TruncatedSeries,
    *,
    level: int,
    retained_name: CoordName = CoordName("x", 0),
    new_name: CoordName = CoordName("y", 0),
    chain_origin: int | None = None,
) -> LiftStep:
    """One chart step on the active pair (r, n).  The chart letter is decided
    by comparing val(dr/dt) with val(dn/dt); ties take the ordinary choice,
    since a vertical encounter forces strict inequality."""
    dr = retained.derivative()
    dn = new_coord.derivative()
    vr = dr.valuation_or_none()
    vn = dn.valuation_or_none()
    if vr is None and vn is None:
        raise InsufficientPrecision(
            f"both active derivatives vanish to precision at level {level}"
        )
    inverted = vr is None or (vn is not None and vr > vn)
    if inverted:
        fresh = dr.quotient(dn)
        return LiftStep(
            level=level,
            chart_letter="i",
            retained=new_coord,
            new_coord=fresh,
            retained_name=str(new_name),
            new_name=str(retained_name.bump()),
            deactivated=str(retained_name),
            symbol="V",
            chain_origin=level,
        )
    fresh = dn.quotient(dr)
    on_prolongation = chain_origin is not None and fresh.constant_term() == 0
    return LiftStep(
        level=level,
        chart_letter="o",
        retained=retained,
        new_coord=fresh,
        retained_name=str(retained_name),
        new_name=str(new_name.bump()),
        deactivated=str(new_name),
        symbol="T" if on_prolongation else "R",
        chain_origin=chain_origin if on_prolongation else None,
    )


def _initial_actives(c: CurveGerm):
    """Retain whichever base coordinate has the smaller valuation (tie: x)."""
    vx = c.x.valuation_or_none()
    vy = c.y.valuation_or_none()
    if vx is not None and (vy is None or vx <= vy):
        return (CoordName("x", 0), c.x), (CoordName("y", 0), c.y)
    return (CoordName("y", 0), c.y), (CoordName("x", 0), c.x)


def _is_regular(step: LiftStep) -> bool:
    """Regularity after a chart step: the retained coordinate moves at unit
    speed and the new coordinate either does too or carries no chain."""
    if step.retained.derivative().valuation_or_none() != 0:
        return False
    if step.symbol == "R":
        return True
    return step.new_coord.derivative().valuation_or_none() == 0


def _name_from_str(text: str) -> CoordName:
    base = text[0]
    if "^" in text:
        return CoordName(base, int(text.split("(")[1].rstrip(")")))
    return CoordName(base, text.count("'"))


def lift_trace(
    c: CurveGerm,
    *,
    levels: int | None = None,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> LiftTrace:
    """Lift the germ through the tower.

    With ``levels=None``, iterate until the regularity criterion fires
    (MaxLevelExceeded past the budget).  With ``levels=k``, perform exactly
    k chart steps, recording the regularization level if it is reached on
    the way.  Re-running a lift yields a bit-identical trace.
    """
    c.check_primitive()
    (r_name, r_series), (n_name, n_series) = _initial_actives(c)
    steps: list[LiftStep] = []
    data = [c.base_point[0], c.base_point[1]]
    chain: int | None = None
    regular_at: int | None = None
    level = 0
    while True:
        if levels is not None:
            if level >= levels:
                break
        elif regular_at is not None:
            break
        elif level >= max_level:
            raise MaxLevelExceeded(
                f"no regular lift within {max_level} levels; the germ may be "
                "critical or the budget too small"
            )
        level += 1
        try:
            step = lift_once(
                r_series,
                n_series,
                level=level,
                retained_name=r_name,
                new_name=n_name,
                chain_origin=chain,
            )
        except IndeterminateValuation as exc:
            raise InsufficientPrecision(str(exc)) from exc
        steps.append(step)
        data.append(step.new_coord.constant_term())
        chain = step.chain_origin
        r_series, n_series = step.retained, step.new_coord
        r_name, n_name = _name_from_str(step.retained_name), _name_from_str(step.new_name)
        if regular_at is None and _is_regular(step):
            regular_at = level
    return LiftTrace(
        steps=tuple(steps),
        regularization_level=regular_at,
        word=RvtWord("".join(s.symbol for s in steps)),
        chart_path="".join(s.chart_letter for s in steps),
        data_point=tuple(data),
        base_point=c.base_point,
    )


def lift_to_regularization(c: CurveGerm, max_level: int = DEFAULT_MAX_LEVEL) -> LiftTrace:
    """Trace ending exactly at the regularization level."""
    trace = lift_trace(c, max_level=max_level)
    r = trace.regularization_level
    return LiftTrace(
        steps=trace.steps[:r],
        regularization_level=r,
        word=RvtWord(trace.word.symbols[:r]),
        chart_path=trace.chart_path[:r],
        data_point=trace.data_point[: r + 2],
        base_point=trace.base_point,
    )


def point_word_at_level(c: CurveGerm, k: int, max_level: int = DEFAULT_MAX_LEVEL) -> RvtWord:
    """First k symbols of the full incidence word (chains from every origin
    level count)."""
    trace = lift_trace(c, levels=k, max_level=max(max_level, k))
    return RvtWord(trace.word.symbols[:k])


def curve_word(c: CurveGerm, k: int = 0, max_level: int = DEFAULT_MAX_LEVEL) -> RvtWord:
    """Code word of the germ lifted k times: length r - k, with chains that
    started at level k+1 or below flattened to R's."""
    trace = lift_to_regularization(c, max_level)
    r = trace.regularization_level
    if k >= r:
        return RvtWord("")
    return trace.word.split_at_level(k)[1]


def curvilinear_data_point(
    c: CurveGerm, k: int, max_level: int = DEFAULT_MAX_LEVEL
) -> tuple[str, tuple[Fraction, ...]]:
    """Chart path of length k and the k+2 coordinate values in chart order."""
    trace = lift_trace(c, levels=k, max_level=max(max_level, k))
    return trace.chart_path[:k], trace.data_point[: k + 2]


def nash_order_profile(c: CurveGerm, max_level: int = DEFAULT_MAX_LEVEL) -> tuple[int | None, ...]:
    """Valuations of x, y and the new coordinate of every lift level."""
    trace = lift_to_regularization(c, max_level)
    out: list[int | None] = [c.x.valuation_or_none(), c.y.valuation_or_none()]
    out.extend(s.new_coord.valuation_or_none() for s in trace.steps)
    return tuple(out)


def nash_multiplicities(c: CurveGerm, max_level: int = DEFAULT_MAX_LEVEL) -> tuple[int, ...]:
    """Multiplicity of each lift: the smaller valuation of the recentered
    active pair, level by level from the base germ to regularization."""
    trace = lift_to_regularization(c, max_level)
    (_, r0), (_, n0) = _initial_actives(c)
    pairs = [(r0, n0)]
    pairs.extend((s.retained, s.new_coord) for s in trace.steps)
    out = []
    for r_series, n_series in pairs:
        vals = []
        for s in (r_series, n_series):
            if s.precision == 0:
                continue
            _, tail = s.recenter()
            v = tail.valuation_or_none()
            if v is not None:
                vals.append(v)
        if not vals:
            raise InsufficientPrecision("active pair constant to precision")
        out.append(min(vals))
    return tuple(out)


def vertical_orders_from_curve(
    c: CurveGerm, max_level: int = DEFAULT_MAX_LEVEL
) -> VerticalOrders:
    """Orders of vanishing of the divisor equations along the lift: at an
    inverted level the new coordinate cuts the divisor at infinity, so its
    valuation is the vertical order; ordinary levels contribute zero."""
    trace = lift_to_regularization(c, max_level)
    values = []
    for step in trace.steps[1:]:
        if step.chart_letter == "i":
            values.append(step.new_coord.valuation())
        else:
            values.append(0)
    return VerticalOrders(tuple(values))


# -- charts in the opposite direction -----------------------------------------


def _walk_names(path: str):
    """Coordinate names along a chart path (always retaining x first).
    Returns the coordinate list in data-point order and, per level,
    (letter, deactivated index, retained index, new index) after the step."""
    coords = [CoordName("x", 0), CoordName("y", 0)]
    r_idx, n_idx = 0, 1
    plan = []
    for letter in path:
        if letter == "o":
            coords.append(coords[n_idx].bump())
            deact = n_idx
            n_idx = len(coords) - 1
        elif letter == "i":
            coords.append(coords[r_idx].bump())
            deact = r_idx
            r_idx, n_idx = n_idx, len(coords) - 1
        else:
            raise ParseError(f"chart letter {letter!r} is not o or i")
        plan.append((letter, deact, r_idx, n_idx))
    return coords, plan


def chart_equations(path: str) -> list[str]:
    """Pfaffian equations of the focal bundle in the chart: one adjoined
    equation per level, d(deactivated) = new * d(retained)."""
    if path and path[0] != "o":
        raise ParseError("chart paths start with an ordinary choice")
    coords, plan = _walk_names(path)
    return [
        f"d{coords[deact]} = {coords[n_idx]} d{coords[r_idx]}"
        for (letter, deact, r_idx, n_idx) in plan
    ]


def curve_from_chart_data(
    path: str,
    retained: TruncatedSeries,
    new_coord: TruncatedSeries,
    constants=None,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> CurveGerm:
    """Rebuild the base curve whose lift along ``path`` has the given active
    parameterizations, integrating one deactivated coordinate per level.

    ``constants`` supplies the integration constants in data-point order
    (x, y, then new coordinates); the entries at the two final active
    positions are ignored.  Defaults to all zeros.  The result is re-lifted
    as a check; IntegrationMismatch signals path letters that conflict with
    the valuations actually encountered.
    """
    if path and path[0] != "o":
        raise ParseError("chart paths start with an ordinary choice")
    k = len(path)
    _, plan = _walk_names(path)
    if constants is None:
        constants = [Fraction(0)] * (k + 2)
    constants = [Fraction(c) for c in constants]
    if len(constants) != k + 2:
        raise ParseError(f"need {k + 2} constants for a level-{k} chart")
    _, r_tail = retained.recenter()
    _, n_tail = new_coord.recenter()
    if r_tail.valuation_or_none() is None and n_tail.valuation_or_none() is None:
        raise ConstantParameterization("both active parameterizations are constant")
    cur_r, cur_n = retained, new_coord
    for level in range(k, 0, -1):
        letter, deact, _, _ = plan[level - 1]
        d_series = cur_n.integrate(cur_r, constants[deact])
        if letter == "o":
            cur_n = d_series
        else:
            cur_r, cur_n = d_series, cur_r
    germ = CurveGerm.from_series(cur_r, cur_n)
    if k:
        check = lift_trace(germ, levels=k, max_level=max(max_level, k))
        if check.chart_path[:k] != path:
            raise IntegrationMismatch(
                f"rebuilt curve lifts along {check.chart_path[:k]!r}, not {path!r}"
            )
        top = check.steps[k - 1]
        if not (top.new_coord.agrees_with(new_coord) and top.retained.agrees_with(retained)):
            raise IntegrationMismatch("re-lift does not reproduce the given actives")
    return germ


# -- curve text grammar --------------------------------------------------------


def parse_curve(text: str, precision: int = DEFAULT_PRECISION) -> tuple[CurveGerm, int]:
    """Parse curve input.

    Base germ: ``x=t^5, y=t^7``.  Germ at level k: ``@level 3 chart=oio,
    r=t, n=t`` with an optional ``constants=0,0,...`` field (data-point
    order); the base curve is rebuilt by integration.  Fields are comma
    separated.  Returns the germ together with the presentation level.
    """
    body = text.strip()
    if body.startswith("@level"):
        parts = body.split(None, 2)
        if len(parts) < 3:
            raise ParseError("expected '@level k chart=... r=..., n=...'")
        try:
            level = int(parts[1])
        except ValueError as exc:
            raise ParseError(f"bad level {parts[1]!r}") from exc
        fields = _split_fields(parts[2])
        for needed in ("chart", "r", "n"):
            if needed not in fields:
                raise ParseError(f"leveled germs need a {needed}= field")
        path = fields["chart"].strip()
        if len(path) != level:
            raise ParseError(f"chart path {path!r} does not have length {level}")
        constants = None
        if "constants" in fields:
            constants = [Fraction(c.strip()) for c in fields["constants"]]
        germ = curve_from_chart_data(
            path,
            parse_series(fields["r"], precision),
            parse_series(fields["n"], precision),
            constants,
        )
        return germ, level
    fields = _split_fields(body)
    for needed in ("x", "y"):
        if needed not in fields:
            raise ParseError("expected 'x=<series>, y=<series>'")
    germ = CurveGerm.from_series(
        parse_series(fields["x"], precision), parse_series(fields["y"], precision)
    )
    return germ, 0


def _split_fields(text: str) -> dict[str, str | list[str]]:
    """Split 'a=..., b=...' where a series value may itself contain commas
    only in a constants= list (collected as a list of chunks)."""
    fields: dict[str, str | list[str]] = {}
    name = None
    for chunk in text.split(","):
        if "=" in chunk:
            name, value = chunk.split("=", 1)
            name = name.strip()
            fields[name] = [value.strip()] if name == "constants" else value.strip()
        elif name == "constants":
            fields[name].append(chunk.strip())
        else:
            raise ParseError(f"expected name=value, got {chunk.strip()!r}")
    return fields
