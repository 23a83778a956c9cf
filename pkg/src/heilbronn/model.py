"""Formulation builder for the three mixed-integer/quadratic models.

A :class:`FormulationModel` is a plain container of variables, linear and
quadratic rows, and a single maximised objective variable ``H``. The
builders here produce the binary-linearised MIQCP, the quadratic
|S| = U reformulation, and the dyadic discretisation (exact or McCormick
relaxed); enhancement constraints are attached from :mod:`.enhancements`.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import ExportUnsupported, InvalidParameter

CONTINUOUS = "continuous"
BINARY = "binary"


@dataclass
class Var:
    name: str
    kind: str = CONTINUOUS
    lower: float = 0.0
    upper: float = 1.0


@dataclass(frozen=True)
class Row:
    """sum(lin) + sum(coef * a * b for quad) <sense> rhs."""

    name: str
    lin: tuple[tuple[float, str], ...]
    sense: str  # "<=", ">=", "="
    rhs: float
    quad: tuple[tuple[float, str, str], ...] = ()

    def variables(self) -> set[str]:
        out = {v for _, v in self.lin}
        for _, a, b in self.quad:
            out.update((a, b))
        return out

    def activity(self, values: dict[str, float]) -> float:
        s = sum(c * values[v] for c, v in self.lin)
        s += sum(c * values[a] * values[b] for c, a, b in self.quad)
        return s

    def violation(self, values: dict[str, float]) -> float:
        d = self.activity(values) - self.rhs
        if self.sense == "<=":
            return max(d, 0.0)
        if self.sense == ">=":
            return max(-d, 0.0)
        return abs(d)


@dataclass(frozen=True)
class BoundChange:
    """Tighten a variable's bounds; ``None`` leaves that side alone."""

    var: str
    lower: float | None = None
    upper: float | None = None

    @property
    def name(self) -> str:
        return f"bound({self.var})"

    def variables(self) -> set[str]:
        return {self.var}

    def violation(self, values: dict[str, float]) -> float:
        v = values[self.var]
        out = 0.0
        if self.lower is not None:
            out = max(out, self.lower - v)
        if self.upper is not None:
            out = max(out, v - self.upper)
        return out


def fix(var: str, value: float) -> BoundChange:
    return BoundChange(var, value, value)


@dataclass
class Enhancement:
    """Constraint atoms produced by one generator, plus the binaries it declares."""

    group: str
    label: str
    atoms: list = field(default_factory=list)
    new_vars: list[Var] = field(default_factory=list)

    def __len__(self):
        return len(self.atoms)


@dataclass
class FormulationModel:
    variables: dict[str, Var] = field(default_factory=dict)
    rows: list[Row] = field(default_factory=list)
    objective: str = "H"
    metadata: dict = field(default_factory=dict)

    def add_var(self, name, kind=CONTINUOUS, lower=0.0, upper=1.0) -> str:
        if name in self.variables:
            raise ValueError(f"duplicate variable {name}")
        self.variables[name] = Var(name, kind, float(lower), float(upper))
        return name

    def add_row(self, name, lin, sense, rhs, quad=()) -> Row:
        row = Row(
            name,
            tuple((float(c), v) for c, v in lin),
            sense,
            float(rhs),
            tuple((float(c), a, b) for c, a, b in quad),
        )
        self.rows.append(row)
        return row

    def apply_bound(self, bc: BoundChange) -> None:
        v = self.variables[bc.var]
        if bc.lower is not None:
            v.lower = max(v.lower, float(bc.lower))
        if bc.upper is not None:
            v.upper = min(v.upper, float(bc.upper))

    def attach(self, enh: Enhancement) -> None:
        for v in enh.new_vars:
            self.add_var(v.name, v.kind, v.lower, v.upper)
        for atom in enh.atoms:
            if isinstance(atom, BoundChange):
                self.apply_bound(atom)
            else:
                self.rows.append(atom)

    # -- inspection -------------------------------------------------------
    def count(self, prefix: str) -> int:
        return sum(1 for v in self.variables if v.split("_")[0] == prefix)

    @property
    def binaries(self) -> list[str]:
        return [n for n, v in self.variables.items() if v.kind == BINARY]

    @property
    def quadratic_rows(self) -> list[Row]:
        return [r for r in self.rows if r.quad]

    @property
    def linear_rows(self) -> list[Row]:
        return [r for r in self.rows if not r.quad]

    def check(self) -> None:
        """Raise if a row references an undeclared variable or names collide."""
        names = [r.name for r in self.rows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate row names")
        for r in self.rows:
            missing = r.variables() - self.variables.keys()
            if missing:
                raise ValueError(f"row {r.name} uses undeclared {sorted(missing)}")
        for v in self.variables.values():
            if not _NAME_RE.fullmatch(v.name):
                raise ValueError(f"non-canonical variable name {v.name}")
            if v.lower > v.upper:
                raise ValueError(f"empty bounds for {v.name}: [{v.lower}, {v.upper}]")

    def max_violation(self, values: dict[str, float]) -> tuple[float, str]:
        """Largest violation over rows and variable bounds (and its source)."""
        worst, where = 0.0, ""
        for v in self.variables.values():
            val = values[v.name]
            d = max(v.lower - val, val - v.upper, 0.0)
            if v.kind == BINARY:
                d = max(d, min(abs(val), abs(val - 1.0)))
            if d > worst:
                worst, where = d, v.name
        for r in self.rows:
            d = r.violation(values)
            if d > worst:
                worst, where = d, r.name
        return worst, where

    def __eq__(self, other):
        if not isinstance(other, FormulationModel):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.rows == other.rows
            and self.objective == other.objective
        )


_NAME_RE = re.compile(
    r"(x|y|eps|c1|c2)_\d+|H|(w|omega)_\d+_\d+|(S|b|U)_\d+_\d+_\d+|xi_\d+_\d+|phi_\d+_\d+_\d+"
    r"|r_\d+_\d+|u_\d+_\d+_\d+"
)


def name_key(name: str):
    """Sort key: variable family first, then 1-based indices numerically."""
    parts = name.split("_")
    head = []
    i = 0
    while i < len(parts) and not parts[i].isdigit():
        head.append(parts[i])
        i += 1
    return ("_".join(head), tuple(int(p) for p in parts[i:]))


# -- naming helpers (1-based, as in the formulation) -----------------------
def X(i):
    return f"x_{i + 1}"


def Y(i):
    return f"y_{i + 1}"


def W(i, j):
    return f"w_{i + 1}_{j + 1}"


def tname(prefix, t):
    return f"{prefix}_{t[0] + 1}_{t[1] + 1}_{t[2] + 1}"


# -- McCormick -------------------------------------------------------------
@dataclass(frozen=True)
class McCormickEnvelope:
    """Convex hull of {(x, y, w): w = x*y} over a box, as four inequalities."""

    x_bounds: tuple[float, float]
    y_bounds: tuple[float, float]

    def rows(self, x: str, y: str, w: str, tag: str) -> list[Row]:
        xl, xu = self.x_bounds
        yl, yu = self.y_bounds
        return [
            # w >= xl*y + x*yl - xl*yl
            Row(f"{tag}_mc1", ((1.0, w), (-xl, y), (-yl, x)), ">=", -xl * yl),
            # w >= xu*y + x*yu - xu*yu
            Row(f"{tag}_mc2", ((1.0, w), (-xu, y), (-yu, x)), ">=", -xu * yu),
            # w <= xu*y + x*yl - xu*yl
            Row(f"{tag}_mc3", ((1.0, w), (-xu, y), (-yl, x)), "<=", -xu * yl),
            # w <= xl*y + x*yu - xl*yu
            Row(f"{tag}_mc4", ((1.0, w), (-xl, y), (-yu, x)), "<=", -xl * yu),
        ]

    def contains(self, x: float, y: float, w: float, tol: float = 0.0) -> bool:
        xl, xu = self.x_bounds
        yl, yu = self.y_bounds
        return (
            w >= xl * y + x * yl - xl * yl - tol
            and w >= xu * y + x * yu - xu * yu - tol
            and w <= xu * y + x * yl - xu * yl + tol
            and w <= xl * y + x * yu - xl * yu + tol
        )

    def interval(self, x: float, y: float) -> tuple[float, float]:
        """Range of w allowed by the envelope at (x, y)."""
        xl, xu = self.x_bounds
        yl, yu = self.y_bounds
        lo = max(xl * y + x * yl - xl * yl, xu * y + x * yu - xu * yu)
        hi = min(xu * y + x * yl - xu * yl, xl * y + x * yu - xl * yu)
        return lo, hi


def mccormick(x_bounds, y_bounds) -> McCormickEnvelope:
    xl, xu = map(float, x_bounds)
    yl, yu = map(float, y_bounds)
    if xl > xu or yl > yu:
        raise InvalidParameter(f"inverted bounds {x_bounds}, {y_bounds}")
    return McCormickEnvelope((xl, xu), (yl, yu))


# -- shared pieces ---------------------------------------------------------
def _h_bounds(bounds, enh) -> tuple[float, float]:
    """Objective bounds: the supplied interval when group 1 is on, else [0, 1/2]."""
    if enh is not None and "G1" in enh.groups and bounds is not None:
        return float(bounds.lower), float(bounds.upper)
    return 0.0, 0.5


def _base(n: int, approach: str, h_lo: float, h_hi: float) -> FormulationModel:
    if n < 3:
        raise InvalidParameter("n must be >= 3")
    m = FormulationModel(metadata={"approach": approach, "n": n})
    for i in range(n):
        m.add_var(X(i))
    for i in range(n):
        m.add_var(Y(i))
    m.add_var("H", lower=h_lo, upper=h_hi)
    for t in combinations(range(n), 3):
        m.add_var(tname("S", t), lower=-0.5, upper=0.5)
    for i in range(n):
        for j in range(n):
            m.add_var(W(i, j))
    return m


def _area_rows(m: FormulationModel, n: int) -> None:
    # S_ijk = 1/2 [(w_ij - w_ik) - (w_ji - w_jk) + (w_ki - w_kj)]
    for t in combinations(range(n), 3):
        i, j, k = t
        lin = [
            (1.0, tname("S", t)),
            (-0.5, W(i, j)),
            (0.5, W(i, k)),
            (0.5, W(j, i)),
            (-0.5, W(j, k)),
            (-0.5, W(k, i)),
            (0.5, W(k, j)),
        ]
        m.add_row(f"area_{i + 1}_{j + 1}_{k + 1}", lin, "=", 0.0)


def _bilinear_rows(m: FormulationModel, n: int) -> None:
    for i in range(n):
        for j in range(n):
            m.add_row(f"wdef_{i + 1}_{j + 1}", [(1.0, W(i, j))], "=", 0.0, [(-1.0, X(i), Y(j))])


def _sign_rows(m: FormulationModel, n: int, h_lo: float, h_hi: float, strengthen: bool) -> None:
    big = h_hi + 0.5
    for t in combinations(range(n), 3):
        s, b = tname("S", t), tname("b", t)
        m.add_var(b, BINARY, 0, 1)
        suf = f"{t[0] + 1}_{t[1] + 1}_{t[2] + 1}"
        # (1 - b) (Hbar + 1/2) + S >= H
        m.add_row(f"pos_{suf}", [(1.0, s), (-big, b), (-1.0, "H")], ">=", -big)
        # b (Hbar + 1/2) - S >= H
        m.add_row(f"neg_{suf}", [(big, b), (-1.0, s), (-1.0, "H")], ">=", 0.0)
        if strengthen:
            # -1/2 <= S - (1/2 + Hlow) b <= -Hlow
            m.add_row(f"slo_{suf}", [(1.0, s), (-(0.5 + h_lo), b)], ">=", -0.5)
            m.add_row(f"shi_{suf}", [(1.0, s), (-(0.5 + h_lo), b)], "<=", -h_lo)


def _attach_enhancements(m: FormulationModel, enh) -> None:
    if enh is None:
        return
    for e in enh.constraints():
        m.attach(e)
    m.metadata["enhancements"] = sorted(enh.groups)
    if enh.non_certifying:
        m.metadata["non_certifying"] = True


# -- builders --------------------------------------------------------------
def build_approach1(n: int, bounds=None, enh=None, strengthen: bool = True) -> FormulationModel:
    """Binary sign linearisation of H <= |S| with bilinear w = x y rows."""
    h_lo, h_hi = _h_bounds(bounds, enh)
    m = _base(n, "1", h_lo, h_hi)
    _sign_rows(m, n, h_lo, h_hi, strengthen)
    _bilinear_rows(m, n)
    _area_rows(m, n)
    _attach_enhancements(m, enh)
    m.check()
    return m


def build_approach2(n: int, bounds=None, enh=None) -> FormulationModel:
    """Continuous model: U >= H and S^2 = U^2, no sign binaries."""
    h_lo, h_hi = _h_bounds(bounds, enh)
    m = _base(n, "2", h_lo, h_hi)
    for t in combinations(range(n), 3):
        m.add_var(tname("U", t), lower=h_lo, upper=0.5)
    for t in combinations(range(n), 3):
        suf = f"{t[0] + 1}_{t[1] + 1}_{t[2] + 1}"
        m.add_row(f"uh_{suf}", [(1.0, tname("U", t)), (-1.0, "H")], ">=", 0.0)
        m.add_row(
            f"usq_{suf}",
            [],
            "=",
            0.0,
            [(1.0, tname("S", t), tname("S", t)), (-1.0, tname("U", t), tname("U", t))],
        )
    _bilinear_rows(m, n)
    _area_rows(m, n)
    _attach_enhancements(m, enh)
    m.check()
    return m


def build_approach3(
    n: int, bounds=None, P: int = 10, relaxed: bool = True, enh=None, strengthen: bool = True
) -> FormulationModel:
    """Dyadic expansion x_i = sum 2^-p xi_ip + eps_i with products linearised.

    ``relaxed=False`` keeps omega_ij = eps_i y_j as bilinear rows;
    ``relaxed=True`` replaces them by McCormick envelopes over
    [0, 2^-P] x [0, 1], giving a MILP whose optimum bounds H_n^* from above.
    """
    if P < 1:
        raise InvalidParameter("P must be >= 1")
    h_lo, h_hi = _h_bounds(bounds, enh)
    m = _base(n, "3", h_lo, h_hi)
    m.metadata.update(P=P, relaxed=relaxed)
    _sign_rows(m, n, h_lo, h_hi, strengthen)
    tail = 2.0**-P
    for i in range(n):
        for p in range(P):
            m.add_var(f"xi_{i + 1}_{p + 1}", BINARY, 0, 1)
        m.add_var(f"eps_{i + 1}", lower=0.0, upper=tail)
    for i in range(n):
        for p in range(P):
            for j in range(n):
                m.add_var(f"phi_{i + 1}_{p + 1}_{j + 1}")
    for i in range(n):
        for j in range(n):
            m.add_var(f"omega_{i + 1}_{j + 1}", lower=0.0, upper=tail)
    # x_i = sum_p 2^-p xi_ip + eps_i
    for i in range(n):
        lin = [(1.0, X(i))] + [(-(2.0 ** -(p + 1)), f"xi_{i + 1}_{p + 1}") for p in range(P)]
        lin.append((-1.0, f"eps_{i + 1}"))
        m.add_row(f"xdisc_{i + 1}", lin, "=", 0.0)
    # w_ij = sum_p 2^-p phi_ipj + omega_ij
    for i in range(n):
        for j in range(n):
            lin = [(1.0, W(i, j))]
            lin += [(-(2.0 ** -(p + 1)), f"phi_{i + 1}_{p + 1}_{j + 1}") for p in range(P)]
            lin.append((-1.0, f"omega_{i + 1}_{j + 1}"))
            m.add_row(f"wdisc_{i + 1}_{j + 1}", lin, "=", 0.0)
    unit = mccormick((0, 1), (0, 1))
    for i in range(n):
        for p in range(P):
            for j in range(n):
                tag = f"phi_{i + 1}_{p + 1}_{j + 1}"
                m.rows.extend(unit.rows(f"xi_{i + 1}_{p + 1}", Y(j), tag, tag))
    small = mccormick((0, tail), (0, 1))
    for i in range(n):
        for j in range(n):
            om = f"omega_{i + 1}_{j + 1}"
            if relaxed:
                m.rows.extend(small.rows(f"eps_{i + 1}", Y(j), om, om))
            else:
                m.add_row(f"{om}_def", [(1.0, om)], "=", 0.0, [(-1.0, f"eps_{i + 1}", Y(j))])
    _area_rows(m, n)
    _attach_enhancements(m, enh)
    m.check()
    return m


# -- closed-form sizes -----------------------------------------------------
def expected_counts(approach: str, n: int, P: int = 10, relaxed: bool = True, strengthen: bool = True) -> dict:
    """Variable and row counts of the bare (enhancement-free) models."""
    c = math.comb(n, 3)
    base_vars = 2 * n + 1 + c + n * n
    if approach == "1":
        return {
            "variables": base_vars + c,
            "binaries": c,
            "linear_rows": (4 if strengthen else 2) * c + c,
            "quadratic_rows": n * n,
        }
    if approach == "2":
        return {
            "variables": base_vars + c,
            "binaries": 0,
            "linear_rows": c + c,
            "quadratic_rows": c + n * n,
        }
    if approach == "3":
        extra = n * P + n + n * P * n + n * n
        lin = (4 if strengthen else 2) * c + n + n * n + 4 * n * n * P + c
        return {
            "variables": base_vars + c + extra,
            "binaries": c + n * P,
            "linear_rows": lin + (4 * n * n if relaxed else 0),
            "quadratic_rows": 0 if relaxed else n * n,
        }
    raise InvalidParameter(f"unknown approach {approach}")


# -- feasible point from a configuration ----------------------------------
def point_values(model: FormulationModel, xy: np.ndarray, H: float | None = None) -> dict[str, float]:
    """Core variable values for ``xy``, with the discretisation of ``model`` if any."""
    return core_values(xy, H, model.metadata.get("P"))


def core_values(xy: np.ndarray, H: float | None = None, P: int | None = None) -> dict[str, float]:
    """Values for the core variables implied by coordinates ``xy``.

    Covers x, y, H, S, b, w, U and, when ``P`` is given, xi, eps, phi,
    omega. Enhancement binaries are filled by
    :func:`heilbronn.enhancements.assign_binaries`.
    """
    from .geometry import _signed_area_xy

    xy = np.asarray(xy, dtype=float)
    n = len(xy)
    vals: dict[str, float] = {}
    for i in range(n):
        vals[X(i)] = float(xy[i, 0])
        vals[Y(i)] = float(xy[i, 1])
    for i in range(n):
        for j in range(n):
            vals[W(i, j)] = float(xy[i, 0] * xy[j, 1])
    smin = np.inf
    for t in combinations(range(n), 3):
        i, j, k = t
        s = float(_signed_area_xy(xy[i, 0], xy[i, 1], xy[j, 0], xy[j, 1], xy[k, 0], xy[k, 1]))
        vals[tname("S", t)] = s
        vals[tname("b", t)] = 1.0 if s > 0 else 0.0
        vals[tname("U", t)] = abs(s)
        smin = min(smin, abs(s))
    vals["H"] = smin if H is None else H
    if P:
        for i in range(n):
            # greedy binary expansion of x_i
            r = float(xy[i, 0])
            for p in range(P):
                bit = 1.0 if r >= 2.0 ** -(p + 1) else 0.0
                r -= bit * 2.0 ** -(p + 1)
                vals[f"xi_{i + 1}_{p + 1}"] = bit
            vals[f"eps_{i + 1}"] = r
            for j in range(n):
                for p in range(P):
                    vals[f"phi_{i + 1}_{p + 1}_{j + 1}"] = vals[f"xi_{i + 1}_{p + 1}"] * float(xy[j, 1])
                vals[f"omega_{i + 1}_{j + 1}"] = r * float(xy[j, 1])
    return vals


# -- LP text export ----------------------------------------------------------
_WRAP = 100


def _num(v: float) -> str:
    return format(float(v), ".17g")


def _lin_terms(lin) -> list[str]:
    out = []
    for c, v in lin:
        sign = "-" if (c < 0 or (c == 0 and math.copysign(1, c) < 0)) else "+"
        mag = abs(c)
        out.append(f"{sign} {v}" if mag == 1.0 else f"{sign} {_num(mag)} {v}")
    return out


def _quad_terms(quad) -> list[str]:
    out = []
    for c, a, b in quad:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = f"{a} ^2" if a == b else f"{a} * {b}"
        out.append(f"{sign} {body}" if mag == 1.0 else f"{sign} {_num(mag)} {body}")
    return out


def _wrap(head: str, tokens: list[str]) -> list[str]:
    lines, cur = [], head
    for t in tokens:
        if len(cur) + 1 + len(t) > _WRAP and cur.strip() and cur != head:
            lines.append(cur)
            cur = "   " + t
        else:
            cur = f"{cur} {t}" if cur else t
    lines.append(cur)
    return lines


def lp_text(model: FormulationModel) -> str:
    """CPLEX-LP text for ``model``; byte-identical for identical models."""
    model.check()
    out = [f"\\ heilbronn n={model.metadata.get('n')} approach={model.metadata.get('approach')}"]
    out += ["Maximize", f" obj: {model.objective}", "Subject To"]
    for r in model.rows:
        if r.sense not in ("<=", ">=", "="):
            raise ExportUnsupported(f"row {r.name} has sense {r.sense!r}")
        if not r.lin and not r.quad:
            raise ExportUnsupported(f"row {r.name} has no terms")
        tokens = _lin_terms(r.lin)
        if r.quad:
            q = _quad_terms(r.quad)
            tokens += ["+", "["] + q + ["]"]
        tokens += [r.sense, _num(r.rhs)]
        out += _wrap(f" {r.name}:", tokens)
    out.append("Bounds")
    names = sorted(model.variables, key=name_key)
    for name in names:
        v = model.variables[name]
        if v.lower == v.upper:
            out.append(f" {name} = {_num(v.lower)}")
        else:
            out.append(f" {_num(v.lower)} <= {name} <= {_num(v.upper)}")
    bins = [nm for nm in names if model.variables[nm].kind == BINARY]
    if bins:
        out.append("Binaries")
        out += [f" {nm}" for nm in bins]
    out.append("End")
    return "\n".join(out) + "\n"


def lp_filename(n: int, approach, mask: int | None = None) -> str:
    tail = f"_enh{mask}" if mask else ""
    return f"heilbronn_n{n}_a{approach}{tail}.lp"


def export(model: FormulationModel, path) -> str:
    """Write ``model`` as LP text to ``path`` (UTF-8, LF endings)."""
    text = lp_text(model)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return str(path)


def _parse_terms(tokens: list[str]):
    lin, quad = [], []
    i, in_quad = 0, False
    sign, coef = 1.0, None
    while i < len(tokens):
        t = tokens[i]
        if t == "[":
            in_quad, sign, coef = True, 1.0, None
        elif t == "]":
            in_quad = False
        elif t in "+-":
            sign, coef = (1.0 if t == "+" else -1.0), None
        else:
            try:
                coef = float(t)
                i += 1
                continue
            except ValueError:
                pass
            c = sign * (1.0 if coef is None else coef)
            if in_quad:
                if i + 1 < len(tokens) and tokens[i + 1] == "^2":
                    quad.append((c, t, t))
                    i += 1
                elif i + 1 < len(tokens) and tokens[i + 1] == "*":
                    quad.append((c, t, tokens[i + 2]))
                    i += 2
                else:
                    raise ValueError(f"malformed quadratic term near {t!r}")
            else:
                lin.append((c, t))
            sign, coef = 1.0, None
        i += 1
    return lin, quad


def read_lp(text: str) -> FormulationModel:
    """Strict reader for files written by :func:`lp_text` (testing aid)."""
    model = FormulationModel()
    section = None
    rows_raw: list[list[str]] = []
    bins: set[str] = set()
    bounds: dict[str, tuple[float, float]] = {}
    for line in text.splitlines():
        if line.startswith("\\"):
            meta = dict(kv.split("=", 1) for kv in line[1:].split() if "=" in kv)
            if meta.get("n", "None") != "None":
                model.metadata["n"] = int(meta["n"])
            if meta.get("approach", "None") != "None":
                model.metadata["approach"] = meta["approach"]
            continue
        if line in ("Maximize", "Subject To", "Bounds", "Binaries", "End"):
            section = line
            continue
        if section == "Maximize":
            model.objective = line.split(":", 1)[1].strip()
        elif section == "Subject To":
            if line.startswith("   "):
                rows_raw[-1].extend(line.split())
            else:
                name, rest = line.strip().split(":", 1)
                rows_raw.append([name] + rest.split())
        elif section == "Bounds":
            tok = line.split()
            if len(tok) == 3 and tok[1] == "=":
                bounds[tok[0]] = (float(tok[2]), float(tok[2]))
            elif len(tok) == 5 and tok[1] == tok[3] == "<=":
                bounds[tok[2]] = (float(tok[0]), float(tok[4]))
            else:
                raise ValueError(f"unreadable bound line {line!r}")
        elif section == "Binaries":
            bins.add(line.strip())
    for name, (lo, hi) in bounds.items():
        model.variables[name] = Var(name, BINARY if name in bins else CONTINUOUS, lo, hi)
    for raw in rows_raw:
        name, body = raw[0], raw[1:]
        sense, rhs = body[-2], float(body[-1])
        terms = body[:-2]
        if "[" in terms:
            k = terms.index("[")
            if k > 0 and terms[k - 1] == "+":
                terms = terms[: k - 1] + terms[k:]
        lin, quad = _parse_terms(terms)
        model.add_row(name, lin, sense, rhs, quad)
    return model
