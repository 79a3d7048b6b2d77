"""
Manifests of the two example families and of the Sasakian ball.

Example 1: R x (Cahen-Wallach space R^{1,2s+1}), theta = dt + sum_{i<s} x_{2i-1} dx_{2i}
+ v dx_{2s-1} + u dx_{2s}.
Example 2: R x (R x N_0 x R) with N_0 the complex hyperbolic ball of complex
dimension s, theta = dt + v du + theta_0, d theta_0 the Kaehler form of N_0.
"""

from typing import List, Optional, Sequence

import numpy as np
import sympy as sp
from loguru import logger

from src.chart.chart import Chart, ChartFunction
from src.chart.fields import FrameMetric, OneForm, VectorField
from src.config.settings import Settings, get_settings
from src.contact.structure import ContactStructure
from src.errors import PreconditionError, VerificationFailure
from src.holonomy.algebras import ambrose_singer_algebra
from src.models.enums import HolonomyMode
from src.models.manifest import Manifest, ManifestFlags

EXAMPLE2_NOTE = (
    "N_0 = complex hyperbolic ball, theta_0 = sum (x_{2j-1} dx_{2j} - x_{2j} dx_{2j-1}) / w, "
    "w = 1 - sum x_i^2, H = sum x_i^2 + x1 x2; one valid instantiation among many"
)


def _x_names(count: int) -> List[str]:
    return [f"x{i}" for i in range(1, count + 1)]


def _basepoint(chart: Chart) -> List[int]:
    return [0] * chart.n


def _shifted(chart: Chart, name: str, coeff: ChartFunction) -> VectorField:
    """d_name - coeff d_t."""
    t = VectorField.coordinate(chart, "t")
    return VectorField.coordinate(chart, name) - t.scale(coeff)


# ============================================================================
# EXAMPLE 1
# ============================================================================


def build_example1(s: int) -> Manifest:
    """
    Raises:
        PreconditionError: s < 2
    """
    if s < 2:
        raise PreconditionError("Example 1 needs s >= 2", {"s": s})
    xs = _x_names(2 * s)
    chart = Chart(["t", "v", *xs, "u"])
    zero, one = chart.zero, chart.one
    x = [chart.gen(name) for name in xs]
    v, u = chart.gen("v"), chart.gen("u")

    theta = {name: zero for name in chart.coords}
    theta["t"] = one
    for i in range(1, s):
        theta[f"x{2 * i}"] = x[2 * i - 2]
    theta[f"x{2 * s - 1}"] = v
    theta[f"x{2 * s}"] = u

    frame = [VectorField.coordinate(chart, "v")]
    for i in range(1, 2 * s + 1):
        frame.append(_shifted(chart, f"x{i}", theta[f"x{i}"]))
    frame.append(VectorField.coordinate(chart, "u"))

    rank = 2 * s + 2
    gram = [[zero] * rank for _ in range(rank)]
    gram[0][rank - 1] = gram[rank - 1][0] = one
    for i in range(1, 2 * s + 1):
        gram[i][i] = one
    gram[rank - 1][rank - 1] = sum((xi * xi for xi in x), zero)

    S = ContactStructure(
        chart,
        OneForm(chart, tuple(theta[c] for c in chart.coords)),
        FrameMetric(tuple(frame), tuple(tuple(r) for r in gram)),
        _basepoint(chart),
        name=f"example1_s{s}",
    )
    logger.info(f"✓ Example 1 built: s={s}, n={S.n}")
    return Manifest.from_structure(S, ManifestFlags(expect_K_contact=True, note="Cahen-Wallach, H = sum x_i^2"))


# ============================================================================
# COMPLEX HYPERBOLIC BALL
# ============================================================================


def ball_metric(s: int) -> sp.Matrix:
    """
    h_0 on R^{2s} in the real coordinates x1..x2s (real sympy symbols).

    h_0 = 2 Re sum g_{j k-bar} dz_j dz-bar_k, g_{j k-bar} = delta_jk / w + z-bar_j z_k / w^2.
    """
    xs = sp.symbols(f"x1:{2 * s + 1}", real=True)
    z = [xs[2 * j] + sp.I * xs[2 * j + 1] for j in range(s)]
    w = 1 - sum(xi ** 2 for xi in xs)
    g = [[(1 if j == k else 0) / w + sp.conjugate(z[j]) * z[k] / w ** 2 for k in range(s)] for j in range(s)]

    def complex_components(a: int) -> List[sp.Expr]:
        c = [sp.Integer(0)] * s
        c[a // 2] = sp.Integer(1) if a % 2 == 0 else sp.I
        return c

    rows = []
    for a in range(2 * s):
        ca = complex_components(a)
        row = []
        for b in range(2 * s):
            cb = complex_components(b)
            value = sum(
                g[j][k] * (ca[j] * sp.conjugate(cb[k]) + cb[j] * sp.conjugate(ca[k]))
                for j in range(s)
                for k in range(s)
            )
            row.append(sp.cancel(sp.expand((value + sp.conjugate(value)) / 2)))
        rows.append(row)
    return sp.Matrix(rows)


def ball_potential_form(chart: Chart, s: int) -> dict:
    """theta_0 components keyed by coordinate name."""
    x = [chart.gen(name) for name in _x_names(2 * s)]
    w = chart.one - sum((xi * xi for xi in x), chart.zero)
    theta0 = {}
    for j in range(s):
        a, b = x[2 * j], x[2 * j + 1]
        theta0[f"x{2 * j + 1}"] = -b / w
        theta0[f"x{2 * j + 2}"] = a / w
    return theta0


def _ball_in_chart(chart: Chart, s: int) -> List[List[ChartFunction]]:
    xs = sp.symbols(f"x1:{2 * s + 1}", real=True)
    targets = [chart.symbols[chart.index(name)] for name in _x_names(2 * s)]
    h0 = ball_metric(s).subs(dict(zip(xs, targets)), simultaneous=True)
    return [[chart.from_expr(h0[a, b]) for b in range(2 * s)] for a in range(2 * s)]


def verify_kaehler(chart: Chart, s: int, theta0: dict, h0: Sequence[Sequence[ChartFunction]]) -> None:
    """
    d theta_0 = omega, omega(X, Y) = h_0(JX, Y), J e_{2j-1} = e_{2j}.

    Raises:
        VerificationFailure: the identity fails for some pair
    """
    names = _x_names(2 * s)
    gens = [chart.gen(name) for name in names]
    for a in range(2 * s):
        for b in range(2 * s):
            d_theta = theta0[names[b]].diff(gens[a]) - theta0[names[a]].diff(gens[b])
            # J e_a = e_{a+1} for a even (0-based), -e_{a-1} otherwise
            omega = h0[a + 1][b] if a % 2 == 0 else -h0[a - 1][b]
            if d_theta - omega:
                logger.error(f"d theta_0 differs from the Kaehler form at ({a}, {b})")
                raise VerificationFailure(
                    "d theta_0 is not the Kaehler form", {"entry": [a, b], "s": s}
                )
    logger.debug(f"d theta_0 = omega verified for s={s}")


def kaehler_pairing(h0: sp.Matrix) -> sp.Expr:
    """
    d theta_0(J) with J the bivector of the complex structure at a point.

    J^{ab} = (h_0^{-1} omega h_0^{-1})^{ab}; with the full double sum this is tr(J^T J) = 2s.
    """
    n = h0.shape[0]
    J = sp.zeros(n, n)
    for j in range(0, n, 2):
        J[j + 1, j] = 1
        J[j, j + 1] = -1
    omega = J.T * h0
    inverse = h0.inv()
    bivector = inverse * omega * inverse
    return sp.simplify(sum(omega[a, b] * bivector[a, b] for a in range(n) for b in range(n)))


def build_sasakian_ball(s: int) -> Manifest:
    """
    theta = dt + theta_0 over the ball, g = h_0 on D (Riemannian, Sasakian).

    Raises:
        PreconditionError: s < 2
    """
    if s < 2:
        raise PreconditionError("the Sasakian ball needs s >= 2 (n >= 5)", {"s": s})
    xs = _x_names(2 * s)
    chart = Chart(["t", *xs])
    theta0 = ball_potential_form(chart, s)
    h0 = _ball_in_chart(chart, s)
    verify_kaehler(chart, s, theta0, h0)

    theta = OneForm(chart, tuple(chart.one if c == "t" else theta0[c] for c in chart.coords))
    frame = tuple(_shifted(chart, name, theta0[name]) for name in xs)
    S = ContactStructure(
        chart, theta, FrameMetric(frame, tuple(tuple(r) for r in h0)), _basepoint(chart), name=f"sasakian_ball_s{s}"
    )
    return Manifest.from_structure(S, ManifestFlags(expect_K_contact=True, note="Sasakian structure over the complex hyperbolic ball"))


# ============================================================================
# EXAMPLE 2
# ============================================================================


def example2_target(s: int) -> int:
    """dim u(s) + 2s."""
    return s * s + 2 * s


def build_example2(s: int, certify: bool = True, settings: Optional[Settings] = None) -> Manifest:
    """
    Raises:
        PreconditionError: s not in {1, 2}
        VerificationFailure: d theta_0 != omega, or the adapted holonomy misses
            dim u(s) + 2s (checked unless certify=False)
    """
    if s not in (1, 2):
        raise PreconditionError("Example 2 is shipped for s in {1, 2}", {"s": s})
    xs = _x_names(2 * s)
    chart = Chart(["t", "v", *xs, "u"])
    zero, one = chart.zero, chart.one
    theta0 = ball_potential_form(chart, s)
    h0 = _ball_in_chart(chart, s)
    verify_kaehler(chart, s, theta0, h0)

    v = chart.gen("v")
    x = [chart.gen(name) for name in xs]
    theta = {c: theta0.get(c, zero) for c in chart.coords}
    theta["t"] = one
    theta["u"] = v

    frame = [VectorField.coordinate(chart, "v")]
    frame += [_shifted(chart, name, theta0[name]) for name in xs]
    frame.append(_shifted(chart, "u", v))

    rank = 2 * s + 2
    gram = [[zero] * rank for _ in range(rank)]
    gram[0][rank - 1] = gram[rank - 1][0] = one
    for a in range(2 * s):
        for b in range(2 * s):
            gram[a + 1][b + 1] = h0[a][b]
    gram[rank - 1][rank - 1] = sum((xi * xi for xi in x), zero) + x[0] * x[1]

    S = ContactStructure(
        chart,
        OneForm(chart, tuple(theta[c] for c in chart.coords)),
        FrameMetric(tuple(frame), tuple(tuple(r) for r in gram)),
        _basepoint(chart),
        name=f"example2_s{s}",
    )
    manifest = Manifest.from_structure(S, ManifestFlags(expect_K_contact=True, note=EXAMPLE2_NOTE))
    if certify:
        certify_example2(manifest, s, settings)
    logger.info(f"✓ Example 2 built: s={s}, n={S.n}")
    return manifest


def certify_example2(manifest: Manifest, s: int, settings: Optional[Settings] = None) -> int:
    """
    Adapted holonomy dimension must equal dim u(s) + 2s for the shipped H.

    Raises:
        VerificationFailure: dimension differs
    """
    settings = settings or get_settings()
    S = manifest.to_structure()
    estimate = ambrose_singer_algebra(
        S, None, HolonomyMode.ADAPTED, settings=settings, rng=np.random.default_rng(settings.seed)
    )
    target = example2_target(s)
    if estimate.dim != target:
        logger.error(f"Example 2 (s={s}): adapted holonomy dim {estimate.dim}, expected {target}")
        raise VerificationFailure(
            "shipped H is not generic enough", {"s": s, "dim": estimate.dim, "expected": target}
        )
    return estimate.dim
