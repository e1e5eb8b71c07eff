"""Exact B-model data for local P2 in the large-radius and conifold charts.

Conventions.  The complex-structure coordinate is y; the conifold chart uses
w = 1 + 27y, so the conifold point is w = 0 and the large-radius point w = 1.
The basic generators are

    C(y) = 2F1(1/3, 2/3; 1; -27y)          (Jacobian of the mirror map)
    X(y) = 1/(1 + 27y)                      (discriminant)
    F(y) = theta log C + (1 - X)/3          (propagator),  theta = y d/dy

and the flat coordinates

    Q(y)    = y exp( int (C - 1) dy/y ),                 Q <-> y <-> q_LR
    -q_LR   = y exp( int (X/C^2 - 1) dy/y ),
    t_CF(w) = w + (11/18) w^2 + ...                      (conifold mirror map)
    q_CF    = square of the elliptic nome near w = 0.

t_CF is the analytic Frobenius solution of the Picard-Fuchs operator at w=0
normalised to unit linear coefficient, and q_CF is built from the logarithmic
Frobenius companion: with Pi_beta = t_CF log(w) + h(w) (gauge h = O(w^2)),
the nome ratio uses the derivative quotient

    2 pi i tau_CF = d Pi_beta / d t_CF = log w + t/(w t') + h'/t' + const,

so q_CF = (w/27) exp(E(w) - E(0)) with E = t/(w t') + h'/t'; the leading 1/27
is fixed by matching the known expansion of the nome at the conifold.  All
series here are exact over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Fr

from .series import TruncatedLaurentSeries as TLS


class RingClosureFailure(ArithmeticError):
    """A closed theta-ring rule failed its series self-verification."""


class FrobeniusRecurrenceSingular(ArithmeticError):
    """Indicial clash in the Frobenius recurrence (must not happen here)."""


def rename(s: TLS, var: str) -> TLS:
    return TLS(var, s.offset, s.coeffs, s.order)


# ---------------------------------------------------------------------------
# hypergeometric Jacobian and large-radius generators
# ---------------------------------------------------------------------------


def hypergeom_C(order: int) -> TLS:
    """C(y) = sum_n (-1)^n (3n)!/(n!)^3 y^n, truncated at the given order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = [Fr(1)]
    for n in range(1, order):
        coeffs.append(coeffs[-1] * Fr(-3 * (3 * n - 1) * (3 * n - 2), n * n))
    return TLS("y", 0, coeffs, order)


@dataclass(frozen=True)
class LargeRadiusPack:
    C: TLS
    X: TLS
    F: TLS
    Q_of_y: TLS
    qLR_of_y: TLS
    y_of_Q: TLS
    order: int

    def verify(self) -> None:
        """Series identities tying the pack together (exact)."""
        lhs = _theta_log(self.Q_of_y)
        assert lhs == self.C.truncate(lhs.order), "theta log Q != C"
        rt = self.Q_of_y.compose(rename(self.y_of_Q, "y"))
        assert rt == TLS.identity("y", rt.order), "mirror map round trip failed"


def _theta_log(s: TLS) -> TLS:
    """theta log s for s = c1*x*(1 + ...): equals theta(s)/s."""
    return s.theta() * s.inverse()


def generators_LR(order: int) -> LargeRadiusPack:
    if order < 2:
        raise ValueError("order must be >= 2")
    C = hypergeom_C(order)
    X = TLS.from_coeffs("y", [1, 27], 0, order).inverse()
    F = C.log().theta() + (1 - X) / 3
    Q_of_y = TLS.identity("y", order) * (C - 1).integrate_theta().exp()
    qLR_of_y = -(TLS.identity("y", order) * (X * (C * C).inverse() - 1).integrate_theta().exp())
    y_of_Q = rename(Q_of_y.revert(), "Q")
    return LargeRadiusPack(C, X, F, Q_of_y, qLR_of_y, y_of_Q, order)


# ---------------------------------------------------------------------------
# closed theta rules on the generator ring Q[X^(+-1)][F]
# ---------------------------------------------------------------------------

# polynomial data: mapping (m, n) -> coefficient of F^m X^n
THETA_X_RULE = {(0, 2): Fr(1), (0, 1): Fr(-1)}                    # X^2 - X
THETA_F_RULE = {(2, 0): Fr(-1), (1, 0): Fr(-1, 3), (1, 1): Fr(1, 3),
                (0, 1): Fr(1, 9), (0, 2): Fr(-1, 9)}              # -F^2 - (1-X)F/3 + X(1-X)/9
THETA_LOGC_RULE = {(1, 0): Fr(1), (0, 0): Fr(-1, 3), (0, 1): Fr(1, 3)}   # F - (1-X)/3


@dataclass(frozen=True)
class ThetaRules:
    theta_X: dict
    theta_F: dict
    theta_logC: dict
    verified_order: int


def _eval_poly(poly: dict, F: TLS, X: TLS) -> TLS:
    out = TLS.zero(F.variable, F.order)
    xinv = X.inverse()
    for (m, n), c in poly.items():
        term = TLS.constant(F.variable, c, F.order)
        for _ in range(m):
            term = term * F
        base = X if n >= 0 else xinv
        for _ in range(abs(n)):
            term = term * base
        out = out + term
    return out


def theta_ring_rules(order: int = 30) -> ThetaRules:
    """Closed rules theta X = X^2 - X etc., series-verified before return."""
    pack = generators_LR(order + 2)
    F, X, C = pack.F, pack.X, pack.C
    checks = [
        (X.theta(), _eval_poly(THETA_X_RULE, F, X), "theta X"),
        (F.theta(), _eval_poly(THETA_F_RULE, F, X), "theta F"),
        (C.log().theta(), _eval_poly(THETA_LOGC_RULE, F, X), "theta log C"),
    ]
    for lhs, rhs, name in checks:
        n = min(lhs.order, rhs.order, order)
        if lhs.coeff_list(0, n) != rhs.coeff_list(0, n):
            raise RingClosureFailure(f"{name} rule failed at order {n}")
    return ThetaRules(dict(THETA_X_RULE), dict(THETA_F_RULE), dict(THETA_LOGC_RULE), order)


# ---------------------------------------------------------------------------
# Picard-Fuchs operator, both charts
# ---------------------------------------------------------------------------


class PicardFuchsOperator:
    """L = theta^3 + 27y * theta (theta + 1/3)(theta + 2/3).

    In the conifold chart w = 1 + 27y the logarithmic derivative becomes
    theta = (w - 1) d/dw and multiplication by 27y becomes (w - 1).  Derived
    from the hypergeometric equation annihilating C = theta Pi_alpha; the
    verify_* methods check the annihilation statements as exact series tests.
    """

    def __init__(self, chart: str):
        if chart not in ("LR", "CF"):
            raise ValueError("chart must be 'LR' or 'CF'")
        self.chart = chart
        self.var = "y" if chart == "LR" else "w"

    def _theta(self, f: TLS) -> TLS:
        if self.chart == "LR":
            return f.theta()
        d = f.derivative()
        return d.shift(1) - d            # (w - 1) d/dw

    def apply(self, f: TLS) -> TLS:
        # L = theta^3 + 27y (theta^3 + theta^2 + (2/9) theta); in the conifold
        # chart the theta^3 terms are grouped as w*theta^3 so that the
        # truncation horizon is not overestimated downward
        t1 = self._theta(f)
        t2 = self._theta(t1)
        t3 = self._theta(t2)
        if self.chart == "LR":
            return t3 + (t3 + t2 + t1.scale(Fr(2, 9))).shift(1).scale(27)
        low = t2 + t1.scale(Fr(2, 9))
        return t3.shift(1) + low.shift(1) - low

    def apply_dtheta(self, f: TLS) -> TLS:
        """The formal theta-derivative L' = dL/dtheta, used for log solutions."""
        t1 = self._theta(f)
        t2 = self._theta(t1)
        if self.chart == "LR":
            return t2.scale(3) + (t2.scale(3) + t1.scale(2) + f.scale(Fr(2, 9))).shift(1).scale(27)
        low = t1.scale(2) + f.scale(Fr(2, 9))
        return t2.scale(3).shift(1) + low.shift(1) - low

    # -- Frobenius machinery (conifold chart) --

    def frobenius_pivot(self, s: int, m: int) -> Fr:
        mono = TLS.from_map(self.var, {s: 1}, s + 2)
        return self.apply(mono).coeff(m)

    def solve_analytic_at_conifold(self, order: int) -> TLS:
        """Unique solution vanishing at w=0 with unit linear coefficient."""
        assert self.chart == "CF"
        coeffs = [Fr(0), Fr(1)] + [Fr(0)] * (order - 2)
        for m in range(order - 2):
            rhs = self.apply(TLS("w", 0, coeffs, order)).coeff(m)
            piv = self.frobenius_pivot(m + 2, m)
            if piv == 0:
                raise FrobeniusRecurrenceSingular(f"indicial clash at exponent {m + 2}")
            coeffs[m + 2] = -rhs / piv
        return TLS("w", 0, coeffs, order)

    def log_companion_source(self, t: TLS) -> TLS:
        """Pure-series part G of L(t log w): L(t log w + h) = 0 iff L h = -G."""
        assert self.chart == "CF"
        t1, t2 = t.derivative(), t.derivative().derivative()
        p3 = TLS.from_coeffs("w", [0, -1, 3, -3, 1], 0, t.order + 4)   # w(w-1)^3
        p2 = TLS.from_coeffs("w", [-1, 6, -9, 4], 0, t.order + 4)      # (w-1)^2(4w-1)
        p1 = TLS.from_coeffs("w", [Fr(11, 9), Fr(-31, 9), Fr(20, 9)], 0, t.order + 4)
        G = (p3 * (t2.scale(3).shift(-1) + t1.scale(-3).shift(-2) + t.scale(2).shift(-3))
             + p2 * (t1.scale(2).shift(-1) + t.scale(-1).shift(-2))
             + p1 * t.shift(-1))
        nz = G.normalize()
        if nz.valuation() is not None and nz.valuation() < 0:
            raise FrobeniusRecurrenceSingular("log-companion source has polar part")
        return nz

    def solve_log_companion(self, t: TLS) -> TLS:
        """h with L(t log w + h) = 0, gauge-fixed by h = O(w^2).

        The companion is determined to order t.order - 3 by the coefficients
        of t, so the result is truncated accordingly.
        """
        assert self.chart == "CF"
        G = self.log_companion_source(t)
        order = min(t.order, G.order + 2) - 1
        coeffs = [Fr(0)] * order
        for m in range(order - 2):
            rhs = self.apply(TLS("w", 0, coeffs, order)).coeff(m) + G.coeff(m)
            piv = self.frobenius_pivot(m + 2, m)
            if piv == 0:
                raise FrobeniusRecurrenceSingular(f"indicial clash at exponent {m + 2}")
            coeffs[m + 2] = -rhs / piv
        return TLS("w", 0, coeffs, order)

    # -- annihilation checks --

    def verify_lr_periods(self, order: int = 30) -> None:
        """L kills 1, log y + A, and (1/2) log^2 y + A log y + B exactly."""
        assert self.chart == "LR"
        C = hypergeom_C(order)
        A = (C - 1).integrate_theta()
        six_y = TLS.from_map("y", {1: 6}, A.order - 1)
        r1 = self.apply(A) + six_y          # L(log y) = 6y
        assert r1.truncate(order - 4).is_zero(), "L(Pi_alpha) != 0"
        # B from L B = -27y - L'A; solved by theta-recurrence (pivot m^3)
        src = TLS.from_map("y", {1: 27}, order - 2) + self.apply_dtheta(A)
        coeffs = [Fr(0)] * (order - 2)
        for m in range(1, order - 2):
            rhs = self.apply(TLS("y", 0, coeffs, order - 2)).coeff(m) + src.coeff(m)
            piv = self.frobenius_pivot(m, m)
            coeffs[m] = -rhs / piv
        B = TLS("y", 0, coeffs, order - 2)
        resid = self.apply(B) + src
        assert resid.truncate(order - 6).is_zero(), "L(Pi_beta) != 0"

    def verify_cf_periods(self, pack: "ConifoldFramePack") -> None:
        assert self.chart == "CF"
        t = pack.tCF_of_w
        r = self.apply(t)
        assert r.truncate(t.order - 4).is_zero(), "L(t_CF) != 0"
        h = self.solve_log_companion(t)
        resid = self.apply(h) + self.log_companion_source(t)
        assert resid.truncate(t.order - 4).is_zero(), "L(log companion) != 0"


# ---------------------------------------------------------------------------
# conifold frame
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConifoldFramePack:
    tCF_of_w: TLS
    w_of_tCF: TLS
    qCF_of_tCF: TLS
    C_CF: TLS
    F_CF: TLS
    order: int


def X_in_w(order: int) -> TLS:
    """X = 1/(1+27y) = 1/w, exactly."""
    return TLS.from_map("w", {-1: 1}, order)


def frame_CF_generators(tCF_of_w: TLS) -> tuple[TLS, TLS]:
    """C_CF = theta t_CF and F_CF = theta log C_CF + (1-X)/3 in the w chart."""
    d = tCF_of_w.derivative()
    C_CF = d.shift(1) - d
    u = C_CF.derivative() * C_CF.inverse()
    theta_logC = u.shift(1) - u
    F_CF = theta_logC + TLS.from_map("w", {0: Fr(1, 3), -1: Fr(-1, 3)}, theta_logC.order)
    return C_CF, F_CF


def frobenius_conifold(order: int) -> ConifoldFramePack:
    """Exact conifold-frame series: t_CF, its inverse, q_CF, C_CF, F_CF.

    All pack fields carry at least `order` known coefficients past their
    leading exponent; the solver works at a padded order internally.
    """
    if order < 3:
        raise ValueError("order must be >= 3")
    pad = order + 8
    pf = PicardFuchsOperator("CF")
    t_ext = pf.solve_analytic_at_conifold(pad)
    h = pf.solve_log_companion(t_ext)
    t1 = t_ext.derivative()
    E = (t_ext.shift(-1) + h.derivative()) * t1.inverse()
    q_w = (E - E.coeff(0)).exp().shift(1).scale(Fr(1, 27))
    t = t_ext.truncate(order)
    w_of_t = rename(t_ext.revert(), "t").truncate(order)
    q_of_t = rename(q_w.compose(rename(t_ext.revert(), "w")), "t").truncate(order)
    C_CF, F_CF = frame_CF_generators(t_ext)
    return ConifoldFramePack(t, w_of_t, q_of_t,
                             C_CF.truncate(order), F_CF.truncate(order), order)
