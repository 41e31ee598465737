"""Numeric equilibrium finding: multistart Newton, homotopy continuation,
degree estimation, bounded domains, and boundary audits.

All searches are deterministic given their seed: start points come from a
scrambled Halton sequence, runs are merged in lexicographic order, and no
wall-clock or scheduling state enters any report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import qmc

from .conservation import MassVector, conserved_mass_vector
from .network import FlowAugmentation, GeneralMonotone, MassAction, NetworkError, ReactionNetwork


class PathTrackingError(RuntimeError):
    """Homotopy path tracking failed; carries the last good lambda."""

    def __init__(self, message: str, last_lambda: float):
        super().__init__(f"{message} (last good lambda = {last_lambda:.6g})")
        self.last_lambda = last_lambda


class UniqueEquilibriumError(RuntimeError):
    """A certified one-signed system did not yield exactly one equilibrium."""


@dataclass
class NumericSystem:
    """Evaluatable dynamical system on the open positive orthant.

    ``f`` is the full right-hand side and ``jac`` its Jacobian (valid on
    the open orthant).  Systems built from flow-augmented networks also
    carry the decomposition f(c) = c_in - outflow*c + g(c), which the
    homotopy and boundary audits need; standalone fixtures may leave the
    flow fields as None.  Evaluators must be pure.
    """

    n: int
    f: Callable[[np.ndarray], np.ndarray]
    jac: Callable[[np.ndarray], np.ndarray]
    g: Optional[Callable[[np.ndarray], np.ndarray]] = None
    c_in: Optional[np.ndarray] = None
    outflow: Optional[np.ndarray] = None
    provenance: str = "custom"

    @property
    def has_flow_structure(self) -> bool:
        return self.g is not None and self.c_in is not None and self.outflow is not None

    def f_lambda(self, c: np.ndarray, lam: float) -> np.ndarray:
        """Homotopy family c_in - outflow*c + lam * g(c)."""
        self._require_flows()
        return self.c_in - self.outflow * c + lam * self.g(c)

    def jac_lambda(self, c: np.ndarray, lam: float) -> np.ndarray:
        self._require_flows()
        return lam * (self.jac(c) + np.diag(self.outflow)) - np.diag(self.outflow)

    def _require_flows(self):
        if not self.has_flow_structure:
            raise ValueError(f"system {self.provenance!r} lacks inflow/outflow structure")


def numeric_system_from_network(
    net: ReactionNetwork,
    rate_constants: Optional[Dict[str, float]] = None,
    flows: Optional[FlowAugmentation] = None,
) -> NumericSystem:
    """Bind a flow-free network to numbers and wrap it as a NumericSystem.

    Every mass-action reaction needs a numeric rate constant, either on
    the reaction itself or in ``rate_constants`` keyed by reaction label.
    General monotone reactions must carry a numeric evaluator returning
    ``(rate, partials)``.  With ``flows`` given, the system is the
    augmented f(c) = c_in - outflow*c + g(c); otherwise f = g.

    Raises:
        NetworkError: on flow reactions in the network, a missing rate
            constant, or a general reaction without an evaluator.
    """
    if any(r.is_flow for r in net.reactions):
        raise NetworkError("pass the core network; flows are supplied separately")
    rate_constants = rate_constants or {}
    n = net.n
    mass_rows = []
    general = []
    for r in net.reactions:
        vec = np.array(r.reaction_vector(n), dtype=float)
        if isinstance(r.kinetics, MassAction):
            k = r.kinetics.value if r.kinetics.value is not None else rate_constants.get(r.label)
            if k is None:
                raise NetworkError(f"missing parameter binding for rate constant of {r.label}")
            y = np.array(r.source.as_vector(n), dtype=float)
            mass_rows.append((float(k), y, vec))
        elif isinstance(r.kinetics, GeneralMonotone):
            if r.kinetics.evaluator is None:
                raise NetworkError(f"general kinetics reaction {r.label} has no numeric evaluator")
            general.append((r.kinetics.evaluator, vec))
        else:
            raise NetworkError(f"unsupported kinetics on {r.label}")

    if mass_rows:
        kvec = np.array([row[0] for row in mass_rows])
        Y = np.array([row[1] for row in mass_rows])
        V = np.array([row[2] for row in mass_rows])
    else:
        kvec = np.zeros(0)
        Y = np.zeros((0, n))
        V = np.zeros((0, n))

    def g(c: np.ndarray) -> np.ndarray:
        out = np.zeros(n)
        if len(kvec):
            rates = kvec * np.prod(np.power(c, Y), axis=1)
            out += rates @ V
        for evaluator, vec in general:
            rate, _ = evaluator(c)
            out += rate * vec
        return out

    def jac_g(c: np.ndarray) -> np.ndarray:
        J = np.zeros((n, n))
        if len(kvec):
            rates = kvec * np.prod(np.power(c, Y), axis=1)
            J += V.T @ (rates[:, None] * Y / c[None, :])
        for evaluator, vec in general:
            _, partials = evaluator(c)
            J += np.outer(vec, np.asarray(partials))
        return J

    if flows is None:
        return NumericSystem(n, g, jac_g, provenance=f"network:{net.network_hash()}")
    if len(flows.inflow) != n:
        raise NetworkError(f"flow vectors have length {len(flows.inflow)}, expected {n}")
    c_in = np.array(flows.inflow)
    lam_o = np.array(flows.outflow)

    def f(c: np.ndarray) -> np.ndarray:
        return c_in - lam_o * c + g(c)

    def jac(c: np.ndarray) -> np.ndarray:
        return jac_g(c) - np.diag(lam_o)

    return NumericSystem(n, f, jac, g=g, c_in=c_in, outflow=lam_o, provenance=f"network:{net.network_hash()}")


def finite_difference_jacobian(f: Callable, c: np.ndarray, scale: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian with step scale*(1+|c_i|) per coordinate."""
    n = len(c)
    J = np.zeros((n, n))
    for i in range(n):
        h = scale * (1.0 + abs(c[i]))
        up = c.copy()
        dn = c.copy()
        up[i] += h
        dn[i] -= h
        J[:, i] = (f(up) - f(dn)) / (2 * h)
    return J


# ---------------------------------------------------------------------------
# Bounded domains


class MassDomain:
    """Open bounded region {c > 0 : m . (outflow * c) < M}."""

    def __init__(self, m: Sequence[float], outflow: Sequence[float], bound: float):
        self.m = np.array([float(x) for x in m])
        self.outflow = np.array([float(x) for x in outflow])
        self.bound = float(bound)
        if any(self.m <= 0) or any(self.outflow <= 0) or self.bound <= 0:
            raise ValueError("domain needs positive mass vector, outflows, and bound")
        self.weights = self.m * self.outflow

    @property
    def n(self) -> int:
        return len(self.m)

    def contains(self, c: np.ndarray, closed: bool = False, tol: float = 1e-12) -> bool:
        c = np.asarray(c)
        slack = tol * (1.0 + self.bound)
        if closed:
            return bool(np.all(c >= -slack) and self.weights @ c <= self.bound + slack)
        return bool(np.all(c > 0) and self.weights @ c < self.bound)

    def sample_interior(self, count: int, seed: int) -> np.ndarray:
        X = _simplex_points(self.n, count, seed, on_face=False)
        return X * (self.bound / self.weights)

    def sample_side(self, species: int, count: int, seed: int) -> np.ndarray:
        pts = self.sample_interior(count, seed)
        pts[:, species] = 0.0
        return pts

    def sample_outer(self, count: int, seed: int) -> np.ndarray:
        X = _simplex_points(self.n, count, seed, on_face=True)
        pts = X * (self.bound / self.weights)
        scale = self.bound / (pts @ self.weights)
        return pts * scale[:, None]


class BoxDomain:
    """Open axis-aligned box, e.g. the unit cube of the cascade models."""

    def __init__(self, lo: Sequence[float], hi: Sequence[float]):
        self.lo = np.array([float(x) for x in lo])
        self.hi = np.array([float(x) for x in hi])
        if any(self.lo >= self.hi):
            raise ValueError("box needs lo < hi in every coordinate")

    @property
    def n(self) -> int:
        return len(self.lo)

    def contains(self, c: np.ndarray, closed: bool = False, tol: float = 1e-12) -> bool:
        c = np.asarray(c)
        slack = tol * (1.0 + np.max(np.abs(self.hi)))
        if closed:
            return bool(np.all(c >= self.lo - slack) and np.all(c <= self.hi + slack))
        return bool(np.all(c > self.lo) and np.all(c < self.hi))

    def boundary_distance(self, c: np.ndarray) -> float:
        c = np.asarray(c)
        return float(min(np.min(c - self.lo), np.min(self.hi - c)))

    def sample_interior(self, count: int, seed: int) -> np.ndarray:
        u = qmc.Halton(self.n, scramble=True, seed=seed).random(count)
        u = np.clip(u, 1e-9, 1 - 1e-9)
        return self.lo + u * (self.hi - self.lo)

    def sample_face(self, species: int, upper: bool, count: int, seed: int) -> np.ndarray:
        pts = self.sample_interior(count, seed)
        pts[:, species] = self.hi[species] if upper else self.lo[species]
        return pts


def _simplex_points(n: int, count: int, seed: int, on_face: bool) -> np.ndarray:
    """Low-discrepancy points in {x > 0, sum x < 1} (or on sum x = 1)."""
    dim = n if on_face else n + 1
    u = qmc.Halton(dim, scramble=True, seed=seed).random(count)
    e = -np.log1p(-np.clip(u, 1e-12, 1 - 1e-12))
    x = e[:, :n] / e.sum(axis=1, keepdims=True)
    return x


def make_domain(m, flows: FlowAugmentation, bound: float) -> MassDomain:
    """Bounded domain for the augmented system; requires bound > m . c_in.

    Raises:
        ValueError: reporting the violated inequality when the bound is
            not strictly larger than m . c_in.
    """
    entries = m.as_floats() if isinstance(m, MassVector) else [float(x) for x in m]
    min_bound = float(np.dot(entries, flows.inflow))
    if not bound > min_bound:
        raise ValueError(f"bound M = {bound} must satisfy M > m . c_in = {min_bound}")
    return MassDomain(entries, flows.outflow, bound)


def default_domain(m, flows: FlowAugmentation, mult: float = 10.0) -> MassDomain:
    """Domain with M = mult * (m . c_in); any mult > 1 yields a valid region."""
    entries = m.as_floats() if isinstance(m, MassVector) else [float(x) for x in m]
    return make_domain(m, flows, mult * float(np.dot(entries, flows.inflow)))


# ---------------------------------------------------------------------------
# Root finding


@dataclass
class NewtonResult:
    point: Optional[np.ndarray]
    residual: float
    converged: bool
    status: str
    iterations: int


def newton_solve(sys: NumericSystem, x0: Sequence[float], tol: float = 1e-10, max_iter: int = 100) -> NewtonResult:
    """Damped Newton iteration confined to the open positive orthant.

    Steps are shortened to keep every coordinate strictly positive, then
    halved until the residual norm decreases.  Statuses: ``converged``,
    ``singular-jacobian``, ``no-descent``, ``diverged``, ``max-iterations``.
    """
    x = np.array(x0, dtype=float)
    if np.any(x <= 0):
        raise ValueError("start point must be strictly positive")
    fx = sys.f(x)
    r = float(np.linalg.norm(fx))
    for it in range(1, max_iter + 1):
        if r <= tol:
            return NewtonResult(x, r, True, "converged", it - 1)
        try:
            step = np.linalg.solve(sys.jac(x), -fx)
        except np.linalg.LinAlgError:
            return NewtonResult(None, r, False, "singular-jacobian", it - 1)
        if not np.all(np.isfinite(step)):
            return NewtonResult(None, r, False, "singular-jacobian", it - 1)
        # Longest step that keeps the iterate strictly inside the orthant.
        alpha = 1.0
        negative = step < 0
        if np.any(negative):
            alpha = min(1.0, 0.95 * float(np.min(x[negative] / -step[negative])))
        accepted = False
        while alpha > 1e-13:
            x_new = x + alpha * step
            f_new = sys.f(x_new)
            r_new = float(np.linalg.norm(f_new))
            if np.isfinite(r_new) and r_new < r:
                x, fx, r = x_new, f_new, r_new
                accepted = True
                break
            alpha *= 0.5
        if not accepted:
            return NewtonResult(None, r, False, "no-descent", it)
        if np.any(np.abs(x) > 1e14):
            return NewtonResult(None, r, False, "diverged", it)
    if r <= tol:
        return NewtonResult(x, r, True, "converged", max_iter)
    return NewtonResult(None, r, False, "max-iterations", max_iter)


@dataclass
class Equilibrium:
    point: Tuple[float, ...]
    residual: float
    det_sign: int


@dataclass
class EquilibriumReport:
    """Deduplicated equilibria found in a domain, with a degree estimate."""

    equilibria: List[Equilibrium]
    degree_estimate: int
    starts: int
    seed: int
    tol: float
    dedup_radius: float
    converged_runs: int
    homotopy_endpoint: Optional[Tuple[float, ...]] = None
    homotopy_match_index: Optional[int] = None

    @property
    def count(self) -> int:
        return len(self.equilibria)

    def to_dict(self) -> dict:
        return {
            "equilibria": [
                {"c": list(e.point), "residual": e.residual, "det_sign": e.det_sign}
                for e in self.equilibria
            ],
            "degree_estimate": self.degree_estimate,
            "starts": self.starts,
            "seed": self.seed,
            "tol": self.tol,
            "dedup_radius": self.dedup_radius,
            "converged_runs": self.converged_runs,
        }


def count_equilibria(
    sys: NumericSystem,
    domain,
    starts: int,
    seed: int,
    tol: float = 1e-10,
    dedup_radius: float = 1e-7,
    expect_unique: bool = False,
) -> EquilibriumReport:
    """Multistart damped Newton census of equilibria inside a domain.

    Start points are Halton points mapped into the domain; converged roots
    outside the open domain are discarded; survivors are merged up to the
    relative dedup radius and reported sorted lexicographically, with the
    sign of det(jac) at each root and their sum as the degree estimate.

    With ``expect_unique=True`` (census certified a one-signed
    determinant) a count other than one raises UniqueEquilibriumError.
    """
    if starts < 1:
        raise ValueError("starts must be >= 1")
    x0s = domain.sample_interior(starts, seed)
    roots = []
    converged = 0
    for x0 in x0s:
        res = newton_solve(sys, x0, tol=tol)
        if res.converged:
            converged += 1
            if domain.contains(res.point):
                roots.append((tuple(res.point), res.residual))
    roots.sort()
    reps: List[Tuple[np.ndarray, float]] = []
    for point, residual in roots:
        p = np.array(point)
        for i, (q, r_old) in enumerate(reps):
            if np.linalg.norm(p - q) <= dedup_radius * (1.0 + np.linalg.norm(q)):
                if residual < r_old:
                    reps[i] = (p, residual)
                break
        else:
            reps.append((p, residual))
    equilibria = []
    for p, residual in reps:
        sign, _ = np.linalg.slogdet(sys.jac(p))
        equilibria.append(Equilibrium(tuple(p), residual, int(sign)))
    degree = sum(e.det_sign for e in equilibria)
    report = EquilibriumReport(equilibria, degree, starts, seed, tol, dedup_radius, converged)
    if expect_unique and report.count != 1:
        raise UniqueEquilibriumError(
            f"one-signed determinant guarantees a unique equilibrium, found {report.count}"
        )
    return report


# ---------------------------------------------------------------------------
# Homotopy continuation


@dataclass
class HomotopyPath:
    """Predictor-corrector path of f_lambda from lambda=0 to lambda=1."""

    samples: List[Tuple[float, Tuple[float, ...], float]]
    endpoint: Tuple[float, ...]
    endpoint_residual: float
    steps: int

    def to_dict(self) -> dict:
        return {
            "endpoint": list(self.endpoint),
            "endpoint_residual": self.endpoint_residual,
            "steps": self.steps,
            "stalled": False,
        }


def track_homotopy(
    sys: NumericSystem,
    domain,
    corrector_tol: float = 1e-10,
    initial_step: float = 0.1,
    min_step: float = 1e-10,
    max_steps: int = 10000,
) -> HomotopyPath:
    """Track the zero of f_lambda = c_in - outflow*c + lambda*g from its
    explicit solution at lambda=0 up to an equilibrium at lambda=1.

    Euler predictor along dc/dlambda, Newton corrector at fixed lambda;
    the step grows 1.5x after two easy corrections and halves on failure.

    Raises:
        PathTrackingError: when the step underflows ("path tracking
            stalled") or an accepted iterate leaves the domain closure.
    """
    sys._require_flows()
    c = np.array(sys.c_in) / np.array(sys.outflow)
    lam = 0.0
    h = initial_step
    samples = [(0.0, tuple(c), 0.0)]
    easy = 0
    for _ in range(max_steps):
        if lam >= 1.0:
            break
        h = min(h, 1.0 - lam)
        target = lam + h
        c_pred = c
        try:
            tangent = np.linalg.solve(sys.jac_lambda(c, lam), -sys.g(c))
            c_pred = np.maximum(c + h * tangent, 1e-300)
        except np.linalg.LinAlgError:
            pass
        ok, c_new, iters = _correct(sys, c_pred, target, corrector_tol)
        if ok:
            if not domain.contains(c_new, closed=True, tol=1e-9):
                raise PathTrackingError("path left the domain closure", lam)
            c = c_new
            lam = target
            samples.append((lam, tuple(c), h))
            easy = easy + 1 if iters <= 3 else 0
            if easy >= 2:
                h *= 1.5
                easy = 0
        else:
            easy = 0
            h *= 0.5
            if h < min_step:
                raise PathTrackingError("path tracking stalled", lam)
    else:
        raise PathTrackingError("step budget exhausted", lam)
    residual = float(np.linalg.norm(sys.f_lambda(c, 1.0)))
    return HomotopyPath(samples, tuple(c), residual, len(samples) - 1)


def _correct(sys: NumericSystem, x0: np.ndarray, lam: float, tol: float, max_iter: int = 8):
    x = np.array(x0)
    if np.any(x <= 0):
        return False, x, 0
    for it in range(1, max_iter + 1):
        fx = sys.f_lambda(x, lam)
        r = float(np.linalg.norm(fx))
        if r <= tol:
            return True, x, it - 1
        try:
            step = np.linalg.solve(sys.jac_lambda(x, lam), -fx)
        except np.linalg.LinAlgError:
            return False, x, it
        alpha = 1.0
        negative = step < 0
        if np.any(negative):
            alpha = min(1.0, 0.95 * float(np.min(x[negative] / -step[negative])))
        x = x + alpha * step
        if not np.all(np.isfinite(x)):
            return False, x, it
    fx = sys.f_lambda(x, lam)
    return float(np.linalg.norm(fx)) <= tol, x, max_iter


def match_endpoint(report: EquilibriumReport, endpoint: Sequence[float], radius: float = 1e-6) -> Optional[int]:
    """Index of the report equilibrium matching the homotopy endpoint, if any."""
    e = np.asarray(endpoint)
    for i, eq in enumerate(report.equilibria):
        p = np.array(eq.point)
        if np.linalg.norm(e - p) <= radius * (1.0 + np.linalg.norm(p)):
            return i
    return None


# ---------------------------------------------------------------------------
# Boundary audits


@dataclass
class BoundaryAudit:
    """Sampled check that f_lambda has no zeros on the domain boundary.

    Sides: at points with c_j = 0 the j-th component must be strictly
    positive.  Outer: where m.(outflow*c) = M the derivative of the mass
    functional, m.f_lambda, must be strictly negative.  Sampling is a
    cross-check and diagnostic, not a proof.
    """

    side_violations: List[dict]
    outer_violations: List[dict]
    side_samples: int
    outer_samples: int

    @property
    def clean(self) -> bool:
        return not self.side_violations and not self.outer_violations

    def to_dict(self) -> dict:
        return {
            "side_violations": self.side_violations,
            "outer_violations": self.outer_violations,
            "samples": {"sides": self.side_samples, "outer": self.outer_samples},
        }


LAMBDA_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


def boundary_audit(sys: NumericSystem, domain: MassDomain, samples: int = 1000, seed: int = 0) -> BoundaryAudit:
    """Audit the sides and the outer boundary of a mass-bounded domain."""
    sys._require_flows()
    n = sys.n
    per_side = max(1, samples // (2 * n))
    side_violations = []
    for j in range(n):
        pts = domain.sample_side(j, per_side, seed + j + 1)
        for c in pts:
            for lam in LAMBDA_GRID:
                value = float(sys.f_lambda(c, lam)[j])
                if not value > 0:
                    side_violations.append({"species": j, "lambda": lam, "c": list(c), "f_j": value})
    outer_count = max(1, samples // 2)
    pts = domain.sample_outer(outer_count, seed)
    outer_violations = []
    for c in pts:
        for lam in LAMBDA_GRID:
            value = float(domain.m @ sys.f_lambda(c, lam))
            if not value < 0:
                outer_violations.append({"lambda": lam, "c": list(c), "m_dot_f": value})
    return BoundaryAudit(side_violations, outer_violations, per_side * n, outer_count)


@dataclass
class BoxAudit:
    """Sampled check that f has no zeros on the faces of a box domain."""

    violations: List[dict]
    face_samples: int

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"violations": self.violations, "samples": self.face_samples}


def box_audit(sys: NumericSystem, box: BoxDomain, samples: int = 600, seed: int = 0, zero_tol: float = 1e-9) -> BoxAudit:
    """Audit the faces of a box: f_j > 0 on each lower face, and no
    near-zero of f anywhere on a face."""
    n = sys.n
    per_face = max(1, samples // (2 * n))
    violations = []
    for j in range(n):
        for upper in (False, True):
            pts = box.sample_face(j, upper, per_face, seed + 2 * j + upper + 1)
            for c in pts:
                fc = sys.f(c)
                if not upper and not fc[j] > 0:
                    violations.append({"face": f"c[{j}]=lo", "c": list(c), "f_j": float(fc[j])})
                if float(np.max(np.abs(fc))) <= zero_tol:
                    violations.append({"face": f"c[{j}]={'hi' if upper else 'lo'}", "c": list(c), "norm": float(np.max(np.abs(fc)))})
    return BoxAudit(violations, per_face * 2 * n)


def sample_determinant_signs(sys: NumericSystem, domain, samples: int = 2000, seed: int = 0) -> Dict[int, int]:
    """Histogram of sign(det jac) over sampled interior points.

    Numeric stand-in for sign conditions that hold only on the bounded
    domain rather than the whole orthant: a single nonzero sign over many
    samples is evidence (not proof) that the determinant is one-signed
    there, so the equilibrium count matches |degree|.
    """
    counts: Dict[int, int] = {}
    for c in domain.sample_interior(samples, seed):
        sign, _ = np.linalg.slogdet(sys.jac(c))
        counts[int(sign)] = counts.get(int(sign), 0) + 1
    return counts


# ---------------------------------------------------------------------------
# Multistationarity search


@dataclass
class MultistationarityWitness:
    parameters: dict
    report: EquilibriumReport
    trial: int


def search_multistationarity(
    net: ReactionNetwork,
    flows: FlowAugmentation,
    sampler: Callable[[np.random.Generator], dict],
    budget: int,
    seed: int,
    starts: int = 60,
    domain_mult: float = 10.0,
) -> Optional[MultistationarityWitness]:
    """Randomised search for parameters with two or more equilibria.

    Skipped immediately (returns None) when the sign census certifies a
    one-signed determinant, since multiple zeros are then impossible.
    ``sampler`` maps an RNG to {"k": {label: value}, "inflow"?: vector,
    "outflow"?: vector}.  A candidate counts as a witness only when its
    degree estimate still equals (-1)^n, so an even number of found roots
    (a missed root) is retried at four times the start count and
    otherwise rejected.
    """
    from .jacobian import augmented_mass_action_jacobian, sign_census
    from .polynomial import determinant_expand, DeterminantSizeError

    if not net.core_reactions():
        return None  # pure-flow system: the equilibrium is unique outright
    try:
        det = determinant_expand(augmented_mass_action_jacobian(net))
        census = sign_census(det, net.n)
        if census.certified_one_signed:
            return None
    except DeterminantSizeError:
        pass  # too large to census; search anyway
    m = conserved_mass_vector(net)
    if m is None:
        raise NetworkError("network is not conservative; supply a dissipating mass vector domain manually")
    reference = -1 if net.n % 2 else 1
    rng = np.random.default_rng(seed)
    for trial in range(budget):
        params = sampler(rng)
        trial_flows = FlowAugmentation(
            tuple(params.get("inflow", flows.inflow)),
            tuple(params.get("outflow", flows.outflow)),
        )
        sys = numeric_system_from_network(net, params.get("k", {}), trial_flows)
        domain = default_domain(m, trial_flows, domain_mult)
        report = count_equilibria(sys, domain, starts, seed=seed + trial + 1)
        if report.count >= 2 and report.degree_estimate != reference:
            report = count_equilibria(sys, domain, 4 * starts, seed=seed + trial + 1)
        if report.count >= 2 and report.degree_estimate == reference:
            return MultistationarityWitness(params, report, trial)
    return None
