#
# qmetric: variational estimation of quantum state distances
#
# Copyright © 2026 qmetric developers
#
# qmetric is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# qmetric is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with qmetric.  If not, see <https://www.gnu.org/licenses/>.

"""
The end-to-end estimators.  Each one builds its ansatz, optimizes the
matching loss and returns an EstimateResult certified against the exact
oracle value.
"""

import functools
import logging
import time
import typing

import numpy as np

from . import linalg
from .circuits import ANCILLA_READOUT, HARDWARE_EFFICIENT, PURIFICATION_U3
from .circuits import AnsatzSpec, circuit_state, initial_params
from .config import Config
from .exc import DimensionError, RangeError
from .losses import (
    HermitianDecomposition,
    LossContext,
    ancilla_embedded,
    ancilla_projector,
    learned_state,
    loss_nvtde,
    loss_operator_projection,
    loss_trace_norm,
    loss_vfe,
    loss_vqsl,
    loss_vtde,
    overlap_hs,
)
from .optim import (
    FINITE_DIFF,
    OptimConfig,
    grad_conjugation_shift,
    grad_finite_diff,
    grad_vqsl_shift,
    magnitude_gradient,
    run_optimizer,
    shift_gradient,
    shifted,
)
from .oracles import exact_fidelity, exact_trace_distance
from .states import (
    DensityMatrix,
    StateVector,
    purify_exact,
    qubit_count,
    reduced_state,
)

logger = logging.getLogger(__name__)

# slack allowed above the oracle before a variational lower bound is
# reported as violated
ONE_SIDED_ATOL = 1e-9

NEGATIVE_OPTIMUM = "negative-optimum-clamped"
ABOVE_ORACLE = "above-oracle"

PURIFY_VQSL = "vqsl"
PURIFY_EXACT = "exact"


class EstimateResult:
    def __init__(
        self,
        algorithm,
        estimate,
        oracle=None,
        trace=None,
        config=None,
        flags=(),
        extra=None,
        stage_traces=None,
    ):
        self.algorithm = algorithm
        self.estimate = float(estimate)
        self.oracle = None if oracle is None else float(oracle)
        self.trace = trace
        self.config = dict(config or {})
        self.flags = list(flags)
        self.extra = dict(extra or {})
        # traces of optimizations other than the one producing `estimate`
        self.stage_traces = dict(stage_traces or {})
        self.wall_time = None

    @property
    def abs_error(self):
        if self.oracle is None:
            return None
        return abs(self.estimate - self.oracle)

    @property
    def rel_error(self):
        if self.oracle is None or self.oracle == 0:
            return None
        return self.abs_error / abs(self.oracle)

    @property
    def iterations(self):
        traces = [self.trace] + list(self.stage_traces.values())
        return sum(x.iterations for x in traces if x is not None)

    def check_one_sided(self, atol=ONE_SIDED_ATOL):
        """Flag an estimate that exceeds the quantity it lower-bounds."""

        if self.oracle is not None and self.estimate > self.oracle + atol:
            logger.warning(
                "%s estimate %r exceeds the exact value %r",
                self.algorithm,
                self.estimate,
                self.oracle,
            )
            self.flags.append(ABOVE_ORACLE)

    def as_dict(self):
        return {
            "algorithm": self.algorithm,
            "estimate": self.estimate,
            "oracle": self.oracle,
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "iterations": self.iterations,
            "config": self.config,
            "flags": self.flags,
            "extra": self.extra,
            "trace": None if self.trace is None else self.trace.as_dict(),
            "wall_time": self.wall_time,
        }

    def __repr__(self):
        return "<EstimateResult {} estimate={:.6g} oracle={}>".format(
            self.algorithm, self.estimate, self.oracle
        )


class FidelityBound(typing.NamedTuple):
    # best fidelity reachable with the given ancilla size
    ceiling: float
    # guaranteed lower bound on `ceiling`
    floor: float


class VQSLResult(typing.NamedTuple):
    purification: StateVector
    fidelity: float
    trace: object
    bound: FidelityBound
    learned: DensityMatrix


def timed(fn):
    """Record the wall time of an estimator when timing is enabled."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        if Config().record_timing and isinstance(result, EstimateResult):
            result.wall_time = time.perf_counter() - start
        return result

    return wrapper


def stage_seed(seed, stage):
    if seed is None:
        return None
    return int(seed) + 1000 * stage


def _depth(algorithm, depth):
    if depth is None:
        return Config().defaults_for(algorithm)["depth"]
    if depth < 0:
        raise RangeError("ansatz depth must not be negative")
    return int(depth)


def _check_pair(rho, sigma):
    if rho.n_qubits != sigma.n_qubits:
        raise DimensionError(
            "states on {} and {} qubits".format(rho.n_qubits, sigma.n_qubits)
        )


def _gradient(loss, opt, ansatz=None, operator=None, observable=None):
    """
    The gradient rule for `loss`.  An exact loss of the form
    tr[O U X U^dag] may pass X as `operator` and O as `observable` to have
    its shift rule evaluated for all parameters in one sweep.
    """

    if opt.gradient == FINITE_DIFF:
        return functools.partial(grad_finite_diff, loss)
    if operator is not None and not Config().shots:
        return functools.partial(
            grad_conjugation_shift,
            ansatz,
            operator=operator,
            observable=observable,
        )
    return functools.partial(shift_gradient, loss)


def _best_value(loss, trace, ctx):
    """
    The reported optimum.  Sampled losses are re-measured at the best
    angles so the estimate is not the maximum of many noisy draws.
    """

    if ctx.shots:
        return loss(trace.best_theta)
    return trace.best_loss


def _config_snapshot(opt, ansatz, **kwargs):
    snapshot = opt.as_dict()
    snapshot["ansatz"] = ansatz.as_dict()
    snapshot["shots"] = Config().shots
    snapshot.update(kwargs)
    return snapshot


def _clamp_negative(algorithm, estimate, flags):
    if estimate < 0:
        logger.warning(
            "%s optimum %r is negative; reporting 0", algorithm, estimate
        )
        flags.append(NEGATIVE_OPTIMUM)
        return 0.0
    return estimate


@timed
def vtde(rho, sigma, ansatz_depth=None, opt=None):
    """
    Trace distance as max over theta of O_rho - O_sigma, the ancilla-0
    probabilities after U(theta) acts on the state and one ancilla qubit.
    """

    _check_pair(rho, sigma)
    opt = opt or OptimConfig.for_algorithm("vtde")
    ansatz = AnsatzSpec(
        ANCILLA_READOUT, rho.n_qubits + 1, _depth("vtde", ansatz_depth)
    )
    ctx = LossContext(
        ansatz, rho=rho, sigma=sigma, shots=Config().shots, rng=opt.seed
    )
    loss = functools.partial(loss_vtde, ctx=ctx)
    grad = _gradient(
        loss,
        opt,
        ansatz,
        ancilla_embedded(rho.mat - sigma.mat),
        ancilla_projector(rho.dim),
    )

    trace = run_optimizer(
        loss,
        grad,
        ansatz.param_count,
        opt,
        name="vtde",
        initial=functools.partial(initial_params, ansatz),
    )

    flags = []
    estimate = _clamp_negative("vtde", _best_value(loss, trace, ctx), flags)
    result = EstimateResult(
        "vtde",
        estimate,
        oracle=exact_trace_distance(rho, sigma),
        trace=trace,
        config=_config_snapshot(opt, ansatz),
        flags=flags,
    )
    if not ctx.shots:
        result.check_one_sided()

    logger.debug("vtde: %r", result)
    return result


@timed
def trace_norm_estimate(decomp, ansatz_depth=None, opt=None):
    """
    ||H||_1 for H = sum_j c_j rho_j from a single maximization of
    2 sum_j c_j O_j - sum_j c_j.
    """

    opt = opt or OptimConfig.for_algorithm("trace_norm")
    ansatz = AnsatzSpec(
        ANCILLA_READOUT,
        decomp.n_qubits + 1,
        _depth("trace_norm", ansatz_depth),
    )
    ctx = LossContext(
        ansatz, decomp=decomp, shots=Config().shots, rng=opt.seed
    )
    loss = functools.partial(loss_trace_norm, ctx=ctx)
    # the constant -sum_j c_j drops out of the gradient
    grad = _gradient(
        loss,
        opt,
        ansatz,
        ancilla_embedded(2 * decomp.reconstruct()),
        ancilla_projector(2**decomp.n_qubits),
    )

    trace = run_optimizer(
        loss,
        grad,
        ansatz.param_count,
        opt,
        name="trace_norm",
        initial=functools.partial(initial_params, ansatz),
    )

    result = EstimateResult(
        "trace_norm",
        _best_value(loss, trace, ctx),
        oracle=linalg.trace_norm(decomp.reconstruct()),
        trace=trace,
        config=_config_snapshot(opt, ansatz, terms=len(decomp)),
    )
    if not ctx.shots:
        result.check_one_sided()

    logger.debug("trace_norm: %r", result)
    return result


@timed
def trace_norm_two_sided(h, ansatz_depth=None, opt=None):
    """
    ||H||_1 as the sum of two maximizations, one of the ancilla-0
    expectation of H (x) |0><0| and one of -H (x) |0><0|.  Each optimum is
    the sum of the positive eigenvalues of its operator.
    """

    h = linalg.check_hermitian(h)
    opt = opt or OptimConfig.for_algorithm("trace_norm")
    ansatz = AnsatzSpec(
        ANCILLA_READOUT,
        qubit_count(h.shape[0]) + 1,
        _depth("trace_norm", ansatz_depth),
    )

    flags = []
    optima = {}
    traces = {}
    for stage, (label, operator) in enumerate((("plus", h), ("minus", -h))):
        branch = opt.replace(seed=stage_seed(opt.seed, stage))
        ctx = LossContext(
            ansatz, operator=operator, shots=Config().shots, rng=branch.seed
        )
        loss = functools.partial(loss_operator_projection, ctx=ctx)
        grad = _gradient(
            loss,
            branch,
            ansatz,
            ancilla_embedded(operator),
            ancilla_projector(h.shape[0]),
        )
        traces[label] = run_optimizer(
            loss,
            grad,
            ansatz.param_count,
            branch,
            name="trace_norm_{}".format(label),
            initial=functools.partial(initial_params, ansatz),
        )
        optima[label] = _clamp_negative(
            "trace_norm_two_sided",
            _best_value(loss, traces[label], ctx),
            flags,
        )

    result = EstimateResult(
        "trace_norm_two_sided",
        optima["plus"] + optima["minus"],
        oracle=linalg.trace_norm(h),
        trace=traces["plus"],
        config=_config_snapshot(opt, ansatz),
        flags=flags,
        extra={"plus": optima["plus"], "minus": optima["minus"]},
        stage_traces={"minus": traces["minus"]},
    )
    if not Config().shots:
        result.check_one_sided()

    logger.debug("trace_norm_two_sided: %r", result)
    return result


def purification_fidelity_bound(eigenvalues, d_R):
    """
    Best fidelity between a state with spectrum `eigenvalues` and the
    marginal of any pure state with a `d_R`-dimensional ancilla, together
    with the guaranteed floor sqrt(d_R / rank).
    """

    if d_R < 1:
        raise RangeError("ancilla dimension must be positive")
    values = np.sort(np.clip(np.asarray(eigenvalues, dtype=float), 0, None))
    values = values[::-1]
    rank = int(np.sum(values > Config().rank_threshold))
    if rank <= d_R:
        return FidelityBound(1.0, 1.0)
    ceiling = float(np.sqrt(min(np.sum(values[:d_R]), 1.0)))
    return FidelityBound(ceiling, float(np.sqrt(d_R / rank)))


def _vqsl_gradient(ctx):
    chi = functools.partial(learned_state, ctx=ctx)

    def exact(theta):
        current = chi(theta)
        return np.array(
            [
                grad_vqsl_shift(chi, ctx.target.mat, theta, j, current)
                for j in range(len(theta))
            ]
        )

    def sampled(theta):
        current = DensityMatrix(chi(theta), validate=False)
        grad = np.zeros(len(theta))
        for j in range(len(theta)):
            plus, minus = (
                DensityMatrix(chi(shifted(theta, j, s)), validate=False)
                for s in (np.pi / 2, -np.pi / 2)
            )
            # cross-copy swap tests for the purity, plain ones for the overlap
            grad[j] = (
                overlap_hs(plus, current, ctx.shots, ctx.rng)
                - overlap_hs(minus, current, ctx.shots, ctx.rng)
                - overlap_hs(ctx.target, plus, ctx.shots, ctx.rng)
                + overlap_hs(ctx.target, minus, ctx.shots, ctx.rng)
            )
        return grad

    return sampled if ctx.shots else exact


def vqsl(rho, n_R, opt=None, ansatz_depth=None):
    """
    Learn a purification of `rho` on `n_R` extra qubits by minimizing
    tr chi^2 - 2 tr(rho chi) over U(theta)|0...0>.
    """

    if n_R < 1:
        raise RangeError("vqsl needs at least one ancilla qubit")
    opt = opt or OptimConfig.for_algorithm("vqsl")
    ansatz = AnsatzSpec(
        PURIFICATION_U3, rho.n_qubits + n_R, _depth("vqsl", ansatz_depth)
    )
    ctx = LossContext(ansatz, target=rho, shots=Config().shots, rng=opt.seed)
    loss = functools.partial(loss_vqsl, ctx=ctx)
    grad = (
        _gradient(loss, opt)
        if opt.gradient == FINITE_DIFF
        else _vqsl_gradient(ctx)
    )

    trace = run_optimizer(loss, grad, ansatz.param_count, opt, name="vqsl")

    purification = StateVector(circuit_state(ansatz, trace.best_theta))
    learned = reduced_state(purification, rho.n_qubits)
    fidelity = exact_fidelity(rho, learned)
    bound = purification_fidelity_bound(rho.eigenvalues(), 2**n_R)
    if fidelity > bound.ceiling + 1e-6:
        logger.warning(
            "vqsl fidelity %r above the purification ceiling %r",
            fidelity,
            bound.ceiling,
        )

    logger.debug(
        "vqsl: n_R=%d fidelity=%.6f ceiling=%.6f", n_R, fidelity, bound.ceiling
    )
    return VQSLResult(purification, fidelity, trace, bound, learned)


def _vfe_gradient(ctx, opt, loss):
    if opt.gradient == FINITE_DIFF:
        return _gradient(loss, opt)
    if not ctx.shots:
        return functools.partial(
            magnitude_gradient, ctx.psi, ctx.phi, ctx.ansatz
        )

    def squared(theta):
        # |<psi|phi~>|^2 is linear in the rotated state, so it shifts
        return loss(theta) ** 2

    def sampled(theta):
        grad = shift_gradient(squared, theta)
        magnitude = loss(theta)
        if magnitude > Config().magnitude_floor:
            return grad / (2 * magnitude)
        return grad

    return sampled


@timed
def vfe(
    rho,
    sigma,
    n_R=None,
    opt_purify=None,
    opt_fid=None,
    ansatz_depth=None,
    purification=None,
):
    """
    Fidelity as the largest overlap |<psi|(I (x) U_R)|phi>| between
    purifications of `rho` and `sigma`, learned by vqsl() or built exactly.
    """

    _check_pair(rho, sigma)
    config = Config()
    n_R = rho.n_qubits if n_R is None else n_R
    if n_R < 1:
        raise RangeError("vfe needs at least one ancilla qubit")
    mode = purification or config.vfe_purification
    if mode not in (PURIFY_VQSL, PURIFY_EXACT):
        raise ValueError("unknown purification mode {!r}".format(mode))

    opt_fid = opt_fid or OptimConfig.for_algorithm("vfe")
    opt_purify = opt_purify or OptimConfig.for_algorithm(
        "vqsl", seed=opt_fid.seed
    )

    extra = {"n_R": n_R, "purification": mode}
    stage_traces = {}
    if mode == PURIFY_VQSL:
        learned = []
        for stage, (label, state) in enumerate(
            (("rho", rho), ("sigma", sigma)), 1
        ):
            seed = stage_seed(opt_purify.seed, stage)
            r = vqsl(state, n_R, opt_purify.replace(seed=seed))
            stage_traces["purify_{}".format(label)] = r.trace
            extra["purification_fidelity_{}".format(label)] = r.fidelity
            learned.append(r.purification)
        psi, phi = learned
    else:
        psi, phi = purify_exact(rho, n_R), purify_exact(sigma, n_R)

    ansatz = AnsatzSpec(
        HARDWARE_EFFICIENT, n_R, _depth("vfe", ansatz_depth)
    )
    ctx = LossContext(
        ansatz, psi=psi, phi=phi, shots=config.shots, rng=opt_fid.seed
    )
    loss = functools.partial(loss_vfe, ctx=ctx)

    trace = run_optimizer(
        loss,
        _vfe_gradient(ctx, opt_fid, loss),
        ansatz.param_count,
        opt_fid,
        name="vfe",
    )

    estimate = min(max(_best_value(loss, trace, ctx), 0.0), 1.0)
    result = EstimateResult(
        "vfe",
        estimate,
        oracle=exact_fidelity(rho, sigma),
        trace=trace,
        config=_config_snapshot(
            opt_fid, ansatz, purify=opt_purify.as_dict(), n_R=n_R
        ),
        extra=extra,
        stage_traces=stage_traces,
    )
    if mode == PURIFY_EXACT and not ctx.shots:
        result.check_one_sided()

    logger.debug("vfe: %r", result)
    return result


def _nvtde_at(rho, sigma, ansatz, k, opt):
    ctx = LossContext(
        ansatz, rho=rho, sigma=sigma, k=k, shots=Config().shots, rng=opt.seed
    )
    loss = functools.partial(loss_nvtde, ctx=ctx)
    first_k = np.diag((np.arange(rho.dim) < k).astype(complex))
    trace = run_optimizer(
        loss,
        _gradient(loss, opt, ansatz, rho.mat - sigma.mat, first_k),
        ansatz.param_count,
        opt,
        name="nvtde",
    )
    return _best_value(loss, trace, ctx), trace


@timed
def nvtde(rho, sigma, opt=None, ansatz_depth=None, k=None, tolerance=None):
    """
    Trace distance as max over k and theta of the weight of U(rho - sigma)U^dag
    on the first k basis states, without an ancilla.  k grows from 1 until
    the optimum stops increasing by more than `tolerance`; passing `k`
    runs that single value.
    """

    _check_pair(rho, sigma)
    config = Config()
    opt = opt or OptimConfig.for_algorithm("nvtde")
    tolerance = config.nvtde_tolerance if tolerance is None else tolerance
    ansatz = AnsatzSpec(
        HARDWARE_EFFICIENT, rho.n_qubits, _depth("nvtde", ansatz_depth)
    )

    if k is not None:
        candidates = [k]
    else:
        candidates = range(1, rho.dim)

    profile = []
    traces = {}
    # k = 0 (the empty projector) scores 0
    best_k, value = None, 0.0
    for current in candidates:
        found, trace = _nvtde_at(
            rho,
            sigma,
            ansatz,
            current,
            opt.replace(seed=stage_seed(opt.seed, current)),
        )
        profile.append({"k": current, "optimum": found})
        traces[current] = trace
        logger.debug("nvtde: k=%d optimum=%.6g", current, found)

        increased = found > value + tolerance
        if best_k is None or found > value:
            best_k, value = current, found
        if not increased:
            break
    flags = []
    estimate = _clamp_negative("nvtde", value, flags)
    result = EstimateResult(
        "nvtde",
        estimate,
        oracle=exact_trace_distance(rho, sigma),
        trace=traces.pop(best_k),
        config=_config_snapshot(opt, ansatz, tolerance=tolerance),
        flags=flags,
        extra={"k": best_k, "k_profile": profile, "forced_k": k is not None},
        stage_traces={"k{}".format(x): t for x, t in traces.items()},
    )
    if not config.shots:
        result.check_one_sided()

    logger.debug("nvtde: %r", result)
    return result


def decomposition_for_distance(rho, sigma):
    """{(1/2, rho), (-1/2, sigma)}, whose trace norm is D(rho, sigma)."""

    return HermitianDecomposition([(0.5, rho), (-0.5, sigma)])
