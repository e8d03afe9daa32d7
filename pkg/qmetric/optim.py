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

import logging

import numpy as np

from .circuits import ansatz_gates, check_params, conjugate_gate
from .config import Config
from .exc import OptimizationError, RangeError
from .logging import log_floating_point_errors
from .losses import LossContext, vfe_amplitude
from .profiling import profile
from .states import make_rng

logger = logging.getLogger(__name__)

ADAM = "adam"
GD = "gd"

MAXIMIZE = "maximize"
MINIMIZE = "minimize"

SHIFT = "shift"
FINITE_DIFF = "finite_diff"

FINITE_DIFF_STEP = 1e-5


class OptimConfig:
    def __init__(
        self,
        method=ADAM,
        learning_rate=0.02,
        iterations=120,
        restarts=3,
        seed=None,
        direction=MAXIMIZE,
        gradient=SHIFT,
    ):
        if method not in (ADAM, GD):
            raise ValueError("unknown optimizer {!r}".format(method))
        if direction not in (MAXIMIZE, MINIMIZE):
            raise ValueError("unknown direction {!r}".format(direction))
        if gradient not in (SHIFT, FINITE_DIFF):
            raise ValueError("unknown gradient rule {!r}".format(gradient))
        if learning_rate < 0:
            raise ValueError("learning rate must not be negative")
        if iterations < 1 or restarts < 1:
            raise ValueError("iterations and restarts must be positive")

        self.method = method
        self.learning_rate = float(learning_rate)
        self.iterations = int(iterations)
        self.restarts = int(restarts)
        self.seed = seed
        self.direction = direction
        self.gradient = gradient

    @classmethod
    def for_algorithm(cls, name, **overrides):
        """
        The configured defaults for `name` ("vtde", "vqsl", ...).  Overrides
        that are None are ignored so parsed arguments can be passed as-is.
        """

        config = Config()
        defaults = config.defaults_for(name)
        kwargs = {
            "method": config.method,
            "learning_rate": defaults["learning_rate"],
            "iterations": defaults["iterations"],
            "restarts": config.restarts,
            "gradient": config.gradient,
            "direction": MINIMIZE if name == "vqsl" else MAXIMIZE,
        }
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kwargs)

    def replace(self, **changes):
        kwargs = self.as_dict()
        kwargs.update(changes)
        return OptimConfig(**kwargs)

    def as_dict(self):
        return {
            "method": self.method,
            "learning_rate": self.learning_rate,
            "iterations": self.iterations,
            "restarts": self.restarts,
            "seed": self.seed,
            "direction": self.direction,
            "gradient": self.gradient,
        }

    def __repr__(self):
        return "<OptimConfig {}>".format(
            " ".join("{}={}".format(k, v) for k, v in self.as_dict().items())
        )


class OptimTrace:
    """Loss of every iterate, per restart, and the best iterate seen."""

    def __init__(self, direction=MAXIMIZE):
        self.direction = direction
        self.losses = {}
        self.failed = []
        self.best_loss = None
        self.best_theta = None
        self.best_restart = None

    def is_better(self, value, than):
        if than is None:
            return True
        if self.direction == MAXIMIZE:
            return value > than
        return value < than

    def record(self, restart, theta, value):
        self.losses.setdefault(restart, []).append(float(value))
        if self.is_better(value, self.best_loss):
            self.best_loss = float(value)
            self.best_theta = np.array(theta, dtype=float)
            self.best_restart = restart

    @property
    def iterations(self):
        return sum(len(x) for x in self.losses.values())

    def rows(self):
        for restart, values in sorted(self.losses.items()):
            for iteration, value in enumerate(values):
                yield iteration, restart, value

    def as_dict(self):
        return {
            "direction": self.direction,
            "best_loss": self.best_loss,
            "best_restart": self.best_restart,
            "best_theta": None
            if self.best_theta is None
            else [float(x) for x in self.best_theta],
            "failed_restarts": list(self.failed),
            "iterations": self.iterations,
        }

    def __repr__(self):
        return "<OptimTrace best={} restart={} iterations={}>".format(
            self.best_loss, self.best_restart, self.iterations
        )


class Adam:
    def __init__(
        self, learning_rate, beta1=0.9, beta2=0.999, epsilon=1e-8
    ):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon

        self.m = None
        self.v = None
        self.t = 0

    def step(self, theta, grad):
        """One descent step along `grad`; returns the new angles."""

        if self.m is None:
            self.m = np.zeros_like(theta)
            self.v = np.zeros_like(theta)
        self.t += 1

        self.m *= self.beta1
        self.m += (1 - self.beta1) * grad
        self.v *= self.beta2
        self.v += (1 - self.beta2) * (grad * grad)

        m_hat = self.m / (1 - self.beta1**self.t)
        v_hat = self.v / (1 - self.beta2**self.t)
        return theta - self.learning_rate * m_hat / (
            np.sqrt(v_hat) + self.epsilon
        )


class GradientDescent:
    def __init__(self, learning_rate):
        self.learning_rate = learning_rate

    def step(self, theta, grad):
        return theta - self.learning_rate * grad


def make_optimizer(config):
    if config.method == ADAM:
        return Adam(config.learning_rate)
    return GradientDescent(config.learning_rate)


def restart_seed(seed, restart):
    if seed is None:
        return None
    return int(seed) + restart


def _check_index(theta, j):
    if not 0 <= j < len(theta):
        raise RangeError(
            "parameter index {} out of range for {} parameters".format(
                j, len(theta)
            )
        )


def shifted(theta, j, delta):
    theta = np.array(theta, dtype=float)
    theta[j] += delta
    return theta


def grad_shift_expectation(loss, theta, j):
    """
    d loss / d theta_j for a loss that is an affine function of
    expectation values of Pauli-rotated states.
    """

    _check_index(theta, j)
    return 0.5 * (
        loss(shifted(theta, j, np.pi / 2))
        - loss(shifted(theta, j, -np.pi / 2))
    )


def grad_purity_shift(chi, theta, j):
    """
    d tr chi(theta)^2 / d theta_j, where `chi` maps angles to a density
    matrix: tr[(chi(theta+) - chi(theta-)) chi(theta)].
    """

    _check_index(theta, j)
    difference = chi(shifted(theta, j, np.pi / 2)) - chi(
        shifted(theta, j, -np.pi / 2)
    )
    return float(np.real(np.sum(difference * chi(theta).T)))


def grad_vqsl_shift(chi, target, theta, j, current=None):
    """
    d / d theta_j of tr chi^2 - 2 tr(target chi), combining the cross-copy
    shift of the purity with the plain shift of the overlap:
    tr[(chi(theta+) - chi(theta-)) (chi(theta) - target)].
    """

    _check_index(theta, j)
    current = chi(theta) if current is None else current
    difference = chi(shifted(theta, j, np.pi / 2)) - chi(
        shifted(theta, j, -np.pi / 2)
    )
    return float(np.real(np.sum(difference * (current - target).T)))


def grad_overlap_shift(psi, phi, ansatz, theta, j, value=None):
    """
    d |L|^2 / d theta_j for L = <psi|(I (x) U(theta))|phi>, using
    dL/d theta_j = L(theta_j + pi) / 2.
    """

    _check_index(theta, j)
    ctx = LossContext(ansatz, psi=psi, phi=phi)
    if value is None:
        value = vfe_amplitude(theta, ctx)
    moved = vfe_amplitude(shifted(theta, j, np.pi), ctx)
    return float(np.real(np.conj(value) * moved))


def grad_finite_diff(loss, theta, step=FINITE_DIFF_STEP):
    theta = np.asarray(theta, dtype=float)
    grad = np.zeros_like(theta)
    for j in range(len(theta)):
        grad[j] = (
            loss(shifted(theta, j, step)) - loss(shifted(theta, j, -step))
        ) / (2 * step)
    return grad


def shift_gradient(loss, theta):
    return np.array(
        [grad_shift_expectation(loss, theta, j) for j in range(len(theta))]
    )


def grad_conjugation_shift(ansatz, theta, operator, observable):
    """
    The shift-rule gradient of tr[O U(theta) X U(theta)^dag] for every
    parameter at once, O being `observable` and X `operator`.  X is carried
    forward through the gates preceding each gate and O backward through
    the gates following it, so each shifted evaluation redoes one gate.
    """

    theta = check_params(ansatz, theta)
    n = ansatz.n_qubits
    gates = ansatz_gates(ansatz)

    before = []
    x = np.asarray(operator, dtype=complex)
    for gate in gates:
        before.append(x)
        x = conjugate_gate(x, gate.matrix(theta), gate.targets, n)

    grad = np.zeros(len(theta))
    o = np.asarray(observable, dtype=complex)
    for gate, x in zip(reversed(gates), reversed(before)):
        for j in gate.params:
            plus, minus = (
                conjugate_gate(
                    x, gate.matrix(shifted(theta, j, delta)), gate.targets, n
                )
                for delta in (np.pi / 2, -np.pi / 2)
            )
            grad[j] += 0.5 * float(np.real(np.sum(o * (plus - minus).T)))
        o = conjugate_gate(o, gate.matrix(theta).conj().T, gate.targets, n)
    return grad


def magnitude_gradient(psi, phi, ansatz, theta):
    """
    Gradient of |L| from that of |L|^2.  Below the magnitude floor the
    squared gradient is returned unchanged.
    """

    value = vfe_amplitude(theta, LossContext(ansatz, psi=psi, phi=phi))
    grad = np.array(
        [
            grad_overlap_shift(psi, phi, ansatz, theta, j, value)
            for j in range(len(theta))
        ]
    )
    magnitude = abs(value)
    if magnitude > Config().magnitude_floor:
        return grad / (2 * magnitude)
    return grad


def run_optimizer(
    loss, grad, n_params, config, name="optimizer", initial=None
):
    """
    Run `config.restarts` independent optimizations of `loss` for exactly
    `config.iterations` iterations each, starting from angles drawn
    uniformly from [0, 2 pi), or from `initial(rng, restart)` when given.
    A restart meeting a non-finite loss is abandoned; OptimizationError is
    raised when none survive.
    """

    trace = OptimTrace(config.direction)
    sign = -1.0 if config.direction == MAXIMIZE else 1.0

    for restart in range(config.restarts):
        rng = make_rng(restart_seed(config.seed, restart))
        if initial is None:
            theta = rng.uniform(0, 2 * np.pi, size=n_params)
        else:
            theta = np.asarray(initial(rng, restart), dtype=float)
        optimizer = make_optimizer(config)

        with profile("optimizer", name), log_floating_point_errors():
            for iteration in range(config.iterations):
                value = loss(theta)
                if not np.isfinite(value):
                    logger.warning(
                        "%s: restart %d aborted at iteration %d (loss %r)",
                        name,
                        restart,
                        iteration,
                        value,
                    )
                    trace.failed.append(restart)
                    break
                trace.record(restart, theta, value)
                if iteration == config.iterations - 1:
                    break
                theta = optimizer.step(theta, sign * np.asarray(grad(theta)))

        logger.debug(
            "%s: restart %d finished at %s (best so far %s)",
            name,
            restart,
            trace.losses.get(restart, [None])[-1],
            trace.best_loss,
        )

    if len(trace.failed) == config.restarts:
        raise OptimizationError(
            "{}: all {} restarts hit a non-finite loss".format(
                name, config.restarts
            )
        )

    return trace
