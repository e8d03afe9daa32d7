#!/usr/bin/env python3
# PYTHON_ARGCOMPLETE_OK
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

import os
import sys
import signal
import logging
import textwrap
import argparse
import traceback

from . import VERSION
from .config import Config
from .environ import thread_limit
from .exc import QMetricError, SpecParseError, UnknownPresetError
from .experiment import CSV, FORMATS
from .linalg import trace_norm
from .logging import line_eraser, setup_logging
from .oracles import exact_fidelity, exact_trace_distance
from .presenters.formats import PresenterManager
from .presets import PresetManager
from .presets.custom import CustomExperiment
from .profiling import ProfileManager, profile
from .progress import ProgressManager
from .readers import load_experiment_spec, load_operator, load_state
from .tools import get_tools, python_module_missing

logger = logging.getLogger(__name__)


try:
    import argcomplete
except ImportError:
    python_module_missing("argcomplete")
    argcomplete = None

ORACLE_METRICS = ("trace_distance", "fidelity", "trace_norm")

# exit codes
EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2
EXIT_UNWRITABLE = 3


class BooleanAction(argparse.Action):
    def __init__(self, option_strings, dest, nargs=None, **kwargs):
        if nargs is not None:
            raise ValueError("nargs not allowed for BooleanAction")
        super().__init__(option_strings, dest, nargs=0, **kwargs)

    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, not option_string.startswith("--no"))


def _int_at_least(minimum, val):
    try:
        value = int(val)
    except ValueError:
        raise argparse.ArgumentTypeError("{!r} is not an integer".format(val))
    if value < minimum:
        raise argparse.ArgumentTypeError(
            "{} must be at least {}".format(value, minimum)
        )
    return value


def positive_int(val):
    return _int_at_least(1, val)


def non_negative_int(val):
    return _int_at_least(0, val)


def create_parser():
    parser = argparse.ArgumentParser(
        description="Estimate trace distance and fidelity with variational "
        "quantum algorithms",
        add_help=False,
        formatter_class=HelpFormatter,
    )
    parser.add_argument(
        "--debug",
        action="store_true",
        default=False,
        help="Display debug messages",
    )
    parser.add_argument(
        "--status-fd",
        metavar="FD",
        type=int,
        help="Send machine-readable status to file descriptor FD",
    )
    parser.add_argument(
        "--progress",
        "--no-progress",
        action=BooleanAction,
        default=None,
        help="Show an approximate progress bar. Default: yes if "
        "stdout is a tty, otherwise no.",
    )
    parser.add_argument(
        "--profile",
        metavar="OUTPUT_FILE",
        dest="profile_output",
        help="Write profiling info to given file (use - for stdout)",
    )
    parser.add_argument(
        "--record-timing",
        action="store_true",
        default=False,
        help="Record the wall time of every estimate in the results. "
        "Reruns are then no longer byte-identical.",
    )
    parser.add_argument(
        "--help", "-h", action="help", help="Show this help and exit"
    )
    parser.add_argument(
        "--version",
        action="version",
        version="qmetric %s" % VERSION,
        help="Show program's version number and exit",
    )
    parser.add_argument(
        "--list-presets",
        nargs=0,
        action=ListPresetsAction,
        help="Show the available presets and exit",
    )
    parser.add_argument(
        "--list-tools",
        nargs=0,
        action=ListToolsAction,
        help="Show the numerical libraries in use and missing optional "
        "modules, then exit",
    )

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    run = subparsers.add_parser(
        "run",
        help="Reproduce one of the named experiments",
        description="Run a named experiment preset.",
    )
    run.add_argument("preset", metavar="PRESET", help="Name of the preset")
    run.add_argument(
        "--seed",
        type=int,
        default=0,
        help="Seed every trial is derived from (default: %(default)s)",
    )
    run.add_argument(
        "--trials",
        type=positive_int,
        help="Number of trials (default: the preset's own)",
    )
    add_output_arguments(run)
    run.add_argument(
        "--shots",
        type=positive_int,
        help="Estimate expectation values from N measurement shots "
        "instead of computing them exactly",
    )
    run.add_argument(
        "--depth",
        type=non_negative_int,
        help="Ansatz depth (default: per algorithm)",
    )

    custom = subparsers.add_parser(
        "custom",
        help="Run an experiment described by a JSON spec",
        description="Run an experiment described by a JSON spec file.",
    )
    custom.add_argument("spec", metavar="SPEC", help="Experiment spec file")

    oracle = subparsers.add_parser(
        "oracle",
        help="Print an exact reference value",
        description="Print the exact value of a metric on state files. "
        "trace_norm takes a single operator file, or two files whose "
        "difference is taken.",
    )
    oracle.add_argument("metric", choices=ORACLE_METRICS)
    oracle.add_argument("path1", metavar="A", help="First state file")
    oracle.add_argument(
        "path2", metavar="B", nargs="?", help="Second state file"
    )

    if argcomplete:
        argcomplete.autocomplete(parser)
    elif "_ARGCOMPLETE" in os.environ:
        logger.error(
            'Argument completion requested but the "argcomplete" module is '
            "not installed. It can be obtained from "
            "https://pypi.python.org/pypi/argcomplete or in the "
            "python3-argcomplete package."
        )
        sys.exit(1)

    return parser


def add_output_arguments(parser):
    parser.add_argument(
        "--out",
        metavar="PATH",
        default=".",
        help="Directory to write results to (default: %(default)s)",
    )
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=FORMATS,
        default=CSV,
        help="Output format (default: %(default)s)",
    )


class HelpFormatter(argparse.HelpFormatter):
    def format_help(self, *args, **kwargs):
        val = super().format_help(*args, **kwargs)

        # Only append the presets if --help is passed; otherwise we are
        # being called via --usage
        if not set(sys.argv) & {"--help", "-h"}:
            return val

        val += "\npresets:\n{}\n".format(
            PresetManager().format_descriptions()
        )
        val += "\nenvironment:\n{}\n".format(
            textwrap.indent(
                textwrap.fill(
                    "QMETRIC_THREADS caps the number of trials run "
                    "concurrently (default: 1).",
                    54,
                ),
                " " * 2,
            )
        )
        return val


class ListPresetsAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        print(PresetManager().format_descriptions())
        sys.exit(0)


class ListToolsAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        for k, v in sorted(get_tools().items()):
            print("%s: %s" % (k, ", ".join(v)))
        sys.exit(0)


def configure(parsed_args):
    Config().threads = thread_limit()
    Config().record_timing = parsed_args.record_timing

    Config().check_constraints()


def run_experiment(preset):
    spec = preset.spec

    Config().shots = spec.shots
    Config().check_constraints()
    PresenterManager().configure(spec.output_format, spec.out)

    with profile("main", "trials"):
        report = preset.run()
    ProgressManager().finish()

    try:
        with profile("main", "outputs"):
            PresenterManager().output(report)
    except OSError as e:
        logger.error("Cannot write results to %s: %s", spec.out, e)
        return EXIT_UNWRITABLE

    if report.violations:
        return EXIT_VIOLATION
    return EXIT_OK


def run_preset(parsed_args):
    klass = PresetManager().get(parsed_args.preset)
    spec = klass.make_spec(
        seed=parsed_args.seed,
        trials=parsed_args.trials,
        out=parsed_args.out,
        output_format=parsed_args.output_format,
        shots=parsed_args.shots,
    )
    spec.depth = parsed_args.depth
    return run_experiment(klass(spec))


def run_custom(parsed_args):
    spec = load_experiment_spec(parsed_args.spec)
    return run_experiment(CustomExperiment(spec))


def oracle_value(metric, path1, path2=None):
    if metric == "trace_norm":
        h = load_operator(path1)
        if path2 is not None:
            h = h - load_operator(path2)
        return trace_norm(h)

    if path2 is None:
        raise SpecParseError(path1, "{} needs two state files".format(metric))

    rho, sigma = load_state(path1), load_state(path2)
    if metric == "fidelity":
        return exact_fidelity(rho, sigma)
    return exact_trace_distance(rho, sigma)


def run_oracle(parsed_args):
    value = oracle_value(
        parsed_args.metric, parsed_args.path1, parsed_args.path2
    )
    print("{:#.10g}".format(value))
    return EXIT_OK


COMMANDS = {
    "run": run_preset,
    "custom": run_custom,
    "oracle": run_oracle,
}


def run_qmetric(parsed_args):
    """
    (This should not be considered a stable API suitable for external
    consumption, and the lack of configuration of globals may result in
    unpredictable behaviour.)
    """

    logger.debug("Starting qmetric %s", VERSION)

    ProfileManager().setup(parsed_args)
    configure(parsed_args)

    return COMMANDS[parsed_args.command](parsed_args)


def sigterm_handler(signo, stack_frame):
    logger.warning("Received TERM signal; exiting...")
    ProfileManager().finish()
    os._exit(EXIT_ERROR)


def main(args=None):
    if args is None:
        args = sys.argv[1:]
    signal.signal(signal.SIGTERM, sigterm_handler)

    parsed_args = None

    try:
        with profile("main", "parse_args"):
            parser = create_parser()
            parsed_args = parser.parse_args(args)

        log_handler = ProgressManager().setup(parsed_args)

        with setup_logging(parsed_args.debug, log_handler) as _:
            try:
                sys.exit(run_qmetric(parsed_args))
            except (SpecParseError, UnknownPresetError) as e:
                logger.error("%s", e)
                sys.exit(EXIT_ERROR)
            except QMetricError as e:
                logger.error("%s", e)
                sys.exit(EXIT_VIOLATION)

    except BrokenPipeError:
        sys.exit(EXIT_ERROR)
    except KeyboardInterrupt:
        logger.error("Keyboard Interrupt")
        sys.exit(EXIT_ERROR)
    except Exception:
        sys.stderr.buffer.write(line_eraser())
        traceback.print_exc()
        sys.exit(EXIT_ERROR)
    finally:
        # Helps our tests run more predictably - some of them call main()
        # which sets Config() values.
        Config().reset()
        PresenterManager().reset()
        ProgressManager().reset()

        # Print profiling output at the very end
        if parsed_args is not None:
            ProfileManager().finish(parsed_args)


if __name__ == "__main__":
    main()
