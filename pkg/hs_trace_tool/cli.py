#!/usr/bin/env python3
"""
HS Trace Tool - Unified Command Line Interface
Trace tensors of endomorphism tuples and exact verification of the
generalized Cayley-Hamilton identity

Usage:
    hstrace traces [--input FILE|-] [--oracle]      # Trace tensor of an n-tuple
    hstrace verify <identity> [--input FILE|-]      # Evaluate an identity residual
    hstrace random-suite -n N [--trials T]          # Randomized property suite
    hstrace config [show|save|reset]                # Manage configuration
    hstrace --help                                  # Show this help
"""

import argparse
import json
import sys
from typing import List

import numpy as np

from .hs_config import HSConfig
from .hs_document import DocumentFormatError, InputDocument
from .hs_exterior import ExteriorElement
from .hs_identities import (
    CLASSICAL_CH,
    CLASSICAL_CH_OPERATOR,
    CONJUGACY,
    EQ17,
    IBP,
    IDENTITY_NAMES,
    MULTIDEGREE,
    STAR2,
    STAR3,
    THM48,
    TRSQ,
    IdentityReport,
    classical_ch_residual,
    classical_ch_operator_residual,
    conjugacy_invariance_check,
    eq17_residual,
    generalized_ch_residual,
    ibp_check,
    multidegree_ch_residual,
    star2_skew_residual,
    star3_symmetrized_residual,
    tr_square_identity,
)
from .hs_scalars import (
    DimensionMismatchError,
    FLOAT,
    IndexRangeError,
    MODES,
    ResourceBudgetExceeded,
    ScalarFormatError,
    SingularMatrixError,
    field_for,
)
from .hs_series import EndoTuple, format_index
from .hs_suite import MAX_SUITE_DIMENSION, RandomSuite, random_element, random_invertible, random_matrix
from .hs_traces import oracle_trace_tensor, trace_tensor_via_hs

# Exit codes
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DIMENSION = 3
EXIT_ORACLE = 4
EXIT_BUDGET = 5

# identity -> (matrix size, matrix count) for identities with a fixed shape
FIXED_SHAPES = {
    STAR2: (2, 2),
    STAR3: (3, 3),
    EQ17: (3, 2),
    TRSQ: (2, 1),
}

EMOJI_FALLBACKS = {
    '🚀': '>>>',
    '✅': '[OK]',
    '❌': '[ERR]',
    '⚠️': '[WARN]',
    '🔢': '[CALC]',
    '🔍': '[CHECK]',
    '🎲': '[RAND]',
    '📊': '[STATS]',
    '📋': '[CONFIG]',
    '⏹️': '[STOP]',
    'τ': 'tau',
    '•': '*',
    '═': '=',
}


class HSUnifiedCLI:
    """Unified CLI for the HS Trace Tool"""

    def __init__(self):
        self.version = "1.0.0"
        self.no_emoji = False
        self.description = """
HS Trace Tool v1.0 - exact trace tensors and Cayley-Hamilton identities
══════════════════════════════════════════════════════════════════════════════

Builds the multivariate Hasse-Schmidt derivation 1 - (A1 z1 + ... + An zn) on
the exterior algebra of K^n, reads the i-traces of the tuple off the top
exterior power and checks the identities they satisfy, in exact rational
arithmetic.

🚀 Commands:
  • hstrace traces       - Trace tensor of an n-tuple (optionally vs. the oracle)
  • hstrace verify       - Residual of a named identity, exit 0 iff it vanishes
  • hstrace random-suite - Seeded randomized property suite
        """

    def _safe_print(self, text, stream=None):
        """Safe printing that handles Unicode issues across different terminals"""
        stream = stream or sys.stdout
        if self.no_emoji:
            text = self._ascii_fallback(text)
        try:
            print(text, file=stream)
        except UnicodeEncodeError:
            try:
                print(self._ascii_fallback(text), file=stream)
            except UnicodeEncodeError:
                # Last resort: encode to ASCII with replacement
                print(text.encode('ascii', 'replace').decode('ascii'), file=stream)

    def _ascii_fallback(self, text):
        for symbol, replacement in EMOJI_FALLBACKS.items():
            text = text.replace(symbol, replacement)
        return text

    def _status(self, args, text):
        """Status messages go to stderr so stdout stays machine readable"""
        if not getattr(args, 'quiet', False):
            self._safe_print(text, sys.stderr)

    def _detail(self, args, text):
        if getattr(args, 'verbose', False) and not getattr(args, 'quiet', False):
            self._safe_print(text, sys.stderr)

    def _emit_json(self, document):
        self._safe_print(json.dumps(document, indent=2))

    # ------------------------------------------------------------------
    # Parsers
    # ------------------------------------------------------------------

    def create_parser(self):
        """Create the main argument parser with subcommands"""
        parser = argparse.ArgumentParser(
            prog='hstrace',
            description=self.description,
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Common workflows:
  hstrace traces --input pair.json                 # Trace tensor as JSON
  hstrace traces --input pair.json --oracle        # Cross-check with determinant sums
  hstrace traces -n 3 --seed 7 --output table      # Random triple, table output
  hstrace verify thm48 --input triple.json         # Generalized Cayley-Hamilton
  hstrace verify star2 --seed 1                    # Skew-symmetry of the 2x2 star product
  hstrace random-suite -n 2 --trials 100 --seed 1  # Randomized suite

Exit codes:
  0 identity holds / all checks pass     3 dimension mismatch
  1 nonzero residual / failed check      4 trace oracle mismatch
  2 parse or usage error                 5 time or memory budget exceeded

For detailed help on any command:
  hstrace <command> --help

Version: """ + self.version
        )

        parser.add_argument('--version', action='version', version=f'hstrace {self.version}')

        subparsers = parser.add_subparsers(
            dest='command',
            title='Commands',
            description='Available operations',
            help='Use "hstrace <command> --help" for detailed help'
        )

        self.create_traces_parser(subparsers)
        self.create_verify_parser(subparsers)
        self.create_random_suite_parser(subparsers)
        self.create_config_parser(subparsers)

        return parser

    def create_traces_parser(self, subparsers):
        """Create parser for traces command"""
        traces = subparsers.add_parser(
            'traces',
            aliases=['tr'],
            help='Compute the trace tensor of an n-tuple of n x n matrices',
            description='Compute every i-trace with |i| <= n of an n-tuple, in graded-lex order',
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Examples:
  hstrace traces --input pair.json                 # JSON tensor on stdout
  cat pair.json | hstrace traces --input -         # Read the document from stdin
  hstrace traces --input pair.json --oracle        # Exit 4 if the oracle disagrees
  hstrace traces -n 3 --seed 42 --output table     # Random rational triple
            """
        )
        self.add_input_options(traces)
        traces.add_argument('--oracle', action='store_true',
                            help='Also compute the determinant-sum oracle and report mismatches')
        self.add_arithmetic_options(traces)
        self.add_output_options(traces)
        return traces

    def create_verify_parser(self, subparsers):
        """Create parser for verify command"""
        verify = subparsers.add_parser(
            'verify',
            aliases=['v'],
            help='Evaluate the residual of an identity',
            description='Evaluate an identity on the input matrices; exit 0 iff the residual vanishes',
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Identities:
  thm48         generalized Cayley-Hamilton identity of an n-tuple
  star2         A*B + B*A for two 2x2 matrices
  star3         sum of A*B*C over the six orderings of three 3x3 matrices
  eq17          two-matrix identity on a 3-dimensional space
  ibp           integration by parts for the derivation and its inverse
  conjugacy     trace tensor invariance under simultaneous conjugation
  trsq          tr(A^2) + 2 det(A) - tr(A)^2 for 2x2 matrices
  classical-ch  Cayley-Hamilton for each matrix, invariants cross-checked
  classical-ch-operator
                Cayley-Hamilton for the inverse series on the exterior algebra
  multidegree   multidegree identity for any number of matrices (--index)

Examples:
  hstrace verify thm48 --input triple.json
  hstrace verify classical-ch -n 4 --seed 3
  hstrace verify multidegree --input pair3.json --index 2,1
            """
        )
        verify.add_argument('identity', help=f'Identity to check ({", ".join(IDENTITY_NAMES)})')
        self.add_input_options(verify)
        verify.add_argument('--index', metavar='I1,I2,...',
                            help='Multi-index for the multidegree identity (default: |i| = max(n, m))')
        self.add_arithmetic_options(verify)
        self.add_output_options(verify)
        return verify

    def create_random_suite_parser(self, subparsers):
        """Create parser for random-suite command"""
        suite = subparsers.add_parser(
            'random-suite',
            aliases=['suite'],
            help='Run every identity check on seeded random rational inputs',
            description='Randomized property suite; entries are p/q with p, q in [-9, 9], q != 0',
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Examples:
  hstrace random-suite -n 2 --trials 100 --seed 1   # 100 random pairs
  hstrace random-suite -n 1 --trials 10             # classical Cayley-Hamilton only
  hstrace random-suite -n 6 --trials 1 --time-budget 300 --memory-budget 2048
            """
        )
        suite.add_argument('--dimension', '-n', type=int, required=True, metavar='N',
                           choices=range(1, MAX_SUITE_DIMENSION + 1),
                           help=f'Dimension n (1 to {MAX_SUITE_DIMENSION})')
        suite.add_argument('--trials', type=int, metavar='T',
                           help='Number of random trials (default: 100)')
        suite.add_argument('--seed', type=int, metavar='U64',
                           help='Root seed (default: 0)')

        performance = suite.add_argument_group('Performance Options')
        performance.add_argument('--max-workers', type=int, metavar='N',
                                 help='Maximum parallel workers (default: auto)')
        performance.add_argument('--time-budget', type=float, metavar='SECONDS',
                                 help='Abort with exit code 5 after this many seconds (default: 300)')
        performance.add_argument('--memory-budget', type=float, metavar='MB',
                                 help='Abort with exit code 5 above this peak memory (default: 2048)')

        self.add_arithmetic_options(suite)
        self.add_output_options(suite)
        return suite

    def create_config_parser(self, subparsers):
        """Create parser for config command"""
        config = subparsers.add_parser(
            'config',
            aliases=['cfg'],
            help='Manage configuration settings',
            description='View and reset HS trace tool configuration settings',
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Examples:
  hstrace config show                           # Display current settings
  hstrace config show --section suite_settings  # Display one section
  hstrace config save --trials 50 --mode float  # Store new defaults
  hstrace config reset                          # Reset to default settings
  hstrace config --file ./hs-config.json        # Use custom config file
  hstrace config --sample                       # Write a sample config file
            """
        )
        config.add_argument('action', nargs='?', choices=['show', 'save', 'reset'],
                            help='Configuration action to perform')
        config.add_argument('--file', metavar='PATH',
                            help='Path to configuration file')
        config.add_argument('--sample', action='store_true',
                            help='Create sample configuration file')
        config.add_argument('--section', metavar='NAME',
                            help='Only show this section')

        defaults = config.add_argument_group('Defaults for "save"')
        defaults.add_argument('--mode', choices=MODES, help='Default scalar field')
        defaults.add_argument('--tol', type=float, metavar='FLOAT', help='Default float tolerance')
        defaults.add_argument('--trials', type=int, metavar='T', help='Default suite trial count')
        defaults.add_argument('--seed', type=int, metavar='U64', help='Default seed')
        defaults.add_argument('--max-workers', type=int, metavar='N', help='Default worker count')
        defaults.add_argument('--time-budget', type=float, metavar='SECONDS', help='Default suite time budget')
        defaults.add_argument('--memory-budget', type=float, metavar='MB', help='Default suite memory budget')
        defaults.add_argument('--output', '-o', choices=['json', 'table'], help='Default output format')
        defaults.add_argument('--quiet', '-q', action='store_true', help='Quiet by default')
        defaults.add_argument('--no-progress', action='store_true', help='Disable progress bars by default')
        return config

    def add_input_options(self, parser):
        """Add the input document options"""
        source = parser.add_argument_group('Input Options')
        source.add_argument('--input', '-i', metavar='FILE|-',
                            help='JSON input document ("-" reads stdin)')
        source.add_argument('--dimension', '-n', type=int, metavar='N',
                            help='Generate random rational input of dimension N instead of reading a file')
        source.add_argument('--seed', type=int, metavar='U64',
                            help='Seed for generated input and random auxiliary data (default: 0)')

    def add_arithmetic_options(self, parser):
        """Add arithmetic mode options"""
        arithmetic = parser.add_argument_group('Arithmetic Options')
        arithmetic.add_argument('--mode', choices=MODES,
                                help='Scalar field when the input does not specify one (default: rational)')
        arithmetic.add_argument('--tol', type=float, metavar='FLOAT',
                                help='Relative tolerance in float mode (default: 1e-9)')

    def add_output_options(self, parser):
        """Add common output control options"""
        output = parser.add_argument_group('Output Control')
        output.add_argument('--output', '-o', choices=['json', 'table'],
                            help='Output format (default: json)')
        output.add_argument('--config', metavar='PATH',
                            help='Path to configuration file')
        output.add_argument('--verbose', '-v', action='store_true',
                            help='Verbose output with diagnostics on stderr')
        output.add_argument('--quiet', '-q', action='store_true',
                            help='Quiet mode (machine output only)')
        output.add_argument('--no-progress', action='store_true',
                            help='Disable progress bars')
        output.add_argument('--no-emoji', action='store_true',
                            help='Disable emoji in output (for compatibility)')

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    def _prepare(self, args):
        """Merge config file values into args and set console options"""
        config = HSConfig(getattr(args, 'config', None))
        config.apply_to_args(args)
        self.no_emoji = getattr(args, 'no_emoji', False)
        if args.quiet and args.verbose:
            args.verbose = False
        return config

    def _load_document(self, args, identity=None):
        """The input document, read from --input or generated from --dimension/--seed"""
        if args.input:
            self._detail(args, f"📄 Reading input from {'stdin' if args.input == '-' else args.input}")
            return InputDocument.load(args.input, default_mode=args.mode)

        rng = np.random.default_rng(args.seed)
        if identity in FIXED_SHAPES:
            size, count = FIXED_SHAPES[identity]
        else:
            if args.dimension is None:
                raise DocumentFormatError("Provide --input FILE or --dimension N")
            size = args.dimension
            count = 1 if identity in (CLASSICAL_CH, CLASSICAL_CH_OPERATOR) else size
        if size < 1:
            raise DimensionMismatchError(f"Dimension must be positive, got {size}")
        self._detail(args, f"🎲 Generating {count} random {size}x{size} matrices (seed {args.seed})")
        matrices = [random_matrix(rng, size, args.mode) for _ in range(count)]
        return InputDocument(n=size, mode=args.mode, matrices=matrices, seed=args.seed)

    def _exit_code_for(self, error):
        if isinstance(error, ResourceBudgetExceeded):
            return EXIT_BUDGET
        if isinstance(error, DimensionMismatchError):
            return EXIT_DIMENSION
        if isinstance(error, (ScalarFormatError, IndexRangeError, SingularMatrixError, FileNotFoundError, ValueError)):
            return EXIT_USAGE
        return EXIT_FAILED

    def _handle_error(self, error, args):
        code = self._exit_code_for(error)
        self._safe_print(f"❌ Error: {error}", sys.stderr)
        if getattr(args, 'verbose', False):
            import traceback
            traceback.print_exc()
        return code

    def _parse_index(self, text):
        try:
            return tuple(int(part) for part in text.split(','))
        except ValueError:
            raise IndexRangeError(f"Invalid multi-index {text!r}: expected comma-separated integers") from None

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------

    def run_traces(self, args):
        """Execute traces command"""
        try:
            self._prepare(args)
            document = self._load_document(args)
            phi = document.endo_tuple()
            mode = document.mode
            scalar_field = field_for(mode)

            self._detail(args, f"🔢 Computing trace tensor (n={phi.n}, mode={mode})")
            tensor = trace_tensor_via_hs(phi)

            mismatches = []
            if args.oracle:
                self._detail(args, "🔍 Computing determinant-sum oracle")
                oracle = oracle_trace_tensor(phi)
                tol = args.tol if mode == FLOAT else None
                for index in tensor.mismatches(oracle, tol=tol):
                    mismatches.append({
                        "index": list(index),
                        "hs": scalar_field.render(tensor.get(index)),
                        "oracle": scalar_field.render(oracle.get(index)),
                    })

            if args.output == 'table':
                self._safe_print(f"τ index{' ' * max(1, 3 * phi.n - 4)}value")
                for index, value in tensor.full_table():
                    label = format_index(index)
                    self._safe_print(f"{label:<{3 * phi.n + 3}}{scalar_field.render(value)}")
                if args.oracle:
                    verdict = "agrees" if not mismatches else f"disagrees at {len(mismatches)} entries"
                    self._safe_print(f"oracle {verdict}")
            else:
                output = tensor.to_json(mode)
                if document.seed is not None:
                    output["seed"] = document.seed
                if args.oracle:
                    output["oracle"] = {"match": not mismatches, "mismatches": mismatches}
                self._emit_json(output)

            if mismatches:
                self._status(args, f"❌ Oracle mismatch at {len(mismatches)} multi-indices")
                return EXIT_ORACLE
            if args.oracle:
                self._status(args, "✅ HS traces match the determinant oracle")
            return EXIT_OK

        except KeyboardInterrupt:
            self._safe_print("\n⏹️ Operation cancelled by user", sys.stderr)
            return EXIT_FAILED
        except Exception as e:
            return self._handle_error(e, args)

    def _evaluate(self, identity, document, args) -> List[IdentityReport]:
        """Reports for one identity on the document's matrices"""
        tol = args.tol
        seed = document.seed if document.seed is not None else args.seed
        rng = np.random.default_rng(seed)

        if identity == THM48:
            return [generalized_ch_residual(document.endo_tuple(), tol=tol)]
        if identity == STAR2:
            a, b = document.require_count(2, size=2).matrices
            return [star2_skew_residual(a, b, tol=tol)]
        if identity == STAR3:
            a, b, c = document.require_count(3, size=3).matrices
            return [star3_symmetrized_residual(a, b, c, tol=tol)]
        if identity == EQ17:
            a, b = document.require_count(2, size=3).matrices
            return [eq17_residual(a, b, tol=tol)]
        if identity == IBP:
            phi = document.endo_tuple()
            pairs = None
            if phi.n > 3:
                # all blade pairs get expensive beyond n = 3
                pairs = [(random_element(rng, phi.n, document.mode), random_element(rng, phi.n, document.mode))
                         for _ in range(4)]
            return [ibp_check(phi, pairs, tol=tol)]
        if identity == CONJUGACY:
            phi = document.endo_tuple()
            p = document.conjugator if document.conjugator is not None else random_invertible(rng, phi.n, document.mode)
            return [conjugacy_invariance_check(phi, p, tol=tol)]
        if identity == TRSQ:
            document.require_count(1, at_least=True, size=2)
            return [tr_square_identity(a, tol=tol) for a in document.matrices]
        if identity == CLASSICAL_CH:
            document.require_count(1, at_least=True)
            return [classical_ch_residual(a, tol=tol) for a in document.matrices]
        if identity == CLASSICAL_CH_OPERATOR:
            document.require_count(1, at_least=True)
            return [classical_ch_operator_residual(a, tol=tol) for a in document.matrices]
        if identity == MULTIDEGREE:
            document.require_count(1, at_least=True)
            phi = EndoTuple(document.matrices, allow_rectangular=True)
            if args.index:
                index = self._parse_index(args.index)
            else:
                index = (1 + max(0, phi.n - phi.m),) + (1,) * (phi.m - 1)
            return [multidegree_ch_residual(phi, index, tol=tol)]
        raise DocumentFormatError(f"Unknown identity {identity!r} (expected one of {', '.join(IDENTITY_NAMES)})")

    def _print_report_table(self, report, mode):
        scalar_field = field_for(mode)
        symbol = "✅" if report.passed else "❌"
        verdict = "residual is zero" if report.is_zero else "NONZERO residual"
        self._safe_print(f"{symbol} {report.identity} (n={report.n}): {verdict}")
        if report.oracle_match is False:
            self._safe_print("   invariants disagree with the independent oracle")
        residual = report.residual
        if hasattr(residual, 'rows'):
            for row in residual.rows:
                self._safe_print("   " + " ".join(f"{scalar_field.render(x):>8}" for x in row))
        elif isinstance(residual, dict):
            for index, value in residual.items():
                rendered = repr(value) if isinstance(value, ExteriorElement) else scalar_field.render(value)
                self._safe_print(f"   {format_index(index)} {rendered}")
        else:
            self._safe_print(f"   {scalar_field.render(residual)}")
        if report.max_abs is not None:
            self._safe_print(f"   max |entry| = {report.max_abs:.3e}")

    def run_verify(self, args):
        """Execute verify command"""
        identity = args.identity
        try:
            self._prepare(args)
            if identity not in IDENTITY_NAMES:
                raise DocumentFormatError(f"Unknown identity {identity!r} (expected one of {', '.join(IDENTITY_NAMES)})")
            document = self._load_document(args, identity)
            self._detail(args, f"🔍 Evaluating {identity} (n={document.n}, mode={document.mode})")
            seed = document.seed if document.seed is not None else args.seed
            reports = [report.with_seed(seed) for report in self._evaluate(identity, document, args)]

            if args.output == 'table':
                for report in reports:
                    self._print_report_table(report, document.mode)
            elif len(reports) == 1:
                self._emit_json(reports[0].to_json(document.mode))
            else:
                self._emit_json({"identity": identity, "reports": [r.to_json(document.mode) for r in reports]})

            if any(report.oracle_match is False for report in reports):
                self._status(args, f"❌ {identity}: oracle mismatch")
                return EXIT_ORACLE
            if not all(report.is_zero for report in reports):
                self._status(args, f"❌ {identity}: nonzero residual")
                return EXIT_FAILED
            self._status(args, f"✅ {identity}: identity holds")
            return EXIT_OK

        except KeyboardInterrupt:
            self._safe_print("\n⏹️ Operation cancelled by user", sys.stderr)
            return EXIT_FAILED
        except Exception as e:
            return self._handle_error(e, args)

    def run_random_suite(self, args):
        """Execute random-suite command"""
        try:
            self._prepare(args)

            def report_failure(outcome):
                for failure in outcome["failures"]:
                    self._detail(args, f"  ❌ trial {outcome['trial']}: {failure['identity']} failed")

            suite = RandomSuite(
                n=args.dimension,
                trials=args.trials,
                seed=args.seed,
                mode=args.mode,
                tol=args.tol,
                max_workers=args.max_workers,
                time_budget_s=args.time_budget,
                memory_budget_mb=args.memory_budget,
                progress=not (args.quiet or args.no_progress),
                on_failure=report_failure,
            )
            self._detail(args, f"🎲 Running {', '.join(suite.checks)} on {args.trials} trials (seed {args.seed})")
            summary = suite.run()

            if args.output == 'table':
                self._safe_print("=" * 60)
                self._safe_print("📊 RANDOM SUITE SUMMARY")
                self._safe_print("=" * 60)
                self._safe_print(f"n={summary['n']} trials={summary['trials']} seed={summary['seed']} mode={summary['mode']}")
                for name, counts in summary["checks"].items():
                    total = counts["passed"] + counts["failed"]
                    self._safe_print(f"  • {name:<14} {counts['passed']}/{total}")
                self._safe_print(f"Passed: {summary['passed']}/{summary['trials']} "
                                 f"(elapsed {summary['elapsed_s']}s, peak {summary['peak_memory_mb']} MB)")
            else:
                self._emit_json(summary)

            if summary["failed"]:
                self._status(args, f"❌ {summary['failed']} of {summary['trials']} trials failed")
                return EXIT_FAILED
            self._status(args, f"✅ {summary['passed']}/{summary['trials']} trials passed")
            return EXIT_OK

        except KeyboardInterrupt:
            self._safe_print("\n⏹️ Operation cancelled by user", sys.stderr)
            return EXIT_FAILED
        except Exception as e:
            return self._handle_error(e, args)

    def run_config(self, args):
        """Execute config command"""
        try:
            config = HSConfig(getattr(args, 'file', None))
            action = getattr(args, 'action', None)

            if getattr(args, 'sample', False):
                sample_path = config.create_sample_config()
                if not sample_path:
                    self._safe_print("❌ Failed to create sample configuration", sys.stderr)
                    return EXIT_FAILED
                self._safe_print(f"✅ Sample configuration created: {sample_path}")

            elif action == 'reset':
                config.reset_to_defaults()
                if config.save_config():
                    self._safe_print("✅ Configuration reset to defaults")
                else:
                    self._safe_print("❌ Failed to save configuration", sys.stderr)
                    return EXIT_FAILED

            elif action == 'save':
                config.update_from_args(args)
                if config.save_config():
                    self._safe_print(f"✅ Configuration saved to {config.config_path}")
                else:
                    self._safe_print("❌ Failed to save configuration", sys.stderr)
                    return EXIT_FAILED

            else:
                config.print_config(getattr(args, 'section', None))

        except Exception as e:
            self._safe_print(f"❌ Error: {e}", sys.stderr)
            return EXIT_USAGE if isinstance(e, ValueError) else EXIT_FAILED

        return EXIT_OK

    def run(self, argv=None):
        """Main entry point"""
        parser = self.create_parser()
        args = parser.parse_args(argv)

        # Handle no command provided
        if not hasattr(args, 'command') or args.command is None:
            parser.print_help()
            return EXIT_USAGE

        # Route to appropriate command handler
        if args.command in ['traces', 'tr']:
            return self.run_traces(args)
        elif args.command in ['verify', 'v']:
            return self.run_verify(args)
        elif args.command in ['random-suite', 'suite']:
            return self.run_random_suite(args)
        elif args.command in ['config', 'cfg']:
            return self.run_config(args)
        else:
            self._safe_print(f"❌ Error: Unknown command: {args.command}", sys.stderr)
            parser.print_help()
            return EXIT_USAGE


def main():
    """Main entry point for the unified CLI"""
    cli = HSUnifiedCLI()
    return cli.run()


if __name__ == "__main__":
    sys.exit(main())
