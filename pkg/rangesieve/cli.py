"""
Command-line surface: range-sieve <command> [options]

Every command that takes `-o OUT` writes OUT atomically (CSV unless OUT ends in
.json) and records OUT.manifest.json beside it. Without `-o` the result goes to
standard output and no manifest is written.

Exit status: 0 success, 1 data or validation failure, 2 usage error.
"""
import argparse
import dataclasses
import json
import logging
import os
import sys

from marshmallow import ValidationError

from rangesieve import settings
from rangesieve.errors import ConfigError, DatasetError, SieveError, UsageError
from rangesieve.models.crowd import CrowdConfig, EffectModel
from rangesieve.models.stats import BootstrapConfig
from rangesieve.schemas.crowd_schema import SynthConfigSchema
from rangesieve.utils import report_util
from rangesieve.utils.crowd_util import generate_dataset, iterate_sieve
from rangesieve.utils.ingest_util import load_dataset, serialize_dataset, validate_dataset, write_dataset
from rangesieve.utils.logging_util import configure_logging
from rangesieve.utils.manifest_util import build_manifest, file_digest, read_manifest, stale_inputs, write_manifest
from rangesieve.utils.metrics_util import score_table
from rangesieve.utils.output_util import atomic_write_bytes, output_format, render
from rangesieve.utils.policy_util import sieve
from rangesieve.utils.simulation_util import (compare_interventions, simulate, slice_report,
                                              slice_report_from_tables, threshold_sweep, uniform_round)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SYNTAX = 2

# argparse bookkeeping that does not belong in a manifest
_INTERNAL_ARGS = ('handler', 'argv', 'command', 'log_level')
VIOLATION_COLUMNS = ['kind', 'condition', 'instance', 'message']


class SieveArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of exiting so callers get an exit status back"""

    def error(self, message):
        raise UsageError("{}: error: {}".format(self.prog, message), payload={'help': self.format_help()})


def fraction(value):
    try:
        f = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError("'{}' is not a number".format(value))
    if not 0.0 <= f <= 1.0:
        raise argparse.ArgumentTypeError("fraction must lie in [0, 1], got {}".format(value))
    return f


def fraction_list(value):
    parts = [p for p in value.split(',') if p.strip() != '']
    if not parts:
        raise argparse.ArgumentTypeError("expected a comma-separated list of fractions")
    return [fraction(p) for p in parts]


def seed(value):
    try:
        s = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer, got '{}'".format(value))
    if s < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative, got {}".format(value))
    return s


def positive_int(value):
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer, got '{}'".format(value))
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer, got {}".format(value))
    return n


def confidence_level(value):
    try:
        level = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError("'{}' is not a number".format(value))
    if not 0.0 < level < 1.0:
        raise argparse.ArgumentTypeError("confidence level must lie in (0, 1), got {}".format(value))
    return level


def name_list(value):
    return [p.strip() for p in value.split(',') if p.strip() != '']


def _parameters(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in _INTERNAL_ARGS}


def _boot(args):
    return BootstrapConfig(seed=args.seed, replicates=args.reps, level=args.level)


def _emit(args, command, records, columns, document, inputs, stdout, seed=None):
    """Renders a result, then writes OUT plus its manifest, or prints to stdout"""
    output = getattr(args, 'output', None)
    data = render(records, columns, output_format(output), document)
    if output is None:
        stdout.write(data.decode('utf-8'))
        return
    atomic_write_bytes(output, data)
    _record(args, command, inputs, [output], seed)
    log.info("Wrote {} ({} record(s))".format(output, len(records)))


def _record(args, command, inputs, outputs, seed=None):
    manifest = build_manifest(command, _parameters(args), inputs, seed, args.argv,
                              {path: file_digest(path) for path in outputs})
    write_manifest(manifest, outputs[0])


def _dataset_inputs(args):
    inputs = [args.input]
    if args.input.lower().endswith('.csv'):
        inputs.append(args.sidecar or os.path.splitext(args.input)[0] + '.meta.json')
    return inputs


def run_validate(args, stdout):
    d = load_dataset(args.input, args.sidecar)
    report = validate_dataset(d)
    records = [{'kind': v.kind, 'condition': v.condition, 'instance': v.instance_id, 'message': v.message}
               for v in report]
    if args.output is not None:
        _emit(args, 'validate', records, VIOLATION_COLUMNS, {'valid': report.valid, 'violations': records},
              _dataset_inputs(args), stdout)
    elif report.valid:
        stdout.write("valid: {!r}\n".format(d))
    else:
        for v in report:
            stdout.write("{}: {}\n".format(v.kind, v.message))
    if not report.valid:
        log.error("{} violation(s) in {}".format(len(report), args.input))
        return EXIT_ERROR
    return EXIT_OK


def run_score(args, stdout):
    d = load_dataset(args.input, args.sidecar)
    table = score_table(d, args.condition)
    _emit(args, 'score', report_util.score_records(table), report_util.SCORE_COLUMNS,
          report_util.score_document(table), _dataset_inputs(args), stdout)
    return EXIT_OK


def run_sieve(args, stdout):
    d = load_dataset(args.input, args.sidecar)
    cutoffs, assignments = sieve(score_table(d, args.condition), args.fraction, args.disagreement_fraction)
    _emit(args, 'sieve', report_util.assignment_records(assignments), report_util.ASSIGNMENT_COLUMNS,
          report_util.assignment_document(cutoffs, assignments), _dataset_inputs(args), stdout)
    return EXIT_OK


def run_simulate(args, stdout):
    d = load_dataset(args.input, args.sidecar)
    boot = _boot(args)
    document = {'uniform': args.uniform}
    if args.uniform:
        summary = uniform_round(d, args.uniform, boot)
    else:
        cutoffs, _, _, summary = simulate(d, args.fraction, boot, args.disagreement_fraction)
        document['cutoffs'] = report_util.cutoffs_record(cutoffs)
    records = report_util.summary_records([summary])
    document['summary'] = records[0]
    _emit(args, 'simulate', records, report_util.SUMMARY_COLUMNS, document, _dataset_inputs(args), stdout,
          seed=args.seed)
    return EXIT_OK


def run_sweep(args, stdout):
    if args.disagreement_fractions and len(args.disagreement_fractions) != len(args.fractions):
        raise UsageError("--disagreement-fractions needs one value per --fractions entry ({} given, {} expected)"
                         .format(len(args.disagreement_fractions), len(args.fractions)))
    d = load_dataset(args.input, args.sidecar)
    rows = threshold_sweep(d, args.fractions, _boot(args), args.disagreement_fractions)
    records = report_util.sweep_records(rows)
    _emit(args, 'sweep', records, report_util.SWEEP_COLUMNS, records, _dataset_inputs(args), stdout, seed=args.seed)
    return EXIT_OK


def run_slices(args, stdout):
    d = load_dataset(args.input, args.sidecar)
    reports = slice_report(d, args.slice_fraction, _boot(args), args.perm_reps)
    _emit(args, 'slices', report_util.slice_records(reports), report_util.SLICE_COLUMNS,
          report_util.slice_document(reports), _dataset_inputs(args), stdout, seed=args.seed)
    return EXIT_OK


def run_compare(args, stdout):
    d = load_dataset(args.input, args.sidecar)
    rows = compare_interventions(d, args.fraction, _boot(args), args.perm_reps, args.disagreement_fraction)
    records = report_util.comparison_records(rows)
    _emit(args, 'compare', records, report_util.COMPARISON_COLUMNS, records, _dataset_inputs(args), stdout,
          seed=args.seed)
    return EXIT_OK


def load_synth_config(args):
    """
    Crowd and effect configuration from --config, overridden by explicit flags
    :return: (CrowdConfig, EffectModel)
    """
    crowd, effects = CrowdConfig(), EffectModel()
    if args.config:
        try:
            with open(args.config, 'rb') as handle:
                document = json.loads(handle.read().decode('utf-8'))
            loaded = SynthConfigSchema().load(document)
        except ValueError as ex:
            raise ConfigError("Config '{}' is not valid JSON: {}".format(args.config, ex))
        except ValidationError as ex:
            raise ConfigError("Config '{}' is invalid".format(args.config), payload={'errors': ex.messages})
        crowd = loaded['crowd'] or crowd
        effects = loaded['effects'] or effects

    overrides = {'seed': args.seed}
    if args.instances is not None:
        overrides['n_instances'] = args.instances
    if args.annotators is not None:
        overrides['n_annotators'] = args.annotators
    effect_overrides = {name: getattr(args, name) for name in (
        'context_width_factor', 'context_dispersion_factor',
        'deliberation_dispersion_factor', 'deliberation_width_factor') if getattr(args, name) is not None}
    return dataclasses.replace(crowd, **overrides), dataclasses.replace(effects, **effect_overrides)


def run_synth(args, stdout):
    crowd, effects = load_synth_config(args)
    d = generate_dataset(crowd, effects)
    inputs = [args.config] if args.config else []
    if args.output is None:
        stdout.write(serialize_dataset(d, 'json').decode('utf-8'))
        return EXIT_OK
    outputs = write_dataset(d, args.output)
    _record(args, 'synth', inputs, outputs, seed=args.seed)
    log.info("Wrote {}".format(", ".join(outputs)))
    return EXIT_OK


def run_iterate(args, stdout):
    crowd, effects = load_synth_config(args)
    trajectory = iterate_sieve(crowd, effects, args.fraction, args.rounds, _boot(args), args.tolerance,
                               args.disagreement_fraction)
    records = report_util.iteration_records(trajectory)
    _emit(args, 'iterate', records, report_util.ITERATION_COLUMNS, records,
          [args.config] if args.config else [], stdout, seed=args.seed)
    return EXIT_OK


def run_report(args, stdout):
    if args.style == 'slices':
        if args.seed is None:
            raise UsageError("report --style slices needs --seed")
        conditions = args.conditions or [settings.CONDITION_BASELINE, settings.CONDITION_CONTEXT,
                                         settings.CONDITION_DELIBERATION]
        if len(conditions) != len(args.inputs):
            raise UsageError("{} score table(s) given for {} condition(s): {}".format(
                len(args.inputs), len(conditions), ",".join(conditions)))
        if settings.CONDITION_BASELINE not in conditions:
            raise UsageError("--conditions must name the '{}' table".format(settings.CONDITION_BASELINE))
        tables = {condition: report_util.load_score_table(path, condition)
                  for condition, path in zip(conditions, args.inputs)}
        # baseline first, then the remaining tables in the given order
        ordered = {settings.CONDITION_BASELINE: tables.pop(settings.CONDITION_BASELINE)}
        ordered.update(tables)
        reports = slice_report_from_tables(ordered, args.slice_fraction, _boot(args), args.perm_reps)
        _emit(args, 'report', report_util.slice_records(reports), report_util.SLICE_COLUMNS,
              report_util.slice_document(reports), args.inputs, stdout, seed=args.seed)
        return EXIT_OK

    labels = args.conditions or [os.path.splitext(os.path.basename(path))[0] for path in args.inputs]
    if len(labels) != len(args.inputs) or len(set(labels)) != len(labels):
        raise UsageError("Sweep series labels must be unique, one per input")
    records = report_util.sweep_long_records(dict(zip(labels, args.inputs)))
    _emit(args, 'report', records, report_util.SWEEP_LONG_COLUMNS, records, args.inputs, stdout)
    return EXIT_OK


def run_replay(args, stdout):
    manifest = read_manifest(args.manifest)
    stale = stale_inputs(manifest)
    if stale and not args.force:
        raise DatasetError("Input(s) changed since the recorded run: {}".format(", ".join(stale)),
                           payload={'stale': stale})
    if manifest.version != settings.VERSION:
        log.warning("Manifest was written by version {}, replaying with {}".format(manifest.version,
                                                                                 settings.VERSION))
    log.info("Replaying '{}': {}".format(manifest.command, " ".join(manifest.argv)))
    code = main(manifest.argv, stdout=stdout)
    if code != EXIT_OK:
        return code
    changed = [path for path, digest in manifest.outputs.items() if file_digest(path) != digest]
    if changed:
        log.error("Replay produced different output(s): {}".format(", ".join(changed)))
        return EXIT_ERROR
    log.info("Replay reproduced {} output(s)".format(len(manifest.outputs)))
    return EXIT_OK


def _dataset_args(parser):
    parser.add_argument('input', help="Dataset file: .json, or .csv with a <stem>.meta.json sidecar")
    parser.add_argument('--sidecar', help="Scale/instances JSON for a CSV dataset")


def _output_arg(parser):
    parser.add_argument('-o', '--output', help="Output file; .json writes JSON, anything else CSV")


def _bootstrap_args(parser, required_seed=True):
    parser.add_argument('--seed', type=seed, required=required_seed, help="Resampling seed")
    parser.add_argument('--reps', type=positive_int, default=settings.BOOTSTRAP_REPLICATES,
                        help="Bootstrap replicates (default %(default)s)")
    parser.add_argument('--level', type=confidence_level, default=settings.CONFIDENCE_LEVEL,
                        help="Confidence level of the percentile intervals (default %(default)s)")


def _permutation_arg(parser):
    parser.add_argument('--perm-reps', type=positive_int, default=settings.PERMUTATION_REPLICATES,
                        help="Permutation-test replicates (default %(default)s)")


def _synth_args(parser):
    parser.add_argument('--config', help="JSON file with optional 'crowd' and 'effects' objects")
    parser.add_argument('--seed', type=seed, required=True, help="Generator seed, overrides the config")
    parser.add_argument('--instances', type=positive_int, help="Number of instances")
    parser.add_argument('--annotators', type=positive_int, help="Annotators per pool")
    parser.add_argument('--context-width-factor', type=float, help="Width multiplier applied by Context")
    parser.add_argument('--context-dispersion-factor', type=float, help="Dispersion multiplier applied by Context")
    parser.add_argument('--deliberation-dispersion-factor', type=float,
                        help="Dispersion multiplier applied by Deliberation")
    parser.add_argument('--deliberation-width-factor', type=float, help="Width multiplier applied by Deliberation")


def build_parser():
    parser = SieveArgumentParser(prog='range-sieve',
                                 description="Ambiguity and disagreement analysis of range annotations.")
    parser.add_argument('--version', action='version', version='%(prog)s ' + settings.VERSION)
    parser.add_argument('--log-level', help="Package log level, e.g. DEBUG or WARNING")
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True

    p = subparsers.add_parser('validate', help="Report dataset invariant violations",
                              description="Lists violations as kind,condition,instance,message; exit 1 if any.")
    _dataset_args(p)
    _output_arg(p)
    p.set_defaults(handler=run_validate)

    p = subparsers.add_parser('score', help="Per-instance ambiguity and disagreement",
                              description="Writes instance,ambiguity,disagreement,annotators per instance.")
    _dataset_args(p)
    p.add_argument('--condition', default=settings.CONDITION_BASELINE, help="Condition to score (default %(default)s)")
    _output_arg(p)
    p.set_defaults(handler=run_score)

    p = subparsers.add_parser('sieve', help="Assign Context/Deliberation/None per instance",
                              description="Writes instance,decision,ambiguity,disagreement; JSON adds the cutoffs.")
    _dataset_args(p)
    p.add_argument('--condition', default=settings.CONDITION_BASELINE, help="Condition to sieve (default %(default)s)")
    p.add_argument('--fraction', type=fraction, default=settings.DEFAULT_FRACTION,
                   help="Top share per metric eligible for an intervention (default %(default)s)")
    p.add_argument('--disagreement-fraction', type=fraction,
                   help="Separate share for disagreement (default: --fraction)")
    _output_arg(p)
    p.set_defaults(handler=run_sieve)

    p = subparsers.add_parser('simulate', help="Evaluate a counterfactual round",
                              description="Writes one row: " + ",".join(report_util.SUMMARY_COLUMNS) + ".")
    _dataset_args(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument('--fraction', type=fraction, default=settings.DEFAULT_FRACTION,
                      help="Sieve fraction for the targeted round (default %(default)s)")
    mode.add_argument('--uniform', metavar='COND', help="Give every instance the named condition instead")
    p.add_argument('--disagreement-fraction', type=fraction, help="Separate share for disagreement")
    _bootstrap_args(p)
    _output_arg(p)
    p.set_defaults(handler=run_simulate)

    p = subparsers.add_parser('sweep', help="Targeted rounds over several fractions",
                              description="Writes one row per fraction: " + ",".join(report_util.SWEEP_COLUMNS) + ".")
    _dataset_args(p)
    p.add_argument('--fractions', type=fraction_list, default=settings.SWEEP_FRACTIONS,
                   help="Comma-separated fractions (default {})".format(",".join(
                       "{:g}".format(f) for f in settings.SWEEP_FRACTIONS)))
    p.add_argument('--disagreement-fractions', type=fraction_list, help="One disagreement share per fraction")
    _bootstrap_args(p)
    _output_arg(p)
    p.set_defaults(handler=run_sweep)

    p = subparsers.add_parser('slices', help="Most Ambiguous / Most Disagreement slice analysis",
                              description="Writes " + ",".join(report_util.SLICE_COLUMNS) + ".")
    _dataset_args(p)
    p.add_argument('--slice-fraction', type=fraction, default=settings.SLICE_FRACTION,
                   help="Top baseline share per slice (default %(default)s)")
    _bootstrap_args(p)
    _permutation_arg(p)
    _output_arg(p)
    p.set_defaults(handler=run_slices)

    p = subparsers.add_parser('compare', help="Uniform interventions against the targeted round",
                              description="Writes " + ",".join(report_util.COMPARISON_COLUMNS) + ".")
    _dataset_args(p)
    p.add_argument('--fraction', type=fraction, default=settings.DEFAULT_FRACTION,
                   help="Sieve fraction of the targeted round (default %(default)s)")
    p.add_argument('--disagreement-fraction', type=fraction, help="Separate share for disagreement")
    _bootstrap_args(p)
    _permutation_arg(p)
    _output_arg(p)
    p.set_defaults(handler=run_compare)

    p = subparsers.add_parser('synth', help="Generate a synthetic dataset",
                              description="Writes a dataset: JSON, or CSV with a <stem>.meta.json sidecar.")
    _synth_args(p)
    _output_arg(p)
    p.set_defaults(handler=run_synth)

    p = subparsers.add_parser('iterate', help="Repeated sieving on synthetic data",
                              description="Writes one row per round: " + ",".join(report_util.ITERATION_COLUMNS)
                                          + ".")
    _synth_args(p)
    p.add_argument('--fraction', type=fraction, default=settings.DEFAULT_FRACTION,
                   help="Sieve fraction applied every round (default %(default)s)")
    p.add_argument('--disagreement-fraction', type=fraction, help="Separate share for disagreement")
    p.add_argument('--rounds', type=positive_int, required=True, help="Maximum number of rounds")
    p.add_argument('--tolerance', type=float, help="Stop once both means fall below this value")
    p.add_argument('--reps', type=positive_int, default=settings.BOOTSTRAP_REPLICATES,
                   help="Bootstrap replicates per round (default %(default)s)")
    p.add_argument('--level', type=confidence_level, default=settings.CONFIDENCE_LEVEL,
                   help="Confidence level (default %(default)s)")
    _output_arg(p)
    p.set_defaults(handler=run_iterate)

    p = subparsers.add_parser('report', help="Plot-ready panels from earlier outputs",
                              description="slices: score tables in, " + ",".join(report_util.SLICE_COLUMNS)
                                          + " out. sweep: sweep files in, "
                                          + ",".join(report_util.SWEEP_LONG_COLUMNS) + " out.")
    p.add_argument('inputs', nargs='+', help="Score tables (slices) or sweep files (sweep)")
    p.add_argument('--style', choices=('slices', 'sweep'), required=True, help="Panel layout")
    p.add_argument('--conditions', type=name_list,
                   help="slices: condition of each input (default baseline,context,deliberation); "
                        "sweep: series label of each input (default file stem)")
    p.add_argument('--slice-fraction', type=fraction, default=settings.SLICE_FRACTION,
                   help="Top baseline share per slice (default %(default)s)")
    _bootstrap_args(p, required_seed=False)
    _permutation_arg(p)
    _output_arg(p)
    p.set_defaults(handler=run_report)

    p = subparsers.add_parser('replay', help="Re-run a recorded manifest and verify its outputs",
                              description="Re-runs the manifest's argument vector; exit 1 if an output differs.")
    p.add_argument('manifest', help="An OUT.manifest.json file")
    p.add_argument('--force', action='store_true', help="Replay even when inputs changed")
    p.set_defaults(handler=run_replay)
    return parser


def main(argv=None, stdout=None, stderr=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as ex:
        stderr.write(ex.payload['help'] + "\n" + ex.message + "\n")
        return EXIT_SYNTAX
    except SystemExit as ex:
        # --help and --version
        return ex.code if isinstance(ex.code, int) else EXIT_OK
    args.argv = argv

    configure_logging(args.log_level)
    try:
        return args.handler(args, stdout)
    except SieveError as ex:
        log.error(ex.message)
        stderr.write("range-sieve {}: {}\n".format(args.command, ex.message))
        return ex.exit_code
    except OSError as ex:
        log.error(str(ex))
        stderr.write("range-sieve {}: {}\n".format(args.command, ex))
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
