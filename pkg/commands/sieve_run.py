import sys
from pathlib import Path

from commands.decorators import audit_log, exit_on_error
from commands.run_config import RunConfig, parse_policy_params
from sieve.engine import run_many, simulate
from sieve.policies import make_policy
from sieve.transcript_io import write_transcript
from utils.formatting import render
from utils.logging_utils import get_logger
from wreath.classes import SubgroupSpec

logger = get_logger(__name__)


def _histogram(transcripts) -> dict:
    counts = {}
    for transcript in transcripts:
        for label, count in transcript.label_histogram().items():
            counts[label] = counts.get(label, 0) + count
    return dict(sorted(counts.items()))


@exit_on_error
@audit_log
def cmd_sieve_run(run_config: RunConfig, output="transcript.json", jobs: int = None,
                  progress: bool = False, as_float: bool = False, out=None) -> int:
    """
    Simulate the sieve. One run writes its transcript to ``output``; several
    runs write run-NNNN.json files into the ``output`` directory. A summary
    goes to stdout.
    """
    out = out or sys.stdout
    run_config.validate()
    subgroup = SubgroupSpec.parse(run_config.subgroup)

    if run_config.runs == 1:
        policy = make_policy(run_config.policy, **run_config.policy_params)
        transcripts = [simulate(policy, run_config.leaf_count, subgroup, run_config.seed, run_config.n)]
        write_transcript(output, transcripts[0])
        paths = [str(output)]
    else:
        transcripts = run_many(run_config.policy, run_config.policy_params, run_config.leaf_count, subgroup,
                               run_config.n, run_config.runs, run_config.seed, jobs=jobs, progress=progress)
        directory = Path(output)
        paths = []
        for i, transcript in enumerate(transcripts):
            path = directory / f"run-{i:04d}.json"
            write_transcript(path, transcript)
            paths.append(str(path))

    leaves = sum(len(t.leaf_labels) for t in transcripts)
    homogeneous_leaves = sum(label.is_homogeneous for t in transcripts for label in t.leaf_labels)
    summary = {
        "n": run_config.n,
        "subgroup": subgroup.value,
        "policy": run_config.policy,
        "seed": run_config.seed,
        "runs": run_config.runs,
        "leaves": run_config.leaf_count,
        "combines": sum(len(t.events) for t in transcripts),
        "homogeneous_observed": any(t.has_homogeneous() for t in transcripts),
        "homogeneous_runs": sum(t.has_homogeneous() for t in transcripts),
        "homogeneous_leaf_rate": f"{homogeneous_leaves}/{leaves}",
        "label_histogram": _histogram(transcripts),
        "transcripts": paths if len(paths) <= 10 else paths[:10] + [f"... {len(paths) - 10} more"],
    }
    rows = [{"label": label, "count": count} for label, count in summary["label_histogram"].items()]
    out.write(render(summary, run_config.format, rows=rows, as_float=as_float))
    return 0


def _handle(args, run_config) -> int:
    run_config.policy_params = {**run_config.policy_params, **parse_policy_params(args.policy_param)}
    return cmd_sieve_run(run_config, output=args.output, jobs=args.jobs, progress=args.progress,
                         as_float=args.float)


def register_sieve_run_command(subparsers, parent):
    parser = subparsers.add_parser("sieve-run", parents=[parent], help="Simulate sieve runs and write transcripts")
    parser.add_argument("--policy-param", action="append", metavar="KEY=VALUE",
                        help="Policy parameter (repeatable), e.g. script=0-1,2-3")
    parser.add_argument("--output", "-o", default="transcript.json",
                        help="Transcript file (one run) or directory (several runs)")
    parser.set_defaults(handler=_handle)
