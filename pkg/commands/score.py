import sys

from commands.decorators import audit_log, exit_on_error
from sieve.exact import transcript_probability
from sieve.transcript_io import read_transcript
from utils.formatting import render
from utils.logging_utils import get_logger
from wreath.classes import SubgroupSpec

logger = get_logger(__name__)


def score_transcript(transcript, subgroups) -> dict:
    scores = {
        subgroup.value: transcript_probability(transcript.forest, transcript.labels, subgroup)
        for subgroup in subgroups
    }
    report = {
        "n": transcript.n,
        "nodes": transcript.forest.node_count,
        "forest": transcript.forest.describe(),
        "homogeneous": transcript.has_homogeneous(),
        "scores": scores,
    }
    if len(scores) == 2:
        report["equal"] = len(set(scores.values())) == 1
        if not transcript.has_homogeneous() and not report["equal"]:
            logger.error("All-inhomogeneous transcript scores differently under the two hypotheses")
    return report


@exit_on_error
@audit_log
def cmd_score(path, subgroup: str = None, both: bool = False, fmt: str = "json", as_float: bool = False,
              out=None) -> int:
    """Exact probability of a transcript file under one or both hypotheses"""
    out = out or sys.stdout
    transcript = read_transcript(path)
    if both:
        subgroups = [SubgroupSpec.TRIVIAL, SubgroupSpec.ORDER_TWO]
    else:
        subgroups = [SubgroupSpec.parse(subgroup) if subgroup else transcript.subgroup]
    report = score_transcript(transcript, subgroups)
    logger.info(f"Scored {path}: {', '.join(f'{k}={v}' for k, v in report['scores'].items())}")
    rows = [{"subgroup": name, "probability": p} for name, p in report["scores"].items()]
    out.write(render(report, fmt, rows=rows, as_float=as_float))
    return 0


def _handle(args, run_config) -> int:
    return cmd_score(args.transcript, args.subgroup, both=args.both, fmt=run_config.format, as_float=args.float)


def register_score_command(subparsers, parent):
    parser = subparsers.add_parser("score", parents=[parent], help="Exact probability of a transcript")
    parser.add_argument("transcript", help="Transcript JSON file")
    parser.add_argument("--both", action="store_true", help="Score under both hypotheses")
    parser.set_defaults(handler=_handle)
