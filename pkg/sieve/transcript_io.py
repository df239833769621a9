"""
Transcript JSON files:

{"n": 3, "subgroup": "trivial", "seed": 7,
 "nodes": [{"id": 0, "label": {...}, "children": []}, ...],
 "events": [{"pair": [0, 1], "label": {...}, "node": 2}, ...]}

Keys are written sorted with a trailing newline so equal transcripts give
byte-identical files.
"""
import json
from pathlib import Path

from sieve.engine import Event, Transcript, replay
from sieve.forest import Forest
from utils.errors import TranscriptFormatError
from utils.logging_utils import get_logger
from wreath.classes import SubgroupSpec
from wreath.irreps import WreathIrrep

logger = get_logger(__name__)


def transcript_to_json(transcript: Transcript) -> dict:
    return {
        "n": transcript.n,
        "subgroup": transcript.subgroup.value,
        "seed": transcript.seed,
        "nodes": [
            {"id": node.id, "label": node.label.to_json(), "children": list(node.children)}
            for node in transcript.nodes
        ],
        "events": [
            {"pair": list(event.pair), "label": event.label.to_json(), "node": event.node}
            for event in transcript.events
        ],
    }


def dumps(transcript: Transcript) -> str:
    return json.dumps(transcript_to_json(transcript), sort_keys=True, indent=2) + "\n"


def write_transcript(path, transcript: Transcript):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(transcript))
    logger.info(f"Wrote transcript with {transcript.forest.node_count} nodes to {path}")


def _label(data, where: str) -> WreathIrrep:
    try:
        return WreathIrrep.from_json(data)
    except ValueError as e:
        raise TranscriptFormatError(f"{where}: {e}")


def transcript_from_json(data: dict) -> Transcript:
    try:
        n = int(data["n"])
        subgroup = SubgroupSpec.parse(data.get("subgroup", "trivial"))
        seed = data.get("seed")
        raw_nodes = sorted(data["nodes"], key=lambda node: node["id"])
        raw_events = data.get("events", [])
    except (KeyError, TypeError, ValueError) as e:
        raise TranscriptFormatError(f"Malformed transcript: {e}")

    if [node["id"] for node in raw_nodes] != list(range(len(raw_nodes))):
        raise TranscriptFormatError("Node ids must be 0..N-1")
    forest = Forest(tuple(tuple(node.get("children", [])) for node in raw_nodes))
    forest.check_laminar()
    labels = tuple(_label(node.get("label"), f"node {node['id']}") for node in raw_nodes)
    if any(label.n != n for label in labels):
        raise TranscriptFormatError(f"Every label must be an irrep for n={n}")

    events = []
    for i, raw in enumerate(raw_events):
        try:
            events.append(Event(tuple(raw["pair"]), _label(raw["label"], f"event {i}"), int(raw["node"])))
        except (KeyError, TypeError, ValueError) as e:
            raise TranscriptFormatError(f"Malformed event {i}: {e}")

    if events:
        rebuilt = replay(n, [labels[leaf] for leaf in forest.leaves], events, subgroup, seed)
        if rebuilt.forest != forest or rebuilt.labels != labels:
            raise TranscriptFormatError("Replaying the events does not reproduce the nodes")
    return Transcript(n, subgroup, seed, forest, labels, events)


def read_transcript(path) -> Transcript:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise TranscriptFormatError(f"Cannot read transcript {path}: {e}")
    except json.JSONDecodeError as e:
        raise TranscriptFormatError(f"Transcript {path} is not valid JSON: {e}")
    return transcript_from_json(data)
