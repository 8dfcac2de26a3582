"""Canonical JSON documents for weight distributions, designs and reports.

Output is UTF-8, keys sorted, two-space indent, trailing newline; counts are
decimal strings so consumers never need more than 64-bit integers.  Parsing
and re-dumping a document reproduces it byte for byte.
"""

import json
from fractions import Fraction


def dumps(obj):
    return json.dumps(_plain(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in canonical documents")
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return obj


def write(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def weight_distribution_doc(length, dimension, dist):
    return {
        "length": length,
        "dimension": dimension,
        "distribution": {str(w): str(a) for w, a in sorted(dist.items())},
    }


def read_weight_distribution(text):
    doc = json.loads(text)
    return {int(w): int(a) for w, a in doc["distribution"].items()}


def design_doc(design, lam):
    return {
        "t": 2,
        "v": design.v,
        "k": design.k,
        "lambda": str(lam),
        "b": str(design.b),
        "blocks": [list(blk) for blk in design.blocks],
    }
