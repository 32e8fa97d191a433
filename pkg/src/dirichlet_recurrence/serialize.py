"""Deterministic JSON/CSV artifacts with lossless decimal rendering of big floats."""

import csv
import io
import json
import os
import tempfile

from . import _mp
from .factorize import UpperFactor
from .kernel import GramTruncation, Rectangle

FORMAT_VERSION = 1


def atomic_write(path, text):
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(payload):
    return json.dumps(payload, sort_keys=True, indent=1) + "\n"


def csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def envelope(kind, config, body):
    return {"format_version": FORMAT_VERSION, "kind": kind, "config": config, **body}


def big(ctx, x, precision):
    return _mp.to_decimal(ctx, x, precision)


def gram_to_dict(A):
    ctx = _mp.context(A.precision)
    return {
        "rect": A.rect.as_dict(),
        "order": A.order,
        "precision": A.precision,
        "entries": [[big(ctx, v, A.precision) for v in row] for row in A.entries],
    }


def gram_from_dict(d):
    ctx = _mp.context(d["precision"])
    rows = [[ctx.mpf(v) for v in row] for row in d["entries"]]
    # restore object sharing so symmetry stays exact
    for i in range(len(rows)):
        for j in range(i):
            rows[i][j] = rows[j][i]
    return GramTruncation(Rectangle(**d["rect"]), d["order"], d["precision"],
                          tuple(tuple(r) for r in rows))


def factor_to_dict(U):
    ctx = U.ctx
    return {
        "order": U.order,
        "precision": U.precision,
        "scale": U.scale,
        "entries": [[i + 1, j + 1, big(ctx, U.entries[i][j], U.precision)]
                    for i in range(U.order) for j in range(i, U.order)],
    }


def factor_from_dict(d):
    ctx = _mp.context(d["precision"])
    N = d["order"]
    rows = [[ctx.zero] * N for _ in range(N)]
    for i, j, v in d["entries"]:
        rows[i - 1][j - 1] = ctx.mpf(v)
    return UpperFactor(N, d["precision"], d["scale"], tuple(tuple(r) for r in rows))
