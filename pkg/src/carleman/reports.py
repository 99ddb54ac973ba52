"""Report documents and input files.

Everything the CLI reads or writes is JSON: sequence specs
(``{"kind": ..., "s": ..., "logs": [...]}``), bounds documents (arrays
of ``[order, log_F]`` pairs), and the emitted reports.  Serialization is
canonical — sorted keys, two-space indent, trailing newline — so
identical inputs yield byte-identical reports; floats use Python's
shortest round-tripping repr, which reconstructs the exact double.
Arbitrarily large integer orders (rejoin orders can exceed ``1e150``)
serialize natively.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .certify import Certificate, GapSequence, SparseBounds
from .counterexample import CounterexampleCert, RatioBlock
from .sequences import ConditionReport, FamilySpec


def report_text(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_report(path: str | Path) -> dict[str, Any]:
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"report must be a JSON object: {path}")
    return doc


# ------------------------------------------------------------ input docs

def family_doc(spec: FamilySpec) -> dict[str, Any]:
    doc: dict[str, Any] = {"kind": spec.kind}
    if spec.s is not None:
        doc["s"] = spec.s
    if spec.logs is not None:
        doc["logs"] = list(spec.logs)
    return doc


def family_from_doc(doc: dict[str, Any]) -> FamilySpec:
    if "kind" not in doc:
        raise ValueError("sequence spec missing 'kind'")
    kind = doc["kind"]
    s = doc.get("s")
    logs = doc.get("logs")
    return FamilySpec(
        kind=kind,
        s=None if s is None else float(s),
        logs=None if logs is None else tuple(float(v) for v in logs),
    )


def load_sequence_spec(path: str | Path) -> FamilySpec:
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"sequence spec must be a JSON object: {path}")
    return family_from_doc(doc)


def load_bounds(path: str | Path) -> list[tuple[int, float]]:
    """Bounds document: array of ``[order, log_F]`` pairs."""
    with open(path) as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise ValueError(f"bounds document must be a JSON array: {path}")
    pairs: list[tuple[int, float]] = []
    seen: set[int] = set()
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise ValueError(f"bounds entries must be [order, log_F] pairs, got {entry}")
        order, log_f = entry
        if not isinstance(order, int) or order < 0:
            raise ValueError(f"bound order must be a non-negative int, got {order}")
        if order in seen:
            raise ValueError(f"duplicate bound order {order}")
        seen.add(order)
        pairs.append((order, float(log_f)))
    pairs.sort()
    return pairs


def sparse_bounds_from_pairs(
    pairs: list[tuple[int, float]],
    orders: tuple[int, ...] | None = None,
    length: float = 1.0,
) -> SparseBounds:
    """Assemble :class:`SparseBounds` from document pairs.

    ``orders`` selects a subset of the documented orders (default: all
    positive ones).  An order-0 pair supplies the zeroth bound; absent
    that, the sup norm is taken as 1 (log 0).
    """
    table = dict(pairs)
    log_f0 = table.get(0, 0.0)
    if orders is None:
        orders = tuple(d for d in sorted(table) if d >= 1)
    missing = [d for d in orders if d not in table]
    if missing:
        raise ValueError(f"bounds document lacks orders {missing}")
    return SparseBounds(
        gaps=GapSequence(orders=tuple(orders)),
        log_f=tuple(table[d] for d in orders),
        log_f0=log_f0,
        length=length,
    )


def bounds_pairs_doc(bounds: SparseBounds) -> list[list[float]]:
    pairs: list[list[float]] = [[0, bounds.log_f0]]
    pairs.extend([d, lf] for d, lf in zip(bounds.gaps.orders, bounds.log_f))
    return pairs


# ----------------------------------------------------------- report docs

def condition_doc(r: ConditionReport) -> dict[str, Any]:
    return {
        "label": r.label,
        "holds": r.holds,
        "first_violation": (
            None if r.first_violation is None else list(r.first_violation)
        ),
        "margin": None if math.isinf(r.margin) else r.margin,
    }


def certificate_doc(cert: Certificate) -> dict[str, Any]:
    return {
        "orders": list(cert.orders),
        "m0": cert.m0,
        "c": cert.c,
        "length": cert.length,
        "c0": cert.c0,
        "log_c1": cert.log_c1,
        "ell_min": cert.ell_min,
        "envelope": list(cert.envelope),
        "log_k": cert.log_k,
        "coverage": cert.coverage,
    }


def certificate_from_doc(doc: dict[str, Any]) -> Certificate:
    return Certificate(
        orders=tuple(int(d) for d in doc["orders"]),
        m0=float(doc["m0"]),
        c=float(doc["c"]),
        length=float(doc["length"]),
        c0=int(doc["c0"]),
        log_c1=float(doc["log_c1"]),
        ell_min=int(doc["ell_min"]),
        envelope=tuple(float(v) for v in doc["envelope"]),
        log_k=float(doc["log_k"]),
        coverage=str(doc["coverage"]),
    )


def counterexample_doc(cert: CounterexampleCert) -> dict[str, Any]:
    return {
        "i0": cert.i0,
        "d": list(cert.d),
        "i": list(cert.i),
        "log_m_blocks": [[b.start, b.stop, b.log_ratio] for b in cert.blocks],
        "witness_log2_bound": cert.witness_log2_bound,
        "oracle": cert.oracle_name,
        "probes": cert.probes,
    }


def counterexample_from_doc(doc: dict[str, Any]) -> CounterexampleCert:
    return CounterexampleCert(
        i0=int(doc["i0"]),
        d=tuple(int(v) for v in doc["d"]),
        i=tuple(int(v) for v in doc["i"]),
        blocks=tuple(
            RatioBlock(start=int(s), stop=int(e), log_ratio=float(r))
            for s, e, r in doc["log_m_blocks"]
        ),
        oracle_name=str(doc["oracle"]),
        witness_log2_bound=float(doc["witness_log2_bound"]),
        probes=int(doc["probes"]),
    )
