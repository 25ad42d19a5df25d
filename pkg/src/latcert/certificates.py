"""Deterministic certificate serialization, storage, and structural checks.

Certificates are nested JSON objects in which every number is written as a
decimal string ("148", "-3/4"). Floats never appear, so byte-identical
re-emission is a meaningful determinism test and diffs stay readable.
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction

from .errors import CertificateFormatError, CertificateVersionError

TOOL_VERSION = "0.1.0"
FORMAT_VERSION = "1"

CERT_PREFIX = "cert_"
INDEX_NAME = "index.json"


def exact(value) -> str:
    """Decimal-string form of an exact number. Floats are refused outright."""
    if isinstance(value, bool):
        raise CertificateFormatError("booleans are stored natively, not as numbers")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    raise CertificateFormatError(f"not an exact number: {value!r}")


def parse_exact(text: str) -> Fraction:
    """Inverse of exact(); accepts "n" and "n/d"."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as ex:
        raise CertificateFormatError(f"bad exact number {text!r}") from ex


def _check_payload(node, path: str) -> None:
    # strings, booleans, and None are the only leaves allowed
    if node is None or isinstance(node, (str, bool)):
        return
    if isinstance(node, (int, float)):
        raise CertificateFormatError(f"bare number at {path or '<root>'}; use exact()")
    if isinstance(node, dict):
        for key, value in node.items():
            if not isinstance(key, str):
                raise CertificateFormatError(f"non-string key at {path or '<root>'}")
            _check_payload(value, f"{path}/{key}")
        return
    if isinstance(node, (list, tuple)):
        for i, value in enumerate(node):
            _check_payload(value, f"{path}/{i}")
        return
    raise CertificateFormatError(f"unsupported value at {path or '<root>'}: {type(node).__name__}")


def canonical_json(payload: dict) -> str:
    """Single canonical text form: sorted keys, ASCII, newline-terminated."""
    _check_payload(payload, "")
    return json.dumps(payload, sort_keys=True, ensure_ascii=True, indent=1) + "\n"


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def certificate_filename(payload: dict) -> str:
    return f"{CERT_PREFIX}{content_hash(canonical_json(payload))[:16]}.json"


def write_certificate(payload: dict, directory: str) -> str:
    """Store one certificate and refresh the index. Append-only: the file
    name is derived from the content hash, so a rewrite is always a no-op
    and existing certificates are never mutated."""
    os.makedirs(directory, exist_ok=True)
    text = canonical_json(payload)
    path = os.path.join(directory, certificate_filename(payload))
    if not os.path.exists(path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    rebuild_index(directory)
    return path


def load_certificate(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as ex:
        raise CertificateFormatError(f"not certificate JSON: {ex}") from ex
    if not isinstance(payload, dict):
        raise CertificateFormatError("certificate root must be an object")
    if "format_version" not in payload:
        raise CertificateFormatError("missing format_version")
    if payload["format_version"] != FORMAT_VERSION:
        raise CertificateVersionError(
            f"format_version {payload['format_version']!r}, expected {FORMAT_VERSION!r}"
        )
    _check_payload(payload, "")
    return payload


def rebuild_index(directory: str) -> str:
    """Regenerate the index from the certificate files actually present."""
    entries = []
    for name in sorted(os.listdir(directory)):
        if not (name.startswith(CERT_PREFIX) and name.endswith(".json")):
            continue
        cert = load_certificate(os.path.join(directory, name))
        field = cert.get("field_block", {})
        verdict = cert.get("verdict", {})
        entries.append(
            {
                "file": name,
                "field": field.get("min_poly"),
                "disc": field.get("disc"),
                "verdict": verdict.get("overall"),
            }
        )
    path = os.path.join(directory, INDEX_NAME)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json({"certificates": entries}))
    return path


def diff_paths(recorded, recomputed, path: str = "") -> list[str]:
    """Paths at which two payloads disagree, depth-first, '/'-separated."""
    if isinstance(recorded, dict) and isinstance(recomputed, dict):
        out = []
        for key in sorted(set(recorded) | set(recomputed)):
            if key not in recorded or key not in recomputed:
                out.append(f"{path}/{key}".lstrip("/"))
            else:
                out.extend(diff_paths(recorded[key], recomputed[key], f"{path}/{key}"))
        return out
    if isinstance(recorded, list) and isinstance(recomputed, list):
        if len(recorded) != len(recomputed):
            return [path.lstrip("/") or "<root>"]
        out = []
        for i, (a, b) in enumerate(zip(recorded, recomputed)):
            out.extend(diff_paths(a, b, f"{path}/{i}"))
        return out
    if recorded != recomputed:
        return [path.lstrip("/") or "<root>"]
    return []
