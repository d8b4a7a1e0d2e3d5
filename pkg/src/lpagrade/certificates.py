"""Re-verification of serialized certificates.

Every check rebuilds its objects from the JSON alone (graph, paths and
element strings are re-parsed) and recomputes the claim.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Union

from .core import FdEmbedding, verify_embedding
from .errors import LpaError
from .graph import Graph, graph_from_json
from .lasso import infinite_path_from_json
from .lengths import verify_property_y_failure
from .syntax import parse_element
from .witness import FactorizationWitness, verify_factorization


def _check_property_y(cert: dict) -> bool:
    g = graph_from_json(cert["graph"])
    x = infinite_path_from_json(cert["witness"], g)
    return verify_property_y_failure(g, int(cert["k"]), x, int(cert["bound"]), bool(cert.get("allow_empty_prefix", False)))


def _check_factorization(cert: dict) -> bool:
    g = graph_from_json(cert["graph"])
    if not isinstance(g, Graph):
        return False
    pairs = [(parse_element(x, g), parse_element(y, g)) for x, y in cert["pairs"]]
    a, b = cert["split"]
    w = FactorizationWitness(g, parse_element(cert["target"], g), (int(a), int(b)), pairs, int(cert.get("level", 0)))
    return verify_factorization(w)


def _check_fd_embedding(cert: dict) -> bool:
    g = graph_from_json(cert["graph"])
    if not isinstance(g, Graph):
        return False
    emb = FdEmbedding(
        g,
        parse_element(cert["element"], g),
        int(cert["k"]),
        int(cert["J"]),
        tuple(cert.get("W", ())),
        int(cert["dimension"]),
        [parse_element(b, g) for b in cert["basis"]],
        [Fraction(c) for c in cert["coordinates"]],
    )
    return verify_embedding(emb)


_CHECKS = {
    "property_y_failure": _check_property_y,
    "factorization": _check_factorization,
    "fd_embedding": _check_fd_embedding,
}


def verify_certificate(cert: dict) -> tuple[bool, str]:
    if not isinstance(cert, dict):
        return False, "certificate must be a JSON object"
    kind = cert.get("type")
    check = _CHECKS.get(kind)
    if check is None:
        return False, f"unknown certificate type {kind!r}"
    try:
        ok = check(cert)
    except (LpaError, KeyError, ValueError, TypeError) as exc:
        return False, f"{kind}: malformed ({type(exc).__name__}: {exc})"
    return ok, f"{kind}: {'verified' if ok else 'REJECTED'}"


def load_certificates(text: str) -> list[dict]:
    """A file holds one certificate, a list of them, {"certificates": [...]},
    or a command report carrying one under "certificate"."""
    data = json.loads(text)
    if isinstance(data, dict) and "certificates" in data:
        data = data["certificates"]
    if isinstance(data, dict):
        data = [data]
    return [c["certificate"] if isinstance(c, dict) and "type" not in c and "certificate" in c else c for c in data]


def verify_all(certs: Iterable[dict]) -> list[tuple[bool, str]]:
    return [verify_certificate(c) for c in certs]


def dump_certificates(certs: Union[dict, list[dict]]) -> str:
    return json.dumps(certs, indent=2, sort_keys=True)
