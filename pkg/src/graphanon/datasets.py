"""Bundled benchmark networks with an integrity checksum guard."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from importlib import resources

from .graph import Graph, parse_edge_list


class DatasetError(RuntimeError):
    """A bundled dataset is unknown, missing, or corrupted."""


@dataclass(frozen=True)
class DatasetInfo:
    filename: str
    sha256: str
    nodes: int
    edges: int
    description: str


DATASETS: dict[str, DatasetInfo] = {
    "karate": DatasetInfo(
        filename="karate.edgelist",
        sha256="2095f3a8d35c292020188d1a0fd641effd209a09bc854973d8d6425604f91f6c",
        nodes=34,
        edges=78,
        description="Zachary's karate club social network (34 members).",
    ),
    "football": DatasetInfo(
        filename="football.edgelist",
        sha256="7a3fb29f1227bb20c7474eaf0a8928e37a0dbb8ec70d804f6a47eb42b506b095",
        nodes=115,
        edges=613,
        description=(
            "American college football: games between Division I-A teams "
            "in the Fall 2000 season."
        ),
    ),
    "jazz": DatasetInfo(
        filename="jazz.edgelist",
        sha256="551b2c2a53e3cdfbeb951b819cce7d6368b1927105c77ee46a5538cf04ce5e0b",
        nodes=198,
        edges=2742,
        description="Collaboration network of jazz bands.",
    ),
}


def available() -> list[str]:
    """Names of bundled datasets."""
    return sorted(DATASETS)


def load_dataset(name: str) -> Graph:
    """Load a bundled dataset by name, verifying its checksum first."""
    try:
        info = DATASETS[name]
    except KeyError:
        raise DatasetError(
            f"unknown dataset {name!r}; available: {', '.join(available())}"
        ) from None
    res = resources.files(__package__).joinpath("data", info.filename)
    try:
        raw = res.read_bytes()
    except (FileNotFoundError, OSError) as exc:
        raise DatasetError(
            f"dataset {name!r} is not present in this build: {exc}"
        ) from exc
    digest = hashlib.sha256(raw).hexdigest()
    if digest != info.sha256:
        raise DatasetError(
            f"dataset {name!r} failed its integrity check "
            f"(sha256 {digest}, expected {info.sha256})"
        )
    return parse_edge_list(raw.decode("utf-8"))
