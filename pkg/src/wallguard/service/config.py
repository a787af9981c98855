"""Service configuration: JSON file plus environment overrides.

The config file is a JSON object; every key is optional:

    {
      "listen": "127.0.0.1:8100",
      "data_dir": "./wallguard-data",
      "default_policy": {"tau": 0.3, "enabled_classes": [...], "rho": 0.5, "n": 10},
      "model_path": "./model.json",
      "stop_list_path": "./stopwords.txt",
      "corpus_path": "./corpus.xml",
      "manager_token": "...",
      "walls": [{"wall_id": "main", "owner_id": "owner"}]
    }

WALLGUARD_LISTEN and WALLGUARD_DATA_DIR override the listen address and
data directory regardless of what the file says.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..labels import ClassLabel
from ..policy import PolicyConfig

DEFAULT_LISTEN = "127.0.0.1:8100"


def policy_to_json(policy: PolicyConfig) -> dict:
    """External form: the window field is called n on the wire."""
    return {
        "tau": policy.tau,
        "enabled_classes": sorted(c.value for c in policy.enabled_classes),
        "rho": policy.rho,
        "n": policy.window,
    }


def policy_from_json(payload: dict) -> PolicyConfig:
    return PolicyConfig(
        tau=float(payload["tau"]),
        enabled_classes=frozenset(
            ClassLabel.from_string(v) for v in payload["enabled_classes"]
        ),
        rho=float(payload["rho"]),
        window=int(payload["n"]),
    ).validate()


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8100
    data_dir: Path = Path("wallguard-data")
    default_policy: PolicyConfig = PolicyConfig()
    model_path: Path | None = None
    stoplist_path: Path | None = None  # None = bundled list
    corpus_path: Path | None = None  # None = bundled corpus
    manager_token: str = "wallguard-manager"
    walls: tuple[tuple[str, str], ...] = (("main", "owner"),)
    ui_dir: Path | None = None  # static assets mounted at /ui when set


def _parse_listen(listen: str) -> tuple[str, int]:
    host, _, port = listen.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"listen address must be host:port, got {listen!r}")
    return host, int(port)


def load_config(path: str | Path | None = None) -> ServiceConfig:
    payload: dict = {}
    if path is not None:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(payload, dict):
            raise ValueError("config file must hold a JSON object")

    listen = os.environ.get("WALLGUARD_LISTEN") or payload.get("listen", DEFAULT_LISTEN)
    host, port = _parse_listen(listen)

    data_dir = os.environ.get("WALLGUARD_DATA_DIR") or payload.get(
        "data_dir", "wallguard-data"
    )

    policy = PolicyConfig()
    if "default_policy" in payload:
        policy = policy_from_json(payload["default_policy"])

    walls = tuple(
        (w["wall_id"], w["owner_id"]) for w in payload.get("walls", [])
    ) or (("main", "owner"),)

    return ServiceConfig(
        host=host,
        port=port,
        data_dir=Path(data_dir),
        default_policy=policy,
        model_path=Path(payload["model_path"]) if payload.get("model_path") else None,
        stoplist_path=(
            Path(payload["stop_list_path"]) if payload.get("stop_list_path") else None
        ),
        corpus_path=Path(payload["corpus_path"]) if payload.get("corpus_path") else None,
        manager_token=payload.get("manager_token", "wallguard-manager"),
        walls=walls,
        ui_dir=Path(payload["ui_dir"]) if payload.get("ui_dir") else None,
    )
