"""Flat ``key = value`` text files, used for run configs and metadata sidecars."""

from typing import Mapping


def write_kv(path, mapping: Mapping[str, object]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in mapping.items():
            fh.write(f"{key} = {value}\n")


def read_kv(path) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ValueError(f"{path}: line {lineno}: expected 'key = value'")
            key, _, value = stripped.partition("=")
            out[key.strip()] = value.strip()
    return out
