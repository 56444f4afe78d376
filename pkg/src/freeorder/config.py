"""Group definitions for the command line.

A config document is YAML::

    groups:
      Z:   {kind: free-abelian, rank: 1}
      ZZ:  {kind: free-product, left: Z, right: Z}
    defaults:
      band_ceiling: 64
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional

import yaml

from .freeproduct import DEFAULT_BAND_CEILING, FreeProductGroup
from .ordered import FreeAbelian, OrderedGroup

DEFAULT_CONFIG = """\
groups:
  Z:    {kind: free-abelian, rank: 1}
  Z2:   {kind: free-abelian, rank: 2}
  ZZ:   {kind: free-product, left: Z, right: Z}
  Z2Z:  {kind: free-product, left: Z2, right: Z}
  ZZZ:  {kind: free-product, left: ZZ, right: Z}
defaults:
  band_ceiling: 64
"""


class ConfigError(ValueError):
    pass


class _UniqueKeyLoader(yaml.SafeLoader):
    pass


def _construct_mapping(loader, node, deep=False):
    seen = set()
    for key_node, _ in node.value:
        key = loader.construct_object(key_node, deep=deep)
        if key in seen:
            raise ConfigError(f"duplicate key {key!r}")
        seen.add(key)
    return yaml.SafeLoader.construct_mapping(loader, node, deep)


_UniqueKeyLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


@dataclass
class SessionConfig:
    groups: dict[str, dict] = field(default_factory=dict)
    band_ceiling: int = DEFAULT_BAND_CEILING

    @classmethod
    def from_mapping(cls, doc: Mapping[str, Any]) -> "SessionConfig":
        if not isinstance(doc, Mapping) or not isinstance(doc.get("groups"), Mapping):
            raise ConfigError("config needs a 'groups' mapping")
        defaults = doc.get("defaults") or {}
        ceiling = defaults.get("band_ceiling", DEFAULT_BAND_CEILING)
        if not isinstance(ceiling, int) or ceiling < 1:
            raise ConfigError("band_ceiling must be a positive integer")
        cfg = cls({str(k): dict(v or {}) for k, v in doc["groups"].items()}, ceiling)
        cfg.validate()
        return cfg

    @classmethod
    def loads(cls, text: str) -> "SessionConfig":
        try:
            doc = yaml.load(text, Loader=_UniqueKeyLoader)
        except yaml.YAMLError as exc:
            raise ConfigError(f"invalid config: {exc}") from exc
        return cls.from_mapping(doc)

    @classmethod
    def load(cls, path: Optional[str | Path] = None) -> "SessionConfig":
        if path is None:
            return cls.loads(DEFAULT_CONFIG)
        return cls.loads(Path(path).read_text())

    def validate(self) -> None:
        for name, spec in self.groups.items():
            kind = spec.get("kind")
            if kind == "free-abelian":
                rank = spec.get("rank")
                if not isinstance(rank, int) or rank < 0:
                    raise ConfigError(f"group {name!r}: rank must be a non-negative integer")
            elif kind == "free-product":
                for side in ("left", "right"):
                    ref = spec.get(side)
                    if ref not in self.groups:
                        raise ConfigError(f"group {name!r}: {side} refers to undefined group {ref!r}")
            else:
                raise ConfigError(f"group {name!r}: unknown kind {kind!r}")
        state: dict[str, int] = {}

        def visit(n, trail):
            if state.get(n) == 2:
                return
            if state.get(n) == 1:
                raise ConfigError("cyclic group definitions: " + " -> ".join(trail + [n]))
            state[n] = 1
            spec = self.groups[n]
            if spec["kind"] == "free-product":
                visit(spec["left"], trail + [n])
                visit(spec["right"], trail + [n])
            state[n] = 2

        for n in self.groups:
            visit(n, [])

    def build(self) -> dict[str, OrderedGroup]:
        built: dict[str, OrderedGroup] = {}

        def make(n):
            if n not in built:
                spec = self.groups[n]
                if spec["kind"] == "free-abelian":
                    built[n] = FreeAbelian(spec["rank"])
                else:
                    built[n] = FreeProductGroup(make(spec["left"]), make(spec["right"]),
                                                band_ceiling=self.band_ceiling)
            return built[n]

        for n in self.groups:
            make(n)
        return built

    def group(self, name: str) -> OrderedGroup:
        if name not in self.groups:
            raise ConfigError(f"unknown group {name!r}; defined: {', '.join(sorted(self.groups))}")
        return self.build()[name]
