"""Declarative pipeline configuration (one YAML file, per-stage overrides)."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import PipelineError


@dataclass
class PipelineParams:
    n: float = 1.0
    min_count: int = 2
    shingle_len: int = 5
    dedup_threshold: float = 0.9
    window: int = 5
    top_k: int = 10
    # collocate pool for profiles: "candidates" restricts to words of the
    # extracted term candidates, "content" admits every content word
    collocate_pool: str = "candidates"
    lexsim_threshold: float = 0.5
    close_term_threshold: float = 0.8
    max_link_density: float = 0.3
    min_stopword_ratio: float = 0.2
    min_paragraph_chars: int = 20
    examples_limit: int = 10

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineParams":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise PipelineError(f"unknown params: {', '.join(sorted(unknown))}")
        return cls(**data)


@dataclass
class PipelineConfig:
    languages: list
    pivot: str
    workdir: Path
    sources: dict = field(default_factory=dict)  # lang -> [path/glob/url]
    reference: dict = field(default_factory=dict)  # lang -> path
    lexicons: dict = field(default_factory=dict)  # target lang -> tsv path
    gold_translations: dict = field(default_factory=dict)  # target lang -> tsv path
    grammar: str | None = None
    stopwords: dict = field(default_factory=dict)  # lang -> path
    patterns: dict = field(default_factory=dict)  # lang -> yaml path
    store: Path | None = None
    auth: Path | None = None
    import_mapping: str | None = None
    params: PipelineParams = field(default_factory=PipelineParams)
    host: str = "127.0.0.1"
    port: int = 8765
    base_dir: Path = Path(".")

    def __post_init__(self):
        if self.pivot not in self.languages:
            raise PipelineError(
                f"pivot language {self.pivot!r} missing from languages {self.languages}"
            )

    def resolve(self, path) -> Path:
        path = Path(path)
        if not path.is_absolute():
            path = self.base_dir / path
        return Path(os.path.normpath(path))

    @property
    def target_languages(self) -> list:
        return [lang for lang in self.languages if lang != self.pivot]

    @classmethod
    def from_yaml(cls, path) -> "PipelineConfig":
        path = Path(path)
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        base_dir = path.parent
        server = data.get("server", {})
        config = cls(
            languages=list(data.get("languages", [])),
            pivot=data.get("pivot", ""),
            workdir=Path(data.get("workdir", "build/pipeline")),
            sources={k: list(v) for k, v in (data.get("sources") or {}).items()},
            reference=dict(data.get("reference") or {}),
            lexicons=dict(data.get("lexicons") or {}),
            gold_translations=dict(data.get("gold_translations") or {}),
            grammar=data.get("grammar"),
            stopwords=dict(data.get("stopwords") or {}),
            patterns=dict(data.get("patterns") or {}),
            store=Path(data["store"]) if data.get("store") else None,
            auth=Path(data["auth"]) if data.get("auth") else None,
            import_mapping=data.get("import_mapping"),
            params=PipelineParams.from_dict(data.get("params") or {}),
            host=server.get("host", "127.0.0.1"),
            port=int(server.get("port", 8765)),
            base_dir=base_dir,
        )
        config.workdir = config.resolve(config.workdir)
        if config.store is not None:
            config.store = config.resolve(config.store)
        if config.auth is not None:
            config.auth = config.resolve(config.auth)
        return config
