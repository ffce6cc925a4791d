"""运行默认值：包内 settings.yaml 为唯一真源，可被用户 YAML 部分覆盖。"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml

PROFILES = ("uniform", "nested", "clustered", "duplicates", "multiscale")
OUTPUT_FORMATS = ("plain", "tabular-stats")


def get_settings_path() -> Path:
    return Path(__file__).resolve().parent / "settings.yaml"


@dataclass(frozen=True)
class GeneratorSettings:
    denominator: int = 4
    span: int = 64
    spread: Fraction = Fraction(1)
    max_scale: int = 24
    boundary_offset: Fraction = Fraction(1, 1024)
    random_queries: int = 200
    clusters: int = 4
    cluster_radius: int = 6
    cluster_size: int = 64
    multiscale_k: int = 2


@dataclass(frozen=True)
class BenchSettings:
    n_list: tuple[int, ...] = (1024, 4096, 16384, 65536)
    queries: int = 1000
    profile: str = "multiscale"


@dataclass(frozen=True)
class Settings:
    mode: str = "cascaded"
    seed: int = 1
    n: int = 300
    profile: str = "uniform"
    trials: int = 20
    format: str = "plain"
    workers: int = 1
    generator: GeneratorSettings = GeneratorSettings()
    bench: BenchSettings = BenchSettings()


def _parse_generator(raw: dict[str, Any]) -> GeneratorSettings:
    offset = Fraction(str(raw.get("boundary_offset", "1/1024")))
    if offset <= 0:
        raise ValueError("generator.boundary_offset 必须为正")
    spread = Fraction(str(raw.get("spread", "1")))
    if spread <= 0:
        raise ValueError("generator.spread 必须为正")
    return GeneratorSettings(
        denominator=int(raw.get("denominator") or 4),
        span=int(raw.get("span") or 64),
        spread=spread,
        max_scale=int(raw.get("max_scale") or 24),
        boundary_offset=offset,
        random_queries=int(raw.get("random_queries", 200)),
        clusters=int(raw.get("clusters") or 4),
        cluster_radius=int(raw.get("cluster_radius") or 6),
        cluster_size=max(1, int(raw.get("cluster_size") or 64)),
        multiscale_k=max(1, int(raw.get("multiscale_k") or 2)),
    )


def _parse_bench(raw: dict[str, Any]) -> BenchSettings:
    profile = raw.get("profile") or "multiscale"
    if profile not in PROFILES:
        raise ValueError(f"未知实例分布: {profile}")
    return BenchSettings(
        n_list=tuple(int(n) for n in raw.get("n_list") or (1024,)),
        queries=int(raw.get("queries") or 1000),
        profile=profile,
    )


def _parse(raw: dict[str, Any]) -> Settings:
    run = raw.get("run") or {}
    profile = run.get("profile") or "uniform"
    if profile not in PROFILES:
        raise ValueError(f"未知实例分布: {profile}")
    output_format = run.get("format") or "plain"
    if output_format not in OUTPUT_FORMATS:
        raise ValueError(f"未知输出格式: {output_format}")
    return Settings(
        mode=run.get("mode") or "cascaded",
        seed=int(run.get("seed", 1)),
        n=int(run.get("n", 300)),
        profile=profile,
        trials=int(run.get("trials", 20)),
        format=output_format,
        workers=max(1, int(run.get("workers") or 1)),
        generator=_parse_generator(raw.get("generator") or {}),
        bench=_parse_bench(raw.get("bench") or {}),
    )


def _merge(dst: dict[str, Any], src: dict[str, Any]) -> None:
    for key, value in src.items():
        if isinstance(value, dict) and isinstance(dst.get(key), dict):
            _merge(dst[key], value)
        else:
            dst[key] = value


def _read_yaml(path: Path) -> dict[str, Any]:
    with path.open("r", encoding="utf-8") as handle:
        try:
            raw = yaml.safe_load(handle) or {}
        except yaml.YAMLError as e:
            raise ValueError(f"{path} 不是合法的 YAML: {e}") from e
    if not isinstance(raw, dict):
        raise ValueError(f"{path} 必须是 YAML 对象")
    return raw


def load_settings(path: Path | str | None = None) -> Settings:
    """读取包内默认值；给出 path 时把用户文件深合并在上面。"""
    raw = _read_yaml(get_settings_path())
    if path:
        _merge(raw, _read_yaml(Path(path)))
    return _parse(raw)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
