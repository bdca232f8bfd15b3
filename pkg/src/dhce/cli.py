"""Command-line pipeline: generate -> embed -> classify -> project.

Each subcommand reads and writes files, so the expensive embedding step
can be cached between runs. Every command is deterministic given its
flags (including --seed); reruns produce byte-identical artifacts.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import io as dio
from .embedding import EmbeddingMatrix, align, embed_graph
from .errors import DataError, ParameterError
from .evaluation import cross_validate
from .generators import GeneratorSpec, generate
from .graph import to_edge_list_text
from .projection import pca_2d

__all__ = ["RunConfig", "ClassSpec", "main", "cmd_generate", "cmd_embed",
           "cmd_classify", "cmd_project"]

_LABEL_RE = re.compile(r"[A-Za-z0-9_.-]+")


@dataclass(frozen=True)
class ClassSpec:
    """One --classes entry: a generator model plus a count and label."""

    model: str
    n: int
    params: dict
    count: int
    label: str


@dataclass(frozen=True)
class RunConfig:
    command: str
    manifest: Path | None = None
    matrix: Path | None = None
    out: Path | None = None
    seed: int = 0
    k_neighbors: int = 5
    folds: int = 10
    runs: int = 500
    classes: tuple[ClassSpec, ...] = field(default_factory=tuple)
    include_degree_entropy: bool = True
    per_run_out: Path | None = None


def _parse_class_specs(text: str) -> tuple[ClassSpec, ...]:
    """Parse ``MODEL:n:params:count[:label]`` entries, comma-separated.

    ``params`` holds ``key=value`` pairs separated by ``;`` (p, m, k,
    beta as the model requires), e.g.
    ``WS:100:k=6;beta=0.1:50,BA:100:m=3:50``.
    """
    specs = []
    for entry in (e for e in text.split(",") if e):
        fields = entry.split(":")
        if len(fields) not in (4, 5):
            raise ParameterError(
                f"class spec {entry!r} must be MODEL:n:params:count[:label]"
            )
        model = fields[0].upper()
        try:
            n = int(fields[1])
            count = int(fields[3])
        except ValueError as exc:
            raise ParameterError(f"class spec {entry!r}: {exc}") from exc
        if count < 0:
            raise ParameterError(f"class spec {entry!r}: count must be >= 0")
        params = {}
        if fields[2]:
            for pair in fields[2].split(";"):
                key, sep, value = pair.partition("=")
                if not sep:
                    raise ParameterError(f"class spec {entry!r}: bad param {pair!r}")
                if key in ("m", "k"):
                    params[key] = int(value)
                elif key in ("p", "beta"):
                    params[key] = float(value)
                else:
                    raise ParameterError(f"class spec {entry!r}: unknown param {key!r}")
        label = fields[4] if len(fields) == 5 else model
        if not _LABEL_RE.fullmatch(label):
            raise ParameterError(f"label {label!r} may only use [A-Za-z0-9_.-]")
        # Validate model parameters up front with a throwaway seed.
        GeneratorSpec(model=model, n=n, seed=0, **params)
        specs.append(ClassSpec(model, n, params, count, label))
    if not specs:
        raise ParameterError("--classes must list at least one class")
    return tuple(specs)


def _worker_count() -> int:
    workers = os.cpu_count() or 1
    cap = os.environ.get("DHC_THREADS")
    if cap is not None:
        try:
            cap_value = int(cap)
        except ValueError as exc:
            raise ParameterError(f"DHC_THREADS must be an integer, got {cap!r}") from exc
        if cap_value < 1:
            raise ParameterError("DHC_THREADS must be >= 1")
        workers = min(workers, cap_value)
    return workers


def _derived_seed(master: int, class_idx: int, graph_idx: int) -> int:
    ss = np.random.SeedSequence((master, class_idx, graph_idx))
    return int(ss.generate_state(1, np.uint64)[0])


def cmd_generate(cfg: RunConfig) -> None:
    """Write one edge-list file per graph plus manifest.csv."""
    out_dir = cfg.out
    texts: list[tuple[str, str]] = []  # (filename, content)
    manifest_rows: list[tuple[str, str]] = []
    label_counters: dict[str, int] = {}
    for class_idx, spec in enumerate(cfg.classes):
        for i in range(spec.count):
            gspec = GeneratorSpec(
                model=spec.model,
                n=spec.n,
                seed=_derived_seed(cfg.seed, class_idx, i),
                **spec.params,
            )
            graph = generate(gspec)
            serial = label_counters.get(spec.label, 0)
            label_counters[spec.label] = serial + 1
            filename = f"{spec.label}_{serial:04d}.edges"
            texts.append((filename, to_edge_list_text(graph)))
            manifest_rows.append((filename, spec.label))
    for filename, content in texts:
        dio.atomic_write_text(out_dir / filename, content)
    dio.write_manifest(out_dir / "manifest.csv", manifest_rows)


def _matrix_from_manifest(cfg: RunConfig) -> EmbeddingMatrix:
    entries = dio.read_manifest(cfg.manifest)
    if not entries:
        raise DataError(f"manifest {cfg.manifest} lists no graphs")
    graphs = [dio.load_graph_file(path)[0] for path, _, _ in entries]
    workers = _worker_count()
    if workers > 1 and len(graphs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            embeddings = list(
                pool.map(lambda g: embed_graph(g, cfg.include_degree_entropy), graphs)
            )
    else:
        embeddings = [embed_graph(g, cfg.include_degree_entropy) for g in graphs]
    return align(
        embeddings,
        row_labels=[raw for _, raw, _ in entries],
        class_labels=[label for _, _, label in entries],
    )


def cmd_embed(cfg: RunConfig) -> None:
    """Embed every manifest graph and write the aligned matrix CSV."""
    dio.write_matrix_csv(cfg.out, _matrix_from_manifest(cfg))


def cmd_classify(cfg: RunConfig) -> None:
    """Cross-validate KNN on an embedding matrix and write the JSON report."""
    if cfg.matrix is not None:
        matrix = dio.read_matrix_csv(cfg.matrix)
    else:
        matrix = _matrix_from_manifest(cfg)
    if matrix.class_labels is None:
        raise DataError("matrix has no class labels; cannot classify")
    report = cross_validate(
        matrix.rows,
        matrix.class_labels,
        k_neighbors=cfg.k_neighbors,
        folds=cfg.folds,
        runs=cfg.runs,
        seed=cfg.seed,
    )
    dio.write_report_json(cfg.out, report)
    if cfg.per_run_out is not None:
        dio.write_per_run_csv(cfg.per_run_out, report)


def cmd_project(cfg: RunConfig) -> None:
    """Project an embedding matrix to 2-D and write coordinates + sidecar."""
    matrix = dio.read_matrix_csv(cfg.matrix)
    if matrix.rows.shape[0] < 2:
        raise DataError("projection requires at least 2 rows")
    dio.write_projection_csv(cfg.out, pca_2d(matrix))


class _Parser(argparse.ArgumentParser):
    # Usage errors must exit 1 (argparse defaults to 2).
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="dhce", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a labeled synthetic dataset")
    gen.add_argument("--out", required=True, type=Path,
                     help="output directory for edge lists + manifest.csv")
    gen.add_argument("--seed", type=int, default=0, help="master RNG seed")
    gen.add_argument("--classes", required=True,
                     help="MODEL:n:params:count[:label],... with params as "
                          "key=value pairs joined by ';' "
                          "(e.g. WS:100:k=6;beta=0.1:50,BA:100:m=3:50)")

    emb = sub.add_parser("embed", help="embed manifest graphs into a matrix CSV")
    emb.add_argument("--manifest", required=True, type=Path)
    emb.add_argument("--out", required=True, type=Path, help="matrix CSV path")
    emb.add_argument("--skip-degree-entropy", action="store_true",
                     help="drop the degree-state entropy (index from first update)")

    cls = sub.add_parser("classify", help="KNN cross-validation report")
    src = cls.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", type=Path, help="embedding matrix CSV")
    src.add_argument("--manifest", type=Path, help="embed on the fly from a manifest")
    cls.add_argument("--out", required=True, type=Path, help="report JSON path")
    cls.add_argument("--seed", type=int, default=0)
    cls.add_argument("--k", type=int, default=5, dest="k_neighbors",
                     help="neighbor count (default 5)")
    cls.add_argument("--folds", type=int, default=10)
    cls.add_argument("--runs", type=int, default=500)
    cls.add_argument("--skip-degree-entropy", action="store_true")
    cls.add_argument("--per-run-out", type=Path, default=None,
                     help="optional per-run scores CSV")

    proj = sub.add_parser("project", help="2-D PCA morphospace coordinates")
    proj.add_argument("--matrix", required=True, type=Path)
    proj.add_argument("--out", required=True, type=Path,
                      help="coordinates CSV (variance sidecar lands next to it)")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if getattr(args, "seed", 0) < 0:
        raise ParameterError("--seed must be non-negative")
    for name, minimum in (("k_neighbors", 1), ("folds", 2), ("runs", 1)):
        value = getattr(args, name, None)
        if value is not None and value < minimum:
            raise ParameterError(f"--{name.replace('_neighbors', '')} must be >= {minimum}")
    return RunConfig(
        command=args.command,
        manifest=getattr(args, "manifest", None),
        matrix=getattr(args, "matrix", None),
        out=getattr(args, "out", None),
        seed=getattr(args, "seed", 0),
        k_neighbors=getattr(args, "k_neighbors", 5),
        folds=getattr(args, "folds", 10),
        runs=getattr(args, "runs", 500),
        classes=_parse_class_specs(args.classes) if getattr(args, "classes", None) else (),
        include_degree_entropy=not getattr(args, "skip_degree_entropy", False),
        per_run_out=getattr(args, "per_run_out", None),
    )


_COMMANDS = {
    "generate": cmd_generate,
    "embed": cmd_embed,
    "classify": cmd_classify,
    "project": cmd_project,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ParameterError as exc:
        print(f"dhce: error: {exc}", file=sys.stderr)
        return 1
    try:
        _COMMANDS[cfg.command](cfg)
    except ParameterError as exc:
        print(f"dhce: error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"dhce: data error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"dhce: data error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
