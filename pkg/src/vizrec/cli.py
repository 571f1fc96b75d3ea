"""Command-line entry points: bench, recommend, serve."""

from __future__ import annotations

import json
import pathlib
import sys

import click

from .bench import AgentPolicy, compare, summary_table, to_csv
from .dataset import Dataset, load_table
from .datasets_builtin import BUILTIN_NAMES, registry
from .errors import UnknownDataset
from .recommender import PRESET_NAMES, preset, related_views, specified_view
from .session import SessionManager
from .vizspec import to_json


def _resolve_dataset(name: str) -> Dataset:
    path = pathlib.Path(name)
    if path.exists():
        fmt = "json-records" if path.suffix == ".json" else "csv"
        return load_table(path.read_bytes(), fmt, name=path.stem)
    if name in BUILTIN_NAMES:
        return registry()[name]
    raise UnknownDataset(name)


@click.group()
def main():
    """Visualization recommendation engine."""


@main.command()
@click.option("--dataset", default="movies", show_default=True)
@click.option("--algorithms", default=",".join(PRESET_NAMES[:4]), show_default=True,
              help="Comma-separated preset names.")
@click.option("--trials", default=100, show_default=True)
@click.option("--steps", default=30, show_default=True)
@click.option("--policy", default="random-walker", show_default=True,
              type=click.Choice(["random-walker", "breadth-seeker", "depth-seeker"]))
@click.option("--out", default=None, help="Write per-trial CSV here.")
def bench(dataset, algorithms, trials, steps, policy, out):
    """Run the agent benchmark and print the comparison table."""
    algos = [a.strip() for a in algorithms.split(",") if a.strip()]
    report = compare(algos, dataset, trials,
                     AgentPolicy(kind=policy, steps=steps))
    if out:
        pathlib.Path(out).write_text(to_csv(report))
        click.echo(f"wrote {out}")
    click.echo(summary_table(report))


@main.command()
@click.option("--dataset", default="movies", show_default=True)
@click.option("--algorithm", default="compassql-bfs", show_default=True)
@click.option("--select", default="", help="Comma-separated attribute names.")
@click.option("--page", default=0, show_default=True)
def recommend(dataset, algorithm, select, page):
    """Print the specified view and one page of related views as chart JSON."""
    ds = _resolve_dataset(dataset)
    config = preset(algorithm)
    selection = [s.strip() for s in select.split(",") if s.strip()]
    types = {f.name: f.type for f in ds.fields}
    anchor = specified_view(selection, config, ds)
    result = related_views(anchor, config, ds, page)
    payload = {
        "specified": json.loads(to_json(anchor, ds.name, types)) if anchor else None,
        "related": [
            {"spec": json.loads(to_json(spec, ds.name, types)),
             "score": score.value, "node": list(node.attrs)}
            for spec, score, node in result.items
        ],
        "page_index": result.page_index,
        "has_more": result.has_more,
    }
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


@main.command()
@click.option("--port", default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host):
    """Start the HTTP session service with the built-in datasets."""
    import uvicorn

    from .service import create_app

    app = create_app(SessionManager(registry()))
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
