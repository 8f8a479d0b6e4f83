"""Command-line pipeline driver.

Every stage prints its JSON report to stdout and exits non-zero when a
prerequisite artifact is missing, so stages can be chained from shell
scripts or run individually while iterating on one step.
"""

from __future__ import annotations

import json
import sys

import click

from . import pipeline
from .config import PipelineConfig
from .errors import TermforgeError


def _emit(report: dict) -> None:
    click.echo(json.dumps(report, ensure_ascii=False, indent=1, sort_keys=True))


def _run(func, *args, **kwargs):
    try:
        _emit(func(*args, **kwargs))
    except TermforgeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


@click.group()
@click.option(
    "--config",
    "-c",
    "config_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Pipeline configuration file (YAML).",
)
@click.pass_context
def main(ctx, config_path):
    """Terminology thesaurus pipeline: corpora, candidates, store, API."""
    try:
        ctx.obj = PipelineConfig.from_yaml(config_path)
    except TermforgeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


@main.command()
@click.pass_obj
def ingest(config):
    """Collect raw documents from the configured sources."""
    _run(pipeline.stage_ingest, config)


@main.command()
@click.pass_obj
def clean(config):
    """Strip markup and label paragraph quality."""
    _run(pipeline.stage_clean, config)


@main.command()
@click.pass_obj
def dedup(config):
    """Purge duplicate documents and paragraphs."""
    _run(pipeline.stage_dedup, config)


@main.command()
@click.pass_obj
def index(config):
    """Tokenize, tag, and index the corpora (vertical + sidecar files)."""
    _run(pipeline.stage_index, config)


@main.command()
@click.pass_obj
def extract(config):
    """Extract candidate term phrases with the term grammar."""
    _run(pipeline.stage_extract, config)


@main.command()
@click.pass_obj
def rank(config):
    """Rank candidates against the reference corpus."""
    _run(pipeline.stage_rank, config)


@main.command()
@click.pass_obj
def relate(config):
    """Mine hypernym candidate pairs from the pivot corpus."""
    _run(pipeline.stage_relate, config)


@main.command()
@click.pass_obj
def translate(config):
    """Propose translation candidates across the comparable corpora."""
    _run(pipeline.stage_translate, config)


@main.command("import")
@click.option("--file", "dataset", type=click.Path(),
              help="Dataset file to import (csv/tsv/structured text); "
                   "relative paths resolve against the config file.")
@click.option("--mapping", "mapping_path", type=click.Path(),
              help="Import mapping (YAML); defaults to the config's import_mapping.")
@click.option("--ranked", is_flag=True,
              help="Load ranked term candidates into the store for review.")
@click.option("--editor", default="import", show_default=True)
@click.pass_obj
def import_(config, dataset, mapping_path, ranked, editor):
    """Import datasets or extracted candidates into the thesaurus store."""
    _run(pipeline.stage_import, config, dataset=dataset,
         mapping_path=mapping_path, ranked=ranked, editor=editor)


@main.command("export-skos")
@click.option("--output", type=click.Path(), help="Output base path (without suffix).")
@click.pass_obj
def export_skos_cmd(config, output):
    """Write the store as RDF/XML and JSON-LD SKOS documents."""
    _run(pipeline.stage_export_skos, config, output=output)


@main.command("eval-translations")
@click.option("--k", type=int, default=None, help="Cutoff (default: params.top_k).")
@click.pass_obj
def eval_translations(config, k):
    """Hit-rate of gold translations among the top-k candidates."""
    _run(pipeline.stage_eval_translations, config, k=k)


@main.command()
@click.option("--host", default=None, help="Bind address (default from config).")
@click.option("--port", type=int, default=None, help="Port (default from config).")
@click.pass_obj
def serve(config, host, port):
    """Run the JSON HTTP API server."""
    import uvicorn

    from .api import create_app

    try:
        state = pipeline.build_app_state(config)
    except TermforgeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    app = create_app(state)
    uvicorn.run(app, host=host or config.host, port=port or config.port,
                log_level="warning")


if __name__ == "__main__":
    main()
