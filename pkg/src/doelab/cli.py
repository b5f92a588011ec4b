"""Command-line client for the toolbox service.

Each subcommand reads its input files, builds a typed request, and
executes it either in-process (default) or against a running
service instance (--server URL); artifacts from the response are
written to disk unchanged. Exit codes: 0 ok, 1 usage, 2 validation,
3 io, 4 numeric.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import __version__
from .errors import (
    EXIT_IO,
    EXIT_USAGE,
    DoelabError,
    IoError,
    MalformedRecipeFile,
    UsageError,
    error_by_name,
)
from .service import handlers, models

SEED_ENV_VAR = "DOELAB_SEED"
_REQUEST_TIMEOUT = 600.0


class ServiceClient:
    """Dispatches typed requests in-process or over HTTP."""

    _ROUTES = {
        "sample": ("/v1/sample", handlers.sample, models.SampleResponse),
        "run_demo": ("/v1/run-demo", handlers.run_demo, models.RunDemoResponse),
        "analyze": ("/v1/analyze", handlers.analyze, models.AnalyzeResponse),
        "surface": ("/v1/surface", handlers.surface, models.SurfaceResponse),
        "dump_design": ("/v1/dump-design", handlers.dump_design, models.DumpDesignResponse),
    }

    def __init__(self, server: str | None = None):
        self.server = server.rstrip("/") if server else None

    def call(self, operation: str, request):
        path, handler, response_model = self._ROUTES[operation]
        if self.server is None:
            return handler(request)
        import httpx

        try:
            resp = httpx.post(
                f"{self.server}{path}",
                json=request.model_dump(),
                timeout=_REQUEST_TIMEOUT,
            )
        except httpx.HTTPError as exc:
            raise IoError(f"cannot reach server {self.server}: {exc}") from None
        if resp.status_code >= 400:
            raise _remote_error(resp)
        return response_model.model_validate(resp.json())


def _remote_error(resp) -> DoelabError:
    try:
        body = resp.json()
    except ValueError:
        return DoelabError(f"server returned HTTP {resp.status_code}: {resp.text[:200]}")
    if isinstance(body, dict) and "error" in body:
        info = body["error"]
        cls = error_by_name(info.get("error_type", ""))
        err = DoelabError(info.get("message", "unknown server error"))
        err.exit_code = cls.exit_code
        return err
    return DoelabError(f"server returned HTTP {resp.status_code}: {body}")


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from None


def _write_text(path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None


def _load_recipe_doc(path) -> dict:
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedRecipeFile(f"recipe file {path} is not valid JSON: {exc}") from None


def _env_seed() -> int | None:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def _results_format(path, explicit: str | None) -> str:
    if explicit:
        return explicit
    lower = str(path).lower()
    if lower.endswith(".json"):
        return "json"
    if lower.endswith(".csv"):
        return "csv"
    raise UsageError(
        f"cannot infer results format from {path!r}; pass --results-format"
    )


@click.group()
@click.version_option(__version__, prog_name="doelab")
@click.option("--server", metavar="URL", default=None,
              help="Run against a doelab service instead of in-process.")
@click.pass_context
def cli(ctx: click.Context, server: str | None) -> None:
    """Design-of-experiments toolbox: sample, run, analyze."""
    ctx.obj = ServiceClient(server)


@cli.command()
@click.option("--config", "config_path", required=True, type=click.Path(), metavar="PATH")
@click.option("--out", "out_path", required=True, type=click.Path(), metavar="PATH")
@click.option("--strict-json", is_flag=True, help="Reject trailing commas in the config.")
@click.pass_obj
def sample(client: ServiceClient, config_path, out_path, strict_json: bool) -> None:
    """Generate experiment recipes from a scenario configuration."""
    req = models.SampleRequest(
        config_text=_read_text(config_path),
        strict_json=strict_json,
        fallback_seed=_env_seed(),
    )
    resp = client.call("sample", req)
    _write_text(out_path, json.dumps(resp.recipe_set, separators=(",", ":")) + "\n")
    for warning in resp.validation_warnings:
        click.echo(f"warning: {warning}", err=True)
    click.echo(resp.summary)
    click.echo(f"{resp.recipe_count} recipes written to {out_path}")


@cli.command("run-demo")
@click.option("--recipes", "recipes_path", required=True, type=click.Path(), metavar="PATH")
@click.option("--model", required=True, metavar="NAME",
              help="ishigami | g_function | toy_hess | linear")
@click.option("--out", "out_path", required=True, type=click.Path(), metavar="PATH")
@click.option("--horizon", type=int, default=None,
              help="toy_hess horizon steps (default 360).")
@click.pass_obj
def run_demo(client: ServiceClient, recipes_path, model: str, out_path, horizon) -> None:
    """Execute a built-in demo model over a recipe file."""
    options = {} if horizon is None else {"horizon_steps": horizon}
    req = models.RunDemoRequest(
        recipe_set=_load_recipe_doc(recipes_path),
        model=model,
        options=options,
    )
    resp = client.call("run_demo", req)
    _write_text(out_path, json.dumps(resp.results, separators=(",", ":")) + "\n")
    click.echo(f"{resp.row_count} result rows written to {out_path}")


@cli.command()
@click.option("--recipes", "recipes_path", required=True, type=click.Path(), metavar="PATH")
@click.option("--results", "results_path", required=True, type=click.Path(), metavar="PATH")
@click.option("--results-format", type=click.Choice(["json", "csv"]), default=None)
@click.option("--out", "out_dir", required=True, type=click.Path(), metavar="DIR")
@click.option("--alpha", type=float, default=0.05, show_default=True,
              help="Significance threshold for the screening tests.")
@click.option("--boot", "n_boot", type=int, default=100, show_default=True,
              help="Bootstrap resamples for index confidence intervals.")
@click.option("--seed", type=int, default=None,
              help="Analysis seed (default: campaign seed).")
@click.option("--force-analyzer", default=None, metavar="NAME",
              help="Override the analyzer configured for the design type.")
@click.option("--svg", "charts", is_flag=True, help="Also render SVG charts.")
@click.pass_obj
def analyze(client: ServiceClient, recipes_path, results_path, results_format,
            out_dir, alpha, n_boot, seed, force_analyzer, charts) -> None:
    """Analyze campaign results with the method for the design type."""
    if seed is None:
        seed = _env_seed()
    req = models.AnalyzeRequest(
        recipe_set=_load_recipe_doc(recipes_path),
        results_text=_read_text(results_path),
        results_format=_results_format(results_path, results_format),
        alpha=alpha,
        n_boot=n_boot,
        seed=seed,
        force_analyzer=force_analyzer,
        charts=charts,
    )
    resp = client.call("analyze", req)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in resp.tables.items():
        _write_text(out / name, text)
        written.append(name)
    from .reporting import render_summary

    _write_text(out / "summary.json", render_summary(resp.summary))
    written.append("summary.json")
    for name, svg in resp.charts.items():
        _write_text(out / name, svg)
        written.append(name)
    click.echo(f"analyzer: {resp.analyzer}")
    click.echo(f"wrote {', '.join(written)} to {out_dir}")


@cli.command()
@click.option("--recipes", "recipes_path", required=True, type=click.Path(), metavar="PATH")
@click.option("--results", "results_path", required=True, type=click.Path(), metavar="PATH")
@click.option("--results-format", type=click.Choice(["json", "csv"]), default=None)
@click.option("--fx", "factor_x", required=True, metavar="NAME")
@click.option("--fy", "factor_y", required=True, metavar="NAME")
@click.option("--metric", required=True, metavar="NAME")
@click.option("--res", "resolution", type=int, default=25, show_default=True)
@click.option("--fixed", multiple=True, metavar="NAME=VALUE",
              help="Pin another factor (repeatable; default: domain centers).")
@click.option("--out", "out_path", required=True, type=click.Path(), metavar="PATH")
@click.option("--svg", "chart", is_flag=True, help="Also render a heat map next to the CSV.")
@click.pass_obj
def surface(client: ServiceClient, recipes_path, results_path, results_format,
            factor_x, factor_y, metric, resolution, fixed, out_path, chart) -> None:
    """Export a surrogate-model grid over two factors for 3-D plots."""
    pinned = {}
    for item in fixed:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--fixed expects NAME=VALUE, got {item!r}")
        try:
            pinned[name] = float(value)
        except ValueError:
            raise UsageError(f"--fixed value for {name!r} must be numeric") from None
    req = models.SurfaceRequest(
        recipe_set=_load_recipe_doc(recipes_path),
        results_text=_read_text(results_path),
        results_format=_results_format(results_path, results_format),
        factor_x=factor_x,
        factor_y=factor_y,
        metric=metric,
        resolution=resolution,
        fixed=pinned,
        chart=chart,
    )
    resp = client.call("surface", req)
    _write_text(out_path, resp.csv)
    click.echo(f"surface grid written to {out_path}")
    if chart and resp.svg:
        svg_path = Path(out_path).with_suffix(".svg")
        _write_text(svg_path, resp.svg)
        click.echo(f"heat map written to {svg_path}")


@cli.command("dump-design")
@click.option("--config", "config_path", required=True, type=click.Path(), metavar="PATH")
@click.option("--out", "out_path", required=True, type=click.Path(), metavar="PATH")
@click.option("--strict-json", is_flag=True)
@click.pass_obj
def dump_design(client: ServiceClient, config_path, out_path, strict_json: bool) -> None:
    """Dump the raw design matrix as CSV (header = factor names)."""
    req = models.DumpDesignRequest(
        config_text=_read_text(config_path),
        strict_json=strict_json,
    )
    resp = client.call("dump_design", req)
    _write_text(out_path, resp.csv)
    click.echo(f"{resp.design_rows} design rows written to {out_path}")


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the doelab HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except DoelabError as exc:
        click.echo(f"error: {exc}", err=True)
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except OSError as exc:
        click.echo(f"io error: {exc}", err=True)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
