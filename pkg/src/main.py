#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs.
#  Licensed under GPLv3+.

from __future__ import annotations

import asyncio
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

import click
from rich.console import Console

import plugins.tasks  # noqa: F401  registers every verb
from config import ConfigLoader, config_hash
from core import __version__
from core.enums import Verb
from core.exceptions import FiberPairsError
from core.file_utils import OutputWriter
from core.registry import registry
from Singletons import EnvConfig, Logger

logger = Logger()
console = Console()
err_console = Console(stderr=True)


@dataclass
class CliState:
    config_path: Optional[Path]
    preset: Optional[str]
    overrides: dict[str, Any] = field(default_factory=dict)
    output_dir: Path = Path(".")
    workers: Optional[int] = None
    log_level: Optional[str] = None


def _parse_value(raw: str) -> Any:
    """--set values are JSON when they parse as JSON, plain strings otherwise."""
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def _parse_overrides(pairs: tuple[str, ...]) -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    for pair in pairs:
        key, sep, raw = pair.partition("=")
        if not sep or not key.strip():
            raise click.BadParameter(f"expected key=value, got '{pair}'", param_hint="--set")
        overrides[key.strip()] = _parse_value(raw.strip())
    return overrides


def _run_verb(state: CliState, verb: Verb, options: dict[str, Any], overrides: Optional[dict[str, Any]] = None) -> None:
    try:
        loader = ConfigLoader()
        config = loader.load(state.config_path, {**state.overrides, **(overrides or {})}, preset=state.preset)

        env = EnvConfig.from_environ()
        logger.configure(
            level=state.log_level or config.logging.level,
            log_file=env.LOG_FILE or config.logging.file,
        )
        workers = state.workers or config.run.workers

        task = registry.create_task(verb, config=config, options=options, workers=workers, origins=loader.origins)
        output = asyncio.run(task.start())

        writer = OutputWriter(state.output_dir)
        prefix = task.name
        for table_name, table in output.tables.items():
            writer.write_table(f"{prefix}_{table_name}.csv", table)
        writer.write_json(
            f"{prefix}_summary.json",
            {
                **output.summary,
                "verb": str(verb),
                "config_hash": config_hash(config),
                "seed": config.run.seed,
                "preset": config.preset,
                "tool_version": __version__,
            },
        )
    except FiberPairsError as e:
        err_console.print(f"error: {e}", markup=False, highlight=False, soft_wrap=True)
        raise SystemExit(int(e.exit_code)) from e

    if output.text:
        console.print(output.text, markup=False, highlight=False, soft_wrap=True, end="")
    for path in writer.written:
        console.print(str(path), markup=False, highlight=False, soft_wrap=True)


def _scenario_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Shortcuts for the most common overrides of a simulated run."""
    decorators = [
        click.option("--length", "length_m", type=float, help="Fiber length in m."),
        click.option("--power", "power_w", type=float, help="Pump peak power in W."),
        click.option("--detuning", "detuning_ghz", type=float, help="Signal detuning in GHz; the idler mirrors it."),
        click.option("--duration", "duration_s", type=float, help="Accumulation time in s."),
        click.option("--seed", type=int, help="Master seed."),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def _scenario_overrides(
    length_m: Optional[float],
    power_w: Optional[float],
    detuning_ghz: Optional[float],
    duration_s: Optional[float],
    seed: Optional[int],
) -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    if length_m is not None:
        overrides["fiber.length_m"] = length_m
    if power_w is not None:
        overrides["pump.peak_power_w"] = power_w
    if detuning_ghz is not None:
        overrides["signal.detuning_ghz"] = abs(detuning_ghz)
        overrides["idler.detuning_ghz"] = -abs(detuning_ghz)
    if duration_s is not None:
        overrides["run.duration_s"] = duration_s
    if seed is not None:
        overrides["run.seed"] = seed
    return overrides


@click.group()
@click.version_option(__version__, prog_name="fiberpairs")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="TOML or JSON experiment file.")
@click.option("--preset", help="Named parameter set applied below the config file.")
@click.option("--set", "set_pairs", multiple=True, metavar="KEY=VALUE", help="Override one dotted key; repeatable.")
@click.option("--output-dir", type=click.Path(file_okay=False, path_type=Path), help="Where tables and summaries go (default: FIBERPAIRS_OUTPUT_DIR or .).")
@click.option("--workers", type=click.IntRange(min=1), help="Worker threads (default: FIBERPAIRS_WORKERS, then run.workers).")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False), envvar="FIBERPAIRS_LOG_LEVEL")
@click.pass_context
def cli(
    ctx: click.Context,
    config_path: Optional[Path],
    preset: Optional[str],
    set_pairs: tuple[str, ...],
    output_dir: Optional[Path],
    workers: Optional[int],
    log_level: Optional[str],
) -> None:
    """Photon pairs from spontaneous four-wave mixing in optical fiber."""
    env = EnvConfig.from_environ()
    ctx.obj = CliState(
        config_path=config_path,
        preset=preset,
        overrides=_parse_overrides(set_pairs),
        output_dir=output_dir or Path(env.OUTPUT_DIR),
        workers=workers or env.WORKERS,
        log_level=log_level.upper() if log_level else None,
    )


@cli.command()
@click.option("--lengths", multiple=True, type=float, help="Fiber lengths in m; repeatable.")
@click.option("--powers", multiple=True, type=float, help="Peak powers in W; repeatable.")
@click.option("--start-ghz", type=float)
@click.option("--stop-ghz", type=float)
@click.option("--step-ghz", type=float)
@click.option("--bandwidth-ghz", type=float, help="Filter bandwidth B (default: signal channel).")
@click.option("--normalized", is_flag=True, help="Divide each curve by its peak.")
@click.pass_obj
def spectrum(state: CliState, **options: Any) -> None:
    """mu_p against detuning."""
    _run_verb(state, Verb.SPECTRUM, options)


@cli.command()
@click.option("--reference", type=click.Choice(["from_pump", "from_peak"]))
@click.option("--lengths", multiple=True, type=float)
@click.option("--min-length-m", type=float)
@click.option("--max-length-m", type=float)
@click.option("--points", type=click.IntRange(min=2))
@click.pass_obj
def bandwidth(state: CliState, **options: Any) -> None:
    """HWHM bandwidth against fiber length."""
    _run_verb(state, Verb.BANDWIDTH, options)


@cli.command("phase-match")
@click.option("--mode", type=click.Choice(["truncated", "exact"]))
@click.option("--include-spm/--no-spm", default=None)
@click.option("--start-ghz", type=float)
@click.option("--stop-ghz", type=float)
@click.option("--step-ghz", type=float)
@click.pass_obj
def phase_match(state: CliState, **options: Any) -> None:
    """Delta k and the phase-matched detuning."""
    _run_verb(state, Verb.PHASE_MATCH, options)


@cli.command()
@click.option("--start-nm", type=float)
@click.option("--stop-nm", type=float)
@click.option("--step-nm", type=float)
@click.pass_obj
def dispersion(state: CliState, **options: Any) -> None:
    """Dispersion curves and Taylor coefficients."""
    _run_verb(state, Verb.DISPERSION, options)


@cli.command()
@_scenario_options
@click.pass_obj
def simulate(state: CliState, **scenario: Any) -> None:
    """Monte Carlo coincidence histogram."""
    _run_verb(state, Verb.SIMULATE, {}, _scenario_overrides(**scenario))


@cli.command()
@click.option("--axis", type=click.Choice(["power", "length"]), default="power", show_default=True)
@click.option("--values", multiple=True, type=float, help="Axis values; repeatable.")
@_scenario_options
@click.pass_obj
def sweep(state: CliState, axis: str, values: tuple[float, ...], **scenario: Any) -> None:
    """Coincidences against power or length."""
    _run_verb(state, Verb.SWEEP, {"axis": axis, "values": values}, _scenario_overrides(**scenario))


@cli.command("mu-extract")
@click.argument("inputs", nargs=-1, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--detunings", multiple=True, type=float)
@click.option("--lengths", multiple=True, type=float)
@click.option("--powers", multiple=True, type=float, help="Extraction powers in W for simulated cells.")
@click.option("--source", type=click.Choice(["model", "simulation", "both"]))
@click.pass_obj
def mu_extract(state: CliState, **options: Any) -> None:
    """mu_p from power sweep summaries, or a detuning x length table."""
    _run_verb(state, Verb.MU_EXTRACT, options)


@cli.command()
@click.option("--visibility", type=click.FloatRange(0.0, 1.0))
@click.option("--phase-sign", type=click.Choice(["1", "-1"]))
@click.option("--rate-scale", type=click.FloatRange(min=0.0, min_open=True))
@click.option("--floor", type=click.FloatRange(min=0.0))
@click.option("--step-deg", type=click.FloatRange(min=0.0, min_open=True))
@click.option("--from-sim", is_flag=True, help="Take rate and floor from a simulated 11.4 m pair source.")
@click.option("--subtract-floor", is_flag=True, help="Remove the accidental floor before fitting.")
@click.pass_obj
def bell(state: CliState, phase_sign: Optional[str], **options: Any) -> None:
    """Polarization fringes and CHSH S."""
    options["phase_sign"] = int(phase_sign) if phase_sign else None
    _run_verb(state, Verb.BELL, options)


@cli.command()
@click.option("--target-cps", type=float)
@click.option("--lengths", multiple=True, type=float)
@click.pass_obj
def calibrate(state: CliState, **options: Any) -> None:
    """Raman coefficient and operating points at equal singles."""
    _run_verb(state, Verb.CALIBRATE, options)


@cli.command()
@click.pass_obj
def explain(state: CliState) -> None:
    """Resolved parameters with origin and provenance."""
    _run_verb(state, Verb.EXPLAIN, {})


if __name__ == "__main__":
    cli()
