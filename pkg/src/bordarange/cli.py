"""Command-line front end.

The CLI is a thin client of the HTTP service.  By default it mounts the
service in-process (no server required); ``--server URL`` points it at a
running instance instead.

Exit codes: 0 success or affirmative verdict, 1 negative verdict
(not in range, nothing found, verification mismatch), 2 usage or I/O
error, 3 internal construction error.
"""

from __future__ import annotations

import asyncio
import csv
import json
import sys
from pathlib import Path

import click
import httpx

from .model import format_pattern, parse_pattern

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

_RULE_DISPLAY = {"Theorem3": "Theorem 3", "Lemma4": "Lemma 4"}


def _display_rule(rule: str | None) -> str:
    if rule is None:
        return "none"
    return _RULE_DISPLAY.get(rule, rule)


class ServiceClient:
    """POSTs a payload either to a remote server or to an in-process app."""

    def __init__(self, server: str | None, cache: str | None):
        self.server = server
        self.cache = cache

    def post(self, path: str, payload: dict) -> tuple[int, dict]:
        if self.server:
            try:
                with httpx.Client(base_url=self.server, timeout=None) as client:
                    response = client.post(path, json=payload)
            except httpx.HTTPError as exc:
                raise click.ClickException(f"cannot reach {self.server}: {exc}") from exc
            return response.status_code, response.json()
        return asyncio.run(self._post_in_process(path, payload))

    async def _post_in_process(self, path: str, payload: dict) -> tuple[int, dict]:
        from .service import create_app

        transport = httpx.ASGITransport(app=create_app(self.cache))
        async with httpx.AsyncClient(transport=transport, base_url="http://bordarange") as client:
            response = await client.post(path, json=payload, timeout=None)
        return response.status_code, response.json()


def _canonical(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _pattern_argument(text: str) -> list[int]:
    try:
        return list(parse_pattern(text))
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _handle_http_error(status: int, body: dict) -> None:
    detail = body.get("detail", body)
    if status >= 500:
        click.echo(f"internal error: {detail}", err=True)
        sys.exit(EXIT_INTERNAL)
    if status >= 400:
        click.echo(f"error: {detail}", err=True)
        sys.exit(EXIT_USAGE)


@click.group()
@click.option("--server", default=None, metavar="URL", help="Base URL of a running service; default runs in-process.")
@click.option("--cache", default=None, metavar="FILE", type=click.Path(), help="Witness cache file (in-process mode).")
@click.pass_context
def main(ctx, server, cache):
    """Decide, construct, and verify Borda-range level patterns."""
    ctx.obj = ServiceClient(server, cache)


@main.command()
@click.argument("pattern")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_obj
def classify(client: ServiceClient, pattern, fmt):
    """Classify PATTERN (comma-separated level sizes, e.g. 2,4,4,2)."""
    status, body = client.post("/classify", {"pattern": _pattern_argument(pattern)})
    _handle_http_error(status, body)
    if fmt == "json":
        click.echo(_canonical(body))
    else:
        verdict = body["verdict"].upper()
        applicable = body["applicable_n"].replace(" n ", " ").removesuffix(" n")
        click.echo(f"{verdict} rule={body['rule'] or 'none'} n={applicable}")
    sys.exit(EXIT_NEGATIVE if body["verdict"] == "not_in_range" else EXIT_OK)


@main.command()
@click.argument("pattern")
@click.option("--n", "n", type=int, default=3, show_default=True, help="Odd voter count.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@click.option("--out", type=click.Path(), default=None, help="Write the witness profile JSON to FILE.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_obj
def construct(client: ServiceClient, pattern, n, fmt, out, seed):
    """Build a verified witness profile for PATTERN at odd n."""
    payload = {"pattern": _pattern_argument(pattern), "n": n, "seed": seed}
    status, body = client.post("/construct", payload)
    _handle_http_error(status, body)
    if body["status"] == "not_in_range":
        click.echo(f"NOT_IN_RANGE ({_display_rule(body['rule'])})", err=True)
        sys.exit(EXIT_NEGATIVE)
    if body["status"] == "unsupported":
        click.echo(f"UNSUPPORTED ({_display_rule(body['rule'])}): {body['detail']}", err=True)
        sys.exit(EXIT_NEGATIVE)
    profile = body["profile"]
    if out:
        Path(out).write_text(_canonical(profile) + "\n")
    if fmt == "json":
        if not out:
            click.echo(_canonical(profile))
    else:
        click.echo(f"pattern={format_pattern(tuple(body['pattern']))} n={body['n']} m={profile['m']}")
        click.echo(f"rule={body['rule'] or 'none'}")
        if body.get("plan"):
            click.echo("plan=" + " ".join(body["plan"]))
        click.echo("scores=" + ",".join(str(s) for s in body["scores"]))
        for i, ranking in enumerate(profile["rankings"], start=1):
            click.echo(f"voter {i}: " + " ".join(str(x) for x in ranking))
    sys.exit(EXIT_OK)


@main.command()
@click.argument("profile_file", type=click.Path(allow_dash=True))
@click.option("--expect", default=None, metavar="PATTERN", help="Pattern the profile must realize.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_obj
def verify(client: ServiceClient, profile_file, expect, fmt):
    """Score a profile JSON file ('-' reads stdin) and report its pattern."""
    try:
        if profile_file == "-":
            text = sys.stdin.read()
        else:
            text = Path(profile_file).read_text()
        profile = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"cannot read profile: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    payload: dict = {"profile": profile}
    if expect is not None:
        payload["expect"] = _pattern_argument(expect)
    status, body = client.post("/verify", payload)
    _handle_http_error(status, body)
    if fmt == "json":
        click.echo(_canonical(body))
    else:
        click.echo(
            f"m={body['m']} n={body['n']} pattern={format_pattern(tuple(body['pattern']))} "
            "scores=" + ",".join(str(s) for s in body["scores"])
        )
    if expect is not None and not body["matches_expected"]:
        click.echo(
            f"MISMATCH got={format_pattern(tuple(body['pattern']))} expected={expect}",
            err=True,
        )
        sys.exit(EXIT_NEGATIVE)
    sys.exit(EXIT_OK)


@main.command("enumerate")
@click.option("--m", "m", type=int, required=True, help="Alternative count.")
@click.option("--n", "n", type=int, default=3, show_default=True, help="Odd voter count.")
@click.option("--mode", type=click.Choice(["exhaustive", "sampled"]), default="exhaustive")
@click.option("--trials", type=int, default=10000, show_default=True, help="Profiles drawn in sampled mode.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--export", "export_path", type=click.Path(), default=None, help="Write the atlas to FILE (.csv or .json).")
@click.pass_obj
def enumerate_command(client: ServiceClient, m, n, mode, trials, seed, export_path):
    """Enumerate every pattern achieved at (m, n)."""
    payload = {"m": m, "n": n, "mode": mode, "trials": trials, "seed": seed}
    status, body = client.post("/enumerate", payload)
    _handle_http_error(status, body)
    for entry in body["achieved"]:
        click.echo(f"{format_pattern(tuple(entry['pattern']))}\t{entry['count']}")
    if export_path:
        _export_atlas(body, Path(export_path))
    sys.exit(EXIT_OK)


def _export_atlas(body: dict, path: Path) -> None:
    if path.suffix.lower() == ".csv":
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["pattern", "count_of_witnesses", "min_witness_json"])
            for entry in body["achieved"]:
                writer.writerow(
                    [
                        format_pattern(tuple(entry["pattern"])),
                        entry["count"],
                        json.dumps(entry["witness"], sort_keys=True),
                    ]
                )
    else:
        path.write_text(_canonical(body) + "\n")


@main.command("cross-check")
@click.option("--max-m", "max_m", type=int, required=True, help="Check all patterns with total <= this.")
@click.option("--n", "n", type=int, default=3, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_obj
def cross_check_command(client: ServiceClient, max_m, n, fmt):
    """Compare classifier verdicts against the exhaustive oracle."""
    status, body = client.post("/cross-check", {"max_m": max_m, "n": n})
    _handle_http_error(status, body)
    if fmt == "json":
        click.echo(_canonical(body))
    else:
        click.echo(
            f"checked={body['patterns_checked']} contradictions={len(body['contradictions'])} "
            f"in_range_present={body['in_range_present']} not_in_range_absent={body['not_in_range_absent']}"
        )
        for item in body["contradictions"]:
            click.echo(
                f"CONTRADICTION {format_pattern(tuple(item['pattern']))} "
                f"verdict={item['verdict']} achieved={item['achieved']}"
            )
        for item in body["unknown"]:
            click.echo(
                f"unknown {format_pattern(tuple(item['pattern']))} "
                f"achieved={item['achieved']}"
            )
    sys.exit(EXIT_OK if body["consistent"] else EXIT_NEGATIVE)


@main.command()
@click.argument("pattern")
@click.option("--n", "n", type=int, default=3, show_default=True)
@click.option("--budget", type=int, default=None, help="Score evaluations before giving up.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_obj
def search(client: ServiceClient, pattern, n, budget, seed):
    """Search for a witness realizing PATTERN by enumeration or local search."""
    payload = {"pattern": _pattern_argument(pattern), "n": n, "seed": seed}
    if budget is not None:
        payload["budget"] = budget
    status, body = client.post("/search", payload)
    _handle_http_error(status, body)
    if body["status"] == "not_found":
        qualifier = "exhaustive" if body["exhaustive"] else "budget exhausted"
        click.echo(f"NOT_FOUND ({qualifier})", err=True)
        sys.exit(EXIT_NEGATIVE)
    click.echo(_canonical(body["profile"]))
    sys.exit(EXIT_OK)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.pass_obj
def serve(client: ServiceClient, host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(client.cache), host=host, port=port)


if __name__ == "__main__":
    main()
