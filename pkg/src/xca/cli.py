"""Command-line interface.

Subcommands: analyze, validate-kb, list, what-if, serve.  Exit codes:
0 success, 1 validation errors in the supplied KB/profile, 2 usage
errors.  Reports and listings go to stdout (or --out); diagnostics go
to stderr.  The knowledge base resolves in priority order: --kb flag,
then the XCA_KB_PATH environment variable, then the embedded default.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .diff import diff_reports, render_diff
from .loader import (
    DocumentError,
    Severity,
    device_to_mapping,
    load_default_kb,
    load_kb,
    load_profile,
    parse_document,
    profile_from_device_mapping,
    validate_device_mapping,
    validate_kb,
)
from .model import (
    REGULATION_ORDER,
    Audience,
    InputModality,
    KnowledgeBase,
    LoopType,
    ModelType,
    kb_fingerprint,
)
from .report import ReportFormat, analyze as run_analysis, render

_FORMAT_CHOICE = click.Choice([f.value for f in ReportFormat])


def _emit_issues(issues) -> None:
    for issue in issues:
        click.echo(str(issue), err=True)
    errors = sum(1 for i in issues if i.severity is Severity.ERROR)
    warnings = len(issues) - errors
    click.echo(f"{errors} error(s), {warnings} warning(s)", err=True)


def _load_kb_or_exit(kb_path: str | None) -> KnowledgeBase:
    try:
        if kb_path is not None:
            return load_kb(Path(kb_path))
        env_path = os.environ.get("XCA_KB_PATH")
        if env_path:
            return load_kb(Path(env_path))
        return load_default_kb()
    except FileNotFoundError as exc:
        click.echo(f"knowledge base not found: {exc}", err=True)
        sys.exit(1)
    except DocumentError as exc:
        _emit_issues(exc.issues)
        sys.exit(1)


def _load_profile_or_exit(profile_path: str):
    try:
        return load_profile(Path(profile_path))
    except DocumentError as exc:
        _emit_issues(exc.issues)
        sys.exit(1)


def _write_output(data: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(out).write_bytes(data)


def _format_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [
        max(len(headers[i]), *(len(row[i]) for row in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


@click.group()
def main() -> None:
    """Map a smart biomedical device to EU explanation duties and XAI methods."""


@main.command("analyze")
@click.option("--profile", "profile_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Device profile file.")
@click.option("--kb", "kb_path", type=click.Path(exists=True, dir_okay=False), help="Knowledge base file (default: embedded KB).")
@click.option("--format", "fmt", type=_FORMAT_CHOICE, default=ReportFormat.DOCUMENT.value, show_default=True)
@click.option("--cap", type=click.IntRange(min=1), default=10, show_default=True, help="Maximum number of minimum-size covers to list.")
@click.option("--deterministic", is_flag=True, help="Omit timestamps for byte-stable output.")
@click.option("--alternatives", is_flag=True, help="Also list irredundant covers up to size 3.")
@click.option("--out", type=click.Path(dir_okay=False), help="Write the report here instead of stdout.")
def cmd_analyze(profile_path, kb_path, fmt, cap, deterministic, alternatives, out) -> None:
    """Analyze one device profile and emit the full report."""
    kb = _load_kb_or_exit(kb_path)
    profile = _load_profile_or_exit(profile_path)
    report = run_analysis(
        profile, kb, cap=cap, deterministic=deterministic, include_alternatives=alternatives
    )
    _write_output(render(report, ReportFormat(fmt)), out)


@main.command("validate-kb")
@click.option("--kb", "kb_path", type=click.Path(exists=True, dir_okay=False), help="Knowledge base file (default: embedded KB).")
@click.option("--format", "fmt", type=_FORMAT_CHOICE, default=ReportFormat.DOCUMENT.value, show_default=True)
def cmd_validate_kb(kb_path, fmt) -> None:
    """Validate a knowledge base; exit 0 only when it has no errors."""
    if kb_path is not None:
        source = Path(kb_path)
    else:
        env_path = os.environ.get("XCA_KB_PATH")
        from importlib import resources

        source = (
            Path(env_path)
            if env_path
            else resources.files("xca").joinpath("data/default_kb.yaml").read_bytes()
        )
    try:
        doc = parse_document(source)
        issues = validate_kb(doc)
    except DocumentError as exc:
        issues = exc.issues
    errors = sum(1 for i in issues if i.severity is Severity.ERROR)
    warnings = len(issues) - errors
    if ReportFormat(fmt) is ReportFormat.STRUCTURED:
        body = {
            "errors": errors,
            "warnings": warnings,
            "issues": [
                {
                    "severity": i.severity.value,
                    "code": i.code,
                    "location": i.location,
                    "message": i.message,
                }
                for i in issues
            ],
        }
        click.echo(json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        for issue in issues:
            click.echo(str(issue))
        click.echo(f"{errors} error(s), {warnings} warning(s)")
    sys.exit(1 if errors else 0)


@main.command("list")
@click.argument("what", type=click.Choice(["goals", "methods", "regulations"]))
@click.option("--kb", "kb_path", type=click.Path(exists=True, dir_okay=False), help="Knowledge base file (default: embedded KB).")
def cmd_list(what, kb_path) -> None:
    """List KB records (IDs ascending)."""
    kb = _load_kb_or_exit(kb_path)
    if what == "goals":
        headers = ["ID", "REGULATIONS", "SCOPE", "STAGE", "ADDRESSABLE", "DESCRIPTION"]
        rows = [
            [
                g.id.label,
                ", ".join(r.value.upper() for r in REGULATION_ORDER if r in g.regulations),
                g.scope.value,
                g.stage.value,
                "yes" if g.xai_addressable else "no",
                g.description,
            ]
            for g in sorted(kb.goals, key=lambda g: g.id.value)
        ]
    elif what == "methods":
        headers = [
            "ID",
            "FAMILY",
            "SCOPE",
            "AGNOSTICISM",
            "MODEL_TYPES",
            "MODALITIES",
            "GOALS",
            "QUESTION",
        ]
        rows = [
            [
                e.id,
                e.family.value,
                e.scope.value,
                e.agnosticism.value,
                ", ".join(sorted(m.value for m in e.model_types)) or "-",
                ", ".join(sorted(m.value for m in e.input_modalities)) or "-",
                ",".join(g.label for g in sorted(e.goal_ids)),
                e.question,
            ]
            for e in sorted(kb.catalog, key=lambda e: e.id)
        ]
    else:
        headers = ["ID", "FULL_NAME", "ARTICLES"]
        rows = [
            [
                r.id.value.upper(),
                r.full_name,
                ", ".join(r.explanation_articles),
            ]
            for r in sorted(kb.regulations, key=lambda r: r.id.value)
        ]
    sys.stdout.write(_format_table(headers, rows))


_SET_FIELDS = {
    "name",
    "loop_type",
    "is_medical_device",
    "requires_third_party_conformity",
    "listed_annex_iii",
    "processes_personal_data",
    "high_stakes_effects",
    "model_types",
    "input_modalities",
    "audience",
}
_BOOL_LITERALS = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def _parse_override(key: str, raw: str):
    if key == "name":
        return raw
    if key == "loop_type":
        return _parse_enum_value(key, raw, LoopType)
    if key == "audience":
        return _parse_enum_value(key, raw, Audience)
    if key in ("model_types", "input_modalities"):
        enum_cls = ModelType if key == "model_types" else InputModality
        values = [v.strip() for v in raw.split(",") if v.strip()]
        return [_parse_enum_value(key, v, enum_cls) for v in values]
    value = _BOOL_LITERALS.get(raw.lower())
    if value is None:
        raise click.UsageError(f"--set {key}: {raw!r} is not a boolean (true/false)")
    return value


def _parse_enum_value(key: str, raw: str, enum_cls) -> str:
    try:
        return enum_cls(raw).value
    except ValueError:
        literals = ", ".join(m.value for m in enum_cls)
        raise click.UsageError(f"--set {key}: {raw!r} is not one of: {literals}")


@main.command("what-if")
@click.option("--profile", "profile_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Base device profile file.")
@click.option("--set", "overrides", multiple=True, metavar="KEY=VALUE", help="Profile field override; repeatable.")
@click.option("--kb", "kb_path", type=click.Path(exists=True, dir_okay=False), help="Knowledge base file (default: embedded KB).")
@click.option("--cap", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--format", "fmt", type=_FORMAT_CHOICE, default=ReportFormat.DOCUMENT.value, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Write the diff here instead of stdout.")
def cmd_what_if(profile_path, overrides, kb_path, cap, fmt, out) -> None:
    """Compare the base profile against a modified copy (pure re-analysis)."""
    kb = _load_kb_or_exit(kb_path)
    base_profile = _load_profile_or_exit(profile_path)
    device = device_to_mapping(base_profile)
    for override in overrides:
        key, sep, raw = override.partition("=")
        if not sep:
            raise click.UsageError(f"--set expects KEY=VALUE, got {override!r}")
        if key not in _SET_FIELDS:
            raise click.UsageError(f"--set: unknown profile field {key!r}")
        device[key] = _parse_override(key, raw)
    issues = validate_device_mapping(device)
    fatal = [i for i in issues if i.severity is Severity.ERROR]
    if fatal:
        # overrides produced an invalid profile: an invocation problem
        raise click.UsageError("; ".join(str(i) for i in fatal))
    modified_profile = profile_from_device_mapping(device)
    base = run_analysis(base_profile, kb, cap=cap, deterministic=True)
    modified = run_analysis(modified_profile, kb, cap=cap, deterministic=True)
    _write_output(render_diff(diff_reports(base, modified), ReportFormat(fmt)), out)


@main.command("serve")
@click.option("--kb", "kb_path", type=click.Path(exists=True, dir_okay=False), help="Knowledge base file (default: embedded KB).")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8431, show_default=True)
@click.option("--cors-origin", "cors_origins", multiple=True, help="Allowed CORS origin; repeatable.")
@click.option("--enable-reload", is_flag=True, help="Expose POST /api/v1/admin/reload.")
def cmd_serve(kb_path, host, port, cors_origins, enable_reload) -> None:
    """Run the HTTP facade (binds to loopback unless --host is widened)."""
    import signal

    import uvicorn

    from .service import KbHolder, create_app

    kb = _load_kb_or_exit(kb_path)
    source = Path(kb_path) if kb_path else None
    holder = KbHolder(kb, source_path=source)
    app = create_app(holder, cors_origins=list(cors_origins), enable_reload=enable_reload)
    if source is not None and hasattr(signal, "SIGHUP"):
        signal.signal(signal.SIGHUP, lambda *_: holder.reload())
    click.echo(f"serving on http://{host}:{port} (KB {kb_fingerprint(kb)[:12]})", err=True)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
