"""Result files for verification runs and the status dashboard built from them."""

import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path

from geomomentum.sinks.text import align_columns
from geomomentum.verification import SUITES

# Verification suites the CLI can record.
KNOWN_SUITES = tuple(sorted(SUITES))


def check_passed(check: dict) -> bool:
    return check.get("residual", float("inf")) <= check.get("threshold", 0.0)


def write_result(
    results_dir,
    suite,
    started_at,
    finished_at,
    checks,
    status=None,
    parameters=None,
):
    """Write ``verify_<suite>.json`` atomically via tmp+rename.

    Args:
        results_dir: Directory to write result files to.
        suite: Verification suite name (e.g. "algebra", "qlm").
        started_at: datetime when the run started.
        finished_at: datetime when the run finished.
        checks: List of dicts with at least "check", "residual" and "threshold".
        status: Override status ("error" for runs that raised). If None,
            "ok" when every check is within its threshold, else "failed".
        parameters: Optional dict of run parameters (l_max, surfaces, ...).

    Returns:
        Path of the written file.
    """
    os.makedirs(results_dir, exist_ok=True)

    failed = [c for c in checks if not check_passed(c)]
    if status is None:
        status = "ok" if not failed else "failed"

    residuals = [c["residual"] for c in checks if "residual" in c]
    result = {
        "suite": suite,
        "started_at": started_at.isoformat(),
        "finished_at": finished_at.isoformat(),
        "duration_seconds": int((finished_at - started_at).total_seconds()),
        "status": status,
        "parameters": parameters or {},
        "checks_total": len(checks),
        "checks_failed": len(failed),
        "worst_residual": max(residuals) if residuals else None,
        "checks": checks,
    }

    target = os.path.join(results_dir, f"verify_{suite}.json")

    fd, tmp_path = tempfile.mkstemp(dir=results_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            json.dump(result, f, indent=2)
            f.write("\n")
        os.replace(tmp_path, target)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise
    return target


def read_all_results(results_dir):
    """Read all ``verify_*.json`` files from a directory, sorted by suite."""
    results = []
    results_path = Path(results_dir)

    if not results_path.is_dir():
        return results

    for entry in results_path.glob("verify_*.json"):
        if not entry.is_file():
            continue
        try:
            with open(entry) as f:
                data = json.load(f)
        except (json.JSONDecodeError, OSError):
            continue
        if isinstance(data, dict):
            results.append(data)

    results.sort(key=lambda r: r.get("suite", ""))
    return results


def format_duration(seconds):
    if seconds is None:
        return ""
    minutes, secs = divmod(seconds, 60)
    if minutes > 0:
        return f"{minutes}m {secs:02d}s"
    return f"{secs}s"


def _finished_at(result):
    finished = result.get("finished_at", "")
    if not finished:
        return None
    try:
        return datetime.fromisoformat(finished)
    except (ValueError, TypeError):
        return None


def format_status_table(results, stale_hours=168):
    """Format results into a status table, one row per known or recorded suite."""
    now = datetime.now(timezone.utc)
    result_map = {r.get("suite", ""): r for r in results}

    rows = []
    for suite in sorted(set(KNOWN_SUITES) | set(result_map)):
        r = result_map.get(suite)
        if r is None:
            rows.append({"suite": suite, "last_run": "(never)", "stale": "YES"})
            continue
        dt = _finished_at(r)
        stale = dt is None or (now - dt).total_seconds() / 3600 > stale_hours
        worst = r.get("worst_residual")
        rows.append(
            {
                "suite": suite,
                "last_run": dt.strftime("%Y-%m-%d %H:%M") if dt else r.get("finished_at", ""),
                "duration": format_duration(r.get("duration_seconds")),
                "status": r.get("status", ""),
                "checks": str(r.get("checks_total", "")),
                "failed": str(r.get("checks_failed", "")),
                "worst": "" if worst is None else f"{worst:.2e}",
                "stale": "YES" if stale else "",
            }
        )

    headers = {
        "suite": "Suite",
        "last_run": "Last Run",
        "duration": "Duration",
        "status": "Status",
        "checks": "Checks",
        "failed": "Failed",
        "worst": "Worst Residual",
        "stale": "Stale",
    }
    return align_columns(headers, rows)


def check_health(results, stale_hours=168):
    """True if every known suite has a recent result with status "ok"."""
    now = datetime.now(timezone.utc)
    result_map = {r.get("suite", ""): r for r in results}

    for suite in KNOWN_SUITES:
        r = result_map.get(suite)
        if r is None or r.get("status") != "ok":
            return False
        dt = _finished_at(r)
        if dt is None or (now - dt).total_seconds() / 3600 > stale_hours:
            return False
    return True
