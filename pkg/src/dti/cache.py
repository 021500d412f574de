"""Append-only JSON cache of test-ideal reports, one file per (p, d, n, e_max)."""

from __future__ import annotations

import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from dti.testideal import ENGINE_VERSION, TestIdealReport


def default_cache_dir() -> Path:
    env = os.environ.get("DTI_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "dti"


def cache_key(p: int, d: int, n: int, qmax_exp: int, test_element, engine: str) -> dict:
    return {
        "p": p,
        "d": d,
        "n": n,
        "qmax_exp": qmax_exp,
        "test_element": list(test_element),
        "engine": engine,
    }


class ResultCache:
    def __init__(self, directory: Optional[os.PathLike] = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path(self, p: int, d: int, n: int, qmax_exp: int) -> Path:
        return self.directory / f"tau_p{p}_d{d}_n{n}_e{qmax_exp}.json"

    def _entries(self, path: Path) -> list[dict]:
        if not path.exists():
            return []
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)["entries"]

    def get(self, key: dict) -> Optional[TestIdealReport]:
        path = self.path(key["p"], key["d"], key["n"], key["qmax_exp"])
        for entry in self._entries(path):
            if entry["key"] == key and entry["engine_version"] == ENGINE_VERSION:
                report = TestIdealReport.from_dict(entry["report"])
                if cache_key(
                    report.spec.p,
                    report.spec.d,
                    report.spec.n,
                    report.qmax_exp,
                    report.test_element,
                    report.engine,
                ) != key:
                    raise ValueError(f"cache entry in {path} does not match its key")
                return report
        return None

    def put(self, key: dict, report: TestIdealReport) -> Path:
        path = self.path(key["p"], key["d"], key["n"], key["qmax_exp"])
        self.directory.mkdir(parents=True, exist_ok=True)
        entries = self._entries(path)
        entries.append(
            {
                "key": key,
                "engine_version": ENGINE_VERSION,
                "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                "report": report.to_dict(),
            }
        )
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump({"entries": entries}, fh, indent=1)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path
