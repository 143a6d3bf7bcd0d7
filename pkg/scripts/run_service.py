#!/usr/bin/env python3
"""Launch the HTTP service, serving the web UI bundle when it exists.

Environment:
  UNSUBSCOPE_BIND              host:port (default 127.0.0.1:8000)
  UNSUBSCOPE_MAX_UPLOAD_BYTES  upload cap (default 50 MiB)
  UNSUBSCOPE_SESSION_TTL       idle session eviction, seconds (default 7200)
  UNSUBSCOPE_WEIGHTS           "d,c,a" weight triple (default 1,10,100)
  UNSUBSCOPE_USAGE_SOURCE      exported | recomputed (default recomputed)
  UNSUBSCOPE_STATIC_DIR        UI bundle dir (default frontend/dist if present)
"""
from __future__ import annotations

import os
import sys
from pathlib import Path

import uvicorn


def main() -> int:
    repo_root = Path(__file__).resolve().parents[1]
    dist = repo_root / "frontend" / "dist"
    if "UNSUBSCOPE_STATIC_DIR" not in os.environ and dist.is_dir():
        os.environ["UNSUBSCOPE_STATIC_DIR"] = str(dist)

    bind = os.environ.get("UNSUBSCOPE_BIND", "127.0.0.1:8000")
    host, _, port = bind.rpartition(":")

    from unsubscope.service import create_app

    uvicorn.run(create_app(), host=host or "127.0.0.1", port=int(port))
    return 0


if __name__ == "__main__":
    sys.exit(main())
