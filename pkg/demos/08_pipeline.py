"""Run the five-stage demo pipeline programmatically and show caching.

Equivalent to ``mair run --pipeline pipeline.mair`` from this directory.
A stage re-runs only when an input digest or its command line changed.
"""

import os
import shutil
import tempfile
from pathlib import Path

from mair.cli import dispatch

HERE = Path(__file__).parent

workdir = Path(tempfile.mkdtemp(prefix="pipeline-demo-"))
shutil.copytree(HERE / "fixtures", workdir / "fixtures")
shutil.copy(HERE / "pipeline.mair", workdir / "pipeline.mair")
os.chdir(workdir)

print("first run (everything executes):")
dispatch(["run", "--pipeline", "pipeline.mair"])

print("\nsecond run (everything cached):")
dispatch(["run", "--pipeline", "pipeline.mair"])

print("\nstage status:")
dispatch(["status", "--pipeline", "pipeline.mair"])

print(f"\noutputs under {workdir}/out and {workdir}/stores")
