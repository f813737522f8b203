"""External SAT solver orchestration over DIMACS files."""

from __future__ import annotations

import os
import shutil
import subprocess
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .encoding import Cnf, parse_solver_output, to_dimacs

# candidate binaries, tried in order when SAT_SOLVER is not set
KNOWN_SOLVERS = ("splr", "kissat", "cadical", "cryptominisat5", "glucose", "minisat", "picosat")

# per-solver arguments that force plain machine-readable output
DEFAULT_ARGS = {
    "splr": ("-q", "-C", "-r", "-"),
    "kissat": ("-q",),
    "cadical": ("-q",),
    "cryptominisat5": ("--verb", "0"),
}

_EXTRA_DIRS = ("~/.local/bin", "~/.cargo/bin")


def find_solver() -> Optional[str]:
    """Locate a DIMACS solver: $SAT_SOLVER, then PATH, then user bin dirs."""
    env = os.environ.get("SAT_SOLVER")
    if env:
        return env
    for name in KNOWN_SOLVERS:
        path = shutil.which(name)
        if path:
            return path
        for d in _EXTRA_DIRS:
            cand = Path(d).expanduser() / name
            if cand.is_file() and os.access(cand, os.X_OK):
                return str(cand)
    return None


@dataclass(frozen=True)
class SolverConfig:
    executable: str
    args: tuple[str, ...] = ()
    timeout: float = 600.0
    workdir: Optional[str] = None   # None: fresh temp dir per call
    keep_files: bool = False

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


def default_config(timeout: float = 600.0, **kw) -> SolverConfig:
    exe = find_solver()
    if exe is None:
        raise RuntimeError(
            "no SAT solver found: set SAT_SOLVER to a DIMACS-conformant binary "
            "(e.g. `cargo install splr`, or any of " + ", ".join(KNOWN_SOLVERS) + ")")
    args = DEFAULT_ARGS.get(Path(exe).name, ())
    return SolverConfig(executable=exe, args=args, timeout=timeout, **kw)


@dataclass
class SolveResult:
    verdict: str                               # SAT | UNSAT | TIMEOUT
    true_vars: Optional[frozenset[int]] = None
    solve_time: float = 0.0
    log: str = ""


def run_solver(cnf: Cnf | str, config: SolverConfig, name: str = "instance") -> SolveResult:
    """Solve one CNF in a subprocess; wall-clock timeout kills the solver.

    Unparseable or crashed runs come back as TIMEOUT-class failures with the
    captured log; the CNF file is kept on any failure for post-mortem.
    """
    text = cnf if isinstance(cnf, str) else to_dimacs(cnf)
    owns_dir = config.workdir is None
    workdir = Path(config.workdir) if config.workdir else Path(tempfile.mkdtemp(prefix="sortnetopt-"))
    workdir.mkdir(parents=True, exist_ok=True)
    path = workdir / f"{name}.cnf"
    path.write_text(text)
    cmd = [config.executable, *config.args, str(path)]
    start = time.monotonic()
    try:
        proc = subprocess.run(cmd, capture_output=True, text=True, timeout=config.timeout)
    except subprocess.TimeoutExpired:
        return SolveResult("TIMEOUT", None, time.monotonic() - start, "wall-clock timeout")
    except OSError as exc:
        raise RuntimeError(f"failed to launch solver {config.executable!r}: {exc}") from exc
    elapsed = time.monotonic() - start
    verdict, true_vars = parse_solver_output(proc.stdout)
    if verdict == "UNKNOWN" and proc.returncode == 20:
        verdict = "UNSAT"  # SAT-competition exit code, for quiet solvers
    if verdict == "UNKNOWN":
        log = f"cmd: {' '.join(cmd)}\nexit: {proc.returncode}\n{proc.stdout}\n{proc.stderr}"
        return SolveResult("TIMEOUT", None, elapsed, log)
    if not config.keep_files:
        try:
            path.unlink()
            if owns_dir:
                workdir.rmdir()
        except OSError:
            pass
    return SolveResult(verdict, true_vars, elapsed, "")
