"""CNF encoding of depth-d sorting-network existence.

Variables: c(l,i,j) places a comparator on channels i<j at layer l; u(l,k)
marks channel k as used at layer l; x(b,l,k) carries the value of channel k
after layer l while input b propagates.  Level-0 values are the constants
of b and level-d values the constants of sorted(b), so those variables are
never allocated and the clauses fold accordingly.

With a fixed prefix the comparator variables of the prefix layers are
pinned by unit clauses, the value variables of those levels fold to the
constants obtained by propagating each input through the prefix, and
inputs with identical prefix images share one set of value clauses.  All
of this preserves satisfiability of the underlying formula exactly.

The full formula is satisfiable iff some depth-d network on n channels
(with the fixed prefix, when given) sorts every member of X.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .networks import Network, evaluate_bits, is_ascending, windows

Lit = object  # int variable index with sign, or a bool constant


@dataclass(frozen=True)
class EncodeOptions:
    sigma1: bool = True   # no repeated comparator on consecutive layers
    sigma2: bool = True   # comparators cannot slide to an unused earlier layer
    sigma3: bool = True   # every adjacent pair (i,i+1) compared somewhere
    pad: int = 0          # window padding; 0 = off
    prefix: Optional[Network] = None


@dataclass
class Cnf:
    num_vars: int
    clauses: list[tuple[int, ...]] = field(default_factory=list)

    def extend(self, fragment: Iterable[tuple[int, ...]]) -> None:
        self.clauses.extend(fragment)


def _prefix_trace(prefix: Optional[Network], b: int) -> tuple[int, ...]:
    if prefix is None:
        return (b,)
    levels = [b]
    for depth in range(1, prefix.depth + 1):
        levels.append(evaluate_bits(Network(prefix.n, prefix.layers[depth - 1:depth],
                                            prefix.generalized), levels[-1]))
    return tuple(levels)


class VarMap:
    """Fixed variable allocation: all c, then all u, then x per input.

    Value levels 0..prefix_depth and level d are constants; only the open
    levels in between get variables.
    """

    def __init__(self, n: int, d: int, inputs: Sequence[int],
                 prefix: Optional[Network] = None):
        if prefix is not None and prefix.depth > d:
            raise ValueError(f"prefix depth {prefix.depth} exceeds network depth {d}")
        if prefix is not None and prefix.generalized:
            raise ValueError("fixed prefixes must be standard networks")
        self.n, self.d = n, d
        self.prefix = prefix
        self.prefix_depth = prefix.depth if prefix is not None else 0
        self.inputs = tuple(inputs)
        self._traces = [_prefix_trace(prefix, b) for b in self.inputs]
        self._index: dict[tuple, int] = {}
        nxt = 1
        for l in range(1, d + 1):
            for i, j in itertools.combinations(range(1, n + 1), 2):
                self._index[("c", l, i, j)] = nxt
                nxt += 1
        for l in range(1, d + 1):
            for k in range(1, n + 1):
                self._index[("u", l, k)] = nxt
                nxt += 1
        for b_idx in range(len(self.inputs)):
            for l in range(self.prefix_depth + 1, d):
                for k in range(1, n + 1):
                    self._index[("x", b_idx, l, k)] = nxt
                    nxt += 1
        self.num_vars = nxt - 1

    def c(self, l: int, i: int, j: int) -> int:
        return self._index[("c", l, i, j)]

    def u(self, l: int, k: int) -> int:
        return self._index[("u", l, k)]

    def value(self, b_idx: int, l: int, k: int) -> Lit:
        """Channel-value literal at level l; constants at folded levels."""
        if l == self.d:
            ones = bin(self.inputs[b_idx]).count("1")
            return bool(k > self.n - ones)  # sorted(b): ones on top channels
        if l <= self.prefix_depth:
            return bool((self._traces[b_idx][l] >> (k - 1)) & 1)
        return self._index[("x", b_idx, l, k)]

    def comparator_vars(self) -> Iterable[tuple[int, int, int, int]]:
        for l in range(1, self.d + 1):
            for i, j in itertools.combinations(range(1, self.n + 1), 2):
                yield l, i, j, self.c(l, i, j)


def _neg(lit: Lit) -> Lit:
    return (not lit) if isinstance(lit, bool) else -lit


def _clause(*lits: Lit) -> Optional[tuple[int, ...]]:
    """Fold constants: drop satisfied clauses, strip false literals."""
    out = []
    for lit in lits:
        if lit is True:
            return None
        if lit is False:
            continue
        out.append(lit)
    return tuple(out)


def _emit(fragment: list, *lits: Lit) -> None:
    cl = _clause(*lits)
    if cl is not None:
        fragment.append(cl)


def _dedup(fragment: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    return list(dict.fromkeys(fragment))


def encode_structure(vm: VarMap) -> list[tuple[int, ...]]:
    """u(l,k) <-> OR of incident comparator vars, plus at-most-one per channel."""
    out: list[tuple[int, ...]] = []
    for l in range(1, vm.d + 1):
        for k in range(1, vm.n + 1):
            incident = [vm.c(l, min(k, m), max(k, m))
                        for m in range(1, vm.n + 1) if m != k]
            u = vm.u(l, k)
            _emit(out, -u, *incident)
            for cvar in incident:
                _emit(out, -cvar, u)
            for a, b in itertools.combinations(incident, 2):
                _emit(out, -a, -b)
    return _dedup(out)


def encode_input_sort(vm: VarMap, b_idx: int) -> list[tuple[int, ...]]:
    """Value propagation for one input: min = AND, max = OR, pass-through.

    Layers covered by a fixed prefix are fully determined by the prefix
    units and the folded constants, so clauses start at the first open
    layer.  With no open layer left, the fragment degenerates to a
    consistency check between the prefix image and the sorted target.
    """
    out: list[tuple[int, ...]] = []
    if vm.prefix_depth == vm.d:
        image = vm._traces[b_idx][-1]
        for k in range(1, vm.n + 1):
            have = bool((image >> (k - 1)) & 1)
            want = vm.value(b_idx, vm.d, k)
            if have != want:
                out.append(())
                return out
        return out
    for l in range(vm.prefix_depth + 1, vm.d + 1):
        for i, j in itertools.combinations(range(1, vm.n + 1), 2):
            c = vm.c(l, i, j)
            xi, xj = vm.value(b_idx, l - 1, i), vm.value(b_idx, l - 1, j)
            yi, yj = vm.value(b_idx, l, i), vm.value(b_idx, l, j)
            _emit(out, -c, _neg(yi), xi)
            _emit(out, -c, _neg(yi), xj)
            _emit(out, -c, yi, _neg(xi), _neg(xj))
            _emit(out, -c, yj, _neg(xi))
            _emit(out, -c, yj, _neg(xj))
            _emit(out, -c, _neg(yj), xi, xj)
        for k in range(1, vm.n + 1):
            u = vm.u(l, k)
            x, y = vm.value(b_idx, l - 1, k), vm.value(b_idx, l, k)
            _emit(out, u, _neg(x), y)
            _emit(out, u, x, _neg(y))
    return _dedup(out)


def encode_symmetry(vm: VarMap, opts: EncodeOptions) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    pairs = list(itertools.combinations(range(1, vm.n + 1), 2))
    if opts.sigma1:
        for l in range(1, vm.d):
            for i, j in pairs:
                _emit(out, -vm.c(l, i, j), -vm.c(l + 1, i, j))
    if opts.sigma2:
        for l in range(2, vm.d + 1):
            for i, j in pairs:
                _emit(out, -vm.c(l, i, j), vm.u(l - 1, i), vm.u(l - 1, j))
    if opts.sigma3:
        for i in range(1, vm.n):
            _emit(out, *[vm.c(l, i, i + 1) for l in range(1, vm.d + 1)])
    return _dedup(out)


def encode_fixed_prefix(vm: VarMap, prefix: Network) -> list[tuple[int, ...]]:
    """Unit clauses pinning every comparator variable of the prefix layers."""
    if prefix.depth > vm.d:
        raise ValueError(f"prefix depth {prefix.depth} exceeds network depth {vm.d}")
    if prefix.n != vm.n:
        raise ValueError("prefix channel count mismatch")
    out: list[tuple[int, ...]] = []
    for l, layer in enumerate(prefix.layers, start=1):
        present = {(min(i, j), max(i, j)) for i, j in layer}
        for i, j in itertools.combinations(range(1, vm.n + 1), 2):
            var = vm.c(l, i, j)
            out.append((var,) if (i, j) in present else (-var,))
    return out


def build(n: int, d: int, inputs: Iterable[int],
          opts: EncodeOptions = EncodeOptions()) -> tuple[VarMap, Cnf]:
    """Assemble the full formula for the given input set.

    With d = 0 and an unsorted input present the result is the trivially
    unsatisfiable empty-clause CNF rather than an error.  Inputs whose
    prefix images coincide contribute identical value clauses and are
    collapsed to one representative.
    """
    xs = sorted(set(inputs))
    if opts.pad:
        xs = sorted(windows(xs, opts.pad, n))
    if d == 0:
        cnf = Cnf(0)
        if any(not is_ascending(b, n) for b in xs):
            cnf.clauses.append(())
        return VarMap(n, 0, xs), cnf
    if opts.prefix is not None:
        seen: dict[tuple, int] = {}
        for b in xs:
            key = (_prefix_trace(opts.prefix, b)[-1], bin(b).count("1"))
            seen.setdefault(key, b)
        xs = sorted(seen.values())
    vm = VarMap(n, d, xs, opts.prefix)
    cnf = Cnf(vm.num_vars)
    cnf.extend(encode_structure(vm))
    cnf.extend(encode_symmetry(vm, opts))
    if opts.prefix is not None:
        cnf.extend(encode_fixed_prefix(vm, opts.prefix))
    for b_idx in range(len(xs)):
        cnf.extend(encode_input_sort(vm, b_idx))
    return vm, cnf


# ---------------------------------------------------------------------------
# DIMACS and model handling

def to_dimacs(cnf: Cnf, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {cnf.num_vars} {len(cnf.clauses)}")
    for cl in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in cl) + (" 0" if cl else "0"))
    return "\n".join(lines) + "\n"


_ANSI = re.compile(r"\x1b\[[0-9;]*[A-Za-z]")


def parse_solver_output(text: str) -> tuple[str, Optional[frozenset[int]]]:
    """SAT-competition output: verdict plus the set of true variables.

    Returns one of ("SAT", vars), ("UNSAT", None), ("UNKNOWN", None); the
    status line may carry solver decorations (colors, a file name suffix).
    """
    verdict = "UNKNOWN"
    true_vars: set[int] = set()
    saw_model = False
    for raw in text.splitlines():
        line = _ANSI.sub("", raw).strip()
        if line.startswith("s "):
            if "UNSATISFIABLE" in line:
                verdict = "UNSAT"
            elif "SATISFIABLE" in line:
                verdict = "SAT"
        elif line.startswith("v ") or line == "v":
            saw_model = True
            for tok in line[1:].split():
                try:
                    lit = int(tok)
                except ValueError:
                    return "UNKNOWN", None
                if lit > 0:
                    true_vars.add(lit)
    if verdict == "SAT" and not saw_model:
        return "UNKNOWN", None
    return verdict, frozenset(true_vars) if verdict == "SAT" else None


def decode_network(vm: VarMap, true_vars: frozenset[int]) -> Network:
    """Read the comparator variables of a model back into a network."""
    layers = [[] for _ in range(vm.d)]
    for l, i, j, var in vm.comparator_vars():
        if var in true_vars:
            layers[l - 1].append((i, j))
    return Network(vm.n, tuple(tuple(sorted(layer)) for layer in layers))
