"""Seeded randomized verification suites, one per acceptance criterion.

Each suite returns a :class:`SuiteResult` holding named checks with the
measured worst-case error next to the tolerance it was held to. The same seed
gives the same instances and the same report.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from matchgates import oracle
from matchgates import randomize as rnd
from matchgates.circuits import (
    Circuit,
    Policy,
    gate_matrix,
    modified_swap,
    named_gate,
    validate_circuit,
)
from matchgates.clifford_algebra import decompose_pauli, jordan_wigner, verify_rep
from matchgates.compiler import all_bitstrings, compile_circuit, verify_compilation
from matchgates.decompose import decompose, decompose_rotation, gate_count_cap, global_phase
from matchgates.errors import NonGaussianGate
from matchgates.gaussian import (
    circuit_to_rotation,
    expectation_z,
    gate_to_rotation,
    hamiltonian_to_rotation,
    local_rotation,
)
from matchgates.intertwine import (
    conjugated_jw,
    example2_T,
    example3_T,
    simulate_intertwined,
)
from matchgates.pauli import PauliString, pauli_mul

DEFAULT_SEED = 7


@dataclass(frozen=True)
class Check:
    label: str
    ok: bool
    value: float | None = None
    tolerance: float | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"label": self.label, "ok": self.ok, "value": self.value, "tolerance": self.tolerance, "detail": self.detail}


@dataclass
class SuiteResult:
    name: str
    title: str
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0
    time_limit: float | None = None

    @property
    def ok(self) -> bool:
        in_time = self.time_limit is None or self.elapsed <= self.time_limit
        return in_time and all(c.ok for c in self.checks)

    def check(self, label: str, ok: bool, value: float | None = None, tolerance: float | None = None, detail: str = "") -> None:
        self.checks.append(Check(label, bool(ok), None if value is None else float(value), tolerance, detail))

    def bound(self, label: str, value: float, tolerance: float, detail: str = "") -> None:
        self.check(label, value <= tolerance, value, tolerance, detail)

    def get(self, label: str) -> Check:
        for c in self.checks:
            if c.label == label:
                return c
        raise KeyError(label)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "title": self.title,
            "ok": self.ok,
            "time_limit": self.time_limit,
            "checks": [c.to_json() for c in self.checks],
        }

    def summary(self) -> str:
        failed = [c.label for c in self.checks if not c.ok]
        status = "PASS" if self.ok else "FAIL"
        tail = f" (failed: {', '.join(failed)})" if failed else ""
        return f"{status} {self.name}: {self.title}{tail}"


def _z(n: int, k: int) -> PauliString:
    return PauliString.from_letters(n, {k: "Z"})


def suite_fast_vs_oracle(seed: int = DEFAULT_SEED, instances: int = 200, collect: list | None = None) -> SuiteResult:
    res = SuiteResult("fast-vs-oracle", "rotation simulation agrees with the statevector", time_limit=60.0)
    gen = rnd.rng(seed)
    worst = 0.0
    t0 = time.perf_counter()
    for _ in range(instances):
        n = int(gen.integers(2, 9))
        c = rnd.nn_circuit(gen, n, int(gen.integers(0, 61)))
        s = rnd.product_state(gen, n)
        k = int(gen.integers(0, n))
        rot = circuit_to_rotation(c)
        fast = expectation_z(c, s, k, rotation=rot).value
        slow = oracle.expectation_z_dense(c, s, k)
        worst = max(worst, abs(fast - slow))
        if collect is not None:
            collect.append((c, rot))
    res.elapsed = time.perf_counter() - t0
    res.bound("max |<Z>_fast - <Z>_oracle|", worst, 1e-9, f"{instances} circuits, n in 2..8, <= 60 gates")
    return res


def suite_rotation_soundness(seed: int = DEFAULT_SEED, instances: int = 200) -> SuiteResult:
    res = SuiteResult("rotation-soundness", "rotations are in SO(2n) and survive decomposition")
    pairs: list = []
    t0 = time.perf_counter()
    suite_fast_vs_oracle(seed, instances, collect=pairs)
    ortho, min_det, trip = 0.0, np.inf, 0.0
    for c, rot in pairs:
        ortho = max(ortho, rot.orthogonality_error())
        min_det = min(min_det, float(np.linalg.det(rot.r)))
        back = circuit_to_rotation(decompose_rotation(rot))
        trip = max(trip, float(np.abs(back.r - rot.r).max()))
        for g in c.gates[:2]:
            gr = gate_to_rotation(g, c.n)
            back = circuit_to_rotation(decompose_rotation(gr))
            ortho = max(ortho, gr.orthogonality_error())
            trip = max(trip, float(np.abs(back.r - gr.r).max()))
    res.elapsed = time.perf_counter() - t0
    res.bound("max ||R^T R - I||_F", ortho, 1e-9)
    res.check("min det R > 0", min_det > 0, min_det)
    res.bound("max round-trip rotation error", trip, 1e-8, "gate/circuit -> rotation -> decomposer -> rotation")
    return res


def suite_compiler(seed: int = DEFAULT_SEED, instances: int = 20) -> SuiteResult:
    res = SuiteResult("compiler", "compiled distance-2 circuits reproduce logical <Z>", time_limit=120.0)
    gen = rnd.rng(seed + 1)
    worst, problems, runs = 0.0, [], 0
    t0 = time.perf_counter()
    for i in range(instances):
        m = 1 + i % 3
        lc = rnd.logical_circuit(gen, m, int(gen.integers(1, 11)))
        cc = compile_circuit(lc)
        inputs = all_bitstrings(m) if m <= 2 else [rnd.basis_bits(gen, m) for _ in range(8)]
        for bits in inputs:
            rep = verify_compilation(lc, cc, bits)
            runs += 1
            worst = max(worst, rep.max_error)
            problems.extend(f"instance {i}: {p}" for p in rep.problems)
    res.elapsed = time.perf_counter() - t0
    res.bound("max |<Z>_logical - <Z>_compiled|", worst, 1e-9, f"{runs} runs")
    res.check("structure (distance, det, count, displacement)", not problems, float(len(problems)), 0.0, "; ".join(sorted(set(problems))[:5]))
    return res


def suite_decomposer(seed: int = DEFAULT_SEED, instances: int = 20) -> SuiteResult:
    res = SuiteResult("decomposer", "exp(iH) rebuilt exactly from n.n. gates", time_limit=60.0)
    gen = rnd.rng(seed + 2)
    infid, rot_err, over = 0.0, 0.0, []
    t0 = time.perf_counter()
    for i in range(instances):
        n = 2 + i % 4
        q = rnd.hamiltonian(gen, n, scale=0.5)
        c = decompose(q)
        target = hamiltonian_to_rotation(q)
        rot_err = max(rot_err, float(np.linalg.norm(circuit_to_rotation(c).r - target.r)))
        v = oracle.expm_hermitian(oracle.quadratic_hamiltonian_matrix(q.h, jordan_wigner(n)))
        infid = max(infid, 1 - global_phase(v, oracle.circuit_unitary(c)).fidelity)
        if len(c) > gate_count_cap(n):
            over.append(f"n={n}: {len(c)} > {gate_count_cap(n)}")
    res.elapsed = time.perf_counter() - t0
    res.bound("max 1 - fidelity", infid, 1e-8)
    res.bound("max rotation reconstruction error", rot_err, 1e-8)
    res.check("gate count within n(2n-1)(4n)", not over, detail="; ".join(over))
    return res


def example2_formula(n: int, mu: int) -> PauliString:
    """Reference formula for example 2 generator ``c'_mu`` (0-indexed ``mu``); factors on missing lines are dropped."""
    k = mu // 2  # 0-indexed line of the pair
    if mu % 2 == 0:
        letters = {j: "Z" for j in range(k, n)}
        if k >= 1:
            letters[k - 1] = "X"
        return PauliString.from_letters(n, letters)
    letters = {j: "Z" for j in range(k + 1, n)}
    letters[k] = "Y"
    return PauliString.from_letters(n, letters, phase=2)


def example3_formula(n: int, mu: int) -> tuple[PauliString, bool]:
    """Reference formula for example 3 generator ``c'_mu`` (0-indexed ``mu``).

    Returns the string and whether every factor of the reference formula lies
    inside ``n`` lines; out-of-range factors are dropped.
    """
    one = mu + 1  # 1-indexed label used by the reference table
    letters: dict[int, str] = {}

    def put(line: int, letter: str) -> None:
        # reference lines are 1-indexed
        letters[line - 1] = letter

    if one <= 3:
        put(1, "XYZ"[one - 1])
        put(2, "X")
        return PauliString.from_letters(n, letters), True
    l, r = divmod(one, 4)
    if r == 3:
        for j in range(2, 2 * l + 1):
            put(j, "Z")
        put(2 * l + 2, "X")
    else:
        for j in range(2, 2 * l):
            put(j, "Z")
        put(2 * l, "Y")
        put(2 * l + 1, ("Z", "Y", "X")[r])
        if r in (1, 2):
            put(2 * l + 2, "X")
    in_range = all(line < n for line in letters)
    return PauliString.from_letters(n, {k: v for k, v in letters.items() if k < n}), in_range


def suite_intertwining(seed: int = DEFAULT_SEED, instances: int = 20) -> SuiteResult:
    res = SuiteResult("intertwining", "Clifford-conjugated generators and simulation", time_limit=120.0)
    t0 = time.perf_counter()
    mism2 = [
        f"n={n} c'_{mu + 1}"
        for n in range(4, 9)
        for mu, g in enumerate(conjugated_jw(example2_T(n)).generators)
        if g != example2_formula(n, mu)
    ]
    mism3, trunc3 = [], []
    for n in (5, 7):
        rep = conjugated_jw(example3_T(n))
        for mu, g in enumerate(rep.generators):
            printed, full = example3_formula(n, mu)
            if full and g != printed:
                mism3.append(f"n={n} c'_{mu + 1}: got {g}, reference {printed}")
            if not full and g.without_phase() != printed.without_phase():
                trunc3.append(f"n={n} c'_{mu + 1}")
    res.check("example 2 generators exact (n=4..8)", not mism2, float(len(mism2)), 0.0, "; ".join(mism2))
    res.check("example 3 generators exact (n=5,7)", not mism3, float(len(mism3)), 0.0, "; ".join(mism3))
    res.check("example 3 right-boundary strings (truncated)", not trunc3, float(len(trunc3)), 0.0, "; ".join(trunc3))

    reps = [conjugated_jw(example2_T(n)) for n in range(4, 9)] + [conjugated_jw(example3_T(n)) for n in (5, 7, 9)]
    bad = [r.n for r in reps if not verify_rep(r).ok]
    res.check("anticommutation of conjugated reps", not bad, detail=str(bad))

    deg_bad = []
    for n in range(4, 9):
        rep = conjugated_jw(example2_T(n))
        for k in range(n - 1):
            d = decompose_pauli(rep, _z(n, k))
            if d.degree != 2:
                deg_bad.append(f"ex2 n={n} Z_{k + 1}: {d.degree}")
    for n in (5, 7, 9):
        rep = conjugated_jw(example3_T(n))
        for k in range(n):
            want = 2 if k % 2 == 0 else 6  # 1-indexed odd k <-> 0-indexed even
            d = decompose_pauli(rep, _z(n, k))
            if d.degree != want:
                deg_bad.append(f"ex3 n={n} Z_{k + 1}: {d.degree} != {want}")
    res.check("Z_k degrees (2 / 2 odd / 6 even)", not deg_bad, detail="; ".join(deg_bad))

    gen = rnd.rng(seed + 3)
    worst = 0.0
    n = 5
    for i in range(instances):
        t = example2_T(n) if i % 2 == 0 else example3_T(n)
        base = rnd.nn_circuit(gen, n, int(gen.integers(1, 25)))
        s = rnd.product_state(gen, n)
        k = int(gen.integers(0, n - 1 if i % 2 == 0 else n))
        fast = simulate_intertwined(t, base, s, _z(n, k), degree_cap=6)
        tu = t.unitary()
        v = tu.conj().T @ oracle.circuit_unitary(base) @ tu @ oracle.from_product(s).amplitudes
        slow = oracle.expectation_pauli_dense(oracle.StateVector(n, v), _z(n, k))
        worst = max(worst, abs(fast - slow))
    res.bound("max intertwined |fast - oracle|", worst, 1e-7, f"{instances} instances at n=5")
    res.elapsed = time.perf_counter() - t0
    return res


def _pauli_exp(letters: str, theta: float) -> np.ndarray:
    p = PauliString.from_label(letters).to_matrix()
    return np.cos(theta) * np.eye(len(p)) + 1j * np.sin(theta) * p


def suite_negative_controls(seed: int = DEFAULT_SEED) -> SuiteResult:
    res = SuiteResult("negative-controls", "non-simulatable inputs are rejected")
    t0 = time.perf_counter()
    swap = validate_circuit(Circuit(2, (named_gate("SWAP", (0, 1)),)), Policy.NN_ONLY)
    res.check("SWAP rejected with det mismatch", not swap.ok and any(v.reason == "det mismatch" for v in swap.violations))
    theta = float(rnd.rng(seed).uniform(0.2, 1.2))
    try:
        local_rotation(_pauli_exp("XIY", theta), 3)
        res.check("exp(i theta X I Y) raises NonGaussianGate", False)
    except NonGaussianGate as exc:
        res.check("exp(i theta X I Y) raises NonGaussianGate", True, exc.residual)
    try:
        local_rotation(_pauli_exp("XZY", theta), 3)
        res.check("exp(i theta X Z Y) accepted (Gaussian witness)", True)
    except NonGaussianGate:
        res.check("exp(i theta X Z Y) accepted (Gaussian witness)", False)
    gen = rnd.rng(seed)
    far = Circuit(3, (rnd.allowed_gate(gen, (0, 2)),))
    res.check("distant allowed gate rejected under NN_ONLY", not validate_circuit(far, Policy.NN_ONLY).ok)
    res.check("distant allowed gate accepted under NN_AND_NEXT_NN", validate_circuit(far, Policy.NN_AND_NEXT_NN).ok)
    res.elapsed = time.perf_counter() - t0
    return res


def suite_identities(seed: int = DEFAULT_SEED) -> SuiteResult:
    res = SuiteResult("identities", "exact operator identities")
    t0 = time.perf_counter()
    cz = np.diag([1, 1, 1, -1]).astype(complex)
    sw = gate_matrix(named_gate("SWAP", (0, 1)))
    gzx = gate_matrix(modified_swap(0))
    res.bound("|G(Z,X) - CZ SWAP|", float(np.abs(gzx - cz @ sw).max()), 1e-12)

    jw2 = jordan_wigner(2)
    table = [((0, 1), 3, "ZI"), ((1, 2), 3, "XX"), ((0, 2), 1, "YX"), ((1, 3), 3, "XY"), ((0, 3), 1, "YY"), ((2, 3), 3, "IZ")]
    wrong = [
        label
        for (a, b), ph, label in table
        if pauli_mul(jw2[a], jw2[b]).times_phase(ph) != PauliString.from_label(label)
    ]
    res.check("six local quadratic identities", not wrong, detail=", ".join(wrong))

    jw3 = jordan_wigner(3)
    # both products carry a factor i, consistent with -i c_2 c_4 = XY above
    c2c6 = pauli_mul(jw3[1], jw3[5])
    # a product of anticommuting Hermitian generators is anti-Hermitian, so the
    # phase-free form cannot hold exactly; it is kept as its own check
    res.check("c_2 c_6 = X Z Y (phase-free, exact)", c2c6 == PauliString.from_label("XZY"), detail=f"computed {c2c6}")
    res.check("c_2 c_6 = i X Z Y", c2c6 == PauliString.from_label("+i XZY"))
    res.check("c_2 c_4 = i X Y I", pauli_mul(jw3[1], jw3[3]) == PauliString.from_label("+i XYI"))

    zk_bad = []
    for n in range(1, 7):
        jw = jordan_wigner(n)
        for k in range(n):
            if pauli_mul(jw[2 * k], jw[2 * k + 1]).times_phase(3) != _z(n, k):
                zk_bad.append(f"n={n} k={k + 1}")
    res.check("Z_k = -i c_{2k-1} c_{2k}", not zk_bad, detail=", ".join(zk_bad))

    c = [g.to_matrix() for g in jw2.generators]
    gen_s = -np.pi / 4 * (-c[0] @ c[3] + c[1] @ c[2] + c[0] @ c[1] + c[2] @ c[3])
    s12 = oracle.expm_hermitian(1j * gen_s, t=-1j)
    swap_err = max(float(np.abs(s12.conj().T @ c[0] @ s12 - c[2]).max()), float(np.abs(s12.conj().T @ c[1] @ s12 - c[3]).max()))
    res.bound("S12^dagger (c1, c2) S12 - (c3, c4)", swap_err, 1e-12)
    res.bound("S12 vs G(Z,X) up to phase", 1 - global_phase(s12, gzx).fidelity, 1e-12)
    perm_bad = []
    for n in (3, 5):
        for k in range(n - 1):
            idx = list(range(2 * n))
            idx[2 * k : 2 * k + 4] = [2 * k + 2, 2 * k + 3, 2 * k, 2 * k + 1]
            if np.abs(gate_to_rotation(modified_swap(k), n).r - np.eye(2 * n)[idx]).max() > 1e-12:
                perm_bad.append(f"n={n} k={k}")
    res.check("modified swap exchanges generator pairs", not perm_bad, detail=", ".join(perm_bad))
    res.elapsed = time.perf_counter() - t0
    return res


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "fast-vs-oracle": suite_fast_vs_oracle,
    "rotation-soundness": suite_rotation_soundness,
    "compiler": suite_compiler,
    "decomposer": suite_decomposer,
    "intertwining": suite_intertwining,
    "negative-controls": suite_negative_controls,
    "identities": suite_identities,
}


def run(name: str = "all", seed: int = DEFAULT_SEED) -> list[SuiteResult]:
    if name == "all":
        return [fn(seed) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return [SUITES[name](seed)]
