"""Task drivers shared by the command line and the batch runner.

Each driver takes a parsed instance (a JSON object) and a seed and returns a
TaskOutcome.  ``valid`` is decided by re-checking the emitted certificate
from scratch, never by trusting the solver.
"""

import time
from dataclasses import dataclass, field
from itertools import product

from .colorful import ColorSystem, colorful_caratheodory, kconv_colorful, verify_colorful
from .joins import (
    Family, caratheodory_number_pointset, convm_membership, family_caratheodory_number,
    verify_kappa_witness,
)
from .kconvexity import CompactumRep, check_k_convexity, find_avoiding_flat
from .rational import InputError, point_from_json
from .tverberg import (
    TverbergCertificate, lift, recheck_coefficients, sarkaria_equiv_check,
    tverberg_partition, verify_certificate,
)

TASKS = ("convm", "kappaPointset", "kappaFamily", "kconvCheck", "colorful",
         "kconvColorful", "avoidFlat", "tverberg", "sarkariaCheck")


@dataclass
class TaskOutcome:
    result: str                 # short summary for the report
    valid: bool
    certificate: dict = field(default_factory=dict)
    iterations: int = 0
    approx: str = ""            # 17 significant digits, approximate


def _need(inst, key):
    if key not in inst:
        raise InputError(f"instance is missing field '{key}'")
    return inst[key]


def _points(inst, key="points"):
    raw = _need(inst, key)
    if not isinstance(raw, list) or not raw:
        raise InputError(f"field '{key}' must be a nonempty list of points")
    out = []
    for i, x in enumerate(raw):
        try:
            out.append(point_from_json(x))
        except InputError as exc:
            raise InputError(f"{key}[{i}]: {exc}") from None
    return out


def _family(inst):
    return Family.from_json(_need(inst, "family"))


def _g(x):
    return format(float(x), ".17g")


def run_convm(inst, seed):
    X = _points(inst)
    p = point_from_json(_need(inst, "query"))
    m = int(_need(inst, "m"))
    v = convm_membership(p, X, m)
    if v.member:
        ok = len(v.combination) <= m and v.combination.evaluate(X) == p
        cert = {"member": True, "combination": v.combination.to_json()}
    else:
        ok = v.exhaustive
        cert = {"member": False, "exhaustive": v.exhaustive, "subsets_tested": v.subsets_tested}
    return TaskOutcome(f"member={str(v.member).lower()}", ok, cert, v.subsets_tested)


def run_kappa_pointset(inst, seed):
    b = caratheodory_number_pointset(_points(inst))
    return TaskOutcome(f"kappa={b.lower}..{b.upper} status={b.status}", True, b.to_json())


def run_kappa_family(inst, seed):
    F = _family(inst)
    b = family_caratheodory_number(F)
    ok = verify_kappa_witness(F, b)
    upper = "unknown" if b.upper is None else b.upper
    return TaskOutcome(f"kappa={b.lower}..{upper} status={b.status}", ok, b.to_json())


def run_kconv_check(inst, seed):
    X = CompactumRep.from_json(_need(inst, "compactum"))
    k = int(_need(inst, "k"))
    v = check_k_convexity(X, k, trials=int(inst.get("trials", 20)),
                          samples_per_trial=int(inst.get("samples", 400)), seed=seed)
    ok = (not v.counterexample) or v.hole_distance_sq > 0
    tag = "counterexample" if v.counterexample else "noCounterexampleFound"
    approx = _g(v.hole_distance_sq) if v.counterexample else ""
    return TaskOutcome(tag, ok, v.to_json(), v.trials, approx)


def run_colorful(inst, seed):
    system = ColorSystem.from_json(inst)
    cert = colorful_caratheodory(system)
    ok = verify_colorful(system, cert)
    return TaskOutcome("certificate", ok, cert.to_json(), cert.iterations)


def run_kconv_colorful(inst, seed):
    system = ColorSystem.from_json(inst)
    k = inst.get("k")
    cert = kconv_colorful(system, None if k is None else int(k))
    ok = verify_colorful(system, cert)
    trace = list(cert.trace)
    ok = ok and all(a > b for a, b in zip(trace, trace[1:]))
    return TaskOutcome("certificate", ok, cert.to_json(), cert.iterations,
                       _g(trace[0]) if trace else "")


def run_avoid_flat(inst, seed):
    p = point_from_json(_need(inst, "point"))
    sets = []
    for i, s in enumerate(_need(inst, "sets")):
        try:
            sets.append(CompactumRep.from_json(s) if isinstance(s, dict)
                        else CompactumRep.points([point_from_json(x) for x in s]))
        except InputError as exc:
            raise InputError(f"sets[{i}]: {exc}") from None
    res = find_avoiding_flat(p, sets, int(_need(inst, "k")), seed=seed,
                             restarts=int(inst.get("restarts", 12)))
    if not res:
        # a budget miss is reported, not counted as a false certificate
        return TaskOutcome("notFound", True, {"found": False, "report": res.report})
    ok = res.certificate.verify(sets)
    return TaskOutcome("certificate", ok, res.certificate.to_json(), 0,
                       _g(res.certificate.clearance_sq))


def run_tverberg(inst, seed):
    F = _family(inst)
    r = int(_need(inst, "r"))
    kappa = inst.get("kappa", "auto")
    cert = tverberg_partition(F, r, kappa)
    ok = bool(verify_certificate(F, cert)) and bool(recheck_coefficients(F, cert))
    return TaskOutcome(f"parts={len(cert.partition)}", ok, cert.to_json(), cert.iterations,
                       " ".join(_g(x) for x in cert.witness))


def sarkaria_sweep(F, r):
    """All tagged representative systems of F; returns (cases, equivalent)."""
    L = lift(F, r)
    choices = [[(s, v) for s in range(r) for v in C.vertices] for C in F.members]
    cases = same = 0
    for reps in product(*choices):
        lhs, rhs = sarkaria_equiv_check(L, reps)
        cases += 1
        same += lhs == rhs
    return cases, same


def run_sarkaria(inst, seed):
    F = _family(inst)
    cases, same = sarkaria_sweep(F, int(inst.get("r", 2)))
    return TaskOutcome(f"cases={cases}, equivalent={same}", cases == same,
                       {"cases": cases, "equivalent": same}, cases)


DRIVERS = {
    "convm": run_convm, "kappaPointset": run_kappa_pointset,
    "kappaFamily": run_kappa_family, "kconvCheck": run_kconv_check,
    "colorful": run_colorful, "kconvColorful": run_kconv_colorful,
    "avoidFlat": run_avoid_flat, "tverberg": run_tverberg,
    "sarkariaCheck": run_sarkaria,
}


def run_task(task, inst, seed=0):
    if task not in DRIVERS:
        raise InputError(f"field 'task': unknown value {task!r}")
    if not isinstance(inst, dict):
        raise InputError("instance must be a JSON object")
    t0 = time.perf_counter()
    out = DRIVERS[task](inst, seed)
    return out, time.perf_counter() - t0


def verify_saved(task, inst, cert):
    """Re-verify a certificate file against its instance."""
    if task == "tverberg":
        F = _family(inst)
        c = TverbergCertificate.from_json(cert)
        return bool(verify_certificate(F, c)) and bool(recheck_coefficients(F, c))
    if task in ("colorful", "kconvColorful"):
        from .colorful import ColorfulCertificate
        from .geometry import ConvexCombination
        system = ColorSystem.from_json(inst)
        reps = tuple(point_from_json(x) for x in cert["reps"])
        comb = ConvexCombination.from_json(cert["combination"])
        return verify_colorful(system, ColorfulCertificate(reps, comb))
    if task == "convm":
        if not cert.get("member"):
            return bool(cert.get("exhaustive"))
        from .geometry import ConvexCombination
        X = _points(inst)
        comb = ConvexCombination.from_json(cert["combination"])
        return (len(comb) <= int(inst["m"])
                and comb.evaluate(X) == point_from_json(inst["query"]))
    if task == "avoidFlat":
        if not cert.get("found", True):
            return True
        from fractions import Fraction
        from .kconvexity import FlatCertificate
        sets = [CompactumRep.from_json(s) if isinstance(s, dict)
                else CompactumRep.points([point_from_json(x) for x in s]) for s in inst["sets"]]
        fc = FlatCertificate(point_from_json(cert["base_point"]),
                             tuple(point_from_json(d) for d in cert["directions"]),
                             Fraction(cert["clearance_sq"]),
                             Fraction(cert["clearance_lower_bound"]))
        return fc.verify(sets)
    # the remaining tasks are re-run, they have no compact certificate
    out, _ = run_task(task, inst)
    return out.valid
