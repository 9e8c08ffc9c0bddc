"""One handler per subcommand.

Each handler takes the parsed options as a dict and returns a
CommandOutput; exceptions propagate to ``main`` which maps them to exit codes.
"""

from __future__ import annotations

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any, NamedTuple

from embedlab.common.errors import ValidationError
from embedlab.common.rationals import format_number, format_rational
from embedlab.embeddings import (
    EmbeddingMap,
    NormTag,
    admissible_epsilon,
    alternating_witnesses,
    disjoint_pairs,
    frechet_embedding,
    perturbation_bound,
    search_min_distortion,
    witness_report,
)
from embedlab.free_space import (
    Molecule,
    canonical_bijection_constants,
    check_delta_isometry,
    check_n0_is_l1,
    free_norm,
    random_n0_molecules,
)
from embedlab.metric import (
    SpaceLabel,
    TruncatedSpace,
    bfs_table,
    build_space,
    build_truncation,
    validate_metric,
)
from embedlab.metric.io import load_space_file, space_rows
from embedlab.roundness import (
    configuration_lower_bound,
    evaluate_certificate,
    lower_bound_table,
    paper_certificate,
    threshold_level,
)

EXIT_OK = 0
EXIT_VIOLATIONS = 2
EXIT_INFEASIBLE = 3


class CommandOutput(NamedTuple):
    results: dict[str, Any]
    rows: list[dict[str, Any]] | None = None
    exit_code: int = EXIT_OK


def _load_space(opts: dict) -> TruncatedSpace:
    if opts.get("space_file"):
        return load_space_file(opts["space_file"])
    if opts.get("n") is None:
        raise ValidationError("Pass --n (truncation level) or --space-file")
    return build_space(opts.get("space") or "M", opts["n"], max_n=opts.get("max_n"))


def _read_json(path: str) -> dict:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    with open(path) as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(f"{path} is not valid JSON: {e}") from None


# ---------------------------------------------------------------------------
# metric
# ---------------------------------------------------------------------------


def cmd_space(opts: dict) -> CommandOutput:
    space = _load_space(opts)
    return CommandOutput(space.to_dict(), space_rows(space))


def cmd_dist_matrix(opts: dict) -> CommandOutput:
    """Every pair with its stored and BFS distance, plus the validation report."""
    space = _load_space(opts)
    oracle = bfs_table(space)
    names = space.point_names()
    rows = []
    for i in range(len(space)):
        for j in range(i + 1, len(space)):
            rows.append(
                {
                    "x": names[i],
                    "y": names[j],
                    "distance": int(space.dist[i, j]),
                    "bfs_distance": int(oracle[i, j]),
                }
            )
    report = validate_metric(space)
    results = {**space.to_dict(), "violations": report.to_dict()["violations"]}
    return CommandOutput(results, rows, EXIT_OK if report.ok else EXIT_VIOLATIONS)


# ---------------------------------------------------------------------------
# roundness
# ---------------------------------------------------------------------------


def cmd_roundness(opts: dict) -> CommandOutput:
    records = lower_bound_table(opts["n_from"], opts["n_to"], opts["q"])
    rows = [
        {
            "n": r.n,
            "lower_bound_num": r.bound.numerator if r.is_exact else None,
            "lower_bound_den": r.bound.denominator if r.is_exact else None,
            "float": format_number(float(r.bound)),
        }
        for r in records
    ]
    return CommandOutput({"q": format_rational(opts["q"]), "bounds": rows}, rows)


def cmd_deficit(opts: dict) -> CommandOutput:
    space = _load_space(opts)
    if space.label is not SpaceLabel.M:
        raise ValidationError("The certificate lives in M; use --space M")
    indices = opts.get("indices") or list(range(1, space.n + 1))
    a_list, b_list = paper_certificate(space, indices)
    cert = evaluate_certificate(space, a_list, b_list, opts["q"])
    bound = configuration_lower_bound(space, a_list, b_list, opts["q"])
    results = {
        **cert.to_dict(),
        "cert": opts.get("cert", "paper"),
        "n": cert.n,
        "configuration_lower_bound": format_number(bound),
    }
    return CommandOutput(results)


def cmd_threshold(opts: dict) -> CommandOutput:
    n = threshold_level(opts["target"], opts["q"])
    return CommandOutput(
        {"target": format_rational(opts["target"]), "q": format_rational(opts["q"]), "n": n}
    )


# ---------------------------------------------------------------------------
# free space
# ---------------------------------------------------------------------------


def cmd_free_norm(opts: dict) -> CommandOutput:
    space = _load_space(opts)
    if opts.get("molecule_file"):
        doc = _read_json(opts["molecule_file"])
    elif opts.get("molecule") is not None:
        doc = opts["molecule"]
    else:
        raise ValidationError("Pass --molecule '<json>' or --molecule-file")
    molecule = Molecule.from_document(space, doc)
    result = free_norm(space, molecule)
    return CommandOutput(result.to_dict(molecule), result.primal.to_dict(space.label)["plan"])


def cmd_check_isometry(opts: dict) -> CommandOutput:
    space = _load_space(opts)
    report = check_delta_isometry(space)
    return CommandOutput(
        report.to_dict(), report.mismatches, EXIT_OK if report.ok else EXIT_VIOLATIONS
    )


def cmd_check_n0_l1(opts: dict) -> CommandOutput:
    molecules = random_n0_molecules(opts["n"], opts["count"], seed=opts["seed"])
    report = check_n0_is_l1(opts["n"], molecules)
    results = {**report.to_dict(), "seed": opts["seed"]}
    return CommandOutput(results, report.mismatches, EXIT_OK if report.ok else EXIT_VIOLATIONS)


def cmd_bijection_constants(opts: dict) -> CommandOutput:
    constants = canonical_bijection_constants(opts["n"])
    return CommandOutput(constants.to_dict(), [constants.to_dict()])


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------


def cmd_embed_search(opts: dict) -> CommandOutput:
    space = _load_space(opts)
    target = NormTag.parse(opts["target"])
    dim = opts.get("dim") or 2 * len(space)
    result = search_min_distortion(
        space,
        target,
        dim,
        restarts=opts["restarts"],
        iterations=opts["iters"],
        seed=opts["seed"],
        workers=opts["workers"],
        use_baseline=not opts.get("no_baseline", False),
    )
    doc = result.to_dict()
    doc["seed"] = opts["seed"]
    rows = [
        {"point": name, **{f"x{c}": v for c, v in enumerate(vec)}}
        for name, vec in doc["vectors"].items()
    ]
    return CommandOutput(doc, rows)


def cmd_witness(opts: dict) -> CommandOutput:
    space = build_truncation(opts["n"], max_n=opts.get("max_n"))
    if opts.get("embedding"):
        f = EmbeddingMap.from_document(space, _read_json(opts["embedding"]))
    else:
        f = frechet_embedding(space)

    if opts.get("all_pairs"):
        report = witness_report(f, disjoint_pairs(space.n), D=opts.get("D"))
    elif opts.get("sequence"):
        report = alternating_witnesses(f, opts["sequence"], D=opts.get("D"))
    elif opts.get("A") and opts.get("B"):
        report = witness_report(f, [(opts["A"], opts["B"])], D=opts.get("D"))
    else:
        raise ValidationError("Pass --A and --B, --sequence, or --all-pairs")

    results = report.to_dict()
    rows = [e.to_dict() for e in report.entries]
    return CommandOutput(results, rows, EXIT_OK if not report.infeasible else EXIT_INFEASIBLE)


def cmd_perturb_bound(opts: dict) -> CommandOutput:
    c1, c2 = perturbation_bound(opts["c1"], opts["c2"], opts["eta"], opts["min_distance"])
    return CommandOutput(
        {
            "C1": format_number(opts["c1"]),
            "C2": format_number(opts["c2"]),
            "eta": format_number(opts["eta"]),
            "min_distance": format_number(opts["min_distance"]),
            "C1_prime": format_number(c1),
            "C2_prime": format_number(c2),
        }
    )


def cmd_epsilon(opts: dict) -> CommandOutput:
    return CommandOutput(admissible_epsilon(opts["D"]).to_dict())


COMMANDS: dict[str, Callable[[dict], CommandOutput]] = {
    "space": cmd_space,
    "dist-matrix": cmd_dist_matrix,
    "roundness": cmd_roundness,
    "deficit": cmd_deficit,
    "threshold": cmd_threshold,
    "free-norm": cmd_free_norm,
    "check-isometry": cmd_check_isometry,
    "check-n0-l1": cmd_check_n0_l1,
    "bijection-constants": cmd_bijection_constants,
    "embed-search": cmd_embed_search,
    "witness": cmd_witness,
    "perturb-bound": cmd_perturb_bound,
    "epsilon": cmd_epsilon,
}
