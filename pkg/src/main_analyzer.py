# main_analyzer.py

import argparse
import json
import logging
import multiprocessing
import os
import queue
import sys
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

# Add parent directory to path to import config
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from config import (DEFAULT_REPORT_PATH, DEFAULT_SEED, DEFAULT_WORKERS, HARD_TENSOR_CAP,
                    HARD_VALIDATION_CAP, MAX_ALGEBRA_SIZE, MAX_TENSOR_SIZE, MAX_VALIDATION_SIZE,
                    REPORT_SCHEMA, SOLUTION_SAMPLES, WORKER_TIMEOUT_S)
from src.acceptance import battery_jobs, matrix_instance
from src.cohomology_oracle import cross_check
from src.corpus_worker import corpus_worker, run_battery_job
from src.diagonal_engine import (BaseAlgebra, TensorAlgebra, find_classical_diagonal,
                                 find_identity, find_module_diagonal, matrix_explicit_diagonal,
                                 matrix_identity, sample_diagonals, standard_group_diagonal,
                                 verify_module_diagonal)
from src.exact_linalg import vector_to_json
from src.ingest import ParseError, corpus_semigroup, ingest
from src.module_algebra import compute_J_span, is_module_super_amenable, quotient_report
from src.report_utils import error_report, render_text, save_report, to_json_text
from src.semigroup_core import (FiniteInverseSemigroup, SizeGuardError, idempotents,
                                is_upward_directed, munn_inverse, munn_is_idempotent, munn_leq,
                                munn_multiply, munn_upper_bound, parse_munn_word, to_cayley_json)

logger = logging.getLogger(__name__)

COMMANDS = ("validate", "idempotents", "directed", "quotient", "diagonal", "cohomology",
            "matrix-example", "munn", "corpus")
# commands that read a semigroup from --input or --corpus
SEMIGROUP_COMMANDS = COMMANDS[:6]

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_SIZE_GUARD = 2
EXIT_ASSERTION = 3
EXIT_BATTERY_FAILED = 4

# ____________________________________________________________________________
#
# ARGUMENT PARSING
# ____________________________________________________________________________
common = argparse.ArgumentParser(add_help=False)
source = common.add_mutually_exclusive_group()
source.add_argument('--input', type=str, default=None, help='Semigroup description file (Cayley-table or generator JSON)')
source.add_argument('--corpus', type=str, default=None, help='Built-in semigroup, e.g. max_semilattice:4 or cyclic_group:2')
common.add_argument('--input-format', type=str, default='auto', choices=['auto', 'cayley', 'generators'], help='Layout of the --input file (default: auto)')
common.add_argument('--format', type=str, default='json', choices=['json', 'text'], help='Report format on stdout (default: json)')
common.add_argument('--seed', type=int, default=DEFAULT_SEED, help=f'Seed for every random choice (default: {DEFAULT_SEED})')
common.add_argument('--max-size', type=int, default=None, help='Override the size guard of the command (hard caps apply unless --force)')
common.add_argument('--force', action='store_true', help='Allow --max-size beyond the hard caps')
common.add_argument('--save', type=str, nargs='?', const=DEFAULT_REPORT_PATH, default=None, help=f'Also write the report to a timestamped JSON file in PATH (default: {DEFAULT_REPORT_PATH})')
common.add_argument('--debug', action='store_true', help='Enable debug mode with verbose solver and worker output (default: quiet)')

parser = argparse.ArgumentParser(description="Exact module-amenability analysis of finite inverse semigroups.")
subparsers = parser.add_subparsers(dest='command', required=True)
subparsers.add_parser('validate', parents=[common], help='Check the Cayley table and compute the involution')
subparsers.add_parser('idempotents', parents=[common], help='List idempotents and their natural order')
subparsers.add_parser('directed', parents=[common], help='Decide whether the idempotents are upward directed')
subparsers.add_parser('quotient', parents=[common], help='J, the congruence and the quotient group S/~')
diagonal_parser = subparsers.add_parser('diagonal', parents=[common], help='Search for a module diagonal and certify it')
diagonal_parser.add_argument('--classical', action='store_true', help='Also search for an ordinary (non-module) diagonal')
subparsers.add_parser('cohomology', parents=[common], help='First module cohomology on the test bimodules')
matrix_parser = subparsers.add_parser('matrix-example', parents=[common], help='Matrix algebra M_n over a coefficient algebra')
matrix_parser.add_argument('--n', type=int, default=2, help='Matrix size (default: 2)')
matrix_parser.add_argument('--coefficients', type=str, default='scalars', help='scalars or truncated:k (default: scalars)')
matrix_parser.add_argument('--classical', action='store_true', help='Also search for an ordinary diagonal')
munn_parser = subparsers.add_parser('munn', parents=[common], help='Queries in the free inverse semigroup on a, b')
munn_query = munn_parser.add_mutually_exclusive_group(required=True)
munn_query.add_argument('--check-upper-bound', nargs=2, metavar=('W1', 'W2'), help='Common upper bound of two idempotents')
munn_query.add_argument('--multiply', nargs=2, metavar=('W1', 'W2'), help='Product of two words')
munn_query.add_argument('--leq', nargs=2, metavar=('W1', 'W2'), help='Natural order of two idempotents')
munn_query.add_argument('--inverse', nargs=1, metavar='W', help='Inverse of a word')
munn_query.add_argument('--sample', action='store_true', help='Sampled associativity and regularity checks')
corpus_parser = subparsers.add_parser('corpus', parents=[common], help='Run the acceptance battery over the built-in examples')
corpus_parser.add_argument('--workers', type=int, default=DEFAULT_WORKERS, help=f'Number of worker processes (default: {DEFAULT_WORKERS})')
corpus_parser.add_argument('--sequential', action='store_true', help='Run the battery in-process (no worker pool)')


# ____________________________________________________________________________
#
# REQUEST / REPORT
# ____________________________________________________________________________
@dataclass
class AnalysisRequest:
    command: str
    input: Optional[str] = None
    corpus: Optional[str] = None
    input_format: str = "auto"
    format: str = "json"
    seed: int = DEFAULT_SEED
    max_size: Optional[int] = None
    force: bool = False
    save: Optional[str] = None
    debug: bool = False
    options: Dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "AnalysisRequest":
        known = {"command", "input", "corpus", "input_format", "format", "seed", "max_size",
                 "force", "save", "debug"}
        values = vars(args)
        options = {k: v for k, v in values.items() if k not in known}
        return cls(options=options, **{k: values[k] for k in known})

    def limits(self) -> Tuple[int, int, int]:
        """Effective (validation, algebra, tensor) size guards.

        Raises:
            SizeGuardError: --max-size above the hard cap of the command without --force
        """
        validation, algebra, tensor = MAX_VALIDATION_SIZE, MAX_ALGEBRA_SIZE, MAX_TENSOR_SIZE
        if self.max_size is None:
            return validation, algebra, tensor
        tensor_level = self.command in ("diagonal", "cohomology")
        cap = HARD_TENSOR_CAP if tensor_level else HARD_VALIDATION_CAP
        if self.max_size > cap and not self.force:
            raise SizeGuardError("--max-size", self.max_size, cap)
        if tensor_level:
            return max(validation, self.max_size), max(algebra, self.max_size), self.max_size
        return self.max_size, self.max_size, tensor


@dataclass
class AnalysisReport:
    command: str
    sections: Dict
    timings: Dict = field(default_factory=dict)

    def to_json(self) -> Dict:
        # timings live under their own key so the rest is reproducible
        return {"schema": REPORT_SCHEMA, "command": self.command, **self.sections,
                "timings": self.timings}


# ____________________________________________________________________________
#
# COMMANDS
# ____________________________________________________________________________
def load_semigroup(request: AnalysisRequest, max_size: int) -> FiniteInverseSemigroup:
    if request.corpus:
        return corpus_semigroup(request.corpus)
    if request.input:
        return ingest(request.input, request.input_format, max_size)
    raise ParseError("<command line>", f"`{request.command}` needs --input or --corpus")


def validate_command(S: FiniteInverseSemigroup) -> Dict:
    return {"semigroup": S.name, "valid": True, "size": S.size,
            "star": {S.elements[i]: S.elements[int(j)] for i, j in enumerate(S.star)},
            "cayley": to_cayley_json(S)}


def idempotents_command(S: FiniteInverseSemigroup) -> Dict:
    E = idempotents(S)
    order = [[S.elements[e], S.elements[f]] for e in E.indices for f in E.indices
             if e != f and E.leq(e, f)]
    return {"semigroup": S.name, "idempotents": [S.elements[e] for e in E.indices],
            "order": order}


def directed_command(S: FiniteInverseSemigroup) -> Dict:
    result = is_upward_directed(idempotents(S))
    return {"semigroup": S.name, "upward_directed": result.to_json(S),
            "monoid": S.identity() is not None}


def diagonal_command(S: FiniteInverseSemigroup, tensor_limit: int, seed: int,
                     classical: bool = False) -> Dict:
    base = BaseAlgebra.from_semigroup(S)
    tensor = TensorAlgebra(base, max_size=tensor_limit)
    result = find_module_diagonal(tensor)
    verdict = is_module_super_amenable(S).settled_by(result.feasible)
    unit = find_identity(base)
    unit_mod_J = find_identity(base, modulo=tensor.ideal_J)
    section = {
        "semigroup": S.name,
        "I_dim": tensor.ideal_I.rank,
        "J_dim": tensor.ideal_J.rank,
        "diagonal": result.to_json(),
        "route": verdict.route,
        "verdict": verdict.verdict,
        "decided_by": verdict.decided_by,
        "unital": {"A": unit is not None, "A/J": unit_mod_J is not None},
    }
    if result.feasible:
        rng = np.random.default_rng(seed)
        samples = sample_diagonals(result.certificate, rng, SOLUTION_SAMPLES)
        passed = sum(all(c.ok for c in verify_module_diagonal(tensor, M, strict=False))
                     for M in samples)
        section["samples"] = {"drawn": len(samples), "verified": passed}
        if len(idempotents(S)) == 1:
            standard = standard_group_diagonal(tensor)
            section["standard_group_diagonal_in_solution_set"] = \
                result.certificate.solution_space.member(standard - result.certificate.M)
    if classical:
        section["classical_diagonal"] = find_classical_diagonal(tensor).to_json()
    return section


def cohomology_command(S: FiniteInverseSemigroup, tensor_limit: int, algebra_limit: int) -> Dict:
    base = BaseAlgebra.from_semigroup(S)
    tensor = TensorAlgebra(base, max_size=tensor_limit)
    J = compute_J_span(S, algebra_limit)
    directed = is_upward_directed(idempotents(S)).directed
    feasible = find_module_diagonal(tensor).feasible
    return cross_check(base, J, feasible, directed).to_json()


def _coefficient_k(text: str) -> int:
    if text == "scalars":
        return 0
    name, _, k = text.partition(":")
    if name != "truncated" or not k.isdigit() or int(k) < 1:
        raise ParseError("--coefficients", "expected 'scalars' or 'truncated:k' with k >= 1")
    return int(k)


def matrix_command(n: int, coefficients: str, classical: bool = False) -> Dict:
    instance = matrix_instance(n, _coefficient_k(coefficients))
    cert = matrix_explicit_diagonal(instance)
    tensor = cert.tensor
    section = {
        "semigroup": instance.name,
        "dim": tensor.n,
        "J_dim": tensor.ideal_J.rank,
        "diagonal": cert.to_json(),
        "identity": vector_to_json(matrix_identity(instance)),
        "omega_is_identity": tensor.omega_tilde(cert.M).contains(matrix_identity(instance)),
    }
    if classical:
        section["classical_diagonal"] = find_classical_diagonal(tensor).to_json()
    return section


def munn_command(options: Dict, seed: int) -> Dict:
    if options.get("check_upper_bound"):
        w1, w2 = options["check_upper_bound"]
        bound = munn_upper_bound(parse_munn_word(w1), parse_munn_word(w2))
        return {"semigroup": "free inverse semigroup on a, b", "query": "upper-bound",
                "words": [w1, w2], "upper_bound": bound.label if bound else None}
    if options.get("multiply"):
        w1, w2 = options["multiply"]
        product = munn_multiply(parse_munn_word(w1), parse_munn_word(w2))
        return {"semigroup": "free inverse semigroup on a, b", "query": "multiply",
                "words": [w1, w2], "product": product.label,
                "idempotent": munn_is_idempotent(product)}
    if options.get("leq"):
        w1, w2 = options["leq"]
        return {"semigroup": "free inverse semigroup on a, b", "query": "leq",
                "words": [w1, w2], "leq": munn_leq(parse_munn_word(w1), parse_munn_word(w2))}
    if options.get("inverse"):
        (w,) = options["inverse"]
        return {"semigroup": "free inverse semigroup on a, b", "query": "inverse",
                "words": [w], "inverse": munn_inverse(parse_munn_word(w)).label}
    records = run_battery_job("munn", "munn", "", seed)
    return {"semigroup": "free inverse semigroup on a, b", "query": "sample",
            "checks": records, "ok": all(r["ok"] for r in records)}


# ____________________________________________________________________________
#
# CORPUS BATTERY
# ____________________________________________________________________________
def run_corpus(seed: int, workers: int = DEFAULT_WORKERS, sequential: bool = False,
               debug_mode: bool = False) -> Dict:
    """
    Run every battery job, in-process or through a pool of worker processes.
    Results are sorted by job key so the report does not depend on scheduling.
    """
    jobs = battery_jobs()
    results: List[Tuple[str, List[Dict]]] = []
    if sequential or workers <= 1:
        if debug_mode:
            logger.debug("Sequential battery selected (no worker processes).")
        for key, kind, param in jobs:
            results.append((key, run_battery_job(key, kind, param, seed)))
    else:
        manager = multiprocessing.Manager()
        job_queue = manager.Queue()
        result_queue = manager.Queue()
        stop_worker = manager.Event()
        for job in jobs:
            job_queue.put(job)
        processes = [multiprocessing.Process(target=corpus_worker,
                                             args=(job_queue, result_queue, stop_worker, seed, debug_mode))
                     for _ in range(workers)]
        for p in processes:
            p.start()
            if debug_mode:
                logger.debug(f"Corpus worker started (PID: {p.pid})")
        pending = {key for key, _, _ in jobs}
        while pending:
            try:
                key, records = result_queue.get(timeout=WORKER_TIMEOUT_S)
            except queue.Empty:
                if any(p.is_alive() for p in processes):
                    continue
                logger.error(f"All corpus workers exited with {len(pending)} jobs unfinished")
                for key in sorted(pending):
                    results.append((key, [{"subject": key, "check": "job completed", "ok": False,
                                           "detail": "worker exited before reporting"}]))
                break
            pending.discard(key)
            results.append((key, records))
        stop_worker.set()
        for p in processes:
            p.join()
        manager.shutdown()

    results.sort(key=lambda item: item[0])
    records = [r for _, rs in results for r in rs]
    failures = [r for r in records if not r["ok"]]
    logger.info(f"Battery: {len(jobs)} jobs, {len(records)} checks, {len(failures)} failed")
    return {"semigroup": "corpus", "jobs": len(jobs), "checks": len(records),
            "failed": len(failures), "failures": failures,
            "results": {key: rs for key, rs in results}}


def run(request: AnalysisRequest) -> Tuple[AnalysisReport, int]:
    """
    Execute one command. Exceptions propagate to the caller (see main).

    Returns:
        (report, exit code); the exit code is nonzero only for a failed battery
    """
    validation_limit, algebra_limit, tensor_limit = request.limits()
    timings: Dict[str, float] = {}
    start = time.perf_counter()
    code = EXIT_OK
    options = request.options

    if request.command in SEMIGROUP_COMMANDS:
        S = load_semigroup(request, validation_limit)
        timings["load_s"] = time.perf_counter() - start
        if request.command == "validate":
            section = validate_command(S)
        elif request.command == "idempotents":
            section = idempotents_command(S)
        elif request.command == "directed":
            section = directed_command(S)
        elif request.command == "quotient":
            section = quotient_report(S, algebra_limit)
        elif request.command == "diagonal":
            section = diagonal_command(S, tensor_limit, request.seed, options.get("classical", False))
        else:
            section = cohomology_command(S, tensor_limit, algebra_limit)
    elif request.command == "matrix-example":
        section = matrix_command(options.get("n", 2), options.get("coefficients", "scalars"),
                                 options.get("classical", False))
    elif request.command == "munn":
        section = munn_command(options, request.seed)
        if section.get("ok") is False:
            code = EXIT_BATTERY_FAILED
    elif request.command == "corpus":
        section = run_corpus(request.seed, options.get("workers", DEFAULT_WORKERS),
                             options.get("sequential", False), request.debug)
        if section["failed"]:
            code = EXIT_BATTERY_FAILED
    else:
        raise ParseError("<command line>", f"unknown command {request.command!r}")

    timings["total_s"] = time.perf_counter() - start
    return AnalysisReport(request.command, section, timings), code


def _emit(data: Dict, output_format: str) -> None:
    if output_format == "text":
        print(render_text(data))
    else:
        print(to_json_text(data))


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.debug else logging.INFO,
                        format="[%(levelname)s] %(message)s", force=True)
    request = AnalysisRequest.from_args(args)
    try:
        report, code = run(request)
    except SizeGuardError as e:
        logger.error(str(e))
        _emit(error_report(e), request.format)
        return EXIT_SIZE_GUARD
    except ValueError as e:
        logger.error(str(e))
        _emit(error_report(e), request.format)
        return EXIT_INVALID_INPUT
    except AssertionError as e:
        # an internal invariant failed: a finding, reported with its witness
        logger.error(f"Internal assertion failed: {e}")
        _emit(error_report(e), request.format)
        return EXIT_ASSERTION

    data = report.to_json()
    if code == EXIT_BATTERY_FAILED and request.command == "corpus":
        _emit(data["failures"], request.format)
    else:
        _emit(data, request.format)
    if request.save:
        save_report(data, request.save, request.command)
    return code


if __name__ == "__main__":
    multiprocessing.freeze_support()  # Recommended for Windows/executable distribution
    sys.exit(main())
