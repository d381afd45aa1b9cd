#!/usr/bin/env python3
"""
Command-line driver: André-Quillen cohomology, rational homotopy of
function spaces and homotopy automorphisms from CDGA presentations.

    python app.py aq s2.cdga --source S2 --target Q --window -4:0 --route both
    python app.py pi catalog:sphere(2) --n 3
    python app.py haut catalog:sphere(2) --format json
"""

import argparse
import logging
import sys
import time
from typing import Dict, List, Optional, Sequence, Tuple

from config import Config
from core.cdga import DgModuleView, FreeCdga, cohomology
from core.derivation_complex import aq_cohomology_der
from core.errors import (
    AlgebraError,
    HypothesisError,
    NonNilpotentError,
    NotAutomorphismError,
    NotMinimalError,
    NotSimplyConnectedError,
    WindowError,
)
from core.harrison import aq_cohomology_harrison
from core.homotopy import check_homotopy, exp_homotopy, is_homotopic_to_identity
from core.linear_algebra import DegreeWindow
from core.mapping_spaces import haut_lie_algebra, mapping_space_homotopy, null_component_formula, pi_rational
from core.presentation import TRIVIAL_ALGEBRA_NAME, Presentation, PresentationError, load_presentation
from core.reports import (
    Certification,
    ResultRecord,
    dimension_answer,
    dimension_disagreement,
    emit_report,
    lie_answer,
)
from spaces import catalog_names, space_catalog
from spaces.base_space import BasedMap, SpaceModel, UserSpace

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_REFUSED = 2

REFUSALS = (NotMinimalError, WindowError, HypothesisError, NotSimplyConnectedError, NotAutomorphismError, NonNilpotentError)
CATALOG_PREFIX = "catalog:"


class UsageError(Exception):
    pass


class DisagreementError(Exception):
    """The derivation and Harrison routes differ on a certified degree"""

    def __init__(self, record: ResultRecord):
        super().__init__(f"Routes disagree on degrees {record.disagreement['degrees']}")
        self.record = record


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--format", choices=Config.REPORT_FORMATS, default=argparse.SUPPRESS)
    parser = _ArgumentParser(prog="aq", description="André-Quillen cohomology of CDGA presentations", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    validate = sub.add_parser("validate", parents=[common], help="parse, check d² = 0 and minimality")
    validate.add_argument("file")

    coh = sub.add_parser("cohomology", parents=[common], help="H*(A) on a window")
    coh.add_argument("file")
    coh.add_argument("--algebra")
    coh.add_argument("--window", required=True)

    aq = sub.add_parser("aq", parents=[common], help="H*_AQ(A, M) on a window")
    aq.add_argument("file")
    aq.add_argument("--source", required=True)
    aq.add_argument("--target", default=TRIVIAL_ALGEBRA_NAME)
    aq.add_argument("--morphism")
    aq.add_argument("--window", required=True)
    aq.add_argument("--route", choices=("der", "harrison", "both"), default="der")
    aq.add_argument("--length-bound", type=int, default=None)
    aq.add_argument("--top", type=int, default=None, help="truncate the coefficients above this degree")

    pi = sub.add_parser("pi", parents=[common], help="rational homotopy of a space or of a function space component")
    pi.add_argument("space")
    pi.add_argument("--algebra")
    pi.add_argument("--n", type=int, required=True)
    pi.add_argument("--map", dest="map_name")
    pi.add_argument("--source", help="domain X of the map (file algebra or catalog:NAME)")

    haut = sub.add_parser("haut", parents=[common], help="Lie algebra of homotopy automorphisms")
    haut.add_argument("space")
    haut.add_argument("--algebra")
    haut.add_argument("--truncate", type=int, default=None)

    homotopic = sub.add_parser("homotopic-to-id", parents=[common], help="decide whether a self-map is homotopic to the identity")
    homotopic.add_argument("file")
    homotopic.add_argument("--morphism", required=True)

    catalog = sub.add_parser("catalog", parents=[common], help="catalog spaces")
    catalog.add_argument("action", choices=("list",))
    return parser


# Input resolution

def _window(text: str) -> DegreeWindow:
    try:
        window = DegreeWindow.parse(text)
    except WindowError as e:
        raise UsageError(str(e)) from e
    if window.width > Config.AQ_MAX_WINDOW:
        raise WindowError(f"Window {text} is wider than AQ_MAX_WINDOW={Config.AQ_MAX_WINDOW}")
    return window


def _only_algebra(presentation: Presentation, name: Optional[str]) -> FreeCdga:
    if name:
        return presentation.algebra(name)
    if len(presentation.algebras) != 1:
        raise UsageError(f"Choose one of {sorted(presentation.algebras)} with --algebra")
    return next(iter(presentation.algebras.values()))


def _resolve_space(text: str, algebra: Optional[str]) -> Tuple[SpaceModel, Optional[Presentation]]:
    if text.startswith(CATALOG_PREFIX):
        return space_catalog(text[len(CATALOG_PREFIX):]), None
    presentation = load_presentation(text)
    return UserSpace(_only_algebra(presentation, algebra)), presentation


def _resolve_map(target: SpaceModel, source: SpaceModel, map_name: str, presentation: Optional[Presentation]) -> BasedMap:
    if map_name == "trivial":
        return BasedMap.trivial(target, source)
    if map_name == "id":
        if target.model != source.model:
            raise UsageError("--map id needs the source and target to be the same space")
        return BasedMap.identity(target)
    if presentation is None:
        raise UsageError(f"Map {map_name!r} needs a presentation file")
    return BasedMap(presentation.morphism(map_name))


def _module(presentation: Presentation, source: FreeCdga, target_name: str, morphism: Optional[str], top: Optional[int]) -> DgModuleView:
    if target_name == TRIVIAL_ALGEBRA_NAME and target_name not in presentation.algebras:
        return DgModuleView.trivial(source)
    if morphism:
        structure = presentation.morphism(morphism)
        if structure.source != source or structure.target.name != target_name:
            raise UsageError(f"{morphism} does not go from {source.name} to {target_name}")
        return DgModuleView.via(structure, top)
    target = presentation.algebra(target_name)
    if target != source:
        raise UsageError(f"Give --morphism for coefficients in {target_name}")
    return DgModuleView.identity(source, top)


# Commands

def _validate(args) -> ResultRecord:
    presentation = load_presentation(args.file)
    algebras = {}
    for name, algebra in presentation.algebras.items():
        algebras[name] = {
            "generators": len(algebra.generators),
            "d_squared_zero": True,
            "minimal": algebra.is_minimal,
            "sullivan": algebra.is_sullivan,
            "simply_connected": algebra.is_simply_connected,
        }
    morphisms = {name: f.check() for name, f in presentation.morphisms.items()}
    notes = [f"{name} is not a chain map" for name, violations in morphisms.items() if violations]
    return ResultRecord(
        query={"command": "validate", "file": args.file},
        answer={"algebras": algebras, "morphisms": {k: not v for k, v in morphisms.items()}},
        certification=Certification(notes=notes),
        status="ok" if not notes else "invalid",
    )


def _cohomology(args) -> ResultRecord:
    presentation = load_presentation(args.file)
    algebra = _only_algebra(presentation, args.algebra)
    window = _window(args.window)
    slices = cohomology(algebra, window)
    dims = {k: piece.dimension for k, piece in slices.items()}
    return ResultRecord(
        query={"command": "cohomology", "file": args.file, "algebra": algebra.name, "window": str(window)},
        answer=dimension_answer(dims),
        certification=Certification(window=str(window), certified_degrees=list(window.degrees())),
    )


def _aq(args) -> ResultRecord:
    presentation = load_presentation(args.file)
    source = presentation.algebra(args.source)
    window = _window(args.window)
    module = _module(presentation, source, args.target, args.morphism, args.top)
    query = {
        "command": "aq", "file": args.file, "source": source.name, "target": args.target,
        "morphism": args.morphism, "window": str(window), "route": args.route,
    }
    routes = ["der", "harrison"] if args.route == "both" else [args.route]
    tables: Dict[str, Dict[int, int]] = {}
    certified: List[int] = list(window.degrees())
    length_bound = None
    notes: List[str] = []

    if "der" in routes:
        tables["der"] = aq_cohomology_der(source, module, window).dimensions()
    if "harrison" in routes:
        harrison = aq_cohomology_harrison(source, module, window, args.length_bound)
        tables["harrison"] = harrison.dimensions()
        certified = harrison.certified_degrees
        length_bound = harrison.length_bound
        if harrison.uncertified_degrees:
            notes.append(f"degrees {harrison.uncertified_degrees} need a longer bar-length bound")

    primary = tables[routes[0]]
    record = ResultRecord(
        query=query,
        answer=dimension_answer(primary, certified),
        certification=Certification(
            window=str(window), length_bound=length_bound, certified_degrees=certified, notes=notes
        ),
        routes=routes,
    )
    if len(tables) > 1:
        record.answer["routes"] = {name: dimension_answer(table, certified)["dimensions"] for name, table in tables.items()}
        record.disagreement = dimension_disagreement(tables, certified)
        if record.disagreement:
            record.status = "disagreement"
            raise DisagreementError(record)
        record.answer["agreement"] = True
    return record


def _pi(args) -> ResultRecord:
    target, presentation = _resolve_space(args.space, args.algebra)
    query = {"command": "pi", "space": target.name, "n": args.n, "map": args.map_name}
    window = str(DegreeWindow(-args.n, -args.n))
    if not args.map_name:
        dimension = pi_rational(target, args.n)
        return ResultRecord(
            query=query,
            answer={"dimension": dimension},
            certification=Certification(window=window, certified_degrees=[-args.n]),
            routes=["der"],
        )

    if args.source is None:
        source = target
    elif args.source.startswith(CATALOG_PREFIX):
        source = space_catalog(args.source[len(CATALOG_PREFIX):])
    elif presentation is not None:
        source = UserSpace(presentation.algebra(args.source))
    else:
        raise UsageError("A source algebra by name needs a presentation file")
    f = _resolve_map(target, source, args.map_name, presentation)
    result = mapping_space_homotopy(target, source, f, args.n)
    query.update({"source": source.name})
    answer = result.as_dict()
    notes = []
    if result.set_level_only:
        notes.append("n = 1: identification with π₁ holds as sets only")
    if f.is_trivial:
        formula = null_component_formula(target, source, args.n)
        answer["null_component_formula"] = formula
        if formula != result.dimension:
            raise AlgebraError(f"Null-component formula gives {formula}, derivations give {result.dimension}")
    return ResultRecord(
        query=query,
        answer=answer,
        certification=Certification(window=window, certified_degrees=[-args.n], notes=notes),
        routes=["der", "square-zero"],
    )


def _haut(args) -> ResultRecord:
    space, _ = _resolve_space(args.space, args.algebra)
    result = haut_lie_algebra(space, args.truncate)
    notes = []
    if result.cutoff is not None:
        notes.append(f"computed on the truncation below degree {result.cutoff}")
    if not result.hypothesis_certified:
        notes.append(f"vanishing of H^k for k > {result.cutoff} was checked on a finite window only")
    if not result.lie_algebra.well_defined:
        notes.append("bracket is not closed on the chosen representatives")
    return ResultRecord(
        query={"command": "haut", "space": space.name, "truncate": args.truncate},
        answer=lie_answer(result.lie_algebra),
        certification=Certification(window=str(DegreeWindow(0, 0)), certified_degrees=[0], notes=notes),
        routes=["der"],
    )


def _homotopic_to_id(args) -> ResultRecord:
    presentation = load_presentation(args.file)
    F1 = presentation.morphism(args.morphism)
    decision = is_homotopic_to_identity(F1)
    answer = {"homotopic": decision.is_homotopic, "reason": decision.reason}
    if decision.witness is not None:
        homotopy = exp_homotopy(F1.source, decision.witness)
        report = check_homotopy(homotopy)
        answer["witness"] = decision.witness.describe()
        answer["homotopy"] = homotopy.describe()
        answer["verified"] = report.valid and homotopy.e1() == F1
    return ResultRecord(
        query={"command": "homotopic-to-id", "file": args.file, "morphism": args.morphism},
        answer=answer,
        certification=Certification(window=str(DegreeWindow(-1, 0)), certified_degrees=[-1, 0]),
        routes=["der"],
    )


def _catalog(args) -> ResultRecord:
    return ResultRecord(
        query={"command": "catalog", "action": args.action},
        answer={"spaces": catalog_names()},
        certification=Certification(notes=["no numeric answer"]),
    )


COMMANDS = {
    "validate": _validate,
    "cohomology": _cohomology,
    "aq": _aq,
    "pi": _pi,
    "haut": _haut,
    "homotopic-to-id": _homotopic_to_id,
    "catalog": _catalog,
}


def _failure(argv: Sequence[str], error: Exception, status: str) -> ResultRecord:
    return ResultRecord(query={"argv": list(argv)}, status=status, error=str(error))


def run_command(argv: Sequence[str]) -> Tuple[ResultRecord, int]:
    """Run one command; returns the record and the process exit code"""
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(list(argv))
        record = COMMANDS[args.command](args)
        code = EXIT_OK if record.status == "ok" else EXIT_INPUT_ERROR
    except DisagreementError as e:
        logger.error("%s", e)
        record, code = e.record, EXIT_REFUSED
    except REFUSALS as e:
        logger.warning("Refused: %s", e)
        record, code = _failure(argv, e, "refused"), EXIT_REFUSED
    except (UsageError, PresentationError, AlgebraError, OSError, ValueError) as e:
        logger.error("Input error: %s", e)
        record, code = _failure(argv, e, "error"), EXIT_INPUT_ERROR
    record.timing = time.perf_counter() - started
    return record, code


def _report_format(argv: Sequence[str]) -> str:
    for i, arg in enumerate(argv):
        if arg == "--format" and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith("--format="):
            return arg.split("=", 1)[1]
    return Config.AQ_REPORT_FORMAT


def main(argv: Optional[Sequence[str]] = None) -> int:
    Config.validate()
    logging.basicConfig(
        level=Config.log_level(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    argv = list(sys.argv[1:] if argv is None else argv)
    record, code = run_command(argv)
    fmt = _report_format(argv)
    if fmt not in Config.REPORT_FORMATS:
        fmt = Config.AQ_REPORT_FORMAT
    sys.stdout.buffer.write(emit_report(record, fmt))
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
