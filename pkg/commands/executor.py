"""
Command executor for nondisturb.

Runs one analysis per call and wraps its result in a report envelope
carrying the tool version, configuration echo, seed and tolerances.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from catalog import build_entry, build_two_time_scenario, list_entries, verify_claims
from compat import classify, hierarchy_suite
from freeops import monotonicity_suite
from measurement import validate_channel, validate_instrument, validate_povm
from mrmeasure import disturbance, disturbance_fixed, mr_pair, mr_sequence
from persistence import RunArchive
from sdpcore import SolverSettings
from sequence import aot_check, all_satisfied, nsit_check, prob_table, time_dependent_check
from utils.config import TOOL_NAME, TOOL_VERSION, RunConfig
from utils.errors import (
    CatalogError,
    ConfigError,
    HierarchyViolation,
    InputParseError,
    NondisturbError,
    SolverFailure,
)

from .schema import (
    BUILTIN_SCENARIOS,
    document_kind,
    load_document,
    parse_instrument,
    parse_params,
    parse_povm,
    parse_povm_list,
    parse_scenario,
    parse_document,
)

logger = logging.getLogger(__name__)

EXIT_CODES = {
    "success": 0,
    "failed": 1,
    "error": 1,
    "input_error": 2,
    "solver_failure": 3,
}

# (passed, result, headline value for the archive)
Outcome = Tuple[bool, Any, Optional[float]]


class CommandExecutor:
    """
    Dispatches CLI commands to the library.

    Args:
        config: Run configuration (tolerances, see-saw parameters, threads, output format)
        settings: Solver settings shared by every SDP of the run
        archive: Optional run archive; every finished report is stored in it
    """

    def __init__(self, config: RunConfig, settings: Optional[SolverSettings] = None,
                 archive: Optional[RunArchive] = None):
        self.config = config
        self.tolerances = config.tolerances
        self.settings = settings or SolverSettings.from_tolerances(config.tolerances)
        self.archive = archive

        self.command_map = {
            'validate': self._validate,
            'compat': self._compat,
            'disturbance': self._disturbance,
            'mr': self._mr,
            'nsit': self._nsit,
            'catalog': self._catalog,
            'freeops': self._freeops,
            'hierarchy': self._hierarchy,
            'history': self._history,
        }

    def envelope(self, command: str, status: str, passed: bool, result: Any = None,
                 error: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        out = {
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "command": command,
            "status": status,
            "passed": passed,
            "seed": self.config.seesaw.seed,
            "tolerances": self.tolerances.to_dict(),
            "solver": self.settings.solver,
            "config": self.config.echo(),
            "result": result,
        }
        if error is not None:
            out["error"] = error
        return out

    def execute(self, command: str, arguments: Dict[str, Any]) -> Tuple[str, str, Dict[str, Any]]:
        """
        Execute a command.

        Args:
            command: Name of the command
            arguments: Keyword arguments of the command

        Returns:
            Tuple of (status, message, report)
            - status: one of ``EXIT_CODES``
            - message: Human-readable status message
            - report: Report envelope (also produced for failures)
        """
        if command not in self.command_map:
            return ("input_error", f"Unknown command: {command}",
                    self.envelope(command, "input_error", False, error={"message": f"unknown command {command!r}"}))
        if self.config.output_format == "csv" and command != "nsit":
            message = "CSV output is only available for nsit"
            return ("input_error", message, self.envelope(command, "input_error", False, error={"message": message}))

        try:
            passed, result, headline = self.command_map[command](**arguments)
        except InputParseError as e:
            logger.error("%s", e)
            return ("input_error", f"Invalid input for {command}: {e}",
                    self.envelope(command, "input_error", False,
                                  error={"message": e.reason, "location": e.location}))
        except SolverFailure as e:
            logger.error("solver failure in %s: %s", command, e)
            return ("solver_failure", f"Solver failure in {command}: {e}",
                    self.envelope(command, "solver_failure", False,
                                  error={"message": str(e), "status": e.status, "diagnostics": e.diagnostics}))
        except HierarchyViolation as e:
            logger.error("inconsistent verdicts in %s: %s", command, e)
            return ("failed", f"Inconsistent verdicts in {command}: {e}",
                    self.envelope(command, "failed", False, error={"message": str(e)}))
        except (ConfigError, CatalogError, NondisturbError, ValueError) as e:
            return ("input_error", f"Invalid arguments for {command}: {e}",
                    self.envelope(command, "input_error", False, error={"message": str(e)}))
        except TypeError as e:
            return ("input_error", f"Invalid arguments for {command}: {e}",
                    self.envelope(command, "input_error", False, error={"message": str(e)}))
        except Exception as e:
            logger.exception("unexpected error in %s", command)
            return ("error", f"Error executing {command}: {e}",
                    self.envelope(command, "error", False, error={"message": str(e)}))

        status = "success" if passed else "failed"
        report = self.envelope(command, status, passed, result)
        if self.archive is not None and command != "history":
            run_id = self.archive.insert_run(command, self.config.seesaw.seed, self.config.echo(), report, headline)
            logger.info("archived run %d", run_id)
        message = f"Command {command} " + ("passed" if passed else "reported failures")
        return (status, message, report)

    def _validate(self, input: str, kind: str = "auto") -> Outcome:
        """
        Validate a measurement document.

        Args:
            input: Path to a POVM, instrument or channel document
            kind: Document type or ``auto``

        Returns:
            Validation report; passes only if the object is valid
        """
        doc = load_document(input)
        kind = document_kind(doc, kind)
        if kind == "scenario":
            raise InputParseError("scenarios are checked by the nsit command", "$.type")
        obj = parse_document(doc, kind)
        if kind == "povm":
            report = validate_povm(obj, self.tolerances)
        elif kind == "instrument":
            povm = parse_povm(doc["povm"], "$.povm") if doc.get("povm") is not None else None
            report = validate_instrument(obj, povm, self.tolerances)
        else:
            report = validate_channel(obj, self.tolerances)
        if not report.ok:
            logger.warning("%s is not valid: %s", input, "; ".join(report.violations))
        return report.ok, {"kind": kind, "report": report.to_dict()}, None

    def _compat(self, a: str, b: str) -> Outcome:
        pa, pb = parse_povm(load_document(a)), parse_povm(load_document(b))
        report = classify(pa, pb, self.settings, self.tolerances)
        return True, report.to_dict(), None

    def _disturbance(self, a: str, b: str, instrument: Optional[str] = None) -> Outcome:
        pa, pb = parse_povm(load_document(a)), parse_povm(load_document(b))
        if instrument is not None:
            report = disturbance_fixed(pa, parse_instrument(load_document(instrument)), pb, self.tolerances)
        else:
            report = disturbance(pa, pb, self.settings)
        return True, report.to_dict(), report.value

    def _mr(self, povms: Sequence[str], names: Optional[Sequence[str]] = None) -> Outcome:
        """
        Macrorealism measure of the given POVMs.

        Pairs are solved exactly by SDP; three or more POVMs use the see-saw
        with the configured restarts and seed, so their values are upper bounds.
        """
        if len(povms) == 1:
            parsed = parse_povm_list(load_document(povms[0]))
        else:
            parsed = [parse_povm(load_document(path)) for path in povms]
        if len(parsed) < 2:
            raise ConfigError("the macrorealism measure needs at least two POVMs")
        if names is not None and len(names) != len(parsed):
            raise ConfigError(f"{len(names)} names for {len(parsed)} POVMs")
        if len(parsed) == 2:
            report = mr_pair(parsed[0], parsed[1], self.settings, names or ("A", "B"))
        else:
            report = mr_sequence(parsed, names, self.config.seesaw, self.settings, self.tolerances,
                                 self.config.threads)
        return True, report.to_dict(), report.total

    def _nsit(self, scenario: str, initial: str = "x", measure_prepare: bool = False,
              explicit_evolution: bool = False, reduced: bool = False, state_set: str = "full") -> Outcome:
        """
        Probability table and the macrorealism conditions of a scenario.

        The run passes when every arrow-of-time condition holds; NSIT
        violations are findings, not failures.
        """
        if scenario in BUILTIN_SCENARIOS:
            sc = build_two_time_scenario(initial, explicit_evolution, measure_prepare)
        else:
            sc = parse_scenario(load_document(scenario))
        table = prob_table(sc, self.config.threads)
        aot = aot_check(table, self.tolerances.identity)
        nsit = nsit_check(table, reduced, self.tolerances.identity)
        result: Dict[str, Any] = {
            "scenario": sc.to_dict(),
            "table": table,
            "aot": aot,
            "nsit": nsit,
            "reduced": reduced,
            "max_nsit_defect": max((c.defect for c in nsit), default=0.0),
            "nsit_satisfied": all_satisfied(nsit),
        }
        if sc.has_evolutions and sc.n == 3:
            result["time_dependent"] = time_dependent_check(sc, state_set, self.settings, self.tolerances)
        if not all_satisfied(aot):
            logger.warning("arrow-of-time conditions violated; the table is inconsistent")
        return all_satisfied(aot), result, result["max_nsit_defect"]

    def _catalog(self, verb: str, entry_id: Optional[str] = None, param: Optional[List[str]] = None) -> Outcome:
        if verb == "list":
            return True, {"entries": list_entries()}, None
        if verb != "verify":
            raise ConfigError(f"unknown catalog verb {verb!r}")
        params = parse_params(param)
        ids = [entry_id] if entry_id else list_entries()
        if params and len(ids) != 1:
            raise ConfigError("entry parameters need a single entry id")
        verifications = []
        for eid in ids:
            entry = build_entry(eid, self.settings, self.tolerances, **params)
            verification = verify_claims(entry, self.config.threads)
            logger.info("%s: %d/%d claims pass", eid, sum(r.passed for r in verification.results),
                        len(verification.results))
            verifications.append((entry, verification))
        passed = all(v.passed for _, v in verifications)
        return passed, {
            "entries": [{"entry": e.to_dict(), "verification": v.to_dict()} for e, v in verifications],
        }, None

    def _freeops(self, suite: str, trials: int = 20, dim: int = 2, povm_count: int = 2, outcomes: int = 2) -> Outcome:
        """
        Monotonicity suite. Counterexample searches (``global_channel``)
        report what they find without failing the run.
        """
        stats = monotonicity_suite(suite, trials, seed=self.config.seesaw.seed, dim=dim, povm_count=povm_count,
                                   outcomes=outcomes, search=self.config.seesaw, settings=self.settings,
                                   tolerances=self.tolerances, threads=self.config.threads)
        passed = stats.passed or not stats.proof_backed
        return passed, stats.to_dict(), stats.min_margin

    def _hierarchy(self, dim: int = 2, trials: int = 50, outcomes: int = 2) -> Outcome:
        stats = hierarchy_suite(dim, trials, self.config.seesaw.seed, outcomes, self.settings, self.tolerances)
        return stats.passed, stats.to_dict(), None

    def _history(self, command: Optional[str] = None, limit: int = 20) -> Outcome:
        if self.archive is None:
            raise ConfigError("history needs an archive (--archive PATH)")
        runs = self.archive.search_runs(command, limit) if command else self.archive.get_recent_runs(limit)
        for run in runs:
            run.pop("report", None)
        return True, {"runs": runs}, None
