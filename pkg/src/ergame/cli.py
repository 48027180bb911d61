"""Command-line front end.

Ingests game / measure / profile JSON files, dispatches to the solvers and
writes a deterministic JSON report (stdout when ``--out`` is omitted).
Exit codes: 0 success, 1 I/O failure, 2 input validation failure, 3 solver
non-convergence (a report is still written with ``converged: false``).
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .errors import (
    CapExceededError,
    ConvergenceError,
    ErgameError,
    InvariantError,
    SchemaError,
    SolverError,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_NO_CONVERGENCE = 3


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: command, inputs and numeric knobs (echoed in reports)."""

    command: str
    game: str | None = None
    profile: str | None = None
    measure: str | None = None
    opponent: str | None = None
    mu: str | None = None
    nu: str | None = None
    init: str | None = None
    player: int | None = None
    mode: str | None = None
    depth: int | None = None
    tol: float | None = None
    max_iter: int | None = None
    seed: int = 0
    out: str | None = None
    trace_csv: str | None = None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergame",
        description="Solvers for two-player games over invariant measures on full shifts",
    )
    parser.add_argument("--version", action="version", version=f"ergame {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, game=False):
        if game:
            p.add_argument("--game", required=True, help="game JSON file")
            p.add_argument("--mode", choices=["ergodic", "thermodynamic"], default=None,
                           help="override the mode stored in the game file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="report path (stdout when omitted)")

    p = sub.add_parser("eval", help="payoffs of a profile")
    common(p, game=True)
    p.add_argument("--profile", required=True)

    p = sub.add_parser("verify", help="epsilon-Nash certificate of a profile")
    common(p, game=True)
    p.add_argument("--profile", required=True)

    p = sub.add_parser("br", help="one player's exact best response")
    common(p, game=True)
    p.add_argument("--player", type=int, choices=[1, 2], required=True)
    p.add_argument("--opponent", required=True, help="opponent measure JSON file")

    p = sub.add_parser("nash", help="equilibrium search with certificate")
    common(p, game=True)
    p.add_argument("--init", default=None, help="starting profile JSON file")
    p.add_argument("--tol", type=float, default=None,
                   help="step tolerance (iteration) or certificate tolerance (fictitious play)")
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--trace-csv", default=None)

    p = sub.add_parser("zerosum", help="exact minimax solve (requires A2 = -A1)")
    common(p, game=True)

    p = sub.add_parser("common", help="common-payoff global maximization (requires A1 = A2)")
    common(p, game=True)

    p = sub.add_parser("transport", help="cooperative transport plan given player 1's measure")
    common(p, game=True)
    p.add_argument("--measure", required=True, help="player 1 measure JSON file")
    p.add_argument("--depth", type=int, required=True)

    p = sub.add_parser("wasserstein", help="certified W1 interval between two measures")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        game=getattr(args, "game", None),
        profile=getattr(args, "profile", None),
        measure=getattr(args, "measure", None),
        opponent=getattr(args, "opponent", None),
        mu=getattr(args, "mu", None),
        nu=getattr(args, "nu", None),
        init=getattr(args, "init", None),
        player=getattr(args, "player", None),
        mode=getattr(args, "mode", None),
        depth=getattr(args, "depth", None),
        tol=getattr(args, "tol", None),
        max_iter=getattr(args, "max_iter", None),
        seed=getattr(args, "seed", 0),
        out=getattr(args, "out", None),
        trace_csv=getattr(args, "trace_csv", None),
    )


def _emit(config: RunConfig, results: dict) -> None:
    from .io import dumps_canonical, write_report

    # the destination paths are not part of the computation, so two runs
    # that differ only in --out / --trace-csv stay byte-identical
    echoed = {
        k: v for k, v in asdict(config).items() if v is not None and k not in ("out", "trace_csv")
    }
    payload = {
        "command": config.command,
        "version": __version__,
        "config": echoed,
        "results": results,
    }
    if config.out:
        write_report(config.out, payload)
    else:
        sys.stdout.write(dumps_canonical(payload))


def _write_trace(path: str, reports) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["run", "step", "w1hi_mu", "w1hi_nu", "payoff1", "payoff2"])
        for run_idx, report in enumerate(reports):
            for s in report.iterations:
                writer.writerow([
                    run_idx,
                    s.index,
                    "" if math.isnan(s.step_mu) else repr(s.step_mu),
                    "" if math.isnan(s.step_nu) else repr(s.step_nu),
                    repr(s.payoff1),
                    repr(s.payoff2),
                ])


def _run(config: RunConfig) -> int:
    from . import games, io, measures, transport
    from .ergodic import br_ergodic
    from .measures import induced_potential_x, induced_potential_y, wasserstein1
    from .thermo import br_thermo, gibbs_result_to_dict

    if config.command == "wasserstein":
        mu = measures.measure_from_dict(io.load_json(config.mu))
        nu = measures.measure_from_dict(io.load_json(config.nu), mu.spec)
        interval = wasserstein1(mu, nu, config.depth)
        _emit(config, {"depth": config.depth, "lo": interval.lo, "hi": interval.hi})
        return EXIT_OK

    game = io.game_from_dict(io.load_json(config.game), mode_override=config.mode)

    if config.command == "eval":
        profile = io.profile_from_dict(io.load_json(config.profile), game)
        _emit(config, {
            "payoff1": games.payoff(game, profile, 1),
            "payoff2": games.payoff(game, profile, 2),
            "mode": game.mode,
        })
        return EXIT_OK

    if config.command == "verify":
        profile = io.profile_from_dict(io.load_json(config.profile), game)
        eps1, eps2 = games.verify_epsilon_nash(game, profile)
        _emit(config, {
            "eps1": eps1,
            "eps2": eps2,
            "eps": max(eps1, eps2),
            "payoff1": games.payoff(game, profile, 1),
            "payoff2": games.payoff(game, profile, 2),
            "mode": game.mode,
        })
        return EXIT_OK

    if config.command == "br":
        opponent = measures.measure_from_dict(io.load_json(config.opponent))
        if game.mode == games.THERMODYNAMIC:
            side = "x" if config.player == 1 else "y"
            A = game.A1 if config.player == 1 else game.A2
            result = br_thermo(A, opponent, side)
            _emit(config, {"player": config.player, "gibbs": gibbs_result_to_dict(result)})
        else:
            if config.player == 1:
                psi = induced_potential_x(game.A1, opponent)
            else:
                psi = induced_potential_y(game.A2, opponent)
            result = br_ergodic(psi)
            _emit(config, {
                "player": config.player,
                "value": result.value,
                "dual_bound": result.dual_bound,
                "multiplicity_flag": bool(result.multiplicity_flag),
                "optimizer": measures.measure_to_dict(result.optimizer),
            })
        return EXIT_OK

    if config.command == "nash":
        reports = []
        if game.mode == games.THERMODYNAMIC:
            kwargs = {}
            if config.tol is not None:
                kwargs["step_tol"] = config.tol
            if config.max_iter is not None:
                kwargs["max_iter"] = config.max_iter
            if config.init is not None:
                starts = [io.profile_from_dict(io.load_json(config.init), game)]
            else:
                starts = [
                    games.uniform_profile(game),
                    games.dirac_profile(game, 0, game.spec_y.alphabet_size - 1),
                ]
            for start in starts:
                reports.append(games.br_iteration(game, init=start, **kwargs))
        else:
            kwargs = {}
            if config.tol is not None:
                kwargs["eps_tol"] = config.tol
            if config.max_iter is not None:
                kwargs["max_iter"] = config.max_iter
            init = io.profile_from_dict(io.load_json(config.init), game) if config.init else None
            reports.append(games.fictitious_play(game, init=init, **kwargs))
        if config.trace_csv:
            _write_trace(config.trace_csv, reports)
        best = min(reports, key=lambda r: (not r.converged, max(r.eps1, r.eps2)))
        _emit(config, {
            "runs": [io.report_to_dict(r) for r in reports],
            "best_run": reports.index(best),
            "converged": bool(best.converged),
        })
        return EXIT_OK if best.converged else EXIT_NO_CONVERGENCE

    if config.command == "zerosum":
        report = games.zero_sum_solve(game)
        _emit(config, {"report": io.report_to_dict(report), "value": report.value})
        return EXIT_OK if report.converged else EXIT_NO_CONVERGENCE

    if config.command == "common":
        report = games.common_payoff_maximize(game, seed=config.seed)
        _emit(config, {"report": io.report_to_dict(report), "value": report.value})
        return EXIT_OK if report.converged else EXIT_NO_CONVERGENCE

    if config.command == "transport":
        mu = measures.measure_from_dict(io.load_json(config.measure), game.spec_x)
        result = transport.solve_cooperative(game.A2, mu, config.depth)
        _emit(config, {
            "value": result.value,
            "benchmark": result.benchmark,
            "gain": result.gain,
            "y_marginal": io.word_distribution_to_dict(result.y_marginal),
            "plan": {
                f"{io.word_to_str(wx)}|{io.word_to_str(wy)}": float(result.plan.q[i, j])
                for i, wx in enumerate(result.plan.spec_x.words(result.plan.depth))
                for j, wy in enumerate(result.plan.spec_y.words(result.plan.depth))
                if result.plan.q[i, j] > 0.0
            },
        })
        return EXIT_OK

    raise ValueError(f"unknown command {config.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(args)
    try:
        return _run(config)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except IsADirectoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PermissionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SchemaError, InvariantError, CapExceededError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConvergenceError, SolverError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
