"""Walk through the built-in game with two pure equilibria.

Verifies both Dirac fixed-point profiles in ergodic mode, shows the
best-response uniqueness flags, then switches on entropy and runs the
best-response iteration from two starts.

Run:  python scripts/two_fixed_point_demo.py
"""

from ergame import (
    best_responses,
    br_iteration,
    dirac_profile,
    payoff,
    two_fixed_point_game,
    uniform_profile,
    verify_epsilon_nash,
)


def main() -> None:
    game = two_fixed_point_game("ergodic")
    print("== ergodic mode ==")
    for sym in (0, 1):
        profile = dirac_profile(game, sym, sym)
        eps1, eps2 = verify_epsilon_nash(game, profile)
        r1, r2 = best_responses(game, profile)
        print(
            f"profile (dirac {sym}, dirac {sym}): "
            f"payoffs ({payoff(game, profile, 1):.1f}, {payoff(game, profile, 2):.1f}) "
            f"eps ({eps1:.2e}, {eps2:.2e}) "
            f"BR unique: {not r1.multiplicity_flag and not r2.multiplicity_flag}"
        )
    mixed = dirac_profile(game, 0, 1)
    print(f"profile (dirac 0, dirac 1): eps {verify_epsilon_nash(game, mixed)}")

    print("== thermodynamic mode ==")
    game_t = two_fixed_point_game("thermodynamic")
    for name, start in (
        ("uniform start", uniform_profile(game_t)),
        ("dirac-0 start", dirac_profile(game_t, 0, 0)),
    ):
        report = br_iteration(game_t, init=start)
        mu0 = report.profile.mu.pi[0]
        nu0 = report.profile.nu.pi[0]
        print(
            f"{name}: converged={report.converged} in {len(report.iterations)} steps, "
            f"eps={max(report.eps1, report.eps2):.2e}, "
            f"P(x1=0)={mu0:.6f}, P(y1=0)={nu0:.6f}"
        )


if __name__ == "__main__":
    main()
