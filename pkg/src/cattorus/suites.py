"""Named verification suites over one lattice, shared by the CLI and the tests."""

from __future__ import annotations

from .actor_centre import centre_lemma_check, theta_centre
from .autos import (ad_sequence_check, make_xi, make_xi_prime, make_xi_tilde, make_xi_tilde_prime,
                    unimodular_eprime_check, xi_equivalence_check, xi_prime_equivalence_check)
from .basicrep import centralizer_of_rep, make_rep, verify_centralizer_theorem, verify_rep
from .cattorus import make_extraspecial, make_theta, make_theta_prime
from .inertia import inertia_suite
from .lattice import LatticeData, LatticeError
from .linebundle import linebundle_suite, theta_invariance
from .xmod import Report, check_axioms, check_monoidal

SUITES = ("axioms", "rep", "centralizer", "inertia", "looijenga", "xi", "xi-prime")
CENTRALIZER_MAX_RANK = 4


def axiom_modules(lat: LatticeData) -> list:
    """The crossed modules whose CM1/CM2 axioms are checked for every lattice."""
    theta = make_theta(lat)
    return [theta, make_theta_prime(lat), make_extraspecial(lat), theta_centre(theta, lat),
            centralizer_of_rep(make_rep(lat), lat=lat), make_xi(lat), make_xi_prime(lat)]


def _titled(rep: Report, title: str) -> Report:
    rep.title = title
    return rep


def suite_axioms(lat, trials, seed, threads):
    out = [_titled(check_axioms(x, trials, seed, threads), f"axioms {x.name}")
           for x in axiom_modules(lat)]
    theta = make_theta(lat)
    out.append(_titled(check_monoidal(theta, trials, seed, threads), f"monoidal S({theta.name})"))
    out.append(centre_lemma_check(lat, min(trials, 200), seed))
    return out


def suite_rep(lat, trials, seed, threads):
    return [_titled(verify_rep(make_rep(lat, k, n), trials, seed, threads),
                    f"basic representation k={k} n={n} {lat.name}")
            for k, n in ((1, 1), (2, 1), (1, 3))]


def _mutant(rep: Report, name: str) -> Report:
    """A mutated construction must be caught: pass iff some axiom fails."""
    out = Report(f"mutation {name}")
    caught = next((r for r in rep.results if r.status == "fail"), None)
    out.add("DETECTED", caught is not None, sum(r.trials for r in rep.results),
            "" if caught else "no axiom failed")
    if caught is not None:
        out.results[-1].witness = f"{caught.axiom}: {caught.witness}"
    return out


def suite_centralizer(lat, trials, seed, threads):
    if lat.rank > CENTRALIZER_MAX_RANK:
        raise LatticeError(f"rank {lat.rank} above guard {CENTRALIZER_MAX_RANK}")
    out = [verify_centralizer_theorem(lat, trials, seed, threads)]
    mt = min(trials, 200)
    out.append(_mutant(verify_centralizer_theorem(lat, mt, seed, threads, "drop_iota"), "drop_iota"))
    # swapping J-flat for J-sharp is invisible when J is symmetric
    if lat.gramJ != tuple(zip(*lat.gramJ)):
        out.append(_mutant(verify_centralizer_theorem(lat, mt, seed, threads, "swap"), "swap"))
    return out


def suite_inertia(lat, trials, seed, threads):
    return [inertia_suite(lat, max(1, trials // 2), seed)]


def suite_looijenga(lat, trials, seed, threads):
    out = linebundle_suite(lat, max(1, trials // 2), seed)
    if lat.is_positive_definite:
        rep = Report(f"theta {lat.name}")
        rep.add("SHELL_INVARIANCE", theta_invariance(lat, 2), 1)
        out.append(rep)
    return out


def suite_xi(lat, trials, seed, threads):
    return [_titled(check_axioms(make_xi(lat), trials, seed, threads), f"axioms Xi({lat.name})"),
            _titled(check_axioms(make_xi_tilde(lat), trials, seed, threads),
                    f"axioms Xi~({lat.name})"),
            xi_equivalence_check(lat, trials, seed, threads),
            ad_sequence_check(lat, min(trials, 200), seed)]


def suite_xi_prime(lat, trials, seed, threads):
    out = [_titled(check_axioms(make_xi_prime(lat), trials, seed, threads),
                   f"axioms Xi'({lat.name})"),
           _titled(check_axioms(make_xi_tilde_prime(lat), trials, seed, threads),
                   f"axioms Xi~'({lat.name})"),
           xi_prime_equivalence_check(lat, trials, seed, threads)]
    mut = xi_prime_equivalence_check(lat, min(trials, 200), seed, threads, mutate="kappa_sign",
                                     axioms=("W4",))
    out.append(_mutant(mut, "kappa_sign"))
    if lat.is_unimodular and lat.rank <= 4:
        out.append(unimodular_eprime_check(lat))
    return out


RUNNERS = {"axioms": suite_axioms, "rep": suite_rep, "centralizer": suite_centralizer,
           "inertia": suite_inertia, "looijenga": suite_looijenga, "xi": suite_xi,
           "xi-prime": suite_xi_prime}


def run_suites(lat: LatticeData, names, trials: int = 1000, seed=0, threads=None) -> list:
    """Reports of the named suites, in the fixed order of SUITES."""
    reports = []
    for name in SUITES:
        if name in names:
            reports.extend(RUNNERS[name](lat, trials, seed, threads))
    return reports
