import numpy as np
from django.core.management.base import BaseCommand

from core.exceptions import MsrError, TooLarge
from msr import codec, coefficients, repair
from msr.management.commands._common import (
    failure,
    load_params_or_fail,
    usage_error,
)

LEVELS = ("signal", "alignment", "repair", "mds", "any-helper", "all")


def restricted_helpers(code, failed, scenario):
    """All other systematic nodes plus the parity nodes of R_a."""
    p = code.params
    systematic = [j for j in range(1, p.k + 1) if j != failed]
    return systematic + [p.k + i for i in code.table.subset(scenario)]


def round_trip(code, failed, scenario, seed=0):
    p = code.params
    rng = np.random.default_rng(seed)
    payload = rng.integers(0, p.q, size=p.file_size)
    source = codec.SourceFile(codec.to_field(payload, code.field), p.file_size)
    shards = codec.encode(code, source)
    result = repair.repair_from_shards(
        code, failed, restricted_helpers(code, failed, scenario), shards
    )
    return result.recovered == shards[failed - 1]


class Command(BaseCommand):
    help = "Run the exhaustive repair, MDS and any-helper checks on a code"

    def add_arguments(self, parser):
        parser.add_argument("--params", required=True)
        parser.add_argument("--level", choices=LEVELS, default="all")

    def _row(self, label, ok):
        if ok and self.verbosity == 0:
            return ok
        status = self.style.SUCCESS("ok") if ok else self.style.ERROR("FAIL")
        self.stdout.write(f"  {label:<48} {status}")
        return ok

    def _scenarios(self, code, level):
        p = code.params
        ok = True
        for failed in range(1, p.k + 1):
            for a in range(1, len(code.table) + 1):
                label = f"node {failed} scenario {a} R={code.table.subset(a)}"
                if level in ("signal", "repair", "all"):
                    ok &= self._row(
                        f"{label} signal",
                        repair.check_signal_recovery(code, failed, a),
                    )
                if level in ("alignment", "repair", "all"):
                    ok &= self._row(
                        f"{label} alignment",
                        repair.check_alignment(code, failed, a),
                    )
                if level in ("repair", "all"):
                    ok &= self._row(
                        f"{label} round trip", round_trip(code, failed, a)
                    )
        return ok

    def _mds(self, code):
        blocks = coefficients.check_mds_by_blocks(code)
        subsets = coefficients.check_mds_by_subsets(code)
        ok = self._row("MDS by sub-blocks", blocks)
        ok &= self._row("MDS by node subsets", subsets)
        return ok and blocks == subsets

    def _any_helper(self, code):
        ok = True
        for (failed, helpers), solvable in coefficients.any_helper_report(
            code
        ):
            ok &= self._row(f"node {failed} helpers {helpers}", solvable)
        return ok

    def handle(self, *args, **options):
        code = load_params_or_fail(options["params"])["code"]
        level = options["level"]
        self.verbosity = options["verbosity"]
        p = code.params
        self.stdout.write(
            f"[{p.n},{p.k},{p.d}] over F_{p.q}, alpha = {p.alpha}, "
            f"beta = {p.beta}"
        )

        ok = True
        try:
            if level in ("signal", "alignment", "repair", "all"):
                ok &= self._scenarios(code, level)
            if level in ("mds", "all"):
                ok &= self._mds(code)
            if level in ("any-helper", "all"):
                ok &= self._any_helper(code)
        except TooLarge as exc:
            raise usage_error(str(exc))
        except MsrError as exc:
            raise failure(f"verification aborted: {exc}")

        if not ok:
            raise failure("verification failed")
        self.stdout.write(self.style.SUCCESS("All checks passed"))
