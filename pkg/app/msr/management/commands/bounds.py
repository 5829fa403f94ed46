from django.core.management.base import BaseCommand

from core.exceptions import MsrError
from msr import coefficients, construction
from msr.management.commands._common import usage_error
from msr.repair import bandwidth_report


class Command(BaseCommand):
    help = "Print sub-packetization and field-size bounds for [n, k, d]"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--k", type=int, required=True)
        parser.add_argument("--d", type=int, required=True)

    def handle(self, *args, **options):
        n, k, d = options["n"], options["k"], options["d"]
        try:
            alpha = construction.min_alpha(n, k, d)
            bmds = coefficients.bound_qmds(n, k, d)
            bany = coefficients.bound_qany(n, k, d)
            q = coefficients.recommended_q(n, k, d)
            report = bandwidth_report(construction.CodeParams(n, k, d, q))
        except MsrError as exc:
            raise usage_error(str(exc))

        self.stdout.write(f"alpha = {alpha}")
        self.stdout.write(f"beta = {alpha // (d - k + 1)}")
        self.stdout.write(f"q_MDS = {bmds}")
        self.stdout.write(f"q_ANY = {bany}")
        self.stdout.write(f"recommended q = {q}")
        self.stdout.write(
            f"repair download {report.repair_download} "
            f"vs naive {report.naive_download}"
        )
