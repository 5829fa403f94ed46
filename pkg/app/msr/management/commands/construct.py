from django.conf import settings
from django.core.management.base import BaseCommand

from core.exceptions import MsrError, SearchExhausted, TooLarge
from core.field import FieldContext
from msr import coefficients, construction
from msr.management.commands._common import failure, usage_error
from msr.serializers import dump_params


class Command(BaseCommand):
    help = (
        "Search coefficients for an [n, k, d] code and write a certified "
        "parameter file"
    )

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--k", type=int, required=True)
        parser.add_argument("--d", type=int, required=True)
        parser.add_argument("--q", type=int, default=None)
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--max-tries", type=int, default=None)
        parser.add_argument("--out", required=True)

    def handle(self, *args, **options):
        n, k, d = options["n"], options["k"], options["d"]
        try:
            alpha = construction.min_alpha(n, k, d)
            bmds = coefficients.bound_qmds(n, k, d)
            bany = coefficients.bound_qany(n, k, d)
            q = options["q"]
            if q is None:
                q = coefficients.recommended_q(n, k, d)
            FieldContext(q)
        except MsrError as exc:
            raise usage_error(str(exc))

        seed = options["seed"]
        if seed is None:
            seed = settings.MSR_DEFAULT_SEED
        if q <= bmds + bany:
            self.stdout.write(
                self.style.WARNING(
                    f"q = {q} is not above q_MDS + q_ANY = {bmds + bany}"
                )
            )
        try:
            certificate = coefficients.find_lambdas(
                n, k, d, q, seed, max_tries=options["max_tries"]
            )
        except SearchExhausted as exc:
            raise failure(str(exc))
        except TooLarge as exc:
            raise usage_error(str(exc))
        except MsrError as exc:
            raise failure(str(exc))

        code = construction.build_code(n, k, d, q, certificate.lambdas)
        dump_params(options["out"], code, certificate)

        self.stdout.write(f"alpha = {alpha}, beta = {code.params.beta}")
        self.stdout.write(f"q_MDS = {bmds}, q_ANY = {bany}, q = {q}")
        self.stdout.write(
            self.style.SUCCESS(
                f"Certified after {certificate.tries} tries; "
                f"wrote {options['out']}"
            )
        )
