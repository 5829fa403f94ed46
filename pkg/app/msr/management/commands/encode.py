from pathlib import Path

from django.core.management.base import BaseCommand

from core.exceptions import MsrError
from msr import codec
from msr.management.commands._common import load_params_or_fail, usage_error
from msr.shards import shard_path, write_shard


class Command(BaseCommand):
    help = "Encode a file into n shard files node_<i>.msr"

    def add_arguments(self, parser):
        parser.add_argument("--params", required=True)
        parser.add_argument("--input", required=True)
        parser.add_argument("--outdir", required=True)

    def handle(self, *args, **options):
        code = load_params_or_fail(options["params"])["code"]
        source_path = Path(options["input"])
        if not source_path.is_file():
            raise usage_error(f"input file {source_path} not found")
        outdir = Path(options["outdir"])
        outdir.mkdir(parents=True, exist_ok=True)

        try:
            source = codec.pad(source_path.read_bytes(), code.params)
            shards = codec.encode(code, source)
        except MsrError as exc:
            raise usage_error(str(exc))

        for shard in shards:
            write_shard(shard_path(outdir, shard.node_index), code, shard)

        self.stdout.write(
            self.style.SUCCESS(
                f"Wrote {len(shards)} shards of {source.codewords} "
                f"codeword(s) to {outdir}"
            )
        )
