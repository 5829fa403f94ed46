from pathlib import Path

from django.core.management.base import BaseCommand

from core.exceptions import MsrError
from msr import codec
from msr.management.commands._common import (
    failure,
    load_params_or_fail,
    usage_error,
)
from msr.shards import read_shard, shard_path


class Command(BaseCommand):
    help = "Rebuild the original file from any k shard files"

    def add_arguments(self, parser):
        parser.add_argument("--params", required=True)
        parser.add_argument("--shards", required=True)
        parser.add_argument("--out", required=True)

    def handle(self, *args, **options):
        code = load_params_or_fail(options["params"])["code"]
        p = code.params
        directory = Path(options["shards"])
        if not directory.is_dir():
            raise usage_error(f"shard directory {directory} not found")

        shards = []
        for node in range(1, p.n + 1):
            if len(shards) == p.k:
                break
            path = shard_path(directory, node)
            if not path.is_file():
                continue
            try:
                shards.append(read_shard(path, code))
            except MsrError as exc:
                self.stdout.write(
                    self.style.WARNING(f"skipping {path}: {exc}")
                )
        if len(shards) < p.k:
            raise failure(f"only {len(shards)} usable shards, {p.k} needed")

        try:
            data = codec.unpad(codec.recover(code, shards), p.q)
        except MsrError as exc:
            raise failure(f"recovery failed: {exc}")

        Path(options["out"]).write_bytes(data)
        nodes = ",".join(str(shard.node_index) for shard in shards)
        self.stdout.write(
            self.style.SUCCESS(
                f"Recovered {len(data)} bytes from nodes {nodes}"
            )
        )
