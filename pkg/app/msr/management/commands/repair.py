from pathlib import Path

import numpy as np
from django.core.management.base import BaseCommand

from core.exceptions import BadParams, MsrError
from msr import repair
from msr.management.commands._common import (
    failure,
    load_params_or_fail,
    parse_nodes,
    usage_error,
)
from msr.shards import ShardReader, read_shard, shard_path, write_shard


class Command(BaseCommand):
    help = "Rebuild a failed systematic shard from d helper shards"

    def add_arguments(self, parser):
        parser.add_argument("--params", required=True)
        parser.add_argument("--failed", type=int, required=True)
        parser.add_argument("--helpers", required=True)
        parser.add_argument("--shards", required=True)

    def handle(self, *args, **options):
        code = load_params_or_fail(options["params"])["code"]
        p = code.params
        directory = Path(options["shards"])
        try:
            helper_set = repair.HelperSet.create(
                p, options["failed"], parse_nodes(options["helpers"])
            )
        except BadParams as exc:
            raise usage_error(str(exc))
        plan = repair.plan_repair(code, helper_set)

        transmissions = {}
        self.symbols_read = 0
        for node in helper_set.helpers:
            path = shard_path(directory, node)
            if not path.is_file():
                raise usage_error(f"helper shard {path} not found")
            try:
                with ShardReader(path, code) as reader:
                    transmissions[node] = reader.read_rows(plan.rows.members)
                    read = reader.symbols_read
            except MsrError as exc:
                raise failure(f"helper {node}: {exc}")
            self.symbols_read += read
            if options["verbosity"] >= 2:
                self.stdout.write(f"  node {node}: {read} symbols")
        if len({values.shape[1] for values in transmissions.values()}) != 1:
            raise failure("helper shards hold different codeword counts")

        try:
            result = repair.repair(code, plan, transmissions)
        except MsrError as exc:
            raise failure(f"repair failed: {exc}")

        out = shard_path(directory, helper_set.failed)
        write_shard(out, code, result.recovered)
        # read the whole file back and compare symbol by symbol
        try:
            written = read_shard(out, code)
        except MsrError as exc:
            raise failure(f"{out} does not read back: {exc}")
        if not np.array_equal(written.columns(), result.recovered.columns()):
            raise failure(f"{out} does not match the repaired symbols")

        self.stdout.write(
            f"downloaded {result.downloaded_symbols} of naive "
            f"{p.file_size} symbols per codeword "
            f"(target d*alpha/(d-k+1) = {p.d * p.beta})"
        )
        self.stdout.write(
            f"read {self.symbols_read} payload symbols over "
            f"{written.codewords} codeword(s); scenario {plan.scenario}, "
            f"system {result.system_dimension}x{result.system_dimension}"
        )
        self.stdout.write(self.style.SUCCESS(f"Wrote {out}"))
