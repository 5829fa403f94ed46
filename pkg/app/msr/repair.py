"""
Repair of a failed systematic node from any d helpers.

Every helper sends the beta symbols indexed by the slice Y of the label
space chosen for (failed node, scenario). Systematic helper contributions
are cancelled out of the parity transmissions; what remains is the square
system over x_f and the aligned interference of the systematic nodes that
were not contacted.
"""

import logging
from dataclasses import dataclass

import numpy as np

from core.exceptions import BadParams, DimensionMismatch, NotInSpan
from core.linalg import Matrix, rank, solve, vstack
from msr.codec import NodeShard

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HelperSet:
    failed: int
    helpers: tuple
    k: int
    n: int

    @classmethod
    def create(cls, params, failed, helpers):
        helpers = tuple(sorted(int(node) for node in helpers))
        if not 1 <= failed <= params.k:
            raise BadParams(
                f"node {failed} is not systematic; systematic-repair only"
            )
        if len(set(helpers)) != len(helpers):
            raise BadParams(f"duplicate helpers in {helpers}")
        if len(helpers) != params.d:
            raise BadParams(f"{len(helpers)} helpers given, d = {params.d}")
        if failed in helpers:
            raise BadParams(f"failed node {failed} cannot help")
        if any(not 1 <= node <= params.n for node in helpers):
            raise BadParams(f"helpers {helpers} outside [1, {params.n}]")
        return cls(failed, helpers, params.k, params.n)

    @property
    def systematic(self):
        return tuple(node for node in self.helpers if node <= self.k)

    @property
    def parity(self):
        return tuple(node for node in self.helpers if node > self.k)

    @property
    def parity_indices(self):
        return tuple(node - self.k for node in self.parity)

    @property
    def h(self):
        return len(self.parity)

    @property
    def absent(self):
        """Systematic nodes other than the failed one that are not helpers."""
        return tuple(
            j
            for j in range(1, self.k + 1)
            if j != self.failed and j not in self.helpers
        )


@dataclass(frozen=True)
class RepairPlan:
    helper_set: HelperSet
    scenario: int
    rows: object

    @property
    def transmissions(self):
        """Row indices each helper sends, in increasing order."""
        return {node: self.rows.members for node in self.helper_set.helpers}

    @property
    def download(self):
        return len(self.helper_set.helpers) * len(self.rows)


@dataclass
class RepairResult:
    recovered: NodeShard
    downloaded_symbols: int
    system_dimension: int


@dataclass(frozen=True)
class BandwidthReport:
    repair_download: int
    naive_download: int
    cut_set_sum: int
    file_size: int

    @property
    def saving(self):
        return self.naive_download - self.repair_download


def choose_scenario(code, hs):
    """Scenario whose parity subset is the smallest rho-subset of H_p."""
    subset = hs.parity_indices[: code.params.rho]
    return code.table.index_of(subset)


def repair_rows(code, failed, scenario):
    return code.space.slice(code.coordinate(failed, scenario), 0)


def plan_repair(code, hs):
    scenario = choose_scenario(code, hs)
    return RepairPlan(hs, scenario, repair_rows(code, hs.failed, scenario))


def check_signal_recovery(code, failed, scenario, rows=None):
    """Images of Y under the blocks of R_a partition [0:alpha)."""
    rows = repair_rows(code, failed, scenario) if rows is None else rows
    images = [
        code.permutation(i, failed)[rows.members]
        for i in code.table.subset(scenario)
    ]
    covered = np.sort(np.concatenate(images))
    return bool(np.array_equal(covered, np.arange(code.params.alpha)))


def check_alignment(code, failed, scenario, rows=None):
    """Every other systematic node's blocks map Y onto itself."""
    rows = repair_rows(code, failed, scenario) if rows is None else rows
    p = code.params
    for j in range(1, p.k + 1):
        if j == failed:
            continue
        for i in range(1, p.r + 1):
            image = np.sort(code.permutation(i, j)[rows.members])
            if not np.array_equal(image, rows.members):
                return False
    return True


def transfer_matrix(code, plan, i, j):
    """B with S A_{i,j} = B S, where S selects the rows of the plan."""
    rows = plan.rows
    positions = rows.positions(code.permutation(i, j)[rows.members])
    if (positions < 0).any():
        raise NotInSpan(
            f"A_{{{i},{j}}} moves the repair rows of node "
            f"{plan.helper_set.failed}; alignment is broken"
        )
    beta = len(rows)
    data = code.field.zeros((beta, beta))
    data[np.arange(beta), positions] = code.block(i, j).coefficient
    return Matrix(code.field, data)


def signal_block(code, plan, i):
    """S A_{i,f}: beta x alpha, one nonzero per row."""
    rows = plan.rows
    f = plan.helper_set.failed
    data = code.field.zeros((len(rows), code.params.alpha))
    data[np.arange(len(rows)), code.permutation(i, f)[rows.members]] = (
        code.block(i, f).coefficient
    )
    return Matrix(code.field, data)


def repair_matrix(code, plan):
    """The square h*beta system over [x_f | interference of absent nodes]."""
    hs = plan.helper_set
    beta = len(plan.rows)
    row_blocks = []
    for i in hs.parity_indices:
        blocks = [signal_block(code, plan, i)]
        blocks += [transfer_matrix(code, plan, i, j) for j in hs.absent]
        row_blocks.append(np.hstack([blk.data for blk in blocks]))
    matrix = Matrix(code.field, np.vstack(row_blocks))
    expected = hs.h * beta
    if matrix.shape != (expected, expected):
        raise DimensionMismatch(
            f"repair system is {matrix.shape}, expected {expected} square"
        )
    return matrix


def _received(transmissions, node, beta):
    if node not in transmissions:
        raise DimensionMismatch(f"no transmission from helper {node}")
    values = np.asarray(transmissions[node])
    if values.shape[0] != beta:
        raise DimensionMismatch(
            f"helper {node} sent {values.shape[0]} symbols, expected {beta}"
        )
    return values.reshape(beta, -1)


def assemble_repair_system(code, plan, transmissions):
    """Return (M, rhs) with M @ [x_f | interference] == rhs."""
    hs = plan.helper_set
    beta = len(plan.rows)
    field = code.field
    known = {
        j: Matrix(field, _received(transmissions, j, beta))
        for j in hs.systematic
    }
    rhs_blocks = []
    for i in hs.parity_indices:
        block = Matrix(field, _received(transmissions, hs.k + i, beta))
        for j, sent in known.items():
            block = block - transfer_matrix(code, plan, i, j) @ sent
        rhs_blocks.append(block)
    return repair_matrix(code, plan), vstack(rhs_blocks)


def repair(code, plan, transmissions):
    matrix, rhs = assemble_repair_system(code, plan, transmissions)
    solution = solve(matrix, rhs).data
    alpha = code.params.alpha
    recovered = solution[:alpha]
    single = all(
        np.asarray(values).ndim == 1 for values in transmissions.values()
    )
    symbols = recovered[:, 0] if single else recovered
    logger.info(
        "repaired node %d from %s (scenario %d, %d symbols)",
        plan.helper_set.failed,
        plan.helper_set.helpers,
        plan.scenario,
        plan.download,
    )
    return RepairResult(
        recovered=NodeShard(plan.helper_set.failed, symbols, code.checksum),
        downloaded_symbols=plan.download,
        system_dimension=matrix.rows,
    )


def collect_transmissions(code, plan, shards):
    """Cut the plan's rows out of full helper shards."""
    by_node = {shard.node_index: shard for shard in shards}
    return {
        node: by_node[node].symbols[plan.rows.members]
        for node in plan.helper_set.helpers
    }


def repair_from_shards(code, failed, helpers, shards):
    hs = HelperSet.create(code.params, failed, helpers)
    plan = plan_repair(code, hs)
    return repair(code, plan, collect_transmissions(code, plan, shards))


def bandwidth_report(params):
    alpha, beta = params.alpha, params.beta
    cut_set = sum(
        min(alpha, (params.d - i) * beta) for i in range(params.k)
    )
    if cut_set != params.file_size:
        raise BadParams(
            f"cut-set sum {cut_set} differs from file size {params.file_size}"
        )
    return BandwidthReport(
        repair_download=params.d * beta,
        naive_download=params.file_size,
        cut_set_sum=cut_set,
        file_size=params.file_size,
    )


def necessity_rank(code, failed, scenario=1):
    """Rank of [I on x_f; aligned systematic rows; one parity row block].

    When alignment holds this equals alpha + (k - 1) * beta, which is the
    number of symbols a d = n - 1 repair downloads.
    """
    p = code.params
    field = code.field
    rows = repair_rows(code, failed, scenario)
    beta = len(rows)
    selector = Matrix(field, np.eye(p.alpha, dtype=field.dtype)[rows.members])
    grid = []
    identity = field.zeros((p.alpha, p.file_size))
    start = (failed - 1) * p.alpha
    identity[:, start:start + p.alpha] = np.eye(p.alpha, dtype=field.dtype)
    grid.append(identity)
    for j in range(1, p.k + 1):
        if j == failed:
            continue
        block = field.zeros((beta, p.file_size))
        block[:, (j - 1) * p.alpha:j * p.alpha] = selector.data
        grid.append(block)
    parity = code.table.subset(scenario)[0]
    grid.append((selector @ code.parity_part(rows=[parity])).data)
    return rank(Matrix(field, np.vstack(grid)))


def full_system_unique(code, plan):
    """Whether x_f is pinned down by everything the helpers send.

    Test oracle on the d*beta x k*alpha system: x_f is determined iff
    removing its columns drops the rank by exactly alpha.
    """
    p = code.params
    field = code.field
    rows = plan.rows
    selector = Matrix(field, np.eye(p.alpha, dtype=field.dtype)[rows.members])
    blocks = [
        selector @ code.node_rows(node) for node in plan.helper_set.helpers
    ]
    full = vstack(blocks)
    start = (plan.helper_set.failed - 1) * p.alpha
    others = [
        c for c in range(p.file_size) if not start <= c < start + p.alpha
    ]
    return rank(full) - rank(full.select_cols(others)) == p.alpha
