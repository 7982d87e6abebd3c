"""Size benchmark across formats and corpora."""

from __future__ import annotations

from .baselines import FormatId, encode_as
from .codec import SnapshotPolicy
from .metrics import BenchReport, BenchRow, empirical_entropy, growth_factor, reduction_ratio
from .model import TelemetrySeries, ThresholdConfig


def run_bench(
    corpora: list[tuple[str, TelemetrySeries]],
    formats: list[FormatId],
    cfg: ThresholdConfig | None = None,
    policy: SnapshotPolicy | None = None,
    reduction: bool = True,
) -> BenchReport:
    """Encode every corpus in every format and tabulate sizes.

    Reduction is measured against JSON and therefore requires it among
    ``formats``. Growth factors compare the largest corpus with the smallest.
    """
    if reduction and FormatId.JSON not in formats:
        raise ValueError("reduction ratios need the json baseline in the format list")
    report = BenchReport()
    for name, series in corpora:
        sizes = {}
        entropies = {}
        for fmt in formats:
            data = encode_as(series, fmt, cfg, policy)
            sizes[fmt] = len(data)
            entropies[fmt] = empirical_entropy(data).entropy_bits_per_byte
        n = len(series)
        for fmt in formats:
            report.rows.append(
                BenchRow(
                    corpus=name,
                    n=n,
                    format=fmt.value,
                    bytes=sizes[fmt],
                    bytes_per_payload=sizes[fmt] / n,
                    reduction_vs_json=(
                        reduction_ratio(sizes[fmt], sizes[FormatId.JSON]) if reduction else None
                    ),
                    entropy_bits_per_byte=entropies[fmt],
                )
            )
    if len(corpora) > 1:
        by_n = sorted(corpora, key=lambda c: len(c[1]))
        small, large = by_n[0][0], by_n[-1][0]
        for fmt in formats:
            report.growth[fmt.value] = growth_factor(
                report.total(small, fmt.value), report.total(large, fmt.value)
            )
    return report
