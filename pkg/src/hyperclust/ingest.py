"""Dataset ingestion: token corpora and binned numeric feature tables.

Both recipes produce raw hypergraphs whose hyperedge weights are left for
derivation (marked derived in the file format) so that the weight exponent
and the splitting cap can be chosen at clustering time.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import IngestError
from .hypergraph import RawEdge, RawHypergraph, quantize_gamma

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercased tokens split on whitespace and punctuation."""
    return _TOKEN_RE.findall(text.lower())


@dataclass
class IngestResult:
    hypergraph: RawHypergraph
    kept_rows: list[int]
    diagnostics: list[str] = field(default_factory=list)


def corpus_to_hypergraph(
    documents: list[list[str]],
    *,
    stopwords: set[str] = frozenset(),
    top_k: int = 100,
    max_df: float = 0.10,
    min_df: float = 0.002,
    min_len: int = 20,
    min_hits: int = 5,
    alpha: float = 1.0,
    smooth_idf: bool = False,
    quantize: bool = True,
) -> IngestResult:
    """Documents become vertices and selected words become hyperedges.

    Short documents are dropped first; words are filtered by stopword list
    and document frequency, the ``top_k`` most frequent survivors kept;
    documents with too few selected words are then dropped.  The weight of a
    document inside a word's hyperedge is its tf-idf (raw count times
    ln(D/df) on the final document set) raised to ``alpha``.
    """
    diagnostics: list[str] = []
    long_enough = [i for i, doc in enumerate(documents) if len(doc) >= min_len]
    if not long_enough:
        raise IngestError("no document meets the minimum length")
    if len(long_enough) < len(documents):
        diagnostics.append(
            f"dropped {len(documents) - len(long_enough)} documents shorter "
            f"than {min_len} tokens"
        )

    doc_tokens = [documents[i] for i in long_enough]
    d_initial = len(doc_tokens)
    df: Counter[str] = Counter()
    tf_total: Counter[str] = Counter()
    for tokens in doc_tokens:
        counts = Counter(tokens)
        for word, c in counts.items():
            df[word] += 1
            tf_total[word] += c

    eligible = [
        w
        for w in df
        if w not in stopwords and min_df * d_initial <= df[w] <= max_df * d_initial
    ]
    # most frequent first; alphabetical among ties for determinism
    eligible.sort(key=lambda w: (-tf_total[w], w))
    selected = eligible[:top_k]
    if not selected:
        raise IngestError("no word survives the document-frequency filters")
    selected_set = set(selected)

    kept = [
        i
        for i, tokens in enumerate(doc_tokens)
        if len(set(tokens) & selected_set) >= min_hits
    ]
    if not kept:
        raise IngestError("no document contains enough selected words")
    if len(kept) < d_initial:
        diagnostics.append(
            f"dropped {d_initial - len(kept)} documents with fewer than "
            f"{min_hits} selected words"
        )
    final_tokens = [doc_tokens[i] for i in kept]
    kept_rows = [long_enough[i] for i in kept]
    d_final = len(final_tokens)

    counts_per_doc = [Counter(t) for t in final_tokens]
    edges: list[RawEdge] = []
    for word in selected:
        members = [v for v, counts in enumerate(counts_per_doc) if counts[word] > 0]
        if len(members) < 2:
            diagnostics.append(f"dropped word {word!r}: fewer than 2 documents left")
            continue
        df_final = len(members)
        idf = math.log((d_final + 1) / (df_final + 1)) + 1.0 if smooth_idf else math.log(
            d_final / df_final
        )
        if idf <= 0:
            diagnostics.append(f"dropped word {word!r}: non-positive idf")
            continue
        gamma = np.array(
            [(counts_per_doc[v][word] * idf) ** alpha for v in members]
        )
        if quantize:
            gamma = quantize_gamma(gamma)
        if _scattered_std(gamma, members, d_final) <= 0:
            diagnostics.append(f"dropped word {word!r}: constant scattered weights")
            continue
        edges.append(RawEdge(tuple(members), tuple(float(g) for g in gamma)))
    if not edges:
        raise IngestError("the hypergraph is empty after filtering")
    return IngestResult(RawHypergraph(d_final, tuple(edges)), kept_rows, diagnostics)


def features_to_hypergraph(
    table: np.ndarray,
    *,
    bins: int = 20,
    alpha: float = 1.0,
    quantize: bool = True,
) -> IngestResult:
    """Rows become vertices; every non-trivial bin of every column becomes a
    hyperedge over the rows falling into it.

    Bins partition each column's range into equal-width intervals; values on
    an interior boundary go to the lower bin (the global maximum lands in the
    last one).  A row's weight inside a bin decays exponentially with its
    normalized distance from the bin median.
    """
    table = np.asarray(table, dtype=float)
    if table.ndim != 2 or table.shape[1] < 1:
        raise IngestError("the feature table needs at least one numeric column")
    n_rows = table.shape[0]
    edges: list[RawEdge] = []
    diagnostics: list[str] = []
    for col in range(table.shape[1]):
        values = table[:, col]
        lo, hi = float(values.min()), float(values.max())
        width = (hi - lo) / bins
        if width == 0.0:
            idx = np.zeros(n_rows, dtype=int)
        else:
            ratio = (values - lo) / width
            idx = np.ceil(ratio).astype(int) - 1
            idx[ratio == 0.0] = 0
            idx = np.clip(idx, 0, bins - 1)
        for b in range(bins):
            members = np.nonzero(idx == b)[0]
            if members.size < 2:
                if members.size == 1:
                    diagnostics.append(f"column {col} bin {b}: single row, skipped")
                continue
            vals = values[members]
            dist = np.abs(vals - np.median(vals))
            dmax = dist.max()
            dist = dist / dmax if dmax > 0 else np.zeros_like(dist)
            gamma = np.exp(-alpha * dist)
            if quantize:
                gamma = quantize_gamma(gamma)
            if _scattered_std(gamma, members.tolist(), n_rows) <= 0:
                diagnostics.append(
                    f"column {col} bin {b}: constant scattered weights, rejected"
                )
                continue
            edges.append(
                RawEdge(tuple(int(v) for v in members), tuple(float(g) for g in gamma))
            )
    if not edges:
        raise IngestError("the hypergraph is empty after filtering")
    return IngestResult(RawHypergraph(n_rows, tuple(edges)), list(range(n_rows)), diagnostics)


def _scattered_std(gamma: np.ndarray, members: list[int], n: int) -> float:
    scattered = np.zeros(n)
    scattered[members] = gamma
    return float(scattered.std())
