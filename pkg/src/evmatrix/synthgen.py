"""Synthetic corpus generator for tests, benchmarks, and the simulation.

Documents draw their words from a "relevant" or a "background" topic
distribution, and citation links are laid out so that the designated seed
review reaches every study through the three matrix layers: the seed cites
part of each group directly (L1), every other review cites at least one
L1 study (L2), and a repair pass makes sure no study is left uncited (L3).
A truth-label file is emitted next to the corpus.

Output is byte-identical for a fixed seed.
"""

from __future__ import annotations

import json
from pathlib import Path
from random import Random

SEED_ID = "SR0000"

DEFAULT_TOPICS = {
    "relevant": [
        "statin", "cholesterol", "lipid", "cardiovascular", "atorvastatin",
        "simvastatin", "lowering", "ldl", "myocardial", "infarction",
        "prevention", "coronary", "artery", "plaque", "hyperlipidemia",
        "dyslipidemia", "triglyceride", "hdl", "atherosclerosis", "dose",
    ],
    "background": [
        "patients", "study", "treatment", "clinical", "outcomes", "trial",
        "randomized", "placebo", "therapy", "disease", "effect", "analysis",
        "group", "control", "risk", "baseline", "followup", "mortality",
        "adverse", "events", "diabetes", "asthma", "fracture", "insulin",
        "dermatitis", "migraine", "ulcer", "sepsis", "anemia", "thyroid",
    ],
}

TITLE_WORDS = 8
ABSTRACT_WORDS = 60
RELEVANT_TOPIC_SHARE = 0.85
BACKGROUND_TOPIC_NOISE = 0.05


def _draw_words(rng: Random, n: int, topics: dict, relevant: bool) -> list[str]:
    share = RELEVANT_TOPIC_SHARE if relevant else BACKGROUND_TOPIC_NOISE
    words = []
    for _ in range(n):
        pool = topics["relevant"] if rng.random() < share else topics["background"]
        words.append(rng.choice(pool))
    return words


def generate_synthetic_corpus(
    n_docs: int,
    n_relevant: int,
    out_corpus: str | Path,
    out_truth: str | Path,
    vocab_spec: dict | None = None,
    seed: int = 0,
) -> tuple[Path, Path]:
    """Write a corpus JSONL file and a truth-label JSON file.

    The first document is the seed systematic review (id SR0000), always
    truly relevant. Returns the two paths.
    """
    if n_relevant > n_docs:
        raise ValueError("n_relevant cannot exceed n_docs")
    if n_relevant < 0 or n_docs < 0:
        raise ValueError("counts must be non-negative")
    topics = vocab_spec or DEFAULT_TOPICS
    if not topics.get("relevant") or not topics.get("background"):
        raise ValueError("vocab_spec needs non-empty 'relevant' and 'background' lists")
    out_corpus = Path(out_corpus)
    out_truth = Path(out_truth)

    if n_docs == 0:
        out_corpus.write_text("", encoding="utf-8")
        out_truth.write_text("{}\n", encoding="utf-8")
        return out_corpus, out_truth

    rng = Random(seed)

    n_sr = 1 if n_docs < 6 else max(2, round(n_docs * 0.07))
    n_ps = n_docs - n_sr
    sr_ids = [SEED_ID] + [f"SR{i:04d}" for i in range(1, n_sr)]
    ps_ids = [f"PS{i:04d}" for i in range(1, n_ps + 1)]

    # distribute the relevant quota: seed first, a few reviews, rest studies
    rel_quota = n_relevant
    relevant: set[str] = set()
    if rel_quota > 0:
        relevant.add(SEED_ID)
        rel_quota -= 1
    rel_sr = min(len(sr_ids) - 1, max(0, round(n_relevant * 0.1)), rel_quota)
    rel_ps = min(n_ps, rel_quota - rel_sr)
    overflow = rel_quota - rel_sr - rel_ps
    rel_sr = min(len(sr_ids) - 1, rel_sr + overflow)
    relevant.update(sr_ids[1 : 1 + rel_sr])
    relevant.update(ps_ids[:rel_ps])

    rel_ps_ids = [p for p in ps_ids if p in relevant]
    bg_ps_ids = [p for p in ps_ids if p not in relevant]

    # citations: seed covers a slice of both groups (L1)...
    cites: dict[str, list[str]] = {s: [] for s in sr_ids}
    l1_rel = rel_ps_ids[: max(1, round(len(rel_ps_ids) * 0.6))] if rel_ps_ids else []
    l1_bg = bg_ps_ids[: max(1, round(len(bg_ps_ids) * 0.15))] if bg_ps_ids else []
    cites[SEED_ID] = l1_rel + l1_bg
    l1 = cites[SEED_ID]

    # ...every other review hooks onto L1 and fans out (L2 rows, L3 columns)
    for sr in sr_ids[1:]:
        picks = rng.sample(l1, min(len(l1), rng.randint(1, 3))) if l1 else []
        if sr in relevant:
            extra_pool = [p for p in rel_ps_ids if p not in picks]
            extra = rng.sample(extra_pool, min(len(extra_pool), rng.randint(4, 10)))
        else:
            extra_pool = [p for p in bg_ps_ids if p not in picks]
            extra = rng.sample(extra_pool, min(len(extra_pool), rng.randint(4, 12)))
        cites[sr] = picks + extra

    # repair pass: no study stays uncited, so every study becomes a column
    cited = {p for refs in cites.values() for p in refs}
    rel_srs = [s for s in sr_ids[1:] if s in relevant] or sr_ids[:1]
    bg_srs = [s for s in sr_ids[1:] if s not in relevant] or sr_ids[:1]
    for p in ps_ids:
        if p in cited:
            continue
        host = rng.choice(rel_srs if p in relevant else bg_srs)
        cites[host].append(p)

    def record(doc_id: str, doc_type: str) -> dict:
        is_rel = doc_id in relevant
        title = " ".join(_draw_words(rng, TITLE_WORDS, topics, is_rel))
        abstract = " ".join(_draw_words(rng, ABSTRACT_WORDS, topics, is_rel))
        return {
            "id": doc_id,
            "type": doc_type,
            "title": title,
            "abstract": abstract,
            "year": rng.randint(1995, 2020),
            "authors": [f"author-{rng.randint(1, 99)}"],
            "references": sorted(set(cites.get(doc_id, []))),
        }

    lines = []
    for sr in sr_ids:
        lines.append(json.dumps(record(sr, "systematic_review"), sort_keys=True))
    for ps in ps_ids:
        lines.append(json.dumps(record(ps, "primary_study"), sort_keys=True))

    truth = {
        doc_id: ("relevant" if doc_id in relevant else "non_relevant")
        for doc_id in sr_ids + ps_ids
    }

    out_corpus.write_text("\n".join(lines) + "\n", encoding="utf-8")
    out_truth.write_text(json.dumps(truth, sort_keys=True) + "\n", encoding="utf-8")
    return out_corpus, out_truth
