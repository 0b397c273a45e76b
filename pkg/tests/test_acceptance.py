"""Contract suite: one test per shipping criterion, each reporting a
PASS/FAIL line collected into the terminal summary.

The brute-force oracles used here are deliberately written in the dumbest
possible style (character scans, explicit set arithmetic) so they share no
code path with the implementation they check.
"""

import time

import numpy as np
import pytest

from pswm import (
    CandidateFeatures,
    DataError,
    Document,
    MetaRecord,
    RankedResult,
    TrainingExample,
    analyze,
    attach_probabilities,
    build_index,
    build_syntax_tree,
    error,
    evaluate,
    format_results,
    forward,
    gradient_check,
    init_weights,
    judgments_to_examples,
    load_index,
    load_model,
    save_index,
    save_model,
    semantic_score,
    syntactic_score,
    train,
)
from pswm.cli import DEFAULT_EPOCHS, DEFAULT_HIDDEN, DEFAULT_LR, DEFAULT_SEED
from pswm.neural import MODEL_MAGIC
from pswm.corpus import INDEX_MAGIC


class TestCriterion1GradientFidelity:
    def test_backward_pass_matches_finite_differences(self, acceptance_report):
        rng = np.random.default_rng(2024)
        tolerance, h = 1e-5, 1e-4
        start = time.perf_counter()
        worst = 0.0
        cases = 0
        for _ in range(24):
            n_layers = int(rng.integers(2, 4))
            sizes = [int(s) for s in rng.integers(1, 6, size=n_layers)]
            net = init_weights(sizes, int(rng.integers(0, 2**32)))
            features = rng.uniform(-1.0, 1.0, size=sizes[0])
            desired = rng.uniform(0.0, 1.0, size=sizes[-1])
            worst = max(worst, gradient_check(net, features, desired, h=h))
            cases += 1
        elapsed = time.perf_counter() - start
        ok = cases >= 20 and worst <= tolerance and elapsed < 10.0
        acceptance_report(
            1, ok,
            f"worst relative gradient error {worst:.3e} over {cases} random networks "
            f"(tolerance {tolerance:.0e}, {elapsed:.2f}s)",
        )
        assert cases >= 20
        assert worst <= tolerance
        assert elapsed < 10.0


XOR_DATA = [
    TrainingExample([0.0, 0.0], [0.0]),
    TrainingExample([0.0, 1.0], [1.0]),
    TrainingExample([1.0, 0.0], [1.0]),
    TrainingExample([1.0, 1.0], [0.0]),
]


class TestCriterion2XorConvergence:
    EPOCHS = 3000  # comfortably inside the 20000-epoch budget

    @staticmethod
    def run_once(tmp_path, tag):
        net = init_weights([2, 2, 1], seed=42)
        net, trace = train(net, XOR_DATA, epochs=TestCriterion2XorConvergence.EPOCHS,
                           learning_rate=0.5, seed=42)
        path = tmp_path / f"xor-{tag}.model"
        save_model(net, path)
        per_pattern = [error(forward(net, ex.features)[-1], ex.desired) for ex in XOR_DATA]
        return net, trace, path.read_bytes(), per_pattern

    def test_xor_converges_and_reruns_bitwise_identical(self, tmp_path, acceptance_report):
        start = time.perf_counter()
        net_a, trace_a, bytes_a, errors_a = self.run_once(tmp_path, "a")
        net_b, trace_b, bytes_b, errors_b = self.run_once(tmp_path, "b")
        elapsed = time.perf_counter() - start
        worst = max(errors_a)
        identical = bytes_a == bytes_b and trace_a == trace_b and net_a == net_b
        ok = worst < 0.05 and identical and elapsed < 5.0
        acceptance_report(
            2, ok,
            f"XOR 2-2-1 lr=0.5 seed=42 worst per-pattern error {worst:.5f} "
            f"after {self.EPOCHS} epochs, rerun bitwise-identical={identical} ({elapsed:.2f}s)",
        )
        assert worst < 0.05
        assert bytes_a == bytes_b
        assert trace_a == trace_b
        assert net_a == net_b
        assert elapsed < 5.0


class TestCriterion3EndToEndRanking:
    def test_trained_ranker_on_judged_fixture(self, fixture_index, fixture_judgments,
                                              acceptance_report):
        assert len({j.query for j in fixture_judgments}) == 12
        assert fixture_index.doc_count == 20

        start = time.perf_counter()
        examples = judgments_to_examples(fixture_judgments, fixture_index)
        net = init_weights([2, DEFAULT_HIDDEN, 1], DEFAULT_SEED)
        net, _ = train(net, examples, DEFAULT_EPOCHS, DEFAULT_LR, DEFAULT_SEED)
        report = evaluate(net, fixture_judgments, fixture_index)

        tree = build_syntax_tree("semantic web mining")
        ranked = attach_probabilities(analyze(tree, fixture_index), net)
        by_id = {r.doc_id: r for r in ranked}
        full_match = by_id["d01"]
        zero_semantic = [r for r in ranked if r.semantic == 0.0]
        elapsed = time.perf_counter() - start

        assert full_match.syntactic == 1.0 and full_match.semantic == 1.0
        assert zero_semantic, "walkthrough query must surface body-only candidates"
        ranks_above = all(full_match.probability > r.probability for r in zero_semantic)
        ok = report["accuracy_at_0.5"] >= 0.9 and ranks_above and elapsed < 10.0
        gap = full_match.probability - max(r.probability for r in zero_semantic)
        acceptance_report(
            3, ok,
            f"accuracy@0.5 {report['accuracy_at_0.5']:.3f} on {report['count']} judgments; "
            f"(1.0, 1.0) doc beats all (x, 0) docs by >= {gap:.4f} ({elapsed:.2f}s)",
        )
        assert report["accuracy_at_0.5"] >= 0.9
        assert ranks_above
        assert elapsed < 10.0


class TestCriterion4FormatterContracts:
    CASES = 1000

    @staticmethod
    def random_page(rng):
        n = int(rng.integers(0, 25))
        ids = rng.choice(2000, size=n, replace=False) if n else np.array([], dtype=int)
        results = []
        for i in ids:
            # quantized probabilities force plenty of exact ties
            p = round(float(rng.uniform()), int(rng.integers(1, 4)))
            results.append(RankedResult(f"doc{int(i):04d}", 0.0, 0.0, p))
        return results

    def test_sortedness_ties_cutoff_and_permutation(self, acceptance_report):
        rng = np.random.default_rng(40_4040)
        net = init_weights([2, 3, 1], 900)
        checked = 0
        for _ in range(self.CASES):
            ranked = self.random_page(rng)
            lo, hi = sorted([float(rng.uniform()), float(rng.uniform())])
            top_k = None if rng.uniform() < 0.5 else int(rng.integers(1, 30))

            page = format_results(ranked, cutoff=lo, top_k=top_k, query="q")
            probs = [r.probability for r in page.results]
            # sortedness: non-increasing probability
            assert probs == sorted(probs, reverse=True)
            # tie-break totality: the (probability, id) ordering is strict
            keys = [(-r.probability, r.doc_id) for r in page.results]
            assert all(a < b for a, b in zip(keys, keys[1:]))
            # every survivor clears the cutoff and the page count is bounded
            assert all(p >= lo for p in probs)
            assert page.total_candidates == len(ranked)
            if top_k is not None:
                assert len(page.results) <= top_k

            # cutoff antitonicity: raising the cutoff never admits anyone new
            wide = {r.doc_id for r in format_results(ranked, cutoff=lo, query="q").results}
            narrow = {r.doc_id for r in format_results(ranked, cutoff=hi, query="q").results}
            assert narrow <= wide

            # permutation-safety: probabilities depend only on the features
            cands = [
                CandidateFeatures(f"c{j}", float(rng.uniform()), float(rng.uniform()))
                for j in range(int(rng.integers(0, 12)))
            ]
            shuffled = [cands[k] for k in rng.permutation(len(cands))]
            straight = {r.doc_id: r.probability for r in attach_probabilities(cands, net)}
            permuted = {r.doc_id: r.probability for r in attach_probabilities(shuffled, net)}
            assert straight == permuted
            assert format_results(attach_probabilities(cands, net), 0.3, query="q") == \
                format_results(attach_probabilities(shuffled, net), 0.3, query="q")
            checked += 1
        acceptance_report(
            4, checked >= 1000,
            f"sortedness, tie-break totality, cutoff antitonicity, permutation-safety "
            f"held on {checked} random cases",
        )
        assert checked >= 1000


WORDS = [
    "web", "mining", "semantic", "data", "index", "query", "neural", "net",
    "rank", "page", "crawl", "meta", "tag", "graph", "node", "edge", "x1", "y2",
]


class TestCriterion5Persistence:
    CASES = 100

    @staticmethod
    def random_corpus(rng):
        n_docs = int(rng.integers(1, 9))
        docs = []
        for i in range(n_docs):
            body = " ".join(rng.choice(WORDS, size=int(rng.integers(0, 30))))
            keywords = [str(w) for w in rng.choice(WORDS, size=int(rng.integers(0, 5)))]
            concepts = {
                str(w): round(float(rng.uniform()), 3)
                for w in rng.choice(WORDS, size=int(rng.integers(0, 4)))
            }
            docs.append(
                Document(
                    id=f"doc{i}",
                    url=f"http://h/{i}",
                    title=f"t {i}",
                    body=str(body),
                    meta=MetaRecord.from_raw(keywords, concepts),
                )
            )
        return docs

    def test_roundtrips_and_corruption(self, tmp_path, acceptance_report):
        rng = np.random.default_rng(500_500)
        index_cases = model_cases = 0

        for i in range(self.CASES):
            index = build_index(self.random_corpus(rng))
            path = tmp_path / f"idx{i}"
            save_index(index, path)
            loaded = load_index(path)
            assert loaded.doc_count == index.doc_count
            assert loaded.docs == index.docs
            assert loaded.postings == index.postings
            index_cases += 1

        for i in range(self.CASES):
            n_layers = int(rng.integers(2, 5))
            sizes = [int(s) for s in rng.integers(1, 7, size=n_layers)]
            net = init_weights(sizes, int(rng.integers(0, 2**32)))
            path = tmp_path / f"model{i}"
            save_model(net, path)
            assert load_model(path) == net
            model_cases += 1

        # corrupted headers must raise a data error, not half-load
        good_index = tmp_path / "idx0"
        good_model = tmp_path / "model0"
        corrupt = tmp_path / "corrupt"
        header_corruptions = 0
        for source, loader in ((good_index, load_index), (good_model, load_model)):
            lines = source.read_text(encoding="utf-8").splitlines()
            for bad_header in ("", "PSWM-JUNK v0", lines[0] + " tampered", lines[0].lower()):
                corrupt.write_text("\n".join([bad_header] + lines[1:]) + "\n", encoding="utf-8")
                with pytest.raises(DataError):
                    loader(corrupt)
                header_corruptions += 1
        assert INDEX_MAGIC != MODEL_MAGIC  # formats must not be confusable
        with pytest.raises(DataError):
            load_model(good_index)
        with pytest.raises(DataError):
            load_index(good_model)

        ok = index_cases >= 100 and model_cases >= 100
        acceptance_report(
            5, ok,
            f"{index_cases} index + {model_cases} model roundtrips identical; "
            f"{header_corruptions + 2} corrupted/mismatched headers all raised data errors",
        )
        assert ok


def naive_tokens(text):
    out, current = [], []
    for ch in text.lower():
        if ch.isalnum() and ch != "_":
            current.append(ch)
        else:
            if current:
                out.append("".join(current))
            current = []
    if current:
        out.append("".join(current))
    return out


def naive_syntactic(query: str, body: str) -> float:
    wanted = set(naive_tokens(query))
    if not wanted:
        return 0.0
    have = set(naive_tokens(body))
    hits = 0
    for token in wanted:
        if token in have:
            hits += 1
    return hits / len(wanted)


def naive_semantic(query: str, keywords, concepts) -> float:
    q = set(naive_tokens(query))
    k = set(keywords)
    for tag, weight in concepts.items():
        if weight >= 0.5:
            k.add(tag)
    union = q | k
    if not union:
        return 0.0
    return len(q & k) / len(union)


class TestCriterion6ScoringOracles:
    PAIRS = 1200
    ALPHABET = WORDS + ["Épée", "Straße", "ümlaut", "42", "007"]
    SEPARATORS = [" ", "  ", ", ", "-", "_", "! ", "\t", " / "]

    def random_text(self, rng, max_words):
        k = int(rng.integers(0, max_words))
        parts = []
        for _ in range(k):
            parts.append(str(rng.choice(self.ALPHABET)))
            parts.append(str(rng.choice(self.SEPARATORS)))
        return "".join(parts)

    def test_scores_match_brute_force_exactly(self, acceptance_report):
        rng = np.random.default_rng(606_060)
        checked = 0
        for _ in range(self.PAIRS):
            query = self.random_text(rng, 7) or "fallback"
            body = self.random_text(rng, 40)
            keywords = [str(w) for w in rng.choice(self.ALPHABET, size=int(rng.integers(0, 6)))]
            # weights on a coarse grid so the 0.5 boundary is hit often
            concepts = {
                str(w): float(rng.integers(0, 11)) / 10.0
                for w in rng.choice(self.ALPHABET, size=int(rng.integers(0, 5)))
            }
            doc = Document(id="d", body=body, meta=MetaRecord.from_raw(keywords, concepts))
            tree = build_syntax_tree(query)

            expected_syn = naive_syntactic(query, body)
            expected_sem = naive_semantic(
                query,
                {kw.strip().lower() for kw in keywords if kw.strip()},
                {t.strip().lower(): w for t, w in concepts.items()},
            )
            assert syntactic_score(tree, doc) == expected_syn
            assert semantic_score(tree, doc.meta) == expected_sem
            checked += 1
        acceptance_report(
            6, checked >= 1000,
            f"syntactic and semantic scores equal brute-force recomputation on "
            f"{checked} random (query, doc) pairs",
        )
        assert checked >= 1000
