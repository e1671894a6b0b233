import pytest

from dci.corpus import (DEFAULT_PIVOTS_CROSS_DOMAIN, DEFAULT_PIVOTS_CROSS_LINGUAL,
                        NEGATIVE, POSITIVE, Document, TranslationOracle, Vocabulary,
                        build_task, document_to_line, dump_processed_file,
                        load_dictionary, load_domain_pool, load_processed_file,
                        translate_document)
from dci.errors import ConfigError, ParseError

from helpers import make_pool


class TestVocabulary:
    def test_ids_dense_first_seen(self):
        v = Vocabulary()
        assert v.intern("a") == 0
        assert v.intern("b") == 1
        assert v.intern("a") == 0
        assert len(v) == 2
        assert v.term(1) == "b"
        assert "b" in v and "c" not in v
        assert v.id_of("c") is None


class TestProcessedFileParsing:
    def test_happy_path(self, tmp_path):
        p = tmp_path / "f.txt"
        p.write_text("good:2 bad:1 #label#:positive\n"
                     "\n"
                     "bad:3 #label#:negative\n"
                     "meh:1\n")
        v = Vocabulary()
        docs = load_processed_file(p, v)
        assert len(docs) == 3
        assert docs[0].label == POSITIVE
        assert docs[0].terms == {v.id_of("good"): 2, v.id_of("bad"): 1}
        assert docs[1].label == NEGATIVE
        assert docs[2].label is None

    def test_unlabeled_marker(self, tmp_path):
        p = tmp_path / "f.txt"
        p.write_text("x:1 #label#:unlabeled\n")
        docs = load_processed_file(p, Vocabulary())
        assert docs[0].label is None

    def test_token_may_contain_colons(self, tmp_path):
        p = tmp_path / "f.txt"
        p.write_text("a:b:c:2\n")
        v = Vocabulary()
        docs = load_processed_file(p, v)
        assert docs[0].terms == {v.id_of("a:b:c"): 2}

    def test_duplicate_tokens_merge_counts(self, tmp_path):
        p = tmp_path / "f.txt"
        p.write_text("w:2 w:3\n")
        v = Vocabulary()
        docs = load_processed_file(p, v)
        assert docs[0].terms == {v.id_of("w"): 5}

    @pytest.mark.parametrize("line,fragment", [
        ("good:2 #label#:positive #label#:negative", "duplicate label"),
        ("good:2 #label#:maybe", "unknown label"),
        ("good:x", "non-integer count"),
        ("good:0", "non-positive count"),
        ("good:-1", "non-positive count"),
        (":3", "malformed field"),
        ("justaword", "malformed field"),
    ])
    def test_malformed_lines(self, tmp_path, line, fragment):
        p = tmp_path / "f.txt"
        p.write_text(line + "\n")
        with pytest.raises(ParseError) as err:
            load_processed_file(p, Vocabulary())
        assert fragment in str(err.value)
        assert err.value.lineno == 1
        assert str(p) in str(err.value)

    def test_round_trip(self, tmp_path):
        v = Vocabulary()
        docs = [Document({v.intern("b"): 2, v.intern("a"): 1}, POSITIVE),
                Document({v.intern("c"): 1}, None)]
        out = tmp_path / "out.txt"
        dump_processed_file(docs, v, out)
        v2 = Vocabulary()
        reloaded = load_processed_file(out, v2)
        assert [document_to_line(d, v2) for d in reloaded] == \
               [document_to_line(d, v) for d in docs]
        assert reloaded[0].label == POSITIVE and reloaded[1].label is None


class TestDictionary:
    def test_tab_and_space_formats(self, tmp_path):
        p = tmp_path / "dict.txt"
        p.write_text("gut\tgood\nschlecht bad\n")
        oracle = load_dictionary(p)
        assert oracle.translate("gut") == "good"
        assert oracle.translate("schlecht") == "bad"
        assert oracle.translate("unbekannt") is None
        assert len(oracle) == 2

    def test_duplicates_first_wins(self, tmp_path):
        p = tmp_path / "dict.txt"
        p.write_text("gut\tgood\ngut\tfine\n")
        oracle = load_dictionary(p)
        assert oracle.translate("gut") == "good"
        assert oracle.duplicates == 1

    def test_malformed_line(self, tmp_path):
        p = tmp_path / "dict.txt"
        p.write_text("gut\n")
        with pytest.raises(ParseError):
            load_dictionary(p)


class TestDomainPool:
    def test_labeled_split_requires_labels(self, tmp_path):
        p = tmp_path / "l.txt"
        p.write_text("a:1\n")
        with pytest.raises(ConfigError):
            load_domain_pool("en", "books", Vocabulary(), labeled=[p])

    def test_tag(self):
        pool = make_pool(language="de", domain="books")
        assert pool.tag == "de-books"


class TestBuildTask:
    def _mono_pools(self):
        v = Vocabulary()
        src = make_pool(labeled=[["a"]], labels=[POSITIVE], domain="s", vocab=v)
        tgt = make_pool(test=[["a"]], test_labels=[POSITIVE], domain="t", vocab=v)
        return src, tgt

    def test_default_pivots_cross_domain(self):
        src, tgt = self._mono_pools()
        task = build_task(src, tgt)
        assert task.n_pivots == DEFAULT_PIVOTS_CROSS_DOMAIN == 1000
        assert not task.cross_lingual
        assert task.tag == "en-s->en-t"

    def test_default_pivots_cross_lingual(self):
        src = make_pool(labeled=[["a"]], labels=[POSITIVE], language="en")
        tgt = make_pool(test=[["b"]], test_labels=[POSITIVE], language="de")
        task = build_task(src, tgt, dictionary=TranslationOracle({"a": "b"}))
        assert task.n_pivots == DEFAULT_PIVOTS_CROSS_LINGUAL == 450
        assert task.cross_lingual

    def test_explicit_pivots_kept(self):
        src, tgt = self._mono_pools()
        assert build_task(src, tgt, n_pivots=77).n_pivots == 77

    def test_negative_pivots_rejected(self):
        src, tgt = self._mono_pools()
        with pytest.raises(ValueError):
            build_task(src, tgt, n_pivots=-1)

    def test_cross_lingual_needs_dictionary(self):
        src = make_pool(labeled=[["a"]], labels=[POSITIVE], language="en")
        tgt = make_pool(test=[["b"]], test_labels=[POSITIVE], language="de")
        with pytest.raises(ConfigError):
            build_task(src, tgt)

    def test_target_labeled_becomes_test_when_no_test_split(self):
        v = Vocabulary()
        src = make_pool(labeled=[["a"]], labels=[POSITIVE], domain="s", vocab=v)
        tgt = make_pool(labeled=[["a"], ["b"]], labels=[POSITIVE, NEGATIVE],
                        domain="t", vocab=v)
        task = build_task(src, tgt)
        assert len(task.target.test) == 2
        assert task.target.labeled == []
        # the original pool object is untouched
        assert len(tgt.labeled) == 2


class TestTranslateDocument:
    def test_drop_and_merge(self):
        src_v = Vocabulary()
        tgt_v = Vocabulary()
        tgt_v.intern("good")
        doc = Document({src_v.intern("gut"): 2, src_v.intern("fein"): 1,
                        src_v.intern("unbekannt"): 4}, POSITIVE)
        oracle = TranslationOracle({"gut": "good", "fein": "good",
                                    "unbekannt": "unseen-target-term"})
        out = translate_document(doc, oracle, src_v, tgt_v)
        # "gut" and "fein" collide on "good" (counts merge); "unbekannt"
        # translates to a term the target data never contains, so it drops
        assert out.terms == {tgt_v.id_of("good"): 3}
        assert out.label == POSITIVE
