import json

import pytest
from hypothesis import given

from malring.cache import HomologyCache
from malring.complex import empty_complex
from malring.corpus import BUILTINS, builtin, rp2
from malring.hochster import decompose
from malring.io import ComplexFile, ParseError, parse, parse_json, parse_text, read, write, write_json, write_text

from test_complex import complexes


class TestText:
    def test_parse_with_comments(self):
        cf = parse_text("# a square\nm 4\n1 2  # edge\n\n2 3\n3 4\n1 4\n")
        assert cf.complex.facets == ((1, 2), (1, 4), (2, 3), (3, 4))

    @pytest.mark.parametrize(
        "text",
        ["", "1 2\n", "m four\n", "m 3\n1 2\n", "m 3\n1 x\n3\n", "m 2\n1 3\n2\n", "m 3 4\n1 2 3\n"],
    )
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_text(text)

    def test_empty_complex(self):
        assert parse_text(write_text(empty_complex())).complex == empty_complex()

    @pytest.mark.parametrize("name", list(BUILTINS))
    def test_round_trip_corpus(self, name):
        K = builtin(name)
        text = write_text(K)
        again = parse_text(text).complex
        assert again == K and write_text(again) == text

    @given(complexes())
    def test_round_trip_random(self, K):
        assert write_text(parse(write_text(K)).complex) == write_text(K)
        doc = write_json(K, "x", {"k": 1})
        assert write(parse(doc), "json") == doc


class TestJson:
    def test_parse(self):
        cf = parse_json('{"schema": 1, "m": 3, "facets": [[1, 2], [2, 3]], "name": "path"}')
        assert cf.name == "path" and cf.complex.facets == ((1, 2), (2, 3))

    @pytest.mark.parametrize(
        "text",
        [
            '{"schema": 1, "m": 2, "facets": [[1], [2]], "extra": 1}',
            '{"schema": 2, "m": 2, "facets": [[1], [2]]}',
            '{"schema": 1, "m": "2", "facets": [[1], [2]]}',
            '{"schema": 1, "m": 2, "facets": [1, 2]}',
            '{"schema": 1, "m": 2, "facets": [[1], [3]]}',
            '[1, 2]',
            '{"schema": 1,',
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_json(text)

    def test_canonical_output(self):
        doc = json.loads(write(ComplexFile(rp2(), "rp2", {"source": "corpus"}), "json"))
        assert list(doc) == sorted(doc) and doc["schema"] == 1 and len(doc["facets"]) == 10

    def test_read_from_disk(self, tmp_path):
        p = tmp_path / "k.json"
        p.write_text(write_json(rp2(), "rp2"))
        assert read(p).complex == rp2()
        with pytest.raises(ParseError):
            read(tmp_path / "missing.txt")


class TestCache:
    def test_from_settings(self, tmp_path, monkeypatch):
        assert HomologyCache.from_settings() is None
        monkeypatch.setenv("MAL_CACHE_DIR", str(tmp_path / "env"))
        assert HomologyCache.from_settings().dir == tmp_path / "env"
        assert HomologyCache.from_settings(str(tmp_path / "flag")).dir == tmp_path / "flag"

    def test_fresh_cache_verifies_clean(self, tmp_path):
        cache = HomologyCache(tmp_path)
        decompose(rp2(), cache=cache)
        assert cache.verify()["corrupt"] == 0
        assert cache.stats()["records"] == 64

    def test_bit_flip_is_detected_and_evicted(self, tmp_path):
        cache = HomologyCache(tmp_path)
        K = rp2()
        decompose(K, cache=cache)
        victim = cache.records()[10]
        data = bytearray(victim.read_bytes())
        i = data.index(b'"ranks"') + 12
        data[i] ^= 0x01
        victim.write_bytes(bytes(data))
        report = cache.verify()
        assert report["corrupt"] == 1 and report["evicted"] == [victim.name]
        assert not victim.exists()
        table = decompose(K, cache=cache)
        assert table.stats == {"computed": 1, "cached": 63}
        assert table.torsion_by_degree() == {9: [2]}

    def test_corrupt_record_is_a_miss(self, tmp_path):
        cache = HomologyCache(tmp_path)
        decompose(rp2(), cache=cache)
        victim = cache.records()[0]
        victim.write_text("{not json")
        again = decompose(rp2(), cache=cache)
        assert again.stats["computed"] == 1 and cache.corrupt == 1

    def test_clear(self, tmp_path):
        cache = HomologyCache(tmp_path)
        decompose(rp2(), cache=cache)
        assert cache.clear() == 64
        assert cache.records() == [] and list(tmp_path.iterdir()) == []
