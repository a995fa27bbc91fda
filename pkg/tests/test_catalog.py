import pytest

from catalog import BUNDLED_CATALOG, CatalogError, DuplicateName, load_catalog, parse_catalog
from perm import is_type_w
from scalar import ONE, parse_scalar


class TestBundled:
    def test_has_the_reference_systems(self, catalog):
        assert {"third", "golden", "fhz"} <= set(catalog)
        assert len(catalog) >= 3

    def test_lengths_sum_to_one(self, catalog):
        for entry in catalog.values():
            if entry.has_lengths:
                assert sum(entry.iet().lengths) == ONE

    def test_fhz_is_type_w(self, catalog):
        assert is_type_w(catalog["fhz"].perm)
        assert not is_type_w(catalog["golden"].perm)

    def test_permutation_only_entries(self, catalog):
        assert not catalog["swap"].has_lengths
        with pytest.raises(CatalogError):
            catalog["reversal4"].iet()

    def test_provenance(self, catalog):
        entry = catalog["golden"]
        assert entry.provenance() == {"catalog": str(BUNDLED_CATALOG), "name": "golden",
                                      "line": entry.line}


class TestParse:
    def test_comments_and_blank_lines(self):
        entries = parse_catalog("# header\n\nrot: 2 1 | 1/4, 3/4  # trailing\n")
        assert list(entries) == ["rot"]
        assert entries["rot"].lengths == (parse_scalar("1/4"), parse_scalar("3/4"))
        assert entries["rot"].line == 3

    def test_order_is_preserved(self):
        entries = parse_catalog("b: 2 1\na: 1\nc: 3 2 1\n")
        assert list(entries) == ["b", "a", "c"]

    def test_duplicate_name(self):
        with pytest.raises(DuplicateName) as info:
            parse_catalog("x: 2 1\ny: 1\nx: 3 2 1\n")
        assert info.value.line == 3

    @pytest.mark.parametrize("text,line", [
        ("a: 2 1\nno colon here\n", 2),
        ("a: 2 2\n", 1),
        ("ok: 1\n9bad: 2 1\n", 2),
        ("a: 2 1 | 1/2, sqrt(\n", 1),
        ("a: 3 2 1 | 1/2, 1/2\n", 1),
        ("\n\na: 2 1 | 1/2, 0\n", 3),
    ])
    def test_malformed_line_reports_its_number(self, text, line):
        with pytest.raises(CatalogError) as info:
            parse_catalog(text, "mine.txt")
        assert info.value.line == line
        assert f"mine.txt:{line}:" in str(info.value)


class TestLoad:
    def test_explicit_path(self, tmp_path):
        path = tmp_path / "systems.txt"
        path.write_text("half: 2 1 | 1, 1\n")
        entries = load_catalog(path)
        assert entries["half"].iet().lengths == (parse_scalar("1/2"), parse_scalar("1/2"))
        assert entries["half"].source == str(path)

    def test_environment_override(self, tmp_path, monkeypatch):
        path = tmp_path / "env.txt"
        path.write_text("only: 3 2 1\n")
        monkeypatch.setenv("IETLAB_CATALOG", str(path))
        assert list(load_catalog()) == ["only"]

    def test_missing_file(self, tmp_path):
        with pytest.raises(CatalogError):
            load_catalog(tmp_path / "nope.txt")
