"""The FIS text format: grammar, diagnostics, canonical round-trips."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from permadss import FisParseError, parse_fis, serialize_fis
from permadss.permanence import write_default_models

from genfis import random_fis

MINIMAL = """\
system tiny
input x range 0 10
label small tri 0 0 10
label big tri 0 10 10
output y range 0 1
label no tri 0 0 1
label yes tri 0 1 1
rule if x is small then y is no
rule if x is big then y is yes
"""


def test_parse_minimal_defaults():
    fis = parse_fis(MINIMAL)
    assert fis.name == "tiny"
    assert fis.resolution == 1001
    assert fis.and_op == "min" and fis.defuzz == "centroid"
    assert len(fis.rules) == 2
    assert fis.rules[0].antecedent == (("x", "small"),)
    assert fis.rules[0].consequent == ("y", "no")
    assert fis.rules[0].weight == 1.0


def test_rule_line_mirrors_published_syntax(stable_fis):
    text = serialize_fis(stable_fis)
    assert "rule if NPV is low and GEN is med and DIVERS is high then PERM-INCENT is mf3" in text
    fis = parse_fis(text)
    rule = next(r for r in fis.rules
                if r.antecedent == (("NPV", "low"), ("GEN", "med"), ("DIVERS", "high")))
    assert rule.connective == "and"
    assert rule.consequent[1] == "mf3"


def test_comments_and_blank_lines_and_scientific_notation():
    text = (
        "# header comment\n"
        "system s\n\n"
        "input NPV range -0.5e6 185e6   # trailing comment\n"
        "label low trap -0.5e6 -0.5e6 2e6 10e6\n"
        "label high trap 2e6 1.0E7 185e6 185e6\n"
        "output y range 0 1\n"
        "label no tri 0 0 1\n"
        "label yes tri 0 1 1\n"
        "rule if NPV is low then y is no weight 0.25\n"
    )
    fis = parse_fis(text)
    assert fis.input("NPV").universe == (-0.5e6, 185e6)
    assert fis.rules[0].weight == 0.25


class TestErrors:
    def expect(self, text, fragment, line=None):
        with pytest.raises(FisParseError) as exc:
            parse_fis(text)
        assert fragment in str(exc.value)
        assert exc.value.line >= 1 and exc.value.col >= 1
        if line is not None:
            assert exc.value.line == line
        return exc.value

    def test_no_rules(self):
        text = "\n".join(MINIMAL.splitlines()[:-2]) + "\n"
        self.expect(text, "no rules")

    def test_support_outside_universe(self):
        text = MINIMAL.replace("input x range 0 10", "input x range 0 8")
        err = self.expect(text, "support outside universe")
        assert err.line == 3

    def test_unknown_label_in_rule(self):
        self.expect(MINIMAL.replace("is small then", "is tiny then"), "unknown label")

    def test_unknown_variable_in_rule(self):
        self.expect(MINIMAL.replace("rule if x is small", "rule if z is small"), "unknown variable")

    def test_duplicate_variable(self):
        extra = MINIMAL.replace("output y range 0 1", "input x range 0 5\noutput y range 0 1")
        self.expect(extra, "duplicate variable")

    def test_duplicate_label(self):
        self.expect(MINIMAL.replace("label big tri", "label small tri"), "duplicate label")

    def test_mixed_connectives(self):
        text = MINIMAL.replace(
            "output y range 0 1",
            "input z range 0 1\nlabel lo tri 0 0 1\nlabel hi tri 0 1 1\noutput y range 0 1",
        ) + "rule if x is small or z is lo and z is hi then y is no\n"
        self.expect(text, "mixed connectives")

    def test_label_outside_block(self):
        self.expect("system s\nlabel a tri 0 1 2\n", "label outside")

    def test_missing_system(self):
        self.expect(MINIMAL.replace("system tiny\n", ""), "missing system header")

    def test_duplicate_output(self):
        text = MINIMAL + "output z range 0 1\nlabel all trap 0 0 1 1\n"
        self.expect(text, "duplicate output")

    def test_unsupported_operator_value(self):
        self.expect("system s\noption and_op product\n", "unsupported and_op")

    def test_unknown_option(self):
        self.expect("system s\noption color blue\n", "unknown option")

    def test_small_resolution(self):
        self.expect("system s\noption resolution 5\n", "resolution")

    def test_bad_number(self):
        self.expect(MINIMAL.replace("range 0 10", "range 0 ten"), "invalid number")

    def test_bad_weight(self):
        self.expect(MINIMAL.replace("then y is no", "then y is no weight 2"), "weight")

    def test_unknown_statement(self):
        self.expect("system s\nbogus stuff\n", "unknown statement")

    def test_keyword_as_name(self):
        self.expect("system rule\n", "keyword")

    def test_positions_point_at_offender(self):
        err = self.expect("system s\ninput x range 0 10\nlabel a tri 0 5 11\n", "outside universe")
        assert (err.line, err.col) == (3, 13)


class TestRoundTrip:
    def test_bundled_models_roundtrip(self, stable_fis, growth_fis, tmp_path):
        for fis in (stable_fis, growth_fis):
            text = serialize_fis(fis)
            again = parse_fis(text)
            assert again == fis
            assert serialize_fis(again) == text

    def test_bundled_files_are_canonical(self, tmp_path):
        # the shipped files must equal their regenerated canonical form
        from importlib import resources

        write_default_models(tmp_path)
        for scenario in ("stable", "growth"):
            bundled = resources.files("permadss").joinpath(
                "models", f"permanence_{scenario}.fis"
            ).read_text(encoding="utf-8")
            assert bundled == (tmp_path / f"permanence_{scenario}.fis").read_text(encoding="utf-8")

    def test_serialize_is_idempotent(self):
        fis = parse_fis(MINIMAL)
        once = serialize_fis(fis)
        assert serialize_fis(parse_fis(once)) == once

    def test_minimal_system_layout(self):
        text = "\n".join(MINIMAL.splitlines()[:6]) + "\nrule if x is small then y is no\n"
        out = serialize_fis(parse_fis(text))
        lines = out.splitlines()
        assert sum(1 for l in lines if l.startswith("input ")) == 1
        assert sum(1 for l in lines if l.startswith("output ")) == 1
        assert sum(1 for l in lines if l.startswith("rule ")) == 1

    @settings(max_examples=60)
    @given(rnd=st.randoms(use_true_random=False))
    def test_random_systems_roundtrip(self, rnd):
        fis = random_fis(rnd)
        text = serialize_fis(fis)
        again = parse_fis(text)
        assert again == fis
        assert serialize_fis(again) == text


@settings(max_examples=200)
@given(st.text(max_size=300))
def test_fuzz_text_never_crashes(text):
    try:
        parse_fis(text)
    except FisParseError:
        pass


@settings(max_examples=200)
@given(st.binary(max_size=300))
def test_fuzz_bytes_never_crash(blob):
    try:
        parse_fis(blob.decode("utf-8", errors="replace"))
    except FisParseError:
        pass


def test_fuzz_mutated_model_lines():
    rnd = random.Random(3)
    base = MINIMAL.splitlines()
    for _ in range(300):
        lines = [rnd.choice(base) for _ in range(rnd.randint(0, 8))]
        text = "\n".join(lines)
        try:
            parse_fis(text)
        except FisParseError:
            pass
