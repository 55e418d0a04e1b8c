from importlib import resources

from dlforest.expr import And, Exists, Named, TOP
from dlforest.fixtures import UNI
from dlforest.metrics import evaluate, pos_cov
from dlforest.ofn import parse_ontology

S = Named(UNI + "Student")
UE = Named(UNI + "UniversityEmployee")


class TestUniversityFixture:
    def test_inventory(self, uni_ontology):
        assert len(uni_ontology.classes) == 4
        assert len(uni_ontology.properties) == 2
        assert len(uni_ontology.individuals) == 11

    def test_example_counts(self, uni_lp):
        assert len(uni_lp.positives) == 2
        assert len(uni_lp.negatives) == 3

    def test_coverage_table(self, uni_lp, uni_ext):
        table = {
            TOP: 1.0,
            Named(UNI + "ResearchProgram"): 0.0,
            S: 1.0,
            Named(UNI + "University"): 0.0,
            UE: 1.0,
        }
        for ce, expected in table.items():
            assert pos_cov(ce, uni_lp, uni_ext) == expected

    def test_metric_trail(self, uni_lp, uni_ext):
        ev = evaluate(S, uni_lp, uni_ext)
        assert (ev.accuracy, ev.f1) == (0.6, 0.6666666666666666)
        ev = evaluate(And((S, UE)), uni_lp, uni_ext)
        assert ev.accuracy == 0.8
        ev = evaluate(And((S, UE, Exists(UNI + "inProgram", TOP))), uni_lp, uni_ext)
        assert (ev.accuracy, ev.f1) == (1.0, 1.0)

    def test_shipped_file_matches_builder(self, uni_ontology):
        text = resources.files("dlforest.data").joinpath("university.ofn").read_text()
        assert parse_ontology(text) == uni_ontology

    def test_bird_file_parses(self, birds):
        text = resources.files("dlforest.data").joinpath("bird.ofn").read_text()
        assert parse_ontology(text) == birds
