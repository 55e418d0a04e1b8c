import random

from dlforest.expr import (
    And,
    Exists,
    MinCard,
    Named,
    Not,
    TOP,
    length,
    render,
)
from dlforest.fixtures import BIRD, UNI, random_expression, random_ontology
from dlforest.reasoner import instances_of, materialize
from dlforest.refinement import RefinementConfig, refine_down, refine_up

S = Named(UNI + "Student")
UE = Named(UNI + "UniversityEmployee")


class TestRefineDownFixture:
    def test_top_at_length_one_gives_the_named_classes(self, uni_hierarchy):
        got = refine_down(TOP, 1, uni_hierarchy)
        assert got == [
            Named(UNI + "ResearchProgram"),
            S,
            Named(UNI + "University"),
            UE,
        ]

    def test_student_at_length_one_is_empty(self, uni_hierarchy):
        assert refine_down(S, 1, uni_hierarchy) == []

    def test_student_at_length_two_is_empty(self, uni_hierarchy):
        assert refine_down(S, 2, uni_hierarchy) == []

    def test_student_at_length_three_contains_trace_refinements(self, uni_hierarchy):
        got = refine_down(S, 3, uni_hierarchy)
        assert And((S, S)) in got
        assert And((S, UE)) in got

    def test_length_bound_respected(self, uni_hierarchy):
        rng = random.Random(3)
        o = random_ontology(rng)
        hierarchy, _ = materialize(o)
        for _ in range(200):
            ce = random_expression(rng, o)
            bound = rng.randint(1, 9)
            for r in refine_down(ce, bound, hierarchy):
                assert length(r) <= bound

    def test_deterministic(self, uni_hierarchy):
        a = refine_down(And((S, UE)), 7, uni_hierarchy)
        b = refine_down(And((S, UE)), 7, uni_hierarchy)
        assert a == b

    def test_feature_toggles(self, uni_hierarchy):
        cfg = RefinementConfig(
            use_negation=False, use_all_restriction=False, use_cardinality=False
        )
        got = refine_down(TOP, 4, uni_hierarchy, cfg)
        assert all(not isinstance(r, Not) for r in got)
        assert all(not isinstance(r, MinCard) for r in got)
        renders = [render(r) for r in got]
        assert "inProgram some Thing" in renders
        assert "inProgram only Thing" not in renders

    def test_cardinality_cap(self, uni_hierarchy):
        cfg = RefinementConfig(max_cardinality=3)
        ce = MinCard(3, UNI + "inProgram", TOP)
        got = refine_down(ce, 10, uni_hierarchy, cfg)
        assert MinCard(4, UNI + "inProgram", TOP) not in got


class TestDownwardSoundness:
    def test_extension_never_grows(self):
        rng = random.Random(1700)
        applications = 0
        while applications < 300:
            o = random_ontology(rng, n_individuals=rng.randint(4, 16))
            hierarchy, ext = materialize(o)
            for _ in range(10):
                ce = random_expression(rng, o)
                parent_ext = instances_of(ce, ext)
                for r in refine_down(ce, length(ce) + 4, hierarchy):
                    assert instances_of(r, ext) <= parent_ext, (ce, r)
                applications += 1


class TestBirdExamples:
    def test_negated_leaf_refinement(self, birds):
        hierarchy, _ = materialize(birds)
        bird = Named(BIRD + "Bird")
        got = refine_down(bird, 5, hierarchy)
        assert And((bird, Not(Named(BIRD + "Aquatic")))) in got

    def test_feature_restriction_reachable_in_two_steps(self, birds):
        # one application yields Bird and (hasFeature some Thing); refining
        # that filler reaches Bird and (hasFeature some Fly)
        hierarchy, _ = materialize(birds)
        bird = Named(BIRD + "Bird")
        step_one = refine_down(bird, 5, hierarchy)
        bridge = And((bird, Exists(BIRD + "hasFeature", TOP)))
        assert bridge in step_one
        step_two = refine_down(bridge, 5, hierarchy)
        assert And((bird, Exists(BIRD + "hasFeature", Named(BIRD + "Fly")))) in step_two


class TestRefineUp:
    def test_drop_conjunct(self, birds):
        hierarchy, _ = materialize(birds)
        birds_and_carnivore = And((Named(BIRD + "Bird"), Named(BIRD + "Carnivore")))
        assert Named(BIRD + "Bird") in refine_up(birds_and_carnivore, hierarchy)

    def test_top_has_no_generalization(self, uni_hierarchy):
        assert refine_up(TOP, uni_hierarchy) == []

    def test_cardinality_relaxation(self, uni_hierarchy):
        got = refine_up(MinCard(2, UNI + "inProgram", TOP), uni_hierarchy)
        assert MinCard(1, UNI + "inProgram", TOP) in got

    def test_named_generalizes_to_top(self, uni_hierarchy):
        assert TOP in refine_up(S, uni_hierarchy)
