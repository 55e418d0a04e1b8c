import random

import pytest

from oracles import brute_instances

from dlforest.expr import And, Exists, MinCard, Named, Not, TOP
from dlforest.fixtures import UNI, random_expression, random_ontology
from dlforest.model import Ontology, validate_ontology
from dlforest.reasoner import (
    UnknownEntityError,
    instances_of,
    materialize,
)

S = Named(UNI + "Student")
UE = Named(UNI + "UniversityEmployee")
IN_PROGRAM = UNI + "inProgram"


class TestMaterialize:
    def test_thing_covers_all_eleven(self, uni_ext):
        assert len(instances_of(TOP, uni_ext)) == 11
        assert instances_of(TOP, uni_ext) == uni_ext.all_individuals

    def test_subclass_propagation(self):
        p = "http://example.org/t#"
        o = validate_ontology(
            Ontology(
                classes=frozenset({p + "A", p + "B"}),
                properties=frozenset(),
                individuals=frozenset({p + "x"}),
                subclass_axioms=frozenset({(p + "A", p + "B")}),
                class_assertions=frozenset({(p + "x", p + "A")}),
                prefix=p,
            )
        )
        _, ext = materialize(o)
        assert p + "x" in ext.instances[p + "B"]

    def test_no_assertions_means_empty_extensions(self):
        p = "http://example.org/t#"
        o = Ontology(
            classes=frozenset({p + "A"}),
            properties=frozenset(),
            individuals=frozenset({p + "x"}),
            prefix=p,
        )
        _, ext = materialize(o)
        assert ext.instances[p + "A"] == frozenset()

    def test_hierarchy_top_level_and_leaves(self, uni_hierarchy):
        # flat fixture: every class is both top-level and a leaf
        assert uni_hierarchy.top_level == frozenset(uni_hierarchy.classes)
        assert uni_hierarchy.leaves == frozenset(uni_hierarchy.classes)


class TestInstancesOf:
    def test_target_extension_is_exactly_the_positives(self, uni_ext, uni_lp):
        target = And((S, UE, Exists(IN_PROGRAM, TOP)))
        assert instances_of(target, uni_ext) == uni_lp.positives

    def test_not_top_is_empty(self, uni_ext):
        assert instances_of(Not(TOP), uni_ext) == frozenset()

    def test_unknown_entity(self, uni_ext):
        with pytest.raises(UnknownEntityError):
            instances_of(Named("http://example.org/uni#Ghost"), uni_ext)
        with pytest.raises(UnknownEntityError):
            instances_of(Exists("http://example.org/uni#ghostProp", TOP), uni_ext)

    def test_agrees_with_per_individual_oracle(self):
        rng = random.Random(171)
        o = random_ontology(rng, n_individuals=20)
        _, ext = materialize(o)
        for _ in range(200):
            ce = random_expression(rng, o)
            assert instances_of(ce, ext) == brute_instances(o, ce), ce

    def test_monotonicity_of_conjunction(self):
        rng = random.Random(5)
        o = random_ontology(rng)
        _, ext = materialize(o)
        for _ in range(200):
            c = random_expression(rng, o)
            d = random_expression(rng, o)
            both = instances_of(And((c, d)), ext)
            assert both <= instances_of(c, ext)

    def test_complement_partition(self):
        rng = random.Random(6)
        o = random_ontology(rng)
        _, ext = materialize(o)
        for _ in range(200):
            c = random_expression(rng, o)
            inside = instances_of(c, ext)
            outside = instances_of(Not(c), ext)
            assert inside | outside == ext.all_individuals
            assert not inside & outside

    def test_forall_exists_duality(self):
        from dlforest.expr import ForAll

        rng = random.Random(7)
        o = random_ontology(rng)
        _, ext = materialize(o)
        props = sorted(o.properties)
        for _ in range(200):
            c = random_expression(rng, o)
            r = rng.choice(props)
            forall = instances_of(ForAll(r, c), ext)
            dual = instances_of(Not(Exists(r, Not(c))), ext)
            assert forall == dual

    def test_min_card_one_equals_exists(self):
        rng = random.Random(8)
        o = random_ontology(rng)
        _, ext = materialize(o)
        props = sorted(o.properties)
        for _ in range(200):
            c = random_expression(rng, o)
            r = rng.choice(props)
            assert instances_of(MinCard(1, r, c), ext) == instances_of(Exists(r, c), ext)


class TestBackends:
    def test_backends_agree(self):
        rng = random.Random(55)
        for _ in range(10):
            o = random_ontology(rng, n_individuals=rng.randint(1, 80))
            hierarchy, compiled = materialize(o, backend="compiled")
            _, pure = materialize(o, backend="pure")
            if compiled.backend_name != "compiled":
                pytest.skip("compiled kernel not built")
            for _ in range(40):
                ce = random_expression(rng, o)
                assert compiled.instance_set(ce) == pure.instance_set(ce)

    def test_cache_eviction_budget(self):
        rng = random.Random(56)
        o = random_ontology(rng)
        _, ext = materialize(o, cache_size=4)
        for _ in range(50):
            instances_of(random_expression(rng, o), ext)
        assert len(ext._cache) <= 4

    def test_cached_result_is_shared(self, uni_ext):
        a = instances_of(S, uni_ext)
        b = instances_of(S, uni_ext)
        assert a is b

    def test_concurrent_instance_checks(self):
        from concurrent.futures import ThreadPoolExecutor

        rng = random.Random(57)
        o = random_ontology(rng, n_individuals=30)
        _, ext = materialize(o, cache_size=16)
        exprs = [random_expression(random.Random(i), o) for i in range(120)]
        expected = [instances_of(ce, materialize(o)[1]) for ce in exprs]
        with ThreadPoolExecutor(max_workers=8) as pool:
            got = list(pool.map(lambda ce: instances_of(ce, ext), exprs))
        assert got == expected
