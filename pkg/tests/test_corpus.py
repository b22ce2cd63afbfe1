from fractions import Fraction

import pytest

from herzlab.corpus import (
    generate_corpus,
    load_corpus,
    quadratic_shell_family,
    random_grid_functions,
    random_step_functions,
    record_to_object,
    save_corpus,
    shell_trace_sequence,
)
from herzlab.herz import AnnulusMeasureSequence
from herzlab.operators import GridFunction1D
from herzlab.rearrange import RadialStepFunction


class TestRoundTrip:
    def test_radial_step(self, two_shell, tmp_path):
        path = tmp_path / "c.json"
        save_corpus([two_shell], path)
        (back,) = load_corpus(path)
        assert back == two_shell

    def test_non_dyadic_radii_kept_exact(self, tmp_path):
        f = quadratic_shell_family(5)
        path = tmp_path / "shells.json"
        save_corpus([f], path)
        (back,) = load_corpus(path)
        assert back == f
        assert Fraction(2) ** 3 - Fraction(1, 9) in back.breakpoints

    def test_grid_function(self, tmp_path):
        f = random_grid_functions(1, seed=5, n_cells=64)[0]
        path = tmp_path / "g.json"
        save_corpus([f], path)
        (back,) = load_corpus(path)
        assert back == f

    def test_annulus_trace(self, tmp_path):
        m = shell_trace_sequence(6)
        path = tmp_path / "m.json"
        save_corpus([m], path)
        (back,) = load_corpus(path)
        assert back == m

    def test_reader_rejects_nonincreasing_breakpoints(self):
        rec = {"type": "radial_step", "dim": 1, "breakpoints": [0, 2, 1], "values": [1, 1]}
        with pytest.raises(ValueError):
            record_to_object(rec)

    def test_reader_rejects_unknown_type(self):
        with pytest.raises(ValueError):
            record_to_object({"type": "mystery"})

    def test_grid_cell_count_must_match(self):
        rec = {"type": "grid1d", "half_width": 1.0, "cells": 4, "values": [1.0, 2.0]}
        with pytest.raises(ValueError):
            record_to_object(rec)


class TestGenerators:
    def test_deterministic_bytes(self, tmp_path):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        save_corpus(generate_corpus("random-step", 10, seed=7), p1)
        save_corpus(generate_corpus("random-step", 10, seed=7), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_seed_changes_content(self):
        a = generate_corpus("random-step", 5, seed=1)
        b = generate_corpus("random-step", 5, seed=2)
        assert a != b

    def test_characteristic_measures(self):
        objs = generate_corpus("characteristic", 3, seed=0, measures=[0.25, 1.0, 9.0])
        assert all(isinstance(o, RadialStepFunction) for o in objs)
        assert [float(o.support_measure()) for o in objs] == [0.25, 1.0, 9.0]

    def test_quadratic_shell_kind(self):
        family, trace = generate_corpus("shells", 5, seed=0, quadratic_shells=True)
        assert isinstance(family, RadialStepFunction)
        assert isinstance(trace, AnnulusMeasureSequence)
        assert trace.measure(3) == Fraction(2, 9)
        # shell u has measure 2/u^2 exactly
        assert family.support_measure() == sum(Fraction(2, u * u) for u in range(1, 6))

    def test_grid_kind(self):
        objs = generate_corpus("grid", 3, seed=4, n_cells=128)
        assert all(isinstance(o, GridFunction1D) for o in objs)
        assert all(o.n_cells == 128 for o in objs)

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            generate_corpus("nope", 1, seed=0)

    def test_step_functions_are_valid(self):
        for f in random_step_functions(30, seed=11):
            assert f.breakpoints[0] == 0
            assert all(b < c for b, c in zip(f.breakpoints, f.breakpoints[1:]))
