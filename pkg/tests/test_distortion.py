"""Embedding maps, distortion and the two reference embeddings."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from embedlab.common.errors import DimensionError, ValidationError
from embedlab.embeddings import (
    EmbeddingMap,
    NormTag,
    baseline_vectors,
    distortion,
    frechet_embedding,
    normalize,
    same_distortion,
    simplex_embedding,
)
from embedlab.metric import PointM, SpaceLabel, TruncatedSpace, build_truncation


class TestNormTag:
    def test_parse(self):
        assert NormTag.parse("L1") is NormTag.L1
        assert NormTag.parse(" linf ") is NormTag.LINF
        assert NormTag.parse(NormTag.L2) is NormTag.L2

    def test_unknown(self):
        with pytest.raises(ValidationError):
            NormTag.parse("l3")

    def test_rowwise(self):
        diffs = np.array([[3, -4], [0, 0]])
        assert NormTag.L1.rowwise(diffs).tolist() == [7, 0]
        assert NormTag.LINF.rowwise(diffs).tolist() == [4, 0]
        assert NormTag.L2.rowwise(diffs).tolist() == [5.0, 0.0]

    def test_exact_l2_refused(self):
        with pytest.raises(ValidationError):
            NormTag.L2.exact([Fraction(1), Fraction(1)])


class TestEmbeddingMap:
    def test_shape_checks(self, m3):
        with pytest.raises(DimensionError):
            EmbeddingMap(m3, NormTag.L1, np.zeros((3, 2)))
        with pytest.raises(DimensionError):
            EmbeddingMap(m3, NormTag.L1, np.zeros(len(m3)))

    def test_vectors_are_frozen(self, m3):
        f = simplex_embedding(m3)
        with pytest.raises(ValueError):
            f.vectors[0, 0] = 5

    def test_exactness(self, m3):
        assert frechet_embedding(m3).is_exact
        assert not EmbeddingMap(m3, NormTag.L1, np.zeros((len(m3), 1))).is_exact
        assert not EmbeddingMap(m3, NormTag.L2, np.eye(len(m3), dtype=int)).is_exact

    def test_rooted(self, m3):
        f = frechet_embedding(m3).rooted()
        assert not f.image(PointM.root()).any()

    def test_document(self, m3):
        f = frechet_embedding(m3)
        doc = f.to_dict()
        assert doc["target"] == "linf"
        assert doc["dim"] == len(m3)
        assert doc["vectors"]["root"] == m3.dist[0].tolist()
        back = EmbeddingMap.from_document(m3, doc)
        assert np.array_equal(back.vectors, f.vectors)

    @pytest.mark.parametrize("image", [["abc"], ["1/0"], "1", [[1, 2]]])
    def test_document_bad_coordinates(self, m3, image):
        doc = frechet_embedding(m3).to_dict()
        doc["vectors"]["root"] = image
        with pytest.raises(ValidationError):
            EmbeddingMap.from_document(m3, doc)

    def test_document_ragged_images(self, m3):
        doc = frechet_embedding(m3).to_dict()
        doc["vectors"]["root"] = [0]
        with pytest.raises(DimensionError):
            EmbeddingMap.from_document(m3, doc)

    def test_document_missing_point(self, m3):
        doc = frechet_embedding(m3).to_dict()
        del doc["vectors"]["{1,2}"]
        with pytest.raises(DimensionError):
            EmbeddingMap.from_document(m3, doc)


# ---------------------------------------------------------------------------
# Distortion
# ---------------------------------------------------------------------------


class TestDistortion:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_frechet_is_isometric(self, n):
        result = distortion(frechet_embedding(build_truncation(n)))
        assert (result.c1, result.c2, result.dist) == (1, 1, 1)
        assert isinstance(result.dist, Fraction)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_simplex_has_distortion_four(self, n):
        result = distortion(simplex_embedding(build_truncation(n)))
        assert (result.c1, result.c2, result.dist) == (1, 4, 4)

    def test_simplex_in_l2_float_path(self, m3):
        f = EmbeddingMap(m3, NormTag.L2, 2.0 * np.eye(len(m3)))
        result = distortion(f)
        assert isinstance(result.dist, float)
        assert same_distortion(result.dist, 4)
        assert result.c1 == pytest.approx(2**0.5 / 2)

    def test_fraction_vectors(self, m3):
        f = frechet_embedding(m3).scaled(Fraction(1, 3))
        assert f.vectors.dtype == object
        result = distortion(f)
        assert result.c1 == Fraction(1, 3)
        assert result.dist == 1

    def test_collapse(self, m3):
        vectors = np.array(m3.dist, dtype=np.int64)
        vectors[1] = vectors[0]
        result = distortion(EmbeddingMap(m3, NormTag.LINF, vectors))
        assert result.collapsed
        assert result.to_dict()["dist"] == "inf"

    def test_needs_two_points(self):
        single = TruncatedSpace(n=0, points=(PointM.root(),), dist=[[0]], label=SpaceLabel.M)
        with pytest.raises(ValidationError):
            distortion(EmbeddingMap(single, NormTag.L1, np.zeros((1, 1))))

    @given(factor=st.integers(min_value=1, max_value=50), n=st.integers(min_value=2, max_value=4))
    @settings(max_examples=30, deadline=None)
    def test_scale_invariant(self, factor, n):
        f = simplex_embedding(build_truncation(n))
        assert distortion(f.scaled(factor)).dist == distortion(f).dist

    @given(st.lists(st.floats(min_value=-5, max_value=5), min_size=4, max_size=4))
    @settings(max_examples=30, deadline=None)
    def test_translation_invariant(self, offset):
        space = build_truncation(2)
        rng = np.random.default_rng(1)
        f = EmbeddingMap(space, NormTag.L1, rng.standard_normal((len(space), 4)))
        assert same_distortion(distortion(f.translated(offset)).dist, distortion(f).dist)


class TestNormalize:
    def test_root_at_zero_and_unit_c1(self, m3):
        f = normalize(frechet_embedding(m3).scaled(3))
        assert not f.image(PointM.root()).any()
        assert distortion(f).c1 == 1

    def test_float_map(self, m3):
        rng = np.random.default_rng(0)
        f = normalize(EmbeddingMap(m3, NormTag.L2, rng.standard_normal((len(m3), 5))))
        assert distortion(f).c1 == pytest.approx(1.0)

    def test_collapsed_map(self, m3):
        with pytest.raises(ValidationError):
            normalize(EmbeddingMap(m3, NormTag.L1, np.zeros((len(m3), 2), dtype=int)))


class TestBaselines:
    def test_padding(self, m3):
        start = baseline_vectors(m3, NormTag.L1, 2 * len(m3))
        assert start.shape == (len(m3), 2 * len(m3))
        assert not start[:, len(m3):].any()

    def test_linf_uses_frechet(self, m3):
        start = baseline_vectors(m3, NormTag.LINF, len(m3))
        assert np.array_equal(start, m3.dist.astype(float))

    def test_too_few_coordinates(self, m3):
        assert baseline_vectors(m3, NormTag.L1, len(m3) - 1) is None
