import os
from pathlib import Path
from unittest.mock import patch

import pytest

from src.cli.table import NR_NEIGHBOURS, TOP_TEN
from src.lfunctions.zeros import zeros_filename
from src.pipeline import DEFAULT_ZERO_HEIGHT, RacePipeline


@pytest.fixture
def pipeline(tmp_path):
    """Pipeline with a temporary zero directory and a low zero height"""
    return RacePipeline(zeros_dir=str(tmp_path / "zeros"), zero_height=100.0)


def test_pipeline_defaults():
    """Test configuration from built-in defaults"""
    with patch.dict(os.environ, {}, clear=True), patch("src.pipeline.load_dotenv"):
        pipeline = RacePipeline()
        assert pipeline.zeros_dir is None
        assert pipeline.zero_height == DEFAULT_ZERO_HEIGHT
        assert pipeline.series_constant == 10.0


def test_pipeline_environment(tmp_path):
    """Test configuration from environment variables"""
    env = {
        "RACE_ZEROS_DIR": str(tmp_path),
        "RACE_ZERO_HEIGHT": "300",
        "RACE_QUAD_TARGET": "1e-8",
        "RACE_SERIES_CONSTANT": "4",
    }
    with patch.dict(os.environ, env, clear=True), patch("src.pipeline.load_dotenv"):
        pipeline = RacePipeline()
        assert pipeline.zeros_dir == str(tmp_path)
        assert pipeline.zero_height == 300.0
        assert pipeline.quad_target == 1e-8
        assert pipeline.series_constant == 4.0

        # Verify explicit arguments win
        assert RacePipeline(zero_height=150.0).zero_height == 150.0


def test_pipeline_rejects_bad_configuration():
    """Test invalid configuration values"""
    with patch.dict(os.environ, {"RACE_ZERO_HEIGHT": "tall"}, clear=True), patch("src.pipeline.load_dotenv"):
        with pytest.raises(ValueError):
            RacePipeline()
    with patch.dict(os.environ, {}, clear=True):
        with pytest.raises(ValueError):
            RacePipeline(zero_height=-1.0)
        with pytest.raises(ValueError):
            RacePipeline(quad_target=0.0)


def test_symmetric_and_complementary_races(pipeline):
    """Test the square-class shortcuts"""
    assert pipeline.density(9, 4, 1).value == 0.5
    assert pipeline.density(9, 2, 5).method == "symmetric"

    forward = pipeline.density(4, 3, 1)
    backward = pipeline.density(4, 1, 3)
    assert forward.value == pytest.approx(0.995928, abs=5e-5)
    assert backward.value == pytest.approx(1 - forward.value)
    assert (backward.a, backward.b) == (1, 3)

    with pytest.raises(ValueError):
        pipeline.density(4, 3, 7)
    with pytest.raises(ValueError):
        pipeline.density(4, 3, 1, method="magic")


def test_zero_files_are_cached(pipeline, tmp_path):
    """Test that found zeros are written and read back"""
    zeros = pipeline.zeros_for(5)
    assert sorted(zeros) == [2, 3, 4]
    for label in zeros:
        assert (tmp_path / "zeros" / zeros_filename(5, label)).exists()

    reloaded = RacePipeline(zeros_dir=str(tmp_path / "zeros"), zero_height=100.0).zeros_for(5)
    assert all(z.source == "file" for z in reloaded.values())
    assert reloaded[2].ordinates[0] == pytest.approx(zeros[2].ordinates[0], abs=1e-11)


def test_single_character_zeros(pipeline, tmp_path):
    """Test finding zeros for one character without the rest of its group"""
    zeros = pipeline.zeros_of(5, 4)
    assert zeros.conductor == 5
    assert [p.name for p in (tmp_path / "zeros").iterdir()] == [zeros_filename(5, 4)]
    assert pipeline.zeros_for(5)[4].ordinates[0] == pytest.approx(zeros.ordinates[0])

    with pytest.raises(ValueError):
        pipeline.zeros_of(5, 1)


def test_imprimitive_zero_lists(pipeline):
    """Test that imprimitive characters reuse the zeros of their primitive character"""
    zeros = pipeline.zeros_for(12)
    conductors = sorted(z.conductor for z in zeros.values())
    assert conductors == [3, 4, 12]
    by_conductor = {z.conductor: z for z in zeros.values()}
    assert by_conductor[4].ordinates[0] == pytest.approx(6.020948904697597, abs=1e-6)


def test_variance_is_cached(pipeline):
    """Test the variance cache"""
    first = pipeline.variance(24, 5, 1)
    assert pipeline.variance(24, 5, 1) is first
    assert pipeline.variance(24, 5, 1, method="zeros").V == pytest.approx(first.V, rel=1e-9)


def test_empirical_density(pipeline):
    """Test the empirical race through the pipeline"""
    value = pipeline.empirical_density(4, 3, 1, 1e5, 500)
    assert value >= 0.9
    assert pipeline.counter(4, 1e4) is pipeline.counter(4, 1e5)


@pytest.fixture(scope="module")
def published_pipeline(tmp_path_factory):
    """Pipeline finding zeros to the default height of 2500"""
    return RacePipeline(zeros_dir=str(tmp_path_factory.mktemp("zeros")), zero_height=DEFAULT_ZERO_HEIGHT)


@pytest.mark.slow
@pytest.mark.parametrize("q, a, b, published", TOP_TEN)
def test_top_ten_densities(published_pipeline, q, a, b, published):
    """Test the ten most biased races against their published densities"""
    result = published_pipeline.density(q, a, b, method="zeros")
    assert result.method == "zeros_quadrature"
    assert result.value == pytest.approx(published, abs=1e-5)


@pytest.mark.slow
@pytest.mark.parametrize("q", [151, 163])
def test_nonresidue_race_densities(published_pipeline, q):
    """Test delta(q;N,R) from the zeros of the quadratic character"""
    result = published_pipeline.density_NR(q, method="zeros")
    assert result.value == pytest.approx(NR_NEIGHBOURS[q], abs=1e-4)
    # Only the quadratic character needs zeros
    written = list(Path(published_pipeline.zeros_dir).glob(f"q{q}.chi*.txt"))
    assert len(written) == 1
