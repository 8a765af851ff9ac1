import numpy as np
import pytest

from attachpy.distributions.distributions import DegreeDistribution, boost, build_broken_power_law
from attachpy.distributions.empirical import RawHistogram, load_empirical
from attachpy.exceptions import EmptyInputError, InvalidParameterError, MissingRateError, NormalizationError
from attachpy.formats.formats import (
    format_report,
    format_value,
    parse_value,
    read_attachment,
    read_distribution,
    read_edge_list,
    read_histogram,
    read_summary,
    write_attachment,
    write_distribution,
    write_edge_list,
    write_histogram,
    write_summary,
)
from attachpy.inversion.inversion import AttachmentFunction, ModelRate, invert
from attachpy.simulator.graph import GrowthGraph


def test_format_value():
    assert format_value(True) == "true"
    assert format_value(np.int64(3)) == "3"
    assert format_value(0.1) == "0.1"
    assert format_value(frozenset({3, 1})) == "1,3"
    assert format_value("chung_lu") == "chung_lu"
    assert parse_value("3") == 3
    assert parse_value("0.25") == 0.25
    assert parse_value("geometric") == "geometric"


def test_format_report():
    assert format_report({"p": 0.5, "pass": True}) == "p=0.5\npass=true\n"


def test_distribution_file(tmp_path):
    dist = boost(build_broken_power_law(2.1, 4.0, 1.0, 1.0, 100, d_max=1000), 20, 5.0)
    path = tmp_path / "target.dist"
    write_distribution(path, dist)
    text = path.read_text()
    assert text.startswith("# source=broken_power_law\n# alpha1=2.1\n")
    assert "\n1\t" in text
    loaded = read_distribution(path)
    np.testing.assert_array_equal(loaded.pmf, dist.pmf)
    assert loaded.source == "broken_power_law"
    assert loaded.parameters == dist.parameters


def test_distribution_file_interpolated(tmp_path):
    dist = load_empirical(RawHistogram({1: 100, 4: 100 / 64}))
    path = tmp_path / "empirical.dist"
    write_distribution(path, dist)
    loaded = read_distribution(path)
    assert loaded.interpolated_degrees == frozenset({2, 3})
    assert loaded.parameters == {"nodes": dist.parameters["nodes"]}


def test_distribution_without_metadata(tmp_path):
    path = tmp_path / "plain.dist"
    path.write_text("1\t0.5\n3\t0.5\n")
    dist = read_distribution(path)
    np.testing.assert_array_equal(dist.pmf, [0.5, 0.0, 0.5])
    assert dist.source == "unknown"


def test_distribution_file_errors(tmp_path):
    path = tmp_path / "bad.dist"
    path.write_text("1\t0.5\n2\t0.4\n")
    with pytest.raises(NormalizationError):
        read_distribution(path)
    path.write_text("# source=empty\n")
    with pytest.raises(EmptyInputError):
        read_distribution(path)
    path.write_text("1\t0.5\n1\t0.5\n")
    with pytest.raises(InvalidParameterError):
        read_distribution(path)


def test_histogram_file(tmp_path):
    path = tmp_path / "observed.hist"
    write_histogram(path, RawHistogram({1: 10, 5: 2}))
    assert read_histogram(path).counts == {1: 10, 5: 2}
    graph = GrowthGraph.from_edges([(0, 1), (1, 2)])
    write_histogram(path, graph)
    assert path.read_text() == "# nodes=3\n# edges=2\n1\t2\n2\t1\n"
    assert read_histogram(path).counts == {1: 2, 2: 1}


def test_histogram_file_errors(tmp_path):
    path = tmp_path / "bad.hist"
    path.write_text("1.5\t3\n")
    with pytest.raises(InvalidParameterError):
        read_histogram(path)
    path.write_text("1\t3\n2\n")
    with pytest.raises(InvalidParameterError):
        read_histogram(path)


def test_attachment_file(tmp_path):
    dist = DegreeDistribution([0.5, 0.25, 0.25], source="test")
    f = invert(dist)
    path = tmp_path / "target.attach"
    write_attachment(path, f, ModelRate.from_p(0.8))
    f_loaded, rate = read_attachment(path)
    np.testing.assert_array_equal(f_loaded.values, f.values)
    assert f_loaded.provenance == "inverted from test"
    assert rate.p == 0.8
    assert rate.mean_degree == 2.5


def test_attachment_file_without_rate(tmp_path):
    path = tmp_path / "plain.attach"
    write_attachment(path, AttachmentFunction([1.0, 0.0]))
    with pytest.raises(MissingRateError):
        read_attachment(path)
    f, rate = read_attachment(path, require_rate=False)
    assert rate is None
    assert f.d_max == 2


def test_edge_list_file(tmp_path):
    graph = GrowthGraph.from_edges([(0, 1), (1, 2), (2, 2)])
    path = tmp_path / "run.edges"
    write_edge_list(path, graph)
    assert path.read_text() == "0 1\n1 2\n2 2\n"
    loaded = read_edge_list(path)
    np.testing.assert_array_equal(loaded.edges, graph.edges)
    np.testing.assert_array_equal(loaded.degree, graph.degree)


def test_summary_file(tmp_path):
    path = tmp_path / "run.summary"
    summary = {"nodes": 10, "p": 0.5, "seed": 42}
    write_summary(path, summary)
    assert read_summary(path) == summary


@pytest.mark.parametrize(
    "reader, text",
    [
        (read_histogram, "1\t10\nabc\t3\n"),
        (read_histogram, "1\tmany\n"),
        (read_distribution, "# source=test\nx\t0.5\n2\t0.5\n"),
        (read_distribution, "1\t0.5\n2\thalf\n"),
        (read_attachment, "# p=0.5\n1\t1\ntwo\t0\n"),
        (read_edge_list, "0 1\n1 b\n"),
    ],
)
def test_non_numeric_lines(tmp_path, reader, text):
    path = tmp_path / "broken.txt"
    path.write_text(text)
    with pytest.raises(InvalidParameterError, match="non-numeric"):
        reader(path)


def test_non_numeric_line_is_located(tmp_path):
    path = tmp_path / "observed.hist"
    path.write_text("# nodes=13\n1\t10\nabc\t3\n")
    with pytest.raises(InvalidParameterError, match="data line 2 has non-numeric degree 'abc'"):
        read_histogram(path)


@pytest.mark.parametrize(
    "reader, text",
    [
        (read_distribution, "1\t0.5\n2.7\t0.5\n"),
        (read_attachment, "# p=0.5\n1\t1\n1.5\t0\n"),
        (read_histogram, "1\t3\n2.5\t1\n"),
        (read_edge_list, "0 1\n1 2.5\n"),
    ],
)
def test_fractional_degrees(tmp_path, reader, text):
    path = tmp_path / "fractional.txt"
    path.write_text(text)
    with pytest.raises(InvalidParameterError, match="must be integers"):
        reader(path)


def test_non_numeric_metadata(tmp_path):
    path = tmp_path / "target.attach"
    path.write_text("# p=half\n1\t1\n2\t0\n")
    with pytest.raises(InvalidParameterError, match="metadata p"):
        read_attachment(path)
    path = tmp_path / "target.dist"
    path.write_text("# interpolated_degrees=2,x\n1\t0.5\n2\t0.5\n")
    with pytest.raises(InvalidParameterError, match="metadata interpolated_degrees"):
        read_distribution(path)


def test_not_utf8(tmp_path):
    path = tmp_path / "binary.dist"
    path.write_bytes(b"1\t0.5\n\xff\xfe\t0.5\n")
    with pytest.raises(InvalidParameterError):
        read_distribution(path)
