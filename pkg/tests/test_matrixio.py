import numpy as np
import pytest

from kreinspec.matrixio import MatrixFileError, format_complex, format_matrix, parse_complex, parse_matrix, read_matrix


@pytest.mark.parametrize(
    "text,value",
    [
        ("0.5+0.3i", 0.5 + 0.3j),
        ("1", 1),
        ("-2i", -2j),
        ("i", 1j),
        ("-i", -1j),
        ("1+i", 1 + 1j),
        ("1e-3-2e-1j", 0.001 - 0.2j),
        (".5", 0.5),
        ("+3.", 3),
    ],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["inf", "nan", "1+", "abc", "1i2", "", "--1"])
def test_parse_complex_rejects(text):
    with pytest.raises(MatrixFileError):
        parse_complex(text)


def test_format_keeps_signed_zero():
    assert format_complex(complex(1.0, -0.0)) == "1.0-0.0i"
    assert format_complex(2j) == "0.0+2.0i"


def test_parse_matrix_with_comments():
    m = parse_matrix("# header\n\ndim 2\n1 0.5+0.3i  # row one\n-2i i\n")
    np.testing.assert_array_equal(m, [[1, 0.5 + 0.3j], [-2j, 1j]])


@pytest.mark.parametrize(
    "text,msg",
    [
        ("1 2\n3 4\n", "dim N"),
        ("dim x\n", "bad dimension"),
        ("dim 0\n", "positive"),
        ("dim 2\n1 2\n3\n", "expected 2 entries"),
        ("dim 2\n1 2\n", "expected 2 rows"),
        ("dim 1\nfoo\n", "cannot parse"),
        ("# only a comment\n", "missing"),
    ],
)
def test_parse_matrix_errors(text, msg):
    with pytest.raises(MatrixFileError, match=msg):
        parse_matrix(text)


def test_roundtrip_bit_identical(rng):
    m = (rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))) * 10.0 ** rng.integers(-300, 300, (5, 5))
    m[0, 0] = complex(-0.0, -0.0)
    back = parse_matrix(format_matrix(m, "comment\nsecond line"))
    assert back.tobytes() == m.tobytes()


def test_read_missing_file(tmp_path):
    with pytest.raises(MatrixFileError, match="cannot read"):
        read_matrix(tmp_path / "absent.txt")
