import pytest

from mixwitt import InvalidLabel, Stratum
from mixwitt.core.mixed import MixedElement
from mixwitt.core.quat import QuaternionAlgebra
from mixwitt.core.signpol import SpectrumLabel, ideal_membership, spectrum_report, subring_spectrum_report

@pytest.mark.parametrize("primes", [[], [3], [3, 5, 7]])
def test_label_count(test_algebra, primes):
    report = spectrum_report(test_algebra, primes)
    n_orderings = len({point.ordering for point in report.x_tilde})
    assert report.n_labels == 1 + 2 * n_orderings * (1 + len(primes))
    assert report.x_tilde_size == 2 * n_orderings
    assert sum(fiber.size for fiber in report.fibers) == report.n_labels
    assert report.finite_discrete

def test_no_orderings(gaussian):
    Q = QuaternionAlgebra.of(gaussian, -1, -1)
    report = spectrum_report(Q, [3])
    assert report.labels == [SpectrumLabel.fundamental()]
    assert report.x_tilde_size == 0

def test_double_cover_sqrt2(theta_algebra):
    report = spectrum_report(theta_algebra)
    assert report.x_tilde_size == 4
    strata = {(point.ordering, point.eta): point.stratum for point in report.x_tilde}
    assert strata[(0, 1)] == Stratum.NONSPLIT
    assert strata[(1, -1)] == Stratum.SPLIT
    assert [str(label) for label in report.labels] == ["I", "I(P0,0,+1)", "I(P0,0,-1)", "I(P1,0,+1)", "I(P1,0,-1)"]

@pytest.mark.parametrize("eps, expected", [(1, ["I", "I(P0,0)", "I(P1,0,+1)", "I(P1,0,-1)"]), (-1, ["I", "I(P0,0,+1)", "I(P0,0,-1)", "I(P1,0)"])])
def test_subring_spectrum(theta_algebra, eps, expected):
    report = subring_spectrum_report(theta_algebra, eps)
    assert [str(label) for label in report.labels] == expected
    assert report.x_tilde_size == 3

def test_report_is_versioned(hamilton):
    data = spectrum_report(hamilton, [3]).model_dump(mode="json")
    assert data["mixwitt_version"]
    assert data["primes"] == [3]
    assert data["algebra"] == "(-1, -1)"

@pytest.mark.parametrize("primes", [[0], [2], [9], [3, 4]])
def test_invalid_primes(hamilton, primes):
    with pytest.raises(InvalidLabel):
        spectrum_report(hamilton, primes)

@pytest.mark.parametrize("p, eta", [(2, 1), (4, 1), (3, 0), (-3, 1)])
def test_invalid_label(p, eta):
    with pytest.raises(InvalidLabel):
        SpectrumLabel.at(0, p, eta)

def test_ideal_membership(hamilton):
    herm = MixedElement.make(hamilton, herm=[1])
    mixed = MixedElement.make(hamilton, scalar=[1], herm=[1])
    fundamental = SpectrumLabel.fundamental()
    assert ideal_membership(herm, fundamental)
    assert not ideal_membership(mixed, fundamental)
    assert not ideal_membership(herm, SpectrumLabel.at(0, 0, 1))
    assert ideal_membership(mixed, SpectrumLabel.at(0, 3, 1))  # signature 3
    assert not ideal_membership(mixed, SpectrumLabel.at(0, 3, -1))  # signature -1
    assert ideal_membership(MixedElement.make(hamilton, scalar=[1, -1]), SpectrumLabel.at(0, 0, -1))
    with pytest.raises(InvalidLabel):
        ideal_membership(herm, SpectrumLabel.at(4, 0, 1))
