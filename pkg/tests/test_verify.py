import pytest

from gsp4_lfactors.errors import InputError
from gsp4_lfactors.verify import CRITERIA, expected_witnesses, inject_fault, run_verification
from oracles import PAPER_ANISOTROPIC, PAPER_EXTENDED_SK

SMALL = dict(per_row=10, twist_per_row=5, poles_per_type=4, packets_per_row=3)


def small(seed=0):
    return run_verification(seed, **SMALL)


def test_small_run_passes_every_criterion():
    report = small()
    assert report.ok, [str(f) for f in report.failures]
    assert set(report.checks) == set(CRITERIA)
    assert all(report.checks[c] > 0 for c in CRITERIA)
    assert report.summary() == f"all {report.total} checks passed"


def test_seed_reproduces_the_run():
    assert small(7).to_dict() == small(7).to_dict()


def test_expected_witnesses():
    # Extended-SK types that admit an anisotropic model.
    expected = {t for t in PAPER_EXTENDED_SK if PAPER_ANISOTROPIC[t] is not None}
    assert expected_witnesses() == expected == {"IIb", "Vb", "Vc", "Vd", "VIb", "XIb", "Va*", "XIa*"}


@pytest.mark.parametrize("spec, row", [
    ("VIb", "VIb"),
    ("anisotropic:IIa", "IIa"),
    ("full:Vd", "Vd"),
    ("exceptional_mu:Vc", "Vc"),
    ("h_functionals:XIb", "XIb"),
    ("full:XIa*", "XIa*"),
])
def test_injected_fault_is_caught_and_named(spec, row):
    with inject_fault(spec):
        report = small()
    assert not report.ok
    assert row in {f.row for f in report.failures}
    assert row in report.summary().partition("rows: ")[2].split(", ")
    # The patch is undone afterwards.
    assert small().ok


def test_fault_spec_errors():
    with pytest.raises(InputError, match="unknown table"):
        with inject_fault("nope:VIb"):
            pass
    with pytest.raises(InputError, match="no row"):
        with inject_fault("full:XII"):
            pass
    with pytest.raises(InputError, match="no entry"):
        with inject_fault("full:IVd"):
            pass
