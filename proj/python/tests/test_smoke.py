import math

import pytest

import gapchannel

MASTER = "kind = master-solve\nOmega = 1\nOmega0 = 0.8\nomega = 0.5\nJa = 0.05\nd = 3\nT = 100\n"


def test_master_run_conserves_occupation():
    res = gapchannel.run(MASTER)
    assert res["columns"][:3] == ["t", "n_S", "n_R"]
    for s, r in zip(gapchannel.column(res, "n_S"), gapchannel.column(res, "n_R")):
        assert s + r == pytest.approx(1.0)
    assert res["metadata"]["kind"] == "master-solve"


def test_csv_is_deterministic():
    assert gapchannel.format_csv(MASTER) == gapchannel.format_csv(MASTER)
    assert gapchannel.format_csv(MASTER).startswith("# {")


def test_coefficients():
    c = gapchannel.master_coefficients(1.0, 0.2, 0.5, 9)
    assert c["regime"] == "resonant"
    assert c["x0"] == pytest.approx(1.12091001, rel=1e-7)
    assert abs(c["y0"]) < 1e-9


def test_frequency_residue_matches_quadrature():
    quad, res, branch = gapchannel.oscillation_frequency(1.0, 0.7, 0.5, 4, 0.05)
    assert res == pytest.approx(quad, rel=1e-6)
    assert branch != "printed"


def test_small_harmonic_run():
    res = gapchannel.run(
        "kind = harmonic-evolve\nN = 20\nOmega = 1\nOmega0 = 0.3\nomega = 0.5\nJa = 0.05\nmS = 1\nmR = 4\nT = 20\n"
    )
    energy = gapchannel.column(res, "energy")
    assert max(abs(e - energy[0]) for e in energy) < 1e-9 * abs(energy[0])


def test_config_errors_raise():
    with pytest.raises(gapchannel.ConfigError, match="line 5"):
        gapchannel.run(MASTER.replace("Ja = 0.05", "Ja = -1"))


def test_unstable_hamiltonian_raises():
    with pytest.raises(gapchannel.StabilityError):
        gapchannel.run("kind = harmonic-evolve\nN = 20\nOmega = 1\nOmega0 = 0.2\nomega = 0.1\nJa = 0.5\nmS = 1\nmR = 5\nT = 10\n")


def test_presets_listed():
    names = gapchannel.preset_names()
    assert "fig1" in names and "fig7" in names
    stems = [s for s, _ in gapchannel.preset_configs("fig7", True)]
    assert stems == ["fig7", "fig7_gaussian"]


def test_verify_cheap_criterion():
    [(ok, line)] = gapchannel.verify([8])
    assert ok, line
    assert line.startswith("criterion 8 PASS")
