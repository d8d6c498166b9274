import os
import subprocess
import sys

import numpy as np
import pytest

from wavemod import cli
from wavemod.channel import EqualizationError
from wavemod.sim import (
    ConfigError,
    ScenarioConfig,
    WaveformParams,
    build_adapter,
    psd_band_edge,
    psd_default_active,
    run_ber,
    run_papr,
    run_psd,
    run_scenario,
)


def _ber_config(**kw):
    base = dict(
        waveform="ofdm",
        channel="awgn",
        metric="ber",
        ebn0_grid_db=(8.0,),
        frames=20,
        error_target=None,
    )
    base.update(kw)
    return ScenarioConfig(**base)


class TestConfigValidation:
    def test_unknown_waveform_names_field(self):
        with pytest.raises(ConfigError, match="waveform"):
            _ber_config(waveform="cdma").validate()

    def test_unknown_channel_names_field(self):
        with pytest.raises(ConfigError, match="channel"):
            _ber_config(channel="rician").validate()

    def test_bad_frames(self):
        with pytest.raises(ConfigError, match="frames"):
            _ber_config(frames=0).validate()

    def test_empty_grid(self):
        with pytest.raises(ConfigError, match="ebn0_grid_db"):
            _ber_config(ebn0_grid_db=()).validate()

    def test_bad_qam_order(self):
        cfg = _ber_config(waveform_params=WaveformParams(qam_order=8))
        with pytest.raises(ConfigError, match="qam_order"):
            cfg.validate()


class TestRunBer:
    def test_noiseless_linear_gfdm_zero_errors(self):
        curve = run_ber(
            _ber_config(waveform="linear_gfdm", ebn0_grid_db=(300.0,), frames=5)
        )
        assert curve.values[0] == 0.0

    def test_awgn_matches_theory(self):
        curve = run_ber(_ber_config(frames=100))
        p = curve.extra["theory"][0]
        bits = curve.extra["bits"][0]
        sigma = np.sqrt(p * (1 - p) / bits)
        assert abs(curve.values[0] - p) <= 3 * sigma

    def test_early_stop(self):
        cfg = _ber_config(
            ebn0_grid_db=(0.0,), frames=10_000, error_target=500, min_bits=1000
        )
        curve = run_ber(cfg)
        assert curve.extra["errors"][0] >= 500
        assert curve.extra["bits"][0] < 10_000 * build_adapter(cfg).n_data * 4

    def test_deterministic_across_thread_counts(self, monkeypatch):
        cfg = _ber_config(waveform="gfdm", channel="tvfs", frames=30)
        monkeypatch.setenv("WAVEMOD_THREADS", "1")
        e1 = run_ber(cfg).extra["errors"]
        monkeypatch.setenv("WAVEMOD_THREADS", "3")
        e3 = run_ber(cfg).extra["errors"]
        np.testing.assert_array_equal(e1, e3)

    def test_deterministic_csv_across_runs(self, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        run_ber(_ber_config(output_path=str(out1)))
        run_ber(_ber_config(output_path=str(out2)))
        assert out1.read_bytes() == out2.read_bytes()

    def test_tvfs_theory_uses_rayleigh_reference(self):
        curve = run_ber(_ber_config(channel="tvfs", frames=10))
        awgn = run_ber(_ber_config(frames=10))
        assert curve.extra["theory"][0] > awgn.extra["theory"][0]


class TestRunPsd:
    def test_default_active_allocation(self):
        active = psd_default_active(128)
        assert len(active) == 56
        cfg = ScenarioConfig(waveform="linear_gfdm", metric="psd", frames=10)
        assert 0.2 < psd_band_edge(cfg) < 0.25

    def test_linear_vs_fbmc_containment(self):
        cfgs = [
            ScenarioConfig(waveform=w, metric="psd", frames=1000)
            for w in ("linear_gfdm", "fbmc")
        ]
        lin, fb = (run_psd(c) for c in cfgs)
        edge = psd_band_edge(cfgs[0])
        offs = np.arange(1, 33) / 128.0
        diffs = [abs(lin.interpolate(edge + o) - fb.interpolate(edge + o)) for o in offs]
        assert max(diffs) <= 1.0

    def test_circular_oqam_much_worse_than_linear(self):
        lin = run_psd(ScenarioConfig(waveform="linear_gfdm", metric="psd", frames=100))
        cir = run_psd(
            ScenarioConfig(waveform="gfdm_oqam_circular", metric="psd", frames=100)
        )
        edge = psd_band_edge(ScenarioConfig(waveform="linear_gfdm", metric="psd"))
        off = 2.0 / 128.0
        assert cir.interpolate(edge + off) - lin.interpolate(edge + off) >= 20.0


class TestRunPapr:
    def test_ofdm_ccdf_sane(self):
        curve = run_papr(ScenarioConfig(waveform="ofdm", metric="papr", frames=2000))
        assert np.all(np.diff(curve.values) <= 0)
        assert curve.interpolate(6.0) > 0.5
        assert curve.interpolate(14.0) < 0.01

    def test_papr_uses_signal_support(self):
        # Prefix-free frames end in structural zeros; PAPR must be taken
        # over the signal-bearing support only.
        cfg = ScenarioConfig(waveform="linear_gfdm", metric="papr", frames=4)
        adapter = build_adapter(cfg)
        assert adapter.support_len == 961
        assert adapter.frame_len == 962


class TestCli:
    def test_ber_run_and_csv(self, tmp_path, capsys):
        out = tmp_path / "ber.csv"
        rc = cli.main(
            ["ber", "--waveform", "ofdm", "--ebn0", "8", "--frames", "20", "--out", str(out)]
        )
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("# kind=BER")
        assert "abscissa,value" in lines[1]
        assert "8.0," in lines[2]
        assert "8\t" in capsys.readouterr().out

    def test_config_file_overrides_flags(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("waveform = gfdm  # comment\nframes = 5\nebn0_grid_db = 6\n")
        rc = cli.main(["ber", "--waveform", "ofdm", "--frames", "99", "--config", str(cfg)])
        assert rc == 0
        assert capsys.readouterr().out.count("\n") == 1

    def test_bad_config_file_exit_code(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("nonsense = 1\n")
        rc = cli.main(["ber", "--waveform", "ofdm", "--config", str(cfg)])
        assert rc == 2
        assert "configuration error" in capsys.readouterr().err

    def test_missing_waveform_exit_code(self, capsys):
        assert cli.main(["ber"]) == 2

    def test_numerical_failure_exit_code(self, monkeypatch, capsys):
        def boom(config):
            raise EqualizationError(3, 0.0)

        monkeypatch.setattr("wavemod.cli.run_scenario", boom)
        rc = cli.main(["ber", "--waveform", "ofdm", "--frames", "2"])
        assert rc == 3
        assert "numerical failure" in capsys.readouterr().err

    def test_emit_plot_data(self, tmp_path):
        dat = tmp_path / "plot.dat"
        rc = cli.main(
            [
                "papr",
                "--waveform",
                "ofdm",
                "--frames",
                "200",
                "--emit-plot-data",
                str(dat),
            ]
        )
        assert rc == 0
        cols = np.loadtxt(dat)
        assert cols.shape[1] == 2
        assert np.all(np.diff(cols[:, 0]) > 0)

    def test_console_script_entrypoint(self):
        proc = subprocess.run(
            [sys.executable, "-m", "wavemod.cli", "ber", "--waveform", "cdma"],
            capture_output=True,
        )
        assert proc.returncode == 2

    def test_threads_env_var(self, monkeypatch):
        from wavemod.sim import n_threads

        monkeypatch.setenv("WAVEMOD_THREADS", "7")
        assert n_threads() == 7
        monkeypatch.setenv("WAVEMOD_THREADS", "junk")
        assert n_threads() == 1


class TestRunScenarioDispatch:
    def test_dispatches_by_metric(self):
        curve = run_scenario(
            ScenarioConfig(waveform="ofdm", metric="papr", frames=100)
        )
        assert curve.kind == "CCDF"
